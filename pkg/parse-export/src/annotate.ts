/**
 * Rule-based French dependency annotation.
 *
 * This is the "model" behind the exporter: a deterministic, offline
 * approximation good enough to bound chunking downstream.  Closed-class
 * words attach by simple rules, everything else hangs off one root, and
 * the output is always a valid single-root acyclic tree.  Consumers are
 * expected to treat these parses as advisory.
 */

import { Token } from "./tokenize";

export interface AnnotatedToken {
  form: string;
  upos: string;
  /** 1-based head id, 0 for the root */
  head: number;
  deprel: string;
  spaceAfter: boolean;
}

const DET = new Set([
  "le", "la", "les", "l", "un", "une", "du", "des",
  "ce", "cet", "cette", "ces",
  "mon", "ma", "mes", "ton", "ta", "tes", "son", "sa", "ses",
  "notre", "nos", "votre", "vos", "leur", "leurs",
]);
const AUX = new Set([
  "est", "sont", "était", "étaient", "sera", "seront", "es", "suis", "sommes",
  "a", "ont", "avait", "avaient", "aura", "auront", "ai", "avons", "avez",
]);
const NEG = new Set(["ne", "n"]);
const ADV = new Set([
  "pas", "plus", "encore", "déjà", "ici", "là", "très", "bien", "aussi",
  "toujours", "jamais", "comme", "hier", "demain",
]);
const ADP = new Set([
  "à", "de", "dans", "en", "sur", "sous", "pour", "par", "avec", "sans",
  "chez", "vers", "entre", "contre", "après", "avant",
]);

const PARTICIPLE = /(é|ée|és|ées|i[es]?|u[es]?)$/u;

type Kind = "PUNCT" | "DET" | "AUX" | "NEG" | "ADV" | "ADP" | "WORD";

function kindOf(t: Token): Kind {
  if (t.isPunct) return "PUNCT";
  if (DET.has(t.normalized)) return "DET";
  if (AUX.has(t.normalized)) return "AUX";
  if (NEG.has(t.normalized)) return "NEG";
  if (ADV.has(t.normalized)) return "ADV";
  if (ADP.has(t.normalized)) return "ADP";
  return "WORD";
}

function pickRoot(tokens: Token[], kinds: Kind[]): number {
  const firstAux = kinds.findIndex((k) => k === "AUX");
  if (firstAux >= 0) {
    for (let j = firstAux + 1; j < tokens.length; j++) {
      if (kinds[j] === "WORD" && PARTICIPLE.test(tokens[j].normalized)) {
        return j; // periphrastic verb form: the participle heads the clause
      }
    }
    return firstAux;
  }
  for (let j = tokens.length - 1; j >= 0; j--) {
    if (kinds[j] !== "PUNCT") return j;
  }
  return 0;
}

/** First plain word after i, used as the attachment site of DET and ADP. */
function forwardNoun(kinds: Kind[], i: number, root: number): number {
  for (let j = i + 1; j < kinds.length; j++) {
    if (j === root) break; // never re-attach the root
    if (kinds[j] === "WORD") return j;
  }
  return root;
}

const APOSTROPHES = new Set(["'", "’"]);

export function annotate(tokens: Token[]): AnnotatedToken[] {
  const kinds = tokens.map(kindOf);
  const root = pickRoot(tokens, kinds);
  return tokens.map((t, i) => {
    let head: number;
    let deprel: string;
    let upos: string;
    const kind = kinds[i];
    if (i === root) {
      head = -1;
      deprel = "root";
      upos = kind === "AUX" ? "AUX" : kind === "WORD" && PARTICIPLE.test(t.normalized) ? "VERB" : "NOUN";
    } else if (kind === "PUNCT") {
      // apostrophes cling to the word they elide from
      head = APOSTROPHES.has(t.surface) && i > 0 ? i - 1 : root;
      deprel = "punct";
      upos = "PUNCT";
    } else if (kind === "DET") {
      head = forwardNoun(kinds, i, root);
      deprel = "det";
      upos = "DET";
    } else if (kind === "ADP") {
      head = forwardNoun(kinds, i, root);
      deprel = "case";
      upos = "ADP";
    } else if (kind === "NEG" || kind === "ADV") {
      head = root;
      deprel = "advmod";
      upos = "ADV";
    } else if (kind === "AUX") {
      head = root;
      deprel = "aux";
      upos = "AUX";
    } else {
      head = root;
      deprel = i < root ? "nsubj" : "obl";
      upos = "NOUN";
    }
    return {
      form: t.surface,
      upos,
      head: head + 1, // CoNLL-U ids are 1-based, 0 marks the root
      deprel,
      spaceAfter: t.spaceAfter,
    };
  });
}
