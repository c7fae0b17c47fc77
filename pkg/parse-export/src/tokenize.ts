/**
 * Word tokenizer matching the translation engine's behaviour, so exported
 * parses line up token-for-token with the engine's view of the sentence:
 * whitespace splits, punctuation stands alone, apostrophes are tokens of
 * their own ("n'est" -> n / ' / est) and hyphenated compounds stay whole.
 */

export interface Token {
  surface: string;
  normalized: string;
  isPunct: boolean;
  /** whitespace followed this token in the source text */
  spaceAfter: boolean;
}

const WORD_CHAR = /[\p{L}\p{N}]/u;
const DIGIT = /[0-9]/;

function isWordChar(c: string): boolean {
  return WORD_CHAR.test(c);
}

function splitChunk(chunk: string): string[] {
  const parts: string[] = [];
  let i = 0;
  while (i < chunk.length) {
    if (isWordChar(chunk[i])) {
      let j = i + 1;
      while (j < chunk.length) {
        const c = chunk[j];
        if (isWordChar(c)) {
          j += 1;
        } else if ((c === "-" || c === "_") && j + 1 < chunk.length && isWordChar(chunk[j + 1])) {
          j += 1; // compound joiner
        } else if (
          (c === "." || c === ",") &&
          DIGIT.test(chunk[j - 1]) &&
          j + 1 < chunk.length &&
          DIGIT.test(chunk[j + 1])
        ) {
          j += 1; // number separator
        } else {
          break;
        }
      }
      parts.push(chunk.slice(i, j));
      i = j;
    } else {
      parts.push(chunk[i]); // apostrophes and every other mark stand alone
      i += 1;
    }
  }
  return parts;
}

export function tokenize(text: string): Token[] {
  const tokens: Token[] = [];
  const chunkRe = /\S+/gu;
  let m: RegExpExecArray | null;
  while ((m = chunkRe.exec(text)) !== null) {
    const parts = splitChunk(m[0]);
    const followedBySpace = m.index + m[0].length < text.length;
    parts.forEach((surface, k) => {
      tokens.push({
        surface,
        normalized: surface.normalize("NFC").toLowerCase(),
        isPunct: ![...surface].some(isWordChar),
        spaceAfter: k < parts.length - 1 ? false : followedBySpace,
      });
    });
  }
  if (tokens.length > 0) {
    tokens[tokens.length - 1].spaceAfter = false;
  }
  return tokens;
}

/** Rebuild the sentence from forms and spacing flags. */
export function detokenize(tokens: Token[]): string {
  return tokens.map((t) => t.surface + (t.spaceAfter ? " " : "")).join("");
}
