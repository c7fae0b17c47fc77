import { AnnotatedToken } from "./annotate";

/**
 * Render one sentence as CoNLL-U: ten tab-separated columns per token,
 * `# sent_id` / `# text` comments, SpaceAfter=No in MISC wherever the
 * source had no gap so the sentence can be rebuilt byte for byte.
 */
export function toConllu(sentId: string, text: string, tokens: AnnotatedToken[]): string {
  const lines = [`# sent_id = ${sentId}`, `# text = ${text}`];
  tokens.forEach((t, i) => {
    const last = i === tokens.length - 1;
    const misc = !last && !t.spaceAfter ? "SpaceAfter=No" : "_";
    lines.push(
      [i + 1, t.form, "_", t.upos, "_", "_", t.head, t.deprel, "_", misc].join("\t")
    );
  });
  return lines.join("\n") + "\n";
}
