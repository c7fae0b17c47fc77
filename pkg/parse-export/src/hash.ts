import { createHash } from "crypto";

import { Token } from "./tokenize";

/**
 * Lookup key shared with the translation engine: sha1 over the
 * normalized (NFC, lowercased) token surfaces joined by single spaces,
 * truncated to 16 hex digits.  Output files are named `<key>.conllu`.
 */
export function sentenceKey(tokens: Token[]): string {
  const joined = tokens.map((t) => t.normalized).join(" ");
  return createHash("sha1").update(joined, "utf8").digest("hex").slice(0, 16);
}
