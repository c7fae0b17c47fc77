#!/usr/bin/env node
/**
 * export-parses --in FILE --out DIR [--model ID]
 *
 * Reads sentences (one per line), runs the dependency annotator and
 * writes one CoNLL-U file per sentence into DIR, named by sentence hash.
 */

import { exportParses, ModelUnavailableError, WriteError } from "./export";

function usage(): never {
  console.error("usage: export-parses --in FILE --out DIR [--model ID]");
  process.exit(2);
}

export function main(argv: string[]): number {
  const args: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) usage();
    args[flag.slice(2)] = value;
  }
  if (!args["in"] || !args["out"]) usage();
  try {
    const summary = exportParses({
      input: args["in"],
      outDir: args["out"],
      model: args["model"],
    });
    console.log(
      `parsed ${summary.sentencesParsed} sentences, wrote ${summary.filesWritten} files to ${args["out"]}`
    );
    return 0;
  } catch (e) {
    if (e instanceof ModelUnavailableError || e instanceof WriteError) {
      console.error(`error: ${e.message}`);
      return 1;
    }
    if (e instanceof Error && "code" in e) {
      console.error(`error: ${e.message}`);
      return 1;
    }
    throw e;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
