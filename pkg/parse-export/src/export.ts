import * as fs from "fs";
import * as path from "path";

import { annotate } from "./annotate";
import { toConllu } from "./conllu";
import { sentenceKey } from "./hash";
import { tokenize } from "./tokenize";

export class ModelUnavailableError extends Error {}
export class WriteError extends Error {}

export const MODELS = ["fr-rules"];

export interface ParseJob {
  /** input file: one sentence per line, blank lines skipped */
  input: string;
  outDir: string;
  model?: string;
}

export interface ExportSummary {
  sentencesParsed: number;
  filesWritten: number;
}

export function exportParses(job: ParseJob): ExportSummary {
  const model = job.model ?? "fr-rules";
  if (!MODELS.includes(model)) {
    throw new ModelUnavailableError(
      `unknown model ${JSON.stringify(model)}; available: ${MODELS.join(", ")}`
    );
  }
  const text = fs.readFileSync(job.input, "utf8");
  const sentences = text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);

  try {
    fs.mkdirSync(job.outDir, { recursive: true });
  } catch (e) {
    throw new WriteError(`cannot create ${job.outDir}: ${e}`);
  }

  let written = 0;
  for (let i = 0; i < sentences.length; i++) {
    const sentence = sentences[i];
    const tokens = tokenize(sentence);
    if (tokens.length === 0) continue;
    const conllu = toConllu(`s${i + 1}`, sentence, annotate(tokens));
    const file = path.join(job.outDir, `${sentenceKey(tokens)}.conllu`);
    try {
      fs.writeFileSync(file, conllu, "utf8");
    } catch (e) {
      throw new WriteError(`cannot write ${file}: ${e}`);
    }
    written += 1;
  }
  return { sentencesParsed: sentences.length, filesWritten: written };
}
