export { tokenize, detokenize, Token } from "./tokenize";
export { annotate, AnnotatedToken } from "./annotate";
export { toConllu } from "./conllu";
export { sentenceKey } from "./hash";
export {
  exportParses,
  ExportSummary,
  ParseJob,
  ModelUnavailableError,
  WriteError,
  MODELS,
} from "./export";
