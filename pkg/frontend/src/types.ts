/** JSON contract of the assistant service. */

export interface BoardRow {
  guess: string;
  pattern: string;
}

export interface SessionView {
  id: string;
  algorithm: string;
  mode: string;
  vocabulary: string;
  word_length: number;
  suggestion: string | null;
  suggestion_is_word: boolean;
  phase: string;
  remaining_count: number;
  solved: boolean;
  tries: number;
  undo_depth: number;
  board: BoardRow[];
}

export interface VocabularyInfo {
  id: string;
  word_length: number;
  word_count: number;
}

export interface CreateSessionOptions {
  vocabulary?: string;
  length?: number;
  algorithm?: "greedy" | "clique";
  mode?: "easy" | "hard";
}
