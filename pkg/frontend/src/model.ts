/** Pure state transitions and derived values for a game in progress. */

import type { GameState, GameStatus, MoveEvent, Player, Rule } from "./api.js";

/** The side to move after `seq` moves have been played (the synchronizer opens). */
export function turnAfter(seq: number): Player {
  return seq % 2 === 0 ? "alice" : "bob";
}

export interface ApplyResult {
  state: GameState;
  /** false when the event was a duplicate or from the past */
  applied: boolean;
  /** true when a gap was detected and the caller should refetch the game */
  gap: boolean;
}

/** Fold one stream event into a game snapshot; idempotent and order-safe. */
export function applyMoveEvent(state: GameState, event: MoveEvent): ApplyResult {
  if (event.seq <= state.seq) {
    return { state, applied: false, gap: false };
  }
  if (event.seq > state.seq + 1) {
    return { state, applied: false, gap: true };
  }
  const history = [
    ...state.history,
    { player: event.player, word: event.word, tokens_after: event.tokens_after },
  ];
  const next: GameState = {
    ...state,
    history,
    seq: event.seq,
    tokens: event.tokens_after,
    status: event.status,
    turn: turnAfter(event.seq),
    alice_moves: state.alice_moves + (event.player === "alice" ? 1 : 0),
  };
  return { state: next, applied: true, gap: false };
}

/** Whether the person at the keyboard moves now. */
export function humanToMove(state: GameState): boolean {
  if (state.status !== "ongoing") return false;
  return state.human_role === "both" || state.human_role === state.turn;
}

export interface MoveConstraints {
  /** the move must be exactly one letter */
  singleLetter: boolean;
  /** the empty word is a legal move */
  passAllowed: boolean;
}

/** What the side to move is allowed to submit. */
export function moveConstraints(turn: Player, rule: Rule): MoveConstraints {
  if (turn === "alice" || rule === "normal") {
    return { singleLetter: true, passAllowed: false };
  }
  return { singleLetter: false, passAllowed: true };
}

export function statusLine(state: GameState): string {
  if (state.status === "alice_won") {
    return `synchronizer wins after ${state.alice_moves} moves`;
  }
  if (state.status === "capped") {
    return `move cap reached after ${state.alice_moves} moves; adversary survives`;
  }
  const who = humanToMove(state) ? "you" : "engine";
  return `${state.tokens.length} token${state.tokens.length === 1 ? "" : "s"} on the board — ${state.turn} (${who}) to move`;
}

export function transcriptLine(record: { player: Player; word: string; tokens_after: number[] }): string {
  const word = record.word === "" ? "(pass)" : record.word;
  return `${record.player}: ${word} → {${record.tokens_after.join(", ")}}`;
}

/** Validate a move before sending it; returns an error message or null. */
export function moveProblem(
  word: string,
  alphabet: string[],
  constraints: MoveConstraints,
): string | null {
  const letters = splitWord(word, alphabet);
  if (letters === null) {
    return `unknown letter in ${JSON.stringify(word)}`;
  }
  if (constraints.singleLetter && letters.length !== 1) {
    return "this side must play exactly one letter";
  }
  if (letters.length === 0 && !constraints.passAllowed) {
    return "the empty word is not allowed here";
  }
  if (letters.length > 64) {
    return "words longer than 64 letters are rejected";
  }
  return null;
}

/**
 * Split a word string the way the service does: per character when every
 * letter is a single character, otherwise on whitespace.  Null when a
 * token is not in the alphabet.
 */
export function splitWord(word: string, alphabet: string[]): string[] | null {
  const singleChar = alphabet.every((letter) => letter.length === 1);
  const parts = singleChar
    ? word.replace(/\s+/g, "").split("")
    : word.trim().split(/\s+/).filter((part) => part !== "");
  for (const part of parts) {
    if (!alphabet.includes(part)) return null;
  }
  return parts;
}

export type { GameState, GameStatus, MoveEvent };
