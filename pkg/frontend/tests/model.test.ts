import { describe, expect, it } from "vitest";
import type { GameState, MoveEvent } from "../src/api.js";
import {
  applyMoveEvent,
  humanToMove,
  moveConstraints,
  moveProblem,
  splitWord,
  statusLine,
  transcriptLine,
  turnAfter,
} from "../src/model.js";

function makeState(overrides: Partial<GameState> = {}): GameState {
  return {
    id: "g-1",
    automaton_id: "a-1",
    rule: "normal",
    human_role: "both",
    status: "ongoing",
    turn: "alice",
    tokens: [0, 1, 2],
    alice_moves: 0,
    seq: 0,
    history: [],
    ...overrides,
  };
}

describe("turnAfter", () => {
  it("alternates starting with the synchronizer", () => {
    expect(turnAfter(0)).toBe("alice");
    expect(turnAfter(1)).toBe("bob");
    expect(turnAfter(2)).toBe("alice");
    expect(turnAfter(7)).toBe("bob");
  });
});

describe("applyMoveEvent", () => {
  const event1: MoveEvent = { seq: 1, player: "alice", word: "a", tokens_after: [0, 2], status: "ongoing" };
  const event2: MoveEvent = { seq: 2, player: "bob", word: "b", tokens_after: [0, 3], status: "ongoing" };

  it("appends the next event and advances every derived field", () => {
    const start = makeState();
    const result = applyMoveEvent(start, event1);
    expect(result.applied).toBe(true);
    expect(result.gap).toBe(false);
    expect(result.state.seq).toBe(1);
    expect(result.state.turn).toBe("bob");
    expect(result.state.tokens).toEqual([0, 2]);
    expect(result.state.alice_moves).toBe(1);
    expect(result.state.history).toEqual([{ player: "alice", word: "a", tokens_after: [0, 2] }]);
    // the input snapshot is untouched
    expect(start.seq).toBe(0);
    expect(start.history).toEqual([]);
  });

  it("ignores duplicates and events from the past", () => {
    const start = applyMoveEvent(makeState(), event1).state;
    const again = applyMoveEvent(start, event1);
    expect(again.applied).toBe(false);
    expect(again.gap).toBe(false);
    expect(again.state).toBe(start);
  });

  it("flags a gap instead of applying an out-of-order event", () => {
    const start = makeState();
    const result = applyMoveEvent(start, event2);
    expect(result.applied).toBe(false);
    expect(result.gap).toBe(true);
    expect(result.state).toBe(start);
  });

  it("only counts synchronizer moves", () => {
    const afterFirst = applyMoveEvent(makeState(), event1).state;
    const afterSecond = applyMoveEvent(afterFirst, event2).state;
    expect(afterSecond.alice_moves).toBe(1);
    expect(afterSecond.seq).toBe(2);
    expect(afterSecond.turn).toBe("alice");
  });

  it("carries terminal statuses through", () => {
    const winning: MoveEvent = { ...event1, status: "alice_won", tokens_after: [0] };
    const result = applyMoveEvent(makeState(), winning);
    expect(result.state.status).toBe("alice_won");
    expect(result.state.tokens).toEqual([0]);
  });
});

describe("humanToMove", () => {
  it("depends on the role and the side to move", () => {
    expect(humanToMove(makeState({ human_role: "both", turn: "alice" }))).toBe(true);
    expect(humanToMove(makeState({ human_role: "both", turn: "bob" }))).toBe(true);
    expect(humanToMove(makeState({ human_role: "alice", turn: "alice" }))).toBe(true);
    expect(humanToMove(makeState({ human_role: "alice", turn: "bob" }))).toBe(false);
    expect(humanToMove(makeState({ human_role: "bob", turn: "alice" }))).toBe(false);
    expect(humanToMove(makeState({ human_role: "bob", turn: "bob" }))).toBe(true);
  });

  it("is false once the game is over", () => {
    expect(humanToMove(makeState({ status: "alice_won" }))).toBe(false);
    expect(humanToMove(makeState({ status: "capped" }))).toBe(false);
  });
});

describe("moveConstraints", () => {
  it("keeps the synchronizer on single letters under both rules", () => {
    expect(moveConstraints("alice", "normal")).toEqual({ singleLetter: true, passAllowed: false });
    expect(moveConstraints("alice", "modified")).toEqual({ singleLetter: true, passAllowed: false });
  });

  it("lets only the modified-rule adversary play words or pass", () => {
    expect(moveConstraints("bob", "normal")).toEqual({ singleLetter: true, passAllowed: false });
    expect(moveConstraints("bob", "modified")).toEqual({ singleLetter: false, passAllowed: true });
  });
});

describe("statusLine", () => {
  it("describes an ongoing game from the player's seat", () => {
    expect(statusLine(makeState({ tokens: [0, 1, 2], turn: "alice", human_role: "both" }))).toBe(
      "3 tokens on the board — alice (you) to move",
    );
    expect(statusLine(makeState({ tokens: [0, 1], turn: "bob", human_role: "alice" }))).toBe(
      "2 tokens on the board — bob (engine) to move",
    );
    expect(statusLine(makeState({ tokens: [4], turn: "alice", human_role: "alice" }))).toBe(
      "1 token on the board — alice (you) to move",
    );
  });

  it("announces the two endings", () => {
    expect(statusLine(makeState({ status: "alice_won", alice_moves: 2 }))).toBe(
      "synchronizer wins after 2 moves",
    );
    expect(statusLine(makeState({ status: "capped", alice_moves: 9 }))).toBe(
      "move cap reached after 9 moves; adversary survives",
    );
  });
});

describe("transcriptLine", () => {
  it("shows the word and the resulting tokens", () => {
    expect(transcriptLine({ player: "alice", word: "a", tokens_after: [1, 3] })).toBe(
      "alice: a → {1, 3}",
    );
  });

  it("marks the empty word as a pass", () => {
    expect(transcriptLine({ player: "bob", word: "", tokens_after: [2] })).toBe(
      "bob: (pass) → {2}",
    );
  });
});

describe("moveProblem", () => {
  const alphabet = ["a", "b", "c"];
  const single = { singleLetter: true, passAllowed: false };
  const free = { singleLetter: false, passAllowed: true };

  it("accepts a legal single letter", () => {
    expect(moveProblem("a", alphabet, single)).toBeNull();
  });

  it("rejects letters outside the alphabet", () => {
    expect(moveProblem("z", alphabet, single)).toMatch(/unknown letter/);
    expect(moveProblem("az", alphabet, free)).toMatch(/unknown letter/);
  });

  it("rejects words when one letter is required", () => {
    expect(moveProblem("ab", alphabet, single)).toMatch(/exactly one letter/);
    expect(moveProblem("", alphabet, single)).toMatch(/exactly one letter/);
  });

  it("allows passing and longer words only under the free constraints", () => {
    expect(moveProblem("", alphabet, free)).toBeNull();
    expect(moveProblem("abcab", alphabet, free)).toBeNull();
  });

  it("enforces the 64-letter cap", () => {
    expect(moveProblem("a".repeat(64), alphabet, free)).toBeNull();
    expect(moveProblem("a".repeat(65), alphabet, free)).toMatch(/64 letters/);
  });
});

describe("splitWord", () => {
  it("splits per character for single-character alphabets, ignoring spaces", () => {
    expect(splitWord("ab a", ["a", "b"], )).toEqual(["a", "b", "a"]);
    expect(splitWord("", ["a", "b"])).toEqual([]);
  });

  it("splits on whitespace when letters are words", () => {
    expect(splitWord("up  down", ["up", "down"])).toEqual(["up", "down"]);
    expect(splitWord("  ", ["up", "down"])).toEqual([]);
  });

  it("returns null on anything outside the alphabet", () => {
    expect(splitWord("ax", ["a", "b"])).toBeNull();
    expect(splitWord("up sideways", ["up", "down"])).toBeNull();
  });
});
