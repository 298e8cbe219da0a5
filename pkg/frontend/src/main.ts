/** Browser app: load an automaton, start a game, play it live. */

import {
  ApiError,
  Client,
  type AutomatonDetail,
  type GameState,
  type HumanRole,
  type MoveEvent,
  type Rule,
} from "./api.js";
import { applyMoveEvent, moveConstraints, moveProblem } from "./model.js";
import { renderAutomaton, renderControls, renderStatus, renderTranscript } from "./render.js";

interface ExampleText {
  label: string;
  text: string;
}

const EXAMPLES: ExampleText[] = [
  {
    label: "three states, two letters",
    text: `# b2
states: 3
alphabet: a b
transitions:
0 a 0
0 b 0
1 a 2
1 b 0
2 a 0
2 b 1
`,
  },
  {
    label: "six states, three letters",
    text: `# e_automaton
states: 6
alphabet: a b c
transitions:
0 a 0
0 b 0
0 c 0
1 a 2
1 b 1
1 c 1
2 a 0
2 b 3
2 c 4
3 a 5
3 b 3
3 c 0
4 a 5
4 b 0
4 c 4
5 a 5
5 b 0
5 c 0
`,
  },
  {
    label: "walled grid with an exit",
    text: `grid 3 2
arrow 0 1 e
wall 1 0 1 1
exit 2 0 e
`,
  },
  {
    label: "circular track",
    text: `track cells=12
arrows 0=3 5=1 9=2
`,
  },
];

interface AppState {
  client: Client;
  detail: AutomatonDetail | null;
  game: GameState | null;
  hint: string | null;
  error: string | null;
  stream: AbortController | null;
}

const state: AppState = {
  client: new Client("http://127.0.0.1:8000"),
  detail: null,
  game: null,
  hint: null,
  error: null,
  stream: null,
};

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  if (err instanceof Error) return err.message;
  return String(err);
}

async function loadAutomaton(): Promise<void> {
  const base = byId<HTMLInputElement>("base-url").value.trim();
  state.client = new Client(base);
  const text = byId<HTMLTextAreaElement>("description").value;
  state.error = null;
  state.hint = null;
  state.game = null;
  stopStream();
  try {
    const summary = await state.client.postAutomaton(text);
    state.detail = await state.client.getAutomaton(summary.id);
  } catch (err) {
    state.detail = null;
    state.error = describeError(err);
  }
  render();
}

async function startGame(): Promise<void> {
  if (!state.detail) return;
  const rule = byId<HTMLSelectElement>("rule").value as Rule;
  const role = byId<HTMLSelectElement>("role").value as HumanRole;
  state.error = null;
  state.hint = null;
  stopStream();
  try {
    state.game = await state.client.createGame({
      automaton_id: state.detail.id,
      rule,
      human_role: role,
    });
    followGame(state.game.id, state.game.seq);
  } catch (err) {
    state.game = null;
    state.error = describeError(err);
  }
  render();
}

function stopStream(): void {
  if (state.stream) {
    state.stream.abort();
    state.stream = null;
  }
}

function followGame(gameId: string, after: number): void {
  const controller = new AbortController();
  state.stream = controller;
  void state.client.streamEvents(
    gameId,
    after,
    {
      onMove: (event) => handleMoveEvent(gameId, event),
      onError: (err) => {
        if (!controller.signal.aborted) {
          state.error = `event stream lost: ${describeError(err)}`;
          render();
        }
      },
    },
    controller.signal,
  );
}

function handleMoveEvent(gameId: string, event: MoveEvent): void {
  if (!state.game || state.game.id !== gameId) return;
  const result = applyMoveEvent(state.game, event);
  if (result.gap) {
    void refreshGame(gameId);
    return;
  }
  if (result.applied) {
    state.game = result.state;
    render();
  }
}

async function refreshGame(gameId: string): Promise<void> {
  try {
    const fresh = await state.client.getGame(gameId);
    if (state.game && state.game.id === gameId) {
      state.game = fresh;
      render();
    }
  } catch (err) {
    state.error = describeError(err);
    render();
  }
}

async function playWord(word: string): Promise<void> {
  const game = state.game;
  const detail = state.detail;
  if (!game || !detail) return;
  const constraints = moveConstraints(game.turn, game.rule);
  const problem = moveProblem(word, detail.alphabet, constraints);
  if (problem) {
    state.error = problem;
    render();
    return;
  }
  state.error = null;
  state.hint = null;
  try {
    state.game = await state.client.postMove(game.id, word, game.seq);
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      // someone moved first; fetch the authoritative state
      await refreshGame(game.id);
      return;
    }
    state.error = describeError(err);
  }
  render();
}

async function requestHint(): Promise<void> {
  if (!state.game) return;
  try {
    const hint = await state.client.getHint(state.game.id);
    state.hint = hint.word === "" ? `${hint.player}: pass` : `${hint.player}: ${hint.word}`;
    state.error = null;
  } catch (err) {
    state.error = describeError(err);
  }
  render();
}

function render(): void {
  const view = byId<HTMLDivElement>("view");
  view.replaceChildren();

  if (state.error) {
    const banner = document.createElement("p");
    banner.className = "error";
    banner.setAttribute("data-role", "error");
    banner.textContent = state.error;
    view.appendChild(banner);
  }

  const gameForm = byId<HTMLElement>("game-form");
  gameForm.hidden = !state.detail;

  if (!state.detail) return;

  const heading = document.createElement("h2");
  heading.textContent = `${state.detail.name} — ${state.detail.states} states, alphabet ${state.detail.alphabet.join(" ")}`;
  view.appendChild(heading);

  const tokens = state.game ? state.game.tokens : [];
  view.appendChild(renderAutomaton(state.detail, tokens));

  if (!state.game) return;

  view.appendChild(renderStatus(state.game));
  if (state.hint) {
    const hintLine = document.createElement("p");
    hintLine.className = "hint";
    hintLine.setAttribute("data-role", "hint-text");
    hintLine.textContent = `hint — ${state.hint}`;
    view.appendChild(hintLine);
  }
  view.appendChild(
    renderControls(state.game, state.detail.alphabet, {
      playWord: (word) => void playWord(word),
      requestHint: () => void requestHint(),
    }),
  );
  view.appendChild(renderTranscript(state.game.history));
}

function wireUp(): void {
  const picker = byId<HTMLSelectElement>("example");
  for (const [i, example] of EXAMPLES.entries()) {
    const option = document.createElement("option");
    option.value = String(i);
    option.textContent = example.label;
    picker.appendChild(option);
  }
  picker.addEventListener("change", () => {
    const chosen = EXAMPLES[Number(picker.value)];
    if (chosen) byId<HTMLTextAreaElement>("description").value = chosen.text;
  });
  byId<HTMLTextAreaElement>("description").value = EXAMPLES[0].text;

  byId<HTMLButtonElement>("load").addEventListener("click", () => void loadAutomaton());
  byId<HTMLButtonElement>("start").addEventListener("click", () => void startGame());
  render();
}

document.addEventListener("DOMContentLoaded", wireUp);
