/** Typed client for the play service: JSON endpoints plus the event stream. */

export type Rule = "normal" | "modified";
export type Player = "alice" | "bob";
export type HumanRole = "alice" | "bob" | "both";
export type GameStatus = "ongoing" | "alice_won" | "capped";

export interface GridLayout {
  kind: "grid";
  width: number;
  height: number;
  walls: [number, number][][];
  arrows: [[number, number], string][];
  exit_cell: [number, number] | null;
  exit_dirs: string[];
  sink_index: number;
}

export interface TrackLayout {
  kind: "track";
  cells: number;
  arrow_count: number[];
}

export type BoardLayout = GridLayout | TrackLayout;

export interface AutomatonSummary {
  id: string;
  name: string | null;
  kind: "dfa" | "grid" | "track";
  states: number;
  alphabet: string[];
  layout: BoardLayout | null;
}

export interface AutomatonDetail extends AutomatonSummary {
  text: string;
  transitions: number[][];
}

export interface MoveRecord {
  player: Player;
  word: string;
  tokens_after: number[];
}

export interface GameState {
  id: string;
  automaton_id: string;
  rule: Rule;
  human_role: HumanRole;
  status: GameStatus;
  turn: Player;
  tokens: number[];
  alice_moves: number;
  seq: number;
  history: MoveRecord[];
}

export interface MoveEvent {
  seq: number;
  player: Player;
  word: string;
  tokens_after: number[];
  status: GameStatus;
}

export interface Hint {
  player: Player;
  word: string;
  seq: number;
}

export interface ErrorBody {
  message: string;
  [key: string]: unknown;
}

export class ApiError extends Error {
  readonly status: number;
  readonly detail: ErrorBody;

  constructor(status: number, detail: ErrorBody) {
    super(detail.message ?? `request failed with status ${status}`);
    this.name = "ApiError";
    this.status = status;
    this.detail = detail;
  }
}

/** One parsed server-sent event. */
export interface SseFrame {
  event: string;
  data: string;
  id: string | null;
}

/**
 * Incremental parser for a text/event-stream body.  Feed it decoded
 * chunks in any sizes; it yields complete frames and buffers the rest.
 * Comment lines (keepalives) are dropped.
 */
export class SseParser {
  private buffer = "";

  push(chunk: string): SseFrame[] {
    this.buffer += chunk.replace(/\r\n/g, "\n");
    const frames: SseFrame[] = [];
    for (;;) {
      const cut = this.buffer.indexOf("\n\n");
      if (cut < 0) break;
      const block = this.buffer.slice(0, cut);
      this.buffer = this.buffer.slice(cut + 2);
      const frame = parseSseBlock(block);
      if (frame) frames.push(frame);
    }
    return frames;
  }
}

function parseSseBlock(block: string): SseFrame | null {
  let event = "message";
  let id: string | null = null;
  const data: string[] = [];
  let sawField = false;
  for (const line of block.split("\n")) {
    if (line === "" || line.startsWith(":")) continue;
    const colon = line.indexOf(":");
    const field = colon < 0 ? line : line.slice(0, colon);
    let value = colon < 0 ? "" : line.slice(colon + 1);
    if (value.startsWith(" ")) value = value.slice(1);
    if (field === "event") event = value;
    else if (field === "data") data.push(value);
    else if (field === "id") id = value;
    else continue;
    sawField = true;
  }
  if (!sawField) return null;
  return { event, data: data.join("\n"), id };
}

export interface StreamHandlers {
  onMove: (event: MoveEvent) => void;
  onEnd?: (status: GameStatus) => void;
  onError?: (error: unknown) => void;
}

export class Client {
  readonly base: string;
  private readonly fetchImpl: typeof fetch;

  constructor(base: string, fetchImpl: typeof fetch = fetch) {
    this.base = base.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      const detail: ErrorBody =
        payload && typeof payload === "object" && "error" in payload
          ? (payload.error as ErrorBody)
          : { message: `request failed with status ${response.status}` };
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  postAutomaton(text: string, name?: string): Promise<AutomatonSummary> {
    return this.request("POST", "/automata", name === undefined ? { text } : { text, name });
  }

  getAutomaton(id: string): Promise<AutomatonDetail> {
    return this.request("GET", `/automata/${id}`);
  }

  getAnalysis(id: string): Promise<Record<string, unknown>> {
    return this.request("GET", `/automata/${id}/analysis`);
  }

  createGame(body: {
    automaton_id: string;
    rule?: Rule;
    human_role?: HumanRole;
    initial_tokens?: number[];
  }): Promise<GameState> {
    return this.request("POST", "/games", body);
  }

  getGame(id: string): Promise<GameState> {
    return this.request("GET", `/games/${id}`);
  }

  postMove(id: string, word: string, seq?: number): Promise<GameState> {
    const body: { word: string; seq?: number } = { word };
    if (seq !== undefined) body.seq = seq;
    return this.request("POST", `/games/${id}/move`, body);
  }

  getHint(id: string): Promise<Hint> {
    return this.request("GET", `/games/${id}/hint`);
  }

  /**
   * Follow a game's event stream.  Resolves when the stream ends (the game
   * finished or the signal aborted); JSON move frames are delivered in
   * order to `handlers.onMove`.
   */
  async streamEvents(
    id: string,
    after: number,
    handlers: StreamHandlers,
    signal?: AbortSignal,
  ): Promise<void> {
    try {
      const response = await this.fetchImpl(
        `${this.base}/games/${id}/events?after=${after}`,
        { signal },
      );
      if (!response.ok || !response.body) {
        const payload = await response.json().catch(() => null);
        const detail: ErrorBody =
          payload && typeof payload === "object" && "error" in payload
            ? (payload.error as ErrorBody)
            : { message: `stream failed with status ${response.status}` };
        throw new ApiError(response.status, detail);
      }
      const reader = response.body.getReader();
      const decoder = new TextDecoder();
      const parser = new SseParser();
      for (;;) {
        const { value, done } = await reader.read();
        if (done) break;
        for (const frame of parser.push(decoder.decode(value, { stream: true }))) {
          if (frame.event === "move") {
            handlers.onMove(JSON.parse(frame.data) as MoveEvent);
          } else if (frame.event === "end") {
            handlers.onEnd?.((JSON.parse(frame.data) as { status: GameStatus }).status);
          }
        }
      }
    } catch (error) {
      if (signal?.aborted) return;
      handlers.onError?.(error);
      throw error;
    }
  }
}
