/** The assistant page: suggestion tiles, color entry, board history.
 *
 * The app never advances solver state locally. Every transition posts to the
 * service and replaces the whole view with the response, so what is on screen
 * is always a server snapshot.
 */

import { ApiError, AssistantClient, ContradictionError } from "./api.js";
import { cycleColor, encodePattern, freshColors, type TileColor } from "./tiles.js";
import type { CreateSessionOptions, SessionView } from "./types.js";

export interface AppHandle {
  start(opts?: CreateSessionOptions): Promise<SessionView>;
  cycleTile(index: number): void;
  setOverride(text: string): void;
  submit(): Promise<void>;
  undo(): Promise<void>;
  refresh(): Promise<SessionView>;
  view(): SessionView | null;
}

function el(
  tag: string,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElement {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  for (const c of children) {
    node.append(typeof c === "string" ? document.createTextNode(c) : c);
  }
  return node;
}

export function createApp(root: HTMLElement, client: AssistantClient): AppHandle {
  let view: SessionView | null = null;
  let colors: TileColor[] = [];
  let override = "";
  let contradiction: string | null = null;
  let error: string | null = null;

  function setView(v: SessionView): void {
    view = v;
    colors = freshColors(v.word_length);
    contradiction = null;
    error = null;
    render();
  }

  function displayWord(): string | null {
    if (!view) return null;
    const typed = override.trim().toLowerCase();
    if (typed.length === view.word_length) return typed;
    return view.suggestion;
  }

  function render(): void {
    root.textContent = "";
    if (!view) {
      root.append(el("p", { id: "empty" }, ["no session"]));
      return;
    }
    const header = el("header", { class: "wb-header" }, [
      el("span", { id: "phase", class: `badge badge-${view.phase}` }, [view.phase]),
      el("span", { id: "remaining" }, [`remaining: ${view.remaining_count}`]),
      el("span", { id: "tries" }, [`tries: ${view.tries}`]),
    ]);
    root.append(header);

    if (error) {
      root.append(el("div", { id: "error", class: "banner banner-error" }, [error]));
    }
    if (contradiction) {
      root.append(
        el("div", { id: "contradiction", class: "banner banner-warn" }, [
          contradiction,
          el("button", { id: "undo-now", type: "button" }, ["Undo last report"]),
        ]),
      );
    }

    if (view.solved) {
      root.append(
        el("div", { id: "success", class: "success" }, [
          `Solved in ${view.tries} tries`,
        ]),
      );
    } else {
      const word = displayWord();
      const rowTiles = (word ?? "").split("").map((ch, i) =>
        el(
          "button",
          {
            class: "tile",
            type: "button",
            "data-index": String(i),
            "data-color": colors[i] ?? "X",
          },
          [ch],
        ),
      );
      const area = el("section", { id: "suggestion-area" }, [
        el("div", { id: "suggestion-row" }, rowTiles),
      ]);
      if (!view.suggestion_is_word && !override.trim()) {
        area.append(
          el("div", { id: "nonword-flag", class: "flag" }, [
            "not a dictionary word",
          ]),
        );
      }
      const controls = el("div", { class: "controls" }, [
        el("input", {
          id: "override",
          placeholder: "play a different word",
          value: override,
          maxlength: String(view.word_length),
        }),
        el("button", { id: "submit", type: "button" }, ["Report colors"]),
      ]);
      if (view.undo_depth > 0) {
        controls.append(el("button", { id: "undo", type: "button" }, ["Undo"]));
      }
      area.append(controls);
      root.append(area);
    }

    const board = el("table", { id: "board" });
    for (const row of view.board) {
      const cells = row.guess.split("").map((ch, i) =>
        el("td", { class: `tile tile-${row.pattern[i] ?? "X"}` }, [ch]),
      );
      board.append(el("tr", { class: "board-row" }, cells));
    }
    root.append(board);
  }

  async function submit(): Promise<void> {
    if (!view || view.solved) return;
    const guess = displayWord();
    if (!guess) return;
    const pattern = encodePattern(colors, view.word_length);
    try {
      const next = await client.feedback(view.id, guess, pattern);
      override = "";
      setView(next);
    } catch (e) {
      if (e instanceof ContradictionError) {
        contradiction = `${e.message} (${e.hint})`;
      } else if (e instanceof ApiError) {
        error = e.message;
      } else {
        error = String(e);
      }
      render();
    }
  }

  async function undo(): Promise<void> {
    if (!view) return;
    try {
      const next = await client.undo(view.id);
      override = "";
      setView(next);
    } catch (e) {
      error = e instanceof ApiError ? e.message : String(e);
      render();
    }
  }

  root.addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    if (target.classList.contains("tile") && target.dataset.index !== undefined) {
      handle.cycleTile(Number(target.dataset.index));
    } else if (target.id === "submit") {
      void submit();
    } else if (target.id === "undo" || target.id === "undo-now") {
      void undo();
    }
  });
  root.addEventListener("input", (ev) => {
    const target = ev.target as HTMLInputElement;
    if (target.id === "override") override = target.value;
  });
  root.addEventListener("keydown", (ev) => {
    if ((ev as KeyboardEvent).key === "Enter") void submit();
  });

  const handle: AppHandle = {
    async start(opts: CreateSessionOptions = {}) {
      setView(await client.createSession(opts));
      return view as SessionView;
    },
    cycleTile(index: number) {
      if (!view || index < 0 || index >= colors.length) return;
      colors[index] = cycleColor(colors[index] as TileColor);
      render();
    },
    setOverride(text: string) {
      override = text;
      render();
    },
    async submit() {
      await submit();
    },
    async undo() {
      await undo();
    },
    async refresh() {
      if (!view) throw new Error("no session");
      const v = await client.getSession(view.id);
      setView(v);
      return v;
    },
    view: () => view,
  };
  render();
  return handle;
}
