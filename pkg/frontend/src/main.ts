/** Application shell: game picker, session lifecycle, move round-trips.
 *
 * State is a pure function of the latest service snapshot plus the
 * in-flight selection; every update re-renders from scratch, and a
 * page reload reconstructs the same view from the session id kept in
 * the URL fragment.
 */

import {
  ApiError,
  Client,
  type Analysis,
  type FieldSchema,
  type GameInfo,
  type MovePayload,
  type SessionState,
} from "./api.js";
import { hintMap, resultBanner } from "./model.js";
import {
  el,
  freshSelection,
  renderBoard,
  type SelectionState,
} from "./render.js";

const client = new Client();

interface AppState {
  games: GameInfo[];
  session: SessionState | null;
  analysis: Analysis | null;
  hintsOn: boolean;
  hintsUnavailable: boolean;
  busy: boolean;
  error: string | null;
  selection: SelectionState;
}

const state: AppState = {
  games: [],
  session: null,
  analysis: null,
  hintsOn: false,
  hintsUnavailable: false,
  busy: false,
  error: null,
  selection: freshSelection(),
};

const root = document.getElementById("app")!;

function setError(message: string | null) {
  state.error = message;
}

async function refreshAnalysis() {
  state.analysis = null;
  state.hintsUnavailable = false;
  if (!state.hintsOn || !state.session || state.session.status !== "in_progress") {
    return;
  }
  try {
    state.analysis = await client.analysis(state.session.id);
  } catch (error) {
    if (error instanceof ApiError && error.code === 422) {
      state.hintsUnavailable = true;
    } else {
      throw error;
    }
  }
}

function adoptSession(session: SessionState) {
  state.session = session;
  state.selection = freshSelection();
  window.location.hash = session.id;
}

async function startGame(game: string, params: Record<string, unknown>, engineFirst: boolean) {
  state.busy = true;
  render();
  try {
    const session = await client.createSession(game, params, engineFirst);
    adoptSession(session);
    setError(null);
    await refreshAnalysis();
  } catch (error) {
    setError(error instanceof Error ? error.message : String(error));
  } finally {
    state.busy = false;
    render();
  }
}

/** Post the human move, then immediately ask for the engine's reply. */
async function submitMove(move: MovePayload) {
  const session = state.session;
  if (!session || state.busy || session.next_mover !== "human") {
    return;
  }
  state.busy = true;
  render();
  try {
    let updated = await client.postMove(session.id, move);
    state.session = updated;
    state.selection = freshSelection();
    setError(null);
    if (updated.status === "in_progress" && updated.next_mover === "engine") {
      updated = await client.engineMove(session.id);
      state.session = updated;
    }
    await refreshAnalysis();
  } catch (error) {
    if (error instanceof ApiError && error.code === 422) {
      setError(`illegal move: ${error.message}`);
    } else {
      setError(error instanceof Error ? error.message : String(error));
    }
  } finally {
    state.busy = false;
    render();
  }
}

async function toggleHints() {
  state.hintsOn = !state.hintsOn;
  await refreshAnalysis();
  render();
}

// ---------------------------------------------------------------------------
// Game picker form

function fieldInputs(fields: FieldSchema[], prefix: string): HTMLElement[] {
  return fields.map((field) => {
    const id = `${prefix}-${field.name}`;
    if (field.type === "int") {
      const input = el("input", {
        id,
        type: "number",
        value: String(field.default ?? field.min ?? 0),
      });
      if (field.min !== undefined) input.min = String(field.min);
      if (field.max !== undefined) input.max = String(field.max);
      return el("label", { class: "field" }, `${field.name}: `, input);
    }
    const textarea = el("textarea", {
      id,
      rows: "4",
      placeholder:
        field.type === "pairs" ? "one 'u v' edge per line" : "one 'x y' point per line",
    });
    return el("label", { class: "field wide" }, `${field.name}: `, textarea);
  });
}

function readFields(form: HTMLElement, fields: FieldSchema[], prefix: string) {
  const params: Record<string, unknown> = {};
  for (const field of fields) {
    const node = form.querySelector<HTMLInputElement | HTMLTextAreaElement>(
      `#${prefix}-${field.name}`,
    )!;
    if (field.type === "int") {
      params[field.name] = Number.parseInt(node.value, 10);
    } else {
      params[field.name] = node.value
        .split("\n")
        .map((line) => line.trim())
        .filter((line) => line.length > 0)
        .map((line) => line.split(/\s+/).map((token) => Number.parseInt(token, 10)));
    }
  }
  return params;
}

function renderPicker(): HTMLElement {
  const picker = el("section", { class: "picker" });
  const gameSelect = el("select", { id: "game-select" });
  for (const game of state.games) {
    gameSelect.append(el("option", { value: game.id }, game.name));
  }
  const variantHolder = el("span", {});
  const fieldsHolder = el("div", { class: "fields" });
  const engineFirst = el("input", { id: "engine-first", type: "checkbox" });

  const currentGame = () =>
    state.games.find((g) => g.id === gameSelect.value) ?? state.games[0];

  function rebuildFields() {
    fieldsHolder.replaceChildren();
    variantHolder.replaceChildren();
    const game = currentGame();
    if (!game) {
      return;
    }
    if (game.params.type === "fields") {
      fieldsHolder.append(...fieldInputs(game.params.fields, "param"));
      return;
    }
    const variantSelect = el("select", { id: "variant-select" });
    for (const name of Object.keys(game.params.variants)) {
      variantSelect.append(el("option", { value: name }, name));
    }
    variantSelect.addEventListener("change", () => {
      const schema = game.params;
      if (schema.type !== "variants") {
        return;
      }
      fieldsHolder.replaceChildren(
        ...fieldInputs(schema.variants[variantSelect.value].fields, "param"),
      );
    });
    variantHolder.append(" ", variantSelect);
    fieldsHolder.append(
      ...fieldInputs(game.params.variants[variantSelect.value].fields, "param"),
    );
  }

  gameSelect.addEventListener("change", rebuildFields);

  const start = el("button", { class: "primary" }, "new game");
  start.addEventListener("click", () => {
    const game = currentGame();
    if (!game) {
      return;
    }
    let params: Record<string, unknown>;
    if (game.params.type === "fields") {
      params = readFields(picker, game.params.fields, "param");
    } else {
      const variant = picker.querySelector<HTMLSelectElement>("#variant-select")!.value;
      params = {
        [game.params.selector]: variant,
        ...readFields(picker, game.params.variants[variant].fields, "param"),
      };
    }
    void startGame(game.id, params, engineFirst.checked);
  });

  picker.append(
    el("div", { class: "toolbar" },
      el("label", {}, "game: ", gameSelect),
      variantHolder,
      el("label", { class: "checkbox" }, engineFirst, " engine moves first"),
      start,
    ),
    fieldsHolder,
  );
  rebuildFields();
  return picker;
}

// ---------------------------------------------------------------------------
// Session panel

function renderStatus(session: SessionState): HTMLElement {
  const banner = resultBanner(session);
  if (banner) {
    const cls = session.status === "human_won" ? "banner win" : "banner loss";
    return el("div", { class: cls }, banner);
  }
  const turn =
    session.next_mover === "human" ? "your move" : "engine is thinking...";
  return el("div", { class: "banner turn" }, turn);
}

function renderAnalysisLine(): HTMLElement | null {
  if (!state.hintsOn) {
    return null;
  }
  if (state.hintsUnavailable) {
    return el("div", { class: "help" }, "hints unavailable: position too large to analyze");
  }
  if (!state.analysis) {
    return null;
  }
  const grundy =
    state.analysis.grundy === null ? "" : `, Grundy value ${state.analysis.grundy}`;
  return el(
    "div",
    { class: "help" },
    `current position: ${state.analysis.outcome}${grundy} ` +
      "(P badge = move leaves a position the mover's opponent wins)",
  );
}

function renderHistory(session: SessionState): HTMLElement {
  const log = el("ol", { class: "history" });
  for (const entry of session.history) {
    log.append(el("li", {}, `${entry.mover}: ${JSON.stringify(entry.move)}`));
  }
  return el("details", {}, el("summary", {}, `moves (${session.history.length})`), log);
}

function render() {
  root.replaceChildren();
  root.append(el("h1", {}, "impartial games workbench"));
  root.append(renderPicker());
  if (state.error) {
    root.append(el("div", { class: "error-panel" }, state.error));
  }
  const session = state.session;
  if (!session) {
    root.append(el("p", { class: "help" }, "start a game to play against the engine"));
    return;
  }
  const board = renderBoard({
    session,
    hints: state.analysis ? hintMap(state.analysis) : null,
    selection: state.selection,
    interactive:
      !state.busy && session.status === "in_progress" && session.next_mover === "human",
    onMove: (move) => void submitMove(move),
    onSelect: (update) => {
      Object.assign(state.selection, update);
      render();
    },
  });
  const hintsButton = el(
    "button",
    { class: state.hintsOn ? "mode active" : "mode" },
    state.hintsOn ? "hints: on" : "hints: off",
  );
  hintsButton.addEventListener("click", () => void toggleHints());
  root.append(
    el("section", { class: "session" },
      renderStatus(session),
      el("div", { class: "toolbar" },
        hintsButton,
        el("span", { class: "session-id" }, `session ${session.id.slice(0, 8)}`),
      ),
      renderAnalysisLine() ?? "",
      board,
      renderHistory(session),
    ),
  );
}

async function boot() {
  try {
    const { games } = await client.listGames();
    state.games = games;
    const fromHash = window.location.hash.slice(1);
    if (fromHash) {
      try {
        state.session = await client.getSession(fromHash);
        await refreshAnalysis();
      } catch {
        window.location.hash = "";
      }
    }
  } catch (error) {
    setError(
      `cannot reach the play service: ${error instanceof Error ? error.message : error}`,
    );
  }
  render();
}

void boot();
