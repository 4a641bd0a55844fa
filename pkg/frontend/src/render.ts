/** DOM renderers, one per game family.
 *
 * Renderers are pure: they rebuild the board from the latest session
 * snapshot (plus the in-flight selection) on every update.  Clickable
 * things always resolve through the view-model helpers, so a click can
 * only ever submit a move the service listed as legal.
 */

import type { MovePayload, OutcomeLabel, SessionState } from "./api.js";
import {
  affordances,
  lineMoveThrough,
  lineTargets,
  moveKey,
  nofactorMoveFor,
  nofactorSelectable,
  pairMoveFor,
  selectableVertices,
  squareMoveAt,
  squareSizes,
} from "./model.js";

export interface SelectionState {
  lineAxis: "row" | "col";
  squareSize: number | null;
  firstVertex: number | null;
  numbers: number[];
}

export const freshSelection = (): SelectionState => ({
  lineAxis: "row",
  squareSize: null,
  firstVertex: null,
  numbers: [],
});

export interface RenderContext {
  session: SessionState;
  hints: Map<string, OutcomeLabel> | null;
  selection: SelectionState;
  interactive: boolean;
  onMove: (move: MovePayload) => void;
  onSelect: (update: Partial<SelectionState>) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function hintBadge(
  ctx: RenderContext,
  move: MovePayload,
): HTMLElement | null {
  if (!ctx.hints) {
    return null;
  }
  const label = ctx.hints.get(moveKey(move));
  if (!label) {
    return null;
  }
  const badge = el("span", { class: `badge badge-${label.toLowerCase()}` }, label);
  badge.title =
    label === "P" ? "leaves a P-position (good)" : "leaves an N-position";
  return badge;
}

function moveButton(ctx: RenderContext, move: MovePayload, label: string): HTMLElement {
  const button = el("button", { class: "move-button" }, label);
  const badge = hintBadge(ctx, move);
  if (badge) {
    button.append(" ", badge);
  }
  button.disabled = !ctx.interactive;
  button.addEventListener("click", () => ctx.onMove(move));
  return button;
}

/** Generic move list; doubles as the only affordance for pile games. */
export function renderMoveList(ctx: RenderContext): HTMLElement {
  const wrap = el("div", { class: "move-list" });
  for (const entry of affordances(ctx.session)) {
    wrap.append(moveButton(ctx, entry.move, entry.label));
  }
  if (ctx.session.legal_moves.length === 0) {
    wrap.append(el("em", {}, "no moves available"));
  }
  return wrap;
}

function renderPiles(ctx: RenderContext): HTMLElement {
  const position = ctx.session.position as Record<string, number>;
  const amount =
    position.coins ?? position.stones ?? position.n ?? 0;
  const unit =
    ctx.session.game === "demon"
      ? "coins"
      : ctx.session.game === "chocolate"
        ? "stones"
        : "";
  const counter = el(
    "div",
    { class: "pile-counter" },
    el("span", { class: "pile-value" }, String(amount)),
    el("span", { class: "pile-unit" }, unit),
  );
  return el("div", {}, counter, renderMoveList(ctx));
}

function renderNoFactor(ctx: RenderContext): HTMLElement {
  const position = ctx.session.position as { remaining: number[] };
  const selectable = new Set(nofactorSelectable(ctx.session));
  const chosen = new Set(ctx.selection.numbers);
  const strip = el("div", { class: "number-strip" });
  for (const x of position.remaining) {
    const cls = [
      "number-chip",
      selectable.has(x) ? "selectable" : "frozen",
      chosen.has(x) ? "chosen" : "",
    ].join(" ");
    const chip = el("button", { class: cls }, String(x));
    chip.disabled = !ctx.interactive || !selectable.has(x);
    chip.addEventListener("click", () => {
      const next = new Set(chosen);
      if (next.has(x)) {
        next.delete(x);
      } else {
        next.add(x);
      }
      ctx.onSelect({ numbers: [...next].sort((a, b) => a - b) });
    });
    strip.append(chip);
  }
  const move = nofactorMoveFor(ctx.session, chosen);
  const submit = el("button", { class: "primary" }, "remove selected");
  submit.disabled = !ctx.interactive || move === null;
  if (move) {
    const badge = hintBadge(ctx, move);
    if (badge) {
      submit.append(" ", badge);
    }
    submit.addEventListener("click", () => ctx.onMove(move));
  }
  return el(
    "div",
    {},
    strip,
    el("div", { class: "toolbar" }, submit),
    el("p", { class: "help" }, "pick numbers with no remaining proper factor"),
  );
}

function renderDiamond(ctx: RenderContext): HTMLElement {
  const tokens = (ctx.session.position as { tokens: [number, number][] }).tokens;
  const axis = ctx.selection.lineAxis;
  const wrap = el("div", {});
  const toggle = el("div", { class: "toolbar" });
  for (const mode of ["row", "col"] as const) {
    const button = el(
      "button",
      { class: axis === mode ? "mode active" : "mode" },
      mode === "row" ? "take rows" : "take columns",
    );
    button.addEventListener("click", () => ctx.onSelect({ lineAxis: mode }));
    toggle.append(button);
  }
  wrap.append(toggle);
  if (tokens.length > 0) {
    const xs = tokens.map(([x]) => x);
    const ys = tokens.map(([, y]) => y);
    const [minX, maxX] = [Math.min(...xs), Math.max(...xs)];
    const [minY, maxY] = [Math.min(...ys), Math.max(...ys)];
    const cell = 34;
    const pad = 24;
    const width = (maxX - minX + 1) * cell + 2 * pad;
    const height = (maxY - minY + 1) * cell + 2 * pad;
    const svg = svgEl("svg", {
      viewBox: `0 0 ${width} ${height}`,
      class: "board-svg",
      width: String(Math.min(width, 560)),
    });
    for (const [x, y] of tokens) {
      const cx = pad + (x - minX) * cell + cell / 2;
      const cy = pad + (maxY - y) * cell + cell / 2;
      const dot = svgEl("circle", {
        cx: String(cx),
        cy: String(cy),
        r: "11",
        class: "token",
      });
      const move = lineMoveThrough(ctx.session, axis, x, y);
      if (move && ctx.interactive) {
        dot.classList.add("clickable");
        const title = svgEl("title", {});
        title.textContent = `take ${axis} ${axis === "row" ? y : x}`;
        dot.append(title);
        dot.addEventListener("click", () => ctx.onMove(move));
      }
      svg.append(dot);
    }
    wrap.append(svg);
  }
  const { rows, cols } = lineTargets(ctx.session);
  const lines = el("div", { class: "move-list" });
  for (const y of rows) {
    lines.append(moveButton(ctx, { axis: "row", coord: y }, `row ${y}`));
  }
  for (const x of cols) {
    lines.append(moveButton(ctx, { axis: "col", coord: x }, `col ${x}`));
  }
  wrap.append(lines);
  return wrap;
}

function renderSquares(ctx: RenderContext): HTMLElement {
  const cells = (ctx.session.position as { cells: [number, number][] }).cells;
  const sizes = squareSizes(ctx.session);
  const size = ctx.selection.squareSize ?? sizes[0] ?? 1;
  const wrap = el("div", {});
  const toolbar = el("div", { class: "toolbar" }, "block size: ");
  for (const k of sizes) {
    const button = el(
      "button",
      { class: size === k ? "mode active" : "mode" },
      `${k}x${k}`,
    );
    button.addEventListener("click", () => ctx.onSelect({ squareSize: k }));
    toolbar.append(button);
  }
  wrap.append(toolbar);
  if (cells.length > 0) {
    const xs = cells.map(([x]) => x);
    const ys = cells.map(([, y]) => y);
    const [minX, maxX] = [Math.min(...xs), Math.max(...xs)];
    const [minY, maxY] = [Math.min(...ys), Math.max(...ys)];
    const cell = 30;
    const pad = 8;
    const width = (maxX - minX + 1) * cell + 2 * pad;
    const height = (maxY - minY + 1) * cell + 2 * pad;
    const svg = svgEl("svg", {
      viewBox: `0 0 ${width} ${height}`,
      class: "board-svg",
      width: String(Math.min(width, 680)),
    });
    for (const [x, y] of cells) {
      const rect = svgEl("rect", {
        x: String(pad + (x - minX) * cell + 1),
        y: String(pad + (maxY - y) * cell + 1),
        width: String(cell - 2),
        height: String(cell - 2),
        class: "cell",
      });
      const move = squareMoveAt(ctx.session, x, y, size);
      if (move && ctx.interactive) {
        rect.classList.add("clickable");
        const hint = ctx.hints?.get(moveKey(move));
        if (hint) {
          rect.classList.add(`hint-${hint.toLowerCase()}`);
        }
        const title = svgEl("title", {});
        title.textContent = `remove ${size}x${size} with corner (${x}, ${y})`;
        rect.append(title);
        rect.addEventListener("click", () => ctx.onMove(move));
      }
      svg.append(rect);
    }
    wrap.append(svg);
    wrap.append(
      el(
        "p",
        { class: "help" },
        `click the lower-left corner of the ${size}x${size} block to remove`,
      ),
    );
  }
  return wrap;
}

function renderGraph(ctx: RenderContext): HTMLElement {
  const position = ctx.session.position as {
    n: number;
    edges: [number, number][];
    alive: number[];
  };
  const aliveSet = new Set(position.alive);
  const clickable = selectableVertices(ctx.session);
  const first = ctx.selection.firstVertex;
  const n = position.n;
  const radius = 120;
  const size = 2 * radius + 60;
  const center = size / 2;
  const coords = (v: number): [number, number] => {
    const angle = (2 * Math.PI * v) / Math.max(n, 1) - Math.PI / 2;
    return [center + radius * Math.cos(angle), center + radius * Math.sin(angle)];
  };
  const svg = svgEl("svg", {
    viewBox: `0 0 ${size} ${size}`,
    class: "board-svg",
    width: String(Math.min(size, 420)),
  });
  for (const [u, v] of position.edges) {
    const [x1, y1] = coords(u);
    const [x2, y2] = coords(v);
    const live = aliveSet.has(u) && aliveSet.has(v);
    svg.append(
      svgEl("line", {
        x1: String(x1),
        y1: String(y1),
        x2: String(x2),
        y2: String(y2),
        class: live ? "edge live" : "edge dead",
      }),
    );
  }
  for (let v = 0; v < n; v += 1) {
    const [cx, cy] = coords(v);
    const classes = ["vertex"];
    if (!aliveSet.has(v)) {
      classes.push("dead");
    }
    if (clickable.has(v)) {
      classes.push("clickable");
    }
    if (first === v) {
      classes.push("selected");
    }
    const circle = svgEl("circle", {
      cx: String(cx),
      cy: String(cy),
      r: "13",
      class: classes.join(" "),
    });
    if (ctx.interactive && clickable.has(v)) {
      circle.addEventListener("click", () => {
        if (first === null) {
          ctx.onSelect({ firstVertex: v });
          return;
        }
        if (first === v) {
          ctx.onSelect({ firstVertex: null });
          return;
        }
        const move = pairMoveFor(ctx.session, first, v);
        if (move) {
          ctx.onMove(move);
        } else {
          ctx.onSelect({ firstVertex: v });
        }
      });
    }
    svg.append(circle);
    const label = svgEl("text", {
      x: String(cx),
      y: String(cy + 4),
      class: "vertex-label",
      "text-anchor": "middle",
    });
    label.textContent = String(v);
    svg.append(label);
  }
  return el(
    "div",
    {},
    svg,
    el(
      "p",
      { class: "help" },
      first === null
        ? "click two adjacent live vertices to remove them"
        : `first vertex: ${first}; click an adjacent vertex (or ${first} to cancel)`,
    ),
    renderMoveList(ctx),
  );
}

export function renderBoard(ctx: RenderContext): HTMLElement {
  switch (ctx.session.game) {
    case "chocolate":
    case "demon":
    case "sfp":
      return renderPiles(ctx);
    case "nofactor":
      return renderNoFactor(ctx);
    case "diamond":
      return renderDiamond(ctx);
    case "remove-a-square":
      return renderSquares(ctx);
    case "remove-an-edge":
      return renderGraph(ctx);
    default:
      return el("div", { class: "error-panel" }, `unsupported game: ${ctx.session.game}`);
  }
}
