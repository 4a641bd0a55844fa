/** Pure view-model helpers: from session snapshots to clickable targets.
 *
 * Every affordance the UI offers maps to exactly one entry of the
 * service's legal-move list; nothing here invents or filters moves on
 * its own.
 */

import type { Analysis, MovePayload, OutcomeLabel, SessionState } from "./api.js";

/** Canonical string key for a move payload (sorted keys, stable). */
export function moveKey(move: MovePayload): string {
  const keys = Object.keys(move).sort();
  return JSON.stringify(keys.map((k) => [k, move[k]]));
}

/** Per-move outcome labels from an analysis response. */
export function hintMap(analysis: Analysis): Map<string, OutcomeLabel> {
  const map = new Map<string, OutcomeLabel>();
  for (const entry of analysis.moves) {
    map.set(moveKey(entry.move), entry.leaves);
  }
  return map;
}

export interface Affordance {
  key: string;
  move: MovePayload;
  label: string;
}

function describeMove(game: string, move: MovePayload): string {
  switch (game) {
    case "chocolate":
    case "demon":
    case "sfp":
      return `take ${move.take}`;
    case "nofactor":
      return `remove {${(move.numbers as number[]).join(", ")}}`;
    case "diamond":
      return `${move.axis} ${move.coord}`;
    case "remove-a-square":
      return `${move.k}x${move.k} at (${move.x}, ${move.y})`;
    case "remove-an-edge":
      return `vertices ${move.u}-${move.v}`;
    default:
      return moveKey(move);
  }
}

/** One affordance per legal move, in the service's deterministic order. */
export function affordances(session: SessionState): Affordance[] {
  return session.legal_moves.map((move) => ({
    key: moveKey(move),
    move,
    label: describeMove(session.game, move),
  }));
}

/** Numbers clickable on the no-factor board: the union of the legal
 * subset moves (the fresh board therefore offers exactly {1}). */
export function nofactorSelectable(session: SessionState): number[] {
  const selectable = new Set<number>();
  for (const move of session.legal_moves) {
    for (const x of move.numbers as number[]) {
      selectable.add(x);
    }
  }
  return [...selectable].sort((a, b) => a - b);
}

/** The legal move matching a selected number set, if any. */
export function nofactorMoveFor(
  session: SessionState,
  selection: Set<number>,
): MovePayload | null {
  const wanted = [...selection].sort((a, b) => a - b).join(",");
  for (const move of session.legal_moves) {
    const numbers = [...(move.numbers as number[])].sort((a, b) => a - b);
    if (numbers.join(",") === wanted) {
      return move;
    }
  }
  return null;
}

/** Block sizes available in a square-removal position, ascending. */
export function squareSizes(session: SessionState): number[] {
  const sizes = new Set<number>();
  for (const move of session.legal_moves) {
    sizes.add(move.k as number);
  }
  return [...sizes].sort((a, b) => a - b);
}

/** The legal block move with a given origin and size, if any. */
export function squareMoveAt(
  session: SessionState,
  x: number,
  y: number,
  k: number,
): MovePayload | null {
  for (const move of session.legal_moves) {
    if (move.x === x && move.y === y && move.k === k) {
      return move;
    }
  }
  return null;
}

/** Occupied lines of a token position, straight from the legal moves. */
export function lineTargets(session: SessionState): {
  rows: number[];
  cols: number[];
} {
  const rows: number[] = [];
  const cols: number[] = [];
  for (const move of session.legal_moves) {
    if (move.axis === "row") {
      rows.push(move.coord as number);
    } else {
      cols.push(move.coord as number);
    }
  }
  return { rows, cols };
}

/** The legal line move through a token, for the current selection mode. */
export function lineMoveThrough(
  session: SessionState,
  axis: "row" | "col",
  x: number,
  y: number,
): MovePayload | null {
  const coord = axis === "row" ? y : x;
  for (const move of session.legal_moves) {
    if (move.axis === axis && move.coord === coord) {
      return move;
    }
  }
  return null;
}

/** The legal vertex-pair move between two clicked vertices, if any. */
export function pairMoveFor(
  session: SessionState,
  a: number,
  b: number,
): MovePayload | null {
  const [u, v] = a < b ? [a, b] : [b, a];
  for (const move of session.legal_moves) {
    if (move.u === u && move.v === v) {
      return move;
    }
  }
  return null;
}

/** Vertices that take part in at least one legal move. */
export function selectableVertices(session: SessionState): Set<number> {
  const vertices = new Set<number>();
  for (const move of session.legal_moves) {
    vertices.add(move.u as number);
    vertices.add(move.v as number);
  }
  return vertices;
}

export function resultBanner(session: SessionState): string | null {
  if (session.status === "human_won") {
    return "you made the last move -- you win!";
  }
  if (session.status === "engine_won") {
    return "the engine made the last move -- it wins.";
  }
  return null;
}
