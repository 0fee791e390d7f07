/** Client-side request vetting and payload structure checks.
 *
 * The client never evaluates fields or geometry itself, but it does two
 * cheap sanity passes: parameter values are checked against the schema
 * bounds before a request goes out (so an impossible value like t = 0
 * never leaves the browser), and arriving payloads are checked for
 * structural soundness (index bounds, finite coordinates) before they
 * reach a renderer.
 */

import type {
  ArcChainEnvelope,
  CollectionEnvelope,
  ContourEnvelope,
  MeshEnvelope,
  PlanItem,
  PolylineEnvelope,
  RecipeParamSchema,
} from "./types.js";

/** Describe why ``value`` is unusable for ``schema``, or null when fine.
 *
 * The time parameter is special: the surface family is only defined for
 * strictly positive t, so t <= 0 is rejected here even when a schema
 * forgot to carry a lower bound.
 */
export function paramIssue(
  schema: RecipeParamSchema,
  value: number,
): string | null {
  if (typeof value !== "number" || Number.isNaN(value)) {
    return "must be a number";
  }
  if (!Number.isFinite(value)) {
    return "must be finite";
  }
  if (schema.name === "t" && value <= 0) {
    return "time must be strictly positive";
  }
  if (schema.integer && !Number.isInteger(value)) {
    return "must be a whole number";
  }
  if (schema.min !== undefined && value < schema.min) {
    return `must be at least ${schema.min}`;
  }
  if (schema.max !== undefined && value > schema.max) {
    return `must be at most ${schema.max}`;
  }
  return null;
}

export class PayloadError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "PayloadError";
  }
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function checkTuple(value: unknown, arity: number, what: string): number[] {
  if (!Array.isArray(value) || value.length !== arity) {
    throw new PayloadError(`${what} must be an array of ${arity} numbers`);
  }
  for (const entry of value) {
    if (typeof entry !== "number" || !Number.isFinite(entry)) {
      throw new PayloadError(`${what} contains a non-finite entry`);
    }
  }
  return value as number[];
}

/** Verify a mesh envelope before it is handed to the 3-D view.
 *
 * Rejects missing arrays, non-finite coordinates, and triangle indices
 * outside ``[0, vertexCount)`` — a malformed payload must never take the
 * renderer down with it.
 */
export function checkMesh(payload: unknown): MeshEnvelope {
  if (!isRecord(payload) || payload.type !== "mesh") {
    throw new PayloadError("reply is not a mesh envelope");
  }
  const vertices = payload.vertices;
  const triangles = payload.triangles;
  if (!Array.isArray(vertices) || !Array.isArray(triangles)) {
    throw new PayloadError("mesh envelope is missing vertices or triangles");
  }
  for (const vertex of vertices) {
    checkTuple(vertex, 3, "mesh vertex");
  }
  for (const triangle of triangles) {
    const corners = checkTuple(triangle, 3, "mesh triangle");
    for (const index of corners) {
      if (!Number.isInteger(index) || index < 0 || index >= vertices.length) {
        throw new PayloadError(
          `triangle index ${index} outside [0, ${vertices.length})`,
        );
      }
    }
  }
  return payload as unknown as MeshEnvelope;
}

function checkPolylineItem(item: Record<string, unknown>): PolylineEnvelope {
  const points = item.points;
  if (!Array.isArray(points)) {
    throw new PayloadError("polyline is missing its points");
  }
  for (const point of points) {
    checkTuple(point, 2, "polyline point");
  }
  return item as unknown as PolylineEnvelope;
}

function checkArcChainItem(item: Record<string, unknown>): ArcChainEnvelope {
  const arcs = item.arcs;
  if (!Array.isArray(arcs)) {
    throw new PayloadError("arc chain is missing its arcs");
  }
  for (const arc of arcs) {
    if (!isRecord(arc)) {
      throw new PayloadError("arc entry must be an object");
    }
    checkTuple(arc.center, 2, "arc center");
    for (const key of ["radius", "start_angle", "end_angle"] as const) {
      const value = arc[key];
      if (typeof value !== "number" || !Number.isFinite(value)) {
        throw new PayloadError(`arc ${key} must be a finite number`);
      }
    }
    if ((arc.radius as number) <= 0) {
      throw new PayloadError("arc radius must be positive");
    }
  }
  return item as unknown as ArcChainEnvelope;
}

function checkContourItem(item: Record<string, unknown>): ContourEnvelope {
  const polylines = item.polylines;
  if (!Array.isArray(polylines)) {
    throw new PayloadError("contour is missing its polylines");
  }
  for (const line of polylines) {
    if (!isRecord(line) || !Array.isArray(line.points)) {
      throw new PayloadError("contour polyline is missing its points");
    }
    for (const point of line.points) {
      checkTuple(point, 2, "contour point");
    }
  }
  return item as unknown as ContourEnvelope;
}

function checkPlanItem(item: unknown): PlanItem {
  if (!isRecord(item)) {
    throw new PayloadError("plan item must be an object");
  }
  switch (item.type) {
    case "polyline":
      return checkPolylineItem(item);
    case "arcchain":
      return checkArcChainItem(item);
    case "contour":
      return checkContourItem(item);
    default:
      throw new PayloadError(`unknown plan item type ${String(item.type)}`);
  }
}

/** Verify a collection envelope before it is handed to the 2-D view. */
export function checkCollection(payload: unknown): CollectionEnvelope {
  if (!isRecord(payload) || payload.type !== "collection") {
    throw new PayloadError("reply is not a collection envelope");
  }
  if (!Array.isArray(payload.items)) {
    throw new PayloadError("collection is missing its items");
  }
  for (const item of payload.items) {
    checkPlanItem(item);
  }
  return payload as unknown as CollectionEnvelope;
}
