/** Wire types for the geometry service.
 *
 * These mirror the JSON the service emits; the client never computes
 * geometry itself, it only displays what these payloads carry.
 */

export interface RecipeParamSchema {
  name: string;
  default: number;
  min?: number;
  max?: number;
  integer?: boolean;
}

export interface RecipeSchema {
  id: string;
  title: string;
  kind: "mesh" | "spiral";
  format: string;
  params: RecipeParamSchema[];
  note: string;
}

export interface StrokeHint {
  color: string;
  width: number | null;
}

export interface MeshEnvelope {
  type: "mesh";
  vertices: [number, number, number][];
  triangles: [number, number, number][];
  [meta: string]: unknown;
}

export interface ContourPolyline {
  points: [number, number][];
  closed: boolean;
}

export interface ContourEnvelope {
  type: "contour";
  polylines: ContourPolyline[];
  [meta: string]: unknown;
}

export interface PolylineEnvelope {
  type: "polyline";
  points: [number, number][];
  thetas: number[];
  radii: number[];
  stroke?: StrokeHint;
  [meta: string]: unknown;
}

export interface ArcSegment {
  center: [number, number];
  radius: number;
  start_angle: number;
  end_angle: number;
}

export interface ArcChainEnvelope {
  type: "arcchain";
  arcs: ArcSegment[];
  stroke?: StrokeHint;
  [meta: string]: unknown;
}

export type PlanItem = PolylineEnvelope | ArcChainEnvelope | ContourEnvelope;

export interface CollectionEnvelope {
  type: "collection";
  items: PlanItem[];
  [meta: string]: unknown;
}

export interface HealthInfo {
  status: string;
  kernel_lane: string;
  version: string;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
