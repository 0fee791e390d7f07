/** Plan (2-D) view: spiral collections rendered as inline SVG.
 *
 * Geometry arrives fully computed; this module only lays it out.  The
 * service's drawing conventions are kept: mathematical y points up, so
 * coordinates are drawn at ``(x, -y)``, and counter-clockwise arcs use
 * sweep flag 0.  Path builders are pure string functions so they can be
 * tested without a DOM.
 */

import type {
  ArcChainEnvelope,
  CollectionEnvelope,
  ContourEnvelope,
  PlanItem,
  PolylineEnvelope,
} from "./types.js";

export interface PlanBounds {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

export function polylinePath(
  points: readonly (readonly [number, number])[],
  closed = false,
): string {
  if (points.length === 0) {
    return "";
  }
  const parts: string[] = [];
  points.forEach(([x, y], index) => {
    parts.push(`${index === 0 ? "M" : "L"} ${x} ${-y}`);
  });
  if (closed) {
    parts.push("Z");
  }
  return parts.join(" ");
}

function arcPoint(
  arc: { center: [number, number]; radius: number },
  angle: number,
): [number, number] {
  return [
    arc.center[0] + arc.radius * Math.cos(angle),
    arc.center[1] + arc.radius * Math.sin(angle),
  ];
}

export function arcChainPath(arcs: ArcChainEnvelope["arcs"]): string {
  const first = arcs[0];
  if (first === undefined) {
    return "";
  }
  const [sx, sy] = arcPoint(first, first.start_angle);
  const parts = [`M ${sx} ${-sy}`];
  for (const arc of arcs) {
    const span = arc.end_angle - arc.start_angle;
    const large = Math.abs(span) > Math.PI ? 1 : 0;
    // Positive span is counter-clockwise in math coords, which the y
    // flip turns into SVG sweep 0.
    const sweep = span >= 0 ? 0 : 1;
    const [ex, ey] = arcPoint(arc, arc.end_angle);
    parts.push(`A ${arc.radius} ${arc.radius} 0 ${large} ${sweep} ${ex} ${-ey}`);
  }
  return parts.join(" ");
}

function growToPoint(bounds: PlanBounds, x: number, y: number): void {
  bounds.xmin = Math.min(bounds.xmin, x);
  bounds.xmax = Math.max(bounds.xmax, x);
  bounds.ymin = Math.min(bounds.ymin, y);
  bounds.ymax = Math.max(bounds.ymax, y);
}

function growToArc(
  bounds: PlanBounds,
  arc: ArcChainEnvelope["arcs"][number],
): void {
  const lo = Math.min(arc.start_angle, arc.end_angle);
  const hi = Math.max(arc.start_angle, arc.end_angle);
  growToPoint(bounds, ...arcPoint(arc, arc.start_angle));
  growToPoint(bounds, ...arcPoint(arc, arc.end_angle));
  // Axis extremes occur at multiples of a quarter turn inside the span.
  for (let k = Math.ceil(lo / (Math.PI / 2)); k * (Math.PI / 2) <= hi; k += 1) {
    growToPoint(bounds, ...arcPoint(arc, k * (Math.PI / 2)));
  }
}

export function planBounds(items: readonly PlanItem[]): PlanBounds | null {
  const bounds: PlanBounds = {
    xmin: Infinity,
    xmax: -Infinity,
    ymin: Infinity,
    ymax: -Infinity,
  };
  let any = false;
  for (const item of items) {
    if (item.type === "polyline") {
      for (const [x, y] of item.points) {
        growToPoint(bounds, x, y);
        any = true;
      }
    } else if (item.type === "arcchain") {
      for (const arc of item.arcs) {
        growToArc(bounds, arc);
        any = true;
      }
    } else if (item.type === "contour") {
      for (const line of item.polylines) {
        for (const [x, y] of line.points) {
          growToPoint(bounds, x, y);
          any = true;
        }
      }
    }
  }
  return any ? bounds : null;
}

function itemPaths(item: PlanItem): { d: string; color: string; width: number | null }[] {
  const stroke = (item as PolylineEnvelope | ArcChainEnvelope).stroke;
  const color = stroke?.color ?? "black";
  const width = stroke?.width ?? null;
  if (item.type === "polyline") {
    return [{ d: polylinePath(item.points), color, width }];
  }
  if (item.type === "arcchain") {
    return [{ d: arcChainPath(item.arcs), color, width }];
  }
  return (item as ContourEnvelope).polylines.map((line) => ({
    d: polylinePath(line.points, line.closed),
    color,
    width,
  }));
}

const SVG_NS = "http://www.w3.org/2000/svg";
const PAD_FRACTION = 0.04;
const DEFAULT_STROKE_FRACTION = 0.008;

export class Viewer2d {
  constructor(private readonly container: HTMLElement) {}

  /** Replace the view with ``collection``; returns false when there was
   * nothing to draw (caller shows its placeholder instead). */
  show(collection: CollectionEnvelope): boolean {
    const bounds = planBounds(collection.items);
    if (bounds === null) {
      this.clear();
      return false;
    }
    const pad = PAD_FRACTION * Math.max(
      bounds.xmax - bounds.xmin,
      bounds.ymax - bounds.ymin,
      1e-9,
    );
    const x0 = bounds.xmin - pad;
    const y0 = -(bounds.ymax + pad);
    const width = bounds.xmax - bounds.xmin + 2 * pad;
    const height = bounds.ymax - bounds.ymin + 2 * pad;
    const fallbackWidth = DEFAULT_STROKE_FRACTION * Math.max(width, height);

    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `${x0} ${y0} ${width} ${height}`);
    svg.setAttribute("preserveAspectRatio", "xMidYMid meet");
    for (const item of collection.items) {
      for (const { d, color, width: strokeWidth } of itemPaths(item)) {
        if (d === "") {
          continue;
        }
        const path = document.createElementNS(SVG_NS, "path");
        path.setAttribute("d", d);
        path.setAttribute("fill", "none");
        path.setAttribute("stroke", color);
        path.setAttribute("stroke-width", String(strokeWidth ?? fallbackWidth));
        path.setAttribute("stroke-linecap", "round");
        svg.appendChild(path);
      }
    }
    this.container.replaceChildren(svg);
    return true;
  }

  clear(): void {
    this.container.replaceChildren();
  }
}
