/** Session state and the pure transitions the controls drive.
 *
 * The state captures everything needed to reproduce the view: which
 * recipe is selected (or the custom expression text), the current
 * parameter values with any inline validation issues, the active view
 * mode, and the camera pose.  Transitions are pure — they return a new
 * state — so every rule ("t = 0 never produces a request") is testable
 * without a DOM.
 */

import type { RecipeParamSchema, RecipeSchema } from "./types.js";
import { paramIssue } from "./validate.js";

export type ViewMode = "3d" | "2d";

export interface CameraPose {
  theta: number;
  phi: number;
  distance: number;
}

export const DEFAULT_POSE: CameraPose = {
  theta: Math.PI / 4,
  phi: Math.PI / 3,
  distance: 8,
};

/** Slider schemas for the custom-expression panel; the expression itself
 * is validated by the service, these only bound the request knobs. */
export const CUSTOM_PARAMS: RecipeParamSchema[] = [
  { name: "t", default: 1.0, min: 0.05, max: 16.0 },
  { name: "resolution", default: 65, min: 17, max: 513, integer: true },
];

export interface SessionState {
  recipes: RecipeSchema[];
  /** Selected recipe id, or null when the custom panel drives the view. */
  selectedId: string | null;
  customExpr: string;
  params: Record<string, number>;
  issues: Record<string, string>;
  viewMode: ViewMode;
  camera: CameraPose;
}

export function initialState(): SessionState {
  return {
    recipes: [],
    selectedId: null,
    customExpr: "abs(x*y)^(1/t)",
    params: {},
    issues: {},
    viewMode: "3d",
    camera: { ...DEFAULT_POSE },
  };
}

export function defaultParams(schemas: RecipeParamSchema[]): Record<string, number> {
  const out: Record<string, number> = {};
  for (const schema of schemas) {
    out[schema.name] = schema.default;
  }
  return out;
}

export function recipeById(
  state: SessionState,
  id: string | null,
): RecipeSchema | null {
  if (id === null) {
    return null;
  }
  return state.recipes.find((recipe) => recipe.id === id) ?? null;
}

/** Schemas governing the currently editable parameters. */
export function activeSchemas(state: SessionState): RecipeParamSchema[] {
  const recipe = recipeById(state, state.selectedId);
  return recipe === null ? CUSTOM_PARAMS : recipe.params;
}

export function withRecipes(
  state: SessionState,
  recipes: RecipeSchema[],
): SessionState {
  const next = { ...state, recipes };
  const first = recipes[0];
  if (next.selectedId === null && first !== undefined) {
    return selectRecipe(next, first.id);
  }
  return next;
}

export function selectRecipe(state: SessionState, id: string): SessionState {
  const recipe = state.recipes.find((r) => r.id === id);
  if (recipe === undefined) {
    return state;
  }
  return {
    ...state,
    selectedId: id,
    params: defaultParams(recipe.params),
    issues: {},
    viewMode: recipe.kind === "mesh" ? "3d" : "2d",
  };
}

export function selectCustom(state: SessionState, expr?: string): SessionState {
  return {
    ...state,
    selectedId: null,
    customExpr: expr ?? state.customExpr,
    params: defaultParams(CUSTOM_PARAMS),
    issues: {},
    viewMode: "3d",
  };
}

export function setCamera(state: SessionState, pose: CameraPose): SessionState {
  return { ...state, camera: { ...pose } };
}

/** Apply a control edit.  The typed value always lands in ``params`` so
 * the input reflects it, but when it violates the schema the issue is
 * recorded and ``requestPlan`` will refuse to build a request. */
export function updateParameter(
  state: SessionState,
  name: string,
  value: number,
): SessionState {
  const schema = activeSchemas(state).find((s) => s.name === name);
  if (schema === undefined) {
    return state;
  }
  const issue = paramIssue(schema, value);
  const issues = { ...state.issues };
  if (issue === null) {
    delete issues[name];
  } else {
    issues[name] = issue;
  }
  return { ...state, params: { ...state.params, [name]: value }, issues };
}

export interface RequestPlan {
  endpoint: "mesh" | "spiral";
  body: Record<string, unknown>;
  viewMode: ViewMode;
}

/** Build the next request, or null when validation issues block it. */
export function requestPlan(state: SessionState): RequestPlan | null {
  if (Object.keys(state.issues).length > 0) {
    return null;
  }
  const recipe = recipeById(state, state.selectedId);
  if (recipe !== null) {
    return {
      endpoint: recipe.kind === "mesh" ? "mesh" : "spiral",
      body: { recipe: recipe.id, overrides: { ...state.params } },
      viewMode: recipe.kind === "mesh" ? "3d" : "2d",
    };
  }
  return {
    endpoint: "mesh",
    body: {
      expr: state.customExpr,
      kind: "heightfield",
      t: state.params.t ?? 1.0,
      resolution: state.params.resolution ?? 65,
    },
    viewMode: "3d",
  };
}
