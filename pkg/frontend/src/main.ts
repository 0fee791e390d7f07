/** Application wiring: controls on the left, geometry on the right.
 *
 * All math lives on the service; this file only routes values.  Slider
 * edits go through the session-state transitions (which catch bad values
 * before any request exists), then through the per-view scheduler (which
 * debounces and keeps only the latest reply), then through the payload
 * checks, and only then to a renderer.
 */

import { ApiClient, ApiError } from "./api.js";
import { DEBOUNCE_MS, RequestScheduler } from "./scheduler.js";
import {
  SessionState,
  initialState,
  activeSchemas,
  requestPlan,
  selectCustom,
  selectRecipe,
  setCamera,
  updateParameter,
  withRecipes,
} from "./state.js";
import type {
  CollectionEnvelope,
  MeshEnvelope,
  RecipeSchema,
} from "./types.js";
import { PayloadError, checkCollection, checkMesh } from "./validate.js";
import { Viewer2d } from "./viewer2d.js";
import { Viewer3d, buildSurfaceGeometry } from "./viewer3d.js";

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (found === null) {
    throw new Error(`missing #${id} in index.html`);
  }
  return found as T;
}

const client = new ApiClient("");
let state: SessionState = initialState();

const banner = element<HTMLDivElement>("banner");
const bannerText = element<HTMLSpanElement>("banner-text");
const bannerRetry = element<HTMLButtonElement>("banner-retry");
const recipeList = element<HTMLDivElement>("recipe-list");
const paramPanel = element<HTMLDivElement>("params");
const customExpr = element<HTMLTextAreaElement>("custom-expr");
const customRun = element<HTMLButtonElement>("custom-run");
const customError = element<HTMLDivElement>("custom-error");
const view3dHost = element<HTMLDivElement>("view3d");
const view2dHost = element<HTMLDivElement>("view2d");
const placeholder = element<HTMLDivElement>("placeholder");
const errorPanel = element<HTMLDivElement>("error-panel");
const readout = element<HTMLDivElement>("readout");
const wireframeToggle = element<HTMLInputElement>("wireframe-toggle");
const statusLine = element<HTMLDivElement>("status");
const spinner = element<HTMLDivElement>("spinner");

const viewer3d = new Viewer3d(view3dHost);
const viewer2d = new Viewer2d(view2dHost);

viewer3d.bindHover((point) => {
  if (point === null) {
    readout.textContent = "";
  } else {
    const fmt = (v: number) => v.toFixed(4);
    readout.textContent = `x ${fmt(point.x)}   y ${fmt(point.y)}   z ${fmt(point.z)}`;
  }
});
viewer3d.bindPoseChange((pose) => {
  state = setCamera(state, pose);
});
wireframeToggle.addEventListener("change", () => {
  viewer3d.setWireframe(wireframeToggle.checked);
});

function showError(message: string): void {
  errorPanel.textContent = message;
  errorPanel.hidden = false;
}

function clearError(): void {
  errorPanel.hidden = true;
  customError.hidden = true;
}

function showView(mode: "3d" | "2d" | "placeholder", note = ""): void {
  view3dHost.hidden = mode !== "3d";
  view2dHost.hidden = mode !== "2d";
  placeholder.hidden = mode !== "placeholder";
  if (mode === "placeholder") {
    placeholder.textContent = note || "no geometry at these settings";
  }
}

function routeError(error: unknown): void {
  if (error instanceof PayloadError) {
    // Keep whatever frame is on screen; just surface the message.
    showError(`malformed reply: ${error.message}`);
    return;
  }
  if (error instanceof ApiError) {
    if (error.code === "EMPTY_MESH") {
      showView("placeholder");
      clearError();
      return;
    }
    if (error.numeric || error.status === 400) {
      if (state.selectedId === null) {
        customError.textContent = error.message;
        customError.hidden = false;
      } else {
        showError(error.message);
      }
      return;
    }
    if (error.unreachable) {
      showBanner("lost contact with the geometry service");
      return;
    }
  }
  showError(error instanceof Error ? error.message : String(error));
}

const meshScheduler = new RequestScheduler<MeshEnvelope>(
  {
    onResult(payload) {
      try {
        const mesh = checkMesh(payload);
        if (mesh.vertices.length === 0 || mesh.triangles.length === 0) {
          showView("placeholder");
          return;
        }
        viewer3d.show(buildSurfaceGeometry(mesh));
        showView("3d");
        clearError();
      } catch (error) {
        routeError(error);
      }
    },
    onError: routeError,
    onBusy(busy) {
      spinner.hidden = !busy;
    },
  },
  DEBOUNCE_MS,
);

const spiralScheduler = new RequestScheduler<CollectionEnvelope>(
  {
    onResult(payload) {
      try {
        const collection = checkCollection(payload);
        if (viewer2d.show(collection)) {
          showView("2d");
          clearError();
        } else {
          showView("placeholder");
        }
      } catch (error) {
        routeError(error);
      }
    },
    onError: routeError,
    onBusy(busy) {
      spinner.hidden = !busy;
    },
  },
  DEBOUNCE_MS,
);

function dispatch(immediate: boolean): void {
  const plan = requestPlan(state);
  if (plan === null) {
    return; // an inline issue is showing; nothing leaves the browser
  }
  if (plan.endpoint === "mesh") {
    spiralScheduler.cancel();
    const run = (signal: AbortSignal) => client.mesh(plan.body, signal);
    immediate ? void meshScheduler.fireNow(run) : meshScheduler.schedule(run);
  } else {
    meshScheduler.cancel();
    const run = (signal: AbortSignal) => client.spiral(plan.body, signal);
    immediate ? void spiralScheduler.fireNow(run) : spiralScheduler.schedule(run);
  }
}

// --- parameter controls ----------------------------------------------------

function sliderStep(schema: { min?: number; max?: number; integer?: boolean }): string {
  if (schema.integer) {
    return "1";
  }
  if (schema.min !== undefined && schema.max !== undefined) {
    return String((schema.max - schema.min) / 200);
  }
  return "0.01";
}

function renderParams(): void {
  paramPanel.replaceChildren();
  for (const schema of activeSchemas(state)) {
    const row = document.createElement("div");
    row.className = "param-row";

    const label = document.createElement("label");
    label.textContent = schema.name;
    row.appendChild(label);

    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = String(schema.min ?? schema.default / 4);
    slider.max = String(schema.max ?? schema.default * 4);
    slider.step = sliderStep(schema);
    slider.value = String(state.params[schema.name] ?? schema.default);

    const box = document.createElement("input");
    box.type = "number";
    box.step = sliderStep(schema);
    box.value = slider.value;

    const issue = document.createElement("div");
    issue.className = "param-issue";
    issue.hidden = true;

    const apply = (raw: string, immediate: boolean) => {
      const value = Number(raw);
      state = updateParameter(state, schema.name, value);
      const message = state.issues[schema.name];
      if (message === undefined) {
        issue.hidden = true;
        dispatch(immediate);
      } else {
        issue.textContent = `${schema.name} ${message}`;
        issue.hidden = false;
      }
    };
    slider.addEventListener("input", () => {
      box.value = slider.value;
      apply(slider.value, false);
    });
    box.addEventListener("input", () => {
      apply(box.value, false);
    });

    row.appendChild(slider);
    row.appendChild(box);
    row.appendChild(issue);
    paramPanel.appendChild(row);
  }
}

// --- recipe picker ---------------------------------------------------------

function renderRecipeList(): void {
  recipeList.replaceChildren();
  for (const recipe of state.recipes) {
    const button = document.createElement("button");
    button.className = "recipe-button";
    button.dataset.recipe = recipe.id;
    button.textContent = `${recipe.id} — ${recipe.title}`;
    if (recipe.note !== "") {
      button.title = recipe.note;
    }
    button.addEventListener("click", () => {
      state = selectRecipe(state, recipe.id);
      markSelection();
      renderParams();
      clearError();
      dispatch(true);
    });
    recipeList.appendChild(button);
  }
  const custom = document.createElement("button");
  custom.className = "recipe-button";
  custom.dataset.recipe = "";
  custom.textContent = "custom expression";
  custom.addEventListener("click", () => {
    state = selectCustom(state);
    markSelection();
    renderParams();
    clearError();
    dispatch(true);
  });
  recipeList.appendChild(custom);
  markSelection();
}

function markSelection(): void {
  for (const child of recipeList.children) {
    const button = child as HTMLButtonElement;
    button.classList.toggle(
      "selected",
      (button.dataset.recipe || null) === state.selectedId,
    );
  }
}

customRun.addEventListener("click", () => {
  state = selectCustom(state, customExpr.value);
  markSelection();
  renderParams();
  clearError();
  dispatch(true);
});

// --- boot ------------------------------------------------------------------

function showBanner(message: string): void {
  bannerText.textContent = message;
  banner.hidden = false;
}

async function loadRecipes(): Promise<void> {
  banner.hidden = true;
  try {
    const [health, recipes] = await Promise.all([
      client.health(),
      client.recipes(),
    ]);
    statusLine.textContent = `service ${health.version} · ${health.kernel_lane} kernels`;
    state = withRecipes(state, recipes as RecipeSchema[]);
    renderRecipeList();
    renderParams();
    dispatch(true);
  } catch (error) {
    showBanner(
      error instanceof ApiError && error.unreachable
        ? "cannot reach the geometry service — is `morphocell serve` running?"
        : `failed to load recipes: ${error instanceof Error ? error.message : error}`,
    );
  }
}

bannerRetry.addEventListener("click", () => {
  void loadRecipes();
});

customExpr.value = state.customExpr;
showView("placeholder", "pick a recipe to begin");
void loadRecipes();
