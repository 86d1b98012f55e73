/** DOM driver: wires the pure state machine and renderers to the page. */

import { ApiError, ReviewApi } from "./api.js";
import { renderApp } from "./render.js";
import { REJECTION_CATEGORIES, RejectionCategory } from "./types.js";
import {
  Action,
  beginSubmit,
  chooseCategory,
  chooseVerdict,
  initialState,
  itemLoaded,
  keyToAction,
  loadFailed,
  statsLoaded,
  STATS_POLL_MS,
  submitConflicted,
  submitFailed,
  submitSucceeded,
  ViewState,
} from "./state.js";

function reviewerFromLocation(): string {
  const params = new URLSearchParams(window.location.search);
  const reviewer = params.get("reviewer");
  if (reviewer !== null && reviewer.trim() !== "") return reviewer.trim();
  const typed = window.prompt("Reviewer id:");
  return typed === null || typed.trim() === "" ? "anonymous" : typed.trim();
}

function start(): void {
  const root = document.getElementById("root");
  if (root === null) throw new Error("missing #root element");
  const api = new ReviewApi();
  let state: ViewState = initialState(reviewerFromLocation());

  const render = () => {
    root.innerHTML = renderApp(state);
  };

  const refreshStats = async () => {
    try {
      state = statsLoaded(state, await api.stats());
      render();
    } catch {
      // Stats are advisory; the next poll will retry.
    }
  };

  const loadNext = async () => {
    try {
      state = itemLoaded(state, await api.nextItem(state.reviewer), Date.now());
    } catch (error) {
      state = loadFailed(state, error instanceof Error ? error.message : "fetch failed");
    }
    render();
  };

  const submit = async () => {
    const started = beginSubmit(state, Date.now());
    if (started === null) return;
    state = started.state;
    render();
    try {
      await api.submitDecision(started.payload);
      state = submitSucceeded(state, started.payload.duration_seconds);
    } catch (error) {
      if (error instanceof ApiError && error.isConflict) {
        state = submitConflicted(state, error.message);
      } else {
        state = submitFailed(
          state,
          error instanceof Error ? error.message : "submit failed",
        );
        render();
        return;
      }
    }
    render();
    void refreshStats();
    void loadNext();
  };

  const dispatch = (action: Action) => {
    if (action.kind === "verdict") {
      state = chooseVerdict(state, action.verdict);
      render();
    } else if (action.kind === "category") {
      state = chooseCategory(state, action.category);
      render();
    } else if (action.kind === "submit") {
      void submit();
    } else {
      state = { ...state, banner: null };
      render();
      void loadNext();
    }
  };

  document.addEventListener("keydown", (event) => {
    if (event.defaultPrevented || event.ctrlKey || event.metaKey || event.altKey) {
      return;
    }
    const action = keyToAction(event.key);
    if (action !== null) {
      event.preventDefault();
      dispatch(action);
    }
  });

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement | null;
    const button = target?.closest<HTMLElement>(
      "[data-verdict], [data-category], [data-submit]",
    );
    if (button === null || button === undefined) return;
    const verdict = button.dataset["verdict"];
    const category = button.dataset["category"];
    if (verdict === "approve" || verdict === "reject") {
      dispatch({ kind: "verdict", verdict });
    } else if (
      category !== undefined &&
      (REJECTION_CATEGORIES as readonly string[]).includes(category)
    ) {
      dispatch({ kind: "category", category: category as RejectionCategory });
    } else if (button.hasAttribute("data-submit")) {
      dispatch({ kind: "submit" });
    }
  });

  render();
  void loadNext();
  void refreshStats();
  window.setInterval(() => void refreshStats(), STATS_POLL_MS);
}

start();
