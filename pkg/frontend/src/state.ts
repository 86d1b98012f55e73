/** Pure view-state machine for the review screen.
 *
 * Every transition returns a fresh state, so the UI layer is a thin render
 * of whatever this module says.  The machine enforces the submit rules
 * (a verdict must be chosen, rejections must name a category, one mutation
 * in flight at a time) so an invalid decision payload cannot be built.
 */

import {
  RejectionCategory,
  REJECTION_CATEGORIES,
  ReviewItem,
  ServerStats,
  Verdict,
} from "./types.js";

export const STATS_POLL_MS = 15_000;

export type Phase = "loading" | "reviewing" | "empty";

export interface SessionStats {
  decided: number;
  totalDurationSeconds: number;
}

interface Snapshot {
  item: ReviewItem;
  pendingVerdict: Verdict;
  selectedCategory: RejectionCategory | null;
  itemShownAt: number;
}

export interface ViewState {
  reviewer: string;
  phase: Phase;
  item: ReviewItem | null;
  pendingVerdict: Verdict | null;
  selectedCategory: RejectionCategory | null;
  inFlight: boolean;
  banner: string | null;
  serverStats: ServerStats | null;
  session: SessionStats;
  itemShownAt: number | null;
  snapshot: Snapshot | null;
}

export function initialState(reviewer: string): ViewState {
  return {
    reviewer,
    phase: "loading",
    item: null,
    pendingVerdict: null,
    selectedCategory: null,
    inFlight: false,
    banner: null,
    serverStats: null,
    session: { decided: 0, totalDurationSeconds: 0 },
    itemShownAt: null,
    snapshot: null,
  };
}

/** A fetched item (or an empty queue) replaces whatever was on screen. */
export function itemLoaded(
  state: ViewState,
  item: ReviewItem | null,
  now: number,
): ViewState {
  return {
    ...state,
    phase: item === null ? "empty" : "reviewing",
    item,
    pendingVerdict: null,
    selectedCategory: null,
    banner: null,
    itemShownAt: item === null ? null : now,
    snapshot: null,
  };
}

/** A failed fetch shows a retry banner and preserves everything else. */
export function loadFailed(state: ViewState, message: string): ViewState {
  return { ...state, banner: `${message} — retry with "l"` };
}

export function chooseVerdict(state: ViewState, verdict: Verdict): ViewState {
  if (state.item === null || state.inFlight) return state;
  return { ...state, pendingVerdict: verdict };
}

/** Picking a category implies Reject; reviewers tap a number and submit. */
export function chooseCategory(
  state: ViewState,
  category: RejectionCategory,
): ViewState {
  if (state.item === null || state.inFlight) return state;
  return { ...state, pendingVerdict: "reject", selectedCategory: category };
}

export function canSubmit(state: ViewState): boolean {
  if (state.item === null || state.inFlight || state.pendingVerdict === null) {
    return false;
  }
  return state.pendingVerdict === "approve" || state.selectedCategory !== null;
}

export interface SubmitStart {
  state: ViewState;
  payload: {
    item_id: string;
    reviewer_id: string;
    verdict: Verdict;
    error_category?: RejectionCategory;
    duration_seconds: number;
  };
}

/** Optimistically advance: clear the screen, remember how to roll back. */
export function beginSubmit(state: ViewState, now: number): SubmitStart | null {
  if (!canSubmit(state)) return null;
  const item = state.item as ReviewItem;
  const verdict = state.pendingVerdict as Verdict;
  const shownAt = state.itemShownAt ?? now;
  const payload: SubmitStart["payload"] = {
    item_id: item.item_id,
    reviewer_id: state.reviewer,
    verdict,
    duration_seconds: Math.max(0, (now - shownAt) / 1000),
  };
  if (verdict === "reject") {
    payload.error_category = state.selectedCategory as RejectionCategory;
  }
  return {
    state: {
      ...state,
      phase: "loading",
      item: null,
      pendingVerdict: null,
      selectedCategory: null,
      inFlight: true,
      itemShownAt: null,
      snapshot: {
        item,
        pendingVerdict: verdict,
        selectedCategory: state.selectedCategory,
        itemShownAt: shownAt,
      },
    },
    payload,
  };
}

export function submitSucceeded(
  state: ViewState,
  durationSeconds: number,
): ViewState {
  return {
    ...state,
    inFlight: false,
    snapshot: null,
    session: {
      decided: state.session.decided + 1,
      totalDurationSeconds: state.session.totalDurationSeconds + durationSeconds,
    },
  };
}

/** Someone else settled the item: notify and move on; nothing is counted. */
export function submitConflicted(state: ViewState, message: string): ViewState {
  return {
    ...state,
    inFlight: false,
    snapshot: null,
    banner: `decision not recorded: ${message}`,
  };
}

/** Transport failure: roll the item back so the decision can be resent. */
export function submitFailed(state: ViewState, message: string): ViewState {
  const snapshot = state.snapshot;
  if (snapshot === null) {
    return { ...state, inFlight: false, banner: `${message} — retry with "l"` };
  }
  return {
    ...state,
    phase: "reviewing",
    item: snapshot.item,
    pendingVerdict: snapshot.pendingVerdict,
    selectedCategory: snapshot.selectedCategory,
    itemShownAt: snapshot.itemShownAt,
    inFlight: false,
    snapshot: null,
    banner: `${message} — press Enter to retry`,
  };
}

export function statsLoaded(state: ViewState, stats: ServerStats): ViewState {
  return { ...state, serverStats: stats };
}

export function sessionMeanSeconds(state: ViewState): number | null {
  if (state.session.decided === 0) return null;
  return state.session.totalDurationSeconds / state.session.decided;
}

export type Action =
  | { kind: "verdict"; verdict: Verdict }
  | { kind: "category"; category: RejectionCategory }
  | { kind: "submit" }
  | { kind: "reload" };

/** Keyboard-first bindings: a/r verdicts, 1-8 categories, Enter submits. */
export function keyToAction(key: string): Action | null {
  if (key === "a") return { kind: "verdict", verdict: "approve" };
  if (key === "r") return { kind: "verdict", verdict: "reject" };
  if (key === "Enter") return { kind: "submit" };
  if (key === "l") return { kind: "reload" };
  if (/^[1-8]$/.test(key)) {
    const category = REJECTION_CATEGORIES[Number(key) - 1];
    if (category !== undefined) return { kind: "category", category };
  }
  return null;
}
