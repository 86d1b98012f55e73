/** Pure HTML-string renderers.
 *
 * Every function maps plain data to markup with all dynamic text escaped,
 * so the full screen can be unit-tested as strings and the DOM layer stays
 * a one-line innerHTML assignment per region.
 */

import { tokenize } from "./highlight.js";
import {
  canSubmit,
  sessionMeanSeconds,
  ViewState,
} from "./state.js";
import {
  DisproofSummary,
  JudgeVote,
  REJECTION_CATEGORIES,
  ReviewItem,
  ServerStats,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function renderStatement(source: string): string {
  const spans = tokenize(source).map((token) => {
    const text = escapeHtml(token.text);
    return token.kind === "space"
      ? text
      : `<span class="tok-${token.kind}">${text}</span>`;
  });
  return `<pre class="statement"><code>${spans.join("")}</code></pre>`;
}

export function renderVotes(votes: JudgeVote[]): string {
  if (votes.length === 0) {
    return `<p class="muted">No semantic votes recorded.</p>`;
  }
  const rows = votes
    .map((vote) => {
      const cls =
        vote.verdict === "True"
          ? "vote-true"
          : vote.verdict === "False"
            ? "vote-false"
            : "vote-unparseable";
      return (
        `<li class="${cls}"><span class="vote-verdict">${escapeHtml(vote.verdict)}</span>` +
        ` <span class="vote-model">${escapeHtml(vote.model_id)}</span>` +
        `<blockquote>${escapeHtml(vote.raw_text)}</blockquote></li>`
      );
    })
    .join("");
  return `<ul class="votes">${rows}</ul>`;
}

export function renderDisproof(disproof: DisproofSummary | null): string {
  if (disproof === null) {
    return `<p class="muted">No disproof probe recorded.</p>`;
  }
  const outcome = typeof disproof.outcome === "string" ? disproof.outcome : "";
  let badge: string;
  if (outcome === "NegationUnproved") {
    badge = `<span class="badge badge-ok">negation unproved</span>`;
  } else if (outcome === "NegationIllFormed") {
    badge =
      `<span class="badge badge-warn">negation ill-formed — ` +
      `statement was not stress-tested</span>`;
  } else {
    badge = `<span class="badge">${escapeHtml(outcome || "unknown")}</span>`;
  }
  const parts = [badge];
  if (typeof disproof.attempts === "number") {
    parts.push(`<span class="muted">attempts: ${disproof.attempts}</span>`);
  }
  if (typeof disproof.rule === "string" && disproof.rule !== "") {
    parts.push(`<span class="muted">rule: ${escapeHtml(disproof.rule)}</span>`);
  }
  return `<p class="disproof">${parts.join(" ")}</p>`;
}

export function renderCategoryPicker(selected: string | null): string {
  const buttons = REJECTION_CATEGORIES.map((label, index) => {
    const active = label === selected ? " active" : "";
    return (
      `<button type="button" class="category${active}" data-category="${escapeHtml(label)}">` +
      `<kbd>${index + 1}</kbd> ${escapeHtml(label)}</button>`
    );
  });
  return `<div class="categories">${buttons.join("")}</div>`;
}

export function renderItem(item: ReviewItem): string {
  return `
<article class="item" data-item-id="${escapeHtml(item.item_id)}">
  <header>
    <h2>${escapeHtml(item.problem_id)}</h2>
    <span class="muted">candidate ${item.k + 1}, sample ${item.n + 1}</span>
  </header>
  <section class="pane">
    <h3>Problem</h3>
    <p class="nl">${escapeHtml(item.nl_statement)}</p>
    <p class="muted">reference answer: <code>${escapeHtml(item.reference_answer ?? "(none)")}</code></p>
  </section>
  <section class="pane">
    <h3>Formal statement</h3>
    ${renderStatement(item.statement_source)}
  </section>
  <section class="pane">
    <h3>Semantic votes</h3>
    ${renderVotes(item.votes)}
  </section>
  <section class="pane">
    <h3>Disproof probe</h3>
    ${renderDisproof(item.disproof)}
  </section>
</article>`;
}

function renderControls(state: ViewState): string {
  const verdict = state.pendingVerdict;
  const approveActive = verdict === "approve" ? " active" : "";
  const rejectActive = verdict === "reject" ? " active" : "";
  const submitDisabled = canSubmit(state) ? "" : " disabled";
  const categories =
    verdict === "reject" ? renderCategoryPicker(state.selectedCategory) : "";
  return `
<div class="controls">
  <button type="button" class="verdict approve${approveActive}" data-verdict="approve"><kbd>a</kbd> Approve</button>
  <button type="button" class="verdict reject${rejectActive}" data-verdict="reject"><kbd>r</kbd> Reject</button>
  ${categories}
  <button type="button" class="submit" data-submit${submitDisabled}><kbd>Enter</kbd> Submit</button>
</div>`;
}

export function renderEmpty(): string {
  return `
<div class="empty">
  <h2>Queue drained</h2>
  <p>No items are waiting for review. Press <kbd>l</kbd> to check again.</p>
</div>`;
}

function formatPercentValue(value: number): string {
  return `${value.toFixed(1)}%`;
}

export function renderStats(
  stats: ServerStats | null,
  session: { decided: number; meanSeconds: number | null },
): string {
  const sessionMean =
    session.meanSeconds === null ? "–" : `${session.meanSeconds.toFixed(1)}s`;
  const sessionRow =
    `<p>this session: <strong>${session.decided}</strong> decided, ` +
    `mean ${sessionMean}</p>`;
  if (stats === null) {
    return `<aside class="stats">${sessionRow}<p class="muted">campaign totals not loaded yet</p></aside>`;
  }
  const preservation =
    stats.preservation_rate === null
      ? "–"
      : formatPercentValue(stats.preservation_rate * 100);
  const meanDuration =
    stats.mean_duration_seconds === null
      ? "–"
      : `${stats.mean_duration_seconds.toFixed(1)}s`;
  const categories = Object.entries(stats.category_percentages)
    .filter(([, value]) => value > 0)
    .map(
      ([label, value]) =>
        `<li>${escapeHtml(label)}: ${formatPercentValue(value)}</li>`,
    )
    .join("");
  const categoryList =
    categories === ""
      ? `<p class="muted">no rejections yet</p>`
      : `<ul class="category-stats">${categories}</ul>`;
  return `
<aside class="stats">
  ${sessionRow}
  <p>campaign: ${stats.decided} decided
    (${stats.approved} approved, ${stats.rejected} rejected),
    ${stats.pending} pending</p>
  <p>preservation rate: <strong>${preservation}</strong></p>
  <p>mean decision time: ${meanDuration}
    across ${stats.annotator_count} reviewer${stats.annotator_count === 1 ? "" : "s"}</p>
  ${categoryList}
</aside>`;
}

export function renderApp(state: ViewState): string {
  const banner =
    state.banner === null
      ? ""
      : `<div class="banner">${escapeHtml(state.banner)}</div>`;
  let main: string;
  if (state.phase === "loading") {
    main = `<div class="loading">Fetching next item…</div>`;
  } else if (state.phase === "empty") {
    main = renderEmpty();
  } else {
    main = renderItem(state.item as ReviewItem) + renderControls(state);
  }
  const stats = renderStats(state.serverStats, {
    decided: state.session.decided,
    meanSeconds: sessionMeanSeconds(state),
  });
  return `
<div class="app">
  <header class="topbar">
    <h1>Review queue</h1>
    <span class="reviewer">signed in as <strong>${escapeHtml(state.reviewer)}</strong></span>
  </header>
  ${banner}
  <main>${main}</main>
  ${stats}
</div>`;
}
