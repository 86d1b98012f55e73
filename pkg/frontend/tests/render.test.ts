import { describe, expect, it } from "vitest";

import { tokenize } from "../src/highlight.js";
import {
  escapeHtml,
  renderApp,
  renderCategoryPicker,
  renderDisproof,
  renderEmpty,
  renderItem,
  renderStatement,
  renderStats,
  renderVotes,
} from "../src/render.js";
import {
  chooseCategory,
  chooseVerdict,
  initialState,
  itemLoaded,
} from "../src/state.js";
import { REJECTION_CATEGORIES, ServerStats } from "../src/types.js";
import { buildItem, buildVotes } from "./fixtures.js";

describe("escaping", () => {
  it("neutralises markup in reviewer-facing text", () => {
    const hostile = buildItem({
      nl_statement: `<script>alert("x")</script>`,
      statement_source: `theorem bad : "<img src=x>" = "<img src=x>" := rfl`,
      problem_id: `<b>p</b>`,
    });
    const html = renderItem(hostile);
    expect(html).not.toContain("<script>");
    expect(html).not.toContain("<img");
    expect(html).toContain("&lt;script&gt;");
    expect(html).toContain("&lt;b&gt;p&lt;/b&gt;");
  });

  it("escapes every dangerous character", () => {
    expect(escapeHtml(`<&>"'`)).toBe("&lt;&amp;&gt;&quot;&#39;");
  });
});

describe("statement highlighting", () => {
  it("tokenization is lossless over statement sources", () => {
    const sources = [
      buildItem().statement_source,
      "-- a comment\ntheorem t : ∀ x : ℕ, x + 0 = x := by\n  simp",
      `/- block /- nested -/ still -/ def f := "str \\" quote" -- tail`,
      "theorem gap : 1 ≠ 2 := by sorry",
    ];
    for (const source of sources) {
      const joined = tokenize(source)
        .map((token) => token.text)
        .join("");
      expect(joined).toBe(source);
    }
  });

  it("marks keywords, comments, and proof holes distinctly", () => {
    const html = renderStatement(
      "-- note\ntheorem t : 1 + 1 = 2 := by sorry",
    );
    expect(html).toContain(`<span class="tok-keyword">theorem</span>`);
    expect(html).toContain(`<span class="tok-keyword">by</span>`);
    expect(html).toContain(`<span class="tok-comment">-- note</span>`);
    expect(html).toContain(`<span class="tok-hole">sorry</span>`);
    expect(html).toContain(`<span class="tok-number">2</span>`);
  });
});

describe("votes and disproof", () => {
  it("lists every judge vote with its verdict", () => {
    const html = renderVotes(buildVotes());
    expect(html).toContain("judge-0");
    expect(html).toContain("judge-1");
    expect(html).toContain("judge-2");
    expect(html.match(/vote-true/g)).toHaveLength(3);
  });

  it("colours dissenting and unparseable votes differently", () => {
    const html = renderVotes([
      { model_id: "j0", raw_text: "no", verdict: "False" },
      { model_id: "j1", raw_text: "???", verdict: "Unparseable" },
    ]);
    expect(html).toContain("vote-false");
    expect(html).toContain("vote-unparseable");
  });

  it("shows a calm badge when the negation stayed unproved", () => {
    const html = renderDisproof(buildItem().disproof);
    expect(html).toContain("badge-ok");
    expect(html).toContain("negation unproved");
    expect(html).toContain("attempts: 2");
    expect(html).toContain("rule: eq_to_neq");
  });

  it("warns loudly when the negation was ill-formed", () => {
    const html = renderDisproof({ outcome: "NegationIllFormed" });
    expect(html).toContain("badge-warn");
    expect(html).toContain("not stress-tested");
  });

  it("copes with a missing probe", () => {
    expect(renderDisproof(null)).toContain("No disproof probe");
    expect(renderDisproof({})).toContain("unknown");
  });
});

describe("controls", () => {
  it("offers all eight rejection categories with their hotkeys", () => {
    const html = renderCategoryPicker(null);
    for (const [index, label] of REJECTION_CATEGORIES.entries()) {
      expect(html).toContain(escapeHtml(label));
      expect(html).toContain(`<kbd>${index + 1}</kbd>`);
    }
  });

  it("disables submit until the decision is complete", () => {
    let state = itemLoaded(initialState("alice"), buildItem(), 0);
    expect(renderApp(state)).toContain("data-submit disabled");
    state = chooseVerdict(state, "reject");
    expect(renderApp(state)).toContain("data-submit disabled");
    state = chooseCategory(state, REJECTION_CATEGORIES[0]);
    const html = renderApp(state);
    expect(html).not.toContain("data-submit disabled");
    expect(html).toContain("data-submit");
  });

  it("only shows the category picker for rejections", () => {
    let state = itemLoaded(initialState("alice"), buildItem(), 0);
    state = chooseVerdict(state, "approve");
    expect(renderApp(state)).not.toContain("data-category");
    state = chooseVerdict(state, "reject");
    expect(renderApp(state)).toContain("data-category");
  });
});

describe("screens", () => {
  it("renders the drained-queue screen", () => {
    const html = renderEmpty();
    expect(html).toContain("Queue drained");
    expect(html).toContain("No items are waiting");
  });

  it("renders fetched campaign statistics without recomputing them", () => {
    const stats: ServerStats = {
      decided: 8,
      approved: 5,
      rejected: 3,
      pending: 12,
      preservation_rate: 0.625,
      category_percentages: {
        ...Object.fromEntries(REJECTION_CATEGORIES.map((label) => [label, 0])),
        [REJECTION_CATEGORIES[0]]: 66.7,
        [REJECTION_CATEGORIES[4]]: 33.3,
      },
      mean_duration_seconds: 41.25,
      annotator_count: 3,
    };
    const html = renderStats(stats, { decided: 2, meanSeconds: 30 });
    expect(html).toContain("62.5%");
    expect(html).toContain("8 decided");
    expect(html).toContain("12 pending");
    expect(html).toContain("41.3s");
    expect(html).toContain("3 reviewers");
    expect(html).toContain(`${escapeHtml(REJECTION_CATEGORIES[0])}: 66.7%`);
    expect(html).toContain(`${escapeHtml(REJECTION_CATEGORIES[4])}: 33.3%`);
    expect(html).not.toContain(`${escapeHtml(REJECTION_CATEGORIES[1])}:`);
    expect(html).toContain("<strong>2</strong> decided");
    expect(html).toContain("mean 30.0s");
  });

  it("shows placeholders before any stats arrive", () => {
    const html = renderStats(null, { decided: 0, meanSeconds: null });
    expect(html).toContain("not loaded yet");
    expect(html).toContain("<strong>0</strong> decided");
  });

  it("renders the full reviewing screen from one state value", () => {
    const state = itemLoaded(initialState("alice"), buildItem(), 0);
    const html = renderApp(state);
    expect(html).toContain("signed in as <strong>alice</strong>");
    expect(html).toContain("prob-1");
    expect(html).toContain("Show that 1 + 1 = 2.");
    expect(html).toContain("reference answer");
    expect(html).toContain("candidate 1, sample 1");
    expect(html).toContain("data-verdict=\"approve\"");
    expect(html).toContain("data-verdict=\"reject\"");
  });

  it("renders a banner when one is set", () => {
    const state = {
      ...itemLoaded(initialState("alice"), buildItem(), 0),
      banner: "decision not recorded: taken",
    };
    expect(renderApp(state)).toContain("decision not recorded: taken");
  });
});
