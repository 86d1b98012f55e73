import { JudgeVote, ReviewItem } from "../src/types.js";

export function buildVotes(): JudgeVote[] {
  return [
    { model_id: "judge-0", raw_text: "Faithful. True", verdict: "True" },
    { model_id: "judge-1", raw_text: "Matches the problem. True", verdict: "True" },
    { model_id: "judge-2", raw_text: "Conditions align. True", verdict: "True" },
  ];
}

export function buildItem(overrides: Partial<ReviewItem> = {}): ReviewItem {
  return {
    item_id: "prob-1:0:0",
    problem_id: "prob-1",
    k: 0,
    n: 0,
    nl_statement: "Show that 1 + 1 = 2.",
    reference_answer: "2",
    statement_source:
      "import Mathlib\n\ntheorem prob_1 : 1 + 1 = 2 := by norm_num",
    votes: buildVotes(),
    disproof: {
      outcome: "NegationUnproved",
      attempts: 2,
      negated_name: "prob_1_negative",
      rule: "eq_to_neq",
    },
    ...overrides,
  };
}
