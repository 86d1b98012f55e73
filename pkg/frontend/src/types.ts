/** Wire types for the review service API (all bodies carry `schema: 1`). */

export const SCHEMA_VERSION = 1;

/** Error categories a rejection must name, in display/hotkey order. */
export const REJECTION_CATEGORIES = [
  "Condition Error",
  "Expression Error (Lean Syntax)",
  "Definition Error (No Mathematical Meaning)",
  "Domain Error",
  "Propositional Logic Error",
  "Lack of Geometric Background",
  "Condition Redundancy",
  "Algebraic Expression Error",
] as const;

export type RejectionCategory = (typeof REJECTION_CATEGORIES)[number];

export type Verdict = "approve" | "reject";

export interface JudgeVote {
  model_id: string;
  raw_text: string;
  verdict: "True" | "False" | "Unparseable";
}

export interface DisproofSummary {
  outcome?: "NegationProved" | "NegationUnproved" | "NegationIllFormed";
  attempts?: number;
  negated_name?: string;
  rule?: string;
  [extra: string]: unknown;
}

export interface ReviewItem {
  item_id: string;
  problem_id: string;
  k: number;
  n: number;
  nl_statement: string;
  reference_answer: string | null;
  statement_source: string;
  votes: JudgeVote[];
  disproof: DisproofSummary;
}

export interface DecisionPayload {
  schema: typeof SCHEMA_VERSION;
  item_id: string;
  reviewer_id: string;
  verdict: Verdict;
  error_category?: RejectionCategory;
  duration_seconds?: number;
}

export interface DecisionAck {
  schema: number;
  status: string;
  item_id: string;
  verdict: Verdict;
}

/** Campaign statistics; always fetched from the server, never derived here. */
export interface ServerStats {
  schema?: number;
  decided: number;
  approved: number;
  rejected: number;
  pending: number;
  preservation_rate: number | null;
  category_percentages: Record<string, number>;
  mean_duration_seconds: number | null;
  annotator_count: number;
}

export interface ItemDetail {
  schema?: number;
  item: ReviewItem;
  decided: boolean;
  decisions: Array<{
    reviewer_id: string;
    verdict: Verdict;
    error_category: string | null;
    duration_seconds: number | null;
    decided_at: number;
  }>;
}
