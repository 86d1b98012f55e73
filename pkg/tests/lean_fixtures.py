"""Shared theorem-statement sources used across parser and pipeline tests."""

SET_EQUALITY_SRC = """\
import Mathlib

def refBase (n : ℕ) : Prop :=
  ∀ k l, 0 < k → 0 < l → k < n → l < n →
  (k ∣ n → l ∣ n → (2 * k - l ∣ n ∨ 2 * l - k ∣ n))

theorem olymid_ref_base_1120 : {n | 1 < n ∧ refBase n} = {6, 9, 15} := by
  sorry
"""

SET_EQUALITY_NEGATED_SRC = """\
import Mathlib

def refBase (n : ℕ) : Prop :=
  ∀ k l, 0 < k → 0 < l → k < n → l < n →
  (k ∣ n → l ∣ n → (2 * k - l ∣ n ∨ 2 * l - k ∣ n))

theorem olymid_ref_base_1120_negative : {n | 1 < n ∧ refBase n} ≠ {6, 9, 15} := by
  sorry
"""

DERIVATIVE_SRC = """\
import Mathlib

open Real Set
open scoped BigOperators

theorem u_math_915 {f : ℝ → ℝ} (hf : f = λ x => 2 * x ^ 2 * sin x) :
    iteratedDeriv 27 f = λ x => 1404 * cos x - 2 * x ^ 2 * cos x - 108 * x * sin x := by
  sorry
"""

EXISTENTIAL_SRC = """\
import Mathlib

theorem algebra_68653 : ¬ ∃ x y : ℤ, x ^ 3 = 7 * y + 3 := by
  sorry
"""
