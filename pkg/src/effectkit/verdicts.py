"""Verdict values for properties that may only be semi-decidable.

Searches over infinite groups are bounded by a window and a sample
budget, so answers distinguish structural proofs from bounded evidence:

* ``proved``    -- established structurally or by exhausting a finite carrier;
* ``witnessed`` -- held on every probe within the declared budget;
* ``refuted``   -- a concrete counterexample is attached (window-relative
  when a budget is attached);
* ``unknown``   -- the budget ran out without a decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

PROVED = "proved"
WITNESSED = "witnessed"
REFUTED = "refuted"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Budget:
    """Search bounds for sampled or windowed checks."""

    window: int = 5
    samples: int = 200
    seed: int = 0

    def scaled(self, samples: int) -> "Budget":
        return Budget(window=self.window, samples=samples, seed=self.seed)


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class Verdict:
    kind: str
    reason: str = ""
    witness: Any = None
    budget: Optional[Budget] = None

    def __bool__(self) -> bool:
        return self.kind in (PROVED, WITNESSED)

    @property
    def holds(self) -> bool:
        return bool(self)

    @property
    def decided(self) -> bool:
        return self.kind != UNKNOWN

    def describe(self) -> str:
        parts = [self.kind]
        if self.reason:
            parts.append(self.reason)
        if self.witness is not None:
            parts.append(f"witness={self.witness}")
        if self.budget is not None:
            parts.append(
                f"[window={self.budget.window} samples={self.budget.samples}"
                f" seed={self.budget.seed}]"
            )
        return "; ".join(parts)


def proved(reason: str = "", witness: Any = None) -> Verdict:
    return Verdict(PROVED, reason, witness)


def witnessed(reason: str = "", witness: Any = None,
              budget: Optional[Budget] = None) -> Verdict:
    return Verdict(WITNESSED, reason, witness, budget)


def refuted(reason: str = "", witness: Any = None,
            budget: Optional[Budget] = None) -> Verdict:
    return Verdict(REFUTED, reason, witness, budget)


def unknown(reason: str = "", budget: Optional[Budget] = None) -> Verdict:
    return Verdict(UNKNOWN, reason, None, budget)
