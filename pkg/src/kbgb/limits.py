"""Resource limits and budget errors shared by both completion engines."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_STEP_BUDGET = 1_000_000


class ReductionBudgetExceeded(RuntimeError):
    """Reduction failed to reach a fixed point within the step budget.

    Reduction along an admissible well-founded order always terminates, so
    tripping this signals a broken ordering, not a long input.
    """


class LimitExceeded(Exception):
    """A completion resource limit tripped.

    Carries the pass that was being examined (critical pairs for the
    rewriting engine, S-polynomial records for the polynomial engine) so a
    caller can report the truncation point.
    """

    def __init__(self, reason: str, partial=()):
        super().__init__(reason)
        self.reason = reason
        self.partial = tuple(partial)


@dataclass(frozen=True)
class CompletionLimits:
    """Caps that keep completion finite; completion need not terminate.

    ``max_passes`` may be zero (run nothing, report the limit); the other
    two caps must be positive.
    """

    max_passes: int = 50
    max_rules: int = 10_000
    max_word_length: int = 256

    def __post_init__(self):
        if self.max_passes < 0:
            raise ValueError("max_passes must be nonnegative")
        if self.max_rules <= 0 or self.max_word_length <= 0:
            raise ValueError("max_rules and max_word_length must be positive")
