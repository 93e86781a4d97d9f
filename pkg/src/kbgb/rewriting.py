"""String rewriting systems, completion passes, and the word problem.

Reduction is deterministic: the leftmost redex wins, and at a given
position the lowest-index rule wins. A completion pass computes every
critical pair against the fixed input system and only then installs the
oriented survivors, so pass results do not depend on examination order and
rules are never removed or rewritten mid-run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .limits import (
    DEFAULT_STEP_BUDGET,
    CompletionLimits,
    LimitExceeded,
    ReductionBudgetExceeded,
)
from .words import (
    Alphabet,
    AlphabetMismatch,
    MatchKind,
    MonomialOrder,
    OverlapMatch,
    Word,
    find_matches,
)

SEMIGROUP = "semigroup"
MONOID = "monoid"


@dataclass(frozen=True)
class Rule:
    """Oriented rewrite rule; the left side is greater under the order."""

    lhs: Word
    rhs: Word

    def render(self) -> str:
        return f"{self.lhs.dotted()}->{self.rhs.dotted()}"

    def __repr__(self):
        return f"Rule({self.lhs.display()} -> {self.rhs.display()})"


@dataclass(frozen=True)
class RewriteSystem:
    """A finite set of oriented rules over one alphabet and order."""

    alphabet: Alphabet
    order: MonomialOrder
    rules: tuple = ()
    mode: str = SEMIGROUP

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.mode not in (SEMIGROUP, MONOID):
            raise ValueError(f"mode must be {SEMIGROUP!r} or {MONOID!r}")
        if self.order.alphabet != self.alphabet:
            raise AlphabetMismatch("order and system alphabets differ")
        seen = set()
        for rule in self.rules:
            if rule.lhs.alphabet != self.alphabet or rule.rhs.alphabet != self.alphabet:
                raise AlphabetMismatch(f"rule over a different alphabet: {rule.render()}")
            if len(rule.lhs) == 0:
                raise ValueError("rule left side must be nonempty")
            if self.mode == SEMIGROUP and len(rule.rhs) == 0:
                raise ValueError(f"empty right side needs monoid mode: {rule.render()}")
            if self.order.compare(rule.lhs, rule.rhs) <= 0:
                raise ValueError(f"rule is not oriented descending: {rule.render()}")
            if rule in seen:
                raise ValueError(f"duplicate rule: {rule.render()}")
            seen.add(rule)
        # rules bucketed by the first letter of the left side; the bucket
        # order preserves rule indices, so redex selection is unchanged
        buckets = {}
        for rule in self.rules:
            buckets.setdefault(rule.lhs.letters[0], []).append(
                (rule.lhs.letters, rule.rhs.letters)
            )
        object.__setattr__(self, "_buckets", {k: tuple(v) for k, v in buckets.items()})
        object.__setattr__(
            self, "_max_lhs", max((len(r.lhs) for r in self.rules), default=1)
        )

    def with_rules(self, extra) -> "RewriteSystem":
        return RewriteSystem(self.alphabet, self.order, self.rules + tuple(extra), self.mode)


def _rewrite_at(system, wl, start):
    """Leftmost rewrite at a position >= start: (new letters, position)."""
    buckets = system._buckets
    n = len(wl)
    for pos in range(start, n):
        for lhs, rhs in buckets.get(wl[pos], ()):
            span = len(lhs)
            if pos + span <= n and wl[pos : pos + span] == lhs:
                return wl[:pos] + rhs + wl[pos + span :], pos
    return None, -1


def reduce_once(system: RewriteSystem, word: Word):
    """One rewrite step at the leftmost redex (lowest rule index on ties),
    or None if irreducible."""
    if word.alphabet != system.alphabet:
        raise AlphabetMismatch("word over a different alphabet")
    letters, _ = _rewrite_at(system, word.letters, 0)
    return None if letters is None else Word._raw(system.alphabet, letters)


def is_irreducible(system: RewriteSystem, word: Word) -> bool:
    letters, _ = _rewrite_at(system, word.letters, 0)
    return letters is None


def normal_form(system: RewriteSystem, word: Word, max_steps: int = DEFAULT_STEP_BUDGET) -> Word:
    """Reduce to a fixed point; terminates because every step descends.

    Follows exactly the reduce_once redex policy; after a rewrite at
    position p the scan resumes at p - max_lhs + 1, which is where the
    leftmost new redex can first appear.
    """
    if word.alphabet != system.alphabet:
        raise AlphabetMismatch("word over a different alphabet")
    wl = word.letters
    back = system._max_lhs - 1
    scan_from = 0
    for _ in range(max_steps):
        nxt, pos = _rewrite_at(system, wl, scan_from)
        if nxt is None:
            # nothing right of the resume point, and the skipped prefix is
            # redex-free by the resume invariant
            return Word._raw(system.alphabet, wl)
        wl = nxt
        scan_from = pos - back if pos > back else 0
    raise ReductionBudgetExceeded(f"no fixed point within {max_steps} steps")


@dataclass(frozen=True)
class CriticalPair:
    """The two reducts of a superposition word, raw and fully reduced."""

    rule1: int
    rule2: int
    match: OverlapMatch
    raw: tuple
    reduced: tuple
    new_rule: Rule | None  # None when the pair resolved

    @property
    def resolved(self) -> bool:
        return self.new_rule is None


def _raw_pair(rule1: Rule, rule2: Rule, match: OverlapMatch):
    kind = match.kind
    if kind is MatchKind.CONTAINMENT_12:
        return rule1.rhs, match.u2 * rule2.rhs * match.v2
    if kind is MatchKind.CONTAINMENT_21:
        return match.u1 * rule1.rhs * match.v1, rule2.rhs
    if kind is MatchKind.SUFFIX_PREFIX:
        return rule1.rhs * match.v1, match.u2 * rule2.rhs
    return match.u1 * rule1.rhs, rule2.rhs * match.v2


def critical_pairs(system: RewriteSystem) -> list:
    """Every critical pair of every ordered rule pair, reduced against the system.

    Two rules with identical left sides meet in the boundary containment
    with empty witnesses; a rule never forms that degenerate match with
    itself.
    """
    pairs = []
    rules = system.rules
    for i, r1 in enumerate(rules):
        for j, r2 in enumerate(rules):
            for match in find_matches(r1.lhs, r2.lhs, include_identity=(i != j)):
                raw = _raw_pair(r1, r2, match)
                c1 = normal_form(system, raw[0])
                c2 = normal_form(system, raw[1])
                if c1 == c2:
                    new_rule = None
                elif system.order.greater(c1, c2):
                    new_rule = Rule(c1, c2)
                else:
                    new_rule = Rule(c2, c1)
                pairs.append(CriticalPair(i, j, match, raw, (c1, c2), new_rule))
    return pairs


def kb_pass(system: RewriteSystem, limits: CompletionLimits | None = None):
    """One completion pass: (next system, critical pairs examined).

    Reductions use the input system only; new rules land as a batch at the
    end, deduplicated. Raises LimitExceeded (with the pairs attached) when
    the result would break a cap.
    """
    pairs = critical_pairs(system)
    fresh = []
    seen = set(system.rules)
    for cp in pairs:
        rule = cp.new_rule
        if rule is not None and rule not in seen:
            seen.add(rule)
            fresh.append(rule)
    if limits is not None:
        for rule in fresh:
            if max(len(rule.lhs), len(rule.rhs)) > limits.max_word_length:
                raise LimitExceeded("max_word_length", pairs)
        if len(system.rules) + len(fresh) > limits.max_rules:
            raise LimitExceeded("max_rules", pairs)
    return system.with_rules(fresh), pairs


@dataclass(frozen=True)
class PassRecord:
    index: int  # 1-based
    pairs: tuple
    system: RewriteSystem  # system after the pass (unchanged if a limit tripped)


@dataclass(frozen=True)
class KnuthBendixResult:
    complete: bool
    system: RewriteSystem
    trace: tuple
    limit_reason: str | None = None


def knuth_bendix(system: RewriteSystem, limits: CompletionLimits = CompletionLimits()) -> KnuthBendixResult:
    """Iterate kb_pass to the fixed point or to a resource limit."""
    records = []
    current = system
    for index in range(1, limits.max_passes + 1):
        try:
            nxt, pairs = kb_pass(current, limits)
        except LimitExceeded as exc:
            records.append(PassRecord(index, exc.partial, current))
            return KnuthBendixResult(False, current, tuple(records), exc.reason)
        records.append(PassRecord(index, tuple(pairs), nxt))
        if nxt.rules == current.rules:
            return KnuthBendixResult(True, nxt, tuple(records))
        current = nxt
    return KnuthBendixResult(False, current, tuple(records), "max_passes")


def words_equal(system: RewriteSystem, w1: Word, w2: Word) -> bool:
    """Decide w1 = w2 in the presented semigroup; needs a complete system."""
    return normal_form(system, w1) == normal_form(system, w2)


def enumerate_normal_forms(system: RewriteSystem, max_len: int) -> list:
    """All irreducible words up to max_len, sorted by the system's order.

    Monoid mode includes the empty word; these are canonical
    representatives of the presented elements of bounded length.
    """
    lengths = range(0 if system.mode == MONOID else 1, max_len + 1)
    size = len(system.alphabet)
    out = []
    for n in lengths:
        for letters in itertools.product(range(size), repeat=n):
            w = Word(system.alphabet, letters)
            if reduce_once(system, w) is None:
                out.append(w)
    out.sort(key=system.order.key)
    return out


def is_locally_confluent(system: RewriteSystem) -> bool:
    """True when every critical pair resolves."""
    return all(cp.resolved for cp in critical_pairs(system))


def interreduce(system: RewriteSystem) -> RewriteSystem:
    """One simplification sweep: drop rules whose left side another rule
    reduces, and normalize every right side.

    Cosmetic post-processing only; the completion passes never call it.
    """
    kept = []
    for i, rule in enumerate(system.rules):
        others = RewriteSystem(
            system.alphabet,
            system.order,
            tuple(r for j, r in enumerate(system.rules) if j != i),
            system.mode,
        )
        if reduce_once(others, rule.lhs) is not None:
            continue
        candidate = Rule(rule.lhs, normal_form(system, rule.rhs))
        if candidate not in kept:
            kept.append(candidate)
    return RewriteSystem(system.alphabet, system.order, tuple(kept), system.mode)


def pair_line(pass_index: int, cp: CriticalPair) -> str:
    """One trace record; bit-exact across runs."""
    raw = f"({cp.raw[0].dotted()},{cp.raw[1].dotted()})"
    reduced = f"({cp.reduced[0].dotted()},{cp.reduced[1].dotted()})"
    disp = "Resolved" if cp.new_rule is None else f"Added:{cp.new_rule.render()}"
    return (
        f"pass={pass_index} rules=({cp.rule1},{cp.rule2}) kind={cp.match.kind.value} "
        f"raw={raw} reduced={reduced} disp={disp}"
    )


def trace_lines(trace) -> list:
    lines = []
    for record in trace:
        for cp in record.pairs:
            lines.append(pair_line(record.index, cp))
    return lines
