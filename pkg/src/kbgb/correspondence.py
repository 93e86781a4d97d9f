"""Lockstep execution of the two completion engines.

A rule set R translates to the basis F of two-term polynomials l - r, one
per rule. Running string completion and polynomial completion side by side
checks, pass by pass, that overlaps align with matches one for one, that a
pair resolves exactly when its S-polynomial reduces to zero, that an
unresolved pair's oriented sides reappear as the monic reduced
S-polynomial, and that the next basis is exactly the translation of the
next rule set. Any failure is reported as a divergence verdict, never
papered over.

The truncated isomorphism check compares the two engines' canonical forms
on every word up to a length bound: equal words stay equal, every class
holds exactly one irreducible word, and canonical forms multiply the way
the words do. It verifies a finite fragment only and says so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .limits import CompletionLimits, LimitExceeded
from .ncpoly import (
    Basis,
    NcPolynomial,
    buchberger_pass,
    poly_normal_form,
    record_line,
    render_poly,
)
from .rewriting import (
    MONOID,
    SEMIGROUP,
    RewriteSystem,
    Rule,
    enumerate_normal_forms,
    is_irreducible,
    kb_pass,
    normal_form,
    pair_line,
)
from .words import Word

VERDICT_CORRESPONDS = "Corresponds"
VERDICT_DIVERGENCE = "Divergence"
VERDICT_LIMIT = "LimitExceeded"


class NonBinomialError(ValueError):
    """A basis member is not of the two-term l - r shape."""


def rule_binomial(rule: Rule, field) -> NcPolynomial:
    return NcPolynomial(field, [(rule.lhs, 1), (rule.rhs, -1)])


def rules_to_basis(system: RewriteSystem, field) -> Basis:
    """One monic two-term polynomial l - r per rule, same alphabet and order."""
    polys = tuple(rule_binomial(rule, field) for rule in system.rules)
    return Basis(system.alphabet, system.order, field, polys)


def split_binomial(poly: NcPolynomial, order) -> tuple:
    """The (greater, smaller) monomials of a monic l - r polynomial."""
    if len(poly.terms) != 2:
        raise NonBinomialError(f"not a two-term polynomial: {render_poly(poly, order)}")
    (lhs, c1), (rhs, c2) = poly.sorted_terms(order)
    field = poly.field
    if c1 != field.one or c2 != field.neg(field.one):
        raise NonBinomialError(f"coefficients are not 1 and -1: {render_poly(poly, order)}")
    return lhs, rhs


def basis_to_rules(basis: Basis, mode: str | None = None) -> RewriteSystem:
    """Inverse translation; every member must be a monic l - r polynomial.

    The basis does not remember whether empty words are allowed, so the
    mode is inferred (monoid when some right side is empty) unless given.
    """
    rules = []
    for poly in basis.polys:
        lhs, rhs = split_binomial(poly, basis.order)
        rules.append(Rule(lhs, rhs))
    if mode is None:
        mode = MONOID if any(len(r.rhs) == 0 for r in rules) else SEMIGROUP
    return RewriteSystem(basis.alphabet, basis.order, tuple(rules), mode)


@dataclass(frozen=True)
class LockstepPass:
    """One synchronized pass with its three correspondence checks."""

    index: int  # 1-based
    pairs: tuple
    records: tuple
    system: RewriteSystem  # rule set after the pass
    basis: Basis  # basis after the pass
    sources_ok: bool  # overlaps and matches name the same sources
    pairs_ok: bool  # dispositions and contents align pairwise
    sets_ok: bool  # next basis = translation of next rule set

    @property
    def ok(self) -> bool:
        return self.sources_ok and self.pairs_ok and self.sets_ok


@dataclass(frozen=True)
class CorrespondenceReport:
    verdict: str  # Corresponds | Divergence | LimitExceeded
    passes: tuple
    system: RewriteSystem  # final rule set
    basis: Basis  # final basis
    detail: str | None = None
    divergence_pass: int | None = None
    limit_reason: str | None = None


def _source_key(first: int, second: int, match) -> tuple:
    return (first, second, match.kind.value, match.witness_lengths())


def _check_pass(pairs, records, next_system, next_basis, field):
    """The three per-pass checks; returns (sources, pairs, sets, detail)."""
    pair_keys = sorted(_source_key(cp.rule1, cp.rule2, cp.match) for cp in pairs)
    record_keys = sorted(_source_key(rec.poly1, rec.poly2, rec.match) for rec in records)
    sources_ok = pair_keys == record_keys
    pairs_ok = True
    detail = None
    if sources_ok:
        by_key = {_source_key(rec.poly1, rec.poly2, rec.match): rec for rec in records}
        for cp in pairs:
            rec = by_key[_source_key(cp.rule1, cp.rule2, cp.match)]
            if cp.resolved != rec.reduced_to_zero:
                pairs_ok = False
                detail = (
                    f"disposition mismatch at rules=({cp.rule1},{cp.rule2}) "
                    f"kind={cp.match.kind.value}"
                )
                break
            if not cp.resolved and rec.new_poly != rule_binomial(cp.new_rule, field):
                pairs_ok = False
                detail = (
                    f"content mismatch at rules=({cp.rule1},{cp.rule2}) "
                    f"kind={cp.match.kind.value}: rule {cp.new_rule.render()}"
                )
                break
    else:
        pairs_ok = False
        only_pairs = [k for k in pair_keys if k not in record_keys]
        only_records = [k for k in record_keys if k not in pair_keys]
        detail = f"sources differ: overlaps-only={only_pairs} matches-only={only_records}"
    wanted = {rule_binomial(rule, field) for rule in next_system.rules}
    sets_ok = set(next_basis.polys) == wanted
    if not sets_ok and detail is None:
        detail = "next basis is not the translation of the next rule set"
    return sources_ok, pairs_ok, sets_ok, detail


def lockstep_complete(
    system: RewriteSystem,
    field,
    limits: CompletionLimits = CompletionLimits(),
) -> CorrespondenceReport:
    """Run both engines in alternation and verify every pass.

    Stops at the mutual fixed point (Corresponds), at the first failed
    check (Divergence), or when both engines trip the same resource limit
    at the same pass (LimitExceeded). A one-sided limit or fixed point is
    itself a divergence.
    """
    basis = rules_to_basis(system, field)
    passes = []
    cur_system, cur_basis = system, basis

    def report(verdict, detail=None, divergence_pass=None, limit_reason=None):
        return CorrespondenceReport(
            verdict,
            tuple(passes),
            cur_system,
            cur_basis,
            detail,
            divergence_pass,
            limit_reason,
        )

    for index in range(1, limits.max_passes + 1):
        kb_limit = gb_limit = None
        try:
            next_system, pairs = kb_pass(cur_system, limits)
        except LimitExceeded as exc:
            kb_limit, pairs, next_system = exc.reason, exc.partial, cur_system
        try:
            next_basis, records = buchberger_pass(cur_basis, limits)
        except LimitExceeded as exc:
            gb_limit, records, next_basis = exc.reason, exc.partial, cur_basis
        sources_ok, pairs_ok, sets_ok, detail = _check_pass(
            pairs, records, next_system, next_basis, field
        )
        passes.append(
            LockstepPass(index, tuple(pairs), tuple(records), next_system, next_basis,
                         sources_ok, pairs_ok, sets_ok)
        )
        system_fixed = next_system.rules == cur_system.rules
        basis_fixed = next_basis.polys == cur_basis.polys
        cur_system, cur_basis = next_system, next_basis
        if not (sources_ok and pairs_ok and sets_ok):
            return report(VERDICT_DIVERGENCE, detail, index)
        if kb_limit or gb_limit:
            if kb_limit == gb_limit:
                return report(VERDICT_LIMIT, limit_reason=kb_limit)
            return report(
                VERDICT_DIVERGENCE,
                f"one-sided resource limit: rewriting={kb_limit} polynomials={gb_limit}",
                index,
            )
        if system_fixed != basis_fixed:
            return report(
                VERDICT_DIVERGENCE,
                f"fixed point on one side only: rewriting={system_fixed} polynomials={basis_fixed}",
                index,
            )
        if system_fixed:
            return report(VERDICT_CORRESPONDS)
    return report(VERDICT_LIMIT, limit_reason="max_passes")


def report_lines(report: CorrespondenceReport) -> list:
    """Serialized report: both engines' trace lines interleaved per pass,
    per-pass check summaries, final sets, and one VERDICT line."""
    order = report.system.order

    def flag(ok):
        return "ok" if ok else "FAIL"

    lines = []
    for p in report.passes:
        for cp in p.pairs:
            lines.append(pair_line(p.index, cp))
        for rec in p.records:
            lines.append(record_line(p.index, rec, order))
        lines.append(
            f"pass={p.index} checks: sources={flag(p.sources_ok)} "
            f"pairs={flag(p.pairs_ok)} sets={flag(p.sets_ok)}"
        )
    if report.verdict == VERDICT_LIMIT:
        last = report.passes[-1].index if report.passes else 0
        lines.append(f"limit: engine=rewriting pass={last} reason={report.limit_reason}")
        lines.append(f"limit: engine=ncpoly pass={last} reason={report.limit_reason}")
    for rule in report.system.rules:
        lines.append(f"final rule: {rule.lhs.dotted()} -> {rule.rhs.dotted()}")
    for poly in report.basis.polys:
        lines.append(f"final poly: {render_poly(poly, order)}")
    if report.verdict == VERDICT_CORRESPONDS:
        lines.append("VERDICT: Corresponds")
    elif report.verdict == VERDICT_LIMIT:
        lines.append(f"VERDICT: LimitExceeded reason={report.limit_reason}")
    else:
        lines.append(
            f"VERDICT: Divergence pass={report.divergence_pass} detail={report.detail}"
        )
    return lines


@dataclass(frozen=True)
class IsoCheckReport:
    """Truncated verification that canonical forms agree between engines.

    A Pass verdict certifies the checks up to the bound only, never a full
    isomorphism.
    """

    bound: int
    field_name: str
    counts: tuple  # (length, number of normal forms) pairs
    verdict: str  # Pass | Fail | Inconclusive
    detail: str | None = None


def _bounded_words(system: RewriteSystem, bound: int) -> list:
    start = 0 if system.mode == MONOID else 1
    size = len(system.alphabet)
    out = []
    for n in range(start, bound + 1):
        for letters in itertools.product(range(size), repeat=n):
            out.append(Word(system.alphabet, letters))
    return out


def verify_algebra_iso(
    system: RewriteSystem,
    field,
    bound: int,
    limits: CompletionLimits = CompletionLimits(),
) -> IsoCheckReport:
    """Complete both engines in lockstep, then compare canonical forms on
    every word up to the bound.

    Checks: (a) two words are equal under the rule engine exactly when
    their monomials are equal modulo the ideal; (b) every class of bounded
    words holds exactly one irreducible word, its canonical representative;
    (c) canonical forms are multiplicative, for every product of normal
    forms that stays within the bound.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    lock = lockstep_complete(system, field, limits)
    if lock.verdict != VERDICT_CORRESPONDS:
        detail = (
            f"completion unavailable: {lock.verdict}"
            + (f" reason={lock.limit_reason}" if lock.limit_reason else "")
            + (f" detail={lock.detail}" if lock.detail else "")
        )
        return IsoCheckReport(bound, field.name, (), "Inconclusive", detail)
    complete, groebner = lock.system, lock.basis
    order = complete.order

    forms = enumerate_normal_forms(complete, bound)
    start = 0 if complete.mode == MONOID else 1
    counts = tuple(
        (n, sum(1 for w in forms if len(w) == n)) for n in range(start, bound + 1)
    )

    def fail(detail):
        return IsoCheckReport(bound, field.name, counts, "Fail", detail)

    universe = _bounded_words(complete, bound)
    nf_rules = {}
    nf_ideal = {}
    for w in universe:
        nf_rules[w] = normal_form(complete, w)
        image = poly_normal_form(groebner, NcPolynomial.monomial(field, w))
        if len(image.terms) != 1:
            return fail(f"monomial image is not a monomial: {w.dotted()}")
        (iw, coeff), = image.terms.items()
        if coeff != field.one:
            return fail(f"monomial image is not monic: {w.dotted()}")
        nf_ideal[w] = iw

    # (a) the two engines induce the same equality relation
    for w1, w2 in itertools.combinations(universe, 2):
        if (nf_rules[w1] == nf_rules[w2]) != (nf_ideal[w1] == nf_ideal[w2]):
            return fail(f"equality disagreement on ({w1.dotted()},{w2.dotted()})")

    # (b) each bounded class holds exactly one irreducible word; under an
    # order where canonical forms can outgrow the bound (possible with
    # weights) this reports the truncation honestly rather than passing
    blocks = {}
    for w in universe:
        blocks.setdefault(nf_rules[w], []).append(w)
    for rep, members in sorted(blocks.items(), key=lambda kv: order.key(kv[0])):
        irreducible = [w for w in members if is_irreducible(complete, w)]
        if len(irreducible) != 1:
            return fail(
                f"class of {rep.dotted()} holds {len(irreducible)} irreducible "
                f"words within length {bound}"
            )

    # (c) canonical forms multiply like the words they represent
    for n1 in forms:
        for n2 in forms:
            if len(n1) + len(n2) > bound:
                continue
            product = n1 * n2
            if normal_form(complete, product) != nf_ideal[product]:
                return fail(f"multiplicativity fails on {n1.dotted()} * {n2.dotted()}")

    return IsoCheckReport(bound, field.name, counts, "Pass")


def iso_report_lines(report: IsoCheckReport) -> list:
    lines = [f"iso: bound={report.bound} field={report.field_name}"]
    for length, count in report.counts:
        lines.append(f"normal-forms: len={length} count={count}")
    if report.verdict == "Pass":
        lines.append("VERDICT: Pass")
    else:
        lines.append(f"VERDICT: {report.verdict} detail={report.detail}")
    return lines
