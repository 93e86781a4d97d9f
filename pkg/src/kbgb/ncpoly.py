"""Noncommutative polynomials over exact fields, and Buchberger completion.

Monomials are free-monoid words; a polynomial is a finite scalar
combination with no stored zeros. Coefficients are plain Python values
(fractions.Fraction over the rationals, canonical residues over a prime
field) interpreted through a small field object carried by every
polynomial.

The reduction policy mirrors the string engine exactly: reduce the
greatest reducible monomial, inside it the leftmost occurrence, and at a
tied position the lowest basis index. On bases of two-term polynomials the
whole machine therefore behaves as string rewriting term by term.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

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


class RationalField:
    """Arbitrary-precision rationals; Fraction keeps them in lowest terms."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot use {value!r} as a rational scalar")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_negative(self, a) -> bool:
        return a < 0

    def magnitude_str(self, a) -> str:
        return str(-a if a < 0 else a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()


class PrimeField:
    """Integers mod p for a prime p, residues kept canonical in 0..p-1."""

    __slots__ = ("p", "name")

    zero = 0
    one = 1

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"modulus must be an integer >= 2: {p!r}")
        if any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"modulus is not prime: {p}")
        self.p = p
        self.name = f"F{p}"

    def coerce(self, value):
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot use {value!r} as a residue mod {self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_negative(self, a) -> bool:
        # treat residues above p/2 as negatives, so F3 prints like {-1,0,1}
        return 2 * a > self.p

    def magnitude_str(self, a) -> str:
        return str(self.p - a if self.is_negative(a) else a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def field_from_name(name: str):
    """Resolve "Q" or "F<p>" to a field object."""
    if name == "Q":
        return QQ
    m = re.fullmatch(r"F(\d+)", name)
    if m:
        return PrimeField(int(m.group(1)))
    raise ValueError(f"unknown field: {name!r} (expected Q or F<p>)")


class NcPolynomial:
    """Finite map from monomials to nonzero scalars; immutable by contract."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms=()):
        data = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for word, coeff in items:
            if not isinstance(word, Word):
                raise TypeError(f"monomial must be a Word: {word!r}")
            c = field.coerce(coeff)
            if word in data:
                c = field.add(data.pop(word), c)
            if c != field.zero:
                data[word] = c
        alphabets = {w.alphabet for w in data}
        if len(alphabets) > 1:
            raise AlphabetMismatch("polynomial mixes alphabets")
        self.field = field
        self.terms = data
        self._hash = None

    @classmethod
    def _raw(cls, field, data):
        # internal fast path: data already canonical (nonzero coerced
        # scalars, one alphabet)
        poly = object.__new__(cls)
        poly.field = field
        poly.terms = data
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, field) -> "NcPolynomial":
        return cls(field, ())

    @classmethod
    def monomial(cls, field, word: Word, coeff=1) -> "NcPolynomial":
        return cls(field, [(word, coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, NcPolynomial)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other):
        if not isinstance(other, NcPolynomial):
            raise TypeError(f"expected a polynomial, got {other!r}")
        if other.field != self.field:
            raise ValueError("polynomials over different scalar fields")

    def __add__(self, other):
        self._check(other)
        f = self.field
        data = dict(self.terms)
        for word, coeff in other.terms.items():
            s = f.add(data.get(word, f.zero), coeff)
            if s == f.zero:
                data.pop(word, None)
            else:
                data[word] = s
        return NcPolynomial._raw(f, data)

    def __neg__(self):
        f = self.field
        return NcPolynomial._raw(f, {w: f.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        f = self.field
        data = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                s = f.add(data.get(w, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    data.pop(w, None)
                else:
                    data[w] = s
        return NcPolynomial._raw(f, data)

    def scaled(self, coeff) -> "NcPolynomial":
        f = self.field
        c = f.coerce(coeff)
        if c == f.zero:
            return NcPolynomial.zero(f)
        return NcPolynomial._raw(f, {w: f.mul(k, c) for w, k in self.terms.items()})

    def sandwich(self, left: Word, right: Word) -> "NcPolynomial":
        """left . p . right; the cofactors are words."""
        if self.is_zero():
            return self
        alphabet = left.alphabet
        if right.alphabet != alphabet or next(iter(self.terms)).alphabet != alphabet:
            raise AlphabetMismatch("sandwich cofactors over a different alphabet")
        lo, hi = left.letters, right.letters
        return NcPolynomial._raw(
            self.field,
            {Word._raw(alphabet, lo + w.letters + hi): c for w, c in self.terms.items()},
        )

    def sorted_terms(self, order: MonomialOrder) -> list:
        return [(w, self.terms[w]) for w in sorted(self.terms, key=order.key, reverse=True)]

    def __repr__(self):
        if self.is_zero():
            return "NcPolynomial(0)"
        body = " + ".join(
            f"{c}*{w.display()}"
            for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0].letters))
        )
        return f"NcPolynomial({body})"


def leading_monomial(poly: NcPolynomial, order: MonomialOrder):
    """The order-maximal monomial and its coefficient; rejects zero."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has no leading monomial")
    for word in poly.terms:
        if word.alphabet != order.alphabet:
            raise AlphabetMismatch("polynomial over a different alphabet than the order")
        break
    word = max(poly.terms, key=order.key)
    return word, poly.terms[word]


def make_monic(poly: NcPolynomial, order: MonomialOrder) -> NcPolynomial:
    """Scale so the leading coefficient is one; for two-term polynomials
    with unit coefficients this is exactly a sign flip when needed."""
    _, coeff = leading_monomial(poly, order)
    if coeff == poly.field.one:
        return poly
    return poly.scaled(poly.field.inv(coeff))


@dataclass(frozen=True)
class Basis:
    """Ordered list of monic nonzero polynomials over one alphabet/order.

    Members must have a nonempty leading monomial; a basis containing a
    unit generates the whole algebra and is rejected.
    """

    alphabet: Alphabet
    order: MonomialOrder
    field: object
    polys: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.order.alphabet != self.alphabet:
            raise AlphabetMismatch("order and basis alphabets differ")
        seen = set()
        lms = []
        for poly in self.polys:
            if not isinstance(poly, NcPolynomial) or poly.is_zero():
                raise ValueError("basis members must be nonzero polynomials")
            if poly.field != self.field:
                raise ValueError("basis member over a different scalar field")
            for w in poly.terms:
                if w.alphabet != self.alphabet:
                    raise AlphabetMismatch("basis member over a different alphabet")
            lm, coeff = leading_monomial(poly, self.order)
            if coeff != self.field.one:
                raise ValueError(f"basis member is not monic: {poly!r}")
            if len(lm) == 0:
                raise ValueError("basis member with empty leading monomial (a unit)")
            if poly in seen:
                raise ValueError(f"duplicate basis member: {poly!r}")
            seen.add(poly)
            lms.append(lm)
        object.__setattr__(self, "_lms", tuple(lms))
        # leading monomials bucketed by first letter, index order preserved
        buckets = {}
        for index, lm in enumerate(lms):
            buckets.setdefault(lm.letters[0], []).append((index, lm.letters))
        object.__setattr__(self, "_lm_buckets", {k: tuple(v) for k, v in buckets.items()})

    def with_polys(self, extra) -> "Basis":
        return Basis(self.alphabet, self.order, self.field, self.polys + tuple(extra))

    def leading_monomials(self) -> tuple:
        return self._lms


@dataclass(frozen=True)
class ReductionStep:
    """One replacement p -> p - coeff . left . f[index] . right."""

    coeff: object
    left: Word
    index: int
    right: Word


def _find_step(basis: Basis, poly: NcPolynomial) -> ReductionStep | None:
    order = basis.order
    buckets = basis._lm_buckets
    for word in sorted(poly.terms, key=order.key, reverse=True):
        wl = word.letters
        n = len(wl)
        for pos in range(n):
            for index, lm in buckets.get(wl[pos], ()):
                span = len(lm)
                if pos + span <= n and wl[pos : pos + span] == lm:
                    return ReductionStep(poly.terms[word], word[:pos], index, word[pos + span :])
    return None


def _apply_step(basis: Basis, poly: NcPolynomial, step: ReductionStep) -> NcPolynomial:
    # p - k.left.f.right, merged in place: the reduced monomial cancels
    # exactly because f is monic and k is its coefficient in p
    field = basis.field
    member = basis.polys[step.index]
    lm = basis._lms[step.index]
    alphabet = step.left.alphabet
    lo, hi = step.left.letters, step.right.letters
    data = dict(poly.terms)
    del data[Word._raw(alphabet, lo + lm.letters + hi)]
    coeff = step.coeff
    for word, c in member.terms.items():
        if word == lm:
            continue
        target = Word._raw(alphabet, lo + word.letters + hi)
        s = field.sub(data.get(target, field.zero), field.mul(coeff, c))
        if s == field.zero:
            data.pop(target, None)
        else:
            data[target] = s
    return NcPolynomial._raw(field, data)


def poly_reduce_once(basis: Basis, poly: NcPolynomial) -> NcPolynomial | None:
    """One reduction step on the greatest reducible monomial, or None."""
    step = _find_step(basis, poly)
    if step is None:
        return None
    return _apply_step(basis, poly, step)


def reduce_with_steps(basis: Basis, poly: NcPolynomial, max_steps: int = DEFAULT_STEP_BUDGET):
    """Normal form plus the replay record of every replacement made.

    The recorded steps witness membership: p - nf(p) equals the sum of
    coeff . left . f . right over the steps (see replay_steps).
    """
    steps = []
    current = poly
    for _ in range(max_steps):
        step = _find_step(basis, current)
        if step is None:
            return current, tuple(steps)
        steps.append(step)
        current = _apply_step(basis, current, step)
    raise ReductionBudgetExceeded(f"no fixed point within {max_steps} steps")


def poly_normal_form(basis: Basis, poly: NcPolynomial, max_steps: int = DEFAULT_STEP_BUDGET) -> NcPolynomial:
    """Fixed point of poly_reduce_once; no result monomial contains a
    leading monomial of the basis."""
    return reduce_with_steps(basis, poly, max_steps)[0]


def replay_steps(basis: Basis, steps) -> NcPolynomial:
    """Sum of coeff . left . f . right over recorded steps; equals p - nf(p)."""
    total = NcPolynomial.zero(basis.field)
    for step in steps:
        total = total + basis.polys[step.index].sandwich(step.left, step.right).scaled(step.coeff)
    return total


@dataclass(frozen=True)
class SPolyRecord:
    """An S-polynomial from one match, raw and fully reduced."""

    poly1: int
    poly2: int
    match: OverlapMatch
    raw: NcPolynomial
    reduced: NcPolynomial
    new_poly: NcPolynomial | None  # None when the S-polynomial reduced to zero

    @property
    def reduced_to_zero(self) -> bool:
        return self.new_poly is None


def _tail(poly: NcPolynomial, order: MonomialOrder) -> NcPolynomial:
    # monic f = lm - tail; for a two-term l - r the tail is the monomial r
    word, coeff = leading_monomial(poly, order)
    return NcPolynomial.monomial(poly.field, word, coeff) - poly


def _raw_spoly(t1: NcPolynomial, t2: NcPolynomial, match: OverlapMatch, empty: Word) -> NcPolynomial:
    kind = match.kind
    if kind is MatchKind.CONTAINMENT_12:
        return t2.sandwich(match.u2, match.v2) - t1
    if kind is MatchKind.CONTAINMENT_21:
        return t2 - t1.sandwich(match.u1, match.v1)
    if kind is MatchKind.SUFFIX_PREFIX:
        return t2.sandwich(match.u2, empty) - t1.sandwich(empty, match.v1)
    return t2.sandwich(empty, match.v2) - t1.sandwich(match.u1, empty)


def s_polynomials(basis: Basis) -> list:
    """Every S-polynomial of every ordered pair, reduced against the basis.

    The raw S-polynomial is the difference of the two one-step reducts of
    the superposition monomial, built from the monic members' tails.
    """
    records = []
    lms = basis.leading_monomials()
    tails = [_tail(p, basis.order) for p in basis.polys]
    empty = Word(basis.alphabet)
    for i in range(len(basis.polys)):
        for j in range(len(basis.polys)):
            for match in find_matches(lms[i], lms[j], include_identity=(i != j)):
                raw = _raw_spoly(tails[i], tails[j], match, empty)
                reduced = poly_normal_form(basis, raw)
                new = None if reduced.is_zero() else make_monic(reduced, basis.order)
                records.append(SPolyRecord(i, j, match, raw, reduced, new))
    return records


def is_pm_binomial(poly: NcPolynomial, field) -> bool:
    """At most two terms, every coefficient 1 or -1 in the field."""
    allowed = {field.one, field.neg(field.one)}
    return len(poly.terms) <= 2 and all(c in allowed for c in poly.terms.values())


def buchberger_pass(basis: Basis, limits: CompletionLimits | None = None):
    """One completion pass: (next basis, S-polynomial records).

    Reductions use the input basis only; monic survivors land as a batch,
    deduplicated. On a basis of two-term unit-coefficient members, every
    raw and reduced S-polynomial must keep that shape (reduction only ever
    replaces one term with another); a violation is an engine bug.
    """
    records = s_polynomials(basis)
    if all(is_pm_binomial(p, basis.field) for p in basis.polys):
        for rec in records:
            for poly in (rec.raw, rec.reduced):
                if not is_pm_binomial(poly, basis.field):
                    raise RuntimeError(f"two-term closure violated by {poly!r}")
    fresh = []
    seen = set(basis.polys)
    for rec in records:
        poly = rec.new_poly
        if poly is not None and poly not in seen:
            seen.add(poly)
            fresh.append(poly)
    if limits is not None:
        for poly in fresh:
            if any(len(w) > limits.max_word_length for w in poly.terms):
                raise LimitExceeded("max_word_length", records)
        if len(basis.polys) + len(fresh) > limits.max_rules:
            raise LimitExceeded("max_rules", records)
    return basis.with_polys(fresh), records


@dataclass(frozen=True)
class PolyPassRecord:
    index: int  # 1-based
    records: tuple
    basis: Basis  # basis after the pass (unchanged if a limit tripped)


@dataclass(frozen=True)
class BuchbergerResult:
    complete: bool  # fixpoint reached: the basis is a Groebner basis
    basis: Basis
    trace: tuple
    limit_reason: str | None = None


def buchberger(basis: Basis, limits: CompletionLimits = CompletionLimits()) -> BuchbergerResult:
    """Iterate buchberger_pass to the fixed point or to a resource limit."""
    records = []
    current = basis
    for index in range(1, limits.max_passes + 1):
        try:
            nxt, recs = buchberger_pass(current, limits)
        except LimitExceeded as exc:
            records.append(PolyPassRecord(index, exc.partial, current))
            return BuchbergerResult(False, current, tuple(records), exc.reason)
        records.append(PolyPassRecord(index, tuple(recs), nxt))
        if nxt.polys == current.polys:
            return BuchbergerResult(True, nxt, tuple(records))
        current = nxt
    return BuchbergerResult(False, current, tuple(records), "max_passes")


def monomials_equal_mod_ideal(basis: Basis, m1: Word, m2: Word) -> bool:
    """Decide m1 = m2 modulo the ideal; needs a Groebner basis."""
    diff = NcPolynomial.monomial(basis.field, m1) - NcPolynomial.monomial(basis.field, m2)
    return poly_normal_form(basis, diff).is_zero()


def render_poly(poly: NcPolynomial, order: MonomialOrder) -> str:
    """Deterministic text form, terms in decreasing monomial order.

    Unit coefficients are omitted, negatives fold into the separator, the
    empty monomial prints as a bare scalar, e.g. ``b.a - a.b``.
    """
    if poly.is_zero():
        return "0"
    field = poly.field
    parts = []
    for word, coeff in poly.sorted_terms(order):
        negative = field.is_negative(coeff)
        magnitude = field.magnitude_str(coeff)
        if len(word) == 0:
            body = magnitude
        elif magnitude == "1":
            body = word.dotted()
        else:
            body = f"{magnitude}*{word.dotted()}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def record_line(pass_index: int, rec: SPolyRecord, order: MonomialOrder) -> str:
    """One trace record; mirrors the rewriting trace with poly fields."""
    disp = (
        "ReducedToZero"
        if rec.new_poly is None
        else f"Added:({render_poly(rec.new_poly, order)})"
    )
    return (
        f"pass={pass_index} polys=({rec.poly1},{rec.poly2}) kind={rec.match.kind.value} "
        f"raw=({render_poly(rec.raw, order)}) reduced=({render_poly(rec.reduced, order)}) disp={disp}"
    )


def trace_lines(trace, order: MonomialOrder) -> list:
    lines = []
    for record in trace:
        for rec in record.records:
            lines.append(record_line(record.index, rec, order))
    return lines
