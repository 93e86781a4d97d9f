"""Line-oriented presentation files.

Grammar (``#`` starts a comment, blank lines are ignored)::

    mode: sgp | mon | alg
    field: Q | F<p>              # coefficient field; default Q
    alphabet: <name> <name> ...
    order: shortlex a < b < c
    order: wtlex a=2 b=1         # weighted shortlex; needs a precedence line
    precedence: a < b            # wtlex only
    rules:                       # sgp / mon
      b.a -> a.b
    polys:                       # alg
      b.a - a.b

Generator names match ``[A-Za-z_][A-Za-z0-9_]*``. Words join names with
'.'; alphabets whose names are all single characters may pack letters
("ba"). "1" denotes the empty word. Polynomial terms take an optional
integer or a/b rational coefficient, as in ``2*a.b - 1/2*b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ncpoly import Basis, NcPolynomial, field_from_name, make_monic
from .rewriting import MONOID, SEMIGROUP, RewriteSystem, Rule
from .words import Alphabet, MonomialOrder, Word

MODES = ("sgp", "mon", "alg")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_NUMBER = re.compile(r"\d+(?:/\d+)?\Z")


class ParseError(ValueError):
    """Input rejected, with the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class PresentationFile:
    """Parsed form of one presentation file.

    ``polys_raw`` keeps the source coefficients exactly (as Fractions, in
    source order) so a basis can be built over any requested field.
    """

    mode: str
    alphabet: Alphabet
    order: MonomialOrder
    field_name: str | None = None
    rules: tuple = ()
    polys_raw: tuple = ()

    def system(self) -> RewriteSystem:
        if self.mode == "alg":
            raise ValueError("an alg presentation has no rewrite rules")
        mode = MONOID if self.mode == "mon" else SEMIGROUP
        return RewriteSystem(
            self.alphabet,
            self.order,
            tuple(Rule(lhs, rhs) for lhs, rhs in self.rules),
            mode,
        )

    def field(self):
        return field_from_name(self.field_name or "Q")

    def basis(self, field=None) -> Basis:
        """Basis over the requested field; members are normalized monic."""
        if self.mode != "alg":
            raise ValueError("only an alg presentation carries polynomials")
        field = field if field is not None else self.field()
        polys = []
        for terms in self.polys_raw:
            poly = make_monic(NcPolynomial(field, terms), self.order)
            if poly not in polys:
                polys.append(poly)
        return Basis(self.alphabet, self.order, field, tuple(polys))


def _strip_comment(raw: str) -> str:
    cut = raw.find("#")
    return raw if cut < 0 else raw[:cut]


def _parse_chain(line: int, text: str, what: str) -> tuple:
    names = [part.strip() for part in text.split("<")]
    if any(not n for n in names):
        raise ParseError(line, f"malformed {what}: expected names separated by '<'")
    for name in names:
        if " " in name or "\t" in name:
            raise ParseError(line, f"malformed {what} near {name!r}: missing '<'?")
    return tuple(names)


def _parse_word(line: int, alphabet: Alphabet, text: str) -> Word:
    try:
        return alphabet.parse_word(text)
    except ValueError as exc:
        raise ParseError(line, str(exc)) from None


def parse_poly_terms(line: int, alphabet: Alphabet, text: str) -> tuple:
    """Signed term list as ((Word, Fraction), ...), in source order."""
    padded = text.replace("*", " ").replace("+", " + ").replace("-", " - ")
    tokens = padded.split()
    if not tokens:
        raise ParseError(line, "empty polynomial")
    terms = []
    sign = 1
    pending: list = []
    first = True

    def flush():
        if not pending:
            raise ParseError(line, "malformed polynomial: empty term")
        if _NUMBER.fullmatch(pending[0]):
            coeff = Fraction(pending[0])
            rest = pending[1:]
        else:
            coeff = Fraction(1)
            rest = pending
        if len(rest) > 1:
            raise ParseError(line, f"malformed term near {' '.join(pending)!r}")
        word = _parse_word(line, alphabet, rest[0]) if rest else Word(alphabet)
        terms.append((word, sign * coeff))

    for token in tokens:
        if token in ("+", "-"):
            if not first:
                flush()
                pending.clear()
            first = False
            sign = 1 if token == "+" else -1
            continue
        pending.append(token)
        first = False
    flush()
    return tuple(terms)


def parse_presentation(text: str) -> PresentationFile:
    """Parse one presentation; whitespace-insensitive within lines."""
    directives = {}
    items = []
    section = None
    total = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        total = lineno
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if line[0] in " \t":
            if section is None:
                raise ParseError(lineno, "indented line outside a rules/polys section")
            items.append((lineno, section, line.strip()))
            continue
        key, colon, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if not colon:
            raise ParseError(lineno, "expected 'key: value'")
        if key in ("rules", "polys"):
            if value:
                raise ParseError(lineno, f"'{key}:' takes no value on its line")
            if section is not None:
                raise ParseError(lineno, "only one rules/polys section allowed")
            section = key
            continue
        if key not in ("mode", "field", "alphabet", "order", "precedence"):
            raise ParseError(lineno, f"unknown directive: {key!r}")
        if key in directives:
            raise ParseError(lineno, f"duplicate directive: {key!r}")
        if section is not None:
            raise ParseError(lineno, f"directive {key!r} after the {section} section")
        directives[key] = (lineno, value)

    def require(key):
        if key not in directives:
            raise ParseError(total, f"missing required directive: {key!r}")
        return directives[key]

    lineno, mode = require("mode")
    if mode not in MODES:
        raise ParseError(lineno, f"mode must be one of {'/'.join(MODES)}: {mode!r}")

    field_name = None
    if "field" in directives:
        lineno, value = directives["field"]
        try:
            field_from_name(value)
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        field_name = value

    lineno, value = require("alphabet")
    names = value.split()
    if not names:
        raise ParseError(lineno, "alphabet must name at least one generator")
    for name in names:
        if not _NAME.fullmatch(name):
            raise ParseError(lineno, f"invalid generator name: {name!r}")
    if len(set(names)) != len(names):
        raise ParseError(lineno, "duplicate generator name in alphabet")
    alphabet = Alphabet(names)

    lineno, value = require("order")
    kind, _, body = value.partition(" ")
    body = body.strip()
    if kind == "shortlex":
        precedence = _parse_chain(lineno, body, "precedence chain")
        for name in precedence:
            if name not in alphabet:
                raise ParseError(lineno, f"unknown generator in order: {name!r}")
        if sorted(precedence) != sorted(alphabet.symbols):
            raise ParseError(lineno, "order must list every generator exactly once")
        if "precedence" in directives:
            raise ParseError(directives["precedence"][0], "precedence line needs a wtlex order")
        order = MonomialOrder.shortlex(alphabet, precedence)
    elif kind == "wtlex":
        weights = {}
        for part in body.split():
            name, eq, weight = part.partition("=")
            if not eq or not weight.isdigit() or int(weight) <= 0:
                raise ParseError(lineno, f"malformed weight (expected name=positive): {part!r}")
            if name not in alphabet:
                raise ParseError(lineno, f"unknown generator in order: {name!r}")
            if name in weights:
                raise ParseError(lineno, f"duplicate weight for {name!r}")
            weights[name] = int(weight)
        if sorted(weights) != sorted(alphabet.symbols):
            raise ParseError(lineno, "order must weight every generator exactly once")
        if "precedence" not in directives:
            raise ParseError(lineno, "wtlex order needs a precedence line")
        plineno, pvalue = directives["precedence"]
        precedence = _parse_chain(plineno, pvalue, "precedence chain")
        for name in precedence:
            if name not in alphabet:
                raise ParseError(plineno, f"unknown generator in precedence: {name!r}")
        if sorted(precedence) != sorted(alphabet.symbols):
            raise ParseError(plineno, "precedence must list every generator exactly once")
        order = MonomialOrder.weighted_shortlex(alphabet, weights, precedence)
    else:
        raise ParseError(lineno, f"unknown order kind: {kind!r}")

    rules = []
    polys_raw = []
    for lineno, where, body in items:
        if where == "rules":
            if mode == "alg":
                raise ParseError(lineno, "rules section requires sgp or mon mode")
            lhs_text, arrow, rhs_text = body.partition("->")
            if not arrow:
                raise ParseError(lineno, f"malformed rule (expected 'lhs -> rhs'): {body!r}")
            lhs = _parse_word(lineno, alphabet, lhs_text.strip())
            rhs = _parse_word(lineno, alphabet, rhs_text.strip())
            if len(lhs) == 0:
                raise ParseError(lineno, "rule left side must be nonempty")
            if mode == "sgp" and len(rhs) == 0:
                raise ParseError(lineno, "empty right side needs mon mode")
            rules.append((lhs, rhs))
        else:
            if mode != "alg":
                raise ParseError(lineno, "polys section requires alg mode")
            terms = parse_poly_terms(lineno, alphabet, body)
            try:
                if NcPolynomial(field_from_name(field_name or "Q"), terms).is_zero():
                    raise ParseError(lineno, "polynomial is zero")
            except ZeroDivisionError as exc:
                raise ParseError(lineno, str(exc)) from None
            polys_raw.append(terms)

    return PresentationFile(mode, alphabet, order, field_name, tuple(rules), tuple(polys_raw))


def _render_raw_coeff(coeff: Fraction) -> str:
    return str(-coeff if coeff < 0 else coeff)


def _render_raw_poly(terms) -> str:
    parts = []
    for word, coeff in terms:
        negative = coeff < 0
        magnitude = _render_raw_coeff(coeff)
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


def render_presentation(pf: PresentationFile) -> str:
    """Canonical text for a parsed presentation; reparses to an equal value."""
    lines = [f"mode: {pf.mode}"]
    if pf.field_name is not None:
        lines.append(f"field: {pf.field_name}")
    lines.append("alphabet: " + " ".join(pf.alphabet.symbols))
    if pf.order.kind == MonomialOrder.SHORTLEX:
        lines.append("order: shortlex " + " < ".join(pf.order.precedence))
    else:
        weights = " ".join(
            f"{name}={pf.order.weights[pf.alphabet.index(name)]}"
            for name in pf.alphabet.symbols
        )
        lines.append(f"order: wtlex {weights}")
        lines.append("precedence: " + " < ".join(pf.order.precedence))
    if pf.mode == "alg":
        lines.append("polys:")
        for terms in pf.polys_raw:
            lines.append(f"  {_render_raw_poly(terms)}")
    else:
        lines.append("rules:")
        for lhs, rhs in pf.rules:
            lines.append(f"  {lhs.dotted()} -> {rhs.dotted()}")
    return "\n".join(lines) + "\n"
