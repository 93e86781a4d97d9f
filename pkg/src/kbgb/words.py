"""Free-semigroup words, admissible orderings, and overlap detection.

Shared vocabulary for the string-rewriting and noncommutative-polynomial
engines: alphabets of named generators, words stored as index sequences,
shortlex and weighted-shortlex orderings, subword search, and the four
configurations in which two left-hand sides can share ground on a common
superposition word.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass


class AlphabetMismatch(ValueError):
    """Mixing words (or orders) that belong to different alphabets."""


class Alphabet:
    """Ordered collection of distinct generator names."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must name at least one generator")
        seen = set()
        for name in symbols:
            if not isinstance(name, str) or not name:
                raise ValueError(f"generator name must be a nonempty string: {name!r}")
            if any(ch.isspace() or not ch.isprintable() for ch in name):
                raise ValueError(f"generator name contains whitespace or unprintable characters: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name: {name!r}")
            seen.add(name)
        self.symbols = symbols
        self._index = {name: i for i, name in enumerate(symbols)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator: {name!r}") from None

    def word(self, *names: str) -> "Word":
        """Build a word from generator names."""
        return Word(self, tuple(self.index(n) for n in names))

    def empty_word(self) -> "Word":
        return Word(self, ())

    def parse_word(self, text: str) -> "Word":
        """Parse ``"b.a"`` (dotted), ``"ba"`` (single-char alphabets), or ``"1"``."""
        if text == "1":
            return Word(self, ())
        if "." in text:
            names = text.split(".")
        elif text in self._index:
            names = [text]
        elif all(len(s) == 1 for s in self.symbols):
            names = list(text)
        else:
            raise ValueError(f"cannot split {text!r}; separate generator names with '.'")
        if any(not n for n in names):
            raise ValueError(f"malformed word: {text!r}")
        return self.word(*names)


class Word:
    """Immutable sequence of generator indices; may be empty."""

    __slots__ = ("alphabet", "letters", "_hash")

    def __init__(self, alphabet: Alphabet, letters=()):
        letters = tuple(letters)
        n = len(alphabet)
        for ix in letters:
            if not 0 <= ix < n:
                raise ValueError(f"letter index {ix} outside alphabet of size {n}")
        self.alphabet = alphabet
        self.letters = letters
        self._hash = hash((alphabet.symbols, letters))

    @classmethod
    def _raw(cls, alphabet, letters):
        # internal fast path: letters already known to be valid indices
        word = object.__new__(cls)
        word.alphabet = alphabet
        word.letters = letters
        word._hash = hash((alphabet.symbols, letters))
        return word

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.letters == other.letters
            and self.alphabet == other.alphabet
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("cannot concatenate words over different alphabets")
        return Word._raw(self.alphabet, self.letters + other.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._raw(self.alphabet, self.letters[item])
        return self.letters[item]

    def names(self):
        return tuple(self.alphabet.symbols[ix] for ix in self.letters)

    def startswith(self, prefix: "Word") -> bool:
        return self.letters[: len(prefix.letters)] == prefix.letters

    def endswith(self, suffix: "Word") -> bool:
        n = len(suffix.letters)
        return n == 0 or self.letters[-n:] == suffix.letters

    def dotted(self) -> str:
        """Canonical text form: names joined with '.', empty word as '1'."""
        if not self.letters:
            return "1"
        return ".".join(self.names())

    def display(self) -> str:
        """Compact form: dots only when some generator name is multi-character."""
        if not self.letters:
            return "1"
        if any(len(s) > 1 for s in self.alphabet.symbols):
            return ".".join(self.names())
        return "".join(self.names())

    def __str__(self):
        return self.display()

    def __repr__(self):
        return f"Word({self.display()!r})"


def concat(w1: Word, w2: Word) -> Word:
    """Concatenation in the free monoid; both words must share the alphabet."""
    return w1 * w2


class MonomialOrder:
    """Total word order compatible with concatenation on both sides.

    ``shortlex`` compares length first, then letters by precedence.
    ``wtlex`` compares total weight, then length, then letters; with all
    weights equal to one it coincides with shortlex. Both are admissible
    and well-founded.
    """

    SHORTLEX = "shortlex"
    WTLEX = "wtlex"

    __slots__ = ("kind", "alphabet", "precedence", "weights", "_rank")

    def __init__(self, kind, alphabet, precedence=None, weights=None):
        if kind not in (self.SHORTLEX, self.WTLEX):
            raise ValueError(f"unknown order kind: {kind!r}")
        if precedence is None:
            precedence = alphabet.symbols
        precedence = tuple(precedence)
        if sorted(precedence) != sorted(alphabet.symbols):
            raise ValueError("precedence must list every generator exactly once")
        rank = [0] * len(alphabet)
        for pos, name in enumerate(precedence):
            rank[alphabet.index(name)] = pos
        if kind == self.WTLEX:
            if weights is None:
                raise ValueError("wtlex needs a weight for every generator")
            if hasattr(weights, "keys"):
                weights = tuple(weights[name] for name in alphabet.symbols)
            else:
                weights = tuple(weights)
            if len(weights) != len(alphabet):
                raise ValueError("one weight per generator required")
            if any(not isinstance(w, int) or w <= 0 for w in weights):
                raise ValueError("weights must be positive integers")
        else:
            if weights is not None:
                raise ValueError("shortlex takes no weights")
        self.kind = kind
        self.alphabet = alphabet
        self.precedence = precedence
        self.weights = weights
        self._rank = tuple(rank)

    @classmethod
    def shortlex(cls, alphabet, precedence=None):
        return cls(cls.SHORTLEX, alphabet, precedence)

    @classmethod
    def weighted_shortlex(cls, alphabet, weights, precedence=None):
        return cls(cls.WTLEX, alphabet, precedence, weights)

    def key(self, word: Word):
        """Sort key; tuples compare exactly as the order does."""
        ranks = tuple(self._rank[ix] for ix in word.letters)
        if self.kind == self.SHORTLEX:
            return (len(word.letters), ranks)
        weight = sum(self.weights[ix] for ix in word.letters)
        return (weight, len(word.letters), ranks)

    def compare(self, w1: Word, w2: Word) -> int:
        """-1, 0, or 1 as w1 is below, equal to, or above w2."""
        if w1.alphabet != self.alphabet or w2.alphabet != self.alphabet:
            raise AlphabetMismatch("words do not belong to this order's alphabet")
        k1, k2 = self.key(w1), self.key(w2)
        if k1 < k2:
            return -1
        if k1 > k2:
            return 1
        return 0

    def greater(self, w1: Word, w2: Word) -> bool:
        return self.compare(w1, w2) > 0

    def sort(self, words) -> list:
        return sorted(words, key=self.key)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.alphabet == other.alphabet
            and self.precedence == other.precedence
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.kind, self.alphabet, self.precedence, self.weights))

    def __repr__(self):
        if self.kind == self.SHORTLEX:
            return f"MonomialOrder.shortlex({'<'.join(self.precedence)})"
        weights = " ".join(
            f"{name}={self.weights[self.alphabet.index(name)]}" for name in self.precedence
        )
        return f"MonomialOrder.wtlex({weights})"


def find_subword_occurrences(word: Word, factor: Word) -> list:
    """Every factorization word = u.factor.v, ordered by increasing |u|."""
    if len(factor) == 0:
        raise ValueError("factor must be nonempty")
    if word.alphabet != factor.alphabet:
        raise AlphabetMismatch("subword search across different alphabets")
    out = []
    wl, fl = word.letters, factor.letters
    span = len(fl)
    for pos in range(len(wl) - span + 1):
        if wl[pos : pos + span] == fl:
            out.append((Word._raw(word.alphabet, wl[:pos]),
                        Word._raw(word.alphabet, wl[pos + span :])))
    return out


class MatchKind(enum.Enum):
    """How two left-hand sides can occupy one superposition word."""

    CONTAINMENT_12 = "Containment12"  # l1 = u2.l2.v2
    CONTAINMENT_21 = "Containment21"  # u1.l1.v1 = l2
    SUFFIX_PREFIX = "SuffixPrefix"    # l1.v1 = u2.l2
    PREFIX_SUFFIX = "PrefixSuffix"    # u1.l1 = l2.v2


_KIND_RANK = {kind: i for i, kind in enumerate(MatchKind)}


@dataclass(frozen=True)
class OverlapMatch:
    """One configuration of two left-hand sides, with its context witnesses.

    Witnesses not used by the configuration are the empty word. The
    superposition is the smallest word on which both sides apply.
    """

    kind: MatchKind
    u1: Word
    v1: Word
    u2: Word
    v2: Word
    superposition: Word

    def witness_lengths(self):
        return (len(self.u1), len(self.v1), len(self.u2), len(self.v2))

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.witness_lengths())


def find_matches(l1: Word, l2: Word, *, include_identity: bool = False) -> list:
    """All proper configurations in which l1 and l2 overlap.

    Shared-segment overlaps must be nonempty and strictly shorter than both
    inputs. The degenerate coincidence l1 == l2 with every witness empty is
    excluded unless ``include_identity`` is set; callers pairing two
    distinct rules that happen to share a left-hand side want it back, and
    then it is reported once, as a containment of the first kind.
    """
    if l1.alphabet != l2.alphabet:
        raise AlphabetMismatch("matching left-hand sides over different alphabets")
    if len(l1) == 0 or len(l2) == 0:
        raise ValueError("left-hand sides must be nonempty")
    return list(_find_matches_cached(l1, l2, include_identity))


@functools.lru_cache(maxsize=65536)
def _find_matches_cached(l1, l2, include_identity):
    alpha = l1.alphabet
    empty = Word(alpha)
    out = []
    for u2, v2 in find_subword_occurrences(l1, l2):
        if len(u2) == 0 and len(v2) == 0 and not include_identity:
            continue
        out.append(OverlapMatch(MatchKind.CONTAINMENT_12, empty, empty, u2, v2, l1))
    for u1, v1 in find_subword_occurrences(l2, l1):
        if len(u1) == 0 and len(v1) == 0:
            continue  # full coincidence is only ever reported as Containment12
        out.append(OverlapMatch(MatchKind.CONTAINMENT_21, u1, v1, empty, empty, l2))
    n1, n2 = len(l1), len(l2)
    for shared in range(1, min(n1, n2)):
        if l1.letters[n1 - shared :] == l2.letters[:shared]:
            v1 = l2[shared:]
            u2 = l1[: n1 - shared]
            out.append(OverlapMatch(MatchKind.SUFFIX_PREFIX, empty, v1, u2, empty, l1 * v1))
        if l1.letters[:shared] == l2.letters[n2 - shared :]:
            u1 = l2[: n2 - shared]
            v2 = l1[shared:]
            out.append(OverlapMatch(MatchKind.PREFIX_SUFFIX, u1, empty, empty, v2, l2 * v2))
    out.sort(key=OverlapMatch.sort_key)
    return tuple(out)
