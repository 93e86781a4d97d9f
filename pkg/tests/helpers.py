"""Construction shortcuts shared across the test modules."""

import contextlib
import io

from kbgb import (
    Alphabet,
    MonomialOrder,
    RewriteSystem,
    Rule,
    SEMIGROUP,
)
from kbgb.cli import main as cli_main


def make_alphabet(letters="ab"):
    return Alphabet(tuple(letters))


def make_system(rule_texts, letters="ab", mode=SEMIGROUP, precedence=None):
    """Build a shortlex system from "lhs->rhs" strings over single-char letters."""
    alpha = make_alphabet(letters)
    order = MonomialOrder.shortlex(alpha, precedence)
    rules = []
    for text in rule_texts:
        lhs_text, _, rhs_text = text.partition("->")
        rules.append(Rule(alpha.parse_word(lhs_text.strip() or "1"),
                          alpha.parse_word(rhs_text.strip() or "1")))
    return RewriteSystem(alpha, order, tuple(rules), mode)


def random_oriented_rules(rng, alpha, order, max_rules=4, max_side=4, allow_empty_rhs=False):
    """Random distinct oriented rules; sides drawn uniformly by length."""
    count = rng.randint(1, max_rules)
    rules = []
    seen = set()
    attempts = 0
    while len(rules) < count and attempts < 200:
        attempts += 1
        size = len(alpha)
        lhs = tuple(rng.randrange(size) for _ in range(rng.randint(1, max_side)))
        low = 0 if allow_empty_rhs else 1
        rhs = tuple(rng.randrange(size) for _ in range(rng.randint(low, max_side)))
        from kbgb import Word

        w1, w2 = Word(alpha, lhs), Word(alpha, rhs)
        cmp = order.compare(w1, w2)
        if cmp == 0:
            continue
        if cmp < 0:
            w1, w2 = w2, w1
        if len(w1) == 0:
            continue
        rule = Rule(w1, w2)
        if rule in seen:
            continue
        seen.add(rule)
        rules.append(rule)
    return tuple(rules)


def random_system(rng, letters=None, mode=SEMIGROUP, max_rules=4, max_side=4):
    letters = letters or rng.choice(["ab", "ab", "abc"])
    alpha = make_alphabet(letters)
    order = MonomialOrder.shortlex(alpha)
    rules = random_oriented_rules(rng, alpha, order, max_rules, max_side,
                                  allow_empty_rhs=(mode != SEMIGROUP))
    return RewriteSystem(alpha, order, rules, mode)


def run_cli(argv):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = cli_main(list(argv))
        except SystemExit as exc:  # argparse usage errors
            code = exc.code if isinstance(exc.code, int) else 1
    return code, out.getvalue(), err.getvalue()
