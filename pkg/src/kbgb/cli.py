"""Command-line frontend.

Subcommands: complete, lockstep, nf, equal, iso-check. Exit codes are a
fixed partition: 0 success, 1 input error, 2 resource limit, 3 divergence.
Output is byte-identical across runs for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import correspondence, ncpoly, rewriting
from .limits import CompletionLimits
from .ncpoly import field_from_name, render_poly
from .presentation import ParseError, parse_poly_terms, parse_presentation
from .words import AlphabetMismatch

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2
EXIT_DIVERGENCE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; keep 2 reserved for resource limits
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="presentation file")
    common.add_argument("--max-passes", type=int, default=50, metavar="N")
    common.add_argument("--max-rules", type=int, default=10_000, metavar="N")
    common.add_argument("--max-word-len", type=int, default=256, metavar="N")
    common.add_argument("--field", default=None, metavar="Q|F<p>",
                        help="coefficient field (overrides the file)")
    common.add_argument("--trace", default=None, metavar="PATH",
                        help="also write the trace/report to a file")

    parser = _Parser(prog="kbgb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("complete", parents=[common],
                       help="run completion, print the trace and the final system")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("lockstep", parents=[common],
                       help="run both engines in lockstep and verify each pass")
    p.set_defaults(func=cmd_lockstep)

    p = sub.add_parser("nf", parents=[common], help="normal form of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("equal", parents=[common],
                       help="decide whether two words are equal")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("iso-check", parents=[common],
                       help="truncated isomorphism check up to a length bound")
    p.add_argument("-L", "--length", type=int, default=4, metavar="N")
    p.set_defaults(func=cmd_iso_check)

    return parser


def _limits(args) -> CompletionLimits:
    return CompletionLimits(args.max_passes, args.max_rules, args.max_word_len)


def _load(args):
    return parse_presentation(Path(args.file).read_text())


def _field(args, pf):
    return field_from_name(args.field or pf.field_name or "Q")


def _emit(lines, args) -> None:
    text = "\n".join(lines) + "\n" if lines else ""
    sys.stdout.write(text)
    if args.trace:
        Path(args.trace).write_text(text)


def _lockstep_system(args, pf):
    """A rewrite system for the lockstep/iso commands; alg files must be
    lists of two-term l - r polynomials."""
    if pf.mode == "alg":
        return correspondence.basis_to_rules(pf.basis(_field(args, pf)))
    return pf.system()


def _warn_incomplete(reason) -> None:
    sys.stderr.write(
        f"warning: completion hit a limit (reason={reason}); "
        "normal forms may not be unique\n"
    )


def cmd_complete(args) -> int:
    pf = _load(args)
    limits = _limits(args)
    lines = []
    if pf.mode == "alg":
        basis = pf.basis(_field(args, pf))
        result = ncpoly.buchberger(basis, limits)
        lines.extend(ncpoly.trace_lines(result.trace, basis.order))
        if result.complete:
            lines.append(f"status: complete passes={len(result.trace)}")
        else:
            lines.append(
                f"status: limit-exceeded reason={result.limit_reason} passes={len(result.trace)}"
            )
        for poly in result.basis.polys:
            lines.append(f"poly: {render_poly(poly, basis.order)}")
    else:
        system = pf.system()
        result = rewriting.knuth_bendix(system, limits)
        lines.extend(rewriting.trace_lines(result.trace))
        if result.complete:
            lines.append(f"status: complete passes={len(result.trace)}")
        else:
            lines.append(
                f"status: limit-exceeded reason={result.limit_reason} passes={len(result.trace)}"
            )
        for rule in result.system.rules:
            lines.append(f"rule: {rule.lhs.dotted()} -> {rule.rhs.dotted()}")
    _emit(lines, args)
    return EXIT_OK if result.complete else EXIT_LIMIT


def cmd_lockstep(args) -> int:
    pf = _load(args)
    system = _lockstep_system(args, pf)
    report = correspondence.lockstep_complete(system, _field(args, pf), _limits(args))
    _emit(correspondence.report_lines(report), args)
    if report.verdict == correspondence.VERDICT_CORRESPONDS:
        return EXIT_OK
    if report.verdict == correspondence.VERDICT_LIMIT:
        return EXIT_LIMIT
    return EXIT_DIVERGENCE


def cmd_nf(args) -> int:
    pf = _load(args)
    limits = _limits(args)
    if pf.mode == "alg":
        basis = pf.basis(_field(args, pf))
        result = ncpoly.buchberger(basis, limits)
        if not result.complete:
            _warn_incomplete(result.limit_reason)
        terms = parse_poly_terms(0, pf.alphabet, args.word)
        poly = ncpoly.NcPolynomial(result.basis.field, terms)
        nf = ncpoly.poly_normal_form(result.basis, poly)
        _emit([render_poly(nf, basis.order)], args)
    else:
        system = pf.system()
        result = rewriting.knuth_bendix(system, limits)
        if not result.complete:
            _warn_incomplete(result.limit_reason)
        word = pf.alphabet.parse_word(args.word)
        _emit([rewriting.normal_form(result.system, word).dotted()], args)
    return EXIT_OK


def cmd_equal(args) -> int:
    pf = _load(args)
    limits = _limits(args)
    if pf.mode == "alg":
        basis = pf.basis(_field(args, pf))
        result = ncpoly.buchberger(basis, limits)
        if not result.complete:
            _warn_incomplete(result.limit_reason)
        w1 = pf.alphabet.parse_word(args.word1)
        w2 = pf.alphabet.parse_word(args.word2)
        equal = ncpoly.monomials_equal_mod_ideal(result.basis, w1, w2)
    else:
        system = pf.system()
        result = rewriting.knuth_bendix(system, limits)
        if not result.complete:
            _warn_incomplete(result.limit_reason)
        w1 = pf.alphabet.parse_word(args.word1)
        w2 = pf.alphabet.parse_word(args.word2)
        equal = rewriting.words_equal(result.system, w1, w2)
    _emit(["EQUAL" if equal else "DISTINCT"], args)
    return EXIT_OK


def cmd_iso_check(args) -> int:
    pf = _load(args)
    system = _lockstep_system(args, pf)
    report = correspondence.verify_algebra_iso(
        system, _field(args, pf), args.length, _limits(args)
    )
    _emit(correspondence.iso_report_lines(report), args)
    if report.verdict == "Pass":
        return EXIT_OK
    if report.verdict == "Inconclusive":
        return EXIT_LIMIT
    return EXIT_DIVERGENCE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ValueError, AlphabetMismatch, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
