"""Command-line entry point.

Documents go to stdout (or --output) as JSON; diagnostics go to stderr.
Exit codes: 0 ok, 1 verification failure or violations, 2 usage or parse
error, 3 the input needs irrational or complex numbers.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time

from .affine import Affgebra, check_axioms, tangent_lie
from .errors import AffgebraError, CanonicalizationError, FieldExtensionRequired
from .exactnum import Q, format_rational
from .genderiv import solve_pairs, verify_pair
from .harness import orbit_test, random_rational
from .isoclass import (
    DEFAULT_GRID,
    canonicalize,
    compose_all,
    families_for,
    invariants,
    notes_for,
    orbit_search,
)
from .isoclass import expr
from .liecore import TAGS, catalog

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FIELD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _warn(msg: str) -> None:
    print(f"affgebra: {msg}", file=sys.stderr)


def _algebra(args):
    if args.algebra == "r3lambda":
        if args.lam is None:
            raise UsageError("--lambda is required for r3lambda")
        return catalog("r3lambda", _rational(args.lam, "--lambda"))
    if args.lam is not None:
        _warn(f"--lambda ignored for {args.algebra}")
    return catalog(args.algebra)


def _rational(text: str, what: str):
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: {exc}") from None


def _load(path: str) -> Affgebra:
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        return Affgebra.from_json(doc)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError, ZeroDivisionError, AffgebraError) as exc:
        raise UsageError(f"{path}: {type(exc).__name__}: {exc}") from None


def _emit(args, doc) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command: str, violations: list, samples: int, **extra) -> dict:
    return {
        "command": command,
        "outcome": "violations" if violations else "ok",
        "samples": samples,
        "violations_found": len(violations),
        **extra,
        "violations": violations,
    }


# -- commands -------------------------------------------------------------------

def cmd_solve(args) -> int:
    _emit(args, solve_pairs(_algebra(args)).to_json())
    return EXIT_OK


def _single_input(args) -> Affgebra:
    if len(args.input) != 1:
        raise UsageError(f"{args.command} takes one --input document")
    return _load(args.input[0])


def cmd_canonicalize(args) -> int:
    X = _single_input(args)
    if not X.verified:
        raise UsageError("the (f, g) pair fails the generalized-derivation identity")
    form, chain = canonicalize(X)
    _emit(args, {
        "label": form.label(),
        "form": form.to_json(),
        "chain": [m.to_json() for m in chain],
        "composed": compose_all(chain, X.algebra.dim).to_json(),
    })
    return EXIT_OK


def table_markdown(tag: str, lam=None) -> str:
    """One markdown table per slot layout (K families on r3(1) carry beta6)."""
    alg = catalog(tag, lam)
    lines = [f"## {alg.label}"]
    groups = {}
    for fam in families_for(tag, lam):
        groups.setdefault(fam.slots, []).append(fam)
    for slots, fams in groups.items():
        lines += [
            "",
            "| family | parameters | " + " | ".join(expr.symbol(s) for s in slots)
            + " | conditions | emitted when |",
            "|" + "---|" * (len(slots) + 4),
        ]
        for fam in fams:
            cells = [expr.render(t) for t in fam.template]
            printed = ", ".join(expr.render(c) for c in fam.printed) or "none"
            extra = fam.derived + (fam.derived_lambda1 if alg.lam == 1 else ())
            derived = ", ".join(expr.render(c) for c in extra) or "always"
            params = ", ".join(expr.symbol(p) for p in fam.params) or "none"
            lines.append(
                f"| {fam.name} | {params} | " + " | ".join(cells) + f" | {printed} | {derived} |"
            )
    notes = notes_for(tag, lam)
    if notes:
        lines += ["", *(f"- {n}" for n in notes)]
    return "\n".join(lines) + "\n"


def table_json(tag: str, lam=None) -> dict:
    alg = catalog(tag, lam)
    return {
        "algebra": alg.to_json(),
        "families": [
            {
                "name": fam.name,
                "params": list(fam.params),
                "template": dict(zip(fam.slots, fam.template)),
                "conditions": list(fam.printed),
                "emitted_when": list(fam.conditions(alg.lam)[len(fam.printed):]),
            }
            for fam in families_for(tag, lam)
        ],
        "notes": list(notes_for(tag, lam)),
    }


def cmd_table(args) -> int:
    alg = _algebra(args)
    if args.format == "json":
        _emit(args, table_json(alg.tag, alg.lam))
        return EXIT_OK
    text = table_markdown(alg.tag, alg.lam)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    X = _single_input(args)
    rng = random.Random(args.seed)
    violations = []
    v = verify_pair(X.pair)
    if v is not None:
        violations.append({"check": "pair", **v.to_json()})
    v = check_axioms(X)
    if v is not None:
        violations.append({"check": "axioms", **v.to_json()})
    n = X.algebra.dim
    points = [tuple(Q(0) for _ in range(n))]
    points += [tuple(random_rational(rng) for _ in range(n)) for _ in range(args.samples)]
    for e in points:
        if tangent_lie(X, e) != X.algebra:
            violations.append({
                "check": "tangent",
                "kind": "tangent-lie",
                "where": [format_rational(x) for x in e],
                "detail": "fibre bracket differs from the underlying Lie bracket",
            })
    _emit(args, _report("verify", violations, 2 + len(points), seed=args.seed))
    return EXIT_FAIL if violations else EXIT_OK


def cmd_orbit_test(args) -> int:
    alg = _algebra(args)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    start = time.perf_counter()
    rep = orbit_test(alg.tag, alg.lam, args.seed, args.trials)
    doc = _report(
        "orbit-test",
        rep.failures,
        sum(s["trials"] for s in rep.per_family.values()),
        algebra=alg.tag,
        **{"lambda": None if alg.lam is None else format_rational(alg.lam)},
        seed=args.seed,
        trials=args.trials,
        per_family=rep.per_family,
    )
    if args.timing:
        doc["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    _emit(args, doc)
    return EXIT_FAIL if rep.failures else EXIT_OK


def _grid(text: str | None):
    if text is None:
        return DEFAULT_GRID
    vals = [_rational(t, "--grid") for t in text.split(",") if t.strip()]
    if not vals:
        raise UsageError("--grid is empty")
    return tuple(vals)


def cmd_iso_check(args) -> int:
    if len(args.input) != 2:
        raise UsageError("iso-check needs exactly two --input documents")
    X1, X2 = (_load(p) for p in args.input)
    for X, p in ((X1, args.input[0]), (X2, args.input[1])):
        if not X.verified:
            raise UsageError(f"{p}: the (f, g) pair fails the generalized-derivation identity")
    result = orbit_search(X1, X2, _grid(args.grid), budget=args.budget)
    inv = [{k: format_rational(v) for k, v in invariants(X).items()} for X in (X1, X2)]
    _emit(args, {**result.to_json(), "invariants": inv})
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affgebra",
        description="Lie affgebras on the three-dimensional non-nilpotent solvable Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_flags(p):
        p.add_argument("--algebra", required=True, choices=TAGS)
        p.add_argument("--lambda", dest="lam", metavar="P/Q")

    def io_flags(p, count=1):
        p.add_argument("--input", action="append", required=True, metavar="PATH",
                       help="affgebra JSON document ('-' for stdin)"
                       + (", given twice" if count == 2 else ""))
        p.add_argument("--output", metavar="PATH")

    p = sub.add_parser("solve", help="basis of generalized-derivation pairs")
    algebra_flags(p)
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("canonicalize", help="canonical family and the moves reaching it")
    io_flags(p)
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("verify", help="check the pair identity, the axioms and the fibres")
    io_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10, help="random base points (default 10)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="classification table from the family registry")
    algebra_flags(p)
    p.add_argument("--format", choices=("markdown", "json"), default="markdown")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("orbit-test", help="randomized orbit-soundness run")
    algebra_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--timing", action="store_true", help="add elapsed_ms to the report")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_orbit_test)

    p = sub.add_parser("iso-check", help="search for a move between two affgebras")
    io_flags(p, count=2)
    p.add_argument("--grid", metavar="V1,V2,...", help="automorphism parameter grid")
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=cmd_iso_check)
    return parser


_VALUE_FLAGS = ("--lambda", "--grid")
_NEGATIVE = re.compile(r"-\d")


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-3/2" as an option, so glue it to its flag
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        _warn(str(exc))
        return EXIT_USAGE
    except FieldExtensionRequired as exc:
        _warn(f"needs a field extension: {exc}")
        return EXIT_FIELD
    except CanonicalizationError as exc:
        _warn(f"internal consistency check failed: {exc}")
        return EXIT_FAIL
    except AffgebraError as exc:
        _warn(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
