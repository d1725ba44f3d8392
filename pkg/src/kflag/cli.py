"""Command-line front end.

Exit codes: 0 ok, 1 identity mismatch, 2 usage error, 3 unsupported input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import config
from .errors import KFlagError, MismatchError, UnsupportedType
from .kclasses import FlagVariety, flag_variety
from .motivic import MOTIVIC_KINDS, casselman_shalika, character_routes, motivic_class
from .poincare import (
    bb_product_check,
    load_fixture,
    poincare_bruhat,
    poincare_product,
    is_rationally_smooth,
)
from .rootsys import WeylElem, parse_cartan
from .verify import SIMPLY_LACED, SUITES, run_suite, word_text

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3

KIND_ALIASES = {"mcprime": "mc_prime", "point": "point"}
CHAR_CLASSES = ("schubert", "mc", "mc_prime")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------


def parse_word(fv: FlagVariety, spec: str) -> WeylElem:
    """'s1 s2 s1' (or '1 2 1', commas allowed) -> Weyl element; the word need not be reduced."""
    tokens = [t for t in re.split(r"[\s,*.]+", spec.strip()) if t]
    if tokens in (["id"], ["e"]):
        tokens = []
    word = []
    for tok in tokens:
        if re.fullmatch(r"\d+", tok):
            letters = [tok]
        elif re.fullmatch(r"(?:[sS]\d+)+", tok):  # "s1s2s1"
            letters = re.findall(r"\d+", tok)
        else:
            raise UsageError(f"cannot parse word token {tok!r}; expected s<i>")
        for x in letters:
            i = int(x)
            if not 1 <= i <= fv.rank:
                raise UsageError(f"simple reflection s{i} out of range 1..{fv.rank}")
            word.append(i - 1)
    return fv.rs.element(word)


def parse_weight(fv: FlagVariety, spec: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in re.split(r"[\s,]+", spec.strip()) if t)
    except ValueError:
        raise UsageError(f"cannot parse weight {spec!r}; expected comma-separated integers") from None
    if len(vals) != fv.rank:
        raise UsageError(f"weight needs {fv.rank} coordinates, got {len(vals)}")
    return vals


def load_cartan(spec: str) -> FlagVariety:
    try:
        family, rank = parse_cartan(spec)
    except (UnsupportedType, ValueError) as exc:
        raise UnsupportedType(str(exc)) from None
    return flag_variety(family, rank)


def _fix_negative_values(argv: list[str]) -> list[str]:
    """Let '--lambda -1,2' through argparse by joining it into '--lambda=-1,2'."""
    out = []
    it = iter(range(len(argv)))
    skip = False
    for k in it:
        if skip:
            skip = False
            continue
        arg = argv[k]
        if arg in ("--lambda", "--w") and k + 1 < len(argv) and argv[k + 1].startswith("-"):
            out.append(f"{arg}={argv[k + 1]}")
            skip = True
        else:
            out.append(arg)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kflag", description="Equivariant K-theory of flag varieties G/B.")
    common = _Parser(add_help=False)
    common.add_argument("--cartan", required=True, help="Cartan type, e.g. A2, B3, G2")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("class", parents=[common], help="localized class at every fixed point")
    p.add_argument("--w", default="", help='Weyl element word, e.g. "s1 s2"')
    p.add_argument("--kind", default="mc", help=f"one of {', '.join(MOTIVIC_KINDS + ('point',))}")

    p = sub.add_parser("chi", parents=[common], help="Euler characteristic vs operator formula")
    p.add_argument("--w", default="")
    p.add_argument("--lambda", dest="weight", required=True)
    p.add_argument("--class", dest="klass", default="schubert", help="schubert, mc or mc_prime")

    p = sub.add_parser("whittaker", parents=[common], help="Iwahori–Whittaker function T~_w(e^lambda)")
    p.add_argument("--w", default="")
    p.add_argument("--lambda", dest="weight", required=True)
    p.add_argument("--class", dest="klass", default="mc_prime", help="mc_prime (T~) or mc (T~dual)")

    p = sub.add_parser("cs", parents=[common], help="Casselman–Shalika summation identities")
    p.add_argument("--lambda", dest="weight", required=True)

    p = sub.add_parser("poincare", parents=[common], help="Poincaré polynomial of X(w)")
    p.add_argument("--w", default=None)
    p.add_argument("--fixture", default=None, help="fixed-point data JSON file, or P1/P2")

    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("--suite", default="all", choices=SUITES + ("all",))
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _emit(args, text: str, data: dict):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_class(args) -> int:
    fv = load_cartan(args.cartan)
    w = parse_word(fv, args.w)
    kind = KIND_ALIASES.get(args.kind, args.kind)
    if kind == "point":
        cls = fv.point_class(w)
    elif kind in MOTIVIC_KINDS:
        cls = motivic_class(fv, kind, w)
    else:
        raise UsageError(f"unknown class kind {args.kind!r}")
    header = f"{kind} class of w = {word_text(w.word)} on {fv.name}"
    lines = [header]
    for u, v in enumerate(cls.values):
        lines.append(f"  at {word_text(fv.rs.elements[u].word)}: {v.render()}")
    data = cls.to_json()
    data["w"] = [i + 1 for i in w.word]
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def _identity_output(args, title: str, checks) -> int:
    lines = [title]
    ok = True
    for name, lhs, rhs in checks:
        equal = lhs == rhs
        ok &= equal
        lines.append(f"  {name}")
        lines.append(f"    localization: {lhs.render()}")
        lines.append(f"    operator:     {rhs.render()}")
        lines.append(f"    {'EQUAL' if equal else 'MISMATCH'}")
    data = {
        "title": title,
        "checks": [
            {"name": n, "lhs": a.to_json(), "rhs": b.to_json(), "equal": a == b} for n, a, b in checks
        ],
        "equal": ok,
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_chi(args) -> int:
    fv = load_cartan(args.cartan)
    w = parse_word(fv, args.w)
    lam = parse_weight(fv, args.weight)
    kind = KIND_ALIASES.get(args.klass, args.klass)
    if kind not in CHAR_CLASSES:
        raise UsageError(f"--class must be one of {', '.join(CHAR_CLASSES)}")
    geo, alg = character_routes(fv, kind, lam, w)
    op = {"schubert": "d~_w", "mc": "T~dual_w", "mc_prime": "T~_w"}[kind]
    title = f"chi(X, L_lambda (x) {kind}(w)) vs {op}(e^lambda) on {fv.name}, w = {word_text(w.word)}, lambda = {list(lam)}"
    return _identity_output(args, title, [(f"{kind} character", geo, alg)])


def cmd_cs(args) -> int:
    fv = load_cartan(args.cartan)
    lam = parse_weight(fv, args.weight)
    checks = casselman_shalika(fv, lam)
    title = f"Casselman–Shalika sums on {fv.name}, lambda = {list(lam)}"
    lines = [title]
    ok = True
    for c in checks:
        ok &= c.equal
        lines.append(f"  {c.name}")
        lines.append(f"    operator sum:     {c.lhs.render()}")
        lines.append(f"    localization sum: {c.rhs.render()}")
        lines.append(f"    {'EQUAL' if c.equal else 'MISMATCH'}")
    _emit(args, "\n".join(lines), {"title": title, "checks": [c.to_json() for c in checks], "equal": ok})
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_poincare(args) -> int:
    if args.fixture is not None:
        try:
            data = load_fixture(args.fixture)
        except (OSError, FileNotFoundError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load fixture {args.fixture!r}: {exc}") from None
        report = bb_product_check(data, args.fixture)
        lines = [f"fixed-point data {args.fixture} (dim {data.dim}, {len(data.points)} points)"]
        if not report.applicable:
            lines.append(f"  NOT APPLICABLE: {report.error}")
        else:
            lines.append(f"  sum q^l(p):      {report.bruhat_sum.render()}")
            lines.append(f"  height product:  {report.product.render()}")
            lines.append(f"  (i) sum = product:                {report.sum_equals_product}")
            lines.append(f"  (ii) localization sum = point count: {report.e2_equals_point_count}")
            lines.append(f"  (iii) non-minimal terms vanish at q = -y: {report.nonminimal_terms_vanish}")
            lines.append(f"  {'PASS' if report.passed else 'FAIL'}")
        _emit(args, "\n".join(lines), report.to_json())
        return EXIT_OK if report.passed or not report.applicable else EXIT_MISMATCH
    fv = load_cartan(args.cartan)
    if args.w is None:
        raise UsageError("poincare needs --w or --fixture")
    w = parse_word(fv, args.w)
    rs = fv.rs
    bruhat = poincare_bruhat(rs, w)
    smooth = is_rationally_smooth(rs, w)
    heights = sorted(int(rs.heights[k]) for k in rs.reflection_indices_leq(w))
    label = "RATIONALLY-SMOOTH" if smooth else "NOT-RATIONALLY-SMOOTH"
    lines = [f"X(w) for w = {word_text(w.word)} in {fv.name}", f"  Bruhat sum: {bruhat.render()}", f"  label: {label}"]
    lines.append(f"  reflection heights: {{{', '.join(map(str, heights))}}}")
    data = {
        "cartan": {"family": rs.family, "rank": rs.rank},
        "w": [i + 1 for i in w.word],
        "bruhat_sum": bruhat.to_json(),
        "rationally_smooth": smooth,
        "reflection_heights": heights,
    }
    code = EXIT_OK
    if smooth:
        prod = poincare_product(rs, w)
        equal = prod == bruhat
        if equal:
            verdict = "EQUAL"
        elif rs.family not in SIMPLY_LACED:
            verdict = "DISCREPANCY"
        else:
            verdict = "MISMATCH"
            code = EXIT_MISMATCH
        lines.append(f"  product formula: {prod.render()}")
        lines.append(f"  {verdict}")
        data.update(product=prod.to_json(), verdict=verdict)
    else:
        lines.append("  product check skipped (not rationally smooth)")
        data.update(product=None, verdict="SKIPPED")
    _emit(args, "\n".join(lines), data)
    return code


def cmd_verify(args) -> int:
    fv = load_cartan(args.cartan)
    checks = run_suite(args.suite, fv, args.seed)
    failed = [c for c in checks if c.label == "FAIL"]
    lines = [f"verify suite={args.suite} cartan={fv.name} seed={args.seed}"]
    lines += [c.line() for c in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} identities hold; {len(failed)} failed")
    data = {
        "suite": args.suite,
        "cartan": {"family": fv.rs.family, "rank": fv.rs.rank},
        "seed": args.seed,
        "checks": [c.to_json() for c in checks],
        "failed": len(failed),
    }
    _emit(args, "\n".join(lines), data)
    return EXIT_MISMATCH if failed else EXIT_OK


COMMANDS = {
    "class": cmd_class,
    "chi": cmd_chi,
    "whittaker": cmd_chi,
    "cs": cmd_cs,
    "poincare": cmd_poincare,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_fix_negative_values(argv))
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"kflag: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedType as exc:
        print(f"kflag: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except MismatchError as exc:
        print(f"kflag: mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except KFlagError as exc:
        print(f"kflag: error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()


__all__ = ["entry", "main"]
