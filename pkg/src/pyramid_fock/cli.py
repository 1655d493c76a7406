"""Command-line front end: ``pyramid-fock <command> ...``.

Exit codes: 0 success, 1 a suite found failures, 2 usage or parse error
(including unknown suites), 3 invalid input such as a non-pyramid state.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .coeff import format_coeff_v
from .fock_circle import apply_circle_word, parse_circle_word
from .fock_line import FockVector, WordParseError, apply_word, parse_line_word
from .pyramid import (
    Partition,
    Pyramid,
    PyramidError,
    partition_to_pyramid,
    pyramid_to_partition,
)
from .stepfun import format_rational, rational
from .verify import RandomSpec, UnknownSuite, cyclic_span, hw_scan, run_suite, suite_names

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


# -- state parsing ---------------------------------------------------------------


def load_state(text: str) -> FockVector:
    """A pyramid in text form, or a path to a JSON pyramid / FockVector."""
    path = Path(text)
    try:
        if text.endswith(".json") or (path.exists() and path.is_file()):
            data = json.loads(path.read_text())
            if isinstance(data, list):
                return FockVector.from_json(data)
            return FockVector.basis(Pyramid.from_json(data))
        return FockVector.basis(Pyramid.from_text(text))
    except PyramidError as exc:
        raise InputError(f"invalid pyramid: {exc}") from None
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read state {text!r}: {exc}") from None


def load_pyramid(text: str) -> Pyramid:
    w = load_state(text)
    if len(w) != 1:
        raise InputError("expected a single pyramid")
    return w.support()[0]


def format_vector(w: FockVector) -> str:
    if not w:
        return "0"
    lines = []
    for p, c in w.items():
        text = format_coeff_v(c)
        lines.append(f"{text if c.is_monomial() else f'({text})'} |{p.to_text()}>")
    return "\n".join(lines)


# -- rendering ----------------------------------------------------------------------


def _allocate(lengths: list[Fraction], width: int) -> list[int]:
    """Columns per plateau: proportional to length, at least one each (largest remainder)."""
    n = len(lengths)
    width = max(width, n)
    total = sum(lengths)
    raw = [width * x / total for x in lengths]
    cols = [max(1, int(r)) for r in raw]
    by_remainder = sorted(range(n), key=lambda i: (-(raw[i] - cols[i]), i))
    k = 0
    while sum(cols) < width:
        cols[by_remainder[k % n]] += 1
        k += 1
    while sum(cols) > width:
        # take back from the plateau that is most over its share
        i = max((i for i in range(n) if cols[i] > 1), key=lambda i: (cols[i] - raw[i], -i))
        cols[i] -= 1
    return cols


def render(p: Pyramid, width: int = 60) -> str:
    """ASCII elevation profile with the breakpoints labelled under the axis."""
    if p.is_zero():
        return "+" + "-" * max(width, 1) + "+\n 0"
    plats = list(p.f.plateaus())
    cols = _allocate([b - a for a, b, _ in plats], width)
    heights = []
    for (a, b, h), c in zip(plats, cols):
        heights.extend([h] * c)
    lines = []
    for level in range(p.height(), 0, -1):
        row = "".join("#" if h >= level else " " for h in heights)
        lines.append(f"{level:>3} |{row.rstrip()}")
    lines.append("    +" + "-" * len(heights))
    # breakpoint positions; labels stacked on as many rows as needed to avoid overlap
    pos = [0]
    for c in cols:
        pos.append(pos[-1] + c)
    labels = [(x, format_rational(pt)) for x, pt in zip(pos, p.breakpoints)]
    rows: list[list] = []
    for x, lab in labels:
        for row in rows:
            if row[-1][0] + len(row[-1][1]) < x:
                row.append((x, lab))
                break
        else:
            rows.append([(x, lab)])
    for row in rows:
        buf = [" "] * (5 + max(x + len(lab) for x, lab in row))
        for x, lab in row:
            for k, ch in enumerate(lab):
                buf[5 + x + k] = ch
        lines.append("".join(buf).rstrip())
    return "\n".join(lines)


# -- commands -----------------------------------------------------------------------


def cmd_act(args) -> int:
    w = load_state(args.state)
    if args.space == "line":
        gens = parse_line_word(args.word)
        out = apply_word(gens, w)
    else:
        gens = parse_circle_word(args.word)
        out = apply_circle_word(gens, w)
    if args.format == "json":
        print(json.dumps(out.to_json(), indent=2))
    else:
        print(format_vector(out))
    return EXIT_OK


def cmd_convert(args) -> int:
    src, dst = args.from_, args.to
    if src == dst:
        raise InputError("--from and --to must differ")
    try:
        if src == "partition":
            p = partition_to_pyramid(Partition.from_text(args.value))
            print(p.to_text())
            if args.plateaus and not p.is_zero():
                lo, hi = int(p.breakpoints[0]), int(p.breakpoints[-1])
                print(" ".join(f"p({x})={p(x)}" for x in range(lo, hi)))
        else:
            print(pyramid_to_partition(load_pyramid(args.value)).to_text() or "0")
    except PyramidError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(f"cannot read {args.value!r}: {exc}") from None
    return EXIT_OK


def cmd_render(args) -> int:
    print(render(load_pyramid(args.state), args.width))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.suite.replace("_", "-") not in suite_names():
        _err(f"unknown suite {args.suite!r}; known: {', '.join(suite_names())}")
        return EXIT_USAGE
    spec = RandomSpec(
        seed=args.seed,
        max_denominator=args.max_denominator,
        max_height=args.max_height,
        trials=args.trials,
    )
    report = run_suite(args.suite, spec, jobs=args.jobs)
    data = report.to_json()
    # timing goes to the diagnostics stream so stdout stays byte-deterministic
    elapsed = data.pop("elapsed_ms")
    print(f"elapsed_ms={elapsed}", file=sys.stderr)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(report.summary())
        for f in report.failures:
            print(json.dumps(f.to_json()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_hw_scan(args) -> int:
    res = hw_scan(args.grid, rational(args.max_size), args.interval_grid)
    print(f"basis size {res.basis_size}, interval grid 1/{res.interval_denominator}")
    print(f"highest weight vectors: {len(res.vectors)}")
    for w in res.vectors:
        print(format_vector(w).replace("\n", " + "))
    return EXIT_OK


def cmd_cyclic_span(args) -> int:
    target = load_pyramid(args.target)
    try:
        res = cyclic_span(args.grid, target)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(f"in_span: {str(res.in_span).lower()}")
    print(f"span_dim: {res.span_dim}")
    print(f"monomials: {res.monomials}")
    print(f"piece_dim: {res.piece_dim}")
    return EXIT_OK


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pyramid-fock", description="Fock spaces on rational pyramids.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("act", help="apply a generator word to a state")
    a.add_argument("--space", choices=("line", "circle"), default="line")
    a.add_argument("--word", required=True, help='e.g. "E[0,1) F[-1/2,1/2)" or "F(0,1/2) K(full)"')
    a.add_argument("--state", default="0", help="pyramid text like -1:1:0:2:1:1:2, or a JSON file")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(fn=cmd_act)

    c = sub.add_parser("convert", help="partition <-> integral pyramid")
    c.add_argument("--from", dest="from_", choices=("partition", "pyramid"), default="partition")
    c.add_argument("--to", choices=("partition", "pyramid"), default="pyramid")
    c.add_argument("--plateaus", action="store_true", help="also list the value on every unit cell")
    c.add_argument("value")
    c.set_defaults(fn=cmd_convert)

    r = sub.add_parser("render", help="ASCII picture of a pyramid")
    r.add_argument("--state", required=True)
    r.add_argument("--width", type=_positive, default=60)
    r.set_defaults(fn=cmd_render)

    k = sub.add_parser("check", help="run a verification suite")
    k.add_argument("--suite", required=True)
    k.add_argument("--trials", type=int, default=100)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--max-denominator", type=_positive, default=6)
    k.add_argument("--max-height", type=int, default=4)
    k.add_argument("--jobs", type=_positive, default=1)
    k.add_argument("--format", choices=("text", "json"), default="json")
    k.set_defaults(fn=cmd_check)

    h = sub.add_parser("hw-scan", help="highest weight vectors on a finite grid")
    h.add_argument("--grid", type=_positive, required=True, help="N for the (1/N)Z grid")
    h.add_argument("--max-size", required=True)
    h.add_argument("--interval-grid", type=_positive, default=None, help="M for E_J arcs on (1/M)Z (default 2N)")
    h.set_defaults(fn=cmd_hw_scan)

    y = sub.add_parser("cyclic-span", help="membership of a pyramid in U.|0>")
    y.add_argument("--grid", type=_positive, required=True)
    y.add_argument("--target", required=True)
    y.set_defaults(fn=cmd_cyclic_span)
    return ap


def _negative_literals(argv: list[str]) -> list[str]:
    """Let values such as ``-5:1:-2:...`` through argparse.

    argparse only recognises plain negative numbers, so a pyramid starting
    at a negative breakpoint would be read as an option.  Attach such a token
    to the preceding option, or put it after ``--`` when it is positional.
    """
    out: list[str] = []
    for tok in argv:
        looks_negative = len(tok) > 1 and tok[0] == "-" and (tok[1].isdigit() or tok[1] == "/")
        if looks_negative and out and out[-1].startswith("--") and "=" not in out[-1] and out[-1] != "--":
            out[-1] = f"{out[-1]}={tok}"
        elif looks_negative and "--" not in out:
            out += ["--", tok]
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_negative_literals(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.fn(args)
    except WordParseError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except UnknownSuite as exc:
        _err(f"unknown suite {exc}")
        return EXIT_USAGE
    except InputError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except PyramidError as exc:
        _err(f"invalid pyramid: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
