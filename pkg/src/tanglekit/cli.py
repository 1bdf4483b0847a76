"""Command-line entry point.

Exit codes: 0 success / feasible, 1 negative verdict, 2 verdict unknown
(budget exhausted), 64 usage error, 65 malformed input, 66 missing input.
Every file argument accepts ``-`` for standard input or output.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import core, explore, reduction, render, search, simple
from .errors import (
    ArmInterleaving,
    BudgetExhausted,
    CyclicOrder,
    FormatError,
    FormulaError,
    InfeasibleList,
    LimitReached,
    ListError,
    InvalidTangle,
    MoveError,
    NotNAE,
    NotSimple,
    TooManyVariables,
    WireCountMismatch,
)

EX_OK = 0
EX_NO = 1
EX_UNKNOWN = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66

MALFORMED = (FormatError, ListError, MoveError, InvalidTangle, FormulaError, WireCountMismatch)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _say(msg: str) -> None:
    print(msg, flush=True)


def _threads(args) -> int:
    return args.threads if args.threads else search.default_threads()


# --- subcommands -----------------------------------------------------------


def cmd_check(args) -> int:
    lst = core.parse_list(_read(args.list))
    res = search.decide_feasible(lst, args.max_nodes)
    _say(res.status.value)
    if res.feasible and args.witness:
        _write(args.witness, core.format_tangle(res.witness))
    return EX_OK if res.feasible else EX_NO


def cmd_solve(args) -> int:
    lst = core.parse_list(_read(args.list))
    if args.min_height:
        res = search.minimize_height(lst, args.max_nodes)
    else:
        res = search.decide_feasible(lst, args.max_nodes)
    if not res.feasible:
        _say(res.status.value)
        return EX_NO
    msg = f"height {res.height}"
    if args.output == "-":
        sys.stderr.write(msg + "\n")
    else:
        _say(msg)
    _write(args.output, core.format_tangle(res.witness))
    return EX_OK


def cmd_enumerate(args) -> int:
    lst = core.parse_list(_read(args.list))
    chunks: list[str] = []

    def visit(t: core.Tangle) -> None:
        if args.output:
            chunks.append(f"# realization {len(chunks) + 1}\n" + core.format_tangle(t))

    count = search.enumerate_realizations(lst, visit, args.limit)
    _say(f"realizations {count}")
    if args.output:
        _write(args.output, "\n".join(chunks))
    return EX_OK if count else EX_NO


def cmd_unique_order(args) -> int:
    lst = core.parse_list(_read(args.list))
    try:
        res = search.check_unique_swap_order(lst, args.limit)
    except InfeasibleList:
        _say("INFEASIBLE")
        return EX_NO
    _say("UNIQUE" if res.unique else "NOT-UNIQUE")
    _say(f"realizations {res.realizations}")
    _say(f"signatures {len(res.signatures)}")
    for k, sig in enumerate(res.signatures, 1):
        for w, seq in enumerate(sig, 1):
            _say(f"signature {k} wire {w}: " + " ".join(map(str, seq)))
    return EX_OK if res.unique else EX_NO


def cmd_simple(args) -> int:
    lst = core.parse_list(_read(args.list))
    try:
        tgt = simple.target_permutation(lst)
    except NotSimple as exc:
        _say(f"NOT-SIMPLE {exc}")
        return EX_NO
    except CyclicOrder as exc:
        _say(f"INFEASIBLE {exc}")
        return EX_NO
    t = simple.odd_even_realize(core.identity(lst.n), tgt.target)
    msg = f"target {' '.join(map(str, tgt.target))}\nheight {t.height}"
    if args.output == "-":
        sys.stderr.write(msg + "\n")
    else:
        _say(msg)
    _write(args.output, core.format_tangle(t))
    return EX_OK


def cmd_gen_ln(args) -> int:
    if args.n < 3:
        sys.stderr.write(f"tanglekit: error: --n must be at least 3, got {args.n}\n")
        return EX_USAGE
    _write(args.output, core.format_list(core.gen_ln(args.n), [f"L_n for n = {args.n}"]))
    return EX_OK


def cmd_reduce(args) -> int:
    f = reduction.parse_formula(_read(args.formula))
    g, trace = reduction.to_positive_diff(f)
    comments = [
        "positive distinct-variable rewrite",
        "x " + " ".join(map(str, trace.positive)),
        "y " + " ".join(map(str, trace.negative)),
        "abd " + " ".join(map(str, trace.abd)),
    ]
    if trace.fano:
        comments.append("fano " + " ".join(map(str, trace.fano)))
    _write(args.output, reduction.format_formula(g, comments))
    return EX_OK


def _positive(path: str) -> reduction.PositiveDiffFormula:
    f = reduction.parse_formula(_read(path))
    try:
        return reduction.PositiveDiffFormula.from_formula(f)
    except FormulaError as exc:
        raise FormatError(f"not a positive distinct-variable formula: {exc}") from exc


def cmd_build_gadgets(args) -> int:
    f = _positive(args.formula)
    inst = reduction.build_list(f, args.variable_pair_count)
    _write(args.output, reduction.format_instance(inst))
    return EX_OK


def cmd_embed(args) -> int:
    f = _positive(args.formula)
    a = reduction.parse_assignment(_read(args.assignment), f.num_vars)
    try:
        plan = reduction.embed_assignment(f, a)
    except NotNAE as exc:
        _say(f"NotNAE {exc}")
        return EX_NO
    except ArmInterleaving as exc:
        _say(f"ArmInterleaving {exc}")
        return EX_NO
    _write(args.output, plan.format())
    return EX_OK


def cmd_explore(args) -> int:
    rep = explore.test_conjecture(args.wires, args.max_mult, args.max_nodes, _threads(args))
    _write(args.output, rep.format(timing=args.timing))
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for name, text in rep.counterexample_files().items():
            _write(os.path.join(args.out_dir, name), text)
    return EX_UNKNOWN if rep.unknowns else EX_OK


def cmd_render(args) -> int:
    t = core.parse_tangle(_read(args.tangle))
    labels = {}
    if args.roles:
        labels = {w: r.name for w, r in reduction.parse_roles(_read(args.roles)).items()}
    highlight = frozenset(int(x) for x in args.highlight.split(",")) if args.highlight else frozenset()
    opts = render.RenderOptions(
        format=args.format,
        column_width=args.column_width,
        row_height=args.row_height,
        highlight=highlight,
        labels=labels,
    )
    _write(args.output, render.render_tangle(t, opts))
    return EX_OK


def cmd_verify(args) -> int:
    t = core.parse_tangle(_read(args.tangle))
    lst = core.parse_list(_read(args.list))
    v = core.verify_realizes(t, lst)
    _say("OK" if v.ok else f"VIOLATION {v.violation}")
    return EX_OK if v.ok else EX_NO


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tanglekit", description="Tangle list feasibility toolkit.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def budgeted(sp):
        sp.add_argument(
            "--max-nodes",
            type=int,
            default=search.DEFAULT_MAX_NODES,
            help=f"search node budget (default {search.DEFAULT_MAX_NODES})",
        )
        sp.add_argument(
            "--threads",
            type=int,
            default=None,
            help=f"worker cap (default from ${search.THREADS_ENV}, else 1)",
        )

    sp = sub.add_parser("check", help="decide feasibility of a list")
    sp.add_argument("list")
    sp.add_argument("--witness", help="write a realizing tangle here")
    budgeted(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("solve", help="find a realizing tangle")
    sp.add_argument("list")
    sp.add_argument("--min-height", action="store_true", help="minimize the number of layers")
    sp.add_argument("-o", "--output", default="-")
    budgeted(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("enumerate", help="count (and optionally write) all realizations")
    sp.add_argument("list")
    sp.add_argument("--limit", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("unique-order", help="check that all realizations share one swap order")
    sp.add_argument("list")
    sp.add_argument("--limit", type=int)
    sp.set_defaults(func=cmd_unique_order)

    sp = sub.add_parser("simple", help="odd-even sort tangle for a simple list")
    sp.add_argument("list")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_simple)

    sp = sub.add_parser("gen-ln", help="write the rigid list L_n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_gen_ln)

    sp = sub.add_parser("reduce", help="NAE 3-SAT to positive distinct-variable NAE 3-SAT")
    sp.add_argument("formula")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("build-gadgets", help="reduction list with role table")
    sp.add_argument("formula")
    sp.add_argument("--variable-pair-count", type=int, choices=(6, 8), default=8)
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_build_gadgets)

    sp = sub.add_parser("embed", help="loop plan for an NAE assignment")
    sp.add_argument("formula")
    sp.add_argument("assignment")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("explore", help="test non-separable even lists for feasibility")
    sp.add_argument("--wires", type=int, required=True)
    sp.add_argument("--max-mult", type=int, required=True)
    sp.add_argument("-o", "--output", default="-")
    sp.add_argument("--out-dir", help="directory for counterexample list files")
    sp.add_argument("--timing", action="store_true", help="include wall time in the report")
    budgeted(sp)
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("render", help="draw a tangle")
    sp.add_argument("tangle")
    sp.add_argument("--format", choices=("svg", "ascii"), default="ascii")
    sp.add_argument("--column-width", type=int)
    sp.add_argument("--row-height", type=int)
    sp.add_argument("--highlight", help="comma-separated wire ids")
    sp.add_argument("--roles", help="reduction instance file whose role table labels the wires")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("verify", help="check that a tangle realizes a list")
    sp.add_argument("tangle")
    sp.add_argument("list")
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EX_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.command == "explore" and args.max_mult % 2:
        sys.stderr.write("tanglekit: error: --max-mult must be even\n")
        return EX_USAGE
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        _say("UNKNOWN")
        sys.stderr.write(f"tanglekit: {exc}\n")
        return EX_UNKNOWN
    except LimitReached as exc:
        sys.stderr.write(f"tanglekit: {exc}\n")
        return EX_UNKNOWN
    except TooManyVariables as exc:
        sys.stderr.write(f"tanglekit: {exc}\n")
        return EX_USAGE
    except MALFORMED as exc:
        sys.stderr.write(f"tanglekit: malformed input: {exc}\n")
        return EX_DATAERR
    except (FileNotFoundError, IsADirectoryError) as exc:
        sys.stderr.write(f"tanglekit: {exc}\n")
        return EX_NOINPUT
    except ValueError as exc:
        sys.stderr.write(f"tanglekit: {exc}\n")
        return EX_USAGE


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # the reader went away (e.g. piped into head); silence the final flush
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EX_NO
    sys.exit(code)


if __name__ == "__main__":
    main()
