"""Command-line front end.

Subcommands: leq, constant-mask, interval, match, mobius, rw-match,
verify.  Exit codes: 0 success, 1 property violation, 2 input error.
"""

import argparse
import os
import sys

from .core import (
    INFINITY,
    CoxeterMatrix,
    CoxeterSystem,
    ReducedExpression,
    canonical_word,
    element_key,
    enumerate_interval,
    format_element,
    preset_matrix,
    product_of_word,
)
from .errors import (
    CoxmaskError,
    InputError,
    IntegrityError,
    NotReducedError,
    OrderingError,
    PrecisionError,
    ResourceError,
)
from .masks import greedy_constant_mask
from .matching import match_interval, rw_match
from .relative import interval_as_relative_masks
from .verify import ALL_CHECKS, SuiteConfig, mobius_via_matching, run_suite

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def parse_matrix_file(path):
    """Read a Coxeter matrix file: rank line, then rank rows; 0 means infinity."""
    try:
        with open(path) as handle:
            lines = [line.strip() for line in handle if line.strip()]
    except OSError as exc:
        raise InputError(f"cannot read matrix file {path}: {exc}") from exc
    if not lines:
        raise InputError(f"matrix file {path} is empty")
    try:
        rank = int(lines[0])
    except ValueError as exc:
        raise InputError(f"{path}:1: rank line is not an integer") from exc
    if rank < 1:
        raise InputError(f"{path}:1: rank must be >= 1")
    if len(lines) != rank + 1:
        raise InputError(f"{path}: expected {rank} matrix rows, got {len(lines) - 1}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != rank:
            raise InputError(
                f"{path}:{lineno}: expected {rank} entries, got {len(fields)}"
            )
        row = []
        for col, text in enumerate(fields, start=1):
            try:
                value = int(text)
            except ValueError as exc:
                raise InputError(
                    f"{path}:{lineno}: column {col}: bad entry {text!r}"
                ) from exc
            row.append(INFINITY if value == 0 else value)
        rows.append(row)
    return CoxeterMatrix(rows)


def parse_word(text, rank):
    """A word of 1-based generator indices; 'e' denotes the identity."""
    text = text.strip()
    if text in ("e", ""):
        return ()
    fields = text.replace(",", " ").split()
    word = []
    for f in fields:
        try:
            i = int(f)
        except ValueError as exc:
            raise InputError(f"bad letter {f!r} in word {text!r}") from exc
        if not 1 <= i <= rank:
            raise InputError(f"letter {i} out of range 1..{rank} in word {text!r}")
        word.append(i)
    return tuple(word)


def resolve_group(spec, max_length=None):
    """A CoxeterSystem from a preset name or a matrix file path."""
    try:
        matrix = preset_matrix(spec)
    except InputError:
        if os.path.exists(spec):
            matrix = parse_matrix_file(spec)
        else:
            raise InputError(
                f"unknown group preset {spec!r} and no such matrix file"
            ) from None
    return CoxeterSystem(matrix, max_length=max_length)


def _expression_for(system, w_word, expr_word=None):
    """The fixed reduced expression for w used by interval/match.

    The typed w word is used directly when it is reduced (matching the
    displayed tables); otherwise the canonical word of its element.  An
    explicit --expr must be reduced and evaluate to w.
    """
    w = product_of_word(system, w_word)
    if expr_word is not None:
        expr = ReducedExpression(system, expr_word)  # NotReducedError if not
        if expr.element != w:
            raise InputError("--expr does not evaluate to the given w")
        return expr
    try:
        return ReducedExpression(system, w_word)
    except NotReducedError:
        return canonical_word(w)


def _render_mask_under_letters(expr, cells):
    letters = [f"s{i}" for i in expr.letters]
    widths = [max(len(a), len(b)) for a, b in zip(letters, cells)]
    top = "  ".join(a.ljust(w) for a, w in zip(letters, widths)).rstrip()
    bottom = "  ".join(b.ljust(w) for b, w in zip(cells, widths)).rstrip()
    return [top, bottom]


def cmd_leq(args, out):
    system = resolve_group(args.group, args.max_length)
    x = product_of_word(system, parse_word(args.x, system.rank))
    w = product_of_word(system, parse_word(args.w, system.rank))
    from .core import bruhat_leq

    print("true" if bruhat_leq(x, w) else "false", file=out)
    return EXIT_OK


def cmd_constant_mask(args, out):
    system = resolve_group(args.group, args.max_length)
    expr = ReducedExpression(system, parse_word(args.word, system.rank))
    x = product_of_word(system, parse_word(args.x, system.rank))
    mask, _ = greedy_constant_mask(expr, x)  # NotBelowError when x !<= w
    for line in _render_mask_under_letters(expr, [str(b) for b in mask.bits]):
        print(line, file=out)
    return EXIT_OK


def _table_rows(y, w_expr):
    """Rows (sigma, tau, subexpression) ordered by decreasing X-mask
    length, then canonical word of the intermediate element."""
    rms = interval_as_relative_masks(y, w_expr)
    rows = []
    for x in sorted(rms, key=lambda z: (-z.length, z.word)):
        rm = rms[x]
        tau = rm.xmask()
        sub = " ".join(
            f"s{w_expr.letters[j - 1]}" for j in tau.ones_positions()
        ) or "e"
        rows.append((rm.render(), tau.render(), sub))
    return rows


def cmd_interval(args, out):
    system = resolve_group(args.group, args.max_length)
    y = product_of_word(system, parse_word(args.y, system.rank))
    w_expr = _expression_for(system, parse_word(args.w, system.rank), None)
    rows = _table_rows(y, w_expr)
    letters = w_expr.render()
    print(f"interval [{format_element(y)}, {format_element(w_expr.element)}] "
          f"on w = {letters}: {len(rows)} elements", file=out)
    sig_width = max(len(r[0]) for r in rows)
    tau_width = max(len(r[1]) for r in rows)
    for sigma, tau, sub in rows:
        print(
            f"sigma = {sigma.ljust(sig_width)}  tau = {tau.ljust(tau_width)}"
            f"  x = {sub}",
            file=out,
        )
    return EXIT_OK


def cmd_match(args, out):
    system = resolve_group(args.group, args.max_length)
    y = product_of_word(system, parse_word(args.y, system.rank))
    expr_word = (
        parse_word(args.expr, system.rank) if args.expr is not None else None
    )
    w_expr = _expression_for(system, parse_word(args.w, system.rank), expr_word)
    matching = match_interval(y, w_expr)
    _print_matching(matching, out)
    if args.dot:
        interval = enumerate_interval(y, w_expr.element)
        export_dot(interval, matching, args.dot)
        print(f"dot written to {args.dot}", file=out)
    return EXIT_OK


def _print_matching(matching, out):
    by_rank = {}
    for pair in matching.pairs:
        by_rank.setdefault(pair.upper.length, []).append(pair)
    for rank in sorted(by_rank, reverse=True):
        print(f"rank {rank} -> {rank - 1}:", file=out)
        for pair in by_rank[rank]:
            print(
                f"  {format_element(pair.upper)}  --  {format_element(pair.lower)}",
                file=out,
            )
    names = ", ".join(
        format_element(x)
        for x in sorted(matching.unmatched, key=element_key)
    )
    print(f"unmatched: {names if names else '(none)'}", file=out)


def cmd_mobius(args, out):
    system = resolve_group(args.group, args.max_length)
    y = product_of_word(system, parse_word(args.y, system.rank))
    w_expr = _expression_for(system, parse_word(args.w, system.rank), None)
    survivor, mu = mobius_via_matching(y, w_expr)
    print(f"mu = {mu}; survivor sum = {survivor}", file=out)
    return EXIT_OK


def cmd_rw_match(args, out):
    system = resolve_group(args.group, args.max_length)
    y = product_of_word(system, parse_word(args.y, system.rank))
    w_expr = _expression_for(system, parse_word(args.w, system.rank), None)
    rw = rw_match(y, w_expr)
    phi = match_interval(y, w_expr)
    _print_matching(rw, out)
    if rw.pair_sets() == phi.pair_sets():
        print("agreement with match: yes", file=out)
        return EXIT_OK
    print("agreement with match: NO", file=out)
    return EXIT_VIOLATION


def cmd_verify(args, out):
    try:
        matrix = preset_matrix(args.group)
    except InputError:
        if os.path.exists(args.group):
            matrix = parse_matrix_file(args.group)
        else:
            raise
    checks = (
        tuple(c.strip() for c in args.checks.split(",") if c.strip())
        if args.checks is not None
        else ALL_CHECKS
    )
    config = SuiteConfig(
        matrix=matrix,
        name=args.group,
        max_length=args.max_length_suite,
        checks=checks,
        jobs=args.jobs,
    )
    report = run_suite(config)
    for line in report.to_lines():
        print(line, file=out)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _node_id(x):
    return " ".join(map(str, x.word)) if x.word else "e"


def export_dot(interval, matching, path):
    """Write the interval digraph with matched edges reversed and bold.

    Output is byte-stable: nodes and edges are sorted by (length,
    canonical word).
    """
    matched = matching.pair_sets()
    lines = ["digraph bruhat_interval {"]
    for x in sorted(interval.elements, key=element_key):
        lines.append(f'  "{_node_id(x)}" [label="{format_element(x)}"];')
    for upper, lower in sorted(
        interval.cover_edges, key=lambda e: element_key(e[0]) + element_key(e[1])
    ):
        if frozenset((upper, lower)) in matched:
            lines.append(f'  "{_node_id(lower)}" -> "{_node_id(upper)}" [style=bold];')
        else:
            lines.append(f'  "{_node_id(upper)}" -> "{_node_id(lower)}";')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    try:
        with open(path, "w") as handle:
            handle.write(text)
    except OSError as exc:
        raise InputError(f"cannot write dot file {path}: {exc}") from exc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coxmask",
        description="Bruhat interval matchings via relative masks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--group", required=True, help="preset name or matrix file")
        p.add_argument(
            "--max-length",
            type=int,
            default=None,
            help="search guard (default: COXMASK_MAX_LENGTH or 64)",
        )

    p = sub.add_parser("leq", help="Bruhat order test")
    add_common(p)
    p.add_argument("x")
    p.add_argument("w")
    p.set_defaults(func=cmd_leq)

    p = sub.add_parser("constant-mask", help="greedy defect-free mask")
    add_common(p)
    p.add_argument("--word", required=True, help="reduced word for w")
    p.add_argument("--x", required=True, dest="x", help="word for x")
    p.set_defaults(func=cmd_constant_mask)

    p = sub.add_parser("interval", help="relative-mask table of [y, w]")
    add_common(p)
    p.add_argument("y")
    p.add_argument("w")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("match", help="complete matching of [y, w]")
    add_common(p)
    p.add_argument("y")
    p.add_argument("w")
    p.add_argument("--expr", default=None, help="reduced expression for w")
    p.add_argument("--dot", default=None, help="write DOT digraph to this path")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("mobius", help="Moebius value and survivor sum")
    add_common(p)
    p.add_argument("y")
    p.add_argument("w")
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("rw-match", help="Rietsch-Williams matching (finite groups)")
    add_common(p)
    p.add_argument("y")
    p.add_argument("w")
    p.set_defaults(func=cmd_rw_match)

    p = sub.add_parser("verify", help="exhaustive property suite")
    p.add_argument("--group", required=True)
    p.add_argument(
        "--max-length", type=int, default=6, dest="max_length_suite",
        help="length ball to verify over",
    )
    p.add_argument("--checks", default=None, help="comma list, default all")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (InputError, OrderingError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (IntegrityError, PrecisionError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except CoxmaskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
