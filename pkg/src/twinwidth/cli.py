"""Command-line interface.

Exit codes: 0 success (or true), 1 false or invalid, 2 usage error, 3 cap exceeded or
inconclusive.  Results are printed as ``key=value`` lines.
"""

import argparse
import os
import random
import sys

from . import io
from .classes import (
    Poset,
    boolean_width,
    boolw_sequence,
    grid_sequence,
    kings_bound,
    kings_sequence,
    lexdfs_order,
    poset_order,
    permutation_structure,
    random_avoiding_231,
    random_boolw2_instance,
    random_poset,
    red_grid,
    unit_ball_sequence,
)
from .config import CapExceeded
from .fo.dp import ModelChecker, interpret
from .fo.formula import FormulaError, brute_force_check, parse_formula
from .fo.mtree import size
from .matrix import has_mixed_minor
from .pipeline import PipelineStuck, symmetric_sequence_from_order
from .search import exact_twinwidth, greedy_sequence
from .structures import BinaryStructure, as_structure
from .trigraph import Trigraph, verify_sequence

OK, FALSE, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def _emit(out, **kv):
    for k, v in kv.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        out.write(f"{k}={v}\n")


def _load_structure(path):
    """Graph files become trigraphs, structure files binary structures."""
    text = _read(path)
    first = next((ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if len(first.split()) == 3:
        return io.parse_structure(text)
    return io.parse_graph(text)


def _seq_line(seq):
    return ";".join(f"{u} {v}" for u, v in _one_based_pairs(seq))


def _one_based_pairs(seq):
    lines = io.format_sequence(seq).splitlines()[1:]
    return [tuple(int(x) for x in ln.split()) for ln in lines]


def _finish_sequence(args, seq, out):
    if getattr(args, "seq_out", None):
        _write(args.seq_out, io.format_sequence(seq))
    else:
        _emit(out, sequence=_seq_line(seq))


# ---------------------------------------------------------------- commands


def cmd_verify(args, out):
    G = _load_structure(args.graph)
    seq = io.parse_sequence(_read(args.seq), G)
    rep = verify_sequence(seq, args.d)
    _emit(out, valid=rep.valid, width=rep.width, full=seq.is_full())
    if not rep.valid:
        _emit(out, failed_step=rep.failed_step, reason=rep.reason)
    return OK if rep.valid else FALSE


def cmd_exact(args, out):
    G = _load_structure(args.graph)
    if isinstance(G, BinaryStructure):
        G = G.to_trigraph()
    d, seq = exact_twinwidth(G)
    _emit(out, tww=d)
    _finish_sequence(args, seq, out)
    return OK


def cmd_greedy(args, out):
    G = _load_structure(args.graph)
    seq = greedy_sequence(G)
    _emit(out, width=seq.width)
    _finish_sequence(args, seq, out)
    return OK


def _report(out, seq, bound, **extra):
    rep = verify_sequence(seq, bound)
    _emit(out, **extra, bound=bound, width=rep.width, valid=rep.valid)
    return rep.valid


def cmd_construct(args, out):
    kind = args.kind
    rng = random.Random(args.seed)
    if kind in ("grid", "kings"):
        if args.d is None or args.n is None:
            raise UsageError(f"construct {kind} needs --d and --n")
        G, coords = red_grid(args.d, args.n, diagonals=kind == "kings")
        if kind == "grid":
            seq, bound = grid_sequence(args.d, args.n), 3 * args.d
        else:
            seq = kings_sequence(G, {i: c for i, c in enumerate(coords)}, args.n)
            bound = kings_bound(args.d)
        ok = _report(out, seq, bound, vertices=G.n)
        _outputs(args, G, seq, out)
        return OK if ok else FALSE
    if kind == "boolw":
        if args.random is not None:
            G, T = random_boolw2_instance(args.random, rng)
        else:
            G, T = _need_inputs(args, 2, "GRAPH TREE")
            G = io.parse_graph(_read(G))
            T = io.parse_tree(_read(T))
        k = args.k if args.k is not None else boolean_width(G, T)
        if k is None:
            raise UsageError("boolean-width above the certification cap; pass --k")
        stats = {}
        seq = boolw_sequence(G, T, k, stats)
        ok = _report(out, seq, 2 ** (k + 1) - 1, k=k, fallbacks=stats["fallbacks"])
        _outputs(args, G, seq, out)
        return OK if ok else FALSE
    if kind == "unitball":
        if args.random is not None:
            d = args.d or 2
            side = args.box if args.box is not None else 10
            centers = [tuple(rng.randint(0, side) for _ in range(d)) for _ in range(args.random)]
            centers = sorted(set(centers))
            G = None
        else:
            (path,) = _need_inputs(args, 1, "BALLS")
            d, centers = io.parse_balls(_read(path))
            G = io.parse_graph(_read(args.graph_in)) if args.graph_in else None
        res = unit_ball_sequence(d, centers, G)
        ok = _report(out, res.sequence, res.bound, k=res.k)
        _outputs(args, res.sequence.initial, res.sequence, out)
        return OK if ok else FALSE
    if kind == "poset":
        if args.random is not None:
            P = random_poset(args.random, args.w or 2, rng)
        else:
            (path,) = _need_inputs(args, 1, "RELATION")
            n, pairs = io.parse_arcs(_read(path))
            P = Poset.from_cover(n, pairs) if args.transitive_closure else Poset(n, pairs)
        order, w = poset_order(P)
        _emit(out, width=w, order=" ".join(str(v + 1) for v in order))
        if args.structure_out:
            _write(args.structure_out, io.format_structure(P.structure()))
        return OK
    if kind == "perm":
        if args.random is not None:
            tau = random_avoiding_231(args.random, rng)
        else:
            (path,) = _need_inputs(args, 1, "PERMUTATION")
            tau = io.parse_permutation(_read(path))
        S, order = permutation_structure(tau)
        _emit(out, permutation=" ".join(map(str, tau)), order=" ".join(str(v + 1) for v in order))
        if args.structure_out:
            _write(args.structure_out, io.format_structure(S))
        return OK
    if kind == "lexdfs":
        (path,) = _need_inputs(args, 1, "GRAPH")
        G = io.parse_graph(_read(path))
        order = lexdfs_order(G)
        _emit(out, order=" ".join(str(v + 1) for v in order))
        return OK
    raise UsageError(f"unknown construction {kind!r}")


def _need_inputs(args, k, names):
    if len(args.inputs) != k:
        raise UsageError(f"construct {args.kind} expects {names} (or --random N)")
    return args.inputs


def _outputs(args, G, seq, out):
    if args.graph_out:
        G = G if isinstance(G, Trigraph) else G.to_trigraph()
        _write(args.graph_out, io.format_graph(G))
    if args.seq_out:
        _write(args.seq_out, io.format_sequence(seq))


def cmd_order_to_seq(args, out):
    S = io.parse_structure_or_graph(_read(args.structure))
    order = io.parse_order(_read(args.order), S.n)
    try:
        seq, res = symmetric_sequence_from_order(S, order, args.t)
    except PipelineStuck as e:
        _emit(out, ok=False, reason=str(e))
        if e.witness is not None:
            _emit(out, row_cuts=_cuts(e.witness.row_cuts()), col_cuts=_cuts(e.witness.col_cuts()))
            return FALSE
        return INCONCLUSIVE
    _emit(out, ok=True, threshold=res.threshold, width=seq.width)
    _finish_sequence(args, seq, out)
    return OK


def _cuts(cuts):
    return ",".join(map(str, cuts))


def cmd_mixed_minor(args, out):
    M = io.parse_matrix(_read(args.matrix))
    D = has_mixed_minor(M, args.t)
    _emit(out, found=D is not None)
    if D is not None:
        out.write(D.format() + "\n")
        return OK
    return FALSE


def _graph_and_seq(args):
    G = _load_structure(args.graph)
    seq = io.parse_sequence(_read(args.seq), G) if args.seq else None
    return G, seq


def cmd_mc(args, out):
    G, seq = _graph_and_seq(args)
    phi = parse_formula(args.formula)
    checker = ModelChecker(G, seq, threads=args.threads)
    value = checker.check(phi)
    out.write("true\n" if value else "false\n")
    if args.stats:
        st = checker.state(phi.length)
        T = checker.reduct(phi.length)
        _emit(out, length=phi.length, final_reduct=size(T), steps=len(st.stats))
        for s in st.stats:
            _emit(out, **{f"step{s.step + 1}": f"touched={s.touched} max_reduct={s.max_reduct}"})
    return OK if value else FALSE


def cmd_brute(args, out):
    G = _load_structure(args.graph)
    value = brute_force_check(as_structure(G), parse_formula(args.formula))
    out.write("true\n" if value else "false\n")
    return OK if value else FALSE


def cmd_interpret(args, out):
    G, seq = _graph_and_seq(args)
    H = interpret(G, seq, args.formula)
    text = io.format_graph(H)
    if args.out:
        _write(args.out, text)
        _emit(out, vertices=H.n, edges=len(H.black_edges()))
    else:
        out.write(text)
    return OK


# ---------------------------------------------------------------- parser


def build_parser():
    p = argparse.ArgumentParser(prog="twinwidth", description="Twin-width toolkit.")
    p.add_argument("--threads", type=int, default=1, help="parallelism cap")
    p.add_argument("--caps", help="oracle caps, for instance exact=10,mixed=16")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check a contraction sequence")
    s.add_argument("graph")
    s.add_argument("seq")
    s.add_argument("--d", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    for name, func in (("exact", cmd_exact), ("greedy", cmd_greedy)):
        s = sub.add_parser(name, help=f"{name} contraction sequence")
        s.add_argument("graph")
        s.add_argument("--seq-out")
        s.set_defaults(func=func)

    s = sub.add_parser("construct", help="witness sequences and orders for graph classes")
    s.add_argument("kind", choices=["grid", "kings", "boolw", "unitball", "poset", "perm", "lexdfs"])
    s.add_argument("inputs", nargs="*")
    s.add_argument("--d", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--w", type=int, help="width of random posets")
    s.add_argument("--box", type=int, help="coordinate range of random centers")
    s.add_argument("--random", type=int, metavar="N", help="random instance of size N")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--graph-in", help="graph matching the ball configuration")
    s.add_argument("--graph-out")
    s.add_argument("--seq-out")
    s.add_argument("--structure-out")
    s.add_argument("--transitive-closure", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("order-to-seq", help="matrix pipeline from a mixed-free order")
    s.add_argument("structure")
    s.add_argument("order")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--seq-out")
    s.set_defaults(func=cmd_order_to_seq)

    s = sub.add_parser("mixed-minor", help="search a t-mixed minor")
    s.add_argument("matrix")
    s.add_argument("--t", type=int, required=True)
    s.set_defaults(func=cmd_mixed_minor)

    s = sub.add_parser("mc", help="first-order model checking along a sequence")
    s.add_argument("graph")
    s.add_argument("seq")
    s.add_argument("formula")
    s.add_argument("--stats", action="store_true")
    s.set_defaults(func=cmd_mc)

    s = sub.add_parser("brute", help="brute-force evaluation of a sentence")
    s.add_argument("graph")
    s.add_argument("formula")
    s.set_defaults(func=cmd_brute)

    s = sub.add_parser("interpret", help="graph defined by a two-variable formula")
    s.add_argument("graph")
    s.add_argument("seq")
    s.add_argument("formula")
    s.add_argument("--out")
    s.set_defaults(func=cmd_interpret)
    return p


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    if args.caps:
        os.environ["TWW_CAPS"] = args.caps
    if args.threads < 1:
        err.write("error: --threads must be positive\n")
        return USAGE
    try:
        return args.func(args, out)
    except CapExceeded as e:
        err.write(f"cap exceeded: {e}\n")
        return INCONCLUSIVE
    except (UsageError, FormulaError, ValueError, KeyError) as e:
        err.write(f"error: {e}\n")
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
