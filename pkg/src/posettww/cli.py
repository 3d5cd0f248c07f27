"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails (a bound is
exceeded or a replay disagrees with a claim), 2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import PosetError
from .formats import (ContractionSequence, format_poset, load_poset, load_sequence,
                      poset_to_json)
from .poset import ChainPartition, Poset, chain_partition, width

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Out:
    """Collects a JSON document or prints text lines as they come."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc: dict = {}

    def line(self, text: str = "") -> None:
        if not self.as_json:
            print(text)

    def set(self, **kw) -> None:
        self.doc.update(kw)

    def finish(self) -> None:
        if self.as_json:
            print(json.dumps(self.doc, indent=2, sort_keys=True))


def _load(path: str, need_chains: bool = True) -> tuple[Poset, ChainPartition | None]:
    f = load_poset(path)
    pi = f.partition
    if pi is not None:
        pi.validate(f.poset)
    elif need_chains:
        pi = chain_partition(f.poset)
    return f.poset, pi


# subcommands -----------------------------------------------------------------

def _cmd_gen(args, out: _Out) -> int:
    from . import generators as g

    fam, params = args.family, args.params
    need = {"chain": 1, "antichain": 1, "lower-bound": 2, "random": 3,
            "figure1": 0, "figure4": 0}
    if fam in need and len(params) != need[fam]:
        raise PosetError(f"{fam} takes {need[fam]} parameter(s), got {len(params)}")
    try:
        if fam == "figure1":
            p, pi = g.figure1_poset()
        elif fam == "figure4":
            p, pi = g.figure4_poset()
        elif fam == "chain":
            n = int(params[0])
            p, pi = g.chain_poset(n), g.single_chain(n)
        elif fam == "antichain":
            n = int(params[0])
            p, pi = g.antichain_poset(n), g.singleton_chains(n)
        elif fam == "divisibility":
            if not params:
                raise PosetError("divisibility needs at least one value")
            p = g.divisibility_poset(int(v) for v in params)
            pi = chain_partition(p)
        elif fam == "lower-bound":
            p, pi = g.lower_bound_poset(int(params[0]), int(params[1]))
        else:
            p, pi = g.random_width_d(int(params[0]), int(params[1]), float(params[2]),
                                     args.seed)
    except ValueError as exc:
        if isinstance(exc, PosetError):
            raise
        raise PosetError(f"bad parameter: {exc}") from None
    if out.as_json:
        out.set(**poset_to_json(p, pi))
    else:
        sys.stdout.write(format_poset(p, pi))
    return EXIT_OK


def _cmd_width(args, out: _Out) -> int:
    p, _ = _load(args.poset, need_chains=False)
    w = width(p)
    out.set(width=w)
    out.line(str(w))
    return EXIT_OK


def _cmd_decompose(args, out: _Out) -> int:
    f = load_poset(args.poset)
    pi = chain_partition(f.poset)
    out.set(chains=[list(c) for c in pi.chains])
    for c in pi.chains:
        out.line("chain " + " ".join(map(str, c)))
    return EXIT_OK


def _cmd_contract(args, out: _Out) -> int:
    from .greedy import degree_bound, greedy_run
    from .sequence import replay_natural
    from .width2 import width2_run

    p, pi = _load(args.poset)
    if args.algo == "greedy":
        run = greedy_run(p, pi, verify=False)
        bound = degree_bound(pi.d)
        trace = [(st.step, st.pair, st.degree, st.potential) for st in run.trace]
    else:
        run = width2_run(p, pi, verify=False)
        bound = 2
        trace = None
    seq = run.seq
    replay = replay_natural(p, pi, seq)
    ok = replay.max_red_degree == run.max_red_degree and replay.max_red_degree <= bound
    if trace is None:
        # width2 does not report per-step potentials; take degrees from the replay
        trace = [(i, pair, deg, None) for i, (pair, deg) in
                 enumerate(zip(seq.events, replay.trace), 1)]
    out.set(events=[list(e) for e in seq.events], meta=dict(seq.meta),
            max_red_degree=replay.max_red_degree, bound=bound, verified=ok)
    if args.trace:
        out.set(trace=[{"step": s, "pair": list(pr), "degree": dg, "potential": pt}
                       for s, pr, dg, pt in trace])
    if not out.as_json:
        sys.stdout.write(seq.to_text())
        if args.trace:
            print("# step\tpair\tdegree\tpotential")
            for s, (a, b), dg, pt in trace:
                print(f"# {s}\t{a},{b}\t{dg}\t{'-' if pt is None else pt}")
    if not ok:
        bad = next((i for i, dg in enumerate(replay.trace, 1) if dg > bound), None)
        msg = (f"bound violated at step {bad}: red degree {replay.trace[bad - 1]} > {bound}"
               if bad else f"replay gives {replay.max_red_degree}, run claimed {run.max_red_degree}")
        out.set(error=msg, failed_step=bad)
        print(msg, file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_verify(args, out: _Out) -> int:
    from .sequence import build_matrix, replay_natural, replay_symmetric

    p, pi = _load(args.poset)
    seq = load_sequence(args.seq)
    if args.mode == "natural":
        replay = replay_natural(p, pi, seq)
    else:
        replay = replay_symmetric(build_matrix(p), seq)
    value = replay.max_red_degree
    out.set(mode=args.mode, max_red_degree=value, worst_step=replay.worst_step,
            trace=replay.trace)
    out.line(f"max red degree {value} ({args.mode})")
    failures = []
    if args.bound is not None and value > args.bound:
        failures.append(f"exceeds bound {args.bound}")
    claimed = seq.meta.get("max_red_degree")
    if args.mode == "natural" and claimed is not None and str(claimed) != str(value):
        failures.append(f"sequence claims {claimed}")
    if failures:
        msg = "verification failed: " + "; ".join(failures)
        out.set(error=msg)
        print(msg, file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_oracle(args, out: _Out) -> int:
    from .oracle import exact_natural, exact_symmetric
    from .sequence import build_matrix

    p, _ = _load(args.poset, need_chains=False)
    if args.mode == "natural":
        res = exact_natural(p, cap=args.cap)
    else:
        res = exact_symmetric(build_matrix(p), cap=args.cap)
    res.witness.meta["mode"] = args.mode
    out.set(mode=args.mode, value=res.value, states=res.states,
            witness=res.witness.to_json())
    out.line(str(res.value))
    if not out.as_json:
        sys.stdout.write(res.witness.to_text())
    return EXIT_OK


def _cmd_export_dot(args, out: _Out) -> int:
    from .red_poset import RedPoset
    from .sequence import export_dot

    p, pi = _load(args.poset)
    rp = RedPoset(p, pi)
    if args.seq:
        seq = load_sequence(args.seq)
        k = len(seq) if args.step is None else args.step
        if not 0 <= k <= len(seq):
            raise PosetError(f"step {k} outside 0..{len(seq)}")
        for a, b in seq.events[:k]:
            rp.contract(a, b)
    elif args.step:
        raise PosetError("--step needs --seq")
    dot = export_dot(rp)
    out.set(dot=dot)
    if not out.as_json:
        sys.stdout.write(dot)
    return EXIT_OK


def _cmd_bench(args, out: _Out) -> int:
    from .bench import ratios, scaling

    timings = scaling(args.algo, args.sizes, d=args.d, density=args.density,
                      seeds=range(args.seeds), repeat=args.repeat)
    rs = ratios(timings)
    out.set(algo=args.algo, d=args.d, timings=[
        {"n": t.n, "seconds": t.seconds, "max_red_degree": t.max_red_degree} for t in timings],
        ratios=rs)
    out.line("n\tseconds\tmax_red_degree\tratio")
    for i, t in enumerate(timings):
        r = f"{rs[i - 1]:.2f}" if i else "-"
        out.line(f"{t.n}\t{t.seconds:.4f}\t{t.max_red_degree}\t{r}")
    return EXIT_OK


# parser ----------------------------------------------------------------------

def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(float(s)) for s in text.split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 2:
        raise argparse.ArgumentTypeError("sizes must be integers >= 2")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    ap = argparse.ArgumentParser(prog="posettww",
                                 description="Twin-width contraction sequences for posets.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="write a poset in the text format")
    s.add_argument("family", choices=["figure1", "figure4", "chain", "antichain",
                                      "divisibility", "lower-bound", "random"])
    s.add_argument("params", nargs="*",
                   help="chain/antichain: N; divisibility: values; lower-bound: D K; "
                        "random: N D DENSITY")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=_cmd_gen)

    s = sub.add_parser("width", parents=[common], help="width (largest antichain)")
    s.add_argument("poset")
    s.set_defaults(func=_cmd_width)

    s = sub.add_parser("decompose", parents=[common], help="minimum chain partition")
    s.add_argument("poset")
    s.set_defaults(func=_cmd_decompose)

    s = sub.add_parser("contract", parents=[common], help="build a contraction sequence")
    s.add_argument("poset")
    s.add_argument("--algo", choices=["greedy", "width2"], default="greedy")
    s.add_argument("--trace", action="store_true", help="append the per-step trace")
    s.set_defaults(func=_cmd_contract)

    s = sub.add_parser("verify", parents=[common], help="replay a sequence")
    s.add_argument("poset")
    s.add_argument("seq")
    s.add_argument("--mode", choices=["natural", "symmetric"], default="natural")
    s.add_argument("--bound", type=int, default=None, help="fail when exceeded")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("oracle", parents=[common], help="exact twin-width of a small poset")
    s.add_argument("poset")
    s.add_argument("--mode", choices=["natural", "symmetric"], default="natural")
    s.add_argument("--cap", type=int, default=None, help="largest n to accept")
    s.set_defaults(func=_cmd_oracle)

    s = sub.add_parser("export-dot", parents=[common], help="chain diagram in DOT")
    s.add_argument("poset")
    s.add_argument("--seq", default=None)
    s.add_argument("--step", type=int, default=None, help="merges to apply (default all)")
    s.set_defaults(func=_cmd_export_dot)

    s = sub.add_parser("bench", parents=[common], help="wall-clock scaling")
    s.add_argument("--algo", choices=["greedy", "width2"], required=True)
    s.add_argument("--sizes", type=_sizes, required=True, help="comma-separated, e.g. 500,1000")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--seeds", type=int, default=2, help="instances per size")
    s.add_argument("--repeat", type=int, default=3)
    s.set_defaults(func=_cmd_bench)
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.json)
    try:
        code = args.func(args, out)
    except (PosetError, OSError) as exc:
        name = type(exc).__name__
        out.set(error=f"{name}: {exc}")
        out.finish()
        print(f"error: {name}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.finish()
    return code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
