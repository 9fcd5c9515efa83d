"""``contrakt`` command-line entry point.

Exit status: 0 for yes (or success), 1 for no (or a failed check), 2 for
errors, including malformed input files.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
import warnings
from pathlib import Path

from . import formats
from .bounds import (
    build_maxdeg_tight_family,
    check_degeneracy_growth,
    check_maxdeg_growth,
    lift_td_contraction,
    lift_td_mcc,
    min_degree_decomposition,
    union_graph,
    validate_td,
    width,
)
from .cliquewidth import build_cw_g, build_cw_h, colors_used, eval_cw, to_sexpr
from .contractibility import solve, solve_branching, solve_xp
from .errors import ContraktError
from .graph import apply_sequence, max_degree
from .mcc import solve_mcc, solve_mcc_branching, solve_mcc_bruteforce, solve_mcc_components
from .reductions import (
    BinPackingInstance,
    MulticoloredCliqueInstance,
    binpacking_to_contractibility,
    mcq_to_contractibility,
    mcq_to_mcc_degen4,
    solve_binpacking_bruteforce,
    solve_mcq_bruteforce,
)
from .witness import validate_witness, witness_to_sequence
from . import samples

FORMAT_VERSION = 1
YES, NO, ERROR = 0, 1, 2


class Report:
    """Collects the fields of a run report and prints it as text or JSON."""

    def __init__(self, args: argparse.Namespace):
        self.as_json = getattr(args, "json", False)
        self.data: dict = {"format_version": FORMAT_VERSION, "command": args.command}
        self.data["args"] = {
            k: v for k, v in sorted(vars(args).items()) if k not in ("command", "func", "json") and not k.startswith("_") and v is not None
        }
        self._start = getattr(args, "_start", time.perf_counter())

    def set(self, **kw) -> None:
        self.data.update(kw)

    def emit(self, text_lines: list[str]) -> None:
        self.data.setdefault("stats", {})["wall_time"] = round(time.perf_counter() - self._start, 6)
        if self.as_json:
            print(json.dumps(self.data, sort_keys=True, default=str))
        else:
            for line in text_lines:
                print(line)


def _stats_dict(stats) -> dict:
    return {"nodes_explored": stats.nodes_explored, "max_depth": stats.max_depth}


# -- contractibility ----------------------------------------------------------


def cmd_contractibility(args) -> int:
    g = formats.read("graph", args.g)
    h = formats.read("graph", args.h)
    res = solve(g, h, args.engine)
    rep = Report(args)
    lines = ["yes" if res.decision else "no"]
    rep.set(decision=res.decision, k=g.n - h.n, stats=_stats_dict(res.stats))
    if res.decision:
        rep.set(certificate=[list(c) for c in res.certificate])
        if args.emit_certificate:
            formats.write(args.emit_certificate, formats.format_sequence(res.certificate))
            rep.set(certificate_path=str(args.emit_certificate))
    if args.stats:
        lines.append(f"nodes explored: {res.stats.nodes_explored}, max depth: {res.stats.max_depth}")
    rep.emit(lines)
    return YES if res.decision else NO


# -- mcc ------------------------------------------------------------------------


def cmd_mcc(args) -> int:
    g = formats.read("graph", args.g)
    h = formats.read("graph", args.h)
    res = solve_mcc(g, h, args.k, args.engine)
    rep = Report(args)
    rep.set(decision=res.decision, stats=_stats_dict(res.stats))
    lines = ["yes" if res.decision else "no"]
    if res.decision:
        rep.set(
            contractions=res.k_used,
            common_size=res.common.n,
            s1=[list(c) for c in res.s1],
            s2=[list(c) for c in res.s2],
        )
        lines.append(f"contractions used: {res.k_used} ({len(res.s1)} on g, {len(res.s2)} on h)")
        lines.append(f"common contraction size: {res.common.n}")
        if args.emit:
            p1, p2, pc = args.emit
            formats.write(p1, formats.format_sequence(res.s1))
            formats.write(p2, formats.format_sequence(res.s2))
            formats.write(pc, formats.format_graph(res.common))
            rep.set(certificate_paths=[str(p) for p in args.emit])
    rep.emit(lines)
    return YES if res.decision else NO


# -- generate -------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.reduction == "bp2contr":
        inst = formats.read("binpacking", args.input)
        gadget = binpacking_to_contractibility(inst)
    else:
        inst = formats.read("mcq", args.input)
        if args.reduction == "mcq2contr":
            gadget = mcq_to_contractibility(inst)
        else:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                gadget = mcq_to_mcc_degen4(inst, args.extra_count)
            for w in caught:
                print(f"warning: {w.message}", file=sys.stderr)
    formats.write(args.out_g, formats.format_graph(gadget.g))
    formats.write(args.out_h, formats.format_graph(gadget.h))
    rep = Report(args)
    rep.set(k=gadget.k, g_vertices=gadget.g.n, h_vertices=gadget.h.n, g_edges=gadget.g.m, h_edges=gadget.h.m)
    rep.emit([f"k = {gadget.k}", f"g: {gadget.g.n} vertices, {gadget.g.m} edges", f"h: {gadget.h.n} vertices, {gadget.h.m} edges"])
    return YES


# -- verify-witness -------------------------------------------------------------


def cmd_verify_witness(args) -> int:
    g = formats.read("graph", args.g)
    h = formats.read("graph", args.h)
    w = formats.read("witness", args.w)
    ok = validate_witness(g, h, w)
    rep = Report(args)
    rep.set(decision=ok)
    lines = ["valid" if ok else "invalid"]
    if ok:
        rep.set(contractions=w.size())
        lines.append(f"contractions: {w.size()}")
        if args.emit_sequence:
            formats.write(args.emit_sequence, formats.format_sequence(witness_to_sequence(g, w, h)))
    rep.emit(lines)
    return YES if ok else NO


# -- bounds ---------------------------------------------------------------------


def _growth(args, check) -> int:
    g = formats.read("graph", args.g)
    s = formats.read("sequence", args.seq)
    r = check(g, s)
    rep = Report(args)
    rep.set(before=r.before, after=r.after, steps=r.steps, bound=r.bound, holds=r.holds)
    rep.emit([f"before: {r.before}", f"after: {r.after}", f"bound: {r.bound}", "holds" if r.holds else "VIOLATED"])
    return YES if r.holds else NO


def cmd_bounds(args) -> int:
    what = args.what
    if what == "tight-family":
        g, s = build_maxdeg_tight_family(args.delta, args.t)
        final = max_degree(apply_sequence(g, s))
        expected = args.delta + args.t * (args.delta - 2)
        if args.out_g:
            formats.write(args.out_g, formats.format_graph(g))
        if args.out_seq:
            formats.write(args.out_seq, formats.format_sequence(s))
        rep = Report(args)
        rep.set(vertices=g.n, contractions=len(s), final_max_degree=final, expected=expected)
        rep.emit([f"vertices: {g.n}", f"contractions: {len(s)}", f"final max degree: {final}", f"expected: {expected}"])
        return YES if final == expected else NO
    if what == "degeneracy":
        return _growth(args, check_degeneracy_growth)
    if what == "maxdeg":
        return _growth(args, check_maxdeg_growth)
    if what == "decompose":
        g = formats.read("graph", args.g)
        td = min_degree_decomposition(g)
        if args.out:
            formats.write(args.out, formats.format_decomposition(td))
        rep = Report(args)
        rep.set(width=width(td), bags=len(td.bags))
        rep.emit([f"width: {width(td)}", f"bags: {len(td.bags)}"])
        return YES
    if what == "check-td":
        g = formats.read("graph", args.g)
        td = formats.read("decomposition", args.td)
        ok = validate_td(g, td)
        rep = Report(args)
        rep.set(decision=ok, width=width(td))
        rep.emit(["valid" if ok else "invalid", f"width: {width(td)}"])
        return YES if ok else NO
    if what == "lift-contraction":
        g = formats.read("graph", args.g)
        h = formats.read("graph", args.h)
        w = formats.read("witness", args.w)
        td = formats.read("decomposition", args.td) if args.td else min_degree_decomposition(g)
        lifted = lift_td_contraction(td, w, g, h)
        return _lift_report(args, td, lifted, union_graph(g, h))
    if what == "lift-mcc":
        g = formats.read("graph", args.g)
        h = formats.read("graph", args.h)
        m = formats.read("graph", args.m)
        td = formats.read("decomposition", args.td) if args.td else min_degree_decomposition(m)
        lifted = lift_td_mcc(td, g, h, m)
        return _lift_report(args, td, lifted, union_graph(g, h))
    if what == "cw":
        inst = formats.read("binpacking", args.input)
        gadget = binpacking_to_contractibility(inst)
        expr = build_cw_g(inst) if args.which == "g" else build_cw_h(inst)
        target = gadget.g if args.which == "g" else gadget.h
        ok = eval_cw(expr)[0] == target
        if args.out:
            formats.write(args.out, to_sexpr(expr) + "\n")
        rep = Report(args)
        rep.set(colors=colors_used(expr), matches=ok)
        rep.emit([f"colors: {colors_used(expr)}", "matches generated graph" if ok else "MISMATCH"])
        return YES if ok else NO
    raise AssertionError(what)


def _lift_report(args, td, lifted, gu) -> int:
    ok = validate_td(gu, lifted)
    if args.out:
        formats.write(args.out, formats.format_decomposition(lifted))
    rep = Report(args)
    rep.set(valid=ok, width_before=width(td), width_after=width(lifted))
    rep.emit([f"width: {width(td)} -> {width(lifted)}", "valid for g|h" if ok else "INVALID for g|h"])
    return YES if ok else NO


# -- selftest -------------------------------------------------------------------


def _suite_contractibility(rng: random.Random, n: int) -> tuple[int, int]:
    ok = 0
    for _ in range(n):
        g = samples.random_connected_graph(rng, samples.labels(rng.randint(1, 6)), rng.random() * 0.6)
        h = apply_sequence(g, samples.random_sequence(rng, g, rng.randint(0, 3)))
        if rng.random() < 0.3:
            h = samples.toggle_random_pair(rng, h)
        ok += solve_branching(g, h).decision == solve_xp(g, h).decision
    return ok, n


def _suite_mcc(rng: random.Random, n: int) -> tuple[int, int]:
    ok = 0
    for _ in range(n):
        pool = samples.labels(rng.randint(2, 6))
        g = samples.random_graph(rng, rng.sample(pool, rng.randint(1, len(pool))), 0.5)
        h = samples.random_graph(rng, rng.sample(pool, rng.randint(1, len(pool))), 0.5)
        k = rng.randint(0, 3)
        a, b = solve_mcc_branching(g, h, k), solve_mcc_bruteforce(g, h, k)
        ok += a.decision == b.decision and (not a.decision or a.k_used == b.k_used)
    return ok, n


def _suite_mcc_components(rng: random.Random, n: int) -> tuple[int, int]:
    ok = 0
    for _ in range(n):
        pool = samples.labels(6)
        g = samples.random_graph(rng, rng.sample(pool, rng.randint(2, 6)), 0.3)
        h = samples.random_graph(rng, rng.sample(pool, rng.randint(2, 6)), 0.3)
        k = rng.randint(0, 3)
        ok += solve_mcc_components(g, h, k).decision == solve_mcc_bruteforce(g, h, k).decision
    return ok, n


def _suite_binpacking() -> tuple[int, int]:
    ok = total = 0
    for bins in (1, 2):
        for cap in (1, 2):
            for sizes in _compositions(cap * bins, 3):
                inst = BinPackingInstance(sizes, cap, bins)
                gadget = binpacking_to_contractibility(inst)
                total += 1
                ok += (solve_binpacking_bruteforce(inst) is not None) == solve_branching(gadget.g, gadget.h).decision
    return ok, total


def _suite_mcq(rng: random.Random, n: int) -> tuple[int, int]:
    ok = 0
    for i in range(n):
        classes = [[f"x{c}_{j}" for j in range(rng.randint(1, 2))] for c in range(2)]
        pairs = [(a, b) for a in classes[0] for b in classes[1]]
        inst = MulticoloredCliqueInstance(classes, [p for p in pairs if rng.random() < 0.5])
        gadget = mcq_to_contractibility(inst)
        ok += (solve_mcq_bruteforce(inst) is not None) == solve_branching(gadget.g, gadget.h).decision
    return ok, n


def _compositions(total: int, max_parts: int):
    """Tuples of positive ints summing to ``total`` with at most ``max_parts`` parts."""
    def rec(rest, parts):
        if rest == 0:
            yield ()
            return
        if parts == 0:
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first, parts - 1):
                yield (first,) + tail
    yield from rec(total, max_parts)


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    scale = 1 if args.quick else 5
    suites = [
        ("contractibility: branching vs xp", lambda: _suite_contractibility(rng, 200 * scale)),
        ("mcc: branching vs brute force", lambda: _suite_mcc(rng, 60 * scale)),
        ("mcc: components vs brute force", lambda: _suite_mcc_components(rng, 30 * scale)),
        ("reduction: multicolored clique", lambda: _suite_mcq(rng, 20 * scale)),
        ("reduction: bin packing", _suite_binpacking),
    ]
    rep = Report(args)
    lines = []
    results = {}
    all_ok = True
    for name, run in suites:
        passed, total = run()
        results[name] = {"passed": passed, "total": total}
        all_ok &= passed == total
        lines.append(f"{'PASS' if passed == total else 'FAIL'} {name}: {passed}/{total}")
    rep.set(suites=results, decision=all_ok)
    rep.emit(lines)
    return YES if all_ok else NO


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contrakt", description="Labeled graph contraction solvers and checkers.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, json_flag=True):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        if json_flag:
            sp.add_argument("--json", action="store_true", help="print a JSON run report")
        return sp

    sp = add("contractibility", cmd_contractibility, "is h a labeled contraction of g?")
    sp.add_argument("--g", required=True, type=Path)
    sp.add_argument("--h", required=True, type=Path)
    sp.add_argument("--engine", choices=("branching", "xp", "auto"), default="auto")
    sp.add_argument("--emit-certificate", type=Path, metavar="FILE")
    sp.add_argument("--stats", action="store_true")

    sp = add("mcc", cmd_mcc, "common contraction within k contractions")
    sp.add_argument("--g", required=True, type=Path)
    sp.add_argument("--h", required=True, type=Path)
    sp.add_argument("--k", required=True, type=int)
    sp.add_argument("--engine", choices=("bruteforce", "branching", "auto"), default="auto")
    sp.add_argument("--emit", nargs=3, type=Path, metavar=("S1", "S2", "COMMON"))

    sp = add("generate", cmd_generate, "build a hardness gadget from a source instance")
    sp.add_argument("--reduction", required=True, choices=("mcq2contr", "bp2contr", "mcq2mcc"))
    sp.add_argument("--in", dest="input", required=True, type=Path)
    sp.add_argument("--out-g", required=True, type=Path)
    sp.add_argument("--out-h", required=True, type=Path)
    sp.add_argument("--extra-count", type=int, help="extra vertices per class (mcq2mcc only)")

    sp = add("verify-witness", cmd_verify_witness, "check a witness structure for g into h")
    sp.add_argument("--g", required=True, type=Path)
    sp.add_argument("--h", required=True, type=Path)
    sp.add_argument("--w", required=True, type=Path)
    sp.add_argument("--emit-sequence", type=Path, metavar="FILE")

    sp = add("bounds", cmd_bounds, "structural bound checks and constructions", json_flag=False)
    bsub = sp.add_subparsers(dest="what", required=True)

    def badd(name, help):
        b = bsub.add_parser(name, help=help)
        b.add_argument("--json", action="store_true", help="print a JSON run report")
        return b

    b = badd("tight-family", "max-degree growth tight family")
    b.add_argument("--delta", required=True, type=int)
    b.add_argument("--t", required=True, type=int)
    b.add_argument("--out-g", type=Path)
    b.add_argument("--out-seq", type=Path)
    for name in ("degeneracy", "maxdeg"):
        b = badd(name, f"{name} growth under a contraction sequence")
        b.add_argument("--g", required=True, type=Path)
        b.add_argument("--seq", required=True, type=Path)
    b = badd("decompose", "heuristic tree decomposition")
    b.add_argument("--g", required=True, type=Path)
    b.add_argument("--out", type=Path)
    b = badd("check-td", "validate a tree decomposition")
    b.add_argument("--g", required=True, type=Path)
    b.add_argument("--td", required=True, type=Path)
    b = badd("lift-contraction", "lift a decomposition of g to g|h through a witness")
    b.add_argument("--g", required=True, type=Path)
    b.add_argument("--h", required=True, type=Path)
    b.add_argument("--w", required=True, type=Path)
    b.add_argument("--td", type=Path)
    b.add_argument("--out", type=Path)
    b = badd("lift-mcc", "lift a decomposition of a common contraction m to g|h")
    b.add_argument("--g", required=True, type=Path)
    b.add_argument("--h", required=True, type=Path)
    b.add_argument("--m", required=True, type=Path)
    b.add_argument("--td", type=Path)
    b.add_argument("--out", type=Path)
    b = badd("cw", "clique-width expression for a bin-packing gadget")
    b.add_argument("--in", dest="input", required=True, type=Path)
    b.add_argument("--which", choices=("g", "h"), default="h")
    b.add_argument("--out", type=Path)

    sp = add("selftest", cmd_selftest, "run small randomized oracle suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--quick", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._start = time.perf_counter()
    try:
        return args.func(args)
    except ContraktError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
