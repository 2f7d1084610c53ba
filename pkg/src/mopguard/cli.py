"""Command line: ``mopguard {gen,isolate,verify,oracle,gallery,bench,svg}``.

Exit codes: 0 ok, 1 the checked property is false, 2 bad input,
3 internal verification failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from . import io
from .errors import BadParams, MopguardError, VerificationFailure
from .families import GENERATORS, SplitMix64, family_A, family_H, family_S, family_T, random_mop
from .gallery import SimplePolygon, place_guards, render_svg, spiral_gallery, triangulate
from .isolation import (
    dominate_half_minus,
    dominate_third,
    isolate_best,
    isolate_order,
    isolate_order_minus_n2,
    isolate_order_plus_n2,
)
from .mop import Mop, degree2_vertices, is_dominating, is_isolating, vertex_set
from .oracle import DEFAULT_LIMIT, exact_domination_number, exact_isolation_number

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3

ALGORITHMS = {
    "order": isolate_order,
    "plus": isolate_order_plus_n2,
    "minus": isolate_order_minus_n2,
    "best": isolate_best,
}
DOMINATORS = {"third": dominate_third, "half": dominate_half_minus}

CSV_COLUMNS = (
    "instance_id", "n", "n2", "k", "algorithm", "size", "bound",
    "bound_respected", "oracle", "elapsed_ms", "known_value",
)


@dataclass
class RunReport:
    instance_id: str
    n: int
    n2: int
    k: int
    algorithm: str
    size: int
    bound: str
    bound_respected: bool
    oracle: Optional[int] = None
    elapsed_ms: float = 0.0
    known_value: Optional[int] = None

    def row(self) -> list:
        d = asdict(self)
        d["elapsed_ms"] = f"{self.elapsed_ms:.3f}"
        d["bound_respected"] = "true" if self.bound_respected else "false"
        return ["" if d[c] is None else d[c] for c in CSV_COLUMNS]


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------------


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_graph(path: str):
    obj = io.loads_any(io.read_text(path))
    if isinstance(obj, SimplePolygon):
        return triangulate(obj), obj
    return obj, None


def _solution_report(G: Mop, sol, instance: str, algo: str, elapsed: float) -> RunReport:
    respected = (not sol.certified) or sol.size <= sol.floor_bound
    bound = str(sol.bound_value) if sol.certified else ""
    n2 = len(degree2_vertices(G))
    return RunReport(instance, G.n, n2, sol.k, algo, sol.size, bound, respected, elapsed_ms=elapsed)


# -- subcommands -----------------------------------------------------------------------


def cmd_gen(args) -> int:
    fam = args.family.upper()
    if fam == "SPIRAL":
        _require_args(args, "t", "k")
        P = spiral_gallery(args.t, args.k)
        _emit(io.dumps_polygon(P, "json" if args.format == "json" else "poly1"), args.out)
        return EXIT_OK
    if fam not in GENERATORS:
        raise BadParams(f"unknown family {args.family!r}; choose from {sorted(GENERATORS)} or spiral")
    needs = {
        "FAN": ("n",), "T": ("k", "t"), "A": ("k", "p"), "H": ("k", "t"),
        "R": ("k",), "S": ("k", "t"), "M": ("p",), "RANDOM": ("n", "seed"),
    }[fam]
    _require_args(args, *needs)
    G = GENERATORS[fam](**{name: getattr(args, name) for name in needs})
    _emit(io.dumps_mop(G, "json" if args.format == "json" else "mop1"), args.out)
    return EXIT_OK


def _require_args(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"family {args.family} needs {' '.join(missing)}")


def cmd_isolate(args) -> int:
    G, _ = _load_graph(args.file)
    t0 = time.perf_counter()
    if args.dominate:
        if args.dominate == "exact":
            res = exact_domination_number(G, limit=args.limit)
            S, algo, bound_text, respected, k = res.witness, "dom-exact", "", True, -1
        else:
            sol = DOMINATORS[args.dominate](G)
            S, algo, k = sol.set, f"dom-{args.dominate}", -1
            bound_text = str(sol.bound_value)
            respected = sol.size <= sol.floor_bound
        ok = is_dominating(G, S)
    else:
        if args.k is None:
            raise UsageError("isolate needs --k (or --dominate)")
        k = args.k
        if args.algo == "exact":
            res = exact_isolation_number(G, k, limit=args.limit)
            S, bound_text, respected = res.witness, "", True
            sol = None
        else:
            sol = ALGORITHMS[args.algo](G, k)
            S = sol.set
            bound_text = str(sol.bound_value) if sol.certified else ""
            respected = (not sol.certified) or sol.size <= sol.floor_bound
        algo = args.algo
        ok = is_isolating(G, S, k)[0]
    elapsed = (time.perf_counter() - t0) * 1000
    if not ok:
        print("verification: FAILED", file=sys.stderr)
        return EXIT_VERIFY
    n2 = len(degree2_vertices(G))
    report = RunReport(args.file, G.n, n2, k, algo, len(S), bound_text, respected, elapsed_ms=elapsed)
    print(f"set: {' '.join(map(str, S))}")
    print(f"size: {len(S)}")
    print(f"bound: {bound_text or 'n/a'}")
    print("verification: ok")
    print(f"bound respected: {'yes' if respected else 'NO'}")
    if args.trace and not args.dominate and args.algo != "exact":
        print(sol.trace_log())
    print(json.dumps(asdict(report) | {"set": list(S)}))
    return EXIT_OK if respected else EXIT_FALSE


def cmd_verify(args) -> int:
    G, _ = _load_graph(args.file)
    S = vertex_set(G, io.loads_set(io.read_text(args.setfile)))
    if args.dominate:
        ok = is_dominating(G, S)
        print(f"dominating: {'yes' if ok else 'no'}")
        return EXIT_OK if ok else EXIT_FALSE
    if args.k is None:
        raise UsageError("verify needs --k (or --dominate)")
    ok, delta = is_isolating(G, S, args.k)
    print(f"residual max degree: {delta}")
    print(f"isolating for k={args.k}: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_oracle(args) -> int:
    G, _ = _load_graph(args.file)
    if args.dominate:
        res = exact_domination_number(G, limit=args.limit)
        ok = is_dominating(G, res.witness)
    else:
        if args.k is None:
            raise UsageError("oracle needs --k (or --dominate)")
        res = exact_isolation_number(G, args.k, limit=args.limit)
        ok = is_isolating(G, res.witness, args.k)[0]
    if not ok:
        return EXIT_VERIFY
    print(f"value: {res.value}")
    print(f"witness: {' '.join(map(str, res.witness))}")
    print(f"explored: {res.explored}")
    return EXIT_OK


def cmd_gallery(args) -> int:
    P = spiral_gallery(args.t, args.k)
    cert = place_guards(P, args.k)
    if args.out:
        _emit(io.dumps_polygon(P), args.out)
    if args.svg:
        _emit(render_svg(P, cert.guards), args.svg)
    print(f"corners: {P.n}")
    print(f"reflex corners: {len(P.reflex_corners())}")
    print(f"guards: {' '.join(map(str, cert.guards))}")
    print(f"guard count: {cert.size} (bound {P.n // (args.k + 4)})")
    print(f"augmentations: {cert.augmentations}")
    print("windows: all covered")
    return EXIT_OK


def cmd_svg(args) -> int:
    G, P = _load_graph(args.file)
    S = ()
    if args.set:
        S = vertex_set(G, io.loads_set(io.read_text(args.set)))
    _emit(render_svg(P if P is not None else G, S), args.out)
    return EXIT_OK


# -- bench ---------------------------------------------------------------------------------


def _family_instances(fam: str, n_lo: int, n_hi: int, k: int):
    """``(instance_id, Mop, known_value)`` for the family members with order in range."""
    out = []
    if fam == "T":
        t = 1
        while (k + 4) * t <= n_hi:
            if (k + 4) * t >= n_lo:
                out.append((f"T-k{k}-t{t}", family_T(k, t), t))
            t += 1
    elif fam == "A":
        p = 1
        while 2 * (k + 4) * p * (k + 5) <= n_hi:
            n = 2 * (k + 4) * p * (k + 5)
            if n >= n_lo:
                out.append((f"A-k{k}-p{p}", family_A(k, p), 2 * p * (k + 5)))
            p += 1
    elif fam == "H":
        for t in range((k + 5) // 2, k + 5):
            n = (2 * k + 10) * t
            if n_lo <= n <= n_hi:
                out.append((f"H-k{k}-t{t}", family_H(k, t), 2 * t))
    elif fam == "S":
        if k >= 1:
            t = 1
            while (2 * k + 3) * t <= n_hi:
                if (2 * k + 3) * t >= n_lo:
                    out.append((f"S-k{k}-t{t}", family_S(k, t), t))
                t += 1
    return out


def cmd_bench(args) -> int:
    if min(args.n_min, args.n_max) < 3 and args.n_min <= args.n_max:
        raise UsageError("bench needs n >= 3")
    if args.k_min < 0 or args.trials < 0:
        raise UsageError("bench needs k >= 0 and trials >= 0")
    families = [f.strip().upper() for f in args.families.split(",") if f.strip()]
    for f in families:
        if f not in ("RANDOM", "T", "A", "H", "S"):
            raise UsageError(f"bench family {f!r} not one of random,T,A,H,S")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")

    rng = SplitMix64(args.seed)
    instances = []  # (id, G, k, known_value)
    for k in range(args.k_min, args.k_max + 1):
        for fam in families:
            if fam == "RANDOM":
                for n in range(args.n_min, args.n_max + 1):
                    for trial in range(args.trials):
                        G = random_mop(n, rng.next())
                        instances.append((f"random-n{n:04d}-k{k}-{trial:05d}", G, k, None))
            else:
                for iid, G, pv in _family_instances(fam, args.n_min, args.n_max, k):
                    instances.append((iid, G, k, pv))

    reports = []
    for iid, G, k, pv in instances:
        exact = None
        if G.n <= args.oracle_max_n:
            exact = exact_isolation_number(G, k).value
        for algo in algos:
            if algo == "minus" and (k < 1 or G.n < 2 * k + 3):
                continue
            t0 = time.perf_counter()
            sol = ALGORITHMS[algo](G, k)
            elapsed = (time.perf_counter() - t0) * 1000
            if not is_isolating(G, sol.set, k)[0]:
                raise VerificationFailure(f"{algo} on {iid}: set fails verification")
            rep = _solution_report(G, sol, iid, algo, elapsed)
            rep.oracle = exact
            rep.known_value = pv
            reports.append(rep)
    reports.sort(key=lambda r: (r.instance_id, r.algorithm))

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in reports:
            writer.writerow(r.row())
    finally:
        if args.out:
            fh.close()
    ratios = [r.size / Fraction(r.bound) for r in reports if r.bound and Fraction(r.bound) > 0]
    worst = max(ratios, default=0.0)
    bad = sum(not r.bound_respected for r in reports)
    print(f"rows: {len(reports)} max size/bound: {float(worst):.4f} violations: {bad}", file=sys.stderr)
    return EXIT_OK if bad == 0 else EXIT_FALSE


# -- entry point --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mopguard", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a family member or random MOP")
    g.add_argument("--family", required=True, help="fan, T, A, H, R, S, M, random or spiral")
    for name in ("n", "k", "t", "p", "seed"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--format", choices=("mop1", "json"), default="mop1")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    i = sub.add_parser("isolate", help="compute a bounded isolating or dominating set")
    i.add_argument("file")
    i.add_argument("--k", type=int)
    i.add_argument("--algo", choices=("order", "plus", "minus", "best", "exact"), default="best")
    i.add_argument("--dominate", choices=("third", "half", "exact"))
    i.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    i.add_argument("--trace", action="store_true")
    i.set_defaults(func=cmd_isolate)

    v = sub.add_parser("verify", help="check a vertex set")
    v.add_argument("file")
    v.add_argument("setfile")
    v.add_argument("--k", type=int)
    v.add_argument("--dominate", action="store_true")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact isolation or domination number")
    o.add_argument("file")
    o.add_argument("--k", type=int)
    o.add_argument("--dominate", action="store_true")
    o.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    o.set_defaults(func=cmd_oracle)

    gl = sub.add_parser("gallery", help="spiral gallery with relaxed guards")
    gl.add_argument("--t", type=int, required=True)
    gl.add_argument("--k", type=int, required=True)
    gl.add_argument("--svg")
    gl.add_argument("--out", help="also write the polygon (POLY1)")
    gl.set_defaults(func=cmd_gallery)

    b = sub.add_parser("bench", help="CSV of algorithm runs against their bounds")
    b.add_argument("--families", default="random")
    b.add_argument("--n-min", type=int, default=8)
    b.add_argument("--n-max", type=int, default=20)
    b.add_argument("--k-min", type=int, default=0)
    b.add_argument("--k-max", type=int, default=3)
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--algos", default="order,plus,minus,best")
    b.add_argument("--oracle-max-n", type=int, default=0, help="run the exact oracle when n is at most this")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("svg", help="render a MOP or polygon")
    s.add_argument("file")
    s.add_argument("--set")
    s.add_argument("--out")
    s.set_defaults(func=cmd_svg)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"error: VerificationFailure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except MopguardError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
