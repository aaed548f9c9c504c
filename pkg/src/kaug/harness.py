"""Property harness: named suites of randomized checks against brute-force oracles.

Each suite expands into independent cases (one instance, or one batch of
samples) that may run in worker processes. A failing case writes its
instance to the dump directory so the failure can be replayed with the CLI.
"""

from __future__ import annotations

import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable

from .graph import Graph, gamma, is_k_connected, mask_to_set, outside, subset_tables
from .instance import Instance, dumps_instance, gen_random
from .lp import HALF, separate, solve_lpvc
from .oracle import exact_opt
from .outconnect import rooted
from .pipeline import augment
from .rogue import (
    compute_B, deficient_masks, independent_deficient_pair, is_rogue_free, low_h_union_exhaustive,
    min_h_containing, min_h_exhaustive, rogue_union,
)
from .rounding import iterative_round
from .setpairs import (
    SetPair, classify, coverage_count, deficiency, deficient_setpairs, meeting_points, uncross,
)


@dataclass
class CaseResult:
    label: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    metrics: dict[str, object] = field(default_factory=dict)
    repro: str | None = None
    skipped: bool = False

    def check(self, ok: bool, msg: str) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(f"{self.label}: {msg}")
        return ok


@dataclass
class SuiteResult:
    name: str
    criterion: int
    cases: int
    checks: int
    skipped: int
    failures: list[str]
    metrics: dict[str, object]
    seconds: float
    dumps: list[Path] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checks > 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(self.metrics.items()))
        return (f"[{status}] {self.criterion:>2} {self.name}: cases={self.cases} checks={self.checks} "
                f"skipped={self.skipped} failures={len(self.failures)} {extra} "
                f"time={self.seconds:.1f}s").rstrip()

    def table(self) -> str:
        out = [self.line()]
        out += [f"    {f}" for f in self.failures[:20]]
        out += [f"    reproducer: {p}" for p in self.dumps[:20]]
        return "\n".join(out)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v) if v.denominator == 1 else f"{v} (~{float(v):.3f})"
    return str(v)


def _feasible(inst: Instance) -> bool:
    return inst.n >= inst.k + 1 and is_k_connected(inst.full_graph(), inst.k)


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


# ---- acceptance instance families ----

def ratio_instances(count: int = 50, start: int = 0) -> list[Instance]:
    """k=2, n in 10..14, at most 25 purchasable pairs, feasible only."""
    out = []
    seed = start
    while len(out) < count:
        n = 10 + len(out) % 5
        inst = gen_random(n, 2, 0.25, (1, 20), seed=seed, purchasable=25)
        seed += 1
        if _feasible(inst):
            out.append(inst)
    return out


def _case_ratio(inst: Instance) -> CaseResult:
    res = CaseResult(inst.name)
    start = time.perf_counter()
    rep = augment(inst.graph, inst.k, inst.costs, mode="guaranteed")
    res.metrics["max_seconds"] = round(time.perf_counter() - start, 2)
    opt = exact_opt(inst, max_candidates=25).cost
    H = inst.graph.with_edges(rep.edges)
    res.check(is_k_connected(H, inst.k), "output is not k-connected")
    res.check(rep.cost == inst.cost_of(rep.edges), "reported cost differs from edge costs")
    res.check(rep.cost <= 6 * opt, f"cost {rep.cost} > 6 * opt {opt}")
    res.metrics["max_ratio"] = rep.cost / opt if opt else Fraction(1)
    res.metrics["max_restarts"] = rep.restarts
    if res.failures:
        res.repro = dumps_instance(inst)
    return res


def _case_rooted_factor(inst: Instance) -> CaseResult:
    res = CaseResult(inst.name)
    R0 = range(inst.k)
    out = rooted(inst.graph, inst.costs, R0, inst.k)
    opt = exact_opt(inst, max_candidates=25).cost
    res.check(out.cost <= 2 * opt, f"rooted cost {out.cost} > 2 * opt {opt}")
    res.metrics["max_ratio"] = out.cost / opt if opt else Fraction(1)
    if res.failures:
        res.repro = dumps_instance(inst)
    return res


def _case_half_edge(seed: int) -> CaseResult:
    rng = random.Random(seed)
    while True:
        k = 2 + seed % 2
        n = rng.randint(k + 3, 10)
        G = _random_graph(rng, n, rng.uniform(0.3, 0.6))
        costs = {e: Fraction(rng.randint(1, 20)) for e in G.non_edges()}
        inst = Instance(G, k, costs, name=f"half-edge-{seed}")
        if not is_k_connected(G, k) and _feasible(inst) and is_rogue_free(G, k):
            break
    res = CaseResult(inst.name)
    out = iterative_round(G, k, costs)
    res.check(out.success, "rounding stalled on a rogue-free graph")
    for i, m in enumerate(out.maxima):
        res.check(m >= HALF, f"iteration {i}: max x_e = {m} < 1/2")
    res.check(out.cost <= 2 * out.first_lp, f"cost {out.cost} > 2 * first LP {out.first_lp}")
    res.metrics["iterations"] = len(out.maxima)
    if res.failures:
        res.repro = dumps_instance(inst)
    return res


def _deficient_set_missing(G: Graph, k: int, R) -> frozenset[int] | None:
    Rm = sum(1 << r for r in R)
    sets, _ = deficient_masks(G, k)
    bad = sets[(sets & Rm) == 0]
    return mask_to_set(int(bad[0])) if bad.size else None


def _case_terminal_hits(seed: int) -> CaseResult:
    rng = random.Random(seed)
    k = 2 + seed % 2
    n = rng.randint(k + 2, 12)
    inst = gen_random(n, k, rng.uniform(0.1, 0.5), (1, 10), seed=seed)
    res = CaseResult(inst.name)
    if not _feasible(inst):
        res.skipped = True
        return res
    R = frozenset(rng.sample(range(n), k))
    H = inst.graph.with_edges(rooted(inst.graph, inst.costs, R, k).edges)
    if n <= 10:
        pairs = deficient_setpairs(H, k, max_n=10)
        bad = [P for P in pairs if not (P.first & R and P.second & R)]
        res.check(not bad, f"deficient pairs {bad[:3]} miss R={sorted(R)}")
        res.metrics["deficient_pairs"] = len(pairs)
    else:
        # a piece missing R is itself a deficient set missing R, and vice versa
        X = _deficient_set_missing(H, k, R)
        res.check(X is None, f"deficient set {sorted(X or ())} misses R={sorted(R)}")
    if res.failures:
        res.repro = dumps_instance(inst)
    return res


def _case_rogue_free_after_b(arg) -> CaseResult:
    inst = arg
    res = CaseResult(inst.name)
    rep = augment(inst.graph, 2, inst.costs, mode="best-effort", branch="large")
    if rep.fallback is not None or rep.branch != "large":
        res.skipped = True
        return res
    G1 = inst.graph.with_edges(rep.F0 | rep.F1)
    res.check(is_rogue_free(G1, 2), "graph after the B-set phase still has a rogue set")
    res.check(is_k_connected(inst.graph.with_edges(rep.edges), 2), "output is not 2-connected")
    res.metrics["branch_large"] = 1
    if res.failures:
        res.repro = dumps_instance(inst)
    return res


def rogue_free_instances(count: int = 60) -> list[Instance]:
    """Forced B-set branch on n <= 14 plus a few naturally large graphs."""
    small = ratio_instances(count)
    out = list(small)
    seed = 10_000
    while len(out) < count + max(count // 6, 1):
        inst = gen_random(18 + seed % 3, 2, 0.15, (1, 20), seed=seed, purchasable=40)
        seed += 1
        if _feasible(inst):
            out.append(inst)
    return out


def _case_rogue_union(seed: int) -> CaseResult:
    rng = random.Random(seed)
    k = 2 + seed % 2
    n = rng.randint(k + 3, 14 if k == 2 else 12)
    inst = gen_random(n, k, rng.uniform(0.05, 0.4), (1, 10), seed=seed)
    res = CaseResult(inst.name)
    if not _feasible(inst):
        res.skipped = True
        return res
    R = rng.sample(range(n), k)
    H = inst.graph.with_edges(rooted(inst.graph, inst.costs, R, k).edges)
    size = len(rogue_union(H, k))
    bound = k ** 3 * (k - 1)
    res.check(size <= bound, f"rogue union size {size} > {bound}")
    res.metrics["max_union"] = size
    if res.failures:
        res.repro = dumps_instance(inst)
    return res


class _Pool:
    """Small random graph with its deficient set-pairs and LP data."""

    def __init__(self, rng: random.Random):
        n = rng.randint(5, 8)
        self.k = k = rng.randint(2, 4)
        self.G = G = _random_graph(rng, n, rng.uniform(0.15, 0.5))
        self.pairs = deficient_setpairs(G, k, max_n=8)
        self.x = {e: Fraction(rng.randint(0, 6), 6) for e in G.non_edges()}
        self.tight: list[SetPair] = []
        self.support: list = []
        if self.pairs:
            costs = {e: Fraction(rng.randint(1, 9)) for e in G.non_edges()}
            x = solve_lpvc(G, k, costs).x
            self.support = x.support
            self.tight = [P for P in self.pairs if x.cover(P) == deficiency(G, k, P)]

    def random_pair(self, rng: random.Random) -> SetPair | None:
        n = self.G.n
        U0 = frozenset(v for v in range(n) if rng.random() < 0.35)
        if not U0:
            return None
        star = sorted(outside(self.G, U0))
        U1 = frozenset(v for v in star if rng.random() < 0.6)
        return SetPair.of(U0, U1) if U1 else None


def _xdelta(x, P: SetPair) -> Fraction:
    return sum((v for e, v in x.items() if P.covered_by(e)), Fraction(0))


def _boundary(G: Graph, P: SetPair) -> int:
    return len(P.boundary(G.n))


def _case_uncross(arg) -> CaseResult:
    seed, samples = arg
    rng = random.Random(seed)
    pools = [_Pool(rng) for _ in range(12)]
    res = CaseResult(f"uncross-{seed}")
    tallies = dict.fromkeys(("submodular", "bisubmodular", "conservation", "bisupermodular", "support"), 0)
    for s in range(samples):
        pool = rng.choice(pools)
        G, k, n = pool.G, pool.k, pool.G.n
        U = frozenset(v for v in range(n) if rng.random() < 0.5)
        W = frozenset(v for v in range(n) if rng.random() < 0.5)
        gU, gW = gamma(G, U), gamma(G, W)
        res.check(gU + gW >= gamma(G, U & W) + gamma(G, U | W), f"sample {s}: intersect/union submodularity")
        res.check(gU + gW >= gamma(G, outside(G, U) & W) + gamma(G, U & outside(G, W)),
                  f"sample {s}: crossed submodularity")
        tallies["submodular"] += 1

        P, Q = pool.random_pair(rng), pool.random_pair(rng)
        if P and Q and P != Q:
            mps = sorted(meeting_points(P, Q))
            if mps:
                u = rng.choice(mps)
                r = uncross(P, Q, u)
                if res.check(not r.degenerate, f"sample {s}: degenerate uncrossing of {P}, {Q} at {u}"):
                    A, B = r.pairs()
                    res.check(A.is_valid(G) and B.is_valid(G), f"sample {s}: invalid uncrossed pair")
                    res.check(_boundary(G, P) + _boundary(G, Q) == _boundary(G, A) + _boundary(G, B),
                              f"sample {s}: boundary sizes not conserved for {P}, {Q} at {u}")
                    res.check(_xdelta(pool.x, P) + _xdelta(pool.x, Q) >= _xdelta(pool.x, A) + _xdelta(pool.x, B),
                              f"sample {s}: x(delta) not bisubmodular for {P}, {Q} at {u}")
                    tallies["bisubmodular"] += 1
                    tallies["conservation"] += 1

        if len(pool.pairs) >= 2:
            P, Q = rng.sample(pool.pairs, 2)
            if classify(P, Q).kind == "crossing":
                u = rng.choice(sorted(meeting_points(P, Q)))
                A, B = uncross(P, Q, u).pairs()
                res.check(deficiency(G, k, P) + deficiency(G, k, Q) <= deficiency(G, k, A) + deficiency(G, k, B),
                          f"sample {s}: deficiency not bisupermodular for {P}, {Q} at {u}")
                tallies["bisupermodular"] += 1

        if len(pool.tight) >= 2:
            P, Q = rng.sample(pool.tight, 2)
            mps = sorted(meeting_points(P, Q))
            if mps:
                u = rng.choice(mps)
                A, B = uncross(P, Q, u).pairs()
                ok = all(coverage_count([e], P) + coverage_count([e], Q)
                         == coverage_count([e], A) + coverage_count([e], B) for e in pool.support)
                res.check(ok, f"sample {s}: covering vectors differ on the support for {P}, {Q} at {u}")
                tallies["support"] += 1
    res.metrics.update(tallies)
    return res


def _glued_blocks(rng: random.Random, n: int, k: int) -> Graph:
    """Two dense blocks sharing fewer than k nodes, so the graph has small separators."""
    s = rng.randint(0, min(k - 1, n - 2 * k))
    a = rng.randint(k, n - s - k)
    shared = range(a, a + s)
    left = list(range(a)) + list(shared)
    right = list(shared) + list(range(a + s, n))
    p = rng.uniform(0.6, 1.0)
    edges = [e for block in (left, right) for e in combinations(block, 2) if rng.random() < p]
    return Graph(n, edges)


def _case_rogue_independence(seed: int) -> CaseResult:
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    n = rng.randint(k + 1, 10)
    if seed % 2 and n >= 2 * k + 1:
        G = _glued_blocks(rng, n, k)
    else:
        G = _random_graph(rng, n, rng.uniform(0.3, 0.9))
    res = CaseResult(f"independence-{seed}")
    rogue_free = is_rogue_free(G, k)
    pair = independent_deficient_pair(G, k)
    res.check(not rogue_free or pair is None, f"rogue-free graph has independent deficient pair {pair}")
    if rogue_free:
        res.metrics["rogue_free"] = 1
        res.metrics["rogue_free_not_connected"] = int(not is_k_connected(G, k))
    res.metrics["independent_found"] = int(pair is not None)
    if res.failures:
        res.repro = dumps_instance(Instance(G, k, {}))
    return res


def _case_hmin(seed: int) -> CaseResult:
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    n = rng.randint(3, 12)
    G = _random_graph(rng, n, rng.uniform(0.1, 0.7))
    res = CaseResult(f"hmin-{seed}")
    tables = subset_tables(G)
    for v in range(n):
        a, b = min_h_containing(G, k, v), min_h_exhaustive(G, k, v, tables)
        res.check(a == b, f"node {v}: cut gives {a}, exhaustive gives {b}")
    B, B_ref = compute_B(G, k).B, low_h_union_exhaustive(G, k)
    res.check(B == B_ref, f"B = {sorted(B)}, exhaustive union = {sorted(B_ref)}")
    if res.failures:
        res.repro = dumps_instance(Instance(G, k, {}))
    return res


def _case_separation(seed: int) -> CaseResult:
    rng = random.Random(seed)
    k = rng.randint(2, 4)
    n = rng.randint(k + 2, 9)
    G = _random_graph(rng, n, rng.uniform(0.1, 0.5))
    res = CaseResult(f"separation-{seed}")
    cands = G.non_edges()
    if seed % 3 == 0 and cands and is_k_connected(G.with_edges(cands), k):
        x = dict(solve_lpvc(G, k, {e: rng.randint(1, 9) for e in cands}).x.values)
        if x and rng.random() < 0.5:
            e = rng.choice(sorted(x))
            x[e] = x[e] * Fraction(rng.randint(0, 3), 4)
    else:
        q = rng.choice([2, 3, 4, 6])
        x = {e: Fraction(rng.randint(0, q), q) for e in cands}
    pairs = deficient_setpairs(G, k, max_n=9)
    slacks = [_xdelta(x, P) - deficiency(G, k, P) for P in pairs]
    worst = min(slacks, default=None)
    sep = separate(G, k, x)
    if worst is None or worst >= 0:
        res.check(sep.feasible, f"separation reports violated {sep.setpair} but none exists")
        res.metrics["feasible_points"] = 1
    else:
        if res.check(not sep.feasible, f"separation misses a violated pair (min slack {worst})"):
            P = sep.setpair
            res.check(P.is_valid(G), f"returned pair {P} is not a set-pair")
            true_slack = _xdelta(x, P) - deficiency(G, k, P)
            res.check(true_slack == sep.slack, f"reported slack {sep.slack} != actual {true_slack}")
            res.check(sep.slack == worst, f"returned slack {sep.slack} is not the minimum {worst}")
        res.metrics["violated_points"] = 1
    if res.failures:
        res.repro = dumps_instance(Instance(G, k, {e: 1 for e in cands}))
    return res


def _case_oracle(seed: int) -> CaseResult:
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    n = rng.randint(k + 2, 7)
    inst = gen_random(n, k, rng.uniform(0.1, 0.6), (1, 9), seed=seed, purchasable=rng.randint(3, 10))
    res = CaseResult(inst.name)
    ex = exact_opt(inst, mode="exhaustive")
    bb = exact_opt(inst, mode="bnb")
    res.check(ex.cost == bb.cost, f"exhaustive {ex.cost} != branch-and-bound {bb.cost}")
    if ex.feasible:
        res.check(is_k_connected(inst.graph.with_edges(bb.edges), k), "branch-and-bound set is not feasible")
        res.check(inst.cost_of(bb.edges) == bb.cost, "branch-and-bound set cost mismatch")
        lp = solve_lpvc(inst.graph, k, inst.costs).objective if inst.costs else Fraction(0)
        res.check(lp <= ex.cost, f"LP {lp} exceeds optimum {ex.cost}")
        res.metrics["feasible"] = 1
    if res.failures:
        res.repro = dumps_instance(inst)
    return res


@dataclass(frozen=True)
class Suite:
    name: str
    criterion: int
    items: Callable[[int], list]
    worker: Callable
    default_count: int
    description: str


def _seeds(offset: int):
    return lambda count: list(range(offset, offset + count))


def _uncross_items(count: int):
    chunk = 500
    return [(7000 + i, min(chunk, count - i * chunk)) for i in range((count + chunk - 1) // chunk)]


SUITES: dict[str, Suite] = {s.name: s for s in (
    Suite("pipeline-ratio", 1, ratio_instances, _case_ratio, 50,
          "k=2, n=10..14: output 2-connected and cost <= 6 * exact optimum"),
    Suite("rooted-factor", 2, ratio_instances, _case_rooted_factor, 50,
          "first rooted phase costs at most 2 * exact optimum"),
    Suite("half-edge", 3, _seeds(3000), _case_half_edge, 100,
          "rogue-free graphs: every basic LP optimum has some x_e >= 1/2"),
    Suite("terminal-hits", 4, _seeds(4000), _case_terminal_hits, 100,
          "after rooted(R) every deficient set-pair meets R in both pieces"),
    Suite("rogue-free-after-b", 5, rogue_free_instances, _case_rogue_free_after_b, 60,
          "B-set branch leaves no rogue set"),
    Suite("rogue-union-size", 6, _seeds(6000), _case_rogue_union, 100,
          "after rooted(R0) the rogue sets cover at most k^3 (k-1) nodes"),
    Suite("uncross-identities", 7, _uncross_items, _case_uncross, 10_000,
          "submodularity, bisubmodularity, boundary conservation, support identity"),
    Suite("rogue-implies-independence", 8, _seeds(8000), _case_rogue_independence, 1000,
          "rogue-free graphs have no independent deficient set-pairs"),
    Suite("hmin-oracle", 9, _seeds(9000), _case_hmin, 200,
          "cut-based h minimisation and B-set equal exhaustive scans"),
    Suite("separation-oracle", 10, _seeds(10_000), _case_separation, 100,
          "separation agrees with exhaustive set-pair checking"),
    Suite("oracle-consistency", 11, _seeds(11_000), _case_oracle, 100,
          "branch-and-bound equals exhaustive search; LP bound <= optimum"),
)}


def _dump(dump_dir: Path, suite: str, label: str, text: str) -> Path:
    dump_dir.mkdir(parents=True, exist_ok=True)
    path = dump_dir / f"{suite}-{label}.kaug"
    path.write_text(text)
    return path


def harness_run(name: str, count: int | None = None, jobs: int = 1,
                dump_dir: str | Path | None = None) -> SuiteResult:
    suite = SUITES[name]
    items = suite.items(count if count is not None else suite.default_count)
    start = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(suite.worker, items))
    else:
        results = [suite.worker(it) for it in items]
    seconds = time.perf_counter() - start
    failures, metrics, dumps = [], {}, []
    dump_dir = Path(dump_dir) if dump_dir is not None else Path(tempfile.gettempdir()) / "kaug-failures"
    for r in results:
        failures += r.failures
        for key, val in r.metrics.items():
            if key.startswith("max_"):
                metrics[key] = max(metrics.get(key, val), val)
            else:
                metrics[key] = metrics.get(key, 0) + val
        if r.failures and r.repro:
            dumps.append(_dump(dump_dir, name, r.label, r.repro))
    return SuiteResult(name, suite.criterion, len(results), sum(r.checks for r in results),
                       sum(r.skipped for r in results), failures, metrics, seconds, dumps)
