"""Seeded verification campaigns behind ``zerograph verify``.

Trial ``i`` of a suite draws its own seed from a SplitMix64 stream started at
the campaign seed; that seed fixes the vertex count, edge count and the
graph itself, so a report can be replayed exactly from its parameters.
Reports carry no timing unless asked for, which keeps reruns byte-identical.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .asano import AScheme, contract_graph, specialize
from .graph import (
    Arc,
    OrientedGraph,
    SplitMix64,
    UndirectedGraph,
    Edge,
    deg2,
    double,
    graph_to_dict,
    graph_to_json,
    random_graph,
)
from .poly import IntPoly
from .roots import (
    NotIntegral,
    certify_deg2_bound,
    certify_purely_imaginary,
    certify_real_negative,
    check_halfplane_negative,
    numeric_roots,
    to_int_poly,
)
from .subgraphs import (
    closed_form_oriented_unbranched,
    closed_form_oriented_unbranched_even,
    multivar_P,
    pairing_check,
    poly_family,
    poly_undirected_unbranched,
    poly_v0,
)

__all__ = ["SUITES", "SuiteSpec", "run_suite", "small_oriented_graphs", "trial_graph"]

NUMERIC_TOL = 1e-9


@dataclass(frozen=True)
class SuiteSpec:
    kind: str
    min_vertices: int
    max_vertices: int
    max_edges: int


SUITES = {
    "prop21": SuiteSpec("oriented", 2, 8, 12),
    "prop23": SuiteSpec("bipartite-undirected", 2, 8, 7),
    "remark22": SuiteSpec("oriented", 2, 7, 10),
    "sec31": SuiteSpec("simple-undirected", 2, 8, 8),
    "sec32": SuiteSpec("simple-undirected", 2, 8, 8),
    "engine-equiv": SuiteSpec("oriented", 2, 6, 8),
    "halfplane": SuiteSpec("simple-undirected", 2, 10, 10),
}


def _edge_capacity(kind: str, n: int) -> int:
    if kind == "simple-undirected":
        return n * (n - 1) // 2
    if kind == "bipartite-undirected":
        return (n // 2) * (n - n // 2)
    return 1 << 30


def trial_graph(spec: SuiteSpec, trial_seed: int, max_edges: int | None = None):
    """Graph for one trial; returns (graph, local rng for any extra draws)."""
    rng = SplitMix64(trial_seed)
    cap = spec.max_edges if max_edges is None else max_edges
    n = rng.between(spec.min_vertices, spec.max_vertices)
    m = rng.between(0, min(cap, _edge_capacity(spec.kind, n)))
    return random_graph(spec.kind, n, m, rng.next()), rng


def small_oriented_graphs(max_vertices: int = 3, max_arcs: int = 4):
    """Every oriented graph on 1..max_vertices vertices with at most max_arcs arcs.

    Arcs are unlabeled up to order, so each arc multiset appears once.
    """
    for n in range(1, max_vertices + 1):
        names = [str(i + 1) for i in range(n)]
        pairs = [(t, h) for t in names for h in names if t != h]
        for m in range(max_arcs + 1):
            for combo in itertools.combinations_with_replacement(pairs, m):
                arcs = tuple(Arc(f"e{k + 1}", t, h) for k, (t, h) in enumerate(combo))
                yield OrientedGraph(tuple(names), arcs)


def _digest(g) -> str:
    return hashlib.sha256(graph_to_json(g).encode()).hexdigest()[:16]


def _coeffs(p: IntPoly) -> list[str]:
    return p.to_dict()["coeffs"]


def _sci(x: float) -> str:
    return f"{x:.3e}"


def _numeric_real(p: IntPoly) -> tuple[bool, float]:
    if p.degree < 1:
        return True, 0.0
    roots = numeric_roots(p).roots
    worst = max(abs(z.imag) for z in roots)
    return worst < NUMERIC_TOL and all(z.real < 0 for z in roots), worst


def _numeric_imag(p: IntPoly) -> tuple[bool, float]:
    if p.degree < 1:
        return True, 0.0
    worst = max(abs(z.real) for z in numeric_roots(p).roots)
    return worst < NUMERIC_TOL, worst


# -- per-suite trial bodies ------------------------------------------------
# each returns (record, failure reason or None, graph shown as witness)


def _trial_prop21(g: OrientedGraph, rng):
    p = poly_family(g, "U")
    cert = certify_real_negative(p)
    d2 = deg2(g)
    bound = certify_deg2_bound(p, d2)
    ok_num, worst = _numeric_real(p) if cert.proven else (False, float("nan"))
    rec = {
        "polynomial": _coeffs(p),
        "deg2": d2,
        "real_negative": cert.verdict,
        "deg2_bound": bound.verdict,
        "numeric_max_abs_imag": _sci(worst),
    }
    reason = None
    if not cert.proven:
        reason = "real-negative refuted: " + cert.notes
    elif not bound.proven:
        reason = "deg2 bound refuted: " + bound.notes
    elif not ok_num:
        reason = "numeric roots disagree with the real-negative certificate"
    return rec, reason, g


def _trial_prop23(g0: UndirectedGraph, rng):
    d = double(g0).graph
    pairing = pairing_check(d, d.bipartition)
    rec = {"pairing": "pass" if pairing else "fail"}
    if not pairing:
        rec["pairing_witness"] = pairing.witness.arc_ids
        return rec, "pairing hypothesis failed on a doubled graph", d
    p = poly_family(d, "U_even", d.bipartition)
    cert = certify_purely_imaginary(p)
    ok_num, worst = _numeric_imag(p) if cert.proven else (False, float("nan"))
    spec = specialize(contract_graph(d, AScheme.zeta_bipartite(d, d.bipartition)))
    try:
        engine = to_int_poly(spec)
        engine_ok = engine == p
    except NotIntegral as exc:
        engine_ok = False
        rec["engine_error"] = str(exc)
    rec.update({
        "polynomial": _coeffs(p),
        "purely_imaginary": cert.verdict,
        "numeric_max_abs_real": _sci(worst),
        "engine_zeta_matches": engine_ok,
    })
    reason = None
    if not cert.proven:
        reason = "purely-imaginary refuted: " + cert.notes
    elif not ok_num:
        reason = "numeric roots disagree with the purely-imaginary certificate"
    elif not engine_ok:
        reason = "zeta-bipartite contraction does not reproduce the even polynomial"
    return rec, reason, d


def _trial_remark22(g: OrientedGraph, rng):
    v0 = [v for v in g.vertices if rng.below(2)]
    p = poly_v0(g, v0)
    rec = {"v0": v0, "polynomial": _coeffs(p), "identically_zero": p.is_zero}
    reason = None
    if not p.is_zero:
        cert = certify_real_negative(p, allow_zero_root=True)
        rec["real_nonpositive"] = cert.verdict
        if not cert.proven:
            reason = "real-nonpositive refuted: " + cert.notes
    spec = specialize(contract_graph(g, AScheme.from_v0(g, v0)))
    try:
        engine_ok = to_int_poly(spec) == p
    except NotIntegral:
        engine_ok = False
    rec["engine_v0_matches"] = engine_ok
    if reason is None and not engine_ok:
        reason = "v0 contraction does not reproduce the constrained count"
    return rec, reason, g


def _trial_sec31(g0: UndirectedGraph, rng):
    closed = closed_form_oriented_unbranched(g0)
    direct = poly_family(double(g0).graph, "U")
    rec = {"closed_form": _coeffs(closed), "enumeration": _coeffs(direct)}
    return rec, None if closed == direct else "closed form differs from enumeration", g0


def _trial_sec32(g0: UndirectedGraph, rng):
    closed = closed_form_oriented_unbranched_even(g0)
    direct = poly_family(double(g0).graph, "U_even", strict=False)
    rec = {"closed_form": _coeffs(closed), "enumeration": _coeffs(direct)}
    return rec, None if closed == direct else "closed form differs from enumeration", g0


def _trial_engine(g: OrientedGraph, rng):
    scheme = AScheme.ones(g)
    engine = contract_graph(g, scheme)
    oracle = multivar_P(g, scheme)
    rec = {"terms": len(oracle), "polynomial": _coeffs(poly_family(g, "U"))}
    return rec, None if engine == oracle else "contraction differs from enumeration", g


def _trial_halfplane(g0: UndirectedGraph, rng):
    p = poly_undirected_unbranched(g0)
    report = check_halfplane_negative(p, NUMERIC_TOL)
    rec = {
        "polynomial": _coeffs(p),
        "max_real_part": None if report.max_real_part is None else _sci(report.max_real_part),
        "certified": False,
    }
    return rec, None if report else "a numeric root has real part >= -tol", g0


_BODIES = {
    "prop21": _trial_prop21,
    "prop23": _trial_prop23,
    "remark22": _trial_remark22,
    "sec31": _trial_sec31,
    "sec32": _trial_sec32,
    "engine-equiv": _trial_engine,
    "halfplane": _trial_halfplane,
}

_REPLAY = {
    "prop21": "zerograph certify --property real-negative WITNESS.json",
    "prop23": "zerograph certify --property imaginary WITNESS.json",
    "remark22": "zerograph poly --family v0 --v0 <ids> WITNESS.json",
    "sec31": "zerograph poly --family closed31 WITNESS.json",
    "sec32": "zerograph poly --family closed32 WITNESS.json",
    "engine-equiv": "zerograph engine --scheme ones WITNESS.json",
    "halfplane": "zerograph roots WITNESS.json",
}


def _run_one(suite: str, index: int, label: str, graph, rng):
    rec, reason, shown = _BODIES[suite](graph, rng)
    out = {"index": index, "source": label, "digest": _digest(graph), **rec}
    out["outcome"] = "pass" if reason is None else "fail"
    failure = None
    if reason is not None:
        failure = {
            "index": index,
            "reason": reason,
            "graph": graph_to_dict(shown),
            "replay": _REPLAY[suite],
        }
    return out, failure


def _random_trial(args):
    suite, index, trial_seed, max_edges = args
    graph, rng = trial_graph(SUITES[suite], trial_seed, max_edges)
    return _run_one(suite, index, f"random:{trial_seed}", graph, rng)


def _sec32_discrepancy() -> dict:
    p3 = UndirectedGraph(("1", "2", "3"), (Edge("a", ("1", "2")), Edge("b", ("2", "3"))))
    direct = poly_family(double(p3).graph, "U_even", strict=False)
    corrected = closed_form_oriented_unbranched_even(p3)
    literal = closed_form_oriented_unbranched_even(p3, literal=True)
    return {
        "graph": graph_to_dict(p3),
        "enumeration": _coeffs(direct),
        "corrected_factor_2z^s": _coeffs(corrected),
        "literal_factor_(2z)^s": _coeffs(literal),
        "literal_matches_enumeration": literal == direct,
        "corrected_matches_enumeration": corrected == direct,
        "note": "even components of size s weigh 2 z^s; the (2z)^s reading over-counts",
    }


def _threads() -> int:
    raw = os.environ.get("ZEROGRAPH_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"ZEROGRAPH_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"ZEROGRAPH_THREADS must be a positive integer, got {raw!r}")
    return n


def run_suite(
    suite: str,
    trials: int,
    seed: int,
    max_edges: int | None = None,
    *,
    exhaustive: bool | None = None,
    timing: bool = False,
) -> dict:
    """Run a campaign and return its report as a JSON-ready dict.

    ``exhaustive`` (default on for ``engine-equiv``) appends every oriented
    graph on at most 3 vertices with at most 4 arcs.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {sorted(SUITES)}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    spec = SUITES[suite]
    if max_edges is not None and max_edges < 0:
        raise ValueError("max-edges must be nonnegative")
    started = time.perf_counter()

    master = SplitMix64(seed)
    jobs = [(suite, i, master.next(), max_edges) for i in range(trials)]
    workers = _threads()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_random_trial, jobs, chunksize=4))
    else:
        results = [_random_trial(job) for job in jobs]

    if exhaustive is None:
        exhaustive = suite == "engine-equiv"
    if exhaustive:
        if spec.kind != "oriented":
            raise ValueError("exhaustive sweep is only defined for oriented suites")
        for k, g in enumerate(small_oriented_graphs()):
            results.append(_run_one(suite, trials + k, "exhaustive", g, SplitMix64(k)))

    records = [r for r, _ in results]
    failures = [f for _, f in results if f is not None]
    report = {
        "suite": suite,
        "params": {
            "kind": spec.kind,
            "vertices": [spec.min_vertices, spec.max_vertices],
            "max_edges": spec.max_edges if max_edges is None else max_edges,
            "trials": trials,
            "seed": seed,
            "exhaustive": exhaustive,
        },
        "summary": {
            "checked": len(records),
            "passed": len(records) - len(failures),
            "failed": len(failures),
        },
        "trials": records,
        "failures": failures,
    }
    if suite == "sec32":
        report["discrepancy"] = _sec32_discrepancy()
    if timing:
        report["wall_clock_s"] = round(time.perf_counter() - started, 3)
    return report


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
