"""Exit criteria. Each test records one PASS/FAIL/SKIP line, printed in the
terminal summary (see conftest.py). Run standalone with
``python tests/test_acceptance.py``."""
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from kcgds import (
    ResourceLimitError,
    build_k_clique_graph,
    build_triangle_graph,
    datasets,
    enumerate_exact,
    exact_oracle,
    greedy_kgds,
    greedy_tgds,
    list_triangles,
    run_greedy,
    verify_theorem1,
)
from kcgds.bench import density_report, run_method

from oracles import article_text, explicit_label_degree, fig1_graph, fig3_graph, gnp

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "benchmarks"))
from bench_backends import block_graph  # noqa: E402

pytestmark = pytest.mark.acceptance

# tolerances as stated by the criteria
DENSITY_TOL = 0.01
OBJECTIVE_TOL = 0.01
SIZE_TOL = 1
SCALING_LIMIT = 2.5
KEYWORD_OVERLAP = 0.60

TABLE2_TGDS = {
    "karate": (6, 0.93, 0.80),
    "dolphins": (6, 0.93, 0.80),
    "lesmis": (12, 0.93, 0.83),
    "adjnoun": (7, 0.85, 0.62),
    "football": (18, 0.48, 0.20),
    "polbooks": (13, 0.69, 0.34),
}
TABLE3_GREEDY = {"karate": 2.25, "dolphins": 2.25, "lesmis": 7.60, "adjnoun": 2.36,
                 "football": 6.0, "polbooks": 3.89}
TABLE3_EXACT = {"karate": 2.25, "dolphins": 2.25, "lesmis": 7.60, "football": 6.0}
KARATE_BASELINES = {"ds": (16, 0.35, None), "tds": (6, 0.93, 0.80), "oqc": (10, 0.55, 0.18)}

RESULTS: list[str] = []


def record(criterion: int, ok: bool | None, detail: str) -> None:
    status = {True: "PASS", False: "FAIL", None: "SKIP"}[ok]
    line = f"criterion {criterion}: {status}  {detail}"
    RESULTS.append(line)
    print(line)


def close(value, ref, tol) -> bool:
    return value is not None and abs(value - ref) <= tol + 1e-12


def report(g, method, **kw):
    return density_report(g, run_method(g, method, **kw), method)


def missing(names):
    return [n for n in names if not datasets.available(n)]


# -- 1 -----------------------------------------------------------------------------------

def test_c1_table2_tgds():
    start = time.perf_counter()
    bad, seen = [], []
    for name, (size, delta, tau) in TABLE2_TGDS.items():
        if not datasets.available(name):
            continue
        rep = report(datasets.load_dataset(name), "tgds")
        seen.append(f"{name}=({rep['size']},{rep['delta']:.3f},{rep['tau']:.3f})")
        if not (abs(rep["size"] - size) <= SIZE_TOL and close(rep["delta"], delta, DENSITY_TOL)
                and close(rep["tau"], tau, DENSITY_TOL)):
            bad.append(name)
    absent = missing(TABLE2_TGDS)
    elapsed = time.perf_counter() - start
    ok = not bad and not absent and elapsed < 1.0
    record(1, ok, f"{' '.join(seen)}; deviating={bad} unavailable={absent} time={elapsed:.2f}s")
    assert not bad
    assert elapsed < 1.0
    assert not absent, f"datasets not available offline: {absent}"


# -- 2 -----------------------------------------------------------------------------------

def test_c2_table3_objective():
    bad, seen, certified = [], [], []
    for name, ref in TABLE3_GREEDY.items():
        if not datasets.available(name):
            continue
        g = datasets.load_dataset(name)
        f = float(greedy_tgds(g).objective_value)
        seen.append(f"{name}={f:.3f}")
        if not close(f, ref, OBJECTIVE_TOL):
            bad.append(name)
        if name in TABLE3_EXACT and not close(f, TABLE3_EXACT[name], OBJECTIVE_TOL):
            bad.append(name + "(exact)")
        # certify the exact column independently where the search is small enough
        try:
            opt = exact_oracle(g, "tgds", limit=60)
        except ResourceLimitError:
            continue
        certified.append(name)
        if name in TABLE3_EXACT and not close(float(opt.objective_value), TABLE3_EXACT[name], OBJECTIVE_TOL):
            bad.append(name + "(oracle)")
    absent = missing(TABLE3_GREEDY)
    record(2, not bad and not absent,
           f"{' '.join(seen)}; oracle-certified={certified} deviating={bad} unavailable={absent}")
    assert not bad
    assert not absent, f"datasets not available offline: {absent}"


# -- 3 -----------------------------------------------------------------------------------

def test_c3_karate_baselines(karate):
    bad, seen = [], []
    for method, (size, delta, tau) in KARATE_BASELINES.items():
        rep = report(karate, method)
        seen.append(f"{method}=({rep['size']},{rep['delta']:.3f},{rep['tau']:.3f})")
        ok = abs(rep["size"] - size) <= SIZE_TOL and close(rep["delta"], delta, DENSITY_TOL)
        if tau is not None:
            ok = ok and close(rep["tau"], tau, DENSITY_TOL)
        if not ok:
            bad.append(method)
    record(3, not bad, f"{' '.join(seen)}; deviating={bad}")
    assert not bad, f"Karate baselines off: {bad}"


# -- 4 -----------------------------------------------------------------------------------

@pytest.mark.slow
def test_c4_table4_spot_checks():
    absent = missing(["ca-condmat", "web-notredame"])
    if absent:
        record(4, None, f"optional SNAP graphs not present: {absent}")
        pytest.skip(f"optional SNAP graphs not present: {absent}")
    bad, seen = [], []
    g = datasets.load_dataset("ca-condmat")
    for method in ("ds", "tds", "oqc", "tgds"):
        rep = report(g, method)
        seen.append(f"condmat/{method}=({rep['size']},{rep['delta']:.2f},{rep['tau']:.2f})")
        if not (rep["size"] == 26 and rep["delta"] == 1.0 and rep["tau"] == 1.0):
            bad.append("ca-condmat/" + method)
    rep = report(datasets.load_dataset("web-notredame"), "tgds")
    seen.append(f"notredame/tgds=({rep['size']},{rep['delta']:.2f},{rep['tau']:.2f})")
    if not (abs(rep["size"] - 155) <= 10 and rep["delta"] == 1.0 and rep["tau"] == 1.0):
        bad.append("web-notredame/tgds")
    record(4, not bad, f"{' '.join(seen)}; deviating={bad}")
    assert not bad


# -- 5 -----------------------------------------------------------------------------------

ENUM_LIMIT = 16  # triangle-graph vertices the unpruned enumeration can afford


def oracle_instances(count, seed):
    """G(n <= 12, p) instances, resampling those whose triangle-graph exceeds the
    enumeration budget (dense 12-vertex graphs can have over 100 triangles)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        g = gnp(int(rng.integers(3, 13)), float(rng.choice([0.3, 0.5, 0.7])), rng)
        if len(list_triangles(g)) <= ENUM_LIMIT:
            out.append(g)
    return out


def test_c5_oracle_equivalence():
    violations = []
    instances = oracle_instances(200, 5)
    for i, g in enumerate(instances):
        for objective in ("ds", "tds", "oqc", "tgds"):
            if objective in ("tds", "tgds") and len(list_triangles(g)) == 0:
                continue  # undefined without triangles
            greedy = run_greedy(g, objective).objective_value
            exact = exact_oracle(g, objective, limit=60).objective_value
            brute = enumerate_exact(g, objective, limit=20).objective_value
            if greedy > exact or exact != brute:
                violations.append((i, objective, greedy, exact, brute))
    record(5, not violations, f"{len(instances)} graphs x 4 objectives, violations={len(violations)}")
    assert not violations, violations[:5]


# -- 6 -----------------------------------------------------------------------------------

def test_c6_theorem_bound():
    rng = np.random.default_rng(6)
    cases = [("fig1", fig1_graph()), ("fig3", fig3_graph())]
    while len(cases) < 52:
        g = gnp(int(rng.integers(5, 13)), float(rng.choice([0.3, 0.5, 0.7])), rng)
        if 0 < len(list_triangles(g)) <= 40:
            cases.append((f"random{len(cases) - 2}", g))
    failed = [name for name, g in cases if not verify_theorem1(g, limit=60).holds]
    record(6, not failed, f"{len(cases)} instances (fig1, fig3, 50 random), violations={failed}")
    assert not failed


# -- 7 -----------------------------------------------------------------------------------

def cubic_triangle_count(g):
    a = np.zeros((g.n, g.n), dtype=bool)
    e = g.edges()
    a[e[:, 0], e[:, 1]] = a[e[:, 1], e[:, 0]] = True
    i, j, k = np.ogrid[:g.n, :g.n, :g.n]
    upper = (i < j) & (j < k)
    return int((a[:, :, None] & a[:, None, :] & a[None, :, :] & upper).sum())


def test_c7_structural_invariants():
    rng = np.random.default_rng(7)
    bad = []
    for _ in range(100):
        g = gnp(int(rng.integers(3, 101)), float(rng.uniform(0.02, 0.3)), rng)
        if len(list_triangles(g)) != cubic_triangle_count(g):
            bad.append("triangles")
    for _ in range(50):
        g = gnp(int(rng.integers(4, 16)), float(rng.choice([0.3, 0.5, 0.7])), rng)
        for k in (3, 4):
            cg = build_k_clique_graph(g, k)
            edges = [tuple(x) for x in cg.explicit_edges().tolist()]
            s = [v for v in range(cg.n) if rng.random() < 0.7]
            for v in s:
                for lab in cg.labels[v].tolist():
                    if cg.label_degree(v, lab, s) != explicit_label_degree(edges, v, lab, s):
                        bad.append(f"deg k={k}")
    for _ in range(50):
        g = gnp(int(rng.integers(5, 40)), float(rng.choice([0.2, 0.4])), rng)
        if build_triangle_graph(g).n == 0:
            continue
        a, b = greedy_kgds(g, 3), greedy_tgds(g)
        if (a.selected, a.objective_value, a.witness) != (b.selected, b.objective_value, b.witness):
            bad.append("kgds3")
    record(7, not bad, f"100 triangle counts, 50 label-degree graphs, 50 kgds(3) runs; violations={len(bad)}")
    assert not bad, sorted(set(bad))


# -- 8 -----------------------------------------------------------------------------------

def best_time(g, repeat=3):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        greedy_tgds(g)
        times.append(time.perf_counter() - t)
    return min(times)


@pytest.mark.slow
def test_c8_scaling():
    small, large = block_graph(400, 40, 0.5, seed=1), block_graph(800, 40, 0.5, seed=2)
    t_small, t_large = len(list_triangles(small)), len(list_triangles(large))
    ratio = best_time(large) / best_time(small)
    size_ratio = t_large / t_small
    ok = ratio < SCALING_LIMIT
    record(8, ok, f"triangles {t_small} -> {t_large} (x{size_ratio:.2f}), time x{ratio:.2f} (< {SCALING_LIMIT})")
    assert ok


# -- 9 -----------------------------------------------------------------------------------

def test_c9_keywords():
    from kcgds import extract_keywords

    published = set(datasets.published()["keywords"])
    ours = set(extract_keywords(article_text(), window=3, drop_stopwords=True))
    overlap = len(ours & published) / len(published)
    ok = overlap >= KEYWORD_OVERLAP
    record(9, ok, f"{len(ours & published)}/{len(published)} published terms recovered "
                  f"({overlap:.0%}, need {KEYWORD_OVERLAP:.0%}); extracted {len(ours)} terms")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
