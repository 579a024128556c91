"""Density reports and the table-reproduction harness."""
from __future__ import annotations

import json
import multiprocessing as mp
import queue as queue_mod
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import datasets
from .densest import PeelingResult, enumerate_exact, exact_oracle, run_greedy
from .errors import KcgdsError, ParameterError
from .graph import Graph, density_delta, density_tau

GREEDY_METHODS = ("ds", "tds", "oqc", "tgds", "kgds")
EXACT_METHODS = ("exact-ds", "exact-tds", "exact-oqc", "exact-tgds", "exact-kgds")
ENUM_METHODS = ("enum-ds", "enum-tds", "enum-oqc", "enum-tgds")
METHODS = GREEDY_METHODS + EXACT_METHODS + ENUM_METHODS


def run_method(g: Graph, method: str, k: int = 3, alpha=Fraction(1, 3),
               limit: int | None = None, trajectory: bool = False) -> PeelingResult:
    if method in GREEDY_METHODS:
        return run_greedy(g, method, k=k, alpha=alpha, trajectory=trajectory)
    kind, _, objective = method.partition("-")
    kwargs = {"alpha": alpha, "k": k}
    if limit is not None:
        kwargs["limit"] = limit
    if kind == "exact":
        return exact_oracle(g, objective, **kwargs)
    if kind == "enum":
        return enumerate_exact(g, objective, **kwargs)
    raise ParameterError(f"unknown method {method!r}")


def _metric(fn, g, s):
    try:
        return fn(g, s)
    except KcgdsError:
        return None


def density_report(g: Graph, res: PeelingResult, method: str, dataset: str | None = None,
                   wall_time: float | None = None) -> dict:
    """JSON-ready summary. Vertex ids are translated back to the input ids."""
    delta = _metric(density_delta, g, res.selected)
    tau = _metric(density_tau, g, res.selected)
    rep = {
        "dataset": dataset,
        "method": method,
        "params": dict(res.params),
        "objective_name": res.objective_name,
        "size": len(res.selected),
        "delta": None if delta is None else float(delta),
        "tau": None if tau is None else float(tau),
        "objective": float(res.objective_value),
        "delta_exact": None if delta is None else str(delta),
        "tau_exact": None if tau is None else str(tau),
        "objective_exact": str(res.objective_value),
        "wall_time": res.elapsed if wall_time is None else wall_time,
        "vertices": sorted(g.to_original(res.selected)),
    }
    if res.trajectory is not None:
        rep["trajectory"] = [
            {"iteration": s.iteration, "removed": s.removed, "objective": float(s.objective)}
            for s in res.trajectory
        ]
    return rep


@dataclass
class BenchSpec:
    datasets: list[tuple[str, str]] = field(default_factory=list)   # (name, path or name)
    algorithms: list[dict] = field(default_factory=list)            # {"method": ..., params}
    output: str | None = None
    limits: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "BenchSpec":
        ds = []
        for item in d.get("datasets", []):
            if isinstance(item, str):
                ds.append((item, item))
            else:
                ds.append((item["name"], item.get("path", item["name"])))
        algs = []
        for item in d.get("algorithms", []):
            spec = {"method": item} if isinstance(item, str) else dict(item)
            if spec.get("method") not in METHODS:
                raise ParameterError(f"unknown method {spec.get('method')!r}")
            algs.append(spec)
        return cls(ds, algs, d.get("output"), dict(d.get("limits", {})))

    @classmethod
    def load(cls, path) -> "BenchSpec":
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        if not text.strip():
            return cls()
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParameterError(f"bench spec is not valid JSON: {exc}") from None


def _label(alg: dict) -> str:
    extra = [f"{k}={v}" for k, v in sorted(alg.items()) if k not in ("method", "limit")]
    return alg["method"] + (f"[{','.join(extra)}]" if extra else "")


def _run_cell(g: Graph, dataset: str, alg: dict) -> dict:
    start = time.perf_counter()
    res = run_method(
        g, alg["method"], k=int(alg.get("k", 3)), alpha=Fraction(str(alg.get("alpha", "1/3"))),
        limit=alg.get("limit"),
    )
    return density_report(g, res, alg["method"], dataset, time.perf_counter() - start)


def _cell_worker(queue, path, dataset, alg):
    try:
        queue.put(("ok", _run_cell(datasets.load_dataset(path), dataset, alg)))
    except KcgdsError as exc:
        queue.put(("error", f"{type(exc).__name__}: {exc}"))


def _run_with_timeout(path, dataset, alg, timeout):
    ctx = mp.get_context("fork")
    queue = ctx.Queue()
    proc = ctx.Process(target=_cell_worker, args=(queue, path, dataset, alg))
    proc.start()
    try:
        # read before join: a large report would otherwise block the child on the pipe
        status, payload = queue.get(timeout=timeout)
    except queue_mod.Empty:
        status, payload = ("timeout", None) if proc.is_alive() else ("error", "worker died")
    if proc.is_alive():
        proc.terminate()
    proc.join()
    return status, payload


def deviation(value: float, ref: float, resolution: float = 0.01) -> float:
    """Distance from ``value`` to the cell ``[ref, ref + resolution)``.

    The reference tables print two truncated decimals (0.939 appears as 0.93),
    so every value in that cell reproduces the printed one.
    """
    if value < ref:
        return ref - value
    return max(0.0, value - (ref + resolution) + 1e-12)


def compare_published(dataset: str, method: str, rep: dict) -> list[str]:
    """Names of the fields deviating from the reference tables beyond tolerance."""
    pub = datasets.published()
    tol = pub["tolerances"]["density"]
    res = pub["tolerances"]["resolution"]
    ref = None
    table = None
    for table in ("table2", "table4"):
        ref = pub[table].get(dataset, {}).get(method)
        if ref is not None:
            break
    if ref is None:
        return []
    bad = []
    for key in ("delta", "tau"):
        if rep[key] is None or deviation(rep[key], ref[key], res) > tol:
            bad.append(key)
    if method in pub["size_exact"].get(table, {}).get(dataset, []) and rep["size"] != ref["size"]:
        bad.append("size")
    if method == "tgds" and dataset in pub["table3"]:
        if deviation(rep["objective"], pub["table3"][dataset]["greedy"], res) > pub["tolerances"]["objective"]:
            bad.append("objective")
    return bad


def run_bench(spec: BenchSpec) -> dict:
    """Run every (dataset, algorithm) cell; failures and timeouts become misses."""
    timeout = spec.limits.get("timeout")
    cells = []
    for name, path in spec.datasets:
        g = None
        if not datasets.available(path):
            for alg in spec.algorithms:
                cells.append({"dataset": name, "algorithm": _label(alg), "status": "missing"})
            continue
        for alg in spec.algorithms:
            cell = {"dataset": name, "algorithm": _label(alg)}
            if timeout:
                status, payload = _run_with_timeout(path, name, alg, timeout)
            else:
                try:
                    g = g or datasets.load_dataset(path)
                    status, payload = "ok", _run_cell(g, name, alg)
                except KcgdsError as exc:
                    status, payload = "error", f"{type(exc).__name__}: {exc}"
            cell["status"] = status
            if status == "ok":
                cell["report"] = payload
                cell["deviations"] = compare_published(name.lower(), alg["method"], payload)
            elif payload:
                cell["error"] = payload
            cells.append(cell)
    return {"cells": cells}


def _fmt(x, digits=2):
    return "-" if x is None else f"{x:.{digits}f}"


def render_text(result: dict) -> str:
    """Grid with |S|, delta, tau per method, then a triangle-graph density table."""
    cells = result["cells"]
    names = list(dict.fromkeys(c["dataset"] for c in cells))
    algs = list(dict.fromkeys(c["algorithm"] for c in cells))
    if not cells:
        return "(empty benchmark)\n"
    grid = {(c["dataset"], c["algorithm"]): c for c in cells}
    colw = 20
    lines = ["Dataset".ljust(14) + "".join(a.center(colw) for a in algs),
             " " * 14 + "".join("|S|    d     t    ".center(colw) for _ in algs)]
    for name in names:
        row = name.ljust(14)
        for a in algs:
            c = grid.get((name, a))
            if c is None or c["status"] != "ok":
                txt = (c or {}).get("status", "-")
            else:
                r = c["report"]
                flag = "*" if c.get("deviations") else " "
                txt = f"{r['size']:>5} {_fmt(r['delta'])} {_fmt(r['tau'])}{flag}"
            row += txt.center(colw)
        lines.append(row)
    tg = [a for a in algs if a.split("[")[0] in ("tgds", "exact-tgds")]
    if tg:
        pub = datasets.published()["table3"]
        lines += ["", "Dataset".ljust(14) + "published exact".center(18) + "published greedy".center(18)
                  + "".join(a.center(14) for a in tg)]
        for name in names:
            ref = pub.get(name.lower(), {})
            row = name.ljust(14) + _fmt(ref.get("exact")).center(18) + _fmt(ref.get("greedy")).center(18)
            for a in tg:
                c = grid.get((name, a))
                val = c["report"]["objective"] if c and c["status"] == "ok" else None
                row += (_fmt(val) if val is not None else (c or {}).get("status", "-")).center(14)
            lines.append(row)
    lines.append("")
    lines.append("* deviates from the published value beyond tolerance")
    return "\n".join(lines) + "\n"


def render_tsv(result: dict) -> str:
    head = ["dataset", "algorithm", "status", "size", "delta", "tau", "objective", "wall_time", "deviations", "error"]
    rows = ["\t".join(head)]
    for c in result["cells"]:
        r = c.get("report", {})
        rows.append("\t".join(str(x) for x in (
            c["dataset"], c["algorithm"], c["status"], r.get("size", ""), r.get("delta", ""),
            r.get("tau", ""), r.get("objective", ""), r.get("wall_time", ""),
            ",".join(c.get("deviations", [])), c.get("error", ""),
        )))
    return "\n".join(rows) + "\n"
