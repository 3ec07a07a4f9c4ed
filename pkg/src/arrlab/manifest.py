"""Batch experiment driver: named jobs built from the family constructors,
each with expected-value checks, executed deterministically with per-job
JSON certificates and a summary table."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import deformations as dfm
from . import descendants as dsc
from . import graphs as gr
from .accuracy import accuracy_profile, check_witness
from .core import cone, from_json
from .errors import ArrlabError, BudgetExceeded, InputError
from .freeness import free_verdict, verify_mat_partition
from .lattice import char_poly, supersolvable
from .roots import OrderIdeal, cached_root_system, ideal_arrangement


@dataclass
class JobResult:
    name: str
    ok: bool
    details: dict


def _build_subject(job: dict):
    """Construct the job's arrangement (and side-objects) from its spec."""
    if "arrangement" in job:
        return from_json(job["arrangement"]), {}
    if "deform" in job:
        params = dict(job["deform"])
        family = params.pop("family")
        spec = dfm.DeformationSpec(family, params)
        arr = dfm.build(spec)
        return arr, {"deform_spec": spec}
    if "descend" in job:
        params = dict(job["descend"])
        spec = dsc.DescendantSpec(
            params["genealogy"], params["l"], params.get("p", 0), params.get("k", 1),
            params.get("m", 0), params.get("d", 0), params.get("c", 1), params.get("hat", False),
        )
        return dsc.build_descendant(spec), {"descend_spec": spec}
    if "graph" in job:
        g = _build_graph(job["graph"])
        return gr.graphic_arrangement(g), {"graph": g}
    if "ideal" in job:
        params = job["ideal"]
        phi = cached_root_system(params["type"])
        ideal = OrderIdeal(frozenset(int(i) for i in params["roots"]))
        arr, pi = ideal_arrangement(phi, ideal)
        return arr, {"phi": phi, "partition": pi}
    if "nish" in job:
        sets = [tuple(int(x) for x in s) for s in job["nish"]]
        return gr.nishi_arrangement(sets), {"nish_sets": sets}
    raise InputError(f"job has no recognizable subject: {sorted(job)}")


def _build_graph(data) -> gr.SimpleGraph:
    if "sun" in data:
        return gr.build_sun(int(data["sun"]))
    if "q4_ext" in data:
        return gr.build_q4_ext(int(data["q4_ext"]))
    if "q_family" in data:
        q = data["q_family"]
        return gr.build_q_family(gr.QSpec(int(q["l"]), tuple(int(w) for w in q["weights"])))
    return gr.graph_from_json(data)


def run_job(job: dict, out_dir: Path | None = None) -> JobResult:
    name = job.get("name", "job")
    checks = job.get("checks", {})
    budget = job.get("budget", {})
    node_budget = int(budget.get("depth", 50_000))
    max_flats = budget.get("flats")
    details: dict = {}
    failures = []
    try:
        arr, extra = _build_subject(job)
        details["hyperplanes"] = len(arr)
        target = cone(arr) if job.get("cone", True) and not arr.is_central else arr
        if "count" in checks and len(arr) != checks["count"]:
            failures.append(f"count: got {len(arr)}, want {checks['count']}")
        if "cone_exponents" in checks or "exponents" in checks:
            want = tuple(sorted(checks.get("cone_exponents", checks.get("exponents"))))
            cp = char_poly(target, max_flats=max_flats)
            got = tuple(sorted(cp.roots_over_Z)) if cp.roots_over_Z is not None else None
            details["chi_roots"] = list(got) if got else None
            if got != want:
                failures.append(f"exponents: got {got}, want {want}")
        if "chi_splits" in checks:
            cp = char_poly(target, max_flats=max_flats)
            got = cp.roots_over_Z is not None
            details["chi_splits"] = got
            if got != checks["chi_splits"]:
                failures.append(f"chi_splits: got {got}")
        if "supersolvable" in checks:
            got = supersolvable(target) is not None
            details["supersolvable"] = got
            if got != checks["supersolvable"]:
                failures.append(f"supersolvable: got {got}")
        if "free" in checks:
            v = free_verdict(target, "auto", node_budget, graph=extra.get("graph"))
            details["free"] = v.status
            want = checks["free"]
            got = v.status == "free" if isinstance(want, bool) else v.status
            if got != want:
                failures.append(f"free: got {v.status} ({v.reason}), want {want}")
        if "chordal" in checks:
            got = gr.is_chordal(extra["graph"]) is not None
            details["chordal"] = got
            if got != checks["chordal"]:
                failures.append(f"chordal: got {got}")
        if "strongly_chordal" in checks:
            got = gr.is_strongly_chordal(extra["graph"])
            details["strongly_chordal"] = got
            if got != checks["strongly_chordal"]:
                failures.append(f"strongly_chordal: got {got}")
        if "mat_partition_valid" in checks:
            ok, exps, msg = verify_mat_partition(arr, extra["partition"])
            details["mat_partition"] = ok
            if ok != checks["mat_partition_valid"]:
                failures.append(f"mat_partition_valid: got {ok} ({msg})")
        witness_json = None
        if any(k in checks for k in ("accurate", "coaccuracy", "flag_accurate", "ind_flag_accurate")):
            if "graph" in extra:
                rep = gr.graphic_accuracy_profile(extra["graph"])
                results = {
                    "accurate": rep.accurate,
                    "coaccuracy": rep.coaccuracy,
                    "flag_accurate": rep.flag_accurate,
                    "ind_flag_accurate": rep.ind_flag_accurate,
                }
                if rep.witness_chain:
                    witness_json = {
                        "kind": "graphic-chain",
                        "partitions": [sorted(sorted(b) for b in part) for part in rep.witness_chain],
                    }
            else:
                rep = accuracy_profile(target, node_budget=node_budget, max_flats=max_flats)
                results = {
                    "accurate": rep.accurate,
                    "coaccuracy": rep.coaccuracy,
                    "flag_accurate": rep.flag_accurate,
                    "ind_flag_accurate": rep.ind_flag_accurate,
                }
                if rep.witness is not None:
                    okw, msgw = check_witness(target, rep.witness)
                    if not okw:
                        failures.append(f"witness replay: {msgw}")
                    witness_json = rep.witness.to_json(target)
            for key in ("accurate", "coaccuracy", "flag_accurate", "ind_flag_accurate"):
                if key in checks:
                    details[key] = results[key]
                    if results[key] != checks[key]:
                        failures.append(f"{key}: got {results[key]}, want {checks[key]}")
        if out_dir is not None:
            out = {
                "schema": "arrlab/1",
                "job": name,
                "details": details,
                "ok": not failures,
                "failures": failures,
            }
            if witness_json is not None:
                out["witness"] = witness_json
            path = Path(out_dir) / f"{name}.json"
            path.write_text(json.dumps(out, sort_keys=True, indent=2) + "\n")
    except BudgetExceeded as exc:
        return JobResult(name, False, {"error": f"budget exhausted: {exc}", "budget": True})
    except ArrlabError as exc:
        return JobResult(name, False, {"error": str(exc)})
    return JobResult(name, not failures, {**details, "failures": failures})


def run_manifest(manifest: dict, out_dir=None):
    """Execute all jobs in order (deterministic commit order) and return
    (results, all_ok)."""
    jobs = manifest.get("jobs", [])
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    results = [run_job(job, Path(out_dir) if out_dir else None) for job in jobs]
    return results, all(r.ok for r in results)


def summary_table(results) -> str:
    if not results:
        return "(empty manifest)"
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "ok" if r.ok else "FAIL"
        extra = ""
        if not r.ok:
            extra = "  " + "; ".join(r.details.get("failures", []) or [r.details.get("error", "")])
        lines.append(f"{r.name:<{width}}  {status}{extra}")
    return "\n".join(lines)
