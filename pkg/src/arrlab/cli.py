"""Command-line front end.

Exit codes: 0 ok, 1 expectation failure, 2 budget exhaustion, 3 input
error.  All emitted JSON carries the schema tag arrlab/1 and is serialized
with sorted keys so reruns are byte-identical.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import deformations as dfm
from . import descendants as dsc
from . import graphs as gr
from . import lattice
from .accuracy import accuracy_profile, check_witness, flag_accuracy, simple_root_witness
from .core import cone as cone_op
from .core import flat_from_rows, from_json, localize, restrict, to_json
from .errors import ArrlabError, BudgetExceeded, InputError
from .freeness import free_verdict, verify_certificate, verify_mat_partition
from .manifest import run_manifest, summary_table
from .roots import (
    OrderIdeal,
    cached_root_system,
    enumerate_ideals,
    ideal_arrangement,
    root_poset_dot,
)

EXIT_EXPECTATION = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3


def _load_arrangement(path):
    try:
        return from_json(json.loads(Path(path).read_text()))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read arrangement {path}: {exc}") from exc


def _dump(data, out):
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _guard(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo(f"budget exhausted: {exc}", err=True)
            sys.exit(EXIT_BUDGET)
        except ArrlabError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
def main():
    """Exact hyperplane-arrangement computations with replayable
    certificates."""


@main.command()
@click.argument("arrangement", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="emit {coeffs, roots} JSON")
@click.option("--budget-flats", type=int, default=None,
              help="flat budget for the lattice [default: 5000000]")
@_guard
def chi(arrangement, as_json, budget_flats):
    """Characteristic polynomial, expanded and factored when it splits."""
    arr = _load_arrangement(arrangement)
    cp = lattice.char_poly(arr, max_flats=budget_flats)
    if as_json:
        _dump(
            {
                "schema": "arrlab/1",
                "coeffs": list(cp.coeffs),
                "roots": list(cp.roots_over_Z) if cp.roots_over_Z is not None else None,
            },
            None,
        )
    else:
        click.echo(str(cp))


@main.command("cone")
@click.argument("arrangement", type=click.Path(exists=True))
@click.option("-o", "--out", type=click.Path(), default=None)
@_guard
def cone_cmd(arrangement, out):
    """Cone an affine arrangement (new coordinate z appended last)."""
    arr = _load_arrangement(arrangement)
    _dump(to_json(cone_op(arr)), out)


def _flat_from_option(arr, flat_rows):
    try:
        rows = json.loads(flat_rows)
        return flat_from_rows(arr, [tuple(int(v) for v in r) for r in rows])
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"bad --flat rows: {exc}") from exc


@main.command("restrict")
@click.argument("arrangement", type=click.Path(exists=True))
@click.option("--flat", "flat_rows", required=True, help="JSON rows [[a1..an,c],...] cutting the flat")
@click.option("-o", "--out", type=click.Path(), default=None)
@_guard
def restrict_cmd(arrangement, flat_rows, out):
    """Restrict to a flat (coordinates = free columns of its echelon form)."""
    arr = _load_arrangement(arrangement)
    _dump(to_json(restrict(arr, _flat_from_option(arr, flat_rows))), out)


@main.command("localize")
@click.argument("arrangement", type=click.Path(exists=True))
@click.option("--flat", "flat_rows", required=True)
@click.option("-o", "--out", type=click.Path(), default=None)
@_guard
def localize_cmd(arrangement, flat_rows, out):
    """Keep only the hyperplanes containing the flat."""
    arr = _load_arrangement(arrangement)
    _dump(to_json(localize(arr, _flat_from_option(arr, flat_rows))), out)


@main.command()
@click.argument("arrangement", type=click.Path(exists=True))
@click.option("--method", default="auto",
              type=click.Choice(["auto", "supersolvable", "inductive", "divisional", "mat", "recursive"]))
@click.option("--budget-depth", type=int, default=200_000, show_default=True,
              help="search node budget")
@click.option("--cert-out", type=click.Path(), default=None, help="write replayable certificate bundle")
@_guard
def free(arrangement, method, budget_depth, cert_out):
    """Certify freeness combinatorially; prints the three-valued verdict."""
    arr = _load_arrangement(arrangement)
    v = free_verdict(arr, method, budget_depth)
    if v.status == "free":
        click.echo(f"free ({v.certificate.kind}) with exponents {list(v.certificate.exponents)}")
        if cert_out:
            _dump(
                {"schema": "arrlab/1", "arrangement": to_json(arr), "certificate": v.certificate.to_json()},
                cert_out,
            )
            click.echo(f"certificate written to {cert_out}")
    else:
        click.echo(f"{v.status}: {v.reason}")
        if v.status == "unknown" and "budget" in v.reason:
            sys.exit(EXIT_BUDGET)


@main.command()
@click.argument("bundle", type=click.Path(exists=True))
@_guard
def verify(bundle):
    """Replay a certificate or witness bundle; nonzero exit on mismatch."""
    data = json.loads(Path(bundle).read_text())
    arr = from_json(data["arrangement"])
    if "certificate" in data:
        ok, msg = verify_certificate(arr, data["certificate"])
    elif "witness" in data:
        ok, msg = check_witness(arr, data["witness"])
    elif "mat_partition" in data:
        ok, exps, msg = verify_mat_partition(arr, [tuple(b) for b in data["mat_partition"]])
    else:
        raise InputError("bundle has neither certificate, witness, nor mat_partition")
    click.echo("verified" + (f" ({msg})" if msg else "") if ok else f"MISMATCH: {msg}")
    if not ok:
        sys.exit(EXIT_EXPECTATION)


@main.command()
@click.argument("arrangement", type=click.Path(exists=True))
@click.option("--kind", default="profile", type=click.Choice(["profile", "flag", "accurate", "simple-root"]))
@click.option("--budget", "budget_depth", type=int, default=50_000, show_default=True,
              help="freeness-search node budget")
@click.option("--budget-flats", type=int, default=None,
              help="flat budget for the lattice [default: 5000000]")
@click.option("--base", default=None, help="root system label for --kind=simple-root")
@click.option("--witness-out", type=click.Path(), default=None)
@_guard
def accuracy(arrangement, kind, budget_depth, budget_flats, base, witness_out):
    """Accuracy verdicts and witnesses for a free central arrangement."""
    arr = _load_arrangement(arrangement)
    witness = None
    if kind == "simple-root":
        if base is None:
            raise InputError("--kind=simple-root needs --base=<root system label>")
        phi = cached_root_system(base)
        witness = simple_root_witness(arr, phi.simple_roots)
        click.echo("simple-root witness found" if witness else "no simple-root witness")
        if witness is None:
            sys.exit(EXIT_EXPECTATION)
    elif kind == "flag":
        witness = flag_accuracy(arr, node_budget=budget_depth)
        click.echo("flag-accurate" if witness else "no flag witness found")
        if witness is None:
            sys.exit(EXIT_EXPECTATION)
    else:
        rep = accuracy_profile(arr, node_budget=budget_depth, max_flats=budget_flats)
        click.echo(f"exponents        : {list(rep.exponents)} ({rep.provenance})")
        click.echo(f"almost accurate  : {rep.almost_accurate}")
        click.echo(f"accurate         : {rep.accurate}")
        click.echo(f"k-accuracy       : {rep.k_accuracy}   coaccuracy: {rep.coaccuracy}")
        click.echo(f"flag-accurate    : {rep.flag_accurate}")
        click.echo(f"ind-flag-accurate: {rep.ind_flag_accurate}")
        if rep.note:
            click.echo(f"note: {rep.note}")
        if rep.undecided:
            click.echo(f"undecided: {', '.join(rep.undecided)}")
        witness = rep.witness
    if witness is not None and witness_out:
        _dump({"schema": "arrlab/1", "arrangement": to_json(arr), "witness": witness.to_json(arr)}, witness_out)
        click.echo(f"witness written to {witness_out}")


@main.command("graph")
@click.argument("graph_file", type=click.Path(exists=True))
@click.option("--check", default="accuracy", type=click.Choice(["chordal", "strong", "class-g", "accuracy"]))
@_guard
def graph_cmd(graph_file, check):
    """Graph recognizers and the contraction-side accuracy profile."""
    g = gr.graph_from_json(json.loads(Path(graph_file).read_text()))
    if check == "chordal":
        peo = gr.is_chordal(g)
        if peo is None:
            cyc = gr.find_induced_cycle(g)
            click.echo(f"not chordal; induced cycle {cyc}")
            sys.exit(EXIT_EXPECTATION)
        click.echo(f"chordal; perfect elimination ordering {peo}")
    elif check == "strong":
        order = gr.simple_elimination_ordering(g)
        if order is None:
            click.echo("not strongly chordal")
            sys.exit(EXIT_EXPECTATION)
        click.echo(f"strongly chordal; simple elimination ordering {order}")
    elif check == "class-g":
        d = gr.in_class_g(g)
        click.echo(f"in class: {d}" if d else "not in the class")
        if d is None:
            sys.exit(EXIT_EXPECTATION)
    else:
        rep = gr.graphic_accuracy_profile(g)
        if not rep.free:
            click.echo(rep.note)
            sys.exit(EXIT_EXPECTATION)
        click.echo(f"exponents        : {list(rep.exponents)}")
        click.echo(f"accurate         : {rep.accurate}")
        click.echo(f"coaccuracy       : {rep.coaccuracy}   k-accuracy: {rep.k_accuracy}")
        click.echo(f"flag-accurate    : {rep.flag_accurate}")
        if rep.failing_level is not None:
            click.echo(f"first failing level (codim): {rep.failing_level}")


@main.command()
@click.option("--type", "type_label", required=True, help="root system label, e.g. B3")
@click.option("--all", "all_ideals", is_flag=True, help="stream every lower order ideal")
@click.option("--check", default="mat", type=click.Choice(["mat", "flag-accuracy"]))
@click.option("--roots", "dump_roots", is_flag=True, help="dump the root poset as DOT")
@click.option("--allow-big", is_flag=True,
              help="opt in to exhaustive sweeps over E6/E7/E8 (long-running)")
@_guard
def ideal(type_label, all_ideals, check, dump_roots, allow_big):
    """Ideal subarrangements: stream per-ideal verdicts as JSON lines."""
    phi = cached_root_system(type_label)
    if dump_roots:
        click.echo(root_poset_dot(phi))
        return
    if all_ideals and phi.label in ("E6", "E7", "E8") and not allow_big:
        raise InputError(
            f"exhaustive ideal sweeps over {phi.label} are disabled by default; "
            "pass --allow-big to opt in"
        )
    ideals = enumerate_ideals(phi) if all_ideals else [OrderIdeal(frozenset(range(len(phi.positive_roots))))]
    bad = 0
    for idl in ideals:
        arr, pi = ideal_arrangement(phi, idl)
        ok, exps, msg = verify_mat_partition(arr, pi)
        line = {
            "ideal": sorted(idl.roots),
            "size": len(idl.roots),
            "mat_partition_valid": ok,
            "exponents": list(exps) if exps else None,
        }
        if check == "flag-accuracy" and len(idl.roots):
            w = flag_accuracy(cone_op(arr)) if not arr.is_central else flag_accuracy(arr)
            line["flag_accurate"] = w is not None
            if w is None:
                bad += 1
        if not ok:
            bad += 1
            line["reason"] = msg
        click.echo(json.dumps(line, sort_keys=True))
    if bad:
        sys.exit(EXIT_EXPECTATION)


@main.command()
@click.option("--family", required=True, type=click.Choice(list(dfm.FAMILIES)))
@click.option("--base", default=None, help="root system label for root-based families")
@click.option("--m", type=int, default=None)
@click.option("--a", type=int, default=None)
@click.option("--n", type=int, default=None)
@click.option("--p", type=int, default=None)
@click.option("--r", type=int, default=None)
@click.option("--l", type=int, default=None)
@click.option("--cone", "do_cone", is_flag=True, help="emit the cone instead of the affine arrangement")
@click.option("--validate", "do_validate", is_flag=True, help="run the chi/freeness/accuracy validation report")
@click.option("-o", "--out", type=click.Path(), default=None)
@_guard
def deform(family, base, m, a, n, p, r, l, do_cone, do_validate, out):
    """Build (and optionally validate) a deformed Weyl family member."""
    params = {k: v for k, v in {"base": base, "m": m, "a": a, "n": n, "p": p, "r": r, "l": l}.items()
              if v is not None}
    spec = dfm.DeformationSpec(family, params)
    if do_validate:
        report = dfm.validate(spec)
        _dump({"schema": "arrlab/1", **report}, out)
        if report.get("exponents_match") is False or report.get("flag_accurate") is False:
            sys.exit(EXIT_EXPECTATION)
        return
    arr = dfm.build(spec)
    _dump(to_json(cone_op(arr) if do_cone else arr), out)


@main.command()
@click.option("--genealogy", required=True, type=click.Choice(["shi", "catalan"]))
@click.option("--l", "ell", type=int, required=True)
@click.option("--p", "--row", "p", type=int, default=None, help="single row; omit for all rows")
@click.option("--k", "--col", "k", type=int, default=None, help="single column; omit for all columns")
@click.option("--m", type=int, default=0)
@click.option("--d", type=int, default=0)
@click.option("--c", type=int, default=1)
@click.option("--hat", is_flag=True)
@click.option("--validate-row", is_flag=True, help="check exponents + mutation replay + witness per cell")
@click.option("-o", "--out", type=click.Path(), default=None)
@_guard
def descend(genealogy, ell, p, k, m, d, c, hat, validate_row, out):
    """Descendant matrices: construction, mutation replay, witnesses."""
    ps = [p] if p is not None else list(range(0, ell + 1))
    ks = [k] if k is not None else list(range(1, (ell - 1 if hat else ell) + 1))
    report = []
    ok_all = True
    for pp in ps:
        for kk in ks:
            spec = dsc.DescendantSpec(genealogy, ell, pp, kk, m, d, c, hat)
            arr = dsc.build_descendant(spec)
            cell = {"p": pp, "k": kk, "hat": hat, "hyperplanes": len(arr)}
            if validate_row:
                ca = cone_op(arr)
                got = lattice.char_poly(ca).roots_over_Z
                want = dsc.descendant_expected_exponents(spec)
                cell["exponents_ok"] = got is not None and tuple(sorted(got)) == want
                cell["mutation_replay_ok"] = dsc.mutation_replay(spec) == dsc.descendant_digraph(spec)
                _, w = dsc.descendant_witness(spec)
                cell["ind_flag_accurate"] = w is not None and w.kind == "ind_flag"
                ok_all = ok_all and cell["exponents_ok"] and cell["mutation_replay_ok"] and cell["ind_flag_accurate"]
            report.append(cell)
    _dump({"schema": "arrlab/1", "genealogy": genealogy, "l": ell, "cells": report}, out)
    if validate_row and not ok_all:
        sys.exit(EXIT_EXPECTATION)


@main.command()
@click.argument("manifest_file", type=click.Path(exists=True))
@click.option("--out-dir", type=click.Path(), default=None, help="directory for per-job certificates")
@_guard
def run(manifest_file, out_dir):
    """Run an experiment manifest; nonzero exit if any expectation fails."""
    manifest = json.loads(Path(manifest_file).read_text())
    results, ok = run_manifest(manifest, out_dir)
    click.echo(summary_table(results))
    if not ok:
        if any(r.details.get("budget") for r in results):
            sys.exit(EXIT_BUDGET)
        sys.exit(EXIT_EXPECTATION)


if __name__ == "__main__":
    main()
