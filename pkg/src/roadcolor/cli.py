"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 input validation, 3 structural
precondition, 4 insufficient data.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import InputError, PreconditionError, RoadColorError, StructureError
from .fileformat import InputDocument, parse_input, print_coloring
from .graph import check_assumption_A, is_strongly_connected, period, validate_outdegree
from .laws import check_uniformity, cyclic_parts, periodic_strongness, stationary_law
from .mapping import Word
from .sync import analyze_sync, find_synchronizing_coloring, pad_word
from .walk import (
    estimate_mu_hat,
    export_trace,
    mu_hat_convergence,
    nonstrong_evidence,
    reconstruct_all,
    simulate_walk,
)

COMPLETENESS_TARGET = 0.999
CONVERGENCE_POWER = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _word(w: Optional[Word]):
    if w is None:
        return None
    return list(w.colors)


def _subset(s) -> list[int]:
    return sorted(s)


def _frac(v: Fraction) -> str:
    return str(v)


def _provenance(text: str, seed: Optional[int]) -> dict:
    return {
        "input_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "seed": seed,
        "version": __version__,
    }


def _properties(doc: InputDocument):
    props = check_assumption_A(doc.graph)
    tree = {
        "sites": doc.m,
        "colors": doc.coloring.d if doc.coloring else None,
        "outdegree": props.outdegree,
        "strongly_connected": props.strongly_connected,
        "period": props.period,
        "aperiodic": props.aperiodic,
        "positivity_exponent": props.positivity_exponent,
        "assumption_A": props.assumption_A,
    }
    return props, tree


def _require_coloring(doc: InputDocument):
    if doc.coloring is None:
        raise InputError("this command needs color lines, not just a matrix")


def cmd_analyze(doc: InputDocument) -> dict:
    _require_coloring(doc)
    props, tree = _properties(doc)
    if not props.strongly_connected:
        raise StructureError("assumption (A) fails: the graph is not strongly connected")
    report = analyze_sync(doc.coloring)
    sync = {
        "synchronizing": report.synchronizing,
        "shortest_word": _word(report.shortest_word),
        "min_rank": report.min_rank,
        "witness_word": _word(report.witness_word),
        "f_cliques": [_subset(s) for s in report.f_cliques],
        "anchors": list(report.anchors),
        "partition": [_subset(b) for b in report.partition],
    }
    out = {"command": "analyze", "graph": tree, "sync": sync}
    mu = doc.colored_law().mu
    if props.aperiodic:
        lam = stationary_law(mu)
        ok, masses = check_uniformity(lam, report.partition)
        out["stationary_law"] = [_frac(v) for v in lam.weights]
        out["uniformity"] = {"uniform": ok, "block_masses": [_frac(v) for v in masses]}
    else:
        dec = cyclic_parts(doc.graph, mu)
        verdicts = periodic_strongness(mu, doc.graph)
        out["cyclic"] = {
            "period": dec.d,
            "parts": [list(p) for p in dec.parts],
            "part_laws": [[_frac(law[x]) for x in p] for p, law in zip(dec.parts, dec.part_laws)],
            "strong": [v.strong for v in verdicts],
            "reset_targets": [_reset_target(v) for v in verdicts],
        }
    return out


def _reset_target(verdict):
    """Site (global label) that the part's reset word collapses the part to."""
    if verdict.word is None:
        return None
    local = verdict.word.mapping(len(verdict.part))
    return verdict.part[local(1) - 1]


def _strong_check(doc, sync, steps: int, seed: int) -> dict:
    cl = doc.colored_law()
    trace = simulate_walk(cl, steps, seed)
    trace.check()
    rec = reconstruct_all(trace.noise, cl.coloring, sync.shortest_word)
    hits = [k for k in range(1, steps + 1) if rec[k] is not None]
    agree = sum(1 for k in hits if rec[k] == trace.states[k])
    coverage = len(hits) / steps
    return {
        "clause": "(i) => (iii): synchronizing coloring, walk reconstructed from colors alone",
        "steps": steps,
        "reconstructable": len(hits),
        "agreeing": agree,
        "agreement": agree / len(hits) if hits else None,
        "coverage": coverage,
        "verified": bool(hits) and agree == len(hits) and coverage >= COMPLETENESS_TARGET,
    }


def _nonstrong_check(doc, sync, r: int, trials: int, seed: int) -> dict:
    cl = doc.colored_law()
    padded = pad_word(sync.witness_word, cl.coloring, r)
    ev = nonstrong_evidence(cl, padded, trials, seed, r)
    est = estimate_mu_hat(cl, padded, trials, seed)
    conv = mu_hat_convergence(est, CONVERGENCE_POWER)
    return {
        "clause": "not (i) => not (iii): block of the walk is uniform and independent of the colors",
        "padded_word": _word(padded),
        "trials": trials,
        "completed": ev.completed,
        "block_counts": list(ev.block_counts),
        "uniformity_statistic": round(ev.uniformity_statistic, 6),
        "uniformity_pvalue": round(ev.uniformity_pvalue, 6),
        "history_length": ev.history_length,
        "independence_statistic": round(ev.independence_statistic, 6),
        "independence_pvalue": round(ev.independence_pvalue, 6),
        "independence_dof": ev.independence_dof,
        "significance": ev.significance,
        "uniform": ev.uniform,
        "independent": ev.independent,
        "mu_hat_support": len(est.counts),
        "mu_hat_samples": est.total,
        "convergence_power": conv.n,
        "convergence_max_deviation": round(conv.max_deviation, 9),
        "convergence_expected": conv.converges,
        "verified": ev.passed,
    }


def cmd_verify(doc: InputDocument, mode: str, trials: int, seed: int) -> dict:
    _require_coloring(doc)
    props, tree = _properties(doc)
    if not props.assumption_A:
        raise StructureError("assumption (A) fails: need constant outdegree, strong connectivity and aperiodicity")
    sync = analyze_sync(doc.coloring)
    if mode == "auto":
        mode = "strong" if sync.synchronizing else "nonstrong"
    if mode == "strong" and not sync.synchronizing:
        raise PreconditionError(
            "refused: clause (i) fails (the coloring is not synchronizing), "
            "so clause (iii) (a strong walk) cannot hold; use --mode nonstrong"
        )
    if mode == "nonstrong" and sync.synchronizing:
        raise PreconditionError(
            "refused: clause (i) holds (the coloring is synchronizing), "
            "so the walk is strong; use --mode strong"
        )
    if mode == "strong":
        result = _strong_check(doc, sync, trials, seed)
    else:
        result = _nonstrong_check(doc, sync, props.positivity_exponent, trials, seed)
    return {
        "command": "verify",
        "mode": mode,
        "graph": tree,
        "synchronizing": sync.synchronizing,
        "min_rank": sync.min_rank,
        "result": result,
    }


def cmd_find_coloring(doc: InputDocument) -> tuple[dict, Optional[str]]:
    g = doc.graph
    d = validate_outdegree(g)
    if d is None:
        raise StructureError("graph does not have constant outdegree")
    sc = is_strongly_connected(g)
    per = period(g) if sc else None
    found = find_synchronizing_coloring(g)
    tree = {
        "command": "find-coloring",
        "sites": g.m,
        "outdegree": d,
        "strongly_connected": sc,
        "period": per,
        "found": found is not None,
    }
    if found is None:
        if not sc:
            why = "graph is not strongly connected"
        elif per > 1:
            why = f"graph has period {per}; every coloring keeps the {per} cyclic parts apart"
        else:
            why = "no coloring of this graph synchronizes"
        tree["diagnostic"] = why
        return tree, None
    tree["coloring"] = [list(c.image) for c in found.colors]
    return tree, "\n".join(print_coloring(found)) + "\n"


def simulate_text(doc: InputDocument, steps: int, seed: int) -> str:
    _require_coloring(doc)
    trace = simulate_walk(doc.colored_law(), steps, seed)
    trace.check()
    freqs = ",".join(f"{v:.6f}" for v in trace.frequencies())
    return export_trace(trace) + f"# frequencies={freqs}\n"


def _render(tree: dict, indent: int = 0) -> list[str]:
    width = max((len(k) for k in tree), default=0)
    pad = " " * indent
    lines = []
    for key, value in tree.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines += _render(value, indent + 2)
        else:
            lines.append(f"{pad}{key.ljust(width)}  {_scalar(value)}")
    return lines


def _scalar(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return " | ".join("{" + " ".join(map(_scalar, v)) + "}" for v in value)
        return " ".join(map(_scalar, value))
    return str(value)


def _emit(tree: dict, as_json: bool, stream) -> None:
    if as_json:
        stream.write(json.dumps(tree, indent=2) + "\n")
    else:
        stream.write("\n".join(_render(tree)) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="roadcolor", description="Road colorings, synchronization and random walks.")
    p.add_argument("--version", action="version", version=f"roadcolor {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="graph properties, synchronization, stationary law")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")

    s = sub.add_parser("simulate", help="write a seeded trace")
    s.add_argument("file")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--output", "-o")

    v = sub.add_parser("verify", help="check strongness or its failure empirically")
    v.add_argument("file")
    v.add_argument("--mode", choices=("auto", "strong", "nonstrong"), default="auto")
    v.add_argument("--trials", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")

    f = sub.add_parser("find-coloring", help="search for a synchronizing coloring of a graph")
    f.add_argument("file")
    f.add_argument("--json", action="store_true")
    return p


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "simulate" and args.steps < 1:
            raise UsageError("--steps must be at least 1")
        if args.command == "verify" and args.trials < 1:
            raise UsageError("--trials must be at least 1")
        if getattr(args, "seed", 0) < 0:
            raise UsageError("--seed must be non-negative")
    except UsageError as exc:
        stderr.write(f"roadcolor: error: {exc}\n")
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        text = _read(args.file)
        doc = parse_input(text)
        if args.command == "analyze":
            tree = cmd_analyze(doc)
            tree["provenance"] = _provenance(text, None)
            _emit(tree, args.json, stdout)
        elif args.command == "simulate":
            out = simulate_text(doc, args.steps, args.seed)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(out)
            else:
                stdout.write(out)
        elif args.command == "verify":
            tree = cmd_verify(doc, args.mode, args.trials, args.seed)
            tree["provenance"] = _provenance(text, args.seed)
            _emit(tree, args.json, stdout)
        else:
            tree, coloring_text = cmd_find_coloring(doc)
            if args.json:
                tree["provenance"] = _provenance(text, None)
                _emit(tree, True, stdout)
            elif coloring_text is None:
                stdout.write(f"none found: {tree['diagnostic']}\n")
            else:
                stdout.write(coloring_text)
            if coloring_text is None:
                return StructureError.exit_code
    except RoadColorError as exc:
        stderr.write(f"roadcolor: {exc}\n")
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
