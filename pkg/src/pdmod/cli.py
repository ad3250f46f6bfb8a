"""Command line front end: parse a system, run the requested stages, print a report.

    pdmod full system.pds --format json
    pdmod generators --set a=0 family.pds

Exit codes: 0 success, 2 parse or usage error, 3 stage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import analysis, dual, involution
from .errors import ParseError, PDModError, StageError, UsageError
from .jets import PDSystem, specialize
from .parse import load_system, system_to_dsl

SCHEMA = 1
COMMANDS = ("complete", "characters", "purity", "torsion-chain", "parametrize", "inverse-system", "generators", "full")

_STAGES = {
    "complete": ("complete",),
    "characters": ("complete", "characters"),
    "purity": ("complete", "characters", "purity"),
    "torsion-chain": ("complete", "characters", "chain"),
    "parametrize": ("parametrize",),
    "inverse-system": ("complete", "characters", "dual"),
    "generators": ("complete", "characters", "dual", "generators"),
    "full": ("complete", "characters", "purity", "chain", "dual", "generators"),
}


@dataclass
class AnalysisRequest:
    command: str
    source: str
    text: str
    seed: int = 0
    max_order: int | None = None
    max_rounds: int = 50
    format: str = "text"
    specialize: dict = dc_field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_help()}")


def _parser():
    p = _Parser(prog="pdmod", description="Analyse linear constant-coefficient PD systems.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="path to a .pds/.json system, '-' for stdin, or inline system text")
    p.add_argument("--seed", type=int, default=0, help="seed for coordinate changes during completion")
    p.add_argument("--max-order", type=int, default=None, help="fail instead of prolonging past this order")
    p.add_argument("--max-rounds", type=int, default=50, help="completion round limit")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="specialize a parameter")
    return p


def parse_request(argv, stdin=None):
    args = _parser().parse_args(argv)
    if args.input == "-":
        text = (stdin or sys.stdin).read()
        source = "<stdin>"
    elif os.path.exists(args.input):
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
        source = args.input
    elif "\n" in args.input or args.input.lstrip().startswith("{"):
        text = args.input
        source = "<inline>"
    else:
        raise UsageError(f"no such file: {args.input}")
    values = {}
    for item in args.set:
        if "=" not in item:
            raise UsageError(f"--set expects NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        try:
            values[name.strip()] = Fraction(value.strip())
        except ValueError:
            raise UsageError(f"--set value must be rational, got {value!r}") from None
    return AnalysisRequest(
        args.command, source, text, args.seed, args.max_order, args.max_rounds, args.format, values
    )


# report building -----------------------------------------------------------------


def _eq_text(e, m):
    return e.to_str(m)


def _matrix_json(a):
    return [[str(x) for x in row] for row in a]


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except ParseError:
        raise
    except PDModError as exc:
        raise StageError(name, exc) from exc


def _complete_fragment(inv):
    return {
        "order": inv.order,
        "equations": [_eq_text(e, inv.m) for e in inv.system.equations],
        "class_counts": list(reversed(inv.class_counts())),
        "coordinate_change": _matrix_json(inv.change) if inv.changed() else None,
        "rounds": inv.rounds,
    }


def _characters_fragment(inv):
    alpha, r = involution.characters(inv)
    dims = involution.hilbert_dims(inv, inv.order + 2)
    out = {
        "alpha": list(alpha),
        "codim": r,
        "finite_type": involution.is_finite_type(inv),
        "symbol_dims": list(dims.g),
        "section_dims": list(dims.R),
    }
    if out["finite_type"]:
        out["solution_dim"] = involution.solution_dim(inv)
    return out


def _purity_fragment(verdict, m):
    if verdict.pure:
        return {"pure": True, "codim": verdict.codim}
    return {"pure": False, "codim": verdict.codim, "witnesses": [_eq_text(w, m) for w in verdict.witnesses]}


def _chain_fragment(chain, m):
    levels = []
    for lv in chain.levels:
        levels.append(
            {
                "r": lv.r,
                "whole_module": lv.is_whole_module,
                "zero": lv.is_zero,
                "generators": [
                    {"element": _eq_text(g, m), "codim": c} for g, c in zip(lv.generators, lv.codims)
                ],
                "elements": [{"element": _eq_text(e, m), "codim": c} for e, c in lv.elements],
                "equal_to_next": lv.gap_with_next,
            }
        )
    return {"codim": chain.codim, "levels": levels}


def _parametrize_fragment(res, m):
    if isinstance(res, analysis.SimplificationDetected):
        return {
            "torsion_free": False,
            "witness": _eq_text(res.witness, m),
            "killer": str(res.killer),
        }
    return {
        "torsion_free": True,
        "free": list(res.free),
        "rows": [[str(p) for p in v] for v in res.rows],
        "branch_conditions": list(res.branch_conditions),
    }


def _dual_source(inv, chars):
    alpha, r = chars
    if r >= inv.n:
        return inv, None
    loc = analysis.localize(inv, r)
    return loc, loc


def _dual_fragment(R, loc):
    pts = dual.maximal_points(R)
    return {
        "field": repr(R.field),
        "localized_variables": [f"x{i}" for i in range(1, R.n - len(R.directions) + 1)],
        "dim_R": R.dim,
        "basis": [str(j) for j in R.basis],
        "maximal_points": [{"c": [str(c) for c in p.values], "ideal": str(p)} for p in pts],
        "socle_dims": [len(dual.socle(R, p)) for p in pts],
        "top_dims": [len(dual.top_component(R, p)) for p in pts],
        "commuting": dual.commutes(R),
    }


def _generators_fragment(R, gens, inv, loc):
    out = {
        "num_generators": gens.count,
        "generators": [{"terms": s.to_json()["terms"]} for s in gens.sections],
        "branch_conditions": list(gens.branch_conditions),
        "certified": dual.generation_check(R, gens.vectors),
        "derivate_depth": gens.depth,
    }
    if loc is None:
        out["qprime"] = max((j.order for s in gens.sections for j in s.coeffs), default=0)
        return out
    delocs = []
    qprime = None
    for v in gens.vectors:
        d = dual.delocalize(R, v, inv.order)
        qprime = d.qprime if qprime is None else max(qprime, d.qprime)
        delocs.append(
            {
                "cleared": {"terms": d.cleared.truncate(inv.order + 1).to_json()["terms"]},
                "delta": d.delta,
                "tau": d.tau,
                "equations": [
                    {"alpha": dual.alpha_name(a), "terms": e.truncate(d.qprime + inv.order).to_json()["terms"]}
                    for a, e in d.equations
                ],
            }
        )
    out["qprime"] = qprime
    out["delocalized"] = delocs
    out["note"] = "generators of the localized module; the original module may need others"
    return out


def run(req):
    """Execute the stages for ``req`` and return the report as a plain dict."""
    system = load_system(req.text)
    warnings = []
    if req.specialize:
        try:
            system = specialize(system, req.specialize)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    report = {
        "schema": SCHEMA,
        "command": req.command,
        "input": system_to_dsl(system),
        "seed": req.seed,
        "specialize": {k: str(v) for k, v in sorted(req.specialize.items())},
    }
    stages = _STAGES[req.command]
    m = system.m
    if "parametrize" in stages:
        res = _stage("parametrize", analysis.parametrize, system, req.seed)
        report["parametrize"] = _parametrize_fragment(res, m)
        if isinstance(res, analysis.Parametrization) and res.branch_conditions:
            warnings.append("parameter branch conditions: " + ", ".join(res.branch_conditions))
    inv = chars = None
    if "complete" in stages:
        inv = _stage(
            "complete", involution.complete, system, req.seed, req.max_rounds, True, req.max_order
        )
        report["involution"] = _complete_fragment(inv)
        if inv.changed():
            warnings.append("a linear change of coordinates was applied; equations are in the new coordinates")
    if "characters" in stages:
        chars = involution.characters(inv)
        report["characters"] = _characters_fragment(inv)
    pure_inv = inv
    if "purity" in stages:
        verdict = _stage("purity", analysis.purity_test, inv)
        report["purity"] = _purity_fragment(verdict, m)
        if not verdict.pure:
            pure_sys = _stage("purity", analysis.pure_part, inv)
            pure_inv = _stage("purity", involution.complete, _input_coords(pure_sys, inv), req.seed, req.max_rounds)
            report["pure_part"] = {
                "label": "generators below are computed for the pure part M/t_r(M)",
                "system": system_to_dsl(_input_coords(pure_sys, inv)),
            }
            warnings.append("module is not pure: the generator stage uses the pure part")
    if "chain" in stages:
        chain = _stage("torsion-chain", analysis.torsion_chain, inv, req.seed)
        report["torsion_chain"] = _chain_fragment(chain, m)
    if "dual" in stages:
        chars_p = involution.characters(pure_inv)
        src, loc = _stage("localize", _dual_source, pure_inv, chars_p)
        R = _stage("inverse-system", dual.build_dual, src)
        try:
            report["inverse_system"] = _dual_fragment(R, loc)
        except PDModError as exc:
            raise StageError("inverse-system", exc) from exc
        if "generators" in stages:
            gens = _stage("generators", dual.min_generators, R)
            report["generators"] = _generators_fragment(R, gens, pure_inv, loc)
            if gens.branch_conditions:
                warnings.append("parameter branch conditions: " + ", ".join(gens.branch_conditions))
    report["warnings"] = warnings
    return report


def _input_coords(system, inv):
    """Map a system in working coordinates back to the input coordinates."""
    if not inv.changed():
        return system
    from .jets import change_coordinates

    back = change_coordinates(system, inv.inverse_change())
    return PDSystem(back.n, back.m, back.equations, back.field, params=back.params)


# rendering --------------------------------------------------------------------------


def to_json(report):
    return json.dumps(report, indent=2, sort_keys=True)


def to_text(report):
    lines = [f"command: {report['command']}"]
    if report.get("specialize"):
        lines.append("specialized: " + ", ".join(f"{k}={v}" for k, v in report["specialize"].items()))
    lines.append("input:")
    lines.extend("  " + ln for ln in report["input"].splitlines())
    if "parametrize" in report:
        p = report["parametrize"]
        if p["torsion_free"]:
            lines.append(f"parametrization (free unknowns {p['free']}):")
            for row in p["rows"]:
                lines.append("  (" + ", ".join(row) + ")")
            for c in p["branch_conditions"]:
                lines.append(f"  branch: {c}")
        else:
            lines.append(f"torsion element {p['witness']} killed by {p['killer']}")
    if "involution" in report:
        iv = report["involution"]
        lines.append(f"involutive system (order {iv['order']}, class counts high to low {iv['class_counts']}):")
        lines.extend(f"  {e} = 0" for e in iv["equations"])
        if iv["coordinate_change"]:
            lines.append(f"  coordinate change {iv['coordinate_change']}")
    if "characters" in report:
        c = report["characters"]
        lines.append(f"characters {c['alpha']}, codimension {c['codim']}, symbol dims {c['symbol_dims']}")
        if c["finite_type"]:
            lines.append(f"finite type, solution space dimension {c['solution_dim']}")
    if "purity" in report:
        p = report["purity"]
        if p["pure"]:
            lines.append(f"pure of codimension {p['codim']}")
        else:
            lines.append(f"not pure (codimension {p['codim']}); witnesses: " + ", ".join(f"{w} = 0" for w in p["witnesses"]))
    if "pure_part" in report:
        lines.append(report["pure_part"]["label"] + ":")
        lines.extend("  " + ln for ln in report["pure_part"]["system"].splitlines())
    if "torsion_chain" in report:
        lines.append("torsion chain:")
        for lv in report["torsion_chain"]["levels"]:
            if lv["whole_module"]:
                desc = "M"
            elif lv["zero"]:
                desc = "0"
            else:
                desc = ", ".join(f"{g['element']} (codim {g['codim']})" for g in lv["generators"])
            gap = f"  (equal to t_{lv['r'] + 1})" if lv["equal_to_next"] else ""
            lines.append(f"  t_{lv['r']}: {desc}{gap}")
            for e in lv["elements"]:
                lines.append(f"    contains {e['element']} of codim {e['codim']}")
    if "inverse_system" in report:
        d = report["inverse_system"]
        lines.append(f"inverse system over {d['field']}: dim {d['dim_R']}, basis dual to {d['basis']}")
        for pt, s in zip(d["maximal_points"], d["socle_dims"]):
            lines.append(f"  point {pt['ideal']}: socle dimension {s}")
    if "generators" in report:
        g = report["generators"]
        lines.append(f"generators: {g['num_generators']} (q' = {g['qprime']})")
        for gen in g["generators"]:
            lines.append("  E = " + _terms_text(gen["terms"]))
        for c in g["branch_conditions"]:
            lines.append(f"  branch: {c}")
        for d in g.get("delocalized", []):
            for e in d["equations"]:
                lines.append(f"  E_{e['alpha']} = " + _terms_text(e["terms"]))
        if "note" in g:
            lines.append(f"  note: {g['note']}")
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def _terms_text(terms):
    parts = []
    for key, c in terms.items():
        name = "a^" + (key if key != "()" else "0")
        parts.append(name if c == "1" else f"({c})*{name}")
    return " + ".join(parts) if parts else "0"


def main(argv=None, stdout=None, stderr=None, stdin=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        req = parse_request(sys.argv[1:] if argv is None else argv, stdin)
        report = run(req)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return 2
    except StageError as exc:
        print(str(exc), file=stderr)
        return 3
    except PDModError as exc:
        print(f"stage error: {type(exc).__name__}: {exc}", file=stderr)
        return 3
    stdout.write(to_json(report) + "\n" if req.format == "json" else to_text(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
