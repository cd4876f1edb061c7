"""Scenario runner: JSON configs, figure presets, parameter sweeps to CSV/JSON.

A scenario selects a physics kind, fixed parameters, one sweep variable and
optionally a family of parameter overrides (one curve per family member, all
rows stacked in a single output).  Output is deterministic: one row per grid
point, columns sorted, floats in shortest round-trip form, fixed reduction
order regardless of worker count.

Units convention: free-space presets set the reference peak momentum to 1
(everything in units of k0 = eta1); deposit presets set L = pi so mode
frequencies are integers; the cavity resonance presets use L = 10 and 20 with
the gap on the lattice resonance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .cavity import CavitySpec, deposit_linear, deposit_quadratic, prob_one_cavity
from .free_linear import DetectorSpec, prob_one_linear, prob_two_linear
from .free_quadratic import prob_one_quadratic, prob_two_quadratic
from .quadrature import QuadratureConvergenceError
from .wavepacket import (
    TwoParticleSpec,
    WavepacketSpec,
    energy_density_origin,
    energy_expectation,
)

__all__ = ["Scenario", "ConfigError", "run_scenario", "list_presets", "get_preset", "main"]

ENV_DEFAULT_TOL = "UDW_DEFAULT_TOL"
FALLBACK_TOL = 1e-9

KINDS = (
    "linear_one",
    "quadratic_one",
    "linear_two",
    "quadratic_two",
    "cavity_one",
    "deposit_linear",
    "deposit_quadratic",
    "energy",
)

# sweepable / settable parameters per kind
_KIND_PARAMS = {
    "linear_one": {"n", "k0", "sigma", "omega", "lam", "smearing_delta", "ir_cutoff"},
    "quadratic_one": {"n", "k0", "sigma", "omega", "lam", "ir_cutoff"},
    "linear_two": {"n", "eta1", "eta2", "sigma", "omega", "lam", "ir_cutoff"},
    "quadratic_two": {"n", "eta1", "eta2", "sigma", "omega", "lam", "ir_cutoff"},
    "cavity_one": {"n", "L", "x_d", "T", "k0_index", "sigma", "omega", "lam", "mode_cap"},
    "deposit_linear": {"L", "x_d", "T", "omega", "lam", "j", "j_max"},
    "deposit_quadratic": {"L", "x_d", "T", "omega", "lam", "j", "j_max", "k_max"},
    "energy": {"n", "k0", "sigma", "ir_cutoff"},
}


class ConfigError(ValueError):
    """Scenario configuration problem, with the offending field named."""


@dataclass(frozen=True)
class Sweep:
    variable: str
    lo: float
    hi: float
    points: int
    scale: str = "linear"

    def grid(self) -> list[float]:
        if self.scale == "log":
            step = (math.log(self.hi) - math.log(self.lo)) / (self.points - 1)
            return [math.exp(math.log(self.lo) + i * step) for i in range(self.points)]
        step = (self.hi - self.lo) / (self.points - 1)
        return [self.lo + i * step for i in range(self.points)]


@dataclass(frozen=True)
class Scenario:
    kind: str
    params: dict[str, Any]
    sweep: Sweep
    family: tuple[dict[str, Any], ...] = ()
    rel_tol: float | None = None
    output_path: str | None = None
    output_format: str = "csv"

    def to_config(self) -> dict[str, Any]:
        cfg: dict[str, Any] = {
            "kind": self.kind,
            "params": dict(self.params),
            "sweep": {
                "variable": self.sweep.variable,
                "min": self.sweep.lo,
                "max": self.sweep.hi,
                "points": self.sweep.points,
                "scale": self.sweep.scale,
            },
        }
        if self.family:
            cfg["family"] = [dict(f) for f in self.family]
        if self.rel_tol is not None:
            cfg["rel_tol"] = self.rel_tol
        if self.output_path is not None:
            cfg["output"] = {"path": self.output_path, "format": self.output_format}
        return cfg


def parse_scenario(cfg: dict[str, Any]) -> Scenario:
    if not isinstance(cfg, dict):
        raise ConfigError("config: top level must be an object")
    kind = cfg.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"kind: must be one of {', '.join(KINDS)}, got {kind!r}")
    params = cfg.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params: must be an object")
    allowed = _KIND_PARAMS[kind]
    for name in params:
        if name not in allowed:
            raise ConfigError(f"params.{name}: not a parameter of kind {kind}")

    sweep_cfg = cfg.get("sweep")
    if not isinstance(sweep_cfg, dict):
        raise ConfigError("sweep: required object with variable/min/max/points")
    variable = sweep_cfg.get("variable")
    if variable not in allowed:
        raise ConfigError(f"sweep.variable: {variable!r} is not a parameter of kind {kind}")
    try:
        lo = float(sweep_cfg["min"])
        hi = float(sweep_cfg["max"])
        points = int(sweep_cfg["points"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"sweep: needs numeric min/max and integer points ({exc})")
    if points < 2:
        raise ConfigError(f"sweep.points: must be >= 2, got {points}")
    if not lo < hi:
        raise ConfigError(f"sweep: min must be < max, got [{lo}, {hi}]")
    scale = sweep_cfg.get("scale", "linear")
    if scale not in ("linear", "log"):
        raise ConfigError(f"sweep.scale: must be 'linear' or 'log', got {scale!r}")
    if scale == "log" and lo <= 0:
        raise ConfigError("sweep.scale: log scale requires min > 0")

    family_cfg = cfg.get("family", [])
    if not isinstance(family_cfg, list):
        raise ConfigError("family: must be a list of parameter-override objects")
    family = []
    for i, member in enumerate(family_cfg):
        if not isinstance(member, dict) or not member:
            raise ConfigError(f"family[{i}]: must be a non-empty object")
        for name in member:
            if name not in allowed:
                raise ConfigError(f"family[{i}].{name}: not a parameter of kind {kind}")
        family.append(dict(member))

    rel_tol = cfg.get("rel_tol")
    if rel_tol is not None:
        rel_tol = float(rel_tol)
        if not 0.0 < rel_tol < 1.0:
            raise ConfigError(f"rel_tol: must be in (0, 1), got {rel_tol}")

    out = cfg.get("output", {})
    if not isinstance(out, dict):
        raise ConfigError("output: must be an object")
    output_format = out.get("format", "csv")
    if output_format not in ("csv", "json"):
        raise ConfigError(f"output.format: must be 'csv' or 'json', got {output_format!r}")

    return Scenario(
        kind=kind,
        params=dict(params),
        sweep=Sweep(variable, lo, hi, points, scale),
        family=tuple(family),
        rel_tol=rel_tol,
        output_path=out.get("path"),
        output_format=output_format,
    )


def default_rel_tol() -> float:
    raw = os.environ.get(ENV_DEFAULT_TOL)
    if raw is None:
        return FALLBACK_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ConfigError(f"{ENV_DEFAULT_TOL}: not a float: {raw!r}")
    if not 0.0 < tol < 1.0:
        raise ConfigError(f"{ENV_DEFAULT_TOL}: must be in (0, 1), got {tol}")
    return tol


# ---------------------------------------------------------------------------
# point evaluation
# ---------------------------------------------------------------------------


def _evaluate_point(kind: str, p: dict[str, Any], rel_tol: float):
    """One grid point -> (value, components dict, error estimate)."""
    if kind == "linear_one":
        wp = WavepacketSpec(int(p["n"]), p["k0"], p["sigma"], p.get("ir_cutoff"))
        det = DetectorSpec(p["omega"], p.get("lam", 1.0), "linear", p.get("smearing_delta", 0.0))
        res = prob_one_linear(wp, det)
        return res.value, {}, res.error_estimate
    if kind == "quadratic_one":
        wp = WavepacketSpec(int(p["n"]), p["k0"], p["sigma"], p.get("ir_cutoff"))
        det = DetectorSpec(p["omega"], p.get("lam", 1.0), "quadratic")
        res = prob_one_quadratic(wp, det, rel_tol)
        return res.value, {}, res.error_estimate
    if kind == "linear_two":
        spec = TwoParticleSpec(int(p["n"]), p["eta1"], p["eta2"], p["sigma"], p.get("ir_cutoff"))
        det = DetectorSpec(p["omega"], p.get("lam", 1.0), "linear")
        res = prob_two_linear(spec, det)
        return res.value, dict(res.components), res.error_estimate
    if kind == "quadratic_two":
        spec = TwoParticleSpec(int(p["n"]), p["eta1"], p["eta2"], p["sigma"], p.get("ir_cutoff"))
        det = DetectorSpec(p["omega"], p.get("lam", 1.0), "quadratic")
        comp = prob_two_quadratic(spec, det, rel_tol)
        return (
            comp.total,
            {"p_q": comp.p_q, "p_r": comp.p_r, "p_s": comp.p_s},
            comp.error_estimate,
        )
    if kind == "cavity_one":
        n = int(p["n"])
        x_d = p["x_d"] if isinstance(p["x_d"], (list, tuple)) else [p["x_d"]] * n
        cap = p.get("mode_cap")
        cav = CavitySpec(n, p["L"], tuple(x_d), p["T"], None if cap is None else int(cap))
        det = DetectorSpec(p["omega"], p.get("lam", 1.0), "linear")
        res = prob_one_cavity(cav, tuple(int(j) for j in p["k0_index"]), p["sigma"], det)
        return res.value, {}, res.error_estimate
    if kind in ("deposit_linear", "deposit_quadratic"):
        cav = CavitySpec(1, p["L"], (p["x_d"],), p["T"])
        j = int(round(p["j"]))
        j_max = int(p.get("j_max", j))
        if kind == "deposit_linear":
            det = DetectorSpec(p["omega"], p.get("lam", 1.0), "linear")
            spectrum = deposit_linear(cav, det, max(j, j_max))
        else:
            det = DetectorSpec(p["omega"], p.get("lam", 1.0), "quadratic")
            spectrum = deposit_quadratic(cav, det, max(j, j_max), int(p.get("k_max", 200)))
        _, omega_j, n_j = spectrum.entries[j - 1]
        return n_j, {"omega_j": omega_j}, 0.0
    if kind == "energy":
        wp = WavepacketSpec(int(p["n"]), p["k0"], p["sigma"], p.get("ir_cutoff"))
        density = energy_density_origin(wp, rel_tol)
        return energy_expectation(wp), {"energy_density_origin": density}, 0.0
    raise ConfigError(f"kind: unknown {kind!r}")


def _point_params(scenario: Scenario, member: dict[str, Any], x: float) -> dict[str, Any]:
    p = dict(scenario.params)
    p.update(member)
    p[scenario.sweep.variable] = x
    return p


def _worker(args) -> tuple[float, dict[str, float], float]:
    kind, params, rel_tol = args
    return _evaluate_point(kind, params, rel_tol)


def _format_float(x: float) -> str:
    return repr(float(x))


def _scalar_param_names(rows_params: list[dict[str, Any]]) -> list[str]:
    names = set()
    for p in rows_params:
        names.update(p.keys())
    return sorted(names)


def run_scenario(scenario: Scenario, jobs: int = 1, out_path: str | None = None) -> dict:
    """Execute the sweep and write CSV/JSON; returns a summary record."""
    rel_tol = scenario.rel_tol if scenario.rel_tol is not None else default_rel_tol()
    members = scenario.family if scenario.family else ({},)
    grid = scenario.sweep.grid()
    tasks = [
        (scenario.kind, _point_params(scenario, member, x), rel_tol)
        for member in members
        for x in grid
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, tasks, chunksize=4))
    else:
        results = [_worker(t) for t in tasks]

    param_rows = [t[1] for t in tasks]
    param_names = _scalar_param_names(param_rows)
    component_names = sorted({name for _, comps, _ in results for name in comps})

    path = out_path or scenario.output_path
    if path is None:
        raise ConfigError("output.path: no output path given (config or --out)")

    if scenario.output_format == "json" or path.endswith(".json"):
        records = []
        for params, (value, comps, err) in zip(param_rows, results):
            rec = {name: params.get(name) for name in param_names}
            rec["value"] = value
            rec.update({name: comps.get(name, 0.0) for name in component_names})
            rec["error_estimate"] = err
            records.append(rec)
        payload = json.dumps(records, indent=2, sort_keys=True)
        with open(path, "w") as fh:
            fh.write(payload + "\n")
    else:
        lines = [",".join(param_names + ["value"] + component_names + ["error_estimate"])]
        for params, (value, comps, err) in zip(param_rows, results):
            cells = []
            for name in param_names:
                v = params.get(name)
                if v is None:
                    cells.append("")
                elif isinstance(v, (list, tuple)):
                    cells.append("[" + " ".join(_format_float(c) for c in v) + "]")
                elif isinstance(v, (int, float)):
                    cells.append(_format_float(v))
                else:
                    cells.append(str(v))
            cells.append(_format_float(value))
            cells.extend(_format_float(comps.get(name, 0.0)) for name in component_names)
            cells.append(_format_float(err))
            lines.append(",".join(cells))
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    return {
        "kind": scenario.kind,
        "rows": len(tasks),
        "path": path,
        "format": scenario.output_format,
    }


# ---------------------------------------------------------------------------
# presets: one per published curve set
# ---------------------------------------------------------------------------


def _linear_resonance(n: int) -> dict:
    params: dict[str, Any] = {"n": n, "k0": 1.0, "lam": 1.0, "sigma": 1.0}
    return {
        "kind": "linear_one",
        "params": params,
        "sweep": {"variable": "omega", "min": 0.05, "max": 3.0, "points": 119, "scale": "linear"},
        "family": [{"sigma": 1.0}, {"sigma": 0.5}, {"sigma": 0.25}],
    }


def _quadratic_resonance(n: int) -> dict:
    return {
        "kind": "quadratic_one",
        "params": {"n": n, "k0": 1.0, "lam": 1.0, "sigma": 1.0},
        "sweep": {"variable": "omega", "min": 0.05, "max": 3.0, "points": 60, "scale": "linear"},
        "family": [{"sigma": 1.0}, {"sigma": 0.5}, {"sigma": 0.25}],
        "rel_tol": 1e-7,
    }


def _cavity_times() -> dict:
    return {
        "kind": "cavity_one",
        "params": {
            "n": 3,
            "L": 10.0,
            "x_d": [3.0, 3.0, 3.0],
            "k0_index": [1, 1, 1],
            "omega": math.pi / 10.0 * math.sqrt(3.0),
            "lam": 1.0,
            "T": 50.0,
            "sigma": 0.1,
        },
        "sweep": {"variable": "sigma", "min": 0.0157, "max": 0.8, "points": 41, "scale": "log"},
        "family": [{"T": 25.0}, {"T": 50.0}, {"T": 100.0}],
    }


def _cavity_sizes() -> dict:
    k0 = math.pi / 10.0 * math.sqrt(3.0)
    return {
        "kind": "cavity_one",
        "params": {
            "n": 3,
            "L": 10.0,
            "x_d": [3.0, 3.0, 3.0],
            "k0_index": [1, 1, 1],
            "omega": k0,
            "lam": 1.0,
            "T": 100.0,
            "sigma": 0.1,
        },
        "sweep": {"variable": "sigma", "min": 0.0157, "max": 0.6, "points": 41, "scale": "log"},
        "family": [
            {"L": 10.0, "k0_index": [1, 1, 1]},
            {"L": 20.0, "k0_index": [2, 2, 2]},
        ],
    }


def _two_linear() -> dict:
    return {
        "kind": "linear_two",
        "params": {"n": 3, "eta1": 1.0, "eta2": 2.0, "lam": 1.0, "sigma": 0.25},
        "sweep": {"variable": "omega", "min": 0.1, "max": 3.0, "points": 117, "scale": "linear"},
        "family": [{"sigma": 0.5}, {"sigma": 0.25}, {"sigma": 0.1}],
    }


def _two_quadratic(sigmas: list[float]) -> dict:
    return {
        "kind": "quadratic_two",
        "params": {"n": 3, "eta1": 1.0, "eta2": 3.0, "lam": 1.0, "sigma": 0.5},
        "sweep": {"variable": "omega", "min": 0.25, "max": 6.0, "points": 47, "scale": "linear"},
        "family": [{"sigma": s} for s in sigmas],
        "rel_tol": 1e-7,
    }


def _two_quadratic_dimensions() -> dict:
    return {
        "kind": "quadratic_two",
        "params": {"n": 3, "eta1": 1.0, "eta2": 3.0, "lam": 1.0, "sigma": 0.5},
        "sweep": {"variable": "omega", "min": 0.25, "max": 6.0, "points": 47, "scale": "linear"},
        "family": [{"n": 1}, {"n": 2}, {"n": 4}],
        "rel_tol": 1e-7,
    }


def _deposits(kind: str) -> dict:
    if kind == "deposit_linear":
        params = {"L": math.pi, "x_d": math.pi * math.pi / 7.0, "T": 20.0 / 6.0, "omega": 6.0, "lam": 1.0, "j_max": 20}
        points = 20
    else:
        params = {"L": math.pi, "x_d": math.pi / 2.0, "T": 4.0, "omega": 5.0, "lam": 1.0, "j_max": 15, "k_max": 80}
        points = 15
    return {
        "kind": kind,
        "params": params,
        "sweep": {"variable": "j", "min": 1, "max": points, "points": points, "scale": "linear"},
    }


_PRESETS: dict[str, dict] = {
    "fig1_n1": _linear_resonance(1),
    "fig1_n2": _linear_resonance(2),
    "fig1_n3": _linear_resonance(3),
    "fig1_n4": _linear_resonance(4),
    "fig2a": _cavity_times(),
    "fig2b": _cavity_sizes(),
    "fig3_n1": _quadratic_resonance(1),
    "fig3_n2": _quadratic_resonance(2),
    "fig3_n3": _quadratic_resonance(3),
    "fig3_n4": _quadratic_resonance(4),
    "fig4": _two_linear(),
    "fig5a": _two_quadratic([1.0, 0.5]),
    "fig5b": _two_quadratic([1.0, 0.5]),
    "fig5c": _two_quadratic([1.0, 0.5]),
    "fig6": _two_quadratic_dimensions(),
    "deposits_linear": _deposits("deposit_linear"),
    "deposits_quadratic": _deposits("deposit_quadratic"),
}
_ALIASES = {"fig5_sfg": "fig5b", "fig5_dfg": "fig5c"}


def list_presets() -> list[str]:
    return sorted(_PRESETS) + sorted(_ALIASES)


def get_preset(name: str) -> Scenario:
    resolved = _ALIASES.get(name, name)
    if resolved not in _PRESETS:
        raise ConfigError(f"unknown preset {name!r}; see `udw list-presets`")
    return parse_scenario(json.loads(json.dumps(_PRESETS[resolved])))


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _load_config(path: str) -> Scenario:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")
    return parse_scenario(cfg)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="udw",
        description="Detector-response sweeps for Fock wavepackets (free space and cavities)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config (JSON)")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="override output path")
    p_run.add_argument("--tol", type=float, help="override relative tolerance")
    p_run.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p_preset = sub.add_parser("preset", help="run a built-in figure preset")
    p_preset.add_argument("name")
    p_preset.add_argument("--out", help="output path (default <name>.csv)")
    p_preset.add_argument("--tol", type=float, help="override relative tolerance")
    p_preset.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    sub.add_parser("list-presets", help="list built-in presets")

    p_val = sub.add_parser("validate", help="validate a scenario config")
    p_val.add_argument("config")

    args = parser.parse_args(argv)

    try:
        if args.command == "list-presets":
            for name in list_presets():
                print(name)
            return 0
        if args.command == "validate":
            scenario = _load_config(args.config)
            print(f"ok: {scenario.kind}, {scenario.sweep.points} points, "
                  f"{max(len(scenario.family), 1)} family member(s)")
            return 0
        if args.command == "run":
            scenario = _load_config(args.config)
        else:
            scenario = get_preset(args.name)
        if args.tol is not None:
            scenario = Scenario(
                scenario.kind, scenario.params, scenario.sweep, scenario.family,
                args.tol, scenario.output_path, scenario.output_format,
            )
        out = args.out
        if out is None and scenario.output_path is None:
            if args.command == "preset":
                out = f"{args.name}.csv"
        summary = run_scenario(scenario, jobs=max(args.jobs, 1), out_path=out)
        print(f"wrote {summary['rows']} rows to {summary['path']}")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureConvergenceError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
