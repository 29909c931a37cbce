"""Command-line front end.

Four subcommands, each reading one scenario JSON file:

  erase-demo  run a sequence of ancilla erasures and dump the CV wave
              per step (CSV) plus a JSON trace
  validate    run every registered property suite, write a JSON report
  processor   run a program through the step loop, write a JSON-lines
              metrics trace and the final CV dump
  resource    static resource accounting for a program

Exit codes: 0 success, 1 validation failure (a numeric check failed),
2 input or schema error, 3 resource limit.  All state comes from the
scenario file and flags; no environment variables are consulted.
Output is deterministic byte-for-byte for a fixed scenario and seed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .dyadic import MAX_LEVEL_DEFAULT, DyadicWave, indicator_unit
from .erasure import (
    FlipVariant,
    GridHybrid,
    cv_factor,
    erase_sequence,
    grid_erase,
    lift,
)
from .errors import (
    ContractError,
    DomainError,
    ResourceLimitError,
    SimulationError,
    ValidationError,
)
from .grid import GridWave
from .processor import (
    Program,
    init_from_program,
    load_program,
    parse_program,
    resource_report,
    run_program,
)
from .qubits import RegisterState
from .serialize import (
    dyadic_csv_rows,
    format_float,
    grid_csv_rows,
    json_dumps,
    write_json,
    write_jsonl,
    write_wave_csv,
)
from .validation import SUITE_NAMES, run_all

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_RESOURCE = 3

DEFAULT_GRID_WINDOW = (-2.0, 2.0)
DEFAULT_GRID_N = 4096

KINDS = ("erase-demo", "validate", "processor", "resource")

_COMMON_KEYS = {"kind", "backend", "seed", "max_level", "out_dir", "grid"}
_KIND_KEYS = {
    "erase-demo": {"pairs", "cv_level", "variant"},
    "validate": {"tolerance", "tolerances"},
    "processor": {"program", "data_basis", "variant"},
    "resource": {"program"},
}


@dataclass
class ScenarioConfig:
    kind: str
    backend: str = "dyadic"
    seed: Optional[int] = None
    max_level: int = MAX_LEVEL_DEFAULT
    out_dir: str = "out"
    grid_window: Tuple[float, float] = DEFAULT_GRID_WINDOW
    grid_n: int = DEFAULT_GRID_N
    tolerance: Optional[float] = None
    tolerances: Dict[str, float] = field(default_factory=dict)
    pairs: List[Tuple[complex, complex]] = field(default_factory=list)
    cv_level: int = 0
    variant: FlipVariant = FlipVariant.OUTSIDE_UNIT
    program: Optional[Program] = None
    data_basis: int = 0


def _require_int(value, path: str, minimum: Optional[int] = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValidationError(f"{path}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _require_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _parse_amplitude(value, path: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(float(value[0]), float(value[1]))
    raise ValidationError(f"{path}: amplitude must be a number or [re, im], got {value!r}")


def _parse_pairs(value, path: str) -> List[Tuple[complex, complex]]:
    if not isinstance(value, list):
        raise ValidationError(f"{path}: expected a list of amplitude pairs")
    pairs = []
    for i, entry in enumerate(value):
        if not isinstance(entry, list) or len(entry) != 2:
            raise ValidationError(f"{path}[{i}]: expected [alpha, beta]")
        a = _parse_amplitude(entry[0], f"{path}[{i}][0]")
        b = _parse_amplitude(entry[1], f"{path}[{i}][1]")
        norm2 = abs(a) ** 2 + abs(b) ** 2
        if abs(norm2 - 1.0) > 1e-9:
            raise ValidationError(
                f"{path}[{i}]: pair is not normalized (|alpha|^2+|beta|^2 = {norm2!r})"
            )
        pairs.append((a, b))
    return pairs


def load_scenario(path: str, kind: str, args: argparse.Namespace) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"scenario file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ValidationError(f"{path}: scenario must be a JSON object")

    allowed = _COMMON_KEYS | _KIND_KEYS[kind]
    for key in raw:
        if key not in allowed:
            raise ValidationError(f"{key}: unknown scenario key for kind {kind!r}")

    declared = raw.get("kind", kind)
    if declared != kind:
        raise ValidationError(f"kind: scenario declares {declared!r} but command is {kind!r}")

    backend = raw.get("backend", "dyadic")
    if backend not in ("dyadic", "grid"):
        raise ValidationError(f"backend: expected 'dyadic' or 'grid', got {backend!r}")
    # grid options go with the grid backend, never with the dyadic one
    if backend == "dyadic" and "grid" in raw:
        raise ValidationError("grid: options are only valid with backend 'grid'")
    if backend == "grid" and "grid" not in raw:
        raise ValidationError("grid: backend 'grid' requires a grid options object")

    cfg = ScenarioConfig(kind=kind, backend=backend)

    if "grid" in raw:
        gopts = raw["grid"]
        if not isinstance(gopts, dict):
            raise ValidationError("grid: expected an object with 'window' and 'n'")
        for key in gopts:
            if key not in ("window", "n"):
                raise ValidationError(f"grid.{key}: unknown grid option")
        window = gopts.get("window", list(DEFAULT_GRID_WINDOW))
        if not isinstance(window, list) or len(window) != 2:
            raise ValidationError("grid.window: expected [x_min, x_max]")
        lo = _require_number(window[0], "grid.window[0]")
        hi = _require_number(window[1], "grid.window[1]")
        if not lo < hi:
            raise ValidationError(f"grid.window: empty window [{lo}, {hi})")
        n = _require_int(gopts.get("n", DEFAULT_GRID_N), "grid.n", minimum=2)
        if n & (n - 1):
            raise ValidationError(f"grid.n: must be a power of two, got {n}")
        cfg.grid_window = (lo, hi)
        cfg.grid_n = n

    if "seed" in raw:
        cfg.seed = _require_int(raw["seed"], "seed", minimum=0)
    if "max_level" in raw:
        cfg.max_level = _require_int(raw["max_level"], "max_level", minimum=0)
    if "out_dir" in raw:
        if not isinstance(raw["out_dir"], str):
            raise ValidationError(f"out_dir: expected a string, got {raw['out_dir']!r}")
        cfg.out_dir = raw["out_dir"]

    if kind == "erase-demo":
        if "pairs" not in raw:
            raise ValidationError("pairs: required for erase-demo")
        cfg.pairs = _parse_pairs(raw["pairs"], "pairs")
        cfg.cv_level = _require_int(raw.get("cv_level", 0), "cv_level", minimum=0)
    if kind in ("erase-demo", "processor") and "variant" in raw:
        try:
            cfg.variant = FlipVariant(raw["variant"])
        except ValueError:
            raise ValidationError(
                f"variant: expected 'outside_unit' or 'inside_one_two', got {raw['variant']!r}"
            ) from None
    if kind in ("processor", "resource"):
        if "program" not in raw:
            raise ValidationError(f"program: required for {kind}")
        prog_raw = raw["program"]
        base_dir = os.path.dirname(path) or "."
        if isinstance(prog_raw, str):
            cfg.program = load_program(os.path.join(base_dir, prog_raw))
        elif isinstance(prog_raw, dict):
            cfg.program = parse_program(prog_raw, base_dir=base_dir)
        else:
            raise ValidationError("program: expected an object or a file path string")
    if kind == "processor":
        cfg.data_basis = _require_int(raw.get("data_basis", 0), "data_basis", minimum=0)
        if cfg.data_basis >= 1 << cfg.program.data:
            raise ValidationError(
                f"data_basis: {cfg.data_basis} outside [0, {1 << cfg.program.data})"
            )
    if kind == "validate":
        if "tolerance" in raw:
            cfg.tolerance = _require_number(raw["tolerance"], "tolerance")
        if "tolerances" in raw:
            tols = raw["tolerances"]
            if not isinstance(tols, dict):
                raise ValidationError("tolerances: expected an object of suite: tolerance")
            for name, tol in tols.items():
                if name not in SUITE_NAMES:
                    raise ValidationError(f"tolerances.{name}: unknown suite")
                cfg.tolerances[name] = _require_number(tol, f"tolerances.{name}")

    # flags override the file
    if args.backend is not None:
        if args.backend == "dyadic":
            cfg.backend = "dyadic"
        else:
            cfg.backend = "grid"  # window/N fall back to defaults if absent
    if args.seed is not None:
        cfg.seed = args.seed
    if args.max_level is not None:
        cfg.max_level = args.max_level
    if args.out_dir is not None:
        cfg.out_dir = args.out_dir
    if args.tolerance is not None:
        cfg.tolerance = args.tolerance

    if kind == "validate" and cfg.seed is None:
        raise ValidationError("seed: required for validate (set in the scenario or via --seed)")
    return cfg


# ---------------------------------------------------------------------------
# erase-demo
# ---------------------------------------------------------------------------


def _product_register(pairs: Sequence[Tuple[complex, complex]]) -> RegisterState:
    amps = np.array([1.0], dtype=np.complex128)
    for a, b in pairs:  # factor i lands at bit i
        amps = np.kron(np.array([a, b], dtype=np.complex128), amps)
    return RegisterState(len(pairs), amps)


def _dump_dyadic(out_dir: str, name: str, w: DyadicWave) -> str:
    write_wave_csv(os.path.join(out_dir, name), dyadic_csv_rows(w))
    return name


def _dump_grid(out_dir: str, name: str, g: GridWave) -> str:
    write_wave_csv(os.path.join(out_dir, name), grid_csv_rows(g))
    return name


def cmd_erase_demo(cfg: ScenarioConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    if cfg.backend == "grid":
        return _erase_demo_grid(cfg)
    trace = []
    initial = indicator_unit(cfg.cv_level)
    ref = _dump_dyadic(cfg.out_dir, "step_00.csv", initial)
    trace.append(
        {
            "step": 0,
            "qubit": None,
            "level": initial.level,
            "norm2": initial.coeffs.size * initial.width,
            "ancilla_residual": 0.0,
            "wave": ref,
        }
    )
    if cfg.pairs:
        h = lift(_product_register(cfg.pairs), initial)
        final, steps = erase_sequence(
            h, list(range(len(cfg.pairs))), cfg.variant, max_level=cfg.max_level
        )
        for st in steps:
            factored = cv_factor(st.state)
            if factored is None:
                raise ContractError(
                    f"step {st.step}: state is entangled; erase-demo expects product input"
                )
            _, wave = factored
            ref = _dump_dyadic(cfg.out_dir, f"step_{st.step:02d}.csv", wave)
            trace.append(
                {
                    "step": st.step,
                    "qubit": st.qubit,
                    "level": st.level,
                    "norm2": st.norm2,
                    "ancilla_residual": st.ancilla_residual,
                    "wave": ref,
                }
            )
    write_json(os.path.join(cfg.out_dir, "trace.json"), trace)
    print(f"erase-demo: {len(trace)} dumps -> {cfg.out_dir}")
    return EXIT_OK


def _erase_demo_grid(cfg: ScenarioConfig) -> int:
    """Grid backend: one reused ancilla, erased once per pair."""
    x_min, x_max = cfg.grid_window
    n = cfg.grid_n
    h_step = (x_max - x_min) / n
    xs = x_min + h_step * np.arange(n)
    wave = np.where((xs >= 0.0) & (xs < 1.0), 1.0, 0.0).astype(np.complex128)
    trace = []
    ref = _dump_grid(cfg.out_dir, "step_00.csv", GridWave(x_min, h_step, wave))
    trace.append(
        {
            "step": 0,
            "qubit": None,
            "level": cfg.cv_level,
            "norm2": GridWave(x_min, h_step, wave).norm2(),
            "ancilla_residual": 0.0,
            "wave": ref,
        }
    )
    for i, (a, b) in enumerate(cfg.pairs, start=1):
        gh = GridHybrid(1, x_min, h_step, np.vstack([a * wave, b * wave]))
        gh = grid_erase(gh, 0, cfg.variant)
        wave = gh.amps[0]
        resid = float(h_step * np.sum(gh.amps[1].real ** 2 + gh.amps[1].imag ** 2))
        g = GridWave(x_min, h_step, wave)
        ref = _dump_grid(cfg.out_dir, f"step_{i:02d}.csv", g)
        trace.append(
            {
                "step": i,
                "qubit": 0,
                "level": cfg.cv_level + i,
                "norm2": g.norm2(),
                "ancilla_residual": resid,
                "wave": ref,
            }
        )
    write_json(os.path.join(cfg.out_dir, "trace.json"), trace)
    print(f"erase-demo: {len(trace)} dumps -> {cfg.out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def cmd_validate(cfg: ScenarioConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    results = run_all(cfg.seed, overrides=cfg.tolerances, global_tolerance=cfg.tolerance)
    report = [
        {
            "suite": r.suite,
            "trials": r.trials,
            "max_error": r.max_error,
            "pass": r.passed,
        }
        for r in results
    ]
    write_json(os.path.join(cfg.out_dir, "validation_report.json"), report)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.suite}: {status} trials={r.trials} max_error={format_float(r.max_error)}")
    failed = [r for r in results if not r.passed]
    print(f"validate: {len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_OK if not failed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# processor
# ---------------------------------------------------------------------------


def cmd_processor(cfg: ScenarioConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    program = cfg.program
    ps = init_from_program(program, data_basis=cfg.data_basis)
    ps, trace = run_program(ps, program.steps, cfg.variant, max_level=cfg.max_level)
    lines = [
        {
            "step": i,
            "ancilla_residual": m.ancilla_residual,
            "data_purity": m.data_purity,
            "cv_level": m.cv_level,
            "joint_cells": m.joint_cells,
            "norm2": m.norm2,
        }
        for i, m in enumerate(trace, start=1)
    ]
    write_jsonl(os.path.join(cfg.out_dir, "metrics.jsonl"), lines)
    factored = cv_factor(ps.hybrid)
    if factored is not None:
        _, wave = factored
        _dump_dyadic(cfg.out_dir, "final_wave.csv", wave)
        entangled = False
    else:
        # entangled final state: dump the CV marginal density (re = im = 0)
        h = ps.hybrid
        density = np.sum(h.amps.real**2 + h.amps.imag**2, axis=0)
        path = os.path.join(cfg.out_dir, "final_wave.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("x_left,x_right,re,im,abs2\n")
            for k, p in enumerate(density):
                left = (h.offset + k) * h.width
                right = (h.offset + k + 1) * h.width
                fh.write(
                    ",".join(format_float(v) for v in (left, right, 0.0, 0.0, p)) + "\n"
                )
        entangled = True
    summary = {
        "steps": len(trace),
        "cv_level": ps.hybrid.level,
        "joint_cells": ps.hybrid.n_cells,
        "norm2": ps.hybrid.norm2(),
        "entangled_final_cv": entangled,
    }
    write_json(os.path.join(cfg.out_dir, "summary.json"), summary)
    print(
        f"processor: {len(trace)} steps, final level {ps.hybrid.level} -> {cfg.out_dir}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# resource
# ---------------------------------------------------------------------------


def cmd_resource(cfg: ScenarioConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    rep = resource_report(cfg.program.steps, cfg.program.cv_level)
    obj = {
        "plain_reversible_ancillas": rep.plain_reversible_ancillas,
        "cv_scheme_qubits": rep.cv_scheme_qubits,
        "cv_final_level": rep.cv_final_level,
        "joint_cells": rep.joint_cells,
    }
    write_json(os.path.join(cfg.out_dir, "resource_report.json"), obj)
    print(json_dumps(obj))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

_HANDLERS = {
    "erase-demo": cmd_erase_demo,
    "validate": cmd_validate,
    "processor": cmd_processor,
    "resource": cmd_resource,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvhistory",
        description="Simulate erasing ancilla qubits into one continuous history variable.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run the {kind} scenario")
        p.add_argument("scenario", help="path to the scenario JSON file")
        p.add_argument("--backend", choices=("dyadic", "grid"), default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--max-level", type=int, default=None)
        p.add_argument("--out-dir", default=None)
        p.add_argument("--tolerance", type=float, default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_scenario(args.scenario, args.command, args)
        return _HANDLERS[args.command](cfg)
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
