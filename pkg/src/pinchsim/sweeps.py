"""Experiment runners behind the CLI: gain sweeps, coupling sweeps, mismatch study.

All runners return plain row dictionaries with pre-formatted string values
(17 significant digits, round-trip exact) so CSV output is byte-stable.
"""

from __future__ import annotations

import math
import time
from typing import TextIO

import numpy as np

from .channel import ChannelState
from .config import ExperimentConfig
from .errors import (
    DegenerateChannelError,
    InfeasibleSpacingError,
    SingularMatrixError,
)
from .optimize import (
    Solution,
    baseline_solve,
    dc_alternating_solve,
    ideal_optimal_positions,
    ideal_solve,
)
from .pamodels import DCParams, dc_amp_phase, dc_three_port
from .system import SystemLayout, channel_gain, e2e_multi_general, e2e_multi_matched

GAIN_COLUMNS = (
    "model",
    "N",
    "dx_min",
    "position_mode",
    "gain_linear",
    "gain_db",
    "positions",
    "params",
    "restarts_used",
    "seed",
    "wall_ms",
    "error",
)

KAPPA_COLUMNS = ("kappa", "amp1", "amp2", "phase1_deg", "phase2_deg")

MISMATCH_COLUMNS = (
    "N",
    "gamma_T",
    "gamma_R",
    "gamma_L",
    "h_RR",
    "h_TT",
    "gain_general",
    "gain_matched",
    "ratio",
    "flag",
    "error",
)

_SOLVER_ERRORS = (
    InfeasibleSpacingError,
    DegenerateChannelError,
    SingularMatrixError,
    ZeroDivisionError,
)


def fmt(value: float) -> str:
    return f"{value:.17g}"


def _describe_error(err: Exception) -> str:
    # Commas would break the unquoted CSV cells.
    return f"{type(err).__name__}: {err}".replace(",", ";")


def _gain_db(gain: float) -> float:
    return 10.0 * math.log10(gain) if gain > 0.0 else float("-inf")


def _format_params(solution: Solution) -> str:
    params = solution.params
    if isinstance(params, np.ndarray):
        return ";".join(fmt(float(k)) for k in params)
    return ";".join(f"{pa.theta1:.17g}/{pa.theta2:.17g}" for pa in params)


def _solve(model: str, cfg: ExperimentConfig, n: int) -> Solution:
    spec = cfg.problem_spec(n)
    if model == "ideal":
        return ideal_solve(spec)
    if model == "dc":
        return dc_alternating_solve(spec, restarts=cfg.restarts, seed=cfg.seed)
    if model == "baseline":
        return baseline_solve(spec)
    raise ValueError(f"unknown model {model!r}")


def run_gain_sweep(cfg: ExperimentConfig) -> list[dict[str, str]]:
    """One row per (model, N); solver errors land in the row's error column."""
    rows = []
    for model in cfg.models:
        for n in cfg.n_list:
            start = time.perf_counter()
            row = {
                "model": model,
                "N": str(n),
                "dx_min": fmt(cfg.dx_min),
                "position_mode": cfg.position_mode,
                "gain_linear": "",
                "gain_db": "",
                "positions": "",
                "params": "",
                "restarts_used": "",
                "seed": str(cfg.seed),
                "wall_ms": "",
                "error": "",
            }
            try:
                sol = _solve(model, cfg, n)
                row["gain_linear"] = fmt(sol.gain)
                row["gain_db"] = fmt(_gain_db(sol.gain))
                row["positions"] = ";".join(fmt(float(x)) for x in sol.s)
                row["params"] = _format_params(sol)
                row["restarts_used"] = str(sol.restarts_used)
            except _SOLVER_ERRORS as err:
                row["error"] = _describe_error(err)
            row["wall_ms"] = f"{(time.perf_counter() - start) * 1e3:.3f}"
            rows.append(row)
    return rows


def run_kappa_sweep(varphi: float, grid: int) -> list[dict[str, str]]:
    """Amplitude/phase curves of the coupler coefficients on a kappa grid."""
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    rows = []
    for kappa in np.linspace(0.0, 1.0 - 1e-9, grid):
        amp1, amp2, ph1, ph2 = dc_amp_phase(DCParams(float(kappa), varphi))
        rows.append(
            {
                "kappa": fmt(float(kappa)),
                "amp1": fmt(amp1),
                "amp2": fmt(amp2),
                "phase1_deg": fmt(math.degrees(ph1)),
                "phase2_deg": fmt(math.degrees(ph2)),
            }
        )
    return rows


def run_mismatch_study(cfg: ExperimentConfig) -> list[dict[str, str]]:
    """General vs matched evaluation at fixed PA configurations.

    Uses a uniform mid-range coupling (kappa = 0.5) on the rigid-block
    placement for each N, so power reaches every interface including the
    termination; the mismatch terms come from the config (gamma_t/r/l, h_rr,
    and a uniform diagonal h_tt).
    """
    rows = []
    geom = cfg.geometry()
    model = cfg.pathloss_model()
    pathological = any(
        abs(g) >= 1.0 - 1e-12 for g in (cfg.gamma_t, cfg.gamma_r, cfg.gamma_l)
    )
    for n in cfg.n_list:
        row = {
            "N": str(n),
            "gamma_T": f"{cfg.gamma_t:.17g}",
            "gamma_R": f"{cfg.gamma_r:.17g}",
            "gamma_L": f"{cfg.gamma_l:.17g}",
            "h_RR": f"{cfg.h_rr:.17g}",
            "h_TT": f"{cfg.h_tt:.17g}",
            "gain_general": "",
            "gain_matched": "",
            "ratio": "",
            "flag": "pathological" if pathological else "",
            "error": "",
        }
        try:
            spec = cfg.problem_spec(n)
            s = ideal_optimal_positions(spec)
            kappas = np.full(n, 0.5)
            pas = [dc_three_port(DCParams(float(k), cfg.varphi)) for k in kappas]
            layout = SystemLayout.from_abscissas(s, geom, cfg.lam, model, cfg.beta_g)
            h = layout.channel()
            matched_gain = channel_gain(e2e_multi_matched(pas, layout, h))
            ch = ChannelState(
                h_tr=h,
                h_tt=cfg.h_tt * np.eye(n, dtype=complex),
                h_rr=cfg.h_rr,
                gamma_t=cfg.gamma_t,
                gamma_r=cfg.gamma_r,
                gamma_l=cfg.gamma_l,
            )
            general_gain = channel_gain(e2e_multi_general(pas, layout, ch))
            row["gain_general"] = fmt(general_gain)
            row["gain_matched"] = fmt(matched_gain)
            ratio = general_gain / matched_gain if matched_gain > 0 else float("inf")
            row["ratio"] = fmt(ratio)
        except _SOLVER_ERRORS as err:
            row["error"] = _describe_error(err)
        rows.append(row)
    return rows


def write_csv(
    stream: TextIO,
    columns: tuple[str, ...],
    rows: list[dict[str, str]],
    header_comments: list[str],
) -> None:
    """UTF-8 / LF writer with ``#`` comment lines before the column header."""
    for comment in header_comments:
        stream.write(f"# {comment}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(row[c] for c in columns) + "\n")


def read_csv_text(text: str) -> tuple[list[str], list[dict[str, str]]]:
    """Parse the writer's output back into (columns, rows), skipping comments."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    if not lines:
        return [], []
    columns = lines[0].split(",")
    rows = [dict(zip(columns, ln.split(","))) for ln in lines[1:]]
    return columns, rows
