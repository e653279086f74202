"""End-to-end transmit-to-receive voltage ratios and channel gain.

Three evaluation routes exist for the same physics: the fully general
mismatched solve, the matched simplification that reads the cascade matrix
directly, and the O(N) chain formula valid for matched zero-diagonal PAs.
They agree to solver tolerance and the test suite leans on that redundancy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import netcore
from .channel import ChannelState, Geometry, PathlossModel, channel_vector, pa_abscissas

_DENOM_FLOOR = 1e-300


@dataclass(frozen=True)
class SystemLayout:
    """Guide propagation constant plus the N+1 segment lengths x_0..x_N."""

    beta_g: float
    segments: np.ndarray
    geom: Geometry
    lam: float
    model: PathlossModel

    def __post_init__(self):
        seg = np.asarray(self.segments, dtype=float)
        if seg.ndim != 1 or seg.size < 2:
            raise ValueError("segments must hold x_0..x_N (at least two entries)")
        if (seg < 0).any():
            raise ValueError("segment lengths must be >= 0")
        if seg.sum() > self.geom.x_max + 1e-9:
            raise ValueError(
                f"segments sum to {seg.sum()} which exceeds x_max={self.geom.x_max}"
            )
        object.__setattr__(self, "segments", seg)

    @property
    def n_pas(self) -> int:
        return self.segments.size - 1

    def abscissas(self) -> np.ndarray:
        return pa_abscissas(self.segments[:-1])

    def channel(self) -> np.ndarray:
        return channel_vector(self.abscissas(), self.geom, self.lam, self.model)

    @classmethod
    def from_abscissas(
        cls,
        s,
        geom: Geometry,
        lam: float,
        model: PathlossModel,
        beta_g: float,
    ) -> "SystemLayout":
        """Build segments from PA x-coordinates; the tail runs to x_max."""
        s = np.asarray(s, dtype=float)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("need at least one abscissa")
        if (np.diff(s) < 0).any():
            raise ValueError("abscissas must be nondecreasing")
        if s[0] < 0 or s[-1] > geom.x_max:
            raise ValueError("abscissas must lie within [0, x_max]")
        segments = np.concatenate(([s[0]], np.diff(s), [geom.x_max - s[-1]]))
        return cls(beta_g=beta_g, segments=segments, geom=geom, lam=lam, model=model)


@dataclass(frozen=True)
class GainResult:
    ratio: complex
    gain: float

    @classmethod
    def from_ratio(cls, ratio: complex) -> "GainResult":
        return cls(ratio=complex(ratio), gain=abs(complex(ratio)) ** 2)


def channel_gain(coefficient: complex) -> float:
    """Squared magnitude of an end-to-end voltage coefficient."""
    return abs(complex(coefficient)) ** 2


def _rx_load_factor(ch: ChannelState) -> complex:
    den = 1.0 - complex(ch.h_rr) * complex(ch.gamma_r)
    if abs(den) < _DENOM_FLOOR:
        raise ZeroDivisionError("receiver load loop 1 - h_RR*Gamma_R is zero")
    return den


def e2e_single_general(
    theta: np.ndarray,
    ch: ChannelState,
    x0: float,
    x1: float,
    beta_g: float,
) -> complex:
    """Voltage ratio through one PA including all impedance mismatches."""
    theta = netcore.as_cmatrix(theta, "theta")
    if theta.shape != (3, 3):
        raise ValueError(f"theta must be 3x3, got {theta.shape}")
    if ch.h_tr.size != 1:
        raise ValueError("single-PA evaluator needs a length-1 channel")

    h_tr = complex(ch.h_tr[0])
    h_tt = complex(ch.h_tt[0, 0])
    rx = _rx_load_factor(ch)
    gamma = np.diag(
        [
            np.exp(-2j * beta_g * x0) * complex(ch.gamma_t),
            np.exp(-2j * beta_g * x1) * complex(ch.gamma_l),
            h_tt + h_tr**2 * complex(ch.gamma_r) / rx,
        ]
    ).astype(complex)

    e1 = np.zeros((3, 1), dtype=complex)
    e1[0, 0] = 1.0
    x = netcore.solve_linear(np.eye(3, dtype=complex) - gamma @ theta, e1)
    tx = theta @ x
    num = np.exp(-1j * beta_g * x0) * (1.0 + complex(ch.gamma_r)) * h_tr * tx[2, 0]
    den = rx * (x[0, 0] + np.exp(-2j * beta_g * x0) * tx[0, 0])
    if abs(den) < _DENOM_FLOOR:
        raise ZeroDivisionError("transmit voltage denominator is zero")
    return complex(num / den)


def build_sigma(ch: ChannelState, x0: float, x_n: float, beta_g: float) -> np.ndarray:
    """Boundary reflection matrix seen by the (N+2)-port cascade."""
    n = ch.h_tr.size
    rx = _rx_load_factor(ch)
    sigma = np.zeros((n + 2, n + 2), dtype=complex)
    sigma[0, 0] = np.exp(-2j * beta_g * x0) * complex(ch.gamma_t)
    sigma[-1, -1] = np.exp(-2j * beta_g * x_n) * complex(ch.gamma_l)
    sigma[1:-1, 1:-1] = ch.h_tt + np.outer(ch.h_tr, ch.h_tr) * complex(ch.gamma_r) / rx
    return sigma


def e2e_multi_general(
    pas: Sequence[np.ndarray],
    layout: SystemLayout,
    ch: ChannelState,
) -> complex:
    """Voltage ratio of the full N-PA cascade with mismatch terms."""
    n = layout.n_pas
    if len(pas) != n or ch.h_tr.size != n:
        raise ValueError(
            f"layout has {n} PAs but got {len(pas)} matrices and "
            f"{ch.h_tr.size} channel entries"
        )
    seg = layout.segments
    phi = netcore.cascade_external(pas, seg[1:n], layout.beta_g)
    sigma = build_sigma(ch, seg[0], seg[-1], layout.beta_g)
    rx = _rx_load_factor(ch)

    u1 = np.zeros((n + 2, 1), dtype=complex)
    u1[0, 0] = 1.0
    x = netcore.solve_linear(np.eye(n + 2, dtype=complex) - sigma @ phi, u1)
    phix = phi @ x
    g_tr = np.zeros(n + 2, dtype=complex)
    g_tr[1:-1] = ch.h_tr
    num = (
        np.exp(-1j * layout.beta_g * seg[0])
        * (1.0 + complex(ch.gamma_r))
        * (g_tr @ phix[:, 0])
        / rx
    )
    den = x[0, 0] + np.exp(-2j * layout.beta_g * seg[0]) * phix[0, 0]
    if abs(den) < _DENOM_FLOOR:
        raise ZeroDivisionError("transmit voltage denominator is zero")
    return complex(num / den)


def e2e_multi_matched(
    pas: Sequence[np.ndarray],
    layout: SystemLayout,
    h_tr,
) -> complex:
    """Matched-boundary voltage ratio read off the cascade matrix.

    Valid when all load reflections, mutual coupling and receiver reflection
    are zero; the PAs themselves may still reflect (that shows up in the
    cascade's own (1,1) entry).
    """
    n = layout.n_pas
    h = np.atleast_1d(np.asarray(h_tr, dtype=complex))
    if len(pas) != n or h.size != n:
        raise ValueError("PA count, layout and channel length disagree")
    seg = layout.segments
    phi = netcore.cascade_external(pas, seg[1:n], layout.beta_g)
    phi_t = phi[1:-1, 0]
    phi_r = phi[0, 0]
    den = 1.0 + np.exp(-2j * layout.beta_g * seg[0]) * phi_r
    if abs(den) < _DENOM_FLOOR:
        raise ZeroDivisionError("feed reflection denominator is zero")
    return complex(np.exp(-1j * layout.beta_g * seg[0]) * (h @ phi_t) / den)


def dc_transfer_pairs(kappas, varphi: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (through, radiated) coefficients for a kappa profile."""
    k = np.asarray(kappas, dtype=float)
    root = np.sqrt(1.0 - k**2)
    den = root * np.cos(varphi) + 1j * np.sin(varphi)
    return root / den, 1j * k * np.sin(varphi) / den


def dc_chain_coefficient(kappas, beta_g: float, s, h_tr, varphi: float) -> complex:
    """O(N) unidirectional chain sum for matched coupler PAs at abscissas ``s``."""
    theta1, theta2 = dc_transfer_pairs(kappas, varphi)
    prefix = np.concatenate(([1.0 + 0j], np.cumprod(theta1[:-1])))
    h = np.atleast_1d(np.asarray(h_tr, dtype=complex))
    return complex(np.sum(h * theta2 * prefix * np.exp(-1j * beta_g * np.asarray(s))))


def dc_chain_gain(kappas, layout: SystemLayout, h_tr, varphi: float) -> complex:
    """Chain coefficient for a layout; pair with :func:`channel_gain` for power."""
    k = np.asarray(kappas, dtype=float)
    if k.size != layout.n_pas:
        raise ValueError(f"expected {layout.n_pas} kappas, got {k.size}")
    if (k < 0).any() or (k >= 1.0).any():
        raise ValueError("kappas must lie in [0, 1)")
    if not 0.0 < varphi < np.pi:
        raise ValueError(f"varphi must be in (0, pi), got {varphi}")
    return dc_chain_coefficient(k, layout.beta_g, layout.abscissas(), h_tr, varphi)


def matched_chain_coefficient(pairs, beta_g: float, s, h_tr) -> complex:
    """Chain sum for explicit (theta1, theta2) pairs, e.g. ideal matched PAs."""
    theta1 = np.array([p[0] for p in pairs], dtype=complex)
    theta2 = np.array([p[1] for p in pairs], dtype=complex)
    prefix = np.concatenate(([1.0 + 0j], np.cumprod(theta1[:-1])))
    h = np.atleast_1d(np.asarray(h_tr, dtype=complex))
    return complex(np.sum(h * theta2 * prefix * np.exp(-1j * beta_g * np.asarray(s))))
