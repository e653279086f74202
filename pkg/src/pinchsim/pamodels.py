"""Per-antenna scattering models: full ideal, matched ideal and coupler-based.

The coupler-based PA has a single tuning knob, the coupling coefficient
``kappa``; its electrical coupling length ``varphi`` is fixed per experiment.
``varphi = pi/2`` gives amplitude-only control; any other value trades a
bounded phase span against amplitude range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import netcore

# kappa = 1 is excluded (open interval); clamp just below it for numerical safety.
KAPPA_MAX = 1.0 - 1e-9


@dataclass(frozen=True)
class DCParams:
    """Coupling coefficient and electrical coupling length of one coupler PA."""

    kappa: float
    varphi: float

    def __post_init__(self):
        if not 0.0 <= self.kappa < 1.0:
            raise ValueError(f"kappa must be in [0, 1), got {self.kappa}")
        if not 0.0 < self.varphi < math.pi:
            raise ValueError(f"varphi must be in (0, pi), got {self.varphi}")


def dc_coefficients(p: DCParams) -> tuple[complex, complex]:
    """Through and radiated coefficients of a matched coupler PA.

    Both share the denominator ``sqrt(1-k^2) cos(phi) + j sin(phi)``, so their
    squared magnitudes sum to one for every valid parameter pair.
    """
    root = math.sqrt(1.0 - p.kappa**2)
    den = root * math.cos(p.varphi) + 1j * math.sin(p.varphi)
    theta1 = root / den
    theta2 = 1j * p.kappa * math.sin(p.varphi) / den
    return theta1, theta2


def matched_three_port(theta1: complex, theta2: complex) -> np.ndarray:
    """Symmetric zero-diagonal 3-port from a (through, radiated) pair."""
    return np.array(
        [
            [0.0, theta1, theta2],
            [theta1, 0.0, 0.0],
            [theta2, 0.0, 0.0],
        ],
        dtype=complex,
    )


def dc_three_port(p: DCParams) -> np.ndarray:
    """3x3 scattering matrix of a coupler PA (dummy port already dropped)."""
    theta1, theta2 = dc_coefficients(p)
    return matched_three_port(theta1, theta2)


def dc_amp_phase(p: DCParams) -> tuple[float, float, float, float]:
    """Closed-form (|theta1|, |theta2|, angle(theta1), angle(theta2)).

    Angles are true complex arguments in (-pi, pi]; the radiated one always
    leads the through one by exactly pi/2.
    """
    k2 = p.kappa**2
    denom = 1.0 - k2 * math.cos(p.varphi) ** 2
    amp1 = math.sqrt((1.0 - k2) / denom)
    amp2 = math.sqrt(k2 * math.sin(p.varphi) ** 2 / denom)
    ph2 = math.pi / 2.0 - math.atan2(
        math.sin(p.varphi), math.sqrt(1.0 - k2) * math.cos(p.varphi)
    )
    ph1 = ph2 - math.pi / 2.0
    return amp1, amp2, ph1, ph2


def acpc_phase_span(varphi: float) -> tuple[float, tuple[float, float]]:
    """Tunable span of the radiated-port phase and its signed interval.

    For ``varphi < pi/2`` the phase sweeps (0, pi/2 - varphi] as kappa goes
    from 1 to 0; for ``varphi > pi/2`` it sweeps [pi/2 - varphi, 0).
    """
    if not 0.0 < varphi < math.pi:
        raise ValueError(f"varphi must be in (0, pi), got {varphi}")
    edge = math.pi / 2.0 - varphi
    span = abs(edge)
    if edge >= 0.0:
        return span, (0.0, edge)
    return span, (edge, 0.0)


def coupling_from_mode_impedances(
    z0e: float, z0o: float, z0: float
) -> tuple[float, bool]:
    """Coupling coefficient from even/odd mode impedances, plus the match test.

    All ports of the coupler are reflection-free exactly when
    ``z0e * z0o == z0**2``.
    """
    if z0e <= 0 or z0o <= 0 or z0 <= 0:
        raise ValueError("impedances must be > 0")
    if z0e < z0o:
        raise ValueError(f"z0e must be >= z0o, got {z0e} < {z0o}")
    kappa = (z0e - z0o) / (z0e + z0o)
    matched = abs(z0e * z0o - z0**2) <= 1e-9 * z0**2
    return kappa, matched


def equal_power_coupling(n: int) -> np.ndarray:
    """Coupling profile that radiates 1/N of the input power from each PA.

    Assumes amplitude-only control (varphi = pi/2), where the radiated
    amplitude is kappa itself.  The last coefficient would be exactly 1 and is
    clamped to KAPPA_MAX.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    idx = np.arange(1, n + 1)
    kappas = np.sqrt(1.0 / (n - idx + 1))
    return np.minimum(kappas, KAPPA_MAX)


@dataclass(frozen=True)
class MatchedIdealPA:
    """Freely tunable matched PA: a (through, radiated) coefficient pair."""

    theta1: complex
    theta2: complex

    def __post_init__(self):
        total = abs(self.theta1) ** 2 + abs(self.theta2) ** 2
        if total > 1.0 + 1e-12:
            raise ValueError(f"|theta1|^2 + |theta2|^2 = {total} exceeds 1")

    def three_port(self) -> np.ndarray:
        return matched_three_port(self.theta1, self.theta2)


@dataclass(frozen=True)
class FullIdealPA:
    """Arbitrary passive 3-port; only the energy-conservation bound applies."""

    theta: np.ndarray

    def __post_init__(self):
        theta = netcore.as_cmatrix(self.theta, "theta")
        if theta.shape != (3, 3):
            raise ValueError(f"theta must be 3x3, got {theta.shape}")
        object.__setattr__(self, "theta", theta)
        sigma = netcore.spectral_norm(theta)
        if sigma > 1.0 + 1e-10:
            raise ValueError(f"largest singular value {sigma} exceeds 1")
