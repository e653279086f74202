"""Deployment geometry and the wireless link between antennas and receiver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

C_LIGHT = 299_792_458.0  # m/s


def wavelength(frequency_hz: float) -> float:
    if frequency_hz <= 0:
        raise ValueError(f"frequency must be > 0, got {frequency_hz}")
    return C_LIGHT / frequency_hz


@dataclass(frozen=True)
class Geometry:
    """Waveguide transverse coordinates, receiver position and guide length bound."""

    y_g: float
    z_g: float
    receiver: tuple[float, float, float]
    x_max: float

    def __post_init__(self):
        if self.x_max <= 0:
            raise ValueError(f"x_max must be > 0, got {self.x_max}")
        if self.xi <= 0:
            raise ValueError("receiver lies on the waveguide axis (xi = 0)")

    @property
    def xi(self) -> float:
        """Squared transverse offset between guide axis and receiver."""
        _, y_r, z_r = self.receiver
        return (self.y_g - y_r) ** 2 + (self.z_g - z_r) ** 2

    @property
    def x_r(self) -> float:
        return self.receiver[0]


@dataclass(frozen=True)
class FreeSpace:
    """Spherical-spreading amplitude lambda / (4 pi d)."""

    def amplitude(self, d, lam: float):
        return lam / (4.0 * np.pi * d)


@dataclass(frozen=True)
class PowerLaw:
    """Reference-distance pathloss: |h|^2 = c0 * (d / d0)^-alpha."""

    c0: float
    d0: float
    alpha: float

    def __post_init__(self):
        if self.c0 <= 0 or self.d0 <= 0 or self.alpha <= 0:
            raise ValueError("c0, d0 and alpha must all be > 0")

    def amplitude(self, d, lam: float):
        return np.sqrt(self.c0) * (d / self.d0) ** (-self.alpha / 2.0)


PathlossModel = FreeSpace | PowerLaw


def pa_abscissas(segment_lengths) -> np.ndarray:
    """Prefix sums of the feed-side segment lengths x_0..x_{N-1}."""
    x = np.asarray(segment_lengths, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("segment_lengths must be a nonempty 1-D sequence")
    if (x < 0).any():
        raise ValueError("segment lengths must be >= 0")
    return np.cumsum(x)


def distance(s_n, geom: Geometry):
    """Euclidean distance from a PA at abscissa ``s_n`` to the receiver."""
    s_n = np.asarray(s_n, dtype=float)
    return np.sqrt((s_n - geom.x_r) ** 2 + geom.xi)


def channel_vector(s, geom: Geometry, lam: float, model: PathlossModel) -> np.ndarray:
    """Complex link coefficients for PAs at abscissas ``s``.

    The phase convention is ``exp(-2j pi d / lam)`` for both pathloss models;
    only the amplitude law differs.
    """
    if lam <= 0:
        raise ValueError(f"lam must be > 0, got {lam}")
    d = distance(np.atleast_1d(s), geom)
    return model.amplitude(d, lam) * np.exp(-2j * np.pi * d / lam)


@dataclass(frozen=True)
class ChannelState:
    """Wireless scattering description plus the three load reflections.

    ``h_tt`` collects self/mutual reflection among the radiation ports and is
    zero in the matched configuration, as are ``h_rr`` and the load gammas.
    """

    h_tr: np.ndarray
    h_tt: np.ndarray
    h_rr: complex = 0.0
    gamma_t: complex = 0.0
    gamma_r: complex = 0.0
    gamma_l: complex = 0.0

    def __post_init__(self):
        h = np.atleast_1d(np.asarray(self.h_tr, dtype=complex))
        object.__setattr__(self, "h_tr", h)
        m = np.asarray(self.h_tt, dtype=complex)
        if m.shape != (h.size, h.size):
            raise ValueError(f"h_tt must be {h.size}x{h.size}, got {m.shape}")
        object.__setattr__(self, "h_tt", m)
        for name in ("gamma_t", "gamma_r", "gamma_l"):
            if abs(complex(getattr(self, name))) > 1.0 + 1e-12:
                raise ValueError(f"|{name}| must be <= 1")

    @classmethod
    def matched(cls, h_tr) -> "ChannelState":
        h = np.atleast_1d(np.asarray(h_tr, dtype=complex))
        return cls(h_tr=h, h_tt=np.zeros((h.size, h.size), dtype=complex))

    @property
    def is_matched(self) -> bool:
        return (
            self.h_rr == 0
            and self.gamma_t == 0
            and self.gamma_r == 0
            and self.gamma_l == 0
            and not np.abs(self.h_tt).max()
        )
