"""Dense complex scattering primitives and the multiport cascade reduction.

Everything here operates on plain ``numpy`` complex matrices.  Port counts stay
small (a few hundred at most), so the solver is a direct partial-pivot
elimination and the spectral norm comes from power iteration rather than a
full SVD.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonConvergenceError, SingularMatrixError

# Pivot threshold, relative to the largest entry of the original system.
_PIVOT_RTOL = 1e-14


def as_cmatrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array and reject non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {a.shape}")
    if a.size and not np.isfinite(a).all():
        raise ValueError(f"{name} contains NaN or Inf entries")
    return a


def solve_linear(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting.

    Raises:
        SingularMatrixError: if a pivot falls below ``1e-14`` times the
            largest entry magnitude of the original matrix.
    """
    a = as_cmatrix(a, "a")
    b = as_cmatrix(b, "b")
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"a must be square, got {a.shape}")
    if b.shape[0] != n:
        raise ValueError(f"b has {b.shape[0]} rows, expected {n}")
    if n == 0:
        return b.copy()

    u = a.copy()
    x = b.copy()
    floor = _PIVOT_RTOL * np.abs(u).max()

    for k in range(n):
        p = k + int(np.argmax(np.abs(u[k:, k])))
        if np.abs(u[p, k]) <= floor:
            raise SingularMatrixError(
                f"pivot {np.abs(u[p, k]):.3e} below threshold {floor:.3e} "
                f"at elimination step {k}"
            )
        if p != k:
            u[[k, p]] = u[[p, k]]
            x[[k, p]] = x[[p, k]]
        factors = u[k + 1:, k] / u[k, k]
        u[k + 1:, k:] -= factors[:, None] * u[k, k:]
        x[k + 1:, :] -= factors[:, None] * x[k, :]

    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - u[k, k + 1:] @ x[k + 1:]) / u[k, k]
    return x


def waveguide_scattering(length: float, beta_g: float) -> np.ndarray:
    """Two-port of a lossless guide segment: pure through with phase delay."""
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    if beta_g <= 0:
        raise ValueError(f"beta_g must be > 0, got {beta_g}")
    t = np.exp(-1j * beta_g * length)
    return np.array([[0.0, t], [t, 0.0]], dtype=complex)


def impedance_to_scattering(z, z0: float) -> np.ndarray:
    """Convert an impedance matrix to scattering: (Z + Z0 I)^-1 (Z - Z0 I)."""
    z = as_cmatrix(z, "z")
    if z.shape[0] != z.shape[1]:
        raise ValueError(f"z must be square, got {z.shape}")
    if z0 <= 0:
        raise ValueError(f"z0 must be > 0, got {z0}")
    eye = np.eye(z.shape[0], dtype=complex)
    return solve_linear(z + z0 * eye, z - z0 * eye)


def spectral_norm(theta, rel_tol: float = 1e-12, max_iter: int = 10000) -> float:
    """Largest singular value via power iteration on ``theta^H theta``."""
    theta = as_cmatrix(theta, "theta")
    a = theta.conj().T @ theta
    n = a.shape[0]
    if n == 0 or not np.abs(a).max():
        return 0.0

    # Deterministic start with support on every axis.
    v = np.linspace(1.0, 2.0, n).astype(complex)
    v /= np.linalg.norm(v)
    est = float(np.real(v.conj() @ a @ v))
    for _ in range(max_iter):
        w = a @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        new_est = float(np.real(v.conj() @ a @ v))
        if abs(new_est - est) <= rel_tol * max(abs(new_est), 1e-300):
            return float(np.sqrt(max(new_est, 0.0)))
        est = new_est
    raise NonConvergenceError(
        f"power iteration did not converge in {max_iter} iterations"
    )


def check_energy_conservation(theta, tol: float) -> tuple[bool, float]:
    """Test passivity: largest singular value of ``theta`` at most ``1 + tol``."""
    sigma = spectral_norm(theta)
    return sigma <= 1.0 + tol, sigma


@dataclass(frozen=True)
class PortPartition:
    """External/internal flat-port indices of the stacked 3N-port system.

    External order is [port 1 of PA 1, port 3 of PA 1, ..., port 3 of PA N,
    port 2 of PA N]; internal order is [port 2 of PA 1, port 1 of PA 2,
    port 2 of PA 2, ..., port 1 of PA N].
    """

    external: tuple[int, ...]
    internal: tuple[int, ...]


def port_partition(n_pas: int) -> PortPartition:
    if n_pas < 1:
        raise ValueError(f"need at least one PA, got {n_pas}")
    external = [0, 2]
    for k in range(1, n_pas):
        external.append(3 * k + 2)
    external.append(3 * (n_pas - 1) + 1)
    internal = []
    if n_pas > 1:
        internal.append(1)
        for k in range(1, n_pas - 1):
            internal.extend((3 * k, 3 * k + 1))
        internal.append(3 * (n_pas - 1))
    return PortPartition(tuple(external), tuple(internal))


def cascade_external(
    pa_matrices: Sequence[np.ndarray],
    segment_lengths: Sequence[float],
    beta_g: float,
) -> np.ndarray:
    """Reduce N cascaded 3-port PAs to the (N+2)-port external scattering matrix.

    ``segment_lengths`` are the N-1 guide lengths between consecutive PAs.
    The internal ports are eliminated through
    ``S_EE + S_EI (I - T_I S_II)^-1 T_I S_IE``.

    Raises:
        SingularMatrixError: when ``I - T_I S_II`` is singular, which signals a
            lossless resonant loop in the given configuration.
    """
    n = len(pa_matrices)
    if n < 1:
        raise ValueError("need at least one PA")
    if len(segment_lengths) != n - 1:
        raise ValueError(
            f"expected {n - 1} segment lengths for {n} PAs, got {len(segment_lengths)}"
        )
    pas = [as_cmatrix(p, f"pa_matrices[{i}]") for i, p in enumerate(pa_matrices)]
    for i, p in enumerate(pas):
        if p.shape != (3, 3):
            raise ValueError(f"pa_matrices[{i}] must be 3x3, got {p.shape}")

    part = port_partition(n)
    if n == 1:
        # No internal ports: just reorder to (port 1, port 3, port 2).
        perm = np.array(part.external)
        return pas[0][np.ix_(perm, perm)]

    s = np.zeros((3 * n, 3 * n), dtype=complex)
    for i, p in enumerate(pas):
        s[3 * i:3 * i + 3, 3 * i:3 * i + 3] = p

    ext = np.array(part.external)
    itl = np.array(part.internal)
    s_ee = s[np.ix_(ext, ext)]
    s_ei = s[np.ix_(ext, itl)]
    s_ie = s[np.ix_(itl, ext)]
    s_ii = s[np.ix_(itl, itl)]

    m = 2 * (n - 1)
    t_i = np.zeros((m, m), dtype=complex)
    for i, x in enumerate(segment_lengths):
        if x <= 0:
            raise ValueError(f"segment_lengths[{i}] must be > 0, got {x}")
        t_i[2 * i:2 * i + 2, 2 * i:2 * i + 2] = waveguide_scattering(x, beta_g)

    try:
        inner = solve_linear(np.eye(m, dtype=complex) - t_i @ s_ii, t_i @ s_ie)
    except SingularMatrixError as err:
        raise SingularMatrixError(
            f"I - T_I S_II singular for N={n}, segments={list(segment_lengths)}: {err}"
        ) from err
    return s_ee + s_ei @ inner
