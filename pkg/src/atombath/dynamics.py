"""Open dynamics of the moving qubit and its inert partner.

The moving two-level system relaxes under a thermal Lindblad generator
while a second, auxiliary qubit evolves trivially; entanglement between
the two degrades only through the local bath.  States are plain 4x4
complex arrays in the product basis ``|m a>`` with ``m`` the moving
qubit.  The Pauli expansion coefficients

    u[i, j] = Tr[rho (sigma_i x sigma_j)] / 4

(a real 4x4 tensor with ``u[0, 0] = 1/4``) diagonalize the generator up
to a single rotation, so the evolution has a closed form against which
the numeric integrator is checked.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .coefficients import LindbladCoefficients

__all__ = [
    "PAULI",
    "PAULI_PAIR",
    "PositivityWarning",
    "check_density_matrix",
    "check_bloch_tensor",
    "bloch_from_density",
    "density_from_bloch",
    "bell_state",
    "partial_trace",
    "gksl_generator",
    "evolve_closed_form",
    "evolve_numeric",
    "default_rk4_step",
    "shared_state",
]

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)

PAULI_PAIR = tuple(
    tuple(np.kron(PAULI[i], PAULI[j]) for j in range(4)) for i in range(4)
)

_SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)

# jump operators act on the moving qubit only
_L_DOWN = np.kron(_SIGMA_MINUS, _I2)
_L_UP = _L_DOWN.conj().T
_N_DOWN = _L_UP @ _L_DOWN  # projector on the excited moving qubit
_N_UP = _L_DOWN @ _L_UP
_SZ = np.kron(PAULI[3], _I2)


class PositivityWarning(UserWarning):
    """Numerically evolved state acquired a noticeably negative eigenvalue."""


def check_density_matrix(
    rho: np.ndarray,
    herm_tol: float = 1e-12,
    trace_tol: float = 1e-12,
    psd_tol: float = 1e-10,
) -> np.ndarray:
    """Validate a two-qubit density matrix and return it as complex ndarray.

    Hermiticity and unit trace are enforced at ``herm_tol`` and
    ``trace_tol``; eigenvalues may dip to ``-psd_tol`` before the state
    is rejected, which leaves room for the roundoff floor of evolved
    states.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"matrix is not Hermitian: max deviation {herm:.3e}")
    tr = rho.trace()
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace must be 1, got {tr!r}")
    low = np.linalg.eigvalsh(rho).min()
    if low < -psd_tol:
        raise ValueError(f"matrix has negative eigenvalue {low:.3e}")
    return rho


def check_bloch_tensor(u: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Validate a Pauli-expansion tensor and return it as float ndarray."""
    u = np.asarray(u, dtype=float)
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 tensor, got shape {u.shape}")
    if abs(u[0, 0] - 0.25) > 1e-12:
        raise ValueError(f"normalization component must be 1/4, got {u[0, 0]!r}")
    big = np.max(np.abs(u))
    if big > 0.25 + tol:
        raise ValueError(f"components cannot exceed 1/4, found {big!r}")
    return u


def bloch_from_density(rho: np.ndarray) -> np.ndarray:
    """Pauli expansion coefficients ``Tr[rho (sigma_i x sigma_j)]/4`` of a state."""
    rho = check_density_matrix(rho)
    u = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            u[i, j] = np.trace(rho @ PAULI_PAIR[i][j]).real / 4.0
    return u


def density_from_bloch(u: np.ndarray) -> np.ndarray:
    """Reassemble ``sum_ij u[i,j] sigma_i x sigma_j`` from its coefficients."""
    u = check_bloch_tensor(u)
    rho = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            rho += u[i, j] * PAULI_PAIR[i][j]
    return rho


def bell_state() -> np.ndarray:
    """Maximally entangled pair ``(|00> + |11>)/sqrt(2)`` as a density matrix."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / math.sqrt(2.0)
    return np.outer(psi, psi.conj())


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduced state of one qubit; ``keep=0`` the moving one, ``keep=1`` the partner."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ijkj->ik", r)
    if keep == 1:
        return np.einsum("ijil->jl", r)
    raise ValueError(f"keep must be 0 or 1, got {keep!r}")


def gksl_generator(rho: np.ndarray, coeffs: LindbladCoefficients) -> np.ndarray:
    """Right-hand side of the master equation.

    Coherent rotation at ``omega_eff`` about the moving qubit's z axis
    plus thermally weighted decay and excitation channels; the auxiliary
    factor is untouched.  No state validation here: Runge-Kutta stages
    are not density matrices and the map itself is linear.
    """
    rho = np.asarray(rho, dtype=complex)
    down = coeffs.gamma * (coeffs.n + 1.0)
    up = coeffs.gamma * coeffs.n
    out = -0.5j * coeffs.omega_eff * (_SZ @ rho - rho @ _SZ)
    out += down * (_L_DOWN @ rho @ _L_UP - 0.5 * (_N_DOWN @ rho + rho @ _N_DOWN))
    out += up * (_L_UP @ rho @ _L_DOWN - 0.5 * (_N_UP @ rho + rho @ _N_UP))
    return out


def evolve_closed_form(
    u0: np.ndarray, coeffs: LindbladCoefficients, tau: float
) -> np.ndarray:
    """Exact evolution of the Pauli tensor for proper time ``tau``.

    The generator leaves each column index ``j`` alone and acts on the
    row index as a damped rotation in the 1-2 plane plus an affine decay
    of row 3 toward its thermal value:

        u_1j, u_2j: damped at a/2, rotated by omega_eff * tau
        u_3j:       u_3j e^(-a tau) + u_0j (b/a)(1 - e^(-a tau))

    Row 0 is conserved.
    """
    u0 = check_bloch_tensor(u0)
    if tau < 0.0:
        raise ValueError(f"tau must be non-negative, got {tau!r}")
    a, b, om = coeffs.a, coeffs.b, coeffs.omega_eff
    e_half = math.exp(-0.5 * a * tau)
    e_full = math.exp(-a * tau)
    cos_ = math.cos(om * tau)
    sin_ = math.sin(om * tau)
    u = u0.copy()
    r1 = u0[1].copy()
    r2 = u0[2].copy()
    u[1] = e_half * (cos_ * r1 - sin_ * r2)
    u[2] = e_half * (sin_ * r1 + cos_ * r2)
    u[3] = e_full * u0[3] + (b / a) * (1.0 - e_full) * u0[0]
    return u


def default_rk4_step(coeffs: LindbladCoefficients) -> float:
    """Step size resolving both the damping and the coherent rotation."""
    return min(0.01 / coeffs.a, 0.01 / max(abs(coeffs.omega_eff), 1e-9))


def evolve_numeric(
    rho0: np.ndarray,
    coeffs: LindbladCoefficients,
    tau: float,
    dt: float | None = None,
) -> np.ndarray:
    """Fixed-step fourth-order Runge-Kutta integration of the master equation.

    The step must satisfy ``dt <= 0.01/a`` so that the local truncation
    error stays near the roundoff floor; the default also resolves the
    rotation at ``omega_eff``.  The requested ``tau`` is hit exactly by
    shrinking the step to an integer division.  A final eigenvalue check
    emits :class:`PositivityWarning` if roundoff has pushed the state
    further than 1e-8 below zero.
    """
    rho = check_density_matrix(rho0).copy()
    if tau < 0.0:
        raise ValueError(f"tau must be non-negative, got {tau!r}")
    if tau == 0.0:
        return rho
    if dt is None:
        dt = default_rk4_step(coeffs)
    if dt > 0.01 / coeffs.a * (1.0 + 1e-12):
        raise ValueError(
            f"dt={dt!r} exceeds 0.01/a={0.01 / coeffs.a!r}; the integrator "
            "accuracy contract needs a*dt <= 0.01"
        )
    n = max(1, math.ceil(tau / dt))
    h = tau / n
    for _ in range(n):
        k1 = gksl_generator(rho, coeffs)
        k2 = gksl_generator(rho + 0.5 * h * k1, coeffs)
        k3 = gksl_generator(rho + 0.5 * h * k2, coeffs)
        k4 = gksl_generator(rho + h * k3, coeffs)
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    low = np.linalg.eigvalsh(rho).min()
    if low < -1e-8:
        warnings.warn(
            f"integrated state has eigenvalue {low:.3e}; accumulated "
            "roundoff exceeds the expected floor",
            PositivityWarning,
            stacklevel=2,
        )
    return rho


def shared_state(coeffs: LindbladCoefficients, tau: float) -> np.ndarray:
    """Joint state at proper time ``tau`` for the maximally entangled start.

    Closed form of the evolved Bell pair: an X-shaped matrix whose
    coherences rotate and damp at half the rate of the population
    relaxation.  Equivalent to evolving :func:`bell_state` with
    :func:`evolve_closed_form` and reassembling.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be non-negative, got {tau!r}")
    a, b, om = coeffs.a, coeffs.b, coeffs.omega_eff
    e_half = math.exp(-0.5 * a * tau)
    e_full = math.exp(-a * tau)
    cos_ = e_half * math.cos(om * tau)
    sin_ = e_half * math.sin(om * tau)
    m = (
        PAULI_PAIR[0][0]
        + cos_ * (PAULI_PAIR[1][1] - PAULI_PAIR[2][2])
        + sin_ * (PAULI_PAIR[2][1] + PAULI_PAIR[1][2])
        + (b / a) * (1.0 - e_full) * PAULI_PAIR[3][0]
        + e_full * PAULI_PAIR[3][3]
    )
    return 0.25 * m
