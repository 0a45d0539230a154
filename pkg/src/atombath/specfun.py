"""Polylogarithms and Bose-Einstein integrals.

The thermal occupation numbers seen by a moving detector reduce to
window averages of the Planck distribution, and the cubic-weighted
window integral has a closed antiderivative in terms of ``Li_1``,
``Li_2`` and ``Li_3``.  Only those three orders, on real arguments in
``[0, 1]``, are needed anywhere in this package, so the implementation
sticks to the defining power series

    Li_s(z) = sum_{k >= 1} z^k / k^s

summed with Kahan compensation, plus the closed form
``Li_1(z) = -log(1 - z)``.  An independent quadrature route through the
Bose-Einstein integral is provided for cross-checking the series.
"""

from __future__ import annotations

import math

from scipy import integrate

__all__ = [
    "QuadratureError",
    "ZETA_2",
    "ZETA_3",
    "polylog",
    "bose_tail",
    "bose_einstein_integral",
]

ZETA_2 = math.pi ** 2 / 6.0
ZETA_3 = 1.2020569031595942854  # Apery's constant, zeta(3)

# series controls: terminate once a term falls below the relative cutoff,
# give up (and fall back to the z = 1 value) past the iteration cap
_TERM_CUTOFF = 1e-16
_SERIES_CAP = 10 ** 7


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""


def polylog(s: int, z: float) -> float:
    """Polylogarithm ``Li_s(z)`` for ``s`` in {1, 2, 3} and ``0 <= z <= 1``.

    Parameters
    ----------
    s : int
        Order.  Only 1, 2 and 3 are supported; other orders are not
        needed for the bath coefficients and are rejected.
    z : float
        Argument.  Must lie in ``[0, 1]``.  ``z = 1`` is rejected for
        ``s = 1``, where the series diverges; for ``s = 2, 3`` it returns
        ``zeta(2)`` or ``zeta(3)``.

    Returns
    -------
    float

    Notes
    -----
    ``Li_1`` uses the closed form ``-log1p(-z)``.  For ``s = 2, 3`` the
    defining series is summed with Kahan compensation and terminates
    once a term drops below 1e-16 of the running sum.  Arguments within
    roughly 1e-7 of 1 would exhaust the iteration cap first; there the
    value at ``z = 1`` is returned, which is accurate to better than
    ``|z - 1| log|z - 1|``.
    """
    if s not in (1, 2, 3):
        raise ValueError(f"polylog order must be 1, 2 or 3, got {s!r}")
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"polylog argument must lie in [0, 1], got {z!r}")
    if s == 1:
        if z == 1.0:
            raise ValueError("Li_1 diverges at z = 1")
        return -math.log1p(-z)
    if z == 1.0:
        return ZETA_2 if s == 2 else ZETA_3
    if z == 0.0:
        return 0.0
    total = 0.0
    comp = 0.0
    zk = z
    for k in range(1, _SERIES_CAP + 1):
        term = zk / k ** s
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if term < _TERM_CUTOFF * total:
            return total
        zk *= z
    return ZETA_2 if s == 2 else ZETA_3


def bose_tail(x: float) -> float:
    """Upper tail of the quadratic Bose-Einstein integral.

    Evaluates ``int_x^inf t^2 / (e^t - 1) dt`` through its closed
    polylogarithmic antiderivative

        2 Li_3(e^-x) + 2 x Li_2(e^-x) + x^2 Li_1(e^-x).

    Strictly decreasing on ``[0, inf)`` from ``2 zeta(3)`` to 0.  The
    ``x -> 0`` limit is removable (the ``x^2 Li_1`` term vanishes
    against the logarithmic divergence of ``Li_1``) and is returned as
    exactly ``2 zeta(3)``.
    """
    if x < 0.0:
        raise ValueError(f"bose_tail requires x >= 0, got {x!r}")
    if x == 0.0:
        return 2.0 * ZETA_3
    z = math.exp(-x)
    if z == 0.0:
        # x beyond ~745: every term underflows
        return 0.0
    return 2.0 * polylog(3, z) + 2.0 * x * polylog(2, z) + x * x * polylog(1, z)


def bose_einstein_integral(s: int, x: float) -> float:
    """Bose-Einstein integral ``(1/s!) int_0^inf k^s / (e^(k-x) - 1) dk``.

    Equals ``Li_{s+1}(e^x)`` for ``x <= 0``, which makes it an
    independent quadrature cross-check of :func:`polylog`.  Supported for
    ``s`` in {1, 2} and ``x <= 0``; relative accuracy 1e-10.

    Raises
    ------
    QuadratureError
        If the adaptive quadrature does not converge; the message
        carries the achieved error estimate.
    """
    if s not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {s!r}")
    if x > 0.0:
        raise ValueError(f"fugacity exponent must satisfy x <= 0, got {x!r}")

    def integrand(k: float) -> float:
        if k - x > 700.0:
            # k^s e^(x - k) is below any representable contribution
            return 0.0
        return k ** s / math.expm1(k - x)

    val, err = integrate.quad(
        # epsabs=0 keeps the convergence target relative, so strongly
        # suppressed integrands (x far below zero) still certify
        integrand, 0.0, math.inf, epsabs=0.0, epsrel=1e-12, limit=200
    )
    fact = math.gamma(s + 1)
    val /= fact
    err /= fact
    if not math.isfinite(val) or err > 1e-10 * max(abs(val), 1e-300):
        raise QuadratureError(
            f"Bose-Einstein quadrature for s={s}, x={x} only reached an "
            f"error estimate of {err:.3e}"
        )
    return val
