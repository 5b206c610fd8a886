"""Linearization of the patch equations at the annulus: mode matrices,
their determinants, eigenvalues, the bifurcation threshold, kernel vectors
and transversality.

The linearized boundary operator at the annular solution acts diagonally
across Fourier frequencies; at mode ``n`` it multiplies the coefficient
pair (outer, inner) by the 2x2 matrix

    M_n = [[ Omega - S_n + b^2 L_1,   -b^2 L_n ],
           [ b L_n,                    b Omega + S_n - b L_1 ]]

where ``S_n = s_sum(n)`` and ``L_n = lambda_coeff(n, b)``.  In the shifted
variable ``lambda = 1 - 2 Omega`` the determinant is the quadratic

    det(M_n) = (b/4) (lambda^2 - 2 C_n lambda + D_n),

and the reduced discriminant ``Delta_n = C_n^2 - D_n`` factors as
``E_n * F_n``.  The two angular velocities at which mode ``m`` acquires a
kernel are

    Omega_m^{+,-} = (1 - lambda_m^{-,+}) / 2,   lambda_m^{+,-} = C_m -+ sqrt(Delta_m),

real and distinct exactly when ``Delta_m > 0``, which happens for every
mode at or above the threshold ``N(b)`` (the first mode with
``E_n(b) > 0``).  Transversality of the bifurcating branch is equivalent
to the eigenvalue being simple, i.e. to ``Delta_m > 0``; that is the
criterion implemented here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotAnEigenvalue, NotSimple, PreconditionError, TableExhausted
from .specfun import AnnulusConstants

__all__ = [
    "ModeMatrix",
    "SpectrumRow",
    "KernelVector",
    "mode_matrix",
    "quadratic_coeffs",
    "discriminant",
    "threshold_N",
    "bifurcation_row",
    "kernel_vector",
    "eigenvalue_monotonicity_scan",
]

# Determinant-zero tests scale with the entry products; entries grow like
# s_sum(m) ~ log(m), so the floor max(1, .) keeps the test meaningful for
# all table sizes.
DET_TOL = 1e-12


def _det_scale(m11: float, m12: float, m21: float, m22: float) -> float:
    return max(1.0, abs(m11 * m22), abs(m12 * m21))


def _check_tables(b: float, consts: AnnulusConstants) -> None:
    if consts.b != b:
        raise PreconditionError(f"constants were built for b={consts.b}, got b={b}")


@dataclass(frozen=True)
class ModeMatrix:
    """The 2x2 linearization block at mode ``n`` and angular velocity ``omega``."""

    n: int
    b: float
    omega: float
    m11: float
    m12: float
    m21: float
    m22: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def det_scale(self) -> float:
        return _det_scale(self.m11, self.m12, self.m21, self.m22)


@dataclass(frozen=True)
class SpectrumRow:
    """Per-mode bifurcation data: quadratic coefficients, discriminant,
    eigenvalues in both the ``lambda`` and ``Omega`` variables, and the
    transversality flag."""

    m: int
    b: float
    c_m: float
    d_m: float
    delta_m: float
    lambda_minus: float
    lambda_plus: float
    omega_minus: float
    omega_plus: float
    transversal: bool


@dataclass(frozen=True)
class KernelVector:
    """Generator (v1, v2) of the nullspace of the mode matrix at an
    eigenvalue: v1 = Omega + S_m/b - L_1(b), v2 = -L_m(b)."""

    v1: float
    v2: float
    m: int
    omega: float

    def normalized(self) -> tuple[float, float]:
        norm = math.hypot(self.v1, self.v2)
        return self.v1 / norm, self.v2 / norm


def mode_matrix(n: int, b: float, omega: float, consts: AnnulusConstants) -> ModeMatrix:
    """Assemble the linearization block M_n; requires ``n`` in the tables."""
    if n < 2:
        raise PreconditionError(f"mode matrix is defined for n >= 2, got {n}")
    _check_tables(b, consts)
    s_n = consts.s(n)
    lam_1 = consts.lam(1)
    lam_n = consts.lam(n)
    return ModeMatrix(
        n=n,
        b=b,
        omega=omega,
        m11=omega - s_n + b * b * lam_1,
        m12=-b * b * lam_n,
        m21=b * lam_n,
        m22=b * omega + s_n - b * lam_1,
    )


def quadratic_coeffs(n: int, b: float, consts: AnnulusConstants) -> tuple[float, float]:
    """Coefficients (C_n, D_n) of the determinant quadratic in lambda = 1 - 2 Omega."""
    if n < 2:
        raise PreconditionError(f"quadratic coefficients defined for n >= 2, got {n}")
    _check_tables(b, consts)
    s_n = consts.s(n)
    lam_1 = consts.lam(1)
    lam_n = consts.lam(n)
    c_n = 1.0 + (1.0 / b - 1.0) * s_n - (1.0 - b * b) * lam_1
    d_n = (
        -4.0 / b * s_n * s_n
        + 2.0 * (1.0 / b - 1.0 + 2.0 * (1.0 + b) * lam_1) * s_n
        - 4.0 * b * b * (lam_1 * lam_1 - lam_n * lam_n)
        - 2.0 * (1.0 - b * b) * lam_1
        + 1.0
    )
    return c_n, d_n


def discriminant(n: int, b: float, consts: AnnulusConstants) -> tuple[float, float, float]:
    """Reduced discriminant Delta_n and its factors (E_n, F_n).

    Delta_n = ((1/b + 1) S_n - (1 + b^2) L_1)^2 - 4 b^2 L_n^2 = E_n * F_n with
    E_n, F_n the difference/sum factors; E_1 = -(1+b)^2 L_1 < 0 always.
    """
    if n < 1:
        raise PreconditionError(f"discriminant defined for n >= 1, got {n}")
    _check_tables(b, consts)
    s_n = consts.s(n)
    lam_1 = consts.lam(1)
    lam_n = consts.lam(n)
    core = (1.0 / b + 1.0) * s_n - (1.0 + b * b) * lam_1
    e_n = core - 2.0 * b * lam_n
    f_n = core + 2.0 * b * lam_n
    delta = core * core - 4.0 * b * b * lam_n * lam_n
    return delta, e_n, f_n


def threshold_N(b: float, consts: AnnulusConstants) -> int:
    """Smallest mode ``n >= 2`` with E_n(b) > 0.

    E_n is strictly increasing in ``n`` and E_1 < 0, so a linear scan from
    n = 2 finds the unique sign change.  At and above the returned mode the
    reduced discriminant is positive and both eigenvalues are real and
    simple.  Equivalent to the smallest ``n`` with
    ``S_n > b ((1+b^2) L_1 + 2 b L_n) / (1+b)`` (same inequality scaled by
    the positive factor b/(1+b)).
    """
    _check_tables(b, consts)
    for n in range(2, consts.n_max + 1):
        _, e_n, _ = discriminant(n, b, consts)
        if e_n > 0.0:
            return n
    raise TableExhausted(
        f"no sign change of E_n below n_max={consts.n_max}; enlarge the constant tables"
    )


def bifurcation_row(m: int, b: float, consts: AnnulusConstants) -> SpectrumRow:
    """Eigenvalue pair and angular velocities at mode ``m``.

    lambda_m^{+,-} = C_m +- sqrt(Delta_m) and Omega_m^{+,-} = (1 - lambda_m^{-,+})/2;
    requires Delta_m > 0 (``m`` at or above the threshold).
    """
    c_m, d_m = quadratic_coeffs(m, b, consts)
    delta, _, _ = discriminant(m, b, consts)
    if delta <= 0.0:
        raise NotSimple(f"Delta_{m}(b={b}) = {delta} <= 0: eigenvalues not simple")
    root = math.sqrt(delta)
    lambda_minus = c_m - root
    lambda_plus = c_m + root
    return SpectrumRow(
        m=m,
        b=b,
        c_m=c_m,
        d_m=d_m,
        delta_m=delta,
        lambda_minus=lambda_minus,
        lambda_plus=lambda_plus,
        omega_minus=0.5 * (1.0 - lambda_plus),
        omega_plus=0.5 * (1.0 - lambda_minus),
        transversal=delta > 1e-12,
    )


def kernel_vector(m: int, b: float, omega: float, consts: AnnulusConstants) -> KernelVector:
    """Nullspace generator of M_m at an eigenvalue ``omega``.

    The candidate (Omega + S_m/b - L_1, -L_m) annihilates the second row of
    M_m identically; it spans the kernel precisely when det(M_m) = 0.  The
    residual ``M_m v`` is checked against the determinant tolerance and
    :class:`NotAnEigenvalue` is raised when ``omega`` is not an eigenvalue.
    """
    mat = mode_matrix(m, b, omega, consts)
    v1 = omega + consts.s(m) / b - consts.lam(1)
    v2 = -consts.lam(m)
    scale = mat.det_scale() * max(1.0, math.hypot(v1, v2))
    res = max(
        abs(mat.m11 * v1 + mat.m12 * v2),
        abs(mat.m21 * v1 + mat.m22 * v2),
    )
    if res > 1e-10 * scale:
        raise NotAnEigenvalue(
            f"omega={omega} is not an eigenvalue of M_{m} (|M v| = {res:.3e})"
        )
    return KernelVector(v1=v1, v2=v2, m=m, omega=omega)


def eigenvalue_monotonicity_scan(b: float, n_hi: int, consts: AnnulusConstants) -> list[str]:
    """Check the eigenvalue ordering over modes N(b) <= n <= n_hi.

    Verifies, for consecutive modes, that Delta_n and lambda_n^+ increase
    strictly and lambda_n^- decreases strictly, and for every pair
    m > n >= N(b) the interleaving lambda_m^- < lambda_n^- < lambda_n^+
    < lambda_m^+.  Returns a list of human-readable violations (expected
    empty).
    """
    start = threshold_N(b, consts)
    violations: list[str] = []
    rows = [bifurcation_row(n, b, consts) for n in range(start, n_hi + 1)]
    for prev, cur in zip(rows, rows[1:]):
        n = cur.m
        if not cur.delta_m > prev.delta_m:
            violations.append(f"Delta_{n} <= Delta_{n-1} at b={b}")
        if not cur.lambda_plus > prev.lambda_plus:
            violations.append(f"lambda^+_{n} <= lambda^+_{n-1} at b={b}")
        if not cur.lambda_minus < prev.lambda_minus:
            violations.append(f"lambda^-_{n} >= lambda^-_{n-1} at b={b}")
    # Interleaving across non-adjacent pairs follows from the monotone
    # sequences, but is asserted directly as an independent consistency net.
    for i, low in enumerate(rows):
        for high in rows[i + 1:]:
            if not (high.lambda_minus < low.lambda_minus < low.lambda_plus < high.lambda_plus):
                violations.append(
                    f"interleaving failed for modes {low.m} < {high.m} at b={b}"
                )
    return violations
