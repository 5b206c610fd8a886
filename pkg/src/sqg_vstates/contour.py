"""Discretized boundary equations for doubly connected rotating patches.

A patch pair is represented by truncated expansions of the two exterior
conformal maps on the unit circle,

    Phi_1(w) = w   + sum_{n=1}^{K} a_n w^{-(n m - 1)},
    Phi_2(w) = b w + sum_{n=1}^{K} c_n w^{-(n m - 1)},

with real coefficients (reflection symmetry about the real axis) supported
on the m-fold symmetric frequencies.  The rotating-patch conditions on the
two boundaries read, for j in {1, 2} and w on the unit circle,

    G_j(w) = Im{ (Omega Phi_j(w) - S(Phi_1, Phi_j)(w) + S(Phi_2, Phi_j)(w))
                 * conj(Phi_j'(w)) * conj(w) } = 0,

where S is the mean-value boundary integral

    S(Phi_i, Phi_j)(w) = avg_{tau in T} [tau Phi_i'(tau) - w Phi_j'(w)]
                                        / |Phi_i(tau) - Phi_j(w)|.

The self-interaction integrand (i = j) is bounded but has a corner where
tau passes w; quadrature uses trapezoidal sums on half-offset nodes, the
standard contour-dynamics treatment, validated against closed forms by the
``verify`` module.  The interaction integrand (i != j) is smooth because
the boundaries are disjoint, and the same rule converges spectrally.

``residual`` collocates G_1, G_2 on a uniform grid and projects onto the
retained sine modes sin(n m theta); ``newton_correct`` and
``branch_continue`` trace solution branches off the annulus in the kernel
direction of the linearized operator, using a finite-difference Jacobian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    BoundaryCollision,
    NoConvergence,
    NotSimple,
    PreconditionError,
    SingularJacobian,
)
from .specfun import AnnulusConstants
from .spectrum import KernelVector, bifurcation_row, kernel_vector, mode_matrix, threshold_N

__all__ = [
    "PatchPair",
    "collocation_residual",
    "ResidualSpectrum",
    "BranchPoint",
    "BranchRun",
    "annulus_patch",
    "eval_maps",
    "stream_integral",
    "residual",
    "linearization_check",
    "newton_correct",
    "branch_continue",
    "boundary_samples",
]

TWO_PI = 2.0 * math.pi

# Disjointness guard: quadrature denominators below this signal touching
# or crossing boundaries.
COLLISION_TOL = 1e-10

# omega-block size for the P x P kernel matrices (caps peak memory).
_CHUNK = 1024


@dataclass(frozen=True)
class PatchPair:
    """Truncated conformal representation of the two patch boundaries.

    ``a`` and ``c`` hold the K retained outer/inner coefficients at the
    m-fold frequencies n m - 1, n = 1..K.  Construction validates the
    coefficient-size guard

        sum_n (n m - 1) (|a_n| + |c_n|) < min(b, 1 - b) / 2,

    a conservative solver guard that keeps both maps univalent in practice
    and the boundaries disjoint.
    """

    b: float
    m: int
    K: int
    a: np.ndarray
    c: np.ndarray
    omega: float

    def __post_init__(self) -> None:
        if not 0.0 < self.b < 1.0:
            raise PreconditionError(f"inner radius must satisfy 0 < b < 1, got {self.b}")
        if self.m < 2:
            raise PreconditionError(f"fold symmetry must satisfy m >= 2, got {self.m}")
        if self.K < 1:
            raise PreconditionError(f"truncation must satisfy K >= 1, got {self.K}")
        a = np.asarray(self.a, dtype=float).copy()
        c = np.asarray(self.c, dtype=float).copy()
        if a.shape != (self.K,) or c.shape != (self.K,):
            raise PreconditionError(
                f"coefficient arrays must have shape ({self.K},), got {a.shape} and {c.shape}"
            )
        if not (np.isfinite(a).all() and np.isfinite(c).all() and math.isfinite(self.omega)):
            raise PreconditionError("coefficients and omega must be finite")
        weights = self.mode_exponents()
        budget = float(np.dot(weights, np.abs(a) + np.abs(c)))
        bound = 0.5 * min(self.b, 1.0 - self.b)
        if budget >= bound:
            raise PreconditionError(
                f"coefficient budget {budget:.3e} exceeds univalence guard {bound:.3e}"
            )
        a.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    def mode_exponents(self) -> np.ndarray:
        """Exponents n m - 1 of the retained negative powers."""
        return np.arange(1, self.K + 1) * self.m - 1

    def with_state(self, a: np.ndarray, c: np.ndarray, omega: float) -> "PatchPair":
        return PatchPair(b=self.b, m=self.m, K=self.K, a=a, c=c, omega=omega)


def annulus_patch(b: float, m: int, K: int, omega: float) -> PatchPair:
    """The trivial solution: both maps are pure scalings."""
    return PatchPair(b=b, m=m, K=K, a=np.zeros(K), c=np.zeros(K), omega=omega)


@dataclass(frozen=True)
class ResidualSpectrum:
    """Sine coefficients of the two boundary residuals at the retained
    frequencies n m, plus the maximum spectral magnitude found at
    frequencies that are not multiples of m (the leakage diagnostic)."""

    m: int
    K: int
    r1: np.ndarray
    r2: np.ndarray
    leak: float

    def max_abs(self) -> float:
        return max(float(np.abs(self.r1).max()), float(np.abs(self.r2).max()))


@dataclass(frozen=True)
class BranchPoint:
    """One accepted point on a bifurcation branch, at amplitude ``s`` along
    the kernel direction."""

    s: float
    patch: PatchPair
    residual_norm: float
    step_index: int


@dataclass(frozen=True)
class BranchRun:
    """A traced branch.  ``stopped_reason`` is None for a complete run, or
    a short message naming the failure that truncated it.  ``P`` is the
    effective collocation size used (the requested size rounded up to a
    multiple of 4 K m)."""

    points: tuple[BranchPoint, ...]
    stopped_reason: Optional[str]
    P: int


def _map_values(patch: PatchPair, w: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Phi_1, Phi_2, Phi_1', Phi_2' on an array of unit-circle points."""
    p = patch.mode_exponents()
    wneg = w[:, None] ** (-p[None, :])
    phi1 = w + wneg @ patch.a
    phi2 = patch.b * w + wneg @ patch.c
    # Phi'(w) = 1 - sum (nm-1) a_n w^{-nm}
    wneg_d = wneg * w[:, None] ** (-1)
    dphi1 = 1.0 - wneg_d @ (p * patch.a)
    dphi2 = patch.b - wneg_d @ (p * patch.c)
    return phi1, phi2, dphi1, dphi2


def eval_maps(patch: PatchPair, theta: float) -> tuple[complex, complex, complex, complex]:
    """Boundary points and tangential derivatives at angle ``theta``.

    Returns (Phi_1, Phi_2, dPhi_1/dtheta, dPhi_2/dtheta) at w = e^{i theta};
    the tangential derivative is i w Phi'(w).
    """
    w = np.array([np.exp(1j * theta)])
    phi1, phi2, dphi1, dphi2 = _map_values(patch, w)
    iw = 1j * w[0]
    return complex(phi1[0]), complex(phi2[0]), complex(iw * dphi1[0]), complex(iw * dphi2[0])


def stream_integral(src: int, dst: int, patch: PatchPair, theta: float, P: int) -> complex:
    """S(Phi_src, Phi_dst) at w = e^{i theta} by offset trapezoidal quadrature.

    The integration variable is tau = w e^{i eta} with eta on the P
    half-offset nodes 2 pi (k + 1/2) / P; the offset keeps the node set
    clear of eta = 0 where the self-interaction integrand has its bounded
    corner.  Raises :class:`BoundaryCollision` if any quadrature
    denominator drops below the disjointness guard.
    """
    if src not in (1, 2) or dst not in (1, 2):
        raise PreconditionError(f"boundary selectors must be 1 or 2, got src={src}, dst={dst}")
    if P < 64 or P % 2:
        raise PreconditionError(f"quadrature size must be even and >= 64, got {P}")
    w = np.exp(1j * theta)
    eta = TWO_PI * (np.arange(P) + 0.5) / P
    tau = w * np.exp(1j * eta)
    phi1_t, phi2_t, dphi1_t, dphi2_t = _map_values(patch, tau)
    phi_t, dphi_t = (phi1_t, dphi1_t) if src == 1 else (phi2_t, dphi2_t)
    wv = np.array([w])
    phi1_w, phi2_w, dphi1_w, dphi2_w = _map_values(patch, wv)
    phi_w, dphi_w = (phi1_w[0], dphi1_w[0]) if dst == 1 else (phi2_w[0], dphi2_w[0])
    den = np.abs(phi_t - phi_w)
    if den.min() < COLLISION_TOL:
        raise BoundaryCollision(
            f"boundaries {src} and {dst} closer than {COLLISION_TOL} at a quadrature node"
        )
    return complex(((tau * dphi_t - w * dphi_w) / den).mean())


def _stream_on_grid(
    tau: np.ndarray,
    phi_src_t: np.ndarray,
    dphi_src_t: np.ndarray,
    w: np.ndarray,
    phi_dst_w: np.ndarray,
    dphi_dst_w: np.ndarray,
) -> np.ndarray:
    """S(Phi_src, Phi_dst) at every collocation point w, vectorized.

    tau runs over the half-offset master grid and w over the integer grid,
    so the relative offsets reproduce the single-point rule of
    :func:`stream_integral` exactly.  Work is chunked over w to cap the
    P x P kernel-matrix memory.
    """
    P = tau.size
    num_src = tau * dphi_src_t
    out = np.empty(w.size, dtype=complex)
    for lo in range(0, w.size, _CHUNK):
        hi = min(lo + _CHUNK, w.size)
        dr = np.subtract.outer(phi_src_t.real, phi_dst_w.real[lo:hi])
        di = np.subtract.outer(phi_src_t.imag, phi_dst_w.imag[lo:hi])
        dr *= dr
        di *= di
        dr += di
        np.sqrt(dr, out=dr)
        if dr.min() < COLLISION_TOL:
            raise BoundaryCollision(
                f"boundaries closer than {COLLISION_TOL} at a quadrature node"
            )
        np.reciprocal(dr, out=dr)
        colmean = dr.mean(axis=0)
        out[lo:hi] = (num_src.real @ dr + 1j * (num_src.imag @ dr)) / P
        out[lo:hi] -= (w[lo:hi] * dphi_dst_w[lo:hi]) * colmean
    return out


def collocation_residual(patch: PatchPair, P: int) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise boundary residuals (G_1, G_2) on the P uniform collocation
    angles 2 pi k / P, k = 0..P-1.

    ``P`` must be even and at least 4 K m so the retained frequency band is
    resolved with margin.
    """
    m, K = patch.m, patch.K
    if P % 2 or P < 4 * K * m:
        raise PreconditionError(
            f"collocation size P={P} must be even and >= 4*K*m = {4 * K * m}"
        )
    theta = TWO_PI * np.arange(P) / P
    eta = TWO_PI * (np.arange(P) + 0.5) / P
    w = np.exp(1j * theta)
    tau = np.exp(1j * eta)
    phi1_w, phi2_w, dphi1_w, dphi2_w = _map_values(patch, w)
    phi1_t, phi2_t, dphi1_t, dphi2_t = _map_values(patch, tau)

    s11 = _stream_on_grid(tau, phi1_t, dphi1_t, w, phi1_w, dphi1_w)
    s21 = _stream_on_grid(tau, phi2_t, dphi2_t, w, phi1_w, dphi1_w)
    s12 = _stream_on_grid(tau, phi1_t, dphi1_t, w, phi2_w, dphi2_w)
    s22 = _stream_on_grid(tau, phi2_t, dphi2_t, w, phi2_w, dphi2_w)

    g1 = np.imag((patch.omega * phi1_w - s11 + s21) * np.conj(dphi1_w) * np.conj(w))
    g2 = np.imag((patch.omega * phi2_w - s12 + s22) * np.conj(dphi2_w) * np.conj(w))
    return g1, g2


def residual(patch: PatchPair, P: int) -> ResidualSpectrum:
    """Collocate G_1, G_2 on P uniform angles and project onto sine modes.

    The reported coefficient for mode n m is the coefficient of
    sin(n m theta) in the real-valued residual; the leakage diagnostic is
    the largest spectral magnitude at frequencies that are not multiples
    of m.
    """
    m, K = patch.m, patch.K
    g1, g2 = collocation_residual(patch, P)
    freqs = np.arange(1, K + 1) * m
    spec1 = np.fft.rfft(g1)
    spec2 = np.fft.rfft(g2)
    # real signal: g = sum_p [ (2 Re X_p / P) cos - (2 Im X_p / P) sin ]
    r1 = -2.0 * np.imag(spec1[freqs]) / P
    r2 = -2.0 * np.imag(spec2[freqs]) / P
    p_all = np.arange(spec1.size)
    off = p_all % m != 0
    leak = 0.0
    if off.any():
        leak = 2.0 / P * max(float(np.abs(spec1[off]).max()), float(np.abs(spec2[off]).max()))
    r1.setflags(write=False)
    r2.setflags(write=False)
    return ResidualSpectrum(m=m, K=K, r1=r1, r2=r2, leak=leak)


def _linearization_probe(
    m: int,
    b: float,
    omega: float,
    n: int,
    h: float,
    P: int,
    consts: AnnulusConstants,
) -> tuple[np.ndarray, np.ndarray, float, float]:
    """Central-difference block of the residual Jacobian at the annulus.

    Perturbs coefficient n of each boundary by +-h, assembles the observed
    2x2 block at frequency n m, and compares with the analytic block
    -(n m) M_{n m}.  Returns (observed, expected, max relative block error,
    off-block magnitude relative to the block scale).
    """
    K = max(2, n + 2)
    zeros = np.zeros(K)
    observed = np.zeros((2, 2))
    offblock = 0.0
    idx = n - 1
    for col, boundary in enumerate(("outer", "inner")):
        dpls = zeros.copy()
        dpls[idx] = h
        if boundary == "outer":
            plus = PatchPair(b, m, K, dpls, zeros, omega)
            minus = PatchPair(b, m, K, -dpls, zeros, omega)
        else:
            plus = PatchPair(b, m, K, zeros, dpls, omega)
            minus = PatchPair(b, m, K, zeros, -dpls, omega)
        rp = residual(plus, P)
        rm = residual(minus, P)
        d1 = (rp.r1 - rm.r1) / (2.0 * h)
        d2 = (rp.r2 - rm.r2) / (2.0 * h)
        observed[0, col] = d1[idx]
        observed[1, col] = d2[idx]
        others = np.delete(np.arange(K), idx)
        if others.size:
            offblock = max(offblock, float(np.abs(d1[others]).max()), float(np.abs(d2[others]).max()))
        offblock = max(offblock, max(rp.leak, rm.leak) / (2.0 * h))
    p = n * m
    expected = -p * mode_matrix(p, b, omega, consts).matrix()
    scale = float(np.abs(expected).max())
    rel = float(np.abs(observed - expected).max()) / scale
    return observed, expected, rel, offblock / scale


def linearization_check(
    m: int,
    b: float,
    omega: float,
    n: int,
    h: float,
    P: int,
    consts: Optional[AnnulusConstants] = None,
) -> float:
    """Max relative error between the finite-difference Jacobian block of
    the residual at the annulus (frequency n m) and the analytic block
    -(n m) M_{n m}.

    The minus sign reflects the sine convention: the linearized operator
    contributes -(n m) sin(n m theta) M_{n m} per unit coefficient.
    """
    if n * m - 1 < 1:
        raise PreconditionError(f"perturbed exponent n*m-1 must be >= 1, got n={n}, m={m}")
    if consts is None:
        consts = AnnulusConstants.build(b, n_max=max(200, 4 * (n + 2) * m))
    _, _, rel, _ = _linearization_probe(m, b, omega, n, h, P, consts)
    return rel


def _sine_coefficients_one_period(patch: PatchPair, P: int) -> tuple[np.ndarray, np.ndarray]:
    """Retained sine coefficients from collocation over a single period.

    Every PatchPair is m-fold symmetric by construction, so G_1, G_2 are
    2 pi / m periodic and the full-circle sine projection equals m times
    the partial sum over one period: collocating P/m of the P angles gives
    the same coefficients (to summation roundoff) at 1/m of the kernel
    cost.  The quadrature over tau still runs on all P nodes.  Requires
    m | P; the Newton path falls back to the full grid otherwise.
    """
    m, K = patch.m, patch.K
    if P % 2 or P < 4 * K * m or P % m:
        raise PreconditionError(
            f"one-period collocation needs P even, >= 4*K*m and divisible by m, got P={P}"
        )
    q = P // m
    theta = TWO_PI * np.arange(q) / P
    eta = TWO_PI * (np.arange(P) + 0.5) / P
    w = np.exp(1j * theta)
    tau = np.exp(1j * eta)
    phi1_w, phi2_w, dphi1_w, dphi2_w = _map_values(patch, w)
    phi1_t, phi2_t, dphi1_t, dphi2_t = _map_values(patch, tau)

    s11 = _stream_on_grid(tau, phi1_t, dphi1_t, w, phi1_w, dphi1_w)
    s21 = _stream_on_grid(tau, phi2_t, dphi2_t, w, phi1_w, dphi1_w)
    s12 = _stream_on_grid(tau, phi1_t, dphi1_t, w, phi2_w, dphi2_w)
    s22 = _stream_on_grid(tau, phi2_t, dphi2_t, w, phi2_w, dphi2_w)

    g1 = np.imag((patch.omega * phi1_w - s11 + s21) * np.conj(dphi1_w) * np.conj(w))
    g2 = np.imag((patch.omega * phi2_w - s12 + s22) * np.conj(dphi2_w) * np.conj(w))

    freqs = np.arange(1, K + 1) * m
    sines = np.sin(np.outer(theta, freqs))
    scale = 2.0 * m / P
    return scale * (g1 @ sines), scale * (g2 @ sines)


# ---------------------------------------------------------------------------
# Newton corrector and branch continuation
# ---------------------------------------------------------------------------

_FD_STEP = 1e-7
_COND_LIMIT = 1e14
_MAX_BACKTRACK = 8


def _pack(patch: PatchPair) -> np.ndarray:
    return np.concatenate([patch.a, patch.c, [patch.omega]])


def _system(patch_like: PatchPair, x: np.ndarray, s: float, vhat: tuple[float, float], P: int) -> tuple[np.ndarray, float]:
    """Augmented residual: 2K sine coefficients plus the amplitude constraint.

    Returns (F, max residual coefficient).  The constraint pins the
    projection of (a_1, c_1) onto the normalized kernel direction to s.
    Uses the one-period collocation fast path whenever m divides P.
    """
    K = patch_like.K
    patch = patch_like.with_state(x[:K], x[K:2 * K], float(x[2 * K]))
    if P % patch.m == 0:
        r1, r2 = _sine_coefficients_one_period(patch, P)
    else:
        spec = residual(patch, P)
        r1, r2 = spec.r1, spec.r2
    constraint = x[0] * vhat[0] + x[K] * vhat[1] - s
    rnorm = max(float(np.abs(r1).max()), float(np.abs(r2).max()))
    return np.concatenate([r1, r2, [constraint]]), rnorm


def _fd_jacobian(patch_like: PatchPair, x: np.ndarray, s: float, vhat: tuple[float, float], P: int) -> np.ndarray:
    nunk = x.size
    jac = np.empty((nunk, nunk))
    for k in range(nunk):
        step = _FD_STEP * max(1.0, abs(x[k]))
        xp = x.copy()
        xp[k] += step
        xm = x.copy()
        xm[k] -= step
        fp, _ = _system(patch_like, xp, s, vhat, P)
        fm, _ = _system(patch_like, xm, s, vhat, P)
        jac[:, k] = (fp - fm) / (2.0 * step)
    return jac


def newton_correct(
    patch: PatchPair,
    s: float,
    kernel: KernelVector,
    P: int,
    max_iter: int = 25,
    newton_tol: float = 1e-10,
) -> tuple[PatchPair, float]:
    """Solve the augmented system {residual = 0, kernel projection = s}.

    Damped Newton on the 2K+1 unknowns (a, c, Omega) with a central
    finite-difference Jacobian (step 1e-7 * max(1, |x|) per unknown).  The
    Jacobian is reused across iterations while full steps keep reducing the
    residual, and refreshed when progress stalls.  Returns the corrected
    patch and its residual norm (max sine coefficient).

    Raises
    ------
    NoConvergence
        after ``max_iter`` iterations above tolerance.
    SingularJacobian
        if the condition estimate of the Jacobian exceeds 1e14.
    """
    vhat = kernel.normalized()
    x = _pack(patch)
    fvec, rnorm = _system(patch, x, s, vhat, P)
    jac: Optional[np.ndarray] = None
    jac_fresh = False
    for _ in range(max_iter):
        if np.abs(fvec).max() <= newton_tol:
            K = patch.K
            return patch.with_state(x[:K], x[K:2 * K], float(x[2 * K])), rnorm
        if jac is None:
            jac = _fd_jacobian(patch, x, s, vhat, P)
            jac_fresh = True
            if np.linalg.cond(jac) > _COND_LIMIT:
                raise SingularJacobian(
                    f"Jacobian condition estimate exceeds {_COND_LIMIT:.0e}"
                )
        dx = np.linalg.solve(jac, -fvec)
        fnorm = np.abs(fvec).max()
        step = 1.0
        accepted = False
        for _ in range(_MAX_BACKTRACK):
            try:
                f_try, r_try = _system(patch, x + step * dx, s, vhat, P)
            except (PreconditionError, BoundaryCollision):
                step *= 0.5
                continue
            if np.abs(f_try).max() <= (1.0 - 1e-4 * step) * fnorm:
                x = x + step * dx
                fvec, rnorm = f_try, r_try
                accepted = True
                break
            step *= 0.5
        if not accepted:
            if jac_fresh:
                raise NoConvergence("damped Newton step failed to reduce the residual")
            jac = None  # stale chord Jacobian: refresh and retry
            continue
        if step < 1.0:
            jac = None
        else:
            jac_fresh = False
    if np.abs(fvec).max() <= newton_tol:
        K = patch.K
        return patch.with_state(x[:K], x[K:2 * K], float(x[2 * K])), rnorm
    raise NoConvergence(f"Newton did not reach {newton_tol} in {max_iter} iterations")


def branch_continue(
    m: int,
    b: float,
    sign: str,
    steps: int,
    ds: float,
    K: int = 32,
    P: int = 4096,
    newton_tol: float = 1e-10,
    max_iter: int = 25,
    consts: Optional[AnnulusConstants] = None,
) -> BranchRun:
    """Trace the branch bifurcating from the annulus at Omega_m^{sign}.

    The predictor advances the previous point by ``ds`` along the kernel
    direction embedded in the (a_1, c_1) plane; the corrector is
    :func:`newton_correct`.  On a guard or Newton failure the partial
    branch up to the last good point is returned with ``stopped_reason``
    set; nothing is discarded.

    ``P`` is rounded up to the nearest multiple of 4 K m so every retained
    mode is resolved without aliasing and the one-period collocation fast
    path applies; the effective size is recorded on the returned run.
    """
    if sign not in ("plus", "minus"):
        raise PreconditionError(f"sign must be 'plus' or 'minus', got {sign!r}")
    if steps < 0 or ds <= 0.0:
        raise PreconditionError(f"need steps >= 0 and ds > 0, got steps={steps}, ds={ds}")
    block = 4 * K * m
    P = block * max(1, -(-P // block))
    if consts is None:
        consts = AnnulusConstants.build(b, n_max=max(200, 4 * K * m))
    elif consts.b != b:
        raise PreconditionError(f"constants were built for b={consts.b}, got b={b}")
    n_threshold = threshold_N(b, consts)
    if m < n_threshold:
        raise NotSimple(f"mode m={m} is below the threshold N({b}) = {n_threshold}")
    row = bifurcation_row(m, b, consts)
    omega0 = row.omega_plus if sign == "plus" else row.omega_minus
    kern = kernel_vector(m, b, omega0, consts)
    vhat = kern.normalized()

    start = annulus_patch(b, m, K, omega0)
    start_norm = residual(start, P).max_abs()
    points = [BranchPoint(s=0.0, patch=start, residual_norm=start_norm, step_index=0)]
    stopped: Optional[str] = None
    patch = start
    s = 0.0
    for step_index in range(1, steps + 1):
        s += ds
        a = patch.a.copy()
        c = patch.c.copy()
        a[0] += ds * vhat[0]
        c[0] += ds * vhat[1]
        try:
            predictor = patch.with_state(a, c, patch.omega)
            patch, rnorm = newton_correct(predictor, s, kern, P, max_iter, newton_tol)
        except (PreconditionError, BoundaryCollision, NoConvergence, SingularJacobian) as exc:
            stopped = f"{type(exc).__name__} at step {step_index}: {exc}"
            break
        points.append(BranchPoint(s=s, patch=patch, residual_norm=rnorm, step_index=step_index))
    return BranchRun(points=tuple(points), stopped_reason=stopped, P=P)


def boundary_samples(patch: PatchPair, npoints: int = 512) -> np.ndarray:
    """Sample both boundaries for rendering or CSV export.

    Returns an (npoints, 5) array with columns theta, x1, y1, x2, y2.
    """
    theta = TWO_PI * np.arange(npoints) / npoints
    w = np.exp(1j * theta)
    phi1, phi2, _, _ = _map_values(patch, w)
    return np.column_stack([theta, phi1.real, phi1.imag, phi2.real, phi2.imag])
