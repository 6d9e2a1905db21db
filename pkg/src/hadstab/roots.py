"""Root finding and exact Schur stability decisions.

Roots are found by Ehrlich-Aberth simultaneous iteration started on a circle
sized from the a-priori root bounds, with companion-matrix eigenvalues as a
fallback when the iteration stalls.  Every returned root set is certified by
reconstructing the monic polynomial from the roots and comparing coefficients;
per-root residuals are scaled backward errors, so clusters of near-multiple
roots degrade per-root accuracy without breaking the certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .criteria import SimplexWeights
from .errors import InvalidInputError, UnconvergedError
from .poly import BranchSet, MonicPolynomial

# Verdicts within this band of the unit circle are Marginal: onset bisection
# must be able to see the crossing instead of a premature classification.
BOUNDARY_BAND = 1e-9

_MAX_SWEEPS = 200
_RECONSTRUCTION_TOL = 1e-8


class Status(str, Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class RootSet:
    """All n roots in nondecreasing modulus order with their residuals.

    ``residuals[i]`` is the scaled backward error |f(z_i)| / (1 + sum_k
    |a_k| |z_i|^k); a root is flagged unconverged when it exceeds the
    residual tolerance for the polynomial.
    """

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    converged: tuple[bool, ...]

    @property
    def max_modulus(self) -> float:
        return max(abs(z) for z in self.roots)

    def to_json(self) -> dict:
        return {
            "roots": [[z.real, z.imag] for z in self.roots],
            "max_modulus": self.max_modulus,
        }


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    max_modulus: float

    @property
    def margin(self) -> float:
        return self.max_modulus - 1.0

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "stable": self.status is Status.STABLE,
            "max_modulus": self.max_modulus,
            "margin": self.margin,
        }


def residual_tolerance(f: MonicPolynomial) -> float:
    return 1e-10 * (1.0 + max((abs(c) for c in f.coeffs), default=0.0))


def _horner(coeffs_desc: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, coeffs_desc[0])
    for c in coeffs_desc[1:]:
        acc = acc * z + c
    return acc


def _initial_radius(moduli: np.ndarray) -> float:
    n = len(moduli)
    cauchy = 1.0 + float(moduli.max())
    # Root bound with uniform weights 1/n; often much tighter than Cauchy.
    fuji = max(
        (n * m) ** (1.0 / (n - k)) for k, m in enumerate(moduli) if m > 0
    )
    return min(cauchy, 2.0 * fuji)


def _aberth(asc: np.ndarray) -> np.ndarray | None:
    """Ehrlich-Aberth sweep; returns roots or None if it fails to settle."""
    n = len(asc) - 1
    if n == 1:
        return np.array([-asc[0]])
    desc = asc[::-1]
    deriv = desc[:-1] * np.arange(n, 0, -1)
    radius = _initial_radius(np.abs(asc[:-1]))
    # Angular offset breaks conjugate symmetry so real-coefficient inputs do
    # not lock the iteration onto the real axis.
    angles = 2.0 * np.pi * (np.arange(n) + 0.375) / n + 0.5 / n
    z = 0.9 * radius * np.exp(1j * angles)
    for _ in range(_MAX_SWEEPS):
        pv = _horner(desc, z)
        dpv = _horner(deriv, z)
        stalled = dpv == 0
        if stalled.any():
            z = z + np.where(stalled, 1e-8 * (1 + np.abs(z)), 0.0)
            continue
        w = pv / dpv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(denom == 0, 1e-30, denom)
        delta = w / denom
        z = z - delta
        if np.max(np.abs(delta)) <= 1e-14 * (1.0 + np.max(np.abs(z))):
            return z
    return None


def _companion_roots(asc: np.ndarray) -> np.ndarray:
    n = len(asc) - 1
    K = np.zeros((n, n), dtype=complex)
    if n > 1:
        K[1:, :-1] = np.eye(n - 1)
    K[:, -1] = -asc[:-1]
    return np.linalg.eigvals(K)


def _newton_polish(asc: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    desc = asc[::-1]
    n = len(asc) - 1
    deriv = desc[:-1] * np.arange(n, 0, -1)
    for _ in range(steps):
        dpv = _horner(deriv, z)
        safe = dpv != 0
        step = np.where(safe, _horner(desc, z) / np.where(safe, dpv, 1.0), 0.0)
        # Reject steps that blow up (multiple-root clusters).
        step = np.where(np.abs(step) < 0.5 * (1 + np.abs(z)), step, 0.0)
        z = z - step
    return z


def _scaled_residuals(asc: np.ndarray, z: np.ndarray) -> np.ndarray:
    desc = asc[::-1]
    vals = np.abs(_horner(desc, z))
    scale = np.ones_like(vals)
    zp = np.ones_like(z)
    for c in asc[:-1]:
        scale = scale + abs(c) * np.abs(zp)
        zp = zp * z
    scale = scale + np.abs(zp)  # leading term
    return vals / scale


def _reconstructs(asc: np.ndarray, z: np.ndarray) -> bool:
    recon = np.poly(z)[::-1]  # ascending, monic
    ref = np.abs(asc)
    err = np.abs(recon - asc) / np.maximum(1.0, ref)
    return bool(np.max(err) <= _RECONSTRUCTION_TOL)


def find_roots(f: MonicPolynomial) -> RootSet:
    """All roots of f, nondecreasing in modulus, certified by reconstruction.

    Raises UnconvergedError (with the partial result attached) when neither
    the simultaneous iteration nor the eigenvalue fallback produces a root set
    that reproduces the coefficients.
    """
    n = f.degree
    asc = np.array(list(f.coeffs) + [1.0 + 0j])
    if not f.support:  # s^n: n roots at the origin, no iteration needed
        zeros = (0j,) * n
        return RootSet(zeros, (0.0,) * n, (True,) * n)

    z = _aberth(asc)
    candidates = []
    if z is not None:
        candidates.append(z)
    fallback = _newton_polish(asc, _companion_roots(asc))
    candidates.append(fallback)

    tol = residual_tolerance(f)
    best = None
    for cand in candidates:
        res = _scaled_residuals(asc, cand)
        ok = _reconstructs(asc, cand)
        score = (not ok, float(np.max(res)))
        if best is None or score < best[0]:
            best = (score, cand, res, ok)
    _, z, res, reconstructed = best

    order = np.argsort(np.abs(z), kind="stable")
    z = z[order]
    res = res[order]
    converged = res <= tol
    rootset = RootSet(
        tuple(complex(v) for v in z),
        tuple(float(r) for r in res),
        tuple(bool(c) for c in converged),
    )
    if not reconstructed and not converged.all():
        raise UnconvergedError(
            f"root iteration failed to certify (max residual {res.max():.3e})",
            partial=rootset,
        )
    return rootset


def classify(max_modulus: float) -> Status:
    if max_modulus < 1.0 - BOUNDARY_BAND:
        return Status.STABLE
    if max_modulus > 1.0 + BOUNDARY_BAND:
        return Status.UNSTABLE
    return Status.MARGINAL


def is_schur_stable(f: MonicPolynomial) -> StabilityVerdict:
    """Exact stability decision: all roots strictly inside the unit disc."""
    m = find_roots(f).max_modulus
    return StabilityVerdict(classify(m), m)


def branch_set_stable(b: BranchSet) -> StabilityVerdict:
    """Stability of a rational power means stability of every branch.

    Stable iff every member is Stable, Unstable if any member is, Marginal
    otherwise; the reported modulus is the worst across members.
    """
    worst = 0.0
    any_unstable = False
    all_stable = True
    for i, member in enumerate(b.members):
        try:
            verdict = is_schur_stable(member)
        except UnconvergedError as exc:
            raise UnconvergedError(
                f"branch {i} (index {b.branch_index[i]}): {exc}", partial=exc.partial
            ) from exc
        worst = max(worst, verdict.max_modulus)
        if verdict.status is Status.UNSTABLE:
            any_unstable = True
        if verdict.status is not Status.STABLE:
            all_stable = False
    if any_unstable:
        return StabilityVerdict(Status.UNSTABLE, worst)
    if all_stable:
        return StabilityVerdict(Status.STABLE, worst)
    return StabilityVerdict(Status.MARGINAL, worst)


def fujiwara_bound(f: MonicPolynomial, w: SimplexWeights) -> float:
    """A-priori bound max_k (|a_k| / lambda_k)^(1/(n-k)) on all root moduli.

    The weights must be indexed exactly by the support of f.
    """
    if w.support != f.support:
        raise InvalidInputError(
            f"weights indexed by {w.support} do not match support {f.support}"
        )
    n = f.degree
    table = w.as_dict()
    return max(
        (abs(f.coeffs[k]) / table[k]) ** (1.0 / (n - k)) for k in f.support
    )
