"""Symmetric eigenvalues via cyclic Jacobi rotations.

Self-contained solver so the numerics are reproducible bit-for-bit across
platforms with the same libm; numpy.linalg is used only as an oracle in the
test suite.  Convergence: the off-diagonal Frobenius norm must fall below
1e-13 times the matrix Frobenius norm within 100 sweeps, after which one
polishing sweep is applied (it costs little and pulls eigenvalues of PSD
inputs back to within machine epsilon of nonnegative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoConvergenceError, NoNonzeroEigenvalueError, NotSymmetricError

_OFFDIAG_RATIO = 1e-13
_MAX_SWEEPS = 100


def _as_float_matrix(matrix) -> list[list[float]]:
    return [[float(x) for x in row] for row in matrix]


def eigenvalues_symmetric(matrix) -> tuple[float, ...]:
    """Ascending eigenvalues of a symmetric matrix (lists or array-like)."""
    a = _as_float_matrix(matrix)
    n = len(a)
    if any(len(row) != n for row in a):
        raise NotSymmetricError("matrix is not square")
    if n == 0:
        return ()
    scale = max(1.0, max(abs(x) for row in a for x in row))
    for p in range(n):
        for q in range(p + 1, n):
            if abs(a[p][q] - a[q][p]) > 1e-12 * scale:
                raise NotSymmetricError(
                    f"entry ({p},{q}) = {a[p][q]} but ({q},{p}) = {a[q][p]}"
                )
            mid = 0.5 * (a[p][q] + a[q][p])
            a[p][q] = a[q][p] = mid
    if n == 1:
        return (a[0][0],)

    fro = math.sqrt(sum(x * x for row in a for x in row))
    if fro == 0.0:
        return tuple([0.0] * n)
    target = _OFFDIAG_RATIO * fro

    def off() -> float:
        return math.sqrt(2.0 * sum(a[p][q] ** 2 for p in range(n) for q in range(p + 1, n)))

    def sweep() -> None:
        for p in range(n):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = 0.5 * (a[q][q] - a[p][p]) / apq
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = a[p][p], a[q][q]
                a[p][p] = app - t * apq
                a[q][q] = aqq + t * apq
                a[p][q] = a[q][p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp, akq = a[k][p], a[k][q]
                        a[k][p] = a[p][k] = c * akp - s * akq
                        a[k][q] = a[q][k] = s * akp + c * akq

    converged = False
    for _ in range(_MAX_SWEEPS):
        if off() <= target:
            converged = True
            break
        sweep()
    if not converged and off() > target:
        raise NoConvergenceError(
            f"Jacobi sweeps exhausted with off-diagonal norm {off():.3e}"
        )
    sweep()  # polish
    return tuple(sorted(a[k][k] for k in range(n)))


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues with a zero threshold baked in."""

    values: tuple[float, ...]
    zero_tol: float

    @property
    def zero_multiplicity(self) -> int:
        return sum(1 for v in self.values if abs(v) <= self.zero_tol)

    @property
    def lambda1(self) -> float:
        """Smallest eigenvalue above the zero threshold."""
        for v in self.values:
            if v > self.zero_tol:
                return v
        raise NoNonzeroEigenvalueError(
            f"no eigenvalue above {self.zero_tol} in {self.values}"
        )

    def nonzero(self) -> tuple[float, ...]:
        return tuple(v for v in self.values if v > self.zero_tol)


def spectrum_of(g, operator: str = "edge", weighting: str = "degree",
                orientation=None, zero_tol: float | None = None) -> Spectrum:
    """Spectrum of an assembled operator (via its symmetrized form).

    When zero_tol is omitted it defaults to 1e-8 * max(1, largest
    eigenvalue) — relative, since nothing in the operators pins an
    absolute scale.
    """
    from .laplacian import symmetrized

    values = eigenvalues_symmetric(symmetrized(g, operator, weighting, orientation))
    if zero_tol is None:
        zero_tol = 1e-8 * max(1.0, values[-1]) if values else 1e-8
    return Spectrum(values, zero_tol)


def spectral_equivalence_gap(g, weighting: str = "degree",
                             zero_tol: float | None = None) -> float:
    """Largest mismatch between the nonzero vertex and edge spectra.

    The two operators share their nonzero eigenvalues; returns the maximum
    absolute difference after sorting, or inf when even the counts disagree.
    """
    sv = spectrum_of(g, "vertex", weighting, zero_tol=zero_tol).nonzero()
    se = spectrum_of(g, "edge", weighting, zero_tol=zero_tol).nonzero()
    if len(sv) != len(se):
        return math.inf
    if not sv:
        return 0.0
    return max(abs(x - y) for x, y in zip(sv, se))
