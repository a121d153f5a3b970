"""Least squares regression solvers for self-representation.

Each solver returns an n x n coefficient matrix Z expressing every data
column as a combination of the others:

* ``lsr_constrained``  min ||Z||_F  s.t.  X = XZ (optionally diag(Z) = 0),
  solved per column by minimum-norm least squares.
* ``lsr1``             min ||X - XZ||_F^2 + lam*||Z||_F^2  s.t. diag(Z) = 0,
  closed form Z = -D / diag(D) with D = (X^T X + lam*I)^{-1}.
* ``lsr2``             the unconstrained ridge form,
  closed form Z = (X^T X + lam*I)^{-1} X^T X.
* ``column_oracle_ridge``  the slow reference: one independent SPD solve per
  column, used to cross-check the closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .datagen import DataMatrix

CONSTRAINED = "constrained"
LSR1 = "lsr1"
LSR2 = "lsr2"

FEASIBILITY_TOL = 1e-8
UNIT_NORM_TOL = 1e-10


class NonPositiveLambda(ValueError):
    """Regularization weight must be strictly positive."""


class InfeasibleColumn(ValueError):
    """A column is not representable by the allowed dictionary columns."""

    def __init__(self, index: int, residual: float):
        self.index = index
        self.residual = residual
        super().__init__(
            f"column {index} is not representable: relative residual {residual:.3e}"
        )


class UnnormalizedColumn(ValueError):
    """A column expected to have unit l2 norm does not."""

    def __init__(self, index: int, norm: float):
        self.index = index
        self.norm = norm
        super().__init__(f"column {index} has l2 norm {norm!r}, expected 1")


@dataclass
class Coefficients:
    """Solver output: the representation matrix plus how it was produced."""

    z: np.ndarray
    lam: float
    variant: str
    diag_constrained: bool

    def __post_init__(self):
        self.z = linalg.as_matrix(self.z, name="coefficient matrix")
        if self.z.shape[0] != self.z.shape[1]:
            raise ValueError(f"coefficient matrix must be square, got {self.z.shape}")
        if self.lam < 0:
            raise ValueError("lam must be nonnegative")
        if self.diag_constrained and np.any(np.diag(self.z) != 0.0):
            raise ValueError("diagonal must be exactly zero when diag-constrained")

    @property
    def n(self) -> int:
        return self.z.shape[0]


@dataclass
class GroupingBoundReport:
    """Pairwise coefficient-difference bound check for one ridge query.

    Each entry of ``pairs`` is (i, j, lhs, rhs, r) with
    lhs = |z_i - z_j| / ||y||, rhs = sqrt(2(1 - r)) / lam, r = x_i^T x_j.
    """

    lam: float
    coefficients: np.ndarray
    pairs: list[tuple[int, int, float, float, float]] = field(default_factory=list)

    @property
    def max_slack_violation(self) -> float:
        """Largest lhs - rhs over all pairs (negative means the bound holds)."""
        if not self.pairs:
            return 0.0
        return max(lhs - rhs for _, _, lhs, rhs, _ in self.pairs)

    def holds(self, tol: float = 1e-9) -> bool:
        return self.max_slack_violation <= tol


def data_array(x) -> np.ndarray:
    """Accept a DataMatrix or a plain array-like; return the d x n array."""
    if isinstance(x, DataMatrix):
        return x.x
    return linalg.as_matrix(x, name="data matrix")


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not lam > 0:
        raise NonPositiveLambda(f"lam must be > 0, got {lam}")
    return lam


def lsr_constrained(
    x,
    zero_diag: bool = True,
    tol: float = FEASIBILITY_TOL,
    sv_tol: float = linalg.SV_CUTOFF,
) -> Coefficients:
    """Minimum-Frobenius-norm solution of X = XZ, columnwise.

    Column i is the minimum-l2-norm z with Y_i z = x_i, where Y_i drops
    column i when ``zero_diag``. Raises InfeasibleColumn when a column is
    not in the span of its dictionary (relative residual above ``tol``),
    which happens under insufficient sampling. ``sv_tol`` is the relative
    singular-value cutoff of the pseudoinverse.
    """
    mat = data_array(x)
    n = mat.shape[1]
    z = np.zeros((n, n))
    for i in range(n):
        xi = mat[:, i]
        xi_norm = float(np.linalg.norm(xi))
        if zero_diag:
            if n == 1:
                if xi_norm > 0:
                    raise InfeasibleColumn(0, 1.0)
                continue
            keep = np.arange(n) != i
            dictionary = mat[:, keep]
        else:
            keep = np.ones(n, dtype=bool)
            dictionary = mat
        zi = linalg.pseudo_inverse(dictionary, tol=sv_tol) @ xi
        if xi_norm > 0:
            residual = float(np.linalg.norm(dictionary @ zi - xi)) / xi_norm
            if residual > tol:
                raise InfeasibleColumn(i, residual)
        z[keep, i] = zi
    return Coefficients(z, 0.0, CONSTRAINED, zero_diag)


def lsr1(x, lam: float) -> Coefficients:
    """Closed-form diag-constrained ridge representation.

    Computes D = (X^T X + lam*I)^{-1} once and rescales its columns,
    Z[:, i] = -D[:, i] / D[i, i] with a zero diagonal, instead of solving
    one reduced ridge system per column.
    """
    lam = _check_lambda(lam)
    mat = data_array(x)
    n = mat.shape[1]
    if n == 1:
        return Coefficients(np.zeros((1, 1)), lam, LSR1, True)
    gram = mat.T @ mat
    d = linalg.solve_spd(gram + lam * np.eye(n), np.eye(n))
    z = -d / np.diag(d)[np.newaxis, :]
    np.fill_diagonal(z, 0.0)
    return Coefficients(z, lam, LSR1, True)


def lsr2(x, lam: float) -> Coefficients:
    """Closed-form unconstrained ridge representation (X^T X + lam*I)^{-1} X^T X."""
    lam = _check_lambda(lam)
    mat = data_array(x)
    n = mat.shape[1]
    gram = mat.T @ mat
    z = linalg.solve_spd(gram + lam * np.eye(n), gram)
    return Coefficients(z, lam, LSR2, False)


def column_oracle_ridge(x, lam: float, zero_diag: bool = True) -> Coefficients:
    """Reference ridge solver: one independent SPD solve per column.

    Deliberately avoids the shared-inverse shortcut so it can serve as an
    oracle for ``lsr1`` (zero_diag=True) and ``lsr2`` (zero_diag=False).
    """
    lam = _check_lambda(lam)
    mat = data_array(x)
    n = mat.shape[1]
    z = np.zeros((n, n))
    for i in range(n):
        xi = mat[:, i]
        if zero_diag:
            if n == 1:
                continue
            keep = np.arange(n) != i
            dictionary = mat[:, keep]
        else:
            keep = np.ones(n, dtype=bool)
            dictionary = mat
        m = dictionary.shape[1]
        zi = linalg.solve_spd(
            dictionary.T @ dictionary + lam * np.eye(m), dictionary.T @ xi
        )
        z[keep, i] = zi
    return Coefficients(z, lam, LSR1 if zero_diag else LSR2, zero_diag)


def check_unit_columns(mat: np.ndarray, tol: float = UNIT_NORM_TOL) -> None:
    """Raise UnnormalizedColumn unless every column has unit l2 norm."""
    norms = np.linalg.norm(mat, axis=0)
    bad = np.nonzero(np.abs(norms - 1.0) > tol)[0]
    if bad.size:
        raise UnnormalizedColumn(int(bad[0]), float(norms[bad[0]]))


def grouping_bound_report(x, y, lam: float) -> GroupingBoundReport:
    """Solve the vector ridge problem and record the pairwise grouping bound.

    For z* = argmin ||y - Xz||^2 + lam*||z||^2 over unit-norm columns of X,
    every pair (i, j) satisfies |z_i - z_j| / ||y|| <= sqrt(2(1-r)) / lam
    with r the sample correlation x_i^T x_j.
    """
    lam = _check_lambda(lam)
    mat = data_array(x)
    check_unit_columns(mat)
    y_vec = np.asarray(y, dtype=np.float64).reshape(-1)
    if y_vec.shape[0] != mat.shape[0]:
        raise linalg.DimensionMismatch(
            f"query has {y_vec.shape[0]} entries, data has {mat.shape[0]} rows"
        )
    n = mat.shape[1]
    gram = mat.T @ mat
    z = linalg.solve_spd(gram + lam * np.eye(n), mat.T @ y_vec)
    y_norm = float(np.linalg.norm(y_vec))

    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            r = float(np.clip(gram[i, j], -1.0, 1.0))
            rhs = np.sqrt(max(2.0 * (1.0 - r), 0.0)) / lam
            lhs = abs(z[i] - z[j]) / y_norm if y_norm > 0 else 0.0
            pairs.append((i, j, float(lhs), float(rhs), r))
    return GroupingBoundReport(lam=lam, coefficients=z, pairs=pairs)
