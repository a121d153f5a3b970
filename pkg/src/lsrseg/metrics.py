"""Quantitative verification: segmentation error, block-diagonality,
enforced-block-diagonal (EBD) condition checks, and grouping-effect stats.

These are numeric witnesses, not proofs: every failed flag carries a
recorded counterexample that can be serialized and inspected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import linalg
from .solvers import Coefficients, check_unit_columns, data_array

HUNGARIAN_THRESHOLD = 8  # exhaustive permutation search up to 8 clusters


class LengthMismatch(ValueError):
    """Predicted and ground-truth labelings have different lengths."""


@dataclass
class SegmentationReport:
    """End-to-end segmentation outcome plus per-stage wall times."""

    error_rate: float | None
    aligned_permutation: dict[int, int] | None
    block_diag_violation: float
    wall_times: dict[str, float] = field(default_factory=dict)
    affinity_seconds: float = 0.0
    n_samples: int = 0
    n_clusters: int = 0
    predicted_labels: list[int] = field(default_factory=list)
    truth_available: bool = False
    degenerate_affinity: bool = False
    eigen_tie: bool = False
    zero_degree: tuple[int, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["zero_degree"] = list(self.zero_degree)
        return d


@dataclass
class EBDCheckResult:
    """Outcome of the three block-diagonality-enforcing condition checks."""

    criterion: str
    trials: int
    permutation_invariance_pass: bool
    diagonal_dominance_pass: bool
    additivity_pass: bool | None
    counterexamples: dict[str, dict] = field(default_factory=dict)

    def passes(self, require_additivity: bool = True) -> bool:
        ok = self.permutation_invariance_pass and self.diagonal_dominance_pass
        if require_additivity and self.additivity_pass is not None:
            ok = ok and self.additivity_pass
        return ok

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class GroupingEffectSummary:
    """Pairwise correlation vs coefficient-difference statistics."""

    lam: float
    pairs: list[tuple[int, int, float, float]]  # (i, j, r, row_diff_norm)
    max_ratio: float
    min_slack: float
    n_checked: int

    def bound_holds(self, tol: float = 1e-9) -> bool:
        return self.min_slack >= -tol


def _labels_array(labels) -> np.ndarray:
    labels = getattr(labels, "labels", labels)
    arr = np.asarray(labels, dtype=int)
    if arr.ndim != 1:
        raise ValueError("labels must be 1-D")
    return arr


def coefficient_array(z) -> np.ndarray:
    if isinstance(z, Coefficients):
        return z.z
    return linalg.as_matrix(z, name="coefficients")


def align_clusters(pred, truth) -> tuple[float, dict[int, int]]:
    """Best-permutation alignment of predicted onto true cluster labels.

    Returns (error_rate, mapping) where mapping sends predicted label ids
    to the true label ids they were matched with. Exhaustive search is used
    up to 8 clusters, the Hungarian assignment beyond that.
    """
    p = _labels_array(pred)
    t = _labels_array(truth)
    if p.shape[0] != t.shape[0]:
        raise LengthMismatch(f"prediction has {p.shape[0]} labels, truth has {t.shape[0]}")
    n = p.shape[0]
    if n == 0:
        return 0.0, {}

    p_ids, p_inv = np.unique(p, return_inverse=True)
    t_ids, t_inv = np.unique(t, return_inverse=True)
    kp, kt = p_ids.size, t_ids.size
    confusion = np.zeros((kp, kt), dtype=int)
    np.add.at(confusion, (p_inv, t_inv), 1)

    if max(kp, kt) <= HUNGARIAN_THRESHOLD:
        size = max(kp, kt)
        padded = np.zeros((size, size), dtype=int)
        padded[:kp, :kt] = confusion
        best_perm, best_matches = None, -1
        for perm in itertools.permutations(range(size)):
            matches = int(padded[np.arange(size), perm].sum())
            if matches > best_matches:
                best_matches, best_perm = matches, perm
        mapping = {
            int(p_ids[a]): int(t_ids[best_perm[a]])
            for a in range(kp)
            if best_perm[a] < kt
        }
        matches = best_matches
    else:
        rows, cols = linear_sum_assignment(-confusion)
        matches = int(confusion[rows, cols].sum())
        mapping = {int(p_ids[a]): int(t_ids[b]) for a, b in zip(rows, cols)}

    return 1.0 - matches / n, mapping


def segmentation_error(pred, truth) -> float:
    """Fraction of misassigned points under the best label permutation."""
    error, _ = align_clusters(pred, truth)
    return error


def block_diag_violation(z, truth) -> float:
    """Share of absolute coefficient mass falling across cluster boundaries."""
    mat = coefficient_array(z)
    labels = _labels_array(truth)
    if labels.shape[0] != mat.shape[0] or mat.shape[0] != mat.shape[1]:
        raise LengthMismatch(
            f"labels length {labels.shape[0]} does not match matrix {mat.shape}"
        )
    magnitude = np.abs(mat)
    total = float(magnitude.sum())
    if total == 0.0:
        return 0.0
    cross = labels[:, np.newaxis] != labels[np.newaxis, :]
    return float(magnitude[cross].sum()) / total


# ---------------------------------------------------------------------------
# Criteria for the EBD condition checks.
# ---------------------------------------------------------------------------

def l1_norm(z: np.ndarray) -> float:
    return float(np.abs(z).sum())


def frobenius_norm(z: np.ndarray) -> float:
    return float(np.linalg.norm(z, "fro"))


def frobenius_norm_sq(z: np.ndarray) -> float:
    return float(np.sum(z * z))


def nuclear_norm(z: np.ndarray) -> float:
    return float(linalg.singular_values(z).sum())


def gram_l1(z: np.ndarray) -> float:
    return float(np.abs(z.T @ z).sum())


def rank_criterion(z: np.ndarray) -> float:
    return float(linalg.matrix_rank(z))


def msr_criterion(delta: float = 1.0):
    """l1 plus delta times the nuclear norm."""

    def criterion(z: np.ndarray) -> float:
        return l1_norm(z) + delta * nuclear_norm(z)

    return criterion


def power_criterion(p: float, s: float = 1.0):
    """(sum_ij |Z_ij|^p)^s. Additivity only holds for s = 1."""

    def criterion(z: np.ndarray) -> float:
        return float(np.sum(np.abs(z) ** p) ** s)

    return criterion


CRITERIA = {
    "l1": l1_norm,
    "frobenius": frobenius_norm,
    "frobenius-sq": frobenius_norm_sq,
    "nuclear": nuclear_norm,
    "gram-l1": gram_l1,
    "rank": rank_criterion,
    "msr": msr_criterion(1.0),
}

# Criteria whose trials must stay in the nonnegative orthant (SSQP domain).
NONNEGATIVE_CRITERIA = {"gram-l1"}


def _ebd_witness(trial: int, z: np.ndarray, **values) -> dict:
    witness = {"trial": trial, "z": z.tolist()}
    witness.update({k: float(v) if np.isscalar(v) else v for k, v in values.items()})
    return witness


def check_ebd(
    f,
    trials: int = 200,
    seed: int = 0,
    nonnegative: bool = False,
    name: str | None = None,
    check_additivity: bool = True,
) -> EBDCheckResult:
    """Numerically test the three enforced-block-diagonal conditions on f.

    Per trial a random 2-block matrix Z = [[A, B], [C, D]] is drawn and we
    require (1) f(Z) = f(ZP) for a random permutation P, (2) f(Z) > f(Z_D)
    where Z_D zeroes the off-diagonal blocks (strict because the generated
    off-blocks carry mass), and (3) f(Z_D) = f(A) + f(D). The first
    counterexample per condition is recorded.
    """
    rng = np.random.default_rng(seed)
    perm_ok, dom_ok, add_ok = True, True, True
    counterexamples: dict[str, dict] = {}

    for trial in range(trials):
        n1 = int(rng.integers(2, 6))
        n2 = int(rng.integers(2, 6))
        n = n1 + n2
        while True:
            full = rng.standard_normal((n, n))
            if nonnegative:
                full = np.abs(full)
            off_mass = np.abs(full[:n1, n1:]).sum() + np.abs(full[n1:, :n1]).sum()
            if off_mass >= 1e-6:
                break
        a = full[:n1, :n1]
        d = full[n1:, n1:]
        zd = np.zeros_like(full)
        zd[:n1, :n1] = a
        zd[n1:, n1:] = d

        fz = f(full)
        fzd = f(zd)
        scale = 1.0 + abs(fz)

        if perm_ok:
            p = np.eye(n)[:, rng.permutation(n)]
            fzp = f(full @ p)
            if abs(fz - fzp) > 1e-9 * scale:
                perm_ok = False
                counterexamples["permutation"] = _ebd_witness(
                    trial, full, f_z=fz, f_zp=fzp
                )
        if dom_ok:
            if fz < fzd - 1e-9 * scale or fz - fzd <= 1e-7 * scale:
                dom_ok = False
                counterexamples["dominance"] = _ebd_witness(
                    trial, full, f_z=fz, f_zd=fzd
                )
        if check_additivity and add_ok:
            fa, fd = f(a), f(d)
            if abs(fzd - (fa + fd)) > 1e-9 * (1.0 + abs(fzd)):
                add_ok = False
                counterexamples["additivity"] = _ebd_witness(
                    trial, zd, f_zd=fzd, f_a=fa, f_d=fd
                )

    return EBDCheckResult(
        criterion=name or getattr(f, "__name__", "criterion"),
        trials=trials,
        permutation_invariance_pass=perm_ok,
        diagonal_dominance_pass=dom_ok,
        additivity_pass=add_ok if check_additivity else None,
        counterexamples=counterexamples,
    )


def grouping_effect_stats(z: Coefficients, x) -> GroupingEffectSummary:
    """Check the grouping bound of a ridge representation against its data.

    For every column pair (i, j) with correlation r = x_i^T x_j (a negative
    r is treated by sign-flipping x_j, which flips the sign of row j), the
    per-query bound |Z_ic - Z_jc| <= sqrt(2(1 - r)) / lam is verified for
    all query columns c. Pairs touching the query column are skipped when
    the diagonal is constrained, since that coefficient is pinned to zero.
    """
    if not isinstance(z, Coefficients):
        raise TypeError("grouping_effect_stats needs solver Coefficients (for lam)")
    if z.lam <= 0:
        raise ValueError("grouping bound requires lam > 0")
    mat = data_array(x)
    check_unit_columns(mat)
    n = mat.shape[1]
    if z.n != n:
        raise LengthMismatch(f"coefficients are {z.n}x{z.n}, data has {n} columns")
    gram = mat.T @ mat
    col_norms = np.linalg.norm(mat, axis=0)

    pairs = []
    max_ratio = 0.0
    min_slack = np.inf
    n_checked = 0
    for i in range(n):
        for j in range(i + 1, n):
            r_raw = float(np.clip(gram[i, j], -1.0, 1.0))
            sign = -1.0 if r_raw < 0 else 1.0
            r_eff = abs(r_raw) if r_raw < 0 else r_raw
            rhs = np.sqrt(max(2.0 * (1.0 - r_eff), 0.0)) / z.lam
            row_diff = float(np.linalg.norm(z.z[i, :] - sign * z.z[j, :]))
            pairs.append((i, j, r_raw, row_diff))
            for c in range(n):
                if z.diag_constrained and c in (i, j):
                    continue
                lhs = abs(z.z[i, c] - sign * z.z[j, c]) / col_norms[c]
                slack = rhs - lhs
                min_slack = min(min_slack, slack)
                if rhs > 0:
                    max_ratio = max(max_ratio, lhs / rhs)
                n_checked += 1

    if not np.isfinite(min_slack):
        min_slack = 0.0
    return GroupingEffectSummary(
        lam=z.lam,
        pairs=pairs,
        max_ratio=float(max_ratio),
        min_slack=float(min_slack),
        n_checked=n_checked,
    )
