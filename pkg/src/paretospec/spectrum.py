"""Pareto spectra through principal sub-tensor enumeration.

A pair (value, y) with y >= 0, y != 0 is a Pareto H-eigenpair of A when

    A y^m = value * sum_i y_i^m,    A y^{m-1} - value * y^{[m-1]} >= 0,

and a Pareto Z-eigenpair when the same holds with y^{[m-1]} replaced by
(y.y)^{(m-2)/2} y and the scalar equation uses (y.y)^{m/2}.  Every such pair
is an interior eigenpair of the principal sub-tensor on its support N,
embedded by zero-filling, and is admissible exactly when the complement
components of A y^{m-1} are nonnegative.  Enumerating all nonempty subsets
N of the index set therefore produces the complete spectrum, up to the
completeness of the per-subset interior solver.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .eigen import (
    VECTOR_DEDUP_TOL,
    EigenPair,
    Kind,
    SolverConfig,
    solve_interior,
    solved_exhaustively,
)
from .tensor import Tensor, embed

DEFAULT_SLACK_TOL = 1e-9
# 2^16 subsets is the largest enumeration accepted by default.
DIM_GUARD = 16


class EmptySpectrumError(RuntimeError):
    """No Pareto eigenpair was found where at least one was requested."""


@dataclass(frozen=True)
class SubsetCertificate:
    """One admissible Pareto eigenpair, tied to the subset that produced it.

    `pair` is the interior eigenpair of the principal sub-tensor; `vector` is
    its zero-filled embedding (unit m-norm for H, unit 2-norm for Z).
    `slacks` holds the complement components of A y^{m-1} - value * rhs in
    ascending index order; `boundary` marks a slack inside (-slack_tol, 0),
    admitted by tolerance only.
    """

    subset: tuple[int, ...]
    pair: EigenPair
    vector: np.ndarray
    slacks: np.ndarray
    boundary: bool

    @property
    def value(self) -> float:
        return self.pair.value


@dataclass(frozen=True)
class ParetoSpectrum:
    """All certificates found for one kind, ordered by (|subset|, subset, value)."""

    kind: Kind
    items: tuple[SubsetCertificate, ...]
    min_value: float | None
    complete: bool

    def values(self) -> list[float]:
        return [c.value for c in self.items]


def complement_slacks(t: Tensor, subset, w: np.ndarray) -> np.ndarray:
    """Components of A y^{m-1} off the subset, for y the zero-filled embedding of w.

    For an interior eigenpair of the sub-tensor these are exactly the
    quantities whose nonnegativity makes the embedded pair admissible; the
    on-subset components already match value * rhs by the eigen equations.
    """
    sub = tuple(sorted(int(i) for i in subset))
    y = embed(np.asarray(w, dtype=np.float64), sub, t.dim)
    c = t.apply_contract(y)
    comp = [i for i in range(t.dim) if i not in set(sub)]
    return c[comp]


def pareto_spectrum(
    t: Tensor,
    kind: Kind,
    config: SolverConfig | None = None,
    slack_tol: float = DEFAULT_SLACK_TOL,
    dim_guard: int = DIM_GUARD,
) -> ParetoSpectrum:
    """Enumerate subsets in increasing cardinality and collect admissible pairs.

    Duplicate pairs reachable from several subsets keep the certificate of
    the smallest (then lexicographically first) subset.  The `complete` flag
    is True only when every sub-problem was solved by an exhaustive method
    (dimension 1 or order 2); any multistart sub-solve withdraws the claim.
    """
    if kind not in ("H", "Z"):
        raise ValueError(f"kind must be 'H' or 'Z', got {kind!r}")
    if not slack_tol > 0:
        raise ValueError(f"slack_tol must be positive, got {slack_tol}")
    if t.dim > dim_guard:
        raise ValueError(
            f"dimension {t.dim} exceeds the enumeration guard {dim_guard}: "
            f"2^{t.dim} principal sub-tensors"
        )
    cfg = config if config is not None else SolverConfig()
    items: list[SubsetCertificate] = []
    complete = True
    for card in range(1, t.dim + 1):
        for subset in itertools.combinations(range(t.dim), card):
            sub = t.principal_subtensor(subset)
            if not solved_exhaustively(sub):
                complete = False
            for pair in solve_interior(sub, kind, cfg):
                slacks = complement_slacks(t, subset, pair.vector)
                if slacks.size and float(slacks.min()) < -slack_tol:
                    continue
                cert = SubsetCertificate(
                    subset=subset,
                    pair=pair,
                    vector=embed(pair.vector, subset, t.dim),
                    slacks=slacks,
                    boundary=bool(slacks.size and float(slacks.min()) < 0.0),
                )
                if not _duplicates_earlier(cert, items, cfg.dedup_tol):
                    items.append(cert)
    min_value = min((c.value for c in items), default=None)
    return ParetoSpectrum(kind=kind, items=tuple(items), min_value=min_value, complete=complete)


def _duplicates_earlier(cert: SubsetCertificate, kept: list[SubsetCertificate], dedup_tol: float) -> bool:
    return any(
        abs(cert.value - k.value) <= dedup_tol
        and np.abs(cert.vector - k.vector).max() <= VECTOR_DEDUP_TOL
        for k in kept
    )


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking a claimed Pareto pair against the definition.

    Violations: `nonneg` is the largest negative part of y; `value_eq` is the
    scalar equation residual relative to max(1, |lhs|, |rhs|); `slack` is the
    largest negative component of A y^{m-1} - value * rhs(y).  The first
    condition whose violation exceeds the tolerance is reported.
    """

    ok: bool
    failed_condition: str | None
    worst_violation: float
    nonneg_violation: float
    value_violation: float
    slack_violation: float
    slacks: np.ndarray


def verify_pareto_pair(t: Tensor, value: float, y: np.ndarray, kind: Kind, tol: float = 1e-8) -> VerifyReport:
    """Check the defining inequalities of a Pareto pair at tolerance `tol`.

    Scale-invariant in y by design of the violations; y must be nonzero.
    """
    if kind not in ("H", "Z"):
        raise ValueError(f"kind must be 'H' or 'Z', got {kind!r}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (t.dim,):
        raise ValueError(f"vector shape {y.shape} incompatible with dimension {t.dim}")
    if not np.isfinite(y).all():
        raise ValueError("vector has non-finite entries")
    if np.abs(y).max() == 0.0:
        raise ValueError("vector must be nonzero")
    m = t.order
    value = float(value)

    nonneg_violation = float(max(0.0, -y.min()))

    lhs = t.apply_full(y)
    if kind == "H":
        level = float(np.sum(y**m))
        rhs_vec = y ** (m - 1)
    else:
        q = float(y @ y)
        level = q ** (m / 2.0)
        rhs_vec = q ** ((m - 2) / 2.0) * y
    rhs = value * level
    value_violation = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))

    slacks = t.apply_contract(y) - value * rhs_vec
    slack_violation = float(max(0.0, -slacks.min()))

    failed = None
    if nonneg_violation > tol:
        failed = "nonnegativity"
    elif value_violation > tol:
        failed = "value-equation"
    elif slack_violation > tol:
        failed = "complement-slacks"
    return VerifyReport(
        ok=failed is None,
        failed_condition=failed,
        worst_violation=float(max(nonneg_violation, value_violation, slack_violation)),
        nonneg_violation=nonneg_violation,
        value_violation=float(value_violation),
        slack_violation=slack_violation,
        slacks=slacks,
    )


def min_pareto(
    t: Tensor,
    kind: Kind,
    config: SolverConfig | None = None,
    slack_tol: float = DEFAULT_SLACK_TOL,
) -> tuple[float, np.ndarray]:
    """Smallest Pareto eigenvalue found, with its eigenvector.

    For symmetric tensors this equals the minimum of A x^m over the
    nonnegative part of the unit sphere of the matching norm; for
    non-symmetric input that identity has no guarantee, so a warning is
    issued and the raw spectrum minimum is returned.
    """
    if not t.symmetric:
        warnings.warn(
            "minimum Pareto eigenvalue of a non-symmetric tensor does not certify "
            "the constrained polynomial minimum",
            stacklevel=2,
        )
    spec = pareto_spectrum(t, kind, config=config, slack_tol=slack_tol)
    if not spec.items:
        raise EmptySpectrumError(
            f"no Pareto {kind}-eigenpair found (dimension {t.dim}, order {t.order})"
        )
    best = min(spec.items, key=lambda c: c.value)
    return best.value, best.vector
