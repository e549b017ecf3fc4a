"""Minimize the homogeneous form A x^m over the nonnegative unit sphere.

The feasible set is {x >= 0, ||x||_k = 1} with k = m for the H geometry and
k = 2 for the Z geometry.  The optimizer is projected gradient descent with
Armijo backtracking, run from many random starts in one vectorized batch.
The projection is the componentwise clamp at zero followed by rescaling to
the sphere.  Gradients use the symmetric part of the tensor, which leaves
the objective unchanged; KKT quantities are reported against the tensor as
given.

This module is the independent check on the spectral route: for symmetric
tensors the minimum value must match the smallest Pareto eigenvalue of the
matching kind.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .eigen import Kind
from .eigen import SolverConfig
from .tensor import Tensor, knorm

# Projected-gradient stationarity target (infinity norm).
PG_TOL = 1e-9
# Armijo sufficient-decrease fraction and backtracking limit.
_ARMIJO = 1e-4
_MAX_BACKTRACKS = 50
# Spectral step clamp.
_BB_MIN = 1e-10
_BB_MAX = 1e6

# grid_lower_bound guards: full simplex grids get huge fast.
_GRID_MAX_DIM = 4
_GRID_MIN_RESOLUTION = 8
# feasibility slop accepted by kkt_residual before declaring x infeasible
_FEAS_TOL = 1e-6


@dataclass(frozen=True)
class MinimizeResult:
    """Best point found over all starts; a heuristic global minimum."""

    value: float
    argmin: np.ndarray
    kkt_residual: float
    kind: Kind
    starts_used: int


def _norm_exponent(kind: Kind, m: int) -> float:
    return float(m) if kind == "H" else 2.0


def _project(X: np.ndarray, k: float) -> np.ndarray:
    """Clamp negatives, rescale rows to the unit k-norm sphere.

    Rows that clamp to zero have no defined projection; they come back NaN
    and the caller treats them as rejected trial points.
    """
    C = np.maximum(X, 0.0)
    nr = np.sum(C**k, axis=1) ** (1.0 / k)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = C / nr[:, None]
    out[nr == 0.0] = np.nan
    return out


def _tangential_gradient(s: Tensor, X: np.ndarray, m: int, k: float) -> np.ndarray:
    """Objective gradient minus its component along the k-norm sphere normal.

    The sphere {sum x_i^k = 1} has Euclidean normal x^{[k-1]} at x, while the
    rescaling in _project corrects along x itself.  For k > 2 those differ:
    stepping down the raw gradient and rescaling can increase the objective,
    so the descent direction must be tangent before the retraction.  The
    removal keeps the k-norm constant to first order, making the rescale a
    second-order correction.
    """
    G = m * s.contract_batch(X)
    N = X ** (k - 1.0)
    gn = np.einsum("bi,bi->b", G, N)
    nn = np.einsum("bi,bi->b", N, N)
    with np.errstate(invalid="ignore", divide="ignore"):
        coef = np.where(nn > 0, gn / nn, 0.0)
    return G - coef[:, None] * N


def minimize(t: Tensor, kind: Kind, config: SolverConfig | None = None) -> MinimizeResult:
    """Heuristic minimum of A x^m over the nonnegative unit sphere of the kind.

    Multistart projected gradient; deterministic for a fixed config.  The
    reported kkt_residual is computed against the tensor as given, so for
    non-symmetric input it may stay large even at a true minimizer of the
    (symmetrized) objective.
    """
    if kind not in ("H", "Z"):
        raise ValueError(f"kind must be 'H' or 'Z', got {kind!r}")
    cfg = config if config is not None else SolverConfig()
    if not t.symmetric:
        warnings.warn(
            "minimizing a non-symmetric tensor: the objective uses its symmetric part",
            stacklevel=2,
        )
    s = t if t.symmetric else t.symmetrized()
    m, d = t.order, t.dim
    k = _norm_exponent(kind, m)
    B = cfg.resolve_starts(d)
    rng = np.random.default_rng(cfg.seed)
    X = _project(rng.uniform(0.1, 1.0, size=(B, d)), k)
    F = s.apply_full_batch(X)
    active = np.ones(B, dtype=bool)
    # previous iterate and gradient feed the spectral (Barzilai-Borwein)
    # step length that seeds each Armijo backtrack
    prev_X = X.copy()
    prev_G = _tangential_gradient(s, X, m, k)

    with np.errstate(all="ignore"):
        for _ in range(cfg.max_iters):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            Xa = X[idx]
            G = _tangential_gradient(s, Xa, m, k)
            stat = Xa - _project(Xa - G, k)
            stat_norm = np.abs(stat).max(axis=1)
            stat_norm = np.where(np.isfinite(stat_norm), stat_norm, np.inf)
            done = stat_norm <= PG_TOL
            active[idx[done]] = False
            keep = ~done
            idx = idx[keep]
            if idx.size == 0:
                continue
            Xa, Ga, Fa = X[idx], G[keep], F[idx]

            sv = Xa - prev_X[idx]
            yv = Ga - prev_G[idx]
            num = np.einsum("bi,bi->b", sv, sv)
            den = np.einsum("bi,bi->b", sv, yv)
            bb = np.where((den > 1e-30) & np.isfinite(den), num / np.maximum(den, 1e-300), 1.0)
            bb = np.clip(np.nan_to_num(bb, nan=1.0), _BB_MIN, _BB_MAX)

            alpha = np.ones(idx.size)
            pend = np.arange(idx.size)
            for _ in range(_MAX_BACKTRACKS + 1):
                if pend.size == 0:
                    break
                lam = (bb[pend] * alpha[pend])[:, None]
                trial = _project(Xa[pend] - lam * Ga[pend], k)
                tX = np.nan_to_num(trial, nan=0.0)
                tF = s.apply_full_batch(tX)
                finite = np.isfinite(trial).all(axis=1)
                decrease = np.einsum("bi,bi->b", Ga[pend], Xa[pend] - tX)
                ok = finite & (tF <= Fa[pend] - _ARMIJO * decrease) & (tF < Fa[pend])
                hit = pend[ok]
                prev_X[idx[hit]] = Xa[hit]
                prev_G[idx[hit]] = Ga[hit]
                X[idx[hit]] = trial[ok]
                F[idx[hit]] = tF[ok]
                pend = pend[~ok]
                alpha[pend] *= 0.5
            # members that cannot decrease along the projected path are parked
            active[idx[pend]] = False

    # lexicographic tie-break on exactly equal values keeps the result stable
    best = min(range(B), key=lambda b: (F[b], tuple(X[b])))
    x_best = X[best].copy()
    _, _, kkt = kkt_residual(t, x_best, kind)
    return MinimizeResult(
        value=float(F[best]),
        argmin=x_best,
        kkt_residual=kkt,
        kind=kind,
        starts_used=B,
    )


def kkt_residual(t: Tensor, x: np.ndarray, kind: Kind) -> tuple[float, np.ndarray, float]:
    """First-order optimality data at a feasible point.

    Returns (lambda_est, y_est, residual): the Rayleigh-style multiplier
    estimate, the dual slack vector A x^{m-1} - lambda_est * rhs(x), and
    max(negative slack part, |x . y_est|).  Zero residual is the KKT system
    of the constrained minimization, i.e. a Pareto eigenpair.
    """
    if kind not in ("H", "Z"):
        raise ValueError(f"kind must be 'H' or 'Z', got {kind!r}")
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (t.dim,):
        raise ValueError(f"vector shape {x.shape} incompatible with dimension {t.dim}")
    if not np.isfinite(x).all():
        raise ValueError("point has non-finite entries")
    m = t.order
    k = _norm_exponent(kind, m)
    if x.min() < -_FEAS_TOL or abs(knorm(x, k) - 1.0) > _FEAS_TOL:
        raise ValueError("infeasible point: needs x >= 0 on the unit sphere of the kind")

    if kind == "H":
        level = float(np.sum(x**m))
        rhs_vec = x ** (m - 1)
    else:
        q = float(x @ x)
        level = q ** (m / 2.0)
        rhs_vec = q ** ((m - 2) / 2.0) * x
    lambda_est = t.apply_full(x) / level
    y_est = t.apply_contract(x) - lambda_est * rhs_vec
    residual = float(max(max(0.0, -y_est.min()), abs(float(x @ y_est))))
    return float(lambda_est), y_est, residual


def _simplex_grid(dim: int, resolution: int) -> np.ndarray:
    """All nonnegative integer compositions of `resolution`, scaled to the simplex."""
    rows = []
    for bars in itertools.combinations(range(resolution + dim - 1), dim - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(resolution + dim - 2 - prev)
        rows.append(parts)
    return np.array(rows, dtype=np.float64) / float(resolution)


def grid_lower_bound(t: Tensor, kind: Kind, resolution: int = 64) -> float:
    """Smallest objective value over a dense simplex grid mapped to the sphere.

    A coarse certificate to sanity-check the optimizer: every grid point is
    feasible, so the result can never fall below the true minimum, and for
    fine grids it lands close above it.  Guarded to dimension <= 4.
    """
    if kind not in ("H", "Z"):
        raise ValueError(f"kind must be 'H' or 'Z', got {kind!r}")
    if t.dim > _GRID_MAX_DIM:
        raise ValueError(f"grid evaluation limited to dimension {_GRID_MAX_DIM}, got {t.dim}")
    if int(resolution) != resolution or resolution < _GRID_MIN_RESOLUTION:
        raise ValueError(f"resolution must be an integer >= {_GRID_MIN_RESOLUTION}")
    k = _norm_exponent(kind, t.order)
    P = _simplex_grid(t.dim, int(resolution))
    nr = np.sum(P**k, axis=1) ** (1.0 / k)
    X = P / nr[:, None]
    best = np.inf
    for lo in range(0, X.shape[0], 8192):
        vals = t.apply_full_batch(X[lo : lo + 8192])
        best = min(best, float(vals.min()))
    return best
