"""Interior eigenpair solvers for the two tensor eigenvalue kinds.

An interior H-pair of an order-m tensor B (dimension d) is a solution of

    B w^{m-1} = lambda w^{[m-1]},   w > 0,   sum_i w_i^m = 1,

and an interior Z-pair solves

    B w^{m-1} = mu (w.w)^{(m-2)/2} w,   w > 0,   sum_i w_i^2 = 1.

Both are square polynomial systems in (w, lambda) once the normalization row
is appended.  Special structure is solved exactly:

  * d = 1: the single diagonal coefficient with w = (1).
  * m = 2: dense eigendecomposition; the two kinds coincide.
  * diagonal tensors, m >= 3: closed forms (H-pairs exist only when all
    diagonal entries are equal; Z-pairs exactly when they share a strict
    sign, with w_i proportional to |d_i|^(-1/(m-2))).

Everything else goes through a damped Newton iteration run from many random
starts at once; the whole batch moves in lockstep through vectorized
contraction kernels.  Multistart is a heuristic: it can miss roots, so no
completeness claim is attached to its output.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .tensor import Tensor, knorm

Kind = Literal["H", "Z"]

# Two pairs are duplicates when their values differ by at most the value
# dedup tolerance and their vectors by at most this much in infinity norm.
VECTOR_DEDUP_TOL = 1e-6

# Line search halvings before a Newton member is abandoned.
_MAX_HALVINGS = 30
# A member that fails to cut its residual by 10% within this many successive
# iterations is cycling, not converging; Newton inside a basin contracts much
# faster, so such members are dropped early.
_STAGNATION_WINDOW = 10
# Extra full Newton steps applied to accepted roots after renormalization.
_POLISH_STEPS = 2
# A root is genuine only if every eigen row cancels to this fraction of the
# magnitude of its own monomials; near-boundary pseudo-roots have rows that
# are small in absolute terms but O(1) relative to their shrinking scale.
_REL_ROOT_TOL = 1e-6


@dataclass(frozen=True)
class SolverConfig:
    """Multistart and tolerance knobs shared by the solvers.

    starts=None means 200 per dimension of the tensor actually being solved.
    """

    starts: int | None = None
    max_iters: int = 200
    tol: float = 1e-10
    pos_tol: float = 1e-8
    dedup_tol: float = 1e-8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.starts is not None and self.starts < 1:
            raise ValueError(f"starts must be >= 1, got {self.starts}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        for name in ("tol", "pos_tol", "dedup_tol"):
            v = getattr(self, name)
            if not v > 0:
                raise ValueError(f"{name} must be positive, got {v}")
        if self.dedup_tol < self.tol:
            warnings.warn(
                f"dedup_tol={self.dedup_tol} below tol={self.tol}: converged copies of "
                "one root may survive deduplication",
                stacklevel=2,
            )

    def resolve_starts(self, dim: int) -> int:
        return self.starts if self.starts is not None else 200 * dim


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with a unit eigenvector (m-norm for H, 2-norm for Z)."""

    value: float
    vector: np.ndarray
    kind: Kind
    residual: float


def residual(t: Tensor, pair: EigenPair) -> float:
    """Infinity norm of the defining system at the stored pair.

    Covers both the eigenvalue equation and the unit normalization row.
    """
    w = np.asarray(pair.vector, dtype=np.float64)
    m = t.order
    r = t.apply_contract(w) - pair.value * _rhs_single(pair.kind, m, w)
    return float(max(np.abs(r).max(initial=0.0), abs(_level_single(pair.kind, m, w) - 1.0)))


def solve_h_interior(t: Tensor, config: SolverConfig | None = None) -> list[EigenPair]:
    """All interior H-pairs found for `t`, deduplicated and sorted."""
    return solve_interior(t, "H", config)


def solve_z_interior(t: Tensor, config: SolverConfig | None = None) -> list[EigenPair]:
    """All interior Z-pairs found for `t`, deduplicated and sorted."""
    return solve_interior(t, "Z", config)


def solve_interior(t: Tensor, kind: Kind, config: SolverConfig | None = None) -> list[EigenPair]:
    if kind not in ("H", "Z"):
        raise ValueError(f"kind must be 'H' or 'Z', got {kind!r}")
    cfg = config if config is not None else SolverConfig()
    if t.dim == 1:
        a = t.slices.get((0, (0,) * (t.order - 1)), 0.0)
        return [EigenPair(float(a), np.array([1.0]), kind, 0.0)]
    if t.order == 2:
        cands = _matrix_candidates(t, cfg)
    elif t.is_diagonal():
        cands = _diagonal_candidates(t, kind)
    else:
        cands = _newton_candidates(t, kind, cfg)
    return _finalize(t, kind, cands, cfg)


def solved_exhaustively(t: Tensor) -> bool:
    """True when solve_interior enumerates every interior pair, not a heuristic subset."""
    return t.dim == 1 or t.order == 2


# -- kind-specific pieces ---------------------------------------------------


def _rhs_batch(kind: Kind, m: int, W: np.ndarray) -> np.ndarray:
    """Right-hand side g(w) with B w^{m-1} = value * g(w); batched rows."""
    if kind == "H":
        return W ** (m - 1)
    q = np.einsum("bi,bi->b", W, W)
    return (q ** ((m - 2) / 2.0))[:, None] * W


def _rhs_single(kind: Kind, m: int, w: np.ndarray) -> np.ndarray:
    return _rhs_batch(kind, m, w[None, :])[0]


def _level_batch(kind: Kind, m: int, W: np.ndarray) -> np.ndarray:
    """Normalization level h(w); the solved system pins h(w) = 1."""
    if kind == "H":
        return np.sum(W**m, axis=1)
    return np.einsum("bi,bi->b", W, W)


def _level_single(kind: Kind, m: int, w: np.ndarray) -> float:
    return float(_level_batch(kind, m, w[None, :])[0])


def _normalize_rows(kind: Kind, m: int, W: np.ndarray) -> np.ndarray:
    k = float(m) if kind == "H" else 2.0
    nr = np.sum(np.abs(W) ** k, axis=1) ** (1.0 / k)
    return W / nr[:, None]


def _system_eval(t: Tensor, kind: Kind, W: np.ndarray, L: np.ndarray) -> np.ndarray:
    """Stacked residual F(w, value): eigen rows then the normalization row."""
    m = t.order
    F = np.empty((W.shape[0], t.dim + 1))
    F[:, : t.dim] = t.contract_batch(W) - L[:, None] * _rhs_batch(kind, m, W)
    F[:, t.dim] = _level_batch(kind, m, W) - 1.0
    return F


def _system_jac(t: Tensor, kind: Kind, W: np.ndarray, L: np.ndarray) -> np.ndarray:
    B, d = W.shape
    m = t.order
    J = np.zeros((B, d + 1, d + 1))
    Jc = t.contract_jacobian_batch(W)
    if kind == "H":
        Jg = np.zeros((B, d, d))
        Jg[:, np.arange(d), np.arange(d)] = (m - 1) * W ** (m - 2)
        dh = m * W ** (m - 1)
    else:
        q = np.einsum("bi,bi->b", W, W)
        outer = W[:, :, None] * W[:, None, :]
        Jg = (m - 2) * (q ** ((m - 4) / 2.0))[:, None, None] * outer
        Jg[:, np.arange(d), np.arange(d)] += (q ** ((m - 2) / 2.0))[:, None]
        dh = 2.0 * W
    J[:, :d, :d] = Jc - L[:, None, None] * Jg
    J[:, :d, d] = -_rhs_batch(kind, m, W)
    J[:, d, :d] = dh
    return J


# -- closed-form routes -------------------------------------------------------


def _matrix_candidates(t: Tensor, cfg: SolverConfig) -> list[tuple[float, np.ndarray]]:
    """Order 2: classical eigendecomposition; H and Z systems coincide."""
    d = t.dim
    M = np.zeros((d, d))
    for (i, (j,)), v in t.slices.items():
        M[i, j] = v
    if t.symmetric:
        vals, vecs = np.linalg.eigh(M)
    else:
        cvals, cvecs = np.linalg.eig(M)
        keep = np.abs(cvals.imag) <= 1e-10
        keep &= np.abs(cvecs.imag).max(axis=0) <= 1e-10
        vals, vecs = cvals[keep].real, cvecs[:, keep].real
    out = []
    for k in range(vals.size):
        v = vecs[:, k].copy()
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        if v.min() > cfg.pos_tol:
            out.append((float(vals[k]), v))
    return out


def _diagonal_candidates(t: Tensor, kind: Kind) -> list[tuple[float, np.ndarray]]:
    """Diagonal tensors of order >= 3; exact interior pairs or none.

    On a strictly positive vector the i-th eigen row reads d_i w_i^{m-1} =
    value * g_i(w).  For H this forces d_i = lambda for every i, so pairs
    exist only when all diagonal entries coincide.  For Z it forces
    d_i w_i^{m-2} = mu for all i, solvable exactly when the entries share a
    strict sign, with w_i proportional to |d_i|^(-1/(m-2)).
    """
    d = t.diagonal_entries()
    m = t.order
    if kind == "H":
        if np.all(d == d[0]):
            w = np.full(t.dim, t.dim ** (-1.0 / m))
            return [(float(d[0]), w)]
        return []
    if np.all(d == 0.0):
        # every positive unit vector pairs with 0; report one representative
        return [(0.0, np.full(t.dim, t.dim**-0.5))]
    if np.all(d > 0) or np.all(d < 0):
        u = np.abs(d) ** (-1.0 / (m - 2))
        w = u / np.sqrt(np.sum(u * u))
        mu = float(d[0] * w[0] ** (m - 2))
        return [(mu, w)]
    return []


# -- multistart Newton --------------------------------------------------------


def _solve_steps(J: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Newton steps solve(J, -F) per batch member, with a least-squares fallback."""
    try:
        s = np.linalg.solve(J, -F[:, :, None])[:, :, 0]
    except np.linalg.LinAlgError:
        s = np.empty_like(F)
        for r in range(F.shape[0]):
            try:
                s[r] = np.linalg.solve(J[r], -F[r])
            except np.linalg.LinAlgError:
                s[r] = np.linalg.lstsq(J[r], -F[r], rcond=None)[0]
    return s


def _newton_candidates(t: Tensor, kind: Kind, cfg: SolverConfig) -> list[tuple[float, np.ndarray]]:
    d, m = t.dim, t.order
    B = cfg.resolve_starts(d)
    rng = np.random.default_rng(cfg.seed)
    W = _normalize_rows(kind, m, rng.uniform(0.1, 1.0, size=(B, d)))
    L = t.apply_full_batch(W)
    alive = np.ones(B, dtype=bool)
    done = np.zeros(B, dtype=bool)
    streak = np.zeros(B, dtype=np.int64)

    with np.errstate(all="ignore"):
        Fnorm = np.abs(_system_eval(t, kind, W, L)).max(axis=1)
        best_seen = Fnorm.copy()
        done |= Fnorm <= cfg.tol
        for _ in range(cfg.max_iters):
            act = np.flatnonzero(alive & ~done)
            if act.size == 0:
                break
            Wa, La = W[act], L[act]
            F = _system_eval(t, kind, Wa, La)
            J = _system_jac(t, kind, Wa, La)
            step = _solve_steps(J, F)
            bad = ~np.isfinite(step).all(axis=1)
            base = Fnorm[act]

            alpha = np.ones(act.size)
            accepted = np.zeros(act.size, dtype=bool)
            pend = np.flatnonzero(~bad)
            for _ in range(_MAX_HALVINGS + 1):
                if pend.size == 0:
                    break
                tW = Wa[pend] + alpha[pend, None] * step[pend, :d]
                tL = La[pend] + alpha[pend] * step[pend, d]
                tF = _system_eval(t, kind, tW, tL)
                tn = np.abs(tF).max(axis=1)
                ok = np.isfinite(tn) & (tn < (1.0 - 1e-4 * alpha[pend]) * base[pend])
                hit = pend[ok]
                W[act[hit]] = tW[ok]
                L[act[hit]] = tL[ok]
                Fnorm[act[hit]] = tn[ok]
                accepted[hit] = True
                pend = pend[~ok]
                alpha[pend] *= 0.5
            alive[act[~accepted]] = False
            grown = np.abs(W[act]).max(axis=1) > 1e8
            alive[act[grown]] = False
            done[act] = Fnorm[act] <= cfg.tol

            improved = Fnorm[act] < 0.9 * best_seen[act]
            streak[act] = np.where(improved, 0, streak[act] + 1)
            best_seen[act] = np.minimum(best_seen[act], Fnorm[act])
            alive[act[streak[act] >= _STAGNATION_WINDOW]] = False

    roots = np.flatnonzero(alive & done)
    return [(float(L[r]), W[r].copy()) for r in roots]


def _polish(t: Tensor, kind: Kind, W: np.ndarray, L: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """A couple of undamped Newton steps to tighten renormalized roots."""
    with np.errstate(all="ignore"):
        for _ in range(_POLISH_STEPS):
            F = _system_eval(t, kind, W, L)
            J = _system_jac(t, kind, W, L)
            step = _solve_steps(J, F)
            nW = W + step[:, : t.dim]
            nL = L + step[:, t.dim]
            better = np.isfinite(nW).all(axis=1) & np.isfinite(nL)
            newF = np.abs(_system_eval(t, kind, np.where(better[:, None], nW, W), np.where(better, nL, L))).max(axis=1)
            oldF = np.abs(F).max(axis=1)
            take = better & (newF <= oldF)
            W = np.where(take[:, None], nW, W)
            L = np.where(take, nL, L)
    return W, L


def _finalize(t: Tensor, kind: Kind, cands: list[tuple[float, np.ndarray]], cfg: SolverConfig) -> list[EigenPair]:
    """Positivity filter, exact renormalization, polish, dedup, stable order."""
    if not cands:
        return []
    m = t.order
    W = np.array([w for _, w in cands])
    L = np.array([v for v, _ in cands])
    interior = W.min(axis=1) > cfg.pos_tol
    W, L = W[interior], L[interior]
    if W.shape[0] == 0:
        return []
    W = _normalize_rows(kind, m, W)
    W, L = _polish(t, kind, W, L)

    with np.errstate(all="ignore"):
        res = np.abs(_system_eval(t, kind, W, L)).max(axis=1)
        rhs = _rhs_batch(kind, m, W)
        rows = t.contract_batch(W) - L[:, None] * rhs
        scale = t.contract_magnitude_batch(W) + np.abs(L)[:, None] * np.abs(rhs)
        genuine = (np.abs(rows) <= _REL_ROOT_TOL * scale + 1e-14).all(axis=1)
    keep = np.isfinite(res) & (res <= cfg.tol) & (W.min(axis=1) > cfg.pos_tol) & genuine
    W, L, res = W[keep], L[keep], res[keep]
    if W.shape[0] == 0:
        return []

    order_idx = np.lexsort(tuple(W[:, j] for j in reversed(range(t.dim))) + (L,))
    pairs: list[EigenPair] = []
    for i in order_idx:
        dup = any(
            abs(L[i] - p.value) <= cfg.dedup_tol and np.abs(W[i] - p.vector).max() <= VECTOR_DEDUP_TOL
            for p in pairs
        )
        if not dup:
            pairs.append(EigenPair(float(L[i]), W[i].copy(), kind, float(res[i])))
    return pairs
