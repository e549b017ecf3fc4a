"""Core storage and evaluation for real tensors of order m and dimension n.

A tensor A = (a_{i1...im}) acts on a vector x through two contractions:

    full contraction   A x^m     = sum_{i1..im} a_{i1...im} x_{i1} ... x_{im}
    partial contraction (A x^{m-1})_i = sum_{i2..im} a_{i,i2...im} x_{i2} ... x_{im}

Only these two maps matter for eigenvalue analysis, so entries are stored in
"slice" form: coefficients with the same leading index and the same multiset
of trailing indices are summed into a single record.  The key is
(lead, trailing) with the trailing indices sorted ascending.  This is the
coarsest storage that still determines both contractions exactly.

Indices are 0-based throughout this package; the document parser is the only
place where 1-based input indices are translated.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

SliceKey = tuple[int, tuple[int, ...]]

# Relative tolerance used when checking whether stored slices already agree
# with their symmetrization.
_SYM_CHECK_RTOL = 1e-12


def _validate_index(idx: Sequence[int], order: int, dim: int) -> tuple[int, ...]:
    idx = tuple(int(i) for i in idx)
    if len(idx) != order:
        raise ValueError(f"index {idx} has length {len(idx)}, expected order {order}")
    for i in idx:
        if not 0 <= i < dim:
            raise ValueError(f"index {idx} out of range for dimension {dim}")
    return idx


def _multiset_permutations(counts: Counter[int], length: int) -> int:
    """Number of distinct orderings of a multiset given by `counts`."""
    total = math.factorial(length)
    for c in counts.values():
        total //= math.factorial(c)
    return total


@dataclass(frozen=True)
class Tensor:
    """Immutable order-m, dimension-n tensor in slice storage.

    slices maps (lead, sorted-trailing-tuple) -> summed coefficient.  The
    symmetric flag is set when the stored slices are consistent with a fully
    symmetric coefficient table (verified at build time, or forced by
    symmetrizing).
    """

    order: int
    dim: int
    slices: Mapping[SliceKey, float]
    symmetric: bool = False

    # Precomputed evaluation tables, derived from slices in __post_init__.
    _lead: np.ndarray = field(init=False, repr=False, compare=False)
    _expo: np.ndarray = field(init=False, repr=False, compare=False)
    _coef: np.ndarray = field(init=False, repr=False, compare=False)
    _proj: np.ndarray = field(init=False, repr=False, compare=False)
    _jac_expo: np.ndarray = field(init=False, repr=False, compare=False)
    _jac_proj: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        keys = sorted(self.slices)
        n, m = self.dim, self.order
        for lead, trail in keys:
            if not 0 <= lead < n:
                raise ValueError(f"slice lead {lead} out of range for dimension {n}")
            if len(trail) != m - 1 or tuple(sorted(trail)) != trail:
                raise ValueError(f"malformed trailing multiset {trail}")
            if any(not 0 <= j < n for j in trail):
                raise ValueError(f"trailing index out of range in {trail}")
            v = self.slices[(lead, trail)]
            if not math.isfinite(v):
                raise ValueError(f"non-finite coefficient for slice ({lead}, {trail})")

        k = len(keys)
        lead = np.zeros(k, dtype=np.intp)
        expo = np.zeros((k, n), dtype=np.float64)
        coef = np.zeros(k, dtype=np.float64)
        for r, (i, trail) in enumerate(keys):
            lead[r] = i
            coef[r] = self.slices[(i, trail)]
            for j in trail:
                expo[r, j] += 1.0
        proj = np.zeros((n, k))
        proj[lead, np.arange(k)] = coef

        # Differentiate each monomial coef * prod_j x_j^{expo[r, j]} once per
        # variable with a positive exponent; rows feed the Jacobian of the
        # partial contraction.
        jac_rows: list[np.ndarray] = []
        jac_lead: list[int] = []
        jac_col: list[int] = []
        jac_coef: list[float] = []
        for r in range(k):
            for j in range(n):
                e = expo[r, j]
                if e > 0:
                    row = expo[r].copy()
                    row[j] -= 1.0
                    jac_rows.append(row)
                    jac_lead.append(int(lead[r]))
                    jac_col.append(j)
                    jac_coef.append(coef[r] * e)
        k2 = len(jac_rows)
        jac_expo = np.array(jac_rows) if k2 else np.zeros((0, n))
        jac_proj = np.zeros((n * n, k2))
        if k2:
            flat = np.array(jac_lead, dtype=np.intp) * n + np.array(jac_col, dtype=np.intp)
            jac_proj[flat, np.arange(k2)] = np.array(jac_coef)

        object.__setattr__(self, "_lead", lead)
        object.__setattr__(self, "_expo", expo)
        object.__setattr__(self, "_coef", coef)
        object.__setattr__(self, "_proj", proj)
        object.__setattr__(self, "_jac_expo", jac_expo)
        object.__setattr__(self, "_jac_proj", jac_proj)

    # -- evaluation --------------------------------------------------------

    def contract_batch(self, X: np.ndarray) -> np.ndarray:
        """Partial contraction A x^{m-1} for a batch of row vectors.

        :param X: array of shape (B, dim).
        :return: array of shape (B, dim) with (A x^{m-1})_i per row.
        """
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise ValueError(f"batch shape {X.shape} incompatible with dimension {self.dim}")
        if self._coef.size == 0:
            return np.zeros_like(X)
        mono = np.prod(X[:, None, :] ** self._expo[None, :, :], axis=2)
        return mono @ self._proj.T

    def contract_magnitude_batch(self, X: np.ndarray) -> np.ndarray:
        """Row-wise magnitude sum_k |coef_k| prod_j |x_j|^expo for the partial contraction.

        Natural scale of each component of A x^{m-1} before cancellation;
        used to tell true interior roots from near-boundary pseudo-roots.
        """
        X = np.abs(np.asarray(X, dtype=np.float64))
        if self._coef.size == 0:
            return np.zeros_like(X)
        mono = np.prod(X[:, None, :] ** self._expo[None, :, :], axis=2)
        return mono @ np.abs(self._proj).T

    def contract_jacobian_batch(self, X: np.ndarray) -> np.ndarray:
        """Jacobian d(A x^{m-1})/dx for a batch; shape (B, dim, dim)."""
        X = np.asarray(X, dtype=np.float64)
        B, n = X.shape[0], self.dim
        if self._jac_expo.shape[0] == 0:
            return np.zeros((B, n, n))
        mono = np.prod(X[:, None, :] ** self._jac_expo[None, :, :], axis=2)
        return (mono @ self._jac_proj.T).reshape(B, n, n)

    def apply_contract(self, x: np.ndarray) -> np.ndarray:
        """A x^{m-1} for a single vector of length dim."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dim,):
            raise ValueError(f"vector shape {x.shape} incompatible with dimension {self.dim}")
        return self.contract_batch(x[None, :])[0]

    def apply_full(self, x: np.ndarray) -> float:
        """Full contraction A x^m, evaluated as x . (A x^{m-1})."""
        x = np.asarray(x, dtype=np.float64)
        return float(x @ self.apply_contract(x))

    def apply_full_batch(self, X: np.ndarray) -> np.ndarray:
        return np.einsum("bi,bi->b", np.asarray(X, dtype=np.float64), self.contract_batch(X))

    # -- structure ---------------------------------------------------------

    def principal_subtensor(self, subset: Sequence[int]) -> "Tensor":
        """Restriction of the tensor to the index subset, reindexed to 0..|N|-1.

        Keeps exactly the slices all of whose indices lie in `subset`.
        """
        sub = tuple(int(i) for i in subset)
        if len(sub) == 0:
            raise ValueError("index subset must be nonempty")
        if len(set(sub)) != len(sub):
            raise ValueError(f"index subset {sub} has duplicates")
        if any(not 0 <= i < self.dim for i in sub):
            raise ValueError(f"index subset {sub} out of range for dimension {self.dim}")
        sub = tuple(sorted(sub))
        pos = {i: p for p, i in enumerate(sub)}
        members = set(sub)
        new_slices: dict[SliceKey, float] = {}
        for (lead, trail), v in self.slices.items():
            if lead in members and all(j in members for j in trail):
                new_slices[(pos[lead], tuple(pos[j] for j in trail))] = v
        return Tensor(self.order, len(sub), new_slices, symmetric=self.symmetric)

    def is_diagonal(self) -> bool:
        return all(trail == (lead,) * (self.order - 1) for lead, trail in self.slices)

    def diagonal_entries(self) -> np.ndarray:
        d = np.zeros(self.dim)
        for i in range(self.dim):
            d[i] = self.slices.get((i, (i,) * (self.order - 1)), 0.0)
        return d

    def symmetrized(self) -> "Tensor":
        return Tensor(self.order, self.dim, _symmetrize_slices(self.order, self.slices), symmetric=True)


def _symmetrize_slices(order: int, slices: Mapping[SliceKey, float]) -> dict[SliceKey, float]:
    """Slice table of the symmetric part of a tensor given in slice form.

    Coefficients sharing one full index multiset K are averaged over all
    orderings of K; the result depends only on the totals already stored, so
    symmetrization is exact at the slice level.
    """
    totals: dict[tuple[int, ...], float] = {}
    for (lead, trail), v in slices.items():
        key = tuple(sorted((lead,) + trail))
        totals[key] = totals.get(key, 0.0) + v
    out: dict[SliceKey, float] = {}
    for key, total in totals.items():
        counts = Counter(key)
        n_orderings = _multiset_permutations(counts, order)
        per_ordering = total / n_orderings
        for i in counts:
            rest = counts.copy()
            rest[i] -= 1
            if rest[i] == 0:
                del rest[i]
            trail_list: list[int] = []
            for j, c in sorted(rest.items()):
                trail_list.extend([j] * c)
            trail = tuple(trail_list)
            out[(i, trail)] = per_ordering * _multiset_permutations(rest, order - 1)
    return out


def _slices_symmetric(order: int, slices: Mapping[SliceKey, float]) -> bool:
    sym = _symmetrize_slices(order, slices)
    keys = set(slices) | set(sym)
    for k in keys:
        a = slices.get(k, 0.0)
        b = sym.get(k, 0.0)
        if abs(a - b) > _SYM_CHECK_RTOL * max(1.0, abs(a), abs(b)):
            return False
    return True


def build(
    order: int,
    dim: int,
    entries: Iterable[tuple[Sequence[int], float]],
    symmetrize: bool = False,
) -> Tensor:
    """Build a tensor from raw (index, value) entries, 0-based indices.

    Entries with the same lead and the same trailing multiset are summed.
    With symmetrize=True the symmetric part is stored instead and the result
    is flagged symmetric; otherwise the flag is set by checking whether the
    aggregated slices already match their own symmetrization.

    :param entries: iterable of (index tuple of length `order`, value).
    """
    slices: dict[SliceKey, float] = {}
    for idx, v in entries:
        idx = _validate_index(idx, order, dim)
        v = float(v)
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {v!r} at index {idx}")
        key = (idx[0], tuple(sorted(idx[1:])))
        slices[key] = slices.get(key, 0.0) + v
    slices = {k: v for k, v in slices.items() if v != 0.0}
    if symmetrize:
        return Tensor(order, dim, _symmetrize_slices(order, slices), symmetric=True)
    return Tensor(order, dim, slices, symmetric=_slices_symmetric(order, slices))


def embed(w: np.ndarray, subset: Sequence[int], dim: int) -> np.ndarray:
    """Scatter a sub-vector on `subset` into a length-`dim` vector, zeros elsewhere."""
    w = np.asarray(w, dtype=np.float64)
    sub = tuple(int(i) for i in subset)
    if w.shape != (len(sub),):
        raise ValueError(f"vector length {w.shape} does not match subset size {len(sub)}")
    if len(set(sub)) != len(sub) or any(not 0 <= i < dim for i in sub):
        raise ValueError(f"bad index subset {sub} for dimension {dim}")
    y = np.zeros(dim)
    y[list(sub)] = w
    return y


def knorm(x: np.ndarray, k: float) -> float:
    """The k-norm (sum_i |x_i|^k)^(1/k), k >= 1."""
    if k < 1:
        raise ValueError(f"norm exponent must be >= 1, got {k}")
    x = np.asarray(x, dtype=np.float64)
    return float(np.sum(np.abs(x) ** k) ** (1.0 / k))
