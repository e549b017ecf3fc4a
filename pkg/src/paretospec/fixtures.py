"""Built-in demonstration tensors with known Pareto spectra.

Each builder returns (tensor, expected) where `expected` collects the known
reference values the `example` CLI command checks against.  The registry keys
(ex3.1, ex3.2, ex4.1) are the stable names exposed on the command line.
"""

from __future__ import annotations

import numpy as np

from .tensor import Tensor, build

ROOT2_HALF = float(np.sqrt(2.0) / 2.0)
# 4-norm-normalized uniform vector in two dimensions: both entries 8^(1/4)/2.
UNIF4 = float(8.0 ** 0.25 / 2.0)


def grouped_quartic() -> tuple[Tensor, dict]:
    """Order-4, dim-2 tensor with grouped cross terms, A x^4 = x1^4 + 2 x2^4 - 3 x1^2 x2^2.

    Not symmetric: the cross mass is split -1 on lead 1 / -2 on lead 2.  Both
    Pareto spectra are {0, 1, 2}.
    """
    entries = [
        ((0, 0, 0, 0), 1.0),
        ((1, 1, 1, 1), 2.0),
        ((0, 0, 1, 1), -1.0),
        ((1, 0, 0, 1), -2.0),
    ]
    t = build(4, 2, entries)
    expected = {
        "h_values": [0.0, 1.0, 2.0],
        "z_values": [0.0, 1.0, 2.0],
        "h_vectors": {0.0: [UNIF4, UNIF4], 1.0: [1.0, 0.0], 2.0: [0.0, 1.0]},
        "z_vectors": {0.0: [ROOT2_HALF, ROOT2_HALF], 1.0: [1.0, 0.0], 2.0: [0.0, 1.0]},
    }
    return t, expected


def shifted_cubic() -> tuple[Tensor, dict]:
    """Symmetric order-3, dim-2 tensor whose one-point subsets behave differently.

    The value 2 is a Pareto eigenvalue (both kinds) through the second axis,
    while 1 is not: the singleton through the first axis fails its
    complement slack, which equals -2/3.
    """
    entries = [
        ((0, 0, 0), 1.0),
        ((1, 1, 1), 2.0),
        ((0, 1, 1), 1.0 / 3.0),
        ((1, 0, 1), 1.0 / 3.0),
        ((1, 1, 0), 1.0 / 3.0),
        ((0, 0, 1), -2.0 / 3.0),
        ((0, 1, 0), -2.0 / 3.0),
        ((1, 0, 0), -2.0 / 3.0),
    ]
    t = build(3, 2, entries)
    expected = {
        "present_value": 2.0,
        "present_vector": [0.0, 1.0],
        "absent_value": 1.0,
        "rejected_subset": (0,),
        "rejected_slack": -2.0 / 3.0,
    }
    return t, expected


def parametric_quartic(t: float = 0.0) -> tuple[Tensor, dict]:
    """Symmetric order-4, dim-2 family A x^4 = x1^4 + x2^4 + 4 t x1^3 x2.

    The minimum of A x^4 over the nonnegative part of the unit 4-norm sphere
    is min(1, 1 + 27^(1/4) t), attained at ((3/4)^(1/4), (1/4)^(1/4)) once the
    interior branch takes over (t <= 0).
    """
    t = float(t)
    entries = [
        ((0, 0, 0, 0), 1.0),
        ((1, 1, 1, 1), 1.0),
        ((0, 0, 0, 1), t),
        ((0, 0, 1, 0), t),
        ((0, 1, 0, 0), t),
        ((1, 0, 0, 0), t),
    ]
    tensor = build(4, 2, entries)
    gamma = min(1.0, 1.0 + 27.0 ** 0.25 * t)
    expected = {
        "t": t,
        "gamma": gamma,
        "interior_vector": [0.75 ** 0.25, 0.25 ** 0.25],
    }
    return tensor, expected


EXAMPLES = {
    "ex3.1": grouped_quartic,
    "ex3.2": shifted_cubic,
    "ex4.1": parametric_quartic,
}
