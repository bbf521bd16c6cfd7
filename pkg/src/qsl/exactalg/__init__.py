"""Exact linear algebra over prime fields and over integer polynomials."""
from __future__ import annotations

import os
import random
from typing import Sequence

from ..errors import ShapeError
from .field import FieldElement, FieldMatrix, MAX_MODULUS, check_modulus, is_prime, _check_index_set
from .poly import COEFF_BOUND, COFACTOR_LIMIT, MultiPoly, PolyMatrix, PolyRing

# Randomized identity checks (Schwartz-Zippel) evaluate at points of this field.
LARGE_PRIME = 2147483647
DEFAULT_TRIALS = 20
# Largest matrix side handled symbolically by the certificate routines.
SYMBOLIC_CAP = 4

__all__ = [
    "COEFF_BOUND", "COFACTOR_LIMIT", "DEFAULT_TRIALS", "FieldElement", "FieldMatrix", "LARGE_PRIME",
    "MAX_MODULUS", "MultiPoly", "PolyMatrix", "PolyRing", "SYMBOLIC_CAP", "check_modulus", "is_prime",
    "mat_mul", "mat_rank", "minor", "rng", "subspace_intersection_dim",
]


def rng(seed: int | None = None) -> random.Random:
    """Random source for randomized checks; ``QSL_SEED`` pins the default seed."""
    if seed is None:
        seed = int(os.environ.get("QSL_SEED", "0"))
    return random.Random(seed)


def mat_mul(x, y):
    if type(x) is not type(y):
        raise TypeError("both operands must be FieldMatrix or both PolyMatrix")
    return x @ y


def mat_rank(m: FieldMatrix) -> int:
    return m.rank()


def minor(m: FieldMatrix | PolyMatrix, rows: Sequence[int], cols: Sequence[int]):
    """Determinant of the submatrix on 1-based ``rows`` x ``cols``.

    The empty minor is 1.
    """
    if len(rows) != len(cols):
        raise ShapeError(f"minor needs equal-size index sets, got {len(rows)} and {len(cols)}")
    rows = _check_index_set(rows, m.rows, "row")
    cols = _check_index_set(cols, m.cols, "column")
    return m.submatrix([r - 1 for r in rows], [c - 1 for c in cols]).det()


def subspace_intersection_dim(u: FieldMatrix, w: FieldMatrix) -> int:
    """dim(colspan u ∩ colspan w); columns need not be independent."""
    if u.rows != w.rows:
        raise ShapeError(f"ambient dimensions differ: {u.rows} vs {w.rows}")
    return u.rank() + w.rank() - u.hstack(w).rank()
