"""Tensor-product bookkeeping: vec, partial trace/transpose, permutations.

Subsystems are numbered 1..k. A layout is the ordered tuple of subsystem
dimensions; it is always passed explicitly, because one matrix may be viewed
under several factorizations. The vectorization convention is row-major:
vec(E_ij) = e_i (x) e_j, so vec(A) is just ``A.reshape(-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .matrix_core import as_matrix

__all__ = [
    "SystemLayout",
    "vec",
    "unvec",
    "partial_trace",
    "partial_transpose",
    "permute_systems",
    "max_entangled_state",
    "max_entangled_vector",
    "swap_operator",
]


@dataclass(frozen=True)
class SystemLayout:
    """Ordered subsystem dimensions giving tensor structure to a matrix."""

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"layout dimensions must be positive, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    def __len__(self) -> int:
        return len(self.dims)


def _dims(layout) -> tuple[int, ...]:
    if isinstance(layout, SystemLayout):
        return layout.dims
    return SystemLayout(layout).dims


def _as_square(x, dims: Sequence[int]) -> np.ndarray:
    a = as_matrix(x)
    side = int(np.prod(dims))
    if a.shape != (side, side):
        raise ValueError(f"matrix shape {a.shape} does not match layout {tuple(dims)}")
    return a


def vec(a) -> np.ndarray:
    """Row-major vectorization; vec(E_ij) = e_i (x) e_j."""
    return np.asarray(a, dtype=np.complex128).reshape(-1)


def unvec(v, rows: int, cols: int) -> np.ndarray:
    w = np.asarray(v, dtype=np.complex128).reshape(-1)
    if w.size != rows * cols:
        raise ValueError(f"vector of length {w.size} cannot fill a {rows}x{cols} matrix")
    return w.reshape(rows, cols)


def partial_trace(x, layout, keep) -> np.ndarray:
    """Trace out all subsystems not in ``keep`` (1-based index or set of them).

    Kept subsystems retain their original relative order.
    """
    dims = _dims(layout)
    k = len(dims)
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = tuple(sorted(set(int(i) for i in keep)))
    if not keep or any(i < 1 or i > k for i in keep):
        raise ValueError(f"keep={keep} is not a nonempty subset of 1..{k}")
    a = _as_square(x, dims)
    t = a.reshape(dims + dims)
    # contract row/col axis pairs of dropped subsystems, highest index first
    dropped = [i - 1 for i in range(k, 0, -1) if i not in keep]
    n_left = k
    for ax in dropped:
        t = np.trace(t, axis1=ax, axis2=ax + n_left)
        n_left -= 1
    side = int(np.prod([dims[i - 1] for i in keep]))
    return t.reshape(side, side)


def partial_transpose(x, layout, subsystem: int) -> np.ndarray:
    """Transpose one subsystem (1-based) in place."""
    dims = _dims(layout)
    k = len(dims)
    s = int(subsystem)
    if not 1 <= s <= k:
        raise ValueError(f"subsystem {s} out of range 1..{k}")
    a = _as_square(x, dims)
    t = a.reshape(dims + dims)
    axes = list(range(2 * k))
    axes[s - 1], axes[k + s - 1] = axes[k + s - 1], axes[s - 1]
    return t.transpose(axes).reshape(a.shape)


def permute_systems(x, layout, perm) -> np.ndarray:
    """Conjugate by the subsystem-permutation isometry.

    ``perm[j]`` (1-based) is the original subsystem placed at slot j of the
    output, i.e. the result is laid out as (dims[perm[1]], ..., dims[perm[k]]).
    """
    dims = _dims(layout)
    k = len(dims)
    p = tuple(int(i) for i in perm)
    if sorted(p) != list(range(1, k + 1)):
        raise ValueError(f"perm={p} is not a permutation of 1..{k}")
    a = _as_square(x, dims)
    t = a.reshape(dims + dims)
    row_axes = [i - 1 for i in p]
    axes = row_axes + [i + k for i in row_axes]
    return t.transpose(axes).reshape(a.shape)


def max_entangled_vector(n: int) -> np.ndarray:
    """Unit vector vec(I_n)/sqrt(n) on C^n (x) C^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return vec(np.eye(n)) / np.sqrt(n)


def max_entangled_state(n: int) -> np.ndarray:
    """Canonical maximally entangled density vec(I)vec(I)*/n."""
    v = max_entangled_vector(n)
    return np.outer(v, v.conj())


def swap_operator(n: int, m: int) -> np.ndarray:
    """Unitary W with W(x (x) y) = y (x) x."""
    if n < 1 or m < 1:
        raise ValueError("dimensions must be >= 1")
    w = np.eye(n * m, dtype=np.complex128).reshape(n, m, n, m)
    return w.transpose(1, 0, 2, 3).reshape(m * n, n * m)
