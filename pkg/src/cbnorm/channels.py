"""Linear maps on operators, represented by their Choi matrices.

The Choi matrix of a map F: L(C^in) -> L(C^out) lives on C^in (x) C^out and
is J(F) = sum_ij E_ij (x) F(E_ij). The equivalent superoperator matrix S acts
on row-major vectorizations, vec(F(X)) = S vec(X); the two are reshapes of
each other. The Choi matrix is the canonical stored form, the superoperator a
derived view used for fast application.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrix_core import as_matrix, hermitian_part
from .tensor_ops import partial_trace, swap_operator, unvec, vec

__all__ = [
    "LinearMapRep",
    "KrausSet",
    "choi_to_superop",
    "superop_to_choi",
    "map_from_function",
    "map_from_kraus",
    "identity_map",
    "transpose_map",
    "completely_depolarizing",
    "apply",
    "apply_extended",
    "adjoint_map",
    "compose",
    "mix_maps",
    "is_channel",
    "werner_holevo",
    "gamma_channel",
    "psi_map",
    "kraus_from_choi",
    "stinespring_isometry",
    "complementary_channel",
]


@dataclass
class LinearMapRep:
    """A map T(X,Y) stored as (input dim, output dim, Choi matrix)."""

    dim_in: int
    dim_out: int
    choi: np.ndarray
    _superop: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.choi = as_matrix(self.choi)
        side = self.dim_in * self.dim_out
        if self.dim_in < 1 or self.dim_out < 1:
            raise ValueError("dimensions must be positive")
        if self.choi.shape != (side, side):
            raise ValueError(
                f"Choi matrix shape {self.choi.shape} does not match dims "
                f"({self.dim_in}, {self.dim_out})"
            )

    @property
    def superop(self) -> np.ndarray:
        if self._superop is None:
            self._superop = choi_to_superop(self.choi, self.dim_in, self.dim_out)
        return self._superop


@dataclass
class KrausSet:
    """Kraus operators (each dim_out x dim_in) of a completely positive map."""

    operators: list[np.ndarray]


def choi_to_superop(choi: np.ndarray, dim_in: int, dim_out: int) -> np.ndarray:
    """S[(o,p),(i,j)] = F(E_ij)[o,p] = J[(i,o),(j,p)]."""
    t = np.asarray(choi).reshape(dim_in, dim_out, dim_in, dim_out)
    return t.transpose(1, 3, 0, 2).reshape(dim_out * dim_out, dim_in * dim_in)


def superop_to_choi(superop: np.ndarray, dim_in: int, dim_out: int) -> np.ndarray:
    t = np.asarray(superop).reshape(dim_out, dim_out, dim_in, dim_in)
    return t.transpose(2, 0, 3, 1).reshape(dim_in * dim_out, dim_in * dim_out)


def map_from_function(f, dim_in: int, dim_out: int) -> LinearMapRep:
    """Build the representation of X -> f(X) by applying f to matrix units."""
    s = np.zeros((dim_out * dim_out, dim_in * dim_in), dtype=np.complex128)
    basis = np.zeros((dim_in, dim_in), dtype=np.complex128)
    for i in range(dim_in):
        for j in range(dim_in):
            basis[i, j] = 1.0
            s[:, i * dim_in + j] = vec(f(basis))
            basis[i, j] = 0.0
    return LinearMapRep(dim_in, dim_out, superop_to_choi(s, dim_in, dim_out), s)


def map_from_kraus(operators, dim_in: int, dim_out: int) -> LinearMapRep:
    choi = np.zeros((dim_in * dim_out,) * 2, dtype=np.complex128)
    for k in operators:
        w = vec(np.asarray(k).T)  # J contribution of K . K* is vec(K^T) vec(K^T)*
        choi += np.outer(w, w.conj())
    return LinearMapRep(dim_in, dim_out, choi)


def identity_map(n: int) -> LinearMapRep:
    v = vec(np.eye(n))
    return LinearMapRep(n, n, np.outer(v, v.conj()))


def transpose_map(n: int) -> LinearMapRep:
    return LinearMapRep(n, n, swap_operator(n, n))


def completely_depolarizing(n: int) -> LinearMapRep:
    """X -> Tr(X) I/n; Choi is I (x) I / n."""
    return LinearMapRep(n, n, np.eye(n * n, dtype=np.complex128) / n)


def apply(m: LinearMapRep, x) -> np.ndarray:
    a = as_matrix(x)
    if a.shape != (m.dim_in, m.dim_in):
        raise ValueError(f"input shape {a.shape} does not match dim_in={m.dim_in}")
    return unvec(m.superop @ vec(a), m.dim_out, m.dim_out)


def apply_extended(m: LinearMapRep, x, ancilla_dim: int) -> np.ndarray:
    """(F (x) I)(X) for X on C^dim_in (x) C^ancilla_dim."""
    a = as_matrix(x)
    d = m.dim_in * ancilla_dim
    if a.shape != (d, d):
        raise ValueError(f"input shape {a.shape} does not match (in*ancilla)={d}")
    k4 = m.superop.reshape(m.dim_out, m.dim_out, m.dim_in, m.dim_in)
    x4 = a.reshape(m.dim_in, ancilla_dim, m.dim_in, ancilla_dim)
    y4 = np.einsum("opij,iajb->oapb", k4, x4)
    dy = m.dim_out * ancilla_dim
    return y4.reshape(dy, dy)


def adjoint_map(m: LinearMapRep) -> LinearMapRep:
    """The adjoint F* with <Y, F(X)> = <F*(Y), X>."""
    s_adj = m.superop.conj().T
    return LinearMapRep(m.dim_out, m.dim_in, superop_to_choi(s_adj, m.dim_out, m.dim_in), s_adj)


def compose(f: LinearMapRep, g: LinearMapRep) -> LinearMapRep:
    """The map X -> f(g(X))."""
    if g.dim_out != f.dim_in:
        raise ValueError(f"cannot compose: g outputs dim {g.dim_out}, f expects {f.dim_in}")
    s = f.superop @ g.superop
    return LinearMapRep(g.dim_in, f.dim_out, superop_to_choi(s, g.dim_in, f.dim_out), s)


def mix_maps(c0: float, m0: LinearMapRep, c1: float, m1: LinearMapRep) -> LinearMapRep:
    """c0*m0 + c1*m1, formed at the Choi level."""
    if (m0.dim_in, m0.dim_out) != (m1.dim_in, m1.dim_out):
        raise ValueError("maps must share input and output dimensions")
    return LinearMapRep(m0.dim_in, m0.dim_out, c0 * m0.choi + c1 * m1.choi)


def is_channel(m: LinearMapRep, tol: float = 1e-9) -> bool:
    """Completely positive (Choi PSD) and trace preserving (Tr_out J = I)."""
    j = m.choi
    if np.abs(j - j.conj().T).max() > tol:
        return False
    w = np.linalg.eigvalsh(hermitian_part(j))
    if w.size and w.min() < -tol:
        return False
    reduced = partial_trace(j, (m.dim_in, m.dim_out), keep=1)
    return bool(np.abs(reduced - np.eye(m.dim_in)).max() <= tol)


def werner_holevo(n: int, alpha: int) -> LinearMapRep:
    """The channel pair (Omega +/- T)/(n +/- 1), alpha in {0, 1}."""
    if n < 2:
        raise ValueError("werner_holevo requires n >= 2")
    if alpha not in (0, 1):
        raise ValueError("alpha must be 0 or 1")
    eye = np.eye(n * n, dtype=np.complex128)
    w = swap_operator(n, n)
    choi = (eye + w) / (n + 1) if alpha == 0 else (eye - w) / (n - 1)
    return LinearMapRep(n, n, choi)


def _reduction_blocks(x: np.ndarray, n: int, k: int) -> list[np.ndarray]:
    """Reductions of X on (C^n)^(x)k to each single factor."""
    dims = (n,) * k
    return [partial_trace(x, dims, keep=i + 1) for i in range(k)]


def gamma_channel(n: int, k: int, alpha: int) -> LinearMapRep:
    """Keep one of k subsystems uniformly at random, record which, then send
    it through a Werner-Holevo channel. Input dim n^k, output dim k*n."""
    if n < 2 or k < 1:
        raise ValueError("gamma_channel requires n >= 2 and k >= 1")
    wh = werner_holevo(n, alpha)
    dim_in, dim_out = n**k, k * n

    def act(x: np.ndarray) -> np.ndarray:
        out = np.zeros((dim_out, dim_out), dtype=np.complex128)
        for i, red in enumerate(_reduction_blocks(x, n, k)):
            out[i * n : (i + 1) * n, i * n : (i + 1) * n] = apply(wh, red) / k
        return out

    return map_from_function(act, dim_in, dim_out)


def psi_map(n: int, k: int) -> LinearMapRep:
    """Block sum of transposed single-factor reductions; Hermiticity
    preserving but not completely positive."""
    if n < 2 or k < 1:
        raise ValueError("psi_map requires n >= 2 and k >= 1")
    dim_in, dim_out = n**k, k * n

    def act(x: np.ndarray) -> np.ndarray:
        out = np.zeros((dim_out, dim_out), dtype=np.complex128)
        for i, red in enumerate(_reduction_blocks(x, n, k)):
            out[i * n : (i + 1) * n, i * n : (i + 1) * n] = red.T
        return out

    return map_from_function(act, dim_in, dim_out)


def _choi_eig_decomposition(m: LinearMapRep, tol: float = 1e-8):
    j = m.choi
    if np.abs(j - j.conj().T).max() > tol:
        raise ValueError("Choi matrix is not Hermitian; map is not CP")
    w, v = np.linalg.eigh(hermitian_part(j))
    if w.size and w.min() < -tol * max(1.0, w.max()):
        raise ValueError(f"Choi matrix is not PSD (min eigenvalue {w.min():.2e}); map is not CP")
    order = np.argsort(w)[::-1]  # nonincreasing eigenvalues
    w, v = np.clip(w[order], 0.0, None), v[:, order]
    rank = int(np.count_nonzero(w > 1e-10 * w[0])) if w.size and w[0] > 0 else 0
    return w[:rank], v[:, :rank]


def kraus_from_choi(m: LinearMapRep) -> KrausSet:
    """Kraus operators from the Choi eigendecomposition, ordered by
    nonincreasing eigenvalue."""
    w, v = _choi_eig_decomposition(m)
    ops = []
    for lam, col in zip(w, v.T):
        g = unvec(np.sqrt(lam) * col, m.dim_in, m.dim_out)
        ops.append(g.T.copy())
    return KrausSet(ops)


def stinespring_isometry(m: LinearMapRep) -> np.ndarray:
    """Isometry A: C^in -> C^out (x) C^r, r = rank(J), with
    F(X) = Tr_env(A X A*)."""
    ops = kraus_from_choi(m).operators
    r = max(len(ops), 1)
    a = np.zeros((m.dim_out * r, m.dim_in), dtype=np.complex128)
    for l, k in enumerate(ops):
        a[l::r, :] = k  # row (y, l) of Y (x) Z ordering
    return a


def complementary_channel(m: LinearMapRep) -> LinearMapRep:
    """Complementary map X -> Tr_out(A X A*) for the minimal Stinespring A."""
    a = stinespring_isometry(m)
    env = a.shape[0] // m.dim_out

    def act(x: np.ndarray) -> np.ndarray:
        big = a @ x @ a.conj().T
        return partial_trace(big, (m.dim_out, env), keep=2)

    return map_from_function(act, m.dim_in, env)
