"""Structure characterizations: maximal-entanglement detection, decomposition
extraction, weak entanglement measures, and the reversibility test suite.

An operator X on C^n (x) C^m with ||X||_1 = 1 has maximal negativity n exactly
when it factors as (I (x) U)(tau (x) sigma)(I (x) V*) for isometries U, V from
C^n (x) C^r into C^m and a state sigma on C^r. ``extract_structure`` recovers
that factorization (or reports that none exists); the reversibility checks and
the weak-measure characterization reduce to it via the Choi matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .channels import (
    LinearMapRep,
    apply,
    complementary_channel,
    compose,
    identity_map,
    is_channel,
    map_from_function,
)
from .matrix_core import (
    as_matrix,
    fidelity,
    frobenius_norm,
    hermitian_part,
    is_isometry,
    is_psd,
    trace_norm,
)
from .norms_opt import negativity
from .sampling import (
    ginibre,
    haar_isometry,
    random_channel,
    random_density,
    random_unit_vector,
    rng_from,
)
from .tensor_ops import max_entangled_state, partial_trace, unvec, vec

__all__ = [
    "StructureDecomposition",
    "WeakMeasure",
    "ReversibilityReport",
    "is_max_entangled",
    "structured_operator",
    "embedding_channel",
    "extract_structure",
    "extract_structure_multipartite",
    "psi_value",
    "von_neumann_entropy",
    "negativity_measure",
    "coherent_information_measure",
    "check_weak_measure_axioms",
    "reversibility_check",
    "triangle_equality_consequence",
    "independent_strategy_value",
    "fidelity_partialtrace_identity_check",
]

RESIDUAL_TOL = 1e-8


@dataclass
class StructureDecomposition:
    """Certified factorization (I (x) U)(tau (x) sigma)(I (x) V*).

    sigma is diagonal with nonincreasing entries; U and V map C^n (x) C^r
    into C^m. Gauge freedom in (U, V) is not canonicalized; correctness is
    judged by the reconstruction residual.
    """

    r: int
    sigma: np.ndarray
    U: np.ndarray
    V: np.ndarray
    residual: float


@dataclass
class WeakMeasure:
    """An entanglement measure instance: evaluate(rho, n, m) with maximum
    g(n) attained exactly on maximally entangled states."""

    name: str
    evaluate: Callable[[np.ndarray, int, int], float]
    max_function: Callable[[int], float]


@dataclass
class ReversibilityReport:
    """Outcomes of the five equivalent reversibility indicators."""

    structure: Optional[StructureDecomposition]
    trace_norm_preserving: bool
    fidelity_preserving: bool
    complement_constant: bool
    left_inverse: Optional[LinearMapRep]
    verdict: bool
    consistent: bool


def is_max_entangled(u, n: int, m: int, tol: float = 1e-6) -> bool:
    """Whether a unit vector on C^n (x) C^m has all min(n,m) Schmidt
    coefficients equal to 1/sqrt(min(n,m)) within tol."""
    w = np.asarray(u, dtype=np.complex128).reshape(-1)
    if w.size != n * m:
        raise ValueError(f"vector length {w.size} does not match {n}x{m}")
    norm = np.linalg.norm(w)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"input is not a unit vector (norm {norm})")
    r = min(n, m)
    s = np.linalg.svd(unvec(w, n, m), compute_uv=False)
    target = 1.0 / math.sqrt(r)
    return bool(abs(s[0] - target) <= tol and abs(s[r - 1] - target) <= tol)


def structured_operator(n: int, u_iso: np.ndarray, v_iso: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Assemble (I (x) U)(tau (x) sigma)(I (x) V*) on C^n (x) C^m."""
    tau = max_entangled_state(n)
    left = np.kron(np.eye(n), u_iso)
    right = np.kron(np.eye(n), v_iso)
    return left @ np.kron(tau, sigma) @ right.conj().T


def embedding_channel(u_iso: np.ndarray, sigma: np.ndarray) -> LinearMapRep:
    """Channel X -> U(X (x) sigma)U* for an isometry U on C^n (x) C^r."""
    u_iso = as_matrix(u_iso)
    sigma = as_matrix(sigma)
    r = sigma.shape[0]
    if u_iso.shape[1] % r != 0:
        raise ValueError("isometry domain is not divisible by the state dimension")
    n = u_iso.shape[1] // r
    return map_from_function(
        lambda x: u_iso @ np.kron(x, sigma) @ u_iso.conj().T, n, u_iso.shape[0]
    )


def _principal_vectors(x: np.ndarray, tol: float):
    """Spectral data (weights, left vectors, right vectors) of X with the
    numerically-zero part dropped. PSD inputs use the eigenbasis so that the
    left and right families coincide."""
    if is_psd(x, tol=1e-10):
        w, v = np.linalg.eigh(hermitian_part(x))
        order = np.argsort(w)[::-1]
        w, v = w[order], v[:, order]
        keep = w > 1e-10 * max(w[0], 1e-300)
        return w[keep], v[:, keep], v[:, keep]
    left, s, rh = np.linalg.svd(x)
    keep = s > 1e-10 * max(s[0], 1e-300)
    return s[keep], left[:, keep], rh.conj().T[:, keep]


def extract_structure(x, n: int, m: int, tol: float = 1e-6) -> Optional[StructureDecomposition]:
    """Recover (r, sigma, U, V) with X = (I (x) U)(tau (x) sigma)(I (x) V*),
    or None when X does not maximize negativity.

    Requires ||X||_1 = 1. For PSD (density) input the returned V is U.
    Decisions at the tolerance boundary are conservative toward None.
    """
    a = as_matrix(x)
    if a.shape != (n * m, n * m):
        raise ValueError(f"matrix shape {a.shape} does not match n*m = {n * m}")
    tn = trace_norm(a)
    if abs(tn - 1.0) > 1e-8:
        raise ValueError(f"input must have unit trace norm, got {tn}")
    if m < n:
        return None
    if negativity(a, (n, m), 1) < n - tol:
        return None

    svals, xs, ys = _principal_vectors(a, tol)
    r = svals.size
    if r == 0 or r > m // n:
        return None

    # every principal vector must be maximally entangled; unvec to isometries
    a_ops, b_ops = [], []
    for cols, store in ((xs, a_ops), (ys, b_ops)):
        for i in range(r):
            op = math.sqrt(n) * unvec(cols[:, i], n, m).T  # x = vec(op^T)/sqrt(n)
            if not is_isometry(op, tol):
                return None
            store.append(op)

    # ranges must be mutually orthogonal
    for ops in (a_ops, b_ops):
        for i in range(r):
            for j in range(i + 1, r):
                if np.abs(ops[i].conj().T @ ops[j]).max() > tol:
                    return None

    basis = np.eye(r)
    u_iso = sum(np.kron(a_ops[i], basis[i : i + 1, :]) for i in range(r))
    v_iso = u_iso if np.allclose(xs, ys) else sum(
        np.kron(b_ops[i], basis[i : i + 1, :]) for i in range(r)
    )
    sigma = np.diag(svals).astype(np.complex128)

    recon = structured_operator(n, u_iso, v_iso, sigma)
    residual = frobenius_norm(a - recon)
    if residual > RESIDUAL_TOL:
        return None
    return StructureDecomposition(r=r, sigma=sigma, U=u_iso, V=v_iso, residual=residual)


def extract_structure_multipartite(x, dims, m: int, tol: float = 1e-6) -> Optional[StructureDecomposition]:
    """Structure extraction across the cut (X_1 ... X_k | Y).

    Treats the k factors as one system of dimension N = prod(dims) and
    delegates to ``extract_structure``; additionally evaluates the
    per-subsystem criterion (negativity of each reduction (R_i (x) I)(X)
    equals dims[i]) and insists the two agree.
    """
    dims = tuple(int(d) for d in dims)
    k = len(dims)
    n_total = int(np.prod(dims))
    a = as_matrix(x)
    layout = dims + (m,)

    decomposition = extract_structure(a, n_total, m, tol)

    per_subsystem = []
    for i, ni in enumerate(dims):
        red = partial_trace(a, layout, keep={i + 1, k + 1})
        per_subsystem.append(negativity(red, (ni, m), 1) >= ni - tol)
    stmt_per = all(per_subsystem)
    stmt_global = decomposition is not None
    if stmt_per != stmt_global:
        raise RuntimeError(
            "internal inconsistency: per-subsystem and global maximal-negativity "
            f"checks disagree (per-subsystem={per_subsystem}, global={stmt_global})"
        )
    return decomposition


def psi_value(x, n: int, k: int, layout=None, m: int | None = None) -> float:
    """Exact ||(Psi_{n,k} (x) I_m)(X)||_1 via its block structure.

    The output is block diagonal over the classical register, so the norm is
    the sum over i of the negativity of the i-th reduction.
    """
    a = as_matrix(x)
    if m is None:
        if a.shape[0] % n**k != 0:
            raise ValueError("cannot infer ancilla dimension")
        m = a.shape[0] // n**k
    full_layout = (n,) * k + (m,)
    if layout is not None:
        given = layout.dims if hasattr(layout, "dims") else tuple(layout)
        if given not in ((n,) * k, full_layout):
            raise ValueError(f"layout {given} does not match n={n}, k={k}, m={m}")
    if a.shape != (n**k * m,) * 2:
        raise ValueError(f"matrix shape {a.shape} does not match layout {full_layout}")
    tn = trace_norm(a)
    if abs(tn - 1.0) > 1e-8:
        raise ValueError(f"input must have unit trace norm, got {tn}")
    total = 0.0
    for i in range(k):
        red = partial_trace(a, full_layout, keep={i + 1, k + 1})
        total += negativity(red, (n, m), 1)
    return total


def von_neumann_entropy(rho, base: float = 2.0) -> float:
    """Entropy of a density operator; eigenvalues below 1e-12 contribute 0."""
    w = np.linalg.eigvalsh(hermitian_part(as_matrix(rho)))
    w = w[w > 1e-12]
    return float(-(w * np.log(w)).sum() / np.log(base))


def negativity_measure() -> WeakMeasure:
    return WeakMeasure(
        name="negativity",
        evaluate=lambda rho, n, m: negativity(rho, (n, m), 1),
        max_function=lambda n: float(n),
    )


def coherent_information_measure() -> WeakMeasure:
    def evaluate(rho, n, m):
        reduced = partial_trace(rho, (n, m), keep=1)
        return von_neumann_entropy(reduced) - von_neumann_entropy(rho)

    return WeakMeasure(
        name="coherent_information",
        evaluate=evaluate,
        max_function=lambda n: math.log2(n),
    )


def _max_entangled_sample(n: int, m: int, rng) -> np.ndarray:
    iso = haar_isometry(n, m, rng)
    return vec(iso.T) / math.sqrt(n)


def _generic_pure_sample(n: int, m: int, rng) -> np.ndarray:
    # rejection keeps the Schmidt spectrum visibly non-flat
    for _ in range(100):
        u = random_unit_vector(n * m, rng)
        s = np.linalg.svd(unvec(u, n, m), compute_uv=False)
        if s[0] - s[min(n, m) - 1] > 1e-2:
            return u
    raise RuntimeError("failed to sample a clearly non-maximally-entangled vector")


def check_weak_measure_axioms(measure: WeakMeasure, n: int, m: int, samples: int, seed) -> list[str]:
    """Empirical axiom harness; returns one message per observed violation.

    Checks, per sample: the g(n) upper bound on random densities, exact
    attainment on maximally entangled pure states (and strict failure on
    generic pure states), monotonicity under random channels acting on the
    second subsystem, and pure-state convexity.
    """
    if n > m:
        raise ValueError("requires n <= m")
    rng = rng_from(seed)
    g = measure.max_function(n)
    violations: list[str] = []

    for t in range(samples):
        rho = random_density(n * m, rng)
        val = measure.evaluate(rho, n, m)
        if val > g + 1e-8:
            violations.append(f"[{measure.name}] sample {t}: value {val} exceeds max {g}")

        u = _max_entangled_sample(n, m, rng)
        val = measure.evaluate(np.outer(u, u.conj()), n, m)
        if abs(val - g) > 1e-8:
            violations.append(
                f"[{measure.name}] sample {t}: maximally entangled state gives {val}, want {g}"
            )

        w = _generic_pure_sample(n, m, rng)
        val = measure.evaluate(np.outer(w, w.conj()), n, m)
        if val > g - 1e-6:
            violations.append(
                f"[{measure.name}] sample {t}: generic pure state reaches {val}, too close to max {g}"
            )

        out_dim = int(rng.integers(n, m + 1))
        channel = random_channel(m, out_dim, rng)
        rho = random_density(n * m, rng)
        before = measure.evaluate(rho, n, m)
        after = measure.evaluate(_apply_to_second(channel, rho, n), n, out_dim)
        if after > before + 1e-8:
            violations.append(
                f"[{measure.name}] sample {t}: channel on second subsystem raised "
                f"value {before} -> {after}"
            )

        probs = rng.dirichlet(np.ones(3))
        vecs = [random_unit_vector(n * m, rng) for _ in range(3)]
        mix = sum(p * np.outer(v, v.conj()) for p, v in zip(probs, vecs))
        lhs = measure.evaluate(mix, n, m)
        rhs = sum(
            p * measure.evaluate(np.outer(v, v.conj()), n, m) for p, v in zip(probs, vecs)
        )
        if lhs > rhs + 1e-8:
            violations.append(
                f"[{measure.name}] sample {t}: pure-state convexity violated ({lhs} > {rhs})"
            )

    return violations


def _apply_to_second(m: LinearMapRep, x: np.ndarray, leading_dim: int) -> np.ndarray:
    """(I (x) F)(X) for X on C^leading_dim (x) C^dim_in."""
    k4 = m.superop.reshape(m.dim_out, m.dim_out, m.dim_in, m.dim_in)
    x4 = np.asarray(x).reshape(leading_dim, m.dim_in, leading_dim, m.dim_in)
    y4 = np.einsum("opij,aibj->aobp", k4, x4)
    d = leading_dim * m.dim_out
    return y4.reshape(d, d)


def _left_inverse_from_structure(dec: StructureDecomposition, n: int, m: int) -> LinearMapRep:
    """Recovery channel Y -> Tr_r(U* Y U) + <I - UU*, Y> I/n."""
    u = dec.U
    proj_rest = np.eye(m) - u @ u.conj().T
    eta = np.eye(n, dtype=np.complex128) / n

    def act(y: np.ndarray) -> np.ndarray:
        inner = u.conj().T @ y @ u
        return partial_trace(inner, (n, dec.r), keep=1) + np.trace(proj_rest @ y) * eta

    return map_from_function(act, m, n)


def reversibility_check(m: LinearMapRep, samples: int, seed, tol: float = 1e-6) -> ReversibilityReport:
    """Evaluate the five equivalent reversibility indicators for a channel.

    Indicators: (1) the normalized Choi matrix decomposes, (2) sampled trace
    norm preservation, (3) sampled fidelity preservation, (4) every
    complementary channel is constant, (5) the reconstructed left inverse
    composes to the identity. The verdict is indicator (1); disagreement is
    surfaced through ``consistent``.
    """
    if not is_channel(m, tol=tol):
        raise ValueError("reversibility_check requires a channel (CP and trace preserving)")
    n, out = m.dim_in, m.dim_out
    rng = rng_from(seed)

    decomposition = extract_structure(m.choi / n, n, out, tol)

    tn_ok = True
    fid_ok = True
    for _ in range(samples):
        x = ginibre(n, n, rng)
        if abs(trace_norm(apply(m, x)) - trace_norm(x)) > tol * max(1.0, trace_norm(x)):
            tn_ok = False
        rho, sig = random_density(n, rng), random_density(n, rng)
        if abs(fidelity(apply(m, rho), apply(m, sig)) - fidelity(rho, sig)) > tol:
            fid_ok = False

    comp = complementary_channel(m)
    sigma_env = partial_trace(comp.choi, (n, comp.dim_out), keep=2) / n
    comp_ok = bool(np.abs(comp.choi - np.kron(np.eye(n), sigma_env)).max() <= tol)

    left_inverse = None
    left_ok = False
    if decomposition is not None:
        candidate = _left_inverse_from_structure(decomposition, n, out)
        defect = frobenius_norm(compose(candidate, m).choi - identity_map(n).choi)
        if defect <= tol:
            left_inverse = candidate
            left_ok = True

    verdict = decomposition is not None
    consistent = len({verdict, tn_ok, fid_ok, comp_ok, left_ok}) == 1
    return ReversibilityReport(
        structure=decomposition,
        trace_norm_preserving=tn_ok,
        fidelity_preserving=fid_ok,
        complement_constant=comp_ok,
        left_inverse=left_inverse,
        verdict=verdict,
        consistent=consistent,
    )


def triangle_equality_consequence(operators, tol: float = 1e-8) -> bool:
    """For a pairwise orthogonal family, check the triangle-equality
    consequence: ||sum A_i||_1 = sum ||A_i||_1 forces A_i A_j* = 0 and
    A_i* A_j = 0. Returns False when the norm equality fails; raises if the
    certified implication itself is violated."""
    ops = [as_matrix(o) for o in operators]
    if len({o.shape for o in ops}) != 1:
        raise ValueError("operators must share a common shape")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if abs(np.vdot(ops[i], ops[j])) > tol * max(
                1.0, frobenius_norm(ops[i]) * frobenius_norm(ops[j])
            ):
                raise ValueError(f"operators {i} and {j} are not orthogonal")
    total = trace_norm(sum(ops))
    individual = sum(trace_norm(o) for o in ops)
    if abs(total - individual) > tol * max(1.0, individual):
        return False
    for i in range(len(ops)):
        for j in range(len(ops)):
            if i == j:
                continue
            if np.abs(ops[i] @ ops[j].conj().T).max() > tol * max(1.0, individual):
                raise RuntimeError(
                    f"triangle equality held but A_{i} A_{j}* != 0; certification failed"
                )
            if np.abs(ops[i].conj().T @ ops[j]).max() > tol * max(1.0, individual):
                raise RuntimeError(
                    f"triangle equality held but A_{i}* A_{j} != 0; certification failed"
                )
    return True


def independent_strategy_value(n: int, m: int) -> int:
    """Optimal value n + floor(m/n) over product-form inputs (two factors)."""
    if not n <= m < n * n:
        raise ValueError(f"requires n <= m < n^2, got n={n}, m={m}")
    return n + m // n


def fidelity_partialtrace_identity_check(u, v, layout, tol: float = 1e-9) -> bool:
    """Check F(Tr_Y(uu*), Tr_Y(vv*)) = ||Tr_X(uv*)||_1 for vectors on X (x) Y."""
    dims = layout.dims if hasattr(layout, "dims") else tuple(layout)
    if len(dims) != 2:
        raise ValueError("layout must have exactly two subsystems")
    uu = np.asarray(u, dtype=np.complex128).reshape(-1)
    vv = np.asarray(v, dtype=np.complex128).reshape(-1)
    if uu.size != dims[0] * dims[1] or vv.size != uu.size:
        raise ValueError("vector lengths do not match the layout")
    lhs = fidelity(
        partial_trace(np.outer(uu, uu.conj()), dims, keep=1),
        partial_trace(np.outer(vv, vv.conj()), dims, keep=1),
    )
    rhs = trace_norm(partial_trace(np.outer(uu, vv.conj()), dims, keep=2))
    return bool(abs(lhs - rhs) <= tol)
