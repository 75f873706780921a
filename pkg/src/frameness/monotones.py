"""Frameness monotones for states under the charge superselection rule.

Pure-state monotones act on standard-form weight vectors. For qubits the
mixed-state extension of the order-2 concurrence has a closed form through
the spectrum of an R matrix; the optimal decomposition achieving it is
constructed explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from .channels import Ensemble
from .errors import BadK, BadProbability, WrongDimension
from .numerics import hermitian_eig, product_eig_sqrt, psd_sqrt, validate_density
from .states import StandardState

KINDS = ("vidal", "entropy", "concurrence", "variance")
CROSS_CHECK_TOL = 1e-8
_FLIP = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)


@dataclass(frozen=True)
class MonotoneId:
    """Name of one monotone: a kind plus the order k where applicable."""

    kind: str
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown monotone kind {self.kind!r}")
        if self.kind in ("vidal", "concurrence"):
            if self.k is None:
                raise BadK(f"{self.kind} needs an order k")
            if int(self.k) < 2:
                raise BadK(f"order k must be at least 2, got {self.k}")
            object.__setattr__(self, "k", int(self.k))
        elif self.k is not None:
            raise BadK(f"{self.kind} does not take an order k")

    def label(self) -> str:
        return self.kind if self.k is None else f"{self.kind}[{self.k}]"


def _check_k(k: int, dim: int) -> int:
    k = int(k)
    if not 2 <= k <= dim:
        raise BadK(f"order k={k} outside 2..{dim}")
    return k


def _tail_sum(weights: np.ndarray, k: int) -> float:
    ordered = np.sort(weights)[::-1]
    return float(ordered[k - 1 :].sum())


def _shannon_bits(weights: np.ndarray) -> float:
    w = weights[weights > 0.0]
    return float(-(w * np.log2(w)).sum())


def _elementary_symmetric(values: np.ndarray, k: int) -> float:
    # Coefficient of x^k in prod(1 + v x), accumulated stably; no
    # cancellation occurs for nonnegative inputs.
    acc = np.zeros(k + 1)
    acc[0] = 1.0
    for count, v in enumerate(values, start=1):
        top = min(count, k)
        for j in range(top, 0, -1):
            acc[j] += v * acc[j - 1]
    return float(acc[k])


def _concurrence_weights(weights: np.ndarray, k: int) -> float:
    d = weights.size
    num = _elementary_symmetric(weights, k)
    den = math.comb(d, k) / d**k
    ratio = min(num / den, 1.0)
    return ratio ** (1.0 / k)


def _variance_weights(weights: np.ndarray) -> float:
    labels = np.arange(weights.size)
    m1 = float(weights @ labels)
    m2 = float(weights @ labels**2)
    return 4.0 * (m2 - m1 * m1)


def vidal_f(state: StandardState, k: int) -> float:
    """Tail sum of the descending weights from position k (1-based)."""
    k = _check_k(k, state.dim)
    return _tail_sum(state.weights, k)


def entropy_of_frameness(state: StandardState) -> float:
    """Shannon entropy of the weights, in bits."""
    return _shannon_bits(state.weights)


def elementary_symmetric(values: Sequence[float], k: int) -> float:
    """k-th elementary symmetric polynomial of the given reals."""
    v = np.asarray(values, dtype=np.float64)
    k = _check_k(k, v.size)
    return _elementary_symmetric(v, k)


def concurrence_pure(state: StandardState, k: int) -> float:
    """Order-k concurrence: symmetric-polynomial ratio against the flat state."""
    k = _check_k(k, state.dim)
    return _concurrence_weights(state.weights, k)


def variance_pure(state: StandardState) -> float:
    """Four times the charge variance; sensitive to the sector labels."""
    return _variance_weights(state.weights)


def weight_evaluator(measure: MonotoneId, dim: int) -> Callable[[np.ndarray], float]:
    """Resolve a monotone to a plain function on weight vectors of length ``dim``."""
    if measure.kind == "vidal":
        k = _check_k(measure.k, dim)
        return lambda w: _tail_sum(w, k)
    if measure.kind == "entropy":
        return _shannon_bits
    if measure.kind == "concurrence":
        k = _check_k(measure.k, dim)
        return lambda w: _concurrence_weights(w, k)
    return _variance_weights


def evaluate_pure(measure: MonotoneId, state: StandardState) -> float:
    """Value of a pure-state monotone on a standard-form state."""
    return weight_evaluator(measure, state.dim)(state.weights)


def conjugate_flip(rho: np.ndarray) -> np.ndarray:
    """Entrywise conjugate followed by the charge-reversing flip on a qubit."""
    return _FLIP @ rho.conj() @ _FLIP


def qubit_R_eigs(rho: np.ndarray) -> np.ndarray:
    """Descending eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)) for a qubit.

    The values come from the product-eigenvalue fast path and are
    cross-checked against the explicit matrix-root route.
    """
    m = np.asarray(rho)
    if m.shape != (2, 2):
        raise WrongDimension(f"expected a 2x2 matrix, got shape {m.shape}")
    m = validate_density(m)
    tilde = conjugate_flip(m)
    fast = product_eig_sqrt(m, tilde)
    root = psd_sqrt(m)
    direct = hermitian_eig(psd_sqrt(root @ tilde @ root))[0]
    # The matrix-root route cannot pin a zero eigenvalue tighter than
    # sqrt(machine eps) ~ 1.5e-8, so the guard leaves headroom for
    # rank-deficient inputs; full-rank states agree far below 1e-8.
    if np.max(np.abs(fast - direct)) > 10.0 * CROSS_CHECK_TOL:
        raise ArithmeticError(
            f"R-spectrum paths disagree: {fast} vs {direct}"
        )
    return fast


def qubit_concurrence(rho: np.ndarray) -> float:
    """Closed-form mixed-state concurrence of a qubit: |mu1 - mu2|."""
    mu = qubit_R_eigs(rho)
    return float(abs(mu[0] - mu[1]))


def qubit_fof(rho: np.ndarray) -> float:
    """Closed-form qubit frameness of formation: the squared concurrence."""
    return qubit_concurrence(rho) ** 2


@dataclass(frozen=True)
class AppendixResult:
    """Closed-form values on the two-parameter qubit family."""

    mu1: float
    mu2: float
    concurrence: float
    fof: float
    rho: np.ndarray


def appendix_closed_form(p: float, alpha: float) -> AppendixResult:
    """Closed forms for rho = p |phi1><phi1| + (1-p) |phi2><phi2|.

    Here phi1 = cos(a/2)|0> + sin(a/2)|1> and phi2 is its orthogonal
    complement. Raises :class:`BadProbability` for p outside [0, 1].
    """
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"p={p} outside [0, 1]")
    s = math.sin(alpha)
    v = (1.0 - 2.0 * p) ** 2 * s * s
    base = p * (1.0 - p) + 0.5 * v
    gap = 0.5 * abs((1.0 - 2.0 * p) * s) * math.sqrt(v + 4.0 * p * (1.0 - p))
    mu1 = math.sqrt(max(base + gap, 0.0))
    mu2 = math.sqrt(max(base - gap, 0.0))
    phi1 = np.array([math.cos(alpha / 2.0), math.sin(alpha / 2.0)], dtype=np.complex128)
    phi2 = np.array([-math.sin(alpha / 2.0), math.cos(alpha / 2.0)], dtype=np.complex128)
    rho = p * np.outer(phi1, phi1.conj()) + (1.0 - p) * np.outer(phi2, phi2.conj())
    return AppendixResult(
        mu1=mu1,
        mu2=mu2,
        concurrence=abs((1.0 - 2.0 * p) * s),
        fof=v,
        rho=rho,
    )


def preconcurrence_matrix(phis: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix of overlaps <phi_i | flip conj(phi_j)> for qubit vectors.

    Symmetric for any collection of vectors; its singular values are the
    R-spectrum when the vectors form a subnormalized eigendecomposition.
    """
    cols = [np.asarray(p, dtype=np.complex128) for p in phis]
    r = len(cols)
    tau = np.zeros((r, r), dtype=np.complex128)
    for i in range(r):
        for j in range(r):
            tau[i, j] = np.vdot(cols[i], _FLIP @ cols[j].conj())
    return tau


def takagi(sym: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Factor a complex symmetric matrix as W diag(s) W^T with unitary W.

    Built on the SVD: the gauge V† conj(U) is symmetric unitary and block
    diagonal over repeated singular values, so its principal square root
    rotates U onto a valid W.
    """
    a = np.asarray(sym, dtype=np.complex128)
    u, s, vh = np.linalg.svd(a)
    gauge = vh @ u.conj()
    w = u @ np.asarray(scipy.linalg.sqrtm(gauge), dtype=np.complex128)
    return s, w


def optimal_qubit_decomposition(rho: np.ndarray, rank_eps: float = 1e-12) -> Ensemble:
    """Decomposition of a qubit state whose members all attain the closed-form concurrence.

    Follows the classic recipe: diagonalize the preconcurrence matrix of a
    subnormalized eigendecomposition by a symmetric congruence, flip the
    second branch's sign, then rotate by the smallest nonnegative angle
    that equalizes the members' preconcurrences.
    """
    m = np.asarray(rho)
    if m.shape != (2, 2):
        raise WrongDimension(f"expected a 2x2 matrix, got shape {m.shape}")
    m = validate_density(m)
    w, v = hermitian_eig(m)
    w = np.clip(w, 0.0, None)
    keep = w > rank_eps
    if keep.sum() <= 1:
        vec = v[:, 0] / np.linalg.norm(v[:, 0])
        return Ensemble(((1.0, vec),))

    phis = [np.sqrt(w[i]) * v[:, i] for i in range(2)]
    tau = preconcurrence_matrix(phis)
    mu, wmat = takagi(tau)
    y = wmat.conj().T
    xi = [y[i, 0] * phis[0] + y[i, 1] * phis[1] for i in range(2)]
    xi[1] = 1j * xi[1]  # preconcurrences now (mu1, -mu2)

    p1 = float(np.vdot(xi[0], xi[0]).real)
    p2 = float(np.vdot(xi[1], xi[1]).real)
    gap = float(mu[0] - mu[1])
    pre1 = mu[0] / p1
    pre2 = -mu[1] / p2
    if abs(pre1 - pre2) <= 1e-12:
        theta = 0.0
    else:
        overlap = float(np.vdot(xi[0], xi[1]).real)
        a = 0.5 * (mu[0] + mu[1] - gap * (p1 - p2))
        b = gap * overlap
        theta = (0.5 * math.atan2(a, b)) % (0.5 * math.pi)
    c, s = math.cos(theta), math.sin(theta)
    zetas = [c * xi[0] + s * xi[1], -s * xi[0] + c * xi[1]]

    members = []
    for z in zetas:
        p = float(np.vdot(z, z).real)
        if p <= rank_eps:
            continue
        members.append((p, z / np.sqrt(p)))
    return Ensemble(tuple(members))
