"""States under a U(1) superselection rule.

A pure state decomposes over charge sectors labelled by nonnegative integers
``n`` inside a fixed ambient window ``0..dim-1``. Sectors may carry extra
multiplicity amplitudes at ingestion, but every downstream computation uses
the standard form: the vector of per-sector squared norms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    InvalidDensity,
    LengthMismatch,
    NotNormalized,
    NotProbabilityVector,
)
from .numerics import validate_density

NORM_TOL = 1e-9
SPECTRUM_EPS = 1e-12
MAJORIZE_TOL = 1e-9


@dataclass(frozen=True)
class SectoredPureState:
    """Pure state given as complex amplitude blocks per charge sector.

    ``sectors`` maps a sector label ``n`` to the amplitude vector over that
    sector's multiplicity space. Labels must lie in ``0..dim-1``.
    """

    sectors: Mapping[int, np.ndarray]
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        clean: dict[int, np.ndarray] = {}
        for n, amps in self.sectors.items():
            n = int(n)
            if not 0 <= n < self.dim:
                raise ValueError(f"sector label {n} outside window 0..{self.dim - 1}")
            vec = np.atleast_1d(np.asarray(amps, dtype=np.complex128))
            if vec.ndim != 1 or vec.size == 0:
                raise ValueError(f"sector {n} needs a nonempty amplitude vector")
            clean[n] = vec
        if not clean:
            raise ValueError("state needs at least one sector")
        object.__setattr__(self, "sectors", clean)

    def squared_norm(self) -> float:
        return float(sum(np.vdot(v, v).real for v in self.sectors.values()))


@dataclass(frozen=True)
class StandardState:
    """Standard form of a pure state: per-sector weights on ``0..dim-1``."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D sequence")
        if w.min() < -SPECTRUM_EPS:
            raise NotNormalized(f"negative weight {w.min():.3e}")
        total = w.sum()
        if abs(total - 1.0) > 1e-12:
            raise NotNormalized(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "weights", np.clip(w, 0.0, None))

    @property
    def dim(self) -> int:
        return int(self.weights.size)

    def vector(self) -> np.ndarray:
        """Representative amplitude vector with real entries sqrt(weight)."""
        return np.sqrt(self.weights).astype(np.complex128)

    def projector(self) -> np.ndarray:
        v = self.vector()
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class NumberSpectrum:
    """Occupied sector labels of a state, sorted ascending."""

    support: tuple[int, ...]

    @property
    def n_min(self) -> int:
        return self.support[0]

    @property
    def n_max(self) -> int:
        return self.support[-1]


@dataclass(frozen=True)
class BipartitePureState:
    """Charge-correlated two-party pure state with fixed total charge."""

    amplitudes: Mapping[tuple[int, int], complex]
    total: int
    system_dim: int

    def reduced_system(self) -> np.ndarray:
        rho = np.zeros((self.system_dim, self.system_dim), dtype=np.complex128)
        for (ns, nr), a in self.amplitudes.items():
            for (ms, mr), b in self.amplitudes.items():
                if nr == mr:
                    rho[ns, ms] += a * np.conj(b)
        return rho

    def reduced_reference(self) -> np.ndarray:
        d = self.total + 1
        rho = np.zeros((d, d), dtype=np.complex128)
        for (ns, nr), a in self.amplitudes.items():
            for (ms, mr), b in self.amplitudes.items():
                if ns == ms:
                    rho[nr, mr] += a * np.conj(b)
        return rho


def standard_form(state: SectoredPureState) -> StandardState:
    """Collapse multiplicity amplitudes to per-sector weights.

    Raises :class:`NotNormalized` if the input norm deviates from 1 beyond
    ``NORM_TOL``; the output is renormalized exactly.
    """
    total = state.squared_norm()
    if abs(np.sqrt(total) - 1.0) > NORM_TOL:
        raise NotNormalized(f"state norm {np.sqrt(total)!r} deviates from 1")
    w = np.zeros(state.dim)
    for n, amps in state.sectors.items():
        w[n] = np.vdot(amps, amps).real
    return StandardState(w / total)


def spectrum(state: StandardState, eps: float = SPECTRUM_EPS) -> NumberSpectrum:
    """Sector labels carrying weight above ``eps``."""
    support = tuple(int(n) for n in np.flatnonzero(state.weights > eps))
    return NumberSpectrum(support)


def is_gapless(spec: NumberSpectrum) -> bool:
    """True when the support is a contiguous run of integers."""
    if not spec.support:
        raise ValueError("spectrum support is empty")
    return spec.n_max - spec.n_min + 1 == len(spec.support)


def twirl(rho: np.ndarray, sector_of: Sequence[int] | None = None) -> np.ndarray:
    """Dephase a density matrix in the charge basis.

    Coherences between distinct sectors are erased; blocks within a sector
    survive. By default basis index ``i`` carries charge ``i``; pass
    ``sector_of`` to assign charges when basis states share a sector.
    """
    m = validate_density(rho)
    d = m.shape[0]
    labels = np.arange(d) if sector_of is None else np.asarray(sector_of, dtype=int)
    if labels.shape != (d,):
        raise ValueError(f"sector labels must have length {d}")
    mask = labels[:, None] == labels[None, :]
    return np.where(mask, m, 0.0)


def purify(state: StandardState) -> BipartitePureState:
    """Charge-correlated purification against a reference register.

    The reference holds the deficit to the top occupied charge, so the
    joint state has a sharp total charge and its system marginal equals
    the dephased input.
    """
    spec = spectrum(state)
    t = spec.n_max
    amps = {
        (n, t - n): complex(np.sqrt(state.weights[n])) for n in spec.support
    }
    return BipartitePureState(amps, total=t, system_dim=state.dim)


def _as_probability_vector(seq: Sequence[float], tol: float) -> np.ndarray:
    v = np.asarray(seq, dtype=np.float64)
    if v.ndim != 1:
        raise LengthMismatch(f"expected a 1-D sequence, got shape {v.shape}")
    if v.size == 0:
        raise LengthMismatch("empty sequence")
    if v.min() < -tol:
        raise NotProbabilityVector(f"negative entry {v.min():.3e}")
    if abs(v.sum() - 1.0) > tol:
        raise NotProbabilityVector(f"entries sum to {v.sum()!r}")
    return v


def majorizes(a: Sequence[float], b: Sequence[float], tol: float = MAJORIZE_TOL) -> bool:
    """True when sorted prefix sums of ``a`` dominate those of ``b``.

    Both inputs must be probability vectors; the shorter one is padded
    with zeros.
    """
    va = _as_probability_vector(a, tol)
    vb = _as_probability_vector(b, tol)
    size = max(va.size, vb.size)
    va = np.pad(va, (0, size - va.size))
    vb = np.pad(vb, (0, size - vb.size))
    pa = np.cumsum(np.sort(va)[::-1])
    pb = np.cumsum(np.sort(vb)[::-1])
    return bool(np.all(pa >= pb - 1e-12))


def random_standard_state(dim: int, rng: np.random.Generator) -> StandardState:
    """Standard form of a Haar-uniform pure state on the ambient sphere."""
    c = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    w = np.abs(c) ** 2
    return StandardState(w / w.sum())


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: int | None = None
) -> np.ndarray:
    """Random density matrix from a complex Gaussian factor of given rank."""
    r = dim if rank is None else rank
    g = rng.normal(size=(dim, r)) + 1j * rng.normal(size=(dim, r))
    m = g @ g.conj().T
    return m / np.trace(m).real


def _complex_from_pair(pair: Sequence[float]) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def state_from_dict(data: dict) -> SectoredPureState | StandardState:
    """Build a state from its JSON-level dictionary form."""
    if "sectors" in data:
        dim = int(data["dim"])
        sectors = {
            int(block["n"]): np.array(
                [_complex_from_pair(p) for p in block["amplitudes"]]
            )
            for block in data["sectors"]
        }
        return SectoredPureState(sectors, dim)
    if "weights" in data:
        return StandardState(np.asarray(data["weights"], dtype=np.float64))
    raise ValueError("state dictionary needs a 'sectors' or 'weights' key")


def density_from_dict(data: dict) -> np.ndarray:
    if "matrix" not in data:
        raise ValueError("density dictionary needs a 'matrix' key")
    dim = int(data["dim"])
    rows = data["matrix"]
    m = np.array(
        [[_complex_from_pair(entry) for entry in row] for row in rows],
        dtype=np.complex128,
    )
    if m.shape != (dim, dim):
        raise InvalidDensity(f"matrix shape {m.shape} does not match dim {dim}")
    return validate_density(m)


def density_to_dict(rho: np.ndarray) -> dict:
    m = np.asarray(rho, dtype=np.complex128)
    return {
        "dim": int(m.shape[0]),
        "matrix": [
            [[float(z.real), float(z.imag)] for z in row] for row in m
        ],
    }


def load_state(path: str) -> SectoredPureState | StandardState:
    with open(path, encoding="utf-8") as fh:
        return state_from_dict(json.load(fh))


def load_density(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return density_from_dict(json.load(fh))
