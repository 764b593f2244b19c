"""Dense linear algebra for pure and mixed states.

Pure states, density matrices, and explicit ensembles, together with the
reflection, distance, and entropy primitives every other module builds on,
plus the linearity witness showing that a one-copy programmable reflection
about an unknown state cannot be a unitary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels

ATOL = 1e-10

ENTROPY_EIGENVALUE_CLIP = 1e-15


class DimensionMismatchError(ValueError):
    """Operands live in different Hilbert spaces."""


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex amplitude vector over the 2^n computational basis."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        object.__setattr__(self, "amps", amps)
        if self.n < 0:
            raise ValueError(f"qubit count must be non-negative, got {self.n}")
        if amps.shape != (1 << self.n,):
            raise ValueError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state is not normalized: |amps| = {norm!r}")

    @classmethod
    def from_amplitudes(cls, amps) -> "PureState":
        amps = np.asarray(amps, dtype=np.complex128)
        n = int(amps.shape[0]).bit_length() - 1
        if amps.shape[0] != 1 << n:
            raise ValueError(f"amplitude count {amps.shape[0]} is not a power of two")
        return cls(n, amps)

    @classmethod
    def basis(cls, n: int, index: int) -> "PureState":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def uniform(cls, n: int) -> "PureState":
        dim = 1 << n
        return cls(n, np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "PureState":
        """Haar-random pure state on n qubits."""
        dim = 1 << n
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return cls(n, v / np.linalg.norm(v))

    def overlap(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "PureState") -> float:
        return abs(self.overlap(other)) ** 2

    def density(self) -> "DensityMatrix":
        return DensityMatrix(1 << self.n, np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive-semidefinite, unit-trace matrix."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.ascontiguousarray(self.entries, dtype=np.complex128)
        object.__setattr__(self, "entries", entries)
        if entries.shape != (self.dim, self.dim):
            raise ValueError(f"expected {self.dim}x{self.dim} matrix, got {entries.shape}")
        if np.max(np.abs(entries - entries.conj().T)) > ATOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = np.trace(entries).real
        if abs(tr - 1.0) > ATOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        lo = np.linalg.eigvalsh(entries).min()
        if lo < -ATOL:
            raise ValueError(f"density matrix has negative eigenvalue {lo!r}")

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityMatrix":
        return state.density()

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)

    def is_pure(self, atol: float = 1e-9) -> bool:
        return abs(self.purity() - 1.0) <= atol


@dataclass(frozen=True)
class Ensemble:
    """Explicit (probability, pure state) decomposition of a mixed state."""

    members: tuple = field(default_factory=tuple)

    def __post_init__(self):
        members = tuple((float(p), s) for p, s in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("ensemble must have at least one member")
        total = sum(p for p, _ in members)
        if abs(total - 1.0) > ATOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        ns = {s.n for _, s in members}
        if len(ns) != 1:
            raise ValueError(f"ensemble members disagree on qubit count: {sorted(ns)}")

    @property
    def n(self) -> int:
        return self.members[0][1].n

    def average(self) -> DensityMatrix:
        dim = 1 << self.n
        rho = np.zeros((dim, dim), dtype=np.complex128)
        for p, s in self.members:
            rho += p * np.outer(s.amps, s.amps.conj())
        return DensityMatrix(dim, rho)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the trace norm of a - b, via eigenvalues of the difference."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions differ: {a.dim} vs {b.dim}")
    eig = np.linalg.eigvalsh(a.entries - b.entries)
    return float(0.5 * np.sum(np.abs(eig)))


def pure_trace_distance(a: PureState, b: PureState) -> float:
    """sqrt(1 - F) shortcut for pure states."""
    if a.n != b.n:
        raise DimensionMismatchError(f"qubit counts differ: {a.n} vs {b.n}")
    f = a.fidelity(b)
    return float(np.sqrt(max(0.0, 1.0 - f)))


def householder_apply(axis: PureState, target: PureState) -> PureState:
    """Image of target under 1 - 2|axis><axis|."""
    if axis.n != target.n:
        raise DimensionMismatchError(f"qubit counts differ: {axis.n} vs {target.n}")
    return PureState(target.n, kernels.reflect(axis.amps, target.amps))


def partial_trace(joint, keep: str, dims: tuple | None = None) -> DensityMatrix:
    """Reduced state of a bipartite pure state or density matrix.

    keep is "A" (first factor) or "B" (second factor). dims gives the factor
    dimensions (dim_A, dim_B); by default the joint dimension is split into
    equal square halves.
    """
    if keep not in ("A", "B"):
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    total = (1 << joint.n) if isinstance(joint, PureState) else joint.dim
    if dims is None:
        da = int(round(np.sqrt(total)))
        if da * da != total:
            raise ValueError(f"dimension {total} does not factor as d x d")
        dims = (da, da)
    da, db = dims
    if da * db != total:
        raise ValueError(f"dimension {total} does not factor as {da} x {db}")
    if isinstance(joint, PureState):
        psi = joint.amps.reshape(da, db)
        if keep == "A":
            return DensityMatrix(da, psi @ psi.conj().T)
        return DensityMatrix(db, psi.T @ psi.conj())
    r = joint.entries.reshape(da, db, da, db)
    if keep == "A":
        red = np.einsum("ikjk->ij", r)
        return DensityMatrix(da, red)
    red = np.einsum("kikj->ij", r)
    return DensityMatrix(db, red)


def partial_trace_vector(amps: np.ndarray, dim_a: int, dim_b: int, keep: str) -> np.ndarray:
    """Reduced density matrix of a bipartite amplitude vector (Alice-major index)."""
    psi = np.asarray(amps, dtype=np.complex128).reshape(dim_a, dim_b)
    if keep == "A":
        return psi @ psi.conj().T
    if keep == "B":
        return psi.T @ psi.conj()
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy -sum lam log2 lam in bits, clipping eigenvalues below 1e-15."""
    lam = rho.eigenvalues()
    if lam.min() < -ATOL:
        raise ValueError(f"input is not PSD: min eigenvalue {lam.min()!r}")
    lam = lam[lam > ENTROPY_EIGENVALUE_CLIP]
    return float(-np.sum(lam * np.log2(lam)))


def no_reflection_witness(psi: PureState, phi: PureState) -> float:
    """Linearity residual of the hypothetical one-copy reflection gate.

    Builds chi = (psi + phi)/|psi + phi| and compares, on the two-copy space,
    the linear extension of the reflection gate's defining action on product
    inputs against the direct action -chi (x) chi. The Euclidean norm of the
    difference is zero iff phi equals psi up to phase; for orthogonal inputs
    it equals sqrt(2).
    """
    if psi.n != phi.n:
        raise DimensionMismatchError(f"qubit counts differ: {psi.n} vs {phi.n}")
    s = psi.amps + phi.amps
    m = np.linalg.norm(s)
    if m < 1e-12:
        raise ValueError("antipodal inputs: psi + phi vanishes")
    chi = s / m
    ov = np.vdot(psi.amps, phi.amps)

    pp = np.kron(psi.amps, psi.amps)
    pf = np.kron(psi.amps, phi.amps)
    fp = np.kron(phi.amps, psi.amps)
    ff = np.kron(phi.amps, phi.amps)

    # image of each product term under the reflection gate's specification
    u_pp = -pp
    u_ff = -ff
    u_pf = pf - 2.0 * ov * pp
    u_fp = fp - 2.0 * np.conj(ov) * ff

    v_lin = (u_pp + u_pf + u_fp + u_ff) / (m * m)
    v_dir = -np.kron(chi, chi)
    return float(np.linalg.norm(v_lin - v_dir))
