"""Bipartite signaling harness.

Alice and Bob share a maximally entangled pair of n-qubit registers
(Alice-major index: amplitude a*2^n + b pairs Alice basis state a with Bob
basis state b). Bob encodes a classical bit into a local operation — either
his choice of phase oracle, or his measurement basis — and Alice runs a
local program on her marginal. CPTP programs act on the density matrix and
can never see the bit; the "magic" branch-wise reflection acts on the
explicit collapse ensemble and extracts it perfectly, which is exactly why
no such one-copy primitive can exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    ATOL,
    DensityMatrix,
    DimensionMismatchError,
    Ensemble,
    PureState,
    householder_apply,
    partial_trace_vector,
    trace_distance,
)
from .search import Oracle

MAX_QUBITS_PER_SIDE = 5


@dataclass(frozen=True)
class BipartiteState:
    """Pure state on H_Q (x) H_B, n qubits per side, Alice-major indexing."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        object.__setattr__(self, "amps", amps)
        dim = 1 << (2 * self.n)
        if amps.shape != (dim,):
            raise ValueError(f"expected {dim} amplitudes for n={self.n} per side")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > ATOL:
            raise ValueError(f"state is not normalized: |amps| = {norm!r}")

    def alice_marginal(self) -> DensityMatrix:
        side = 1 << self.n
        return DensityMatrix(side, partial_trace_vector(self.amps, side, side, "A"))

    def bob_marginal(self) -> DensityMatrix:
        side = 1 << self.n
        return DensityMatrix(side, partial_trace_vector(self.amps, side, side, "B"))


@dataclass(frozen=True)
class AliceProgram:
    """Local program: a CPTP circuit, or the forbidden branch-wise reflection.

    cptp_circuit: `unitary` (2^n x 2^n) applied to Alice's marginal before a
    computational-basis measurement. magic_reflection: reflect a fresh
    `probe` about each collapsed branch state, then measure the probe in
    `probe_basis` (a unitary whose rows are the measurement vectors).
    """

    kind: str
    unitary: np.ndarray | None = None
    probe: PureState | None = None
    probe_basis: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("cptp_circuit", "magic_reflection"):
            raise ValueError(f"unknown program kind {self.kind!r}")
        if self.kind == "cptp_circuit":
            if self.unitary is None:
                raise ValueError("cptp_circuit needs a unitary")
            u = np.ascontiguousarray(self.unitary, dtype=np.complex128)
            if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > 1e-9:
                raise ValueError("cptp_circuit matrix is not unitary")
            object.__setattr__(self, "unitary", u)
        else:
            if self.probe is None or self.probe_basis is None:
                raise ValueError("magic_reflection needs a probe and a probe basis")


@dataclass(frozen=True)
class SignalReport:
    """Outcome distributions conditioned on Bob's bit, with tv and I(b:Y)."""

    P0: np.ndarray
    P1: np.ndarray
    tv: float
    mi: float

    def __post_init__(self):
        for p in (self.P0, self.P1):
            if abs(float(np.sum(p)) - 1.0) > ATOL:
                raise ValueError("outcome distribution does not sum to 1")
        if not -1e-12 <= self.tv <= 1.0 + 1e-12:
            raise ValueError(f"tv out of range: {self.tv}")
        if not -1e-9 <= self.mi <= 1.0 + 1e-9:
            raise ValueError(f"mi out of range: {self.mi}")


def max_entangled(n: int) -> BipartiteState:
    """(1/sqrt(N)) sum_i |i>_Q |i>_B."""
    if not 1 <= n <= MAX_QUBITS_PER_SIDE:
        raise ValueError(f"n must lie in [1, {MAX_QUBITS_PER_SIDE}], got {n}")
    side = 1 << n
    amps = np.zeros(side * side, dtype=np.complex128)
    for i in range(side):
        amps[i * side + i] = 1.0 / math.sqrt(side)
    return BipartiteState(n, amps)


def bob_phase(f: Oracle, state: BipartiteState) -> BipartiteState:
    """Multiply the amplitude of |i>_Q |j>_B by (-1)^{f(j)} — Bob's index only."""
    if f.n != state.n:
        raise DimensionMismatchError(f"qubit counts differ: {f.n} vs {state.n}")
    if f.marked is None:
        return state
    side = 1 << state.n
    amps = state.amps.copy().reshape(side, side)
    amps[:, f.marked] = -amps[:, f.marked]
    return BipartiteState(state.n, amps.reshape(-1))


def _alice_phase(f: Oracle, state: BipartiteState) -> BipartiteState:
    if f.marked is None:
        return state
    side = 1 << state.n
    amps = state.amps.copy().reshape(side, side)
    amps[f.marked, :] = -amps[f.marked, :]
    return BipartiteState(state.n, amps.reshape(-1))


def kickback_check(n: int, f: Oracle) -> float:
    """||(1 (x) V_f)|Phi> - (R_f (x) 1)|Phi>||_2, computed from both sides."""
    phi = max_entangled(n)
    lhs = bob_phase(f, phi)
    rhs = _alice_phase(f, phi)
    return float(np.linalg.norm(lhs.amps - rhs.amps))


def _mutual_information_bits(p0: np.ndarray, p1: np.ndarray) -> float:
    """I(b:Y) in bits for uniform prior on b; 0 log 0 := 0."""
    avg = 0.5 * (p0 + p1)

    def h(p):
        p = p[p > 0]
        return float(-np.sum(p * np.log2(p)))

    return h(avg) - 0.5 * h(p0) - 0.5 * h(p1)


def _rotated_qubit_basis(angle: float) -> np.ndarray:
    """Z measurement basis rotated by Bloch angle `angle` (pi/2 gives X)."""
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def bob_induced_ensembles(n: int, basis_angle: float = math.pi / 2):
    """Alice-side collapse ensembles for Bob's two measurement bases (n=1).

    b=0: Bob measures Z. b=1: Bob measures Z rotated by `basis_angle`. Both
    ensembles average to the maximally mixed state — the lemma's equal-input
    premise — and the pair is returned as (ensemble_b0, ensemble_b1).
    """
    if n != 1:
        raise ValueError("measurement-basis encoding is implemented for n=1")
    ens = []
    for angle in (0.0, basis_angle):
        basis = _rotated_qubit_basis(angle)
        # Bob outcome |u> collapses Alice to conj(u); bases here are real
        members = tuple((0.5, PureState(1, basis[k].conj())) for k in range(2))
        ens.append(Ensemble(members))
    gap = trace_distance(ens[0].average(), ens[1].average())
    if gap > 1e-12:
        raise AssertionError(f"ensemble averages differ by {gap}")
    return ens[0], ens[1]


def magic_reflection(ensemble: Ensemble, probe: PureState) -> Ensemble:
    """Branch-wise {(p_i, R_{psi_i} probe)} — the forbidden primitive."""
    members = tuple(
        (p, householder_apply(s, probe)) for p, s in ensemble.members
    )
    return Ensemble(members)


def _measure_distribution(rho: DensityMatrix, basis: np.ndarray | None = None) -> np.ndarray:
    if basis is None:
        return np.clip(np.diag(rho.entries).real, 0.0, None)
    return np.clip(
        np.einsum("oi,ij,oj->o", basis.conj(), rho.entries, basis).real, 0.0, None
    )


def run_signaling_protocol(
    n: int,
    tau: int,
    alice: AliceProgram,
    bob_choice_model: str = "oracle-choice",
    basis_angle: float = math.pi / 2,
) -> SignalReport:
    """Outcome statistics of Alice's program for Bob's bit b in {0, 1}.

    oracle-choice: Bob applies the null oracle (b=0) or the phase oracle
    marking tau (b=1). measurement-basis: Bob measures his half in the Z
    basis (b=0) or a basis rotated by basis_angle (b=1), collapsing Alice to
    one of two ensembles with equal averages. CPTP programs see only Alice's
    marginal density matrix; the magic program needs the explicit ensemble
    and is rejected on the density-matrix-only oracle-choice path.
    """
    if alice.kind == "magic_reflection":
        if bob_choice_model != "measurement-basis":
            raise ValueError(
                "magic_reflection requires ensemble semantics; "
                "only the measurement-basis path provides an ensemble"
            )
        e0, e1 = bob_induced_ensembles(n, basis_angle)
        dists = []
        for ens in (e0, e1):
            out = magic_reflection(ens, alice.probe)
            p = np.zeros(alice.probe_basis.shape[0])
            for prob, state in out.members:
                p += prob * np.abs(alice.probe_basis.conj() @ state.amps) ** 2
            dists.append(p / p.sum())
        p0, p1 = dists
    elif bob_choice_model == "oracle-choice":
        phi = max_entangled(n)
        rho0 = bob_phase(Oracle(n, None), phi).alice_marginal()
        rho1 = bob_phase(Oracle(n, tau), phi).alice_marginal()
        p0, p1 = (_alice_cptp_distribution(alice, r) for r in (rho0, rho1))
    elif bob_choice_model == "measurement-basis":
        e0, e1 = bob_induced_ensembles(n, basis_angle)
        p0, p1 = (_alice_cptp_distribution(alice, e.average()) for e in (e0, e1))
    else:
        raise ValueError(f"unknown bob_choice_model {bob_choice_model!r}")

    tv = float(0.5 * np.sum(np.abs(p0 - p1)))
    mi = _mutual_information_bits(p0, p1)
    return SignalReport(p0, p1, tv, max(0.0, mi))


def _alice_cptp_distribution(alice: AliceProgram, rho: DensityMatrix) -> np.ndarray:
    if alice.kind != "cptp_circuit":
        raise ValueError("density-matrix path requires a cptp program")
    u = alice.unitary
    if u.shape[0] != rho.dim:
        raise DimensionMismatchError(f"program dim {u.shape[0]} vs state dim {rho.dim}")
    out = u @ rho.entries @ u.conj().T
    p = np.clip(np.diag(out).real, 0.0, None)
    return p / p.sum()


def random_cptp_program(n: int, rng: np.random.Generator) -> AliceProgram:
    """Haar-random local unitary followed by a computational measurement."""
    dim = 1 << n
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return AliceProgram(kind="cptp_circuit", unitary=q)


def magic_demo_program() -> AliceProgram:
    """Probe |+> reflected branch-wise, measured in the +/- basis."""
    plus = PureState(1, np.array([1.0, 1.0]) / math.sqrt(2.0))
    pm = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
    return AliceProgram(kind="magic_reflection", probe=plus, probe_basis=pm)


def helstrom_bias(rho0: DensityMatrix, rho1: DensityMatrix, copies: int = 1) -> float:
    """Optimal two-hypothesis success probability at equal priors.

    Pure inputs: 1/2 + 1/2 sqrt(1 - alpha^(2t)) with alpha the overlap
    magnitude. Mixed single-copy: 1/2 + 1/2 trace_distance. Mixed multi-copy
    has no closed form here and is rejected.
    """
    if rho0.dim != rho1.dim:
        raise DimensionMismatchError(f"dimensions differ: {rho0.dim} vs {rho1.dim}")
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    if rho0.is_pure() and rho1.is_pure():
        alpha_sq = float(np.trace(rho0.entries @ rho1.entries).real)
        alpha_sq = min(1.0, max(0.0, alpha_sq))
        return 0.5 + 0.5 * math.sqrt(max(0.0, 1.0 - alpha_sq**copies))
    if copies > 1:
        raise ValueError("multi-copy bias implemented for pure states only")
    return 0.5 + 0.5 * trace_distance(rho0, rho1)
