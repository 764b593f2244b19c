"""Learning-theory bound machinery and discrimination experiments.

Covering/packing constructions for circuit-generated state classes, Fano
and Holevo evaluators, the sample-complexity bound formulas, and an
empirical multi-hypothesis discrimination experiment that validates the
Fano <= I(X;Y) <= M_s * chi sandwich.

All bound formulas are shape-only certificates: the constants are config
inputs defaulting to 1 and no asymptotic constant is claimed. Information
quantities are in bits; bound formulas use natural logs with the base
absorbed into the constants.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .qcore import Ensemble, PureState, pure_trace_distance, von_neumann_entropy

EXACT_POSTERIOR_MAX_K = 64

EXACT_POSTERIOR_MAX_DIM = 16


class RangeWarning(UserWarning):
    """Input outside the stated validity range of a bound; value still computed."""


@dataclass(frozen=True)
class StateClassSpec:
    """Circuit-generated state class S_{n,G} with its architecture constants."""

    n: int
    gates: int
    params_per_gate: int = 1
    kappa_arch: float = 1.0
    lipschitz: float = 1.0
    entropy_constant: float = 1.0

    def __post_init__(self):
        if self.n < 1 or self.gates < 1:
            raise ValueError("n and gates must be positive")
        if self.params_per_gate < 1:
            raise ValueError("params_per_gate must be a positive integer")
        if min(self.kappa_arch, self.lipschitz) <= 0 or self.entropy_constant < 0:
            raise ValueError("architecture constants must be positive")


@dataclass(frozen=True)
class PackingSet:
    """Pure states pairwise separated in trace distance; re-verified on build."""

    states: tuple
    separation: float
    pool_size: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        for i, a in enumerate(self.states):
            for b in self.states[i + 1 :]:
                d = pure_trace_distance(a, b)
                if d < self.separation - 1e-10:
                    raise ValueError(
                        f"packing violated: pair at distance {d} < {self.separation}"
                    )

    @property
    def size(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class BoundReport:
    """Named scalar bounds with their formula inputs echoed."""

    kind: str
    bounds: dict
    inputs: dict
    shape_only: bool = True
    notes: tuple = ()


def _warn_epsilon(epsilon: float):
    if not 0 < epsilon:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if epsilon > 0.25:
        warnings.warn(
            f"epsilon={epsilon} outside stated range (0, 1/4]; value still computed",
            RangeWarning,
            stacklevel=3,
        )


def _warn_delta(delta: float):
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    if delta > 0.1:
        warnings.warn(
            f"delta={delta} outside stated range (0, 1/10]; value still computed",
            RangeWarning,
            stacklevel=3,
        )


def covering_log_bound(spec: StateClassSpec, epsilon: float) -> float:
    """Metric-entropy certificate C*G*ln(G/eps) + ln(1/eps), in nats.

    An upper-bound formula evaluation, not a measured covering number.
    """
    _warn_epsilon(epsilon)
    g = spec.gates
    return spec.entropy_constant * g * math.log(g / epsilon) + math.log(1.0 / epsilon)


def greedy_packing(
    dim: int,
    separation: float,
    candidate_pool_size: int = 1000,
    seed: int = 0,
    candidates=None,
) -> PackingSet:
    """Greedy packing of Haar-random pure states at the given trace distance.

    Keeps each candidate that is >= separation from every kept state; the
    result's size is a certified lower bound on the true packing number. An
    explicit candidate list overrides the random pool.
    """
    if not 0 < separation <= 1:
        raise ValueError(f"separation must lie in (0, 1], got {separation}")
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"dim must be a power of two >= 2, got {dim}")
    if candidates is None:
        rng = np.random.default_rng(seed)
        candidates = [PureState.random(n, rng) for _ in range(candidate_pool_size)]
    kept: list[PureState] = []
    for cand in candidates:
        if all(pure_trace_distance(cand, s) >= separation for s in kept):
            kept.append(cand)
    return PackingSet(tuple(kept), separation, len(candidates), seed)


def binary_entropy(delta: float) -> float:
    """h2 in bits with 0 log 0 := 0."""
    if delta in (0.0, 1.0):
        return 0.0
    return float(-delta * math.log2(delta) - (1 - delta) * math.log2(1 - delta))


def fano_lower(k: int, delta: float) -> float:
    """max(0, (1-delta) log2 K - h2(delta)) bits; requires delta < 1/2."""
    if k < 1:
        raise ValueError(f"K must be >= 1, got {k}")
    if not 0 <= delta < 0.5:
        raise ValueError(f"delta must lie in [0, 1/2), got {delta}")
    return max(0.0, (1.0 - delta) * math.log2(k) - binary_entropy(delta))


def holevo_chi(ensemble: Ensemble) -> float:
    """Per-copy information ceiling S(rho_ens) in bits, for pure members."""
    return von_neumann_entropy(ensemble.average())


def sample_lower_bound(
    n: int, gates: float, epsilon: float, delta: float, c2: float = 1.0
) -> float:
    """(c2/eps^2) (min{2^n, G} + ln(1/delta))."""
    _warn_epsilon(epsilon)
    _warn_delta(delta)
    return (c2 / epsilon**2) * (min(float(1 << n), float(gates)) + math.log(1.0 / delta))


def sample_upper_bound(
    n: int, gates: float, epsilon: float, delta: float, c1: float = 1.0
) -> float:
    """(c1/eps^2) min{2^n ln(1/delta), G ln(G/eps) + ln(1/delta)}."""
    _warn_epsilon(epsilon)
    _warn_delta(delta)
    log_inv_delta = math.log(1.0 / delta)
    universal = float(1 << n) * log_inv_delta
    circuit = float(gates) * math.log(gates / epsilon) + log_inv_delta
    return (c1 / epsilon**2) * min(universal, circuit)


def universal_lock(
    n: int, epsilon: float = 1.0, delta: float = 1.0, constants: dict | None = None
) -> BoundReport:
    """Universal-preparation gate floor and the sample bounds it drives.

    Parameter counting requires c2 * G >= 2(2^n - 1) to reach every pure
    state, so the universal ("locked") regime pays the exponential sample
    bound (c2/eps^2)(2^n + ln(1/delta)). Substituting the causality gate
    budget G_ref = sqrt(N)/ln N instead unlocks the polynomially smaller
    bound (c2/eps^2)(min{2^n, G_ref} + ln(1/delta)).
    """
    constants = constants or {}
    p = constants.get("params_per_gate", 1)
    c2 = constants.get("c2", 1.0)
    big_n = 1 << n
    g_univ = math.ceil(2 * (big_n - 1) / p)
    g_ref = math.sqrt(big_n) / math.log(big_n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RangeWarning)
        locked = (c2 / epsilon**2) * (big_n + math.log(1.0 / delta))
        unlocked = sample_lower_bound(n, g_ref, epsilon, delta, c2=c2)
    return BoundReport(
        kind="universal_lock",
        bounds={
            "g_univ_floor": float(g_univ),
            "locked_samples": locked,
            "unlocked_gate_budget": g_ref,
            "unlocked_samples": unlocked,
        },
        inputs={"n": n, "epsilon": epsilon, "delta": delta, "params_per_gate": p, "c2": c2},
        notes=("parameter-counting certificate; constants are shape-only",),
    )


@dataclass(frozen=True)
class DiscriminationReport:
    k: int
    copies: int
    strategy: str
    trials: int
    error_rate: float
    error_sigma: float
    mi: float
    mi_sigma: float
    fano_floor: float
    holevo_ceiling: float
    sandwich_ok: bool


def _pair_vote_probability(a: PureState, b: PureState, true: PureState, copies: int) -> float:
    """P(Helstrom vote for a | `copies` fresh copies of `true`).

    The equal-prior Helstrom measurement for a^(x)m vs b^(x)m lives in their
    two-dimensional span; the component of true^(x)m outside the span is
    split evenly (the difference operator vanishes there).
    """
    if copies == 0:
        return 0.5
    beta = a.overlap(b) ** copies
    s2 = 1.0 - abs(beta) ** 2
    ca = a.overlap(true) ** copies
    cb = b.overlap(true) ** copies
    if s2 < 1e-24:
        return 0.5
    s = math.sqrt(s2)
    # span basis e1 = a^m, e2 = (b^m - beta a^m)/s; coords of true^m
    t1 = ca
    t2 = (cb - np.conj(beta) * ca) / s
    # positive eigenvector of |e1><e1| - |b^m><b^m| in that basis
    delta = np.array(
        [
            [1.0 - abs(beta) ** 2, -beta * s],
            [-np.conj(beta) * s, -s2],
        ],
        dtype=np.complex128,
    )
    vals, vecs = np.linalg.eigh(delta)
    v_plus = vecs[:, int(np.argmax(vals))]
    inside = abs(v_plus[0].conjugate() * t1 + v_plus[1].conjugate() * t2) ** 2
    outside = max(0.0, 1.0 - (abs(t1) ** 2 + abs(t2) ** 2))
    return float(inside + 0.5 * outside)


def _contingency_mi_bits(table: np.ndarray):
    """Plug-in I(X;Y) in bits and its delta-method standard error."""
    trials = table.sum()
    joint = table / trials
    px = joint.sum(axis=1, keepdims=True)
    py = joint.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(joint > 0, joint / (px * py), 1.0)
        info = np.log2(ratio)
    mi = float(np.sum(joint * info))
    var = float(np.sum(joint * info**2) - mi**2)
    return max(0.0, mi), math.sqrt(max(0.0, var) / trials)


def discrimination_experiment(
    packing: PackingSet,
    copies: int,
    strategy: str = "pairwise-helstrom-vote",
    trials: int = 10_000,
    seed: int = 0,
) -> DiscriminationReport:
    """Empirical K-way discrimination of the packed states from M_s copies.

    pairwise-helstrom-vote splits the copies round-robin over the K(K-1)/2
    unordered pairs, measures each pair's share with the joint multi-copy
    Helstrom observable, and guesses the state with the most votes (ties
    broken uniformly). exact-posterior measures every copy in one fixed
    Haar-random basis and guesses the maximum-posterior state; it is capped
    at K <= 64 and dim <= 16. Both report the empirical error rate, the
    plug-in I(X; guess) with a delta-method sigma, and the Fano/Holevo
    sandwich check fano(K, err) <= I + 3 sigma <= M_s chi + 6 sigma.
    """
    k = packing.size
    if k < 2:
        raise ValueError("discrimination needs at least 2 hypotheses")
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    states = packing.states
    rng = np.random.default_rng(seed)
    truth = rng.integers(0, k, size=trials)

    if strategy == "pairwise-helstrom-vote":
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        base, extra = divmod(copies, len(pairs))
        alloc = [base + (1 if t < extra else 0) for t in range(len(pairs))]
        # vote_prob[pair, true_k] = P(pair votes for its first member)
        vote_prob = np.array(
            [
                [
                    _pair_vote_probability(states[i], states[j], states[t], m)
                    for t in range(k)
                ]
                for (i, j), m in zip(pairs, alloc)
            ]
        )
        u = rng.random((trials, len(pairs)))
        first_wins = u < vote_prob[:, truth].T
        votes = np.zeros((trials, k))
        for p_idx, (i, j) in enumerate(pairs):
            votes[first_wins[:, p_idx], i] += 1
            votes[~first_wins[:, p_idx], j] += 1
        # argmax with uniform tie-breaking via a random key
        jitter = rng.random((trials, k))
        best = votes.max(axis=1, keepdims=True)
        masked = np.where(votes == best, jitter, -1.0)
        guess = masked.argmax(axis=1)
    elif strategy == "exact-posterior":
        dim = 1 << states[0].n
        if k > EXACT_POSTERIOR_MAX_K or dim > EXACT_POSTERIOR_MAX_DIM:
            raise ValueError(
                f"exact-posterior capped at K <= {EXACT_POSTERIOR_MAX_K}, "
                f"dim <= {EXACT_POSTERIOR_MAX_DIM}"
            )
        z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        basis, r = np.linalg.qr(z)
        # outcome_prob[k, o] for one copy measured in the fixed basis
        outcome_prob = np.abs(np.array([basis.conj().T @ s.amps for s in states])) ** 2
        outcome_prob /= outcome_prob.sum(axis=1, keepdims=True)
        log_lik = np.log(np.clip(outcome_prob, 1e-300, None))
        counts = np.stack(
            [rng.multinomial(copies, outcome_prob[t]) for t in truth]
        )
        posterior = counts @ log_lik.T
        jitter = rng.random((trials, k)) * 1e-9
        guess = (posterior + jitter).argmax(axis=1)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    errors = guess != truth
    err = float(errors.mean())
    err_sigma = math.sqrt(max(err * (1 - err), 1e-12) / trials)
    table = np.zeros((k, k))
    np.add.at(table, (truth, guess), 1)
    mi, mi_sigma = _contingency_mi_bits(table)

    chi = holevo_chi(Ensemble(tuple((1.0 / k, s) for s in states)))
    # the Fano floor is vacuous once the error rate reaches 1/2
    fano = fano_lower(k, err) if err < 0.5 else 0.0
    sandwich_ok = (fano <= mi + 3 * mi_sigma) and (mi <= copies * chi + 3 * mi_sigma)
    return DiscriminationReport(
        k=k,
        copies=copies,
        strategy=strategy,
        trials=trials,
        error_rate=err,
        error_sigma=err_sigma,
        mi=mi,
        mi_sigma=mi_sigma,
        fano_floor=fano,
        holevo_ceiling=copies * chi,
        sandwich_ok=sandwich_ok,
    )
