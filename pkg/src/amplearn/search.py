"""Amplitude-amplification engines.

Standard Grover iteration with the fixed initial-state reflection, and the
idealized previous-output-reflection ("cubic") iteration whose target angle
triples each round while it stays below pi/6. Both engines apply the global
phase factor -1 literally so trajectories reproduce the closed forms
bit-exactly, and both charge exactly one oracle query per round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .qcore import DimensionMismatchError, PureState

TRIPLING_LIMIT = math.pi / 6

DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class Oracle:
    """Phase-flip oracle; marked=None is the null oracle (identity)."""

    n: int
    marked: int | None = None

    def __post_init__(self):
        if self.marked is not None and not 0 <= self.marked < (1 << self.n):
            raise ValueError(f"marked index {self.marked} out of range for n={self.n}")

    @property
    def is_null(self) -> bool:
        return self.marked is None


@dataclass(frozen=True)
class SearchTrajectory:
    """Round-by-round record of a search run."""

    states: tuple
    angles: tuple
    queries: int
    success: tuple

    @property
    def rounds(self) -> int:
        return len(self.states) - 1

    def final_success(self) -> float:
        return self.success[-1]


def _target_angle(state: PureState, tau: int) -> float:
    return math.asin(min(1.0, abs(state.amps[tau])))


def apply_oracle(oracle: Oracle, state: PureState) -> PureState:
    """Negate the marked amplitude; the null oracle is the identity."""
    if oracle.n != state.n:
        raise DimensionMismatchError(f"qubit counts differ: {oracle.n} vs {state.n}")
    marked = -1 if oracle.marked is None else oracle.marked
    return PureState(state.n, kernels.oracle_apply(state.amps, marked))


def grover_step(state: PureState, oracle: Oracle, initial: PureState) -> PureState:
    """One iterate -R_initial R_tau of the standard engine."""
    if not (state.n == oracle.n == initial.n):
        raise DimensionMismatchError(
            f"qubit counts differ: state {state.n}, oracle {oracle.n}, initial {initial.n}"
        )
    marked = -1 if oracle.marked is None else oracle.marked
    return PureState(state.n, kernels.grover_step(state.amps, marked, initial.amps))


def cubic_step(state: PureState, oracle: Oracle) -> PureState:
    """One iterate -R_state R_tau whose reflection axis is the state itself."""
    if state.n != oracle.n:
        raise DimensionMismatchError(f"qubit counts differ: {state.n} vs {oracle.n}")
    if oracle.marked is None:
        raise ValueError("cubic dynamics are undefined for the null oracle")
    return PureState(state.n, kernels.cubic_step(state.amps, oracle.marked))


def run_grover(n: int, tau: int, rounds: int) -> SearchTrajectory:
    """Standard engine from the uniform start; success[r] = sin^2((2r+1) theta0)."""
    if rounds < 0:
        raise ValueError(f"rounds must be non-negative, got {rounds}")
    oracle = Oracle(n, tau)
    initial = PureState.uniform(n)
    states = [initial]
    for _ in range(rounds):
        states.append(grover_step(states[-1], oracle, initial))
    angles = tuple(_target_angle(s, tau) for s in states)
    success = tuple(abs(s.amps[tau]) ** 2 for s in states)
    return SearchTrajectory(tuple(states), angles, rounds, success)


def grover_success_curve(n: int, tau: int, rounds: int) -> np.ndarray:
    """Success probabilities for rounds 0..rounds without storing states."""
    if not 0 <= tau < (1 << n):
        raise ValueError(f"tau {tau} out of range for n={n}")
    return kernels.grover_success_curve(n, tau, rounds)


def run_ideal_log_search(
    n: int,
    tau: int,
    threshold_c: float = DEFAULT_THRESHOLD,
    max_rounds: int = 10_000,
    polish: bool = False,
) -> SearchTrajectory:
    """Iterate the cubic engine until the target angle reaches threshold_c.

    While the angle stays below pi/6 it triples exactly each round; queries
    equal rounds. With polish=True a single standard Grover step is appended
    after the threshold is reached (the terminal round is otherwise left as
    reached, reporting the attained success probability).
    """
    if not 0 < threshold_c <= TRIPLING_LIMIT:
        raise ValueError(f"threshold must lie in (0, pi/6], got {threshold_c}")
    oracle = Oracle(n, tau)
    state = PureState.uniform(n)
    states = [state]
    while _target_angle(states[-1], tau) < threshold_c and len(states) - 1 < max_rounds:
        states.append(cubic_step(states[-1], oracle))
    queries = len(states) - 1
    if polish:
        states.append(grover_step(states[-1], oracle, PureState.uniform(n)))
        queries += 1
    angles = tuple(_target_angle(s, tau) for s in states)
    success = tuple(abs(s.amps[tau]) ** 2 for s in states)
    return SearchTrajectory(tuple(states), angles, queries, success)


def rounds_to_constant(n: int, c: float = DEFAULT_THRESHOLD) -> int:
    """Closed-form round count max(0, ceil(log3(c / arcsin(2^(-n/2)))))."""
    if not 0 < c <= TRIPLING_LIMIT:
        raise ValueError(f"threshold must lie in (0, pi/6], got {c}")
    theta0 = math.asin(2.0 ** (-n / 2.0))
    if theta0 >= c:
        return 0
    k = max(0, math.ceil(math.log(c / theta0) / math.log(3.0)))
    # guard ceil against float error at exact powers
    while k > 0 and theta0 * 3.0 ** (k - 1) >= c:
        k -= 1
    while theta0 * 3.0**k < c:
        k += 1
    return k
