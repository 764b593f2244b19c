"""Amplify-learn protocol with exact resource accounting.

Each round applies one synthesized reflection about the learned previous
output composed with one oracle call (amplify), then re-learns the fresh
output from M_s newly prepared copies (learn). Every copy costs
queries_per_copy training oracle calls at preparation time, so the ledger
identities

    Q_train = queries_per_copy * M_s * rounds        (exact integers)
    Q_tot   = Q_train + rounds

hold for every run regardless of how many prepared copies the learner
actually consumes. Bound checkers compare the ledger against the
no-signaling floors Q >= sqrt(N), G >= sqrt(N)/ln N, M_s >= sqrt(N)/ln N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import complexity
from .learner import (
    AnsatzParams,
    CopySupplier,
    ExactPreparation,
    LearnerConfig,
    LearnReport,
    default_layout,
    gate_complexity,
    learn_state,
    synthesized_reflection_apply,
    uniform_preparation_params,
)
from .qcore import PureState
from .search import (
    DEFAULT_THRESHOLD,
    TRIPLING_LIMIT,
    Oracle,
    SearchTrajectory,
    apply_oracle,
)


class LearningFailureError(RuntimeError):
    """A learning phase missed its target fidelity and abort_on_failure is set."""


@dataclass
class ResourceLedger:
    """Running totals of the protocol's physical resources."""

    oracle_queries: int = 0
    training_queries: int = 0
    copies_consumed: int = 0
    two_qubit_gates: int = 0
    rounds: int = 0

    @property
    def production_queries(self) -> int:
        return self.oracle_queries - self.training_queries


@dataclass(frozen=True)
class ProtocolConfig:
    n: int
    tau: int
    samples_per_round: int = 100
    learner: LearnerConfig = field(default_factory=lambda: LearnerConfig(mode="ideal"))
    threshold_c: float = DEFAULT_THRESHOLD
    queries_per_copy: int = 1
    max_rounds: int = 200
    layout: object = None
    warm_start: bool = True
    abort_on_failure: bool = False

    def __post_init__(self):
        if not 0 <= self.tau < (1 << self.n):
            raise ValueError(f"tau {self.tau} out of range for n={self.n}")
        if not 0 < self.threshold_c <= TRIPLING_LIMIT:
            raise ValueError(f"threshold must lie in (0, pi/6], got {self.threshold_c}")
        if self.samples_per_round < 0:
            raise ValueError("samples_per_round must be non-negative")
        if self.queries_per_copy < 1:
            raise ValueError("queries_per_copy must be >= 1")


@dataclass(frozen=True)
class ProtocolResult:
    trajectory: SearchTrajectory
    ledger: ResourceLedger
    learn_reports: tuple
    config: ProtocolConfig

    def final_success(self) -> float:
        return self.trajectory.final_success()


def _target_angle(state: PureState, tau: int) -> float:
    return math.asin(min(1.0, abs(state.amps[tau])))


def run_amplify_learn(config: ProtocolConfig) -> ProtocolResult:
    """Run the protocol until the target angle reaches threshold_c.

    The initial uniform state is prepared analytically (its preparation
    parameters are known in closed form), so no copies or training queries
    are charged before round 1. In ideal learner mode the state trajectory
    coincides bit-exactly with the idealized cubic engine.
    """
    oracle = Oracle(config.n, config.tau)
    ledger = ResourceLedger()
    reports: list[LearnReport] = []

    if config.learner.mode == "ideal":
        layout = ExactPreparation(PureState.uniform(config.n))
        params = AnsatzParams(np.zeros(0))
    else:
        layout = config.layout or default_layout(config.n)
        params = uniform_preparation_params(layout)

    state = PureState.uniform(config.n)
    states = [state]
    learner_cfg = config.learner
    if learner_cfg.sample_budget != config.samples_per_round:
        # per-round copy budget is owned by the protocol
        learner_cfg = replace(learner_cfg, sample_budget=config.samples_per_round)

    while (
        _target_angle(states[-1], config.tau) < config.threshold_c
        and ledger.rounds < config.max_rounds
    ):
        # amplify: psi' = -R(learned) R_tau psi, one production query
        flipped = apply_oracle(oracle, states[-1])
        nxt = synthesized_reflection_apply(layout, params, flipped)
        nxt = PureState(nxt.n, -nxt.amps)
        states.append(nxt)
        ledger.rounds += 1
        ledger.oracle_queries += 1
        ledger.two_qubit_gates += gate_complexity(layout)

        # learn: prepare a fresh batch of M_s copies of the new output;
        # each copy costs queries_per_copy oracle calls up front
        batch_queries = config.queries_per_copy * config.samples_per_round
        ledger.training_queries += batch_queries
        ledger.oracle_queries += batch_queries
        supplier = CopySupplier(nxt, budget=config.samples_per_round)
        round_cfg = replace(learner_cfg, seed=learner_cfg.seed + ledger.rounds)
        if learner_cfg.mode == "ideal":
            report = learn_state(supplier, None, round_cfg)
            layout = report.layout
            params = report.params
        else:
            init = params if config.warm_start else None
            report = learn_state(supplier, layout, round_cfg, init_params=init)
            if not report.converged and config.abort_on_failure:
                raise LearningFailureError(
                    f"round {ledger.rounds}: fidelity {report.achieved_fidelity:.4f} "
                    f"< target {learner_cfg.target_fidelity}"
                )
            params = report.params
        ledger.copies_consumed += report.copies_consumed
        reports.append(report)

    angles = tuple(_target_angle(s, config.tau) for s in states)
    success = tuple(abs(s.amps[config.tau]) ** 2 for s in states)
    trajectory = SearchTrajectory(tuple(states), angles, ledger.oracle_queries, success)
    return ProtocolResult(trajectory, ledger, tuple(reports), config)


@dataclass(frozen=True)
class QueryBoundReport:
    q_tot: int
    q_train: int
    rounds: int
    samples_per_round: int
    ledger_floor: float
    ledger_ok: bool
    grover_floor: float
    grover_ok: bool
    samples_floor: float
    samples_ok: bool


def check_query_bound(
    ledger: ResourceLedger,
    n: int,
    c1: float = 1.0,
    c_q: float = 1.0,
    samples_per_round: int | None = None,
) -> QueryBoundReport:
    """Compare the ledger against the query-count floors.

    Checks Q_tot >= c1 * M_s * rounds (ledger consistency), Q_tot >= c_q *
    sqrt(N) (search floor), and M_s >= c_q * sqrt(N) / (c1 * rounds) (the
    per-round sample floor those two imply). With samples_per_round omitted,
    M_s is reconstructed as Q_train / rounds.
    """
    sqrt_n = math.sqrt(1 << n)
    rounds = ledger.rounds
    if samples_per_round is None:
        samples_per_round = ledger.training_queries // rounds if rounds else 0
    ledger_floor = c1 * samples_per_round * rounds
    grover_floor = c_q * sqrt_n
    samples_floor = c_q * sqrt_n / (c1 * rounds) if rounds else math.inf
    return QueryBoundReport(
        q_tot=ledger.oracle_queries,
        q_train=ledger.training_queries,
        rounds=rounds,
        samples_per_round=samples_per_round,
        ledger_floor=ledger_floor,
        ledger_ok=ledger.oracle_queries >= ledger_floor,
        grover_floor=grover_floor,
        grover_ok=ledger.oracle_queries >= grover_floor,
        samples_floor=samples_floor,
        samples_ok=samples_per_round >= samples_floor,
    )


@dataclass(frozen=True)
class GateBoundReport:
    gates_per_round: int
    total_gates: int
    rounds: int
    depth_bound: float
    depth_ok: bool
    gate_floor: float
    gate_ok: bool


def check_gate_bound(
    layout,
    n: int,
    rounds: int,
    c4: float = 1.0,
    c_ns: float = 1.0,
) -> GateBoundReport:
    """Compare a layout's reflection cost against the gate-count floors.

    The run's synthesis depth is G * rounds with G the layout's two-qubit
    count; the no-signaling floor requires G >= c_ns * sqrt(N) / (c4 *
    rounds). A rotation-only layout has G = 0 and trips the floor whenever
    N > 1.
    """
    g = gate_complexity(layout) if not isinstance(layout, int) else layout
    sqrt_n = math.sqrt(1 << n)
    total = g * rounds
    depth_bound = c4 * g * rounds
    gate_floor = c_ns * sqrt_n / (c4 * rounds) if rounds else math.inf
    return GateBoundReport(
        gates_per_round=g,
        total_gates=total,
        rounds=rounds,
        depth_bound=depth_bound,
        depth_ok=total <= depth_bound,
        gate_floor=gate_floor,
        gate_ok=g >= gate_floor,
    )


@dataclass(frozen=True)
class TriangleRow:
    n: int
    big_n: int
    rounds: int
    query_floor: float
    gate_floor: float
    samples_floor: float
    unlocked_samples: float
    degenerate: bool


@dataclass(frozen=True)
class TriangleReport:
    rows: tuple
    epsilon: float
    delta: float


def triangle_report(
    n_values,
    epsilon: float = 0.1,
    delta: float = 0.1,
    threshold_c: float = DEFAULT_THRESHOLD,
    constants: dict | None = None,
) -> TriangleReport:
    """Resource-triangle floors per problem size, all constants defaulting to 1.

    Each row reports the query floor sqrt(N), the gate and per-round sample
    floors sqrt(N)/ln N, and the sample complexity unlocked by a gate budget
    G = sqrt(N)/ln N, namely (1/eps^2)(min{N, G} + ln(1/delta)). The n=1 row
    is degenerate (ln N divides by ln 2 but the floors are vacuous) and is
    flagged.
    """
    constants = constants or {}
    c_q = constants.get("c_q", 1.0)
    c_g = constants.get("c_g", 1.0)
    c_m = constants.get("c_m", 1.0)
    c2 = constants.get("c2", 1.0)
    from .search import rounds_to_constant

    rows = []
    for n in n_values:
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        big_n = 1 << n
        log_n = math.log(big_n)
        rows.append(
            TriangleRow(
                n=n,
                big_n=big_n,
                rounds=rounds_to_constant(n, threshold_c),
                query_floor=c_q * math.sqrt(big_n),
                gate_floor=c_g * math.sqrt(big_n) / log_n,
                samples_floor=c_m * math.sqrt(big_n) / log_n,
                unlocked_samples=complexity.sample_lower_bound(
                    n,
                    math.sqrt(big_n) / log_n,
                    epsilon,
                    delta,
                    c2=c2,
                ),
                degenerate=(n == 1),
            )
        )
    return TriangleReport(tuple(rows), epsilon, delta)
