"""State-learning subroutine and reflection synthesis.

A parameterized ansatz (single-qubit rotations plus a ring of CNOT
entanglers) prepares candidate states from |0...0>. The learner consumes
copies of an unknown state, estimates the overlap |<0|A(theta)^dag|psi>|^2
from finite shots, and optimizes theta by simultaneous-perturbation
stochastic approximation. The learned circuit then synthesizes the
reflection A R0 A^dag about the learned state.

Ideal mode bypasses optimization: the engine records the state exactly
(ExactPreparation) while still charging the configured copy budget, so
resource ledgers stay meaningful under perfect learning.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ._backend import kernels
from .qcore import DimensionMismatchError, PureState, householder_apply


class CopyBudgetError(RuntimeError):
    """Copy supplier ran out of budget."""


@dataclass
class CopySupplier:
    """Single-consumer source of fresh copies of one pure state."""

    state: PureState
    budget: int | None = None
    consumed: int = 0

    def consume(self, count: int) -> PureState:
        if count < 0:
            raise ValueError(f"copy count must be non-negative, got {count}")
        if self.budget is not None and self.consumed + count > self.budget:
            raise CopyBudgetError(
                f"requested {count} copies with {self.budget - self.consumed} remaining"
            )
        self.consumed += count
        return self.state


@dataclass(frozen=True)
class AnsatzLayout:
    """Ordered gate slots: ("rot", qubit, axis) or ("ent", control, target)."""

    n: int
    layers: int
    placements: tuple

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(tuple(p) for p in self.placements))
        for slot in self.placements:
            kind = slot[0]
            if kind == "rot":
                _, q, axis = slot
                if not 0 <= q < self.n:
                    raise ValueError(f"rotation qubit {q} out of range for n={self.n}")
                if axis not in ("x", "y", "z"):
                    raise ValueError(f"unknown rotation axis {axis!r}")
            elif kind == "ent":
                _, c, t = slot
                if not (0 <= c < self.n and 0 <= t < self.n):
                    raise ValueError(f"entangler ({c},{t}) out of range for n={self.n}")
                if c == t:
                    raise ValueError("entangler control and target must differ")
            else:
                raise ValueError(f"unknown slot kind {kind!r}")

    @property
    def num_params(self) -> int:
        return sum(1 for slot in self.placements if slot[0] == "rot")


@dataclass(frozen=True)
class ExactPreparation:
    """Ideal-learning stand-in for a circuit: prepares the recorded state exactly."""

    state: PureState

    @property
    def n(self) -> int:
        return self.state.n

    @property
    def num_params(self) -> int:
        return 0


@dataclass(frozen=True)
class AnsatzParams:
    theta: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "theta", np.ascontiguousarray(self.theta, dtype=np.float64)
        )

    @classmethod
    def zeros(cls, layout) -> "AnsatzParams":
        return cls(np.zeros(layout.num_params))


@dataclass(frozen=True)
class LearnerConfig:
    mode: str = "variational"
    sample_budget: int = 10_000
    shots_per_estimate: int = 100
    target_fidelity: float = 0.98
    max_iterations: int = 500
    step_size: float = 2.0
    step_decay: float = 0.602
    perturb_size: float = 0.2
    perturb_decay: float = 0.101
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("ideal", "variational"):
            raise ValueError(f"unknown learner mode {self.mode!r}")
        if self.sample_budget < 0:
            raise ValueError("sample_budget must be non-negative")
        if not 0.0 < self.target_fidelity <= 1.0:
            raise ValueError("target_fidelity must lie in (0, 1]")


@dataclass(frozen=True)
class LearnReport:
    params: AnsatzParams
    achieved_fidelity: float
    copies_consumed: int
    iterations: int
    converged: bool
    layout: object = None


def default_layout(n: int, layers: int | None = None, universal: bool = False) -> AnsatzLayout:
    """Alternating rotation (y, z per qubit) and ring-entangler layers.

    With universal=True the layer count is raised until the parameter count
    reaches 2(2^n - 1), the real dimension of the pure-state manifold.
    """
    if layers is None:
        if universal:
            needed = 2 * ((1 << n) - 1)
            layers = max(1, -(-needed // (2 * n)))
        else:
            layers = 2
    placements = []
    for _ in range(layers):
        for q in range(n):
            placements.append(("rot", q, "y"))
            placements.append(("rot", q, "z"))
        if n >= 2:
            for q in range(n):
                placements.append(("ent", q, (q + 1) % n))
    return AnsatzLayout(n, layers, tuple(placements))


def uniform_preparation_params(layout: AnsatzLayout) -> AnsatzParams:
    """Parameters preparing the uniform superposition on the default layout.

    Sets the first y rotation of each qubit to pi/2; CNOT rings leave the
    uniform state invariant, so the circuit output is exactly |s>.
    """
    theta = np.zeros(layout.num_params)
    seen = set()
    idx = 0
    for slot in layout.placements:
        if slot[0] != "rot":
            continue
        _, q, axis = slot
        if axis == "y" and q not in seen:
            theta[idx] = np.pi / 2
            seen.add(q)
        idx += 1
    if len(seen) < layout.n:
        raise ValueError("layout lacks a y rotation on some qubit")
    return AnsatzParams(theta)


def _check_params(layout, params: AnsatzParams):
    if params.theta.shape != (layout.num_params,):
        raise ValueError(
            f"layout expects {layout.num_params} parameters, got {params.theta.shape[0]}"
        )


def _apply_circuit(layout: AnsatzLayout, params: AnsatzParams, amps: np.ndarray) -> np.ndarray:
    idx = 0
    for slot in layout.placements:
        if slot[0] == "rot":
            _, q, axis = slot
            amps = kernels.apply_rotation(amps, q, axis, params.theta[idx])
            idx += 1
        else:
            _, c, t = slot
            amps = kernels.apply_cnot(amps, c, t)
    return amps


def _apply_circuit_inverse(layout: AnsatzLayout, params: AnsatzParams, amps: np.ndarray) -> np.ndarray:
    idx = layout.num_params
    for slot in reversed(layout.placements):
        if slot[0] == "rot":
            idx -= 1
            _, q, axis = slot
            amps = kernels.apply_rotation(amps, q, axis, -params.theta[idx])
        else:
            _, c, t = slot
            amps = kernels.apply_cnot(amps, c, t)
    return amps


def prepare(layout, params: AnsatzParams) -> PureState:
    """A(theta)|0...0> by sequential gate application."""
    if isinstance(layout, ExactPreparation):
        return layout.state
    _check_params(layout, params)
    amps = np.zeros(1 << layout.n, dtype=np.complex128)
    amps[0] = 1.0
    return PureState(layout.n, _apply_circuit(layout, params, amps))


def gate_complexity(layout) -> int:
    """Two-qubit gate count G; single-qubit rotations are free."""
    if isinstance(layout, ExactPreparation):
        return 0
    return sum(1 for slot in layout.placements if slot[0] == "ent")


def synthesized_reflection_apply(layout, params: AnsatzParams, target: PureState) -> PureState:
    """A(theta) R0 A(theta)^dag |target> with R0 = 1 - 2|0...0><0...0|."""
    if isinstance(layout, ExactPreparation):
        # A R0 A^dag equals the Householder reflection about A|0> exactly
        if layout.n != target.n:
            raise DimensionMismatchError(f"qubit counts differ: {layout.n} vs {target.n}")
        return householder_apply(layout.state, target)
    if layout.n != target.n:
        raise DimensionMismatchError(f"qubit counts differ: {layout.n} vs {target.n}")
    _check_params(layout, params)
    amps = _apply_circuit_inverse(layout, params, target.amps)
    amps = amps.copy()
    amps[0] = -amps[0]
    return PureState(target.n, _apply_circuit(layout, params, amps))


def estimate_overlap(layout, params: AnsatzParams, source: CopySupplier, shots, rng=None) -> float:
    """Empirical |<0|A^dag|psi>|^2 from Bernoulli shots; shots=None is exact.

    Exact mode charges no copies; sampled mode charges `shots` copies to the
    supplier and needs an rng.
    """
    psi = source.state
    exact = prepare(layout, params).fidelity(psi)
    if shots is None:
        return exact
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if rng is None:
        raise ValueError("sampled estimation requires an rng")
    source.consume(shots)
    return float(rng.binomial(shots, exact)) / shots


def learn_state(
    source: CopySupplier,
    layout,
    config: LearnerConfig,
    init_params: AnsatzParams | None = None,
) -> LearnReport:
    """Learn the supplier's state to the configured target fidelity.

    Ideal mode records the state exactly (fidelity 1) and charges the full
    sample budget. Variational mode runs SPSA on the shot-based overlap
    estimate; on budget or iteration exhaustion the best parameters found
    are reported with converged=False.
    """
    if config.mode == "ideal":
        source.consume(config.sample_budget)
        exact = ExactPreparation(source.state)
        return LearnReport(
            params=AnsatzParams(np.zeros(0)),
            achieved_fidelity=1.0,
            copies_consumed=config.sample_budget,
            iterations=0,
            converged=True,
            layout=exact,
        )

    rng = np.random.default_rng(config.seed)
    theta = (init_params or AnsatzParams.zeros(layout)).theta.copy()
    psi = source.state

    def fidelity_of(t):
        return prepare(layout, AnsatzParams(t)).fidelity(psi)

    best_theta = theta.copy()
    best_fid = fidelity_of(theta)
    iterations = 0
    converged = best_fid >= config.target_fidelity
    shots = config.shots_per_estimate
    stability = 0.05 * config.max_iterations

    while not converged and iterations < config.max_iterations:
        if source.budget is not None and source.consumed + 2 * shots > source.budget:
            break
        k = iterations
        a_k = config.step_size / (k + 1 + stability) ** config.step_decay
        c_k = config.perturb_size / (k + 1) ** config.perturb_decay
        delta = rng.integers(0, 2, size=theta.shape[0]) * 2.0 - 1.0
        f_plus = estimate_overlap(layout, AnsatzParams(theta + c_k * delta), source, shots, rng)
        f_minus = estimate_overlap(layout, AnsatzParams(theta - c_k * delta), source, shots, rng)
        grad = (f_plus - f_minus) / (2.0 * c_k) * delta
        theta = theta + a_k * grad
        iterations += 1
        fid = fidelity_of(theta)
        if fid > best_fid:
            best_fid = fid
            best_theta = theta.copy()
        if best_fid >= config.target_fidelity:
            converged = True

    return LearnReport(
        params=AnsatzParams(best_theta),
        achieved_fidelity=float(best_fid),
        copies_consumed=source.consumed,
        iterations=iterations,
        converged=converged,
        layout=layout,
    )
