"""Pure-numpy statevector kernels.

Fallback backend with the same surface as the compiled ``_kernels``
extension; selected by ``_backend`` when the extension is unavailable
or ``AMPLEARN_PURE_PYTHON`` is set.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def oracle_apply(amps: np.ndarray, marked: int) -> np.ndarray:
    """Phase-flip the marked basis amplitude; marked < 0 means the null oracle."""
    out = amps.copy()
    if marked >= 0:
        out[marked] = -out[marked]
    return out


def reflect(axis: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Householder image target - 2<axis|target> axis."""
    return target - 2.0 * np.vdot(axis, target) * axis


def grover_step(state: np.ndarray, marked: int, initial: np.ndarray) -> np.ndarray:
    """One Grover iterate -R_s R_tau applied to state (global phase -1 literal)."""
    flipped = oracle_apply(state, marked)
    return -reflect(initial, flipped)


def cubic_step(state: np.ndarray, marked: int) -> np.ndarray:
    """One previous-output-reflection iterate -R_psi R_tau applied to psi."""
    flipped = oracle_apply(state, marked)
    return -reflect(state, flipped)


def grover_success_curve(n: int, tau: int, rounds: int) -> np.ndarray:
    """Success probability |<tau|psi_r>|^2 for r = 0..rounds by full simulation."""
    dim = 1 << n
    state = np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128)
    initial = state.copy()
    out = np.empty(rounds + 1, dtype=np.float64)
    out[0] = abs(state[tau]) ** 2
    for r in range(1, rounds + 1):
        state = grover_step(state, tau, initial)
        out[r] = abs(state[tau]) ** 2
    return out


def apply_rotation(amps: np.ndarray, qubit: int, axis: str, angle: float) -> np.ndarray:
    """Apply exp(-i angle/2 * P_axis) on one qubit of an n-qubit statevector."""
    c = np.cos(angle / 2.0)
    s = np.sin(angle / 2.0)
    if axis == "x":
        u00, u01, u10, u11 = c, -1j * s, -1j * s, c
    elif axis == "y":
        u00, u01, u10, u11 = c, -s, s, c
    elif axis == "z":
        u00, u01, u10, u11 = c - 1j * s, 0.0, 0.0, c + 1j * s
    else:
        raise ValueError(f"unknown rotation axis {axis!r}")
    # qubit 0 is the most significant bit of the basis index
    resh = amps.reshape(1 << qubit, 2, -1)
    out = np.empty_like(resh)
    out[:, 0, :] = u00 * resh[:, 0, :] + u01 * resh[:, 1, :]
    out[:, 1, :] = u10 * resh[:, 0, :] + u11 * resh[:, 1, :]
    return out.reshape(amps.shape)


def apply_cnot(amps: np.ndarray, control: int, target: int) -> np.ndarray:
    """Apply a CNOT on (control, target) qubits of an n-qubit statevector."""
    n = amps.shape[0].bit_length() - 1
    cmask = 1 << (n - 1 - control)
    tmask = 1 << (n - 1 - target)
    idx = np.arange(amps.shape[0])
    swapped = np.where(idx & cmask, idx ^ tmask, idx)
    return amps[swapped]
