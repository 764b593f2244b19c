# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels (same surface as ``_kernels_py``)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def oracle_apply(cnp.complex128_t[::1] amps, long marked):
    out = np.asarray(amps).copy()
    cdef cnp.complex128_t[::1] o = out
    if marked >= 0:
        o[marked] = -o[marked]
    return out


cdef double complex _vdot(cnp.complex128_t[::1] a, cnp.complex128_t[::1] b):
    cdef Py_ssize_t i
    cdef double complex acc = 0
    for i in range(a.shape[0]):
        acc += a[i].conjugate() * b[i]
    return acc


def reflect(cnp.complex128_t[::1] axis, cnp.complex128_t[::1] target):
    cdef double complex ov = _vdot(axis, target)
    out = np.empty(target.shape[0], dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    cdef Py_ssize_t i
    for i in range(target.shape[0]):
        o[i] = target[i] - 2.0 * ov * axis[i]
    return out


def grover_step(cnp.complex128_t[::1] state, long marked, cnp.complex128_t[::1] initial):
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t i
    out = np.empty(dim, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    for i in range(dim):
        o[i] = state[i]
    if marked >= 0:
        o[marked] = -o[marked]
    cdef double complex ov = _vdot(initial, o)
    for i in range(dim):
        o[i] = -(o[i] - 2.0 * ov * initial[i])
    return out


def cubic_step(cnp.complex128_t[::1] state, long marked):
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t i
    out = np.empty(dim, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    for i in range(dim):
        o[i] = state[i]
    if marked >= 0:
        o[marked] = -o[marked]
    cdef double complex ov = _vdot(state, o)
    for i in range(dim):
        o[i] = -(o[i] - 2.0 * ov * state[i])
    return out


def grover_success_curve(long n, long tau, long rounds):
    cdef Py_ssize_t dim = 1 << n
    cdef Py_ssize_t i
    cdef long r
    state_arr = np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128)
    init_arr = state_arr.copy()
    out_arr = np.empty(rounds + 1, dtype=np.float64)
    cdef cnp.complex128_t[::1] state = state_arr
    cdef cnp.complex128_t[::1] initial = init_arr
    cdef double[::1] out = out_arr
    cdef double complex a = state[tau]
    cdef double complex ov
    out[0] = (a * a.conjugate()).real
    for r in range(1, rounds + 1):
        state[tau] = -state[tau]
        ov = _vdot(initial, state)
        for i in range(dim):
            state[i] = -(state[i] - 2.0 * ov * initial[i])
        a = state[tau]
        out[r] = (a * a.conjugate()).real
    return out_arr


def apply_rotation(cnp.complex128_t[::1] amps, long qubit, str axis, double angle):
    cdef double c = np.cos(angle / 2.0)
    cdef double s = np.sin(angle / 2.0)
    cdef double complex u00, u01, u10, u11
    if axis == "x":
        u00 = c; u01 = -1j * s; u10 = -1j * s; u11 = c
    elif axis == "y":
        u00 = c; u01 = -s; u10 = s; u11 = c
    elif axis == "z":
        u00 = c - 1j * s; u01 = 0; u10 = 0; u11 = c + 1j * s
    else:
        raise ValueError(f"unknown rotation axis {axis!r}")
    cdef Py_ssize_t dim = amps.shape[0]
    cdef long n = 0
    while (1 << n) < dim:
        n += 1
    cdef Py_ssize_t stride = 1 << (n - 1 - qubit)
    out = np.empty(dim, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    cdef Py_ssize_t block, off, i0, i1
    for block in range(0, dim, 2 * stride):
        for off in range(stride):
            i0 = block + off
            i1 = i0 + stride
            o[i0] = u00 * amps[i0] + u01 * amps[i1]
            o[i1] = u10 * amps[i0] + u11 * amps[i1]
    return out


def apply_cnot(cnp.complex128_t[::1] amps, long control, long target):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef long n = 0
    while (1 << n) < dim:
        n += 1
    cdef Py_ssize_t cmask = 1 << (n - 1 - control)
    cdef Py_ssize_t tmask = 1 << (n - 1 - target)
    out = np.empty(dim, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    cdef Py_ssize_t i
    for i in range(dim):
        if i & cmask:
            o[i] = amps[i ^ tmask]
        else:
            o[i] = amps[i]
    return out
