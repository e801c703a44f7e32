"""Compiled RK4 stepping kernel for the Lindblad equation.

The hot loop is jitted with numba: a cell of a parameter sweep can need
millions of fixed-size (3x3 or 4x4) steps, which pure numpy cannot deliver
at an acceptable rate. The Hamiltonian is split as

    H(t) = H0 + wx(t) * X + wy(t) * Y

with X, Y constant coupling operators and wx, wy scalar pulse envelopes, so
the kernel only evaluates two scalars per stage. Density matrices stay
Hermitian by construction: each commutator/dissipator term is assembled from
one matrix product A and its conjugate transpose, and the state is
re-symmetrized after every step.
"""

import numpy as np
from numba import njit

PULSE_NONE = 0
PULSE_SIGMOID = 1
PULSE_SIGMOID_REV = 2
PULSE_GAUSSIAN = 3
PULSE_CONSTANT = 4

STATUS_OK = 0
STATUS_DIVERGED = 1


@njit(cache=True)
def _pulse(kind, p0, p1, p2, t):
    if kind == PULSE_SIGMOID or kind == PULSE_SIGMOID_REV:
        x = t / p1
        if kind == PULSE_SIGMOID_REV:
            x = -x
        if x > 0.0:
            e = np.exp(-x)
            return p0 * e / (1.0 + e)
        return p0 / (1.0 + np.exp(x))
    elif kind == PULSE_GAUSSIAN:
        u = (t - p1) / p2
        return p0 * np.exp(-u * u)
    elif kind == PULSE_CONSTANT:
        return p0
    return 0.0


@njit(cache=True)
def _rhs(h0, xop, yop, wx, wy, rho, c_ops, kmat, has_diss, out, h, a, b):
    d = rho.shape[0]
    for i in range(d):
        for j in range(d):
            h[i, j] = h0[i, j] + wx * xop[i, j] + wy * yop[i, j]
    # a = H rho; -i[H,rho] = -i(a - a^dag) since H and rho are Hermitian
    for i in range(d):
        for j in range(d):
            s = 0.0 + 0.0j
            for k in range(d):
                s += h[i, k] * rho[k, j]
            a[i, j] = s
    for i in range(d):
        for j in range(d):
            out[i, j] = -1j * (a[i, j] - np.conj(a[j, i]))
    if has_diss:
        # anticommutator part: b = K rho with K = sum C^dag C (Hermitian)
        for i in range(d):
            for j in range(d):
                s = 0.0 + 0.0j
                for k in range(d):
                    s += kmat[i, k] * rho[k, j]
                b[i, j] = s
        for i in range(d):
            for j in range(d):
                out[i, j] -= 0.5 * (b[i, j] + np.conj(b[j, i]))
        # jump terms: C rho C^dag
        m = c_ops.shape[0]
        for q in range(m):
            for i in range(d):
                for j in range(d):
                    s = 0.0 + 0.0j
                    for k in range(d):
                        s += c_ops[q, i, k] * rho[k, j]
                    a[i, j] = s
            for i in range(d):
                for j in range(d):
                    s = 0.0 + 0.0j
                    for k in range(d):
                        s += a[i, k] * np.conj(c_ops[q, j, k])
                    out[i, j] += s


@njit(cache=True)
def rk4_lindblad(rho0, h0, xop, yop,
                 kx, kxp0, kxp1, kxp2,
                 ky, kyp0, kyp1, kyp2,
                 c_ops, kmat, has_diss,
                 t0, dt, n_steps, rec_steps):
    """Propagate rho0 over n_steps of size dt, recording at rec_steps.

    Returns (pops, traces, rho, max_trace_err, trace_err_step, min_diag,
    min_diag_step, max_diag, max_diag_step, status, status_step).
    """
    d = rho0.shape[0]
    rho = rho0.copy()
    k1 = np.empty((d, d), np.complex128)
    k2 = np.empty((d, d), np.complex128)
    k3 = np.empty((d, d), np.complex128)
    k4 = np.empty((d, d), np.complex128)
    stage = np.empty((d, d), np.complex128)
    h = np.empty((d, d), np.complex128)
    a = np.empty((d, d), np.complex128)
    b = np.empty((d, d), np.complex128)

    n_rec = rec_steps.shape[0]
    pops = np.empty((n_rec, d), np.float64)
    traces = np.empty(n_rec, np.float64)

    max_tr_err = 0.0
    tr_err_step = 0
    min_diag = 1.0e300
    min_diag_step = 0
    max_diag = -1.0e300
    max_diag_step = 0
    status = STATUS_OK
    status_step = -1

    r = 0
    if n_rec > 0 and rec_steps[0] == 0:
        tr = 0.0
        for i in range(d):
            pops[0, i] = rho[i, i].real
            tr += rho[i, i].real
        traces[0] = tr
        r = 1

    for step in range(n_steps):
        t = t0 + step * dt
        tm = t + 0.5 * dt
        te = t + dt
        wx0 = _pulse(kx, kxp0, kxp1, kxp2, t)
        wxm = _pulse(kx, kxp0, kxp1, kxp2, tm)
        wxe = _pulse(kx, kxp0, kxp1, kxp2, te)
        wy0 = _pulse(ky, kyp0, kyp1, kyp2, t)
        wym = _pulse(ky, kyp0, kyp1, kyp2, tm)
        wye = _pulse(ky, kyp0, kyp1, kyp2, te)

        _rhs(h0, xop, yop, wx0, wy0, rho, c_ops, kmat, has_diss, k1, h, a, b)
        for i in range(d):
            for j in range(d):
                stage[i, j] = rho[i, j] + 0.5 * dt * k1[i, j]
        _rhs(h0, xop, yop, wxm, wym, stage, c_ops, kmat, has_diss, k2, h, a, b)
        for i in range(d):
            for j in range(d):
                stage[i, j] = rho[i, j] + 0.5 * dt * k2[i, j]
        _rhs(h0, xop, yop, wxm, wym, stage, c_ops, kmat, has_diss, k3, h, a, b)
        for i in range(d):
            for j in range(d):
                stage[i, j] = rho[i, j] + dt * k3[i, j]
        _rhs(h0, xop, yop, wxe, wye, stage, c_ops, kmat, has_diss, k4, h, a, b)

        sixth = dt / 6.0
        for i in range(d):
            for j in range(d):
                rho[i, j] += sixth * (k1[i, j] + 2.0 * (k2[i, j] + k3[i, j]) + k4[i, j])
        # re-Hermitize
        for i in range(d):
            rho[i, i] = complex(rho[i, i].real, 0.0)
            for j in range(i + 1, d):
                m = 0.5 * (rho[i, j] + np.conj(rho[j, i]))
                rho[i, j] = m
                rho[j, i] = np.conj(m)

        tr = 0.0
        for i in range(d):
            p = rho[i, i].real
            tr += p
            if p < min_diag:
                min_diag = p
                min_diag_step = step + 1
            if p > max_diag:
                max_diag = p
                max_diag_step = step + 1
        err = abs(tr - 1.0)
        if err > max_tr_err:
            max_tr_err = err
            tr_err_step = step + 1
        if err > 1.0 or tr != tr:
            status = STATUS_DIVERGED
            status_step = step + 1
            break

        if r < n_rec and rec_steps[r] == step + 1:
            for i in range(d):
                pops[r, i] = rho[i, i].real
            traces[r] = tr
            r += 1

    if status != STATUS_OK:
        # mark unfilled records
        for rr in range(r, n_rec):
            for i in range(d):
                pops[rr, i] = np.nan
            traces[rr] = np.nan

    return (pops, traces, rho, max_tr_err, tr_err_step,
            min_diag, min_diag_step, max_diag, max_diag_step, status, status_step)
