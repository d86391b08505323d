# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: periodic method-of-lines RK4 and Frenet-frame RK4."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline void _mol_rhs(const double[::1] u, double[::1] out, Py_ssize_t n, double ds,
                          double nu, double adv, double drift, double react, int order) noexcept nogil:
    cdef Py_ssize_t i, im1, ip1, im2, ip2
    cdef double du, d2u
    cdef double inv1, inv2
    if order == 2:
        inv1 = 1.0 / (2.0 * ds)
        inv2 = 1.0 / (ds * ds)
    else:
        inv1 = 1.0 / (12.0 * ds)
        inv2 = 1.0 / (12.0 * ds * ds)
    for i in range(n):
        im1 = i - 1 if i >= 1 else i - 1 + n
        ip1 = i + 1 if i + 1 < n else i + 1 - n
        if order == 2:
            du = (u[ip1] - u[im1]) * inv1
            d2u = (u[ip1] - 2.0 * u[i] + u[im1]) * inv2
        else:
            im2 = i - 2 if i >= 2 else i - 2 + n
            ip2 = i + 2 if i + 2 < n else i + 2 - n
            du = (-u[ip2] + 8.0 * u[ip1] - 8.0 * u[im1] + u[im2]) * inv1
            d2u = (-u[ip2] + 16.0 * u[ip1] - 30.0 * u[i] + 16.0 * u[im1] - u[im2]) * inv2
        out[i] = nu * d2u + adv * u[i] * du + drift * du + react * u[i]


cdef inline double _d1_at(const double[::1] u, Py_ssize_t i, Py_ssize_t n, double ds, int order) noexcept nogil:
    cdef Py_ssize_t im1 = i - 1 if i >= 1 else i - 1 + n
    cdef Py_ssize_t ip1 = i + 1 if i + 1 < n else i + 1 - n
    cdef Py_ssize_t im2, ip2
    if order == 2:
        return (u[ip1] - u[im1]) / (2.0 * ds)
    im2 = i - 2 if i >= 2 else i - 2 + n
    ip2 = i + 2 if i + 2 < n else i + 2 - n
    return (-u[ip2] + 8.0 * u[ip1] - 8.0 * u[im1] + u[im2]) / (12.0 * ds)


def mol_rk4(u0, double ds, double dt, Py_ssize_t nsteps, Py_ssize_t save_every,
            double nu, double adv, double drift, double react, int order):
    cdef double[::1] u = np.array(u0, dtype=np.float64)
    cdef Py_ssize_t n = u.shape[0]
    cdef double[::1] k1 = np.empty(n), k2 = np.empty(n), k3 = np.empty(n), k4 = np.empty(n)
    cdef double[::1] tmp = np.empty(n)
    out_arr = np.empty((nsteps // save_every + 1, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t step, i
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    out[0, :] = u
    with nogil:
        for step in range(1, nsteps + 1):
            _mol_rhs(u, k1, n, ds, nu, adv, drift, react, order)
            for i in range(n):
                tmp[i] = u[i] + h2 * k1[i]
            _mol_rhs(tmp, k2, n, ds, nu, adv, drift, react, order)
            for i in range(n):
                tmp[i] = u[i] + h2 * k2[i]
            _mol_rhs(tmp, k3, n, ds, nu, adv, drift, react, order)
            for i in range(n):
                tmp[i] = u[i] + dt * k3[i]
            _mol_rhs(tmp, k4, n, ds, nu, adv, drift, react, order)
            for i in range(n):
                u[i] = u[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if step % save_every == 0:
                out[step // save_every, :] = u
    return out_arr


cdef inline void _frenet_rhs(const double[:, ::1] x, double[:, ::1] k, double tau, double G,
                             Py_ssize_t dim) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(dim):
        k[0, j] = x[1, j]
        k[1, j] = x[2, j] - G * x[0, j]
        k[2, j] = tau * x[2, j]
        k[3, j] = x[1, j] - tau * x[3, j]


def frenet_rk4(tau_half, double h, double G, state0, Py_ssize_t stride):
    cdef const double[::1] th = np.ascontiguousarray(tau_half, dtype=np.float64)
    cdef Py_ssize_t nsteps = (th.shape[0] - 1) // 2
    cdef double[:, ::1] x = np.array(state0, dtype=np.float64)
    cdef Py_ssize_t dim = x.shape[1]
    cdef double[:, ::1] k1 = np.empty((4, dim)), k2 = np.empty((4, dim))
    cdef double[:, ::1] k3 = np.empty((4, dim)), k4 = np.empty((4, dim))
    cdef double[:, ::1] tmp = np.empty((4, dim))
    out_arr = np.empty((nsteps // stride + 1, 4, dim))
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t i, r, j
    cdef double h2 = 0.5 * h, h6 = h / 6.0
    out[0, :, :] = x
    with nogil:
        for i in range(nsteps):
            _frenet_rhs(x, k1, th[2 * i], G, dim)
            for r in range(4):
                for j in range(dim):
                    tmp[r, j] = x[r, j] + h2 * k1[r, j]
            _frenet_rhs(tmp, k2, th[2 * i + 1], G, dim)
            for r in range(4):
                for j in range(dim):
                    tmp[r, j] = x[r, j] + h2 * k2[r, j]
            _frenet_rhs(tmp, k3, th[2 * i + 1], G, dim)
            for r in range(4):
                for j in range(dim):
                    tmp[r, j] = x[r, j] + h * k3[r, j]
            _frenet_rhs(tmp, k4, th[2 * i + 2], G, dim)
            for r in range(4):
                for j in range(dim):
                    x[r, j] = x[r, j] + h6 * (k1[r, j] + 2.0 * k2[r, j] + 2.0 * k3[r, j] + k4[r, j])
            if (i + 1) % stride == 0:
                out[(i + 1) // stride, :, :] = x
    return out_arr


cdef inline void _filament_rhs(const double[::1] u, const double[:, ::1] x, double[::1] ku, double[:, ::1] kx,
                               Py_ssize_t n, Py_ssize_t dim, double ds, double G, int order,
                               Py_ssize_t idx) noexcept nogil:
    cdef double ta, alpha
    cdef Py_ssize_t j
    _mol_rhs(u, ku, n, ds, 1.0, 2.0, 0.0, 0.0, order)
    ta = u[idx]
    alpha = _d1_at(u, idx, n, ds, order) + ta * ta + G
    for j in range(dim):
        kx[0, j] = x[2, j]
        kx[1, j] = ta * x[2, j]
        kx[2, j] = alpha * x[2, j]
        kx[3, j] = ta * x[1, j] - alpha * x[3, j] + G * x[0, j]


def filament_rk4(tau0, double ds, double dt, Py_ssize_t nsteps, Py_ssize_t save_every, double G,
                 anchor0, int order, Py_ssize_t idx):
    cdef double[::1] u = np.array(tau0, dtype=np.float64)
    cdef double[:, ::1] x = np.array(anchor0, dtype=np.float64)
    cdef Py_ssize_t n = u.shape[0], dim = x.shape[1]
    cdef double[::1] a1 = np.empty(n), a2 = np.empty(n), a3 = np.empty(n), a4 = np.empty(n), ut = np.empty(n)
    cdef double[:, ::1] b1 = np.empty((4, dim)), b2 = np.empty((4, dim)), b3 = np.empty((4, dim))
    cdef double[:, ::1] b4 = np.empty((4, dim)), xt = np.empty((4, dim))
    cdef Py_ssize_t nsave = nsteps // save_every + 1
    taus_arr = np.empty((nsave, n))
    frames_arr = np.empty((nsave, 4, dim))
    cdef double[:, ::1] taus = taus_arr
    cdef double[:, :, ::1] frames = frames_arr
    cdef Py_ssize_t step, i, r, j
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    taus[0, :] = u
    frames[0, :, :] = x
    with nogil:
        for step in range(1, nsteps + 1):
            _filament_rhs(u, x, a1, b1, n, dim, ds, G, order, idx)
            for i in range(n):
                ut[i] = u[i] + h2 * a1[i]
            for r in range(4):
                for j in range(dim):
                    xt[r, j] = x[r, j] + h2 * b1[r, j]
            _filament_rhs(ut, xt, a2, b2, n, dim, ds, G, order, idx)
            for i in range(n):
                ut[i] = u[i] + h2 * a2[i]
            for r in range(4):
                for j in range(dim):
                    xt[r, j] = x[r, j] + h2 * b2[r, j]
            _filament_rhs(ut, xt, a3, b3, n, dim, ds, G, order, idx)
            for i in range(n):
                ut[i] = u[i] + dt * a3[i]
            for r in range(4):
                for j in range(dim):
                    xt[r, j] = x[r, j] + dt * b3[r, j]
            _filament_rhs(ut, xt, a4, b4, n, dim, ds, G, order, idx)
            for i in range(n):
                u[i] = u[i] + h6 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i])
            for r in range(4):
                for j in range(dim):
                    x[r, j] = x[r, j] + h6 * (b1[r, j] + 2.0 * b2[r, j] + 2.0 * b3[r, j] + b4[r, j])
            if step % save_every == 0:
                taus[step // save_every, :] = u
                frames[step // save_every, :, :] = x
    return taus_arr, frames_arr
