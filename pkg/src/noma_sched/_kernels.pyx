# Compiled twins of the kernels in _kernels_py.py.  Same enumeration
# order, same tie rules, same arithmetic expressions; tests compare the
# two backends elementwise.

from libc.math cimport INFINITY, M_LN2, log

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline double _l2(double x) noexcept nogil:
    return log(x) / M_LN2


cdef inline double _split(double nu_k, double nu_phi, double w_k,
                          double w_phi, double p_max) noexcept nogil:
    cdef double ratio, p_k
    if w_phi <= 0.0:
        return p_max
    ratio = w_k / w_phi
    if ratio < nu_k / nu_phi:
        return 0.0
    if ratio >= (p_max + nu_k) / (p_max + nu_phi):
        return p_max
    p_k = (w_phi * nu_k - w_k * nu_phi) / (w_k - w_phi)
    if p_k < 0.0:
        p_k = 0.0
    elif p_k > p_max:
        p_k = p_max
    return p_k


cdef void _uspa_core(const double* nu, const double* w, const long* order,
                     Py_ssize_t n, double p_max, double* powers,
                     double* out_wsr, long* out_k, long* out_phi) noexcept nogil:
    cdef double best_wsr = -INFINITY
    cdef long best_k = -1, best_phi = -1
    cdef double best_pk = 0.0, best_pphi = 0.0
    cdef double run_w = -1.0, run_nu = 0.0
    cdef long run_id = -1
    cdef Py_ssize_t pos
    cdef long k, phi
    cdef double nu_k, w_k, p_k, p_phi, wsr

    for pos in range(n):
        k = order[pos]
        nu_k = nu[k]
        w_k = w[k]
        if run_id < 0:
            phi = -1
            p_k = p_max
            p_phi = 0.0
            wsr = w_k * _l2(1.0 + p_max / nu_k)
        else:
            phi = run_id
            p_k = _split(nu_k, run_nu, w_k, run_w, p_max)
            p_phi = p_max - p_k
            wsr = run_w * _l2(1.0 + p_phi / (p_k + run_nu)) + w_k * _l2(1.0 + p_k / nu_k)
        if wsr > best_wsr or (wsr == best_wsr and k < best_k):
            best_wsr = wsr
            best_k = k
            best_phi = phi
            best_pk = p_k
            best_pphi = p_phi
        if w_k > run_w or (w_k == run_w and k < run_id):
            run_w = w_k
            run_id = k
            run_nu = nu_k

    for pos in range(n):
        powers[pos] = 0.0
    if best_pk > 0.0:
        powers[best_k] = best_pk
    if best_phi >= 0 and best_pphi > 0.0:
        powers[best_phi] = best_pphi
    out_wsr[0] = best_wsr
    out_k[0] = best_k
    out_phi[0] = best_phi


def split_last_power(double nu_k, double nu_phi, double w_k, double w_phi,
                     double p_max):
    """Optimal last-SIC power of a two-user pair (see the numpy twin)."""
    return _split(nu_k, nu_phi, w_k, w_phi, p_max)


def uspa_single(ncr, weights, double p_max):
    """One scheduling decision; returns (powers, wsr, last, companion)."""
    cdef cnp.ndarray[double, ndim=1] nu = np.ascontiguousarray(ncr, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef cnp.ndarray[long, ndim=1] order = np.argsort(-nu, kind="stable").astype(np.int64)
    cdef Py_ssize_t n = nu.shape[0]
    cdef cnp.ndarray[double, ndim=1] powers = np.empty(n)
    cdef double wsr
    cdef long best_k, best_phi
    with nogil:
        _uspa_core(&nu[0], &w[0], &order[0], n, p_max, &powers[0],
                   &wsr, &best_k, &best_phi)
    return powers, wsr, int(best_k), int(best_phi)


def uspa_batch(ncr, weights, double p_max):
    """Batched uspa_single; returns (powers, wsr, last, companion) arrays."""
    cdef cnp.ndarray[double, ndim=2] nu = np.ascontiguousarray(ncr, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef cnp.ndarray[long, ndim=2] order = np.argsort(-nu, axis=1, kind="stable").astype(np.int64)
    cdef Py_ssize_t b = nu.shape[0], n = nu.shape[1], i
    cdef cnp.ndarray[double, ndim=2] powers = np.empty((b, n))
    cdef cnp.ndarray[double, ndim=1] wsr = np.empty(b)
    cdef cnp.ndarray[long, ndim=1] best_k = np.empty(b, dtype=np.int64)
    cdef cnp.ndarray[long, ndim=1] best_phi = np.empty(b, dtype=np.int64)
    with nogil:
        for i in range(b):
            _uspa_core(&nu[i, 0], &w[i, 0], &order[i, 0], n, p_max,
                       &powers[i, 0], &wsr[i], &best_k[i], &best_phi[i])
    return powers, wsr, best_k, best_phi


cdef struct GridBest:
    double wsr
    Py_ssize_t chain[8]


cdef void _grid_walk(Py_ssize_t level, Py_ssize_t k, Py_ssize_t i_prev,
                     double partial, const double* v, const double* nu,
                     const double* w, const double* t_last,
                     Py_ssize_t* chain, GridBest* best) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double s_prev = v[i_prev], tot, term
    if level == k - 1:
        for i in range(i_prev + 1):
            tot = (partial
                   + w[k - 2] * _l2(1.0 + (s_prev - v[i]) / (v[i] + nu[k - 2]))
                   + t_last[i])
            if tot > best.wsr:
                best.wsr = tot
                for j in range(level - 1):
                    best.chain[j] = chain[j]
                best.chain[level - 1] = i
        return
    for i in range(i_prev + 1):
        term = w[level - 1] * _l2(1.0 + (s_prev - v[i]) / (v[i] + nu[level - 1]))
        chain[level - 1] = i
        _grid_walk(level + 1, k, i, partial + term, v, nu, w, t_last, chain, best)


def grid_subset_best(ncr_desc, weights, values):
    """Best full-budget grid allocation for one ordered subset.

    Same contract as the numpy twin: direct evaluation of every simplex
    grid point, lexicographic-first tie break, powers returned in the
    subset's decreasing-NCR order.
    """
    cdef cnp.ndarray[double, ndim=1] nu = np.ascontiguousarray(ncr_desc, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t m = v.shape[0], k = nu.shape[0]
    cdef double p_max = v[m - 1]
    cdef Py_ssize_t i1, i2, j, best_i1 = 0, best_i2 = 0
    cdef double best = -INFINITY, tot, t0i
    cdef cnp.ndarray[double, ndim=1] t0, t_last
    cdef GridBest gbest
    cdef Py_ssize_t chain[8]
    cdef double s1, s2

    if k == 1:
        return w[0] * _l2(1.0 + p_max / nu[0]), np.array([p_max])

    if k == 2:
        with nogil:
            for i1 in range(m):
                tot = (w[0] * _l2(1.0 + (p_max - v[i1]) / (v[i1] + nu[0]))
                       + w[1] * _l2(1.0 + v[i1] / nu[1]))
                if tot > best:
                    best = tot
                    best_i1 = i1
        return best, np.array([p_max - v[best_i1], v[best_i1]])

    if k == 3:
        t0 = np.empty(m)
        t_last = np.empty(m)
        with nogil:
            for i1 in range(m):
                t0[i1] = w[0] * _l2(1.0 + (p_max - v[i1]) / (v[i1] + nu[0]))
                t_last[i1] = w[2] * _l2(1.0 + v[i1] / nu[2])
            for i1 in range(m):
                t0i = t0[i1]
                for i2 in range(i1 + 1):
                    tot = (t0i
                           + w[1] * _l2(1.0 + (v[i1] - v[i2]) / (v[i2] + nu[1]))
                           + t_last[i2])
                    if tot > best:
                        best = tot
                        best_i1 = i1
                        best_i2 = i2
        s1 = v[best_i1]
        s2 = v[best_i2]
        return best, np.array([p_max - s1, s1 - s2, s2])

    if k > 8:
        raise ValueError("grid kernel supports subsets of at most 8 users")

    t_last = np.empty(m)
    gbest.wsr = -INFINITY
    with nogil:
        for i1 in range(m):
            t_last[i1] = w[k - 1] * _l2(1.0 + v[i1] / nu[k - 1])
        for i1 in range(m):
            t0i = w[0] * _l2(1.0 + (p_max - v[i1]) / (v[i1] + nu[0]))
            chain[0] = i1
            _grid_walk(2, k, i1, t0i, &v[0], &nu[0], &w[0], &t_last[0],
                       chain, &gbest)
    s = [p_max] + [v[gbest.chain[j]] for j in range(k - 1)] + [0.0]
    powers = np.array([s[j] - s[j + 1] for j in range(k)])
    return gbest.wsr, powers
