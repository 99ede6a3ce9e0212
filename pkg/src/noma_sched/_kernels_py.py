"""Pure-numpy implementations of the hot scheduling kernels.

The compiled extension (``noma_sched._kernels``) provides the same
functions with identical semantics; :mod:`noma_sched.backend` picks one
at import time.  Keep the arithmetic expressions here in sync with the
Cython source: tests compare the two backends elementwise.

Conventions shared by both backends:

* ``ncr`` arrays are in original user-id order; kernels sort internally
  by decreasing NCR with ties broken by ascending id.
* candidate enumeration walks the SIC order once, keeping a running
  best-companion (max effective weight, ties to the smaller id) and a
  running best candidate (max weighted sum rate, ties to the smaller
  last-user id).
* a zero-weight companion degenerates to full power for the last user.
"""

import math
from functools import lru_cache

import numpy as np

LN2 = math.log(2.0)


def _l2(x: float) -> float:
    return math.log(x) / LN2


def _l2v(x):
    return np.log(x) / LN2


def split_last_power(
    nu_k: float, nu_phi: float, w_k: float, w_phi: float, p_max: float
) -> float:
    """Optimal power for the last-SIC user of a two-user pair.

    The pair objective over ``p_k`` on [0, p_max] (companion gets the
    remainder) is unimodal; the maximizer is 0, p_max, or the interior
    stationary point depending on how the weight ratio compares with the
    NCR ratio and its full-power counterpart.  Assumes ``nu_k < nu_phi``
    (not rechecked here) and clamps the interior value against
    round-off.
    """
    if w_phi <= 0.0:
        return p_max
    ratio = w_k / w_phi
    if ratio < nu_k / nu_phi:
        return 0.0
    if ratio >= (p_max + nu_k) / (p_max + nu_phi):
        return p_max
    p_k = (w_phi * nu_k - w_k * nu_phi) / (w_k - w_phi)
    return min(max(p_k, 0.0), p_max)


def uspa_single(ncr, weights, p_max: float):
    """One scheduling decision: enumerate last-SIC candidates in O(N).

    Returns ``(powers, wsr, last, companion)`` where ``powers`` is the
    full-length power vector, ``wsr`` the winning candidate's weighted
    sum rate, ``last`` the last-SIC user id and ``companion`` the paired
    user id or -1 when the last-SIC user leads the SIC order.
    """
    nu = np.asarray(ncr, dtype=float)
    w = np.asarray(weights, dtype=float)
    n = nu.shape[0]
    order = np.argsort(-nu, kind="stable")

    best_wsr = -math.inf
    best_k = -1
    best_phi = -1
    best_pk = 0.0
    best_pphi = 0.0
    run_w = -1.0
    run_id = -1
    run_nu = 0.0

    for pos in range(n):
        k = int(order[pos])
        nu_k = float(nu[k])
        w_k = float(w[k])
        if run_id < 0:
            phi = -1
            p_k = p_max
            p_phi = 0.0
            wsr = w_k * _l2(1.0 + p_max / nu_k)
        else:
            phi = run_id
            p_k = split_last_power(nu_k, run_nu, w_k, run_w, p_max)
            p_phi = p_max - p_k
            wsr = run_w * _l2(1.0 + p_phi / (p_k + run_nu)) + w_k * _l2(
                1.0 + p_k / nu_k
            )
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

    powers = np.zeros(n)
    if best_pk > 0.0:
        powers[best_k] = best_pk
    if best_phi >= 0 and best_pphi > 0.0:
        powers[best_phi] = best_pphi
    return powers, best_wsr, best_k, best_phi


def uspa_batch(ncr, weights, p_max: float):
    """Vectorized :func:`uspa_single` over a batch of instances.

    Loops over SIC positions (N iterations of array ops) rather than
    over instances, so the cost per instance stays O(N) with small
    constants for large batches.
    """
    nu = np.asarray(ncr, dtype=float)
    w = np.asarray(weights, dtype=float)
    b, n = nu.shape
    order = np.argsort(-nu, axis=1, kind="stable")
    rows = np.arange(b)

    best_wsr = np.full(b, -np.inf)
    best_k = np.full(b, -1)
    best_phi = np.full(b, -1)
    best_pk = np.zeros(b)
    best_pphi = np.zeros(b)
    run_w = np.full(b, -1.0)
    run_id = np.full(b, -1)
    run_nu = np.zeros(b)

    for pos in range(n):
        k = order[:, pos]
        nu_k = nu[rows, k]
        w_k = w[rows, k]
        single = run_id < 0
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = w_k / run_w
            c1 = nu_k / run_nu
            c2 = (p_max + nu_k) / (p_max + run_nu)
            interior = (run_w * nu_k - w_k * run_nu) / (w_k - run_w)
            p_k = np.where(
                ratio < c1,
                0.0,
                np.where(ratio >= c2, p_max, np.clip(interior, 0.0, p_max)),
            )
        p_k = np.where(single | (run_w <= 0.0), p_max, p_k)
        p_phi = np.where(single, 0.0, p_max - p_k)
        with np.errstate(divide="ignore", invalid="ignore"):
            pair_wsr = run_w * _l2v(1.0 + p_phi / (p_k + run_nu)) + w_k * _l2v(
                1.0 + p_k / nu_k
            )
        wsr = np.where(single, w_k * _l2v(1.0 + p_max / nu_k), pair_wsr)
        phi = np.where(single, -1, run_id)

        upd = (wsr > best_wsr) | ((wsr == best_wsr) & (k < best_k))
        best_wsr = np.where(upd, wsr, best_wsr)
        best_k = np.where(upd, k, best_k)
        best_phi = np.where(upd, phi, best_phi)
        best_pk = np.where(upd, p_k, best_pk)
        best_pphi = np.where(upd, p_phi, best_pphi)

        upd2 = (w_k > run_w) | ((w_k == run_w) & (k < run_id))
        run_w = np.where(upd2, w_k, run_w)
        run_id = np.where(upd2, k, run_id)
        run_nu = np.where(upd2, nu_k, run_nu)

    powers = np.zeros((b, n))
    powers[rows, best_k] = np.where(best_pk > 0.0, best_pk, 0.0)
    has_phi = best_phi >= 0
    powers[rows[has_phi], best_phi[has_phi]] = np.where(
        best_pphi[has_phi] > 0.0, best_pphi[has_phi], 0.0
    )
    return powers, best_wsr, best_k, best_phi


@lru_cache(maxsize=8)
def _grid_fractions(resolution: int):
    d = resolution - 1
    num = np.empty(resolution)
    den = np.empty(resolution)
    for u in range(resolution):
        g = math.gcd(u, d)
        num[u] = u // g if g else u
        den[u] = d // g if g else 1
    return num, den


def grid_values(p_max: float, resolution: int) -> np.ndarray:
    """Evenly spaced budget fractions 0..p_max, gcd-normalized.

    Each point is computed as ``p_max * (u/g) / (d/g)`` with the unit
    fraction reduced to lowest terms, so grids whose step counts divide
    each other share bit-identical values at coincident points.  That
    makes refining the resolution a literal superset of candidates.
    """
    num, den = _grid_fractions(int(resolution))
    return p_max * num / den


@lru_cache(maxsize=4)
def _pair_indices(m: int):
    return np.tril_indices(m)


def grid_subset_best(ncr_desc, weights, values):
    """Best full-budget allocation for one ordered subset on the grid.

    ``ncr_desc``/``weights`` are the subset's NCRs and weights sorted by
    decreasing NCR; ``values`` is the shared grid from
    :func:`grid_values` (its last entry is the power budget).  Powers
    are parametrized by the suffix sums s_1 >= ... >= s_{k-1} on the
    grid, which enumerates exactly the simplex compositions; every point
    is evaluated directly with the SIC rate formula.  Returns
    ``(wsr, powers)`` with powers aligned to the input order; the first
    maximizer in lexicographic scan order wins ties.
    """
    nu = np.asarray(ncr_desc, dtype=float)
    w = np.asarray(weights, dtype=float)
    v = np.asarray(values, dtype=float)
    m = v.shape[0]
    k = nu.shape[0]
    p_max = float(v[-1])

    if k == 1:
        return w[0] * _l2(1.0 + p_max / nu[0]), np.array([p_max])

    if k == 2:
        tot = w[0] * _l2v(1.0 + (p_max - v) / (v + nu[0])) + w[1] * _l2v(
            1.0 + v / nu[1]
        )
        i = int(np.argmax(tot))
        return float(tot[i]), np.array([p_max - v[i], v[i]])

    if k == 3:
        i1, i2 = _pair_indices(m)
        t0 = w[0] * _l2v(1.0 + (p_max - v) / (v + nu[0]))
        t2 = w[2] * _l2v(1.0 + v / nu[2])
        tot = (
            t0[i1]
            + w[1] * _l2v(1.0 + (v[i1] - v[i2]) / (v[i2] + nu[1]))
            + t2[i2]
        )
        j = int(np.argmax(tot))
        s1 = v[i1[j]]
        s2 = v[i2[j]]
        return float(tot[j]), np.array([p_max - s1, s1 - s2, s2])

    # general depth: scalar walk over s_1..s_{k-2}, vectorized last level
    t_last = w[k - 1] * _l2v(1.0 + v / nu[k - 1])
    best = [-math.inf, None]

    def walk(level: int, i_prev: int, partial: float, chain: tuple):
        s_prev = v[i_prev]
        if level == k - 1:
            vv = v[: i_prev + 1]
            tot = (
                partial
                + w[k - 2] * _l2v(1.0 + (s_prev - vv) / (vv + nu[k - 2]))
                + t_last[: i_prev + 1]
            )
            j = int(np.argmax(tot))
            if tot[j] > best[0]:
                best[0] = float(tot[j])
                best[1] = chain + (j,)
            return
        for i in range(i_prev + 1):
            term = w[level - 1] * _l2(1.0 + (s_prev - v[i]) / (v[i] + nu[level - 1]))
            walk(level + 1, i, partial + term, chain + (i,))

    for i in range(m):
        term0 = w[0] * _l2(1.0 + (p_max - v[i]) / (v[i] + nu[0]))
        walk(2, i, term0, (i,))

    chain = best[1]
    s = [p_max] + [v[i] for i in chain] + [0.0]
    powers = np.array([s[j] - s[j + 1] for j in range(k)])
    return best[0], powers
