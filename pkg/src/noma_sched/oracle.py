"""Independent reference solvers, used only for verification.

Neither solver shares any algebra with the closed-form allocator: the
two-user maximizer is found by golden-section search on the pair
objective, and the full per-slot problem is solved by exhaustive search
over user subsets with powers on a discretized full-budget simplex.
Both are deliberately slow and simple.
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import backend
from .exceptions import GridTooLargeError, InvalidOrderError
from .rates import LN2, Allocation, log2

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
MAX_GRID_POINTS = 3 * 10**8
MAX_USERS = 6


@dataclass(frozen=True)
class GridSpec:
    """Grid-search control: points per simplex axis and subset size cap."""

    resolution: int = 1001
    max_subset_size: int = 3

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("grid resolution must be at least 2")
        if self.max_subset_size < 1:
            raise ValueError("max subset size must be at least 1")


def pair_objective(nu_k, nu_phi, w_k, w_phi, p_max, p_k):
    """Weighted sum rate of a two-user pair as a function of p_k.

    The companion gets ``p_max - p_k`` and suffers interference p_k;
    the last-SIC user sees only its own noise.
    """
    return w_phi * log2((p_max + nu_phi) / (p_k + nu_phi)) + w_k * log2(
        (p_k + nu_k) / nu_k
    )


def pair_objective_derivative(nu_k, nu_phi, w_k, w_phi, p_k):
    """Derivative of :func:`pair_objective` with respect to p_k."""
    return (-w_phi / (p_k + nu_phi) + w_k / (p_k + nu_k)) / LN2


def golden_two_user(nu_k, nu_phi, w_k, w_phi, p_max, bracket_tol=None):
    """Golden-section maximizer of the pair objective on [0, p_max].

    Accepts scalars or equal-length arrays (searched lane-wise).  The
    objective is unimodal in every weight regime, so after checking the
    derivative sign at both endpoints the interior search is exact up to
    the bracket width (default ``1e-10 * p_max``).
    """
    args = [np.asarray(a, dtype=float) for a in (nu_k, nu_phi, w_k, w_phi, p_max)]
    scalar = all(a.ndim == 0 for a in args)
    nu_k, nu_phi, w_k, w_phi, p_max = np.atleast_1d(*np.broadcast_arrays(*args))
    if np.any(nu_k >= nu_phi):
        raise InvalidOrderError("last-SIC user must have the smaller NCR")
    tol = 1e-10 * p_max if bracket_tol is None else np.broadcast_to(
        np.asarray(bracket_tol, dtype=float), p_max.shape
    )

    out = np.empty_like(p_max)
    slope0 = pair_objective_derivative(nu_k, nu_phi, w_k, w_phi, 0.0)
    slope1 = pair_objective_derivative(nu_k, nu_phi, w_k, w_phi, p_max)
    decreasing = slope0 <= 0.0
    increasing = slope1 >= 0.0
    out[decreasing] = 0.0
    out[increasing] = p_max[increasing]

    active = ~(decreasing | increasing)
    if np.any(active):
        sub = [a[active] for a in (nu_k, nu_phi, w_k, w_phi, p_max)]

        def g(p):
            return pair_objective(*sub, p)

        lo = np.zeros_like(sub[4])
        hi = sub[4].copy()
        tol_a = np.broadcast_to(tol, p_max.shape)[active]
        c = hi - INVPHI * (hi - lo)
        d = lo + INVPHI * (hi - lo)
        gc = g(c)
        gd = g(d)
        while np.any(hi - lo > tol_a):
            left = gc > gd
            hi = np.where(left, d, hi)
            lo = np.where(left, lo, c)
            c = hi - INVPHI * (hi - lo)
            d = lo + INVPHI * (hi - lo)
            gc = g(c)
            gd = g(d)
        out[active] = 0.5 * (lo + hi)

    return float(out[0]) if scalar else out


def _subset_grid_points(n_points: int, size: int) -> int:
    return math.comb(n_points + size - 2, size - 1)


def grid_q2(channel, eff_weights, p_max: float, spec: GridSpec):
    """Exhaustive subset + simplex-grid search for the per-slot problem.

    Every nonempty subset of at most ``spec.max_subset_size`` users is
    tried with powers on the ``spec.resolution``-point discretization of
    the full-budget simplex.  Returns ``(Allocation, wsr)`` for the best
    grid point; deterministic tie-breaking by enumeration order.
    """
    ncr = np.asarray(channel.ncr, dtype=float)
    w = np.asarray(eff_weights, dtype=float)
    n = ncr.shape[0]
    if n > MAX_USERS:
        raise GridTooLargeError(
            f"grid search supports at most {MAX_USERS} users, got {n}"
        )
    max_size = min(spec.max_subset_size, n)
    total = sum(
        math.comb(n, k) * _subset_grid_points(spec.resolution, k)
        for k in range(1, max_size + 1)
    )
    if total > MAX_GRID_POINTS:
        raise GridTooLargeError(
            f"grid search would evaluate {total} points (limit {MAX_GRID_POINTS});"
            " reduce the resolution or subset size"
        )

    order = np.argsort(-ncr, kind="stable")
    values = backend.grid_values(float(p_max), spec.resolution)

    best_wsr = -math.inf
    best_ids = None
    best_powers = None
    for k in range(1, max_size + 1):
        for subset in combinations(range(n), k):
            ids = order[list(subset)]
            wsr, p_sub = backend.grid_subset_best(ncr[ids], w[ids], values)
            if wsr > best_wsr:
                best_wsr = wsr
                best_ids = ids
                best_powers = p_sub

    powers = np.zeros(n)
    powers[best_ids] = best_powers
    return Allocation(powers=powers), float(best_wsr)
