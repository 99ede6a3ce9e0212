"""Achievable rates under superposition coding with SIC receivers.

Users decode in decreasing-NCR order: a receiver first strips the
signals of every user with a larger-or-equal NCR, then treats the
remaining (smaller-NCR) users' signals as noise.  The rate of a selected
user i is therefore

    log2(1 + p_i / (sum of p_j over smaller-NCR users j  +  ncr_i))

and deselected users get exactly zero.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidAllocationError

LN2 = float(np.log(2.0))


def log2(x):
    """Base-2 log as ln(x)/ln(2); the one definition used everywhere."""
    return np.log(x) / LN2


@dataclass(frozen=True)
class Allocation:
    """Per-slot decision: transmit powers (watts) and selection flags.

    Invariants (checked by :func:`check_allocation`): powers are finite
    and nonnegative, and selection is consistent with positive power in
    both directions.
    """

    powers: np.ndarray
    selected: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.selected is None:
            object.__setattr__(self, "selected", self.powers > 0.0)

    @property
    def n_selected(self) -> int:
        return int(np.count_nonzero(self.selected))

    @property
    def selected_ids(self) -> np.ndarray:
        return np.flatnonzero(self.selected)


def check_allocation(alloc: Allocation, p_max: float | None = None) -> None:
    """Raise InvalidAllocationError on any violated allocation invariant."""
    p = np.asarray(alloc.powers, dtype=float)
    q = np.asarray(alloc.selected, dtype=bool)
    if p.shape != q.shape:
        raise InvalidAllocationError("powers and selected have different lengths")
    if not np.all(np.isfinite(p)):
        raise InvalidAllocationError("powers must be finite")
    if np.any(p < 0.0):
        raise InvalidAllocationError("powers must be nonnegative")
    if np.any(p[~q] != 0.0):
        raise InvalidAllocationError("deselected users must have zero power")
    if np.any(p[q] <= 0.0):
        raise InvalidAllocationError("selected users must have positive power")
    if p_max is not None and p.sum() > p_max * (1.0 + 1e-9):
        raise InvalidAllocationError(
            f"total power {p.sum()!r} exceeds budget {p_max!r}"
        )


def sic_order(channel) -> np.ndarray:
    """User indices sorted by strictly decreasing NCR, ties by ascending id.

    The first user in the order is decoded (and cancelled) by everyone;
    the last one cancels everything and sees no interference.
    """
    return np.argsort(-np.asarray(channel.ncr), kind="stable")


def rates(alloc: Allocation, channel) -> np.ndarray:
    """Per-user achievable rates (bits/s/Hz) for one allocation and channel.

    Interference for a user is the summed power of the users after it in
    the SIC order (i.e. with strictly smaller NCR; exact NCR ties follow
    the same ascending-id rule as :func:`sic_order`).
    """
    check_allocation(alloc)
    ncr = np.asarray(channel.ncr)
    order = sic_order(channel)
    p_ord = alloc.powers[order]
    rev_cum = np.cumsum(p_ord[::-1])
    intf_ord = np.concatenate((rev_cum[-2::-1], [0.0]))
    out = np.zeros_like(p_ord)
    sel_ord = alloc.selected[order]
    out[sel_ord] = log2(1.0 + p_ord[sel_ord] / (intf_ord[sel_ord] + ncr[order][sel_ord]))
    result = np.empty_like(out)
    result[order] = out
    return result


def weighted_sum(rate_vec: np.ndarray, weights: np.ndarray) -> float:
    """Weighted sum rate: dot product of rates and weights."""
    r = np.asarray(rate_vec, dtype=float)
    w = np.asarray(weights, dtype=float)
    if r.shape != w.shape:
        raise ValueError("rates and weights have different lengths")
    return float(np.dot(w, r))
