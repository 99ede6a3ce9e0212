"""Linear-time joint user selection and power allocation.

One pass over the SIC order tries every user as the "last SIC user"
(the one that cancels everything and sees no interference).  For each
such candidate the best partner is the maximum-effective-weight user
among those with larger NCR, the two-user power split has a closed form,
and the winner is the candidate pair with the highest weighted sum rate.
At most two users ever receive power.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .exceptions import InvalidOrderError
from .rates import Allocation


@dataclass(frozen=True)
class PairDecision:
    """Winning candidate of one allocation pass.

    ``companion`` is None only when the last-SIC user is the head of the
    SIC order (largest NCR), in which case it gets the full budget.  A
    present companion may still receive zero power (and is then not
    selected).
    """

    last_sic: int
    companion: int | None
    power_last: float
    power_companion: float
    weighted_sum_rate: float


def companion(order: np.ndarray, k_pos: int, eff_weights: np.ndarray) -> int | None:
    """Partner choice for the last-SIC candidate at position ``k_pos``.

    Scans the users strictly before ``k_pos`` in the decreasing-NCR
    order and returns the id of the one with the largest effective
    weight (ties to the smaller id); None when the candidate leads the
    order.
    """
    best_id = -1
    best_w = -1.0
    for pos in range(k_pos):
        uid = int(order[pos])
        w = float(eff_weights[uid])
        if w > best_w or (w == best_w and uid < best_id):
            best_w = w
            best_id = uid
    return None if best_id < 0 else best_id


def two_user_split(
    nu_k: float, nu_phi: float, w_k: float, w_phi: float, p_max: float
) -> tuple[float, float]:
    """Closed-form power split between a last-SIC user and its companion.

    The last-SIC user k must have the strictly smaller NCR.  Returns
    ``(p_k, p_phi)`` on the full-budget boundary ``p_k + p_phi = p_max``:
    everything to the companion when the weight ratio ``w_k/w_phi`` is
    below the NCR ratio ``nu_k/nu_phi``, everything to k when it reaches
    ``(p_max+nu_k)/(p_max+nu_phi)``, and the interior stationary point
    ``(w_phi*nu_k - w_k*nu_phi)/(w_k - w_phi)`` in between.
    """
    if not nu_k < nu_phi:
        raise InvalidOrderError(
            f"last-SIC user must have the smaller NCR (got {nu_k!r} >= {nu_phi!r})"
        )
    if not w_phi > 0:
        raise ValueError("companion effective weight must be positive")
    p_k = backend.split_last_power(nu_k, nu_phi, w_k, w_phi, p_max)
    return p_k, p_max - p_k


def uspa_decide(channel, eff_weights: np.ndarray, p_max: float):
    """Run the allocator; returns ``(Allocation, PairDecision)``."""
    powers, wsr, last, comp = backend.uspa_single(channel.ncr, eff_weights, p_max)
    decision = PairDecision(
        last_sic=int(last),
        companion=None if comp < 0 else int(comp),
        power_last=float(powers[last]),
        power_companion=0.0 if comp < 0 else float(powers[comp]),
        weighted_sum_rate=float(wsr),
    )
    return Allocation(powers=powers), decision


def uspa_allocate(channel, eff_weights: np.ndarray, p_max: float) -> Allocation:
    """Per-slot allocation maximizing the effective-weighted sum rate."""
    alloc, _ = uspa_decide(channel, eff_weights, p_max)
    return alloc
