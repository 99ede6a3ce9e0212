"""Orthogonal-access baseline: one user per slot at full power."""

import numpy as np

from .rates import Allocation, log2


def oma_allocate(channel, eff_weights: np.ndarray, p_max: float) -> Allocation:
    """Select the user with the highest instantaneous weighted rate.

    Exactly one user gets the whole power budget:
    ``argmax_i w_i * log2(1 + p_max / ncr_i)``, ties to the smaller id.
    """
    w = np.asarray(eff_weights, dtype=float)
    values = w * log2(1.0 + p_max / np.asarray(channel.ncr))
    winner = int(np.argmax(values))
    powers = np.zeros_like(values)
    powers[winner] = p_max
    return Allocation(powers=powers)
