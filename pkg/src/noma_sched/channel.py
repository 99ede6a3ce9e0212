"""Block-fading channel generation.

Per slot, each user's channel power gain is the product of a large-scale
attenuation (3GPP-style log-distance path loss plus lognormal shadowing)
and a unit-mean exponential small-scale term (Rayleigh envelope).  The
quantity the schedulers actually consume is the noise-to-channel ratio
(NCR) ``ncr_i = noise_i / |h_i|^2``: a smaller NCR means a stronger
effective channel.

All arithmetic is done in linear units (watts); dB only appears in the
fading parameters themselves.  Randomness comes from per-user
``numpy.random.Generator`` streams so that a user's channel trace does
not depend on how many other users are in the scenario.
"""

from dataclasses import dataclass, field

import numpy as np

SQRT_HALF = float(np.sqrt(0.5))


@dataclass(frozen=True)
class UserProfile:
    """Static per-user parameters.

    Attributes:
        user_id: index of the user within the scenario, 0-based.
        weight: nonnegative priority weight in the scheduler objective.
        min_rate: minimum long-run average rate requirement, bits/s/Hz.
        distance_m: distance from the base station, meters (> 0).
        noise_w: receiver noise power, watts (> 0).
    """

    user_id: int
    weight: float
    min_rate: float
    distance_m: float
    noise_w: float


@dataclass(frozen=True)
class FadingParams:
    """Large-scale fading model parameters (dB domain).

    Path loss in dB at distance d meters is
    ``pathloss_const_db + pathloss_slope_db * log10(d / 1000)``.
    Shadowing is zero-mean normal in dB with std ``shadowing_sigma_db``,
    drawn once per trial by default; ``shadowing_per_slot`` redraws it
    every slot instead (the cadence is a modelling choice, not pinned by
    the propagation model itself).
    """

    pathloss_const_db: float = 128.1
    pathloss_slope_db: float = 37.6
    shadowing_sigma_db: float = 8.0
    rng_seed: int = 0
    shadowing_per_slot: bool = False


@dataclass(frozen=True)
class ChannelState:
    """Per-slot channel realization for all users.

    ``ncr`` is elementwise ``noise_w / gain`` and is kept alongside the
    raw gains because every scheduler decision is a function of it.
    """

    slot: int
    gains: np.ndarray = field(repr=False)
    ncr: np.ndarray

    @property
    def n_users(self) -> int:
        return self.ncr.shape[0]


def user_stream(seed: int, trial: int, user_id: int) -> np.random.Generator:
    """Independent, reproducible random stream for one user in one trial.

    Streams are addressed by ``(trial, user_id)`` spawn keys, so a given
    user's draws are identical no matter how many users the scenario has.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial, user_id))
    return np.random.Generator(np.random.PCG64(ss))


def trial_stream(seed: int, trial: int) -> np.random.Generator:
    """Stream for trial-level draws (e.g. randomized scenario geometry)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    return np.random.Generator(np.random.PCG64(ss))


def user_streams(seed: int, trial: int, n_users: int) -> list[np.random.Generator]:
    return [user_stream(seed, trial, u) for u in range(n_users)]


def draw_large_scale(
    profile: UserProfile, params: FadingParams, rng: np.random.Generator
) -> float:
    """Draw the linear large-scale power attenuation for one user.

    Combines deterministic path loss with one lognormal shadowing draw;
    a shadowing sigma of 0 keeps the draw but makes it exactly 0 dB, so
    stream alignment does not depend on the sigma value.
    """
    pl_db = params.pathloss_const_db + params.pathloss_slope_db * np.log10(
        profile.distance_m / 1000.0
    )
    shadow_db = params.shadowing_sigma_db * rng.standard_normal()
    return float(10.0 ** (-(pl_db + shadow_db) / 10.0))


def draw_slot(
    profiles: list[UserProfile],
    large_scale: np.ndarray,
    rngs: list[np.random.Generator],
    slot: int = 1,
) -> ChannelState:
    """Draw one slot of small-scale fading and return the channel state.

    The small-scale power term is ``a**2 + b**2`` with a, b independent
    N(0, 1/2), i.e. the squared magnitude of a zero-mean unit-variance
    complex Gaussian (Exponential(1) distributed, unit mean).  The
    measure-zero event of an exactly zero draw is redrawn so the NCR
    stays finite.
    """
    n = len(profiles)
    gains = np.empty(n)
    ncr = np.empty(n)
    for u in range(n):
        g = 0.0
        while g == 0.0:
            ab = rngs[u].standard_normal(2) * SQRT_HALF
            g = float(ab[0] * ab[0] + ab[1] * ab[1])
        gains[u] = large_scale[u] * g
        ncr[u] = profiles[u].noise_w / gains[u]
    return ChannelState(slot=slot, gains=gains, ncr=ncr)
