"""Chebyshev chaotic chip generator and its stationary statistics.

The chip source is the degree-xi Chebyshev map on [-1, 1],

    T_xi(x) = cos(xi * arccos(x)),

iterated from an initial state x0.  Orbits of this map distribute their
samples according to the arcsine law f(x) = 1/(pi*sqrt(1-x^2)), which is
what every closed-form moment in :mod:`chaoswpt.analytic` relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChaoticSequence",
    "chebyshev_step",
    "generate_sequence",
    "invariant_pdf",
    "theoretical_moment",
    "draw_initial_state",
    "frame_chip_source",
    "map_fixed_points",
]

#: |x| may exceed 1 by at most this much before we refuse to fold it back.
DOMAIN_TOL = 1e-12

#: x0 closer than this to a fixed point of the map is rejected: the orbit
#: would sit still (or take forever to leave) instead of mixing.
FIXED_POINT_TOL = 1e-9


@dataclass
class ChaoticSequence:
    """An orbit of the Chebyshev map: ``samples[0]`` is the seed state."""

    samples: np.ndarray
    map_degree: int
    seed_state: float

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise ValueError("ChaoticSequence.samples must be a nonempty 1-D array")
        if self.map_degree < 2:
            raise ValueError("map_degree must be an integer >= 2")
        if np.any(np.abs(self.samples) > 1.0):
            raise ValueError("chaotic samples must lie in [-1, 1]")

    def __len__(self) -> int:
        return self.samples.size


def _validate_degree(xi: int) -> int:
    if not isinstance(xi, (int, np.integer)) or isinstance(xi, bool):
        raise TypeError(f"map degree must be an integer >= 2, got {xi!r}")
    if xi < 2:
        raise ValueError(f"map degree must be >= 2, got {xi}")
    return int(xi)


def chebyshev_step(x, xi: int = 2):
    """One application of the degree-``xi`` Chebyshev map.

    Accepts a scalar or an ndarray.  Values straying beyond [-1, 1] by at
    most ``DOMAIN_TOL`` (floating-point dust) are clamped; anything worse
    raises a domain error.
    """
    xi = _validate_degree(xi)
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0 + DOMAIN_TOL):
        bad = np.asarray(arr)[np.abs(arr) > 1.0 + DOMAIN_TOL]
        raise ValueError(
            f"chebyshev_step domain error: |x| > 1 + {DOMAIN_TOL:g} (got {bad.flat[0]!r})"
        )
    arr = np.clip(arr, -1.0, 1.0)
    out = np.cos(xi * np.arccos(arr))
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def map_fixed_points(xi: int = 2) -> np.ndarray:
    """All fixed points of T_xi in [-1, 1].

    With x = cos(theta), T_xi(x) = x means xi*theta = +/-theta (mod 2*pi),
    so theta = 2*pi*m/(xi -+ 1) for the integers m that keep theta in
    [0, pi].
    """
    xi = _validate_degree(xi)
    thetas = set()
    for denom in (xi - 1, xi + 1):
        m = 0
        while 2.0 * math.pi * m / denom <= math.pi + 1e-15:
            thetas.add(2.0 * math.pi * m / denom)
            m += 1
    return np.unique(np.cos(sorted(thetas)))


def _validate_seed_state(x0: float, xi: int) -> float:
    x0 = float(x0)
    if not -1.0 < x0 < 1.0:
        raise ValueError(f"x0 must lie strictly inside (-1, 1), got {x0!r}")
    if x0 == 0.0:
        raise ValueError("x0 = 0 is degenerate: the orbit falls onto a fixed point")
    fps = map_fixed_points(xi)
    if np.min(np.abs(fps - x0)) < FIXED_POINT_TOL:
        raise ValueError(
            f"x0 = {x0!r} is within {FIXED_POINT_TOL:g} of a fixed point of the "
            f"degree-{xi} map; the orbit would not mix"
        )
    return x0


def generate_sequence(x0: float, n: int, xi: int = 2) -> ChaoticSequence:
    """Iterate the map ``n`` times; the returned orbit starts at ``x0``.

    Deterministic: the same (x0, n, xi) always yields the bit-identical
    orbit.  Degenerate seeds (0, +/-1, or anything within FIXED_POINT_TOL
    of a fixed point) are rejected.
    """
    xi = _validate_degree(xi)
    if n <= 0:
        raise ValueError(f"sequence length must be a positive integer, got {n}")
    x0 = _validate_seed_state(x0, xi)
    out = np.empty(int(n))
    x = x0
    acos, cos = math.acos, math.cos
    for i in range(int(n)):
        out[i] = x
        x = cos(xi * acos(x))
    return ChaoticSequence(samples=out, map_degree=xi, seed_state=x0)


def invariant_pdf(x) -> float | np.ndarray:
    """Stationary density of the map: 1/(pi*sqrt(1-x^2)) inside (-1, 1), 0 outside."""
    arr = np.asarray(x, dtype=float)
    out = np.zeros_like(arr)
    inside = np.abs(arr) < 1.0
    out[inside] = 1.0 / (np.pi * np.sqrt(1.0 - arr[inside] ** 2))
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def theoretical_moment(order: int) -> float:
    """Even moments of the stationary density: E[x^2] = 1/2, E[x^4] = 3/8."""
    if order == 2:
        return 0.5
    if order == 4:
        return 0.375
    raise ValueError(f"only moment orders 2 and 4 are tabulated, got {order}")


def draw_initial_state(rng: np.random.Generator, size: int | None = None):
    """Seed state(s) drawn from the stationary density via x = cos(pi*U).

    U = 0 would land exactly on x = 1 (a fixed point), so it is redrawn.
    """
    if size is None:
        u = rng.random()
        while u == 0.0:
            u = rng.random()
        return float(np.cos(np.pi * u))
    u = rng.random(size)
    bad = u == 0.0
    while np.any(bad):
        u[bad] = rng.random(int(bad.sum()))
        bad = u == 0.0
    return np.cos(np.pi * u)


def frame_chip_source(rng: np.random.Generator, xi: int = 2):
    """Callable ``n -> n chips`` starting a fresh orbit on every call.

    Each call draws its own seed state from the stationary density, so
    successive frames are statistically independent of each other while
    chips inside a frame remain one contiguous orbit.
    """
    xi = _validate_degree(xi)
    fps = map_fixed_points(xi)

    def draw(n: int) -> np.ndarray:
        # The arcsine density piles mass near +/-1, so a fresh draw lands
        # inside the rejection band around a fixed point every ~1e5 frames;
        # redraw rather than error.
        x0 = draw_initial_state(rng)
        while x0 == 0.0 or np.min(np.abs(fps - x0)) < FIXED_POINT_TOL:
            x0 = draw_initial_state(rng)
        return generate_sequence(x0, n, xi).samples

    return draw
