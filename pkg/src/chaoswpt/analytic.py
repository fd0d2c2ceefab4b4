"""Closed-form companions to the Monte-Carlo chain.

Harvested-DC predictions for the two receiver settings, the PAPR suprema,
the spreading-factor crossover bound, and the six reference distributions
that the end-to-end sampler is validated against.

Every density here is exact for single-chip symbols (beta = 1); the
correlated-output family for beta > 1 ("S_clt") rests on a Gaussian
approximation of the chip sum, and its moments inherit that approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import erf

from .channel import path_gain
from .harvester import EhCircuit, rho_params

__all__ = [
    "ClosedFormInputs",
    "closed_form_inputs",
    "papr_analytic",
    "z_with_correlator",
    "z_without_correlator",
    "beta_crossover",
    "PdfOracle",
    "make_oracle",
    "pdf_eval",
    "oracle_cdf",
    "oracle_normalization",
    "oracle_moment",
    "FAMILIES",
]

# Families of reference distributions, all for Rayleigh-faded DCSK symbols
# with unit lumped scaling:
#   S_b1     amplitude of the full-symbol correlator output, beta = 1
#   Z_b1     its square (the second-order rectifier drive), beta = 1
#   P_b1     its fourth power (the fourth-order rectifier drive), beta = 1
#   S_clt    correlator-output amplitude for beta > 1, Gaussian chip-sum model
#   Delta_b1 per-symbol sum of squared chips through the fading power, beta = 1
#   Theta_b1 per-symbol sum of fourth-power chips through the squared fading
#            power, beta = 1
FAMILIES = ("S_b1", "Z_b1", "P_b1", "S_clt", "Delta_b1", "Theta_b1")

_TWO_SIDED = ("S_b1", "S_clt")
#: families whose density blows up at the origin (power-law endpoint)
_SINGULAR_AT_ZERO = ("Z_b1", "P_b1", "Delta_b1", "Theta_b1")
#: probability mass sitting exactly at zero (the data bit erases half of
#: all correlated symbols)
_ATOMS = {"S_b1": 0.5, "Z_b1": 0.5, "P_b1": 0.5, "S_clt": 0.5,
          "Delta_b1": 0.0, "Theta_b1": 0.0}


@dataclass(frozen=True)
class ClosedFormInputs:
    """Operating point for the harvested-DC closed forms."""

    beta: int
    r: float
    alpha: float
    rho1: float
    rho2: float

    def __post_init__(self) -> None:
        if self.beta < 1 or int(self.beta) != self.beta:
            raise ValueError(f"beta must be a positive integer, got {self.beta}")
        if self.r <= 0:
            raise ValueError(f"distance must be > 0, got {self.r}")
        if self.alpha <= 0:
            raise ValueError(f"path-loss exponent must be > 0, got {self.alpha}")
        if self.rho1 <= 0:
            raise ValueError(f"rho1 must be > 0, got {self.rho1}")
        if self.rho2 < 0:
            raise ValueError(f"rho2 must be >= 0, got {self.rho2}")


def closed_form_inputs(circuit: EhCircuit, beta: int, r: float, alpha: float) -> ClosedFormInputs:
    rho1, rho2 = rho_params(circuit)
    return ClosedFormInputs(beta=int(beta), r=float(r), alpha=float(alpha),
                            rho1=rho1, rho2=rho2)


def papr_analytic(psi_mode: str, beta: int) -> float:
    """Supremum of the peak-to-average power ratio at the harvester input.

    'bypass' streams peak at twice their average chip power regardless of
    beta; 'full' integration concentrates a whole symbol into one value and
    peaks at 4*beta times the average.  Both are suprema over symbol
    realizations with the fading gain cancelled (it scales peak and average
    alike within a symbol).
    """
    if beta < 1 or int(beta) != beta:
        raise ValueError(f"beta must be a positive integer, got {beta}")
    if psi_mode == "bypass":
        return 2.0
    if psi_mode == "full":
        return 4.0 * int(beta)
    raise ValueError(f"psi_mode must be 'bypass' or 'full', got {psi_mode!r}")


def z_with_correlator(inputs: ClosedFormInputs) -> float:
    """Harvested DC with full-symbol integration ahead of the rectifier.

    beta = 1 is exact; beta > 1 uses the Gaussian chip-sum model and is
    intentionally NOT continuous with the beta = 1 value (the two derivations
    disagree at beta = 1 by design, so no interpolation is attempted).
    """
    g = path_gain(inputs.r, inputs.alpha)
    if inputs.beta == 1:
        return g * inputs.rho1 + 6.0 * g * g * inputs.rho2
    b = float(inputs.beta)
    return g * inputs.rho1 * b + 12.0 * g * g * inputs.rho2 * b * b


def z_without_correlator(inputs: ClosedFormInputs) -> float:
    """Harvested DC for the raw chip stream (no integration), any beta."""
    g = path_gain(inputs.r, inputs.alpha)
    b = float(inputs.beta)
    return g * inputs.rho1 * b + 1.5 * g * g * inputs.rho2 * b


def beta_crossover(r_c: float, r_nc: float, alpha: float,
                   rho1: float, rho2: float) -> float:
    """Spreading factor above which the correlated link out-harvests the raw one.

    Solves z_with_correlator(beta, r_c) >= z_without_correlator(beta, r_nc)
    for the beta > 1 branch; the returned bound is real-valued and may fall
    below 1 (the correlated link then wins at every spreading factor).
    """
    for name, v in (("r_c", r_c), ("r_nc", r_nc), ("alpha", alpha),
                    ("rho1", rho1), ("rho2", rho2)):
        if v <= 0:
            raise ValueError(f"{name} must be > 0, got {v}")
    g_c = path_gain(r_c, alpha)
    g_nc = path_gain(r_nc, alpha)
    num = rho1 * (g_nc - g_c) + 1.5 * rho2 * g_nc * g_nc
    den = 12.0 * rho2 * g_c * g_c
    return num / den


# ---------------------------------------------------------------------------
# Reference distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PdfOracle:
    family: str
    beta: int | None = None
    atom_at_zero: float = 0.0
    support: tuple[float, float] = (-math.inf, math.inf)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.family == "S_clt":
            if self.beta is None or self.beta < 2:
                raise ValueError("S_clt needs an integer beta >= 2")
        elif self.beta not in (None, 1):
            raise ValueError(f"{self.family} is defined for beta = 1 only")
        if not 0.0 <= self.atom_at_zero < 1.0:
            raise ValueError(f"atom mass must lie in [0, 1), got {self.atom_at_zero}")
        if self.support[0] >= self.support[1]:
            raise ValueError(f"empty support {self.support}")


def make_oracle(family: str, beta: int | None = None) -> PdfOracle:
    """Oracle for one of the six reference families, atom and support filled in."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    support = (-math.inf, math.inf) if family in _TWO_SIDED else (0.0, math.inf)
    return PdfOracle(family=family, beta=beta, atom_at_zero=_ATOMS[family],
                     support=support)


def _density(oracle: PdfOracle, x: np.ndarray) -> np.ndarray:
    """Continuous part of the oracle density, vectorized, no domain checks."""
    f = oracle.family
    if f == "S_b1":
        return np.exp(-x * x / 4.0) / (4.0 * math.sqrt(math.pi))
    if f == "Z_b1":
        return np.exp(-x / 4.0) / (4.0 * np.sqrt(math.pi * x))
    if f == "P_b1":
        return np.exp(-np.sqrt(x) / 4.0) / (8.0 * math.sqrt(math.pi) * x ** 0.75)
    if f == "S_clt":
        sb = math.sqrt(oracle.beta)
        return np.exp(-np.abs(x) / sb) / (4.0 * sb)
    if f == "Delta_b1":
        return np.exp(-x / 2.0) / np.sqrt(2.0 * math.pi * x)
    if f == "Theta_b1":
        return np.exp(-np.sqrt(x / 2.0)) / (2.0 ** 1.25 * math.sqrt(math.pi) * x ** 0.75)
    raise AssertionError(f)


def pdf_eval(oracle: PdfOracle, point: float) -> float:
    """Continuous density at a point; 0 outside the support.

    The one-sided families diverge at the origin, so evaluating them at
    exactly 0 is refused rather than returning inf.
    """
    point = float(point)
    if oracle.family in _SINGULAR_AT_ZERO:
        if point == 0.0:
            raise ValueError(
                f"{oracle.family} has an integrable singularity at 0; "
                "the density is unbounded there"
            )
        if point < 0.0:
            return 0.0
    return float(_density(oracle, np.asarray(point, dtype=float)))


def oracle_cdf(oracle: PdfOracle, x) -> np.ndarray | float:
    """Full CDF, including any probability mass at zero (vectorized)."""
    arr = np.asarray(x, dtype=float)
    f = oracle.family
    if f == "S_b1":
        out = (1.0 + erf(arr / 2.0)) / 4.0 + 0.5 * (arr >= 0.0)
    elif f == "S_clt":
        sb = math.sqrt(oracle.beta)
        out = np.where(arr < 0.0,
                       0.25 * np.exp(np.minimum(arr, 0.0) / sb),
                       1.0 - 0.25 * np.exp(-np.maximum(arr, 0.0) / sb))
    elif f == "Z_b1":
        pos = np.maximum(arr, 0.0)
        out = np.where(arr < 0.0, 0.0, 0.5 + 0.5 * erf(np.sqrt(pos) / 2.0))
    elif f == "P_b1":
        pos = np.maximum(arr, 0.0)
        out = np.where(arr < 0.0, 0.0, 0.5 + 0.5 * erf(pos ** 0.25 / 2.0))
    elif f == "Delta_b1":
        pos = np.maximum(arr, 0.0)
        out = np.where(arr < 0.0, 0.0, erf(np.sqrt(pos / 2.0)))
    elif f == "Theta_b1":
        pos = np.maximum(arr, 0.0)
        out = np.where(arr < 0.0, 0.0, erf((pos / 2.0) ** 0.25))
    else:
        raise AssertionError(f)
    if np.isscalar(x) or np.ndim(x) == 0:
        return float(out)
    return out


def _transformed_integrand(oracle: PdfOracle, order: int):
    """Smooth integrand on (0, inf) for E[X^order] of the continuous part.

    The one-sided densities carry power-law endpoint singularities; the
    substitutions x = u**2 (square-root kinds) and x = u**4 (three-quarter
    kinds) absorb them, leaving plain Gaussian-type kernels.
    """
    f = oracle.family
    if f == "Z_b1":
        c = 1.0 / (2.0 * math.sqrt(math.pi))
        return lambda u: c * u ** (2 * order) * math.exp(-u * u / 4.0)
    if f == "P_b1":
        c = 1.0 / (2.0 * math.sqrt(math.pi))
        return lambda u: c * u ** (4 * order) * math.exp(-u * u / 4.0)
    if f == "Delta_b1":
        c = math.sqrt(2.0 / math.pi)
        return lambda u: c * u ** (2 * order) * math.exp(-u * u / 2.0)
    if f == "Theta_b1":
        c = 2.0 ** 0.75 / math.sqrt(math.pi)
        return lambda u: c * u ** (4 * order) * math.exp(-u * u / math.sqrt(2.0))
    raise AssertionError(f)


_QUAD_OPTS = dict(epsabs=1e-12, epsrel=1e-11, limit=200)


def oracle_normalization(oracle: PdfOracle) -> float:
    """Adaptive-quadrature integral of the continuous part.

    Should come out to 1 - atom_at_zero; the verification suite checks this
    to within 1e-6 absolute.
    """
    if oracle.family in _TWO_SIDED:
        lo, _ = integrate.quad(lambda s: pdf_eval(oracle, s), -np.inf, 0.0, **_QUAD_OPTS)
        hi, _ = integrate.quad(lambda s: pdf_eval(oracle, s), 0.0, np.inf, **_QUAD_OPTS)
        return lo + hi
    g = _transformed_integrand(oracle, 0)
    val, _ = integrate.quad(g, 0.0, np.inf, **_QUAD_OPTS)
    return val


def oracle_moment(oracle: PdfOracle, order: int) -> float:
    """E[X^order] by adaptive quadrature (atom contributes nothing).

    Nonpositive orders are refused: the mass at zero (or the endpoint
    singularity) makes those expectations divergent or degenerate.
    """
    if int(order) != order or order < 1:
        raise ValueError(
            f"moment order must be a positive integer (order {order} diverges "
            "against the mass at the origin)"
        )
    order = int(order)
    if oracle.family in _TWO_SIDED:
        lo, _ = integrate.quad(lambda s: s ** order * pdf_eval(oracle, s),
                               -np.inf, 0.0, **_QUAD_OPTS)
        hi, _ = integrate.quad(lambda s: s ** order * pdf_eval(oracle, s),
                               0.0, np.inf, **_QUAD_OPTS)
        return lo + hi
    g = _transformed_integrand(oracle, order)
    val, _ = integrate.quad(g, 0.0, np.inf, **_QUAD_OPTS)
    return val
