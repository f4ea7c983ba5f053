"""Measure <-> coefficient transforms and the weighted log functional.

A measure enters either as a Bernstein-Szego prefix (finite Verblunsky
sequence, zero continuation) or as strictly positive weight samples on a
uniform theta grid.  The weighted Szego functional

    K_m = integral (1 - cos theta)^m log(1/w(theta)) dtheta / (2 pi)

is evaluated by composite trapezoid quadrature on that grid, which for
smooth periodic integrands is spectrally accurate.  All Bernstein-Szego
evaluations run in log space so that long non-square-summable prefixes
cannot overflow the recursion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import log_phistar_abs
from .sequences import VerblunskySequence

DEFAULT_GRID = 4096


class WeightPositivityError(ValueError):
    """A weight sample was nonpositive (log would be infinite)."""


class MomentPositivityError(ValueError):
    """Moment data lost positive definiteness during the Levinson recursion."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class MeasureSpec:
    """Absolutely continuous circle measure, by prefix or by weight samples."""

    kind: str  # "bernstein_szego" | "sampled"
    prefix: VerblunskySequence | None = None
    weights: tuple = ()

    @classmethod
    def bernstein_szego(cls, prefix) -> "MeasureSpec":
        if not isinstance(prefix, VerblunskySequence):
            prefix = VerblunskySequence(tuple(prefix))
        return cls(kind="bernstein_szego", prefix=prefix)

    @classmethod
    def sampled(cls, weights) -> "MeasureSpec":
        w = tuple(float(x) for x in weights)
        if any(not (x > 0.0) for x in w):
            raise WeightPositivityError("sampled weights must be strictly positive")
        return cls(kind="sampled", weights=w)

    def to_json(self) -> str:
        if self.kind == "bernstein_szego":
            return json.dumps(
                {
                    "kind": "bernstein_szego",
                    "alphas": [[v.real, v.imag] for v in self.prefix.values],
                }
            )
        return json.dumps(
            {"kind": "sampled", "weights": list(self.weights), "grid": len(self.weights)}
        )

    @classmethod
    def from_json(cls, text: str) -> "MeasureSpec":
        obj = json.loads(text)
        if obj["kind"] == "bernstein_szego":
            return cls.bernstein_szego([complex(re, im) for re, im in obj["alphas"]])
        if obj["kind"] == "sampled":
            w = obj["weights"]
            if "grid" in obj and obj["grid"] != len(w):
                raise ValueError("sampled grid field disagrees with weight count")
            return cls.sampled(w)
        raise ValueError(f"unknown measure kind {obj.get('kind')!r}")


@dataclass(frozen=True)
class SzegoFunctionalValue:
    m: int
    value: float
    grid_size: int
    convention: str = "K = integral (1-cos theta)^m log(1/w) dtheta/2pi"


def theta_grid(grid_size: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(grid_size) / grid_size


def szego_recursion_polynomials(prefix, z: complex) -> tuple[complex, complex]:
    """(phi_N(z), phi*_N(z)) after running the recursion through the prefix.

    phi_0 = phi*_0 = 1, phi_{n+1} = z phi_n - conj(a_n) phi*_n,
    phi*_{n+1} = phi*_n - a_n z phi_n.  z must sit on the unit circle.
    """
    z = complex(z)
    if abs(abs(z) - 1.0) > 1e-12:
        raise ValueError(f"|z| = {abs(z)} is off the unit circle beyond 1e-12")
    if not isinstance(prefix, VerblunskySequence):
        prefix = VerblunskySequence(tuple(prefix))
    phi = 1.0 + 0j
    phistar = 1.0 + 0j
    for a in prefix.values:
        phi, phistar = z * phi - a.conjugate() * phistar, phistar - a * z * phi
    return phi, phistar


def _log_weight(prefix: VerblunskySequence, grid_size: int) -> np.ndarray:
    """log w on the uniform grid, computed entirely in log space."""
    mods2 = np.abs(np.asarray(prefix.values, dtype=np.complex128)) ** 2
    log_prefactor = float(np.sum(np.log1p(-mods2)))
    z = np.exp(1j * theta_grid(grid_size))
    logps = log_phistar_abs(np.asarray(prefix.values, dtype=np.complex128), z)
    return log_prefactor - 2.0 * logps


def bernstein_szego_weight(prefix, grid_size: int = DEFAULT_GRID) -> np.ndarray:
    """Weight samples w(theta_g) = prod(1-|a_j|^2) / |phi*_N(e^{i theta_g})|^2.

    Raises if the samples underflow to zero; use szego_functional for long
    prefixes, it never leaves log space.
    """
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    if not isinstance(prefix, VerblunskySequence):
        prefix = VerblunskySequence(tuple(prefix))
    with np.errstate(under="ignore", over="ignore"):
        w = np.exp(_log_weight(prefix, grid_size))
    if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
        raise WeightPositivityError(
            "weight under/overflowed float64; evaluate in log space instead"
        )
    return w


def trig_moments(measure: MeasureSpec, kmax: int, grid_size: int = DEFAULT_GRID) -> np.ndarray:
    """Trigonometric moments c_k = integral e^{-ik theta} dmu for k = 0..kmax."""
    if measure.kind == "bernstein_szego":
        w = bernstein_szego_weight(measure.prefix, grid_size)
    else:
        w = np.asarray(measure.weights, dtype=np.float64)
    G = len(w)
    if kmax >= G // 2:
        raise ValueError("kmax must stay below half the grid size")
    return np.fft.fft(w)[: kmax + 1] / G


def verblunsky_from_moments(moments) -> VerblunskySequence:
    """Recover alpha_0..alpha_{K-1} from moments c_0..c_K by a Levinson-type recursion.

    Maintains the monic orthogonal polynomial Phi_n and its reversal in
    coefficient form; the next coefficient is conj(<z Phi_n, 1>) / ||Phi_n||^2.
    Signals loss of positive definiteness (|alpha| >= 1 or nonpositive norm)
    with the offending index.
    """
    c = np.asarray(moments, dtype=np.complex128)
    if len(c) < 1:
        raise ValueError("need at least c_0")
    if abs(c[0] - 1.0) > 1e-3:
        raise ValueError(f"c_0 = {c[0]} is not 1 (probability measure required)")
    c = c / c[0]  # absorb quadrature error in the mass
    K = len(c) - 1

    phi = np.zeros(K + 1, dtype=np.complex128)
    phi[0] = 1.0  # coefficients of Phi_n, ascending powers
    e = 1.0  # ||Phi_n||^2
    alphas = []
    for n in range(K):
        # <z Phi_n, 1> = sum_j phi_j conj(c_{j+1})
        inner = complex(np.dot(phi[: n + 1], np.conjugate(c[1 : n + 2])))
        if e <= 0.0:
            raise MomentPositivityError(n, f"nonpositive norm {e} at step {n}")
        alpha = (inner / e).conjugate()
        if abs(alpha) >= 1.0:
            raise MomentPositivityError(
                n, f"|alpha_{n}| = {abs(alpha)} >= 1: moments not positive definite"
            )
        # Phi*_n coefficients are the conjugate reversal of Phi_n
        phistar = np.conjugate(phi[: n + 1][::-1])
        new_phi = np.zeros(K + 1, dtype=np.complex128)
        new_phi[1 : n + 2] = phi[: n + 1]  # z * Phi_n
        new_phi[: n + 1] -= alpha.conjugate() * phistar
        phi = new_phi
        e *= 1.0 - abs(alpha) ** 2
        alphas.append(alpha)
    return VerblunskySequence(tuple(alphas))


def szego_functional(
    measure: MeasureSpec, m: int, grid_size: int = DEFAULT_GRID
) -> SzegoFunctionalValue:
    """Trapezoid value of integral (1-cos theta)^m log(1/w) dtheta/2pi.

    On a uniform periodic grid the composite trapezoid rule is the plain mean
    of the samples.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if measure.kind == "bernstein_szego":
        log_inv_w = -_log_weight(measure.prefix, grid_size)
        G = grid_size
    else:
        w = np.asarray(measure.weights, dtype=np.float64)
        if np.any(w <= 0.0):
            raise WeightPositivityError("nonpositive weight sample")
        log_inv_w = -np.log(w)
        G = len(w)
    weight_factor = (1.0 - np.cos(theta_grid(G))) ** m
    value = float(np.mean(weight_factor * log_inv_w))
    return SzegoFunctionalValue(m=m, value=value, grid_size=G)


def szego_functional_taylor(prefix, m: int) -> float:
    """Exact series evaluation of the functional for a Bernstein-Szego measure.

    Pairs the Fourier expansion of (1-cos theta)^m with the Fourier expansion
    of log(1/w), whose positive-frequency coefficients are the Taylor
    coefficients of log phi*_N.  Only coefficients up to degree m are needed,
    so the cost is O(N m).  Serves as the quadrature-free oracle.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if not isinstance(prefix, VerblunskySequence):
        prefix = VerblunskySequence(tuple(prefix))
    mods2 = np.abs(np.asarray(prefix.values, dtype=np.complex128)) ** 2
    g0 = -float(np.sum(np.log1p(-mods2)))

    # phi and phi* coefficient windows, degrees 0..m (truncation is exact:
    # the recursion never moves high coefficients downward)
    ph = np.zeros(m + 1, dtype=np.complex128)
    ps = np.zeros(m + 1, dtype=np.complex128)
    ph[0] = 1.0
    ps[0] = 1.0
    shifted = np.zeros(m + 1, dtype=np.complex128)
    for a in prefix.values:
        shifted[0] = 0.0
        shifted[1:] = ph[:-1]
        ph = shifted - a.conjugate() * ps
        ps = ps - a * shifted
        shifted = np.zeros(m + 1, dtype=np.complex128)

    # t = log(ps) as a power series: l*p_l = sum_j j t_j p_{l-j}
    t = np.zeros(m + 1, dtype=np.complex128)
    for ell in range(1, m + 1):
        acc = ps[ell]
        for j in range(1, ell):
            acc -= (j / ell) * t[j] * ps[ell - j]
        t[ell] = acc

    value = hm_coefficient(m, 0) * g0
    for ell in range(1, m + 1):
        value += 2.0 * hm_coefficient(m, ell) * t[ell].real
    return float(value)


def hm_coefficient(m: int, ell: int) -> float:
    """Fourier coefficient of (1-cos theta)^m at frequency ell, as a float.

    Closed form (-1)^ell 2^-m C(2m, m+ell); the exact symbolic version lives
    in the sum-rule module.
    """
    if abs(ell) > m:
        return 0.0
    sign = -1.0 if ell % 2 else 1.0
    return sign * math.comb(2 * m, m + abs(ell)) / 2.0**m
