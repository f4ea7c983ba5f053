"""Interpolation exponents, Holder budgets and empirical absorption probes.

The exponent ladder p_r = 2(m+1)/(r+1) interpolates between the power
energy (r = 0, p = 2m+2) and the difference energy (r = m, p = 2).  For a
degree-2k monomial whose difference orders sum to m+1-k the reciprocal
exponents add up to (m+1+k)/(2(m+1)) < 1, which is the strict-subcriticality
margin that lets Young's inequality absorb the term with an arbitrarily
small epsilon.  Those facts are exact rational arithmetic and are tested as
such; the interpolation constant itself is existential, so the probes here
only record empirical maxima over declared families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .normal_form import NormalFormMonomial, evaluate
from .sequences import VerblunskySequence, difference_array, lp_norm, lukic_partial_sums


@dataclass(frozen=True)
class GNExponent:
    """Interpolation exponent p_r = 2(m+1)/(r+1) for the r-th difference."""

    m: int
    r: int
    p_r: Fraction


@dataclass(frozen=True)
class HolderBudget:
    """Reciprocal-exponent sum of a degree-2k monomial's factors."""

    m: int
    k: int
    orders: tuple  # (a_1..a_k, b_1..b_k), length 2k
    exponent_sum: Fraction

    @property
    def subcritical(self) -> bool:
        return self.exponent_sum < 1

    @property
    def critical_count_met(self) -> bool:
        return sum(self.orders) >= self.m + 1 - self.k


def gn_exponent(m: int, r: int) -> GNExponent:
    if not 0 <= r <= m:
        raise ValueError(f"r = {r} out of range 0..{m}")
    return GNExponent(m=m, r=r, p_r=Fraction(2 * (m + 1), r + 1))


def holder_budget(m: int, k: int, orders) -> HolderBudget:
    """Exact exponent budget sum 1/p_{a_nu} + sum 1/p_{b_mu}.

    Each reciprocal is (order+1)/(2(m+1)), so for total order m+1-k the sum
    is (m+1+k)/(2(m+1)), strictly below 1 for 2 <= k <= m.
    """
    if not 2 <= k <= m:
        raise ValueError(f"need 2 <= k <= m, got k={k}, m={m}")
    orders = tuple(int(o) for o in orders)
    if len(orders) != 2 * k:
        raise ValueError(f"need 2k = {2 * k} orders")
    if any(o < 0 for o in orders):
        raise ValueError("orders must be nonnegative")
    total = Fraction(sum(o + 1 for o in orders), 2 * (m + 1))
    return HolderBudget(m=m, k=k, orders=orders, exponent_sum=total)


def gn_ratio_probe(
    seq, m: int, r: int, N: int, regularize: bool = True
) -> float:
    """||Delta^r a||_{p_r} over [0, N] against the interpolation product.

    Returns the ratio to A^{r/m} B^{1-r/m} (+1 when regularize is on), with
    A, B the two energy roots over [0, N+m].  Scale-invariant exactly once
    the regularizer is off.  Used to probe the interpolation constant
    empirically; no bound is asserted.
    """
    if not 0 < r < m:
        raise ValueError("need 0 < r < m")
    if not isinstance(seq, VerblunskySequence):
        seq = VerblunskySequence(tuple(seq))
    if all(v == 0 for v in seq.values):
        raise ValueError("probe needs a nonzero sequence")
    p_r = float(gn_exponent(m, r).p_r)
    diffs = difference_array(seq, r, N)
    num = lp_norm(diffs, p_r)
    L = m  # max difference order; the probe has no shifts
    report = lukic_partial_sums(seq, m, N + L)
    A = report.diff_energy ** 0.5
    B = report.power_energy ** (1.0 / (2 * m + 2))
    denom = A ** (r / m) * B ** (1.0 - r / m)
    if regularize:
        denom += 1.0
    elif denom == 0.0:
        raise ZeroDivisionError("both energies vanish; disable only with nonzero energies")
    return num / denom


def shift_allowance(monomial: NormalFormMonomial) -> int:
    """Max shift plus max difference order; bounds the index overhang."""
    factors = monomial.holo_factors + monomial.anti_factors
    return max(abs(s) for _, s in factors) + max(a for a, _ in factors)


def monomial_sum(monomial: NormalFormMonomial, seq, N: int) -> float:
    """|sum_{n=0}^{N} M_n| for a float sequence."""
    mono = monomial.as_float()
    total = 0j
    for n in range(N + 1):
        total += evaluate(mono, seq, n)
    return abs(total)


def _check_critical(monomial: NormalFormMonomial, m: int):
    k = monomial.k
    if not 2 <= k <= m:
        raise ValueError(f"monomial degree 2k = {2 * k} needs 2 <= k <= m = {m}")
    need = m + 1 - k
    if monomial.difference_count < need:
        raise ValueError(
            f"difference count {monomial.difference_count} below the critical "
            f"count {need}; the absorption inequality is not claimed there"
        )


@dataclass(frozen=True)
class AbsorptionProbe:
    lhs: float
    rhs: float
    passed: bool
    constant: float
    epsilon: float
    N: int


def fit_absorption_constant(
    monomial: NormalFormMonomial, seq, m: int, epsilon: float, n_values: Iterable[int]
) -> float:
    """Empirical constant: max deficit of |sum M_n| against eps * energies.

    Fitted over the declared family of volumes and floored at zero; store it
    next to the family descriptor for reproducibility.
    """
    _check_critical(monomial, m)
    L = shift_allowance(monomial)
    worst = 0.0
    for N in n_values:
        lhs = monomial_sum(monomial, seq, N)
        rep = lukic_partial_sums(seq, m, N + L)
        worst = max(worst, lhs - epsilon * (rep.diff_energy + rep.power_energy))
    return worst


def absorption_inequality_probe(
    monomial: NormalFormMonomial,
    seq,
    m: int,
    N: int,
    epsilon: float,
    constant: float,
) -> AbsorptionProbe:
    """Check |sum_{n<=N} M_n| <= eps * (diff + power energies over [0, N+L]) + C.

    Rejects monomials below the critical difference count m+1-k.  C is the
    empirically fitted constant for this (epsilon, m) and family; the
    inequality itself is existential, so pass/fail is a probe, not a theorem
    check.
    """
    _check_critical(monomial, m)
    L = shift_allowance(monomial)
    lhs = monomial_sum(monomial, seq, N)
    rep = lukic_partial_sums(seq, m, N + L)
    rhs = epsilon * (rep.diff_energy + rep.power_energy) + constant
    return AbsorptionProbe(
        lhs=lhs, rhs=rhs, passed=lhs <= rhs, constant=constant, epsilon=epsilon, N=N
    )


def scaling_relation_residual(m: int, r: int) -> Fraction:
    """Exact residual of the exponent scaling relation; zero when it holds.

    r - 1/p_r = (r/m)(m - 1/2) - (1 - r/m)/(2m+2), checked over Q.
    """
    p = gn_exponent(m, r).p_r
    lhs = Fraction(r) - Fraction(1) / p
    rhs = Fraction(r, m) * (Fraction(m) - Fraction(1, 2)) - (
        1 - Fraction(r, m)
    ) * Fraction(1, 2 * m + 2)
    return lhs - rhs


def young_subcriticality(m: int, k: int) -> Fraction:
    """Exact Young exponent (sigma/m)/2 + (2k - sigma/m)/(2m+2) at sigma = m+1-k.

    Equals (m+1+k)/(2(m+1)), strictly below 1 for all 2 <= k <= m.
    """
    if not 2 <= k <= m:
        raise ValueError("need 2 <= k <= m")
    sigma = Fraction(m + 1 - k)
    value = (sigma / m) / 2 + (2 * k - sigma / m) / (2 * m + 2)
    return value
