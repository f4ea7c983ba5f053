"""Difference normal forms: monomials of shifted finite differences.

A normal-form monomial of degree 2k is

    coeff * prod_nu (Delta^{a_nu} a)_{n+l_nu} * prod_mu (Delta^{b_mu} conj(a))_{n+r_mu},

the atom into which every diagonal-ideal expansion converts.  The module
carries a dual numeric representation with one API: exact Gaussian-rational
coefficients over exact sequences (the test oracle) and complex floats over
float sequences (the experiment engine).

Also here: the discrete Leibniz expansion of Delta^q over a product, the
discrete summation-by-parts identity, and explicit telescoping bookkeeping,
so that every finite-volume O(1) claim in the calculus is an endpoint
identity that can be checked, not an error bound taken on faith.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .rationals import GaussianRational
from .sequences import forward_difference
from .shift_algebra import (
    IdealDecomposition,
    ShiftPolynomial,
    coefficient_map,
    ideal_power_decompose,
    _is_exact_sequence,
)


class MembershipError(ValueError):
    """The polynomial failed the ideal-power membership it was declared to satisfy."""


@dataclass(frozen=True)
class NormalFormMonomial:
    """Product of shifted finite differences of a and conj(a) with a coefficient."""

    k: int
    holo_factors: tuple  # ((difference order, shift), ...) of length k
    anti_factors: tuple  # ((difference order, shift), ...) of length k
    coeff: object = 1  # complex or GaussianRational

    def __post_init__(self):
        holo = tuple((int(a), int(s)) for a, s in self.holo_factors)
        anti = tuple((int(b), int(s)) for b, s in self.anti_factors)
        if len(holo) != self.k or len(anti) != self.k:
            raise ValueError("factor lists must both have length k")
        if any(a < 0 for a, _ in holo + anti):
            raise ValueError("difference orders must be >= 0")
        object.__setattr__(self, "holo_factors", holo)
        object.__setattr__(self, "anti_factors", anti)

    @property
    def difference_count(self) -> int:
        return sum(a for a, _ in self.holo_factors) + sum(b for b, _ in self.anti_factors)

    @property
    def shift_radius(self) -> int:
        spans = [abs(s) + a for a, s in self.holo_factors + self.anti_factors]
        return max(spans) if spans else 0

    def as_float(self) -> "NormalFormMonomial":
        c = self.coeff
        if isinstance(c, GaussianRational):
            c = c.to_complex()
        return NormalFormMonomial(self.k, self.holo_factors, self.anti_factors, complex(c))

    def to_json(self) -> str:
        c = self.coeff
        if isinstance(c, GaussianRational):
            coeff = {"re": str(c.re), "im": str(c.im)}
        else:
            c = complex(c)
            coeff = {"re": c.real, "im": c.imag}
        return json.dumps(
            {
                "k": self.k,
                "holo_factors": [list(f) for f in self.holo_factors],
                "anti_factors": [list(f) for f in self.anti_factors],
                "coeff": coeff,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "NormalFormMonomial":
        obj = json.loads(text)
        raw = obj["coeff"]
        if isinstance(raw["re"], str):
            coeff = GaussianRational(Fraction(raw["re"]), Fraction(raw["im"]))
        else:
            coeff = complex(raw["re"], raw["im"])
        return cls(
            obj["k"],
            tuple(tuple(f) for f in obj["holo_factors"]),
            tuple(tuple(f) for f in obj["anti_factors"]),
            coeff,
        )


def from_ideal_expansion(decomposition: IdealDecomposition) -> list[NormalFormMonomial]:
    """Convert an ideal-power expansion into normal-form monomials.

    Each term coeff * prod v^shift * prod (v-1)^order maps factor by factor
    through (x-1)^a P^i acting on a as (Delta^a a)_{n+i}; by construction
    every output has difference count >= the order of the decomposition.
    """
    if not decomposition.member:
        raise MembershipError(
            f"not a member of the ideal power {decomposition.order}; "
            f"witness moment {decomposition.witness.exponents}"
        )
    k = decomposition.k
    monomials = []
    for term in decomposition.terms:
        holo = tuple(
            (term.gen_orders[slot], term.shifts[slot]) for slot in range(k)
        )
        anti = tuple(
            (term.gen_orders[k + slot], term.shifts[k + slot]) for slot in range(k)
        )
        monomials.append(NormalFormMonomial(k, holo, anti, term.coeff))
    return monomials


def evaluate(monomial: NormalFormMonomial, seq, n: int):
    """coeff * prod (Delta^a a)_{n+l} * prod (Delta^b conj(a))_{n+r}.

    Exact over exact sequences; complex over float sequences.  Conjugation
    commutes with the real-coefficient differences, so the antiholomorphic
    factors are conjugated after differencing.
    """
    exact = _is_exact_sequence(seq)
    coeff = monomial.coeff
    if exact:
        prod = coeff if isinstance(coeff, GaussianRational) else GaussianRational.coerce(coeff)
        for a, shift in monomial.holo_factors:
            d = GaussianRational.coerce(forward_difference(seq, a, n + shift))
            prod = prod * d
        for b, shift in monomial.anti_factors:
            d = GaussianRational.coerce(forward_difference(seq, b, n + shift))
            prod = prod * d.conjugate()
        return prod
    if isinstance(coeff, GaussianRational):
        coeff = coeff.to_complex()
    prod = complex(coeff)
    for a, shift in monomial.holo_factors:
        prod *= complex(forward_difference(seq, a, n + shift))
    for b, shift in monomial.anti_factors:
        prod *= complex(forward_difference(seq, b, n + shift)).conjugate()
    return prod


def pointwise_equality_check(P: ShiftPolynomial, q: int, seq, window) -> float:
    """Max |coefficient_map(P) - sum of normal-form evaluations| over the window.

    Exactly 0.0 in the rational representation; propagates the membership
    failure if P is not in the declared ideal power.
    """
    decomposition = ideal_power_decompose(P, q)
    monomials = from_ideal_expansion(decomposition)
    if isinstance(window, tuple) and len(window) == 2:
        window = range(window[0], window[1] + 1)
    worst = 0.0
    for n in window:
        lhs = coefficient_map(P, seq, n)
        rhs = None
        for mono in monomials:
            val = evaluate(mono, seq, n)
            rhs = val if rhs is None else rhs + val
        if rhs is None:
            rhs = 0
        dev = lhs - rhs
        if isinstance(dev, GaussianRational):
            dev = dev.to_complex()
        worst = max(worst, abs(complex(dev)))
    return worst


@dataclass(frozen=True)
class LeibnizTerm:
    """One branch of the expansion of Delta^q over a product of s factors."""

    orders: tuple
    shifts: tuple
    coeff: int = 1


def leibniz_expand(q: int, s: int) -> list[LeibnizTerm]:
    """Expand Delta^q over an abstract product of s factors.

    Iterates Delta(F_1...F_s) = sum_i F_1...(Delta F_i)(P F_{i+1})...(P F_s);
    every branch keeps coefficient 1 and the difference orders of each term
    sum to exactly q.  Branches are not merged, so the term count is s^q.
    """
    if q < 0 or s < 1:
        raise ValueError("need q >= 0 and s >= 1")
    terms = [LeibnizTerm(tuple([0] * s), tuple([0] * s), 1)]
    for _ in range(q):
        nxt = []
        for t in terms:
            for i in range(s):
                orders = list(t.orders)
                shifts = list(t.shifts)
                orders[i] += 1
                for j in range(i + 1, s):
                    shifts[j] += 1
                nxt.append(LeibnizTerm(tuple(orders), tuple(shifts), t.coeff))
        terms = nxt
    return terms


def _fetch(F, n: int):
    if callable(F):
        return F(n)
    return F[n]


def summation_by_parts(F, G, N: int):
    """Discrete summation by parts over [0, N].

    Returns (lhs, rhs, boundary) with
        lhs      = sum (Delta F)_n G_n,
        rhs      = -sum F_{n+1} (Delta G)_n,
        boundary = F_{N+1} G_{N+1} - F_0 G_0,
    and the identity lhs = rhs + boundary.  F and G may be sequences or
    callables, evaluable on [0, N+1].
    """
    lhs = 0
    rhs = 0
    for n in range(N + 1):
        fn = _fetch(F, n)
        fn1 = _fetch(F, n + 1)
        gn = _fetch(G, n)
        gn1 = _fetch(G, n + 1)
        lhs = lhs + (fn1 - fn) * gn
        rhs = rhs - fn1 * (gn1 - gn)
    boundary = _fetch(F, N + 1) * _fetch(G, N + 1) - _fetch(F, 0) * _fetch(G, 0)
    return lhs, rhs, boundary


@dataclass(frozen=True)
class TelescopeTerm:
    """The telescoping expression (P-1)B_n for a normal-form body B.

    Its finite-volume sum over [0, N] is exactly B_{N+1} - B_0, which is the
    testable form of every bounded-telescoping claim.
    """

    body: tuple  # tuple of NormalFormMonomial

    def body_value(self, seq, n: int):
        total = None
        for mono in self.body:
            val = evaluate(mono, seq, n)
            total = val if total is None else total + val
        return 0 if total is None else total


def telescope_sum(term: TelescopeTerm, seq, N: int, check: bool = True, rtol: float = 1e-12):
    """Endpoint value B_{N+1} - B_0 of the finite sum of (P-1)B_n over [0, N].

    When check is set, the naive accumulation of B_{n+1} - B_n is compared
    against the endpoint formula and a mismatch beyond rtol raises.
    """
    b_end = term.body_value(seq, N + 1)
    b_start = term.body_value(seq, 0)
    value = b_end - b_start
    if check:
        naive = 0
        for n in range(N + 1):
            naive = naive + (term.body_value(seq, n + 1) - term.body_value(seq, n))
        dev = value - naive
        if isinstance(dev, GaussianRational):
            dev = dev.to_complex()
        scale = max(1.0, abs(complex(value) if not isinstance(value, GaussianRational) else value.to_complex()))
        if abs(complex(dev)) > rtol * scale:
            raise ArithmeticError(
                f"telescoping cross-check failed: endpoint {value} vs naive {naive}"
            )
    return value
