"""Exact sparse Laurent algebra in the shift variables x_1..x_k, y_1..y_k.

A balanced degree-2k local expression in a sequence a and its conjugate is
encoded as a Laurent polynomial: the monomial x^i y^j stands for the local
product a_{n+i_1}...a_{n+i_k} * conj(a)_{n+j_1}...conj(a)_{n+j_mu}.  All
coefficients are Gaussian rationals; floating point never enters this
module, because ideal membership and moment cancellation are exact
statements.

The diagonal ideal is generated by x_nu - 1 and y_mu - 1.  Membership of P
in its q-th power is equivalent to the vanishing of every Euler moment of
total order below q, and is decided here by a deterministic divided
difference expansion around the all-ones point: negative exponents are
cleared per variable (the clearing monomial is a unit, so it cannot change
the vanishing order), the cleared polynomial is split variable by variable
as C = C|_{v=1} + (v-1) D, and splitting stops once a branch has collected
q generator factors.  Branches that run out of variables early are scalar
jets of order < q; membership holds iff they all vanish.  In the shifted
coordinates the diagonal ideal is the irrelevant ideal, so this degree
inspection is complete: a Taylor coefficient of order < q survives exactly
when some mixed derivative of that order is nonzero at the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .rationals import GR_ZERO, GaussianRational
from .sequences import VerblunskySequence, entry


@dataclass(frozen=True)
class MomentQuery:
    """Multi-exponent (a_1..a_k, b_1..b_k) of an Euler moment."""

    exponents: tuple

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError("moment exponents must be nonnegative")
        object.__setattr__(self, "exponents", exps)

    @property
    def total_order(self) -> int:
        return sum(self.exponents)


class ShiftPolynomial:
    """Sparse Laurent polynomial over Gaussian rationals in 2k shift variables."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms=None):
        if k < 1:
            raise ValueError("balance degree k must be >= 1")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 2 * k:
                raise ValueError(f"exponent vector {exps} does not have length {2 * k}")
            c = GaussianRational.coerce(coeff)
            if not c.is_zero():
                clean[exps] = clean.get(exps, GR_ZERO) + c
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if not c.is_zero()})

    def __setattr__(self, *_):
        raise AttributeError("ShiftPolynomial is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, k: int) -> "ShiftPolynomial":
        return cls(k, {})

    @classmethod
    def constant(cls, k: int, c) -> "ShiftPolynomial":
        return cls(k, {tuple([0] * (2 * k)): GaussianRational.coerce(c)})

    @classmethod
    def one(cls, k: int) -> "ShiftPolynomial":
        return cls.constant(k, 1)

    @classmethod
    def monomial(cls, k: int, exps, coeff=1) -> "ShiftPolynomial":
        return cls(k, {tuple(exps): GaussianRational.coerce(coeff)})

    @classmethod
    def x(cls, k: int, nu: int) -> "ShiftPolynomial":
        """The variable x_nu, nu = 1..k."""
        if not 1 <= nu <= k:
            raise ValueError(f"x index {nu} out of 1..{k}")
        exps = [0] * (2 * k)
        exps[nu - 1] = 1
        return cls.monomial(k, exps)

    @classmethod
    def y(cls, k: int, mu: int) -> "ShiftPolynomial":
        """The variable y_mu, mu = 1..k."""
        if not 1 <= mu <= k:
            raise ValueError(f"y index {mu} out of 1..{k}")
        exps = [0] * (2 * k)
        exps[k + mu - 1] = 1
        return cls.monomial(k, exps)

    # -- ring operations --------------------------------------------------

    def _check_compatible(self, other: "ShiftPolynomial"):
        if self.k != other.k:
            raise ValueError("balance degrees differ")

    def __add__(self, other):
        if not isinstance(other, ShiftPolynomial):
            other = ShiftPolynomial.constant(self.k, other)
        self._check_compatible(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, GR_ZERO) + c
        return ShiftPolynomial(self.k, merged)

    __radd__ = __add__

    def __neg__(self):
        return ShiftPolynomial(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ShiftPolynomial):
            other = ShiftPolynomial.constant(self.k, other)
        return self + (-other)

    def __rsub__(self, other):
        return ShiftPolynomial.constant(self.k, other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, ShiftPolynomial):
            c = GaussianRational.coerce(other)
            return ShiftPolynomial(self.k, {e: c * v for e, v in self.terms.items()})
        self._check_compatible(other)
        prod = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod[e] = prod.get(e, GR_ZERO) + c1 * c2
        return ShiftPolynomial(self.k, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = ShiftPolynomial.one(self.k)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, ShiftPolynomial)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return f"ShiftPolynomial(k={self.k}, 0)"
        parts = [f"{c!r}*v^{e}" for e, c in sorted(self.terms.items())]
        return f"ShiftPolynomial(k={self.k}, " + " + ".join(parts) + ")"

    def conjugate(self) -> "ShiftPolynomial":
        """Swap the x and y exponent blocks and conjugate every coefficient.

        Under the coefficient map this conjugates the mapped local value.
        """
        k = self.k
        swapped = {}
        for e, c in self.terms.items():
            swapped[e[k:] + e[:k]] = c.conjugate()
        return ShiftPolynomial(k, swapped)

    # -- serialization ------------------------------------------------

    def to_json(self) -> str:
        import json

        return json.dumps(
            {
                "k": self.k,
                "terms": [
                    {"exp": list(e), "re": str(c.re), "im": str(c.im)}
                    for e, c in sorted(self.terms.items())
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ShiftPolynomial":
        import json

        obj = json.loads(text)
        terms = {
            tuple(t["exp"]): GaussianRational(Fraction(t["re"]), Fraction(t["im"]))
            for t in obj["terms"]
        }
        return cls(obj["k"], terms)


def diag_eval(P: ShiftPolynomial) -> GaussianRational:
    """Value at the diagonal point where every shift variable equals 1."""
    total = GR_ZERO
    for c in P.terms.values():
        total = total + c
    return total


def euler_moment(P: ShiftPolynomial, query) -> GaussianRational:
    """Weighted coefficient sum sum_c c * prod i^a * prod j^b, with 0^0 = 1.

    Equals the Euler derivative jet of P at the diagonal for that exponent.
    """
    if isinstance(query, MomentQuery):
        exps = query.exponents
    else:
        exps = tuple(int(e) for e in query)
    if len(exps) != 2 * P.k:
        raise ValueError("moment query length does not match 2k")
    total = GR_ZERO
    for e, c in P.terms.items():
        weight = 1
        for idx, a in zip(e, exps):
            if a:
                weight *= idx**a
        if weight:
            total = total + c * weight
    return total


def _compositions(total: int, slots: int) -> Iterator[tuple]:
    """All nonnegative integer tuples of the given length summing to total, lex ascending."""
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def vanishing_order(P: ShiftPolynomial, cap: int) -> int:
    """Largest q <= cap with all Euler moments of total order < q equal to zero.

    Returns cap when every tested moment vanishes (Laurent units have
    infinite formal order, so an explicit cap is part of the contract), and
    0 when P(1,...,1) != 0.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    for order in range(cap):
        for exps in _compositions(order, 2 * P.k):
            if not euler_moment(P, exps).is_zero():
                return order
    return cap


@dataclass(frozen=True)
class IdealTerm:
    """One summand coeff * prod v^shift * prod (v-1)^gen of a decomposition."""

    gen_orders: tuple
    shifts: tuple
    coeff: GaussianRational

    def polynomial(self, k: int) -> ShiftPolynomial:
        result = ShiftPolynomial.monomial(k, self.shifts, self.coeff)
        for slot, a in enumerate(self.gen_orders):
            if a:
                e = [0] * (2 * k)
                e[slot] = 1
                gen = ShiftPolynomial.monomial(k, e) - ShiftPolynomial.one(k)
                result = result * gen**a
        return result


@dataclass(frozen=True)
class IdealDecomposition:
    """Outcome of an ideal-power membership test with constructive expansion.

    Non-membership is a legitimate answer, not an exception; it carries the
    lowest-order nonvanishing moment query as a witness.
    """

    k: int
    order: int
    member: bool
    terms: tuple = ()
    witness: MomentQuery | None = None

    def recompose(self) -> ShiftPolynomial:
        if not self.member:
            raise ValueError("cannot recompose a failed membership")
        total = ShiftPolynomial.zero(self.k)
        for t in self.terms:
            total = total + t.polynomial(self.k)
        return total


def _divide_at_one(terms: dict, slot: int) -> tuple[dict, dict]:
    """Split sum c v^e as value + (v_slot - 1) * quotient.

    For a univariate p(v) = sum c_e v^e (e >= 0) the exact splitting is
    p = p(1) + (v - 1) Q with Q coefficients q_e = sum_{j > e} c_j.
    """
    groups: dict = {}
    for exps, coeff in terms.items():
        key = exps[:slot] + (0,) + exps[slot + 1 :]
        groups.setdefault(key, {})[exps[slot]] = coeff
    value: dict = {}
    quotient: dict = {}
    for key, univ in groups.items():
        val = GR_ZERO
        for c in univ.values():
            val = val + c
        if not val.is_zero():
            value[key] = val
        # suffix sums run over every exponent below the degree, including
        # gaps where no coefficient is stored
        suffix = GR_ZERO
        for e in range(max(univ) - 1, -1, -1):
            nxt = univ.get(e + 1)
            if nxt is not None:
                suffix = suffix + nxt
            if not suffix.is_zero():
                here = key[:slot] + (e,) + key[slot + 1 :]
                quotient[here] = quotient.get(here, GR_ZERO) + suffix
    return value, {e: c for e, c in quotient.items() if not c.is_zero()}


def ideal_power_decompose(P: ShiftPolynomial, q: int) -> IdealDecomposition:
    """Membership of P in the q-th diagonal ideal power, with exact expansion.

    On success every term has total generator order exactly q (higher powers
    are absorbed into the cofactors) and recomposition reproduces P exactly.
    The expansion is the deterministic divided-difference one described in
    the module docstring, so outputs are reproducible.
    """
    if q < 0:
        raise ValueError("ideal power must be >= 0")
    k = P.k
    nslots = 2 * k
    if not P.terms:
        return IdealDecomposition(k=k, order=q, member=True, terms=())

    # clear negative exponents; the clearing monomial is recorded as a
    # uniform shift on every cofactor
    clearing = tuple(
        max(0, -min(e[slot] for e in P.terms)) for slot in range(nslots)
    )
    cleared = {
        tuple(e + m for e, m in zip(exps, clearing)): c for exps, c in P.terms.items()
    }

    final: list[IdealTerm] = []
    jets: list[tuple] = []

    def split(gen: tuple, terms: dict, slot: int):
        if sum(gen) == q:
            for exps, coeff in terms.items():
                final.append(
                    IdealTerm(
                        gen_orders=gen,
                        shifts=tuple(e - m for e, m in zip(exps, clearing)),
                        coeff=coeff,
                    )
                )
            return
        if slot == nslots:
            # all variables consumed below order q: a scalar jet
            coeff = terms.get(tuple([0] * nslots), GR_ZERO)
            if not coeff.is_zero():
                jets.append((gen, coeff))
            return
        value, quotient = _divide_at_one(terms, slot)
        if value:
            split(gen, value, slot + 1)
        if quotient:
            bumped = gen[:slot] + (gen[slot] + 1,) + gen[slot + 1 :]
            split(bumped, quotient, slot)

    split(tuple([0] * nslots), cleared, 0)

    if jets:
        t = min(sum(gen) for gen, _ in jets)
        for exps in _compositions(t, nslots):
            if not euler_moment(P, exps).is_zero():
                return IdealDecomposition(
                    k=k, order=q, member=False, witness=MomentQuery(exps)
                )
        raise AssertionError("nonzero jet without a nonzero moment at its order")
    return IdealDecomposition(k=k, order=q, member=True, terms=tuple(final))


def coefficient_map(P: ShiftPolynomial, seq, n: int):
    """Apply the coefficient map at index n.

    Each monomial x^i y^j contributes coeff * prod a_{n+i_nu} * prod
    conj(a)_{n+j_mu}, with the zero extension for out-of-range indices.
    Float sequences give a complex value; sequences of GaussianRational
    entries keep the computation exact.
    """
    k = P.k
    exact = _is_exact_sequence(seq)
    if exact:
        total = GR_ZERO
        for exps, coeff in P.terms.items():
            prod = coeff
            for slot in range(k):
                prod = prod * _exact_entry(seq, n + exps[slot])
            for slot in range(k, 2 * k):
                prod = prod * _exact_entry(seq, n + exps[slot]).conjugate()
            total = total + prod
        return total
    total = 0j
    for exps, coeff in P.terms.items():
        prod = coeff.to_complex()
        for slot in range(k):
            prod *= complex(entry(seq, n + exps[slot]))
        for slot in range(k, 2 * k):
            prod *= complex(entry(seq, n + exps[slot])).conjugate()
        total += prod
    return total


def _is_exact_sequence(seq) -> bool:
    if isinstance(seq, VerblunskySequence):
        return False
    return any(isinstance(v, GaussianRational) for v in seq)


def _exact_entry(seq, n: int) -> GaussianRational:
    v = entry(seq, n)
    return v if isinstance(v, GaussianRational) else GaussianRational.coerce(v)
