"""The quartic principal critical block and its exact PSD certificate.

The block is the degree-(2m-2) polynomial

    P_m(u, v, t) = [ (u+v-t)^{2m} + t^{2m} - u^{2m} - v^{2m} ]
                   / ( 2 C(2m, m) (u-t)(v-t) ),

whose numerator is exactly divisible by the denominator (the division is
performed symbolically and doubles as the divisibility proof), together
with its Gram representation P_m = W^T M W over the degree-(m-1) monomials
in three variables.  High powers like (u+v-t)^{2m} shred float accuracy, so
every flagship check here is exact rational; floats appear only in the
Gauss-Legendre oracle that integrates the equivalent double-integral form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MultiIndex3 = tuple  # (a1, a2, a3) with a1 + a2 + a3 = m - 1


class ExactDivisionError(ArithmeticError):
    """The symbolic division left a remainder (never expected)."""


class Poly3:
    """Dense-exponent sparse polynomial in three variables over Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if c:
                e = (int(exps[0]), int(exps[1]), int(exps[2]))
                clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    def __setattr__(self, *_):
        raise AttributeError("Poly3 is immutable")

    @classmethod
    def constant(cls, c) -> "Poly3":
        return cls({(0, 0, 0): Fraction(c)})

    @classmethod
    def variable(cls, i: int) -> "Poly3":
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps, coeff=1) -> "Poly3":
        return cls({tuple(exps): Fraction(coeff)})

    def __add__(self, other):
        if not isinstance(other, Poly3):
            other = Poly3.constant(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return Poly3(merged)

    __radd__ = __add__

    def __neg__(self):
        return Poly3({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly3):
            other = Poly3.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly3):
            c = Fraction(other)
            return Poly3({e: c * v for e, v in self.terms.items()})
        prod = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                prod[e] = prod.get(e, Fraction(0)) + c1 * c2
        return Poly3(prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("nonnegative powers only")
        result = Poly3.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, Poly3) and self.terms == other.terms

    def substitute(self, p0: "Poly3", p1: "Poly3", p2: "Poly3") -> "Poly3":
        """Compose: replace the three variables by the given polynomials."""
        maxdeg = [0, 0, 0]
        for e in self.terms:
            for i in range(3):
                maxdeg[i] = max(maxdeg[i], e[i])
        powers = []
        for p, d in zip((p0, p1, p2), maxdeg):
            ps = [Poly3.constant(1)]
            for _ in range(d):
                ps.append(ps[-1] * p)
            powers.append(ps)
        total = Poly3()
        for e, c in self.terms.items():
            term = powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]]
            total = total + term * c
        return total

    def eval(self, x0, x1, x2):
        total = 0
        for (i, j, l), c in self.terms.items():
            total = total + c * x0**i * x1**j * x2**l
        return total

    def total_degrees(self) -> set:
        return {sum(e) for e in self.terms}


def multinomial(m: int, alpha: MultiIndex3) -> int:
    return math.comb(m, alpha[0]) * math.comb(m - alpha[0], alpha[1])


def multi_indices(m: int) -> list[MultiIndex3]:
    """Degree-(m-1) exponent triples, graded lex (lex descending at fixed degree).

    The ordering is frozen so serialized matrices are byte-stable.
    """
    n = m - 1
    out = []
    for a1 in range(n, -1, -1):
        for a2 in range(n - a1, -1, -1):
            out.append((a1, a2, n - a1 - a2))
    return out


@dataclass(frozen=True)
class GramBlock:
    """Symmetric rational matrix indexed by the degree-(m-1) multi-indices."""

    m: int
    entries: tuple  # tuple of tuples of Fraction
    order: str = "grlex"

    def __post_init__(self):
        n = len(self.entries)
        expected = math.comb(self.m + 1, 2)
        if n != expected:
            raise ValueError(f"dimension {n} != C(m+1, 2) = {expected}")
        for i in range(n):
            if len(self.entries[i]) != n:
                raise ValueError("entries must be square")
            for j in range(n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"asymmetric at ({i},{j})")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def to_json(self) -> str:
        import json

        return json.dumps(
            {
                "m": self.m,
                "order": self.order,
                "entries": [[str(c) for c in row] for row in self.entries],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "GramBlock":
        import json

        obj = json.loads(text)
        entries = tuple(
            tuple(Fraction(c) for c in row) for row in obj["entries"]
        )
        return cls(m=obj["m"], entries=entries, order=obj["order"])


def gram_closed_form(m: int) -> GramBlock:
    """Exact Gram matrix from the double binomial sum.

    Entry for multi-indices alpha, beta (A = a1+b1, B = a2+b2, C = a3+b3):

        m(2m-1)/C(2m,m) * multinom(alpha) multinom(beta)
        * sum_{p<=B} sum_{q<=C} (-1)^{p+q} C(B,p) C(C,q)
          / ((p+q+1)(A+C-q+1))
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    idx = multi_indices(m)
    pref = Fraction(m * (2 * m - 1), math.comb(2 * m, m))
    dim = len(idx)
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            a, b = idx[i], idx[j]
            A, B, C = a[0] + b[0], a[1] + b[1], a[2] + b[2]
            acc = Fraction(0)
            for p in range(B + 1):
                for q in range(C + 1):
                    term = Fraction(
                        math.comb(B, p) * math.comb(C, q),
                        (p + q + 1) * (A + C - q + 1),
                    )
                    if (p + q) % 2:
                        acc -= term
                    else:
                        acc += term
            row.append(pref * multinomial(m - 1, a) * multinomial(m - 1, b) * acc)
        rows.append(tuple(row))
    return GramBlock(m=m, entries=tuple(rows))


def gram_quadrature(m: int, nodes: int | None = None) -> np.ndarray:
    """Gauss-Legendre evaluation of the integral form of the Gram entries.

    Integrates c_alpha c_beta over the unit square, where
    c_alpha(lam, mu) = multinom(alpha) (-mu)^{a1} (lam-1)^{a2} (lam-mu)^{a3},
    scaled by m(2m-1)/C(2m,m).  The integrand is polynomial of degree
    2(m-1) per axis, so nodes >= 2(m-1)+2 integrates it exactly.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if nodes is None:
        nodes = 2 * m
    if nodes < 2 * (m - 1) + 2:
        raise ValueError(f"need at least {2 * (m - 1) + 2} nodes per axis")
    x, w = np.polynomial.legendre.leggauss(nodes)
    lam = (x + 1.0) / 2.0
    wts = w / 2.0
    L, M = np.meshgrid(lam, lam, indexing="ij")
    W2 = np.outer(wts, wts)
    idx = multi_indices(m)
    grids = []
    for a in idx:
        grids.append(
            multinomial(m - 1, a) * (-M) ** a[0] * (L - 1.0) ** a[1] * (L - M) ** a[2]
        )
    pref = m * (2 * m - 1) / math.comb(2 * m, m)
    dim = len(idx)
    out = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            val = pref * float(np.sum(W2 * grids[i] * grids[j]))
            out[i, j] = val
            out[j, i] = val
    return out


def pm_polynomial(m: int) -> Poly3:
    """Exact P_m in the variables (u, v, t) by symbolic division.

    Expands the numerator in the shifted variables a = u-t, b = v-t, where
    the divisor (u-t)(v-t) is the monomial ab; exactness of the division is
    verified term by term and a remainder raises.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    # variables of this intermediate ring: (a, b, t)
    a = Poly3.variable(0)
    b = Poly3.variable(1)
    t = Poly3.variable(2)
    numerator = (t + a + b) ** (2 * m) + t ** (2 * m) - (t + a) ** (2 * m) - (t + b) ** (2 * m)
    quotient = {}
    for (i, j, l), c in numerator.terms.items():
        if i < 1 or j < 1:
            raise ExactDivisionError(
                f"numerator term a^{i} b^{j} t^{l} is not divisible by ab"
            )
        quotient[(i - 1, j - 1, l)] = c
    q_ab = Poly3(quotient)
    u = Poly3.variable(0)
    v = Poly3.variable(1)
    t_uvt = Poly3.variable(2)
    result = q_ab.substitute(u - t_uvt, v - t_uvt, t_uvt)
    return result * Fraction(1, 2 * math.comb(2 * m, m))


def gram_identity_check(m: int) -> bool:
    """Exact coefficientwise comparison of W^T M W with P_m(u(Z), v(Z), t(Z)).

    Z = (Z1, Z2, Z3) with u = Z3, v = -Z1-Z2-Z3, t = -Z2; both sides are
    expanded over Q and compared as dictionaries.
    """
    block = gram_closed_form(m)
    idx = multi_indices(m)
    lhs_terms: dict = {}
    for i, ai in enumerate(idx):
        for j, bj in enumerate(idx):
            e = (ai[0] + bj[0], ai[1] + bj[1], ai[2] + bj[2])
            lhs_terms[e] = lhs_terms.get(e, Fraction(0)) + block.entries[i][j]
    lhs = Poly3(lhs_terms)

    z1 = Poly3.variable(0)
    z2 = Poly3.variable(1)
    z3 = Poly3.variable(2)
    rhs = pm_polynomial(m).substitute(z3, -z1 - z2 - z3, -z2)
    return lhs == rhs


@dataclass(frozen=True)
class PsdCertificate:
    certified: bool
    pivots: tuple  # Fractions, in elimination order
    permutation: tuple
    failure: str | None = None


def psd_certificate(block) -> PsdCertificate:
    """Exact rational LDL^T with symmetric (diagonal) pivoting.

    At each step the largest remaining diagonal entry is eliminated.  A
    negative pivot refutes PSD.  A zero maximal diagonal forces, for a PSD
    matrix, the whole remaining block to vanish: if it does, the remaining
    indices are recorded as skipped zero pivots; if it does not, the matrix
    is indefinite and certification fails.
    """
    if isinstance(block, GramBlock):
        mat = [list(row) for row in block.entries]
    else:
        mat = [[Fraction(c) for c in row] for row in block]
    n = len(mat)
    for i in range(n):
        if len(mat[i]) != n:
            raise ValueError("matrix must be square")
        for j in range(n):
            if mat[i][j] != mat[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")

    remaining = list(range(n))
    pivots = []
    permutation = []
    while remaining:
        piv = max(remaining, key=lambda r: mat[r][r])
        d = mat[piv][piv]
        if d < 0:
            pivots.append(d)
            permutation.append(piv)
            return PsdCertificate(
                certified=False,
                pivots=tuple(pivots),
                permutation=tuple(permutation),
                failure=f"negative pivot {d} at index {piv}",
            )
        if d == 0:
            # max diagonal is zero: PSD requires the whole block to be zero
            for r in remaining:
                for c in remaining:
                    if mat[r][c] != 0:
                        return PsdCertificate(
                            certified=False,
                            pivots=tuple(pivots),
                            permutation=tuple(permutation),
                            failure=(
                                f"zero diagonal with nonzero entry at ({r},{c})"
                            ),
                        )
            for r in remaining:
                pivots.append(Fraction(0))
                permutation.append(r)
            break
        pivots.append(d)
        permutation.append(piv)
        remaining.remove(piv)
        col = {r: mat[r][piv] for r in remaining}
        for r in remaining:
            if col[r] == 0:
                continue
            factor = col[r] / d
            row_r = mat[r]
            row_p = mat[piv]
            for c in remaining:
                row_r[c] -= factor * row_p[c]
    return PsdCertificate(
        certified=True, pivots=tuple(pivots), permutation=tuple(permutation)
    )


@dataclass(frozen=True)
class RawQuarticExhibit:
    """The documented 2x2 obstruction matrix for the raw quartic representative at m = 2."""

    entries: tuple
    is_symmetric: bool
    asymmetry: tuple  # (entry (0,1), entry (1,0))
    symmetrized_eigenvalues: tuple  # informational float eigensolve


def raw_m2_failure_exhibit() -> RawQuarticExhibit:
    """Constants of the raw m = 2 representative; no derivation is attempted.

    The matrix is asymmetric (5/12 vs 1/2), which is the documented
    obstruction: the raw bihomogeneous component admits no symmetric
    representative under the linearized quotient constraint.  The eigenvalue
    report of the symmetrized matrix is informational only.
    """
    entries = (
        (Fraction(5, 6), Fraction(5, 12)),
        (Fraction(1, 2), Fraction(1, 12)),
    )
    sym = np.array(
        [
            [float(entries[0][0]), float((entries[0][1] + entries[1][0]) / 2)],
            [float((entries[0][1] + entries[1][0]) / 2), float(entries[1][1])],
        ]
    )
    eigs = tuple(float(x) for x in np.linalg.eigvalsh(sym))
    return RawQuarticExhibit(
        entries=entries,
        is_symmetric=entries[0][1] == entries[1][0],
        asymmetry=(entries[0][1], entries[1][0]),
        symmetrized_eigenvalues=eigs,
    )
