import math
from fractions import Fraction

import numpy as np
import pytest

from opuckit.psd_quartic import (
    GramBlock,
    Poly3,
    gram_closed_form,
    gram_identity_check,
    gram_quadrature,
    multi_indices,
    pm_polynomial,
    psd_certificate,
    raw_m2_failure_exhibit,
)


def pm_integral_oracle(m, u, v, t, nodes=None):
    """Float oracle: the double-integral form of P_m via Gauss-Legendre."""
    if nodes is None:
        nodes = 2 * m
    x, w = np.polynomial.legendre.leggauss(nodes)
    lam = (x + 1) / 2
    wts = w / 2
    L, M = np.meshgrid(lam, lam, indexing="ij")
    W2 = np.outer(wts, wts)
    integrand = (t + L * (u - t) + M * (v - t)) ** (2 * m - 2)
    return m * (2 * m - 1) / math.comb(2 * m, m) * float(np.sum(W2 * integrand))


def raw_quotient(m, u, v, t):
    num = (u + v - t) ** (2 * m) + t ** (2 * m) - u ** (2 * m) - v ** (2 * m)
    return num / (2 * math.comb(2 * m, m) * (u - t) * (v - t))


class TestMultiIndices:
    def test_count_is_triangular(self):
        for m in range(1, 11):
            idx = multi_indices(m)
            assert len(idx) == math.comb(m + 1, 2)
            assert all(sum(a) == m - 1 for a in idx)

    def test_ordering_frozen(self):
        assert multi_indices(2) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert multi_indices(3)[:3] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]


class TestPmPolynomial:
    def test_m1_is_half(self):
        # numerator expands to 2(u-t)(v-t); quotient 2 / (2 C(2,1)) = 1/2
        p = pm_polynomial(1)
        assert p.terms == {(0, 0, 0): Fraction(1, 2)}

    def test_m2_degree_and_values(self):
        p = pm_polynomial(2)
        assert p.total_degrees() == {2}
        # compare against the integral oracle at several points
        for u, v, t in ((1.0, 1.0, 0.0), (0.7, -0.4, 0.2), (2.0, 3.0, -1.0)):
            assert float(p.eval(Fraction(u), Fraction(v), Fraction(t))) == pytest.approx(
                pm_integral_oracle(2, u, v, t), rel=1e-12
            )

    def test_matches_raw_quotient_off_singular_set(self):
        for m in (1, 2, 3, 4):
            p = pm_polynomial(m)
            for u, v, t in ((1.3, -0.7, 0.4), (2.0, 0.5, -1.5)):
                assert float(p.eval(Fraction(u), Fraction(v), Fraction(t))) == pytest.approx(
                    raw_quotient(m, u, v, t), rel=1e-10
                )

    def test_removable_singularity_richardson(self):
        # the polynomial value at u = t equals the limit of the raw quotient
        m, v, t = 3, 0.8, 0.3
        p = pm_polynomial(m)
        exact = float(p.eval(Fraction(t), Fraction(v), Fraction(t)))
        for k in (3, 4, 5, 6):
            h = 10.0**-k
            centered = (raw_quotient(m, t + h, v, t) + raw_quotient(m, t - h, v, t)) / 2
            assert centered == pytest.approx(exact, rel=10.0 ** (-2 * k + 3) + 1e-9)

    def test_symmetry_in_u_v(self):
        for m in (1, 2, 3, 5):
            p = pm_polynomial(m)
            swapped = Poly3({(j, i, l): c for (i, j, l), c in p.terms.items()})
            assert swapped == p

    def test_homogeneity(self):
        for m in (1, 2, 4, 6):
            assert pm_polynomial(m).total_degrees() <= {2 * m - 2}


class TestGram:
    def test_m1_block(self):
        block = gram_closed_form(1)
        assert block.entries == ((Fraction(1, 2),),)

    def test_m2_hand_checked_entries(self):
        # diagonal entries integrate mu^2, (lam-1)^2, (lam-mu)^2 with
        # prefactor m(2m-1)/C(2m,m) = 1
        block = gram_closed_form(2)
        assert block.entries[0][0] == Fraction(1, 3)
        assert block.entries[1][1] == Fraction(1, 3)
        assert block.entries[2][2] == Fraction(1, 6)

    def test_quadrature_agreement(self):
        for m in range(1, 7):
            exact = gram_closed_form(m)
            numeric = gram_quadrature(m)
            dev = max(
                abs(float(exact.entries[i][j]) - numeric[i][j])
                for i in range(exact.dim)
                for j in range(exact.dim)
            )
            assert dev <= 1e-10

    def test_quadrature_node_floor(self):
        with pytest.raises(ValueError):
            gram_quadrature(4, nodes=3)

    def test_identity_small_orders(self):
        for m in (1, 2, 3, 4):
            assert gram_identity_check(m)

    def test_json_round_trip(self):
        block = gram_closed_form(3)
        again = GramBlock.from_json(block.to_json())
        assert again == block
        import json

        obj = json.loads(block.to_json())
        assert obj["order"] == "grlex"
        assert isinstance(obj["entries"][0][0], str)

    def test_dimension_validated(self):
        with pytest.raises(ValueError):
            GramBlock(m=2, entries=((Fraction(1),),))


class TestPsdCertificate:
    def test_scalar(self):
        cert = psd_certificate([[Fraction(1, 2)]])
        assert cert.certified and cert.pivots == (Fraction(1, 2),)

    def test_gram_blocks_certified(self):
        for m in (1, 2, 3, 4, 5):
            cert = psd_certificate(gram_closed_form(m))
            assert cert.certified
            assert all(p >= 0 for p in cert.pivots)

    def test_known_indefinite(self):
        cert = psd_certificate([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])
        assert not cert.certified
        assert cert.pivots[-1] == Fraction(-3)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            psd_certificate([[Fraction(1), Fraction(2)], [Fraction(1), Fraction(1)]])

    def test_zero_matrix_certified(self):
        cert = psd_certificate([[Fraction(0)] * 2 for _ in range(2)])
        assert cert.certified and cert.pivots == (Fraction(0), Fraction(0))

    def test_singular_psd(self):
        cert = psd_certificate([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]])
        assert cert.certified
        assert cert.pivots == (Fraction(1), Fraction(0))

    def test_zero_diagonal_indefinite(self):
        cert = psd_certificate([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]])
        assert not cert.certified

    def test_negative_diagonal(self):
        cert = psd_certificate([[Fraction(-1)]])
        assert not cert.certified and cert.pivots == (Fraction(-1),)

    def test_against_eigenvalue_oracle(self):
        # random rational matrices with known definiteness: B^T B is PSD by
        # construction; shifting it down past its largest eigenvalue is not.
        # The float eigensolve is the independent cross-check.
        import random

        rng = random.Random(77)
        for trial in range(25):
            n = rng.randint(2, 6)
            B = [
                [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
                for _ in range(rng.randint(1, n))
            ]
            gram = [
                [sum(row[i] * row[j] for row in B) for j in range(n)]
                for i in range(n)
            ]
            cert = psd_certificate(gram)
            assert cert.certified, f"trial {trial}: B^T B must certify"
            eigs = np.linalg.eigvalsh(np.array([[float(c) for c in r] for r in gram]))
            assert eigs.min() >= -1e-9
            top = Fraction(int(np.ceil(eigs.max() * 2 + 1)))
            shifted = [
                [gram[i][j] - (top if i == j else 0) for j in range(n)]
                for i in range(n)
            ]
            assert not psd_certificate(shifted).certified


class TestRawExhibit:
    def test_documented_constants(self):
        ex = raw_m2_failure_exhibit()
        assert ex.entries == (
            (Fraction(5, 6), Fraction(5, 12)),
            (Fraction(1, 2), Fraction(1, 12)),
        )

    def test_symmetry_fails(self):
        ex = raw_m2_failure_exhibit()
        assert not ex.is_symmetric
        assert ex.asymmetry == (Fraction(5, 12), Fraction(1, 2))

    def test_symmetrized_eigenvalue_report(self):
        ex = raw_m2_failure_exhibit()
        # informational: the symmetrization is indefinite (det = -9/64)
        assert min(ex.symmetrized_eigenvalues) < 0 < max(ex.symmetrized_eigenvalues)
        prod = ex.symmetrized_eigenvalues[0] * ex.symmetrized_eigenvalues[1]
        assert prod == pytest.approx(-9 / 64, rel=1e-12)
