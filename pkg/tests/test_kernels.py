import math

import numpy as np

from opuckit import _kernels
from opuckit._kernels import _ref
from opuckit.measures import szego_recursion_polynomials, theta_grid
from opuckit.sequences import VerblunskySequence


def random_prefix(rng, n, cap=0.8):
    radii = cap * np.sqrt(rng.uniform(size=n))
    angles = rng.uniform(0, 2 * np.pi, size=n)
    return radii * np.exp(1j * angles)


def test_backend_reported():
    assert _kernels.BACKEND in ("compiled", "python")


def test_backend_parity():
    rng = np.random.default_rng(42)
    alphas = random_prefix(rng, 700)  # long enough to cross renormalizations
    z = np.exp(1j * theta_grid(256))
    active = _kernels.log_phistar_abs(alphas, z)
    ref = _ref.log_phistar_abs(alphas, z)
    assert np.max(np.abs(active - ref)) <= 1e-9


def test_against_scalar_recursion():
    prefix = VerblunskySequence((0.3, 0.2j, -0.4, 0.1 - 0.1j, 0.55))
    z = np.exp(1j * theta_grid(32))
    grid = _kernels.log_phistar_abs(np.asarray(prefix.values), z)
    for g in range(32):
        _, phistar = szego_recursion_polynomials(prefix, complex(z[g]))
        assert abs(math.log(abs(phistar)) - float(grid[g])) <= 1e-12


def test_empty_prefix():
    z = np.exp(1j * theta_grid(16))
    out = _kernels.log_phistar_abs(np.zeros(0, dtype=complex), z)
    assert np.allclose(out, 0.0)


def test_log_space_survives_divergent_prefix():
    # sum |a_n|^2 ~ 1300: the raw weight would underflow but the log cannot
    alphas = np.full(1600, 0.9 + 0j)
    z = np.exp(1j * theta_grid(64))
    out = _kernels.log_phistar_abs(alphas, z)
    assert np.all(np.isfinite(out))
    ref = _ref.log_phistar_abs(alphas, z)
    assert np.max(np.abs(out - ref)) <= 1e-6 * np.max(np.abs(ref))
