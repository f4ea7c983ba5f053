"""Verblunsky sequences, the forward-difference calculus and the two energies.

A Verblunsky sequence is a finite complex prefix with every entry strictly
inside the unit disc.  Reads beyond the stored prefix (and at negative
indices) return 0; that extension convention makes every finite difference
well defined at every index and is the one compatible with Bernstein-Szego
truncation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np


class ModulusError(ValueError):
    """An entry with |alpha| >= 1 was supplied where the open disc is required."""


def entry(seq, n: int):
    """Index into a sequence-like object with the zero extension convention.

    Accepts a VerblunskySequence or any plain sequence (list, tuple, numpy
    array); entries may be complex floats or exact scalars.  Out-of-range
    and negative indices give 0.
    """
    if isinstance(seq, VerblunskySequence):
        return seq.at(n)
    if 0 <= n < len(seq):
        return seq[n]
    return 0


@dataclass(frozen=True)
class VerblunskySequence:
    """Finite complex sequence with all moduli strictly below 1."""

    values: tuple = ()

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        for i, v in enumerate(vals):
            # strict, tolerance-free check
            if not abs(v) < 1.0:
                raise ModulusError(f"|alpha_{i}| = {abs(v)} is not < 1")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def at(self, n: int) -> complex:
        """Entry at index n, 0 outside the stored prefix."""
        if 0 <= n < len(self.values):
            return self.values[n]
        return 0j

    def truncated(self, length: int) -> "VerblunskySequence":
        return VerblunskySequence(self.values[:length])

    def as_array(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Zero-extended complex array of entries start..stop-1."""
        if stop is None:
            stop = len(self.values)
        out = np.zeros(stop - start, dtype=np.complex128)
        lo = max(start, 0)
        hi = min(stop, len(self.values))
        if hi > lo:
            out[lo - start : hi - start] = self.values[lo:hi]
        return out

    # JSON wire format: array of [re, im] pairs.

    def to_json(self) -> str:
        return json.dumps([[v.real, v.imag] for v in self.values])

    @classmethod
    def from_json(cls, text: str) -> "VerblunskySequence":
        return cls(tuple(complex(re, im) for re, im in json.loads(text)))


@dataclass(frozen=True)
class EnergyReport:
    """Partial sums of the two coercive quantities up to index N."""

    m: int
    N: int
    diff_energy: float
    power_energy: float

    CSV_HEADER = "m,N,diff_energy,power_energy"

    def csv_row(self) -> str:
        return f"{self.m},{self.N},{self.diff_energy!r},{self.power_energy!r}"


def forward_difference(seq, m: int, n: int):
    """m-th forward difference at index n via the binomial expansion.

    Computed directly as sum_j (-1)^(m-j) C(m, j) * a_{n+j}, which keeps the
    cost O(m) per index and avoids drift from repeated subtraction.  Works on
    float and exact entries alike.
    """
    if m < 0:
        raise ValueError("difference order must be >= 0")
    if m == 0:
        return entry(seq, n)
    total = 0
    for j in range(m + 1):
        c = math.comb(m, j)
        if (m - j) % 2:
            c = -c
        total = total + c * entry(seq, n + j)
    return total


def difference_array(seq, m: int, N: int) -> np.ndarray:
    """Vector of Delta^m alpha_n for n = 0..N (binomial form, vectorized)."""
    if isinstance(seq, VerblunskySequence):
        arr = seq.as_array(0, N + m + 1)
    else:
        arr = np.zeros(N + m + 1, dtype=np.complex128)
        take = min(len(seq), N + m + 1)
        arr[:take] = np.asarray(seq[:take], dtype=np.complex128)
    out = np.zeros(N + 1, dtype=np.complex128)
    for j in range(m + 1):
        c = math.comb(m, j)
        if (m - j) % 2:
            c = -c
        out += c * arr[j : j + N + 1]
    return out


def lukic_partial_sums(seq, m: int, N: int) -> EnergyReport:
    """Difference energy sum |Delta^m a_n|^2 and power energy sum |a_n|^(2m+2) over [0, N]."""
    if m < 1:
        raise ValueError("order m must be >= 1")
    diffs = difference_array(seq, m, N)
    diff_energy = float(np.sum(np.abs(diffs) ** 2))
    if isinstance(seq, VerblunskySequence):
        arr = seq.as_array(0, N + 1)
    else:
        arr = np.zeros(N + 1, dtype=np.complex128)
        take = min(len(seq), N + 1)
        arr[:take] = np.asarray(seq[:take], dtype=np.complex128)
    power_energy = float(np.sum(np.abs(arr) ** (2 * m + 2)))
    return EnergyReport(m=m, N=N, diff_energy=diff_energy, power_energy=power_energy)


def lp_norm(values, p: float, N: int | None = None) -> float:
    """(sum_{n=0}^{N} |v_n|^p)^(1/p); p must be >= 1."""
    if p < 1:
        raise ValueError(f"p = {p} < 1 is not a norm exponent")
    if isinstance(values, VerblunskySequence):
        values = values.values
    if N is None:
        N = len(values) - 1
    total = 0.0
    for n in range(N + 1):
        total += abs(entry(values, n)) ** p
    return total ** (1.0 / p)


def write_energy_csv(reports: Iterable[EnergyReport], path) -> None:
    with open(path, "w") as fh:
        fh.write(EnergyReport.CSV_HEADER + "\n")
        for rep in reports:
            fh.write(rep.csv_row() + "\n")
