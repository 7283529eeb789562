"""Normalized 0/1-support polynomials, correlations, and grid evaluation.

The central object is the L2-normalized analytic polynomial with support
S inside [0, q):

    P(z) = (1/sqrt(|S|)) * sum_{s in S} z^s.

Counting ordered pairs of support elements by their difference gives the
aperiodic autocorrelations c_l (integer differences l) and the cyclic
ones gamma_r (differences mod q); the two are linked by
gamma_r = c_r + c_{r-q}.  For a perfect difference set gamma_r = 1 for
every r != 0, which is what makes |P|^2 close to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .singer import SingerSet

__all__ = [
    "NewmanPolynomial",
    "CorrelationTable",
    "DefectPolynomial",
    "GridValues",
    "build_polynomial",
    "newman_from_support",
    "correlations",
    "correlation_table",
    "defect_poly",
    "eval_grid",
    "eval_support_grid",
    "power_fourier_coefficients",
]

# Below this grid size the FFT route falls back to direct summation.
DIRECT_EVAL_CUTOFF = 64


@dataclass(frozen=True)
class NewmanPolynomial:
    """(1/sqrt(k)) * sum z^s over a k-element support inside [0, q)."""

    q: int
    support: tuple

    def __post_init__(self):
        if not self.support:
            raise ValueError("support must be nonempty")
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("support must be strictly increasing")
        if self.support[0] < 0 or self.support[-1] >= self.q:
            raise ValueError("support must lie in [0, q)")

    @property
    def size(self):
        return len(self.support)

    @property
    def degree(self):
        return self.support[-1]

    @property
    def scale(self):
        """Floating rendering of 1/sqrt(|support|)."""
        return 1.0 / np.sqrt(self.size)

    @property
    def scale_sq(self):
        """Exact squared coefficient, 1/|support|."""
        return Fraction(1, self.size)

    def coefficient_array(self):
        """Dense float coefficients of length q, constant term first."""
        c = np.zeros(self.q)
        c[list(self.support)] = self.scale
        return c


@dataclass(frozen=True)
class CorrelationTable:
    """Ordered-pair difference counts of a support, aperiodic and cyclic.

    aperiodic[l + q - 1] counts pairs with integer difference l for
    l in [-(q-1), q-1]; cyclic[r] counts pairs with difference r mod q.
    """

    q: int
    size: int
    aperiodic: tuple
    cyclic: tuple

    def c(self, l):
        if abs(l) > self.q - 1:
            return 0
        return self.aperiodic[l + self.q - 1]

    def gamma(self, r):
        return self.cyclic[r % self.q]

    @property
    def is_perfect(self):
        return all(g == 1 for g in self.cyclic[1:])


@dataclass(frozen=True)
class DefectPolynomial:
    """Q(z) = sum_{l=1}^{q-1} (gamma_l / |S|) z^l with exact coefficients.

    Built from cyclic correlation counts, so for a perfect difference set
    every coefficient is 1/|S|, Q(1) = (q-1)/|S|, and Q agrees with
    |P|^2 - 1 at the q-th roots of unity.
    """

    q: int
    size: int
    coefficients: tuple  # Fractions, exponents 1 .. q-1

    @property
    def degree(self):
        return self.q - 1

    def value_at_one(self):
        return sum(self.coefficients, Fraction(0))

    def eval(self, z):
        acc = 0j
        zpow = 1.0 + 0j
        for c in self.coefficients:
            zpow *= z
            acc += float(c) * zpow
        return acc

    def eval_root(self, r):
        """Value at exp(2*pi*i*r/q)."""
        return self.eval(np.exp(2j * np.pi * r / self.q))

    def coefficient_array(self):
        c = np.zeros(self.q)
        c[1:] = [float(x) for x in self.coefficients]
        return c


@dataclass(frozen=True, eq=False)
class GridValues:
    """Values values[j] = P(exp(2*pi*i*j/N)) on the uniform N-point grid."""

    N: int
    values: np.ndarray = field(repr=False)


def build_polynomial(sset: SingerSet):
    """The normalized support polynomial of a Singer set."""
    return NewmanPolynomial(q=sset.q, support=sset.residues)


def newman_from_support(support, q=None):
    """Normalized 0/1-support polynomial on an explicit support."""
    support = tuple(sorted(set(int(s) for s in support)))
    if q is None:
        q = support[-1] + 1
    return NewmanPolynomial(q=q, support=support)


def correlation_table(support, q):
    """Exact integer pair counts for any distinct support in [0, q)."""
    support = list(support)
    if len(set(support)) != len(support):
        raise ValueError("support must be distinct")
    if any(s < 0 or s >= q for s in support):
        raise ValueError(f"support must lie in [0, {q})")
    aper = [0] * (2 * q - 1)
    cyc = [0] * q
    for s in support:
        for t in support:
            aper[(s - t) + q - 1] += 1
            cyc[(s - t) % q] += 1
    return CorrelationTable(q=q, size=len(support), aperiodic=tuple(aper), cyclic=tuple(cyc))


def correlations(sset: SingerSet):
    return correlation_table(sset.residues, sset.q)


def defect_poly(sset: SingerSet):
    table = correlations(sset)
    coeffs = tuple(Fraction(table.cyclic[r], table.size) for r in range(1, sset.q))
    return DefectPolynomial(q=sset.q, size=table.size, coefficients=coeffs)


def eval_support_grid(exponents, coeffs, N, offset=0.0):
    """values[j] = sum_k coeffs[k] exp(2*pi*i*(j+offset)*exponents[k]/N).

    FFT route for N >= DIRECT_EVAL_CUTOFF, direct summation below it.
    Exponents must lie in [0, N) so the grid resolves the polynomial.
    """
    exponents = np.asarray(exponents, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if exponents.size and (exponents.min() < 0 or exponents.max() >= N):
        raise ValueError(f"exponents must lie in [0, N) with N={N}")
    if offset:
        coeffs = coeffs * np.exp(2j * np.pi * offset * exponents / N)
    if N < DIRECT_EVAL_CUTOFF:
        j = np.arange(N)
        return np.exp(2j * np.pi * np.outer(j, exponents) / N) @ coeffs
    dense = np.zeros(N, dtype=np.complex128)
    np.add.at(dense, exponents, coeffs)
    return np.fft.ifft(dense) * N


def eval_grid(P: NewmanPolynomial, N):
    """Evaluate P at the N-th roots of unity (N >= q required)."""
    if N < P.q:
        raise ValueError(f"grid size {N} is smaller than the modulus q={P.q}")
    values = eval_support_grid(P.support, [P.scale] * P.size, N)
    return GridValues(N=N, values=values)


def power_fourier_coefficients(grid: GridValues):
    """Fourier coefficients of |P|^2 from grid values.

    Returns an array chat of length N with chat[l mod N] the coefficient
    of z^l; exact (up to rounding) when N exceeds twice the degree.
    """
    return np.fft.fft(np.abs(grid.values) ** 2) / grid.N
