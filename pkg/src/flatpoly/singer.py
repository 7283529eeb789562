"""Singer perfect difference sets built from finite-field arithmetic.

A Singer set is a subset S of Z/qZ with q = p^(2m) + p^m + 1 and
|S| = p^m + 1 such that every nonzero residue mod q occurs exactly once
as a difference s - t of elements of S.  The classical construction:
take a generator g of the multiplicative group of GF(p^(3m)) and collect
the exponents i in [0, q) for which g^i falls in the 2-dimensional
GF(p^m)-subspace spanned by {1, g}.  Cosets of GF(p^m)* partition the
exponents mod q, and the subspace is GF(p^m)-stable, so scanning
i = 0 .. q-1 suffices.

Everything here is deterministic: the modulus polynomial is the first
irreducible monic polynomial of degree 3m in lexicographic coefficient
order, and the generator is the smallest primitive field element in the
same order.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .errors import BudgetError

__all__ = [
    "FieldSpec",
    "SingerSet",
    "DifferenceReport",
    "canonical_field_spec",
    "construct_singer",
    "verify_perfect_difference",
    "verify_field_spec",
    "normalize",
    "gap_statistic",
    "DEFAULT_MAX_FIELD_ORDER",
]

# Desk-scale cap on p^(3m); covers the documented default range p <= 10^4, m = 1.
DEFAULT_MAX_FIELD_ORDER = 10**13


# ---------------------------------------------------------------------------
# GF(p)[x] helpers.  Polynomials are lists/tuples of ints, constant term first.
# ---------------------------------------------------------------------------

def _digits(n, p, width):
    """Base-p digits of n, least significant first, padded to `width`."""
    out = [0] * width
    i = 0
    while n:
        out[i] = n % p
        n //= p
        i += 1
    return tuple(out)


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return list(a[:i])


def _poly_mod(a, f, p):
    """Remainder of a modulo f over GF(p); f need not be monic."""
    a = [c % p for c in a]
    a = _poly_trim(a)
    f = _poly_trim([c % p for c in f])
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        shift = len(a) - 1 - df
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a = _poly_trim(a)
    return a


def _poly_gcd(a, b, p):
    """Monic gcd over GF(p)."""
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


class _Field:
    """GF(p^d) as GF(p)[x]/(f) with f monic of degree d.

    Elements are tuples of d ints (coefficients of 1, x, .., x^(d-1)).
    """

    def __init__(self, p, modulus):
        self.p = p
        self.d = len(modulus) - 1
        self.modulus = tuple(c % p for c in modulus)
        assert self.modulus[-1] == 1, "modulus must be monic"
        # reduction[k] = coefficient vector of x^(d+k) mod f, k = 0 .. d-2
        self.reduction = []
        cur = [(-c) % p for c in self.modulus[:-1]]  # x^d mod f
        self.reduction.append(tuple(cur))
        for _ in range(self.d - 2):
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c + top * r) % p for c, r in zip(cur, self.reduction[0])]
            self.reduction.append(tuple(cur))
        self.zero = tuple([0] * self.d)
        self.one = tuple([1] + [0] * (self.d - 1))

    def element(self, n):
        """The n-th field element in lexicographic coefficient order."""
        return _digits(n, self.p, self.d)

    def mul(self, a, b):
        p, d = self.p, self.d
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                red = self.reduction[k - d]
                for t in range(d):
                    prod[t] += c * red[t]
            prod[k] = 0
        return tuple(c % p for c in prod[:d])

    def pow(self, a, e):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


def _is_irreducible(coeffs, p):
    """Rabin test for a monic polynomial over GF(p), constant term first."""
    d = len(coeffs) - 1
    ring = _Field(p, coeffs)  # quotient ring; works whether or not f is irreducible
    x = ring.element(p) if d > 1 else None
    if d == 1:
        return True
    # x^(p^d) == x mod f, and gcd(x^(p^(d/l)) - x, f) = 1 for prime l | d
    if ring.pow(x, p**d) != x:
        return False
    for ell in sorted(set(sympy.factorint(d))):
        h = ring.pow(x, p ** (d // ell))
        diff = [(hc - xc) % p for hc, xc in zip(h, x)]
        g = _poly_gcd(diff, list(coeffs), p)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Canonical model of GF(p^(3m)) used by the Singer construction.

    modulus_poly lists coefficients over the prime field, constant term
    first, monic of degree 3m.  generator is a coefficient vector of
    length 3m, certified primitive in the group of order p^(3m) - 1.
    """

    p: int
    m: int
    modulus_poly: tuple
    generator: tuple


@dataclass(frozen=True)
class SingerSet:
    """A perfect difference set mod q = p^(2m) + p^m + 1."""

    p: int
    m: int
    q: int
    residues: tuple
    normalized: bool = False

    def __post_init__(self):
        pm = self.p**self.m
        if self.q != pm * pm + pm + 1:
            raise ValueError(f"q={self.q} is not p^2m + p^m + 1 for p={self.p}, m={self.m}")
        if len(self.residues) != pm + 1:
            raise ValueError(f"expected {pm + 1} residues, got {len(self.residues)}")
        if list(self.residues) != sorted(set(self.residues)):
            raise ValueError("residues must be strictly increasing")
        if self.residues[0] < 0 or self.residues[-1] >= self.q:
            raise ValueError("residues out of range [0, q)")
        if self.normalized and self.residues[:2] != (0, 1):
            raise ValueError("normalized set must start with 0, 1")

    @property
    def size(self):
        return len(self.residues)


@dataclass(frozen=True)
class DifferenceReport:
    """Exhaustive ordered-pair difference counts for a residue set.

    counts[r] is the number of ordered pairs (s, t), s != t, with
    s - t = r mod q; counts[0] is 0 by convention.  valid means every
    count for r in [1, q) equals one.
    """

    valid: bool
    counts: tuple
    first_violation: int | None


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def canonical_field_spec(p, m=1, max_field_order=DEFAULT_MAX_FIELD_ORDER):
    """Deterministic GF(p^(3m)): first irreducible modulus, smallest primitive generator."""
    _check_pm(p, m)
    d = 3 * m
    order = p**d
    if order > max_field_order:
        raise BudgetError(
            f"field order p^(3m) = {order} exceeds the factorization budget {max_field_order}"
        )
    modulus = None
    for n in range(order):
        cand = _digits(n, p, d) + (1,)
        if _is_irreducible(cand, p):
            modulus = cand
            break
    assert modulus is not None  # irreducible polynomials of every degree exist
    field = _Field(p, modulus)
    group_order = order - 1
    prime_divisors = sorted(sympy.factorint(group_order))
    generator = None
    for n in range(1, order):
        g = field.element(n)
        if all(field.pow(g, group_order // ell) != field.one for ell in prime_divisors):
            generator = g
            break
    assert generator is not None
    return FieldSpec(p=p, m=m, modulus_poly=modulus, generator=generator)


def verify_field_spec(spec):
    """Re-check the FieldSpec invariants (irreducibility, primitivity)."""
    if not _is_irreducible(spec.modulus_poly, spec.p):
        return False
    field = _Field(spec.p, spec.modulus_poly)
    group_order = spec.p ** (3 * spec.m) - 1
    return all(
        field.pow(spec.generator, group_order // ell) != field.one
        for ell in sorted(sympy.factorint(group_order))
    )


def _check_pm(p, m):
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"p must be prime, got {p}")


class _SubspaceTest:
    """Membership test for the GF(p)-span of a list of field elements."""

    def __init__(self, p, vectors):
        self.p = p
        self.pivots = []  # (column, normalized row)
        for v in vectors:
            self._insert(list(v))

    def _reduce(self, row):
        p = self.p
        for col, piv in self.pivots:
            c = row[col]
            if c:
                row = [(a - c * b) % p for a, b in zip(row, piv)]
        return row

    def _insert(self, row):
        row = self._reduce([c % self.p for c in row])
        for col, c in enumerate(row):
            if c:
                inv = pow(c, self.p - 2, self.p)
                self.pivots.append((col, [(a * inv) % self.p for a in row]))
                return

    @property
    def rank(self):
        return len(self.pivots)

    def contains(self, v):
        return not any(self._reduce(list(v)))


def construct_singer(p, m=1, max_field_order=DEFAULT_MAX_FIELD_ORDER):
    """Build the canonical normalized Singer set for the prime p (exponent m).

    Deterministic across runs: the field, the generator, and hence the
    residues are all canonical.  Raises ValueError for non-prime p and
    BudgetError when p^(3m) exceeds `max_field_order`.
    """
    spec = canonical_field_spec(p, m, max_field_order=max_field_order)
    field = _Field(p, spec.modulus_poly)
    g = spec.generator
    pm = p**m
    q = pm * pm + pm + 1

    # GF(p^m)* is generated by omega = g^q; its powers 1, omega, .., omega^(m-1)
    # form a GF(p)-basis of the subfield, so {omega^t, omega^t * g} spans
    # W = GF(p^m) + GF(p^m)*g over the prime field.
    omega = field.pow(g, q)
    basis = []
    w = field.one
    for _ in range(m):
        basis.append(w)
        basis.append(field.mul(w, g))
        w = field.mul(w, omega)
    subspace = _SubspaceTest(p, basis)
    assert subspace.rank == 2 * m

    residues = []
    e = field.one
    for i in range(q):
        if subspace.contains(e):
            residues.append(i)
        e = field.mul(e, g)
    assert len(residues) == pm + 1

    raw = SingerSet(p=p, m=m, q=q, residues=tuple(residues), normalized=False)
    return normalize(raw)


def verify_perfect_difference(residues, q):
    """Count every ordered-pair difference mod q; exact, no tolerance."""
    res = list(residues)
    if len(set(res)) != len(res):
        raise ValueError("duplicate residues")
    if any(r < 0 or r >= q for r in res):
        raise ValueError(f"residues must lie in [0, {q})")
    counts = [0] * q
    for s in res:
        for t in res:
            if s != t:
                counts[(s - t) % q] += 1
    first = None
    for r in range(1, q):
        if counts[r] != 1:
            first = r
            break
    return DifferenceReport(valid=first is None, counts=tuple(counts), first_violation=first)


def normalize(sset):
    """Translate a Singer set so that it contains 0 and 1.

    The ordered pair with difference 1 is unique in a perfect difference
    set, so the normalized translate is unique; the map is idempotent.
    """
    report = verify_perfect_difference(sset.residues, sset.q)
    if not report.valid:
        raise ValueError(
            f"not a perfect difference set (residue {report.first_violation} "
            f"has count {report.counts[report.first_violation]})"
        )
    pairs = [(x, y) for x in sset.residues for y in sset.residues if (x - y) % sset.q == 1]
    assert len(pairs) == 1
    _, y = pairs[0]
    shifted = tuple(sorted((r - y) % sset.q for r in sset.residues))
    return SingerSet(p=sset.p, m=sset.m, q=sset.q, residues=shifted, normalized=True)


def gap_statistic(sset):
    """Top gap q - max(S) of a normalized Singer set."""
    if sset.residues[:2] != (0, 1):
        raise ValueError("gap_statistic expects a normalized set")
    return sset.q - sset.residues[-1]
