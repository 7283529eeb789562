import random

import pytest
import sympy

from flatpoly.errors import BudgetError
from flatpoly.singer import (
    SingerSet,
    canonical_field_spec,
    construct_singer,
    gap_statistic,
    normalize,
    verify_perfect_difference,
    verify_field_spec,
)


def brute_force_difference_counts(residues, q):
    """Independent oracle: dict of difference counts over ordered pairs."""
    counts = {}
    for s in residues:
        for t in residues:
            if s != t:
                d = (s - t) % q
                counts[d] = counts.get(d, 0) + 1
    return counts


class TestConstruct:
    def test_p2(self):
        s = construct_singer(2)
        assert s.q == 7
        assert s.residues == (0, 1, 3)
        assert s.normalized

    def test_p3(self):
        s = construct_singer(3)
        assert s.q == 13
        assert len(s.residues) == 4
        counts = brute_force_difference_counts(s.residues, 13)
        assert counts == {r: 1 for r in range(1, 13)}

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            construct_singer(4)
        with pytest.raises(ValueError):
            construct_singer(1)

    def test_budget(self):
        with pytest.raises(BudgetError):
            construct_singer(101, max_field_order=10**5)

    def test_deterministic(self):
        assert construct_singer(11) == construct_singer(11)

    def test_m2(self):
        s = construct_singer(2, m=2)
        assert s.q == 21
        assert len(s.residues) == 5
        assert verify_perfect_difference(s.residues, 21).valid

    @pytest.mark.parametrize("p", list(sympy.primerange(2, 32)))
    def test_small_primes_are_perfect(self, p, singer_cache):
        s = singer_cache(p)
        assert len(s.residues) == p + 1
        assert all(0 <= r < s.q for r in s.residues)
        report = verify_perfect_difference(s.residues, s.q)
        assert report.valid
        assert set(report.counts[1:]) == {1}


class TestVerify:
    def test_valid_singer(self):
        report = verify_perfect_difference([0, 1, 3], 7)
        assert report.valid
        assert report.counts == (0, 1, 1, 1, 1, 1, 1)
        assert report.first_violation is None

    def test_invalid(self):
        report = verify_perfect_difference([0, 1, 2], 7)
        assert not report.valid
        assert report.first_violation == 1
        assert report.counts[1] == 2

    def test_two_element(self):
        assert verify_perfect_difference([0, 1], 3).valid

    def test_counts_sum_is_pair_count(self):
        rng = random.Random(7)
        for _ in range(20):
            q = rng.randrange(5, 40)
            k = rng.randrange(2, q)
            residues = rng.sample(range(q), k)
            report = verify_perfect_difference(residues, q)
            assert sum(report.counts) == k * (k - 1)
            assert report.counts == tuple(
                brute_force_difference_counts(residues, q).get(r, 0) for r in range(q)
            )

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            verify_perfect_difference([0, 0, 3], 7)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            verify_perfect_difference([0, 1, 7], 7)


class TestNormalize:
    def test_translate(self):
        s = SingerSet(p=2, m=1, q=7, residues=(1, 2, 4))
        assert normalize(s).residues == (0, 1, 3)

    def test_idempotent(self):
        s = SingerSet(p=2, m=1, q=7, residues=(0, 1, 3))
        assert normalize(s).residues == (0, 1, 3)

    def test_other_translate(self):
        s = SingerSet(p=2, m=1, q=7, residues=(0, 2, 3))
        assert normalize(s).residues == (0, 1, 5)

    def test_rejects_non_difference_set(self):
        s = SingerSet(p=2, m=1, q=7, residues=(0, 1, 2))
        with pytest.raises(ValueError):
            normalize(s)

    def test_preserves_difference_property(self, singer_cache):
        rng = random.Random(11)
        for p in (2, 3, 5):
            s = singer_cache(p)
            for _ in range(5):
                t = rng.randrange(s.q)
                shifted = SingerSet(
                    p=p, m=1, q=s.q,
                    residues=tuple(sorted((r + t) % s.q for r in s.residues)),
                )
                renorm = normalize(shifted)
                assert renorm == s  # translates all normalize to the same set
                assert verify_perfect_difference(renorm.residues, s.q).valid


class TestGap:
    def test_examples(self):
        assert gap_statistic(SingerSet(p=2, m=1, q=7, residues=(0, 1, 3))) == 4
        assert gap_statistic(SingerSet(p=3, m=1, q=13, residues=(0, 1, 3, 9))) == 4
        assert gap_statistic(SingerSet(p=1, m=1, q=3, residues=(0, 1))) == 2

    def test_requires_normalized(self):
        with pytest.raises(ValueError):
            gap_statistic(SingerSet(p=2, m=1, q=7, residues=(1, 2, 4)))

    def test_positive(self, singer_cache):
        for p in (2, 3, 5, 7, 11):
            assert gap_statistic(singer_cache(p)) > 0


class TestFieldSpec:
    def test_cubic_has_no_roots(self):
        for p in (2, 3, 5, 7, 11):
            spec = canonical_field_spec(p)
            c0, c1, c2, c3 = spec.modulus_poly
            assert c3 == 1
            assert all((c0 + c1 * x + c2 * x * x + x**3) % p != 0 for x in range(p))

    def test_generator_is_primitive(self):
        for p in (2, 3, 5, 13):
            assert verify_field_spec(canonical_field_spec(p))

    def test_m2_spec(self):
        spec = canonical_field_spec(2, m=2)
        assert len(spec.modulus_poly) == 7
        assert verify_field_spec(spec)


class TestSingerSetValidation:
    def test_wrong_count(self):
        with pytest.raises(ValueError):
            SingerSet(p=2, m=1, q=7, residues=(0, 1))

    def test_wrong_q(self):
        with pytest.raises(ValueError):
            SingerSet(p=2, m=1, q=8, residues=(0, 1, 3))

    def test_unsorted(self):
        with pytest.raises(ValueError):
            SingerSet(p=2, m=1, q=7, residues=(1, 0, 3))

    def test_normalized_flag_checked(self):
        with pytest.raises(ValueError):
            SingerSet(p=2, m=1, q=7, residues=(0, 2, 3), normalized=True)
