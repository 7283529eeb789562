#!/usr/bin/env python3
"""Perfect difference sets from finite fields.

A Singer set S mod q = p^2 + p + 1 has p + 1 elements and realizes every
nonzero residue exactly once as a difference.  This demo builds the
canonical set for a few primes, verifies the difference property
exhaustively, and shows the normalization (translate so 0 and 1 are in
the set) plus the top-gap statistic q - max(S).
"""

from flatpoly import (
    SingerSet,
    construct_singer,
    gap_statistic,
    normalize,
    verify_perfect_difference,
)

print("Canonical normalized Singer sets")
print(f"{'p':>4} {'q':>6} {'|S|':>4}  {'q - max(S)':>10}  residues")
for p in (2, 3, 5, 7, 11, 13):
    s = construct_singer(p)
    report = verify_perfect_difference(s.residues, s.q)
    assert report.valid
    shown = ", ".join(map(str, s.residues[:8])) + (", ..." if len(s.residues) > 8 else "")
    print(f"{p:>4} {s.q:>6} {len(s.residues):>4}  {gap_statistic(s):>10}  {{{shown}}}")

print()
print("Every nonzero residue occurs exactly once as a difference (p = 5):")
s5 = construct_singer(5)
counts = verify_perfect_difference(s5.residues, s5.q).counts
print("  counts[1..q-1] =", sorted(set(counts[1:])), "-> all ones")

print()
print("Normalization translates the unique difference-1 pair onto (1, 0):")
shifted = SingerSet(p=2, m=1, q=7, residues=(1, 2, 4))
print(f"  {shifted.residues} mod 7  ->  {normalize(shifted).residues}")
shifted = SingerSet(p=2, m=1, q=7, residues=(0, 2, 3))
print(f"  {shifted.residues} mod 7  ->  {normalize(shifted).residues}")

print()
print("Prime powers work through the same subspace construction (p=2, m=2):")
s = construct_singer(2, m=2)
print(f"  q = {s.q}, S = {s.residues}, "
      f"perfect = {verify_perfect_difference(s.residues, s.q).valid}")
