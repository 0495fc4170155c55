"""Shared generators and brute-force oracles for the test suite."""

import random
from fractions import Fraction
from itertools import permutations
from math import factorial

from subposetlab import (
    SubsetFamily,
    contains_weak,
    family_as_poset,
    lubell_value,
)


def random_family(n: int, rng: random.Random, size: int) -> SubsetFamily:
    """Uniform sample of `size` distinct subsets of [n]."""
    return SubsetFamily.from_masks(n, tuple(rng.sample(range(1 << n), size)))


def random_band_family(n: int, rng: random.Random, size: int, spread: float = 1.0) -> SubsetFamily:
    """Sample near the middle levels, where inclusion pairs are common."""
    pool = [m for m in range(1 << n) if abs(m.bit_count() - n / 2) <= spread]
    size = min(size, len(pool))
    return SubsetFamily.from_masks(n, tuple(rng.sample(pool, size)))


def pattern_free_family(n, pattern, rng, size_lo=10, size_hi=18, tries=500):
    """Rejection-sample a family hosting no weak copy of the pattern."""
    pool = [m for m in range(1 << n) if abs(m.bit_count() - n / 2) <= 1.0]
    hi = min(size_hi, len(pool))
    for _ in range(tries):
        fam = SubsetFamily.from_masks(n, tuple(rng.sample(pool, rng.randint(size_lo, hi))))
        if not contains_weak(family_as_poset(fam), pattern):
            return fam
    raise AssertionError(f"no pattern-free family found in {tries} tries")


def all_families(n: int):
    """Every subset family on [n]; only sane for n <= 3."""
    for bits in range(1 << (1 << n)):
        yield SubsetFamily.from_masks(
            n, tuple(m for m in range(1 << n) if bits >> m & 1)
        )


def brute_la(n: int, pattern) -> int:
    """Max size of a pattern-free family by full enumeration (n <= 3)."""
    best = -1
    for fam in all_families(n):
        if contains_weak(family_as_poset(fam), pattern):
            continue
        if len(fam) > best:
            best = len(fam)
    return best


def brute_lambda(n: int, pattern) -> Fraction:
    """Max Lubell value of a pattern-free family by full enumeration."""
    best = Fraction(-1)
    for fam in all_families(n):
        if contains_weak(family_as_poset(fam), pattern):
            continue
        v = lubell_value(fam)
        if v > best:
            best = v
    return best


def perm_chain_stats(fam):
    """Oracle: average pair and triple counts over all n! full chains."""
    n = fam.n
    ms = fam.member_set()
    pair = 0
    triple = 0
    hist = {}
    for perm in permutations(range(1, n + 1)):
        m = 0
        on = [0] if 0 in ms else []
        for v in perm:
            m |= 1 << (v - 1)
            if m in ms:
                on.append(m)
        for i, a in enumerate(on):
            for b in on[i + 1 :]:
                gap = b.bit_count() - a.bit_count()
                pair += 1
                triple += gap - 1
                hist[gap] = hist.get(gap, 0) + 1
    total = factorial(n)
    return (
        Fraction(pair, total),
        Fraction(triple, total),
        {g: Fraction(c, total) for g, c in hist.items()},
    )
