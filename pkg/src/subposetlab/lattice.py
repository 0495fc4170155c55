"""Boolean-lattice primitives.

Subsets of [n] = {1, ..., n} are bitmasks: bit i-1 set means element i is
present.  Families, full chains, and chain decompositions are immutable
values; every statistic is an exact rational (fractions.Fraction), never a
float.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def mask_from_elements(elements, n: int) -> int:
    """Bitmask of a subset given as 1-based elements."""
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside ground set [1, {n}]")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ValueError(f"duplicate element {e}")
        mask |= bit
    return mask


def elements_of_mask(mask: int) -> tuple[int, ...]:
    """Sorted 1-based elements of a subset bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def canonical_sort_key(mask: int) -> tuple[int, int]:
    """Order subsets by cardinality, then numeric mask value."""
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class SubsetFamily:
    """A set of distinct subsets of [n], kept in canonical order."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ground-set size must be nonnegative")
        full = (1 << self.n) - 1
        seen = set()
        for m in self.members:
            if m & ~full:
                raise ValueError("member outside the ground set")
            if m in seen:
                raise ValueError("duplicate member")
            seen.add(m)
        ordered = tuple(sorted(self.members, key=canonical_sort_key))
        object.__setattr__(self, "members", ordered)

    @classmethod
    def from_masks(cls, n: int, masks) -> "SubsetFamily":
        return cls(n, tuple(masks))

    @classmethod
    def from_sets(cls, n: int, sets) -> "SubsetFamily":
        """Build from an iterable of element lists (1-based)."""
        return cls(n, tuple(mask_from_elements(s, n) for s in sets))

    def sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of_mask(m) for m in self.members)

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.members)


def middle_levels(n: int, k: int) -> SubsetFamily:
    """The union of the k middle levels of the Boolean lattice on [n].

    Levels [ceil((n-k+1)/2), ceil((n-k+1)/2)+k-1]: the sizes whose binomial
    coefficients are the k largest (ties broken upward).
    """
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must be in [1, {n + 1}], got {k}")
    lo = (n - k + 2) // 2  # ceil((n-k+1)/2)
    hi = lo + k - 1
    members = [m for m in range(1 << n) if lo <= m.bit_count() <= hi]
    return SubsetFamily(n, tuple(members))


def sigma(n: int, k: int) -> int:
    """Total size of the k middle levels: the sum of the k largest binomials."""
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must be in [1, {n + 1}], got {k}")
    lo = (n - k + 2) // 2
    return sum(comb(n, i) for i in range(lo, lo + k))


def lubell_value(family: SubsetFamily) -> Fraction:
    """Sum of 1/C(n, |F|) over members F; also the expected number of
    members met by a uniformly random full chain."""
    total = Fraction(0)
    for m in family.members:
        total += Fraction(1, comb(family.n, m.bit_count()))
    return total


@dataclass(frozen=True)
class FullChain:
    """A maximal chain of nested subsets, generated by a permutation.

    ``order`` lists 0-based bit indices; prefix i of the order gives the
    chain's subset of size i.
    """

    n: int
    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(self.n)):
            raise ValueError("order must be a permutation of the bit indices")

    def prefixes(self) -> tuple[int, ...]:
        masks = [0]
        m = 0
        for bit in self.order:
            m |= 1 << bit
            masks.append(m)
        return tuple(masks)


def all_full_chains(n: int):
    """All n! full chains of the lattice on [n]."""
    for perm in itertools.permutations(range(n)):
        yield FullChain(n, perm)


def expected_chain_hits(family: SubsetFamily, mode: str = "identity") -> Fraction:
    """Expected number of family members on a uniform random full chain.

    mode="identity" evaluates the closed form (the Lubell value);
    mode="exact-enumeration" averages over all n! chains and requires n <= 8.
    """
    if mode == "identity":
        return lubell_value(family)
    if mode != "exact-enumeration":
        raise ValueError(f"unknown mode {mode!r}")
    n = family.n
    if n > 8:
        raise ValueError("exact-enumeration mode requires n <= 8")
    members = family.member_set()
    total_hits = 0
    for perm in itertools.permutations(range(n)):
        m = 0
        hits = 1 if 0 in members else 0
        for bit in perm:
            m |= 1 << bit
            if m in members:
                hits += 1
        total_hits += hits
    return Fraction(total_hits, factorial(n))


def _bracket_match(mask: int, n: int) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    """Match each set bit with a later unset bit, parenthesis style.

    Returns (matched pairs as a sorted tuple of (one, zero) positions,
    unmatched positions in increasing order).  Subsets sharing a matching
    form one saturated chain symmetric about n/2; the pairing itself is the
    key, since distinct matchings can cover the same positions.
    """
    stack = []
    matched = []
    unmatched_zeros = []
    for i in range(n):
        if mask >> i & 1:
            stack.append(i)
        elif stack:
            matched.append((stack.pop(), i))
        else:
            unmatched_zeros.append(i)
    unmatched = sorted(unmatched_zeros + stack)
    return tuple(sorted(matched)), tuple(unmatched)


@dataclass(frozen=True)
class ChainDecomposition:
    """Disjoint saturated chains covering the subsets with sizes in a band."""

    n: int
    level_lo: int
    level_hi: int
    chains: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.chains)


def full_symmetric_chains(n: int) -> tuple[tuple[int, ...], ...]:
    """Symmetric chain decomposition of the whole lattice via bracket
    matching; each chain's sizes run symmetrically about n/2."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for mask in range(1 << n):
        key, _ = _bracket_match(mask, n)
        groups.setdefault(key, []).append(mask)
    chains = []
    for masks in groups.values():
        masks.sort(key=canonical_sort_key)
        chains.append(tuple(masks))
    chains.sort(key=lambda c: canonical_sort_key(c[0]))
    return tuple(chains)


def symmetric_chain_decomposition(n: int, level_lo: int, level_hi: int) -> ChainDecomposition:
    """Restrict the symmetric chain decomposition of the lattice to a band.

    The band [level_lo, level_hi] is partitioned into exactly C(n, s0)
    chains, where s0 is the band level with the largest binomial.
    """
    if not 0 <= level_lo <= level_hi <= n:
        raise ValueError(f"invalid band [{level_lo}, {level_hi}] for n={n}")
    restricted = []
    for chain in full_symmetric_chains(n):
        part = tuple(m for m in chain if level_lo <= m.bit_count() <= level_hi)
        if part:
            restricted.append(part)
    restricted.sort(key=lambda c: canonical_sort_key(c[0]))
    return ChainDecomposition(n, level_lo, level_hi, tuple(restricted))


def band_peak_level(n: int, level_lo: int, level_hi: int) -> int:
    """The band level with the largest binomial coefficient (nearest n/2,
    ties toward the lower level)."""
    if not 0 <= level_lo <= level_hi <= n:
        raise ValueError(f"invalid band [{level_lo}, {level_hi}] for n={n}")
    return max(range(level_lo, level_hi + 1), key=lambda s: (comb(n, s), -s))


def _raw_mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    man = int(man)
    if man == 0:
        return Fraction(0)
    frac = Fraction(man, 1) * Fraction(2) ** exp
    return -frac if sign else frac


def _exceeds_sixteen_n_log(square: int, n: int) -> bool:
    """Decide square > 16*n*ln(n) exactly, escalating precision until the
    comparison is unambiguous (16*n*ln(n) is irrational for n >= 2)."""
    if n == 1:
        return square > 0
    prec = 64
    while prec <= 1 << 20:
        saved = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            iv_ln = mpmath.iv.ln(mpmath.iv.mpf(n))
            raw_lo, raw_hi = iv_ln._mpi_
        finally:
            mpmath.iv.prec = saved
        lo = _raw_mpf_to_fraction(raw_lo) * 16 * n
        hi = _raw_mpf_to_fraction(raw_hi) * 16 * n
        if square > hi:
            return True
        if square <= lo:
            return False
        prec *= 2
    raise RuntimeError("could not separate the threshold comparison")


def tail_mass(n: int) -> Fraction:
    """Exact probability mass of the levels whose distance from n/2 exceeds
    2*sqrt(n ln n): (1/2^n) * sum of C(n, i) over i with (2i-n)^2 > 16 n ln n."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    for i in range(n + 1):
        if _exceeds_sixteen_n_log((2 * i - n) ** 2, n):
            total += comb(n, i)
    return Fraction(total, 1 << n)


def binom_ratio(n: int, i: int, j: int) -> Fraction:
    """Exact C(n, i) / C(n, j)."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError("i and j must lie in [0, n]")
    return Fraction(comb(n, i), comb(n, j))


def falling_binomial(x: Fraction, s: int) -> Fraction:
    """Generalized binomial C(x, s) = x(x-1)...(x-s+1)/s! at rational x."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    num = Fraction(1)
    for i in range(s):
        num *= x - i
    return num / factorial(s)


def convexity_gap(dist: dict[int, Fraction], s: int) -> Fraction | None:
    """E[C(X, s)] - C(E[X], s) for a finite distribution on nonnegative
    integers.  Returns None (inapplicable) unless E[X] > s - 1; when
    applicable the gap is guaranteed nonnegative.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    if not dist:
        raise ValueError("distribution must be nonempty")
    total_p = Fraction(0)
    for v, p in dist.items():
        if v < 0 or not isinstance(v, int):
            raise ValueError("distribution values must be nonnegative integers")
        p = Fraction(p)
        if p < 0:
            raise ValueError("probabilities must be nonnegative")
        total_p += p
    if total_p != 1:
        raise ValueError("probabilities must sum to 1")
    mean = sum((Fraction(p) * v for v, p in dist.items()), Fraction(0))
    if mean <= s - 1:
        return None
    expected = sum(
        (Fraction(p) * comb(v, s) for v, p in dist.items()), Fraction(0)
    )
    return expected - falling_binomial(mean, s)
