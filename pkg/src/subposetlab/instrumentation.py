"""Exact diagnostics used to probe a family against chain arguments.

Everything here is a rational identity or a finite certificate: expected
counts over uniform random full chains, down-degree bookkeeping, deletable
k-configurations, and the two structural checks that turn a clean
configuration hypergraph into either a poset copy or a long chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .budget import Budget
from .hypergraphs import (
    ColoredFamily,
    Hypergraph,
    contains_complete_kpartite,
    cover_multiplicity,
    is_k_partite,
)
from .lattice import SubsetFamily, elements_of_mask, mask_from_elements
from .posets import family_as_poset, find_embedding
from .representations import KPartiteRepresentation, partite_graph


def _pair_weight(n: int, a: int, b: int) -> Fraction:
    # probability that a uniform full chain passes through a fixed a-set
    # inside a fixed b-set
    return Fraction(
        factorial(a) * factorial(b - a) * factorial(n - b), factorial(n)
    )


@dataclass(frozen=True)
class ChainPairStats:
    pair_expectation: Fraction
    triple_expectation: Fraction
    gap_histogram: dict[int, Fraction]


def chain_pair_stats(family: SubsetFamily) -> ChainPairStats:
    """Expected number of member pairs on a uniform random full chain,
    expected number of (member, between-set, member) triples on it, and
    the pair expectation split by size gap.

    The triple count ranges over every subset strictly between the two
    members on the chain, member or not.
    """
    n = family.n
    pair = Fraction(0)
    triple = Fraction(0)
    hist: dict[int, Fraction] = {}
    members = family.members
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            # canonical order sorts by size first, so b is never below a
            if a & ~b:
                continue
            w = _pair_weight(n, a.bit_count(), b.bit_count())
            gap = b.bit_count() - a.bit_count()
            pair += w
            triple += w * (gap - 1)
            hist[gap] = hist.get(gap, Fraction(0)) + w
    return ChainPairStats(pair, triple, hist)


def _deletable_mask(family: SubsetFamily, b: int) -> int:
    ms = family.member_set()
    out = 0
    rest = b
    while rest:
        low = rest & -rest
        if (b ^ low) in ms:
            out |= low
        rest ^= low
    return out


def down_degree(family: SubsetFamily, b: int) -> int:
    """Number of members one element below b.  b must be a member."""
    if b not in family.member_set():
        raise ValueError("b is not a member of the family")
    return _deletable_mask(family, b).bit_count()


def down_degree_identity(family: SubsetFamily) -> tuple[Fraction, Fraction, bool]:
    """Two exact ways of averaging down-degrees over random full chains.

    Left side sums d(B)/(C(n,|B|)·|B|) over nonempty members; right side
    sums the chain weight of every gap-1 member pair.  They agree term by
    term, so the boolean is an internal consistency check.
    """
    n = family.n
    lhs = Fraction(0)
    for b in family.members:
        size = b.bit_count()
        if size == 0:
            continue
        lhs += Fraction(down_degree(family, b), comb(n, size) * size)
    rhs = Fraction(0)
    members = family.members
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if a & ~b:
                continue
            if b.bit_count() - a.bit_count() == 1:
                rhs += _pair_weight(n, a.bit_count(), b.bit_count())
    return lhs, rhs, lhs == rhs


@dataclass(frozen=True)
class KConfiguration:
    """A member B together with a core S = B minus k deletable elements:
    every single-element deletion of B inside B minus S stays in the family."""

    core: int
    member: int

    @property
    def deleted(self) -> int:
        return self.member & ~self.core


def enumerate_k_configurations(
    family: SubsetFamily, k: int
) -> tuple[tuple[KConfiguration, ...], dict[int, int]]:
    """All k-configurations, plus the count of configurations per core."""
    if k < 1:
        raise ValueError("k must be at least 1")
    configs = []
    counts: dict[int, int] = {}
    for b in family.members:
        deletable = _deletable_mask(family, b)
        bits = list(elements_of_mask(deletable))
        if len(bits) < k:
            continue
        for combo in combinations(bits, k):
            t = 0
            for e in combo:
                t |= 1 << (e - 1)
            s = b & ~t
            configs.append(KConfiguration(s, b))
            counts[s] = counts.get(s, 0) + 1
    return tuple(configs), counts


def configuration_identity(
    family: SubsetFamily, k: int
) -> tuple[Fraction, Fraction, bool]:
    """Core-side and member-side chain averages of k-configuration counts.

    Grouping by core gives sum of L(S)/C(n,|S|+k); grouping by member gives
    sum of C(d(B),k)/C(n,|B|).  Exactly equal for every family.
    """
    n = family.n
    _, counts = enumerate_k_configurations(family, k)
    lhs = Fraction(0)
    for s, cnt in counts.items():
        lhs += Fraction(cnt, comb(n, s.bit_count() + k))
    rhs = Fraction(0)
    for b in family.members:
        d = _deletable_mask(family, b).bit_count()
        if d >= k:
            rhs += Fraction(comb(d, k), comb(n, b.bit_count()))
    return lhs, rhs, lhs == rhs


def configuration_hypergraph(family: SubsetFamily, core: int, k: int) -> Hypergraph:
    """k-uniform hypergraph on the family's ground set whose edges are the
    k-sets T disjoint from the core with core+T a member and every
    single-element deletion of T from core+T also a member."""
    if k < 2:
        raise ValueError("k must be at least 2")
    edges = []
    target_size = core.bit_count() + k
    ms = family.member_set()
    for b in family.members:
        if b.bit_count() != target_size or b & core != core:
            continue
        t = b & ~core
        ok = True
        rest = t
        while rest:
            low = rest & -rest
            if (b ^ low) not in ms:
                ok = False
                break
            rest ^= low
        if ok:
            edges.append(t)
    return Hypergraph(k, family.n, tuple(edges))


@dataclass(frozen=True)
class ConfigurationTuranViolation:
    """A complete k-partite copy inside a configuration hypergraph, plus,
    when a representation is supplied, the member family it induces and an
    embedding of the representation's target into that family."""

    core: int
    parts: tuple[tuple[int, ...], ...]
    induced: SubsetFamily | None
    members_present: bool | None
    embedding: tuple[int, ...] | None


def configuration_turan_check(
    family: SubsetFamily,
    core: int,
    k: int,
    sizes: tuple[int, ...],
    rep: KPartiteRepresentation | None = None,
    budget: Budget | None = None,
) -> ConfigurationTuranViolation | None:
    """None when the configuration hypergraph at the core has no complete
    k-partite subgraph with the given part sizes.

    Otherwise the violation is materialized: with a representation whose
    partition has those part sizes, the witness parts pull the whole
    represented family into the big family as sets core+image, giving a
    copy of the representation's target.
    """
    h = configuration_hypergraph(family, core, k)
    parts = contains_complete_kpartite(h, sizes, budget)
    if parts is None:
        return None
    if rep is None:
        return ConfigurationTuranViolation(core, parts, None, None, None)
    if rep.k != k:
        raise ValueError("representation arity does not match k")
    rep_partition = is_k_partite(partite_graph(rep))
    if rep_partition is None:
        raise ValueError("representation is not k-partite")
    if tuple(len(p) for p in rep_partition.parts) != tuple(sizes):
        raise ValueError("part sizes do not match the representation's partition")
    vmap: dict[int, int] = {}
    for vpart, wpart in zip(rep_partition.parts, parts):
        for v, w in zip(sorted(vpart), sorted(wpart)):
            vmap[v] = w
    induced_masks = []
    for m in rep.family.members:
        im = core
        for v in elements_of_mask(m):
            im |= 1 << (vmap[v] - 1)
        induced_masks.append(im)
    induced = SubsetFamily.from_masks(family.n, tuple(induced_masks))
    ms = family.member_set()
    members_present = all(m in ms for m in induced.members)
    emb = find_embedding(family_as_poset(induced), rep.target, budget)
    return ConfigurationTuranViolation(core, parts, induced, members_present, emb)


@dataclass(frozen=True)
class ChainCoverViolation:
    """A (k-1)-set covered by edges in more than r of the nested cores'
    configuration hypergraphs; the covered sets core+T form a long chain."""

    shared: int
    colors: tuple[int, ...]
    chain: tuple[int, ...]


def chain_cover_check(
    family: SubsetFamily,
    cores: tuple[int, ...],
    k: int,
    r: int,
) -> ChainCoverViolation | None:
    """None when no (k-1)-set is covered by the configuration hypergraphs
    of more than r of the strictly nested cores.

    A violation exhibits the chain directly: for each offending core S the
    set S+T is a member (delete the edge's one extra element), and nesting
    of cores makes the S+T strictly nested.
    """
    if not cores:
        return None
    for lo, hi in zip(cores, cores[1:]):
        if lo & ~hi or lo == hi:
            raise ValueError("cores must be strictly nested, smallest first")
    hs = tuple(configuration_hypergraph(family, s, k) for s in cores)
    fam = ColoredFamily(hs)
    viol = cover_multiplicity(fam, r)
    if viol is None:
        return None
    combo, colors = viol
    shared = mask_from_elements(combo, family.n)
    ms = family.member_set()
    chain = []
    for i in colors:
        member = cores[i] | shared
        if member not in ms:
            raise AssertionError("cover witness did not land in the family")
        chain.append(member)
    return ChainCoverViolation(shared, tuple(colors), tuple(chain))


@dataclass(frozen=True)
class SetClassification:
    sub_count: int
    super_count: int
    few_below: bool
    few_above: bool


def middle_set_classification(
    family: SubsetFamily, s: int, r: int
) -> SetClassification:
    """Counts of members strictly below and strictly above s, with flags
    marking counts at most r-1.  s itself is counted on neither side."""
    sub = 0
    sup = 0
    for m in family.members:
        if m == s:
            continue
        if not m & ~s:
            sub += 1
        elif not s & ~m:
            sup += 1
    return SetClassification(sub, sup, sub <= r - 1, sup <= r - 1)
