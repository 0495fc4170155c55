"""Exact forbidden-subposet extremal numbers on small boolean lattices.

The maximum size (or maximum Lubell mass) of a pattern-free family is
computed by enumerating every copy of the pattern inside the lattice and
running branch and bound on the resulting hitting problem.  Witnesses are
canonicalized to the lexicographically least optimal family and re-checked
pattern-free before being returned.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .budget import Budget, BudgetExceeded
from .lattice import SubsetFamily, canonical_sort_key, lubell_value, middle_levels
from .posets import Poset, contains_weak, e_level, family_as_poset, iter_embeddings


@dataclass(frozen=True)
class CopyHypergraph:
    """Every copy of a pattern inside B_n, as vertex-index bitmasks.

    Vertices are the 2^n subsets in canonical order; verts[i] is the mask
    of vertex i.  complete=False means enumeration stopped at the cap and
    the copy list cannot certify optimality.
    """

    n: int
    verts: tuple[int, ...]
    copies: tuple[int, ...]
    complete: bool


@dataclass(frozen=True)
class ExtremalResult:
    value: int | Fraction
    witness: SubsetFamily
    optimality: str  # "proven" | "lower-bound-only"


@functools.lru_cache(maxsize=32)
def _lattice_vertices(n: int) -> tuple[tuple[int, ...], dict]:
    verts = tuple(sorted(range(1 << n), key=lambda m: canonical_sort_key(m)))
    index = {m: i for i, m in enumerate(verts)}
    return verts, index


@functools.lru_cache(maxsize=32)
def _lattice_poset(n: int) -> Poset:
    return family_as_poset(middle_levels(n, n + 1))


DEFAULT_COPY_CAP = 2_000_000


def enumerate_copies(
    n: int,
    pattern: Poset,
    budget: Budget | None = None,
    cap: int | None = DEFAULT_COPY_CAP,
) -> CopyHypergraph:
    """Deduplicated images of weak embeddings of the pattern into B_n."""
    if pattern.size == 0:
        raise ValueError("pattern must be nonempty")
    verts, _ = _lattice_vertices(n)
    host = _lattice_poset(n)
    images: set[int] = set()
    for phi in iter_embeddings(host, pattern, budget):
        im = 0
        for h in phi:
            im |= 1 << h
        images.add(im)
        if cap is not None and len(images) > cap:
            return CopyHypergraph(n, verts, tuple(sorted(images)), False)
    return CopyHypergraph(n, verts, tuple(sorted(images)), True)


class _Found(Exception):
    def __init__(self, witness: int):
        self.witness = witness


class _Engine:
    """Branch and bound for a maximum-weight family hitting no copy.

    Branch vertex: the free vertex lying in the most still-alive copies,
    ties to the smallest canonical index.  Bound: total weight of included
    and free vertices, minus one minimum-weight vertex for each copy in a
    greedy disjoint packing of alive copies.
    """

    def __init__(self, nverts: int, weights, copies, budget: Budget | None):
        self.nverts = nverts
        self.weights = weights
        self.copies = copies
        self.universe = (1 << nverts) - 1
        self.budget = budget
        self.best_val = None
        self.best_wit = None
        self._mode = "max"
        self._target = None

    def weight_of(self, mask: int):
        t = 0
        while mask:
            low = mask & -mask
            t += self.weights[low.bit_length() - 1]
            mask ^= low
        return t

    def _packing_loss(self, alive, included: int, free: int):
        taken = 0
        loss = 0
        for c in alive:
            fp = c & free
            if fp and not fp & taken:
                taken |= fp
                m = None
                while fp:
                    low = fp & -fp
                    w = self.weights[low.bit_length() - 1]
                    if m is None or w < m:
                        m = w
                    fp ^= low
                loss += m
        return loss

    def _note(self, witness: int, val):
        if self._mode == "feas":
            if val >= self._target:
                raise _Found(witness)
            return
        if self.best_val is None or val > self.best_val:
            self.best_val = val
            self.best_wit = witness

    def _keeps_searching(self, ub) -> bool:
        if self._mode == "feas":
            return ub >= self._target
        return self.best_val is None or ub > self.best_val

    def _search(self, included: int, excluded: int, alive):
        if self.budget is not None:
            self.budget.tick()
        free = self.universe & ~included & ~excluded
        if not alive:
            self._note(included | free, self.weight_of(included | free))
            return
        ub = self.weight_of(included | free) - self._packing_loss(
            alive, included, free
        )
        if not self._keeps_searching(ub):
            return
        deg: dict[int, int] = {}
        for c in alive:
            fp = c & free
            while fp:
                low = fp & -fp
                i = low.bit_length() - 1
                deg[i] = deg.get(i, 0) + 1
                fp ^= low
        v = max(deg, key=lambda i: (deg[i], -i))
        bit = 1 << v
        if all(c & ~(included | bit) for c in alive):
            self._search(included | bit, excluded, alive)
        self._search(included, excluded | bit, [c for c in alive if not c & bit])

    def maximize(self, seed_val, seed_wit: int):
        self._mode = "max"
        self.best_val = seed_val
        self.best_wit = seed_wit
        self._search(0, 0, list(self.copies))

    def feasible(self, forced_in: int, forced_out: int, target) -> bool:
        for c in self.copies:
            if not c & ~forced_in:
                return False
        self._mode = "feas"
        self._target = target
        alive = [c for c in self.copies if not c & forced_out]
        try:
            self._search(forced_in, forced_out, alive)
        except _Found:
            return True
        finally:
            self._mode = "max"
            self._target = None
        return False

    def lexmin_witness(self, target) -> int:
        decided_in = 0
        decided_out = 0
        for i in range(self.nverts):
            bit = 1 << i
            completes = any(
                not c & ~(decided_in | bit)
                for c in self.copies
                if not c & decided_out
            )
            if not completes and self.feasible(decided_in | bit, decided_out, target):
                decided_in |= bit
            else:
                decided_out |= bit
        return decided_in


def _family_from_vertex_mask(n: int, mask: int) -> SubsetFamily:
    verts, _ = _lattice_vertices(n)
    members = []
    while mask:
        low = mask & -mask
        members.append(verts[low.bit_length() - 1])
        mask ^= low
    return SubsetFamily.from_masks(n, tuple(members))


def _vertex_mask_of_family(fam: SubsetFamily) -> int:
    _, index = _lattice_vertices(fam.n)
    m = 0
    for member in fam.members:
        m |= 1 << index[member]
    return m


def la_lower_bound(n: int, pattern: Poset, budget: Budget | None = None) -> ExtremalResult:
    """Size of the widest middle band free of the pattern, re-verified."""
    m = e_level(pattern, n, budget)
    if m == 0:
        return ExtremalResult(0, SubsetFamily(n, ()), "lower-bound-only")
    fam = middle_levels(n, m)
    if contains_weak(family_as_poset(fam), pattern):
        raise AssertionError("band reported free still hosts the pattern")
    return ExtremalResult(len(fam.members), fam, "lower-bound-only")


def _copy_free(copies, wit_mask: int) -> bool:
    return all(c & ~wit_mask for c in copies)


def _run_exact(n, pattern, budget, copy_cap, weights_of, seed_result, seed_val):
    try:
        ch = enumerate_copies(n, pattern, budget, copy_cap)
    except BudgetExceeded:
        return seed_result
    if not ch.complete:
        return seed_result
    verts, _ = _lattice_vertices(n)
    engine = _Engine(len(verts), weights_of(verts), ch.copies, budget)
    seed_mask = _vertex_mask_of_family(seed_result.witness)
    try:
        engine.maximize(seed_val, seed_mask)
    except BudgetExceeded:
        wit = _family_from_vertex_mask(n, engine.best_wit)
        return ExtremalResult(engine.best_val, wit, "lower-bound-only")
    best = engine.best_val
    try:
        wit_mask = engine.lexmin_witness(best)
    except BudgetExceeded:
        wit_mask = engine.best_wit
    if not _copy_free(ch.copies, wit_mask):
        raise AssertionError("optimal witness hosts a copy of the pattern")
    wit = _family_from_vertex_mask(n, wit_mask)
    return ExtremalResult(best, wit, "proven")


def la_exact(
    n: int,
    pattern: Poset,
    budget: Budget | None = None,
    copy_cap: int | None = DEFAULT_COPY_CAP,
) -> ExtremalResult:
    """Largest pattern-free family size in B_n.

    Degrades to the middle-band lower bound (optimality="lower-bound-only")
    when the copy cap is hit; a budget that runs out mid-search yields the
    best witness found so far.
    """
    seed = la_lower_bound(n, pattern)
    return _run_exact(
        n,
        pattern,
        budget,
        copy_cap,
        lambda verts: [1] * len(verts),
        seed,
        seed.value,
    )


def lambda_exact(
    n: int,
    pattern: Poset,
    budget: Budget | None = None,
    copy_cap: int | None = DEFAULT_COPY_CAP,
) -> ExtremalResult:
    """Largest Lubell mass of a pattern-free family in B_n, exact rational."""
    seed_band = la_lower_bound(n, pattern)
    seed = ExtremalResult(
        lubell_value(seed_band.witness), seed_band.witness, "lower-bound-only"
    )

    def weights_of(verts):
        return [Fraction(1, comb(n, m.bit_count())) for m in verts]

    return _run_exact(n, pattern, budget, copy_cap, weights_of, seed, seed.value)
