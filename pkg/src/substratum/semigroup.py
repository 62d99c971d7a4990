"""Transformation-semigroup machinery for the column maps of a substitution.

The central object is the intersection, over all n, of the monoids generated
by the columns of theta^n.  The intersection is computed exactly: the sequence
of "products of exactly k generators" layers is eventually periodic in k, and
an element survives every monoid in the chain precisely when it keeps
reappearing at lengths divisible by the layer period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .substitution import ColumnMap, Substitution


def _sorted_maps(maps) -> tuple[ColumnMap, ...]:
    return tuple(sorted(maps, key=lambda m: m.table))


@dataclass(frozen=True)
class SemigroupClosure:
    """Composition closure of a generator set, with rank bookkeeping."""

    generators: tuple[ColumnMap, ...]
    elements: tuple[ColumnMap, ...]
    contains_id: bool
    min_rank: int


def closure(generators) -> SemigroupClosure:
    """Least composition-closed superset of the generators (worklist saturation)."""
    gens = _sorted_maps(set(generators))
    if not gens:
        raise ValueError("need at least one generator")
    seen: set[ColumnMap] = set(gens)
    frontier = list(gens)
    while frontier:
        m = frontier.pop()
        for g in gens:
            for prod in (m.compose(g), g.compose(m)):
                if prod not in seen:
                    seen.add(prod)
                    frontier.append(prod)
    elements = _sorted_maps(seen)
    identity = ColumnMap.identity(gens[0].alphabet)
    return SemigroupClosure(
        generators=gens,
        elements=elements,
        contains_id=identity in seen,
        min_rank=min(m.image_size() for m in elements),
    )


def min_rank(semigroup: SemigroupClosure) -> int:
    return semigroup.min_rank


@dataclass(frozen=True)
class LengthSet:
    """Eventually periodic set of word lengths at which a map is a product.

    ``small`` lists the lengths up to the threshold; beyond it membership is
    periodic with the given period: k belongs iff k mod period is in
    ``residues``.
    """

    threshold: int
    period: int
    small: frozenset[int]
    residues: frozenset[int]

    def __contains__(self, k: int) -> bool:
        if k <= self.threshold:
            return k in self.small
        return k % self.period in self.residues

    def hits_all_multiples(self) -> bool:
        """Whether every n >= 1 divides some member (decided from cycle data)."""
        # For huge n only lengths beyond the threshold matter, and multiples of
        # lcm(n, period) reduce to residue 0; so residue 0 is necessary, and it
        # is also sufficient since multiples of the period divisible by any n
        # occur beyond any threshold.
        return 0 in self.residues


@dataclass(frozen=True)
class GradedReachability:
    """Layer-by-layer reachability of closure elements by generator products."""

    threshold: int
    period: int
    length_sets: dict[ColumnMap, LengthSet]
    layers: tuple[frozenset[ColumnMap], ...]  # layers[k] = products of exactly k+1 generators

    def layer(self, k: int) -> frozenset[ColumnMap]:
        """Products of exactly k >= 1 generators."""
        if k <= len(self.layers):
            return self.layers[k - 1]
        k0 = self.threshold + 1 + (k - self.threshold - 1) % self.period
        return self.layers[k0 - 1]


@lru_cache(maxsize=None)
def graded_reachability(sub: Substitution) -> GradedReachability:
    """Compute the layer sequence P_k = P_{k-1} * generators with cycle detection."""
    gens = set(sub.columns())
    layers: list[frozenset[ColumnMap]] = [frozenset(gens)]
    seen_at: dict[frozenset[ColumnMap], int] = {layers[0]: 1}
    while True:
        nxt = frozenset(m.compose(g) for m in layers[-1] for g in gens)
        k = len(layers) + 1
        if nxt in seen_at:
            threshold = seen_at[nxt] - 1
            period = k - seen_at[nxt]
            break
        seen_at[nxt] = k
        layers.append(nxt)

    identity = ColumnMap.identity(sub.alphabet)
    all_maps = set().union(*layers) | {identity}
    length_sets: dict[ColumnMap, LengthSet] = {}
    for m in sorted(all_maps, key=lambda c: c.table):
        small = {k + 1 for k in range(min(threshold, len(layers))) if m in layers[k]}
        if m.is_identity():
            small.add(0)  # the empty product
        residues = set()
        for k in range(threshold + 1, threshold + period + 1):
            if m in layers[k - 1]:
                residues.add(k % period)
        length_sets[m] = LengthSet(
            threshold=threshold,
            period=period,
            small=frozenset(small),
            residues=frozenset(residues),
        )
    return GradedReachability(
        threshold=threshold,
        period=period,
        length_sets=length_sets,
        layers=tuple(layers),
    )


@dataclass(frozen=True)
class StructureSemigroup:
    """The intersection over n of <id, columns of theta^n>, plus diagnostics."""

    elements: tuple[ColumnMap, ...]
    stabilizing_exponent: int
    anti_chain_ok: bool

    def __contains__(self, m: ColumnMap) -> bool:
        return m in set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _monoid_at_exponent(graded: GradedReachability, n: int, identity: ColumnMap) -> frozenset[ColumnMap]:
    """<id, columns of theta^n> = id plus all products of k*n generators."""
    out = {identity}
    # beyond the threshold the layers cycle with the layer period, so scanning
    # multiples of n up to threshold + lcm(n, period) covers every distinct layer
    stop = graded.threshold + math.lcm(n, graded.period) + 1
    k = n
    while k <= stop:
        out |= graded.layer(k)
        k += n
    return frozenset(out)


@lru_cache(maxsize=None)
def structure_semigroup(sub: Substitution, scan_limit: int = 64) -> StructureSemigroup:
    """Exact intersection semigroup and the least exponent realizing it.

    The intersection equals {id} plus the stable layer at the first multiple
    of the layer period past the threshold.  The stabilizing exponent is found
    by scanning; the divisibility anti-chain claimed for the monoid family is
    verified on the scanned range rather than assumed.
    """
    graded = graded_reachability(sub)
    identity = ColumnMap.identity(sub.alphabet)
    k0 = graded.period * (graded.threshold // graded.period + 1)
    elements = frozenset(graded.layer(k0)) | {identity}

    monoids: dict[int, frozenset[ColumnMap]] = {}
    exponent = None
    for n in range(1, scan_limit + 1):
        monoids[n] = _monoid_at_exponent(graded, n, identity)
        if exponent is None and monoids[n] == elements:
            exponent = n
    if exponent is None:  # the layer math guarantees some multiple of the period works
        exponent = k0
        monoids[exponent] = _monoid_at_exponent(graded, exponent, identity)

    anti_chain_ok = True
    for n, big in monoids.items():
        for d in range(1, n):
            if n % d == 0 and d in monoids and not big <= monoids[d]:
                anti_chain_ok = False
    return StructureSemigroup(
        elements=_sorted_maps(elements),
        stabilizing_exponent=exponent,
        anti_chain_ok=anti_chain_ok,
    )
