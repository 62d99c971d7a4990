"""Periodic/aperiodic structure of a coincidence substitution's fixed point.

An index n lies in Per exactly when the walk along its ell-adic digit stream
through the reverse-reading semigroup machine eventually reaches a constant
state (constant states absorb, so "eventually" is decidable: after the
canonical digits only the sign's tail digit repeats, and the tail walk
cycles).  The reduced graph is what remains of that machine after deleting
the constant states; infinite digit streams surviving inside it spell the
aperiodic addresses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import digits as digitmod
from .automata import SemigroupAutomaton, build_reverse_semigroup
from .errors import NontrivialHeight, NotToeplitz, WindowTooShort
from .oracle import Window, expand, sample_progression
from .substitution import ColumnMap, Substitution

PERIODIC = "periodic"
APERIODIC = "aperiodic"


@dataclass(frozen=True)
class PeriodicityVerdict:
    """Per-index verdict; periodic indices carry the certified power of ell."""

    index: int
    status: str
    exponent: int | None
    period: int | None
    letter: str | None
    state_pos: ColumnMap
    state_neg: ColumnMap

    def is_periodic(self) -> bool:
        return self.status == PERIODIC


@dataclass(frozen=True)
class ToeplitzGate:
    """Cached admissibility data for the decision procedure."""

    height: int
    column_number: int
    aperiodic_heuristic: bool


@lru_cache(maxsize=None)
def _gate(sub: Substitution) -> ToeplitzGate:
    h = sub.height()
    if h != 1:
        raise NontrivialHeight(f"height {h} > 1: pure base construction not provided")
    c = sub.column_number()
    if c != 1:
        raise NotToeplitz(f"column number {c} != 1: the shift is not Toeplitz")
    return ToeplitzGate(height=h, column_number=c, aperiodic_heuristic=sub.is_aperiodic_heuristic())


def gate(sub: Substitution) -> ToeplitzGate:
    """Check the preconditions (primitive, height 1, coincidence); cache the result."""
    if not sub.is_primitive():
        raise NotToeplitz("the decision procedure needs a primitive substitution")
    sub.require_seed()
    return _gate(sub)


def _adic_walk(sub: Substitution, n: int):
    """States s_k = composition of the first k ell-adic digits of n, until the
    tail walk cycles.  Yields (k, state) pairs."""
    cols = sub.columns()
    tail = cols[0] if n >= 0 else cols[-1]
    ds = digitmod.to_digits(n, sub.length)
    s = ColumnMap.identity(sub.alphabet)
    k = 0
    yield k, s
    for d in reversed(ds.digits):  # least significant digit first
        s = s.compose(cols[d])
        k += 1
        yield k, s
    seen = {s}
    while True:
        s = s.compose(tail)
        k += 1
        if s in seen:
            return
        seen.add(s)
        yield k, s


def decide_per(sub: Substitution, n: int) -> PeriodicityVerdict:
    """Classify one index of the fixed point as periodic or aperiodic.

    Periodic with period ell^k means the two-sided progression through n with
    step ell^k is constant; the walk state being a constant map certifies it
    in both directions at once, and the marker-composed state is reported as
    the negative-side evidence in the shape of the two-condition test.
    """
    gate(sub)
    marker_col = sub.column(sub.length - 1)
    last = None
    for k, s in _adic_walk(sub, n):
        last = (k, s)
        if s.is_constant():
            letter = sub.alphabet[s.table[0]]
            return PeriodicityVerdict(
                index=n,
                status=PERIODIC,
                exponent=k,
                period=sub.length**k,
                letter=letter,
                state_pos=s,
                state_neg=s.compose(marker_col),
            )
    k, s = last
    return PeriodicityVerdict(
        index=n,
        status=APERIODIC,
        exponent=None,
        period=None,
        letter=None,
        state_pos=s,
        state_neg=s.compose(marker_col),
    )


@dataclass(frozen=True)
class RangeReport:
    """decide_per over a range, with optional oracle cross-validation."""

    lo: int
    hi: int
    verdicts: tuple[PeriodicityVerdict, ...]
    aperiodic: tuple[int, ...]
    aperiodic_heuristic: bool
    certified: bool
    inconsistencies: tuple[str, ...]

    def summary(self) -> str:
        inner = ", ".join(str(n) for n in self.aperiodic)
        return f"Aper ∩ [{self.lo},{self.hi}] = {{{inner}}}"


def aperiodic_in_range(
    sub: Substitution,
    lo: int,
    hi: int,
    certify: bool = False,
    certify_depth: int = 6,
    budget: int | None = None,
) -> RangeReport:
    """Run decide_per on every index in [lo, hi].

    With ``certify`` the verdicts are cross-checked against windowed
    progressions: a periodic index must show a single letter at its step
    within a window of length >= ell^(k+3); an aperiodic one must show two
    letters at every step ell^k up to the certification depth.
    """
    g = gate(sub)
    verdicts = tuple(decide_per(sub, n) for n in range(lo, hi + 1))
    aperiodic = tuple(v.index for v in verdicts if not v.is_periodic())
    # the two statuses partition the range by construction; assert anyway
    assert len(verdicts) == hi - lo + 1

    inconsistencies: list[str] = []
    if certify:
        max_expo = max((v.exponent for v in verdicts if v.is_periodic()), default=0)
        max_expo = max(max_expo, certify_depth)
        gens = max_expo + 3  # window length 2*ell^gens >= ell^(k+3) for every verdict
        while sub.length**gens < max(abs(lo), abs(hi) + 1):
            gens += 1
        window = expand(sub, gens, budget=budget)
        # a periodic claim is checked across at least ell^(k+3)/step = ell^3
        # progression terms; an aperiodic claim only needs two letters found
        periodic_terms = 2 * sub.length**3
        for v in verdicts:
            if v.is_periodic():
                seen = sample_progression(window, v.index, v.period, max_terms=periodic_terms)
                if seen != {v.letter}:
                    inconsistencies.append(
                        f"index {v.index}: claimed constant {v.letter} at step {v.period}, saw {sorted(seen)}"
                    )
            else:
                for k in range(certify_depth + 1):
                    seen = sample_progression(window, v.index, sub.length**k, stop_at=2)
                    if len(seen) < 2:
                        inconsistencies.append(
                            f"index {v.index}: claimed aperiodic but step {sub.length**k} shows only {sorted(seen)}"
                        )
    return RangeReport(
        lo=lo,
        hi=hi,
        verdicts=verdicts,
        aperiodic=aperiodic,
        aperiodic_heuristic=g.aperiodic_heuristic,
        certified=certify,
        inconsistencies=tuple(inconsistencies),
    )


def per_k_window(window: Window, k: int, letter: str) -> frozenset[int]:
    """Window approximation of Per_k(x, letter): indices whose whole residue
    class inside the window carries the letter.  Necessary-condition oracle."""
    if k < 1:
        raise WindowTooShort("period must be positive")
    if len(window) < 2 * k:
        raise WindowTooShort(f"window of {len(window)} letters cannot test period {k}")
    good_residues = set()
    for r in range(k):
        first = window.lo + (r - window.lo) % k
        letters = {window.letter(i) for i in range(first, window.hi + 1, k)}
        if letters == {letter}:
            good_residues.add(r)
    return frozenset(i for i in range(window.lo, window.hi + 1) if i % k in good_residues)


@dataclass(frozen=True)
class CycleInfo:
    """A labelled simple cycle of the reduced graph, with the address it spells.

    The address is the ell-adic integer whose digit stream is the access path
    followed by the cycle repeated; it collapses to an ordinary integer only
    when the cycle repeats the digit 0 (a non-negative address) or the digit
    ell-1 (a negative one).
    """

    entry_state: int
    prefix_digits: tuple[int, ...]
    cycle_digits: tuple[int, ...]
    address: int | None


@dataclass(frozen=True)
class ReducedGraph:
    """Semigroup automaton minus its constant states and the edges into them."""

    machine: SemigroupAutomaton
    vertices: tuple[int, ...]
    vertex_labels: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]  # (source, digit, target)
    removed: int
    sccs: tuple[tuple[int, ...], ...]
    cycles: tuple[CycleInfo, ...]

    def to_dot(self) -> str:
        lines = ["digraph reduced {", "  rankdir=LR;", "  node [shape=circle, fontsize=11];"]
        names = {v: self.vertex_labels[i] for i, v in enumerate(self.vertices)}
        initial = self.machine.dfao.initial_nonneg
        if initial in names:
            lines.append('  __init [shape=none, label=""];')
            lines.append(f'  __init -> "{names[initial]}";')
        for v in self.vertices:
            lines.append(f'  "{names[v]}";')
        grouped: dict[tuple[int, int], list[int]] = {}
        for src, d, dst in self.edges:
            grouped.setdefault((src, dst), []).append(d)
        for (src, dst), ds in sorted(grouped.items()):
            label = ",".join(str(d) for d in sorted(ds))
            lines.append(f'  "{names[src]}" -> "{names[dst]}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def reduced_graph(
    sub: Substitution,
    cycle_length_budget: int = 12,
    cycle_count_budget: int = 500,
    budget: int | None = None,
) -> ReducedGraph:
    """Delete all 1-vertices (constant-map states) and edges leading to them."""
    gate(sub)
    machine = build_reverse_semigroup(sub, budget=budget)
    dfao = machine.dfao
    keep = [s for s in range(dfao.num_states) if machine.state_maps[s].image_size() >= 2]
    keep_set = set(keep)
    edges = tuple(
        (s, d, dfao.delta[s][d])
        for s in keep
        for d in range(dfao.ell)
        if dfao.delta[s][d] in keep_set
    )
    adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in keep}
    for s, d, t in edges:
        adjacency[s].append((d, t))

    sccs = _strongly_connected(keep, adjacency)
    cycles = _labelled_cycles(keep, adjacency, cycle_length_budget, cycle_count_budget)
    reachable_prefix = _shortest_paths(dfao.initial_nonneg, keep_set, adjacency)
    infos = []
    for start, digit_seq in cycles:
        if start not in reachable_prefix:
            continue  # never the digit stream of an actual integer walk
        prefix = reachable_prefix[start]
        address: int | None = None
        if all(d == 0 for d in digit_seq):
            address = _value(prefix, dfao.ell)
        elif all(d == dfao.ell - 1 for d in digit_seq):
            address = _value(prefix, dfao.ell) - dfao.ell ** len(prefix)
        infos.append(
            CycleInfo(
                entry_state=start,
                prefix_digits=prefix,
                cycle_digits=digit_seq,
                address=address,
            )
        )
    infos.sort(key=lambda c: (len(c.cycle_digits), c.cycle_digits, c.prefix_digits))
    return ReducedGraph(
        machine=machine,
        vertices=tuple(keep),
        vertex_labels=tuple(dfao.labels[s] for s in keep),
        edges=edges,
        removed=dfao.num_states - len(keep),
        sccs=sccs,
        cycles=tuple(infos),
    )


def _value(digits_low_first: tuple[int, ...], ell: int) -> int:
    return sum(d * ell**i for i, d in enumerate(digits_low_first))


def _shortest_paths(initial: int, keep: set[int], adjacency) -> dict[int, tuple[int, ...]]:
    """BFS digit paths from the initial state staying inside the reduced graph."""
    if initial not in keep:
        return {}
    paths = {initial: ()}
    queue = deque([initial])
    while queue:
        s = queue.popleft()
        for d, t in sorted(adjacency[s]):
            if t not in paths:
                paths[t] = paths[s] + (d,)
                queue.append(t)
    return paths


def _strongly_connected(vertices, adjacency) -> tuple[tuple[int, ...], ...]:
    """Iterative Tarjan over the reduced graph."""
    index_of: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    sccs: list[tuple[int, ...]] = []
    counter = 0
    for root in vertices:
        if root in index_of:
            continue
        work = [(root, iter(sorted(adjacency[root])))]
        index_of[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for _, w in it:
                if w not in index_of:
                    index_of[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(adjacency[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index_of[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                sccs.append(tuple(sorted(component)))
    return tuple(sorted(sccs))


def _labelled_cycles(vertices, adjacency, max_length: int, max_count: int):
    """Simple digit-labelled cycles up to the length budget.

    A cycle is anchored at its smallest vertex to avoid reporting rotations.
    """
    cycles: list[tuple[int, tuple[int, ...]]] = []
    for anchor in sorted(vertices):
        stack = [(anchor, (), frozenset())]
        while stack:
            v, digit_seq, visited = stack.pop()
            for d, t in sorted(adjacency[v], reverse=True):
                if t == anchor:
                    cycles.append((anchor, digit_seq + (d,)))
                    if len(cycles) >= max_count:
                        return cycles
                elif t > anchor and t not in visited and len(digit_seq) + 1 < max_length:
                    stack.append((t, digit_seq + (d,), visited | {t}))
    return cycles
