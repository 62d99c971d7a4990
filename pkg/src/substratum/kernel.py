"""The ell-kernel of a substitution fixed point, symbolically and by brute force.

A subsequence (u_{ell^e n + j}) is identified with the column-map composition
spelled by the e digits of j; two witnesses name the same kernel element when
no digit word can tell their induced subsequences apart.  The brute-force
variant extracts subsequences straight from an expanded window and counts
distinct contents, giving a lower bound that must stabilize at the symbolic
count as the window grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import StateExplosion, WindowTooShort
from .oracle import Window, window_for_range
from .substitution import ColumnMap, Substitution, word_budget

ONE_SIDED = "one-sided"
TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class KernelElement:
    """One subsequence class, with its first BFS witness (e, j) and a sample."""

    class_map: ColumnMap
    e: int
    j: int
    phase: int
    sample: tuple[str, ...]

    def witness(self) -> tuple[int, int]:
        return (self.e, self.j)


def enumerate_kernel(
    sub: Substitution,
    side: str = TWO_SIDED,
    sample_length: int = 16,
    budget: int | None = None,
) -> tuple[KernelElement, ...]:
    """All distinct kernel subsequences, by BFS over column-map states.

    States are column maps composed digit by digit (with the word-length
    phase, which matters only for merely-periodic seeds); distinctness is
    decided by refining the state set against its own outputs, i.e. two
    states differ exactly when some digit word leads them to different
    sequence entries on a relevant side.
    """
    if side not in (ONE_SIDED, TWO_SIDED):
        raise ValueError(f"side must be {ONE_SIDED!r} or {TWO_SIDED!r}")
    a_l, a_r = sub.require_seed()
    p_r, p_l = sub.seed_periods()
    period = p_r if side == ONE_SIDED else math.lcm(p_r, p_l)
    cols = sub.columns()
    col_first, col_last = cols[0], cols[-1]

    anchors_r = [a_r]
    for _ in range(p_r - 1):
        anchors_r.append(col_first.table[anchors_r[-1]])
    anchors_l = [a_l]
    for _ in range(p_l - 1):
        anchors_l.append(col_last.table[anchors_l[-1]])

    def outputs(node: tuple[ColumnMap, int]) -> tuple[int, ...]:
        s, phase = node
        right = s.table[anchors_r[(-phase) % p_r]]
        if side == ONE_SIDED:
            return (right,)
        return (right, s.table[anchors_l[(-phase) % p_l]])

    start = (ColumnMap.identity(sub.alphabet), 0)
    index: dict[tuple[ColumnMap, int], int] = {start: 0}
    nodes = [start]
    witnesses: list[tuple[int, int]] = [(0, 0)]
    limit = word_budget(budget)
    # level-by-level discovery keeps the recorded witness minimal in (e, j)
    frontier: dict[tuple[ColumnMap, int], int] = {start: 0}
    e = 0
    while frontier:
        discovered: dict[tuple[ColumnMap, int], int] = {}
        for node, j in frontier.items():
            s, phase = node
            for d in range(sub.length):
                child = (s.compose(cols[d]), (phase + 1) % period)
                if child in index:
                    continue
                j_child = j + d * sub.length**e
                if child not in discovered or j_child < discovered[child]:
                    discovered[child] = j_child
        for child, j_child in sorted(discovered.items(), key=lambda kv: kv[1]):
            if len(nodes) >= limit:
                raise StateExplosion(f"kernel state count exceeds budget {limit}")
            index[child] = len(nodes)
            nodes.append(child)
            witnesses.append((e + 1, j_child))
        frontier = discovered
        e += 1
    edges = []
    for s, phase in nodes:
        edges.append(
            tuple(index[(s.compose(cols[d]), (phase + 1) % period)] for d in range(sub.length))
        )

    # Moore refinement over the state graph decides subsequence equality
    block = {i: outputs(nodes[i]) for i in range(len(nodes))}
    ids = sorted(set(block.values()))
    block = {i: ids.index(v) for i, v in block.items()}
    while True:
        signatures: dict[tuple, int] = {}
        nxt = {}
        for i in range(len(nodes)):
            sig = (block[i], tuple(block[t] for t in edges[i]))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            nxt[i] = signatures[sig]
        if len(signatures) == len(set(block.values())):
            block = nxt
            break
        block = nxt

    chosen: dict[int, int] = {}
    for i in range(len(nodes)):  # BFS order makes the first witness minimal in (e, j)
        chosen.setdefault(block[i], i)
    elements = []
    for i in sorted(chosen.values(), key=lambda i: witnesses[i]):
        s, phase = nodes[i]
        e, j = witnesses[i]
        elements.append(
            KernelElement(
                class_map=s,
                e=e,
                j=j,
                phase=phase,
                sample=_sample(sub, e, j, sample_length, budget),
            )
        )
    return tuple(elements)


def _sample(sub: Substitution, e: int, j: int, length: int, budget) -> tuple[str, ...]:
    step = sub.length**e
    top = j + (length - 1) * step
    if step * length > word_budget(budget):
        length = max(1, word_budget(budget) // step)
        top = j + (length - 1) * step
    word = sub.fixed_point_window(0, top, budget=budget)
    return tuple(word[j + n * step] for n in range(length))


@dataclass(frozen=True)
class BruteForceKernel:
    count: int
    representatives: tuple[tuple[int, int], ...]  # first (e, j) per distinct content


def brute_force_kernel(
    window: Window,
    ell: int,
    e_max: int,
    min_length: int = 4,
) -> BruteForceKernel:
    """Count distinct subsequences (u_{ell^e n + j}), e <= e_max, inside a window.

    Every subsequence is sampled over the same centered index range so the
    contents are comparable; the range must keep at least ``min_length``
    entries at depth ``e_max``.
    """
    step_max = ell**e_max
    two_sided = window.lo < 0
    if two_sided:
        reach = min(-window.lo, window.hi + 1)
        radius = reach // step_max
        if radius < min_length:
            raise WindowTooShort(
                f"window supports radius {radius} at depth {e_max}, need {min_length}"
            )
        sample_range = range(-radius, radius)
    else:
        count = (window.hi + 1) // step_max
        if count < min_length:
            raise WindowTooShort(
                f"window supports {count} entries at depth {e_max}, need {min_length}"
            )
        sample_range = range(0, count)

    seen: dict[tuple[int, ...], tuple[int, int]] = {}
    for e in range(e_max + 1):
        step = ell**e
        for j in range(step):
            content = tuple(window[step * n + j] for n in sample_range)
            seen.setdefault(content, (e, j))
    reps = tuple(sorted(seen.values()))
    return BruteForceKernel(count=len(seen), representatives=reps)


def brute_force_kernel_for(
    sub: Substitution,
    e_max: int,
    side: str = TWO_SIDED,
    min_length: int = 4,
    budget: int | None = None,
) -> BruteForceKernel:
    """Convenience wrapper: expand a window large enough for the given depth."""
    step = sub.length**e_max
    span = step * max(min_length, 8)
    if side == ONE_SIDED:
        window = window_for_range(sub, 0, span, budget=budget)
        window = Window(window.alphabet, 0, window.hi, window.letters[-window.lo :])
    else:
        window = window_for_range(sub, -span, span, budget=budget)
    return brute_force_kernel(window, sub.length, e_max, min_length=min_length)
