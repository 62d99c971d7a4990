"""DFAOs for substitution fixed points: direct reading, reverse reading, and
the constructions between them.

Conventions for a base-ell machine generating a two-sided sequence u:

* non-negative n is fed as its canonical expansion, negative n as the
  marker-prefixed canonical word ``ell-1 d_k ... d_0``;
* direct reading consumes the most significant digit first, reverse reading
  the least significant first (so the marker of a negative word arrives last);
* a one-sided machine omits the negative initial state and output map.

Seed letters that are merely periodic (not fixed) under the end columns force
digit words whose lengths are multiples of the seed period.  Direct machines
carry that as padding applied by :meth:`Dfao.run`; reverse machines fold it
into their states (a word-length phase) so that their outputs stay pinned to
sequence values under arbitrary padding.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from . import digits as digitmod
from .errors import (
    DigitOutOfRange,
    NoNegativeSide,
    SeedMissing,
    StateExplosion,
    UnknownLetter,
)
from .substitution import ColumnMap, Substitution, word_budget

DIRECT = "direct"
REVERSE = "reverse"


@dataclass(frozen=True)
class Dfao:
    """A deterministic finite automaton with per-side outputs."""

    ell: int
    labels: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial_nonneg: int
    initial_neg: int | None
    out_alphabet: tuple[str, ...]
    out_nonneg: tuple[int, ...]
    out_neg: tuple[int, ...] | None
    reading: str
    pad_nonneg: int = 1
    pad_neg: int = 1

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.delta) != n or len(self.out_nonneg) != n:
            raise UnknownLetter("state tables must agree with the label list")
        for row in self.delta:
            if len(row) != self.ell or any(not 0 <= t < n for t in row):
                raise DigitOutOfRange("transition table must be total over the digits")
        if (self.initial_neg is None) != (self.out_neg is None):
            raise NoNegativeSide("negative side needs both an initial state and outputs")

    @property
    def num_states(self) -> int:
        return len(self.labels)

    def two_sided(self) -> bool:
        return self.initial_neg is not None

    # -- running -------------------------------------------------------

    def run_word(self, word, side: str = "nonneg") -> str:
        """Feed an explicit digit word (most significant digit first)."""
        if side == "nonneg":
            state = self.initial_nonneg
            outputs = self.out_nonneg
        else:
            if self.initial_neg is None:
                raise NoNegativeSide("machine has no negative-side initial state")
            state = self.initial_neg
            outputs = self.out_neg
        order = word if self.reading == DIRECT else reversed(word)
        for d in order:
            if not 0 <= d < self.ell:
                raise DigitOutOfRange(f"digit {d} outside base {self.ell}")
            state = self.delta[state][d]
        return self.out_alphabet[outputs[state]]

    def run(self, n: int) -> str:
        """The sequence entry u_n, from the canonical expansion of n."""
        ds = digitmod.to_digits(n, self.ell)
        pad = self.pad_nonneg if n >= 0 else self.pad_neg
        length = len(ds)
        if pad > 1 and length % pad:
            ds = digitmod.pad(ds, length + pad - length % pad)
        return self.run_word(ds.digits, "nonneg" if n >= 0 else "neg")

    # -- serialization ---------------------------------------------------

    def state_names(self) -> tuple[str, ...]:
        names: list[str] = []
        seen: dict[str, int] = {}
        for label in self.labels:
            if label in seen:
                seen[label] += 1
                names.append(f"{label}#{seen[label]}")
            else:
                seen[label] = 0
                names.append(label)
        return tuple(names)

    def to_json_dict(self) -> dict:
        names = self.state_names()
        out: dict = {
            "states": list(names),
            "ell": self.ell,
            "delta": {
                names[s]: {str(d): names[self.delta[s][d]] for d in range(self.ell)}
                for s in range(self.num_states)
            },
            "initial": {
                "nonneg": names[self.initial_nonneg],
                "neg": names[self.initial_neg] if self.initial_neg is not None else None,
            },
            "outputs": {
                "nonneg": {names[s]: self.out_alphabet[self.out_nonneg[s]] for s in range(self.num_states)},
                "neg": (
                    {names[s]: self.out_alphabet[self.out_neg[s]] for s in range(self.num_states)}
                    if self.out_neg is not None
                    else None
                ),
            },
            "reading": self.reading,
        }
        if (self.pad_nonneg, self.pad_neg) != (1, 1):
            out["pads"] = [self.pad_nonneg, self.pad_neg]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "Dfao":
        names = list(data["states"])
        index = {name: i for i, name in enumerate(names)}
        ell = int(data["ell"])
        delta = tuple(
            tuple(index[data["delta"][name][str(d)]] for d in range(ell)) for name in names
        )
        letters = sorted({v for m in data["outputs"].values() if m for v in m.values()})
        out_alphabet = tuple(letters)
        letter_index = {v: i for i, v in enumerate(out_alphabet)}
        out_nonneg = tuple(letter_index[data["outputs"]["nonneg"][name]] for name in names)
        neg_map = data["outputs"].get("neg")
        out_neg = tuple(letter_index[neg_map[name]] for name in names) if neg_map else None
        init = data["initial"]
        pads = data.get("pads", [1, 1])
        return cls(
            ell=ell,
            labels=tuple(names),
            delta=delta,
            initial_nonneg=index[init["nonneg"]],
            initial_neg=index[init["neg"]] if init.get("neg") is not None else None,
            out_alphabet=out_alphabet,
            out_nonneg=out_nonneg,
            out_neg=out_neg,
            reading=data["reading"],
            pad_nonneg=int(pads[0]),
            pad_neg=int(pads[1]),
        )

    def to_dot(self) -> str:
        names = self.state_names()
        order = _bfs_order(self)
        lines = ["digraph dfao {", "  rankdir=LR;", '  node [shape=circle, fontsize=11];']
        lines.append('  __nonneg [shape=none, label="ℕ₀"];')
        lines.append(f'  __nonneg -> "{names[self.initial_nonneg]}";')
        if self.initial_neg is not None:
            lines.append('  __neg [shape=none, label="−ℕ"];')
            lines.append(f'  __neg -> "{names[self.initial_neg]}";')
        for s in order:
            lines.append(f'  "{names[s]}";')
        for s in order:
            grouped: dict[int, list[int]] = {}
            for d in range(self.ell):
                grouped.setdefault(self.delta[s][d], []).append(d)
            for target in sorted(grouped, key=order.index):
                label = ",".join(str(d) for d in grouped[target])
                lines.append(f'  "{names[s]}" -> "{names[target]}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _bfs_order(dfao: Dfao) -> list[int]:
    starts = [dfao.initial_nonneg]
    if dfao.initial_neg is not None and dfao.initial_neg != dfao.initial_nonneg:
        starts.append(dfao.initial_neg)
    order: list[int] = []
    seen = set()
    queue = deque(starts)
    seen.update(starts)
    while queue:
        s = queue.popleft()
        order.append(s)
        for d in range(dfao.ell):
            t = dfao.delta[s][d]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    order.extend(s for s in range(dfao.num_states) if s not in seen)
    return order


# -- Cobham's direct-reading machine --------------------------------------


def build_direct(sub: Substitution) -> Dfao:
    """States are the letters; the digit-i transition applies the i-th column."""
    if sub.seed is None:
        raise SeedMissing("the direct machine needs a seed for its initial states")
    a_l, a_r = sub.seed
    cols = sub.columns()
    delta = tuple(
        tuple(cols[d].table[a] for d in range(sub.length)) for a in range(len(sub.alphabet))
    )
    identity_out = tuple(range(len(sub.alphabet)))
    p_r, p_l = sub.seed_periods()
    return Dfao(
        ell=sub.length,
        labels=tuple(sub.alphabet.letters),
        delta=delta,
        initial_nonneg=a_r,
        initial_neg=a_l,
        out_alphabet=tuple(sub.alphabet.letters),
        out_nonneg=identity_out,
        out_neg=identity_out,
        reading=DIRECT,
        pad_nonneg=p_r,
        pad_neg=p_l,
    )


# -- the semigroup-labelled reverse machine --------------------------------


@dataclass(frozen=True)
class SemigroupAutomaton:
    """A reverse-reading Dfao whose states are labelled by column maps.

    ``phase`` distinguishes word lengths modulo the seed period; it is 0
    everywhere when the seed letters are fixed by the end columns, in which
    case the states are exactly the monoid generated by id and the columns.
    """

    dfao: Dfao
    state_maps: tuple[ColumnMap, ...]
    state_phases: tuple[int, ...]
    seed_letters: tuple[str, str]
    period: int

    @property
    def num_states(self) -> int:
        return self.dfao.num_states

    def run(self, n: int) -> str:
        return self.dfao.run(n)

    def label(self, state: int) -> ColumnMap:
        return self.state_maps[state]


def build_reverse_semigroup(sub: Substitution, budget: int | None = None) -> SemigroupAutomaton:
    """Reverse-reading machine with delta(s, i) = s ∘ theta_i from the identity.

    Outputs project the state map at the seed letters, completed through the
    end columns when the word length phase requires it; feeding the canonical
    expansion of n therefore yields u_n on either side.
    """
    if sub.seed is None:
        raise SeedMissing("the reverse machine needs a seed for its outputs")
    a_l, a_r = sub.seed
    p_r, p_l = sub.seed_periods()
    period = math.lcm(p_r, p_l)
    cols = sub.columns()
    col_first, col_last = cols[0], cols[-1]
    limit = word_budget(budget)

    anchors_r = [a_r]
    for _ in range(p_r - 1):
        anchors_r.append(col_first.table[anchors_r[-1]])
    anchors_l = [a_l]
    for _ in range(p_l - 1):
        anchors_l.append(col_last.table[anchors_l[-1]])

    identity = ColumnMap.identity(sub.alphabet)
    start = (identity, 0)
    index: dict[tuple[ColumnMap, int], int] = {start: 0}
    nodes: list[tuple[ColumnMap, int]] = [start]
    delta_rows: list[tuple[int, ...]] = []
    queue = deque([start])
    while queue:
        s, phase = queue.popleft()
        row = []
        for d in range(sub.length):
            child = (s.compose(cols[d]), (phase + 1) % period)
            if child not in index:
                if len(nodes) >= limit:
                    raise StateExplosion(f"reverse machine exceeds state budget {limit}")
                index[child] = len(nodes)
                nodes.append(child)
                queue.append(child)
            row.append(index[child])
        delta_rows.append(tuple(row))
    # rows were appended in BFS pop order, which matches node insertion order
    assert len(delta_rows) == len(nodes)

    def out_right(s: ColumnMap, phase: int) -> int:
        return s.table[anchors_r[(-phase) % p_r]]

    def out_left(s: ColumnMap, phase: int) -> int:
        return s.table[anchors_l[(-phase) % p_l]]

    labels = tuple(
        s.vector() if period == 1 else f"{s.vector()}@{phase}" for s, phase in nodes
    )
    dfao = Dfao(
        ell=sub.length,
        labels=labels,
        delta=tuple(delta_rows),
        initial_nonneg=0,
        initial_neg=0,
        out_alphabet=tuple(sub.alphabet.letters),
        out_nonneg=tuple(out_right(s, phase) for s, phase in nodes),
        out_neg=tuple(out_left(s, phase) for s, phase in nodes),
        reading=REVERSE,
    )
    return SemigroupAutomaton(
        dfao=dfao,
        state_maps=tuple(s for s, _ in nodes),
        state_phases=tuple(phase for _, phase in nodes),
        seed_letters=(sub.alphabet[a_l], sub.alphabet[a_r]),
        period=period,
    )


# -- reversal by determinization -------------------------------------------


def reverse_and_determinize(dfao: Dfao, budget: int | None = None) -> Dfao:
    """Reverse-reading machine equivalent to a direct-reading one.

    Reversing the edges yields a nondeterministic machine; it is determinized
    by tracking, for every original state, where the word read so far would
    lead — i.e. states here are transition functions of the original machine,
    composed digit by digit.  Outputs evaluate that function at the original
    initial states (after completing the word-length phase pinned by the pads).
    """
    if dfao.reading != DIRECT:
        raise ValueError("reversal expects a direct-reading machine")
    limit = word_budget(budget)
    n = dfao.num_states
    period = math.lcm(dfao.pad_nonneg, dfao.pad_neg if dfao.two_sided() else 1)

    anchors_r = [dfao.initial_nonneg]
    for _ in range(dfao.pad_nonneg - 1):
        anchors_r.append(dfao.delta[anchors_r[-1]][0])
    anchors_l = []
    if dfao.two_sided():
        anchors_l = [dfao.initial_neg]
        for _ in range(dfao.pad_neg - 1):
            anchors_l.append(dfao.delta[anchors_l[-1]][dfao.ell - 1])

    start = (tuple(range(n)), 0)
    index: dict[tuple[tuple[int, ...], int], int] = {start: 0}
    nodes: list[tuple[tuple[int, ...], int]] = [start]
    delta_rows: list[tuple[int, ...]] = []
    queue = deque([start])
    while queue:
        f, phase = queue.popleft()
        row = []
        for d in range(dfao.ell):
            g = tuple(f[dfao.delta[q][d]] for q in range(n))
            child = (g, (phase + 1) % period)
            if child not in index:
                if len(nodes) >= limit:
                    raise StateExplosion(f"determinization exceeds state budget {limit}")
                index[child] = len(nodes)
                nodes.append(child)
                queue.append(child)
            row.append(index[child])
        delta_rows.append(tuple(row))

    out_nonneg = tuple(
        dfao.out_nonneg[f[anchors_r[(-phase) % dfao.pad_nonneg]]] for f, phase in nodes
    )
    out_neg = None
    initial_neg = None
    if dfao.two_sided():
        out_neg = tuple(
            dfao.out_neg[f[anchors_l[(-phase) % dfao.pad_neg]]] for f, phase in nodes
        )
        initial_neg = 0
    labels = tuple(f"r{i}" for i in range(len(nodes)))
    return Dfao(
        ell=dfao.ell,
        labels=labels,
        delta=tuple(delta_rows),
        initial_nonneg=0,
        initial_neg=initial_neg,
        out_alphabet=dfao.out_alphabet,
        out_nonneg=out_nonneg,
        out_neg=out_neg,
        reading=REVERSE,
    )


# -- minimization -----------------------------------------------------------


def _as_dfao(machine) -> Dfao:
    return machine.dfao if isinstance(machine, SemigroupAutomaton) else machine


def minimize(machine) -> Dfao:
    """Moore partition refinement; the initial partition keys on both outputs."""
    dfao = _as_dfao(machine)
    order = _reachable_order(dfao)
    states = order  # trim: unreachable states are dropped
    remap = {s: i for i, s in enumerate(states)}

    def out_key(s: int):
        neg = dfao.out_neg[s] if dfao.out_neg is not None else -1
        return (dfao.out_nonneg[s], neg)

    block: dict[int, int] = {}
    keys = sorted({out_key(s) for s in states})
    key_index = {k: i for i, k in enumerate(keys)}
    for s in states:
        block[s] = key_index[out_key(s)]
    while True:
        signatures: dict[tuple, int] = {}
        new_block: dict[int, int] = {}
        for s in states:
            sig = (block[s], tuple(block[dfao.delta[s][d]] for d in range(dfao.ell)))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[s] = signatures[sig]
        if len(signatures) == len(set(block.values())):
            block = new_block
            break
        block = new_block

    # canonical numbering: blocks ordered by first appearance along the BFS order
    block_order: list[int] = []
    rep: dict[int, int] = {}
    for s in states:
        b = block[s]
        if b not in rep:
            rep[b] = s
            block_order.append(b)
    renum = {b: i for i, b in enumerate(block_order)}
    delta = tuple(
        tuple(renum[block[dfao.delta[rep[b]][d]]] for d in range(dfao.ell)) for b in block_order
    )
    return Dfao(
        ell=dfao.ell,
        labels=tuple(dfao.labels[rep[b]] for b in block_order),
        delta=delta,
        initial_nonneg=renum[block[dfao.initial_nonneg]],
        initial_neg=renum[block[dfao.initial_neg]] if dfao.initial_neg is not None else None,
        out_alphabet=dfao.out_alphabet,
        out_nonneg=tuple(dfao.out_nonneg[rep[b]] for b in block_order),
        out_neg=(
            tuple(dfao.out_neg[rep[b]] for b in block_order) if dfao.out_neg is not None else None
        ),
        reading=dfao.reading,
        pad_nonneg=dfao.pad_nonneg,
        pad_neg=dfao.pad_neg,
    )


def _reachable_order(dfao: Dfao) -> list[int]:
    """Reachable states in BFS order from the initial states."""
    starts = [dfao.initial_nonneg]
    if dfao.initial_neg is not None and dfao.initial_neg != dfao.initial_nonneg:
        starts.append(dfao.initial_neg)
    order: list[int] = []
    seen = set(starts)
    queue = deque(starts)
    while queue:
        s = queue.popleft()
        order.append(s)
        for d in range(dfao.ell):
            t = dfao.delta[s][d]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return order


# -- equivalence -------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceResult:
    equal: bool
    witness: int | None
    exact: bool
    bound: int | None = None

    def __bool__(self) -> bool:
        return self.equal


def equivalent(machine1, machine2, bound: int = 10_000) -> EquivalenceResult:
    """Decide whether two machines generate the same two-sided sequence.

    Same-reading machines are compared exactly through a product reachability
    walk over canonical digit words; different readings fall back to comparing
    run() over [-bound, bound].
    """
    m1, m2 = _as_dfao(machine1), _as_dfao(machine2)
    if m1.ell != m2.ell:
        raise ValueError("machines read different digit alphabets")
    if m1.two_sided() != m2.two_sided():
        return EquivalenceResult(False, None, True)
    if m1.reading != m2.reading:
        for n in range(-bound, bound + 1):
            if m1.run(n) != m2.run(n):
                return EquivalenceResult(False, n, False, bound)
        return EquivalenceResult(True, None, False, bound)
    if m1.reading == REVERSE:
        return _product_check_reverse(m1, m2)
    return _product_check_direct(m1, m2)


def _out_letter(m: Dfao, outputs, state: int) -> str:
    return m.out_alphabet[outputs[state]]


def _product_check_reverse(m1: Dfao, m2: Dfao) -> EquivalenceResult:
    """Product walk comparing outputs exactly at canonical-word arrivals.

    Reverse reading feeds the least significant digit first, so a fed word is
    canonical for n >= 0 when it is empty or its last digit is nonzero, and
    canonical (possibly padded) for n < 0 when its last digit is the marker.
    """
    ell = m1.ell
    marker = ell - 1
    for side in ("nonneg", "neg"):
        if side == "neg" and not m1.two_sided():
            break
        s1 = m1.initial_nonneg if side == "nonneg" else m1.initial_neg
        s2 = m2.initial_nonneg if side == "nonneg" else m2.initial_neg
        o1 = m1.out_nonneg if side == "nonneg" else m1.out_neg
        o2 = m2.out_nonneg if side == "nonneg" else m2.out_neg

        def mismatch(pair) -> bool:
            return _out_letter(m1, o1, pair[0]) != _out_letter(m2, o2, pair[1])

        if side == "nonneg" and mismatch((s1, s2)):
            return EquivalenceResult(False, 0, True)  # the empty word is n = 0
        seen = {(s1, s2): (0, 0)}  # pair -> (word value, word length)
        compared: set[tuple[int, int]] = set()
        queue = deque([(s1, s2)])
        while queue:
            q1, q2 = queue.popleft()
            value, length = seen[(q1, q2)]
            for d in range(ell):
                child = (m1.delta[q1][d], m2.delta[q2][d])
                child_value = value + d * ell**length
                if side == "nonneg":
                    comparable = d != 0
                    witness = child_value
                else:
                    comparable = d == marker
                    witness = child_value - ell ** (length + 1)
                if comparable and child not in compared:
                    compared.add(child)
                    if mismatch(child):
                        return EquivalenceResult(False, witness, True)
                if child not in seen:
                    seen[child] = (child_value, length + 1)
                    queue.append(child)
    return EquivalenceResult(True, None, True)


def _product_check_direct(m1: Dfao, m2: Dfao) -> EquivalenceResult:
    """Product walk for direct reading, over canonical (possibly padded) words.

    Canonical feeds start with a nonzero digit for n > 0 (n = 0 is the empty
    word) and with one or more markers for n < 0; padded machines only pin
    their outputs at word lengths divisible by their padding period.
    """
    ell = m1.ell
    marker = ell - 1

    def bfs(starts, o1, o2, pad, negside: bool) -> EquivalenceResult | None:
        seen = dict(starts)  # (q1, q2, phase) -> (value, length)
        queue = deque(starts)
        while queue:
            q1, q2, phase = queue.popleft()
            value, length = seen[(q1, q2, phase)]
            if phase == 0 and _out_letter(m1, o1, q1) != _out_letter(m2, o2, q2):
                witness = value if not negside else value - ell**length
                return EquivalenceResult(False, witness, True)
            for d in range(ell):
                child = (m1.delta[q1][d], m2.delta[q2][d], (phase + 1) % pad)
                if child not in seen:
                    # direct reading appends less significant digits
                    seen[child] = (value * ell + d, length + 1)
                    queue.append(child)
        return None

    pad = math.lcm(m1.pad_nonneg, m2.pad_nonneg)
    i1, i2 = m1.initial_nonneg, m2.initial_nonneg
    if _out_letter(m1, m1.out_nonneg, i1) != _out_letter(m2, m2.out_nonneg, i2):
        return EquivalenceResult(False, 0, True)
    starts = {
        (m1.delta[i1][d], m2.delta[i2][d], 1 % pad): (d, 1) for d in range(1, ell)
    }
    found = bfs(starts, m1.out_nonneg, m2.out_nonneg, pad, negside=False)
    if found is not None:
        return found

    if m1.two_sided():
        # every word led by at least one marker is a padded canonical expansion
        pad = math.lcm(m1.pad_neg, m2.pad_neg)
        starts = {
            (m1.delta[m1.initial_neg][marker], m2.delta[m2.initial_neg][marker], 1 % pad): (
                marker,
                1,
            )
        }
        found = bfs(starts, m1.out_neg, m2.out_neg, pad, negside=True)
        if found is not None:
            return found
    return EquivalenceResult(True, None, True)
