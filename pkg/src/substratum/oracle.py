"""Brute-force ground truth: expanded fixed-point windows and progression sampling.

Everything here works directly on expanded words, never on automata, so it can
serve as the independent check for the symbolic constructions.  A singleton
progression sample is only evidence of periodicity (bounded window); observing
two letters is a certificate of aperiodicity at that step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfWindow, Overflow, WindowTooShort
from .substitution import Alphabet, Substitution, word_budget


@dataclass(frozen=True)
class Window:
    """A finite slice u_lo .. u_hi of a two-sided sequence, ordinal-encoded."""

    alphabet: Alphabet
    lo: int
    hi: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.letters) != self.hi - self.lo + 1:
            raise WindowTooShort("window letters do not match its index range")

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, index: int) -> bool:
        return self.lo <= index <= self.hi

    def __getitem__(self, index: int) -> int:
        if index not in self:
            raise IndexOutOfWindow(f"index {index} outside window {self.lo}..{self.hi}")
        return self.letters[index - self.lo]

    def letter(self, index: int) -> str:
        return self.alphabet[self[index]]

    def word_str(self) -> str:
        return self.alphabet.word_str(self.letters)

    def dump(self) -> str:
        """Plain text with a caret under index 0 (single-char alphabets)."""
        line = self.word_str()
        if 0 in self and all(len(s) == 1 for s in self.alphabet):
            return line + "\n" + " " * (-self.lo) + "^"
        return line


def expand(sub: Substitution, generations: int, budget: int | None = None) -> Window:
    """Window covering at least [-ell^g, ell^g - 1], by substituting the seed.

    When the seed letters are merely periodic (not fixed) under the end
    columns, generations are rounded up to the seed period so the expansion
    anchors correctly.
    """
    if generations < 1:
        raise Overflow("need at least one generation")
    a_l, a_r = sub.require_seed()
    p = sub.seed_period()
    g = generations
    if g % p:
        g += p - g % p
    limit = word_budget(budget)
    if sub.length**g > limit:
        raise Overflow(f"window of length 2*{sub.length}^{g} exceeds budget {limit}")
    left: tuple[int, ...] = (a_l,)
    right: tuple[int, ...] = (a_r,)
    for _ in range(g):
        left = sub.apply(left, budget=limit)
        right = sub.apply(right, budget=limit)
    return Window(sub.alphabet, -len(left), len(right) - 1, left + right)


def window_for_range(sub: Substitution, lo: int, hi: int, budget: int | None = None) -> Window:
    """Smallest expand() window containing [lo, hi]."""
    need = max(abs(lo), abs(hi) + 1, sub.length)
    g = 1
    while sub.length**g < need:
        g += 1
    return expand(sub, g, budget=budget)


def sample_progression(
    window: Window,
    n: int,
    step: int,
    max_terms: int | None = None,
    stop_at: int | None = None,
) -> frozenset[str]:
    """Letters observed along n + m*step for every m keeping the index in-window.

    ``max_terms`` bounds how many indices are examined (walking outward from n
    in both directions); ``stop_at`` returns early once that many distinct
    letters have been seen.  Both default to exhausting the window.
    """
    if step < 1:
        raise IndexOutOfWindow(f"step must be positive, got {step}")
    if n not in window:
        raise IndexOutOfWindow(f"start index {n} outside window {window.lo}..{window.hi}")
    seen: set[str] = set()
    down, up = n, n + step
    examined = 0
    while down >= window.lo or up <= window.hi:
        if down >= window.lo:
            seen.add(window.letter(down))
            down -= step
            examined += 1
        if up <= window.hi:
            seen.add(window.letter(up))
            up += step
            examined += 1
        if stop_at is not None and len(seen) >= stop_at:
            break
        if max_terms is not None and examined >= max_terms:
            break
    return frozenset(seen)
