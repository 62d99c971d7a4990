"""Constant-length substitutions, their column maps and combinatorial invariants.

Words are stored as tuples of letter ordinals; symbols are interned into the
alphabet once at construction time.  All types are immutable and hashable, so
every derived quantity can be cached and shared freely across threads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import (
    BadAlphabet,
    BadSeed,
    DigitOutOfRange,
    NontrivialHeight,
    Overflow,
    RuleLengthMismatch,
    SeedMissing,
    UnknownLetter,
)

DEFAULT_BUDGET = 1_000_000
BUDGET_ENV = "SUBSTRATUM_BUDGET"


def word_budget(budget: int | None = None) -> int:
    """Resolve the size budget: explicit arg, then env override, then default."""
    if budget is not None:
        return budget
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise BadAlphabet(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite list of distinct symbols, addressable by ordinal."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise BadAlphabet("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise BadAlphabet(f"duplicate letters in {self.letters}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, ordinal: int) -> str:
        return self.letters[ordinal]

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise UnknownLetter(f"letter {letter!r} not in alphabet {self.letters}") from None

    def word_str(self, word) -> str:
        """Join ordinals back into symbols; space-separated for wide symbols."""
        symbols = [self.letters[o] for o in word]
        if all(len(s) == 1 for s in self.letters):
            return "".join(symbols)
        return " ".join(symbols)


@dataclass(frozen=True)
class ColumnMap:
    """A total map alphabet -> alphabet, written as a vector (f(a_0),...,f(a_d))^T."""

    alphabet: Alphabet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != len(self.alphabet):
            raise BadAlphabet("column map table must cover the whole alphabet")
        for o in self.table:
            if not 0 <= o < len(self.alphabet):
                raise UnknownLetter(f"ordinal {o} outside alphabet")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "ColumnMap":
        return cls(alphabet, tuple(range(len(alphabet))))

    def __call__(self, ordinal: int) -> int:
        return self.table[ordinal]

    def compose(self, inner: "ColumnMap") -> "ColumnMap":
        """The map sending x to self(inner(x)) — ``inner`` is applied first."""
        if inner.alphabet != self.alphabet:
            raise BadAlphabet("cannot compose maps over different alphabets")
        return ColumnMap(self.alphabet, tuple(self.table[o] for o in inner.table))

    def iterate(self, k: int) -> "ColumnMap":
        out = ColumnMap.identity(self.alphabet)
        for _ in range(k):
            out = self.compose(out)
        return out

    def image(self) -> frozenset[int]:
        return frozenset(self.table)

    def image_size(self) -> int:
        return len(set(self.table))

    def is_constant(self) -> bool:
        return self.image_size() == 1

    def is_identity(self) -> bool:
        return all(self.table[i] == i for i in range(len(self.table)))

    def is_idempotent(self) -> bool:
        return self.compose(self) == self

    def cycle_length(self, ordinal: int) -> int | None:
        """Length of the cycle through ``ordinal``, or None if it sits on a tail."""
        x = ordinal
        for k in range(1, len(self.alphabet) + 1):
            x = self.table[x]
            if x == ordinal:
                return k
        return None

    def vector(self) -> str:
        return "(" + ",".join(self.alphabet[o] for o in self.table) + ")^T"

    def __str__(self) -> str:
        return self.vector()


def _cycle_data(f: ColumnMap) -> tuple[int, int]:
    """(lcm of cycle lengths, max tail height) of the functional graph of f.

    f^n is idempotent exactly when the lcm divides n and n covers the height.
    """
    size = len(f.alphabet)
    on_cycle = [f.cycle_length(x) for x in range(size)]
    cycle_lcm = 1
    for c in on_cycle:
        if c is not None:
            cycle_lcm = math.lcm(cycle_lcm, c)
    height = 0
    for x in range(size):
        steps = 0
        while on_cycle[x] is None:
            x = f.table[x]
            steps += 1
        height = max(height, steps)
    return cycle_lcm, height


@dataclass(frozen=True)
class Substitution:
    """A length-ell substitution with an optional two-sided seed.

    ``rules[a]`` is the ordinal word the letter of ordinal ``a`` maps to.
    A seed ``(a_l, a_r)`` generates the bi-infinite fixed point with
    ``u_{-1} = a_l`` and ``u_0 = a_r``; the seed letters must lie on cycles of
    the first and last column maps so that some power of the substitution
    fixes them in place.
    """

    alphabet: Alphabet
    length: int
    rules: tuple[tuple[int, ...], ...]
    seed: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.length < 2:
            raise RuleLengthMismatch(f"substitution length must be >= 2, got {self.length}")
        if len(self.rules) != len(self.alphabet):
            raise RuleLengthMismatch("one rule per alphabet letter required")
        for a, image in enumerate(self.rules):
            if len(image) != self.length:
                raise RuleLengthMismatch(
                    f"rule for {self.alphabet[a]!r} has length {len(image)}, expected {self.length}"
                )
            for o in image:
                if not 0 <= o < len(self.alphabet):
                    raise UnknownLetter(f"rule for {self.alphabet[a]!r} leaves the alphabet")
        if self.seed is not None:
            a_l, a_r = self.seed
            for o in (a_l, a_r):
                if not 0 <= o < len(self.alphabet):
                    raise UnknownLetter("seed letter outside alphabet")
            if self.column(0).cycle_length(a_r) is None:
                raise BadSeed(
                    f"right seed letter {self.alphabet[a_r]!r} is not periodic under the first column"
                )
            if self.column(self.length - 1).cycle_length(a_l) is None:
                raise BadSeed(
                    f"left seed letter {self.alphabet[a_l]!r} is not periodic under the last column"
                )

    # -- construction -------------------------------------------------

    @classmethod
    def from_parts(
        cls,
        letters,
        length: int,
        rules: dict,
        seed=None,
    ) -> "Substitution":
        """Build from symbol-level data (the JSON input shape)."""
        alphabet = Alphabet(tuple(letters))
        rule_table = []
        for letter in alphabet:
            if letter not in rules:
                raise RuleLengthMismatch(f"no rule given for letter {letter!r}")
            image = rules[letter]
            if isinstance(image, str):
                image = list(image)
            rule_table.append(tuple(alphabet.index(s) for s in image))
        extra = set(rules) - set(alphabet.letters)
        if extra:
            raise UnknownLetter(f"rules given for letters outside the alphabet: {sorted(extra)}")
        seed_ord = None
        if seed is not None:
            if len(seed) != 2:
                raise BadSeed("seed must be a pair [left, right]")
            seed_ord = (alphabet.index(seed[0]), alphabet.index(seed[1]))
        return cls(alphabet, length, tuple(rule_table), seed_ord)

    # -- basic structure ----------------------------------------------

    def column(self, i: int) -> ColumnMap:
        """The map sending each letter to the i-th letter of its image."""
        if not 0 <= i < self.length:
            raise DigitOutOfRange(f"column index {i} outside 0..{self.length - 1}")
        return ColumnMap(self.alphabet, tuple(rule[i] for rule in self.rules))

    def columns(self) -> tuple[ColumnMap, ...]:
        return tuple(self.column(i) for i in range(self.length))

    def apply(self, word, budget: int | None = None) -> tuple[int, ...]:
        """One substitution step on an ordinal word."""
        limit = word_budget(budget)
        if len(word) * self.length > limit:
            raise Overflow(f"substituted word would exceed budget {limit}")
        out: list[int] = []
        for o in word:
            out.extend(self.rules[o])
        return tuple(out)

    def power(self, n: int, budget: int | None = None) -> "Substitution":
        """The substitution theta^n, of length ell^n; the seed carries over."""
        if n < 1:
            raise DigitOutOfRange(f"power exponent must be >= 1, got {n}")
        limit = word_budget(budget)
        if self.length**n > limit:
            raise Overflow(f"length {self.length}^{n} exceeds budget {limit}")
        rules = []
        for a in range(len(self.alphabet)):
            word = (a,)
            for _ in range(n):
                word = self.apply(word, budget=limit)
            rules.append(word)
        return Substitution(self.alphabet, self.length**n, tuple(rules), self.seed)

    def is_simplified(self) -> bool:
        return self.column(0).is_idempotent() and self.column(self.length - 1).is_idempotent()

    def simplify(self, budget: int | None = None) -> tuple["Substitution", int]:
        """Least power whose first and last columns are idempotent.

        The exponent is read off the functional graphs of the end columns,
        since the first/last columns of theta^n are the n-fold self-compositions
        of theta's own end columns.
        """
        lcm0, h0 = _cycle_data(self.column(0))
        lcm1, h1 = _cycle_data(self.column(self.length - 1))
        cycles = math.lcm(lcm0, lcm1)
        height = max(h0, h1, 1)
        n = cycles * ((height + cycles - 1) // cycles)
        if n == 1:
            return self, 1
        return self.power(n, budget=budget), n

    # -- seed and fixed point -----------------------------------------

    def require_seed(self) -> tuple[int, int]:
        if self.seed is None:
            raise SeedMissing("operation needs a two-sided seed")
        return self.seed

    def seed_periods(self) -> tuple[int, int]:
        """Cycle lengths (right, left) of the seed letters under the end columns.

        Both are 1 exactly when the seed letters are genuinely fixed, i.e.
        rule(a_r) starts with a_r and rule(a_l) ends with a_l.  Larger values
        mean the seed generates a fixed point of that power of the substitution,
        and digit words must be padded to matching lengths.
        """
        a_l, a_r = self.require_seed()
        p_r = self.column(0).cycle_length(a_r)
        p_l = self.column(self.length - 1).cycle_length(a_l)
        assert p_r is not None and p_l is not None  # guaranteed by BadSeed check
        return p_r, p_l

    def seed_period(self) -> int:
        p_r, p_l = self.seed_periods()
        return math.lcm(p_r, p_l)

    def fixed_point_window(self, lo: int, hi: int, budget: int | None = None) -> tuple[str, ...]:
        """Letters u_lo .. u_hi of the two-sided fixed point, as symbols."""
        word = self._window_ords(lo, hi, budget)
        return tuple(self.alphabet[o] for o in word)

    def _window_ords(self, lo: int, hi: int, budget: int | None = None) -> tuple[int, ...]:
        if lo > hi:
            raise DigitOutOfRange(f"empty window {lo}..{hi}")
        a_l, a_r = self.require_seed()
        limit = word_budget(budget)
        p = self.seed_period()
        left: tuple[int, ...] = (a_l,)
        right: tuple[int, ...] = (a_r,)
        while (lo < 0 and len(left) < -lo) or (hi >= 0 and len(right) < hi + 1):
            for _ in range(p):
                left = self.apply(left, budget=limit)
                right = self.apply(right, budget=limit)
        out = []
        for i in range(lo, hi + 1):
            out.append(right[i] if i >= 0 else left[len(left) + i])
        return tuple(out)

    def occurring_letters(self) -> frozenset[int]:
        """Ordinals of letters that occur in the fixed point."""
        a_l, a_r = self.require_seed()
        seen = {a_l, a_r}
        while True:
            new = set(seen)
            for o in seen:
                new.update(self.rules[o])
            if new == seen:
                return frozenset(seen)
            seen = new

    # -- invariants ----------------------------------------------------

    def is_primitive(self) -> bool:
        """Whether some power of the occurrence relation is all-positive."""
        size = len(self.alphabet)
        occ = [frozenset(rule) for rule in self.rules]
        reach = occ
        # Wielandt bound on the primitivity exponent
        for _ in range((size - 1) ** 2 + 1):
            if all(len(row) == size for row in reach):
                return True
            reach = [frozenset().union(*(occ[b] for b in row)) for row in reach]
        return all(len(row) == size for row in reach)

    def height(self, budget: int | None = None) -> int:
        """Largest divisor, coprime to ell, of the gcd of return times of u_0.

        The gcd is taken over a window that provably contains several returns
        (primitivity keeps gaps bounded) and re-checked on a doubled window.
        """
        _, a_r = self.require_seed()
        if not self.is_primitive():
            raise BadSeed("height is defined for primitive substitutions")
        limit = word_budget(budget)

        def returns_gcd(word) -> int:
            g = 0
            for pos in range(1, len(word)):
                if word[pos] == word[0]:
                    g = math.gcd(g, pos)
            return g

        p_r = self.column(0).cycle_length(a_r) or 1
        word: tuple[int, ...] = (a_r,)
        min_size = 2 * self.length * len(self.alphabet)
        g = 0
        while True:
            for _ in range(p_r):
                word = self.apply(word, budget=limit)
            if len(word) < min_size:
                continue
            g_now = returns_gcd(word)
            if g_now and g_now == g:
                break  # stable across one doubling
            g = g_now
        h = g
        while (d := math.gcd(h, self.length)) > 1:
            h //= d
        return max(h, 1)

    def column_number(self, budget: int | None = None) -> int:
        """Minimum image size over the semigroup generated by the columns."""
        from .semigroup import closure  # local import to avoid a module cycle

        if self.height(budget=budget) != 1:
            raise NontrivialHeight(
                "column number requires trivial height; pure base construction not provided"
            )
        return closure(self.columns()).min_rank

    def has_coincidence(self, budget: int | None = None) -> bool:
        return self.column_number(budget=budget) == 1

    def is_aperiodic_heuristic(self, budget: int | None = None) -> bool:
        """Window check: no period up to ell^2 in a window of length 4*ell^3.

        Heuristic only; reported, never silently trusted.
        """
        size = 4 * self.length**3
        word = self._window_ords(0, size - 1, budget)
        for period in range(1, self.length**2 + 1):
            if all(word[i] == word[i + period] for i in range(size - period)):
                return False
        return True

    def __str__(self) -> str:
        parts = [
            f"{self.alphabet[a]}->{self.alphabet.word_str(rule)}"
            for a, rule in enumerate(self.rules)
        ]
        return ", ".join(parts)


def validate(
    letters,
    length: int,
    rules: dict,
    seed=None,
) -> Substitution:
    """Construct a substitution, raising a typed error naming the violated invariant."""
    return Substitution.from_parts(letters, length, rules, seed)
