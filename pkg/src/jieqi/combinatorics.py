"""Exact arbitrary-precision counting primitives.

Every count in this package is an exact Python int; log10 views are derived
from the exact value and never feed back into the arithmetic (the headline
quantities run to hundreds of digits, far past float precision).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .board import NON_KING_KINDS, START_COUNTS, PieceKind


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """Exact C(n, k); 0 when k is out of range."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_factorial(n: int, k: int) -> int:
    """Exact n * (n-1) * ... * (n-k+1); the number of injective placements
    of k labeled items into n slots."""
    if n < 0 or k < 0:
        raise ValueError(f"falling_factorial needs n, k >= 0, got n={n} k={k}")
    if k > n:
        raise ValueError(f"falling_factorial needs k <= n, got n={n} k={k}")
    return math.perm(n, k)


def exact_log10(n: int) -> float:
    """log10 of an exact positive integer (works beyond float range)."""
    if n <= 0:
        raise ValueError(f"log10 needs a positive integer, got {n}")
    return math.log10(n)


@dataclass(frozen=True)
class KindMultiset:
    """Multiset of non-king piece kinds, stored as a count vector indexed
    like NON_KING_KINDS. Immutable and hashable so it can key caches."""

    counts: tuple[int, int, int, int, int, int] = (0, 0, 0, 0, 0, 0)

    def __post_init__(self) -> None:
        if len(self.counts) != len(NON_KING_KINDS) or any(c < 0 for c in self.counts):
            raise ValueError(f"bad kind counts {self.counts!r}")

    @classmethod
    def from_kinds(cls, kinds) -> KindMultiset:
        counts = [0] * len(NON_KING_KINDS)
        for kind in kinds:
            counts[_KIND_INDEX[kind]] += 1
        return cls(tuple(counts))

    def total(self) -> int:
        return sum(self.counts)

    def count(self, kind: PieceKind) -> int:
        return self.counts[_KIND_INDEX[kind]]

    def add(self, kind: PieceKind, n: int = 1) -> KindMultiset:
        i = _KIND_INDEX[kind]
        return KindMultiset(self.counts[:i] + (self.counts[i] + n,) + self.counts[i + 1:])

    def remove(self, kind: PieceKind, n: int = 1) -> KindMultiset:
        i = _KIND_INDEX[kind]
        if self.counts[i] < n:
            raise ValueError(f"cannot remove {n} x {kind.name} from {self}")
        return KindMultiset(self.counts[:i] + (self.counts[i] - n,) + self.counts[i + 1:])

    def __sub__(self, other: KindMultiset) -> KindMultiset:
        out = tuple(a - b for a, b in zip(self.counts, other.counts))
        if any(c < 0 for c in out):
            raise ValueError(f"multiset subtraction went negative: {self} - {other}")
        return KindMultiset(out)

    def items(self) -> list[tuple[PieceKind, int]]:
        return [(k, c) for k, c in zip(NON_KING_KINDS, self.counts) if c > 0]

    def expand(self) -> list[PieceKind]:
        """All members, one entry per piece."""
        return [k for k, c in zip(NON_KING_KINDS, self.counts) for _ in range(c)]

    def __str__(self) -> str:
        inner = ",".join(f"{k.letter}:{c}" for k, c in self.items())
        return "{" + inner + "}"


_KIND_INDEX = {kind: i for i, kind in enumerate(NON_KING_KINDS)}

#: One side's full complement of non-king pieces.
START_POOL = KindMultiset(START_COUNTS)


def multiset_arrangements(pool: KindMultiset, k: int) -> int:
    """Number of distinct ordered assignments of k identities drawn from
    `pool` to k labeled slots.

    Computed by dynamic programming over kinds: appending j copies of a kind
    to an arrangement of `used` slots can interleave in C(used + j, j) ways.
    Equals the multinomial k! / prod(counts!) when k == pool.total().
    """
    if k < 0 or k > pool.total():
        raise ValueError(f"need 0 <= k <= |pool|, got k={k} |pool|={pool.total()}")
    return _arrangements(pool.counts, k)


@lru_cache(maxsize=None)
def _arrangements(counts: tuple[int, ...], k: int) -> int:
    ways = [1] + [0] * k
    for c in counts:
        if c == 0:
            continue
        nxt = [0] * (k + 1)
        for used, w in enumerate(ways):
            if w:
                for j in range(min(c, k - used) + 1):
                    nxt[used + j] += w * binomial(used + j, j)
        ways = nxt
    return ways[k]
