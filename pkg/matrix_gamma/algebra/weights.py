"""
Dominant weights of GL_n, shifted (rational) weights and their enumeration.

A dominant weight is a weakly decreasing integer vector; negative parts are
allowed. Partition algorithms normalise through det_shift and shift back.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor, prod
from typing import Iterator, List, Sequence, Set, Tuple

from matrix_gamma.exception import DomainError


@dataclass(frozen=True, order=True)
class DominantWeight:
    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise DomainError("a dominant weight needs at least one part")
        for i in range(len(parts) - 1):
            if parts[i] < parts[i + 1]:
                raise DomainError(f"{parts} is not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "DominantWeight":
        return cls(tuple(parts))

    @classmethod
    def zero(cls, n: int) -> "DominantWeight":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def is_nonnegative(self) -> bool:
        return self.parts[-1] >= 0

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, item):
        return self.parts[item]

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"DominantWeight{self.parts}"


def graded_key(alpha: DominantWeight) -> Tuple:
    """Sort key: total size first, then reverse lexicographic order of parts."""
    return alpha.size, tuple(-p for p in alpha.parts)


def dimension(alpha: DominantWeight) -> int:
    n = alpha.n
    numerator = prod(alpha[i] - alpha[j] + j - i for i in range(n) for j in range(i + 1, n))
    denominator = prod(j - i for i in range(n) for j in range(i + 1, n))
    return numerator // denominator


def dual(alpha: DominantWeight) -> DominantWeight:
    return DominantWeight(tuple(-p for p in reversed(alpha.parts)))


def det_shift(alpha: DominantWeight, s: int) -> DominantWeight:
    return DominantWeight(tuple(p + s for p in alpha.parts))


def to_partition(alpha: DominantWeight) -> Tuple[DominantWeight, int]:
    """Return (alpha - m, m) with m the last part, so the first entry is a partition."""
    shift = alpha[-1]
    return det_shift(alpha, -shift), shift


def pieri_up(alpha: DominantWeight) -> Set[DominantWeight]:
    result = set()
    for i in range(alpha.n):
        if i == 0 or alpha[i - 1] > alpha[i]:
            parts = list(alpha.parts)
            parts[i] += 1
            result.add(DominantWeight(tuple(parts)))
    return result


def pieri_down(alpha: DominantWeight) -> Set[DominantWeight]:
    result = set()
    for i in range(alpha.n):
        if i == alpha.n - 1 or alpha[i] > alpha[i + 1]:
            parts = list(alpha.parts)
            parts[i] -= 1
            result.add(DominantWeight(tuple(parts)))
    return result


def partitions(total: int, length: int, largest: int = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of `total` into at most `length` parts, padded with zeros, reverse lex order."""
    if largest is None:
        largest = total
    if length == 0:
        if total == 0:
            yield ()
        return
    if total == 0:
        yield (0,) * length
        return
    for first in range(min(total, largest), 0, -1):
        if first * length < total:
            break
        for rest in partitions(total - first, length - 1, first):
            yield (first,) + rest


def nonnegative_weights(total: int, n: int) -> List[DominantWeight]:
    return [DominantWeight(p) for p in partitions(total, n)]


def enumerate_bounded(blocks: Sequence[int], total: int) -> List[Tuple[DominantWeight, ...]]:
    """
    All tuples of nonnegative dominant weights, one per block, whose sizes add
    up to `total`. Ordered by the concatenated parts, largest first.
    """
    if total < 0:
        return []
    if not blocks:
        return [()] if total == 0 else []
    result = []
    for sizes in _compositions(total, len(blocks)):
        for choice in product(*(nonnegative_weights(k, d) for k, d in zip(sizes, blocks))):
            result.append(tuple(choice))
    result.sort(key=lambda alphas: tuple(p for alpha in alphas for p in alpha.parts), reverse=True)
    return result


def _compositions(total: int, count: int) -> Iterator[Tuple[int, ...]]:
    if count == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, count - 1):
            yield (first,) + rest


def conjugate(alpha: DominantWeight) -> Tuple[int, ...]:
    """Conjugate partition of a nonnegative weight, without trailing zeros."""
    if not alpha.is_nonnegative:
        raise DomainError(f"{alpha} has negative parts")
    if alpha[0] == 0:
        return ()
    return tuple(sum(1 for p in alpha.parts if p > c) for c in range(alpha[0]))


def ssyt_count(alpha: DominantWeight) -> int:
    """Brute-force count of semistandard tableaux of shape alpha - alpha_n with entries in 1..n."""
    shape, _ = to_partition(alpha)
    n = alpha.n
    cells = [(r, c) for r in range(n) for c in range(shape[r])]
    filling = {}

    def place(index: int) -> int:
        if index == len(cells):
            return 1
        r, c = cells[index]
        low = 1
        if c > 0:
            low = max(low, filling[(r, c - 1)])
        if r > 0:
            low = max(low, filling[(r - 1, c)] + 1)
        count = 0
        for value in range(low, n + 1):
            filling[(r, c)] = value
            count += place(index + 1)
        filling.pop((r, c), None)
        return count

    return place(0)


@dataclass(frozen=True)
class ShiftedWeight:
    """
    alpha + (s, ..., s) with s rational. Stored in normal form: the integer
    part of s is moved into the base so that 0 <= shift < 1.
    """
    base: DominantWeight
    shift: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        shift = Fraction(self.shift)
        whole = floor(shift)
        object.__setattr__(self, "base", det_shift(self.base, whole) if whole else self.base)
        object.__setattr__(self, "shift", shift - whole)

    @property
    def n(self) -> int:
        return self.base.n

    def as_vector(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(p) + self.shift for p in self.base.parts)

    def add(self, other: DominantWeight) -> "ShiftedWeight":
        if other.n != self.n:
            raise DomainError("block sizes differ")
        parts = tuple(a + b for a, b in zip(self.base.parts, other.parts))
        return ShiftedWeight(DominantWeight(parts), self.shift)

    def plus_scalar(self, s) -> "ShiftedWeight":
        return ShiftedWeight(self.base, self.shift + Fraction(s))


def bounded_weights(n: int, bound: int) -> List[DominantWeight]:
    """Dominant weights of GL_n (negative parts allowed) with sum of |parts| at most bound."""
    result = []
    for parts in product(range(bound, -bound - 1, -1), repeat=n):
        if sum(abs(p) for p in parts) > bound:
            continue
        if all(parts[i] >= parts[i + 1] for i in range(n - 1)):
            result.append(DominantWeight(parts))
    return result
