"""Partitions, dominance order, interlacing, and partition-indexed functions."""

from __future__ import annotations

from typing import Iterator


class Partition:
    """Weakly decreasing tuple of nonnegative integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    and ``Partition((2, 1))`` are the same value.  Instances are immutable
    and hashable.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        ps = tuple(int(p) for p in parts)
        while ps and ps[-1] == 0:
            ps = ps[:-1]
        prev = None
        for p in ps:
            if p < 0:
                raise ValueError(f"negative part in partition: {ps}")
            if prev is not None and p > prev:
                raise ValueError(f"parts not weakly decreasing: {ps}")
            prev = p
        object.__setattr__(self, "parts", ps)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """1-based part access with implicit trailing zeros."""
        if i < 1:
            raise IndexError(f"part index must be >= 1, got {i}")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def padded(self, n: int) -> tuple:
        if n < len(self.parts):
            raise ValueError(f"cannot pad {self} to length {n}")
        return self.parts + (0,) * (n - len(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def cells(self):
        """Yield the boxes (i, j) of the Young diagram, 1-based."""
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def contains(self, other: "Partition") -> bool:
        n = max(len(self), len(other))
        return all(self.part(i) >= other.part(i) for i in range(1, n + 1))

    def shifted(self, c: int, n: int) -> "Partition":
        """lambda + c*(1, ..., 1) over n parts; all results must stay >= 0."""
        return Partition(tuple(p + c for p in self.padded(n)))

    def add_unit(self, i: int, n: int) -> "Partition | None":
        """lambda + e_i over n parts, or None when the result is not a partition."""
        ps = list(self.padded(n))
        ps[i - 1] += 1
        if i > 1 and ps[i - 2] < ps[i - 1]:
            return None
        return Partition(ps)

    def sort_key(self) -> tuple:
        """Graded reverse-lexicographic key: weight first, then lex on parts."""
        return (self.weight, tuple(-p for p in self.parts))


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """True iff every partial sum of lam is <= the matching partial sum of mu."""
    n = max(len(lam), len(mu))
    sl = sm = 0
    for i in range(1, n + 1):
        sl += lam.part(i)
        sm += mu.part(i)
        if sl > sm:
            return False
    return True


def interlaces(outer: Partition, inner: Partition) -> bool:
    """True iff outer_1 >= inner_1 >= outer_2 >= inner_2 >= ...

    This is the support condition shared by Pieri coefficients (outer = mu,
    inner = lambda) and one-row branching (outer = rank-(l+1) partition,
    inner = rank-l partition).
    """
    n = max(len(outer), len(inner))
    for i in range(1, n + 1):
        if outer.part(i) < inner.part(i):
            return False
        if inner.part(i) < outer.part(i + 1):
            return False
    return True


def partitions_of(d: int, max_length: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of weight d, optionally bounded in length and part size."""
    if d < 0:
        return
    maxp = d if max_part is None else min(max_part, d)
    maxl = d if max_length is None else max_length

    def rec(remaining, bound, length):
        if remaining == 0:
            yield ()
            return
        if length == 0:
            return
        for first in range(min(bound, remaining), 0, -1):
            for rest in rec(remaining - first, first, length - 1):
                yield (first,) + rest

    if d == 0:
        yield Partition()
        return
    for parts in rec(d, maxp, maxl):
        yield Partition(parts)


def partitions_up_to(weight: int, max_length: int | None = None) -> Iterator[Partition]:
    for d in range(weight + 1):
        yield from partitions_of(d, max_length=max_length)


class PartitionFunction:
    """Finitely supported function on partitions; zero off the support."""

    __slots__ = ("support", "zero")

    def __init__(self, support: dict, zero):
        self.support = {lam: v for lam, v in support.items() if v != zero}
        self.zero = zero

    def __call__(self, lam: Partition):
        return self.support.get(lam, self.zero)

    def __eq__(self, other):
        return (
            isinstance(other, PartitionFunction)
            and self.zero == other.zero
            and self.support == other.support
        )

    def __repr__(self):
        return f"PartitionFunction({self.support!r})"

    def items(self):
        return self.support.items()
