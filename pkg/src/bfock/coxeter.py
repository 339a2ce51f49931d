"""The hyperoctahedral group: signed permutations with length statistics.

Elements are signed permutations of {±1, ..., ±n} in window notation
(window[k-1] = image of k; the image of -k is forced by sigma(-k) = -sigma(k)).
The group is generated by the sign flip pi_0 (1 -> -1) and the adjacent
transpositions pi_i (i <-> i+1).

Enumeration is breadth-first from the identity, which yields one canonical
minimal word per element (generator indices ascending as tie-break).  The
statistics l1 (count of pi_0 letters) and l2 (count of pi_i, i >= 1, letters)
are read off that word; they are invariants of the element, which the test
suite checks exhaustively for small n rather than assuming.

A word (g_1, ..., g_k) denotes the product pi_{g_1} · pi_{g_2} ··· pi_{g_k},
i.e. the rightmost letter acts first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ResourceLimitError

MAX_GROUP_RANK = 7

Window = tuple[int, ...]


@dataclass(frozen=True)
class SignedPermutation:
    """A signed permutation in window notation."""

    window: Window

    def __post_init__(self) -> None:
        n = len(self.window)
        if sorted(abs(v) for v in self.window) != list(range(1, n + 1)):
            raise ValueError(f"not a signed permutation window: {self.window}")

    @property
    def n(self) -> int:
        return len(self.window)

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def generator(cls, n: int, i: int) -> SignedPermutation:
        """pi_0 flips the sign of 1; pi_i (1 <= i <= n-1) swaps i and i+1."""
        if not 0 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for n={n}")
        window = list(range(1, n + 1))
        if i == 0:
            window[0] = -1
        else:
            window[i - 1], window[i] = window[i], window[i - 1]
        return cls(tuple(window))

    def apply(self, k: int) -> int:
        """Image of the signed point k."""
        if k > 0:
            return self.window[k - 1]
        return -self.window[-k - 1]

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        """Composition (self ∘ other): apply ``other`` first."""
        if self.n != other.n:
            raise ValueError("cannot compose signed permutations of different sizes")
        return SignedPermutation(tuple(self.apply(v) for v in other.window))

    def inverse(self) -> SignedPermutation:
        window = [0] * self.n
        for k, v in enumerate(self.window, start=1):
            if v > 0:
                window[v - 1] = k
            else:
                window[-v - 1] = -k
        return SignedPermutation(tuple(window))

    def negative_entries(self) -> int:
        return sum(1 for v in self.window if v < 0)


@dataclass(frozen=True)
class GroupElementRecord:
    """A group element with its canonical minimal word and (l1, l2)."""

    perm: SignedPermutation
    l1: int
    l2: int
    word: tuple[int, ...]


def _right_multiply(window: Window, g: int) -> Window:
    # window of sigma·pi_g: pi_0 flips the first entry, pi_i swaps entries i-1, i
    w = list(window)
    if g == 0:
        w[0] = -w[0]
    else:
        w[g - 1], w[g] = w[g], w[g - 1]
    return tuple(w)


@lru_cache(maxsize=None)
def _group_table(n: int) -> tuple[tuple[GroupElementRecord, ...], dict[Window, GroupElementRecord]]:
    start = SignedPermutation.identity(n).window
    words: dict[Window, tuple[int, ...]] = {start: ()}
    order: list[Window] = [start]
    queue: deque[Window] = deque([start])
    while queue:
        window = queue.popleft()
        word = words[window]
        for g in range(n):
            neighbor = _right_multiply(window, g)
            if neighbor not in words:
                words[neighbor] = word + (g,)
                order.append(neighbor)
                queue.append(neighbor)
    records = tuple(
        GroupElementRecord(
            perm=SignedPermutation(window),
            l1=words[window].count(0),
            l2=len(words[window]) - words[window].count(0),
            word=words[window],
        )
        for window in order
    )
    return records, {record.perm.window: record for record in records}


def _check_rank(n: int) -> None:
    if not 1 <= n <= MAX_GROUP_RANK:
        raise ResourceLimitError(
            f"group enumeration supports 1 <= n <= {MAX_GROUP_RANK}, got {n}"
        )


def enumerate_group(n: int) -> tuple[GroupElementRecord, ...]:
    """All 2^n n! elements in BFS discovery order, with minimal words."""
    _check_rank(n)
    return _group_table(n)[0]


def element_record(perm: SignedPermutation) -> GroupElementRecord:
    _check_rank(perm.n)
    return _group_table(perm.n)[1][perm.window]


def length_stats(perm: SignedPermutation) -> tuple[int, int]:
    """(l1, l2) of any minimal word for perm."""
    record = element_record(perm)
    return record.l1, record.l2


def coxeter_length(perm: SignedPermutation) -> int:
    l1, l2 = length_stats(perm)
    return l1 + l2


def word_to_permutation(word: tuple[int, ...], n: int) -> SignedPermutation:
    perm = SignedPermutation.identity(n)
    for g in word:
        perm = perm * SignedPermutation.generator(n, g)
    return perm


def reduced_words(perm: SignedPermutation) -> Iterator[tuple[int, ...]]:
    """All reduced words of perm.

    Exhaustive; the count grows violently with n, so this is guarded at
    n <= 4 and meant for the small well-definedness checks only.
    """
    if perm.n > 4:
        raise ResourceLimitError("reduced-word enumeration is guarded at n <= 4")
    _, table = _group_table(perm.n)

    def recurse(window: Window) -> Iterator[tuple[int, ...]]:
        record = table[window]
        if not record.word:
            yield ()
            return
        length = len(record.word)
        for g in range(perm.n):
            shorter = _right_multiply(window, g)
            if len(table[shorter].word) == length - 1:
                for prefix in recurse(shorter):
                    yield prefix + (g,)

    return recurse(perm.window)
