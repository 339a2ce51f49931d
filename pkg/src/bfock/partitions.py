"""Colored set partitions of type B, extended partitions, and their statistics.

A colored partition of [n] = {1, ..., n} assigns a ±1 color to every arc,
where the arcs of a block are the pairs of consecutive elements; singletons
carry no arcs (their implicit color is +1).  Blocks are ordered by their
maxima.  An extended partition additionally marks ("primes") some blocks of
size at least two; marked blocks and singletons are the *open* blocks.

Statistics (all counted over pairs of arcs from distinct blocks):

* rc      - interleaving pairs i < i' < j < j'
* nest    - pairs where one arc strictly covers the other
* rnarc   - nesting pairs whose inner arc is colored -1
* rarc    - all nesting pairs (color-blind)
* narc    - number of -1 arcs
* max_c   - (open block V, arc W) pairs with W covering max(V)
* max_l   - (open block V, -1 arc W) pairs with W entirely right of max(V)
* m_left  - like max_l but color-blind
* out_arc - arcs covered by no other arc; only for noncrossing partitions

Enumeration order is deterministic: uncolored partitions in restricted-
growth-string order, colorings in binary order (+1 before -1), markings in
subset-mask order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import ResourceLimitError

MAX_COLORED_N = 10
MAX_EXTENDED_N = 8

STAR, ONE_SYM, PRIME = "*", "1", "'"
EPS_ALPHABET = (STAR, ONE_SYM, PRIME)

Block = tuple[int, ...]
Colors = tuple[int, ...]


@dataclass(frozen=True)
class ColoredPartition:
    """Set partition of [n] with ±1 arc colors; blocks ordered by maxima."""

    n: int
    blocks: tuple[Block, ...]
    colors: tuple[Colors, ...]

    def __post_init__(self) -> None:
        seen = sorted(x for block in self.blocks for x in block)
        if seen != list(range(1, self.n + 1)):
            raise ValueError("blocks do not partition [n]")
        if any(list(block) != sorted(block) for block in self.blocks):
            raise ValueError("blocks must be sorted ascending")
        if list(self.blocks) != sorted(self.blocks, key=max):
            raise ValueError("blocks must be ordered by their maxima")
        for block, colors in zip(self.blocks, self.colors, strict=True):
            if len(colors) != len(block) - 1:
                raise ValueError("one color per consecutive-element arc")
            if any(c not in (1, -1) for c in colors):
                raise ValueError("colors must be ±1")

    def arcs(self) -> list[tuple[int, int, int, int]]:
        """All arcs as (left, right, color, block_index)."""
        out = []
        for b, (block, colors) in enumerate(zip(self.blocks, self.colors)):
            for k in range(len(block) - 1):
                out.append((block[k], block[k + 1], colors[k], b))
        return out

    def singleton_indices(self) -> list[int]:
        return [b for b, block in enumerate(self.blocks) if len(block) == 1]

    def block_sizes(self) -> list[int]:
        return [len(block) for block in self.blocks]


@dataclass(frozen=True)
class ExtendedPartition:
    """Colored partition with a set of marked (open) blocks of size >= 2."""

    base: ColoredPartition
    marked: frozenset[int]

    def __post_init__(self) -> None:
        for b in self.marked:
            if len(self.base.blocks[b]) < 2:
                raise ValueError("only blocks of size >= 2 may be marked")

    def open_block_indices(self) -> list[int]:
        """Marked blocks and singletons, in block (max) order."""
        return [
            b
            for b, block in enumerate(self.base.blocks)
            if b in self.marked or len(block) == 1
        ]


@dataclass(frozen=True)
class PartitionStats:
    rc: int
    nest: int
    rnarc: int
    narc: int
    rarc: int
    max_c: int
    max_l: int
    m_left: int
    out_arc: int | None


def _crossing(v: tuple[int, int], w: tuple[int, int]) -> bool:
    (i, j), (k, l) = v, w
    return i < k < j < l or k < i < l < j


def _nests(v: tuple[int, int], w: tuple[int, int]) -> bool:
    """True when v strictly covers w."""
    return v[0] < w[0] and w[1] < v[1]


def statistics(p: ColoredPartition | ExtendedPartition) -> PartitionStats:
    """All partition statistics; a bare ColoredPartition counts as unmarked."""
    if isinstance(p, ColoredPartition):
        p = ExtendedPartition(base=p, marked=frozenset())
    base = p.base
    arcs = base.arcs()

    rc = nest = rnarc = 0
    for idx, (i, j, _, b) in enumerate(arcs):
        for k, l, color2, b2 in arcs[idx + 1 :]:
            if b == b2:
                continue
            if _crossing((i, j), (k, l)):
                rc += 1
            elif _nests((i, j), (k, l)):
                nest += 1
                if color2 == -1:
                    rnarc += 1
            elif _nests((k, l), (i, j)):
                nest += 1
                if arcs[idx][2] == -1:
                    rnarc += 1

    narc = sum(1 for arc in arcs if arc[2] == -1)

    max_c = max_l = m_left = 0
    for b in p.open_block_indices():
        top = max(base.blocks[b])
        for i, j, color, b2 in arcs:
            if i < top < j:
                max_c += 1
            if top < i:
                m_left += 1
                if color == -1:
                    max_l += 1

    # arcs within one block share endpoints or are disjoint, so rc == 0
    # already means the partition is noncrossing
    out_arc = None
    if rc == 0:
        out_arc = sum(
            1
            for idx, w in enumerate(arcs)
            if not any(
                _nests((v[0], v[1]), (w[0], w[1]))
                for k, v in enumerate(arcs)
                if k != idx
            )
        )

    return PartitionStats(
        rc=rc,
        nest=nest,
        rnarc=rnarc,
        narc=narc,
        rarc=nest,
        max_c=max_c,
        max_l=max_l,
        m_left=m_left,
        out_arc=out_arc,
    )


# -- enumeration ---------------------------------------------------------------


def set_partitions(n: int) -> Iterator[tuple[Block, ...]]:
    """Uncolored partitions of [n] in restricted-growth-string order.

    Blocks of each partition are re-sorted by their maxima.
    """
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def recurse(pos: int, top: int) -> Iterator[tuple[Block, ...]]:
        if pos == n:
            blocks: dict[int, list[int]] = {}
            for idx, label in enumerate(rgs, start=1):
                blocks.setdefault(label, []).append(idx)
            yield tuple(
                sorted((tuple(block) for block in blocks.values()), key=max)
            )
            return
        for label in range(top + 2):
            rgs[pos] = label
            yield from recurse(pos + 1, max(top, label))

    yield from recurse(1, 0)


def _passes_filter(blocks: tuple[Block, ...], which: str) -> bool:
    if which == "all":
        return True
    if which == "no-singletons":
        return all(len(block) >= 2 for block in blocks)
    if which == "pairs-only":
        return all(len(block) == 2 for block in blocks)
    raise ValueError(f"unknown filter {which!r}")


def _colorings(blocks: tuple[Block, ...]) -> Iterator[tuple[Colors, ...]]:
    arc_counts = [len(block) - 1 for block in blocks]
    total = sum(arc_counts)
    for assignment in product((1, -1), repeat=total):
        out = []
        pos = 0
        for count in arc_counts:
            out.append(tuple(assignment[pos : pos + count]))
            pos += count
        yield tuple(out)


def enumerate_colored(n: int, which: str = "all") -> Iterator[ColoredPartition]:
    """All colored partitions of [n]; 2^{#arcs} colorings per partition."""
    if n > MAX_COLORED_N or n < 0:
        raise ResourceLimitError(f"colored enumeration supports 0 <= n <= {MAX_COLORED_N}")
    for blocks in set_partitions(n):
        if not _passes_filter(blocks, which):
            continue
        for colors in _colorings(blocks):
            yield ColoredPartition(n=n, blocks=blocks, colors=colors)


def enumerate_extended(n: int) -> Iterator[ExtendedPartition]:
    """Every (partition, coloring, marking) triple; markings in mask order."""
    if n > MAX_EXTENDED_N or n < 0:
        raise ResourceLimitError(f"extended enumeration supports 0 <= n <= {MAX_EXTENDED_N}")
    for colored in enumerate_colored(n):
        eligible = [
            b for b, block in enumerate(colored.blocks) if len(block) >= 2
        ]
        for mask in range(1 << len(eligible)):
            marked = frozenset(
                b for pos, b in enumerate(eligible) if mask >> pos & 1
            )
            yield ExtendedPartition(base=colored, marked=marked)


def eps_compatible(p: ExtendedPartition, eps: Sequence[str]) -> bool:
    """Whether the extended partition is produced by the symbol word eps.

    Per block {i_1 < ... < i_m}: the minimum is created at a star position;
    marked blocks grow by primes at every later element; unmarked blocks of
    size >= 2 grow by primes and close with a one at the maximum; singletons
    are unmarked star positions.
    """
    base = p.base
    if len(eps) != base.n or any(symbol not in EPS_ALPHABET for symbol in eps):
        raise ValueError("eps must be over {*, 1, '} with length n")
    for b, block in enumerate(base.blocks):
        if eps[block[0] - 1] != STAR:
            return False
        if len(block) == 1:
            continue
        interior = block[1:] if b in p.marked else block[1:-1]
        if any(eps[i - 1] != PRIME for i in interior):
            return False
        if b not in p.marked and eps[block[-1] - 1] != ONE_SYM:
            return False
    return True


def enumerate_extended_eps(eps: Sequence[str]) -> Iterator[ExtendedPartition]:
    """Extended partitions compatible with eps, built by direct construction.

    Walks positions left to right: a star opens a singleton; a one closes
    any open block; a prime extends any open block keeping it open.  Each
    attachment happens with both arc colors.
    """
    n = len(eps)
    if n > MAX_EXTENDED_N or n < 0:
        raise ResourceLimitError(f"extended enumeration supports 0 <= n <= {MAX_EXTENDED_N}")
    if any(symbol not in EPS_ALPHABET for symbol in eps):
        raise ValueError("eps must be over {*, 1, '}")

    # state entries: (block elements, arc colors, still open)
    def recurse(pos: int, state: tuple[tuple[Block, Colors, bool], ...]):
        if pos == n:
            ordered = sorted(range(len(state)), key=lambda b: max(state[b][0]))
            blocks = tuple(state[b][0] for b in ordered)
            colors = tuple(state[b][1] for b in ordered)
            marked = frozenset(
                rank
                for rank, b in enumerate(ordered)
                if state[b][2] and len(state[b][0]) > 1
            )
            yield ExtendedPartition(
                base=ColoredPartition(n=n, blocks=blocks, colors=colors),
                marked=marked,
            )
            return
        symbol = eps[pos]
        point = pos + 1
        if symbol == STAR:
            yield from recurse(pos + 1, state + (((point,), (), True),))
            return
        for b, (block, colors, is_open) in enumerate(state):
            if not is_open:
                continue
            for color in (1, -1):
                grown = (
                    block + (point,),
                    colors + (color,),
                    symbol == PRIME,
                )
                yield from recurse(pos + 1, state[:b] + (grown,) + state[b + 1 :])

    yield from recurse(0, ())
