"""Combinatorial side of the moment formulas, and the dual-path harness.

The central identity expresses a vacuum moment of deformed field operators
as a sum over colored partitions:

    phi(B(x_n) ··· B(x_1))
        = sum over colored partitions of a^narc q^(rc + 2 rnarc) K_partition

where the block cumulant K threads the block's interior through the
coefficient operators T and the involution (one insertion per -1 arc), and
singleton blocks contribute their lambda.  The vector-level refinement
resolves a word of creators / annihilators / gauge factors applied to the
vacuum as a sum over eps-compatible extended partitions with the enriched
weight q^(rc + max_c + 2 rnarc + 2 max_l).

Index convention: xs[0] is x_1, the factor applied first (the rightmost
factor of the operator product).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .errors import ResourceLimitError
from .fock import FockVector, OpSpec, SpaceSpec, apply_operator, type_b, vacuum_expectation
from .partitions import (
    ONE_SYM,
    PRIME,
    STAR,
    ColoredPartition,
    enumerate_colored,
    enumerate_extended_eps,
    set_partitions,
    statistics,
)
from .scalars import (
    ALPHA,
    ONE,
    Poly,
    ZERO,
    FracMatrix,
    FracVector,
    frac_dot,
    frac_mat_vec,
    frac_matrix,
    frac_vector,
)

MAX_WICK_N = 8
MAX_VECTOR_N = 6


@dataclass(frozen=True)
class MomentProblem:
    """Vectors, coefficient operators and shift constants of a mixed moment."""

    xs: tuple[FracVector, ...]
    ts: tuple[FracMatrix, ...]
    lams: tuple[Fraction, ...]
    space: SpaceSpec

    def __post_init__(self) -> None:
        if not len(self.xs) == len(self.ts) == len(self.lams):
            raise ValueError("xs, ts and lams must have equal lengths")
        d = self.space.d
        if any(len(x) != d for x in self.xs) or any(len(t) != d for t in self.ts):
            raise ValueError("vector/operator dimensions must match the space")

    @classmethod
    def build(
        cls,
        xs: Sequence[Sequence[Fraction]],
        ts: Sequence[Sequence[Sequence[Fraction]]],
        lams: Sequence[Fraction | int],
        space: SpaceSpec,
    ) -> MomentProblem:
        return cls(
            xs=tuple(frac_vector(x) for x in xs),
            ts=tuple(frac_matrix(t) for t in ts),
            lams=tuple(Fraction(lam) for lam in lams),
            space=space,
        )

    @property
    def n(self) -> int:
        return len(self.xs)

    def x(self, point: int) -> FracVector:
        """Vector at the 1-based point label."""
        return self.xs[point - 1]

    def t(self, point: int) -> FracMatrix:
        return self.ts[point - 1]

    def operators(self) -> list[OpSpec]:
        """The product B(x_n)···B(x_1) in product order (rightmost last)."""
        return [
            type_b(self.x(point), self.t(point), self.lams[point - 1])
            for point in range(self.n, 0, -1)
        ]


def _color_apply(color: int, vec: FracVector, space: SpaceSpec) -> FracVector:
    return vec if color == 1 else space.involve(vec)


def closed_chain_value(block: Sequence[int], colors: Sequence[int], prob: MomentProblem) -> Fraction:
    """<x_max, f_{m-1} T_{x_{i_{m-1}}} ··· f_2 T_{x_{i_2}} f_1 x_min> for m >= 2."""
    elements = list(block)
    vec = prob.x(elements[0])
    for j, color in enumerate(colors, start=1):
        vec = _color_apply(color, vec, prob.space)
        if j < len(colors):  # the maximum enters through the inner product
            vec = frac_mat_vec(prob.t(elements[j]), vec)
    return frac_dot(prob.x(elements[-1]), vec)


def open_chain_vector(block: Sequence[int], colors: Sequence[int], prob: MomentProblem) -> FracVector:
    """T_{x_{i_m}} f_{m-1} ··· f_1 x_min; the identity chain for singletons."""
    elements = list(block)
    vec = prob.x(elements[0])
    for j, color in enumerate(colors, start=1):
        vec = _color_apply(color, vec, prob.space)
        vec = frac_mat_vec(prob.t(elements[j]), vec)
    return vec


def cumulant_block(block: Sequence[int], colors: Sequence[int], prob: MomentProblem) -> Poly:
    """Deformed block cumulant: lambda for singletons, the chain otherwise."""
    if len(block) == 1:
        return Poly.const(prob.lams[block[0] - 1])
    return Poly.const(closed_chain_value(block, colors, prob))


def cumulant_partition(p: ColoredPartition, prob: MomentProblem) -> Poly:
    value = ONE
    for block, colors in zip(p.blocks, p.colors):
        value = value * cumulant_block(block, colors, prob)
        if value.is_zero:
            break
    return value


def wick_moment(prob: MomentProblem) -> Poly:
    """Exact colored-partition sum for phi(B(x_n)···B(x_1))."""
    if prob.n > MAX_WICK_N:
        raise ResourceLimitError(f"wick_moment is guarded at n <= {MAX_WICK_N}")
    total = ZERO
    for p in enumerate_colored(prob.n):
        value = cumulant_partition(p, prob)
        if value.is_zero:
            continue
        stats = statistics(p)
        weight = Poly.monomial(1, ea=stats.narc, eq=stats.rc + 2 * stats.rnarc)
        total = total + weight * value
    return total


def vector_formula(eps: Sequence[str], prob: MomentProblem) -> FockVector:
    """Extended-partition expansion of b^eps(n)···b^eps(1) Ω."""
    if prob.n != len(eps):
        raise ValueError("eps length must match the number of points")
    if prob.n > MAX_VECTOR_N:
        raise ResourceLimitError(f"vector_formula is guarded at n <= {MAX_VECTOR_N}")
    total = FockVector(prob.space)
    for p in enumerate_extended_eps(eps):
        base = p.base
        scalar = ONE
        for b, (block, colors) in enumerate(zip(base.blocks, base.colors)):
            if len(block) >= 2 and b not in p.marked:
                scalar = scalar * closed_chain_value(block, colors, prob)
                if scalar.is_zero:
                    break
        if scalar.is_zero:
            continue
        stats = statistics(p)
        weight = Poly.monomial(
            1,
            ea=stats.narc,
            eq=stats.rc + stats.max_c + 2 * stats.rnarc + 2 * stats.max_l,
        )
        factors = [  # singleton chains are empty, so this is T-hat applied to x_min
            open_chain_vector(base.blocks[b], base.colors[b], prob)
            for b in p.open_block_indices()  # already ordered by block maxima
        ]
        total = total + (weight * scalar) * FockVector.from_tensor(prob.space, factors)
    return total


def eps_operator(symbol: str, point: int, prob: MomentProblem) -> OpSpec:
    """The factor a symbol stands for: creator, annihilator, or gauge."""
    if symbol == STAR:
        return OpSpec("create", x=prob.x(point))
    if symbol == ONE_SYM:
        return OpSpec("annihilate", x=prob.x(point))
    if symbol == PRIME:
        return OpSpec("gauge", t=prob.t(point))
    raise ValueError(f"unknown symbol {symbol!r}")


def eps_word_vector(eps: Sequence[str], prob: MomentProblem) -> FockVector:
    """Operator side: apply the symbol word to the vacuum, first symbol first."""
    v = FockVector.vacuum(prob.space)
    for point, symbol in enumerate(eps, start=1):
        v = apply_operator(eps_operator(symbol, point, prob), v)
    return v


# -- independent corollary evaluators -------------------------------------------


def pair_partitions(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Perfect matchings of [n] by always pairing the least remaining point."""
    points = tuple(range(1, n + 1))

    def recurse(remaining: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not remaining:
            yield ()
            return
        first = remaining[0]
        for idx in range(1, len(remaining)):
            partner = remaining[idx]
            rest = remaining[1:idx] + remaining[idx + 1 :]
            for tail in recurse(rest):
                yield ((first, partner),) + tail

    if n % 2:
        return iter(())
    return recurse(points)


def noncrossing_partitions(n: int, min_block: int = 1) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Noncrossing partitions via the interval decomposition of the first block."""

    def over_interval(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        rest = points[1:]
        # choose the rest of first's block; gaps between chosen elements
        # must be partitioned among themselves for noncrossing
        for mask in range(1 << len(rest)):
            chosen = [rest[i] for i in range(len(rest)) if mask >> i & 1]
            block = (first, *chosen)
            if len(block) < min_block:
                continue
            segments = []
            prev = first
            ok = True
            for boundary in chosen + [None]:
                segment = tuple(
                    p for p in rest if prev < p and (boundary is None or p < boundary)
                )
                segments.append(segment)
                if boundary is not None:
                    prev = boundary
            tails: list[list[tuple[tuple[int, ...], ...]]] = []
            for segment in segments:
                sub = list(over_interval(segment))
                if not sub:
                    ok = False
                    break
                tails.append(sub)
            if not ok:
                continue
            for combo in product(*tails):
                inner: tuple[tuple[int, ...], ...] = ()
                for part in combo:
                    inner += part
                yield (block,) + inner

    for raw in over_interval(tuple(range(1, n + 1))):
        yield tuple(sorted(raw, key=max))


def plain_chain_value(block: Sequence[int], prob: MomentProblem) -> Fraction:
    """<x_max, prod over interior points of T x_min>, no involution insertions."""
    elements = list(block)
    vec = prob.x(elements[0])
    for point in elements[1:-1]:
        vec = frac_mat_vec(prob.t(point), vec)
    return frac_dot(prob.x(elements[-1]), vec)


def _count_outer_arcs(blocks: Sequence[tuple[int, ...]]) -> int:
    arcs = [
        (block[k], block[k + 1]) for block in blocks for k in range(len(block) - 1)
    ]
    return sum(
        1
        for idx, (i, j) in enumerate(arcs)
        if not any(v[0] < i and j < v[1] for k, v in enumerate(arcs) if k != idx)
    )


def _uncolored_rc(blocks: Sequence[tuple[int, ...]]) -> int:
    tagged = [
        (block[k], block[k + 1], b)
        for b, block in enumerate(blocks)
        for k in range(len(block) - 1)
    ]
    count = 0
    for idx, (i, j, b) in enumerate(tagged):
        for k, l, b2 in tagged[idx + 1 :]:
            if b != b2 and (i < k < j < l or k < i < l < j):
                count += 1
    return count


def corollary_q_case(prob: MomentProblem) -> Poly:
    """Specialized sum at alpha = 0, lambda = 0: q^rc over singleton-free partitions."""
    _require_zero_lams(prob)
    total = ZERO
    for blocks in set_partitions(prob.n):
        if any(len(block) < 2 for block in blocks):
            continue
        value = Fraction(1)
        for block in blocks:
            value *= plain_chain_value(block, prob)
            if not value:
                break
        if value:
            total = total + Poly.monomial(value, eq=_uncolored_rc(blocks))
    return total


def corollary_gaussian(prob: MomentProblem) -> Poly:
    """Specialized sum at T = 0, lambda = 0: colored pair partitions only."""
    _require_zero_lams(prob)
    total = ZERO
    for pairs in pair_partitions(prob.n):
        blocks = tuple(sorted(pairs, key=max))
        for colors in product((1, -1), repeat=len(blocks)):
            p = ColoredPartition(
                n=prob.n, blocks=blocks, colors=tuple((c,) for c in colors)
            )
            stats = statistics(p)
            value = Fraction(1)
            for (i, j), color in zip(p.blocks, (c[0] for c in p.colors)):
                left = prob.x(i) if color == 1 else prob.space.involve(prob.x(i))
                value *= frac_dot(prob.x(j), left)
                if not value:
                    break
            if value:
                total = total + Poly.monomial(
                    value, ea=stats.narc, eq=stats.rc + 2 * stats.rnarc
                )
    return total


def corollary_free_alpha(prob: MomentProblem) -> Poly:
    """Specialized sum at q = 0, lambda = 0: (1+a)^out_arc over noncrossing partitions.

    Requires involution-fixed vectors (x̄ = x); otherwise the collapsed form
    does not represent the colored sum.
    """
    _require_zero_lams(prob)
    for x in prob.xs:
        if prob.space.involve(x) != x:
            raise ValueError("free-alpha case requires involution-fixed vectors")
    total = ZERO
    for blocks in noncrossing_partitions(prob.n, min_block=2):
        value = Fraction(1)
        for block in blocks:
            value *= plain_chain_value(block, prob)
            if not value:
                break
        if value:
            total = total + value * (ONE + ALPHA) ** _count_outer_arcs(blocks)
    return total


def _require_zero_lams(prob: MomentProblem) -> None:
    if any(prob.lams):
        raise ValueError("corollary cases require lambda = 0")


def corollary_cases(which: str, prob: MomentProblem) -> Poly:
    if which == "q-case":
        return corollary_q_case(prob)
    if which == "gaussian":
        return corollary_gaussian(prob)
    if which == "free-alpha":
        return corollary_free_alpha(prob)
    raise ValueError(f"unknown corollary case {which!r}")


# -- verification harness --------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    name: str
    equal: bool
    lhs: str
    rhs: str
    first_difference: str | None


def _poly_report(name: str, lhs: Poly, rhs: Poly) -> VerifyReport:
    first = None
    if lhs != rhs:
        diff = lhs - rhs
        exp, coeff = diff.sorted_terms()[0]
        first = f"monomial {Poly.monomial(1, *exp)} differs by {coeff}"
    return VerifyReport(name, lhs == rhs, str(lhs), str(rhs), first)


def _vector_report(name: str, lhs: FockVector, rhs: FockVector) -> VerifyReport:
    first = None
    if lhs != rhs:
        words = sorted(set(lhs.coeffs) | set(rhs.coeffs))
        for word in words:
            if lhs.coeff(word) != rhs.coeff(word):
                first = (
                    f"word {word}: {lhs.coeff(word)} vs {rhs.coeff(word)}"
                )
                break
    return VerifyReport(
        name,
        lhs == rhs,
        _vector_str(lhs),
        _vector_str(rhs),
        first,
    )


def _vector_str(v: FockVector) -> str:
    if v.is_zero:
        return "0"
    parts = [
        f"[{' '.join(str(letter + 1) for letter in word)}]({coeff})"
        for word, coeff in sorted(v.coeffs.items())
    ]
    return " + ".join(parts)


def verify_moment_identity(prob: MomentProblem) -> VerifyReport:
    """Operator vacuum expectation vs the colored-partition sum."""
    lhs = vacuum_expectation(prob.operators(), prob.space)
    rhs = wick_moment(prob)
    return _poly_report(f"moment-identity-n{prob.n}", lhs, rhs)


def verify_vector_identity(eps: Sequence[str], prob: MomentProblem) -> VerifyReport:
    """Operator word on the vacuum vs the extended-partition expansion."""
    lhs = eps_word_vector(eps, prob)
    rhs = vector_formula(eps, prob)
    return _vector_report(f"vector-identity-{''.join(eps)}", lhs, rhs)


def random_problem(
    rng: random.Random,
    n: int,
    space: SpaceSpec,
    zero_lams: bool = False,
) -> MomentProblem:
    """Seeded random instance over small rationals (|num| <= 5, den <= 5)."""

    def rational() -> Fraction:
        return Fraction(rng.randint(-5, 5), rng.randint(1, 5))

    d = space.d
    xs = [tuple(rational() for _ in range(d)) for _ in range(n)]
    ts = []
    for _ in range(n):
        upper = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                upper[i][j] = rational()
                upper[j][i] = upper[i][j]
        ts.append(tuple(tuple(row) for row in upper))
    lams = [Fraction(0) if zero_lams else rational() for _ in range(n)]
    return MomentProblem.build(xs, ts, lams, space)
