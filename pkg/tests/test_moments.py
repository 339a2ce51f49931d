"""Moment formulas: cumulants, the colored-partition identity, corollaries."""

import random
from fractions import Fraction
from itertools import product

import pytest

from bfock.fock import FockVector, SpaceSpec, vacuum_expectation
from bfock.moments import (
    MomentProblem,
    corollary_cases,
    cumulant_block,
    eps_word_vector,
    noncrossing_partitions,
    pair_partitions,
    random_problem,
    vector_formula,
    verify_moment_identity,
    verify_vector_identity,
    wick_moment,
)
from bfock.scalars import ALPHA, ONE, Poly

F = Fraction


def unit_problem(n, lam=0, sign="+"):
    space = SpaceSpec.diagonal(sign, truncation=max(n, 1))
    return MomentProblem.build(
        xs=[(F(1),)] * n,
        ts=[((F(1),),)] * n,
        lams=[F(lam)] * n,
        space=space,
    )


def test_cumulant_singleton_and_pair():
    prob = unit_problem(3, lam=F(7, 3))
    assert cumulant_block((2,), (), prob) == Poly.const(F(7, 3))
    assert cumulant_block((1, 2), (1,), prob) == ONE


def test_cumulant_involution_insertions():
    plus = unit_problem(3)
    assert cumulant_block((1, 2, 3), (-1, 1), plus) == ONE
    minus = unit_problem(3, sign="-")
    assert cumulant_block((1, 2, 3), (-1, 1), minus) == Poly.const(-1)


def test_wick_small_cases():
    lam = F(5, 2)
    assert wick_moment(unit_problem(1, lam=lam)) == Poly.const(lam)
    assert wick_moment(unit_problem(2)) == ONE + ALPHA


def test_wick_free_specialization():
    # n=4, alpha=q=0: Jacobi moment m4 with beta=(0,1,1,..), gamma=(1,..) is 3
    value = wick_moment(unit_problem(4)).evaluate(0, 0)
    assert value == 3
    operator_value = vacuum_expectation(
        unit_problem(4).operators(), unit_problem(4).space
    ).evaluate(0, 0)
    assert operator_value == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_moment_identity_random_symbolic(n):
    rng = random.Random(n)
    space = SpaceSpec.diagonal("+-", truncation=max(n, 1))
    for _ in range(4 if n < 5 else 2):
        prob = random_problem(rng, n, space)
        report = verify_moment_identity(prob)
        assert report.equal, report.first_difference


def test_moment_identity_affine_in_lambda():
    # wick_moment is affine in each lambda_i; lambda-free part = partitions
    # where i is not a singleton
    rng = random.Random(11)
    space = SpaceSpec.diagonal("+-", truncation=3)
    base = random_problem(rng, 3, space, zero_lams=True)
    shifted = MomentProblem(
        xs=base.xs, ts=base.ts, lams=(F(2), F(0), F(0)), space=space
    )
    doubled = MomentProblem(
        xs=base.xs, ts=base.ts, lams=(F(4), F(0), F(0)), space=space
    )
    m0, m1, m2 = wick_moment(base), wick_moment(shifted), wick_moment(doubled)
    assert m2 - m1 == m1 - m0  # affine in lambda_1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vector_identity_all_eps(n):
    rng = random.Random(100 + n)
    space = SpaceSpec.diagonal("+-", truncation=max(n, 1))
    prob = random_problem(rng, n, space)
    for eps in product("*1'", repeat=n):
        report = verify_vector_identity(eps, prob)
        assert report.equal, (eps, report.first_difference)


def test_vector_star_gives_x1():
    prob = unit_problem(1)
    v = vector_formula(("*",), prob)
    assert v == FockVector.basis(prob.space, (0,))


def test_vector_unbalanced_prefix_zero():
    prob = unit_problem(2)
    assert vector_formula(("1", "*"), prob).is_zero
    assert eps_word_vector(("1", "*"), prob).is_zero


def test_vector_star_prime_example():
    # p(T_2) b*(x_1) Ω = T2 x1 + a T2 J x1
    rng = random.Random(5)
    space = SpaceSpec.diagonal("+-", truncation=2)
    prob = random_problem(rng, 2, space)
    got = vector_formula(("*", "'"), prob)
    assert got == eps_word_vector(("*", "'"), prob)
    t2x1 = tuple(
        sum(prob.ts[1][i][j] * prob.xs[0][j] for j in range(2)) for i in range(2)
    )
    jx1 = space.involve(prob.xs[0])
    t2jx1 = tuple(
        sum(prob.ts[1][i][j] * jx1[j] for j in range(2)) for i in range(2)
    )
    expected = FockVector(
        space,
        {
            (0,): Poly.const(t2x1[0]) + ALPHA * t2jx1[0],
            (1,): Poly.const(t2x1[1]) + ALPHA * t2jx1[1],
        },
    )
    assert got == expected


def test_gauge_zero_reduces_to_gaussian():
    # T = 0 kills every extended partition with marked or size>=3 blocks
    rng = random.Random(3)
    space = SpaceSpec.diagonal("+-", truncation=4)
    base = random_problem(rng, 4, space, zero_lams=True)
    zero_t = tuple(
        tuple(tuple(F(0) for _ in range(2)) for _ in range(2)) for _ in range(4)
    )
    prob = MomentProblem(xs=base.xs, ts=zero_t, lams=base.lams, space=space)
    assert wick_moment(prob) == corollary_cases("gaussian", prob)


def test_pair_partition_count():
    assert len(list(pair_partitions(4))) == 3
    assert len(list(pair_partitions(6))) == 15
    assert list(pair_partitions(3)) == []


def test_noncrossing_counts():
    # Catalan numbers for all noncrossing; 1,0,1,1,3,6,15,36 for min block 2
    catalan = [1, 1, 2, 5, 14, 42]
    for n in range(6):
        assert len(list(noncrossing_partitions(n))) == catalan[n]
    nosing = [len(list(noncrossing_partitions(n, min_block=2))) for n in range(8)]
    assert nosing == [1, 0, 1, 1, 3, 6, 15, 36]


def test_gaussian_corollary_n2():
    rng = random.Random(17)
    space = SpaceSpec.diagonal("+-", truncation=2)
    prob = random_problem(rng, 2, space, zero_lams=True)
    x1, x2 = prob.xs
    direct = sum(a * b for a, b in zip(x1, x2))
    flipped = sum(a * b for a, b in zip(space.involve(x1), x2))
    assert corollary_cases("gaussian", prob) == Poly.const(direct) + ALPHA * flipped


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_corollary_specializations_match_wick(n):
    rng = random.Random(200 + n)
    space = SpaceSpec.diagonal("++", truncation=max(n, 1))
    prob = random_problem(rng, n, space, zero_lams=True)
    full = wick_moment(prob)
    assert full.subs(alpha=0) == corollary_cases("q-case", prob)
    assert full.subs(q=0) == corollary_cases("free-alpha", prob)
    zero_t = tuple(
        tuple(tuple(F(0) for _ in range(2)) for _ in range(2)) for _ in range(n)
    )
    gaussian_prob = MomentProblem(xs=prob.xs, ts=zero_t, lams=prob.lams, space=space)
    assert wick_moment(gaussian_prob) == corollary_cases("gaussian", gaussian_prob)


def test_free_alpha_outer_arc_structure():
    # unit vector, T = identity: sum over NC>=2(4) of (1+a)^out_arc
    prob = unit_problem(4)
    got = corollary_cases("free-alpha", prob)
    expected = (ONE + ALPHA) ** 2 + (ONE + ALPHA) + (ONE + ALPHA) ** 3
    assert got == expected
    assert got == wick_moment(prob).subs(q=0)


def test_q_case_n3_single_block():
    prob = unit_problem(3)
    assert corollary_cases("q-case", prob) == ONE
    assert wick_moment(prob).subs(alpha=0) == ONE


def test_alpha_zero_kills_negative_arcs():
    rng = random.Random(23)
    space = SpaceSpec.diagonal("+-", truncation=4)
    prob = random_problem(rng, 4, space, zero_lams=True)
    specialized = wick_moment(prob).subs(alpha=0)
    assert all(exp[0] == 0 for exp in specialized.terms)


def test_corollary_precondition_errors():
    prob = unit_problem(2, lam=1)
    with pytest.raises(ValueError):
        corollary_cases("q-case", prob)
    space = SpaceSpec.diagonal("-", truncation=2)
    bad = MomentProblem.build(
        xs=[(F(1),)] * 2, ts=[((F(1),),)] * 2, lams=[F(0)] * 2, space=space
    )
    with pytest.raises(ValueError):
        corollary_cases("free-alpha", bad)
