"""(q,t) model: symmetrizer, operators, Wick formula, specializations."""

import random
from fractions import Fraction

import pytest

from bfock.fock import (
    FockVector,
    SpaceSpec,
    annihilate,
    apply_operator,
    basis_words,
    gauge,
    inner,
    symmetrizer,
)
from bfock.moments import random_problem, wick_moment
from bfock.qt import (
    QtSpec,
    qt_annihilate,
    qt_apply,
    qt_create,
    qt_gauge,
    qt_inner,
    qt_symmetrizer,
    qt_vacuum_expectation,
    qt_wick,
    qt_y,
    qt_y_moment,
)
from bfock.scalars import ONE, Q, T, Poly, frac_identity, mat_eq

F = Fraction

SPEC1 = QtSpec.make(1, truncation=6)
SPEC2 = QtSpec.make(2, truncation=6)

UNIT = (F(1),)
ID1 = ((F(1),),)


def test_qt_symmetrizer_small():
    assert mat_eq(qt_symmetrizer(1, SPEC2), [[ONE, Poly()], [Poly(), ONE]])
    assert mat_eq(qt_symmetrizer(2, SPEC1), [[T + Q]])


def test_qt_symmetrizer_t1_recovers_type_b_alpha0():
    for n in (1, 2, 3):
        lhs = qt_symmetrizer(n, SPEC2)
        rhs = symmetrizer(n, SPEC2.space)
        for row_l, row_r in zip(lhs, rhs):
            for a, b in zip(row_l, row_r):
                assert a.subs(t=1) == b.subs(alpha=0)


def test_qt_operators_kill_vacuum():
    omega = FockVector.vacuum(SPEC2.space)
    assert qt_apply(qt_annihilate((F(1), F(0))), omega).is_zero
    assert qt_apply(qt_gauge(frac_identity(2)), omega).is_zero


def test_qt_annihilator_weights():
    # a(x) on x1⊗x2 → t^0 q^1 <x,x1> x2 + t^1 q^0 <x,x2> x1
    v = FockVector.basis(SPEC2.space, (0, 1))
    x = (F(2), F(3))
    got = qt_apply(qt_annihilate(x), v)
    expected = (
        Poly.monomial(2, eq=1) * FockVector.basis(SPEC2.space, (1,))
        + Poly.monomial(3, et=1) * FockVector.basis(SPEC2.space, (0,))
    )
    assert got == expected


def test_qt_t1_reproduces_alpha0_operators():
    rng = random.Random(7)
    space = SPEC2.space
    prob = random_problem(rng, 1, space)
    x, t = prob.xs[0], prob.ts[0]
    for word in basis_words(2, 3):
        v = FockVector.basis(space, word)
        qt_ann = qt_apply(qt_annihilate(x), v)
        b_ann = apply_operator(annihilate(x), v)
        for w in set(qt_ann.coeffs) | set(b_ann.coeffs):
            assert qt_ann.coeff(w).subs(t=1) == b_ann.coeff(w).subs(alpha=0)
        qt_g = qt_apply(qt_gauge(t), v)
        b_g = apply_operator(gauge(t), v)
        for w in set(qt_g.coeffs) | set(b_g.coeffs):
            assert qt_g.coeff(w).subs(t=1) == b_g.coeff(w).subs(alpha=0)


def test_qt_gauge_adjointness():
    t = ((F(1), F(2)), (F(2), F(-1)))
    for n in (1, 2, 3):
        for u_word in basis_words(2, n):
            for v_word in basis_words(2, n):
                u = FockVector.basis(SPEC2.space, u_word)
                v = FockVector.basis(SPEC2.space, v_word)
                assert qt_inner(qt_apply(qt_gauge(t), u), v) == qt_inner(
                    u, qt_apply(qt_gauge(t), v)
                )


def test_qt_creation_annihilation_adjointness():
    x = (F(1, 2), F(3))
    for n in (0, 1, 2):
        for u_word in basis_words(2, n):
            for v_word in basis_words(2, n + 1):
                u = FockVector.basis(SPEC2.space, u_word)
                v = FockVector.basis(SPEC2.space, v_word)
                assert qt_inner(qt_apply(qt_create(x), u), v) == qt_inner(
                    u, qt_apply(qt_annihilate(x), v)
                )


def test_qt_wick_pair():
    got = qt_wick([(F(2),), (F(3),)], [ID1, ID1], SPEC1)
    assert got == Poly.const(6)


def test_qt_wick_y5_fixture():
    # q = 0, T = Id, unit x: the fifth moment is t^2 + 2t + 3
    moment = qt_wick([UNIT] * 5, [ID1] * 5, SPEC1)
    assert moment.subs(q=0) == T**2 + 2 * T + 3
    operator_side = qt_y_moment([UNIT] * 5, [ID1] * 5, SPEC1)
    assert operator_side.subs(q=0) == T**2 + 2 * T + 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_qt_wick_equals_operator_side(n):
    rng = random.Random(300 + n)
    prob = random_problem(rng, n, SPEC2.space, zero_lams=True)
    lhs = qt_y_moment(prob.xs, prob.ts, SPEC2)
    rhs = qt_wick(prob.xs, prob.ts, SPEC2)
    assert lhs == rhs


@pytest.mark.parametrize("n", [2, 3, 4])
def test_qt_t1_matches_type_b_alpha0_moments(n):
    rng = random.Random(400 + n)
    prob = random_problem(rng, n, SPEC2.space, zero_lams=True)
    qt_value = qt_wick(prob.xs, prob.ts, SPEC2).subs(t=1)
    b_value = wick_moment(prob).subs(alpha=0)
    assert qt_value == b_value


def test_qt_q0_noncrossing_only():
    rng = random.Random(31)
    prob = random_problem(rng, 4, SPEC2.space, zero_lams=True)
    from bfock.partitions import set_partitions
    from bfock.qt import _plain_chain, _rc_rarc
    from bfock.scalars import ZERO, Poly

    expected = ZERO
    for blocks in set_partitions(4):
        if any(len(block) < 2 for block in blocks):
            continue
        rc, rarc = _rc_rarc(blocks)
        if rc:
            continue
        value = Fraction(1)
        for block in blocks:
            value *= _plain_chain(block, list(prob.xs), list(prob.ts))
        if value:
            expected = expected + Poly.monomial(value, et=rarc)
    assert qt_wick(prob.xs, prob.ts, SPEC2).subs(q=0) == expected


def test_qt_requires_trivial_involution():
    with pytest.raises(ValueError):
        QtSpec(SpaceSpec.diagonal("+-", truncation=2))
