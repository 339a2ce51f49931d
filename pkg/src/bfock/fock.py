"""Truncated algebraic Fock space over a rational coefficient space.

The base space H is a d-dimensional rational vector space carrying a
symmetric involution J with J^2 = I (default: a diagonal ±1 signature).
A :class:`FockVector` stores a finite linear combination of basis words
(tuples over ``range(d)``, length at most the truncation) with ``Poly``
coefficients, so every operator identity can be asserted exactly.

Operators follow the right-creator convention: creation appends at the
right end of a word, the free right annihilator removes the rightmost slot,
and products apply their rightmost factor first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .coxeter import GroupElementRecord, enumerate_group
from .errors import ResourceLimitError, TruncationError
from .scalars import (
    ONE,
    Poly,
    PolyLike,
    FracMatrix,
    FracVector,
    Matrix,
    ZERO,
    frac_identity,
    frac_mat_mul,
    frac_mat_vec,
    frac_matrix,
    frac_vector,
    is_symmetric,
    mat_eq,
    mat_to_float,
    mat_transpose,
    zero_matrix,
)

MAX_MATRIX_DIM = 4096

Word = tuple[int, ...]


@dataclass(frozen=True)
class SpaceSpec:
    """Dimension, involution and truncation level of the coefficient space."""

    d: int
    involution: FracMatrix
    truncation: int

    def __post_init__(self) -> None:
        if self.d < 1 or self.truncation < 1:
            raise ValueError("dimension and truncation must be positive")
        j = self.involution
        if len(j) != self.d:
            raise ValueError("involution dimension mismatch")
        if not is_symmetric(j):
            raise ValueError("involution must be symmetric")
        if frac_mat_mul(j, j) != frac_identity(self.d):
            raise ValueError("involution must square to the identity")

    @classmethod
    def diagonal(cls, signature: str, truncation: int) -> SpaceSpec:
        """Signature string over '+'/'-', e.g. '+-' for diag(1, -1)."""
        signs = []
        for ch in signature:
            if ch not in "+-":
                raise ValueError(f"bad signature character {ch!r}")
            signs.append(Fraction(1 if ch == "+" else -1))
        d = len(signs)
        j = tuple(
            tuple(signs[i] if i == k else Fraction(0) for k in range(d))
            for i in range(d)
        )
        return cls(d=d, involution=j, truncation=truncation)

    def involve_basis(self, letter: int) -> FracVector:
        """J e_letter as a coordinate vector (column of J)."""
        return tuple(row[letter] for row in self.involution)

    def involve(self, vec: Sequence[Fraction]) -> FracVector:
        return frac_mat_vec(self.involution, vec)


class FockVector:
    """Sparse graded vector: basis words with Poly coefficients."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: SpaceSpec, coeffs: dict[Word, PolyLike] | None = None):
        self.space = space
        canonical: dict[Word, Poly] = {}
        if coeffs:
            for word, value in coeffs.items():
                poly = value if isinstance(value, Poly) else Poly.const(value)
                if poly.is_zero:
                    continue
                if len(word) > space.truncation:
                    raise TruncationError(
                        f"word of length {len(word)} exceeds truncation {space.truncation}"
                    )
                if any(not 0 <= letter < space.d for letter in word):
                    raise ValueError(f"letter out of range in word {word}")
                canonical[word] = poly
        self.coeffs = canonical

    @classmethod
    def vacuum(cls, space: SpaceSpec) -> FockVector:
        return cls(space, {(): ONE})

    @classmethod
    def basis(cls, space: SpaceSpec, word: Word) -> FockVector:
        return cls(space, {tuple(word): ONE})

    @classmethod
    def from_tensor(cls, space: SpaceSpec, factors: Sequence[Sequence[Fraction]]) -> FockVector:
        """Pure tensor of coordinate vectors (empty sequence gives the vacuum)."""
        coeffs: dict[Word, Poly] = {(): ONE}
        for factor in factors:
            nxt: dict[Word, Poly] = {}
            for word, coeff in coeffs.items():
                for letter, entry in enumerate(factor):
                    if entry:
                        nxt[word + (letter,)] = coeff * entry
            coeffs = nxt
        return cls(space, coeffs)

    def coeff(self, word: Word) -> Poly:
        return self.coeffs.get(tuple(word), ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def levels(self) -> set[int]:
        return {len(word) for word in self.coeffs}

    def __add__(self, other: FockVector) -> FockVector:
        self._check_space(other)
        out = dict(self.coeffs)
        for word, coeff in other.coeffs.items():
            out[word] = out.get(word, ZERO) + coeff
        return FockVector(self.space, out)

    def __sub__(self, other: FockVector) -> FockVector:
        return self + (-1) * other

    def __mul__(self, scalar: PolyLike) -> FockVector:
        return FockVector(
            self.space, {word: coeff * scalar for word, coeff in self.coeffs.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.space == other.space and self.coeffs == other.coeffs

    def _check_space(self, other: FockVector) -> None:
        if self.space != other.space:
            raise ValueError("FockVectors live on different spaces")

    def __repr__(self) -> str:
        if not self.coeffs:
            return "FockVector(0)"
        parts = [
            f"({coeff})|{''.join(str(letter + 1) for letter in word) or 'Ω'}⟩"
            for word, coeff in sorted(self.coeffs.items())
        ]
        return "FockVector(" + " + ".join(parts) + ")"


# -- generator and group actions ----------------------------------------------


def act_generator(i: int, v: FockVector) -> FockVector:
    """Tensor action of pi_i: slot swap for i >= 1, involution on slot 1 for i = 0.

    Words too short to contain the affected slots are left fixed.
    """
    if i < 0 or i >= v.space.truncation:
        raise ValueError(f"generator index {i} out of range")
    out: dict[Word, Poly] = {}

    def add(word: Word, coeff: Poly) -> None:
        out[word] = out.get(word, ZERO) + coeff

    for word, coeff in v.coeffs.items():
        n = len(word)
        if i == 0:
            if n == 0:
                add(word, coeff)
                continue
            for letter, entry in enumerate(v.space.involve_basis(word[0])):
                if entry:
                    add((letter,) + word[1:], coeff * entry)
        else:
            if n < i + 1:
                add(word, coeff)
                continue
            swapped = list(word)
            swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
            add(tuple(swapped), coeff)
    return FockVector(v.space, out)


def act_word(gens: Sequence[int], v: FockVector) -> FockVector:
    """Apply a generator word as an operator product (rightmost letter first)."""
    for g in reversed(gens):
        v = act_generator(g, v)
    return v


def act_sigma(record: GroupElementRecord, v: FockVector) -> FockVector:
    """Action of a group element through its canonical reduced word."""
    n = record.perm.n
    if any(level != n for level in v.levels()):
        raise ValueError(f"vector has words of length != {n}")
    return act_word(record.word, v)


def basis_words(d: int, n: int) -> list[Word]:
    return list(product(range(d), repeat=n))


def _guard_matrix_dim(d: int, n: int) -> None:
    if d**n > MAX_MATRIX_DIM:
        raise ResourceLimitError(f"matrix dimension d^n = {d**n} exceeds {MAX_MATRIX_DIM}")


def matrix_of_level_map(
    fn: Callable[[FockVector], FockVector], space: SpaceSpec, n_in: int, n_out: int
) -> Matrix:
    """Matrix (rows: level-n_out words, cols: level-n_in words) of a level map."""
    _guard_matrix_dim(space.d, max(n_in, n_out))
    cols = basis_words(space.d, n_in)
    rows = {word: k for k, word in enumerate(basis_words(space.d, n_out))}
    out = zero_matrix(len(rows), len(cols))
    for j, word in enumerate(cols):
        image = fn(FockVector.basis(space, word))
        for w, coeff in image.coeffs.items():
            out[rows[w]][j] = coeff
    return out


def symmetrizer(n: int, space: SpaceSpec) -> Matrix:
    """The level-n type-B symmetrizer sum_sigma a^l1 q^l2 sigma as a d^n matrix."""
    if n > space.truncation:
        raise ValueError(f"level {n} exceeds truncation {space.truncation}")
    if n == 0:
        return [[ONE]]
    _guard_matrix_dim(space.d, n)
    records = enumerate_group(n)
    cols = basis_words(space.d, n)
    index = {word: k for k, word in enumerate(cols)}
    out = zero_matrix(len(cols), len(cols))
    for record in records:
        weight = Poly.monomial(1, ea=record.l1, eq=record.l2)
        for j, word in enumerate(cols):
            image = act_word(record.word, FockVector.basis(space, word))
            for w, coeff in image.coeffs.items():
                out[index[w]][j] = out[index[w]][j] + weight * coeff
    return out


def r_operator(n: int, space: SpaceSpec) -> Matrix:
    """The recursion factor: identity plus q-weighted cycle words plus the
    sign-flip branch, assembled exactly as displayed.

    R = 1 + sum_{k=1..n-1} q^k pi_{n-1}···pi_{n-k}
        + a q^(n-1) pi_{n-1}···pi_1 pi_0 (1 + sum_{k=1..n-1} q^k pi_1···pi_k)
    """
    if not 1 <= n <= space.truncation:
        raise ValueError(f"level {n} out of range")

    def apply(v: FockVector) -> FockVector:
        result = v
        for k in range(1, n):
            result = result + Poly.monomial(1, eq=k) * act_word(
                list(range(n - 1, n - k - 1, -1)), v
            )
        branch = v
        for k in range(1, n):
            branch = branch + Poly.monomial(1, eq=k) * act_word(
                list(range(1, k + 1)), v
            )
        branch = act_word(list(range(n - 1, 0, -1)) + [0], branch)
        return result + Poly.monomial(1, ea=1, eq=n - 1) * branch

    return matrix_of_level_map(apply, space, n, n)


# -- operators -----------------------------------------------------------------


@dataclass(frozen=True)
class OpSpec:
    """An operator on the Fock space, by kind and parameters.

    Kinds: create, annihilate, gauge, b (= annihilate + create + gauge + λ·I),
    and the (q,t) variants qt-create, qt-annihilate, qt-gauge, qt-y.
    """

    kind: str
    x: FracVector | None = None
    t: FracMatrix | None = None
    lam: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.t is not None and not is_symmetric(self.t):
            raise ValueError("gauge coefficient operator must be symmetric")


def create(x: Sequence[Fraction]) -> OpSpec:
    return OpSpec("create", x=frac_vector(x))


def annihilate(x: Sequence[Fraction]) -> OpSpec:
    return OpSpec("annihilate", x=frac_vector(x))


def gauge(t: Sequence[Sequence[Fraction]]) -> OpSpec:
    return OpSpec("gauge", t=frac_matrix(t))


def type_b(
    x: Sequence[Fraction], t: Sequence[Sequence[Fraction]], lam: Fraction | int = 0
) -> OpSpec:
    return OpSpec("b", x=frac_vector(x), t=frac_matrix(t), lam=Fraction(lam))


def _apply_create(x: FracVector, v: FockVector) -> FockVector:
    out: dict[Word, Poly] = {}
    for word, coeff in v.coeffs.items():
        if len(word) == v.space.truncation:
            raise TruncationError("creation at the truncation level")
        for letter, entry in enumerate(x):
            if entry:
                key = word + (letter,)
                out[key] = out.get(key, ZERO) + coeff * entry
    return FockVector(v.space, out)


def _apply_annihilate(x: FracVector, v: FockVector) -> FockVector:
    jx = v.space.involve(x)
    out: dict[Word, Poly] = {}
    for word, coeff in v.coeffs.items():
        n = len(word)
        for k in range(1, n + 1):
            reduced = word[: k - 1] + word[k:]
            letter = word[k - 1]
            weight = Poly.monomial(x[letter], eq=n - k) + Poly.monomial(
                jx[letter], ea=1, eq=n + k - 2
            )
            if not weight.is_zero:
                out[reduced] = out.get(reduced, ZERO) + coeff * weight
    return FockVector(v.space, out)


def _apply_gauge(t: FracMatrix, v: FockVector) -> FockVector:
    tj = frac_mat_mul(t, v.space.involution)
    out: dict[Word, Poly] = {}
    for word, coeff in v.coeffs.items():
        n = len(word)
        for k in range(1, n + 1):
            reduced = word[: k - 1] + word[k:]
            letter = word[k - 1]
            for new_letter in range(v.space.d):
                weight = Poly.monomial(t[new_letter][letter], eq=n - k) + Poly.monomial(
                    tj[new_letter][letter], ea=1, eq=n + k - 2
                )
                if not weight.is_zero:
                    key = reduced + (new_letter,)
                    out[key] = out.get(key, ZERO) + coeff * weight
    return FockVector(v.space, out)


def apply_operator(op: OpSpec, v: FockVector) -> FockVector:
    if op.kind == "create":
        return _apply_create(op.x, v)
    if op.kind == "annihilate":
        return _apply_annihilate(op.x, v)
    if op.kind == "gauge":
        return _apply_gauge(op.t, v)
    if op.kind == "b":
        result = _apply_annihilate(op.x, v) + _apply_create(op.x, v) + _apply_gauge(op.t, v)
        if op.lam:
            result = result + op.lam * v
        return result
    if op.kind.startswith("qt-"):
        from . import qt  # deferred: qt builds on this module

        return qt.qt_apply(op, v)
    raise ValueError(f"unknown operator kind {op.kind!r}")


def free_annihilator_matrix(x: FracVector, n: int, space: SpaceSpec) -> Matrix:
    """Matrix of the free right annihilator (removes the last slot) at level n."""

    def apply(v: FockVector) -> FockVector:
        out: dict[Word, Poly] = {}
        for word, coeff in v.coeffs.items():
            entry = x[word[-1]]
            if entry:
                key = word[:-1]
                out[key] = out.get(key, ZERO) + coeff * entry
        return FockVector(space, out)

    return matrix_of_level_map(apply, space, n, n - 1)


# -- inner products and the vacuum state --------------------------------------


def _level_weights(n: int, flavor: str) -> list[tuple[GroupElementRecord, Poly]]:
    if flavor == "alpha-q":
        return [
            (record, Poly.monomial(1, ea=record.l1, eq=record.l2))
            for record in enumerate_group(n)
        ]
    if flavor == "qt":
        # t^C(n,2) P^(n)_{0, q/t}: the a-degree-0 part with l2 inversions split
        # as q^l2 t^(C(n,2) - l2); a genuine polynomial since l2 <= C(n,2).
        top = n * (n - 1) // 2
        return [
            (record, Poly.monomial(1, eq=record.l2, et=top - record.l2))
            for record in enumerate_group(n)
            if record.l1 == 0
        ]
    raise ValueError(f"unknown symmetrizer flavor {flavor!r}")


def apply_symmetrizer(v: FockVector, flavor: str) -> FockVector:
    """Level-wise application of the flavor's symmetrizer."""
    result = FockVector(v.space)
    by_level: dict[int, dict[Word, Poly]] = {}
    for word, coeff in v.coeffs.items():
        by_level.setdefault(len(word), {})[word] = coeff
    for n, coeffs in sorted(by_level.items()):
        level = FockVector(v.space, coeffs)
        if n == 0:
            result = result + level
            continue
        for record, weight in _level_weights(n, flavor):
            result = result + weight * act_sigma(record, level)
    return result


def inner(u: FockVector, v: FockVector, flavor: str = "alpha-q") -> Poly:
    """Graded bilinear form; 'zero-zero' is word-orthonormal, the deformed
    flavors apply their symmetrizer to the right argument."""
    u._check_space(v)
    if flavor != "zero-zero":
        v = apply_symmetrizer(v, flavor)
    total = ZERO
    for word, coeff in u.coeffs.items():
        other = v.coeffs.get(word)
        if other is not None:
            total = total + coeff * other
    return total


def vacuum_expectation(ops: Sequence[OpSpec], space: SpaceSpec) -> Poly:
    """Vacuum coefficient of ops[0]···ops[-1] Ω (rightmost factor applied first)."""
    if len(ops) > space.truncation:
        raise TruncationError("more operator factors than the truncation allows")
    v = FockVector.vacuum(space)
    for op in reversed(ops):
        v = apply_operator(op, v)
    return v.coeff(())


# -- float-mode spectral checks ------------------------------------------------


def gram_min_eigenvalue(space: SpaceSpec, n: int, alpha: float, q: float) -> float:
    """Smallest eigenvalue of the level-n Gram matrix at float parameters."""
    p = symmetrizer(n, space)
    if not mat_eq(p, mat_transpose(p)):  # exact symmetry, so eigvalsh is safe
        raise AssertionError("symmetrizer matrix is not symmetric")
    return float(np.linalg.eigvalsh(mat_to_float(p, alpha, q)).min())


def r_operator_norm(space: SpaceSpec, n: int, alpha: float, q: float) -> float:
    """Spectral norm of R at level n, w.r.t. the undeformed inner product."""
    return float(np.linalg.norm(mat_to_float(r_operator(n, space), alpha, q), ord=2))


def gauge_norm_deformed(
    space: SpaceSpec, t: FracMatrix, n: int, alpha: float, q: float
) -> float:
    """Operator norm of gauge(T) on level n w.r.t. the deformed inner product."""
    gram = mat_to_float(symmetrizer(n, space), alpha, q)
    mat = mat_to_float(matrix_of_level_map(
        lambda v: _apply_gauge(t, v), space, n, n
    ), alpha, q)
    eigvals, eigvecs = np.linalg.eigh(gram)
    if eigvals.min() <= 0:
        raise ValueError("Gram matrix is not positive definite at these parameters")
    root = eigvecs @ np.diag(np.sqrt(eigvals)) @ eigvecs.T
    inv_root = eigvecs @ np.diag(1.0 / np.sqrt(eigvals)) @ eigvecs.T
    return float(np.linalg.norm(root @ mat @ inv_root, ord=2))
