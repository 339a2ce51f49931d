"""Exact scalar ring: polynomials in the deformation parameters over the rationals.

Every scalar produced by this package is a ``Poly``: a sparse trivariate
polynomial in the variables ``a`` (the sign-flip weight), ``q`` and ``t``
with ``fractions.Fraction`` coefficients.  Plain rationals embed as constant
polynomials, so there is exactly one equality notion everywhere and all
identity checks are bit-exact.

Representation:

    Poly.terms : dict mapping (e_a, e_q, e_t) -> Fraction

The zero polynomial is the empty dict; zero coefficients are never stored.
The canonical textual form sorts monomials in descending graded-lexicographic
order (``a`` before ``q`` before ``t``), e.g. ``t^2 + 2*t + 3``.

A small amount of dense linear algebra over ``Poly`` (and over bare
``Fraction`` entries) lives here as well, together with a float view used
only for spectral checks; floats never participate in equality assertions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

import numpy as np

Exponent = tuple[int, int, int]
RationalLike = Union[Fraction, int]
PolyLike = Union["Poly", Fraction, int]

_VARS = ("a", "q", "t")


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not a rational value: {value!r}")


def _sort_key(exp: Exponent) -> tuple[int, int, int, int]:
    # ascending sort with this key == descending graded-lex term order
    return (-(exp[0] + exp[1] + exp[2]), -exp[0], -exp[1], -exp[2])


class Poly:
    """Immutable sparse polynomial in (a, q, t) over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, RationalLike] | None = None):
        canonical: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = _as_fraction(coeff)
                if c != 0:
                    canonical[exp] = c
        self.terms = canonical

    @classmethod
    def const(cls, value: RationalLike) -> Poly:
        return cls({(0, 0, 0): _as_fraction(value)})

    @classmethod
    def monomial(cls, coeff: RationalLike, ea: int = 0, eq: int = 0, et: int = 0) -> Poly:
        if min(ea, eq, et) < 0:
            raise ValueError("negative exponents are not representable")
        return cls({(ea, eq, et): _as_fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, ea: int = 0, eq: int = 0, et: int = 0) -> Fraction:
        return self.terms.get((ea, eq, et), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(exp) for exp in self.terms)

    def as_fraction(self) -> Fraction:
        """The value of a constant polynomial; raises if non-constant."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {(0, 0, 0)}:
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms[(0, 0, 0)]

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(value: PolyLike) -> Poly:
        if isinstance(value, Poly):
            return value
        return Poly.const(value)

    def __add__(self, other: PolyLike) -> Poly:
        if not isinstance(other, (Poly, Fraction, int)):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coeff
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other: PolyLike) -> Poly:
        if not isinstance(other, (Poly, Fraction, int)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> Poly:
        if not isinstance(other, (Poly, Fraction, int)):
            return NotImplemented
        return self._coerce(other) + (-self)

    def __neg__(self) -> Poly:
        return Poly({exp: -c for exp, c in self.terms.items()})

    def __mul__(self, other: PolyLike) -> Poly:
        if not isinstance(other, (Poly, Fraction, int)):
            return NotImplemented
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                out[exp] = out.get(exp, Fraction(0)) + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, alpha: RationalLike, q: RationalLike, t: RationalLike = 0) -> Fraction:
        """Exact evaluation; a ring homomorphism Poly -> Fraction."""
        av, qv, tv = _as_fraction(alpha), _as_fraction(q), _as_fraction(t)
        total = Fraction(0)
        for (ea, eq, et), coeff in self.terms.items():
            total += coeff * av**ea * qv**eq * tv**et
        return total

    def eval_float(self, alpha: float, q: float, t: float = 0.0) -> float:
        total = 0.0
        for (ea, eq, et), coeff in self.terms.items():
            total += float(coeff) * alpha**ea * q**eq * t**et
        return total

    def subs(
        self,
        alpha: PolyLike | None = None,
        q: PolyLike | None = None,
        t: PolyLike | None = None,
    ) -> Poly:
        """Substitute polynomials (or rationals) for chosen variables."""
        values = (alpha, q, t)
        out = ZERO
        for exp, coeff in self.terms.items():
            term = Poly.monomial(
                coeff,
                *(e if values[i] is None else 0 for i, e in enumerate(exp)),
            )
            for i, value in enumerate(values):
                if value is not None and exp[i]:
                    term = term * self._coerce(value) ** exp[i]
            out = out + term
        return out

    # -- canonical form ------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: _sort_key(item[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, coeff in self.sorted_terms():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(_VARS, exp)
                if e
            ]
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


ZERO = Poly()
ONE = Poly.const(1)
ALPHA = Poly.monomial(1, ea=1)
Q = Poly.monomial(1, eq=1)
T = Poly.monomial(1, et=1)


def qint(n: int) -> Poly:
    """[n]_q = 1 + q + ... + q^(n-1); qint(0) = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Poly({(0, i, 0): Fraction(1) for i in range(n)})


def qtint(n: int) -> Poly:
    """[n]_{q,t} = sum_{i=1..n} q^(i-1) t^(n-i), homogeneous of degree n-1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Poly({(0, i - 1, n - i): Fraction(1) for i in range(1, n + 1)})


# -- scalar mode (CLI-facing parameter handling) -----------------------------


@dataclass(frozen=True)
class ScalarMode:
    """How CLI commands interpret the deformation parameters.

    kind 'symbolic' keeps everything polynomial; 'rational' substitutes the
    exact triple; 'float' is for spectral checks only.
    """

    kind: str  # symbolic | rational | float
    alpha: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.kind not in ("symbolic", "rational", "float"):
            raise ValueError(f"unknown scalar mode {self.kind!r}")

    def require_type_b_range(self) -> None:
        if self.kind != "symbolic" and not (abs(self.alpha) < 1 and abs(self.q) < 1):
            raise ValueError("type-B numeric modes require |alpha| < 1 and |q| < 1")

    def require_qt_range(self) -> None:
        if self.kind != "symbolic" and not (abs(self.q) < self.t < 1):
            raise ValueError("(q,t) numeric modes require |q| < t < 1")

    def render(self, value: Poly) -> str:
        if self.kind == "symbolic":
            return str(value)
        if self.kind == "rational":
            return str(value.evaluate(self.alpha, self.q, self.t))
        return repr(value.eval_float(float(self.alpha), float(self.q), float(self.t)))


# -- dense matrices over Poly -------------------------------------------------

Matrix = list[list[Poly]]


def identity_matrix(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c: PolyLike, a: Matrix) -> Matrix:
    return [[Poly._coerce(c) * x for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = zero_matrix(rows, cols)
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik.is_zero:
                continue
            for j in range(cols):
                if not b[k][j].is_zero:
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


def mat_kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca, rb, cb = len(a), len(a[0]), len(b), len(b[0])
    out = zero_matrix(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            if a[i][j].is_zero:
                continue
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l]
    return out


def mat_transpose(a: Matrix) -> Matrix:
    return [list(row) for row in zip(*a)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def mat_to_float(a: Matrix, alpha: float, q: float, t: float = 0.0) -> np.ndarray:
    return np.array(
        [[x.eval_float(alpha, q, t) for x in row] for row in a], dtype=np.float64
    )


# -- rational vectors and matrices (coordinates of H and operators on it) ----

FracVector = tuple[Fraction, ...]
FracMatrix = tuple[FracVector, ...]


def frac_vector(entries: Sequence[RationalLike]) -> FracVector:
    return tuple(_as_fraction(x) for x in entries)


def frac_matrix(rows: Sequence[Sequence[RationalLike]]) -> FracMatrix:
    mat = tuple(frac_vector(row) for row in rows)
    if any(len(row) != len(mat) for row in mat):
        raise ValueError("matrix must be square")
    return mat


def frac_identity(d: int) -> FracMatrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(d)) for i in range(d)
    )


def frac_dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def frac_mat_vec(m: FracMatrix, v: Sequence[Fraction]) -> FracVector:
    return tuple(frac_dot(row, v) for row in m)


def frac_mat_mul(a: FracMatrix, b: FracMatrix) -> FracMatrix:
    bt = tuple(zip(*b))
    return tuple(tuple(frac_dot(row, col) for col in bt) for row in a)


def is_symmetric(m: FracMatrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))
