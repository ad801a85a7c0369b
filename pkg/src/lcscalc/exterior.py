"""Graded exterior algebra over an ordered basis of degree-1 generators.

Forms are stored as maps from strictly ascending index tuples to nonzero
coefficients, so equality is a dictionary comparison.  Sign bookkeeping
happens once, at construction, by sorting index tuples and counting
transpositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .errors import BasisMismatch, DegreeMismatch
from .scalar import Scalar, needs_parens, scalar_str

MAX_GENERATORS = 16


@dataclass(frozen=True)
class Basis:
    """Ordered generator names; the orientation is their ascending wedge."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not 1 <= len(names) <= MAX_GENERATORS:
            raise ValueError(f"need 1..{MAX_GENERATORS} generators, got {len(names)}")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"invalid generator name {n!r}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def monomials(self, degree: int) -> Iterator[tuple[int, ...]]:
        """All ascending index tuples of the given degree, in lex order."""
        return combinations(range(self.dim), degree)

    def monomial_form(self, indices: tuple[int, ...], coeff: Scalar = Fraction(1)) -> "Form":
        return Form(self, len(indices), {tuple(indices): coeff})

    def gen(self, i: int) -> "Form":
        return self.monomial_form((i,))

    def gen_by_name(self, name: str) -> "Form":
        return self.gen(self.index(name))

    def zero(self, degree: int = 0) -> "Form":
        return Form(self, degree, {})

    def one(self, coeff: Scalar = Fraction(1)) -> "Form":
        return Form(self, 0, {(): coeff})

    def volume(self) -> "Form":
        return self.monomial_form(tuple(range(self.dim)))


def _sort_sign(indices: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """Ascending reordering and its permutation sign; repeated index gives 0."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return tuple(idx), 0
    return tuple(idx), sign


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two ascending tuples counting crossings; None on repeats."""
    out = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None, 0
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


def _coerce_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class Form:
    """Homogeneous exterior form; the zero form matches any degree."""

    __slots__ = ("basis", "degree", "terms")

    def __init__(self, basis: Basis, degree: int, terms: dict):
        if not 0 <= degree <= basis.dim:
            raise ValueError(f"degree {degree} out of range for dim {basis.dim}")
        clean: dict = {}
        for idx, c in terms.items():
            c = _coerce_coeff(c)
            if not c:
                continue
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index tuple {idx} has wrong length for degree {degree}")
            sidx, sign = _sort_sign(idx)
            if sign == 0:
                continue
            c = c if sign > 0 else -c
            prev = clean.get(sidx)
            s = c if prev is None else prev + c
            if s:
                clean[sidx] = s
            elif sidx in clean:
                del clean[sidx]
        self.basis = basis
        self.degree = degree
        self.terms = clean

    # predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices: tuple[int, ...]):
        """Stored coefficient of an ascending index tuple (0 if absent)."""
        return self.terms.get(tuple(indices), 0)

    def _check_basis(self, other: "Form"):
        if self.basis != other.basis:
            raise BasisMismatch(
                f"forms over different bases: {self.basis.names} vs {other.basis.names}"
            )

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check_basis(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add degree {self.degree} and degree {other.degree}"
            )
        out = dict(self.terms)
        for idx, c in other.terms.items():
            s = out.get(idx)
            s = c if s is None else s + c
            if s:
                out[idx] = s
            elif idx in out:
                del out[idx]
        return Form(self.basis, self.degree, out)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Form(self.basis, self.degree, {i: -c for i, c in self.terms.items()})

    def __rmul__(self, c):
        c = _coerce_coeff(c)
        if not c:
            return Form(self.basis, self.degree, {})
        return Form(self.basis, self.degree, {i: c * v for i, v in self.terms.items()})

    def __mul__(self, c):
        return self.__rmul__(c)

    def wedge(self, other: "Form") -> "Form":
        self._check_basis(other)
        deg = self.degree + other.degree
        if deg > self.basis.dim:
            return Form(self.basis, self.basis.dim, {})
        out: dict = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                idx, sign = _merge_sign(ia, ib)
                if idx is None:
                    continue
                c = ca * cb
                if sign < 0:
                    c = -c
                s = out.get(idx)
                s = c if s is None else s + c
                if s:
                    out[idx] = s
                elif idx in out:
                    del out[idx]
        return Form(self.basis, deg, out)

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.basis != other.basis:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self.is_zero():
            return hash((self.basis.names, "zero"))
        return hash((self.basis.names, self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Form({form_str(self)!r})"

    def __str__(self):
        return form_str(self)


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


@dataclass(frozen=True)
class VectorField:
    """Invariant vector field: coefficients over the frame dual to the basis."""

    basis: Basis
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(_coerce_coeff(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.basis.dim:
            raise ValueError("coefficient vector length must equal the basis size")

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.basis != other.basis:
            raise BasisMismatch("vector fields over different bases")
        return VectorField(
            self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "VectorField":
        return VectorField(self.basis, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def __rmul__(self, c) -> "VectorField":
        c = _coerce_coeff(c)
        return VectorField(self.basis, tuple(c * v for v in self.coeffs))

    def __str__(self):
        terms = [
            f"{scalar_str(c)} X({name})"
            for c, name in zip(self.coeffs, self.basis.names)
            if c
        ]
        return " + ".join(terms) if terms else "0"


def frame_field(basis: Basis, i: int) -> VectorField:
    coeffs = [Fraction(0)] * basis.dim
    coeffs[i] = Fraction(1)
    return VectorField(basis, tuple(coeffs))


def interior(v: VectorField, a: Form) -> Form:
    """Interior product: an antiderivation dropping the degree by one.

    On a monomial e_{i1}^...^e_{il} the m-th slot contributes
    (-1)^(m-1) * v_{i_m} times the monomial with that index removed.
    """
    if v.basis != a.basis:
        raise BasisMismatch("vector field and form over different bases")
    if a.degree == 0:
        return Form(a.basis, 0, {})
    out: dict = {}
    for idx, c in a.terms.items():
        for m, i in enumerate(idx):
            vi = v.coeffs[i]
            if not vi:
                continue
            coeff = c * vi
            if m % 2:
                coeff = -coeff
            rest = idx[:m] + idx[m + 1 :]
            s = out.get(rest)
            s = coeff if s is None else s + coeff
            if s:
                out[rest] = s
            elif rest in out:
                del out[rest]
    return Form(a.basis, a.degree - 1, out)


def evaluate_one_form(theta: Form, v: VectorField) -> Scalar:
    """Pairing of a 1-form with a vector field in the dual frame."""
    if theta.basis != v.basis:
        raise BasisMismatch("form and vector field over different bases")
    if theta.degree != 1 and not theta.is_zero():
        raise DegreeMismatch("pairing needs a 1-form")
    total = Fraction(0)
    for (i,), c in theta.terms.items():
        total = total + c * v.coeffs[i]
    return total


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def form_str(a: Form) -> str:
    """Canonical text: `coeff gen^gen^...` terms in ascending tuple order."""
    if a.is_zero():
        return "0"
    parts = []
    for idx in sorted(a.terms):
        c = scalar_str(a.terms[idx])
        if needs_parens(c):
            c = f"({c})"
        mono = "^".join(a.basis.names[i] for i in idx)
        body = f"{c} {mono}" if mono else c
        if not parts:
            parts.append(body)
        elif body.startswith("-"):
            parts.append(f" - {body[1:]}")
        else:
            parts.append(f" + {body}")
    return "".join(parts)
