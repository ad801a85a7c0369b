"""Hodge duality for the invariant complex: star, codifferential, twists.

Sign conventions, with N the number of generators and l the input degree:

* star on a monomial e_I is sign(I, I^c) e_{I^c}, the permutation sign of
  the concatenated tuple relative to ascending order, times a metric weight;
* codifferential: delta = (-1)^(N*l + N + 1) * d * on degree l;
* twist contraction: U_w(theta) = (-1)^(N*l + N) * (w ^ * theta);
* delta_w = delta + U_w.

The diagonal metric lists the coefficients g_i of g = sum g_i (e^i)^2.  For
the star to stay exact each g_i must be the square of a rational; the
identity metric always qualifies.  The inner product is computed directly
from the metric weights and never needs square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .cecomplex import Algebra, d, d_omega
from .errors import (
    BasisMismatch,
    DegreeMismatch,
    InvalidMetric,
    ParamModeUnsupported,
)
from .exterior import Form
from .linalg import nullspace, operator_matrix, rank
from .scalar import ParamScalar, Scalar


def _perm_sign(seq: tuple[int, ...]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _sqrt_fraction(q: Fraction) -> Fraction | None:
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _metric_weights(alg: Algebra) -> list[Scalar]:
    """Rational square roots of the metric entries, in the algebra's mode."""
    weights = []
    for name, g in zip(alg.basis.names, alg.metric):
        q = g.as_fraction() if isinstance(g, ParamScalar) else g
        r = _sqrt_fraction(q) if q is not None else None
        if r is None:
            raise InvalidMetric(
                f"metric entry for {name} must be the square of a rational "
                "for exact Hodge duality"
            )
        weights.append(alg.mode.from_fraction(r))
    return weights


def star(alg: Algebra, a: Form) -> Form:
    """Hodge star for the diagonal metric and the ascending orientation."""
    if a.basis != alg.basis:
        raise BasisMismatch("form over a different basis")
    n = alg.dim
    weights = _metric_weights(alg)
    out: dict = {}
    for idx, c in a.terms.items():
        comp = tuple(i for i in range(n) if i not in idx)
        sign = _perm_sign(idx + comp)
        coeff = c
        for i in comp:
            coeff = coeff * weights[i]
        for i in idx:
            coeff = coeff / weights[i]
        out[comp] = coeff if sign > 0 else -coeff
    return Form(alg.basis, n - a.degree, out)


def codiff(alg: Algebra, a: Form) -> Form:
    """Codifferential; degree 0 maps to 0 by definition."""
    if a.basis != alg.basis:
        raise BasisMismatch("form over a different basis")
    if a.degree == 0 or a.is_zero():
        return alg.basis.zero(0)
    n, l = alg.dim, a.degree
    result = star(alg, d(alg, star(alg, a)))
    if (n * l + n + 1) % 2:
        result = -result
    return result


def u_omega(alg: Algebra, omega: Form, a: Form) -> Form:
    """Metric adjoint of wedging with the 1-form omega."""
    if a.basis != alg.basis or omega.basis != alg.basis:
        raise BasisMismatch("form over a different basis")
    if a.degree == 0 or a.is_zero() or omega.is_zero():
        return alg.basis.zero(max(a.degree - 1, 0))
    n, l = alg.dim, a.degree
    result = star(alg, omega.wedge(star(alg, a)))
    if (n * l + n) % 2:
        result = -result
    return result


def delta_omega(alg: Algebra, omega: Form, a: Form) -> Form:
    return codiff(alg, a) + u_omega(alg, omega, a)


def inner(alg: Algebra, rho: Form, nu: Form) -> Scalar:
    """Inner product with unit total volume; monomials are orthogonal."""
    if rho.basis != alg.basis or nu.basis != alg.basis:
        raise BasisMismatch("form over a different basis")
    if rho.is_zero() or nu.is_zero():
        return alg.zero_scalar()
    if rho.degree != nu.degree:
        raise DegreeMismatch(
            f"inner product needs equal degrees, got {rho.degree} and {nu.degree}"
        )
    total = alg.zero_scalar()
    for idx, c in rho.terms.items():
        other = nu.terms.get(idx)
        if other is None:
            continue
        term = c * other
        for i in idx:
            term = term / alg.metric[i]
        total = total + term
    return total


@dataclass(frozen=True)
class HarmonicSpace:
    """Basis of the forms killed by both d_w and delta_w in one degree."""

    degree: int
    basis: tuple[Form, ...]
    omega: Form

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _require_rational(alg: Algebra, what: str):
    if alg.mode.is_param:
        raise ParamModeUnsupported(
            f"{what} needs exact ranks; instantiate the parameters first"
        )


def _monomial_forms(alg: Algebra, degree: int) -> list[Form]:
    return [alg.basis.monomial_form(m) for m in alg.basis.monomials(degree)]


def twisted_matrix(alg: Algebra, omega: Form, degree: int) -> list[list]:
    """Matrix of d_w from degree l to l+1 in the monomial bases."""
    if degree >= alg.dim:
        return []
    images = [d_omega(alg, omega, f) for f in _monomial_forms(alg, degree)]
    target = list(alg.basis.monomials(degree + 1))
    return operator_matrix(images, target, alg.zero_scalar())


def cotwisted_matrix(alg: Algebra, omega: Form, degree: int) -> list[list]:
    """Matrix of delta_w from degree l to l-1 in the monomial bases."""
    if degree <= 0:
        return []
    images = [delta_omega(alg, omega, f) for f in _monomial_forms(alg, degree)]
    target = list(alg.basis.monomials(degree - 1))
    return operator_matrix(images, target, alg.zero_scalar())


def harmonic_space(alg: Algebra, omega: Form, degree: int) -> HarmonicSpace:
    """Exact kernel intersection of d_w and delta_w in one degree."""
    alg.require_valid()
    _require_rational(alg, "harmonic space computation")
    alg.require_closed(omega)
    monos = list(alg.basis.monomials(degree))
    stacked = twisted_matrix(alg, omega, degree) + cotwisted_matrix(alg, omega, degree)
    vectors = nullspace(stacked, len(monos), alg.zero_scalar(), alg.one_scalar())
    basis_forms = []
    for vec in vectors:
        terms = {m: c for m, c in zip(monos, vec) if c}
        basis_forms.append(Form(alg.basis, degree, terms))
    return HarmonicSpace(degree, tuple(basis_forms), omega)


def decomposition_dims(alg: Algebra, omega: Form, degree: int) -> tuple[int, int, int]:
    """Dimensions of the harmonic, twisted-exact and twisted-coexact parts."""
    alg.require_valid()
    _require_rational(alg, "decomposition dimensions")
    alg.require_closed(omega)
    h = harmonic_space(alg, omega, degree).dimension
    from_below = twisted_matrix(alg, omega, degree - 1) if degree > 0 else []
    ncols_below = len(list(alg.basis.monomials(degree - 1))) if degree > 0 else 0
    im_d = rank(from_below, ncols_below) if ncols_below else 0
    from_above = cotwisted_matrix(alg, omega, degree + 1) if degree < alg.dim else []
    ncols_above = len(list(alg.basis.monomials(degree + 1))) if degree < alg.dim else 0
    im_delta = rank(from_above, ncols_above) if ncols_above else 0
    return (h, im_d, im_delta)


def adjointness_applicable(alg: Algebra) -> bool:
    """Integration by parts for (d_w, delta_w) holds on unimodular data."""
    from .cecomplex import is_unimodular

    return is_unimodular(alg)
