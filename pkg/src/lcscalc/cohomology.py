"""Twisted cohomology of the invariant complex.

Dimensions come from exact kernel/image ranks of the twisted differential;
the same numbers are recomputed as harmonic dimensions and both routes must
agree.  Exactness is certified constructively: either an explicit primitive
(reproducible: fixed monomial order, free variables zero) or nonzero
coordinates in the harmonic basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cecomplex import Algebra, d_omega
from .errors import CrossCheckError, NotClosed, ParamModeUnsupported
from .exterior import Form
from .hodge import HarmonicSpace, harmonic_space, inner, twisted_matrix
from .linalg import rank, solve
from .scalar import Scalar


def betti(alg: Algebra, omega: Form, degree: int) -> int:
    """dim ker d_w - dim im d_w in the given degree."""
    alg.require_valid()
    if alg.mode.is_param:
        raise ParamModeUnsupported(
            "twisted cohomology dimensions need exact ranks; "
            "instantiate the parameters first"
        )
    alg.require_closed(omega)
    n_l = len(list(alg.basis.monomials(degree)))
    rank_out = rank(twisted_matrix(alg, omega, degree), n_l)
    dim_ker = n_l - rank_out
    if degree == 0:
        return dim_ker
    n_below = len(list(alg.basis.monomials(degree - 1)))
    rank_in = rank(twisted_matrix(alg, omega, degree - 1), n_below)
    return dim_ker - rank_in


@dataclass(frozen=True)
class ExactnessCertificate:
    """Either an explicit primitive or nonzero harmonic coordinates."""

    exact: bool
    primitive: Form | None = None
    coords: tuple[Scalar, ...] | None = None
    harmonic: HarmonicSpace | None = None


def _require_d_closed(alg: Algebra, omega: Form, theta: Form):
    image = d_omega(alg, omega, theta)
    if not image.is_zero():
        raise NotClosed(f"form is not d_w-closed: d_w = {image}")


def primitive(alg: Algebra, omega: Form, theta: Form) -> ExactnessCertificate:
    """Solve d_w(x) = theta exactly, or certify the class is nonzero."""
    alg.require_valid()
    alg.require_closed(omega)
    _require_d_closed(alg, omega, theta)
    degree = theta.degree
    zero = alg.zero_scalar()
    if theta.is_zero():
        return ExactnessCertificate(True, primitive=alg.basis.zero(max(degree - 1, 0)))
    if degree == 0:
        sol = None
    else:
        rows = twisted_matrix(alg, omega, degree - 1)
        rhs = [theta.coefficient(m) or zero for m in alg.basis.monomials(degree)]
        sol = solve(rows, rhs, len(list(alg.basis.monomials(degree - 1))), zero)
    if sol is not None:
        terms = {m: c for m, c in zip(alg.basis.monomials(degree - 1), sol) if c}
        prim = Form(alg.basis, degree - 1, terms)
        if d_omega(alg, omega, prim) != theta:
            raise CrossCheckError("primitive verification failed")
        return ExactnessCertificate(True, primitive=prim)
    if alg.mode.is_param:
        raise ParamModeUnsupported(
            "class coordinates need exact ranks; instantiate the parameters first"
        )
    space = harmonic_space(alg, omega, degree)
    coords = _projection_coords(alg, space, theta)
    if all(not c for c in coords):
        raise CrossCheckError(
            "form is neither exact nor detected by the harmonic projection; "
            "the decomposition requires unimodular structure data"
        )
    return ExactnessCertificate(False, coords=tuple(coords), harmonic=space)


def _projection_coords(alg: Algebra, space: HarmonicSpace, theta: Form) -> list[Scalar]:
    if not space.basis:
        return []
    gram = [[inner(alg, hi, hj) for hj in space.basis] for hi in space.basis]
    rhs = [inner(alg, theta, hi) for hi in space.basis]
    coords = solve(gram, rhs, len(space.basis), alg.zero_scalar())
    if coords is None:
        raise CrossCheckError("harmonic Gram matrix is singular")
    return coords


def class_coords(alg: Algebra, omega: Form, theta: Form) -> tuple[Scalar, ...]:
    """Coordinates of the harmonic projection of a d_w-closed form.

    The residue theta minus its projection is certified d_w-exact.
    """
    alg.require_valid()
    if alg.mode.is_param:
        raise ParamModeUnsupported(
            "class coordinates need exact ranks; instantiate the parameters first"
        )
    alg.require_closed(omega)
    _require_d_closed(alg, omega, theta)
    space = harmonic_space(alg, omega, theta.degree)
    coords = _projection_coords(alg, space, theta)
    residue = theta
    for c, h in zip(coords, space.basis):
        residue = residue - c * h
    if not residue.is_zero():
        cert = primitive(alg, omega, residue)
        if not cert.exact:
            raise CrossCheckError("projection residue is not exact")
    return tuple(coords)


@dataclass(frozen=True)
class CohomologyReport:
    """Twisted dimensions and harmonic bases for every degree."""

    omega: Form
    dims: tuple[int, ...]
    harmonic_bases: tuple[HarmonicSpace, ...]


def cohomology_report(alg: Algebra, omega: Form) -> CohomologyReport:
    """Dimensions by rank counting, cross-checked against harmonic bases."""
    alg.require_valid()
    dims = []
    spaces = []
    for degree in range(alg.dim + 1):
        b = betti(alg, omega, degree)
        space = harmonic_space(alg, omega, degree)
        if b != space.dimension:
            raise CrossCheckError(
                f"rank and harmonic dimensions disagree in degree {degree} "
                f"({b} vs {space.dimension}); the harmonic description "
                "requires unimodular structure data"
            )
        dims.append(b)
        spaces.append(space)
    return CohomologyReport(omega, tuple(dims), tuple(spaces))
