"""Shared test utilities: parsing shortcuts and independent oracles.

The oracles here (determinant evaluation of forms on vector fields,
Fraction-only row reduction, permutation signs by inversion counting) are
deliberately written from scratch so they do not share code paths with the
package internals they cross-check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from lcscalc.cecomplex import Algebra
from lcscalc.exterior import Basis, Form, VectorField, frame_field
from lcscalc.specfile import parse_form_expr


def F(alg, text: str) -> Form:
    return parse_form_expr(text, alg.basis, alg.mode)


def V(alg, *coeffs) -> VectorField:
    return VectorField(alg.basis, tuple(Fraction(c) for c in coeffs))


# ---------------------------------------------------------------------------
# determinant / form evaluation oracle
# ---------------------------------------------------------------------------


def perm_sign(seq) -> int:
    inversions = sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def det(matrix) -> Fraction:
    n = len(matrix)
    total = Fraction(0)
    for perm in permutations(range(n)):
        term = Fraction(perm_sign(perm))
        for i, j in enumerate(perm):
            term *= matrix[i][j]
        total += term
    return total


def eval_form(theta: Form, vectors) -> Fraction:
    """Evaluate an l-form on l vector fields by determinant expansion."""
    total = Fraction(0)
    for idx, c in theta.terms.items():
        rows = [[v.coeffs[i] for i in idx] for v in vectors]
        total += c * det(rows)
    return total


def interior_oracle(v: VectorField, theta: Form) -> Form:
    """Contraction computed by pairing against all frame-field tuples."""
    basis = theta.basis
    if theta.degree == 0:
        return basis.zero(0)
    out = {}
    from itertools import combinations

    for rest in combinations(range(basis.dim), theta.degree - 1):
        vectors = [v] + [frame_field(basis, j) for j in rest]
        value = eval_form(theta, vectors)
        if value:
            out[rest] = value
    return Form(basis, theta.degree - 1, out)


# ---------------------------------------------------------------------------
# Fraction-only row reduction (rank oracle)
# ---------------------------------------------------------------------------


def rref_rank(rows) -> int:
    if not rows:
        return 0
    work = [[Fraction(x) for x in row] for row in rows]
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def fraction_nullspace(rows, ncols):
    if not rows:
        return [
            [Fraction(1) if i == j else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    work = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row_index, pc in enumerate(pivots):
            if work[row_index][free]:
                vec[pc] = -work[row_index][free]
        out.append(vec)
    return out


def invert_matrix(rows):
    n = len(rows)
    work = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if work[i][c]), None)
        if pivot is None:
            return None
        work[r], work[pivot] = work[pivot], work[r]
        pv = work[r][c]
        work[r] = [x / pv for x in work[r]]
        for i in range(n):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    return [row[n:] for row in work]


# ---------------------------------------------------------------------------
# randomized structure data with known-good seeds
# ---------------------------------------------------------------------------


def _substitute_two_form(form: Form, one_forms) -> Form:
    basis = one_forms[0].basis
    out = basis.zero(2)
    for (a, b), c in form.terms.items():
        out = out + c * one_forms[a].wedge(one_forms[b])
    return out


def change_of_basis(alg: Algebra, matrix) -> Algebra:
    """Rewrite the structure data in the frame f^i = sum_j M[i][j] e^j."""
    inverse = invert_matrix(matrix)
    if inverse is None:
        raise ValueError("matrix is singular")
    basis = alg.basis
    sub = [
        Form(basis, 1, {(b,): inverse[a][b] for b in range(basis.dim)})
        for a in range(basis.dim)
    ]
    dgen = []
    for i in range(basis.dim):
        total = basis.zero(2)
        for j in range(basis.dim):
            if matrix[i][j]:
                total = total + matrix[i][j] * _substitute_two_form(alg.dgen[j], sub)
        dgen.append(total)
    return Algebra(basis, dgen, mode=alg.mode)


def random_invertible(rng: random.Random, n: int):
    while True:
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if invert_matrix(m) is not None:
            return m


def random_good_algebra(rng: random.Random, n: int) -> Algebra:
    names = tuple(f"e{i + 1}" for i in range(n))
    basis = Basis(names)
    kind = rng.choice(["abelian", "almost_abelian", "nilpotent", "scaled"])
    dgen = [basis.zero(2) for _ in range(n)]
    if kind == "almost_abelian" and n >= 2:
        for i in range(n - 1):
            c = Fraction(rng.randint(-3, 3))
            if c:
                dgen[i] = Form(basis, 2, {(i, n - 1): c})
    elif kind == "nilpotent" and n >= 3:
        c = Fraction(rng.randint(1, 3))
        dgen[n - 1] = Form(basis, 2, {(0, 1): c})
        if n >= 5:
            dgen[n - 2] = Form(basis, 2, {(1, 2): Fraction(rng.randint(-2, 2))})
    elif kind == "scaled" and n >= 3:
        c = Fraction(rng.randint(1, 2), rng.randint(1, 3))
        dgen[0] = Form(basis, 2, {(0, n - 1): -c})
        dgen[1] = Form(basis, 2, {(1, n - 1): c})
    alg = Algebra(basis, dgen)
    if rng.random() < 0.5:
        alg = change_of_basis(alg, random_invertible(rng, n))
    return alg


def perturb_algebra(rng: random.Random, alg: Algebra) -> Algebra:
    """Chain two bumps so the result usually (not always) violates d*d = 0.

    Needs at least three generators; with two there are no 3-forms and any
    structure data trivially squares to zero.
    """
    basis = alg.basis
    n = basis.dim
    if n < 3:
        raise ValueError("perturbation needs at least three generators")
    i = rng.randrange(n)
    others = [x for x in range(n) if x != i]
    a = rng.choice(others)
    b = rng.choice([x for x in others if x != a])
    dgen = list(alg.dgen)
    dgen[i] = dgen[i] + Form(
        basis, 2, {(min(a, b), max(a, b)): Fraction(rng.randint(1, 3))}
    )
    x = rng.choice([t for t in range(n) if t not in (a, b)])
    dgen[a] = dgen[a] + Form(
        basis, 2, {(min(x, a), max(x, a)): Fraction(rng.randint(1, 3))}
    )
    return Algebra(basis, dgen, mode=alg.mode)
