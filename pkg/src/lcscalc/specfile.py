"""Text format for algebras and expressions for forms.

File layout (UTF-8, '#' comments, blank lines ignored, \\r\\n tolerated)::

    params k lambda          # optional: declares parameter symbols
    generators alpha beta gamma eta
    d alpha = -1*k alpha^gamma
    d beta  = k beta^gamma
    d eta   = 1 alpha^beta   # omitted generators default to d = 0
    metric diag 1 1 1 1      # optional, defaults to the identity

A form expression is a signed sum of terms; each term is an optional
scalar prefix (same grammar as scalars, juxtaposition multiplies) followed
by an optional generator chain joined with '^'.  `serialize` output parses
back to the same value.
"""

from __future__ import annotations

from .cecomplex import Algebra
from .errors import DivisionByZero, ExprSyntaxError, InvalidMetric
from .exterior import Basis, Form, form_str
from .scalar import (
    ScalarMode,
    _Cursor,
    _parse_scalar_atom,
    scalar_str,
    tokenize,
)


def _parse_scalar_factor(cur: _Cursor, mode: ScalarMode):
    value = _parse_scalar_atom(cur, mode)
    while cur.peek().kind == "^":
        caret = cur.next()
        e = cur.peek()
        if e.kind != "int":
            raise ExprSyntaxError(
                "exponent must be a nonnegative integer", caret.line, caret.col
            )
        cur.next()
        value = value ** e.value
    return value


def _parse_form_term(cur: _Cursor, basis: Basis, mode: ScalarMode) -> Form:
    """One additive term: scalar factors then an optional generator chain.

    Juxtaposition multiplies scalar factors; '*' may also join the last
    factor to the generator chain.
    """
    coeff = mode.one()
    saw_factor = False
    while True:
        t = cur.peek()
        if t.kind == "ident" and t.value in basis.names:
            break
        if t.kind not in ("int", "ident", "("):
            break
        coeff = coeff * _parse_scalar_factor(cur, mode)
        saw_factor = True
        while cur.peek().kind in "*/":
            op = cur.next()
            nxt = cur.peek()
            if nxt.kind == "ident" and nxt.value in basis.names:
                if op.kind == "/":
                    raise ExprSyntaxError(
                        "cannot divide by a generator", nxt.line, nxt.col
                    )
                break
            rhs = _parse_scalar_factor(cur, mode)
            if op.kind == "/":
                if not rhs:
                    raise DivisionByZero("scalar division by zero")
                coeff = coeff / rhs
            else:
                coeff = coeff * rhs
    gens: list[int] = []
    while cur.peek().kind == "ident" and cur.peek().value in basis.names:
        gens.append(basis.index(cur.next().value))
        if cur.peek().kind != "^":
            break
        caret = cur.next()
        nxt = cur.peek()
        if not (nxt.kind == "ident" and nxt.value in basis.names):
            raise ExprSyntaxError(
                "'^' in a form term must join generator names", caret.line, caret.col
            )
    if not gens and not saw_factor:
        t = cur.peek()
        raise ExprSyntaxError(
            "expected a scalar or generator" if t.kind == "end"
            else f"unexpected {t.value!r}",
            t.line,
            t.col,
        )
    if not gens:
        return Form(basis, 0, {(): coeff})
    return Form(basis, len(gens), {tuple(gens): coeff})


def _parse_form(cur: _Cursor, basis: Basis, mode: ScalarMode) -> Form:
    sign = 1
    if cur.peek().kind in "+-":
        if cur.next().kind == "-":
            sign = -1
    total = _parse_form_term(cur, basis, mode)
    if sign < 0:
        total = -total
    while cur.peek().kind in "+-":
        op = cur.next().kind
        term = _parse_form_term(cur, basis, mode)
        total = total + term if op == "+" else total - term
    return total


def parse_form_expr(text: str, basis: Basis, mode: ScalarMode, line: int = 1) -> Form:
    """Parse a form expression against a basis and coefficient mode."""
    cur = _Cursor(tokenize(text, line))
    form = _parse_form(cur, basis, mode)
    t = cur.peek()
    if t.kind != "end":
        raise ExprSyntaxError(f"trailing input {t.value!r}", t.line, t.col)
    return form


# ---------------------------------------------------------------------------
# algebra files
# ---------------------------------------------------------------------------


def parse_algebra_text(text: str) -> Algebra:
    """Parse the line-oriented algebra format into a validated-shape Algebra.

    Structural soundness (d*d = 0) is not enforced here; `check` reports it.
    """
    params: tuple[str, ...] | None = None
    generators: tuple[str, ...] | None = None
    dlines: dict[str, tuple[str, int]] = {}
    metric_line: tuple[str, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "params":
            if generators is not None:
                raise ExprSyntaxError("params must precede generators", lineno, 1)
            if params is not None:
                raise ExprSyntaxError("duplicate params line", lineno, 1)
            names = tuple(rest.split())
            if not names:
                raise ExprSyntaxError("params line declares no symbols", lineno, 1)
            for name in names:
                if not name.isidentifier():
                    raise ExprSyntaxError(f"invalid parameter name {name!r}", lineno, 1)
            if len(set(names)) != len(names):
                raise ExprSyntaxError("parameter names must be distinct", lineno, 1)
            params = names
        elif head == "generators":
            if generators is not None:
                raise ExprSyntaxError("duplicate generators line", lineno, 1)
            names = tuple(rest.split())
            if not names:
                raise ExprSyntaxError("generators line declares no names", lineno, 1)
            if params and set(params) & set(names):
                clash = sorted(set(params) & set(names))
                raise ExprSyntaxError(
                    f"names used as both parameter and generator: {clash}", lineno, 1
                )
            generators = names
        elif head == "d":
            if generators is None:
                raise ExprSyntaxError("d line before generators", lineno, 1)
            gen, eq, expr = rest.partition("=")
            gen = gen.strip()
            if not eq:
                raise ExprSyntaxError("d line needs '='", lineno, 1)
            if gen not in generators:
                raise ExprSyntaxError(f"unknown generator {gen!r}", lineno, 1)
            if gen in dlines:
                raise ExprSyntaxError(f"duplicate d line for {gen!r}", lineno, 1)
            dlines[gen] = (expr.strip(), lineno)
        elif head == "metric":
            if generators is None:
                raise ExprSyntaxError("metric line before generators", lineno, 1)
            if metric_line is not None:
                raise ExprSyntaxError("duplicate metric line", lineno, 1)
            kind, _, entries = rest.partition(" ")
            if kind != "diag":
                raise ExprSyntaxError("only 'metric diag' is supported", lineno, 1)
            metric_line = (entries.strip(), lineno)
        else:
            raise ExprSyntaxError(f"unknown directive {head!r}", lineno, 1)
    if generators is None:
        raise ExprSyntaxError("missing generators line", 1, 1)
    mode = ScalarMode.params(*params) if params else ScalarMode.rational()
    basis = Basis(generators)
    dgen = []
    for name in generators:
        if name not in dlines:
            dgen.append(basis.zero(2))
            continue
        expr, lineno = dlines[name]
        form = parse_form_expr(expr, basis, mode, line=lineno)
        if not form.is_zero() and form.degree != 2:
            raise ExprSyntaxError(
                f"d {name} must be a 2-form, got degree {form.degree}", lineno, 1
            )
        if form.is_zero():
            form = basis.zero(2)
        dgen.append(form)
    metric = None
    if metric_line is not None:
        entries, lineno = metric_line
        cur = _Cursor(tokenize(entries, lineno))
        scalars = []
        while cur.peek().kind != "end":
            scalars.append(_parse_scalar_atom(cur, mode))
        if len(scalars) != basis.dim:
            raise InvalidMetric(
                f"metric diag needs {basis.dim} entries, got {len(scalars)}"
            )
        metric = scalars
    return Algebra(basis, dgen, metric=metric, mode=mode)


def parse_algebra_file(path: str) -> Algebra:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra_text(fh.read())


def algebra_to_text(alg: Algebra) -> str:
    """Canonical rendering; parse -> render is idempotent."""
    lines = []
    if alg.mode.is_param:
        lines.append("params " + " ".join(alg.mode.symbols))
    lines.append("generators " + " ".join(alg.basis.names))
    for name, dg in zip(alg.basis.names, alg.dgen):
        if not dg.is_zero():
            lines.append(f"d {name} = {form_str(dg)}")
    if any(g != alg.one_scalar() for g in alg.metric):
        entries = []
        for g in alg.metric:
            s = scalar_str(g)
            entries.append(f"({s})" if "/" in s or " " in s else s)
        lines.append("metric diag " + " ".join(entries))
    return "\n".join(lines) + "\n"
