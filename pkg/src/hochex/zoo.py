"""Model algebras and extensions used by the tests, the CLI and the demos."""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .algebra import Algebra, AlgebraMorphism, Extension
from .errors import UnknownModel
from .linalg import SparseMatrix

ONE = Fraction(1)


def ground_field() -> Algebra:
    return Algebra(1, {(0, 0): {0: ONE}}, (ONE,), ("1",), name="Q")


def zero_algebra(dim: int = 1) -> Algebra:
    """Q^dim with identically zero multiplication."""
    return Algebra(dim, {}, None, tuple(f"z{i}" for i in range(dim)), name=f"Z{dim}")


def matrix_algebra(n: int) -> Algebra:
    """M_n(Q) with basis e_ij at index i * n + j."""
    if n < 1:
        raise ValueError("n must be positive")
    table = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                table[(i * n + j, j * n + l)] = {i * n + l: ONE}
    unit = [Fraction(0)] * (n * n)
    for i in range(n):
        unit[i * n + i] = ONE
    basis = tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return Algebra(n * n, table, tuple(unit), basis, name=f"M{n}")


def _monomials(nvars: int, order: int) -> list[tuple[int, ...]]:
    out = []
    for deg in range(order + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            exps = [0] * nvars
            for v in combo:
                exps[v] += 1
            out.append(tuple(exps))
    return out


def jet_algebra(nvars: int, order: int) -> Algebra:
    """Q[x_1..x_v] modulo monomials of total degree > order."""
    if nvars < 1 or order < 0:
        raise ValueError("need nvars >= 1 and order >= 0")
    mons = _monomials(nvars, order)
    index = {m: i for i, m in enumerate(mons)}
    table = {}
    for i, a in enumerate(mons):
        for j, b in enumerate(mons):
            c = tuple(x + y for x, y in zip(a, b))
            if c in index:
                table[(i, j)] = {index[c]: ONE}
    unit = [Fraction(0)] * len(mons)
    unit[0] = ONE

    def label(m):
        if not any(m):
            return "1"
        parts = []
        for v, e in enumerate(m):
            if e:
                var = "xyzw"[v] if nvars <= 4 else f"x{v + 1}"
                parts.append(var if e == 1 else f"{var}^{e}")
        return "".join(parts)

    assert len(mons) == comb(nvars + order, nvars)
    return Algebra(len(mons), table, tuple(unit), tuple(label(m) for m in mons),
                   name=f"J({nvars},{order})")


def dual_numbers() -> Algebra:
    return jet_algebra(1, 1)


def truncated_polynomial(n: int) -> Algebra:
    """Q[x]/(x^n)."""
    return jet_algebra(1, n - 1)


def product_algebra(a: Algebra, b: Algebra) -> Algebra:
    """a x b with componentwise multiplication, basis of a first."""
    da = a.dim
    table = {k: dict(v) for k, v in a.table.items()}
    for (i, j), prod in b.table.items():
        table[(i + da, j + da)] = {k + da: c for k, c in prod.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = tuple(a.unit) + tuple(b.unit)
    basis = tuple(f"{x}@1" for x in a.basis) + tuple(f"{x}@2" for x in b.basis)
    return Algebra(da + b.dim, table, unit, basis, name=f"{a.name or 'A'}x{b.name or 'B'}")


def _selection(rows: int, cols: int, pairs) -> SparseMatrix:
    return SparseMatrix._trusted(rows, cols, {c: {r: ONE} for r, c in pairs})


def _subalgebra(e: Algebra, keep: list[int], name: str) -> Algebra:
    """Algebra on a subset of basis vectors spanning a subalgebra of e."""
    pos = {k: i for i, k in enumerate(keep)}
    table = {}
    for i, a in enumerate(keep):
        for j, b in enumerate(keep):
            prod = e.product(a, b)
            if prod:
                if any(k not in pos for k in prod):
                    raise ValueError("basis subset is not closed under multiplication")
                table[(i, j)] = {pos[k]: c for k, c in prod.items()}
    return Algebra(len(keep), table, None, tuple(e.basis[k] for k in keep), name=name)


def corner_ideal_extension(n: int) -> Extension:
    """E = (n+1)x(n+1) matrices whose last row lives on the corner entry.

    I is the ideal of matrices in E with zero last row; it has the left unit
    diag(1, ..., 1, 0) but no right unit.  Q = E / I is Q.
    """
    if n < 1:
        raise ValueError("n must be positive")
    size = n + 1
    units = [(i, j) for i in range(n) for j in range(size)] + [(n, n)]
    index = {u: k for k, u in enumerate(units)}
    table = {}
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                table[(a, b)] = {index[(i, l)]: ONE}
    unit = [Fraction(0)] * len(units)
    for i in range(size):
        unit[index[(i, i)]] = ONE
    basis = tuple(f"e{i + 1}{j + 1}" for i, j in units)
    E = Algebra(len(units), table, tuple(unit), basis, name=f"Corner({n})")
    dim_i = n * size
    I = _subalgebra(E, list(range(dim_i)), f"CornerIdeal({n})")
    Q = Algebra(1, {(0, 0): {0: ONE}}, (ONE,), ("q",), name="Q")
    incl = AlgebraMorphism(I, E, _selection(E.dim, dim_i, [(k, k) for k in range(dim_i)]))
    proj = AlgebraMorphism(E, Q, _selection(1, E.dim, [(0, E.dim - 1)]))
    section = _selection(E.dim, 1, [(E.dim - 1, 0)])
    return Extension(I, E, Q, incl, proj, section, name=f"corner:{n}")


def nilpotent_jet_extension(N: int, m: int) -> Extension:
    """(x^m)/(x^N) -> Q[x]/(x^N) -> Q[x]/(x^m)."""
    if not 1 <= m < N:
        raise ValueError("need 1 <= m < N")
    E = truncated_polynomial(N)
    Q = truncated_polynomial(m)
    keep = list(range(m, N))
    I = _subalgebra(E, keep, f"(x^{m})/(x^{N})")
    incl = AlgebraMorphism(I, E, _selection(N, N - m, [(k, i) for i, k in enumerate(keep)]))
    proj = AlgebraMorphism(E, Q, _selection(m, N, [(j, j) for j in range(m)]))
    section = _selection(N, m, [(j, j) for j in range(m)])
    return Extension(I, E, Q, incl, proj, section, name=f"nilpotent-jet:{N},{m}")


def direct_sum_extension(i: Algebra, q: Algebra) -> Extension:
    """The split extension i -> i x q -> q with multiplicative section."""
    E = product_algebra(i, q)
    di, dq = i.dim, q.dim
    incl = AlgebraMorphism(i, E, _selection(E.dim, di, [(k, k) for k in range(di)]))
    proj = AlgebraMorphism(E, q, _selection(dq, E.dim, [(k, k + di) for k in range(dq)]))
    section = _selection(E.dim, dq, [(k + di, k) for k in range(dq)])
    return Extension(i, E, q, incl, proj, section,
                     name=f"sum:{i.name or 'A'},{q.name or 'B'}")


# ---------------------------------------------------------------------------
# name parsing

_ALGEBRAS = {
    "q": lambda: ground_field(),
    "dual": lambda: dual_numbers(),
}


def zoo_parse(name: str):
    """Build a model from strings like ``matrix:2``, ``jet:1,1`` or ``corner:1``.

    Grammar: ``matrix:n | jet:v,k | corner:n | nilpotent-jet:N,m | dual |
    sum:<a>,<b> | q | zero[:n] | trunc:N | product:<a>,<b> | ideal:<ext> |
    quotient:<ext> | total:<ext>``.  Algebras come back as :class:`Algebra`,
    extensions as :class:`Extension`.
    """
    s = name.strip()
    low = s.lower()
    if low in _ALGEBRAS:
        return _ALGEBRAS[low]()
    head, _, rest = low.partition(":")
    try:
        if head == "matrix":
            return matrix_algebra(int(rest))
        if head == "jet":
            v, k = _ints(rest, 2)
            return jet_algebra(v, k)
        if head == "trunc":
            return truncated_polynomial(int(rest))
        if head == "zero":
            return zero_algebra(int(rest) if rest else 1)
        if head == "corner":
            return corner_ideal_extension(int(rest))
        if head == "nilpotent-jet":
            N, m = _ints(rest, 2)
            return nilpotent_jet_extension(N, m)
        if head in ("sum", "product"):
            a, b = _split_pair(s.partition(":")[2])
            left, right = zoo_parse(a), zoo_parse(b)
            if not isinstance(left, Algebra) or not isinstance(right, Algebra):
                raise UnknownModel(f"{name}: operands must be algebras")
            return direct_sum_extension(left, right) if head == "sum" else product_algebra(left, right)
        if head in ("ideal", "total", "quotient"):
            ext = zoo_parse(s.partition(":")[2])
            if not isinstance(ext, Extension):
                raise UnknownModel(f"{name}: operand must be an extension")
            return getattr(ext, head)
    except UnknownModel:
        raise
    except (ValueError, TypeError) as exc:
        raise UnknownModel(f"cannot parse model {name!r}: {exc}") from exc
    raise UnknownModel(f"unknown model {name!r}")


def _ints(text: str, count: int) -> list[int]:
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != count:
        raise ValueError(f"expected {count} integers, got {text!r}")
    return [int(p) for p in parts]


def _split_pair(text: str) -> tuple[str, str]:
    """Split ``a,b`` at the top-level comma (operands may contain ``:`` and ``,``)."""
    # operands like jet:1,1 contain commas; try each split and keep the first that parses
    pieces = text.split(",")
    for k in range(1, len(pieces)):
        a, b = ",".join(pieces[:k]), ",".join(pieces[k:])
        try:
            zoo_parse(a)
            zoo_parse(b)
        except UnknownModel:
            continue
        return a, b
    raise UnknownModel(f"cannot split operands {text!r}")


def standard_zoo() -> dict[str, Algebra]:
    """The algebras swept by the structural checks."""
    return {
        "Q": ground_field(),
        "QxQ": product_algebra(ground_field(), ground_field()),
        "M1": matrix_algebra(1),
        "M2": matrix_algebra(2),
        "dual": dual_numbers(),
        "jet(1,2)": jet_algebra(1, 2),
        "jet(2,1)": jet_algebra(2, 1),
        "jet(2,2)": jet_algebra(2, 2),
        "corner(1)": corner_ideal_extension(1).total,
        "corner(2)": corner_ideal_extension(2).total,
    }
