"""Finite-dimensional algebras over Q given by structure constants.

An :class:`Algebra` stores ``e_i * e_j = sum_k c[i][j][k] e_k`` as a dict keyed
by the pair ``(i, j)``; pairs with zero product are absent.  Bimodules,
algebra morphisms and extensions are thin immutable records around the same
sparse data, with ``validate_*`` functions returning reports instead of
raising so that negative controls can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .linalg import SparseMatrix, as_fraction

Table = Mapping[tuple[int, int], Mapping[int, Fraction]]


def _clean_table(table) -> dict:
    out = {}
    for (i, j), prod in table.items():
        clean = {k: as_fraction(v) for k, v in prod.items() if v}
        if clean:
            out[(i, j)] = clean
    return out


def _add_into(acc: dict, vec: Mapping, coeff) -> None:
    for k, v in vec.items():
        s = acc.get(k, 0) + coeff * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


@dataclass(frozen=True, eq=False)
class Algebra:
    dim: int
    table: dict = field(repr=False)
    unit: tuple | None = None
    basis: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "table", _clean_table(self.table))
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(self.dim)))
        else:
            object.__setattr__(self, "basis", tuple(str(b) for b in self.basis))
        if len(self.basis) != self.dim:
            raise ValueError("basis labels do not match dimension")
        if self.unit is not None:
            u = tuple(as_fraction(x) for x in self.unit)
            if len(u) != self.dim:
                raise ValueError("unit vector has wrong length")
            object.__setattr__(self, "unit", u)
        for (i, j), prod in self.table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim) or any(
                    not 0 <= k < self.dim for k in prod):
                raise IndexError(f"structure constant index out of range at ({i}, {j})")

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, x, y) -> list:
        """Product of two coordinate vectors."""
        acc: dict = {}
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    _add_into(acc, self.product(i, j), a * b)
        out = [Fraction(0)] * self.dim
        for k, v in acc.items():
            out[k] = v
        return out

    def multiplication_matrix(self) -> SparseMatrix:
        """The map A (x) A -> A, column index i * dim + j."""
        d = self.dim
        return SparseMatrix._trusted(
            d, d * d, {i * d + j: dict(p) for (i, j), p in self.table.items()})

    def left_multiplication(self, x) -> SparseMatrix:
        """Matrix of y -> x * y."""
        cols = {}
        for j in range(self.dim):
            acc: dict = {}
            for i, a in enumerate(x):
                if a:
                    _add_into(acc, self.product(i, j), a)
            cols[j] = acc
        return SparseMatrix._trusted(self.dim, self.dim, cols)

    def right_multiplication(self, x) -> SparseMatrix:
        cols = {}
        for i in range(self.dim):
            acc: dict = {}
            for j, a in enumerate(x):
                if a:
                    _add_into(acc, self.product(i, j), a)
            cols[i] = acc
        return SparseMatrix._trusted(self.dim, self.dim, cols)

    def is_commutative(self) -> bool:
        return all(self.product(i, j) == self.product(j, i)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def unit_vector(self) -> list:
        if self.unit is None:
            raise ValueError(f"algebra {self.name or ''} has no unit")
        return list(self.unit)


@dataclass(frozen=True, eq=False)
class Bimodule:
    """Bimodule over ``over`` with sparse action tensors.

    ``left[(i, m)]`` is the coordinate dict of ``e_i . x_m`` and
    ``right[(m, i)]`` that of ``x_m . e_i``.
    """

    dim: int
    over: Algebra = field(repr=False)
    left: dict = field(repr=False, default_factory=dict)
    right: dict = field(repr=False, default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "left", _clean_table(self.left))
        object.__setattr__(self, "right", _clean_table(self.right))

    def left_act(self, i: int, m: int) -> dict:
        return self.left.get((i, m), {})

    def right_act(self, m: int, i: int) -> dict:
        return self.right.get((m, i), {})

    def as_right_module(self) -> "Bimodule":
        return Bimodule(self.dim, self.over, {}, self.right, self.name + "|right")

    def as_left_module(self) -> "Bimodule":
        return Bimodule(self.dim, self.over, self.left, {}, self.name + "|left")


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    source: Algebra
    target: Algebra
    matrix: SparseMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError("morphism matrix has wrong shape")


@dataclass(frozen=True, eq=False)
class Extension:
    ideal: Algebra
    total: Algebra
    quotient: Algebra
    incl: AlgebraMorphism
    proj: AlgebraMorphism
    section: SparseMatrix
    name: str = ""


@dataclass(frozen=True, eq=False)
class ModuleExtension:
    sub: Bimodule
    total: Bimodule
    quot: Bimodule
    incl: SparseMatrix
    proj: SparseMatrix
    section: SparseMatrix


@dataclass
class Report:
    ok: bool
    message: str = ""
    index: tuple | None = None

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# validation


def validate_algebra(a: Algebra) -> Report:
    """Check associativity and the unit; reports the first failing (i, j, k, l)."""
    d = a.dim
    for i in range(d):
        for j in range(d):
            ij = a.product(i, j)
            for k in range(d):
                lhs: dict = {}
                for m, c in ij.items():
                    _add_into(lhs, a.product(m, k), c)
                rhs: dict = {}
                for m, c in a.product(j, k).items():
                    _add_into(rhs, a.product(i, m), c)
                if lhs != rhs:
                    bad = min(set(lhs) ^ set(rhs) | {l for l in lhs if lhs.get(l) != rhs.get(l)})
                    return Report(False, f"associativity fails at (e{i} e{j}) e{k}, coordinate {bad}",
                                  (i, j, k, bad))
    if a.unit is not None:
        for j in range(d):
            e = [Fraction(0)] * d
            e[j] = Fraction(1)
            if a.mul(a.unit, e) != e:
                return Report(False, f"unit fails on the left at e{j}", ("unit-left", j))
            if a.mul(e, a.unit) != e:
                return Report(False, f"unit fails on the right at e{j}", ("unit-right", j))
    return Report(True)


def validate_bimodule(m: Bimodule) -> Report:
    a = m.over
    d, n = a.dim, m.dim

    def left(i, vec):
        acc: dict = {}
        for x, c in vec.items():
            _add_into(acc, m.left_act(i, x), c)
        return acc

    def right(vec, i):
        acc: dict = {}
        for x, c in vec.items():
            _add_into(acc, m.right_act(x, i), c)
        return acc

    for x in range(n):
        ex = {x: Fraction(1)}
        for i in range(d):
            for j in range(d):
                # (e_i e_j) x == e_i (e_j x)
                lhs: dict = {}
                for k, c in a.product(i, j).items():
                    _add_into(lhs, m.left_act(k, x), c)
                if lhs != left(i, left(j, ex)):
                    return Report(False, f"left action not associative at ({i}, {j}, {x})", ("left", i, j, x))
                lhs = {}
                for k, c in a.product(i, j).items():
                    _add_into(lhs, m.right_act(x, k), c)
                if lhs != right(right(ex, i), j):
                    return Report(False, f"right action not associative at ({x}, {i}, {j})", ("right", x, i, j))
                if right(left(i, ex), j) != left(i, right(ex, j)):
                    return Report(False, f"actions do not commute at ({i}, {x}, {j})", ("mixed", i, x, j))
        if a.unit is not None and (m.left or m.right):
            u = {k: c for k, c in enumerate(a.unit) if c}
            if m.left:
                acc: dict = {}
                for k, c in u.items():
                    _add_into(acc, m.left_act(k, x), c)
                if acc != ex:
                    return Report(False, f"unit does not act as identity on the left at {x}", ("unit-left", x))
            if m.right:
                acc = {}
                for k, c in u.items():
                    _add_into(acc, m.right_act(x, k), c)
                if acc != ex:
                    return Report(False, f"unit does not act as identity on the right at {x}", ("unit-right", x))
    return Report(True)


def validate_morphism(f: AlgebraMorphism, check_unit: bool = True) -> Report:
    s, t, mat = f.source, f.target, f.matrix
    cols = [mat.column(i) for i in range(s.dim)]
    for i in range(s.dim):
        for j in range(s.dim):
            lhs = mat.apply_sparse(s.product(i, j))
            rhs: dict = {}
            for k, a in cols[i].items():
                for l, b in cols[j].items():
                    _add_into(rhs, t.product(k, l), a * b)
            if lhs != rhs:
                return Report(False, f"not multiplicative at ({i}, {j})", (i, j))
    if check_unit and s.unit is not None and t.unit is not None:
        img = mat @ list(s.unit)
        if img != list(t.unit):
            return Report(False, "unit not preserved", ("unit",))
    return Report(True)


def validate_extension(ext: Extension) -> Report:
    for name, alg in (("ideal", ext.ideal), ("total", ext.total), ("quotient", ext.quotient)):
        r = validate_algebra(alg)
        if not r:
            return Report(False, f"{name}: {r.message}", r.index)
    # the unit clause does not apply to the inclusion of a non-unital ideal
    for name, mor in (("incl", ext.incl), ("proj", ext.proj)):
        r = validate_morphism(mor, check_unit=(name == "proj"))
        if not r:
            return Report(False, f"{name}: {r.message}", r.index)
    i, p, s = ext.incl.matrix, ext.proj.matrix, ext.section
    if ext.ideal.dim + ext.quotient.dim != ext.total.dim:
        return Report(False, "dimensions do not add up")
    if linalg.rank(i) != ext.ideal.dim:
        return Report(False, "inclusion is not injective")
    if linalg.rank(p) != ext.quotient.dim:
        return Report(False, "projection is not surjective")
    if not (p @ i).is_zero():
        return Report(False, "proj o incl is not zero")
    if s.shape != (ext.total.dim, ext.quotient.dim) or p @ s != SparseMatrix.identity(ext.quotient.dim):
        return Report(False, "section is not a right inverse of proj")
    # two-sided ideal: E * I and I * E stay in ker(proj)
    E = ext.total
    for c in range(ext.ideal.dim):
        x = i.column(c)
        for j in range(E.dim):
            lx: dict = {}
            rx: dict = {}
            for k, v in x.items():
                _add_into(lx, E.product(j, k), v)
                _add_into(rx, E.product(k, j), v)
            if p.apply_sparse(lx) or p.apply_sparse(rx):
                return Report(False, f"image of ideal basis {c} is not a two-sided ideal", (c, j))
    return Report(True)


def validate_module_extension(mext: ModuleExtension) -> Report:
    for name, m in (("sub", mext.sub), ("total", mext.total), ("quot", mext.quot)):
        r = validate_bimodule(m)
        if not r:
            return Report(False, f"{name}: {r.message}", r.index)
    i, p, s = mext.incl, mext.proj, mext.section
    if linalg.rank(i) != mext.sub.dim or linalg.rank(p) != mext.quot.dim:
        return Report(False, "maps are not injective/surjective")
    if mext.sub.dim + mext.quot.dim != mext.total.dim or not (p @ i).is_zero():
        return Report(False, "sequence is not exact")
    if p @ s != SparseMatrix.identity(mext.quot.dim):
        return Report(False, "section is not a right inverse of proj")
    a = mext.total.over
    for f, src, tgt, nm in ((i, mext.sub, mext.total, "incl"), (p, mext.total, mext.quot, "proj")):
        for x in range(src.dim):
            fx = f.column(x)
            for k in range(a.dim):
                lhs = f.apply_sparse(src.left_act(k, x))
                rhs: dict = {}
                for y, c in fx.items():
                    _add_into(rhs, tgt.left_act(k, y), c)
                if lhs != rhs:
                    return Report(False, f"{nm} is not left linear", (x, k))
                lhs = f.apply_sparse(src.right_act(x, k))
                rhs = {}
                for y, c in fx.items():
                    _add_into(rhs, tgt.right_act(y, k), c)
                if lhs != rhs:
                    return Report(False, f"{nm} is not right linear", (x, k))
    return Report(True)


# ---------------------------------------------------------------------------
# constructions


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a.dim, a, dict(a.table), dict(a.table), name=a.name or "A")


def dual_bimodule(m: Bimodule) -> Bimodule:
    """M* with (a.f)(x) = f(x.a) and (f.a)(x) = f(a.x)."""
    left: dict = {}
    right: dict = {}
    # (a_i . f_m)(x_n) = f_m(x_n . a_i)  =>  coefficient of f_n is right[(n, i)][m]
    for (n, i), vec in m.right.items():
        for mm, c in vec.items():
            left.setdefault((i, mm), {})[n] = c
    for (i, n), vec in m.left.items():
        for mm, c in vec.items():
            right.setdefault((mm, i), {})[n] = c
    return Bimodule(m.dim, m.over, left, right, name=(m.name or "M") + "*")


def restrict_bimodule(m: Bimodule, f: AlgebraMorphism) -> Bimodule:
    """View a bimodule over f.target as one over f.source via f."""
    if f.target is not m.over and f.target.dim != m.over.dim:
        raise ValueError("morphism target does not match bimodule algebra")
    left: dict = {}
    right: dict = {}
    for i in range(f.source.dim):
        img = f.matrix.column(i)
        for x in range(m.dim):
            l: dict = {}
            r: dict = {}
            for k, c in img.items():
                _add_into(l, m.left_act(k, x), c)
                _add_into(r, m.right_act(x, k), c)
            if l:
                left[(i, x)] = l
            if r:
                right[(x, i)] = r
    return Bimodule(m.dim, f.source, left, right, name=m.name)


def sub_bimodule(m: Bimodule, incl: SparseMatrix, name: str = "") -> Bimodule:
    """Bimodule structure on a subspace (columns of ``incl``) closed under the actions."""
    inv = linalg.left_inverse(incl)
    a = m.over
    left: dict = {}
    right: dict = {}
    for x in range(incl.cols):
        img = incl.column(x)
        for k in range(a.dim):
            l: dict = {}
            r: dict = {}
            for y, c in img.items():
                _add_into(l, m.left_act(k, y), c)
                _add_into(r, m.right_act(y, k), c)
            for acc, store, key in ((l, left, (k, x)), (r, right, (x, k))):
                if not acc:
                    continue
                coords = inv.apply_sparse(acc)
                if incl.apply_sparse(coords) != acc:
                    raise ValueError("subspace is not closed under the action")
                store[key] = coords
    return Bimodule(incl.cols, a, left, right, name=name)


def descend_bimodule(m: Bimodule, ext: Extension) -> Bimodule:
    """Turn an E-bimodule on which the ideal acts trivially into a Q-bimodule."""
    E = ext.total
    if m.over.dim != E.dim:
        raise ValueError("bimodule is not over the total algebra")
    for c in range(ext.ideal.dim):
        img = ext.incl.matrix.column(c)
        for x in range(m.dim):
            for act in (lambda k: m.left_act(k, x), lambda k: m.right_act(x, k)):
                acc: dict = {}
                for k, v in img.items():
                    _add_into(acc, act(k), v)
                if acc:
                    raise ValueError("the ideal acts nontrivially; action does not descend")
    # the section need not be multiplicative; only its matrix is used
    return restrict_bimodule(m, AlgebraMorphism(ext.quotient, E, ext.section))


def unitalization(a: Algebra) -> Algebra:
    """A+ = A (+) Q with the adjoined basis vector (last index) a two-sided unit."""
    d = a.dim
    u = d
    table = {k: dict(v) for k, v in a.table.items()}
    for i in range(d):
        table[(i, u)] = {i: Fraction(1)}
        table[(u, i)] = {i: Fraction(1)}
    table[(u, u)] = {u: Fraction(1)}
    unit = [Fraction(0)] * (d + 1)
    unit[u] = Fraction(1)
    return Algebra(d + 1, table, tuple(unit), a.basis + ("1",), name=(a.name or "A") + "+")


def unitalization_inclusion(a: Algebra, aplus: Algebra | None = None) -> AlgebraMorphism:
    aplus = aplus or unitalization(a)
    mat = SparseMatrix._trusted(a.dim + 1, a.dim, {i: {i: Fraction(1)} for i in range(a.dim)})
    return AlgebraMorphism(a, aplus, mat)


def augmentation(aplus: Algebra) -> SparseMatrix:
    """Projection of A+ onto the adjoined unit coordinate."""
    return SparseMatrix._trusted(1, aplus.dim, {aplus.dim - 1: {0: Fraction(1)}})


def balanced_tensor(m: Bimodule, n: Bimodule) -> tuple[int, SparseMatrix]:
    """M (x)_A N as the cokernel of b'(x (x) a (x) y) = x.a (x) y - x (x) a.y.

    ``m`` contributes its right action and ``n`` its left action.  Returns
    the dimension and the quotient projection M (x) N -> M (x)_A N.
    """
    a = m.over
    if n.over is not a and n.over.dim != a.dim:
        raise ValueError("modules over different algebras")
    dm, da, dn = m.dim, a.dim, n.dim
    cols = {}
    for x in range(dm):
        for i in range(da):
            for y in range(dn):
                acc: dict = {}
                for xx, c in m.right_act(x, i).items():
                    _add_into(acc, {xx * dn + y: c}, 1)
                for yy, c in n.left_act(i, y).items():
                    _add_into(acc, {x * dn + yy: c}, -1)
                if acc:
                    cols[(x * da + i) * dn + y] = acc
    bprime = SparseMatrix._trusted(dm * dn, dm * da * dn, cols)
    proj, _ = linalg.quotient_projection(dm * dn, (col for _, col in sorted(bprime.columns())))
    return proj.rows, proj


def commutator_matrix(a: Algebra) -> SparseMatrix:
    """The map A (x) A -> A, x (x) y -> xy - yx."""
    d = a.dim
    cols = {}
    for i in range(d):
        for j in range(d):
            acc: dict = {}
            _add_into(acc, a.product(i, j), 1)
            _add_into(acc, a.product(j, i), -1)
            if acc:
                cols[i * d + j] = acc
    return SparseMatrix._trusted(d, d * d, cols)


def find_one_sided_unit(a: Algebra, side: str) -> list | None:
    """A vector e with e*x = x (side='left') or x*e = x for all x, if one exists."""
    d = a.dim
    # unknown e = sum_i u_i e_i; equations indexed by (j, k)
    cols: dict = {}
    for i in range(d):
        col = {}
        for j in range(d):
            prod = a.product(i, j) if side == "left" else a.product(j, i)
            for k, c in prod.items():
                col[j * d + k] = c
        if col:
            cols[i] = col
    mat = SparseMatrix._trusted(d * d, d, cols)
    rhs = {j * d + j: Fraction(1) for j in range(d)}
    sol = linalg.solve(mat, rhs)
    if sol is linalg.UNSOLVABLE:
        return None
    return sol
