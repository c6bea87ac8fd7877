"""Kähler forms of commutative algebras and the HKR comparison maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

from . import linalg
from .algebra import Algebra
from .errors import NotCommutative
from .linalg import SparseMatrix


def _require_commutative(a: Algebra) -> None:
    if not a.is_commutative():
        raise NotCommutative(f"{a.name or 'algebra'} is not commutative")
    if a.unit is None:
        raise ValueError("a unital algebra is required")


def _perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _sort_sign(xs) -> tuple[int, tuple]:
    """Sign and sorted tuple for a wedge of basis indices (0 sign if repeated)."""
    if len(set(xs)) < len(xs):
        return 0, ()
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    return _perm_sign(order), tuple(xs[i] for i in order)


@dataclass
class KaehlerForms:
    """Omega^k presented as A (x) Lambda^k(A) modulo the Leibniz rule.

    Generator (a0, S) stands for e_{a0} de_{s_1} ^ ... ^ de_{s_k}.  ``proj``
    maps generator coordinates onto the quotient basis, which consists of the
    images of the generators listed in ``free``.
    """

    algebra: Algebra
    k: int
    generators: list
    proj: SparseMatrix
    free: list
    relations: int

    @property
    def dim(self) -> int:
        return self.proj.rows

    def index(self, a0: int, wedge: tuple) -> int:
        return a0 * len(self._subsets) + self._subset_index[wedge]

    def __post_init__(self):
        self._subsets = list(combinations(range(self.algebra.dim), self.k))
        self._subset_index = {s: i for i, s in enumerate(self._subsets)}

    def labels(self) -> list[str]:
        names = self.algebra.basis
        out = []
        for g in self.free:
            a0, wedge = self.generators[g]
            out.append(names[a0] + "".join(f" d{names[s]}" for s in wedge))
        return out

    def to_dict(self):
        return {"k": self.k, "dim": self.dim, "generators": len(self.generators),
                "relations_rank": self.relations, "basis": self.labels()}


def kaehler_forms(a: Algebra, k: int) -> KaehlerForms:
    _require_commutative(a)
    if k < 0:
        raise ValueError("k must be >= 0")
    d = a.dim
    subsets = list(combinations(range(d), k))
    sidx = {s: i for i, s in enumerate(subsets)}
    gens = [(a0, s) for a0 in range(d) for s in subsets]
    ns = len(subsets)
    rels = []
    if k >= 1:
        lower = list(combinations(range(d), k - 1))
        for a0 in range(d):
            for b in range(d):
                for c in range(d):
                    for w in lower:
                        vec: dict = {}
                        # a0 (x) d(bc) ^ w
                        for x, coeff in a.product(b, c).items():
                            sgn, key = _sort_sign((x,) + w)
                            if sgn:
                                _acc(vec, a0 * ns + sidx[key], sgn * coeff)
                        # - a0 b (x) dc ^ w  -  a0 c (x) db ^ w
                        for first, other in ((b, c), (c, b)):
                            sgn, key = _sort_sign((other,) + w)
                            if not sgn:
                                continue
                            for y, coeff in a.product(a0, first).items():
                                _acc(vec, y * ns + sidx[key], -sgn * coeff)
                        if vec:
                            rels.append(vec)
    proj, free = linalg.quotient_projection(len(gens), rels)
    rank = len(gens) - len(free)
    return KaehlerForms(a, k, gens, proj, free, rank)


def _acc(vec: dict, key: int, v) -> None:
    s = vec.get(key, 0) + v
    if s:
        vec[key] = s
    else:
        vec.pop(key, None)


def kaehler_one_forms_diagonal(a: Algebra) -> int:
    """dim I/I^2 for the kernel I of multiplication A (x) A -> A."""
    _require_commutative(a)
    d = a.dim
    ker = linalg.kernel_basis(a.multiplication_matrix(), sparse=True)
    # products in A (x) A: (x (x) y)(u (x) v) = xu (x) yv
    def mult(v, w):
        out: dict = {}
        for p, c in v.items():
            x, y = divmod(p, d)
            for q, e in w.items():
                u, z = divmod(q, d)
                for s, c1 in a.product(x, u).items():
                    for t, c2 in a.product(y, z).items():
                        _acc(out, s * d + t, c * e * c1 * c2)
        return out
    square = linalg.Echelon(d * d)
    for i, v in enumerate(ker):
        for w in ker[i:]:
            square.add(mult(v, w))
    return len(ker) - square.dim


def hkr_j(a: Algebra, k: int, forms: KaehlerForms | None = None) -> SparseMatrix:
    """Antisymmetrisation Omega^k -> A^(x)(k+1) on the quotient basis representatives."""
    forms = forms or kaehler_forms(a, k)
    d = a.dim
    cols = []
    for g in forms.free:
        a0, wedge = forms.generators[g]
        vec: dict = {}
        for perm in permutations(range(k)):
            idx = a0
            for p in perm:
                idx = idx * d + wedge[p]
            _acc(vec, idx, Fraction(_perm_sign(perm)))
        cols.append(vec)
    return SparseMatrix.from_column_vectors(d ** (k + 1), cols)


def hkr_k(a: Algebra, k: int, forms: KaehlerForms | None = None) -> SparseMatrix:
    """f0 (x) .. (x) fk -> (1/k!) f0 df1 ^ .. ^ dfk."""
    forms = forms or kaehler_forms(a, k)
    d = a.dim
    ns = comb(d, k)
    sidx = {s: i for i, s in enumerate(combinations(range(d), k))}
    scale = Fraction(1, factorial(k))
    cols = {}
    for col in range(d ** (k + 1)):
        digits = []
        t = col
        for _ in range(k + 1):
            t, r = divmod(t, d)
            digits.append(r)
        digits.reverse()
        sgn, key = _sort_sign(tuple(digits[1:]))
        if not sgn:
            continue
        img = forms.proj.column(digits[0] * ns + sidx[key])
        if img:
            cols[col] = {r: sgn * scale * v for r, v in img.items()}
    return SparseMatrix._trusted(forms.dim, d ** (k + 1), cols)
