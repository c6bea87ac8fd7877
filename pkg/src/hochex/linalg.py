"""Exact sparse linear algebra over the rationals.

Every boundary map in the package is a :class:`SparseMatrix` with
:class:`fractions.Fraction` entries.  Ranks come in two flavours:

* :func:`rank` runs fraction-free integer elimination and is exact.
* :func:`rank_modular` reduces modulo a prime; it never overcounts and agrees
  with :func:`rank` outside a finite set of bad primes.

:func:`matrix_rank` picks between them and is what the rest of the package
calls.  Kernels, solutions and quotient projections are always exact.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import BadPrime

DEFAULT_PRIME = 2**61 - 1


class _Unsolvable:
    __slots__ = ()

    def __repr__(self):
        return "UNSOLVABLE"

    def __bool__(self):
        return False


UNSOLVABLE = _Unsolvable()


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point entries are not accepted")
    return Fraction(x)


class SparseMatrix:
    """Immutable rows x cols matrix over Q, stored column by column.

    ``entries`` may be a mapping or an iterable of ``((row, col), value)``.
    Zero values are dropped; out of range indices raise ``IndexError``.
    """

    __slots__ = ("rows", "cols", "_cols", "_hash")

    def __init__(self, rows: int, cols: int, entries=()):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        self.rows = rows
        self.cols = cols
        self._hash = None
        data: dict[int, dict[int, Fraction]] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = as_fraction(v)
            col = data.setdefault(c, {})
            s = col.get(r, 0) + v
            if s:
                col[r] = s
            else:
                col.pop(r, None)
                if not col:
                    del data[c]
        self._cols = data

    @classmethod
    def _trusted(cls, rows, cols, columns):
        """Wrap prebuilt column dicts (no zeros, indices in range)."""
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._hash = None
        m._cols = {c: col for c, col in columns.items() if col}
        return m

    @classmethod
    def from_columns(cls, rows, cols, columns: Mapping[int, Mapping[int, object]]):
        data = {}
        for c, col in columns.items():
            if not 0 <= c < cols:
                raise IndexError(f"column {c} outside {cols}")
            clean = {}
            for r, v in col.items():
                if not 0 <= r < rows:
                    raise IndexError(f"row {r} outside {rows}")
                v = as_fraction(v)
                if v:
                    clean[r] = v
            if clean:
                data[c] = clean
        return cls._trusted(rows, cols, data)

    @classmethod
    def from_dense(cls, rows: list, ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        ent = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    ent[(r, c)] = v
        return cls(nrows, ncols, ent)

    @classmethod
    def identity(cls, n: int):
        return cls._trusted(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls._trusted(rows, cols, {})

    @classmethod
    def from_column_vectors(cls, rows: int, vectors: list):
        """Matrix whose columns are the given dense or sparse-dict vectors."""
        data = {}
        for c, v in enumerate(vectors):
            col = _to_sparse(v)
            if col:
                data[c] = col
        return cls._trusted(rows, len(vectors), data)

    # -- inspection ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self) -> dict:
        return {(r, c): v for c, col in self._cols.items() for r, v in col.items()}

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self._cols.values())

    def column(self, c: int) -> dict:
        return dict(self._cols.get(c, {}))

    def columns(self):
        """Iterate ``(col, {row: value})`` over nonzero columns."""
        return self._cols.items()

    def rows_dict(self) -> dict:
        out: dict[int, dict[int, Fraction]] = {}
        for c, col in self._cols.items():
            for r, v in col.items():
                out.setdefault(r, {})[c] = v
        return out

    def to_dense(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for c, col in self._cols.items():
            for r, v in col.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._cols

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self.entries.items())))
        return self._hash

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self) -> "SparseMatrix":
        return SparseMatrix._trusted(self.cols, self.rows, self.rows_dict())

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k) -> "SparseMatrix":
        k = as_fraction(k)
        if not k:
            return SparseMatrix.zeros(self.rows, self.cols)
        return SparseMatrix._trusted(
            self.rows, self.cols,
            {c: {r: v * k for r, v in col.items()} for c, col in self._cols.items()})

    def __add__(self, other: "SparseMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        data = {c: dict(col) for c, col in self._cols.items()}
        for c, col in other._cols.items():
            tgt = data.setdefault(c, {})
            for r, v in col.items():
                s = tgt.get(r, 0) + v
                if s:
                    tgt[r] = s
                else:
                    tgt.pop(r, None)
        return SparseMatrix._trusted(self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            data = {}
            for c, col in other._cols.items():
                acc = _combine(self._cols, col)
                if acc:
                    data[c] = acc
            return SparseMatrix._trusted(self.rows, other.cols, data)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        acc = _combine(self._cols, {i: as_fraction(x) for i, x in enumerate(vec) if x})
        out = [Fraction(0)] * self.rows
        for r, v in acc.items():
            out[r] = v
        return out

    def apply_sparse(self, vec: Mapping[int, Fraction]) -> dict:
        return _combine(self._cols, vec)

    def submatrix(self, rows: list | None = None, cols: list | None = None):
        """Select rows and columns (in the given order)."""
        rsel = range(self.rows) if rows is None else rows
        csel = range(self.cols) if cols is None else cols
        rmap = {r: i for i, r in enumerate(rsel)}
        data = {}
        for j, c in enumerate(csel):
            col = self._cols.get(c)
            if not col:
                continue
            new = {rmap[r]: v for r, v in col.items() if r in rmap}
            if new:
                data[j] = new
        return SparseMatrix._trusted(len(rmap), len(csel), data)


def _combine(columns, coeffs: Mapping[int, Fraction]) -> dict:
    acc: dict[int, Fraction] = {}
    for c, k in coeffs.items():
        col = columns.get(c)
        if not col:
            continue
        for r, v in col.items():
            s = acc.get(r, 0) + k * v
            if s:
                acc[r] = s
            else:
                del acc[r]
    return acc


def _to_sparse(v) -> dict:
    if isinstance(v, Mapping):
        return {i: as_fraction(x) for i, x in v.items() if x}
    return {i: as_fraction(x) for i, x in enumerate(v) if x}


def block(blocks: list[list[SparseMatrix | None]]) -> SparseMatrix:
    """Assemble a block matrix; ``None`` blocks are zero.

    Every block row must have at least one concrete block fixing its height,
    and likewise for block columns.
    """
    nr, nc = len(blocks), len(blocks[0])
    heights = [None] * nr
    widths = [None] * nc
    for i, row in enumerate(blocks):
        for j, b in enumerate(row):
            if b is None:
                continue
            if heights[i] is None:
                heights[i] = b.rows
            if widths[j] is None:
                widths[j] = b.cols
            if (heights[i], widths[j]) != b.shape:
                raise ValueError("inconsistent block shapes")
    if None in heights or None in widths:
        raise ValueError("block row or column without a sized block")
    roff = [0]
    for h in heights:
        roff.append(roff[-1] + h)
    coff = [0]
    for w in widths:
        coff.append(coff[-1] + w)
    data: dict[int, dict[int, Fraction]] = {}
    for i, row in enumerate(blocks):
        for j, b in enumerate(row):
            if b is None:
                continue
            for c, col in b._cols.items():
                tgt = data.setdefault(c + coff[j], {})
                for r, v in col.items():
                    tgt[r + roff[i]] = v
    return SparseMatrix._trusted(roff[-1], coff[-1], data)


def hstack(ms: list[SparseMatrix]) -> SparseMatrix:
    return block([ms])


def vstack(ms: list[SparseMatrix]) -> SparseMatrix:
    return block([[m] for m in ms])


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Kronecker product with row-major index (i_a, i_b) -> i_a * dim_b + i_b."""
    data = {}
    for ca, cola in a._cols.items():
        for cb, colb in b._cols.items():
            data[ca * b.cols + cb] = {
                ra * b.rows + rb: va * vb for ra, va in cola.items() for rb, vb in colb.items()}
    return SparseMatrix._trusted(a.rows * b.rows, a.cols * b.cols, data)


def kron_all(ms: list[SparseMatrix]) -> SparseMatrix:
    out = SparseMatrix.identity(1)
    for m in ms:
        out = kron(out, m)
    return out


# ---------------------------------------------------------------------------
# Elimination kernels.  Vectors are dicts {index: value}; a pivot set maps the
# smallest index of each stored vector to that vector, which keeps the stored
# vectors triangular and hence independent.


def _components(m: SparseMatrix) -> list[list[int]]:
    """Group nonzero columns that share rows (union-find over the row graph)."""
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    owner: dict[int, int] = {}
    for c, col in m._cols.items():
        parent[c] = c
        for r in col:
            o = owner.get(r)
            if o is None:
                owner[r] = c
            else:
                a, b = find(o), find(c)
                if a != b:
                    parent[b] = a
    groups: dict[int, list[int]] = {}
    for c in m._cols:
        groups.setdefault(find(c), []).append(c)
    return list(groups.values())


def _insert_mod(pivots: dict, v: dict, p: int) -> bool:
    """Reduce ``v`` against ``pivots`` mod p; store it if independent."""
    heap = list(v)
    heapq.heapify(heap)
    while heap:
        lead = heapq.heappop(heap)
        c = v.get(lead)
        if c is None:
            continue
        piv = pivots.get(lead)
        if piv is None:
            inv = pow(c, -1, p)
            for k in v:
                v[k] = v[k] * inv % p
            pivots[lead] = v
            return True
        for k, x in piv.items():
            old = v.get(k)
            if old is None:
                v[k] = (-c * x) % p
                heapq.heappush(heap, k)
            else:
                s = (old - c * x) % p
                if s:
                    v[k] = s
                else:
                    del v[k]
    return False


def _insert_int(pivots: dict, v: dict) -> bool:
    """Fraction-free reduction of an integer vector; stores primitive vectors."""
    heap = list(v)
    heapq.heapify(heap)
    while heap:
        lead = heapq.heappop(heap)
        c = v.get(lead)
        if c is None:
            continue
        piv = pivots.get(lead)
        if piv is None:
            g = 0
            for x in v.values():
                g = gcd(g, x)
                if g == 1:
                    break
            if c < 0:
                g = -g
            if g != 1:
                for k in v:
                    v[k] //= g
            pivots[lead] = v
            return True
        a = piv[lead]
        g = gcd(a, c)
        fa, fc = a // g, c // g
        if fa != 1:
            for k in v:
                v[k] *= fa
        for k, x in piv.items():
            old = v.get(k)
            if old is None:
                v[k] = -fc * x
                heapq.heappush(heap, k)
            else:
                s = old - fc * x
                if s:
                    v[k] = s
                else:
                    del v[k]
        g = 0
        for x in v.values():
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            for k in v:
                v[k] //= g
    return False


def _oriented_vectors(m: SparseMatrix, cols: list[int]):
    """Yield the vectors of one component, choosing the shorter orientation."""
    nrows = len({r for c in cols for r in m._cols[c]})
    if nrows <= len(cols):
        # few rows: insert the (many, short) columns into row space
        return [m._cols[c] for c in cols]
    rowvecs: dict[int, dict[int, Fraction]] = {}
    for c in cols:
        for r, v in m._cols[c].items():
            rowvecs.setdefault(r, {})[c] = v
    return list(rowvecs.values())


def _mod_vector(vec, p):
    out = {}
    for k, x in vec.items():
        den = x.denominator
        if den % p == 0:
            raise BadPrime(f"denominator {den} vanishes mod {p}")
        y = x.numerator % p if den == 1 else x.numerator * pow(den, -1, p) % p
        if y:
            out[k] = y
    return out


def _int_vector(vec):
    den = 1
    for x in vec.values():
        d = x.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    return {k: int(x * den) for k, x in vec.items()}


def rank_modular(m: SparseMatrix, prime: int = DEFAULT_PRIME) -> int:
    """Rank of ``m`` reduced modulo ``prime``; at most :func:`rank` of ``m``."""
    if prime < 3 or prime % 2 == 0:
        raise BadPrime(f"{prime} is not an odd prime")
    total = 0
    for comp in _components(m):
        if len(comp) == 1:
            col = _mod_vector(m._cols[comp[0]], prime)
            total += 1 if col else 0
            continue
        pivots: dict = {}
        vecs = [_mod_vector(v, prime) for v in _oriented_vectors(m, comp)]
        vecs.sort(key=len)
        try:
            for v in vecs:
                if v:
                    _insert_mod(pivots, v, prime)
        except ValueError as exc:
            raise BadPrime(f"{prime} is not prime: a pivot has no inverse") from exc
        total += len(pivots)
    return total


def rank(m: SparseMatrix) -> int:
    """Exact rank over Q by fraction-free elimination."""
    total = 0
    for comp in _components(m):
        if len(comp) == 1:
            total += 1
            continue
        pivots: dict = {}
        vecs = [_int_vector(v) for v in _oriented_vectors(m, comp)]
        vecs.sort(key=len)
        for v in vecs:
            _insert_int(pivots, v)
        total += len(pivots)
    return total


def matrix_rank(m: SparseMatrix, certify: bool = False, prime: int = DEFAULT_PRIME) -> int:
    """Rank used by the homology layer: modular by default, exact when certifying."""
    if certify:
        return rank(m)
    try:
        return rank_modular(m, prime)
    except BadPrime:
        return rank(m)


# ---------------------------------------------------------------------------
# Exact reduced row echelon form, used for kernels, solving and quotients.


class Echelon:
    """Reduced echelon basis of a subspace of Q^n.

    Each stored vector has coefficient 1 at its pivot and 0 at every other
    pivot.  ``reduce`` returns the canonical residue of a vector modulo the
    subspace, which is what quotient projections and homology classes use.
    """

    def __init__(self, n: int, vectors: Iterable = (), track: bool = False):
        self.n = n
        self.pivots: dict[int, dict[int, Fraction]] = {}
        self.track = track
        # combination of inserted vectors giving each pivot row
        self.combos: dict[int, dict[int, Fraction]] = {}
        self._count = 0
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v, combo: dict | None = None) -> dict:
        v = _to_sparse(v) if not isinstance(v, dict) else dict(v)
        hits = [k for k in v if k in self.pivots]
        for k in hits:
            c = v.get(k)
            if not c:
                continue
            for j, x in self.pivots[k].items():
                s = v.get(j, 0) - c * x
                if s:
                    v[j] = s
                else:
                    v.pop(j, None)
            if combo is not None:
                for j, x in self.combos[k].items():
                    s = combo.get(j, 0) - c * x
                    if s:
                        combo[j] = s
                    else:
                        combo.pop(j, None)
        return v

    def add(self, v) -> bool:
        """Insert ``v``; returns False when it already lies in the span."""
        idx = self._count
        self._count += 1
        combo = {idx: Fraction(1)} if self.track else None
        v = self.reduce(v, combo)
        if not v:
            return False
        lead = min(v)
        inv = 1 / v[lead]
        v = {k: x * inv for k, x in v.items()}
        if combo is not None:
            combo = {k: x * inv for k, x in combo.items()}
        for k, row in self.pivots.items():
            c = row.get(lead)
            if c:
                for j, x in v.items():
                    s = row.get(j, 0) - c * x
                    if s:
                        row[j] = s
                    else:
                        row.pop(j, None)
                if combo is not None:
                    rc = self.combos[k]
                    for j, x in combo.items():
                        s = rc.get(j, 0) - c * x
                        if s:
                            rc[j] = s
                        else:
                            rc.pop(j, None)
        self.pivots[lead] = v
        if combo is not None:
            self.combos[lead] = combo
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def basis(self) -> list[dict]:
        return [dict(self.pivots[k]) for k in sorted(self.pivots)]

    def complement_indices(self) -> list[int]:
        return [i for i in range(self.n) if i not in self.pivots]


def _dense(v: dict, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k] = x
    return out


def rref_rows(m: SparseMatrix) -> Echelon:
    """Echelon form of the row space of ``m``."""
    ech = Echelon(m.cols)
    for _, row in sorted(m.rows_dict().items()):
        ech.add(row)
    return ech


def kernel_basis(m: SparseMatrix, sparse: bool = False) -> list:
    """Basis of ker(m), one vector per free column of the row echelon form.

    Vectors are dense lists unless ``sparse`` is set, in which case they are
    ``{index: value}`` dicts.
    """
    ech = rref_rows(m)
    out = []
    for f in ech.complement_indices():
        v = {f: Fraction(1)}
        for p, row in ech.pivots.items():
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v if sparse else _dense(v, m.cols))
    return out


def solve(m: SparseMatrix, b) -> list | _Unsolvable:
    """Some x with m @ x == b, or :data:`UNSOLVABLE` when b is not in im(m)."""
    b = _to_sparse(b)
    if any(not 0 <= k < m.rows for k in b):
        raise ValueError("right-hand side length mismatch")
    ech = Echelon(m.rows, track=True)
    for c in range(m.cols):
        ech.add(m._cols.get(c, {}))
    combo: dict = {}
    resid = ech.reduce(b, combo)
    if resid:
        return UNSOLVABLE
    # b - sum combo_j * col_j == 0
    return _dense({j: -x for j, x in combo.items()}, m.cols)


class ImageSolver:
    """Reusable solver for many right-hand sides against one matrix."""

    def __init__(self, m: SparseMatrix):
        self.m = m
        self._ech = Echelon(m.rows, track=True)
        for c in range(m.cols):
            self._ech.add(m._cols.get(c, {}))

    @property
    def rank(self) -> int:
        return self._ech.dim

    def solve(self, b, sparse: bool = False):
        combo: dict = {}
        resid = self._ech.reduce(_to_sparse(b) if not isinstance(b, dict) else b, combo)
        if resid:
            return UNSOLVABLE
        x = {j: -v for j, v in combo.items()}
        return x if sparse else _dense(x, self.m.cols)


def quotient_projection(n: int, span: Iterable) -> tuple[SparseMatrix, list[int]]:
    """Projection Q^n -> Q^n / span(vectors).

    Returns ``(P, free)`` where ``free`` lists the coordinates that survive as
    the quotient basis and ``P`` maps a vector to its residue restricted to
    those coordinates, so ker(P) is exactly the span.
    """
    ech = Echelon(n, span)
    free = ech.complement_indices()
    pos = {f: i for i, f in enumerate(free)}
    data = {}
    for j in range(n):
        if j in ech.pivots:
            continue
        data[j] = {pos[j]: Fraction(1)}
    for p, row in ech.pivots.items():
        # e_p reduces to -(row - e_p)
        col = {pos[k]: -x for k, x in row.items() if k != p}
        if col:
            data[p] = col
    return SparseMatrix._trusted(len(free), n, data), free


def left_inverse(m: SparseMatrix) -> SparseMatrix:
    """Some L with L @ m == I for injective m."""
    if rank(m) != m.cols:
        raise ValueError("matrix is not injective")
    sol = ImageSolver(m.T)
    data = {}
    cols = []
    for i in range(m.cols):
        x = sol.solve({i: Fraction(1)}, sparse=True)
        cols.append(x)
    # rows of L are the solutions x_i with m^T x_i = e_i
    for i, x in enumerate(cols):
        for r, v in x.items():
            data.setdefault(r, {})[i] = v
    return SparseMatrix._trusted(m.cols, m.rows, data)


def right_inverse(m: SparseMatrix) -> SparseMatrix:
    """Some R with m @ R == I for surjective m (echelon lift of each unit vector)."""
    sol = ImageSolver(m)
    if sol.rank != m.rows:
        raise ValueError("matrix is not surjective")
    data = {}
    for i in range(m.rows):
        x = sol.solve({i: Fraction(1)}, sparse=True)
        if x:
            data[i] = x
    return SparseMatrix._trusted(m.cols, m.rows, data)
