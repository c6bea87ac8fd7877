"""Mixed complexes, cyclic and periodic cyclic homology, and the SBI sequence.

Two carrier conventions are available:

``"tensor"``
    C_n = A^(x)(n+1) with B = (1 - t) s N, where s inserts the unit of A and
    t(a_0 .. a_n) = (-1)^n a_n (x) a_0 .. a_{n-1}.  Needs a unit.
``"plus"``
    C_0 = A and C_n = A+ (x) A^(x)n, the normalized complex of A+ with the
    augmentation removed.  B(a_0 (x) a) = sum_i (-1)^(ni) 1 (x) a_i .. a_n
    (x) a_0 .. a_(i-1) for a_0 in A, and B vanishes on 1 (x) a.  Works for
    every algebra.

``"auto"`` picks ``tensor`` for unital algebras and ``plus`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import Algebra, regular_bimodule, unitalization
from .complexes import (
    ChainComplex,
    ChainMap,
    HomologyBasis,
    LESReport,
    homology,
    induced_matrix,
    induced_ranks,
    les_check,
)
from .hochschild import DEFAULT_MAX_DEGREE, _check_size, _nonunital_boundaries, hochschild_boundary
from .linalg import SparseMatrix


def _add(acc: dict, k: int, v) -> None:
    s = acc.get(k, 0) + v
    if s:
        acc[k] = s
    else:
        acc.pop(k, None)


@dataclass(eq=False)
class MixedComplex:
    """Carriers C_0..C_top with b_n: C_n -> C_(n-1) and B_n: C_n -> C_(n+1)."""

    dims: dict
    b: dict
    B: dict
    top: int
    carriers: str = ""
    name: str = ""

    def verify(self) -> None:
        for n in range(2, self.top + 1):
            if not (self.b[n - 1] @ self.b[n]).is_zero():
                raise AssertionError(f"b^2 != 0 in degree {n}")
        for n in range(0, self.top - 1):
            if not (self.B[n + 1] @ self.B[n]).is_zero():
                raise AssertionError(f"B^2 != 0 in degree {n}")
        for n in range(0, self.top):
            lhs = self.b[n + 1] @ self.B[n]
            if n >= 1:
                lhs = lhs + self.B[n - 1] @ self.b[n]
            if not lhs.is_zero():
                raise AssertionError(f"bB + Bb != 0 in degree {n}")

    def hochschild(self) -> ChainComplex:
        return ChainComplex(0, self.top, dict(self.dims), dict(self.b), open_top=True,
                            name=f"C({self.name})")


def _resolve(a: Algebra, carriers: str) -> str:
    if carriers == "auto":
        return "tensor" if a.unit is not None else "plus"
    if carriers not in ("tensor", "plus"):
        raise ValueError(f"unknown carrier convention {carriers!r}")
    if carriers == "tensor" and a.unit is None:
        raise ValueError("tensor carriers need a unital algebra")
    return carriers


def _rotate(idx: int, d: int, length: int) -> int:
    """Index of (x_last, x_0, .., x_(length-2)) from that of (x_0 .. x_last)."""
    q, r = divmod(idx, d)
    return r * d ** (length - 1) + q


def _tensor_B(a: Algebra, n: int) -> SparseMatrix:
    d = a.dim
    unit = {k: v for k, v in enumerate(a.unit) if v}
    size_n, size_next = d ** (n + 1), d ** (n + 2)
    t_sign_n = -1 if n % 2 else 1
    t_sign_next = -1 if (n + 1) % 2 else 1
    cols = {}
    for col in range(size_n):
        # N x = sum_i t^i x
        nx: dict = {}
        idx, sign = col, 1
        for _ in range(n + 1):
            _add(nx, idx, sign)
            idx = _rotate(idx, d, n + 1)
            sign *= t_sign_n
        acc: dict = {}
        for y, c in nx.items():
            for u, cu in unit.items():
                z = u * size_n + y
                _add(acc, z, c * cu)
                _add(acc, _rotate(z, d, n + 2), -t_sign_next * c * cu)
        if acc:
            cols[col] = acc
    return SparseMatrix._trusted(size_next, size_n, cols)


def _plus_B(a: Algebra, n: int) -> SparseMatrix:
    d = a.dim
    one = d
    if n == 0:
        return SparseMatrix._trusted((d + 1) * d, d, {i: {one * d + i: Fraction(1)} for i in range(d)})
    size_n = (d + 1) * d ** n
    cols = {}
    for col in range(size_n):
        m, rest = divmod(col, d ** n)
        if m == one:
            continue
        idx = m * d ** n + rest        # (a_0 .. a_n) in A^(n+1)
        acc: dict = {}
        # i = 0 term is the identity rotation; rotate left by i each step
        tup = idx
        for i in range(n + 1):
            sign = -1 if (n * i) % 2 else 1
            _add(acc, one * d ** (n + 1) + tup, sign)
            # left rotation: (x_1 .. x_n, x_0)
            q, r = divmod(tup, d ** n)
            tup = r * d + q
        if acc:
            cols[col] = acc
    return SparseMatrix._trusted((d + 1) * d ** (n + 1), size_n, cols)


def cyclic_operators(a: Algebra, n_max: int = DEFAULT_MAX_DEGREE, carriers: str = "auto",
                     cap: int | None = None, verify: bool = True) -> MixedComplex:
    """The mixed complex (C, b, B) of ``a`` on degrees 0..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    kind = _resolve(a, carriers)
    d = a.dim
    if kind == "tensor":
        _check_size(f"C({a.name})", d ** (n_max + 2), cap)
        m = regular_bimodule(a)
        dims = {n: d ** (n + 1) for n in range(n_max + 1)}
        b = {n: hochschild_boundary(a, m, n) for n in range(1, n_max + 1)}
        B = {n: _tensor_B(a, n) for n in range(n_max)}
    else:
        _check_size(f"C({a.name})", (d + 1) * d ** (n_max + 1), cap)
        dims = {0: d}
        dims.update({n: (d + 1) * d ** n for n in range(1, n_max + 1)})
        b = _nonunital_boundaries(a, unitalization(a), n_max)
        B = {n: _plus_B(a, n) for n in range(n_max)}
    mc = MixedComplex(dims, b, B, n_max, kind, a.name)
    if verify:
        mc.verify()
    return mc


# ---------------------------------------------------------------------------
# total complex


def _tot_blocks(mc: MixedComplex, n: int) -> list[int]:
    """Carrier degrees n, n-2, ... making up Tot_n."""
    return list(range(n, -1, -2))


def total_complex(mc: MixedComplex) -> ChainComplex:
    """Tot_n = C_n + C_(n-2) + ...; D(x_k) = b x_k + B x_(k+1) componentwise."""
    dims = {n: sum(mc.dims[m] for m in _tot_blocks(mc, n)) for n in range(mc.top + 1)}
    d = {}
    for n in range(1, mc.top + 1):
        src = _tot_blocks(mc, n)
        tgt = _tot_blocks(mc, n - 1)
        rows = []
        for r in tgt:
            row = []
            for c in src:
                if c == r + 1:
                    row.append(mc.b[c])
                elif c == r - 1:
                    row.append(mc.B[c])
                else:
                    row.append(SparseMatrix.zeros(mc.dims[r], mc.dims[c]))
            rows.append(row)
        d[n] = linalg.block(rows) if rows else SparseMatrix.zeros(0, dims[n])
    return ChainComplex(0, mc.top, dims, d, open_top=True, name=f"Tot({mc.name})")


def shifted(c: ChainComplex, shift: int, name: str = "") -> ChainComplex:
    """c[shift]: degree n holds c_(n - shift); kept on the window of ``c``."""
    dims = {n: c.dim(n - shift) for n in range(c.lo, c.hi + 1)}
    d = {}
    for n in range(c.lo + 1, c.hi + 1):
        if c.lo < n - shift <= c.hi:
            d[n] = c.boundary(n - shift)
    return ChainComplex(c.lo, c.hi, dims, d, open_top=c.open_top, name=name or f"{c.name}[{shift}]")


def periodicity_map(mc: MixedComplex, tot: ChainComplex, tot_shift: ChainComplex,
                    power: int = 1) -> ChainMap:
    """S^power: Tot -> Tot[2 power], dropping the first ``power`` components."""
    comps = {}
    for n in range(tot.lo, tot.hi + 1):
        blocks = _tot_blocks(mc, n)
        keep = blocks[power:]
        if not keep:
            comps[n] = SparseMatrix.zeros(tot_shift.dim(n), tot.dim(n))
            continue
        skip = sum(mc.dims[m] for m in blocks[:power])
        width = tot.dim(n) - skip
        comps[n] = SparseMatrix._trusted(width, tot.dim(n),
                                         {skip + j: {j: Fraction(1)} for j in range(width)})
    return ChainMap(tot, tot_shift, comps)


def inclusion_map(mc: MixedComplex, c: ChainComplex, tot: ChainComplex) -> ChainMap:
    """I: C -> Tot as the leading component."""
    comps = {}
    for n in range(c.lo, c.hi + 1):
        comps[n] = SparseMatrix._trusted(tot.dim(n), c.dim(n),
                                         {j: {j: Fraction(1)} for j in range(c.dim(n))})
    return ChainMap(c, tot, comps)


def cyclic_homology(a: Algebra, n: int, carriers: str = "auto", cap: int | None = None,
                    certify: bool = False) -> int:
    """dim HC_n(a) from the total complex on columns 0..n."""
    mc = cyclic_operators(a, n + 1, carriers, cap)
    return homology(total_complex(mc), n, n, certify, warn=False).betti(n)


def cyclic_betti(a: Algebra, n_max: int, carriers: str = "auto", cap: int | None = None,
                 certify: bool = False) -> list[int]:
    """HC_0..HC_n_max."""
    mc = cyclic_operators(a, n_max + 1, carriers, cap)
    return homology(total_complex(mc), 0, n_max, certify, warn=False).betti_list()


# ---------------------------------------------------------------------------
# SBI


@dataclass
class SBIReport:
    name: str
    n_max: int
    hh: dict
    hc: dict
    les: LESReport

    @property
    def exact(self) -> bool:
        return self.les.exact

    def to_dict(self):
        les = self.les.to_dict()
        return {
            "algebra": self.name, "max_degree": self.n_max,
            "HH": {str(n): v for n, v in self.hh.items()},
            "HC": {str(n): v for n, v in self.hc.items()},
            "exact": self.exact,
            "junctions": les["junctions"],
            "rank_I": les["rank_i"], "rank_S": les["rank_p"], "rank_B": les["rank_connecting"],
            "B": les["connecting"],
        }


def sbi_check(a: Algebra, n_max: int = DEFAULT_MAX_DEGREE, carriers: str = "auto",
              cap: int | None = None, certify: bool = False) -> SBIReport:
    """Exactness of HH_n -> HC_n -> HC_(n-2) -> HH_(n-1) for n <= n_max - 1.

    0 -> C -> Tot -> Tot[2] -> 0 is split degreewise, so this runs the strict
    long exact sequence check; its connecting map is B on homology.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    mc = cyclic_operators(a, n_max, carriers, cap)
    c = mc.hochschild()
    tot = total_complex(mc)
    tot2 = shifted(tot, 2)
    inc = inclusion_map(mc, c, tot)
    per = periodicity_map(mc, tot, tot2)
    inc.verify()
    per.verify()
    les = les_check(inc, per, 0, n_max - 1, strict=True, certify=certify)
    hh = {n: les.betti["I"][n] for n in range(n_max)}
    hc = {n: les.betti["E"][n] for n in range(n_max)}
    return SBIReport(a.name, n_max, hh, hc, les)


# ---------------------------------------------------------------------------
# periodic cyclic homology


@dataclass(frozen=True)
class Unstabilized:
    parity: int
    stable_dims: tuple

    def __bool__(self):
        return False

    def __str__(self):
        return "unstabilized"


@dataclass
class PeriodicResult:
    parity: int
    k_max: int
    hc: list
    s_ranks: list
    stable_dims: list
    value: int | Unstabilized

    @property
    def stabilized(self) -> bool:
        return not isinstance(self.value, Unstabilized)

    def to_dict(self):
        return {
            "parity": "even" if self.parity == 0 else "odd",
            "k_max": self.k_max,
            "HC": self.hc, "S_ranks": self.s_ranks, "stable_image_dims": self.stable_dims,
            "stabilized": self.stabilized,
            "HP": self.value if self.stabilized else "unstabilized",
        }


def periodic_cyclic(a: Algebra, parity: int | str = 0, k_max: int = 3,
                    carriers: str = "auto", cap: int | None = None,
                    certify: bool = False) -> PeriodicResult:
    """HP_parity by S-stabilization of HC_(parity + 2k), k = 0..k_max.

    V_k = HC_(parity+2k) and W_k is the image of S^(k_max-k): V_(k_max) -> V_k.
    S maps W_(k+1) onto W_k, so it is an isomorphism there exactly when the
    dimensions agree.  Two consecutive such isomorphisms are required; the
    common dimension is returned, otherwise :class:`Unstabilized`.
    """
    if isinstance(parity, str):
        parity = {"even": 0, "odd": 1}[parity]
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    top = parity + 2 * k_max
    mc = cyclic_operators(a, top + 1, carriers, cap)
    tot = total_complex(mc)
    rep = homology(tot, 0, top, certify, warn=False)
    hc = [rep.betti(parity + 2 * k) for k in range(k_max + 1)]
    s_ranks = []
    stable = [0] * (k_max + 1)
    stable[k_max] = hc[k_max]
    one = None
    for power in range(1, k_max + 1):
        f = periodicity_map(mc, tot, shifted(tot, 2 * power), power)
        ranks = induced_ranks(f, top, certify)
        stable[k_max - power] = ranks[top]
        if power == 1:
            one = ranks
    s_ranks = [one[parity + 2 * k] for k in range(1, k_max + 1)]
    value: int | Unstabilized = Unstabilized(parity, tuple(stable))
    for k in range(k_max - 1):
        if stable[k] == stable[k + 1] == stable[k + 2]:
            value = stable[k]
            break
    return PeriodicResult(parity, k_max, hc, s_ranks, stable, value)


@dataclass
class CyclicReport:
    name: str
    n_max: int
    hh: list
    hc: list
    s_maps: dict = field(repr=False)
    hp: dict

    def to_dict(self):
        return {
            "algebra": self.name, "max_degree": self.n_max,
            "HH": self.hh, "HC": self.hc,
            "S_maps": {str(n): [[str(x) for x in row] for row in m.to_dense()]
                       for n, m in self.s_maps.items()},
            "HP": {k: v.to_dict() for k, v in self.hp.items()},
        }


def cyclic_report(a: Algebra, n_max: int = DEFAULT_MAX_DEGREE, k_max: int | None = None,
                  carriers: str = "auto", cap: int | None = None, certify: bool = False,
                  periodic: bool = True) -> CyclicReport:
    """HH and HC up to n_max with explicit S matrices, plus HP when requested."""
    mc = cyclic_operators(a, n_max + 1, carriers, cap)
    tot = total_complex(mc)
    hc = homology(tot, 0, n_max, certify, warn=False).betti_list()
    hh = homology(mc.hochschild(), 0, n_max, certify, warn=False).betti_list()
    tot2 = shifted(tot, 2)
    per = periodicity_map(mc, tot, tot2)
    s_maps = {}
    for n in range(2, n_max + 1):
        s_maps[n] = induced_matrix(per, n, HomologyBasis(tot, n), HomologyBasis(tot, n - 2))
    hp = {}
    if periodic:
        km = k_max if k_max is not None else 3
        hp = {"even": periodic_cyclic(a, 0, km, carriers, cap, certify),
              "odd": periodic_cyclic(a, 1, km, carriers, cap, certify)}
    return CyclicReport(a.name, n_max, hh, hc, s_maps, hp)
