"""Hochschild and bar complexes, H-unitality, filtrations and excision.

Basis of M (x) A^(x)n: the tuple (m, i_1, ..., i_n) sits at the row-major
mixed-radix index ``m * da**n + i_1 * da**(n-1) + ... + i_n``.  All matrices
below use that encoding, so they are reproducible bit for bit.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import linalg
from .algebra import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    Extension,
    ModuleExtension,
    Report,
    descend_bimodule,
    find_one_sided_unit,
    regular_bimodule,
    restrict_bimodule,
    sub_bimodule,
    unitalization,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    LESReport,
    homology,
    is_quasi_iso,
    les_check,
)
from .errors import NotAConflation, SizeLimit, TruncationWarning
from .linalg import SparseMatrix

DEFAULT_SIZE_CAP = 200_000
DEFAULT_MAX_DEGREE = 4
ONE = Fraction(1)


def size_cap(value: int | None = None) -> int:
    """Explicit value, else $HOCHEX_SIZE_CAP, else the default."""
    if value is not None:
        return int(value)
    env = os.environ.get("HOCHEX_SIZE_CAP")
    return int(env) if env else DEFAULT_SIZE_CAP


def _check_size(what: str, size: int, cap: int | None) -> None:
    cap = size_cap(cap)
    if size > cap:
        raise SizeLimit(what, size, cap)


def tensor_index(digits, dims) -> int:
    """Row-major mixed-radix index of ``digits`` in a space with factor ``dims``."""
    idx = 0
    for d, r in zip(digits, dims):
        if not 0 <= d < r:
            raise ValueError(f"digit {d} out of range {r}")
        idx = idx * r + d
    return idx


def tensor_digits(index: int, dims) -> tuple:
    out = []
    for r in reversed(dims):
        index, d = divmod(index, r)
        out.append(d)
    return tuple(reversed(out))


def _add(acc: dict, k: int, v) -> None:
    s = acc.get(k, 0) + v
    if s:
        acc[k] = s
    else:
        acc.pop(k, None)


Act = Callable[[int, int], dict]


def _tensor_boundary(dm: int, da: int, n: int, right: Act, mul: Act,
                     left: Act | None) -> SparseMatrix:
    """b on M (x) A^n -> M (x) A^(n-1); the cyclic term is skipped when ``left`` is None."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pw = [da ** k for k in range(n + 1)]
    cols = {}
    for col in range(dm * pw[n]):
        m, t = divmod(col, pw[n])
        xs = [(t // pw[n - 1 - s]) % da for s in range(n)]
        acc: dict = {}
        base = t % pw[n - 1]
        for mm, c in right(m, xs[0]).items():
            _add(acc, mm * pw[n - 1] + base, c)
        for s in range(n - 1):
            prefix = t // pw[n - s]
            suffix = t % pw[n - s - 2]
            prod = mul(xs[s], xs[s + 1])
            if not prod:
                continue
            sign = -1 if s % 2 == 0 else 1
            head = m * pw[n - 1]
            for k, c in prod.items():
                _add(acc, head + (prefix * da + k) * pw[n - s - 2] + suffix, sign * c)
        if left is not None:
            sign = -1 if n % 2 else 1
            rest = t // da
            for mm, c in left(xs[-1], m).items():
                _add(acc, mm * pw[n - 1] + rest, sign * c)
        if acc:
            cols[col] = acc
    return SparseMatrix._trusted(dm * pw[n - 1], dm * pw[n], cols)


def hochschild_boundary(a: Algebra, m: Bimodule, n: int) -> SparseMatrix:
    """b: M (x) A^n -> M (x) A^(n-1), including the cyclic term a_n m (x) ..."""
    return _tensor_boundary(m.dim, a.dim, n, m.right_act, a.product, m.left_act)


def bar_boundary(a: Algebra, m: Bimodule | None, n: int) -> SparseMatrix:
    """b' without the cyclic term.

    With ``m`` None this is b': A^n -> A^(n-1) (n >= 2); otherwise it maps
    M (x) A^n -> M (x) A^(n-1) using only the right action of M.
    """
    if m is None:
        if n < 2:
            raise ValueError("b' on A^n needs n >= 2")
        return _tensor_boundary(a.dim, a.dim, n - 1, a.product, a.product, None)
    return _tensor_boundary(m.dim, a.dim, n, m.right_act, a.product, None)


def hh_complex(a: Algebra, m: Bimodule | None = None, n_max: int = DEFAULT_MAX_DEGREE,
               cap: int | None = None, verify: bool = True) -> ChainComplex:
    """HHchain(A, M) in degrees 0..n_max; the top degree is flagged truncated."""
    m = m or regular_bimodule(a)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    _check_size(f"HHchain({a.name},{m.name})", m.dim * a.dim ** (n_max + 1), cap)
    dims = {n: m.dim * a.dim ** n for n in range(n_max + 1)}
    d = {n: hochschild_boundary(a, m, n) for n in range(1, n_max + 1)}
    c = ChainComplex(0, n_max, dims, d, open_top=True, name=f"HH({a.name},{m.name})")
    if verify:
        c.verify()
    return c


def _nonunital_boundaries(a: Algebra, aplus: Algebra, n_max: int) -> dict:
    da = a.dim
    d = {}
    for n in range(1, n_max + 1):
        mat = _tensor_boundary(da + 1, da, n, aplus.product, a.product, aplus.product)
        if n == 1:
            # lands in A (the kernel of the augmentation); drop the unit row
            if any(da in col for _, col in mat.columns()):
                raise AssertionError("degree-one boundary leaves A")
            mat = SparseMatrix._trusted(da, mat.cols, dict(mat.columns()))
        d[n] = mat
    return d


def hh_complex_nonunital(a: Algebra, n_max: int = DEFAULT_MAX_DEGREE, cap: int | None = None,
                         verify: bool = True) -> ChainComplex:
    """HHchain(A): A in degree 0 and A+ (x) A^n above, for any A."""
    _check_size(f"HHchain({a.name})", (a.dim + 1) * a.dim ** (n_max + 1), cap)
    aplus = unitalization(a)
    dims = {0: a.dim}
    dims.update({n: (a.dim + 1) * a.dim ** n for n in range(1, n_max + 1)})
    c = ChainComplex(0, n_max, dims, _nonunital_boundaries(a, aplus, n_max), open_top=True,
                     name=f"HH({a.name})")
    if verify:
        c.verify()
    return c


def _plus(f: SparseMatrix) -> SparseMatrix:
    return linalg.block([[f, None], [None, SparseMatrix.identity(1)]])


def nonunital_induced_map(f: AlgebraMorphism, src: ChainComplex, tgt: ChainComplex) -> ChainMap:
    """f+ (x) f^(x)n between non-unital Hochschild complexes."""
    comps = {0: f.matrix}
    fp = _plus(f.matrix)
    power = None
    for n in range(1, min(src.hi, tgt.hi) + 1):
        power = f.matrix if power is None else linalg.kron(power, f.matrix)
        comps[n] = linalg.kron(fp, power)
    return ChainMap(src, tgt, comps)


def coefficient_induced_map(fm: SparseMatrix, fa: SparseMatrix, src: ChainComplex,
                            tgt: ChainComplex) -> ChainMap:
    """fm (x) fa^(x)n between complexes HHchain(A, M) -> HHchain(B, N)."""
    comps = {0: fm}
    power = None
    for n in range(1, min(src.hi, tgt.hi) + 1):
        power = fa if power is None else linalg.kron(power, fa)
        comps[n] = linalg.kron(fm, power)
    return ChainMap(src, tgt, comps)


def unital_comparison_map(a: Algebra, n_max: int = DEFAULT_MAX_DEGREE,
                          cap: int | None = None) -> ChainMap:
    """HHchain(A, A) -> HHchain(A) induced by A -> A+."""
    src = hh_complex(a, None, n_max, cap)
    tgt = hh_complex_nonunital(a, n_max, cap)
    incl = SparseMatrix._trusted(a.dim + 1, a.dim, {i: {i: ONE} for i in range(a.dim)})
    comps = {0: SparseMatrix.identity(a.dim)}
    for n in range(1, n_max + 1):
        comps[n] = linalg.kron(incl, SparseMatrix.identity(a.dim ** n))
    return ChainMap(src, tgt, comps)


# ---------------------------------------------------------------------------
# cochains


def hochschild_coboundary(a: Algebra, m: Bimodule, n: int) -> SparseMatrix:
    """b*: Hom(A^n, M) -> Hom(A^(n+1), M).

    (b*f)(a_1..a_{n+1}) = a_1 f(a_2..) + sum_i (-1)^i f(.., a_i a_{i+1}, ..)
    + (-1)^(n+1) f(a_1..a_n) a_{n+1}.  The basis vector (x, i_1..i_n) is the
    cochain sending e_{i_1} (x) .. (x) e_{i_n} to x_x and other basis tuples to 0.
    """
    da, dm = a.dim, m.dim
    pw = [da ** k for k in range(n + 2)]
    # preimages of each basis vector under multiplication
    pre: dict = {}
    for (p, q), prod in a.table.items():
        for k, c in prod.items():
            pre.setdefault(k, []).append((p, q, c))
    cols = {}
    for col in range(dm * pw[n]):
        x, t = divmod(col, pw[n])
        acc: dict = {}
        for j in range(da):
            for xx, c in m.left_act(j, x).items():
                _add(acc, xx * pw[n + 1] + j * pw[n] + t, c)
        for s in range(n):
            # position s of the n-tuple is split into the product of slots s, s+1
            digit = (t // pw[n - 1 - s]) % da
            prefix = t // pw[n - s]
            suffix = t % pw[n - 1 - s]
            sign = 1 if (s + 1) % 2 == 0 else -1
            for p, q, c in pre.get(digit, ()):
                row = x * pw[n + 1] + ((prefix * da + p) * da + q) * pw[n - 1 - s] + suffix
                _add(acc, row, sign * c)
        sign = -1 if (n + 1) % 2 else 1
        for j in range(da):
            for xx, c in m.right_act(x, j).items():
                _add(acc, xx * pw[n + 1] + t * da + j, sign * c)
        if acc:
            cols[col] = acc
    return SparseMatrix._trusted(dm * pw[n + 1], dm * pw[n], cols)


def hh_cochain(a: Algebra, m: Bimodule | None = None, n_max: int = DEFAULT_MAX_DEGREE,
               cap: int | None = None, verify: bool = True) -> ChainComplex:
    """Hochschild cochains; cochain degree n is stored at chain degree -n."""
    m = m or regular_bimodule(a)
    _check_size(f"HHcochain({a.name},{m.name})", m.dim * a.dim ** (n_max + 1), cap)
    dims = {-n: m.dim * a.dim ** n for n in range(n_max + 1)}
    d = {-n: hochschild_coboundary(a, m, n) for n in range(n_max)}
    c = ChainComplex(-n_max, 0, dims, d, open_bottom=True, name=f"HC*({a.name},{m.name})")
    if verify:
        c.verify()
    return c


def cohomology(c: ChainComplex, n_max: int | None = None, certify: bool = False) -> list[int]:
    """Betti numbers H^0..H^n_max of a cochain complex built by :func:`hh_cochain`."""
    top = -c.lo if n_max is None else n_max
    rep = homology(c, -top, 0, certify, warn=False)
    return [rep.betti(-n) for n in range(top + 1)]


# ---------------------------------------------------------------------------
# H-unitality


def bar_complex(a: Algebra, n_max: int, cap: int | None = None) -> ChainComplex:
    """(A^(x)n, b') in degrees 1..n_max+1, top flagged."""
    _check_size(f"bar({a.name})", a.dim ** (n_max + 1), cap)
    dims = {n: a.dim ** n for n in range(1, n_max + 2)}
    d = {n: bar_boundary(a, None, n) for n in range(2, n_max + 2)}
    return ChainComplex(1, n_max + 1, dims, d, open_top=True, name=f"bar({a.name})")


@dataclass
class HUnitalityCertificate:
    mode: str
    unit: list | None = None
    homotopy: dict | None = field(default=None, repr=False)
    failure_degree: int | None = None
    checked: tuple = ()
    betti: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.mode != "failed"

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {
            "mode": self.mode,
            "ok": self.ok,
            "unit": None if self.unit is None else [str(x) for x in self.unit],
            "failure_degree": self.failure_degree,
            "checked_degrees": list(self.checked),
            "betti": {str(k): v for k, v in self.betti.items()},
            "homotopy_shapes": None if self.homotopy is None else
            {str(n): list(s.shape) for n, s in self.homotopy.items()},
        }


def unit_homotopy(a: Algebra, e: list, side: str, n_max: int) -> dict:
    """s_n: A^n -> A^(n+1); e (x) x for a left unit, (-1)^(n-1) x (x) e for a right unit."""
    d = a.dim
    ev = {k: linalg.as_fraction(v) for k, v in enumerate(e) if v}
    out = {}
    for n in range(1, n_max + 1):
        size = d ** n
        cols = {}
        if side == "left":
            for col in range(size):
                cols[col] = {k * size + col: v for k, v in ev.items()}
        else:
            sign = 1 if n % 2 else -1
            for col in range(size):
                cols[col] = {col * d + k: sign * v for k, v in ev.items()}
        out[n] = SparseMatrix._trusted(d ** (n + 1), size, cols)
    return out


def verify_homotopy(c: ChainComplex, s: dict, lo: int, hi: int) -> int | None:
    """First degree in lo..hi where d s + s d != Id, or None."""
    for n in range(lo, hi + 1):
        total = c.boundary(n + 1) @ s[n]
        if n - 1 in s and c.lo < n <= c.hi:
            total = total + s[n - 1] @ c.boundary(n)
        if total != SparseMatrix.identity(c.dim(n)):
            return n
    return None


def h_unitality_check(a: Algebra, n_max: int = DEFAULT_MAX_DEGREE, cap: int | None = None,
                      certify: bool = False) -> HUnitalityCertificate:
    """Certify exactness of (A^(x)n, b') for n = 1..n_max.

    A one-sided unit yields an explicit contracting homotopy, checked as a
    matrix identity.  Without one, exactness is checked by ranks and the
    first degree with homology is reported on failure.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    bar = bar_complex(a, n_max, cap)
    checked = tuple(range(1, n_max + 1))
    for side in ("left", "right"):
        e = find_one_sided_unit(a, side)
        if e is None:
            continue
        s = unit_homotopy(a, e, side, n_max)
        bad = verify_homotopy(bar, s, 1, n_max)
        if bad is None:
            return HUnitalityCertificate(f"{side}-unit homotopy", list(e), s, None, checked,
                                         {n: 0 for n in checked})
    rep = homology(bar, 1, n_max, certify, warn=False)
    betti = {n: rep.betti(n) for n in checked}
    for n in checked:
        if betti[n]:
            return HUnitalityCertificate("failed", None, None, n, checked, betti)
    return HUnitalityCertificate("rank-verified", None, None, None, checked, betti)


def h_unitary_module_check(a: Algebra, m: Bimodule, n_max: int = DEFAULT_MAX_DEGREE,
                           cap: int | None = None, certify: bool = False) -> Report:
    """Exactness of (M (x) A^n, b') for n = 0..n_max (M as a right A-module)."""
    _check_size(f"bar({m.name},{a.name})", m.dim * a.dim ** (n_max + 1), cap)
    dims = {n: m.dim * a.dim ** n for n in range(n_max + 2)}
    d = {n: bar_boundary(a, m, n) for n in range(1, n_max + 2)}
    c = ChainComplex(0, n_max + 1, dims, d, open_top=True, name=f"bar({m.name},{a.name})")
    rep = homology(c, 0, n_max, certify, warn=False)
    for n in range(n_max + 1):
        if rep.betti(n):
            return Report(False, f"homology in degree {n}", (n,))
    return Report(True)


# ---------------------------------------------------------------------------
# filtration probes


def _slots(n: int, p: int) -> tuple[int, int]:
    """(number of ideal slots, number of total-algebra slots) of F_p in degree n."""
    k = max(n - p, 0)
    return k, n - k


def _filtration_embedding(dm: int, incl: SparseMatrix, de: int, n: int, p: int) -> SparseMatrix:
    k, q = _slots(n, p)
    return linalg.kron_all([SparseMatrix.identity(dm)] + [incl] * k
                           + [SparseMatrix.identity(de)] * q)


def filtration_complex(ext: Extension, m: Bimodule, p: int, n_max: int,
                       ambient: ChainComplex | None = None) -> tuple[ChainComplex, dict]:
    """F_p: the subcomplex of HHchain(E, M) on M (x) I^(n-p) (x) E^p (fewer I slots in low degree).

    Returns the complex and its degreewise embeddings into the ambient complex.
    """
    E = ext.total
    amb = ambient or hh_complex(E, m, n_max)
    incl = ext.incl.matrix
    linv = linalg.left_inverse(incl)
    emb = {n: _filtration_embedding(m.dim, incl, E.dim, n, p) for n in range(n_max + 1)}
    d = {}
    for n in range(1, n_max + 1):
        k, q = _slots(n - 1, p)
        back = linalg.kron_all([SparseMatrix.identity(m.dim)] + [linv] * k
                               + [SparseMatrix.identity(E.dim)] * q)
        image = amb.boundary(n) @ emb[n]
        dn = back @ image
        if emb[n - 1] @ dn != image:
            raise AssertionError(f"F_{p} is not a subcomplex in degree {n}")
        d[n] = dn
    dims = {n: emb[n].cols for n in range(n_max + 1)}
    return ChainComplex(0, n_max, dims, d, open_top=True, name=f"F_{p}"), emb


def filtration_inclusion(ext: Extension, m: Bimodule, fp: ChainComplex, fq: ChainComplex,
                         p: int) -> ChainMap:
    """F_p -> F_{p+1}: the last ideal slot is included into E."""
    E, incl = ext.total, ext.incl.matrix
    comps = {}
    for n in range(min(fp.hi, fq.hi) + 1):
        k, q = _slots(n, p)
        if k == 0:
            comps[n] = SparseMatrix.identity(fp.dim(n))
        else:
            comps[n] = linalg.kron_all([SparseMatrix.identity(m.dim)]
                                       + [SparseMatrix.identity(ext.ideal.dim)] * (k - 1)
                                       + [incl] + [SparseMatrix.identity(E.dim)] * q)
    return ChainMap(fp, fq, comps)


def quotient_filtration_complex(ext: Extension, m: Bimodule, p: int, n_max: int,
                                ambient: ChainComplex | None = None) -> ChainComplex:
    """F~_p: HHchain(E, M) with the first min(n, p) tensor slots pushed to Q.

    Needs the ideal to act trivially on M, so that the kernel of the
    projection is a subcomplex; the differential is P d sigma.
    """
    E, Q = ext.total, ext.quotient
    amb = ambient or hh_complex(E, m, n_max)
    proj, sec = ext.proj.matrix, ext.section

    def factors(n, f_q):
        k = min(n, p)
        return [SparseMatrix.identity(m.dim)] + [f_q] * k + [SparseMatrix.identity(E.dim)] * (n - k)

    P = {n: linalg.kron_all(factors(n, proj)) for n in range(n_max + 1)}
    S = {n: linalg.kron_all(factors(n, sec)) for n in range(n_max + 1)}
    d = {}
    for n in range(1, n_max + 1):
        dn = P[n - 1] @ amb.boundary(n) @ S[n]
        # P d kills ker P exactly when ker P is a subcomplex
        if P[n - 1] @ amb.boundary(n) != dn @ P[n]:
            raise NotAConflation(f"kernel of F~_{p} projection is not a subcomplex in degree {n}")
        d[n] = dn
    dims = {n: P[n].rows for n in range(n_max + 1)}
    return ChainComplex(0, n_max, dims, d, open_top=True, name=f"F~_{p}")


@dataclass
class FiltrationReport:
    p: int
    lo: int
    hi: int
    quasi_iso: bool
    witness: int | None
    unitary: Report | None
    deflation_quasi_iso: bool | None = None
    deflation_witness: int | None = None
    note: str = ""

    def to_dict(self):
        return {
            "p": self.p, "range": [self.lo, self.hi], "quasi_iso": self.quasi_iso,
            "witness": self.witness,
            "unitary": None if self.unitary is None else
            {"ok": self.unitary.ok, "message": self.unitary.message},
            "deflation_quasi_iso": self.deflation_quasi_iso,
            "deflation_witness": self.deflation_witness, "note": self.note,
        }


def _ideal_acts_trivially(ext: Extension, m: Bimodule) -> bool:
    r = restrict_bimodule(m, ext.incl)
    return not r.left and not r.right


def filtration_probe(ext: Extension, m: Bimodule | None = None, p: int = 0,
                     n_max: int = 3, check_unitary: bool = True, cap: int | None = None,
                     certify: bool = False) -> FiltrationReport:
    """Is F_p -> F_{p+1} a quasi-isomorphism on degrees 0..n_max?

    ``m`` is an E-bimodule (default: the ideal itself).  Complexes are built
    one degree higher than the verdict range.  When the ideal acts trivially
    on ``m`` the deflation F~_p -> F~_{p+1} is tested as well.
    """
    E = ext.total
    m = m or sub_bimodule(regular_bimodule(E), ext.incl.matrix, name=ext.ideal.name)
    top = n_max + 1
    _check_size(f"F_{p + 1}", m.dim * E.dim ** (top + 1), cap)
    unitary = None
    if check_unitary:
        unitary = h_unitary_module_check(ext.ideal, restrict_bimodule(m, ext.incl), n_max, cap,
                                         certify)
    amb = hh_complex(E, m, top, cap)
    fp, _ = filtration_complex(ext, m, p, top, amb)
    fq, _ = filtration_complex(ext, m, p + 1, top, amb)
    inc = filtration_inclusion(ext, m, fp, fq, p)
    inc.verify()
    v = is_quasi_iso(inc, 0, n_max, certify, warn=False)
    rep = FiltrationReport(p, 0, n_max, v.ok, v.witness, unitary)
    if _ideal_acts_trivially(ext, m):
        gp = quotient_filtration_complex(ext, m, p, top, amb)
        gq = quotient_filtration_complex(ext, m, p + 1, top, amb)
        proj = ext.proj.matrix
        comps = {}
        for n in range(top + 1):
            if n <= p:
                comps[n] = SparseMatrix.identity(gq.dim(n))
            else:
                comps[n] = linalg.kron_all([SparseMatrix.identity(m.dim)]
                                           + [SparseMatrix.identity(ext.quotient.dim)] * p
                                           + [proj] + [SparseMatrix.identity(E.dim)] * (n - p - 1))
        defl = ChainMap(gp, gq, comps)
        defl.verify()
        w = is_quasi_iso(defl, 0, n_max, certify, warn=False)
        rep.deflation_quasi_iso, rep.deflation_witness = w.ok, w.witness
    else:
        rep.note = "ideal acts nontrivially on M; deflation probe skipped"
    return rep


# ---------------------------------------------------------------------------
# excision


@dataclass
class ExcisionReport:
    name: str
    n_max: int
    h_unitality: HUnitalityCertificate
    les: LESReport
    coefficients: bool = False

    @property
    def betti(self) -> dict:
        return self.les.betti

    @property
    def cofibre(self) -> bool:
        return self.les.cofibre

    @property
    def exact(self) -> bool:
        return self.les.exact

    def to_dict(self):
        les = self.les.to_dict()
        return {
            "extension": self.name,
            "max_degree": self.n_max,
            "coefficients": self.coefficients,
            "h_unitality": self.h_unitality.to_dict(),
            "betti": les["betti"],
            "cofibre": {"ok": self.cofibre, "degrees": les["cofibre"]},
            "les": {"exact": self.exact, "junctions": les["junctions"],
                    "rank_i": les["rank_i"], "rank_p": les["rank_p"],
                    "rank_connecting": les["rank_connecting"]},
            "connecting": les["connecting"],
        }


def excision_suite(ext: Extension, n_max: int = DEFAULT_MAX_DEGREE,
                   mext: ModuleExtension | None = None, cap: int | None = None,
                   certify: bool = False, explicit: bool = True) -> ExcisionReport:
    """Check the Hochschild excision sequence of ``ext`` on degrees 0..n_max-1.

    Without coefficients the non-unital complexes of I, E and Q are compared;
    with a module extension M_I -> M_E -> M_Q of E-bimodules the coefficient
    complexes HHchain(I, M_I) -> HHchain(E, M_E) -> HHchain(Q, M_Q) are used.
    Neither triple is a degreewise conflation, so the sequence is assembled
    through the cofibre map cone(i) -> Q-side.
    """
    I, E, Q = ext.ideal, ext.total, ext.quotient
    hu = h_unitality_check(I, n_max, cap, certify)
    if mext is None:
        cI = hh_complex_nonunital(I, n_max, cap)
        cE = hh_complex_nonunital(E, n_max, cap)
        cQ = hh_complex_nonunital(Q, n_max, cap)
        i = nonunital_induced_map(ext.incl, cI, cE)
        p = nonunital_induced_map(ext.proj, cE, cQ)
    else:
        mI = restrict_bimodule(mext.sub, ext.incl)
        mQ = descend_bimodule(mext.quot, ext)
        cI = hh_complex(I, mI, n_max, cap)
        cE = hh_complex(E, mext.total, n_max, cap)
        cQ = hh_complex(Q, mQ, n_max, cap)
        i = coefficient_induced_map(mext.incl, ext.incl.matrix, cI, cE)
        p = coefficient_induced_map(mext.proj, ext.proj.matrix, cE, cQ)
    i.verify()
    p.verify()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        les = les_check(i, p, 0, n_max - 1, strict=False, certify=certify, explicit=explicit)
    return ExcisionReport(ext.name, n_max, hu, les, mext is not None)
