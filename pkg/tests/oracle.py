"""Independent dense recomputation used to freeze expected values.

Nothing here imports the library's linear algebra or complex builders: the
only shared input is an algebra's structure constants.  Matrices are dense
lists of Fractions, tensor bases are enumerated with itertools.product and
looked up through explicit tuple dictionaries, and ranks come from plain
Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# dense linear algebra


def _integer_rows(mat):
    out = []
    for row in mat:
        den = 1
        for x in row:
            if x:
                den = lcm(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in row]
        if any(ints):
            out.append(ints)
    return out


def rank(mat) -> int:
    """Rank over Q by fraction-free Gaussian elimination on dense integer rows."""
    if not mat or not mat[0]:
        return 0
    rows = _integer_rows(mat)
    if rows and len(rows) > len(rows[0]):
        rows = _integer_rows([list(c) for c in zip(*rows)])
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                new = [pv * x - f * y for x, y in zip(rows[i], prow)]
                g = 0
                for x in new:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                rows[i] = [x // g for x in new] if g > 1 else new
        r += 1
        if r == len(rows):
            break
    return r


def kernel(mat: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    rows = [list(r) for r in mat]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        out.append(v)
    return out


def matmul(a, b):
    if not a or not b:
        return [[ZERO] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def columns_to_matrix(cols: list[list[Fraction]], nrows: int):
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]


def is_zero(m) -> bool:
    return all(x == 0 for row in m for x in row)


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# algebra data


class Dense:
    """Structure constants c[i][j] as dense coefficient lists."""

    def __init__(self, dim, table, unit=None):
        self.dim = dim
        self.c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), prod in table.items():
            for k, v in prod.items():
                self.c[i][j][k] = Fraction(v)
        self.unit = None if unit is None else [Fraction(x) for x in unit]

    @classmethod
    def of(cls, a):
        return cls(a.dim, a.table, a.unit)

    def plus(self):
        """Adjoin a unit at the last index."""
        d = self.dim
        table = {}
        for i in range(d):
            for j in range(d):
                prod = {k: v for k, v in enumerate(self.c[i][j]) if v}
                if prod:
                    table[(i, j)] = prod
            table[(i, d)] = {i: 1}
            table[(d, i)] = {i: 1}
        table[(d, d)] = {d: 1}
        return Dense(d + 1, table, [0] * d + [1])


def _tensor_index(dims):
    tuples = list(product(*[range(d) for d in dims]))
    return tuples, {t: i for i, t in enumerate(tuples)}


def hochschild_matrix(alg: Dense, left, right, dm: int, n: int, cyclic: bool = True):
    """Dense b on M (x) A^n; left[i][m] and right[m][i] are coefficient lists over M."""
    da = alg.dim
    src, _ = _tensor_index([dm] + [da] * n)
    _, tgt_idx = _tensor_index([dm] + [da] * (n - 1))
    mat = zeros(len(tgt_idx), len(src))
    for col, t in enumerate(src):
        m, xs = t[0], t[1:]
        for mm, v in enumerate(right[m][xs[0]]):
            if v:
                mat[tgt_idx[(mm,) + xs[1:]]][col] += v
        for j in range(n - 1):
            for k, v in enumerate(alg.c[xs[j]][xs[j + 1]]):
                if v:
                    new = (m,) + xs[:j] + (k,) + xs[j + 2:]
                    mat[tgt_idx[new]][col] += (-1) ** (j + 1) * v
        if cyclic:
            for mm, v in enumerate(left[xs[-1]][m]):
                if v:
                    mat[tgt_idx[(mm,) + xs[:-1]]][col] += (-1) ** n * v
    return mat


def regular_actions(alg: Dense):
    left = [[alg.c[i][m] for m in range(alg.dim)] for i in range(alg.dim)]
    right = [[alg.c[m][i] for i in range(alg.dim)] for m in range(alg.dim)]
    return left, right


def betti_from_boundaries(dims: list[int], mats: dict) -> list[int]:
    """mats[n] : C_n -> C_{n-1}; homology for every listed degree (zero map when absent)."""
    ranks = {n: rank(m) for n, m in mats.items()}
    return [dims[n] - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in range(len(dims))]


def hh_betti(alg: Dense, n_valid: int, left=None, right=None, dm=None) -> list[int]:
    """HH_0..HH_{n_valid-1}(A, M), M regular unless actions are given."""
    if left is None:
        left, right = regular_actions(alg)
        dm = alg.dim
    mats = {n: hochschild_matrix(alg, left, right, dm, n) for n in range(1, n_valid + 1)}
    dims = [dm * alg.dim ** n for n in range(n_valid + 1)]
    return betti_from_boundaries(dims, mats)[:n_valid]


def nonunital_boundaries(alg: Dense, n_top: int) -> dict:
    plus = alg.plus()
    d = alg.dim
    left = [[plus.c[i][m] for m in range(d + 1)] for i in range(d)]
    right = [[plus.c[m][i] for i in range(d)] for m in range(d + 1)]
    mats = {}
    for n in range(1, n_top + 1):
        m = hochschild_matrix(alg, left, right, d + 1, n)
        if n == 1:
            # keep rows of A (m index < d) only; row of the adjoined unit must vanish
            assert all(v == 0 for v in m[d])
            m = m[:d]
        mats[n] = m
    return mats


def nonunital_betti(alg: Dense, n_valid: int) -> list[int]:
    mats = nonunital_boundaries(alg, n_valid)
    d = alg.dim
    dims = [d] + [(d + 1) * d ** n for n in range(1, n_valid + 1)]
    return betti_from_boundaries(dims, mats)[:n_valid]


def bar_betti(alg: Dense, n_valid: int) -> list[int]:
    """Homology of (A^n, b') for n = 1..n_valid."""
    left, right = regular_actions(alg)
    mats = {}
    for n in range(2, n_valid + 2):
        mats[n] = hochschild_matrix(alg, left, right, alg.dim, n - 1, cyclic=False)
    dims = [0] + [alg.dim ** n for n in range(1, n_valid + 2)]
    return betti_from_boundaries(dims, mats)[1:n_valid + 1]


def cochain_betti(alg: Dense, n_valid: int, dual: bool = False) -> list[int]:
    """H^0..H^{n_valid-1}(A, M) for M = A or M = A* (dense b* formula)."""
    d = alg.dim
    if dual:
        # (a.f)(x) = f(x a), (f.a)(x) = f(a x)
        left = [[[alg.c[x][i][m] for x in range(d)] for m in range(d)] for i in range(d)]
        right = [[[alg.c[i][x][m] for x in range(d)] for i in range(d)] for m in range(d)]
    else:
        left, right = regular_actions(alg)
    dm = d
    mats = {}
    for n in range(0, n_valid + 1):
        src, _ = _tensor_index([dm] + [d] * n)
        _, tgt = _tensor_index([dm] + [d] * (n + 1))
        mat = zeros(len(tgt), len(src))
        for col, t in enumerate(src):
            x, idx = t[0], t[1:]
            # a_1 f(a_2..)
            for j in range(d):
                for xx, v in enumerate(left[j][x]):
                    if v:
                        mat[tgt[(xx, j) + idx]][col] += v
            # f(.., a_i a_{i+1}, ..)
            for s in range(n):
                for p in range(d):
                    for q in range(d):
                        v = alg.c[p][q][idx[s]]
                        if v:
                            mat[tgt[(x,) + idx[:s] + (p, q) + idx[s + 1:]]][col] += (-1) ** (s + 1) * v
            for j in range(d):
                for xx, v in enumerate(right[x][j]):
                    if v:
                        mat[tgt[(xx,) + idx + (j,)]][col] += (-1) ** (n + 1) * v
        mats[n] = mat
    ranks = {n: rank(m) for n, m in mats.items()}
    return [dm * d ** n - ranks[n] - (ranks[n - 1] if n >= 1 else 0) for n in range(n_valid)]


# ---------------------------------------------------------------------------
# homology of maps


def induced_rank(f, d_src, d_tgt_next, dim_src: int, dim_tgt: int) -> int:
    """rank of H(f): H_n(src) -> H_m(tgt), from ranks only.

    With M = [[f, d_tgt_next], [d_src, 0]], rank M = rank d_src + dim(f Z + B),
    so the induced rank is rank M - rank d_src - rank d_tgt_next.
    """
    d_src = d_src if d_src else []
    d_tgt_next = d_tgt_next if d_tgt_next and d_tgt_next[0] else []
    nb = len(d_tgt_next[0]) if d_tgt_next else 0
    top = [list(f[r]) + (list(d_tgt_next[r]) if nb else []) for r in range(dim_tgt)]
    bottom = [list(row) + [ZERO] * nb for row in d_src]
    return rank(top + bottom) - rank(d_src) - rank(d_tgt_next)


def kron(a, b):
    ra, ca, rb, cb = len(a), len(a[0]), len(b), len(b[0])
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            if a[i][j]:
                for k in range(rb):
                    for l in range(cb):
                        if b[k][l]:
                            out[i * rb + k][j * cb + l] = a[i][j] * b[k][l]
    return out


def kron_all(ms):
    out = ms[0]
    for m in ms[1:]:
        out = kron(out, m)
    return out


def plus_matrix(f):
    r, c = len(f), len(f[0])
    out = zeros(r + 1, c + 1)
    for i in range(r):
        for j in range(c):
            out[i][j] = f[i][j]
    out[r][c] = Fraction(1)
    return out


def excision_oracle(I: Dense, E: Dense, Q: Dense, incl, proj, n_valid: int) -> dict:
    """Betti tables, induced ranks and junction verdicts of the non-unital excision sequence."""
    comps = {}
    for name, alg in (("I", I), ("E", E), ("Q", Q)):
        comps[name] = nonunital_boundaries(alg, n_valid + 1)
    dims = {name: [alg.dim] + [(alg.dim + 1) * alg.dim ** n for n in range(1, n_valid + 2)]
            for name, alg in (("I", I), ("E", E), ("Q", Q))}

    def maps(f):
        out = {0: f}
        for n in range(1, n_valid + 1):
            out[n] = kron_all([plus_matrix(f)] + [f] * n)
        return out

    fi, fp = maps(incl), maps(proj)
    betti = {k: betti_from_boundaries(dims[k][:n_valid + 2], comps[k])[:n_valid + 1]
             for k in comps}

    def induced(f, s, t, n):
        return induced_rank(f[n], comps[s].get(n), comps[t].get(n + 1), dims[s][n], dims[t][n])

    ri = [induced(fi, "I", "E", n) for n in range(n_valid)]
    rp = [induced(fp, "E", "Q", n) for n in range(n_valid)]

    # cone(i) and the comparison cone(i) -> Q
    def cone_d(n):
        tgt_rows = dims["E"][n - 1]
        src_rows = dims["I"][n - 2] if n >= 2 else 0
        tgt_cols = dims["E"][n]
        src_cols = dims["I"][n - 1]
        mat = zeros(tgt_rows + src_rows, tgt_cols + src_cols)
        dE = comps["E"][n]
        for r in range(tgt_rows):
            for c in range(tgt_cols):
                mat[r][c] = dE[r][c]
            for c in range(src_cols):
                mat[r][tgt_cols + c] = fi[n - 1][r][c]
        if n >= 2:
            dI = comps["I"][n - 1]
            for r in range(src_rows):
                for c in range(src_cols):
                    mat[tgt_rows + r][tgt_cols + c] = -dI[r][c]
        return mat

    cone_dims = [dims["E"][n] + (dims["I"][n - 1] if n >= 1 else 0) for n in range(n_valid + 1)]
    cone_mats = {n: cone_d(n) for n in range(1, n_valid + 1)}
    h_cone = betti_from_boundaries(cone_dims, cone_mats)[:n_valid]
    pi_rank = []
    for n in range(n_valid):
        pi = [row + [ZERO] * (dims["I"][n - 1] if n >= 1 else 0) for row in fp[n]]
        pi_rank.append(induced_rank(pi, cone_mats.get(n), comps["Q"].get(n + 1),
                                    cone_dims[n], dims["Q"][n]))
    cofibre = [pi_rank[n] == h_cone[n] == betti["Q"][n] for n in range(n_valid)]
    exact_E = [ri[n] + rp[n] == betti["E"][n] for n in range(n_valid)]
    return {"betti": {k: v[:n_valid] for k, v in betti.items()}, "rank_i": ri, "rank_p": rp,
            "cone": h_cone, "cofibre": cofibre, "exact": all(cofibre) and all(exact_E)}


# ---------------------------------------------------------------------------
# Kähler forms


def omega1_diagonal(alg: Dense) -> int:
    d = alg.dim
    mul = [[alg.c[p // d][p % d][k] for p in range(d * d)] for k in range(d)]
    ker = kernel(mul, d * d)
    prods = []
    for v in ker:
        for w in ker:
            out = [ZERO] * (d * d)
            for p in range(d * d):
                if not v[p]:
                    continue
                x, y = divmod(p, d)
                for q in range(d * d):
                    if not w[q]:
                        continue
                    u, z = divmod(q, d)
                    for s in range(d):
                        c1 = alg.c[x][u][s]
                        if not c1:
                            continue
                        for t in range(d):
                            c2 = alg.c[y][z][t]
                            if c2:
                                out[s * d + t] += v[p] * w[q] * c1 * c2
            prods.append(out)
    return len(ker) - (rank(prods) if prods else 0)


def omega_k_dim(alg: Dense, k: int) -> int:
    """dim of A (x) Lambda^k A modulo a0 d(bc) w = a0 b dc w + a0 c db w."""
    d = alg.dim
    subsets = list(combinations(range(d), k))
    gen = {(a0, s): i for i, (a0, s) in enumerate(product(range(d), subsets))}

    def wedge(seq):
        if len(set(seq)) < len(seq):
            return 0, None
        perm = sorted(range(len(seq)), key=lambda i: seq[i])
        inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
        return (-1) ** inv, tuple(sorted(seq))

    rels = []
    if k >= 1:
        for a0, b, c in product(range(d), repeat=3):
            for w in combinations(range(d), k - 1):
                v = [ZERO] * len(gen)
                for x in range(d):
                    coef = alg.c[b][c][x]
                    if coef:
                        s, key = wedge((x,) + w)
                        if s:
                            v[gen[(a0, key)]] += s * coef
                for first, other in ((b, c), (c, b)):
                    s, key = wedge((other,) + w)
                    if not s:
                        continue
                    for y in range(d):
                        coef = alg.c[a0][first][y]
                        if coef:
                            v[gen[(y, key)]] -= s * coef
                if any(v):
                    rels.append(v)
    return len(gen) - (rank(rels) if rels else 0)


# ---------------------------------------------------------------------------
# cyclic


def mixed_tensor(alg: Dense, top: int):
    """Dense b and B = (1 - t) s N on C_n = A^(n+1), n <= top."""
    d = alg.dim
    left, right = regular_actions(alg)
    b = {n: hochschild_matrix(alg, left, right, d, n) for n in range(1, top + 1)}
    B = {}
    for n in range(top):
        src, _ = _tensor_index([d] * (n + 1))
        _, tgt = _tensor_index([d] * (n + 2))
        mat = zeros(len(tgt), len(src))
        for col, t in enumerate(src):
            # N
            terms = {}
            cur, sign = t, 1
            for _ in range(n + 1):
                terms[cur] = terms.get(cur, 0) + sign
                cur = (cur[-1],) + cur[:-1]
                sign *= (-1) ** n
            for tup, c in terms.items():
                if not c:
                    continue
                for u, cu in enumerate(alg.unit):
                    if not cu:
                        continue
                    y = (u,) + tup
                    mat[tgt[y]][col] += c * cu
                    ty = (y[-1],) + y[:-1]
                    mat[tgt[ty]][col] -= (-1) ** (n + 1) * c * cu
        B[n] = mat
    dims = [d ** (n + 1) for n in range(top + 1)]
    return dims, b, B


def total(dims, b, B, top):
    tdims = []
    blocks = {}
    for n in range(top + 1):
        bl = list(range(n, -1, -2))
        blocks[n] = bl
        tdims.append(sum(dims[m] for m in bl))
    D = {}
    for n in range(1, top + 1):
        src, tgt = blocks[n], blocks[n - 1]
        mat = zeros(tdims[n - 1], tdims[n])
        ro = 0
        for r in tgt:
            co = 0
            for c in src:
                part = b[c] if c == r + 1 else (B[c] if c == r - 1 else None)
                if part is not None:
                    for i in range(dims[r]):
                        for j in range(dims[c]):
                            if part[i][j]:
                                mat[ro + i][co + j] = part[i][j]
                co += dims[c]
            ro += dims[r]
        D[n] = mat
    return tdims, D, blocks


def hc_betti(alg: Dense, n_valid: int) -> list[int]:
    dims, b, B = mixed_tensor(alg, n_valid)
    tdims, D, _ = total(dims, b, B, n_valid)
    return betti_from_boundaries(tdims, D)[:n_valid]


def hp_stable(alg: Dense, parity: int, k_max: int):
    """Stable image dimensions of S^j into HC_(parity + 2k) and the declared HP."""
    top = parity + 2 * k_max
    dims, b, B = mixed_tensor(alg, top + 1)
    tdims, D, blocks = total(dims, b, B, top + 1)
    ranks = {n: rank(m) for n, m in D.items()}
    stable = [0] * (k_max + 1)
    stable[k_max] = tdims[top] - ranks[top] - ranks[top + 1]
    for power in range(1, k_max + 1):
        m = top - 2 * power
        skip = sum(dims[x] for x in blocks[top][:power])
        f = [[Fraction(int(j == skip + i)) for j in range(tdims[top])] for i in range(tdims[m])]
        stable[k_max - power] = induced_rank(f, D[top], D.get(m + 1), tdims[top], tdims[m])
    value = None
    for k in range(k_max - 1):
        if stable[k] == stable[k + 1] == stable[k + 2]:
            value = stable[k]
            break
    return value, stable


# ---------------------------------------------------------------------------
# filtration probes (inclusions given by coordinate selections)


def filtration_quotient_betti(E: Dense, m_left, m_right, dm, ideal_coords, p, n_top):
    """Homology of F_{p+1} / F_p inside HHchain(E, M), degrees 0..n_top-1.

    F_p in degree n is spanned by basis tuples (m, x_1..x_n) whose first
    n - p tensor slots lie in the ideal; this needs the ideal to be a
    coordinate subspace.
    """
    de = E.dim
    ideal = set(ideal_coords)

    def member(t, q):
        k = max(len(t) - 1 - q, 0)
        return all(x in ideal for x in t[1:1 + k])

    sel = {}
    for n in range(n_top + 1):
        tuples, _ = _tensor_index([dm] + [de] * n)
        sel[n] = [i for i, t in enumerate(tuples) if member(t, p + 1) and not member(t, p)]
    mats = {}
    for n in range(1, n_top + 1):
        full = hochschild_matrix(E, m_left, m_right, dm, n)
        mats[n] = [[full[r][c] for c in sel[n]] for r in sel[n - 1]]
    dims = [len(sel[n]) for n in range(n_top + 1)]
    return betti_from_boundaries(dims, mats)[:n_top]


def ideal_actions(E: Dense, coords):
    """E acting on a coordinate ideal from both sides."""
    pos = {c: i for i, c in enumerate(coords)}

    def restrict(vec):
        assert all(v == 0 for k, v in enumerate(vec) if k not in pos)
        return [vec[c] for c in coords]

    left = [[restrict(E.c[i][c]) for c in coords] for i in range(E.dim)]
    right = [[restrict(E.c[c][i]) for i in range(E.dim)] for c in coords]
    return left, right
