"""Split semisimple Lie algebras in a Chevalley basis, exact arithmetic.

Basis convention for an algebra with n positive roots and rank l:
indices 0..n-1 are the positive root vectors x_a (in the canonical root
order), n..2n-1 the negative root vectors, 2n..2n+l-1 the Cartan elements
h_1..h_l (coroots of the simple roots). Elements are sparse dicts
{basis index: rational}.

Structure constants are signed by the extraspecial-pair convention: for
each composite positive root g, the pair (a, b), a + b = g with a minimal
in the canonical root order, gets N_{a,b} = p + 1 > 0 where p is the
largest k with b - k a a root. Every other constant follows from the
antisymmetry rules and the standard three- and four-root identities, so
all constants are integers with |N_{a,b}| = p + 1.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .linalg import (
    Echelonizer,
    charpoly_mod_p,
    coords_mod_p,
    frac_rref,
    in_rowspace,
    nullspace_frac,
    nullspace_mod_p,
    poly_roots_mod_p,
    rref_mod_p,
    small_primes_from,
)
from .rootsys import RootSystem, build_root_system

Z0 = Fraction(0)
Z1 = Fraction(1)


class StructureConstants:
    """N_{a,b} table over root indices, built by height induction."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n = rs.nposroots
        self._sumidx = {}
        self._norm = [rs.root_norm_sq(i) for i in range(self.n)]
        for i in range(2 * self.n):
            for j in range(2 * self.n):
                if i == j or rs.negative(i) == j:
                    continue
                a = rs.root_at(i)
                b = rs.root_at(j)
                s = tuple(x + y for x, y in zip(a, b))
                if any(s):
                    try:
                        self._sumidx[(i, j)] = rs.root_index(s)
                    except KeyError:
                        pass
        self.N = {}
        self._build()

    def norm_sq(self, idx):
        return self._norm[idx % self.n]

    def sum_index(self, i, j):
        """Index of root_i + root_j, or None if not a root (or zero)."""
        return self._sumidx.get((i, j))

    def string_p(self, i, j):
        """Largest k with root_j - k root_i still a root."""
        rs = self.rs
        a = rs.root_at(i)
        b = rs.root_at(j)
        p = 0
        cur = b
        while True:
            cur = tuple(x - y for x, y in zip(cur, a))
            if not any(cur):
                break
            try:
                rs.root_index(cur)
            except KeyError:
                break
            p += 1
        return p

    def _neg(self, i):
        return self.rs.negative(i)

    def _build(self):
        rs = self.rs
        n = self.n
        order = sorted(range(n), key=lambda i: (rs.heights[i], i))
        # decompositions of each composite positive root into positive pairs
        decomp = {}
        for g in range(n):
            if rs.heights[g] == 1:
                continue
            pairs = []
            for a in range(n):
                if rs.heights[a] >= rs.heights[g]:
                    continue
                rest = tuple(
                    x - y for x, y in zip(rs.positive_roots[g], rs.positive_roots[a])
                )
                try:
                    b = rs.root_index(rest)
                except KeyError:
                    continue
                if b < n and a <= b:
                    pairs.append((a, b))
            pairs.sort()
            decomp[g] = pairs
        for g in order:
            if g not in decomp:
                continue
            pairs = decomp[g]
            a0, b0 = pairs[0]  # extraspecial: minimal first component
            seed = self.string_p(a0, b0) + 1
            self._set(a0, b0, seed)
            for a, b in pairs[1:]:
                val = self._derive_special(a, b, a0, b0, g)
                self._set(a, b, val)

    def _set(self, a, b, val):
        self.N[(a, b)] = val
        if a != b:
            self.N[(b, a)] = -val
        na, nb = self._neg(a), self._neg(b)
        self.N[(na, nb)] = -val
        self.N[(nb, na)] = val

    def _derive_special(self, a, b, a0, b0, g):
        """Value for a special positive pair from the extraspecial pair of g.

        Four-root identity on (a0, b0, -a, -b), all sums of pairs that are
        roots contributing N N / (sum, sum) terms.
        """
        nrm = self.norm_sq
        t2 = Z0
        d = self.sum_index(b0, self._neg(a))
        if d is not None:
            t2 = self._mixed(b0, a) * self._mixed(a0, b) / nrm(d)
        t3 = Z0
        d = self.sum_index(a0, self._neg(a))
        if d is not None:
            t3 = -self._mixed(a0, a) * self._mixed(b0, b) / nrm(d)
        total = (t2 + t3) * nrm(g) / (self.string_p(a0, b0) + 1)
        assert total.denominator == 1, "structure constant not integral"
        return int(total)

    def _mixed(self, u, v):
        """N(u, -v) for positive u, v with u - v a nonzero root."""
        n = self.n
        d = self.sum_index(u, self._neg(v))
        assert d is not None
        if d < n:
            # v + d = u
            val = -self.norm_sq(d) * self.N[(v, d)] / self.norm_sq(u)
        else:
            dp = d - n
            # u + dp = v
            val = -self.norm_sq(dp) * self.N[(u, dp)] / self.norm_sq(v)
        assert val.denominator == 1, "structure constant not integral"
        return int(val)

    def value(self, i, j):
        """N over arbitrary root indices (0 when the sum is not a root)."""
        if self.sum_index(i, j) is None:
            return 0
        key = (i, j)
        if key in self.N:
            return self.N[key]
        # mixed-sign pair: reduce to positive pairs
        n = self.n
        i_pos = i < n
        j_pos = j < n
        if i_pos and not j_pos:
            v = self._mixed(i, j - n)
        elif j_pos and not i_pos:
            v = -self._mixed(j, i - n)
        else:
            raise AssertionError("same-sign pairs are always in the table")
        self.N[key] = v
        return v


class Subspace:
    """Subspace of a Lie algebra in canonical reduced-echelon coordinates."""

    __slots__ = ("rows", "pivots")

    def __init__(self, rows, pivots):
        self.rows = tuple(rows)  # frac_rref rows over the ambient basis
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, vec):
        return in_rowspace(self.rows, self.pivots, vec) is not None

    def coords(self, vec):
        return in_rowspace(self.rows, self.pivots, vec)

    def basis_elements(self):
        return [
            {k: v for k, v in enumerate(row) if v} for row in self.rows
        ]

    def __eq__(self, other):
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)


def make_subspace(vectors, dim):
    rows = []
    for v in vectors:
        if isinstance(v, dict):
            row = [Z0] * dim
            for k, c in v.items():
                row[k] = Fraction(c)
            rows.append(row)
        else:
            rows.append(list(v))
    red, piv = frac_rref(rows)
    return Subspace(tuple(red), tuple(piv))


class LieAlgebra:
    """Split simple Lie algebra over Q in a Chevalley basis."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n = rs.nposroots
        self.rank = rs.rank
        self.dim = 2 * self.n + self.rank
        self.constants = StructureConstants(rs)
        self._coroot = [rs.coroot_coords(i) for i in range(2 * self.n)]

    @property
    def type_label(self):
        return self.rs.type_label

    def cartan_indices(self):
        return range(2 * self.n, self.dim)

    def root_vector(self, index):
        return {index: 1}

    def cartan_element(self, h):
        """Sparse element for a Cartan vector (coords on h_1..h_l)."""
        base = 2 * self.n
        return {base + i: Fraction(c) for i, c in enumerate(h) if c}

    def cartan_vector(self, el):
        """Cartan coordinates of an element supported on the Cartan."""
        base = 2 * self.n
        h = [Z0] * self.rank
        for k, c in el.items():
            if k < base:
                raise ValueError("element not in the Cartan subalgebra")
            h[k - base] = Fraction(c)
        return tuple(h)

    # bracket ------------------------------------------------------------------

    def bracket_basis(self, i, j):
        """[b_i, b_j] as a sparse dict, for basis indices."""
        n2 = 2 * self.n
        if i == j:
            return {}
        if i >= n2 and j >= n2:
            return {}
        if i >= n2:
            # [h, x_b] = b(h) x_b
            val = self.rs.fund_at(j)[i - n2]
            return {j: val} if val else {}
        if j >= n2:
            val = self.rs.fund_at(i)[j - n2]
            return {i: -val} if val else {}
        if self.rs.negative(i) == j:
            sign = 1 if i < self.n else -1
            d = self._coroot[i if i < self.n else j]
            base = n2
            return {base + k: sign * dk for k, dk in enumerate(d) if dk}
        s = self.constants.sum_index(i, j)
        if s is None:
            return {}
        return {s: self.constants.value(i, j)}

    def bracket(self, u, v):
        """[u, v] for sparse elements."""
        out = {}
        for i, ci in u.items():
            if not ci:
                continue
            for j, cj in v.items():
                if not cj:
                    continue
                w = self.bracket_basis(i, j)
                if w:
                    c = ci * cj
                    for k, ck in w.items():
                        val = out.get(k, 0) + c * ck
                        if val:
                            out[k] = val
                        elif k in out:
                            del out[k]
        return out

    def ad_matrix(self, x):
        """Matrix of ad(x), columns indexed by the basis: col j = [x, b_j]."""
        cols = []
        for j in range(self.dim):
            w = self.bracket(x, {j: 1})
            cols.append(w)
        mat = [[Z0] * self.dim for _ in range(self.dim)]
        for j, w in enumerate(cols):
            for k, c in w.items():
                mat[k][j] = Fraction(c)
        return mat

    def killing_pair(self, u, v):
        """kappa(u, v) = tr(ad u ad v), computed sparsely."""
        tot = Z0
        for j in range(self.dim):
            w = self.bracket(v, {j: 1})
            if not w:
                continue
            w2 = self.bracket(u, w)
            c = w2.get(j)
            if c:
                tot += Fraction(c)
        return tot

    # subspace operations --------------------------------------------------------

    def centralizer(self, elements):
        """Subspace of x with [x, e] = 0 for all given elements."""
        rows = []
        for e in elements:
            cols = [self.bracket({j: 1}, e) for j in range(self.dim)]
            for k in range(self.dim):
                row = [Fraction(col.get(k, 0)) for col in cols]
                if any(row):
                    rows.append(row)
        if not rows:
            return make_subspace(
                [{i: 1} for i in range(self.dim)], self.dim
            )
        basis = nullspace_frac(rows, self.dim)
        return make_subspace(basis, self.dim)

    def derived_of(self, sub: Subspace):
        """Span of pairwise brackets of a subspace basis."""
        els = sub.basis_elements()
        ech = Echelonizer(self.dim)
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                w = self.bracket(els[i], els[j])
                if w:
                    row = [Z0] * self.dim
                    for k, c in w.items():
                        row[k] = Fraction(c)
                    ech.add(row)
        return make_subspace(ech.basis(), self.dim)

    def subalgebra_generated_by(self, elements):
        """Smallest subalgebra containing the given sparse elements."""
        ech = Echelonizer(self.dim)
        frontier = []
        for e in elements:
            row = [Z0] * self.dim
            for k, c in e.items():
                row[k] = Fraction(c)
            if ech.add(row):
                frontier.append(e)
        basis = [dict(e) for e in frontier]
        while frontier:
            new = []
            for f in frontier:
                for b in list(basis):
                    w = self.bracket(b, f)
                    if not w:
                        continue
                    row = [Z0] * self.dim
                    for k, c in w.items():
                        row[k] = Fraction(c)
                    if ech.add(row):
                        new.append(w)
            basis.extend(new)
            frontier = new
        return make_subspace(ech.basis(), self.dim)

    def is_subalgebra(self, sub: Subspace):
        els = sub.basis_elements()
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                w = self.bracket(els[i], els[j])
                if w and not sub.contains(_densify(w, self.dim)):
                    return False
        return True


def _densify(el, dim):
    row = [Z0] * dim
    for k, c in el.items():
        row[k] = Fraction(c)
    return row


_ALGEBRA_CACHE = {}


def build_chevalley_algebra(label) -> LieAlgebra:
    """Chevalley basis algebra of one simple type, memoized per label."""
    alg = _ALGEBRA_CACHE.get(label)
    if alg is None:
        alg = LieAlgebra(build_root_system(label))
        _ALGEBRA_CACHE[label] = alg
    return alg


# abstract algebras (own basis, own structure constants) ----------------------


class TableAlgebra:
    """A Lie algebra presented by structure constants on an abstract basis.

    table maps (i, j) with i < j to the sparse bracket {k: c}; missing keys
    mean zero.
    """

    def __init__(self, dim, table):
        self.dim = dim
        self.table = table

    def bracket(self, u, v):
        out = {}
        for i, ci in u.items():
            if not ci:
                continue
            for j, cj in v.items():
                if not cj:
                    continue
                if i == j:
                    continue
                if i < j:
                    w = self.table.get((i, j))
                    sign = 1
                else:
                    w = self.table.get((j, i))
                    sign = -1
                if w:
                    c = sign * ci * cj
                    for k, ck in w.items():
                        val = out.get(k, 0) + c * ck
                        if val:
                            out[k] = val
                        elif k in out:
                            del out[k]
        return out

    def ad_rows(self, x):
        """Dense rows of ad(x) in the subalgebra's coordinates."""
        mat = [[Z0] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            w = self.bracket(x, {j: 1})
            for k, c in w.items():
                mat[k][j] = Fraction(c)
        return mat

    def _sparse_ads(self):
        """Per basis element a: {(k, j): coefficient of b_k in [b_a, b_j]}."""
        d = self.dim
        ads = [dict() for _ in range(d)]
        for (i, j), entry in self.table.items():
            for k, c in entry.items():
                ads[i][(k, j)] = c
                ads[j][(k, i)] = -c
        return ads

    def killing_gram(self):
        """Gram matrix of the trace form tr(ad x ad y) on the basis."""
        d = self.dim
        ads = self._sparse_ads()
        gram = [[Z0] * d for _ in range(d)]
        for a in range(d):
            ma = ads[a]
            for b in range(a, d):
                mb = ads[b]
                if len(mb) < len(ma):
                    ma_s, mb_s = mb, ma
                else:
                    ma_s, mb_s = ma, mb
                t = Z0
                for (k, j), c in ma_s.items():
                    c2 = mb_s.get((j, k))
                    if c2:
                        t += c * c2
                gram[a][b] = gram[b][a] = Fraction(t)
        return gram


class AbstractAlgebra(TableAlgebra):
    """Structure constants of a bracket-closed subspace of a Chevalley algebra,
    in the subspace's own reduced-echelon coordinates."""

    def __init__(self, parent: LieAlgebra, sub: Subspace):
        els = sub.basis_elements()
        table = {}
        for i in range(sub.dim):
            for j in range(i + 1, sub.dim):
                w = parent.bracket(els[i], els[j])
                if not w:
                    continue
                coords = sub.coords(_densify(w, parent.dim))
                if coords is None:
                    raise ValueError("not closed under bracket")
                entry = {k: c for k, c in enumerate(coords) if c}
                if entry:
                    table[(i, j)] = entry
        super().__init__(sub.dim, table)
        self.parent = parent
        self.sub = sub


def derived_rows(alg: TableAlgebra):
    """Basis rows of the derived subalgebra, in the algebra's coordinates."""
    ech = Echelonizer(alg.dim)
    for entry in alg.table.values():
        ech.add(_densify(entry, alg.dim))
    return ech.basis()


def radical_rows(alg: TableAlgebra):
    """Basis rows of the solvable radical, in the algebra's coordinates.

    Cartan's criterion: the radical is the Killing-orthogonal complement of
    the derived subalgebra.
    """
    d = alg.dim
    drows = derived_rows(alg)
    if not drows:
        return [tuple(Z1 if j == k else Z0 for j in range(d)) for k in range(d)]
    gram = alg.killing_gram()
    rows = []
    for dv in drows:
        rows.append(
            [
                sum((dv[i] * gram[i][j] for i in range(d) if dv[i]), Z0)
                for j in range(d)
            ]
        )
    return nullspace_frac(rows, d)


def quotient_by_radical(alg: TableAlgebra):
    """(semisimple quotient, radical basis rows).

    The quotient is presented on the coordinate directions complementary to
    the radical's pivot columns.
    """
    rad = radical_rows(alg)
    red, pivots = frac_rref(rad)
    pivset = set(pivots)
    comp = [k for k in range(alg.dim) if k not in pivset]

    def project(w):
        v = _densify(w, alg.dim)
        for row, pc in zip(red, pivots):
            f = v[pc]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return [v[k] for k in comp]

    table = {}
    for a in range(len(comp)):
        for b in range(a + 1, len(comp)):
            w = alg.bracket({comp[a]: 1}, {comp[b]: 1})
            if not w:
                continue
            vec = project(w)
            entry = {k: c for k, c in enumerate(vec) if c}
            if entry:
                table[(a, b)] = entry
    return TableAlgebra(len(comp), table), red


# Cartan-Killing type of a semisimple rational algebra -------------------------


class _BadPrime(Exception):
    pass


def _frac_mod(c, p):
    c = Fraction(c)
    den = c.denominator % p
    if den == 0:
        raise _BadPrime
    return c.numerator % p * pow(den, p - 2, p) % p


def _ads_mod_p(alg: TableAlgebra, p):
    d = alg.dim
    ads = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), entry in alg.table.items():
        for k, c in entry.items():
            cm = _frac_mod(c, p)
            ads[i, k, j] = cm
            ads[j, k, i] = (-cm) % p
    return ads


def _component_type(comp, cartan_ints, weight_rank):
    """Classify one irreducible component from its Cartan-integer data."""
    count = len(comp)
    r = weight_rank
    if r == 1:
        return ("A", 1) if count == 2 else None
    vals = [abs(n) for pair, n in cartan_ints.items()]
    maxn = max(vals) if vals else 0
    if maxn == 3:
        return ("G", 2) if (r == 2 and count == 12) else None
    if maxn == 2:
        if r == 2:
            return ("B", 2) if count == 8 else None
        if r == 4 and count == 48:
            return ("F", 4)
        if count != 2 * r * r:
            return None
        # |<b, a^v>| = 2 happens exactly for a short, b long: the number of
        # long roots adjacent to a short one separates B (2r(r-1)) from C (2r)
        long_adj = set()
        for (a, b), n in cartan_ints.items():
            if abs(n) == 2:
                long_adj.add(b)
        if len(long_adj) == 2 * r * (r - 1):
            return ("B", r)
        if len(long_adj) == 2 * r:
            return ("C", r)
        return None
    if maxn == 1:
        if count == r * (r + 1):
            return ("A", r)
        if r >= 4 and count == 2 * r * (r - 1):
            return ("D", r)
        if (r, count) in {(6, 72), (7, 126), (8, 240)}:
            return ("E", r)
    return None


def _split_regular_draw(ads, r, p, rng, budget):
    """Find x whose ad splits with d - r distinct nonzero F_p eigenvalues.

    Success probability per draw is roughly 1 / |Weyl group|, so this is
    meant for small algebras (stabilizer pieces), not big simple ones.
    Returns (cartan_rows, root_vectors, eigenvalues) or None.
    """
    d = ads.shape[0]
    eye = np.eye(d, dtype=np.int64)
    for _ in range(budget):
        x = np.array([rng.randrange(p) for _ in range(d)], dtype=np.int64)
        adx = np.tensordot(x, ads, axes=(0, 0)) % p
        roots = poly_roots_mod_p(charpoly_mod_p(adx, p), p)
        nz = [lam for lam in roots if lam != 0]
        if len(nz) != d - r:
            continue
        ker = nullspace_mod_p(adx, p)
        if ker.shape[0] != r:
            continue
        vecs = []
        for lam in nz:
            kr = nullspace_mod_p((adx - lam * eye) % p, p)
            if kr.shape[0] != 1:
                vecs = None
                break
            vecs.append(kr[0])
        if vecs is None:
            continue
        return ker, vecs, nz
    return None


def _type_mod_p(alg: TableAlgebra, p, rng, gram_q, budget=6000):
    """One attempt at the root-system type over F_p. None = inconclusive."""
    d = alg.dim
    ads = _ads_mod_p(alg, p)
    gram = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            gram[i, j] = _frac_mod(gram_q[i][j], p)
    _, piv = rref_mod_p(gram, p)
    if len(piv) != d:
        return None  # killing form degenerate mod p
    best = d
    for _ in range(8):
        x = np.array([rng.randrange(p) for _ in range(d)], dtype=np.int64)
        adx = np.tensordot(x, ads, axes=(0, 0)) % p
        k = nullspace_mod_p(adx, p).shape[0]
        best = min(best, k)
    r = best
    if r == 0 or r == d:
        return None
    drawn = _split_regular_draw(ads, r, p, rng, budget)
    if drawn is None:
        return None
    h_basis, vecs, _ = drawn
    # centralizer of a regular element must be abelian
    for i in range(r):
        adu = np.tensordot(h_basis[i], ads, axes=(0, 0)) % p
        if np.any(adu @ h_basis.T % p):
            return None
    # weights of the root vectors under the Cartan basis
    adhs = [
        np.tensordot(h_basis[i], ads, axes=(0, 0)) % p for i in range(r)
    ]
    roots = []
    for v in vecs:
        j = int(np.nonzero(v)[0][0])
        vj_inv = pow(int(v[j]), p - 2, p)
        wt = []
        for adh in adhs:
            w = adh @ v % p
            lam = int(w[j]) * vj_inv % p
            if np.any((w - lam * v) % p):
                return None  # not a simultaneous eigenvector
            wt.append(lam)
        roots.append(tuple(wt))
    if len(set(roots)) != d - r:
        return None
    rootset = set(roots)
    for a in roots:
        if tuple((-x) % p for x in a) not in rootset:
            return None

    def cartan_int(beta, alpha):
        down = 0
        cur = beta
        for _ in range(4):
            cur = tuple((x - y) % p for x, y in zip(cur, alpha))
            if cur in rootset:
                down += 1
            else:
                break
        up = 0
        cur = beta
        for _ in range(4):
            cur = tuple((x + y) % p for x, y in zip(cur, alpha))
            if cur in rootset:
                up += 1
            else:
                break
        return down - up

    # union-find components under non-orthogonality
    parent = {a: a for a in roots}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    ints = {}
    roots_list = list(roots)
    for a in roots_list:
        union(a, tuple((-x) % p for x in a))
    for ii in range(len(roots_list)):
        a = roots_list[ii]
        nega = tuple((-x) % p for x in a)
        for jj in range(len(roots_list)):
            b = roots_list[jj]
            if b == a or b == nega:
                continue
            n = cartan_int(b, a)
            if abs(n) > 3:
                return None
            if n:
                ints[(a, b)] = n
                union(a, b)
    comps = {}
    for a in roots_list:
        comps.setdefault(find(a), []).append(a)
    types = []
    total_rank = 0
    for comp in comps.values():
        wmat = np.array(comp, dtype=np.int64)
        _, piv = rref_mod_p(wmat, p)
        wr = len(piv)
        total_rank += wr
        cints = {
            (a, b): n for (a, b), n in ints.items() if find(a) == find(comp[0])
        }
        t = _component_type(comp, cints, wr)
        if t is None:
            return None
        types.append(t)
    if total_rank != r:
        return None
    types.sort(key=lambda t: (-t[1], t[0]))
    return "+".join(f"{letter}{rank}" for letter, rank in types)


def semisimple_type(alg: TableAlgebra, rng=None):
    """Cartan-Killing type string of a semisimple rational algebra.

    Works with root-space decompositions over small finite fields, which
    sidesteps non-split rational forms; a type is accepted once two primes
    agree. Components are sorted by descending rank, then letter, and joined
    with '+'. The zero algebra gives ''.
    """
    if alg.dim == 0:
        return ""
    rng = rng or random.Random(1729)
    gram_q = alg.killing_gram()
    found = []
    tried = 0
    for p in small_primes_from(40009):
        tried += 1
        if tried > 12:
            raise RuntimeError("type recognition failed to stabilize")
        try:
            res = _type_mod_p(alg, p, rng, gram_q)
        except _BadPrime:
            continue
        if res is None:
            continue
        found.append(res)
        if len(found) == 2:
            if found[0] == found[1]:
                return found[0]
            raise RuntimeError(f"type recognition disagrees: {found}")
    raise RuntimeError("type recognition exhausted its prime budget")
