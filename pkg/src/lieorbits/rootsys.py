"""Root systems, Weyl groups as root permutations, Cartan vectors.

Conventions, used consistently across the package:

- Cartan matrix: C[i][j] = <alpha_i, alpha_j-coroot> = 2(a_i,a_j)/(a_j,a_j),
  0-based indices, node numbering as in the standard tables (B/C chains with
  the short/long root last, D fork at the tail, E series with node 2 hanging
  off node 4, F4 = 1-2=>3-4, G2 with alpha_1 short).
- Roots are integer tuples in simple-root coordinates. The canonical order of
  positive roots is by (height, reverse-lex), which puts the simple roots
  first, in index order. Root index space is 0..2n-1: index r < n is the r-th
  positive root, index n+r its negative.
- A Cartan vector is a tuple of Fractions (c_1..c_l), the coordinates on the
  coroot basis h_1..h_l, where h_i = [x_i, y_i] in the Chevalley basis.
- The form on the Cartan subalgebra is the Killing form, kappa(h_i, h_j) =
  sum over all roots of a(h_i)a(h_j). Squared lengths only; no radicals.
- Weyl elements act on the left; composing u after v gives images
  (uv)[r] = u[v[r]].
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np

from .linalg import frac_rref, solve_frac

Z0 = Fraction(0)
Z1 = Fraction(1)

_TYPE_RE = re.compile(r"^([A-G])([1-9][0-9]*)$")

_RANK_BOUNDS = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}


def parse_type_label(label):
    """Split a label like 'B6' into ('B', 6), validating the rank."""
    m = _TYPE_RE.match(label)
    if not m:
        raise ValueError(f"bad type label {label!r}")
    fam, rank = m.group(1), int(m.group(2))
    lo = _RANK_BOUNDS[fam]
    if rank < lo:
        raise ValueError(f"{label}: rank must be >= {lo}")
    if fam == "E" and rank not in (6, 7, 8):
        raise ValueError("E family has ranks 6, 7, 8")
    if fam == "F" and rank != 4:
        raise ValueError("F family has rank 4")
    if fam == "G" and rank != 2:
        raise ValueError("G family has rank 2")
    return fam, rank


def cartan_matrix(label):
    """Cartan matrix C[i][j] = <alpha_i, alpha_j-coroot> for one simple type."""
    fam, n = parse_type_label(label)
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2

    def link(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            link(i, i + 1)
        if fam == "B":
            # alpha_n short: <alpha_{n-1}, alpha_n-coroot> = -2
            link(n - 2, n - 1, -2, -1)
        if fam == "C":
            link(n - 2, n - 1, -1, -2)
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        chain = [0] + list(range(2, n))
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif fam == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -1, -3)
    return c


class WeylPermutation:
    """One Weyl group element, stored as its permutation of the 2n roots."""

    __slots__ = ("images", "length")

    def __init__(self, images, length=-1):
        self.images = tuple(images)
        self.length = length

    def __getitem__(self, r):
        return self.images[r]

    def __len__(self):
        return len(self.images)

    def __eq__(self, other):
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"WeylPermutation(len={self.length})"


class RootSystem:
    """Root data of one simple type; see the module docstring for conventions."""

    def __init__(self, type_label, cartan, positive_roots, form=None):
        self.type_label = type_label
        self.cartan = cartan
        self.positive_roots = positive_roots
        self.rank = len(cartan)
        self.nposroots = len(positive_roots)
        self._index = {r: i for i, r in enumerate(positive_roots)}
        # fundamental coordinates of each positive root: fund[i][j] = a_i(h_j)
        self.root_fund = [
            tuple(
                sum(root[k] * cartan[k][j] for k in range(self.rank))
                for j in range(self.rank)
            )
            for root in positive_roots
        ]
        self.heights = [sum(r) for r in positive_roots]
        self.form = form if form is not None else self._killing_form()
        self._coroot_coords = None
        self._simple_perms = None
        self._form_inv = None
        self._w2c_cache = {}

    def _killing_form(self):
        l = self.rank
        form = [[0] * l for _ in range(l)]
        for fund in self.root_fund:
            for i in range(l):
                fi = fund[i]
                if fi:
                    for j in range(l):
                        form[i][j] += 2 * fi * fund[j]
        return [tuple(Fraction(v) for v in row) for row in form]

    # index bookkeeping ------------------------------------------------------

    def root_index(self, root):
        """Index in 0..2n-1 of a root given in simple-root coordinates."""
        i = self._index.get(root)
        if i is not None:
            return i
        i = self._index.get(tuple(-c for c in root))
        if i is not None:
            return self.nposroots + i
        raise KeyError(f"not a root: {root}")

    def root_at(self, index):
        if index < self.nposroots:
            return self.positive_roots[index]
        return tuple(-c for c in self.positive_roots[index - self.nposroots])

    def negative(self, index):
        n = self.nposroots
        return index + n if index < n else index - n

    def fund_at(self, index):
        """Fundamental coordinates of the root at an index (either sign)."""
        if index < self.nposroots:
            return self.root_fund[index]
        return tuple(-c for c in self.root_fund[index - self.nposroots])

    # geometry -----------------------------------------------------------------

    def weight_to_cartan(self, weight):
        """nu-inverse: the Cartan vector h with kappa(h, .) = the weight.

        The weight is given in fundamental coordinates (values on h_1..h_l).
        """
        key = tuple(Fraction(v) for v in weight)
        hit = self._w2c_cache.get(key)
        if hit is not None:
            return hit
        if self._form_inv is None:
            l = self.rank
            aug = [
                list(self.form[i]) + [Z1 if j == i else Z0 for j in range(l)]
                for i in range(l)
            ]
            red, piv = frac_rref(aug)
            assert list(piv) == list(range(l))
            self._form_inv = [row[l:] for row in red]
        out = tuple(
            sum((r * v for r, v in zip(row, key) if v), Z0)
            for row in self._form_inv
        )
        self._w2c_cache[key] = out
        return out

    def killing_pair(self, w1, w2):
        """Killing-normalized pairing of two weights (fundamental coords)."""
        x = self.weight_to_cartan(w2)
        return sum(Fraction(a) * b for a, b in zip(w1, x))

    def cartan_pair(self, h1, h2):
        """Killing form of two Cartan vectors."""
        tot = Fraction(0)
        for i, a in enumerate(h1):
            if a:
                row = self.form[i]
                tot += a * sum(b * row[j] for j, b in enumerate(h2) if b)
        return tot

    def root_norm_sq(self, index):
        f = self.fund_at(index)
        return self.killing_pair(f, f)

    def coroot_coords(self, index):
        """Coordinates d with h_beta = sum d_k h_k, beta the root at index."""
        if self._coroot_coords is None:
            coords = []
            for i in range(self.nposroots):
                f = self.root_fund[i]
                x = self.weight_to_cartan(f)
                nn = sum(a * b for a, b in zip(f, x))
                d = tuple(2 * xi / nn for xi in x)
                assert all(v.denominator == 1 for v in d), "coroot not integral"
                coords.append(tuple(int(v) for v in d))
            self._coroot_coords = coords
        if index < self.nposroots:
            return self._coroot_coords[index]
        return tuple(-v for v in self._coroot_coords[index - self.nposroots])

    def root_value(self, index, h):
        """a(h) for the root at the index and a Cartan vector h."""
        f = self.fund_at(index)
        return sum(c * v for c, v in zip(h, f) if c)

    def weight_value(self, weight, h):
        """mu(h) for a weight in fundamental coordinates."""
        return sum(Fraction(a) * b for a, b in zip(weight, h) if a)

    # reflections --------------------------------------------------------------

    def reflect_root(self, i, root):
        """s_i applied to a root in simple-root coordinates."""
        pairing = sum(root[k] * self.cartan[k][i] for k in range(self.rank))
        new = list(root)
        new[i] -= pairing
        return tuple(new)

    def simple_perms(self):
        """Permutations of the 2n root indices induced by s_1..s_l."""
        if self._simple_perms is None:
            n2 = 2 * self.nposroots
            perms = []
            for i in range(self.rank):
                images = [0] * n2
                for r in range(n2):
                    images[r] = self.root_index(self.reflect_root(i, self.root_at(r)))
                perms.append(tuple(images))
            self._simple_perms = perms
        return self._simple_perms

    def reflect_weight(self, i, weight):
        """s_i on a weight in fundamental coordinates."""
        wi = weight[i]
        if not wi:
            return tuple(weight)
        row = self.cartan[i]
        return tuple(a - wi * row[j] for j, a in enumerate(weight))

    def simple_value(self, i, h):
        """alpha_i(h) for a Cartan vector."""
        row = self.cartan[i]
        return sum(c * row[j] for j, c in enumerate(h) if c)

    def reflect_cartan(self, i, h):
        """s_i on a Cartan vector: h - alpha_i(h) h_i."""
        v = self.simple_value(i, h)
        if not v:
            return tuple(h)
        new = list(h)
        new[i] = new[i] - v
        return tuple(new)


def build_root_system(label):
    """Construct the root system of one simple type.

    The roots are generated by closing the simple roots under the simple
    reflections; positive roots are sorted by (height, reverse-lex).
    """
    cart = cartan_matrix(label)
    rank = len(cart)
    simples = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]

    def reflect(i, root):
        pairing = sum(root[k] * cart[k][i] for k in range(rank))
        new = list(root)
        new[i] -= pairing
        return tuple(new)

    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(rank):
                img = reflect(i, root)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    positives = [r for r in seen if all(c >= 0 for c in r)]
    positives.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    return RootSystem(label, cart, positives)


class WeylGroup:
    """Breadth-first enumeration of a Weyl group as root permutations.

    Elements come out ordered by word length (BFS from the identity,
    children s_i * w in generator order). The table of permutations is a
    numpy uint16 array; parent/gen arrays allow replaying the BFS under
    the induced action on any other index set.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        gens = [np.array(p, dtype=np.uint16) for p in rs.simple_perms()]
        n2 = 2 * rs.nposroots
        ident = np.arange(n2, dtype=np.uint16)
        rows = [ident]
        seen = {ident.tobytes(): 0}
        parent = [0]
        gen = [-1]
        length = [0]
        lo = 0
        while lo < len(rows):
            hi = len(rows)
            frontier = np.array(rows[lo:hi])
            for gi, g in enumerate(gens):
                children = g[frontier]
                for k in range(children.shape[0]):
                    row = children[k]
                    key = row.tobytes()
                    if key not in seen:
                        seen[key] = len(rows)
                        rows.append(row)
                        parent.append(lo + k)
                        gen.append(gi)
                        length.append(length[lo + k] + 1)
            lo = hi
        self.table = np.array(rows)
        self.parent = parent
        self.gen = gen
        self.length = length

    def __len__(self):
        return self.table.shape[0]

    def __getitem__(self, i):
        return WeylPermutation(map(int, self.table[i]), self.length[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def word(self, i):
        """Reduced word of element i in application order.

        Element i equals s_{w[-1]} ... s_{w[1]} s_{w[0]} with w[0] applied
        first; this matches perm_from_word and dominant_representative.
        """
        out = []
        while i:
            out.append(self.gen[i])
            i = self.parent[i]
        return tuple(reversed(out))

    def compose_table(self, gen_perms):
        """Replay the BFS under another index representation.

        gen_perms[i]: index permutation of s_i on a set of size m (anything
        numpy can index). Returns an (N, m) uint16 array, row k being the
        permutation of element k under the induced action.
        """
        arrs = [np.asarray(p, dtype=np.uint16) for p in gen_perms]
        m = arrs[0].shape[0]
        table = np.empty((len(self), m), dtype=np.uint16)
        table[0] = np.arange(m, dtype=np.uint16)
        for k in range(1, len(self)):
            table[k] = arrs[self.gen[k]][table[self.parent[k]]]
        return table


def weyl_group(rs: RootSystem) -> WeylGroup:
    return WeylGroup(rs)


def perm_from_word(rs: RootSystem, word):
    """Root permutation of s_{word[-1]} ... s_{word[0]} (application order)."""
    perms = rs.simple_perms()
    n2 = 2 * rs.nposroots
    images = list(range(n2))
    for i in word:
        g = perms[i]
        images = [g[x] for x in images]
    return WeylPermutation(images, len(word))


def dominant_representative(rs: RootSystem, h):
    """Dominant Weyl-chamber representative of a Cartan vector.

    Simple-reflection descent: while some alpha_i(h) < 0, apply s_i with the
    smallest such i. Returns (h_dom, word) with the generators in
    application order: h_dom = s_{word[-1]} ... s_{word[0]} h.
    """
    h = tuple(Fraction(c) for c in h)
    word = []
    while True:
        for i in range(rs.rank):
            if rs.simple_value(i, h) < 0:
                h = rs.reflect_cartan(i, h)
                word.append(i)
                break
        else:
            return h, tuple(word)


def dominant_weight_representative(rs: RootSystem, weight):
    """Same descent on a weight in fundamental coordinates."""
    w = tuple(Fraction(v) for v in weight)
    word = []
    while True:
        for i in range(rs.rank):
            if w[i] < 0:
                w = rs.reflect_weight(i, w)
                word.append(i)
                break
        else:
            return w, tuple(word)


def weyl_act_cartan(rs: RootSystem, w, h):
    """w . h for a Cartan vector h = sum c_j h_j: sum c_j h_{w(alpha_j)}.

    w may be a WeylPermutation or any indexable permutation of root indices.
    """
    out = [Fraction(0)] * rs.rank
    for j, c in enumerate(h):
        if c:
            d = rs.coroot_coords(int(w[j]))
            for k, dk in enumerate(d):
                if dk:
                    out[k] += Fraction(c) * dk
    return tuple(out)


def weyl_act_weight(rs: RootSystem, word, weight):
    """Apply a generator word (applied left to right) to a weight."""
    w = tuple(weight)
    for i in word:
        w = rs.reflect_weight(i, w)
    return w


def weyl_orbit_weights(rs: RootSystem, weight):
    """Weyl orbit of a weight in fundamental coordinates."""
    start = tuple(Fraction(v) for v in weight)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rs.rank):
                img = rs.reflect_weight(i, w)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen
