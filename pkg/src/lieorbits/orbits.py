"""Nilpotent orbit classification and reachability tests.

Orbits are found by enumerating all candidate node labelings in
{0,1,2}^rank, building the grading element h for each, and accepting a
labeling exactly when a generic element e of the degree-2 part extends
to a triple (f, h, e).  Acceptance is certified: the genericity of e is
a rank condition checked modulo a large prime (a lower bound meeting
the known upper bound), and the f-completion is an exact linear solve.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from .linalg import (
    BadPrime,
    DEFAULT_PRIME,
    Echelonizer,
    matmul_mod_p,
    nullspace_int,
    rank_mod_p,
    small_primes_from,
    solve_frac,
    solve_modular,
)
from .liealg import LieAlgebra, Subspace, make_subspace, _densify

Z0 = Fraction(0)

RETRY_BUDGET = 50
COEFF_RANGE = 100


class NilpotentOrbit:
    """A nonzero nilpotent orbit with a certified representative triple."""

    __slots__ = (
        "diagram", "h", "e", "f", "dim_centralizer", "dim_orbit",
        "reachable", "strongly_reachable", "almost_reachable", "rigid",
        "_graded_kernels",
    )

    def __init__(self, diagram, h, e, f, dim_centralizer, dim_orbit):
        self.diagram = diagram
        self.h = h
        self.e = e
        self.f = f
        self.dim_centralizer = dim_centralizer
        self.dim_orbit = dim_orbit
        self.reachable = None
        self.strongly_reachable = None
        self.almost_reachable = None
        self.rigid = None
        self._graded_kernels = None

    def __repr__(self):
        return "NilpotentOrbit(%s, dim %d)" % (list(self.diagram), self.dim_orbit)


def grading_element(L: LieAlgebra, labels):
    """Cartan coordinates of h with alpha_i(h) = labels[i]."""
    rs = L.rs
    cart = [[Fraction(rs.cartan[i][j]) for j in range(rs.rank)]
            for i in range(rs.rank)]
    hc = solve_frac(cart, [Fraction(v) for v in labels])
    assert hc is not None
    return tuple(hc)


def basis_grades(L: LieAlgebra, hc):
    """Integer ad-h eigenvalue of every basis element; errors if non-integral."""
    n = L.n
    grades = [0] * L.dim
    for i in range(n):
        v = L.rs.root_value(i, hc)
        if v.denominator != 1:
            raise ValueError("non-integral eigenvalue %s" % (v,))
        grades[i] = int(v)
        grades[i + n] = -int(v)
    return grades


def sl2_grading(L: LieAlgebra, hc):
    """Map k -> basis indices of g(k) for a Cartan vector h."""
    grades = basis_grades(L, hc)
    out = {}
    for idx, k in enumerate(grades):
        out.setdefault(k, []).append(idx)
    assert sum(len(v) for v in out.values()) == L.dim
    return out


def _bracket_rows_mod(L, rows_idx, e, cols_idx, p):
    """Matrix of x -> [x, e] from span(rows_idx) into coords cols_idx, mod p."""
    pos = {b: c for c, b in enumerate(cols_idx)}
    mat = []
    for b in rows_idx:
        acc = {}
        for j, cj in e.items():
            for k, ck in L.bracket_basis(b, j).items():
                acc[k] = acc.get(k, 0) + cj * ck
        row = [0] * len(cols_idx)
        for k, c in acc.items():
            if c:
                row[pos[k]] = int(c) % p
        mat.append(row)
    return mat


def _bracket_rows_int(L, rows_idx, e, cols_idx):
    pos = {b: c for c, b in enumerate(cols_idx)}
    mat = []
    for b in rows_idx:
        acc = {}
        for j, cj in e.items():
            for k, ck in L.bracket_basis(b, j).items():
                acc[k] = acc.get(k, 0) + cj * ck
        row = [0] * len(cols_idx)
        for k, c in acc.items():
            if c:
                assert Fraction(c).denominator == 1
                row[pos[k]] = int(c)
        mat.append(row)
    return mat


def _solve_f(L, e, gm2, hc):
    """f in g(-2) with [e, f] = h, or None. Exact."""
    if not gm2:
        return None
    base = 2 * L.n
    # [e, x_j] lies in g(0); solve on the full coordinate set for safety
    cols = []
    for j in gm2:
        w = L.bracket(e, {j: 1})
        cols.append(w)
    rows = []
    rhs = []
    for k in range(L.dim):
        row = [Fraction(c.get(k, 0)) for c in cols]
        b = Fraction(hc[k - base]) if k >= base else Z0
        if any(row) or b:
            rows.append(row)
            rhs.append(b)
    sol = solve_frac(rows, rhs)
    if sol is None:
        return None
    return {j: c for j, c in zip(gm2, sol) if c}


def classify_nilpotent_orbits(L: LieAlgebra, rng=None, retry=RETRY_BUDGET):
    """All nonzero nilpotent orbits, sorted by (orbit dimension, diagram)."""
    if rng is None:
        rng = random.Random(0x5EED)
    rank = L.rank
    n = L.n
    found = []
    for labels in itertools.product((0, 1, 2), repeat=rank):
        if not any(labels):
            continue
        hc = grading_element(L, labels)
        grades = basis_grades(L, hc)
        g0 = [i for i in range(L.dim) if grades[i] == 0]
        g2 = [i for i in range(2 * n) if grades[i] == 2]
        gm2 = [i for i in range(2 * n) if grades[i] == -2]
        if not g2:
            continue
        target = len(g2)

        # wide random draws settle whether a generic e spans [g(0), e] = g(2)
        generic = False
        for _ in range(2):
            e = {i: rng.randrange(1, DEFAULT_PRIME) for i in g2}
            m = _bracket_rows_mod(L, g0, e, g2, DEFAULT_PRIME)
            if rank_mod_p(m, DEFAULT_PRIME) == target:
                generic = True
                break
        if not generic:
            continue

        rep = None
        rejected = False
        for _ in range(retry):
            e = {i: rng.randint(-COEFF_RANGE, COEFF_RANGE) for i in g2}
            e = {i: c for i, c in e.items() if c}
            if not e:
                continue
            m = _bracket_rows_mod(L, g0, e, g2, DEFAULT_PRIME)
            if rank_mod_p(m, DEFAULT_PRIME) != target:
                continue
            f = _solve_f(L, e, gm2, hc)
            if f is None:
                # e is certified generic, so no generic element extends
                rejected = True
            else:
                rep = (e, f)
            break
        if rejected:
            continue
        if rep is None:
            raise RuntimeError(
                "representative search exhausted for labels %s" % (labels,))
        e, f = rep
        _verify_triple(L, e, hc, f)
        kernels = _graded_kernels(L, e, grades)
        dim_cent = sum(len(v) for v in kernels.values())
        dim_orbit = L.dim - dim_cent
        assert dim_orbit % 2 == 0
        orb = NilpotentOrbit(tuple(labels), hc, e, f, dim_cent, dim_orbit)
        orb._graded_kernels = kernels
        found.append(orb)

    found.sort(key=lambda o: (o.dim_orbit, o.diagram))
    _check_eigenvalue_separation(L, found)
    return found


def _verify_triple(L, e, hc, f):
    h_el = L.cartan_element(hc)
    assert L.bracket(e, f) == h_el
    he = L.bracket(h_el, e)
    assert he == {k: 2 * c for k, c in e.items()}
    hf = L.bracket(h_el, f)
    assert hf == {k: -2 * c for k, c in f.items()}


def _graded_kernels(L, e, grades):
    """Bases of g(k) intersect g_e, as sparse elements, keyed by k."""
    by_grade = {}
    for idx, k in enumerate(grades):
        by_grade.setdefault(k, []).append(idx)
    out = {}
    for k, src in sorted(by_grade.items()):
        dst = by_grade.get(k + 2, [])
        if not dst:
            out[k] = [{i: 1} for i in src]
            continue
        pos = {b: c for c, b in enumerate(dst)}
        rows = []
        for c2 in dst:
            rows.append([0] * len(src))
        for col, b in enumerate(src):
            acc = {}
            for j, cj in e.items():
                for kk, ck in L.bracket_basis(b, j).items():
                    acc[kk] = acc.get(kk, 0) + cj * ck
            for kk, c in acc.items():
                if c:
                    rows[pos[kk]][col] = int(c)
        ker = nullspace_int(rows, len(src))
        vecs = []
        for kv in ker:
            vecs.append({src[c]: v for c, v in enumerate(kv) if v})
        if vecs:
            out[k] = vecs
    return {k: v for k, v in out.items() if v}


def _eigen_multiset(L, diagram):
    hc = grading_element(L, diagram)
    return tuple(sorted(basis_grades(L, hc)))


def diagram_automorphisms(cart):
    """Node permutations preserving a Cartan matrix, as image tuples."""
    n = len(cart)
    out = []
    perm = [0] * n
    used = [False] * n

    def extend(i):
        if i == n:
            out.append(tuple(perm))
            return
        for j in range(n):
            if used[j] or cart[i][i] != cart[j][j]:
                continue
            if any(cart[i][k] != cart[j][perm[k]]
                   or cart[k][i] != cart[perm[k]][j] for k in range(i)):
                continue
            used[j] = True
            perm[i] = j
            extend(i + 1)
            used[j] = False

    extend(0)
    return out


def _auto_images(cart, diagram):
    """All transports of a node labeling along diagram automorphisms."""
    n = len(cart)
    images = set()
    for s in diagram_automorphisms(cart):
        img = [0] * n
        for i in range(n):
            img[s[i]] = diagram[i]
        images.add(tuple(img))
    return images


def _check_eigenvalue_separation(L, orbits):
    """Eigen multisets must separate orbits up to diagram automorphism.

    Two distinct orbits may share the ad-h eigenvalue multiset only when
    an automorphism of the Dynkin diagram carries one weighted diagram to
    the other: the induced algebra automorphism then maps one orbit onto
    the other, so every invariant of the adjoint action agrees.  This is
    unavoidable (even spin types have such twin pairs) and identification
    reports the whole twin group; any other collision is a failure.
    """
    groups = {}
    for o in orbits:
        groups.setdefault(_eigen_multiset(L, o.diagram), []).append(o)
    for group in groups.values():
        if len(group) == 1:
            continue
        base = group[0]
        images = _auto_images(L.rs.cartan, base.diagram)
        for o in group[1:]:
            if o.diagram not in images or o.dim_orbit != base.dim_orbit:
                raise RuntimeError(
                    "ad-h eigenvalue multiset collision outside the "
                    "diagram automorphism group: %s vs %s"
                    % (base.diagram, o.diagram))


# sl2 completion for arbitrary nilpotent elements ------------------------------

def _scaled_integral(e):
    """(integer sparse element, scale) with element = scaled/scale."""
    den = 1
    for c in e.values():
        q = Fraction(c).denominator
        g = _gcd(den, q)
        den = den * q // g
    return {k: int(Fraction(c) * den) for k, c in e.items()}, den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _nilpotent_mod_p(L, eint, p):
    """Whether ad(eint) is nilpotent mod p (exact 'no', probabilistic 'yes')."""
    d = L.dim
    mat = np.zeros((d, d), dtype=np.int64)
    for j in range(d):
        for k, c in L.bracket(eint, {j: 1}).items():
            mat[k, j] = int(c) % p
    steps = max(1, (d - 1).bit_length())
    for _ in range(steps):
        mat = matmul_mod_p(mat, mat, p)
        if not mat.any():
            return True
    return False


def jacobson_morozov(L: LieAlgebra, e):
    """Complete a nilpotent e to (f, h, e) with the exact bracket relations.

    The heavy solves run over several primes with rational reconstruction;
    every returned value is certified by exact sparse bracket identities.
    """
    e = {k: Fraction(c) for k, c in e.items() if c}
    if not e:
        raise ValueError("zero element")
    eint, scale = _scaled_integral(e)
    if not _nilpotent_mod_p(L, eint, DEFAULT_PRIME):
        raise ValueError("element is not nilpotent")
    d = L.dim

    # columns of (ad e)^2, integer and sparse
    ad2cols = []
    for j in range(d):
        w = L.bracket(eint, {j: 1})
        ad2cols.append(L.bracket(eint, w) if w else {})

    def build_u(p):
        a = np.zeros((d, d), dtype=np.int64)
        for j, col in enumerate(ad2cols):
            for k, c in col.items():
                a[k, j] = int(c) % p
        b = [0] * d
        for k, c in eint.items():
            b[k] = (-2 * int(c)) % p
        return a, b

    target = {k: -2 * Fraction(c) for k, c in eint.items()}

    def verify_u(x):
        u = {j: c for j, c in enumerate(x) if c}
        got = L.bracket(eint, L.bracket(eint, u))
        return got == target

    u = solve_modular(build_u, d, verify_u)
    if u is None:
        raise ValueError("no grading element; element is not nilpotent")
    h = L.bracket(eint, {j: c for j, c in enumerate(u) if c})

    # f with [eint, f] = h and [h, f] = -2f, stacked
    adecols = [L.bracket(eint, {j: 1}) for j in range(d)]
    adhcols = [L.bracket(h, {j: 1}) for j in range(d)]
    hden = 1
    for c in h.values():
        q = Fraction(c).denominator
        hden = hden * q // _gcd(hden, q)

    def build_f(p):
        if hden % p == 0:
            raise BadPrime()
        a = np.zeros((2 * d, d), dtype=np.int64)
        for j in range(d):
            for k, c in adecols[j].items():
                a[k, j] = int(c) % p
            for k, c in adhcols[j].items():
                fc = Fraction(c)
                a[d + k, j] = fc.numerator * pow(fc.denominator, p - 2, p) % p
            a[d + j, j] = (a[d + j, j] + 2) % p
        b = [0] * (2 * d)
        for k, c in h.items():
            fc = Fraction(c)
            b[k] = fc.numerator * pow(fc.denominator, p - 2, p) % p
        return a, b

    def verify_f(x):
        f = {j: c for j, c in enumerate(x) if c}
        if L.bracket(eint, f) != h:
            return False
        return L.bracket(h, f) == {k: -2 * c for k, c in f.items()}

    fsol = solve_modular(build_f, d, verify_f)
    assert fsol is not None, "sl2 completion failed for a nilpotent element"
    fint = {j: c for j, c in enumerate(fsol) if c}
    assert L.bracket(h, eint) == {k: 2 * c for k, c in eint.items()}
    # rescale back to the caller's e: (e, h, f) with f = scale * fint
    f = {k: scale * c for k, c in fint.items()}
    assert L.bracket(e, f) == h
    return f, h, e


# reachability ------------------------------------------------------------------

def centralizer_graded(L: LieAlgebra, orbit: NilpotentOrbit):
    if orbit._graded_kernels is None:
        grades = basis_grades(L, orbit.h)
        orbit._graded_kernels = _graded_kernels(L, orbit.e, grades)
    return orbit._graded_kernels


class ReachabilityReport:
    __slots__ = ("dim_centralizer", "dim_derived", "reachable",
                 "strongly_reachable", "almost_reachable")

    def __init__(self, dim_centralizer, dim_derived, reachable,
                 strongly_reachable, almost_reachable):
        self.dim_centralizer = dim_centralizer
        self.dim_derived = dim_derived
        self.reachable = reachable
        self.strongly_reachable = strongly_reachable
        self.almost_reachable = almost_reachable


def reachability_report(L: LieAlgebra, orbit: NilpotentOrbit):
    """Membership of e in [g_e, g_e] and the related centralizer flags."""
    kernels = centralizer_graded(L, orbit)
    basis = [el for k in sorted(kernels) for el in kernels[k]]
    ge = make_subspace(basis, L.dim)
    der = L.derived_of(ge)
    evec = _densify(orbit.e, L.dim)
    reach = der.contains(evec)
    strong = der.dim == ge.dim
    almost = False
    if not strong and der.dim + 1 == ge.dim and not reach:
        ech = Echelonizer(L.dim)
        for row in der.rows:
            ech.add(row)
        ech.add(evec)
        almost = ech.dim == ge.dim
    orbit.reachable = reach
    orbit.strongly_reachable = strong
    orbit.almost_reachable = almost
    return ReachabilityReport(ge.dim, der.dim, reach, strong, almost)


def panyushev_check(L: LieAlgebra, orbit: NilpotentOrbit):
    """Whether g(>=1)_e is generated as a Lie algebra by g(1)_e."""
    kernels = centralizer_graded(L, orbit)
    g1 = kernels.get(1, [])
    upper = [el for k, els in kernels.items() if k >= 1 for el in els]
    updim = len(upper)
    if not g1:
        return updim == 0
    gen = L.subalgebra_generated_by(g1)
    # brackets of centralizer elements stay in the centralizer, and the
    # grading is additive, so gen is contained in g(>=1)_e; equality is a
    # dimension count
    assert gen.dim <= updim
    return gen.dim == updim


def c_e_dimension(L: LieAlgebra, orbit: NilpotentOrbit):
    """dim of g_e modulo its derived subalgebra."""
    kernels = centralizer_graded(L, orbit)
    basis = [el for k in sorted(kernels) for el in kernels[k]]
    ge = make_subspace(basis, L.dim)
    der = L.derived_of(ge)
    return ge.dim - der.dim


# identification ----------------------------------------------------------------

def identify_orbit_candidates(L: LieAlgebra, e, orbits=None):
    """Classified orbits whose ad-h eigenvalue multiset matches e's triple.

    The certified multiset pins the orbit down up to diagram automorphism
    (checked at classification time), so the returned list has a single
    entry except for automorphism-twin groups, where every returned orbit
    has the same dimension and the twins are mutual images under the
    corresponding algebra automorphisms.
    """
    if orbits is None:
        orbits = classify_nilpotent_orbits(L)
    _, h, _ = jacobson_morozov(L, e)
    tables = {o: _eigen_multiset(L, o.diagram) for o in orbits}
    values = sorted({v for t in tables.values() for v in t})
    adh = L.ad_matrix(h)
    den = 1
    for row in adh:
        for v in row:
            if v.denominator != 1:
                den = den * v.denominator // _gcd(den, v.denominator)

    d = L.dim
    gen = small_primes_from(10 ** 6)
    for _ in range(6):
        p = next(gen)
        if den % p == 0:
            continue
        dinv = pow(den % p, p - 2, p)
        base = [[(int(v * den) * dinv) % p for v in row] for row in adh]
        mults = {}
        total = 0
        for k in values:
            shifted = [list(row) for row in base]
            for i in range(d):
                shifted[i][i] = (shifted[i][i] - k) % p
            mult = d - rank_mod_p(shifted, p)
            if mult:
                mults[k] = mult
                total += mult
        if total != d:
            continue  # rank dropped mod p; try the next prime
        multiset = tuple(sorted(
            v for k, m in mults.items() for v in [k] * m))
        matches = [o for o, t in tables.items() if t == multiset]
        if not matches:
            raise RuntimeError(
                "eigenvalue multiset %s matches no classified orbit"
                % (multiset,))
        return matches
    raise RuntimeError("eigenvalue multiplicities never certified exactly")


def identify_orbit(L: LieAlgebra, e, orbits=None):
    """Match a nilpotent element to its unique classified orbit.

    Raises when the eigenvalue invariant only determines an automorphism
    twin group; use identify_orbit_candidates to receive the group.
    """
    matches = identify_orbit_candidates(L, e, orbits)
    if len(matches) != 1:
        raise RuntimeError(
            "element matches the automorphism twin group %s"
            % sorted(o.diagram for o in matches))
    return matches[0]
