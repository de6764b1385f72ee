"""Scratch sanity checks for the core layers. Not part of the test suite."""

import itertools
import time
from fractions import Fraction

from lieorbits.rootsys import (
    build_root_system,
    weyl_group,
    perm_from_word,
    dominant_representative,
    weyl_act_cartan,
)
from lieorbits.liealg import build_chevalley_algebra, make_subspace

EXPECT_NPOS = {
    "A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "G2": 6,
    "D4": 12, "F4": 24, "B6": 36, "A5": 15, "D5": 20,
    "E6": 36, "E7": 63, "E8": 120,
}

WEYL_ORDERS = {
    "A1": 2, "A2": 6, "B2": 8, "G2": 12, "A3": 24, "B3": 48, "C3": 48,
    "D4": 192, "F4": 1152, "B6": 46080,
}


def check_root_counts():
    for label, n in EXPECT_NPOS.items():
        rs = build_root_system(label)
        assert rs.nposroots == n, (label, rs.nposroots, n)
        # simple roots come first
        for i in range(rs.rank):
            r = rs.positive_roots[i]
            assert sum(r) == 1 and r[i] == 1, (label, i, r)
    print("root counts ok")


def check_weyl():
    for label, order in WEYL_ORDERS.items():
        rs = build_root_system(label)
        t0 = time.time()
        W = weyl_group(rs)
        assert len(W) == order, (label, len(W), order)
        print(f"  |W({label})| = {len(W)}  ({time.time()-t0:.2f}s)")
    rs = build_root_system("G2")
    W = weyl_group(rs)
    # words reproduce permutations
    for i in range(len(W)):
        w = W[i]
        assert perm_from_word(rs, W.word(i)) == w, i
    # dominant representative round trip
    h = (Fraction(3), Fraction(-2))
    hd, word = dominant_representative(rs, h)
    assert weyl_act_cartan(rs, perm_from_word(rs, word), h) == tuple(hd)
    for i in range(rs.rank):
        assert rs.simple_value(i, hd) >= 0
    print("weyl ok")


def check_jacobi(label):
    L = build_chevalley_algebra(label)
    dim = L.dim
    t0 = time.time()
    idx = list(range(dim))
    bad = 0
    for i, j, k in itertools.combinations(idx, 3):
        a = L.bracket_basis(i, j)
        t1 = L.bracket(a, {k: 1}) if a else {}
        b = L.bracket_basis(j, k)
        t2 = L.bracket(b, {i: 1}) if b else {}
        c = L.bracket_basis(k, i)
        t3 = L.bracket(c, {j: 1}) if c else {}
        tot = {}
        for part in (t1, t2, t3):
            for m, v in part.items():
                tot[m] = tot.get(m, 0) + v
        if any(v for v in tot.values()):
            bad += 1
            if bad < 4:
                print("JACOBI FAIL", label, (i, j, k), tot)
    assert bad == 0, (label, bad)
    print(f"  jacobi {label} ok (dim {dim}, {time.time()-t0:.1f}s)")


def check_structure(label):
    L = build_chevalley_algebra(label)
    rs = L.rs
    n = L.n
    # |N| = p+1 for all positive pairs that sum to a root
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = L.constants.sum_index(i, j)
            if s is None:
                continue
            p = L.constants.string_p(i, j)
            v = L.constants.value(i, j)
            assert abs(v) == p + 1, (label, i, j, v, p)
    # [x_a, x_-a] = coroot, and alpha(h_alpha) = 2
    for i in range(n):
        h = L.bracket_basis(i, rs.negative(i))
        hvec = [Fraction(0)] * rs.rank
        for k, c in h.items():
            hvec[k - 2 * n] = Fraction(c)
        assert rs.root_value(i, hvec) == 2, (label, i)
    print(f"  structure {label} ok")


def check_killing(label):
    L = build_chevalley_algebra(label)
    rs = L.rs
    # killing form on Cartan matches rs.form
    for i in range(rs.rank):
        for j in range(rs.rank):
            u = {2 * L.n + i: 1}
            v = {2 * L.n + j: 1}
            assert L.killing_pair(u, v) == rs.form[i][j], (label, i, j)
    print(f"  killing {label} ok")


def check_subspace_hash():
    L = build_chevalley_algebra("A2")
    s1 = make_subspace([{0: 1}, {1: 2}], L.dim)
    s2 = make_subspace([{1: 1}, {0: 3}], L.dim)
    assert s1 == s2 and hash(s1) == hash(s2)
    d = {s1: "x"}
    assert d[s2] == "x"
    print("subspace hash ok")


def check_centralizer():
    L = build_chevalley_algebra("G2")
    # regular semisimple element: centralizer = Cartan (dim 2)
    h = L.cartan_element([1, 5])
    c = L.centralizer([h])
    assert c.dim == 2, c.dim
    # highest root vector in A2: centralizer dim 4
    L2 = build_chevalley_algebra("A2")
    c2 = L2.centralizer([{2: 1}])
    assert c2.dim == 4, c2.dim
    print("centralizer ok")


def main():
    check_root_counts()
    check_weyl()
    for label in ("A2", "B2", "G2", "A3", "B3", "C3"):
        check_structure(label)
        check_jacobi(label)
        check_killing(label)
    check_subspace_hash()
    check_centralizer()
    t0 = time.time()
    for label in ("B6", "E6", "E7", "E8"):
        L = build_chevalley_algebra(label)
        expect = {"B6": 78, "E6": 78, "E7": 133, "E8": 248}[label]
        assert L.dim == expect, (label, L.dim)
        print(f"  built {label} dim {L.dim} ({time.time()-t0:.1f}s)")
        t0 = time.time()
    print("ALL SANITY OK")


if __name__ == "__main__":
    main()
