"""Exact linear algebra over the rationals, with integer and mod-p kernels.

Contract-level results are exact (fractions.Fraction or Python ints).
numpy enters only through mod-p fast paths; a mod-p rank is a lower bound
on the rational rank and is treated as exact only when it meets a known
upper bound.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

Z0 = Fraction(0)
Z1 = Fraction(1)


def frac_rref(rows):
    """Reduced row echelon form over Fraction.

    Returns (rref_rows, pivot_cols) with zero rows dropped and pivots
    normalized to 1. Input rows are not modified.
    """
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        if pv != 1:
            mat[r] = [x / pv for x in mat[r]]
        row = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mi = mat[i]
                mat[i] = [a - f * b for a, b in zip(mi, row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def _prim(vec):
    """Scale an integer vector to primitive form with positive leading entry."""
    g = 0
    for x in vec:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        vec = [x // g for x in vec]
    for x in vec:
        if x:
            if x < 0:
                vec = [-y for y in vec]
            break
    return vec


def int_echelon(rows):
    """Integer fraction-free row echelon form (not reduced).

    Rows are gcd-normalized after each elimination step to contain growth.
    Returns (echelon_rows, pivot_cols); echelon rows are integer lists.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        best = None
        for i in range(r, len(mat)):
            v = mat[i][c]
            if v:
                a = abs(v)
                if best is None or a < best:
                    best = a
                    pr = i
                    if a == 1:
                        break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        prow = mat[r]
        pv = prow[c]
        for i in range(r + 1, len(mat)):
            v = mat[i][c]
            if v:
                mi = mat[i]
                mat[i] = _prim([pv * a - v * b for a, b in zip(mi, prow)])
        mat = mat[: r + 1] + [row for row in mat[r + 1 :] if any(row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def int_rank(rows):
    return len(int_echelon(rows)[0])


def nullspace_int(rows, ncols):
    """Primitive integer basis of the right kernel of an integer matrix."""
    ech, pivots = int_echelon(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        x = [Z0] * ncols
        x[fc] = Z1
        for i in range(len(ech) - 1, -1, -1):
            row = ech[i]
            c = pivots[i]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if x[j]), Z0)
            x[c] = -s / row[c]
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        basis.append(_prim([int(v * den) for v in x]))
    return basis


def solve_frac(rows, rhs):
    """Solve A x = b over Fraction; returns one solution or None."""
    n = len(rows)
    if n == 0:
        return None
    ncols = len(rows[0])
    aug = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    red, pivots = frac_rref(aug)
    x = [Z0] * ncols
    for row, c in zip(red, pivots):
        if c == ncols:
            return None
        x[c] = row[ncols]
    return x


def in_rowspace(rref_rows, pivots, vec):
    """Membership test against a frac_rref basis; returns coefficients or None."""
    v = list(map(Fraction, vec))
    coeffs = []
    for row, c in zip(rref_rows, pivots):
        f = v[c]
        coeffs.append(f)
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs


class Echelonizer:
    """Incremental reduced echelon basis over Fraction.

    add() reduces a vector against the basis; a nonzero remainder joins the
    basis and True is returned. Used by closure-style span computations.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}  # pivot col -> normalized row (list of Fraction)

    def reduce(self, vec):
        v = list(map(Fraction, vec))
        for c in sorted(self.rows):
            if v[c]:
                f = v[c]
                row = self.rows[c]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec):
        v = self.reduce(vec)
        for c in range(self.ncols):
            if v[c]:
                pv = v[c]
                if pv != 1:
                    v = [x / pv for x in v]
                for c2, row in self.rows.items():
                    if row[c]:
                        f = row[c]
                        self.rows[c2] = [a - f * b for a, b in zip(row, v)]
                self.rows[c] = v
                return True
        return False

    def contains(self, vec):
        return not any(self.reduce(vec))

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        return [tuple(self.rows[c]) for c in sorted(self.rows)]


def intersect_rowspaces(rows_a, rows_b, ncols):
    """Basis (frac_rref) of rowspace(A) intersected with rowspace(B)."""
    if not rows_a or not rows_b:
        return []
    na, nb = len(rows_a), len(rows_b)
    # kernel of [A^T | -B^T]: pairs (y, z) with y A = z B
    stacked = []
    for j in range(ncols):
        stacked.append(
            [Fraction(rows_a[i][j]) for i in range(na)]
            + [-Fraction(rows_b[i][j]) for i in range(nb)]
        )
    ker = nullspace_frac(stacked, na + nb)
    vecs = []
    for k in ker:
        vecs.append([sum(k[i] * rows_a[i][j] for i in range(na)) for j in range(ncols)])
    return frac_rref(vecs)[0]


def nullspace_frac(rows, ncols):
    """Fraction basis of the right kernel."""
    red, pivots = frac_rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        x = [Z0] * ncols
        x[fc] = Z1
        for row, c in zip(red, pivots):
            x[c] = -row[fc]
        basis.append(tuple(x))
    return basis


# mod-p kernels ---------------------------------------------------------------

# Largest prime kept below 1.9e8 so that 248-term dot products of two
# reduced matrices stay inside int64.
DEFAULT_PRIME = 189812507


def is_probable_prime(n):
    """Deterministic Miller-Rabin for n < 3.2e9 (bases 2, 3, 5, 7)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng, lo=10**8, hi=18 * 10**7):
    """Seeded prime draw for mod-p probes."""
    while True:
        n = rng.randrange(lo | 1, hi, 2)
        if is_probable_prime(n):
            return n


def rank_mod_p(mat, p=DEFAULT_PRIME):
    """Rank of an integer matrix modulo p (lower bound on rational rank)."""
    a = np.array(mat, dtype=object) if _needs_object(mat) else np.array(mat, dtype=np.int64)
    if a.size == 0:
        return 0
    if a.dtype == object:
        a = np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(a)
    else:
        a = a % p
    return _rank_mod_p_arr(a, p)


def _needs_object(mat):
    for row in mat:
        for x in row:
            if x.bit_length() > 62:
                return True
    return False


def _rank_mod_p_arr(a, p):
    a = a.copy()
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        rows_below = a[r + 1 :, c].nonzero()[0]
        if rows_below.size:
            idx = rows_below + r + 1
            a[idx] = (a[idx] - np.outer(a[idx, c], a[r])) % p
        r += 1
    return r


def matmul_mod_p(a, b, p=DEFAULT_PRIME):
    return (a @ b) % p


def rref_mod_p(a, p):
    """Reduced row echelon form mod p. Returns (reduced, pivot_cols)."""
    a = np.asarray(a, dtype=np.int64).copy() % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_mod_p(a, p):
    """Right-kernel basis mod p, as rows of an int64 array."""
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("need a 2d array")
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    red, pivots = rref_mod_p(a, p)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for row, c in zip(red, pivots):
            basis[t, c] = (-int(row[fc])) % p
    return basis


def coords_mod_p(basis, vecs, p):
    """Coordinates of each row of vecs in the row space of basis, mod p.

    basis rows must be independent mod p. Raises ValueError if some vector
    is outside the span.
    """
    b = np.asarray(basis, dtype=np.int64) % p
    k, n = b.shape
    aug = np.concatenate([b, np.eye(k, dtype=np.int64)], axis=1)
    red, pivots = rref_mod_p(aug, p)
    if len(pivots) != k or any(c >= n for c in pivots):
        raise ValueError("basis rows dependent mod p")
    ech = red[:, :n]
    trans = red[:, n:]
    vv = np.asarray(vecs, dtype=np.int64) % p
    out = np.zeros((vv.shape[0], k), dtype=np.int64)
    for i in range(vv.shape[0]):
        v = vv[i].copy()
        coeff = np.zeros(k, dtype=np.int64)
        for r, c in enumerate(pivots):
            f = int(v[c])
            if f:
                coeff[r] = f
                v = (v - f * ech[r]) % p
        if np.any(v):
            raise ValueError("vector outside span")
        out[i] = coeff @ trans % p
    return out


def _hessenberg_mod_p(a, p):
    """Similarity-reduce to upper Hessenberg form mod p."""
    h = np.asarray(a, dtype=np.int64).copy() % p
    n = h.shape[0]
    for c in range(n - 2):
        nz = np.nonzero(h[c + 1 :, c])[0]
        if nz.size == 0:
            continue
        pr = c + 1 + int(nz[0])
        if pr != c + 1:
            h[[c + 1, pr]] = h[[pr, c + 1]]
            h[:, [c + 1, pr]] = h[:, [pr, c + 1]]
        inv = pow(int(h[c + 1, c]), p - 2, p)
        rows = np.nonzero(h[c + 2 :, c])[0]
        if rows.size:
            idx = rows + c + 2
            f = h[idx, c] * inv % p
            h[idx] = (h[idx] - np.outer(f, h[c + 1])) % p
            h[:, c + 1] = (h[:, c + 1] + h[:, idx] @ f) % p
    return h


def charpoly_mod_p(a, p):
    """Coefficients c[0..n] of det(t I - A) mod p, c[n] = 1.

    Hessenberg reduction followed by the leading-minor recurrence, O(n^3).
    """
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if n == 0:
        return [1]
    h = _hessenberg_mod_p(a, p)
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        f = [0] * (k + 1)
        d0 = int(h[k - 1, k - 1])
        for i, c in enumerate(prev):
            f[i + 1] = (f[i + 1] + c) % p
            f[i] = (f[i] - d0 * c) % p
        prod = 1
        for m in range(1, k):
            prod = prod * int(h[k - m, k - m - 1]) % p
            if prod == 0:
                break
            coef = int(h[k - 1 - m, k - 1]) * prod % p
            if coef:
                for i, c in enumerate(polys[k - 1 - m]):
                    f[i] = (f[i] - coef * c) % p
        polys.append(f)
    return polys[n]


def poly_roots_mod_p(coeffs, p):
    """Distinct roots in F_p of sum coeffs[k] t^k, by full scan (small p)."""
    ts = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * ts + int(c) % p) % p
    return np.nonzero(acc == 0)[0].tolist()


def small_primes_from(start):
    """Deterministic generator of primes >= start (for mod-p type probes)."""
    n = max(int(start), 2)
    if n % 2 == 0 and n > 2:
        n += 1
    while True:
        if is_probable_prime(n):
            yield n
        n += 1 if n == 2 else 2

def rat_reconstruct(r, m):
    """Rational p/q congruent to r mod m with |p|, q <= sqrt(m/2), or None."""
    r = r % m
    if r == 0:
        return Fraction(0)
    bound = isqrt(m // 2)
    a0, a1 = m, r
    t0, t1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        t0, t1 = t1, t0 - q * t1
    if a1 == 0 or abs(t1) > bound:
        return None
    if t1 < 0:
        a1, t1 = -a1, -t1
    if gcd(a1, t1) != 1:
        return None
    return Fraction(a1, t1)


class BadPrime(Exception):
    """Raised by a solve_modular build callback to skip an unusable prime."""


def solve_modular(build, ncols, verify, max_primes=200):
    """Exact solution of a linear system from per-prime images.

    build(p) must return (A, b) reduced mod p (nested lists or arrays);
    verify(x) checks an exact candidate (list of Fraction) against the
    original system.  The per-prime particular solution fixes all free
    variables to zero; solutions are CRT-combined and rationally
    reconstructed until verify passes.  Returns the solution, or None
    when two good primes both report inconsistency (callers needing an
    exact infeasibility certificate must produce one separately).
    """
    gen = small_primes_from(1 << 27)
    residues = None
    modulus = 1
    ref_pivots = None
    inconsistent = 0
    for _ in range(max_primes):
        p = next(gen)
        try:
            a, b = build(p)
        except BadPrime:
            continue
        a = np.asarray(a, dtype=np.int64) % p
        bb = (np.asarray(b, dtype=np.int64) % p).reshape(-1, 1)
        red, pivots = rref_mod_p(np.concatenate([a, bb], axis=1), p)
        if any(c >= ncols for c in pivots):
            inconsistent += 1
            if inconsistent >= 2:
                return None
            continue
        if ref_pivots is None:
            ref_pivots = list(pivots)
        elif list(pivots) != ref_pivots:
            # one of the primes is unlucky; restart with this pivot set
            # only if it is strictly larger (higher rank wins)
            if len(pivots) > len(ref_pivots):
                ref_pivots = list(pivots)
                residues = None
                modulus = 1
            else:
                continue
        x = [0] * ncols
        for row, c in zip(red, pivots):
            x[c] = int(row[ncols])
        if residues is None:
            residues = x
            modulus = p
        else:
            minv = pow(modulus % p, p - 2, p)
            nm = modulus * p
            residues = [
                (xm + modulus * ((minv * (xp - xm)) % p)) % nm
                for xm, xp in zip(residues, x)
            ]
            modulus = nm
        cand = [rat_reconstruct(r, modulus) for r in residues]
        if all(c is not None for c in cand) and verify(cand):
            return cand
    raise RuntimeError("modular solve did not stabilize")
