"""Finite-dimensional highest weight modules with exact rational matrices.

Weights are tuples of Fractions in fundamental-weight coordinates. The
module basis is built from monomials in the lowering generators applied to
a highest vector; linear dependence among monomials is decided with the
contravariant (Shapovalov) form, which is computed level by level together
with the raising action, so every step stays rational.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import frac_rref, nullspace_frac, solve_frac
from .liealg import LieAlgebra, Subspace, make_subspace
from .rootsys import (
    RootSystem,
    dominant_weight_representative,
    weyl_orbit_weights,
)

Z0 = Fraction(0)
Z1 = Fraction(1)


def _pair(rs: RootSystem, wa, wb):
    """Inner product of two weights (fundamental coordinates)."""
    return rs.weight_value(wa, rs.weight_to_cartan(wb))


def weyl_dimension(rs: RootSystem, hw):
    """Dimension of the irreducible module with the given highest weight."""
    lam = tuple(Fraction(x) for x in hw)
    rho = tuple(Z1 for _ in range(rs.rank))
    lr = tuple(a + b for a, b in zip(lam, rho))
    num = Z1
    den = Z1
    for i in range(rs.nposroots):
        alpha = rs.fund_at(i)
        num *= _pair(rs, lr, alpha)
        den *= _pair(rs, rho, alpha)
    d = num / den
    assert d.denominator == 1 and d > 0
    return int(d)


def _cartan_inverse(rs: RootSystem):
    l = rs.rank
    aug = [
        [Fraction(rs.cartan[i][j]) for j in range(l)]
        + [Z1 if j == i else Z0 for j in range(l)]
        for i in range(l)
    ]
    red, piv = frac_rref(aug)
    assert list(piv) == list(range(l))
    return [row[l:] for row in red]


def _root_coords(fund, cinv):
    """Simple-root coefficients of a weight given in fundamental coords."""
    l = len(fund)
    return tuple(
        sum((fund[i] * cinv[i][j] for i in range(l) if fund[i]), Z0)
        for j in range(l)
    )


def dominant_multiplicities(rs: RootSystem, hw):
    """Freudenthal multiplicities {dominant weight: m} for the module."""
    lam = tuple(Fraction(x) for x in hw)
    rho = tuple(Z1 for _ in range(rs.rank))
    lr = tuple(a + b for a, b in zip(lam, rho))
    top = _pair(rs, lr, lr)
    simple_fund = [rs.fund_at(i) for i in range(rs.rank)]
    cinv = _cartan_inverse(rs)

    def in_weight_hull(cand):
        # cand is a weight of V(lam) iff its dominant representative is
        # below lam in the root-coefficient order
        dom, _ = dominant_weight_representative(rs, cand)
        diff = _root_coords([a - b for a, b in zip(lam, dom)], cinv)
        return all(x >= 0 for x in diff)

    # the weight system itself: saturated, connected by simple-root steps
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for sf in simple_fund:
                cand = tuple(a - b for a, b in zip(mu, sf))
                if cand in seen:
                    continue
                if in_weight_hull(cand):
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt

    dominants = [mu for mu in seen if all(c >= 0 for c in mu)]
    # decreasing (mu+rho)^2 is a safe processing order: it strictly
    # decreases along the dominance order on dominant weights
    dominants.sort(
        key=lambda mu: _pair(
            rs,
            tuple(a + b for a, b in zip(mu, rho)),
            tuple(a + b for a, b in zip(mu, rho)),
        ),
        reverse=True,
    )
    mult = {}
    posroots = [rs.fund_at(i) for i in range(rs.nposroots)]
    for mu in dominants:
        if mu == lam:
            mult[lam] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = top - _pair(rs, mr, mr)
        if denom == 0:
            continue
        total = Z0
        for alpha in posroots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, alpha))
                dom, _ = dominant_weight_representative(rs, nu)
                m = mult.get(dom)
                if m is None or m == 0:
                    # weights of V are norm-bounded; once we leave the
                    # support along this ray we never come back
                    if _pair(rs, nu, nu) > top:
                        break
                    if m is None:
                        break
                else:
                    total += 2 * m * _pair(rs, nu, alpha)
                k += 1
        m = total / denom
        assert m.denominator == 1 and m >= 0
        if m:
            mult[mu] = int(m)
    return {mu: m for mu, m in mult.items() if m}


def all_weights(rs: RootSystem, hw):
    """{weight: multiplicity} over the full weight system of the module."""
    out = {}
    for mu, m in dominant_multiplicities(rs, hw).items():
        for w in weyl_orbit_weights(rs, mu):
            out[w] = m
    return out


class HighestWeightModule:
    """Irreducible module with exact matrices for the Chevalley basis action.

    Basis vectors are indexed 0..dim-1; index 0 is the highest vector.
    weights[i] is the weight of basis vector i in fundamental coordinates.
    Action matrices are sparse {column: {row: Fraction}}.
    """

    def __init__(self, algebra: LieAlgebra, hw):
        self.algebra = algebra
        self.rs = algebra.rs
        self.hw = tuple(Fraction(x) for x in hw)
        if any(c < 0 or c.denominator != 1 for c in self.hw):
            raise ValueError("highest weight must be dominant integral")
        self._action_cache = {}
        self._build()

    # construction ------------------------------------------------------------

    def _build(self):
        rs = self.rs
        ell = rs.rank
        target = weyl_dimension(rs, self.hw)
        simple_fund = [rs.fund_at(i) for i in range(ell)]

        self.weights = [self.hw]
        # per level: list of basis indices
        levels = [[0]]
        # raising action: e_mats[i][col] = {row: c} on the global basis
        e_cols = [dict() for _ in range(ell)]
        f_cols = [dict() for _ in range(ell)]
        gram_rows = {0: {0: Z1}}

        level_basis = [0]
        while True:
            # candidates (i, b) = f_i applied to level basis vector b
            cands = []
            for b in level_basis:
                wb = self.weights[b]
                for i in range(ell):
                    cands.append((i, b))
            if not cands:
                break
            nc = len(cands)
            # contravariant Gram on candidates:
            # <f_i b, f_j b'> = <b, f_j e_i b'> + delta_ij <wt b', a_i^v><b, b'>
            # with e_i b' known from the previous levels.
            cgram = [[Z0] * nc for _ in range(nc)]
            # e_i acting on candidate vectors, expressed over previous basis:
            # e_j (f_i b) = f_i (e_j b) + delta_ij <wt b, a_j^v> b
            cand_e = []  # per candidate: list of ell sparse vectors over old basis
            for i, b in cands:
                evs = []
                for j in range(ell):
                    vec = {}
                    if i == j:
                        c = self.weights[b][j]
                        if c:
                            vec[b] = Fraction(c)
                    eb = e_cols[j].get(b)
                    if eb:
                        for k, ck in eb.items():
                            fe = f_cols[i].get(k)
                            if fe:
                                for m, cm in fe.items():
                                    val = vec.get(m, Z0) + ck * cm
                                    if val:
                                        vec[m] = val
                                    elif m in vec:
                                        del vec[m]
                    evs.append(vec)
                cand_e.append(evs)
            for a in range(nc):
                ia, ba = cands[a]
                for c in range(a, nc):
                    # <f_ia b_a, f_ic b_c> = <b_a, e_ia(f_ic b_c)>
                    val = Z0
                    vec = cand_e[c][ia]  # e_ia (f_ic b_c) over old basis
                    for m, cm in vec.items():
                        g = gram_rows.get(ba, {}).get(m)
                        if g:
                            val += cm * g
                    cgram[a][c] = cgram[c][a] = val
            red, pivots = frac_rref(cgram)
            chosen = pivots  # candidate positions forming a basis
            if not chosen:
                break
            # new basis indices
            new_ids = []
            cand_expand = [None] * nc
            base = len(self.weights)
            pos_of = {}
            for t, cpos in enumerate(chosen):
                idx = base + t
                i, b = cands[cpos]
                wb = self.weights[b]
                self.weights.append(
                    tuple(x - y for x, y in zip(wb, simple_fund[i]))
                )
                new_ids.append(idx)
                pos_of[cpos] = idx
                cand_expand[cpos] = {idx: Z1}
            # solve for dependent candidates: Gram(P,P) x = Gram(P, c)
            pmat = [[cgram[p][q] for q in chosen] for p in chosen]
            for cpos in range(nc):
                if cand_expand[cpos] is not None:
                    continue
                rhs = [cgram[p][cpos] for p in chosen]
                sol = solve_frac([list(r) for r in pmat], rhs)
                assert sol is not None
                cand_expand[cpos] = {
                    pos_of[chosen[t]]: sol[t] for t in range(len(chosen)) if sol[t]
                }
            # record f columns from candidates
            for cpos, (i, b) in enumerate(cands):
                exp = cand_expand[cpos]
                if exp:
                    f_cols[i][b] = dict(exp)
            # record e columns for the new basis vectors
            for t, cpos in enumerate(chosen):
                idx = pos_of[cpos]
                for j in range(ell):
                    vec = cand_e[cpos][j]
                    if vec:
                        e_cols[j][idx] = dict(vec)
            # Gram rows for the new level: <n_a, n_b> = cgram over chosen
            for t1, p1 in enumerate(chosen):
                row = {}
                for t2, p2 in enumerate(chosen):
                    if cgram[p1][p2]:
                        row[new_ids[t2]] = cgram[p1][p2]
                gram_rows[new_ids[t1]] = row
            levels.append(new_ids)
            level_basis = new_ids
            if len(self.weights) > target:
                raise AssertionError("module construction overshot its dimension")
        self.dim = len(self.weights)
        assert self.dim == target, (self.dim, target)
        self._e_cols = e_cols
        self._f_cols = f_cols
        self.levels = levels

    # actions -----------------------------------------------------------------

    def action_matrix(self, k):
        """Sparse action {col: {row: c}} of Chevalley basis element k."""
        mat = self._action_cache.get(k)
        if mat is not None:
            return mat
        L = self.algebra
        rs = self.rs
        n = L.n
        ell = rs.rank
        if k >= 2 * n:
            i = k - 2 * n
            mat = {}
            for col in range(self.dim):
                c = Fraction(self.weights[col][i])
                if c:
                    mat[col] = {col: c}
        elif k < n and rs.heights[k] == 1:
            mat = {b: dict(v) for b, v in self._e_cols[k].items()}
        elif k >= n and rs.heights[k - n] == 1:
            mat = {b: dict(v) for b, v in self._f_cols[k - n].items()}
        else:
            # composite root vector from its lowest decomposition pair
            pos = k if k < n else k - n
            a, b = None, None
            target = rs.positive_roots[pos]
            for x in range(n):
                rest = tuple(
                    p - q for p, q in zip(target, rs.positive_roots[x])
                )
                try:
                    y = rs.root_index(rest)
                except KeyError:
                    continue
                if y < n:
                    a, b = x, y
                    break
            assert a is not None
            if k < n:
                ia, ib = a, b
                nval = L.constants.value(a, b)
            else:
                ia, ib = a + n, b + n
                nval = L.constants.value(a + n, b + n)
            ma = self.action_matrix(ia)
            mb = self.action_matrix(ib)
            comm = _sparse_commutator(ma, mb)
            inv = Z1 / Fraction(nval)
            mat = {
                col: {r: c * inv for r, c in rows.items()}
                for col, rows in comm.items()
            }
        self._action_cache[k] = mat
        return mat

    def act(self, el, vec):
        """Apply a sparse algebra element to a sparse module vector."""
        out = {}
        for k, ck in el.items():
            mat = self.action_matrix(k)
            for col, cv in vec.items():
                rows = mat.get(col)
                if not rows:
                    continue
                f = ck * cv
                for r, c in rows.items():
                    val = out.get(r, Z0) + f * c
                    if val:
                        out[r] = val
                    elif r in out:
                        del out[r]
        return out

    def weight_value(self, idx, h):
        """mu_idx(h) for a Cartan vector h."""
        return self.rs.weight_value(self.weights[idx], h)

    def eigenslice(self, h, value=None, at_least=None):
        """Basis indices with mu(h) == value (or >= at_least)."""
        out = []
        for i in range(self.dim):
            v = self.weight_value(i, h)
            if value is not None and v == value:
                out.append(i)
            elif at_least is not None and v >= at_least:
                out.append(i)
        return out

    def stabilizer_in_g(self, vec) -> Subspace:
        """Subspace of the algebra annihilating the given module vector."""
        L = self.algebra
        cols = []
        for k in range(L.dim):
            cols.append(self.act({k: 1}, vec))
        rows = []
        for r in range(self.dim):
            row = [col.get(r, Z0) for col in cols]
            if any(row):
                rows.append(row)
        if not rows:
            return make_subspace([{i: 1} for i in range(L.dim)], L.dim)
        basis = nullspace_frac(rows, L.dim)
        return make_subspace(basis, L.dim)


def _sparse_commutator(ma, mb):
    """[A, B] for sparse column maps."""
    out = {}

    def acc(m1, m2, sign):
        for col, rows in m2.items():
            tgt = out.setdefault(col, {})
            for mid, c1 in rows.items():
                r2 = m1.get(mid)
                if not r2:
                    continue
                for r, c2 in r2.items():
                    val = tgt.get(r, Z0) + sign * c1 * c2
                    if val:
                        tgt[r] = val
                    elif r in tgt:
                        del tgt[r]

    acc(ma, mb, 1)
    acc(mb, ma, -1)
    return {col: rows for col, rows in out.items() if rows}
