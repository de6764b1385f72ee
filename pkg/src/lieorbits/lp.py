"""Exact convex geometry primitives.

Both entry points work over rationals and return certificates that the
caller (and the test suite) can check independently: hull membership
comes with barycentric coefficients or a separating affine functional,
and the minimum-norm point comes with coefficients witnessing the
optimality condition x.p >= x.x for every input point.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import solve_frac

Z0 = Fraction(0)
Z1 = Fraction(1)


def hull_contains(points, target):
    """Decide whether target lies in the convex hull of the points.

    Returns (True, coeffs) with coeffs a tuple of nonnegative rationals
    summing to 1 and reproducing target, or (False, (z, c)) with
    z.p + c <= 0 for every point p while z.target + c > 0.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    tgt = tuple(Fraction(x) for x in target)
    d = len(tgt)
    if any(len(p) != d for p in pts):
        raise ValueError("dimension mismatch")
    m = len(pts)

    # rows: coordinate constraints then the affine one; flip rows to
    # make the right side nonnegative so artificials start feasible
    nrows = d + 1
    rows = []
    rhs = []
    flips = []
    for i in range(nrows):
        b = tgt[i] if i < d else Z1
        row = [(pts[j][i] if i < d else Z1) for j in range(m)]
        if b < 0:
            row = [-v for v in row]
            b = -b
            flips.append(-1)
        else:
            flips.append(1)
        rows.append(row)
        rhs.append(b)

    # phase-1 tableau: lambda columns, artificial columns, rhs
    ncols = m + nrows
    tab = [rows[i] + [Z1 if k == i else Z0 for k in range(nrows)] + [rhs[i]]
           for i in range(nrows)]
    basis = [m + i for i in range(nrows)]
    # reduced costs r_j = c_j - y.A_j with y = 1 initially
    red = [-sum(tab[i][j] for i in range(nrows)) for j in range(m)]
    red += [Z0] * nrows
    obj = -sum(rhs)  # negated phase-1 objective, kept <= 0

    while True:
        enter = -1
        for j in range(ncols):
            if red[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(nrows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][ncols] / a
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise RuntimeError("phase-1 column unbounded")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        f = red[enter]
        if f:
            red = [a - f * b for a, b in zip(red, tab[leave][:ncols])]
            obj -= f * tab[leave][ncols]
        basis[leave] = enter

    if obj == 0:
        coeffs = [Z0] * m
        for i in range(nrows):
            if basis[i] < m:
                coeffs[basis[i]] = tab[i][ncols]
        return True, tuple(coeffs)

    # infeasible: y_i = 1 - r(artificial_i), undo the row flips
    y = [(Z1 - red[m + i]) * flips[i] for i in range(nrows)]
    return False, (tuple(y[:d]), y[d])


def min_norm_point(points, gram=None):
    """Minimum-norm point of the convex hull, by Wolfe's algorithm.

    gram, when given, is a symmetric positive definite matrix defining
    the inner product x.y = x^T gram y on the coordinates.  Returns
    (point, coeffs, normsq).
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    m = len(pts)
    d = len(pts[0])

    if gram is None:
        def dot(a, b):
            return sum(x * y for x, y in zip(a, b))
    else:
        g = [[Fraction(x) for x in row] for row in gram]

        def dot(a, b):
            return sum(a[i] * sum(g[i][j] * b[j] for j in range(d) if b[j])
                       for i in range(d) if a[i])

    kg = [[dot(pts[i], pts[j]) for j in range(m)] for i in range(m)]

    start = min(range(m), key=lambda i: kg[i][i])
    corral = [start]
    lam = {start: Z1}

    while True:
        # x.p_j for every point, and x.x
        xp = [sum(lam[i] * kg[i][j] for i in lam) for j in range(m)]
        xx = sum(lam[i] * xp[i] for i in lam)
        enter = min(range(m), key=lambda j: (xp[j], j))
        if xp[enter] >= xx:
            break
        assert enter not in lam
        corral.append(enter)
        lam[enter] = Z0

        while True:
            # min-norm point of the affine hull of the corral
            k = len(corral)
            mat = [[kg[a][b] for b in corral] + [Z1] for a in corral]
            mat.append([Z1] * k + [Z0])
            sol = solve_frac(mat, [Z0] * k + [Z1])
            assert sol is not None, "corral lost affine independence"
            mu = sol[:k]
            if all(v > 0 for v in mu):
                lam = {corral[i]: mu[i] for i in range(k)}
                break
            theta = min(lam[corral[i]] / (lam[corral[i]] - mu[i])
                        for i in range(k) if mu[i] <= 0)
            nxt = {}
            keep = []
            for i in range(k):
                v = lam[corral[i]] + theta * (mu[i] - lam[corral[i]])
                if v > 0:
                    nxt[corral[i]] = v
                    keep.append(corral[i])
            corral = keep
            lam = nxt

    point = tuple(sum(lam[i] * pts[i][c] for i in lam) for c in range(d))
    coeffs = [Z0] * m
    for i, v in lam.items():
        coeffs[i] = v
    return point, tuple(coeffs), xx
