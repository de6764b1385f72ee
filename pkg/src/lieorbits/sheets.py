"""Standard Levi subalgebras, orbit induction, rigid orbits, and sheets.

A standard Levi subalgebra is spanned by the Cartan and the root spaces of
the subsystem generated by a subset of simple roots.  Conjugacy of subsets
is decided with genuine Weyl group elements (products of longest elements,
the classical elementary conjugations), never by comparing type strings,
which collide for subsets of different root lengths.

Orbit induction draws a random element of the nilradical on top of a Levi
orbit representative and accepts the identified ambient orbit only when the
exact dimension identity dim G.x = dim(Levi orbit) + 2 dim(nilradical)
holds, so every returned diagram is certified.
"""

import itertools
import random
import threading
from fractions import Fraction

from .liealg import LieAlgebra, build_chevalley_algebra
from .linalg import DEFAULT_PRIME, int_rank, rank_mod_p
from .orbits import (
    _bracket_rows_mod,
    basis_grades,
    c_e_dimension,
    classify_nilpotent_orbits,
    identify_orbit_candidates,
)
from .rootsys import RootSystem, cartan_matrix

INDUCE_RETRY = 10
INDUCE_COEFF = 10  # small draws keep the triple solves well conditioned

_LOCK = threading.RLock()
_GRAPHS = {}
_CLASSIFIED = {}
_RIGID = {}
_INDUCED = {}


# Levi conjugacy ---------------------------------------------------------------


def _move_graph(rs: RootSystem):
    """Elementary-conjugation moves between subsets of simple roots.

    For a subset J and a simple root s outside it, the Weyl element
    w_K w_J (K = J + {s}, longest elements of the standard parabolic
    subgroups) maps J to a set of positive roots of K; whenever that image
    consists of simple roots again it is recorded as a move J -> image.
    Chains of such moves realize exactly the W-conjugations between subsets
    of the simple roots.

    Returns {J: [(J2, {j: image of j})]} over all 2^l subsets J.
    """
    with _LOCK:
        got = _GRAPHS.get(rs)
        if got is not None:
            return got
    l, n = rs.rank, rs.nposroots
    n2 = 2 * n
    simple = list(rs.simple_perms())
    longest = {}

    def longest_of(nodes):
        w = longest.get(nodes)
        if w is not None:
            return w
        w = tuple(range(n2))
        while True:
            s = next((s for s in nodes if w[s] < n), None)
            if s is None:
                break
            sp = simple[s]
            w = tuple(w[sp[r]] for r in range(n2))
        longest[nodes] = w
        return w

    moves = {}
    for mask in range(1 << l):
        j_set = frozenset(i for i in range(l) if mask >> i & 1)
        wj = longest_of(j_set)
        out = []
        for s in range(l):
            if s in j_set:
                continue
            wk = longest_of(j_set | {s})
            img = {j: wk[wj[j]] for j in j_set}
            if all(t < l for t in img.values()):
                out.append((frozenset(img.values()), img))
        moves[j_set] = out
    with _LOCK:
        _GRAPHS[rs] = moves
    return moves


def _connected_nodes(rs, nodes):
    """Connected components of a node subset in the Dynkin diagram."""
    left = set(nodes)
    comps = []
    while left:
        seed = min(left)
        blob = {seed}
        queue = [seed]
        while queue:
            a = queue.pop()
            for b in left:
                if b not in blob and rs.cartan[a][b] != 0:
                    blob.add(b)
                    queue.append(b)
        left -= blob
        comps.append(sorted(blob))
    return comps


def _cartan_match(cart, comp, target):
    # bijection standard position -> node with matching Cartan integers
    m = len(comp)
    used = [False] * m
    order = [None] * m

    def place(k):
        if k == m:
            return True
        for idx, node in enumerate(comp):
            if used[idx]:
                continue
            if all(
                target[k][j] == cart[node][order[j]]
                and target[j][k] == cart[order[j]][node]
                for j in range(k)
            ):
                used[idx] = True
                order[k] = node
                if place(k + 1):
                    return True
                used[idx] = False
                order[k] = None
        return False

    return tuple(order) if place(0) else None


def _component_type(rs, comp):
    """(type label, nodes ordered to match that type's Cartan matrix)."""
    m = len(comp)
    for fam in "ABCDEFG":
        try:
            target = cartan_matrix(f"{fam}{m}")
        except ValueError:
            continue
        order = _cartan_match(rs.cartan, comp, target)
        if order is not None:
            return f"{fam}{m}", order
    raise ValueError(f"unrecognized diagram component {comp}")


class LeviDescriptor:
    """One conjugacy class of standard Levi subalgebras.

    nodes: sorted simple-root indices of the class representative.
    components: [(type label, nodes ordered per that type)] per diagram part.
    type_string: semisimple type, components by descending rank ('' if none).
    centre_dim: rank minus |nodes|.
    """

    __slots__ = ("nodes", "components", "type_string", "centre_dim")

    def __init__(self, rs, nodes):
        self.nodes = tuple(sorted(nodes))
        self.components = [
            _component_type(rs, comp) for comp in _connected_nodes(rs, nodes)
        ]
        labels = sorted(
            (lab for lab, _ in self.components),
            key=lambda t: (-int(t[1:]), t[0]),
        )
        self.type_string = "+".join(labels)
        self.centre_dim = rs.rank - len(self.nodes)

    def __repr__(self):
        return f"LeviDescriptor({list(self.nodes)}, {self.type_string!r})"


def standard_levis(rs: RootSystem):
    """One LeviDescriptor per Weyl-conjugacy class of simple-root subsets."""
    moves = _move_graph(rs)
    order = sorted(moves, key=lambda f: (len(f), sorted(f)))
    seen = set()
    out = []
    for rep in order:
        if rep in seen:
            continue
        blob = {rep}
        queue = [rep]
        while queue:
            cur = queue.pop()
            for nxt, _ in moves[cur]:
                if nxt not in blob:
                    blob.add(nxt)
                    queue.append(nxt)
        seen |= blob
        out.append(LeviDescriptor(rs, rep))
    return out


def _label_orbit_min(moves, rep, labels):
    """Lexicographically minimal transport of node labels around rep's class.

    labels: {node: value} on the subset rep.  Walks the move graph carrying
    the labels along; the minimum over all returns to rep is a canonical
    form for the pair (rep, labels) under the Weyl group.
    """
    rep_nodes = sorted(rep)
    start = (rep, tuple(labels[j] for j in rep_nodes))
    best = start[1]
    seen = {start}
    queue = [start]
    while queue:
        j_set, lab = queue.pop()
        labmap = dict(zip(sorted(j_set), lab))
        for j2, img in moves[j_set]:
            moved = {img[j]: labmap[j] for j in j_set}
            state = (j2, tuple(moved[j] for j in sorted(j2)))
            if state in seen:
                continue
            seen.add(state)
            queue.append(state)
            if j2 == rep and state[1] < best:
                best = state[1]
    return best


# embedding a component type into the ambient algebra ---------------------------


def _embed_component(L: LieAlgebra, label, order):
    """Images of a component type's positive root vectors inside L.

    order maps the standard simple-root positions of the component type to
    ambient node indices.  The images follow the Serre-generator embedding:
    simple root vectors go to the ambient simple root vectors, composite
    ones are built by brackets with the component's own structure
    constants, so the images satisfy the component's relations exactly.

    Returns {component positive root index: (ambient index, sign)}.
    """
    comp = build_chevalley_algebra(label)
    crs = comp.rs
    images = {}
    for r in range(crs.nposroots):
        coords = crs.root_at(r)
        if crs.heights[r] == 1:
            images[r] = (order[coords.index(1)], 1)
            continue
        found = None
        for k in range(crs.rank):
            if coords[k] <= 0:
                continue
            rest = tuple(c - (1 if i == k else 0) for i, c in enumerate(coords))
            try:
                r2 = crs.root_index(rest)
            except KeyError:
                continue
            if r2 >= crs.nposroots:
                continue
            w = comp.bracket_basis(k, r2)
            if w:
                found = (k, r2, w[r])
                break
        assert found is not None, "positive root with no simple decomposition"
        k, r2, const = found
        i1, s1 = images[k]
        i2, s2 = images[r2]
        aw = L.bracket_basis(i1, i2)
        assert len(aw) == 1
        amb, ac = next(iter(aw.items()))
        val = Fraction(s1 * s2 * ac, const)
        assert val.denominator == 1 and abs(val) == 1
        images[r] = (amb, int(val))
    return images


# induction ----------------------------------------------------------------------


def _levi_positive(rs, nodes):
    """Positive root indices of the subsystem generated by the node set."""
    return [
        r
        for r in range(rs.nposroots)
        if all(c == 0 or i in nodes for i, c in enumerate(rs.root_at(r)))
    ]


def _levi_orbit_dim(L, levi_basis, e):
    # rank of ad(e) restricted to the Levi = dim of the Levi orbit of e
    rows = []
    for b in levi_basis:
        w = L.bracket(e, {b: 1})
        row = [0] * L.dim
        for k, c in w.items():
            assert c.denominator == 1
            row[k] = int(c)
        rows.append(row)
    return int_rank(rows)


def _induced_group(L, levi_nodes, e_levi, rng, orbits):
    """Diagrams matching the induced orbit, as an automorphism twin group.

    Each draw e_levi + (random nilradical element) is identified and
    accepted only if dim G.x = dim(Levi orbit of e_levi) + 2 dim(nilradical);
    the identity fails only for non-generic draws, and INDUCE_RETRY misses
    abort loudly.  The returned tuple has one entry unless the eigenvalue
    invariant only determines a diagram automorphism twin group.
    """
    rs = L.rs
    nodes = frozenset(levi_nodes)
    if rng is None:
        rng = random.Random(0xD1CE)
    if orbits is None:
        orbits = classify_nilpotent_orbits(L)
    n = L.n
    levi_pos = _levi_positive(rs, nodes)
    levi_basis = (
        levi_pos
        + [r + n for r in levi_pos]
        + [2 * n + i for i in range(rs.rank)]
    )
    allowed = set(levi_basis)
    e_levi = {k: int(c) for k, c in e_levi.items() if c}
    assert all(k in allowed for k in e_levi), "representative not in the Levi"

    nilrad = sorted(set(range(n)) - set(levi_pos))
    if not nilrad and not e_levi:
        return ((0,) * rs.rank,)
    inner_dim = _levi_orbit_dim(L, levi_basis, e_levi) if e_levi else 0
    want = inner_dim + 2 * len(nilrad)

    # every draw lies in representative + nilradical, hence in the closure
    # of the induced orbit, so dim G.x <= want unconditionally; a mod-p
    # rank of ad x equal to want is then a complete membership certificate
    targets = [o for o in orbits if o.dim_orbit == want]
    if not targets:
        raise RuntimeError(
            f"no classified orbit of dimension {want} "
            f"(levi {sorted(nodes)} in {rs.type_label})")
    seen = []
    every = list(range(L.dim))
    for attempt in range(INDUCE_RETRY):
        bound = min(1 + attempt, INDUCE_COEFF)
        x = dict(e_levi)
        for r in nilrad:
            c = rng.randint(-bound, bound)
            if c:
                x[r] = x.get(r, 0) + c
        if not x:
            continue
        mat = _bracket_rows_mod(L, every, x, every, DEFAULT_PRIME)
        rank = rank_mod_p(mat, DEFAULT_PRIME)
        if rank != want:
            seen.append(rank)
            continue
        if len(targets) == 1:
            return (targets[0].diagram,)
        cands = identify_orbit_candidates(L, x, orbits)
        assert all(o.dim_orbit == want for o in cands)
        return tuple(sorted(o.diagram for o in cands))
    raise RuntimeError(
        f"induction draws never generic: wanted dim {want}, saw ranks "
        f"{seen} (levi {sorted(nodes)} in {rs.type_label})"
    )


def induce_orbit(L: LieAlgebra, levi_nodes, e_levi, rng=None, orbits=None):
    """Weighted diagram of the ambient orbit induced from a Levi orbit.

    e_levi is an integer representative inside the standard Levi on the
    given nodes (the zero dict gives Richardson induction).  Induction is
    certified by the dimension identity on each accepted draw.  Raises for
    the even spin ambients whose twin orbits the adjoint invariants cannot
    tell apart; rigidity and sheet enumeration never hit this case through
    their own entry points for the supported ambient types.
    """
    group = _induced_group(L, levi_nodes, e_levi, rng, orbits)
    if len(group) != 1:
        raise RuntimeError(
            "induced orbit is only determined up to the automorphism twin "
            f"group {sorted(group)}")
    return group[0]


# rigid orbits --------------------------------------------------------------------


def _classified(label):
    with _LOCK:
        got = _CLASSIFIED.get(label)
    if got is None:
        L = build_chevalley_algebra(label)
        orbits = classify_nilpotent_orbits(L)
        got = (L, orbits, {o.diagram: o for o in orbits})
        with _LOCK:
            _CLASSIFIED[label] = got
    return got


_SMALL_REPS = {}


def _small_rep(label, diag, rng, tries=60):
    """Small-coefficient representative of an orbit in one simple type.

    Any element of g(2) whose bracket with g(0) has full rank mod a prime
    lies in the dense orbit there, hence in the same nilpotent orbit as the
    classified representative; redrawing with tiny coefficients keeps the
    exact triple solves for induced elements well inside reconstruction
    bounds.  Falls back to the classified representative.
    """
    key = (label, diag)
    with _LOCK:
        got = _SMALL_REPS.get(key)
    if got is not None:
        return dict(got)
    L, _, by_diag = _classified(label)
    orbit = by_diag[diag]
    grades = basis_grades(L, orbit.h)
    g0 = [i for i in range(L.dim) if grades[i] == 0]
    g2 = [i for i in range(2 * L.n) if grades[i] == 2]
    target = len(g2)
    rep = None
    for _ in range(tries):
        e = {i: rng.randint(-3, 3) for i in g2}
        e = {i: c for i, c in e.items() if c}
        if not e:
            continue
        m = _bracket_rows_mod(L, g0, e, g2, DEFAULT_PRIME)
        if rank_mod_p(m, DEFAULT_PRIME) == target:
            rep = e
            break
    if rep is None:
        rep = {k: int(c) for k, c in orbit.e.items()}
    with _LOCK:
        _SMALL_REPS[key] = rep
    return dict(rep)


def _rigid_combos(rs, moves, levi, rng):
    """Distinct rigid-orbit label assignments on a Levi class, up to W.

    Options per diagram component: the zero diagram plus every rigid
    diagram of the component's type (computed recursively).  Assignments
    equivalent under label transport around the conjugacy class are
    collapsed to their canonical form.
    """
    options = []
    for label, order in levi.components:
        diags = [(0,) * len(order)] + list(rigid_diagrams(label, rng))
        options.append([(order, d) for d in diags])
    rep = frozenset(levi.nodes)
    out = []
    seen = set()
    for pick in itertools.product(*options):
        combo = {}
        for order, diag in pick:
            for k, node in enumerate(order):
                combo[node] = diag[k]
        canon = _label_orbit_min(moves, rep, combo) if combo else ()
        if canon not in seen:
            seen.add(canon)
            out.append(dict(zip(levi.nodes, canon)))
    return out


def _induce_combo(L, orbits, levi, combo, rng):
    """Induce the Levi orbit given by node labels; cached per (type, pair).

    Returns the automorphism twin group of matching diagrams (usually one).
    """
    key = (L.rs.type_label, levi.nodes, tuple(combo[j] for j in levi.nodes))
    with _LOCK:
        got = _INDUCED.get(key)
    if got is not None:
        return got
    e = {}
    for label, order in levi.components:
        diag = tuple(combo[node] for node in order)
        if not any(diag):
            continue
        rep = _small_rep(label, diag, rng)
        emb = _embed_component(L, label, order)
        for r, c in rep.items():
            amb, sign = emb[r]
            e[amb] = e.get(amb, 0) + sign * c
    group = _induced_group(L, levi.nodes, e, rng, orbits)
    with _LOCK:
        _INDUCED[key] = group
    return group


def rigid_diagrams(label, rng=None):
    """Weighted diagrams of the nonzero rigid orbits of one simple type.

    An orbit is rigid when it is not induced from any proper Levi; the
    induced set is generated from rigid orbits of the proper Levis only,
    which suffices because induction composes in stages.  Cached per type.
    """
    with _LOCK:
        got = _RIGID.get(label)
    if got is not None:
        return got
    if rng is None:
        rng = random.Random(0x51EE7)
    L, orbits, _ = _classified(label)
    rs = L.rs
    moves = _move_graph(rs)
    induced = set()
    for levi in standard_levis(rs):
        if len(levi.nodes) == rs.rank:
            continue
        for combo in _rigid_combos(rs, moves, levi, rng):
            # a twin group is marked induced as a whole: induction commutes
            # with the diagram automorphisms, so the image of an induced
            # orbit under the group generating the ambiguity is induced too
            induced.update(_induce_combo(L, orbits, levi, combo, rng))
    rigid = tuple(o.diagram for o in orbits if o.diagram not in induced)
    for d in rigid:
        assert all(v <= 1 for v in d), f"rigid diagram {d} carries a 2"
    with _LOCK:
        _RIGID[label] = rigid
    return rigid


def rigid_orbits(L: LieAlgebra, orbits=None, rng=None):
    """The classified orbits that are not induced; sets the rigid flags."""
    if orbits is None:
        orbits = _classified(L.rs.type_label)[1]
    diags = set(rigid_diagrams(L.rs.type_label, rng))
    out = []
    for o in orbits:
        o.rigid = o.diagram in diags
        if o.rigid:
            out.append(o)
    return out


# sheets ---------------------------------------------------------------------------


class Sheet:
    """One sheet: a Levi class with a rigid orbit of that Levi.

    rigid_labels aligns with levi.nodes; sheet_diagram carries 2 on nodes
    outside the Levi and the rigid labels inside; rank counts the 2s and
    equals the dimension of the Levi's centre.  induced_diagram is the
    weighted diagram of the dense orbit.
    """

    __slots__ = (
        "levi",
        "rigid_labels",
        "sheet_diagram",
        "rank",
        "induced_diagram",
        "induced_dim",
    )

    def __init__(self, levi, rigid_labels, sheet_diagram, induced_diagram,
                 induced_dim):
        self.levi = levi
        self.rigid_labels = rigid_labels
        self.sheet_diagram = sheet_diagram
        self.rank = levi.centre_dim
        assert self.rank == sum(1 for v in sheet_diagram if v == 2)
        self.induced_diagram = induced_diagram
        self.induced_dim = induced_dim

    def __repr__(self):
        return (
            f"Sheet({self.levi.type_string or 'torus'}, "
            f"diagram={list(self.sheet_diagram)}, rank={self.rank}, "
            f"orbit={list(self.induced_diagram)})"
        )


def sheets(L: LieAlgebra, rng=None):
    """The sheets of L that contain an induced orbit, as certified pairs.

    Sheets are in bijection with conjugacy classes of pairs (Levi, rigid
    orbit of that Levi); enumerated here are the pairs with a proper Levi,
    whose unique nilpotent orbit is honestly induced.  The leftover rank-0
    pairs are the full algebra with one of its own rigid orbits (see
    rigid_orbits); counting conventions for sheet totals follow this split.
    """
    if rng is None:
        rng = random.Random(0x51EE7)
    label = L.rs.type_label
    _, orbits, by_diag = _classified(label)
    rs = L.rs
    moves = _move_graph(rs)
    out = []
    for levi in standard_levis(rs):
        if len(levi.nodes) == rs.rank:
            continue
        for combo in _rigid_combos(rs, moves, levi, rng):
            rigid_labels = tuple(combo[j] for j in levi.nodes)
            assert all(v <= 1 for v in rigid_labels)
            group = _induce_combo(L, orbits, levi, combo, rng)
            if len(group) != 1:
                raise RuntimeError(
                    "sheet orbit only determined up to the automorphism "
                    f"twin group {sorted(group)} (ambient {label}); even "
                    "spin ambients are outside the supported sheet labeling")
            diag = group[0]
            sheet_diagram = tuple(
                combo[i] if i in combo else 2 for i in range(rs.rank)
            )
            dim = by_diag[diag].dim_orbit
            out.append(Sheet(levi, rigid_labels, sheet_diagram, diag, dim))
    out.sort(
        key=lambda s: (s.induced_dim, s.induced_diagram, s.rank, s.levi.nodes,
                       s.rigid_labels)
    )
    return out


# rank vs c_e checks ----------------------------------------------------------------


def _orbits_by_sheet_count(L, sheet_list, orbits):
    counts = {}
    for s in sheet_list:
        counts.setdefault(s.induced_diagram, []).append(s)
    by_diag = {o.diagram: o for o in orbits}
    return counts, by_diag


def unique_sheet_rank_exceptions(L: LieAlgebra, sheet_list=None, orbits=None):
    """Induced orbits in exactly one sheet whose rank differs from dim c_e.

    Returns [(diagram, rank, dim c_e)]; for an induced orbit lying in a
    unique sheet the rank generically equals dim(g_e / [g_e, g_e]), and the
    handful of exceptions is the interesting output.
    """
    if orbits is None:
        orbits = _classified(L.rs.type_label)[1]
    if sheet_list is None:
        sheet_list = sheets(L)
    counts, by_diag = _orbits_by_sheet_count(L, sheet_list, orbits)
    out = []
    for diag, members in sorted(counts.items()):
        if len(members) != 1:
            continue
        rank = members[0].rank
        ce = c_e_dimension(L, by_diag[diag])
        if rank != ce:
            out.append((diag, rank, ce))
    return out


def shared_orbit_rank_bound(L: LieAlgebra, sheet_list=None, orbits=None):
    """Violations of max(sheet rank) < dim c_e over orbits in several sheets.

    Empty return means the strict bound holds for every such orbit.
    """
    if orbits is None:
        orbits = _classified(L.rs.type_label)[1]
    if sheet_list is None:
        sheet_list = sheets(L)
    counts, by_diag = _orbits_by_sheet_count(L, sheet_list, orbits)
    out = []
    for diag, members in sorted(counts.items()):
        if len(members) < 2:
            continue
        top = max(s.rank for s in members)
        ce = c_e_dimension(L, by_diag[diag])
        if top >= ce:
            out.append((diag, top, ce))
    return out
