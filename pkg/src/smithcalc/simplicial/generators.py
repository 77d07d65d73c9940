"""Seeded random instances: complexes, regular actions, invariant functions, equivariant maps.

Regular actions are produced directly: vertices come in orbits, and every
generating simplex takes at most one vertex from each orbit.  An element that
stabilizes such a simplex permutes its vertices inside their orbits, hence
fixes each one.  Translates and faces keep the property, so the closure of the
orbits of these simplices is a regular G-complex.
"""

from __future__ import annotations

import random
from collections import defaultdict

from ..fields import Ring
from .action import EquivariantMap, GComplex, barycentric_subdivide
from .calculus import CFun
from .complex import Complex, SimplicialMap, build_complex


def random_complex(rng: random.Random, max_simplices: int = 60, n_vertices: int | None = None,
                   max_dim: int = 3) -> Complex:
    """Face closure of a few random vertex sets, kept below ``max_simplices``."""
    while True:
        n = n_vertices or rng.randint(2, 8)
        verts = [f"v{i}" for i in range(n)]
        tops = []
        for _ in range(rng.randint(1, 5)):
            k = rng.randint(1, min(max_dim + 1, n))
            tops.append(rng.sample(verts, k))
        c = build_complex(tops)
        if len(c) <= max_simplices:
            return c


def random_cfun(rng: random.Random, c: Complex, ring: Ring | str = "Z", lo: int = -3, hi: int = 3,
                density: float = 0.6) -> CFun:
    ring = Ring.parse(ring)
    if ring.p:
        lo, hi = 0, ring.p - 1
    return CFun(c, ring, {s: rng.randint(lo, hi) for s in c.simplices if rng.random() < density})


def _orbit_vertices(rng: random.Random, order: int, p: int, n_orbits: int, fixed_weight: float):
    """Vertex orbits of sizes p**j; returns (orbits, generator)."""
    sizes = [1]
    while sizes[-1] < order:
        sizes.append(sizes[-1] * p)
    orbits, gen = [], {}
    for i in range(n_orbits):
        if rng.random() < fixed_weight:
            size = 1
        else:
            size = rng.choice(sizes[1:])
        orb = [f"o{i}_{k}" for k in range(size)]
        for k in range(size):
            gen[orb[k]] = orb[(k + 1) % size]
        orbits.append(orb)
    return orbits, gen


def random_regular_gcomplex(rng: random.Random, p: int | None = None, order: int | None = None,
                            max_simplices: int = 150, max_dim: int = 3, free: bool = False,
                            fixed_weight: float = 0.3, min_simplices: int = 0) -> GComplex:
    """A regular G-complex for a cyclic group of order p**n.

    With ``free=True`` every vertex orbit is regular (size ``order``), so no
    nontrivial element fixes any simplex.  A positive ``min_simplices`` asks
    for larger complexes: more orbits and seed simplices, and rejection below
    the bound.
    """
    big = min_simplices > 0
    p = p or rng.choice([2, 3, 5])
    if order is None:
        order = p if rng.random() < 0.75 or p == 5 else p * p
    while True:
        n_orbits = rng.randint(3, 9) if big else rng.randint(1, 5)
        orbits, gen = _orbit_vertices(rng, order, p, n_orbits, 0.0 if free else fixed_weight)
        if free:
            orbits = []
            gen = {}
            for i in range(n_orbits):
                orb = [f"o{i}_{k}" for k in range(order)]
                for k in range(order):
                    gen[orb[k]] = orb[(k + 1) % order]
                orbits.append(orb)
        seeds = []
        for _ in range(rng.randint(3, 8) if big else rng.randint(1, 4)):
            k = rng.randint(1, min(max_dim + 1, len(orbits)))
            chosen = rng.sample(orbits, k)
            seeds.append([rng.choice(orb) for orb in chosen])
        # orbit closure of the seed simplices
        tops = set()
        for s in seeds:
            cur = tuple(sorted(s))
            for _ in range(order):
                tops.add(cur)
                cur = tuple(sorted(gen[v] for v in cur))
        c = build_complex(sorted(tops))
        if not min_simplices <= len(c) <= max_simplices:
            continue
        g = GComplex(c, {v: gen[v] for v in c.vertices}, order)
        if g.is_regular:
            return g


def random_small_action(rng: random.Random, p: int | None = None) -> GComplex:
    """A possibly non-regular action, regularized by barycentric subdivision."""
    p = p or rng.choice([2, 3])
    n = p * rng.randint(1, 2)
    verts = list(range(n))
    gen = {v: (v + 1) % p + (v // p) * p for v in verts}
    while True:
        tops = set()
        for _ in range(rng.randint(1, 2)):
            s = tuple(sorted(rng.sample(verts, rng.randint(1, min(3, n)))))
            for _ in range(p):
                tops.add(s)
                s = tuple(sorted(gen[v] for v in s))
        c = build_complex(sorted(tops))
        g = GComplex(c, {v: gen[v] for v in c.vertices}, p)
        if g.is_regular:
            return g
        sd = barycentric_subdivide(g)
        if len(sd.complex) <= 150:
            return sd.gcomplex


def random_invariant_cfun(rng: random.Random, g: GComplex, ring: Ring | str | None = None,
                          density: float = 0.7) -> CFun:
    """Random function constant on orbits of simplices (over F_p by default)."""
    ring = Ring.parse(ring) if ring is not None else Ring(g.p)
    hi = ring.p - 1 if ring.p else 3
    lo = 0 if ring.p else -3
    coeffs = {}
    for orb in g.orbits():
        if rng.random() < density:
            val = rng.randint(lo, hi)
            for s in orb:
                coeffs[s] = val
    return CFun(g.base, ring, coeffs)


def random_invariant_signs(rng: random.Random, g: GComplex) -> dict:
    """Orbit-constant vertex signs with no simplex carrying both + and -."""
    c = g.base
    neighbors = defaultdict(set)
    for s in c.simplices_of_dim(1):
        neighbors[s[0]].add(s[1])
        neighbors[s[1]].add(s[0])
    vorbits = []
    seen = set()
    for v in c.vertices:
        if v not in seen:
            orb = sorted({g.powers[k][v] for k in range(g.order)})
            seen.update(orb)
            vorbits.append(orb)
    signs = {v: "0" for v in c.vertices}
    for orb in vorbits:
        r = rng.random()
        want = "+" if r < 0.4 else "-" if r < 0.7 else "0"
        if want == "0":
            continue
        other = "-" if want == "+" else "+"
        if all(signs[w] != other for v in orb for w in neighbors[v]):
            for v in orb:
                signs[v] = want
    return signs


def random_equivariant_map(rng: random.Random, g: GComplex) -> EquivariantMap:
    """An equivariant simplicial map out of (or into) ``g``.

    Three constructions are mixed: identifying vertex orbits of equal size (or
    collapsing an orbit onto a fixed vertex), the inclusion of an invariant
    subcomplex, and the vertex-choice map from the barycentric subdivision.
    """
    kind = rng.random()
    if kind < 0.5:
        m = _orbit_identification(rng, g)
        if m is not None:
            return m
    if kind < 0.75:
        return _subcomplex_inclusion(rng, g)
    return _vertex_choice_map(rng, g)


def _vertex_orbits(g: GComplex) -> list[list]:
    out, seen = [], set()
    for v in g.base.vertices:
        if v not in seen:
            orb = [v]
            w = g.generator[v]
            while w != v:
                orb.append(w)
                w = g.generator[w]
            seen.update(orb)
            out.append(orb)
    return out


def _orbit_identification(rng: random.Random, g: GComplex) -> EquivariantMap | None:
    for _ in range(10):
        orbits = _vertex_orbits(g)
        assign = {v: v for v in g.base.vertices}
        rng.shuffle(orbits)
        fixed = [o for o in orbits if len(o) == 1]
        for i in range(len(orbits)):
            a = orbits[i]
            if rng.random() < 0.5:
                continue
            if fixed and rng.random() < 0.3:
                target = fixed[0][0]
                for v in a:
                    assign[v] = assign[target]
                continue
            for b in orbits[i + 1:]:
                if len(b) == len(a):
                    shift = rng.randrange(len(a))
                    for k, v in enumerate(a):
                        assign[v] = assign[b[(k + shift) % len(b)]]
                    break
        images = [sorted({assign[v] for v in s}) for s in g.base.maximal_simplices]
        target = build_complex(images)
        gen_t = {}
        ok = True
        for v in g.base.vertices:
            w, gw = assign[v], assign[g.generator[v]]
            if gen_t.setdefault(w, gw) != gw:
                ok = False
                break
        if not ok:
            continue
        try:
            tg = GComplex(target, gen_t, g.order)
        except Exception:
            continue
        if not tg.is_regular:
            continue
        return EquivariantMap(g, tg, SimplicialMap(g.base, target, assign))
    return None


def _subcomplex_inclusion(rng: random.Random, g: GComplex) -> EquivariantMap:
    orbits = g.orbits()
    keep = [s for orb in orbits if rng.random() < 0.6 for s in orb]
    if not keep:
        keep = orbits[0]
    sub = g.base.closure(keep)
    sg = g.restrict(sub)
    return EquivariantMap(sg, g, SimplicialMap(sub, g.base, {v: v for v in sub.vertices}))


def _vertex_choice_map(rng: random.Random, g: GComplex) -> EquivariantMap:
    """sd(X) -> X sending the barycenter of s to a chosen vertex of s, equivariantly."""
    sd = barycentric_subdivide(g)
    choice = {}
    for orb in g.orbits():
        rep = orb[0]
        v0 = rng.choice(rep)
        for k in range(g.order):
            choice[g.act(k, rep)] = g.powers[k][v0]
    return EquivariantMap(sd.gcomplex, g, SimplicialMap(sd.complex, g.base, choice))


def stellar_subdivide(c: Complex, s, new_vertex) -> Complex:
    """Stellar subdivision at the simplex ``s``: cone a new vertex over (boundary of s) * link(s)."""
    s = tuple(sorted(s))
    tops = []
    for t in c.maximal_simplices:
        if set(s) <= set(t):
            rest = [v for v in t if v not in s]
            for drop in s:
                tops.append(rest + [v for v in s if v != drop] + [new_vertex])
        else:
            tops.append(list(t))
    return build_complex(tops)


_SEED_MANIFOLDS = {
    "circle": [[0, 1], [1, 2], [2, 0]],
    "sphere2": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
    "octahedron": [[a, b, c] for a in (0, 1) for b in (2, 3) for c in (4, 5)],
    "torus": [[i % 7, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
    + [[i % 7, (i + 2) % 7, (i + 3) % 7] for i in range(7)],
    "sphere3": [[v for v in range(5) if v != k] for k in range(5)],
}


def random_closed_manifold(rng: random.Random, max_simplices: int = 200) -> Complex:
    """A closed PL manifold (circle, 2-sphere, torus or 3-sphere) after random stellar moves.

    Every vertex link is a sphere, which is what the star-duality exchange needs.
    """
    name = rng.choice(sorted(_SEED_MANIFOLDS))
    c = build_complex(_SEED_MANIFOLDS[name])
    nxt = 100
    for _ in range(rng.randint(0, 6)):
        s = rng.choice(c.simplices)
        cand = stellar_subdivide(c, s, nxt)
        if len(cand) > max_simplices:
            break
        c = cand
        nxt += 1
    return c
