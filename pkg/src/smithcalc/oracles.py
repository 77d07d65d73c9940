"""Brute-force reference computations, independent of the main code paths.

``box_oracle`` integrates a conic function over a half-space by explicitly
triangulating a bounding box; ``alternation_decompose`` splits a weight
function into irreducibles through the full Weyl group.  Both are only
practical on small inputs and exist so that checks can compare two routes.
"""

from fractions import Fraction

from .simplicial import CFun, build_complex, euler_integral

# ---------------------------------------------------------------------------
# bounding-box triangulation oracle for the conic transform (dimension <= 2)


def _clip(poly, a, b):
    """Clip a convex polygon (list of Fraction points) to {a . x <= b}."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a[0] * p[0] + a[1] * p[1] - b
        fq = a[0] * q[0] + a[1] * q[1] - b
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def box_radius(fan, xi):
    return 1 + (max(abs(Fraction(x)) for x in xi) * max(abs(c) for r in fan.rays for c in r)) ** 2


def box_oracle(f, xi):
    """chi_c-weighted integral of f over {xi < 1} inside an open box, by an explicit triangulation.

    The closed region cone ∩ {xi <= 1} ∩ [-R, R]^n of every maximal cone is
    triangulated from the origin; each open simplex gets the value of f at its
    barycenter times the indicator of {xi < 1} ∩ open box; the simplicial
    Euler integral of that function is returned.
    """
    fan = f.fan
    n = fan.dim
    xi = [Fraction(x) for x in xi]
    big = box_radius(fan, xi)
    zero = (Fraction(0),) * n
    tops = []
    if n == 1:
        for (r,) in fan.maximal_cones:
            s = 1 if r[0] > 0 else -1
            end = Fraction(s) * big
            if xi[0] * end > 1:
                end = 1 / xi[0]
            tops.append([zero, (end,)])
    else:
        for a, b in fan.maximal_cones:
            if a[0] * b[1] - a[1] * b[0] < 0:
                a, b = b, a
            poly = [(-big, -big), (big, -big), (big, big), (-big, big)]
            poly = [(Fraction(x), Fraction(y)) for x, y in poly]
            poly = _clip(poly, (a[1], -a[0]), 0)  # left of a
            poly = _clip(poly, (-b[1], b[0]), 0)  # right of b
            poly = _clip(poly, (xi[0], xi[1]), 1)
            k = poly.index(zero)
            ring = poly[k + 1:] + poly[:k]
            for p, q in zip(ring, ring[1:]):
                tops.append([zero, p, q])
    c = build_complex(tops)

    def value(pt):
        inside = all(abs(x) < big for x in pt) and sum(a * x for a, x in zip(xi, pt)) < 1
        return f.at(pt) if inside else 0

    coeffs = {}
    for s in c.simplices:
        bary = tuple(sum(v[i] for v in s) / len(s) for i in range(n))
        coeffs[s] = value(bary)
    return euler_integral(CFun(c, f.ring, coeffs))


# ---------------------------------------------------------------------------
# root data


def weyl_group_matrices(rd):
    """All elements of W as integer matrices acting on row vectors of X^* (small groups only)."""
    r = rd.rank
    gens = []
    for i in range(r):
        gens.append(tuple(rd.reflect(i, tuple(int(a == b) for b in range(r))) for a in range(r)))
    ident = tuple(tuple(int(a == b) for b in range(r)) for a in range(r))

    def mul(m, n):  # x -> (x m) n
        return tuple(tuple(sum(m[a][k] * n[k][b] for k in range(r)) for b in range(r)) for a in range(r))

    seen = {ident: 1}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for s in gens:
                w = mul(m, s)
                if w not in seen:
                    seen[w] = -seen[m]
                    nxt.append(w)
        frontier = nxt
    return seen  # matrix -> sign


def alternation_decompose(rd, weights):
    """Multiplicities of irreducibles from a weight function by the Weyl alternation.

    n_lam = sum_w sign(w) m(lam + rho - w rho), read off the coefficients of
    (character) x (Weyl denominator) at strictly dominant points.  Uses 2 rho
    so everything stays in the lattice.
    """
    r = rd.rank
    group = weyl_group_matrices(rd)
    rho2 = rd.rho2
    shifts = []
    for m, sgn in group.items():
        w_rho2 = tuple(sum(rho2[k] * m[k][b] for k in range(r)) for b in range(r))
        diff = tuple(a - b for a, b in zip(rho2, w_rho2))
        shifts.append((tuple(x // 2 for x in diff), sgn))
    out = {}
    for lam in weights:
        if not rd.is_dominant(lam):
            continue
        n = sum(sgn * weights.get(tuple(a + b for a, b in zip(lam, s)), 0) for s, sgn in shifts)
        if n:
            out[lam] = n
    return out
