"""Newton polyhedra New(g) = conv(E) + W* and their normal cones.

W* is the polar dual of the admissible cone W, generated by e_i (1 in the
x_i slot) and e'_i (-1 in the x_i and dx_i slots), embedded in Z^{2n+1} with
z-slot 0.  W* is simplicial, so cone membership is a closed-form test; the
convex-hull redundancy step is an exact rational feasibility problem.
"""

from __future__ import annotations

from fractions import Fraction

from .cones import RelOpenCone, lp_feasible
from .errors import ZeroOperator, NotAdmissible
from .params import coeff_num_in_q


def wstar_rays(n):
    """The 2n generators of W* in Z^{2n+1}."""
    rays = []
    for i in range(n):
        r = [0] * (2 * n + 1)
        r[i] = 1
        rays.append(tuple(r))
    for i in range(n):
        r = [0] * (2 * n + 1)
        r[i] = -1
        r[n + i] = -1
        rays.append(tuple(r))
    return tuple(rays)


def in_wstar(n, d):
    """Is the 2n+1 vector d in the cone W*?"""
    if d[2 * n] != 0:
        return False
    for i in range(n):
        if d[n + i] > 0:
            return False
        if d[i] - d[n + i] < 0:
            return False
    return True


def _conv_redundant(p, others, n):
    """Is p in conv(others) + W*?  Exact LP in the hull weights mu >= 0."""
    if not others:
        return False
    one = Fraction(1)
    rows = [
        # sum mu = 1
        (tuple(one for _ in others), "eq", one),
        # z-slot: sum mu q_z = p_z
        (tuple(Fraction(q[2 * n]) for q in others), "eq", Fraction(p[2 * n])),
    ]
    for i in range(n):
        # (p - sum mu q)_{n+i} <= 0
        rows.append((tuple(Fraction(q[n + i]) for q in others), "ge",
                     Fraction(p[n + i])))
        # (p - sum mu q)_i - (p - sum mu q)_{n+i} >= 0
        rows.append((tuple(Fraction(q[i] - q[n + i]) for q in others), "le",
                     Fraction(p[i] - p[n + i])))
    return lp_feasible(rows, len(others))


def vertex_set(n, points):
    """E: the minimal subset with conv(E) + W* containing all points."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    # pairwise W*-absorption first (cheap)
    keep = []
    for p in pts:
        absorbed = any(q != p and in_wstar(n, tuple(a - b for a, b in zip(p, q)))
                       for q in pts)
        if not absorbed:
            keep.append(p)
    # then convex redundancy
    out = list(keep)
    changed = True
    while changed:
        changed = False
        for p in list(out):
            others = [q for q in out if q != p]
            if _conv_redundant(p, others, n):
                out.remove(p)
                changed = True
                break
    return sorted(out)


class NewtonPolyhedron:
    """conv(vertices) + W*, vertices an irredundant finite point set."""

    __slots__ = ("n", "vertices")

    def __init__(self, n, vertices):
        self.n = n
        self.vertices = tuple(sorted(tuple(v) for v in vertices))

    def __eq__(self, other):
        return (isinstance(other, NewtonPolyhedron)
                and self.n == other.n and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.n, self.vertices))

    def __repr__(self):
        return f"New{list(self.vertices)}"

    def translate(self, p):
        return NewtonPolyhedron(self.n, [tuple(a + b for a, b in zip(v, p))
                                         for v in self.vertices])


def newton(g, Q=None):
    """Newton polyhedron of a nonzero operator.

    With Q given, only terms whose coefficient numerator lies outside Q
    contribute (the polyhedron of the specialization to Q).
    """
    if g.is_zero():
        raise ZeroOperator("Newton polyhedron of the zero operator")
    if Q is None:
        pts = [e.vec() for e in g.terms]
    else:
        pts = [e.vec() for e, c in g.terms.items() if not coeff_num_in_q(c, Q)]
        if not pts:
            raise ZeroOperator("operator vanishes modulo Q")
    return NewtonPolyhedron(g.n, vertex_set(g.n, pts))


def minkowski_sum(polys):
    """Minkowski sum; recession cone stays W*."""
    if not polys:
        raise ValueError("empty Minkowski sum")
    n = polys[0].n
    acc = polys[0].vertices
    for p in polys[1:]:
        acc = [tuple(a + b for a, b in zip(v, w)) for v in acc for w in p.vertices]
        acc = vertex_set(n, acc)
    return NewtonPolyhedron(n, vertex_set(n, acc))


def face_of(poly, w):
    """(face vertices, face rays) of the polyhedron with respect to w in W."""
    w.check_admissible()
    vals = {v: w.dot_vec(v) for v in poly.vertices}
    top = max(vals.values())
    verts = tuple(v for v in poly.vertices if vals[v] == top)
    rays = tuple(r for r in wstar_rays(poly.n) if w.dot_vec(r) == 0)
    return verts, rays


def normal_cone(poly, w):
    """The equivalence class of w: weights in W with the same face of the
    polyhedron and the same active W constraints, as a relatively open cone
    in Q^{2n}."""
    w.check_admissible()
    n = poly.n
    dim = 2 * n
    verts, frays = face_of(poly, w)
    eqs = []
    strict = []

    def proj(vec):
        return tuple(Fraction(c) for c in vec[:dim])

    p0 = verts[0]
    for p in verts[1:]:
        eqs.append(proj(tuple(a - b for a, b in zip(p0, p))))
    for q in poly.vertices:
        if q not in verts:
            strict.append(proj(tuple(a - b for a, b in zip(p0, q))))
    fray_set = set(frays)
    for r in wstar_rays(n):
        if r in fray_set:
            eqs.append(proj(r))
        else:
            strict.append(proj(tuple(-c for c in r)))
    # W activity at w
    for i in range(n):
        f = [Fraction(0)] * dim
        f[i] = Fraction(-1)  # -u_i
        (eqs if w.u[i] == 0 else strict).append(tuple(f))
        g = [Fraction(0)] * dim
        g[i] = Fraction(1)
        g[n + i] = Fraction(1)  # u_i + v_i
        (eqs if w.u[i] + w.v[i] == 0 else strict).append(tuple(g))
    cone = RelOpenCone.make(dim, eqs, strict, witness=w.as_tuple())
    if cone is None:
        raise NotAdmissible("normal cone construction produced an empty cone")
    return cone
