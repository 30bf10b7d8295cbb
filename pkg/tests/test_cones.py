"""Exact feasibility (elimination and simplex) and relatively open cones."""

from fractions import Fraction

import pytest

from dfan.cones import (RelOpenCone, clear_form, feasible, form_rank,
                        lp_feasible, solve)
from dfan.errors import EmptyCone

F = Fraction


def test_solve_simple_systems():
    # x > 0, x < 1
    pt = solve([((F(1),), F(0), "gt"), ((F(-1),), F(1), "gt")], 1)
    assert pt is not None and 0 < pt[0] < 1
    # infeasible: x > 0 and x < 0
    assert solve([((F(1),), F(0), "gt"), ((F(-1),), F(0), "gt")], 1) is None
    # equality pivot: x + y = 1, x - y = 0
    pt = solve([((F(1), F(1)), F(-1), "eq"), ((F(1), F(-1)), F(0), "eq")], 2)
    assert pt == (F(1, 2), F(1, 2))


def test_solve_strictness_tracking():
    # x >= 1 and x <= 1 is feasible, but x > 1 and x <= 1 is not
    assert feasible([((F(1),), F(-1), "ge"), ((F(-1),), F(1), "ge")], 1)
    assert not feasible([((F(1),), F(-1), "gt"), ((F(-1),), F(1), "ge")], 1)


def test_lp_feasible_matches_elimination():
    # mu1 + mu2 = 1, mu >= 0, mu1 - mu2 >= 1/2
    rows = [((F(1), F(1)), "eq", F(1)), ((F(1), F(-1)), "ge", F(1, 2))]
    assert lp_feasible(rows, 2)
    rows_bad = [((F(1), F(1)), "eq", F(1)), ((F(1), F(1)), "ge", F(2))]
    assert not lp_feasible(rows_bad, 2)
    # degenerate equalities
    assert lp_feasible([((F(1),), "eq", F(0))], 1)
    assert not lp_feasible([((F(0),), "eq", F(1))], 1)


def test_clear_form_and_rank():
    assert clear_form((F(1, 2), F(-1, 3))) == (3, -2)
    assert form_rank([(1, 0), (0, 1), (1, 1)], 2) == 2
    assert form_rank([(1, 1), (2, 2)], 2) == 1
    assert form_rank([], 2) == 0


def test_rel_open_cone_membership():
    # open quadrant x > 0, y > 0
    c = RelOpenCone.make(2, [], [(1, 0), (0, 1)])
    assert c.contains((1, 2)) and not c.contains((0, 1))
    assert c.closure_contains((0, 1))
    # ray x = y, x > 0
    r = RelOpenCone.make(2, [(1, -1)], [(1, 0)])
    assert r.contains((3, 3)) and not r.contains((3, 2))
    # empty: x > 0 and x = 0
    assert RelOpenCone.make(1, [(1,)], [(1,)]) is None


def test_same_cone_and_inclusion():
    a = RelOpenCone.make(2, [], [(1, 0), (0, 1)])
    b = RelOpenCone.make(2, [], [(2, 0), (0, 3), (1, 1)])  # redundant extra
    assert a.same_cone(b)
    r = RelOpenCone.make(2, [(1, -1)], [(1, 0)])
    assert r.included_in(a) and not a.included_in(r)


def test_intersection():
    a = RelOpenCone.make(2, [], [(1, 0)])
    b = RelOpenCone.make(2, [], [(-1, 1)])
    c = a.intersect(b)
    assert c is not None and c.contains((1, 2))
    d = RelOpenCone.make(2, [], [(-1, 0)])
    assert a.intersect(d) is None


def test_closure_facets():
    c = RelOpenCone.make(2, [], [(1, 0), (0, 1)])
    facets = c.closure_facets()
    forms = sorted(f for f, _ in facets)
    assert forms == [(0, 1), (1, 0)]
    for f, pt in facets:
        assert sum(a * x for a, x in zip(f, pt)) == 0
        assert any(pt)
    # a pointed ray has no facets besides the excluded apex
    r = RelOpenCone.make(2, [(1, -1)], [(1, 0)])
    assert r.closure_facets() == []


def test_interior_point_of_empty_raises():
    c = RelOpenCone(1, [], [(1,)], [], witness=(1,))
    bad = RelOpenCone(1, [(1,)], [(1,)], [], witness=(0,))
    assert not bad.contains((0,))
    with pytest.raises(EmptyCone):
        bad.interior_point()
    assert c.interior_point() == (1,)
