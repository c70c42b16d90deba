"""Symbolic labelled-space arithmetic against brute-force finite models."""
import pytest

from corrkit.spheres import SphereConfig, build_En_space

from oracles import NaiveCalc, cross_validate


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("bound", [2, 4])
def test_cross_validation(n, bound):
    space = build_En_space(SphereConfig(n))
    rep = cross_validate(space, bound, cases=60)
    assert rep.ok, rep.render()


def test_checks_are_not_vacuous():
    space = build_En_space(SphereConfig(2))
    rep = cross_validate(space, 4, cases=60)
    for c in rep.checks:
        count = int(c.detail.split()[0]) if c.detail and c.detail.split()[0].isdigit() else None
        assert count is None or count > 0, c.name


def test_naive_calculator_basics():
    from corrkit.labelled import truncate_space
    from corrkit.spheres import SphereConfig, build_En_space
    t = truncate_space(build_En_space(SphereConfig(2)), 3)
    calc = NaiveCalc(t.graph)
    # s_h* s_h is the projection onto the h-range
    iso = calc.iso("h")
    got = calc.mul(calc.adj(iso), iso)
    assert got == calc.p(calc.label_range("h"))
