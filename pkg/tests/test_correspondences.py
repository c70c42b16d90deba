"""Correspondence presentations, morphism conditions, and gluing."""
import pytest

from corrkit.algebra import diagonal_algebra
from corrkit.correspondences import (
    Correspondence,
    Morphism,
    check_morphism,
    check_pullback_hypotheses,
    compact_decomposition,
    compose,
    identity_morphism,
    kernel_and_jx,
    ops_agree,
    restricted_direct_sum,
    theta,
)
from corrkit.spheres import SphereConfig, build_X_A, build_mirror_sum, y_guard_symbols


def _hilbert(name, gens):
    """A correspondence over the one-dimensional algebra: plain inner
    products, unit acting as identity on both sides."""
    a = diagonal_algebra("A", ["u"])
    inner = {(g, g): {"u": 1} for g in gens}
    right = {(g, "u"): {g: 1} for g in gens}
    left = {("u", g): {g: 1} for g in gens}
    return Correspondence(name, a, gens, inner, right, left)


def test_hilbert_morphism_fails_exactly_on_compacts():
    x = _hilbert("X", ["e"])
    y = _hilbert("Y", ["f1", "f2"])
    m = Morphism(x, y, {"u": {"u": 1}}, {"e": {"f1": 1}})
    rep = check_morphism(m)
    assert not rep.ok
    failed = [c for c in rep.checks if not c.ok]
    assert failed and all(c.name.startswith("(C4)") for c in failed)
    for tag in ("(C1)", "(C2)", "(C3)"):
        tagged = [c for c in rep.checks if c.name.startswith(tag)]
        assert tagged and all(c.ok for c in tagged)
    detail = failed[0].detail
    assert "theta[f1, f1]" in detail and "theta[f2, f2]" in detail


def test_isometry_onto_summand_preserves_everything_else():
    x = _hilbert("X", ["e"])
    m = Morphism(x, x, {"u": {"u": 1}}, {"e": {"e": 1}})
    assert check_morphism(m).ok


def test_identity_and_composition():
    x = build_X_A(SphereConfig(2))
    i = identity_morphism(x)
    assert check_morphism(i).ok
    ii = compose(i, i)
    assert ii.alg_map == i.alg_map and ii.mod_map == i.mod_map


def test_kernel_and_katsura_ideal_frozen():
    for n in (1, 2, 3):
        x = build_X_A(SphereConfig(n))
        data = kernel_and_jx(x)
        assert [name for name, _ in data.kernel] == [f"P{n + 1}"]
        assert [name for name, _ in data.katsura] == [f"P{i}" for i in range(1, n + 1)]
        assert data.deferred == [] and data.noncompact == []


def test_compact_decomposition_witnesses():
    n = 2
    x = build_X_A(SphereConfig(n))
    for i in (1, 2):
        dec = compact_decomposition(x, {f"P{i}": 1})
        assert dec is not None
        touched = {sym for _, u, v in dec.terms for sym in (*u, *v)}
        # the top-row generator is required: dropping column n+1 breaks it
        assert any(sym.endswith(f"{n + 1}") for sym in touched)
        trimmed = type(dec)(tuple(
            (c, u, v) for c, u, v in dec.terms
            if not any(s.endswith(f"{n + 1}") for s in (*u, *v))))
        assert not ops_agree(x, dec, trimmed)


def test_theta_and_ops_agree():
    x = _hilbert("Y", ["f1", "f2"])
    t1 = theta({"f1": 1}, {"f1": 1})
    t2 = theta({"f2": 1}, {"f2": 1})
    ident = t1 + t2
    got = ident.apply(x, {"f1": 3, "f2": 5})
    assert got == {"f1": 3, "f2": 5}
    assert not ops_agree(x, t1, ident)
    assert ops_agree(x, ident, theta({"f1": 1}, {"f1": 1}) + t2)


def test_restricted_sum_and_pullback_hypotheses():
    cfg = SphereConfig(2)
    rsum, psi, omega = build_mirror_sum(cfg)
    rep = check_pullback_hypotheses(psi, omega, y_guards=y_guard_symbols(cfg))
    assert rep.ok, rep.render()
    assert rsum.corr.validate().ok
    assert rsum.corr.gens


def test_pullback_rejects_mismatched_targets():
    x = _hilbert("X", ["e"])
    y = _hilbert("Y", ["f1", "f2"])
    mx = identity_morphism(x)
    my = identity_morphism(y)
    with pytest.raises(ValueError):
        restricted_direct_sum(mx, my)
