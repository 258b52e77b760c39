import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_hom_dim_f2
from quotcheck.approx import is_left_approximation
from quotcheck.ext import projective
from quotcheck.rep import (
    RepMorphism,
    certify_local,
    column_map,
    decompose,
    direct_sum,
    hom_basis,
    is_isomorphic,
    is_left_minimal,
    minimize_left,
    radical_and_top,
    sum_inclusion,
)

A3_NAMES = ["S1", "S2", "S3", "M12", "M23", "P1"]


def test_hom_examples(a3, gt3):
    assert hom_basis(a3["S2"], a3["S2"]).dim == 1
    assert hom_basis(a3["P1"], a3["S2"]).dim == 0
    assert hom_basis(gt3["M31"], gt3["S3"]).dim == 1


def test_hom_dims_match_brute_force_over_f2(a3f2):
    for x in A3_NAMES:
        for y in A3_NAMES:
            assert hom_basis(a3f2[x], a3f2[y]).dim == brute_force_hom_dim_f2(a3f2[x], a3f2[y]), (x, y)


def test_hom_basis_elements_commute(fixture):
    objs = fixture.universe[:8]
    for x in objs:
        for y in objs:
            for f in hom_basis(x, y).basis:
                f.check()


def test_decompose_examples(a3):
    s1 = a3["S1"]
    d = decompose(direct_sum([s1, s1]))
    assert len(d.summands) == 1 and d.summands[0][1] == 2
    assert is_isomorphic(d.summands[0][0], s1)[0]
    d = decompose(a3["P1"])
    assert len(d.parts) == 1
    m = direct_sum([a3["M12"], a3["S3"]])
    m.summands = None  # force the Fitting splitting
    d = decompose(m)
    assert sorted(p.module.dim_vector for p in d.parts) == [(0, 0, 1), (1, 1, 0)]


def test_decompose_round_trip(gt3):
    m = direct_sum([gt3["M31"], gt3["B(a a'^-1,1,2)"], gt3["S2"]])
    m.summands = None
    d = decompose(m)
    assert len(d.parts) == 3
    assert (d.from_sum() @ d.to_sum()).comps == RepMorphism.identity(m).comps
    s = d.direct_sum
    assert (d.to_sum() @ d.from_sum()).comps == RepMorphism.identity(s).comps
    for p in d.parts:
        assert certify_local(p.module)


def test_isomorphism_examples(a3, gt3):
    ok, phi = is_isomorphic(a3["M12"], a3["M12"])
    assert ok and phi.is_iso()
    assert not is_isomorphic(a3["S1"], a3["S2"])[0]
    b1, b2 = gt3["B(a a'^-1,1,1)"], gt3["B(a a'^-1,1,2)"]
    assert not is_isomorphic(b1, b2)[0]


def test_radical_and_top(a3, gt3):
    rad, inc, top, proj = radical_and_top(a3["S2"])
    assert rad.total_dim == 0 and top.dim_vector == (0, 1, 0)
    rad, inc, top, proj = radical_and_top(a3["P1"])
    assert rad.dim_vector == (0, 1, 1) and top.dim_vector == (1, 0, 0)
    assert inc.is_injective() and proj.is_surjective()
    _, _, top, _ = radical_and_top(gt3["P3"])
    assert top.dim_vector == (0, 0, 1)


def test_minimize_left_examples(a3):
    s2, m12 = a3["S2"], a3["M12"]
    (inc,) = hom_basis(s2, m12).basis
    assert minimize_left(inc).target.dim_vector == m12.dim_vector
    a = a3["M23"]
    t = direct_sum([a, a])
    f = column_map(a, t, [RepMorphism.identity(a), RepMorphism.zero(a, a)])
    g = minimize_left(f)
    assert g.target.dim_vector == a.dim_vector and g.is_iso()
    t = direct_sum([m12, m12])
    g = minimize_left(column_map(s2, t, [inc, inc]))
    assert g.target.dim_vector == m12.dim_vector and is_left_minimal(g)
    assert not is_left_minimal(column_map(s2, t, [inc, inc]))


def test_minimize_left_keeps_approximations(a3):
    w = a3.w
    s2 = a3["S2"]
    targets = [a3["M12"], a3["M12"], a3["P1"]]
    t = direct_sum(targets)
    maps = [hom_basis(s2, x).basis[0] if hom_basis(s2, x).dim else RepMorphism.zero(s2, x) for x in targets]
    f = column_map(s2, t, maps)
    assert is_left_approximation(f, w)
    g = minimize_left(f)
    assert is_left_approximation(g, w) and is_left_minimal(g)
    # every endomorphism h of the target with h g = g is invertible
    end = hom_basis(g.target, g.target)
    rng = np.random.default_rng(0)
    for _ in range(20):
        h = end.random(rng)
        if (h @ g).comps == g.comps:
            assert h.is_iso()


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_hom_dimension_is_additive(gt3, data):
    objs = gt3.universe[:20]
    x1, x2, y = (data.draw(st.sampled_from(objs)) for _ in range(3))
    s = direct_sum([x1, x2])
    assert hom_basis(s, y).dim == hom_basis(x1, y).dim + hom_basis(x2, y).dim
    assert hom_basis(y, s).dim == hom_basis(y, x1).dim + hom_basis(y, x2).dim


def test_projectives_are_local(gt3):
    for v in gt3.alg.vertices:
        assert certify_local(projective(gt3.alg, v))


def test_inclusions_of_sums(a3):
    s = direct_sum([a3["S1"], a3["S2"]])
    assert sum_inclusion(s, 1).is_injective()
