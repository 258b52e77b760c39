import pytest

from quotcheck.linalg import Field
from quotcheck.quiver import (
    Arrow,
    BoundQuiver,
    InfiniteDimensionalError,
    QuiverError,
    Relation,
    enumerate_path_maps,
    validate_algebra,
)
from quotcheck.rep import radical_and_top, standard_module
from quotcheck.ext import injective, projective

Q = Field(0)
F5 = Field(5)


def linear_a3(field=Q):
    q = BoundQuiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3")))
    return validate_algebra(q, field, 5)


def gentle3(field=F5, rels=("a b", "b c", "c a")):
    arrows = (Arrow("a", "1", "2"), Arrow("a'", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1"))
    base = BoundQuiver(("1", "2", "3"), arrows)
    relations = tuple(Relation(((1, base.path(r)),)) for r in rels)
    return validate_algebra(BoundQuiver(("1", "2", "3"), arrows, relations), field, 6)


def names(paths):
    return sorted(" ".join(p.arrows) if p.arrows else f"e{p.source}" for p in paths)


def radical_layers(m):
    out = []
    while m.total_dim:
        rad, _, top, _ = radical_and_top(m)
        out.append(top.dim_vector)
        m = rad
    return out


def test_linear_a3_basis():
    alg = linear_a3()
    assert alg.dim == 6
    assert names(alg.path_basis) == ["a", "a b", "b", "e1", "e2", "e3"]


def test_gentle_basis_and_relations():
    alg = gentle3()
    got = names(alg.path_basis)
    for p in ["e1", "e2", "e3", "a", "a'", "b", "c"]:
        assert p in got
    for dead in ["a b", "b c", "c a"]:
        assert dead not in got
    assert enumerate_path_maps(alg, ["a", "b"]) == {}
    assert alg.dim == sum(len(alg.basis_from(v)) for v in alg.vertices)


def test_loop_is_infinite_dimensional():
    q = BoundQuiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(InfiniteDimensionalError, match="possibly infinite-dimensional"):
        validate_algebra(q, Q, 7)


def test_relation_checks():
    arrows = (Arrow("a", "1", "2"), Arrow("b", "2", "3"))
    base = BoundQuiver(("1", "2", "3"), arrows)
    with pytest.raises(QuiverError, match="length"):
        BoundQuiver(("1", "2", "3"), arrows, (Relation(((1, base.path("a")),)),))
    with pytest.raises(QuiverError, match="undeclared"):
        BoundQuiver(("1",), (Arrow("a", "1", "2"),))
    with pytest.raises(QuiverError, match="composable"):
        base.path("b a")


def test_path_maps():
    alg = linear_a3()
    (p,) = enumerate_path_maps(alg, [], start="2")
    assert p.arrows == () and p.source == "2"
    (p,) = enumerate_path_maps(alg, ["a", "b"])
    assert p.arrows == ("a", "b")


def test_standard_modules_a3():
    alg = linear_a3()
    s2 = standard_module(alg, "simple", "2")
    assert s2.dim_vector == (0, 1, 0) and all(m.is_zero() for m in s2.maps.values())
    p1 = standard_module(alg, "projective", "1")
    assert p1.dim_vector == (1, 1, 1)
    assert p1.maps["a"].to_strings() == [["1"]] and p1.maps["b"].to_strings() == [["1"]]
    with pytest.raises(QuiverError):
        standard_module(alg, "simple", "9")


def test_projective_three_on_gentle_has_layers_3_1_2_3():
    # left-to-right composition reproduces the composition series 3/1/2/3
    p3 = standard_module(gentle3(), "projective", "3")
    assert p3.total_dim == 4
    assert radical_layers(p3) == [(0, 0, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_reversed_relation_reading_is_not_composable():
    with pytest.raises(QuiverError):
        gentle3(rels=("b a", "c b", "a c"))


@pytest.mark.parametrize("build", [linear_a3, gentle3])
def test_standard_modules_satisfy_relations_and_duality(build):
    alg = build()
    op = alg.opposite()
    for v in alg.vertices:
        for kind in ("simple", "projective", "injective"):
            standard_module(alg, kind, v).check_relations()
        assert injective(alg, v).total_dim == projective(op, v).total_dim
        assert op.opposite().dim == alg.dim
