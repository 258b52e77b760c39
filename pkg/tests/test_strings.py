import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from test_quiver import gentle3, linear_a3
from quotcheck.linalg import Field
from quotcheck.quiver import Arrow, BoundQuiver, Relation, validate_algebra
from quotcheck.rep import certify_local, is_isomorphic, standard_module
from quotcheck.strings import (
    StringError,
    band_module,
    detect_string_algebra,
    enumerate_strings,
    inverse_word,
    make_band,
    make_string,
    string_module,
)

GT3 = gentle3()


def test_detect_examples():
    assert detect_string_algebra(linear_a3()).kind == "gentle"
    assert detect_string_algebra(GT3).kind == "gentle"
    q = BoundQuiver(("1", "2", "3", "4"), tuple(Arrow(n, "1", t) for n, t in (("a", "2"), ("b", "3"), ("c", "4"))))
    info = detect_string_algebra(validate_algebra(q, Field(5), 4))
    assert info.kind == "neither" and "vertex 1" in info.witness


def test_detect_string_but_not_gentle():
    # a length-3 zero relation on a cyclic quiver keeps it special biserial but not gentle
    arrows = (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1"))
    base = BoundQuiver(("1", "2", "3"), arrows)
    rels = tuple(Relation(((1, base.path(r)),)) for r in ("a b c", "b c a", "c a b"))
    alg = validate_algebra(BoundQuiver(("1", "2", "3"), arrows, rels), Field(5), 6)
    info = detect_string_algebra(alg)
    assert info.kind == "string" and info.witness


def test_enumerate_examples():
    a3 = linear_a3()
    assert len(enumerate_strings(a3, 2)) == 6
    zero = enumerate_strings(GT3, 0)
    assert [s.start for s in zero] == list(GT3.vertices) and all(len(s) == 0 for s in zero)
    dims = {string_module(GT3, s).dim_vector for s in enumerate_strings(GT3, 3)}
    # (3 over 1), (2 over 3) and the projective at 3
    assert {(1, 0, 1), (0, 1, 1), standard_module(GT3, "projective", "3").dim_vector} <= dims


def test_string_and_band_modules():
    s = make_string(GT3, "", start="2")
    assert string_module(GT3, s).dim_vector == (0, 1, 0)
    m = string_module(GT3, "c")
    assert m.dim_vector == (1, 0, 1) and m.maps["c"].to_strings() == [["1"]]
    assert is_isomorphic(string_module(GT3, "a a'^-1"), string_module(GT3, "a' a^-1"))[0]
    b = band_module(GT3, "a a'^-1", 1)
    assert b.dim_vector == (1, 1, 0)
    assert b.maps["a"].to_strings() == [["1"]] and b.maps["a'"].to_strings() == [["1"]]
    b2 = band_module(GT3, "a a'^-1", 3, n=2)
    assert b2.dim_vector == (2, 2, 0) and certify_local(b2)


def test_string_errors():
    with pytest.raises(StringError):
        band_module(GT3, "a a'^-1", 0)
    with pytest.raises(StringError):
        band_module(GT3, "a a'^-1", 1, n=0)
    with pytest.raises(StringError, match="not a valid string"):
        make_string(GT3, "a b")
    with pytest.raises(StringError):
        make_band(GT3, "a")
    with pytest.raises(StringError, match="proper power"):
        make_band(GT3, "a a'^-1 a a'^-1")


STRINGS = enumerate_strings(GT3, 4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(STRINGS))
def test_string_modules_are_local_and_reversible(s):
    m = string_module(GT3, s)
    m.check_relations()
    assert certify_local(m)
    assert is_isomorphic(m, string_module(GT3, inverse_word(s, GT3)))[0]


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4))
def test_bands_with_distinct_parameters_differ(lam, mu):
    b1, b2 = band_module(GT3, "a a'^-1", lam), band_module(GT3, "a a'^-1", mu)
    assert is_isomorphic(b1, b2)[0] == (lam == mu)
    # rotating the band word does not change the module
    assert make_band(GT3, "a'^-1 a") == make_band(GT3, "a a'^-1")
