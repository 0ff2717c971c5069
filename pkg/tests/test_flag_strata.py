import pytest
from hypothesis import given, strategies as st

from motivic_satake.affine_weyl import AffineWeylError, iwahori_weyl
from motivic_satake.flag_strata import (
    FlagVariety,
    closure_contains,
    convolution_support,
    enumerate_strata,
    gr_stratum,
    parity_table,
    projection_fibers,
)
from motivic_satake.root_datum import gl, preset, sl, sp


@pytest.fixture
def gl2_gr():
    return FlagVariety.grassmannian(gl(2))


def test_gl2_grassmannian_poset(gl2_gr):
    g = gl2_gr.group
    poset = enumerate_strata(gl2_gr, 2, g.omega_elements([(1, 0), (1, 1)]))
    rows = [(s["label"], s["dim"], s["covers"]) for s in poset.to_json()]
    assert rows == [("(1,1)", 0, []), ("(1,0)", 1, []), ("(2,0)", 2, ["(1,1)"])]
    dot = poset.to_dot()
    assert dot.startswith("digraph") and '"(1,1)" -> "(2,0)"' in dot


def test_bound_zero_gives_point(gl2_gr):
    poset = enumerate_strata(gl2_gr, 0)
    assert [s.label for s in poset.strata] == ["(0,0)"]


def test_gr_dimensions():
    for name, mu, dim in [("GL2", (2, 0), 2), ("GL3", (1, 0, 0), 2), ("GL3", (2, 1, 0), 4), ("Sp4", (1, 0), 4), ("Sp4", (1, 1), 6),
                          ("SL2", (1,), 2), ("PGL2", (1,), 1)]:
        fl = FlagVariety.grassmannian(preset(name))
        assert gr_stratum(fl, mu).dimension == dim


def test_closure_and_convolution(gl2_gr):
    big, small = gr_stratum(gl2_gr, (2, 0)), gr_stratum(gl2_gr, (1, 1))
    assert closure_contains(gl2_gr, big, small)
    assert not closure_contains(gl2_gr, small, big)
    a = gr_stratum(gl2_gr, (1, 0)).coset
    assert convolution_support(gl2_gr, a, a).label == "(2,0)"


def test_convolution_needs_equal_facets():
    d = sl(2)
    fl = FlagVariety(d, frozenset(), iwahori_weyl(d).hyperspecial)
    c = iwahori_weyl(d).double_coset(iwahori_weyl(d).identity, (), ())
    with pytest.raises(AffineWeylError):
        convolution_support(fl, c, c)


def test_iwahori_strata_sl2():
    fl = FlagVariety(sl(2))
    poset = enumerate_strata(fl, 2)
    assert [s.dimension for s in poset.strata] == [0, 1, 1, 2, 2]
    for s in poset.strata:
        assert all(t.dimension == s.dimension - 1 for t in poset.covers[s])


def test_partial_flag_stratum_dimension_is_max_over_cells():
    d = sl(2)
    g = iwahori_weyl(d)
    fl = FlagVariety(d, frozenset(), g.hyperspecial)  # L+G orbits on Fl
    poset = enumerate_strata(fl, 3)
    # each L+G-orbit on Fl is a union of two Iwahori cells of adjacent dimension
    for s in poset.strata:
        lengths = sorted(g.length(x) for x in g.coset_elements(s.coset))
        assert s.dimension == lengths[-1]


def test_projection_fibers_example():
    d = sl(2)
    g = iwahori_weyl(d)
    v = g.simple_reflections[1]
    fib = projection_fibers(d, v, 0)
    assert [(kind, dim) for _, kind, dim in fib.pieces] == [("isomorphism", 1), ("line-bundle", 2)]
    with pytest.raises(AffineWeylError):
        projection_fibers(d, v, 1)


def test_parity_table(gl2_gr):
    rows = parity_table(gl2_gr, [(2, 0), (1, 1), (3, 1), (2, 2), (3, -1)])
    assert rows and all(r.same_parity for r in rows)
    assert any(r.mu == (3, -1) and r.lam == (2, 0) for r in rows)


@given(st.sampled_from(["SL2", "GL2", "GL3", "Sp4", "PGL2"]), st.data())
def test_gr_dimension_is_two_rho(name, data):
    d = preset(name)
    mu = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=d.rank, max_size=d.rank)))
    mu = d.dominant_representative(mu)
    fl = FlagVariety.grassmannian(d)
    assert gr_stratum(fl, mu).dimension == sum(a * b for a, b in zip(d.two_rho, mu))


@given(st.sampled_from(["SL3", "Sp4"]), st.data())
def test_closure_order_is_monotone_in_dimension(name, data):
    fl = FlagVariety.grassmannian(preset(name))
    poset = enumerate_strata(fl, 6)
    s = data.draw(st.sampled_from(poset.strata))
    for t in poset.down_set(s):
        assert t.dimension <= s.dimension
        assert (s.dimension - t.dimension) % 2 == 0
