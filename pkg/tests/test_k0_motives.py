from hypothesis import given, strategies as st

from motivic_satake.flag_strata import FlagVariety, convolution_support, gr_stratum
from motivic_satake.hecke import HeckeElement, hecke_multiply
from motivic_satake.k0_motives import (
    K0Element,
    bridge_inverse,
    fiber_dimension,
    ic,
    k0_convolve,
    kernel_residual,
    quotient_specialize,
    satake_bridge,
    tate_twist,
    trace_frobenius,
    unit,
)
from motivic_satake.laurent import LaurentPoly
from motivic_satake.rep_ring import RepElement, weyl_dimension
from motivic_satake.root_datum import dominance_leq, gl, preset

G2 = gl(2)
q = LaurentPoly.monomial(2)


def test_convolution_example():
    a = ic((1, 0))
    assert k0_convolve(G2, a, a) == ic((2, 0)) + ic((1, 1), -1)
    assert k0_convolve(G2, unit(G2), a) == a


def test_tate_twist():
    a = ic((2, 0), 1) + ic((1, 1), -3, 2)
    assert tate_twist(a, 0) == a
    assert tate_twist(tate_twist(a, 1), -1) == a
    assert tate_twist(a, 2) == k0_convolve(G2, a, ic((0, 0), 2))


def test_trace_examples():
    assert trace_frobenius(G2, ic((0, 0), -1)) == HeckeElement.c((0, 0), q)
    assert trace_frobenius(G2, ic((1, 0))) == HeckeElement.c((1, 0))
    assert trace_frobenius(G2, ic((2, 0))) == HeckeElement.c((2, 0)) + HeckeElement.c((1, 1))
    assert kernel_residual(G2, unit(G2)) == HeckeElement()


def test_bridge_and_quotient():
    a = ic((2, 0), 1) - ic((0, 0), -1)
    assert bridge_inverse(satake_bridge(a)) == a
    assert quotient_specialize(G2, RepElement({((0, 0), -1): 1})) == HeckeElement.c((0, 0), q)
    assert quotient_specialize(G2, satake_bridge(ic((2, 0)))) == trace_frobenius(G2, ic((2, 0)))


def test_fiber_dimension():
    assert fiber_dimension(G2, (0, 0)) == 1
    assert fiber_dimension(G2, (1, 0)) == 2
    assert fiber_dimension(G2, (2, 0)) == 3
    assert fiber_dimension(G2, (2, 0), graded=True) == LaurentPoly({1: 1, 0: 2})


def test_support_matches_convolution_support():
    fl = FlagVariety.grassmannian(G2)
    for mu, lam in [((1, 0), (1, 0)), ((2, 0), (1, 0)), ((2, 1), (1, -1))]:
        top = convolution_support(fl, gr_stratum(fl, mu).coset, gr_stratum(fl, lam).coset)
        prod = k0_convolve(G2, ic(mu), ic(lam))
        total = tuple(a + b for a, b in zip(mu, lam))
        assert top.label == "(" + ",".join(map(str, total)) + ")"
        assert all(dominance_leq(G2, nu, total) for nu, _ in prod.keys())


def k0_element(d, data):
    out = K0Element()
    for _ in range(data.draw(st.integers(1, 2))):
        mu = d.dominant_representative(
            tuple(data.draw(st.lists(st.integers(-1, 2), min_size=d.rank, max_size=d.rank))))
        out = out + ic(mu, data.draw(st.integers(-2, 2)), data.draw(st.integers(-2, 2)))
    return out


@given(st.sampled_from(["GL2", "GL3", "SL2", "PGL2", "Sp4"]), st.data())
def test_trace_is_a_ring_homomorphism(name, data):
    d = preset(name)
    a, b = k0_element(d, data), k0_element(d, data)
    assert trace_frobenius(d, k0_convolve(d, a, b)) == hecke_multiply(d, trace_frobenius(d, a), trace_frobenius(d, b))
    assert kernel_residual(d, a) == HeckeElement()
    assert k0_convolve(d, a, b) == k0_convolve(d, b, a)


@given(st.sampled_from(["GL2", "GL3", "Sp4", "SO5"]), st.data())
def test_fiber_dimension_specializes(name, data):
    d = preset(name)
    mu = d.dominant_representative(tuple(data.draw(st.lists(st.integers(-1, 3), min_size=d.rank, max_size=d.rank))))
    assert fiber_dimension(d, mu, graded=True).evaluate(1) == weyl_dimension(d, mu) == fiber_dimension(d, mu)


@given(st.sampled_from(["GL2", "SL2", "PGL2"]), st.data())
def test_cartan_component(name, data):
    d = preset(name)
    mu = d.dominant_representative(tuple(data.draw(st.lists(st.integers(-2, 3), min_size=d.rank, max_size=d.rank))))
    lam = d.dominant_representative(tuple(data.draw(st.lists(st.integers(-2, 3), min_size=d.rank, max_size=d.rank))))
    m, n = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    prod = k0_convolve(d, ic(mu, m), ic(lam, n))
    assert prod[(tuple(a + b for a, b in zip(mu, lam)), m + n)] == 1
