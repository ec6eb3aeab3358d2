import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circ16.circulant import (
    GaussianInteger,
    alpha1_exact,
    alpha1_formula,
    alpha2_exact,
    alpha2_formula,
    bareiss_det,
    cyclic_convolve,
    det_bareiss,
    det_via_norms,
    norms,
    parity_gate,
    transforms,
)
from circ16.errors import InternalInvariantViolation

from conftest import circulant_oracle

E0 = (1,) + (0,) * 15
VEC_320 = (0, 0, 0, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, -1, -1)
VEC_576 = (0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0)

vec16 = st.lists(st.integers(-50, 50), min_size=16, max_size=16)


def test_det_bareiss_examples():
    assert det_bareiss(E0) == 1
    assert det_bareiss((0,) * 16) == 0
    assert det_bareiss(VEC_320) == 320  # 32 * (3^2 + 1^2)


@pytest.mark.parametrize("a0,a1", [(0, 0), (3, 1), (-2, 5), (7, 7), (10, -3)])
def test_det_bareiss_order_two(a0, a1):
    assert det_bareiss((a0, a1)) == a0 * a0 - a1 * a1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 16])
def test_det_bareiss_matches_rational_elimination(n):
    rng = random.Random(n)
    for _ in range(5):
        v = [rng.randint(-9, 9) for _ in range(n)]
        assert det_bareiss(v) == circulant_oracle(v)


def test_bareiss_handles_zero_pivot():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [0, 1]]) == 0


def test_det_via_norms_examples():
    assert det_via_norms(E0) == 1
    assert det_via_norms(VEC_576) == 576  # 64 * 3^2


def test_transforms_examples():
    t = transforms((0,) * 16)
    assert t.b == t.c == (0, 0, 0, 0) and t.e == (0,) * 8
    t = transforms(E0)
    assert t.b == (1, 0, 0, 0) and t.c == (1, 0, 0, 0)
    assert t.e == (1, 0, 0, 0, 0, 0, 0, 0)
    assert t.d[0] == GaussianInteger(1, 0)
    t = transforms(range(16))
    assert t.b[0] == 0 + 8 + 4 + 12 == 24
    assert t.e[0] == -8


@given(vec16)
def test_transforms_invariants(v):
    t = transforms(v)
    for k in range(4):
        assert t.b[k] == v[k] + v[k + 8] + v[k + 4] + v[k + 12]
        assert t.c[k] == v[k] + v[k + 8] - v[k + 4] - v[k + 12]
        assert (t.b[k] + t.c[k]) % 2 == 0
        assert t.d[k] == GaussianInteger(v[k] - v[k + 8], v[k + 4] - v[k + 12])
    assert t.e == tuple(v[k] - v[k + 8] for k in range(8))


def test_alpha_formula_examples():
    assert alpha1_formula((1, 0, 0, 0, 0, 0, 0, 0)) == GaussianInteger(1, 0)
    assert alpha1_formula((0, 0, 0, 1, 0, 0, 0, 0)) == GaussianInteger(0, 1)
    assert alpha2_formula((1, 0, 0, 0)) == GaussianInteger(1, 0)
    assert alpha2_formula((0, 1, 0, 0)) == GaussianInteger(0, -1)


def test_alpha1_exact_examples():
    assert alpha1_exact(E0) == GaussianInteger(1, 0)
    # z * z^5 * z^9 * z^13 = z^28 = z^12 = -z^4 = -i
    assert alpha1_exact((0, 1) + (0,) * 14) == GaussianInteger(0, -1)


@settings(max_examples=300)
@given(st.lists(st.integers(-20, 20), min_size=8, max_size=8))
def test_alpha1_formula_matches_ring_product(e):
    assert alpha1_formula(e) == alpha1_exact(list(e) + [0] * 8)


@settings(max_examples=300)
@given(vec16)
def test_alpha_formulas_match_ring_products(v):
    t = transforms(v)
    assert alpha1_formula(t.e) == alpha1_exact(v)
    assert alpha2_formula(t.c) == alpha2_exact(v)


def test_ring_product_stray_coefficient_is_reported(monkeypatch):
    from circ16 import circulant

    monkeypatch.setattr(circulant, "_conjugate_product", lambda a, powers, m: [1, 1] + [0] * (m - 2))
    with pytest.raises(InternalInvariantViolation):
        circulant.alpha1_exact(E0)


def test_norms_examples():
    assert norms(E0).as_tuple() == (1, 1, 1, 1, 1)
    nf = norms(VEC_320)
    assert nf.product == 320
    n1, n2, n4, n8, n16 = nf.as_tuple()
    for x in (n1, n2, n4):
        assert x % 2 == 0 and (x // 2) % 2 == 1
    assert (n8 * n16) % 8 == 0 and (n8 * n16 // 8) % 2 == 1


@settings(max_examples=300)
@given(vec16)
def test_norm_product_is_determinant(v):
    nf = norms(v)
    assert nf.product == det_bareiss(v)
    assert nf.n1 == nf.alpha1.norm() and nf.n2 == nf.alpha2.norm()
    assert nf.n16 == sum(v)


def test_parity_gate_examples():
    rep = parity_gate(VEC_320)
    assert rep.det_in_64_odd and rep.det_class == "64Zodd" and rep.conditions_agree
    assert parity_gate(E0).all_odd_norms
    rep = parity_gate(VEC_576)
    assert rep.det_in_64_odd and rep.split_n1_n2_n4_2odd and rep.split_n1_n2_2odd


@settings(max_examples=200)
@given(vec16, vec16)
def test_convolution_multiplies_determinants(u, w):
    assert det_bareiss(cyclic_convolve(u, w)) == det_bareiss(u) * det_bareiss(w)


def test_convolution_identity():
    u = tuple(range(16))
    assert cyclic_convolve(u, E0) == u


def test_gaussian_integer_arithmetic():
    z = GaussianInteger(3, -4)
    assert z.norm() == 25
    assert z * z.conj() == GaussianInteger(25, 0)
    assert str(z) == "3-4i"
