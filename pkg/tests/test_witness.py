import itertools
import random

import pytest

from circ16 import witness as W
from circ16.circulant import cyclic_convolve, det_bareiss
from circ16.classifier import classify
from circ16.errors import InternalInvariantViolation, InvalidResidue, NotClassPM3, NotMember, NotOdd
from circ16.numtheory import mod8_class, primes_below

from conftest import circulant_oracle


@pytest.mark.parametrize(
    "m,vec",
    [
        (1, (1,) + (0,) * 15),
        (3, (1, 1, 1) + (0,) * 13),
        (-1, (0,) * 15 + (-1,)),
        (35, (3, 3, 3) + (2,) * 13),
    ],
)
def test_odd_witness_examples(m, vec):
    assert W.odd_witness(m) == vec
    assert circulant_oracle(vec) == m


def test_odd_family():
    for m in range(-999, 1000, 2):
        assert det_bareiss(W.odd_witness(m)) == m
    with pytest.raises(NotOdd):
        W.odd_witness(4)


def test_mult256_witness():
    assert det_bareiss(W.mult256_witness(0)) == 0
    assert W.mult256_witness(1) == (-2, 0) + (-1,) * 14
    assert circulant_oracle(W.mult256_witness(1)) == 256
    assert circulant_oracle(W.mult256_witness(-3)) == -768


def test_base128_constant():
    vec = W.base128_witness()
    assert circulant_oracle(vec) == 128
    assert det_bareiss(cyclic_convolve(vec, W.odd_witness(3))) == 384
    assert det_bareiss(cyclic_convolve(vec, W.odd_witness(-1))) == -128


def test_base128_constant_is_first_hit_in_search_order():
    from circ16.search import SearchBox, find_value

    assert find_value(128, SearchBox(16, -2, 2)) == W.BASE128_VECTOR


def test_sum_of_squares_family_examples():
    assert det_bareiss(W.sum_of_squares_family(0, 0)) == 320
    assert det_bareiss(W.sum_of_squares_family(-1, 0)) == 832 == 64 * 13
    assert det_bareiss(W.sum_of_squares_family(0, -1)) == 1856 == 64 * 29
    assert W.sum_of_squares_family(0, 0) == (0, 0, 0, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, -1, -1)


def test_squared_form_family_examples():
    assert det_bareiss(W.squared_form_family(0, 0)) == 576
    assert det_bareiss(W.squared_form_family(1, 1)) == 46656 == 64 * 27**2
    assert det_bareiss(W.squared_form_family(0, 1)) == 64 * 361


def test_quadruple_family_examples():
    assert det_bareiss(W.quadruple_family(0, 0, 0, 0)) == 576
    # both braces are -3 at l = 1 as well: (1 - 4, 1 - 0 - 4)
    assert W.quadruple_family_value(0, 1, 0, 0) == 32 * 9 + 32 * 9
    assert circulant_oracle(W.quadruple_family_vector(0, 1, 0, 0)) == 576


def test_quadruple_family_random_against_oracle():
    rng = random.Random(3)
    for _ in range(25):
        k, l, m, n = (rng.randint(-3, 3) for _ in range(4))
        assert circulant_oracle(W.quadruple_family_vector(k, l, m, n)) == W.quadruple_family_value(k, l, m, n)


def test_64p_5mod8():
    assert W.witness_64p_5mod8(5).params == (0, 0)
    assert det_bareiss(W.realize(W.witness_64p_5mod8(13))) == 832
    assert det_bareiss(W.realize(W.witness_64p_5mod8(29))) == 1856
    with pytest.raises(InvalidResidue):
        W.witness_64p_5mod8(13 + 4)


def test_64p2_3mod8():
    assert W.witness_64p2_3mod8(3).params == (0, 0)
    assert det_bareiss(W.realize(W.witness_64p2_3mod8(11))) == 7744
    assert det_bareiss(W.realize(W.witness_64p2_3mod8(19))) == 64 * 361


def test_64p_1mod8():
    assert max(abs(x) for x in W.search_quadruple(17)) <= 5
    assert det_bareiss(W.realize(W.witness_64p_1mod8(17))) == 1088
    assert det_bareiss(W.realize(W.witness_64p_1mod8(73))) == 4672
    assert det_bareiss(W.realize(W.witness_64p_1mod8(97))) == 6208
    with pytest.raises(NotClassPM3):
        W.witness_64p_1mod8(113)


def test_quadruple_search_order_is_deterministic():
    hits = W.find_quadruples(17, 3)
    assert hits[0] == W.search_quadruple(17)
    shells = [max(map(abs, q)) for q in hits]
    assert shells == sorted(shells)
    for a, b in zip(hits, hits[1:]):
        if max(map(abs, a)) == max(map(abs, b)):
            assert a < b


def test_quad_search_completeness_below_2000():
    for p in primes_below(2000):
        if p % 8 != 1:
            continue
        if mod8_class(p).value == "PM3":
            assert det_bareiss(W.realize(W.witness_64p_1mod8(p))) == 64 * p
        else:
            quads = W.find_quadruples(p, 6)
            assert quads, p
            assert not any(W.c_is_admissible(W.quadruple_c(W.normalize_quadruple(q))) for q in quads)


def test_large_prime_uses_gcd_route():
    p = 1000000000000000000000000001081
    assert mod8_class(p).value == "PM3"
    plan = W.witness_64p_1mod8(p)
    assert det_bareiss(W.realize(plan)) == 64 * p


@pytest.mark.parametrize("v", [35, -384, 2880, 512, 0, 128, -1088 * 3, 64 * 11 * 11 * 7])
def test_build_witness_examples(v):
    vec = W.build_witness(classify(v))
    assert circulant_oracle(vec) == v


def test_build_witness_routes():
    assert W.plan_for(classify(-384)).children[0].kind == "Base128Constant"
    assert W.plan_for(classify(512)).kind == "Mult256Family"
    plan = W.plan_for(classify(2880))
    assert [c.kind for c in plan.children] == ["SumOfSquaresFamily", "OddFamily"]
    with pytest.raises(NotMember):
        W.build_witness(classify(192))


def test_convolution_examples():
    u = tuple(range(16))
    assert cyclic_convolve(u, (1,) + (0,) * 15) == u
    assert det_bareiss(cyclic_convolve(W.odd_witness(3), W.odd_witness(5))) == 15
    assert det_bareiss(cyclic_convolve(W.sum_of_squares_family(0, 0), W.odd_witness(-1))) == -320


def test_plan_serialization_round_trip():
    plan = W.plan_for(classify(2880))
    assert W.WitnessPlan.from_dict(plan.to_dict()) == plan


def test_corrupted_constant_is_caught(monkeypatch):
    monkeypatch.setattr(W, "BASE128_VECTOR", (1,) * 16)
    with pytest.raises(InternalInvariantViolation):
        W.base128_witness()


def test_formula_grids():
    for k, l in itertools.product(range(-4, 5), repeat=2):
        assert det_bareiss(W.sum_of_squares_family_vector(k, l)) == W.sum_of_squares_family_value(k, l)
