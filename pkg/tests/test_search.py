import itertools
import random

import numpy as np
import pytest

from circ16.circulant import det_bareiss
from circ16.classifier import classify
from circ16.errors import BudgetExceeded, NotFoundInBox
from circ16.search import SearchBox, batch_det, enumerate_box, find_value, spectrum


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_batch_det_matches_elimination(n):
    rng = random.Random(n)
    rows = np.array([[rng.randint(-3, 3) for _ in range(n)] for _ in range(300)], dtype=np.int64)
    assert [int(d) for d in batch_det(rows)] == [det_bareiss(list(map(int, r))) for r in rows]


def test_batch_det_exact_with_object_arrays():
    rng = random.Random(0)
    rows = np.array([[rng.randint(-10**6, 10**6) for _ in range(16)] for _ in range(20)], dtype=object)
    assert [int(d) for d in batch_det(rows)] == [det_bareiss(list(r)) for r in rows]


def test_int64_guard():
    assert SearchBox(16, -3, 3).int64_safe()
    assert not SearchBox(16, -4, 4).int64_safe()


def test_object_fallback_spectrum_is_exact():
    report = spectrum(SearchBox(2, -200, 200), cap=10**6)
    assert report.values == {a * a - b * b for a in range(-200, 201) for b in range(-200, 201)}


def test_enumerate_order_and_count():
    seen = []
    enumerate_box(SearchBox(2, -1, 1), lambda v, d: seen.append((v, d)))
    assert len(seen) == 9
    assert [v for v, _ in seen][:4] == [(0, 0), (1, 0), (-1, 0), (0, 1)]
    assert {d for _, d in seen} == {-1, 0, 1}
    assert all(d == v[0] ** 2 - v[1] ** 2 for v, d in seen)


def test_enumerate_visits_each_vector_once():
    seen = []
    box = SearchBox(4, -1, 2)
    enumerate_box(box, lambda v, d: seen.append(v))
    assert sorted(seen) == sorted(itertools.product(range(-1, 3), repeat=4))
    assert [box.index_of(v) for v in seen] == list(range(box.size))


def test_zero_one_box_classifies_member():
    report = spectrum(SearchBox(16, 0, 1))
    assert report.visited == 65536
    assert all(classify(v).member for v in report.values)
    assert report.witnesses[1] == (1,) + (0,) * 15


def test_box_size_count():
    assert SearchBox(16, -1, 1).size == 43_046_721


def test_find_value():
    assert find_value(1, SearchBox(16, 0, 1)) == (1,) + (0,) * 15
    vec = find_value(128, SearchBox(16, -2, 2))
    assert det_bareiss(vec) == 128
    with pytest.raises(NotFoundInBox):
        find_value(64, SearchBox(8, -1, 1))


def test_witnesses_attain_their_values():
    report = spectrum(SearchBox(8, -1, 1))
    for value, vec in report.witnesses.items():
        assert det_bareiss(vec) == value


@pytest.mark.parametrize(
    "box,modulus",
    [(SearchBox(2, -3, 3), 4), (SearchBox(4, -2, 2), 16), (SearchBox(8, -1, 1), 32)],
)
def test_small_order_spectra_lie_in_published_sets(box, modulus):
    report = spectrum(box)
    assert all(v % 2 == 1 or v % modulus == 0 for v in report.values)


def test_determinism_across_worker_counts():
    box = SearchBox(8, -2, 1)
    one = spectrum(box, jobs=1)
    two = spectrum(box, jobs=2)
    assert one.to_dict() == two.to_dict()
    assert find_value(-15, box, jobs=1) == find_value(-15, box, jobs=2)


def test_budget_and_override():
    with pytest.raises(BudgetExceeded):
        spectrum(SearchBox(16, -2, 2))
    with pytest.raises(BudgetExceeded):
        spectrum(SearchBox(16, -3, 0), cap=10**20)
    with pytest.raises(BudgetExceeded):
        spectrum(SearchBox(8, -1, 1), cap=100)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("CIRC16_MAX_WORK", "10")
    with pytest.raises(BudgetExceeded):
        spectrum(SearchBox(4, -1, 1))


def test_invalid_box():
    with pytest.raises(ValueError):
        SearchBox(3, 0, 1)
    with pytest.raises(ValueError):
        SearchBox(4, 1, 0)
