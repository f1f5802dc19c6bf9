import math
import random
from itertools import combinations

import pytest

from anonytope.complexes import (Filtration, build_anonymity_complex,
                                 build_filtration, is_anonymity_simplex,
                                 simplex_dim)
from anonytope.errors import ContractViolation, FiltrationSizeError

from oracles import dataset

EQUILATERAL = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]


def test_eps_zero_gives_isolated_vertices():
    data = dataset([(0, 0), (0.5, 0.5), (1, 1)])
    cx = build_anonymity_complex(data, 0.0, dim_cap=2)
    assert cx.simplices == frozenset({(1,), (2,), (3,)})


def test_two_points_edge_at_half_distance():
    data = dataset([(0, 0), (1, 0)])
    cx = build_anonymity_complex(data, 0.5, dim_cap=2)
    assert (1, 2) in cx
    assert cx.counts()[:2] == [2, 1]


def test_equilateral_edges_without_fill():
    data = dataset(EQUILATERAL)
    cx = build_anonymity_complex(data, 0.55, dim_cap=2)
    assert cx.counts() == [3, 3, 0]     # 0.5 <= 0.55 < 1/sqrt(3)


def test_filtration_single_point():
    filt = build_filtration(dataset([(0.2, 0.4)]), dim_cap=1)
    assert filt.entries == ((0.0, (1,)),)


def test_filtration_two_points():
    filt = build_filtration(dataset([(0, 0), (1, 0)]), dim_cap=1)
    assert filt.entries == ((0.0, (1,)), (0.0, (2,)), (0.5, (1, 2)))


def test_filtration_equilateral_births():
    filt = build_filtration(dataset(EQUILATERAL), dim_cap=2)
    births = dict((s, b) for b, s in filt.entries)
    assert births[(1, 2)] == pytest.approx(0.5)
    assert births[(1, 2, 3)] == pytest.approx(1 / math.sqrt(3), rel=1e-9)


def test_filtration_budget_guard():
    data = dataset([(i / 40, 0.0) for i in range(30)])
    with pytest.raises(FiltrationSizeError, match="dim_cap"):
        build_filtration(data, dim_cap=10, budget=1000)


def test_text_roundtrip_is_bit_exact():
    data = dataset([(0.137, 0.911), (0.25, 0.33), (0.6, 0.1)])
    filt = build_filtration(data, dim_cap=2)
    again = Filtration.from_text(filt.to_text(), dim_cap=2)
    assert again.entries == filt.entries
    assert Filtration.from_text(again.to_text()).entries == filt.entries


def test_anonymity_simplex_counts_points_not_dimension():
    data = dataset([(0.5, 0.5)] * 4)
    assert is_anonymity_simplex(data, [1, 2, 3, 4], eps=0.0, k=4)
    assert not is_anonymity_simplex(data, [1, 2, 3], eps=0.0, k=4)


def test_two_far_clusters_cannot_join():
    # two tight clusters; eps covers each cluster but not their union
    data = dataset([(0, 0), (0.1, 0), (0, 0.1),
                    (2, 2), (2.1, 2), (2, 2.1)])
    eps = 0.2
    assert is_anonymity_simplex(data, [1, 2, 3], eps, k=3)
    assert is_anonymity_simplex(data, [4, 5, 6], eps, k=3)
    assert not is_anonymity_simplex(data, [1, 2, 3, 4], eps, k=4)


def test_unknown_row_id_rejected():
    data = dataset([(0, 0)])
    with pytest.raises(ContractViolation):
        is_anonymity_simplex(data, [7], eps=0.1, k=1)


def test_sublevel_matches_direct_construction():
    rng = random.Random(42)
    for _ in range(50):
        n = rng.randint(1, 8)
        pts = [(rng.random(), rng.random()) for _ in range(n)]
        data = dataset(pts)
        filt = build_filtration(data, dim_cap=2)
        for _ in range(10):
            eps = rng.random() * 0.8
            assert filt.sublevel(eps).simplices == \
                build_anonymity_complex(data, eps, dim_cap=2).simplices


def test_downward_closure_at_every_birth():
    rng = random.Random(7)
    pts = [(rng.random(), rng.random()) for _ in range(7)]
    filt = build_filtration(dataset(pts), dim_cap=3)
    births = dict((s, b) for b, s in filt.entries)
    for s, b in births.items():
        for f in combinations(s, len(s) - 1):
            if f:
                assert births[f] <= b


def test_nesting_in_eps():
    rng = random.Random(11)
    pts = [(rng.random(), rng.random()) for _ in range(6)]
    data = dataset(pts)
    lo = build_anonymity_complex(data, 0.2, dim_cap=2)
    hi = build_anonymity_complex(data, 0.35, dim_cap=2)
    assert lo.simplices <= hi.simplices
