from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rumortree import (
    ExactPmf,
    ModelParams,
    offspring_mean,
    offspring_pgf,
    offspring_pmf,
    root_pmf,
    stifling_sum_S,
    stifling_sum_Sstar,
)
from rumortree.oracles import enumerate_spreader_law, nested_sum_by_enumeration

F = Fraction


def test_offspring_d2_k1():
    assert dict(offspring_pmf(ModelParams(2, 1))) == {0: F(1, 3), 1: F(4, 9), 2: F(2, 9)}


def test_root_d2_k1():
    assert dict(root_pmf(ModelParams(2, 1))) == {1: F(1, 3), 2: F(4, 9), 3: F(2, 9)}


def test_offspring_d2_k2():
    assert dict(offspring_pmf(ModelParams(2, 2))) == {0: F(1, 9), 1: F(4, 9), 2: F(4, 9)}


def test_root_d2_k2():
    pmf = root_pmf(ModelParams(2, 2))
    assert pmf[1] == F(1, 9)
    assert sum(m for _, m in pmf) == 1


def test_offspring_k1_matches_simple_formula():
    for d in range(2, 12):
        pmf = offspring_pmf(ModelParams(d, 1))
        for i in range(d + 1):
            expected = factorial(i) * comb(d, i) * F(i + 1, d + 1) / (d + 1) ** i
            assert pmf[i] == expected


def test_root_k1_matches_simple_formula():
    for d in range(2, 12):
        pmf = root_pmf(ModelParams(d, 1))
        for i in range(1, d + 2):
            assert pmf[i] == factorial(i) * comb(d, i - 1) * F(1, (d + 1) ** i)


def test_two_child_mass_k2():
    for d in range(2, 10):
        assert offspring_pmf(ModelParams(d, 2))[2] == F(18 * d * (d - 1), (d + 1) ** 4)


@pytest.mark.parametrize("params,mean", [((2, 1), F(8, 9)), ((3, 1), F(39, 32))])
def test_means(params, mean):
    assert offspring_mean(ModelParams(*params)) == mean


def test_mean_d3_exceeds_one():
    assert offspring_mean(ModelParams(3, 1)) > 1


def test_invalid_params():
    with pytest.raises(ValueError, match="d must be >= 2"):
        ModelParams(1, 1)
    with pytest.raises(ValueError, match="k must be >= 1"):
        ModelParams(2, 0)


def test_stifling_sums_k1_and_small():
    assert stifling_sum_S(0, 1) == stifling_sum_Sstar(1, 1) == 1
    assert stifling_sum_S(3, 1) == stifling_sum_Sstar(5, 1) == 1
    assert stifling_sum_S(0, 2) == 1
    with pytest.raises(ValueError):
        stifling_sum_Sstar(0, 2)
    assert stifling_sum_Sstar(3, 2) == 6


@pytest.mark.parametrize("i", range(1, 25))
def test_closed_forms_k3(i):
    assert stifling_sum_Sstar(i, 3) * 24 == i * (i + 1) * (3 * i * i + 7 * i + 2)
    assert stifling_sum_S(i, 3) * 24 == (i + 1) * (i + 2) * (3 * i * i + 13 * i + 12)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 9), st.integers(1, 5))
def test_dp_matches_enumerated_nested_sum(top, k):
    assert stifling_sum_Sstar(top, k) == nested_sum_by_enumeration(top, k)
    assert stifling_sum_S(top, k) == nested_sum_by_enumeration(top + 1, k)


@pytest.mark.parametrize("d,k", [(d, k) for d in (2, 3, 4) for k in (1, 2, 3)])
def test_pmfs_match_contact_enumeration(d, k):
    p = ModelParams(d, k)
    assert enumerate_spreader_law(d, k, root=False) == {i: m for i, m in offspring_pmf(p) if m}
    assert enumerate_spreader_law(d, k, root=True) == dict(root_pmf(p))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 40), st.integers(1, 6))
def test_normalised_and_supported(d, k):
    p = ModelParams(d, k)
    off, root = offspring_pmf(p), root_pmf(p)
    assert off.total() == 1 and root.total() == 1
    assert max(off.support) <= d and min(root.support) >= 1 and max(root.support) <= d + 1
    assert all(m >= 0 for _, m in off)
    assert offspring_pgf(p, 1) == 1
    assert offspring_pgf(p, F(0)) == off[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(1, 4))
def test_mean_increases_with_k(d, k):
    assert offspring_mean(ModelParams(d, k + 1)) > offspring_mean(ModelParams(d, k))


def test_pgf_float_and_exact_agree():
    p = ModelParams(5, 2)
    for s in (0.0, 0.3, 0.77, 1.0):
        assert offspring_pgf(p, s) == pytest.approx(float(offspring_pgf(p, F(s))), abs=1e-15)
    with pytest.raises(ValueError):
        offspring_pgf(p, 1.5)


def test_exact_pmf_invariants():
    with pytest.raises(ValueError):
        ExactPmf.from_masses({0: F(1, 2)}, defective=False)
    pmf = ExactPmf.from_masses({1: F(1, 2)}, defective=True)
    assert pmf.deficit == F(1, 2) and pmf.defective
    with pytest.raises(ValueError):
        ExactPmf.from_masses({0: F(-1, 2), 1: F(3, 2)}, defective=False)


def test_tv_distance():
    pmf = offspring_pmf(ModelParams(2, 1))
    assert pmf.tv_distance(pmf.as_float()) == pytest.approx(0.0, abs=1e-16)
    assert pmf.tv_distance({0: 1.0}) == pytest.approx(2 / 3)
