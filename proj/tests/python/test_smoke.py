import pytest

import multispread as msp


def example1():
    return msp.multispread(2, 3, 2, [([7], 1), ([2, 1], 1), ([4, 1], 1), ([4, 2], 1), ([6, 3], 1)])


def test_example_instance_verifies():
    ms = example1()
    assert ms.summary() == "multispread (1,2;2,3)_2, n=5"
    assert (ms.lam, ms.mu, ms.n) == (1, 2, 5)
    assert ms.count_dim(1) == 1 and ms.count_dim(2) == 4


def test_non_uniform_cover_raises():
    with pytest.raises(msp.MultispreadError, match="NonUniformCoverage"):
        msp.multispread(2, 3, 2, [([7], 1), ([2, 1], 1)])


def test_oracle_labels():
    v = msp.oracle(2, 5, 4, 2)
    assert v["status"] == "INFEASIBLE"
    assert v["reason"] == "corollary:c:l2452"
    assert msp.oracle(2, 3, 2, 2, lam=1)["status"] == "FEASIBLE"
    assert msp.lambda_min_congruence(2, 3, 2, 2) == 1


def test_recipe_round_trip():
    ms, plan = msp.recipe(3, 3, 2, 2, 3)
    assert (ms.lam, ms.mu) == (2, 3)
    assert plan
    again = msp.parse_multispread(ms.serialize())
    assert again.members() == ms.members()


def test_duality():
    part = msp.dualize(example1())
    assert part.nu == 1 and part.size == 5
    back = msp.dualize_partition(part, 2)
    assert back.members() == example1().members()


def test_code_bridge():
    cp = msp.code_params(example1())
    assert cp["text"] == "[5,1.5,4]_4"
    assert cp["intersection_array"] == (14, 2)
    rows = msp.generator_matrix(example1())
    checked = msp.check_one_weight(2, 2, rows)
    assert checked["w"] == 4 and checked["mu"] == 2


def test_search_and_catalog():
    r = msp.exact_cover_search(2, 3, 2, 1, 2)
    assert r["outcome"] == "FOUND"
    assert r["multispread"].summary() == "multispread (1,2;2,3)_2, n=5"
    assert msp.exact_cover_search(2, 5, 4, 13, 2)["outcome"] == "EXHAUSTED"
    assert len(msp.catalog_names()) == 10
    x1 = msp.catalog_entry("X1")
    assert (x1.lam, x1.mu, x1.t, x1.m) == (5, 3, 3, 5)
    part = msp.catalog_entry("q2-m9-partition")
    assert part.count_dim(3) == 28 and part.count_dim(4) == 21
