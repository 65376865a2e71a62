import csv
import io
import math

import pytest

from gridtrees.bounds import (
    FAIL,
    NA,
    PASS,
    BoundsError,
    bulk_limit_trend,
    evaluate_bounds,
    level_sets,
    refined_upper_product,
    reports_to_csv,
)
from gridtrees.constants import BULK_LIMIT, LN_B
from gridtrees.lattice import induced_grid_graph, rectangle
from gridtrees.randwalk import F
from gridtrees.treecount import tau


def test_square12_report(square12):
    r = evaluate_bounds(square12)
    assert r.n_vertices == 144 and r.m == 121
    assert r.tau == tau(square12).value
    assert r.ln_tau == pytest.approx(146.146204165, abs=1e-8)
    assert r.lyons_bound == pytest.approx(144 * 1.1662436, abs=1e-4)
    assert r.lower_log < r.ln_tau < r.refined_upper_log < r.upper_log
    assert r.level_set_sizes == {1: 23, 2: 31, 3: 27, 4: 23, 5: 19, 6: 15, 7: 6}
    assert set(r.verdicts.values()) == {PASS}


def test_c8_upper_not_applicable(c8):
    r = evaluate_bounds(c8)
    assert (r.m, r.tau) == (0, 8)
    assert not r.simple and not r.upper_would_hold
    assert r.verdicts == {"lyons": PASS, "lower": PASS, "upper": NA, "refined": NA}
    assert "tau <= 4^m would fail" in r.as_text()


def test_unit_square_upper_is_sharp():
    r = evaluate_bounds(rectangle(2, 2))
    assert (r.m, r.tau) == (1, 4)
    assert r.tau == 4**r.m
    assert r.verdicts["upper"] == PASS


def test_single_vertex():
    r = evaluate_bounds(induced_grid_graph([(0, 0)]))
    assert (r.tau, r.m) == (1, 0)
    assert r.verdicts["lower"] == PASS and r.verdicts["lyons"] == PASS


def test_exhaustive_small_simple(simple_upto8):
    for g in simple_upto8:
        r = evaluate_bounds(g)
        assert set(r.verdicts.values()) == {PASS}, g


def test_random_polyominoes(random_polyominoes, trimmed_diamond):
    for g in list(random_polyominoes) + [trimmed_diamond]:
        assert set(evaluate_bounds(g).verdicts.values()) == {PASS}


def test_non_simple_still_checks_lyons_and_lower(diamond8):
    r = evaluate_bounds(diamond8)
    assert not r.simple
    assert r.verdicts["lyons"] == PASS and r.verdicts["lower"] == PASS
    assert r.verdicts["upper"] == NA


def test_refined_product():
    levels = level_sets(rectangle(3, 3))
    # the truncated graphs reach right along the rows above, so no depth 3 here
    assert levels == {1: 5, 2: 4}
    assert refined_upper_product(levels, 12) == F(2) ** 4 == 256
    levels = level_sets(rectangle(6, 6))
    assert levels[3] > 0
    assert refined_upper_product(levels, 2) == F(2) ** (36 - levels[1])
    assert refined_upper_product(levels, 12) < refined_upper_product(levels, 2)
    assert tau(rectangle(6, 6)).value <= refined_upper_product(levels, 12)


def test_max_k_caps_refined_bound(square12):
    loose = evaluate_bounds(square12, max_k=3)
    tight = evaluate_bounds(square12, max_k=12)
    assert loose.refined_upper_log > tight.refined_upper_log
    assert loose.verdicts["refined"] == PASS


def test_errors():
    with pytest.raises(BoundsError, match="max_k"):
        evaluate_bounds(rectangle(2, 2), max_k=1)
    with pytest.raises(BoundsError, match="disconnected"):
        evaluate_bounds(induced_grid_graph([(0, 0), (2, 0)]))


def test_csv_rows(square12, c8):
    text = reports_to_csv([evaluate_bounds(square12), evaluate_bounds(c8)])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["vertices"] == "144" and rows[0]["upper"] == PASS
    assert rows[1]["upper"] == NA and rows[1]["m"] == "0"
    assert FAIL not in text


def test_bulk_limit_trend():
    rows = dict(bulk_limit_trend([2, 12, 30]))
    assert rows[2] == pytest.approx(math.log(4) / 4)
    assert rows[12] == pytest.approx(1.0149, abs=1e-4)
    assert 1.05 < rows[30] < float(BULK_LIMIT)
    assert rows[2] < rows[12] < rows[30]
    with pytest.raises(BoundsError):
        bulk_limit_trend([3, 2])
    with pytest.raises(BoundsError):
        bulk_limit_trend([1])


def test_constants():
    assert float(BULK_LIMIT) == pytest.approx(1.1662436, abs=1e-7)
    assert math.exp(float(LN_B)) == pytest.approx(3.2099, abs=1e-4)
