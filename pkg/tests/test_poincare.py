import json

import pytest

from kflag.charring import Q_RING, CharPoly, RatChar
from kflag.errors import ConditionStarViolated
from kflag.poincare import (
    BBFixedPointData,
    BBPoint,
    bb_product_check,
    condition_star,
    is_rationally_smooth,
    load_fixture,
    poincare_bruhat,
    poincare_product,
    schubert_bb_data,
)
from kflag.rootsys import build_root_system


def q(*coefs):
    return CharPoly.from_terms(Q_RING, [((k,), c) for k, c in enumerate(coefs) if c])


@pytest.fixture(scope="module")
def rs_a2():
    return build_root_system("A", 2)


def test_bruhat_sums_a2(rs_a2):
    assert poincare_bruhat(rs_a2, rs_a2.identity) == q(1)
    assert poincare_bruhat(rs_a2, rs_a2.element((0, 1))) == q(1, 2, 1)
    assert poincare_bruhat(rs_a2, rs_a2.w0) == q(1, 2, 2, 1)


def test_product_formula_a2(rs_a2):
    assert poincare_product(rs_a2, rs_a2.w0) == RatChar(q(1, 2, 2, 1))
    assert poincare_product(rs_a2, rs_a2.element((0, 1))) == RatChar(q(1, 2, 1))
    assert poincare_product(rs_a2, rs_a2.identity) == RatChar(q(1))


def test_rational_smoothness_labels():
    a3 = build_root_system("A", 3)
    assert not is_rationally_smooth(a3, a3.element((1, 0, 2, 1)))
    assert is_rationally_smooth(a3, a3.w0)
    assert is_rationally_smooth(a3, a3.element((0,)))


def test_schubert_data_a2_full_flag(rs_a2):
    data = schubert_bb_data(rs_a2, rs_a2.w0)
    by_label = {p.label: p for p in data.points}
    assert by_label["id"].weights == (1, 1, 2)
    assert sorted(by_label["s1 s2 s1"].weights) == [-2, -1, -1]
    assert condition_star(data)
    assert bb_product_check(data).passed


def test_schubert_data_identity(rs_a2):
    data = schubert_bb_data(rs_a2, rs_a2.identity)
    assert data.dim == 0 and len(data.points) == 1 and data.points[0].weights == ()
    assert bb_product_check(data).passed


@pytest.mark.parametrize("name,expected", [("P1", (1, 1)), ("P2", (1, 1, 1))])
def test_fixtures(name, expected):
    data = load_fixture(name)
    report = bb_product_check(data, name)
    assert report.passed
    assert report.bruhat_sum == q(*expected)


def test_fixture_from_file(tmp_path):
    path = tmp_path / "p1.json"
    path.write_text(json.dumps(load_fixture("P1").to_json()))
    assert load_fixture(str(path)) == load_fixture("P1")


def test_condition_star_violation():
    data = BBFixedPointData(2, (BBPoint("a", 0, (1, 1)), BBPoint("b", 1, (2, -3))))
    assert not condition_star(data)
    report = bb_product_check(data, "synthetic")
    assert not report.applicable
    with pytest.raises(ConditionStarViolated):
        report.raise_for_failure()


def test_invalid_data_is_not_applicable():
    data = BBFixedPointData(2, (BBPoint("a", 0, (1,)),))
    assert not bb_product_check(data).applicable


@pytest.mark.parametrize("fam,rank", [("A", 3), ("B", 3), ("C", 3), ("G", 2)])
def test_full_flag_product(fam, rank):
    rs = build_root_system(fam, rank)
    assert poincare_product(rs, rs.w0) == RatChar(poincare_bruhat(rs, rs.w0))


def test_b2_rationally_smooth_singular_element_differs():
    """X(s2 s1 s2) in B2 is rationally smooth but singular; the product formula does not apply."""
    rs = build_root_system("B", 2)
    w = rs.element((1, 0, 1))
    assert is_rationally_smooth(rs, w)
    assert poincare_bruhat(rs, w) == q(1, 2, 2, 1)
    assert poincare_product(rs, w) != RatChar(q(1, 2, 2, 1))
