import itertools

import numpy as np
import pytest

from kflag.errors import UnsupportedType
from kflag.rootsys import build_root_system, cartan_matrix, parse_cartan

ORDERS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("B", 2): 8, ("B", 3): 48,
    ("C", 3): 48, ("D", 4): 192, ("G", 2): 12, ("F", 4): 1152,
}
POSITIVE = {("A", 3): 6, ("B", 3): 9, ("C", 3): 9, ("D", 4): 12, ("G", 2): 6, ("F", 4): 24}


@pytest.mark.parametrize("key,order", sorted(ORDERS.items()))
def test_weyl_group_order(key, order):
    rs = build_root_system(*key)
    assert len(rs.elements) == order
    assert rs.lengths[rs.w0.index] == rs.num_positive_roots


@pytest.mark.parametrize("key,count", sorted(POSITIVE.items()))
def test_positive_root_count(key, count):
    assert build_root_system(*key).num_positive_roots == count


def test_b2_labelling_is_bourbaki():
    # alpha1 long, alpha2 short: <alpha_1, alpha_2^vee> = -2
    c = cartan_matrix("B", 2)
    assert c[1, 0] == -2 and c[0, 1] == -1


def test_g2_roots_and_heights():
    rs = build_root_system("G", 2)
    assert sorted(int(h) for h in rs.heights) == [1, 1, 2, 3, 4, 5]
    # Bourbaki: alpha1 short, so the alpha1-string through alpha2 is alpha2 + k alpha1, k = 0..3
    roots = {tuple(int(x) for x in r) for r in rs.pos_simple}
    assert roots == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}


def test_rho_is_all_ones():
    rs = build_root_system("B", 3)
    assert tuple(rs.rho) == (1, 1, 1)


def test_simple_reflection_involutions_and_braid():
    rs = build_root_system("G", 2)
    s1, s2 = rs.element((0,)), rs.element((1,))
    assert rs.mul(s1, s1).index == rs.identity.index
    assert rs.element((0, 1) * 6).index == rs.identity.index
    assert rs.element((0, 1) * 3).index == rs.w0.index


def test_reduced_words_have_correct_length():
    rs = build_root_system("B", 3)
    for w in rs.elements:
        assert len(w.word) == w.length
        assert rs.element(w.word).index == w.index


def _subwords(word):
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(tuple(i for i, m in zip(word, mask) if m))
    return out


@pytest.mark.parametrize("key", [("A", 3), ("B", 3), ("G", 2)])
def test_bruhat_order_matches_subword_property(key):
    rs = build_root_system(*key)
    for w in rs.elements:
        below = {rs.element(s).index for s in _subwords(w.word)}
        expected = np.zeros(len(rs.elements), dtype=bool)
        expected[list(below)] = True
        assert np.array_equal(rs.bruhat_matrix[:, w.index], expected)


def test_inverse_and_multiplication():
    rs = build_root_system("A", 3)
    for w in rs.elements:
        assert rs.mul(w, rs.inv(w)).index == rs.identity.index


def test_parse_cartan_and_unsupported():
    assert parse_cartan("b3") == ("B", 3)
    with pytest.raises(UnsupportedType):
        parse_cartan("3B")
    for fam, rank in [("E", 9), ("G", 3), ("X", 2), ("D", 2), ("E", 6)]:
        with pytest.raises(UnsupportedType):
            build_root_system(fam, rank)
