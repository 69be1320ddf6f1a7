import itertools

import pytest

from dlconn.combinatorics import coxeter, twist
from dlconn.constants import metadata
from dlconn.exceptions import DatumMismatch, GroupTooLarge, InfiniteGroup, NonCrystallographic


def _subword_products(w):
    """Every product of a subword of the canonical reduced word of w."""
    products = {coxeter.identity(w.datum)}
    for s in coxeter.reduced_word(w):
        products |= {coxeter.reflect_right(p, s) for p in products}
    return products


@pytest.mark.parametrize('label, order, longest', [
    ('A1', 2, 1),
    ('A2', 6, 3),
    ('A3', 24, 6),
    ('B2', 8, 4),
    ('B3', 48, 9),
    ('G2', 12, 6),
    ('D4', 192, 12),
    ('A4', 120, 10),
    ('F4', 1152, 24),
    ('H3', 120, 15),
    ('I2(5)', 10, 5),
    ('I2(8)', 16, 8),
])
def test_enumerate_group(label, order, longest):
    datum = coxeter.datum_of_type(label)
    elements = coxeter.enumerate_group(datum)
    assert len(elements) == order
    assert len(set(elements)) == order
    assert max(coxeter.length(w) for w in elements) == longest
    assert coxeter.length(coxeter.longest_element(datum, datum.generators)) == longest


def test_enumerate_group_sorted_by_length_then_word(a2):
    elements = coxeter.enumerate_group(a2)
    assert [coxeter.length(w) for w in elements] == [0, 1, 1, 2, 2, 3]
    assert [coxeter.format_element(w) for w in elements] == ['', '0', '1', '0.1', '1.0', '0.1.0']


def test_enumerate_group_bound(a3):
    with pytest.raises(GroupTooLarge):
        coxeter.enumerate_group(a3, bound=10)


def test_multiply_and_inverse(a3):
    e = coxeter.identity(a3)
    for w in coxeter.enumerate_group(a3):
        assert coxeter.multiply(e, w) == w
        assert coxeter.multiply(w, coxeter.inverse(w)) == e
        assert coxeter.length(coxeter.inverse(w)) == coxeter.length(w)
    s = coxeter.generator(a3, 0)
    assert s * s == e


def test_multiply_generators(a2):
    product = coxeter.multiply(coxeter.generator(a2, 0), coxeter.generator(a2, 1))
    assert coxeter.length(product) == 2
    assert coxeter.reduced_word(product) == (0, 1)


def test_length(a3):
    assert coxeter.length(coxeter.identity(a3)) == 0
    assert all(coxeter.length(coxeter.generator(a3, s)) == 1 for s in range(3))
    assert coxeter.length(coxeter.parse_element(a3, '0.2.1.0.2')) == 5


def test_reduced_word_is_lexicographically_smallest(a2):
    assert coxeter.format_element(coxeter.parse_element(a2, '1.0.1')) == '0.1.0'
    assert coxeter.parse_element(a2, '1.0.1') == coxeter.parse_element(a2, '0.1.0')
    assert coxeter.parse_element(a2, '0.0') == coxeter.identity(a2)


def test_parse_element_identity(a2):
    assert coxeter.parse_element(a2, '') == coxeter.identity(a2)
    assert coxeter.parse_element(a2, 'id') == coxeter.identity(a2)
    with pytest.raises(ValueError):
        coxeter.parse_element(a2, 's1s2')
    with pytest.raises(ValueError):
        coxeter.parse_element(a2, '0.2')


def test_descent(a2):
    w = coxeter.parse_element(a2, '0.1')
    assert coxeter.descent(w, 1)
    assert not coxeter.descent(w, 0)
    assert coxeter.descent(w, 0, side='left')
    assert not coxeter.descent(w, 1, side='left')
    assert not coxeter.descent(coxeter.identity(a2), 0)
    with pytest.raises(ValueError):
        coxeter.descent(w, 0, side='middle')


def test_descent_matches_length(a3):
    for w in coxeter.enumerate_group(a3):
        for s in range(3):
            right = coxeter.reflect_right(w, s)
            left = coxeter.reflect_left(s, w)
            assert coxeter.descent(w, s) == (coxeter.length(right) < coxeter.length(w))
            assert coxeter.descent(w, s, 'left') == (coxeter.length(left) < coxeter.length(w))


def test_bruhat_examples(a2):
    s0 = coxeter.generator(a2, 0)
    assert coxeter.bruhat_leq(s0, coxeter.parse_element(a2, '1.0'))
    assert not coxeter.bruhat_leq(s0, coxeter.generator(a2, 1))
    for w in coxeter.enumerate_group(a2):
        assert coxeter.bruhat_leq(coxeter.identity(a2), w)
        if coxeter.length(w):
            assert not coxeter.bruhat_leq(w, coxeter.identity(a2))


@pytest.mark.parametrize('label', ['A1', 'A2', 'A3', 'A4', 'B2', 'B3', 'G2', 'H3', 'I2(5)'])
def test_bruhat_matches_subword_property(label):
    datum = coxeter.datum_of_type(label)
    elements = coxeter.enumerate_group(datum)
    below = {w: _subword_products(w) for w in elements}
    for v, w in itertools.product(elements, repeat=2):
        assert coxeter.bruhat_leq(v, w) == (v in below[w])


def test_support(a2):
    assert coxeter.support(coxeter.identity(a2)) == frozenset()
    assert coxeter.support(coxeter.generator(a2, 0)) == {0}
    assert coxeter.support(coxeter.parse_element(a2, '0.1.0')) == {0, 1}


def test_parabolic_elements(a2, a3):
    assert coxeter.parabolic_elements(a2, []) == [coxeter.identity(a2)]
    assert coxeter.parabolic_elements(a2, [0]) == [coxeter.identity(a2), coxeter.generator(a2, 0)]
    parabolic = coxeter.parabolic_elements(a3, [0, 2])
    assert [coxeter.format_element(w) for w in parabolic] == ['', '0', '2', '0.2']


def test_longest_element(a2, a3):
    assert coxeter.longest_element(a2, []) == coxeter.identity(a2)
    assert coxeter.format_element(coxeter.longest_element(a2, [0, 1])) == '0.1.0'
    w0 = coxeter.longest_element(a3, [0, 2])
    assert coxeter.format_element(w0) == '0.2'
    assert coxeter.length(w0) == 2


def test_parse_datum():
    b2 = coxeter.parse_datum('B2')
    assert b2.coxeter_matrix == ((1, 4), (4, 1))
    custom = coxeter.parse_datum('[[1, 3], [3, 1]]')
    assert custom.label == 'custom2'
    assert len(coxeter.enumerate_group(custom)) == 6
    with pytest.raises(ValueError):
        coxeter.parse_datum('X3')
    with pytest.raises(ValueError):
        coxeter.parse_datum('E9')
    with pytest.raises(ValueError):
        coxeter.parse_datum('[[1, 3], [2, 1]]')


def test_non_crystallographic_data():
    with pytest.raises(NonCrystallographic):
        coxeter.cartan_matrix(((1, 5), (5, 1)))
    h3 = coxeter.parse_datum('[[1, 5, 2], [5, 1, 3], [2, 3, 1]]')
    assert len(coxeter.enumerate_group(h3)) == 120
    assert h3.root_system.n_positive == 15
    assert coxeter.datum_of_type('H3').coxeter_matrix == h3.coxeter_matrix
    assert len(coxeter.enumerate_group(coxeter.parse_datum('[[1, 5], [5, 1]]'))) == 10
    with pytest.raises(ValueError):
        coxeter.parse_datum('I2(2)')
    with pytest.raises(ValueError):
        coxeter.parse_datum('H5')


def test_geometric_pairings_for_the_golden_ratio():
    pairings, powers = coxeter.geometric_pairings(((1, 5), (5, 1)))
    # theta = 2cos(pi/5) satisfies theta^2 = theta + 1
    assert pairings.shape == (2, 2, 4)
    assert pairings[0, :, 2:].tolist() == [[0, -1], [-1, -1]]
    assert powers[1] == pytest.approx((1 + 5 ** 0.5) / 2)


@pytest.mark.parametrize('label, order', [
    ('A1', 2),
    ('A3', 24),
    ('B3', 48),
    ('G2', 12),
    ('I2(8)', 16),
    ('H3', 120),
])
def test_presentation_order_matches_enumeration(label, order):
    datum = coxeter.datum_of_type(label)
    assert coxeter.presentation_order(datum.coxeter_matrix) == order
    assert len(coxeter.enumerate_group(datum)) == order


def test_element_caches_are_bounded():
    assert coxeter.reduced_word.cache_info().maxsize == metadata.ELEMENT_CACHE_SIZE
    assert twist.apply_sigma.cache_info().maxsize == metadata.ELEMENT_CACHE_SIZE


def test_infinite_group():
    with pytest.raises(InfiniteGroup):
        coxeter.parse_datum('[[1, 3, 3], [3, 1, 3], [3, 3, 1]]')


def test_datum_mismatch(a2, a3):
    with pytest.raises(DatumMismatch):
        coxeter.multiply(coxeter.generator(a2, 0), coxeter.generator(a3, 0))


def test_parse_generator_set(a3):
    assert coxeter.parse_generator_set(a3, '') == frozenset()
    assert coxeter.parse_generator_set(a3, '0, 2') == {0, 2}
    with pytest.raises(ValueError):
        coxeter.parse_generator_set(a3, '0,3')
