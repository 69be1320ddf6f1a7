import pytest

from dlconn.combinatorics import coxeter, twist
from dlconn.constants import results
from dlconn.exceptions import CriterionFails, DatumMismatch, NotSigmaFixed


def test_parse_twist_shorthands(a3):
    assert twist.parse_twist(a3, '1').sigma.is_identity
    assert twist.parse_twist(a3, '2A3').sigma.perm == (2, 1, 0)
    assert twist.parse_twist(a3, '0>2,2>0').sigma.perm == (2, 1, 0)
    d4 = coxeter.datum_of_type('D4')
    assert twist.parse_twist(d4, '2D4').sigma.perm == (0, 1, 3, 2)
    triality = twist.parse_twist(d4, '3D4').sigma
    assert triality.perm == (2, 1, 3, 0)
    assert triality.order == 3


@pytest.mark.parametrize('text', ['2A2', '3D4', '0>1,1>0', '0>0,1>1,2>0', 'flip', '5>0'])
def test_parse_twist_rejects(a3, text):
    with pytest.raises(ValueError):
        twist.parse_twist(a3, text)


def test_twist_must_preserve_the_coxeter_matrix():
    b3 = coxeter.datum_of_type('B3')
    with pytest.raises(ValueError):
        twist.twisted_datum(b3, [2, 1, 0])


def test_twisted_datum_requires_matching_datum(a2, a3):
    sigma = twist.parse_twist(a2, '2A2').sigma
    with pytest.raises(DatumMismatch):
        twist.TwistedDatum(a3, sigma)


def test_labels(twisted_a3, split_a2):
    assert twisted_a3.sigma.label == '0>2,2>0'
    assert split_a2.sigma.label == '1'
    assert twisted_a3.label == 'A3[0>2,2>0]'


def test_apply_sigma(a2, a3, twisted_a2, twisted_a3):
    assert twist.apply_sigma(twisted_a2, coxeter.identity(a2)) == coxeter.identity(a2)
    assert twist.apply_sigma(twisted_a2, coxeter.generator(a2, 0)) == coxeter.generator(a2, 1)
    assert twist.apply_sigma(twisted_a3, coxeter.parse_element(a3, '0.1')) == coxeter.parse_element(a3, '2.1')


def test_apply_sigma_is_an_automorphism(a3, twisted_a3):
    for v in coxeter.enumerate_group(a3):
        for w in coxeter.enumerate_group(a3)[:8]:
            image = twist.apply_sigma(twisted_a3, coxeter.multiply(v, w))
            assert image == coxeter.multiply(twist.apply_sigma(twisted_a3, v), twist.apply_sigma(twisted_a3, w))
        assert coxeter.length(twist.apply_sigma(twisted_a3, v)) == coxeter.length(v)


def test_orbits_and_closures(split_a2, twisted_a3):
    assert twist.sigma_orbit(split_a2, 0) == {0}
    assert twist.sigma_orbit(twisted_a3, 0) == {0, 2}
    assert twist.sigma_orbit(twisted_a3, 1) == {1}
    assert twist.sigma_orbits(twisted_a3) == [{0, 2}, {1}]
    assert twist.sigma_closure(twisted_a3, []) == frozenset()
    assert twist.sigma_closure(twisted_a3, [0]) == {0, 2}
    assert twist.sigma_closure(twisted_a3, [0, 1]) == {0, 1, 2}
    assert twist.is_sigma_stable(twisted_a3, [0, 2])
    assert not twist.is_sigma_stable(twisted_a3, [0])


def test_is_connected_union(split_a2, twisted_a3):
    assert twist.is_connected_union(split_a2, [0, 1])
    assert not twist.is_connected_union(split_a2, [0])
    assert not twist.is_connected_union(twisted_a3, [1])
    assert twist.is_connected_union(twisted_a3, [0, 1])
    assert twist.is_connected_union(twisted_a3, [1, 2])


def test_is_irreducible(a2, a3, split_a2, twisted_a3):
    assert twist.is_irreducible(split_a2, coxeter.parse_element(a2, '0.1'))
    assert not twist.is_irreducible(split_a2, coxeter.identity(a2))
    assert not twist.is_irreducible(twisted_a3, coxeter.generator(a3, 0))
    assert twist.is_irreducible(twisted_a3, coxeter.parse_element(a3, '0.1'))


def test_fixed_subgroup_identity_twist(split_a2):
    structure = twist.fixed_subgroup(split_a2)
    assert len(structure.elements) == 6
    assert [coxeter.format_element(g) for g in structure.generator_list] == ['0', '1']
    assert structure.coxeter_matrix == ((1, 3), (3, 1))


def test_fixed_subgroup_twisted_a2(twisted_a2):
    structure = twist.fixed_subgroup(twisted_a2)
    assert [coxeter.format_element(x) for x in structure.elements] == ['', '0.1.0']
    (w0,) = structure.generator_list
    assert coxeter.length(w0) == 3
    assert structure.coxeter_matrix == ((1,),)


def test_fixed_subgroup_twisted_a3(twisted_a3):
    structure = twist.fixed_subgroup(twisted_a3)
    assert len(structure.elements) == 8
    assert [coxeter.format_element(g) for g in structure.generator_list] == ['0.2', '1']
    assert structure.coxeter_matrix == ((1, 4), (4, 1))
    assert twist.standard_type_label(structure.coxeter_matrix) == 'B2'
    assert max(structure.intrinsic_length(x) for x in structure.elements) == 4


def test_intrinsic_bruhat_order_restricts(twisted_a3):
    structure = twist.fixed_subgroup(twisted_a3)
    for x in structure.elements:
        for y in structure.elements:
            assert structure.intrinsic_bruhat_leq(x, y) == coxeter.bruhat_leq(x, y)


@pytest.mark.parametrize('group, twist_text, fixed_type, fixed_order', [
    ('A1', '1', 'A1', 2),
    ('A2', '1', 'A2', 6),
    ('A3', '1', 'A3', 24),
    ('A4', '1', 'A4', 120),
    ('B2', '1', 'B2', 8),
    ('B3', '1', 'B3', 48),
    ('D4', '1', 'D4', 192),
    ('G2', '1', 'G2', 12),
    ('A2', '2A2', 'A1', 2),
    ('A3', '2A3', 'B2', 8),
    ('A4', '2A4', 'B2', 8),
    ('D4', '2D4', 'B3', 48),
    ('D4', '3D4', 'G2', 12),
    ('F4', '0>3,3>0,1>2,2>1', 'I2(8)', 16),
    ('I2(5)', '0>1,1>0', 'A1', 2),
])
def test_verify_steinberg(group, twist_text, fixed_type, fixed_order):
    t = twist.parse_twist(coxeter.datum_of_type(group), twist_text)
    report = twist.verify_steinberg(t)
    assert report.verdict == results.VERDICTS.PASS, report.witnesses
    assert report.parameters['fixed_group_type'] == fixed_type
    assert report.parameters['fixed_group_order'] == fixed_order


def test_standard_type_label_relabels():
    assert twist.standard_type_label(((1, 2, 3), (2, 1, 3), (3, 3, 1))) == 'A3'
    assert twist.standard_type_label(((1, 5), (5, 1))) == 'I2(5)'
    assert twist.standard_type_label(((1, 2), (2, 1))) is None


def test_descent_move_exists(a2, a3, split_a2, twisted_a3):
    assert twist.descent_move_exists(split_a2, [0, 1], coxeter.identity(a2)) is None
    assert twist.descent_move_exists(split_a2, [0, 1], coxeter.parse_element(a2, '0.1.0')) == 0
    w0 = coxeter.longest_element(a3, [0, 1, 2])
    assert twist.descent_move_exists(twisted_a3, [0, 1], w0) == 0
    assert twist.descent_move_exists(twisted_a3, [1], coxeter.parse_element(a3, '0.2')) is None


def test_descent_move_requires_fixed_element(a3, twisted_a3):
    with pytest.raises(NotSigmaFixed):
        twist.descent_move_exists(twisted_a3, [0, 1], coxeter.generator(a3, 0))


def test_descent_move_exists_for_every_fixed_element(twisted_a3):
    structure = twist.fixed_subgroup(twisted_a3)
    for v in structure.elements:
        move = twist.descent_move_exists(twisted_a3, [1, 2], v)
        assert (move is None) == (coxeter.length(v) == 0)


def test_descent_chain(a3, twisted_a3):
    w0 = coxeter.longest_element(a3, [0, 1, 2])
    chain = twist.descent_chain(twisted_a3, [0, 1], w0)
    assert len(chain) == 5
    assert [coxeter.length(x) for x in chain] == [6, 4, 3, 1, 0]
    with pytest.raises(CriterionFails):
        twist.descent_chain(twisted_a3, [0], w0)
