import itertools

import numpy as np
import pytest

from dlconn.combinatorics import coxeter, counting, twist
from dlconn.constants import metadata
from dlconn.exceptions import BoundExceeded, RealizationMismatch
from dlconn.oracle import flags, linalg
from dlconn.oracle.flags import RelPos


def _inversions(p: RelPos) -> int:
    return sum(1 for a, b in itertools.combinations(p.perm, 2) if a > b)


def test_parse_realization():
    r = flags.parse_realization('U4@q=3', [1])
    assert (r.n, r.kind, r.q, r.levels) == (4, 'unitary', 3, (1,))
    assert r.label == 'U4@q=3'
    assert r.level_field_size(1) == 9
    assert flags.parse_realization('GL2@q=4', [1, 2]).level_field_size(2) == 16
    for text in ['GL5@q=2', 'GL1@q=2', 'SL3@q=2', 'GL3@q=6', 'GL3']:
        with pytest.raises(ValueError):
            flags.parse_realization(text, [1])


def test_level_must_be_in_the_tower(gl3):
    with pytest.raises(ValueError):
        gl3.level_degree(3)


def test_realized_twist(gl3, u4):
    assert flags.realized_twist(gl3).sigma.is_identity
    assert flags.realized_twist(u4).sigma.perm == (2, 1, 0)


@pytest.mark.parametrize('m, expected', [(1, 3), (2, 5)])
def test_enumerate_flags_gl2(gl2, m, expected):
    assert len(flags.enumerate_flags(gl2, m)) == expected
    assert flags.flag_count(gl2, m) == expected


@pytest.mark.parametrize('m, expected', [(1, 21), (2, 105)])
def test_enumerate_flags_gl3(gl3, m, expected):
    found = flags.enumerate_flags(gl3, m)
    assert len(found) == expected
    assert len(set(found)) == expected
    assert flags.flag_count(gl3, m) == expected


def test_enumerate_flags_bound(gl3, monkeypatch):
    with pytest.raises(BoundExceeded):
        flags.enumerate_flags(gl3, 2, bound=50)
    monkeypatch.setenv(metadata.FLAG_BOUND_ENV_VAR, '10')
    with pytest.raises(BoundExceeded):
        flags.enumerate_flags(gl3, 1)


def test_realization_bound_overrides_the_environment(monkeypatch):
    monkeypatch.setenv(metadata.FLAG_BOUND_ENV_VAR, str(metadata.MAX_FLAGS))
    r = flags.parse_realization('GL3@q=2', [1, 2], max_flags=50)
    assert len(flags.enumerate_flags(r, 1)) == 21
    with pytest.raises(BoundExceeded):
        flags.enumerate_flags(r, 2)
    with pytest.raises(ValueError):
        flags.parse_realization('GL3@q=2', [1], max_flags=0)


@pytest.mark.parametrize('kind, q, expected', [
    ('split', 2, (1, 2, 3)),
    ('unitary', 2, (1, 2, 3)),
    ('unitary', 4, (1, 2)),
    ('unitary', 3, (1, 2, 3)),
    ('unitary', 5, (1, 2)),
    ('split', 2048, (1,)),
    ('unitary', 2048, ()),
])
def test_affordable_levels(kind, q, expected):
    assert flags.affordable_levels(kind, q, range(1, 4)) == expected


def test_canonical_flag(gl3):
    F = flags.canonical_flag(gl3, [(1, 1, 0), (1, 0, 1), (0, 0, 1)])
    G = flags.canonical_flag(gl3, [(1, 1, 0), (0, 1, 1), (1, 0, 0)])
    assert F == G
    assert F.basis == ((1, 1, 0), (0, 1, 1), (0, 0, 1))
    H = flags.flag_from_subspaces(gl3, [[(1, 1, 0)], [(0, 1, 1), (1, 0, 1)]])
    assert H == F
    with pytest.raises(ValueError):
        flags.canonical_flag(gl3, [(1, 1, 0), (1, 1, 0), (0, 0, 1)])


def test_relpos_examples(gl3):
    standard = flags.standard_flag(gl3)
    opposite = flags.canonical_flag(gl3, [(0, 0, 1), (0, 1, 0), (1, 0, 0)])
    other_line = flags.canonical_flag(gl3, [(0, 1, 0), (1, 0, 0), (0, 0, 1)])
    assert flags.relpos(standard, standard) == RelPos.identity(3)
    assert flags.relpos(standard, opposite) == RelPos((3, 2, 1))
    assert flags.relpos(standard, other_line) == RelPos((2, 1, 3))
    assert flags.relpos_to_weyl(gl3, RelPos((2, 1, 3))) == coxeter.generator(flags.weyl_datum(gl3), 0)
    longest = flags.relpos_to_weyl(gl3, flags.schubert_cell_of(gl3, standard, opposite))
    assert coxeter.length(longest) == 3


def test_relpos_properties(gl3):
    rational = flags.enumerate_flags(gl3, 1)
    for a, b in itertools.product(rational, repeat=2):
        w = flags.relpos(a, b)
        assert flags.relpos(b, a) == w.inverse()
        dims = flags.rank_matrix(a, b)
        assert all(dims[i][j] == w.rank(i, j) for i in range(1, 4) for j in range(1, 4))


def test_relpos_requires_same_realization(gl2, gl3):
    with pytest.raises(RealizationMismatch):
        flags.relpos(flags.standard_flag(gl2), flags.standard_flag(gl3))
    with pytest.raises(RealizationMismatch):
        flags.dl_points(gl3, RelPos((2, 1)), 1)


def test_weyl_and_relpos_agree_on_length_and_bruhat_order():
    r = flags.parse_realization('GL4@q=2', [1])
    elements = coxeter.enumerate_group(flags.weyl_datum(r))
    perms = {w: flags.weyl_to_relpos(r, w) for w in elements}
    for w, p in perms.items():
        assert coxeter.length(w) == _inversions(p)
        assert flags.relpos_to_weyl(r, p) == w
    for v, w in itertools.product(elements, repeat=2):
        dominates = all(perms[v].rank(i, j) >= perms[w].rank(i, j) for i in range(1, 5) for j in range(1, 5))
        assert coxeter.bruhat_leq(v, w) == dominates


def test_split_frobenius_fixes_rational_flags(gl3):
    for F in flags.enumerate_flags(gl3, 1):
        assert flags.frobenius_flag(gl3, F) == F
    moved = [F for F in flags.enumerate_flags(gl3, 2) if flags.frobenius_flag(gl3, F) != F]
    assert len(moved) == 105 - 21


def test_unitary_frobenius_squares_to_the_q2_power(u3):
    tower = u3.tower
    for F in flags.enumerate_flags(u3, 2)[::37]:
        twice = flags.frobenius_flag(u3, flags.frobenius_flag(u3, F))
        powered = flags.canonical_flag(u3, [[tower.power(a, u3.q ** 2) for a in row] for row in F.basis])
        assert twice == powered
    for F in flags.enumerate_flags(u3, 1):
        assert flags.frobenius_flag(u3, flags.frobenius_flag(u3, F)) == F


def test_unitary_frobenius_on_lines():
    r = flags.parse_realization('U2@q=2', [1])
    tower = r.tower
    for F in flags.enumerate_flags(r, 1):
        image = flags.frobenius_flag(r, F)
        line = F.basis[0]
        conjugate = [tower.frobenius_q(a) for a in line]
        orthogonal = image.basis[0]
        assert tower.add(tower.mul(orthogonal[0], conjugate[0]), tower.mul(orthogonal[1], conjugate[1])) == 0


@pytest.mark.parametrize('fixture, expected', [('gl2', 3), ('gl3', 21), ('u3', 9), ('u4', 135)])
def test_rational_flags_counted_by_N(request, fixture, expected):
    r = request.getfixturevalue(fixture)
    rational = flags.rational_flags(r)
    assert len(rational) == expected
    assert counting.count_N(flags.realized_twist(r)).evaluate(r.q) == expected
    assert all(flags.frobenius_flag(r, F) == F for F in rational)


def test_base_flag(gl3, u3):
    assert flags.base_flag(gl3) == flags.standard_flag(gl3)
    base = flags.base_flag(u3)
    assert flags.frobenius_flag(u3, base) == base
    assert flags.frobenius_flag(u3, flags.standard_flag(u3)) != flags.standard_flag(u3)


def test_dl_points_gl2(gl2):
    s = coxeter.generator(flags.weyl_datum(gl2), 0)
    assert len(flags.dl_points(gl2, s, 2)) == 2
    for m in [1, 2]:
        assert flags.dl_points(gl2, RelPos.identity(2), m) == flags.rational_flags(gl2)
    assert len(flags.closure_points(gl2, s, 2)) == 5


@pytest.mark.parametrize('fixture, m', [('gl3', 2), ('u3', 1)])
def test_dl_points_match_partition(request, fixture, m):
    r = request.getfixturevalue(fixture)
    partition = flags.dl_partition(r, m)
    assert sum(len(points) for points in partition.values()) == flags.flag_count(r, m)
    for w in coxeter.enumerate_group(flags.weyl_datum(r)):
        p = flags.weyl_to_relpos(r, w)
        assert flags.dl_points(r, w, m) == partition.get(p, [])


def test_schubert_cell_sizes(gl3):
    base = flags.base_flag(gl3)
    cells = [flags.schubert_cell_of(gl3, base, F) for F in flags.rational_flags(gl3)]
    assert cells.count(RelPos.identity(3)) == 1
    assert cells.count(RelPos((2, 1, 3))) == 2
    assert cells.count(RelPos((3, 2, 1))) == 8


def test_kept_dimensions(gl3, u4):
    assert flags.kept_dimensions(gl3, []) == (1, 2)
    assert flags.kept_dimensions(gl3, [0]) == (2,)
    assert flags.kept_dimensions(u4, [0, 2]) == (2,)
    assert flags.kept_dimensions(u4, [1]) == (1, 3)


def test_project_partial(gl3):
    F = flags.canonical_flag(gl3, [(1, 1, 0), (0, 1, 1), (0, 0, 1)])
    full = flags.project_partial(gl3, F, [])
    assert full.dims == (1, 2)
    assert full.bases == (((1, 1, 0),), ((1, 0, 1), (0, 1, 1)))
    plane = flags.project_partial(gl3, F, [0])
    assert plane.dims == (2,)
    assert plane.bases == (((1, 0, 1), (0, 1, 1)),)


def test_projection_commutes_with_frobenius(u3, u4):
    for F in flags.enumerate_flags(u3, 1):
        image = flags.project_partial(u3, F, [])
        assert flags.frobenius_partial(u3, image) == flags.project_partial(u3, flags.frobenius_flag(u3, F), [])
    for F in flags.enumerate_flags(u4, 1)[::97]:
        image = flags.project_partial(u4, F, [0, 2])
        assert flags.frobenius_partial(u4, image) == flags.project_partial(u4, flags.frobenius_flag(u4, F), [0, 2])


@pytest.mark.parametrize('fixture, m', [('gl3', 2), ('u3', 1)])
def test_relpos_is_frobenius_equivariant(request, fixture, m):
    r = request.getfixturevalue(fixture)
    t = flags.realized_twist(r)
    every = flags.enumerate_flags(r, m)
    images = {F: flags.frobenius_flag(r, F) for F in every}
    for a, b in itertools.product(every, repeat=2):
        w = flags.relpos_to_weyl(r, flags.relpos(a, b))
        image = flags.relpos(images[a], images[b])
        assert image == flags.weyl_to_relpos(r, twist.apply_sigma(t, w))


@pytest.mark.parametrize('fixture, m', [('gl3', 1), ('gl3', 2), ('u3', 1), ('u4', 1)])
def test_relpos_of_a_flag_with_itself(request, fixture, m):
    r = request.getfixturevalue(fixture)
    identity = RelPos.identity(r.n)
    assert all(flags.relpos(F, F) == identity for F in flags.enumerate_flags(r, m))


def _rank_code(dims, n):
    return sum(dims[i][j] * n ** ((i - 1) * (n - 1) + j - 1) for i in range(1, n) for j in range(1, n))


@pytest.mark.slow
def test_relpos_is_frobenius_equivariant_on_every_u4_pair(u4):
    """Every ordered pair of level-1 flags, compared through intersection dimensions of their spaces."""
    n = u4.n
    t = flags.realized_twist(u4)
    every = flags.enumerate_flags(u4, 1)
    position = {F: k for k, F in enumerate(every)}
    phi = np.array([position[flags.frobenius_flag(u4, F)] for F in every])

    spaces = {}
    index = np.array([[spaces.setdefault(linalg.rref(u4.tower, F.space(i), n), len(spaces)) for i in range(1, n)]
                      for F in every])
    bases = list(spaces)
    table = np.zeros((len(bases), len(bases)), dtype=np.int64)
    for x, y in itertools.combinations_with_replacement(range(len(bases)), 2):
        table[x, y] = table[y, x] = linalg.intersection_dimension(u4.tower, bases[x], bases[y], n)

    # rank matrix code of (a, b) -> rank matrix code of sigma(relpos(a, b))
    lookup = np.full(n ** ((n - 1) ** 2), -1, dtype=np.int64)
    for p in itertools.permutations(range(1, n + 1)):
        w = RelPos(p)
        image = flags.weyl_to_relpos(u4, twist.apply_sigma(t, flags.relpos_to_weyl(u4, w)))
        dims = [[w.rank(i, j) for j in range(n + 1)] for i in range(n + 1)]
        image_dims = [[image.rank(i, j) for j in range(n + 1)] for i in range(n + 1)]
        lookup[_rank_code(dims, n)] = _rank_code(image_dims, n)

    def codes(rows, columns):
        total = np.zeros((len(rows), len(columns)), dtype=np.int64)
        for i in range(1, n):
            for j in range(1, n):
                block = table[np.ix_(index[rows, i - 1], index[columns, j - 1])]
                total += block * n ** ((i - 1) * (n - 1) + j - 1)
        return total

    everything = np.arange(len(every))
    for rows in np.array_split(everything, 20):
        expected = lookup[codes(rows, everything)]
        assert (expected >= 0).all()
        assert np.array_equal(codes(phi[rows], phi), expected)
