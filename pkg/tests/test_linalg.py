import itertools

from dlconn.oracle import fields, linalg


def _dot(tower, x, y):
    total = 0
    for a, b in zip(x, y):
        total = tower.add(total, tower.mul(a, b))
    return total


def test_echelon_add_and_rank():
    tower = fields.build_tower(3, 1, {1})
    echelon = linalg.Echelon(tower, 3)
    assert echelon.add((0, 2, 1)) == 1
    assert echelon.add((1, 1, 1)) == 0
    assert echelon.add((2, 0, 1)) is None
    assert echelon.rank == 2
    assert echelon.pivots == [0, 1]
    assert echelon.rows[1] == [0, 1, 2]


def test_rref_is_canonical():
    tower = fields.build_tower(3, 1, {1})
    a = linalg.rref(tower, [(1, 1, 0), (0, 1, 1)], 3)
    b = linalg.rref(tower, [(2, 1, 2), (1, 1, 0)], 3)
    assert a == b == ((1, 0, 2), (0, 1, 1))


def test_rank_and_intersection_dimension():
    tower = fields.build_tower(2, 1, {2})
    assert linalg.rank(tower, [(1, 0, 0), (0, 1, 0), (1, 1, 0)], 3) == 2
    plane = [(1, 0, 0), (0, 1, 0)]
    other = [(0, 1, 0), (0, 0, 1)]
    assert linalg.intersection_dimension(tower, plane, other, 3) == 1
    assert linalg.intersection_dimension(tower, plane, [(0, 0, 1)], 3) == 0


def test_nullspace_is_orthogonal_complement():
    tower = fields.build_tower(2, 1, {2})
    for rows in itertools.combinations([(1, 2, 3), (0, 1, 1), (2, 2, 0), (1, 0, 1)], 2):
        kernel = linalg.nullspace(tower, rows, 3)
        assert len(kernel) == 3 - linalg.rank(tower, rows, 3)
        for x in kernel:
            for v in rows:
                assert _dot(tower, x, v) == 0
    assert linalg.nullspace(tower, [], 2) == ((1, 0), (0, 1))
