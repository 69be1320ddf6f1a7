"""Echelon forms, ranks and null spaces over a field tower.

Vectors are lists of element codes of a :class:`FieldTower`.

"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from dlconn.oracle.fields import FieldTower

Vector = Tuple[int, ...]


class Echelon:
    """An echelon basis grown one vector at a time.

    Each stored row has leading entry 1 at its pivot column and every later
    row is zero at the pivots of the rows stored before it.

    """

    def __init__(self, tower: FieldTower, width: int):
        self.tower = tower
        self.width = width
        self.rows: Dict[int, List[int]] = {}

    def copy(self) -> 'Echelon':
        other = Echelon(self.tower, self.width)
        other.rows = {pivot: row for pivot, row in self.rows.items()}
        return other

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, vector: Sequence[int]) -> List[int]:
        """Returns the vector reduced to zero at every pivot column."""
        tower = self.tower
        v = list(vector)
        for col in range(self.width):
            if v[col] and col in self.rows:
                c = v[col]
                row = self.rows[col]
                v = [tower.sub(a, tower.mul(c, b)) for a, b in zip(v, row)]
        return v

    def normalized(self, vector: Sequence[int]) -> Optional[Tuple[int, List[int]]]:
        """Reduces the vector and scales it to leading entry 1; None if it lies in the span."""
        v = self.reduce(vector)
        pivot = next((col for col, a in enumerate(v) if a), None)
        if pivot is None:
            return None
        scale = self.tower.inv(v[pivot])
        return pivot, [self.tower.mul(scale, a) for a in v]

    def add(self, vector: Sequence[int]) -> Optional[int]:
        """Adds the vector to the span; returns its new pivot or None if dependent."""
        result = self.normalized(vector)
        if result is None:
            return None
        pivot, row = result
        self.rows[pivot] = row
        return pivot

    def reduced_rows(self) -> Tuple[Vector, ...]:
        """The reduced row echelon basis of the span, ordered by pivot."""
        tower = self.tower
        pivots = self.pivots
        rows = {pivot: list(self.rows[pivot]) for pivot in pivots}
        for pivot in reversed(pivots):
            for other in pivots:
                if other == pivot:
                    continue
                c = rows[other][pivot]
                if c:
                    rows[other] = [tower.sub(a, tower.mul(c, b)) for a, b in zip(rows[other], rows[pivot])]
        return tuple(tuple(rows[pivot]) for pivot in pivots)


def echelon_of(tower: FieldTower, vectors: Iterable[Sequence[int]], width: int) -> Echelon:
    echelon = Echelon(tower, width)
    for v in vectors:
        echelon.add(v)
    return echelon


def rref(tower: FieldTower, vectors: Iterable[Sequence[int]], width: int) -> Tuple[Vector, ...]:
    return echelon_of(tower, vectors, width).reduced_rows()


def rank(tower: FieldTower, vectors: Iterable[Sequence[int]], width: int) -> int:
    return echelon_of(tower, vectors, width).rank


def intersection_dimension(tower: FieldTower, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]],
                           width: int) -> int:
    """dim(A n B) = dim A + dim B - dim(A + B) for spans of independent rows."""
    return len(a) + len(b) - rank(tower, list(a) + list(b), width)


def nullspace(tower: FieldTower, vectors: Iterable[Sequence[int]], width: int) -> Tuple[Vector, ...]:
    """Basis of {x : sum_k x_k v_k = 0 for every given v}, one vector per free column."""
    rows = rref(tower, vectors, width)
    pivots = [next(col for col, a in enumerate(row) if a) for row in rows]
    free = [col for col in range(width) if col not in pivots]
    basis = []
    for f in free:
        x = [0] * width
        x[f] = 1
        for pivot, row in zip(pivots, rows):
            x[pivot] = tower.neg(row[f])
        basis.append(tuple(x))
    return tuple(basis)
