"""Brute-force flag varieties of GL_n and the quasi-split unitary group.

Flags live in F^n with coordinates in a subfield of a :class:`FieldTower`.
The Frobenius is entrywise x -> x^q (split) or, for the unitary group,
the map sending F to the flag whose i-th space is the orthogonal of the
(n-i)-th space of the entrywise q-power, for the dot product. Its fixed
flags are the rational points, and the relative position of F and its
Frobenius image decides the Deligne-Lusztig set F lies in.

Extension levels are counted over the field of definition: level m means
coordinates in F_{q^m} for the split group and in F_{q^{2m}} for the
unitary group.

"""
import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from loguru import logger

from dlconn.combinatorics import coxeter, twist
from dlconn.combinatorics.coxeter import CoxeterDatum, WeylElement
from dlconn.combinatorics.twist import TwistedDatum
from dlconn.constants import metadata, types
from dlconn.exceptions import BoundExceeded, RealizationMismatch
from dlconn.oracle import fields, linalg
from dlconn.oracle.fields import FieldTower
from dlconn.oracle.linalg import Echelon, Vector


################
# Realizations #
################

@dataclass(frozen=True)
class GroupRealization:
    """GL_n (split) or U_n (unitary, hermitian form with identity Gram matrix) over F_q.

    ``max_flags`` caps flag enumeration for this realization; when unset the
    bound comes from ``DLCONN_MAX_FLAGS`` or the default.

    """
    n: int
    kind: str
    q: int
    levels: Tuple[int, ...]
    max_flags: Optional[int] = None
    tower: FieldTower = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not metadata.MIN_REALIZATION_DIMENSION <= self.n <= metadata.MAX_REALIZATION_DIMENSION:
            raise ValueError(f'Realizations have dimension {metadata.MIN_REALIZATION_DIMENSION} to '
                             f'{metadata.MAX_REALIZATION_DIMENSION}. You specified {self.n}.')
        if self.kind not in types.REALIZATION_KINDS:
            raise ValueError(f'Realization kind must be one of {list(types.REALIZATION_KINDS)}. '
                             f'You specified {self.kind}.')
        levels = tuple(sorted(set(int(m) for m in self.levels)))
        if not levels or levels[0] < 1:
            raise ValueError(f'Extension levels must be positive integers. You specified {self.levels}.')
        object.__setattr__(self, 'levels', levels)
        if self.max_flags is not None and self.max_flags < 1:
            raise ValueError(f'The flag bound must be a positive integer. You specified {self.max_flags}.')
        p, d = fields.prime_power(self.q)
        factor = 2 if self.is_unitary else 1
        object.__setattr__(self, 'tower', fields.build_tower(p, d, [factor * m for m in levels]))

    @property
    def is_unitary(self) -> bool:
        return self.kind == types.REALIZATION_KINDS.UNITARY

    @property
    def label(self) -> str:
        prefix = 'U' if self.is_unitary else 'GL'
        return f'{prefix}{self.n}@q={self.q}'

    def level_degree(self, m: int) -> int:
        """Degree over F_p of the coordinate field at level m."""
        degree = self.tower.q_degree * m * (2 if self.is_unitary else 1)
        if m < 1 or self.tower.N % degree:
            raise ValueError(f'Level {m} is not available in {self.label}; available levels are {self.levels}.')
        return degree

    def level_field_size(self, m: int) -> int:
        return self.tower.p ** self.level_degree(m)


def build_realization(n: int, kind: str, q: int, levels: Iterable[int],
                      max_flags: Optional[int] = None) -> GroupRealization:
    return GroupRealization(n, kind, q, tuple(levels), max_flags)


def affordable_levels(kind: str, q: int, levels: Iterable[int]) -> Tuple[int, ...]:
    """The levels, smallest first, that one field tower within MAX_FIELD_SIZE can hold.

    Stops at the first level that would push the tower over the bound, so the
    result may be empty.

    """
    p, d = fields.prime_power(q)
    factor = 2 if kind == types.REALIZATION_KINDS.UNITARY else 1
    kept = []
    for m in sorted(set(int(m) for m in levels)):
        if p ** fields.tower_degree(d, [factor * level for level in kept + [m]]) > metadata.MAX_FIELD_SIZE:
            break
        kept.append(m)
    return tuple(kept)


def parse_realization(text: str, levels: Iterable[int] = None, max_flags: Optional[int] = None) -> GroupRealization:
    """Parses "GL<n>@q=<q>" or "U<n>@q=<q>".

    Levels default to every level up to the escalation cap whose field tower
    fits the field size bound, and to level 1 when none does.

    """
    match = re.match(types.REALIZATION_PATTERN, text.strip())
    if not match:
        raise ValueError(f'Realizations look like "GL3@q=2" or "U4@q=2". You specified {text!r}.')
    kind = types.REALIZATION_PREFIXES[match.group('prefix')]
    q = int(match.group('q'))
    if levels is None:
        levels = affordable_levels(kind, q, range(1, metadata.DEFAULT_LEVEL_CAP + 1)) or (1,)
    return build_realization(int(match.group('n')), kind, q, levels, max_flags)


@functools.lru_cache(maxsize=None)
def weyl_datum(r: GroupRealization) -> CoxeterDatum:
    return coxeter.datum_of_type(f'A{r.n - 1}')


@functools.lru_cache(maxsize=None)
def realized_twist(r: GroupRealization) -> TwistedDatum:
    """The identity for GL_n, the diagram flip s_i -> s_{n-2-i} for U_n."""
    datum = weyl_datum(r)
    if r.is_unitary:
        return twist.parse_twist(datum, f'2A{r.n - 1}')
    return twist.identity_twist(datum)


#############################
# Permutations of 1, ..., n #
#############################

@dataclass(frozen=True)
class RelPos:
    """A permutation of 1..n, stored as the tuple (w(1), ..., w(n))."""
    perm: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f'{self.perm} is not a permutation of 1..{len(self.perm)}.')

    @classmethod
    def identity(cls, n: int) -> 'RelPos':
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.perm)

    def inverse(self) -> 'RelPos':
        inverse = [0] * self.n
        for k, image in enumerate(self.perm, start=1):
            inverse[image - 1] = k
        return RelPos(tuple(inverse))

    def rank(self, i: int, j: int) -> int:
        """#{k <= j : w(k) <= i}, the expected dim(a_i n b_j)."""
        return sum(1 for image in self.perm[:j] if image <= i)

    def __str__(self):
        return ''.join(str(image) for image in self.perm)


def relpos_to_weyl(r: GroupRealization, w: RelPos) -> WeylElement:
    """Generator i of A_{n-1} is the transposition of i+1 and i+2."""
    perm = list(w.perm)
    word = []
    while True:
        i = next((i for i in range(len(perm) - 1) if perm[i] > perm[i + 1]), None)
        if i is None:
            break
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        word.insert(0, i)
    return coxeter.from_word(weyl_datum(r), word)


def weyl_to_relpos(r: GroupRealization, w: WeylElement) -> RelPos:
    perm = list(range(1, r.n + 1))
    for i in coxeter.reduced_word(w):
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return RelPos(tuple(perm))


def _as_relpos(r: GroupRealization, w: Union[RelPos, WeylElement]) -> RelPos:
    return weyl_to_relpos(r, w) if isinstance(w, WeylElement) else w


#########
# Flags #
#########

@dataclass(frozen=True)
class Flag:
    """A full flag stored by its canonical basis.

    Row i is the unique vector of F_i that vanishes at the pivot columns of
    F_{i-1} and has leading entry 1. Equal flags have equal bases.

    """
    realization: GroupRealization = field(compare=False, repr=False)
    basis: Tuple[Vector, ...]

    def space(self, i: int) -> Tuple[Vector, ...]:
        return self.basis[:i]

    def to_json(self) -> List[List[List[int]]]:
        tower = self.realization.tower
        return [[tower.digits(a) for a in row] for row in self.basis]

    def __str__(self):
        return '|'.join(','.join(str(a) for a in row) for row in self.basis)


@dataclass(frozen=True)
class PartialFlag:
    """The subspaces of a flag of the given dimensions, each in reduced row echelon form."""
    dims: Tuple[int, ...]
    bases: Tuple[Tuple[Vector, ...], ...]

    def __str__(self):
        return ';'.join(f'{d}:' + '|'.join(','.join(str(a) for a in row) for row in basis)
                        for d, basis in zip(self.dims, self.bases))


def canonical_flag(r: GroupRealization, vectors: Sequence[Sequence[int]]) -> Flag:
    """The flag whose i-th space is spanned by the first i vectors."""
    echelon = Echelon(r.tower, r.n)
    basis = []
    for v in vectors:
        result = echelon.normalized(v)
        if result is None:
            raise ValueError('Flag vectors must be linearly independent.')
        pivot, row = result
        echelon.rows[pivot] = row
        basis.append(tuple(row))
    if len(basis) != r.n:
        raise ValueError(f'A full flag in dimension {r.n} needs {r.n} vectors. You specified {len(basis)}.')
    return Flag(r, tuple(basis))


def flag_from_subspaces(r: GroupRealization, subspaces: Sequence[Sequence[Sequence[int]]]) -> Flag:
    """Builds a flag from bases of a nested chain F_1 < ... < F_{n-1}."""
    echelon = Echelon(r.tower, r.n)
    vectors = []
    for subspace in list(subspaces) + [standard_basis(r.n)]:
        for v in subspace:
            if echelon.add(v) is not None:
                vectors.append(v)
                break
    return canonical_flag(r, vectors)


def standard_basis(n: int) -> Tuple[Vector, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def standard_flag(r: GroupRealization) -> Flag:
    return Flag(r, standard_basis(r.n))


def _check_realization(*flags: Flag):
    first = flags[0].realization
    for other in flags[1:]:
        if other.realization != first:
            raise RealizationMismatch(f'Flags belong to {first.label} and {other.realization.label}.')


def flag_count(r: GroupRealization, m: int) -> int:
    """Number of full flags with coordinates in the level-m field."""
    size = r.level_field_size(m)
    count = 1
    for k in range(2, r.n + 1):
        count *= (size ** k - 1) // (size - 1)
    return count


def _check_bound(r: GroupRealization, m: int, bound: Optional[int]):
    if bound is None:
        bound = r.max_flags or metadata.get_flag_bound()
    predicted = flag_count(r, m)
    if predicted > bound:
        raise BoundExceeded(f'{r.label} has {predicted} flags at level {m}, more than the bound {bound}.')


def _extensions(r: GroupRealization, echelon: Echelon, scalars: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Canonical new rows: zero at existing pivots, leading 1, free entries from ``scalars``."""
    pivots = set(echelon.rows)
    for lead in range(r.n):
        if lead in pivots:
            continue
        free = [col for col in range(lead + 1, r.n) if col not in pivots]
        for values in itertools.product(scalars, repeat=len(free)):
            v = [0] * r.n
            v[lead] = 1
            for col, value in zip(free, values):
                v[col] = value
            yield tuple(v)


def _search(r: GroupRealization, m: int, accept_prefix) -> List[Flag]:
    scalars = r.tower.subfield_elements(r.level_degree(m))
    found = []

    def extend(echelon: Echelon, basis: List[Tuple[int, ...]]):
        if len(basis) == r.n:
            found.append(Flag(r, tuple(basis)))
            return
        for v in _extensions(r, echelon, scalars):
            child = echelon.copy()
            child.rows[next(col for col, a in enumerate(v) if a)] = list(v)
            prefix = basis + [v]
            if accept_prefix(prefix):
                extend(child, prefix)

    extend(Echelon(r.tower, r.n), [])
    return sorted(found, key=lambda flag: flag.basis)


def enumerate_flags(r: GroupRealization, m: int, bound: int = None) -> List[Flag]:
    """All full flags with level-m coordinates, canonical and sorted.

    Raises
    ------
    BoundExceeded
        If the number of flags exceeds the flag bound.

    """
    _check_bound(r, m, bound)
    flags = _search(r, m, lambda prefix: True)
    logger.debug(f'{r.label}: {len(flags)} flags at level {m}.')
    return flags


#############
# Frobenius #
#############

def _power_q(r: GroupRealization, vectors: Iterable[Sequence[int]]) -> List[Tuple[int, ...]]:
    tower = r.tower
    return [tuple(tower.frobenius_q(a) for a in v) for v in vectors]


def frobenius_space(r: GroupRealization, basis_of, i: int) -> Tuple[Vector, ...]:
    """Basis of the i-th space of the Frobenius image, given ``basis_of(j)`` for the source spaces."""
    if not r.is_unitary:
        return tuple(_power_q(r, basis_of(i)))
    if i == r.n:
        return standard_basis(r.n)
    return linalg.nullspace(r.tower, _power_q(r, basis_of(r.n - i)), r.n)


def frobenius_flag(r: GroupRealization, F: Flag) -> Flag:
    if not r.is_unitary:
        return canonical_flag(r, _power_q(r, F.basis))
    return flag_from_subspaces(r, [frobenius_space(r, F.space, i) for i in range(1, r.n)])


def frobenius_partial(r: GroupRealization, P: PartialFlag) -> PartialFlag:
    """The Frobenius on partial flags; for the unitary group the dimensions are complemented."""
    spaces = dict(zip(P.dims, P.bases))
    dims = tuple(sorted(r.n - d for d in P.dims)) if r.is_unitary else P.dims
    bases = []
    for d in dims:
        source = r.n - d if r.is_unitary else d
        if source not in spaces:
            raise ValueError(f'The Frobenius image of dimensions {P.dims} is not a partial flag of the same type.')
        image = frobenius_space(r, lambda j: spaces[j], d)
        bases.append(linalg.rref(r.tower, image, r.n))
    return PartialFlag(dims, tuple(bases))


############################
# Relative position of flags #
############################

def rank_matrix(a: Flag, b: Flag) -> List[List[int]]:
    """Entry (i, j), 1 <= i, j <= n, is dim(a_i n b_j); row and column 0 are zero."""
    r = a.realization
    n = r.n
    dims = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        echelon = linalg.echelon_of(r.tower, a.space(i), n)
        for j in range(1, n + 1):
            echelon.add(b.basis[j - 1])
            dims[i][j] = i + j - echelon.rank
    return dims


def relpos_from_ranks(dims: List[List[int]]) -> RelPos:
    """Reads w off the rank matrix: w(j) = i where the second difference at (i, j) is 1."""
    n = len(dims) - 1
    perm = []
    for j in range(1, n + 1):
        hits = [i for i in range(1, n + 1)
                if dims[i][j] - dims[i - 1][j] - dims[i][j - 1] + dims[i - 1][j - 1] == 1]
        if len(hits) != 1:
            raise ValueError(f'Intersection dimensions {dims} do not come from a pair of flags.')
        perm.append(hits[0])
    return RelPos(tuple(perm))


def relpos(a: Flag, b: Flag) -> RelPos:
    """The w with dim(a_i n b_j) = #{k <= j : w(k) <= i}; (a, b) ~ (standard, w standard)."""
    _check_realization(a, b)
    return relpos_from_ranks(rank_matrix(a, b))


def schubert_cell_of(r: GroupRealization, base: Flag, F: Flag) -> RelPos:
    """F lies in the Schubert cell C_v for the returned v."""
    return relpos(base, F)


##############################
# Deligne-Lusztig point sets #
##############################

def _prefix_consistent(r: GroupRealization, w: RelPos, prefix: List[Tuple[int, ...]]) -> bool:
    """Whether the spaces fixed so far meet their determined Frobenius images in the dimensions of w.

    Only the pairs (i, j) that became determined with the last vector are
    checked; the earlier ones were checked on the way down.

    """
    k = len(prefix)
    n = r.n
    if k >= n:
        return True

    def space(i):
        return prefix[:i]

    if r.is_unitary:
        # Frobenius(F)_j needs F_{n-j}.
        columns, new_column = range(n - k, n), n - k
    else:
        columns, new_column = range(1, k + 1), k
    for j in columns:
        image = frobenius_space(r, space, j)
        rows = range(1, k + 1) if j == new_column else [k]
        for i in rows:
            if i + j - linalg.rank(r.tower, list(space(i)) + list(image), n) != w.rank(i, j):
                return False
    return True


def dl_points(r: GroupRealization, w: Union[RelPos, WeylElement], m: int, bound: int = None) -> List[Flag]:
    """Flags F with level-m coordinates and relpos(F, Frobenius(F)) = w, sorted.

    The search extends a partial flag only while every intersection
    dim(F_i n Frobenius(F)_j) it already determines agrees with w.

    """
    w = _as_relpos(r, w)
    if w.n != r.n:
        raise RealizationMismatch(f'Relative position {w} does not act on dimension {r.n}.')
    _check_bound(r, m, bound)
    points = _search(r, m, functools.partial(_prefix_consistent, r, w))
    logger.debug(f'{r.label}: {len(points)} points of X({w}) at level {m}.')
    return points


def rational_flags(r: GroupRealization, bound: int = None) -> List[Flag]:
    return dl_points(r, RelPos.identity(r.n), 1, bound)


def base_flag(r: GroupRealization, bound: int = None) -> Flag:
    """The standard flag when it is rational, otherwise the first rational flag."""
    standard = standard_flag(r)
    if frobenius_flag(r, standard) == standard:
        return standard
    return rational_flags(r, bound)[0]


def dl_partition(r: GroupRealization, m: int, bound: int = None) -> Dict[RelPos, List[Flag]]:
    partition: Dict[RelPos, List[Flag]] = {}
    for F in enumerate_flags(r, m, bound):
        partition.setdefault(relpos(F, frobenius_flag(r, F)), []).append(F)
    return partition


def closure_points(r: GroupRealization, w: Union[RelPos, WeylElement], m: int, bound: int = None) -> List[Flag]:
    """Points of the closure of X(w) at level m: the union of X(v), v <= w."""
    target = relpos_to_weyl(r, _as_relpos(r, w))
    points = []
    for v in coxeter.enumerate_group(weyl_datum(r)):
        if coxeter.bruhat_leq(v, target):
            points.extend(dl_points(r, v, m, bound))
    return sorted(points, key=lambda flag: flag.basis)


#################
# Partial flags #
#################

def kept_dimensions(r: GroupRealization, J: Iterable[int]) -> Tuple[int, ...]:
    """Generator i crosses dimension i + 1; the projection keeps the others."""
    J = coxeter.as_generator_set(weyl_datum(r), J)
    return tuple(d for d in range(1, r.n) if d - 1 not in J)


def project_partial(r: GroupRealization, F: Flag, J: Iterable[int]) -> PartialFlag:
    dims = kept_dimensions(r, J)
    return PartialFlag(dims, tuple(linalg.rref(r.tower, F.space(d), r.n) for d in dims))
