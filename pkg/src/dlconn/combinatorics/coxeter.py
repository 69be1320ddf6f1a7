"""Finite Coxeter groups realized on a root system.

Every element of W is stored as the permutation it induces on the finite root
set of a realization of the Coxeter matrix: the integral Cartan realization
when one exists, the geometric representation over Z[2cos(pi/L)] otherwise.
This gives canonical equality, generator application by table lookup and the
length as the number of positive roots sent to negative roots.

.. admonition::

   Logging in this module should be done at the ``debug`` level.

"""
import functools
import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Callable, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple, TypeVar

import numpy as np
import sympy
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from loguru import logger

from dlconn.constants import metadata, types
from dlconn.exceptions import (DatumMismatch, GroupTooLarge, InfiniteGroup, InvariantViolation,
                               NonCrystallographic)

GeneratorSet = FrozenSet[int]
CoxeterMatrix = Tuple[Tuple[int, ...], ...]

T = TypeVar('T')

_THETA = sympy.Symbol('theta')
# Root coordinates are evaluated in floating point only to read off their sign.
_TOLERANCE = 1e-9


################
# Root systems #
################

class RootSystem(NamedTuple):
    """Positive roots first (sorted by height), then their negatives in the same order."""
    roots: Tuple[Tuple[int, ...], ...]
    n_positive: int
    simple: Tuple[int, ...]
    reflections: Tuple[Tuple[int, ...], ...]


def cartan_matrix(coxeter_matrix: CoxeterMatrix) -> np.ndarray:
    """Returns an integral Cartan matrix whose Weyl group has the given Coxeter matrix.

    For i < j the entry ``a_ij`` is -1 and ``a_ji`` carries the bond
    multiplicity, so any orientation of a multiple bond is chosen.

    Raises
    ------
    NonCrystallographic
        If an off-diagonal entry is not one of 2, 3, 4 or 6.

    """
    rank = len(coxeter_matrix)
    cartan = 2 * np.eye(rank, dtype=np.int64)
    for i, j in itertools.combinations(range(rank), 2):
        m = coxeter_matrix[i][j]
        if m not in types.CRYSTALLOGRAPHIC_BONDS:
            raise NonCrystallographic(f'Coxeter matrix entry m({i},{j}) = {m} has no integral Cartan realization. '
                                      f'Supported entries are {sorted(types.CRYSTALLOGRAPHIC_BONDS)}.')
        product = types.CRYSTALLOGRAPHIC_BONDS[m]
        if product:
            cartan[i, j] = -1
            cartan[j, i] = -product
    return cartan


def _is_crystallographic(coxeter_matrix: CoxeterMatrix) -> bool:
    return all(coxeter_matrix[i][j] in types.CRYSTALLOGRAPHIC_BONDS
               for i, j in itertools.combinations(range(len(coxeter_matrix)), 2))


def _coefficients(poly: sympy.Poly, degree: int) -> List[int]:
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    return coeffs + [0] * (degree - len(coeffs))


def geometric_pairings(coxeter_matrix: CoxeterMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """Pairings ``2B(alpha_s, -)`` of the geometric representation over ``Z[theta]``.

    Here ``theta = 2cos(pi/L)`` with L the least common multiple of the bonds.
    Every ``2cos(pi/m)`` is an integer polynomial in theta, so a root is an
    integer vector holding ``d = deg(theta)`` coordinates per simple root.
    Returns the pairing blocks, shaped ``(rank, d, rank * d)``, and the
    powers ``theta^0 .. theta^(d-1)`` used to evaluate coordinates.

    """
    rank = len(coxeter_matrix)
    bonds = {coxeter_matrix[i][j] for i, j in itertools.combinations(range(rank), 2)} - {2}
    L = functools.reduce(lambda a, b: int(sympy.ilcm(a, b)), bonds, 1)
    minimal = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / L), _THETA), _THETA, domain='ZZ')
    degree = minimal.degree()

    # 2cos(k pi/L) = theta * 2cos((k-1) pi/L) - 2cos((k-2) pi/L)
    theta = sympy.Poly(_THETA, _THETA, domain='ZZ')
    chebyshev = [sympy.Poly(2, _THETA, domain='ZZ'), theta]
    while len(chebyshev) <= L:
        chebyshev.append(theta * chebyshev[-1] - chebyshev[-2])

    def times(c: sympy.Poly) -> np.ndarray:
        columns = [_coefficients((c * theta ** k).rem(minimal), degree) for k in range(degree)]
        return np.array(columns, dtype=np.int64).T

    pairings = np.zeros((rank, degree, rank * degree), dtype=np.int64)
    for s, t in itertools.product(range(rank), repeat=2):
        m = coxeter_matrix[s][t]
        if s == t:
            block = 2 * np.eye(degree, dtype=np.int64)
        elif m == 2:
            continue
        else:
            block = -times(chebyshev[L // m])
        pairings[s, :, t * degree:(t + 1) * degree] = block
    powers = np.array([(2 * np.cos(np.pi / L)) ** k for k in range(degree)])
    return pairings, powers


def build_root_system(coxeter_matrix: CoxeterMatrix, max_roots: int = metadata.MAX_ROOTS) -> RootSystem:
    """Closes the simple roots under the simple reflections.

    Crystallographic matrices use the integral Cartan realization; any other
    matrix uses the geometric representation from :func:`geometric_pairings`.

    """
    rank = len(coxeter_matrix)
    if _is_crystallographic(coxeter_matrix):
        pairings, powers = cartan_matrix(coxeter_matrix)[:, np.newaxis, :], np.ones(1)
    else:
        pairings, powers = geometric_pairings(coxeter_matrix)
    degree = len(powers)
    units = np.eye(rank * degree, dtype=np.int64)

    def reflect(s: int, beta: Tuple[int, ...]) -> Tuple[int, ...]:
        vector = np.array(beta, dtype=np.int64)
        vector[s * degree:(s + 1) * degree] -= pairings[s] @ vector
        return tuple(int(c) for c in vector)

    def values(beta: Tuple[int, ...]) -> np.ndarray:
        return np.array(beta, dtype=np.float64).reshape(rank, degree) @ powers

    simple_roots = [tuple(int(c) for c in units[s * degree]) for s in range(rank)]
    positive = set(simple_roots)
    frontier = list(simple_roots)
    while frontier:
        next_frontier = []
        for beta in frontier:
            for s in range(rank):
                if beta == simple_roots[s]:
                    continue
                gamma = reflect(s, beta)
                if values(gamma).min() < -_TOLERANCE:
                    raise InvariantViolation(f'Reflection {s} sent the positive root {beta} to {gamma}.')
                if gamma not in positive:
                    positive.add(gamma)
                    next_frontier.append(gamma)
        if len(positive) > max_roots:
            raise InfiniteGroup(f'Root closure exceeded {max_roots} roots; the Coxeter matrix is not of '
                                f'finite type.')
        frontier = next_frontier

    positive_roots = sorted(positive, key=lambda beta: (round(float(values(beta).sum()), 9), beta))
    roots = tuple(positive_roots) + tuple(tuple(-c for c in beta) for beta in positive_roots)
    index = {beta: i for i, beta in enumerate(roots)}
    reflections = tuple(tuple(index[reflect(s, beta)] for beta in roots) for s in range(rank))
    simple = tuple(index[beta] for beta in simple_roots)
    logger.debug(f'Built root system of rank {rank} with {len(positive_roots)} positive roots '
                 f'({degree} coordinates per simple root).')
    return RootSystem(roots, len(positive_roots), simple, reflections)


def presentation_order(coxeter_matrix: CoxeterMatrix) -> int:
    """Order of the group presented by ``<s_i | (s_i s_j)^m(i,j)>``, by Todd-Coxeter coset enumeration.

    Raises
    ------
    InfiniteGroup
        If the enumeration defines more cosets than the coset table allows.

    """
    rank = len(coxeter_matrix)
    free, *gens = free_group(', '.join(f's{i}' for i in range(rank)))
    relators = [g ** 2 for g in gens]
    relators += [(gens[i] * gens[j]) ** coxeter_matrix[i][j] for i, j in itertools.combinations(range(rank), 2)]
    try:
        order = FpGroup(free, relators).order()
    except ValueError as e:
        raise InfiniteGroup(f'Coset enumeration of the Coxeter presentation did not close: {e}')
    if not sympy.sympify(order).is_finite:
        raise InfiniteGroup('The Coxeter presentation defines an infinite group.')
    return int(order)


################
# Coxeter data #
################

@dataclass(frozen=True)
class CoxeterDatum:
    """A Coxeter matrix together with its root-system realization.

    Construction validates the matrix and fails with :class:`InfiniteGroup`
    when the root closure does not terminate within the configured bound.

    """
    rank: int
    coxeter_matrix: CoxeterMatrix
    type_label: Optional[str] = field(default=None, compare=False)
    root_system: RootSystem = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        matrix = tuple(tuple(int(m) for m in row) for row in self.coxeter_matrix)
        object.__setattr__(self, 'coxeter_matrix', matrix)
        if self.rank <= 0:
            raise ValueError(f'Rank must be positive. You specified {self.rank}.')
        if len(matrix) != self.rank or any(len(row) != self.rank for row in matrix):
            raise ValueError(f'Coxeter matrix must be {self.rank} x {self.rank}.')
        for i, j in itertools.product(range(self.rank), repeat=2):
            if i == j and matrix[i][j] != 1:
                raise ValueError(f'Coxeter matrix must have unit diagonal; m({i},{i}) = {matrix[i][j]}.')
            if i != j and (matrix[i][j] < 2 or matrix[i][j] != matrix[j][i]):
                raise ValueError(f'Coxeter matrix must be symmetric with off-diagonal entries >= 2; '
                                 f'm({i},{j}) = {matrix[i][j]}, m({j},{i}) = {matrix[j][i]}.')
        object.__setattr__(self, 'root_system', build_root_system(matrix))

    @property
    def label(self) -> str:
        return self.type_label if self.type_label else f'custom{self.rank}'

    @property
    def generators(self) -> GeneratorSet:
        return frozenset(range(self.rank))


def coxeter_matrix_of_type(letter: str, rank: int) -> CoxeterMatrix:
    """Returns the Coxeter matrix of a standard finite type with Bourbaki node order, 0-based."""
    letter = letter.upper()
    if letter not in types.TYPE_LETTERS:
        raise ValueError(f'Type letter must be one of {types.TYPE_LETTERS}. You specified {letter}.')
    if letter in types.EXCEPTIONAL_RANKS and rank not in types.EXCEPTIONAL_RANKS[letter]:
        raise ValueError(f'Type {letter} exists only in ranks {types.EXCEPTIONAL_RANKS[letter]}.')
    minimum_rank = {'A': 1, 'B': 2, 'C': 2, 'D': 4}.get(letter, 1)
    if rank < minimum_rank:
        raise ValueError(f'Type {letter} requires rank at least {minimum_rank}. You specified {rank}.')

    bonds = {}
    if letter in 'ABC':
        bonds.update({(i, i + 1): 3 for i in range(rank - 1)})
        if letter in 'BC':
            bonds[(rank - 2, rank - 1)] = 4
    elif letter == 'D':
        bonds.update({(i, i + 1): 3 for i in range(rank - 2)})
        bonds[(rank - 3, rank - 1)] = 3
    elif letter == 'E':
        bonds.update({(0, 2): 3, (1, 3): 3})
        bonds.update({(i, i + 1): 3 for i in range(2, rank - 1)})
    elif letter == 'F':
        bonds.update({(0, 1): 3, (1, 2): 4, (2, 3): 3})
    elif letter == 'H':
        bonds[(0, 1)] = 5
        bonds.update({(i, i + 1): 3 for i in range(1, rank - 1)})
    else:
        bonds[(0, 1)] = 6

    matrix = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for (i, j), m in bonds.items():
        matrix[i][j] = matrix[j][i] = m
    return tuple(tuple(row) for row in matrix)


@functools.lru_cache(maxsize=None)
def datum_of_type(label: str) -> CoxeterDatum:
    label = label.strip()
    dihedral = re.match(r'^[Ii]2\((\d+)\)$', label)
    if dihedral:
        m = int(dihedral.group(1))
        if m < 3:
            raise ValueError(f'Dihedral types I2(m) need m >= 3. You specified {label!r}.')
        return CoxeterDatum(2, ((1, m), (m, 1)), f'I2({m})')
    match = re.match(r'^([A-Ha-h])(\d+)$', label)
    if not match:
        raise ValueError(f'Group label must look like "<Letter><rank>" or "I2(<m>)", e.g. "A3". '
                         f'You specified {label!r}.')
    letter, rank = match.group(1).upper(), int(match.group(2))
    return CoxeterDatum(rank, coxeter_matrix_of_type(letter, rank), f'{letter}{rank}')


def parse_datum(text: str) -> CoxeterDatum:
    """Parses "<Letter><rank>" or an explicit Coxeter matrix given as a JSON array of arrays."""
    text = text.strip()
    if text.startswith('['):
        try:
            matrix = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f'Could not parse Coxeter matrix {text!r}: {e}')
        if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
            raise ValueError(f'Coxeter matrix must be a JSON array of arrays. You specified {text!r}.')
        return CoxeterDatum(len(matrix), tuple(tuple(row) for row in matrix))
    return datum_of_type(text)


def as_generator_set(datum: CoxeterDatum, members: Iterable[int]) -> GeneratorSet:
    members = frozenset(int(s) for s in members)
    outside = sorted(s for s in members if not 0 <= s < datum.rank)
    if outside:
        raise ValueError(f'Generators {outside} are not simple reflections of {datum.label} '
                         f'(indices 0..{datum.rank - 1}).')
    return members


def parse_generator_set(datum: CoxeterDatum, text: str) -> GeneratorSet:
    """Parses a comma separated list of 0-based generator indices; "" is the empty set."""
    text = text.strip()
    if not text:
        return frozenset()
    try:
        members = [int(token) for token in text.split(',')]
    except ValueError:
        raise ValueError(f'Generator sets are comma separated integers. You specified {text!r}.')
    return as_generator_set(datum, members)


#################
# Weyl elements #
#################

@dataclass(frozen=True, eq=False)
class WeylElement:
    datum: CoxeterDatum
    rep: Tuple[int, ...]
    cached_length: int

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.rep == other.rep and (self.datum is other.datum or self.datum == other.datum)

    def __hash__(self):
        return hash(self.rep)

    def __mul__(self, other: 'WeylElement') -> 'WeylElement':
        return multiply(self, other)

    def __repr__(self):
        return f"WeylElement({self.datum.label}, '{format_element(self)}')"


def _element(datum: CoxeterDatum, rep: Tuple[int, ...]) -> WeylElement:
    n_positive = datum.root_system.n_positive
    return WeylElement(datum, rep, sum(1 for image in rep[:n_positive] if image >= n_positive))


def _check_same_datum(a: WeylElement, b: WeylElement):
    if a.datum is not b.datum and a.datum != b.datum:
        raise DatumMismatch(f'Elements belong to different Coxeter data: {a.datum.label} and {b.datum.label}.')


def identity(datum: CoxeterDatum) -> WeylElement:
    return WeylElement(datum, tuple(range(len(datum.root_system.roots))), 0)


def generator(datum: CoxeterDatum, s: int) -> WeylElement:
    if not 0 <= s < datum.rank:
        raise ValueError(f'Generator index {s} is outside 0..{datum.rank - 1}.')
    return WeylElement(datum, datum.root_system.reflections[s], 1)


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    _check_same_datum(a, b)
    return _element(a.datum, tuple(a.rep[image] for image in b.rep))


def inverse(w: WeylElement) -> WeylElement:
    rep = [0] * len(w.rep)
    for root, image in enumerate(w.rep):
        rep[image] = root
    return WeylElement(w.datum, tuple(rep), w.cached_length)


def length(w: WeylElement) -> int:
    return w.cached_length


def reflect_left(s: int, w: WeylElement) -> WeylElement:
    reflection = w.datum.root_system.reflections[s]
    return _element(w.datum, tuple(reflection[image] for image in w.rep))


def reflect_right(w: WeylElement, s: int) -> WeylElement:
    reflection = w.datum.root_system.reflections[s]
    return _element(w.datum, tuple(w.rep[image] for image in reflection))


def descent(w: WeylElement, s: int, side: str = 'right') -> bool:
    """Whether ``l(ws) < l(w)`` (right) or ``l(sw) < l(w)`` (left)."""
    if side not in types.SIDES:
        raise ValueError(f'Side must be one of {types.SIDES}. You specified {side}.')
    if not 0 <= s < w.datum.rank:
        raise ValueError(f'Generator index {s} is outside 0..{w.datum.rank - 1}.')
    root_system = w.datum.root_system
    simple_root = root_system.simple[s]
    if side == 'right':
        return w.rep[simple_root] >= root_system.n_positive
    # w^{-1}(alpha_s) is negative
    return w.rep.index(simple_root) >= root_system.n_positive


def first_left_descent(w: WeylElement) -> Optional[int]:
    for s in range(w.datum.rank):
        if descent(w, s, 'left'):
            return s
    return None


@functools.lru_cache(maxsize=metadata.ELEMENT_CACHE_SIZE)
def reduced_word(w: WeylElement) -> Tuple[int, ...]:
    """The lexicographically smallest reduced word of ``w``."""
    word = []
    while w.cached_length:
        s = first_left_descent(w)
        word.append(s)
        w = reflect_left(s, w)
    return tuple(word)


def from_word(datum: CoxeterDatum, word: Sequence[int]) -> WeylElement:
    w = identity(datum)
    for s in word:
        w = multiply(w, generator(datum, s))
    return w


def canonical_key(w: WeylElement) -> Tuple[int, Tuple[int, ...]]:
    return w.cached_length, reduced_word(w)


def format_element(w: WeylElement) -> str:
    return '.'.join(str(s) for s in reduced_word(w))


def parse_element(datum: CoxeterDatum, text: str) -> WeylElement:
    """Parses a dot separated word in 0-based generator indices; "" and "id" are the identity."""
    text = text.strip()
    if text in ('', 'id'):
        return identity(datum)
    try:
        word = [int(token) for token in text.split('.')]
    except ValueError:
        raise ValueError(f'Elements are dot separated generator indices, e.g. "0.1.0". You specified {text!r}.')
    return from_word(datum, word)


def support(w: WeylElement) -> GeneratorSet:
    return frozenset(reduced_word(w))


################
# Bruhat order #
################

def bruhat_leq_by_descents(v: T, w: T,
                           first_left_descent_of: Callable[[T], Optional[int]],
                           reflect_left_by: Callable[[int, T], T],
                           length_of: Callable[[T], int]) -> bool:
    """Bruhat comparison ``v <= w`` in any Coxeter system given by its left descents.

    For a left descent s of w: if sv < v then v <= w iff sv <= sw, otherwise
    v <= w iff v <= sw. The recursion ends at w = id.

    """
    while True:
        if length_of(v) > length_of(w):
            return False
        s = first_left_descent_of(w)
        if s is None:
            return length_of(v) == 0
        sv = reflect_left_by(s, v)
        if length_of(sv) < length_of(v):
            v = sv
        w = reflect_left_by(s, w)


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    _check_same_datum(v, w)
    return bruhat_leq_by_descents(v, w, first_left_descent, reflect_left, length)


###############
# Enumeration #
###############

def _closure(datum: CoxeterDatum, gens: Iterable[int], bound: int) -> List[WeylElement]:
    gens = sorted(gens)
    start = identity(datum)
    seen = {start.rep: start}
    frontier = [start]
    while frontier:
        next_frontier = []
        for w in frontier:
            for s in gens:
                ws = reflect_right(w, s)
                if ws.rep not in seen:
                    seen[ws.rep] = ws
                    next_frontier.append(ws)
        if len(seen) > bound:
            raise GroupTooLarge(f'{datum.label} has more than {bound} elements.')
        frontier = next_frontier
    return sorted(seen.values(), key=canonical_key)


@functools.lru_cache(maxsize=metadata.GROUP_CACHE_SIZE)
def _enumerate_group(datum: CoxeterDatum, bound: int) -> Tuple[WeylElement, ...]:
    elements = tuple(_closure(datum, range(datum.rank), bound))
    logger.debug(f'Enumerated {len(elements)} elements of {datum.label}.')
    return elements


def enumerate_group(datum: CoxeterDatum, bound: int = metadata.MAX_GROUP_ELEMENTS) -> List[WeylElement]:
    """All elements of W sorted by (length, smallest reduced word).

    Raises
    ------
    GroupTooLarge
        If W has more than ``bound`` elements.

    """
    return list(_enumerate_group(datum, bound))


@functools.lru_cache(maxsize=metadata.GROUP_CACHE_SIZE * 8)
def _parabolic_elements(datum: CoxeterDatum, J: GeneratorSet) -> Tuple[WeylElement, ...]:
    return tuple(_closure(datum, J, metadata.MAX_GROUP_ELEMENTS))


def parabolic_elements(datum: CoxeterDatum, J: Iterable[int]) -> List[WeylElement]:
    """The standard parabolic subgroup W_J: every w whose support lies in J."""
    return list(_parabolic_elements(datum, as_generator_set(datum, J)))


def longest_element(datum: CoxeterDatum, J: Iterable[int]) -> WeylElement:
    return max(parabolic_elements(datum, J), key=length)
