"""Diagram automorphisms, sigma-stable closures and the fixed group W^sigma.

The Frobenius acts on W only through a permutation of the simple
reflections preserving the Coxeter matrix. This module provides that action,
the connectedness criterion on generator sets and elements, and the Coxeter
structure of the fixed subgroup with generators w_0^s.

"""
import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from loguru import logger

from dlconn.combinatorics import coxeter
from dlconn.combinatorics.coxeter import CoxeterDatum, GeneratorSet, WeylElement
from dlconn.constants import metadata, statements, types
from dlconn.exceptions import CriterionFails, DatumMismatch, InvariantViolation, NotSigmaFixed
from dlconn.verification.reports import CheckRecorder, VerificationReport


#########################
# Diagram automorphisms #
#########################

@dataclass(frozen=True)
class DiagramAutomorphism:
    datum: CoxeterDatum
    perm: Tuple[int, ...]
    order: int = field(init=False)

    def __post_init__(self):
        perm = tuple(int(s) for s in self.perm)
        object.__setattr__(self, 'perm', perm)
        if sorted(perm) != list(range(self.datum.rank)):
            raise ValueError(f'Twist {perm} is not a permutation of the generators 0..{self.datum.rank - 1}.')
        matrix = self.datum.coxeter_matrix
        for s, t in itertools.combinations(range(self.datum.rank), 2):
            if matrix[perm[s]][perm[t]] != matrix[s][t]:
                raise ValueError(f'Twist {perm} does not preserve the Coxeter matrix: '
                                 f'm({s},{t}) = {matrix[s][t]} but m({perm[s]},{perm[t]}) = '
                                 f'{matrix[perm[s]][perm[t]]}.')
        order, power = 1, perm
        while power != tuple(range(self.datum.rank)):
            power = tuple(perm[s] for s in power)
            order += 1
        object.__setattr__(self, 'order', order)

    def __call__(self, s: int) -> int:
        return self.perm[s]

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    @property
    def label(self) -> str:
        if self.is_identity:
            return types.IDENTITY_TWIST
        return ','.join(f'{s}>{t}' for s, t in enumerate(self.perm) if s != t)


@dataclass(frozen=True)
class TwistedDatum:
    datum: CoxeterDatum
    sigma: DiagramAutomorphism

    def __post_init__(self):
        if self.sigma.datum != self.datum:
            raise DatumMismatch(f'Twist is defined on {self.sigma.datum.label}, not on {self.datum.label}.')

    @property
    def label(self) -> str:
        return f'{self.datum.label}[{self.sigma.label}]'


def identity_twist(datum: CoxeterDatum) -> TwistedDatum:
    return TwistedDatum(datum, DiagramAutomorphism(datum, tuple(range(datum.rank))))


def twisted_datum(datum: CoxeterDatum, perm: Iterable[int]) -> TwistedDatum:
    return TwistedDatum(datum, DiagramAutomorphism(datum, tuple(perm)))


def _shorthand_perm(datum: CoxeterDatum, order: int, letter: str, rank: int) -> Tuple[int, ...]:
    if datum.rank != rank or datum.coxeter_matrix != coxeter.coxeter_matrix_of_type(letter, rank):
        raise ValueError(f'Twist {order}{letter}{rank} does not apply to the group {datum.label}.')
    perm = list(range(rank))
    if (order, letter) == (2, 'A'):
        perm = [rank - 1 - s for s in range(rank)]
    elif (order, letter) == (2, 'D'):
        perm[rank - 2], perm[rank - 1] = rank - 1, rank - 2
    elif (order, letter, rank) == (3, 'D', 4):
        perm = [2, 1, 3, 0]
    elif (order, letter, rank) == (2, 'E', 6):
        perm = [5, 1, 4, 3, 2, 0]
    else:
        raise ValueError(f'Unknown twist {order}{letter}{rank}. '
                         f'Supported shorthands are {types.SUPPORTED_TWIST_SHORTHANDS}.')
    return tuple(perm)


def parse_twist(datum: CoxeterDatum, text: str) -> TwistedDatum:
    """Parses "1", a shorthand such as "2A3" or "3D4", or an explicit map like "0>2,2>0".

    Generators not named in an explicit map are fixed.

    """
    text = text.strip()
    if text == types.IDENTITY_TWIST:
        return identity_twist(datum)
    match = re.match(types.TWIST_SHORTHAND_PATTERN, text)
    if match:
        perm = _shorthand_perm(datum, int(match.group('order')), match.group('letter'), int(match.group('rank')))
        return twisted_datum(datum, perm)
    perm = list(range(datum.rank))
    try:
        for token in text.split(','):
            source, target = (int(part) for part in token.split('>'))
            if not 0 <= source < datum.rank:
                raise IndexError(source)
            perm[source] = target
    except (ValueError, IndexError):
        raise ValueError(f'Twists are "1", a shorthand such as "2A3", or a map like "0>2,2>0". '
                         f'You specified {text!r}.')
    return twisted_datum(datum, perm)


####################
# Sigma on W and S #
####################

@functools.lru_cache(maxsize=metadata.ELEMENT_CACHE_SIZE)
def apply_sigma(t: TwistedDatum, w: WeylElement) -> WeylElement:
    if w.datum != t.datum:
        raise DatumMismatch(f'Element of {w.datum.label} cannot be twisted by {t.label}.')
    return coxeter.from_word(t.datum, [t.sigma(s) for s in coxeter.reduced_word(w)])


def sigma_orbit(t: TwistedDatum, s: int) -> GeneratorSet:
    orbit, current = {s}, t.sigma(s)
    while current != s:
        orbit.add(current)
        current = t.sigma(current)
    return frozenset(orbit)


def sigma_orbits(t: TwistedDatum) -> List[GeneratorSet]:
    """The sigma-orbits on S, ordered by their smallest member."""
    orbits = {sigma_orbit(t, s) for s in range(t.datum.rank)}
    return sorted(orbits, key=min)


def sigma_closure(t: TwistedDatum, I: Iterable[int]) -> GeneratorSet:
    """The smallest sigma-stable subset of S containing I."""
    closure = set()
    for s in coxeter.as_generator_set(t.datum, I):
        closure |= sigma_orbit(t, s)
    return frozenset(closure)


def is_sigma_stable(t: TwistedDatum, J: Iterable[int]) -> bool:
    J = coxeter.as_generator_set(t.datum, J)
    return sigma_closure(t, J) == J


def is_connected_union(t: TwistedDatum, I: Iterable[int]) -> bool:
    """Whether X(id) together with the X(s), s in I, has connected closure.

    This holds exactly when I lies in no proper sigma-stable subset of S.

    """
    return sigma_closure(t, I) == t.datum.generators


def is_irreducible(t: TwistedDatum, w: WeylElement) -> bool:
    """Whether w lies in no proper sigma-stable standard parabolic subgroup."""
    return is_connected_union(t, coxeter.support(w))


###################
# The fixed group #
###################

def element_order(w: WeylElement) -> int:
    order, power = 1, w
    while power.cached_length:
        power = coxeter.multiply(power, w)
        order += 1
    return order


@dataclass(frozen=True, eq=False)
class FixedGroupStructure:
    """W^sigma with the generators w_0^s, one per sigma-orbit on S.

    ``orbits`` fixes the order of the generators; entry (i, j) of
    ``coxeter_matrix`` is the order of the product of generators i and j.
    ``intrinsic_lengths`` maps the representation of every element reached
    from the identity to its word length in the generators.

    """
    twisted: TwistedDatum
    elements: Tuple[WeylElement, ...]
    orbits: Tuple[GeneratorSet, ...]
    generators: Dict[GeneratorSet, WeylElement]
    coxeter_matrix: Tuple[Tuple[int, ...], ...]
    intrinsic_lengths: Dict[Tuple[int, ...], int]

    @property
    def generator_list(self) -> List[WeylElement]:
        return [self.generators[orbit] for orbit in self.orbits]

    def intrinsic_length(self, x: WeylElement) -> int:
        return self.intrinsic_lengths[x.rep]

    def intrinsic_first_left_descent(self, x: WeylElement) -> Optional[int]:
        length = self.intrinsic_length(x)
        for i, g in enumerate(self.generator_list):
            if self.intrinsic_length(coxeter.multiply(g, x)) < length:
                return i
        return None

    def intrinsic_reflect_left(self, i: int, x: WeylElement) -> WeylElement:
        return coxeter.multiply(self.generator_list[i], x)

    def intrinsic_bruhat_leq(self, x: WeylElement, y: WeylElement) -> bool:
        """Bruhat order of the Coxeter system (W^sigma, {w_0^s}) computed without reference to W."""
        return coxeter.bruhat_leq_by_descents(x, y, self.intrinsic_first_left_descent,
                                              self.intrinsic_reflect_left, self.intrinsic_length)


@functools.lru_cache(maxsize=metadata.GROUP_CACHE_SIZE)
def fixed_subgroup(t: TwistedDatum, bound: int = metadata.MAX_GROUP_ELEMENTS) -> FixedGroupStructure:
    """Computes W^sigma, its generators w_0^s and their pairwise product orders.

    Raises
    ------
    GroupTooLarge
        If W has more than ``bound`` elements.

    """
    elements = tuple(w for w in coxeter.enumerate_group(t.datum, bound) if apply_sigma(t, w) == w)
    orbits = tuple(sigma_orbits(t))
    generators = {orbit: coxeter.longest_element(t.datum, orbit) for orbit in orbits}
    gens = [generators[orbit] for orbit in orbits]
    matrix = tuple(tuple(1 if i == j else element_order(coxeter.multiply(gens[i], gens[j]))
                         for j in range(len(gens))) for i in range(len(gens)))

    identity = coxeter.identity(t.datum)
    lengths = {identity.rep: 0}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for g in gens:
                xg = coxeter.multiply(x, g)
                if xg.rep not in lengths:
                    lengths[xg.rep] = lengths[x.rep] + 1
                    next_frontier.append(xg)
        frontier = next_frontier
    logger.debug(f'{t.label}: |W^sigma| = {len(elements)} with {len(gens)} generators.')
    return FixedGroupStructure(t, elements, orbits, generators, matrix, lengths)


def standard_type_label(matrix: Tuple[Tuple[int, ...], ...]) -> Optional[str]:
    """Names an irreducible standard type whose Coxeter matrix equals ``matrix`` up to relabeling."""
    rank = len(matrix)
    if rank > 6:
        return None
    candidates = [f'{letter}{rank}' for letter in types.TYPE_LETTERS if letter != 'C']
    for label in candidates:
        try:
            reference = coxeter.coxeter_matrix_of_type(label[0], rank)
        except ValueError:
            continue
        for relabel in itertools.permutations(range(rank)):
            if all(matrix[relabel[i]][relabel[j]] == reference[i][j]
                   for i in range(rank) for j in range(rank)):
                return label
    if rank == 2 and matrix[0][1] > 2:
        return f'I2({matrix[0][1]})'
    return None


def verify_steinberg(t: TwistedDatum, bound: int = metadata.MAX_GROUP_ELEMENTS) -> VerificationReport:
    """Checks that (W^sigma, {w_0^s}) is a Coxeter system whose Bruhat order is the restricted one.

    Sub-checks: the generators generate W^sigma; |W^sigma| equals the order of
    the group presented by the computed matrix (Todd-Coxeter); intrinsic and ambient
    Bruhat order agree on all pairs. The generator facts (involutions,
    W^s n W^sigma = {id, w_0^s}, descent equivalences) are checked alongside.

    """
    structure = fixed_subgroup(t, bound)
    fixed_type = standard_type_label(structure.coxeter_matrix)
    recorder = CheckRecorder(statements.STEINBERG, {
        'group': t.datum.label,
        'twist': t.sigma.label,
        'fixed_group_order': len(structure.elements),
        'fixed_group_type': fixed_type,
        'fixed_coxeter_matrix': [list(row) for row in structure.coxeter_matrix],
    })
    identity = coxeter.identity(t.datum)
    element_set = set(structure.elements)

    reached = {rep for rep in structure.intrinsic_lengths}
    recorder.require('generators generate W^sigma', reached == {x.rep for x in element_set},
                     f'generated {len(reached)} elements, |W^sigma| = {len(element_set)}')

    abstract_order = coxeter.presentation_order(structure.coxeter_matrix)
    recorder.require('|W^sigma| equals the abstract Coxeter group order', abstract_order == len(element_set),
                     f'abstract order {abstract_order}, |W^sigma| = {len(element_set)}')
    recorder.confirm(f'abstract Coxeter group order {abstract_order}')

    for orbit, g in structure.generators.items():
        name = coxeter.format_element(g)
        recorder.require('w_0^s is an involution', coxeter.multiply(g, g) == identity, name)
        recorder.require('w_0^s is sigma-fixed', g in element_set, name)
        parabolic_fixed = {x for x in coxeter.parabolic_elements(t.datum, orbit) if x in element_set}
        recorder.require('W^s n W^sigma = {id, w_0^s}', parabolic_fixed == {identity, g},
                         f'orbit {sorted(orbit)}: {sorted(coxeter.format_element(x) for x in parabolic_fixed)}')

    for v in structure.elements:
        for orbit, g in structure.generators.items():
            v_w0 = coxeter.multiply(v, g)
            below = coxeter.length(v_w0) < coxeter.length(v)
            for s in orbit:
                recorder.require('vs < v iff v sigma(s) < v iff v w_0^s < v',
                                 coxeter.descent(v, s) == coxeter.descent(v, t.sigma(s)) == below,
                                 f'v = {coxeter.format_element(v)}, s = {s}')

    disagreements = 0
    for x, y in itertools.product(structure.elements, repeat=2):
        intrinsic = structure.intrinsic_bruhat_leq(x, y)
        ambient = coxeter.bruhat_leq(x, y)
        if intrinsic != ambient:
            disagreements += 1
            recorder.require('intrinsic Bruhat order equals the restricted order', False,
                             f'x = {coxeter.format_element(x)}, y = {coxeter.format_element(y)}, '
                             f'intrinsic {intrinsic}, ambient {ambient}')
    if not disagreements:
        recorder.confirm(f'Bruhat order agrees on {len(structure.elements) ** 2} pairs')
    recorder.confirm(f'|W^sigma| = {len(structure.elements)}')
    return recorder.report()


def descent_move_exists(t: TwistedDatum, I: Iterable[int], v: WeylElement) -> Optional[int]:
    """Returns the smallest s in I with vs < v, or None.

    For v in W^sigma, vs < v iff v sigma(s) < v; this is checked for every s.
    When the sigma-closure of I is S, None is returned only for v = id.

    Raises
    ------
    NotSigmaFixed
        If v is not fixed by sigma.

    """
    I = coxeter.as_generator_set(t.datum, I)
    if apply_sigma(t, v) != v:
        raise NotSigmaFixed(f'{coxeter.format_element(v)} is not fixed by the twist {t.label}.')
    for s in range(t.datum.rank):
        if coxeter.descent(v, s) != coxeter.descent(v, t.sigma(s)):
            raise InvariantViolation(f'Descent of the sigma-fixed element {coxeter.format_element(v)} at {s} '
                                     f'differs from its descent at {t.sigma(s)}.')
    if not coxeter.length(v):
        return None
    move = next((s for s in sorted(I) if coxeter.descent(v, s)), None)
    if move is None and is_connected_union(t, I):
        raise InvariantViolation(f'No descent of {coxeter.format_element(v)} in {sorted(I)} although the '
                                 f'sigma-closure of {sorted(I)} is S.')
    return move


def descent_chain(t: TwistedDatum, I: Iterable[int], v: WeylElement) -> List[WeylElement]:
    """Iterates v -> v w_0^s with s from :func:`descent_move_exists` until the identity.

    Raises
    ------
    CriterionFails
        If the sigma-closure of I is a proper subset of S.

    """
    I = coxeter.as_generator_set(t.datum, I)
    if not is_connected_union(t, I):
        raise CriterionFails(f'The sigma-closure of {sorted(I)} is {sorted(sigma_closure(t, I))}, not S.')
    structure = fixed_subgroup(t)
    chain = [v]
    while True:
        s = descent_move_exists(t, I, chain[-1])
        if s is None:
            return chain
        chain.append(coxeter.multiply(chain[-1], structure.generators[sigma_orbit(t, s)]))
