"""Checks tying the flag oracle and the combinatorics together.

Every check returns a :class:`VerificationReport`. Oracle checks take a
:class:`GroupRealization`; the combinatorial ones take a twisted datum.
:func:`run_check` dispatches a plain dictionary entry (as found in suite
files) so that entries can be shipped to worker processes.

.. admonition::

   Logging in this module should be done at the ``debug`` level.

"""
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np
from loguru import logger
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from dlconn.combinatorics import coxeter, counting, twist
from dlconn.combinatorics.coxeter import WeylElement
from dlconn.combinatorics.twist import TwistedDatum
from dlconn.constants import metadata, statements
from dlconn.exceptions import CriterionFails
from dlconn.oracle import flags
from dlconn.oracle.flags import Flag, GroupRealization
from dlconn.verification.reports import CheckRecorder, VerificationReport


def _members(elements: Iterable[int]) -> List[int]:
    return sorted(elements)


def _fmt(w: WeylElement) -> str:
    return coxeter.format_element(w) or 'id'


def _group_by(items: Iterable[Flag], key: Callable) -> Dict[Any, List[Flag]]:
    groups = defaultdict(list)
    for item in items:
        groups[key(item)].append(item)
    return groups


########################
# Rational flag checks #
########################

def check_rational_count(r: GroupRealization) -> VerificationReport:
    t = flags.realized_twist(r)
    predicted = counting.count_N(t).evaluate(r.q)
    recorder = CheckRecorder(statements.RATIONAL_COUNT, {'realization': r.label, 'predicted': predicted})
    found = len(flags.rational_flags(r))
    recorder.require('rational flags counted by N(W)', found == predicted, f'found {found}, predicted {predicted}')
    recorder.confirm(f'{found} rational flags')
    return recorder.report()


def check_cell_sizes(r: GroupRealization) -> VerificationReport:
    t = flags.realized_twist(r)
    base = flags.base_flag(r)
    recorder = CheckRecorder(statements.CELL_SIZES, {'realization': r.label, 'base_flag': str(base)})
    cells = Counter(flags.relpos_to_weyl(r, flags.schubert_cell_of(r, base, F)) for F in flags.rational_flags(r))
    for v in coxeter.enumerate_group(t.datum):
        fixed = twist.apply_sigma(t, v) == v
        expected = r.q ** coxeter.length(v) if fixed else 0
        recorder.require('|C_v(F_q)| = q^l(v) for fixed v, else 0', cells[v] == expected,
                         f'v = {_fmt(v)}: found {cells[v]}, expected {expected}')
        if fixed:
            recorder.confirm(f'C_{_fmt(v)}: {cells[v]}')
    return recorder.report()


def check_theorem_connectivity(r: GroupRealization, I: Iterable[int]) -> VerificationReport:
    """Connects rational flags with equal images in G/P^{orbit(s)}, s in I, and counts components."""
    t = flags.realized_twist(r)
    I = coxeter.as_generator_set(t.datum, I)
    closure = twist.sigma_closure(t, I)
    criterion = twist.is_connected_union(t, I)
    recorder = CheckRecorder(statements.THEOREM_CONNECTIVITY, {
        'realization': r.label,
        'I': _members(I),
        'sigma_closure': _members(closure),
        'criterion': criterion,
    })
    vertices = flags.rational_flags(r)
    index = {F: i for i, F in enumerate(vertices)}
    rows, cols = [], []
    for orbit in {twist.sigma_orbit(t, s) for s in I}:
        for members in _group_by(vertices, lambda F: flags.project_partial(r, F, orbit)).values():
            for a, b in zip(members, members[1:]):
                rows.append(index[a])
                cols.append(index[b])
    edges = (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), edges), shape=(len(vertices), len(vertices)))
    n_components, labels = connected_components(graph, directed=False)
    sizes = sorted(set(np.bincount(labels).tolist()))
    recorder.parameters.update({'vertices': len(vertices), 'components': int(n_components),
                                'component_sizes': sizes})
    logger.debug(f'{r.label}, I = {sorted(I)}: {n_components} components on {len(vertices)} vertices.')

    recorder.require('graph connected iff the sigma-closure of I is S', (n_components == 1) == criterion,
                     f'{n_components} components, criterion {criterion}')
    if n_components > 1:
        expected_count = counting.count_N(t).exact_div(counting.count_N(t, closure)).evaluate(r.q)
        expected_size = counting.count_N(t, closure).evaluate(r.q)
        recorder.require('component count equals N(W)/N(W_closure)', n_components == expected_count,
                         f'found {n_components}, predicted {expected_count}')
        recorder.require('component size equals N(W_closure)', sizes == [expected_size],
                         f'sizes {sizes}, predicted {expected_size}')
    recorder.confirm(f'{n_components} components of sizes {sizes}')
    return recorder.report()


def check_lemma_cell_emptiness(r: GroupRealization, s: int, m: int) -> VerificationReport:
    t = flags.realized_twist(r)
    coxeter.as_generator_set(t.datum, [s])
    base = flags.base_flag(r)
    points = flags.dl_points(r, coxeter.generator(t.datum, s), m)
    recorder = CheckRecorder(statements.LEMMA_CELL_EMPTINESS, {
        'realization': r.label, 's': s, 'm': m, 'points': len(points),
    })
    cells = Counter(flags.relpos_to_weyl(r, flags.schubert_cell_of(r, base, F)) for F in points)
    for v in coxeter.enumerate_group(t.datum):
        allowed = twist.apply_sigma(t, v) == v and coxeter.descent(v, s)
        if not allowed:
            recorder.require('X(s) misses C_v unless v is fixed and vs < v', cells[v] == 0,
                             f'v = {_fmt(v)}: {cells[v]} points')
        else:
            recorder.confirm(f'C_{_fmt(v)}: {cells[v]} points at level {m}')
    return recorder.report()


def check_component_fibers(r: GroupRealization, w: WeylElement, m: int,
                           max_level: int = metadata.DEFAULT_LEVEL_CAP) -> VerificationReport:
    """Counts rational images of X(w) in G/P^w, raising the level until the prediction is met.

    A deficit at every available level is inconclusive; too many images, or
    an image that is not rational, is a failure.

    """
    t = flags.realized_twist(r)
    J = twist.sigma_closure(t, coxeter.support(w))
    predicted = counting.component_count(t, w).evaluate(r.q)
    recorder = CheckRecorder(statements.COMPONENT_FIBERS, {
        'realization': r.label, 'w': _fmt(w), 'W^w': _members(J), 'predicted': predicted,
    })
    levels = [level for level in r.levels if m <= level <= max_level]
    if not levels:
        raise ValueError(f'No level between {m} and {max_level} is available in {r.label}; '
                         f'available levels are {r.levels}.')
    images = set()
    for level in levels:
        points = flags.dl_points(r, w, level)
        images = set()
        for F in points:
            image = flags.project_partial(r, F, J)
            if flags.frobenius_partial(r, image) != image:
                recorder.require('images in G/P^w are rational', False, f'level {level}: {F} maps to {image}')
            images.add(image)
        logger.debug(f'{r.label}, w = {_fmt(w)}: {len(points)} points, {len(images)} images at level {level}.')
        recorder.parameters.update({'level': level, 'points': len(points), 'images': len(images)})
        if len(images) >= predicted:
            break
    recorder.require('no more images than N(W)/N(W^w)', len(images) <= predicted,
                     f'{len(images)} images, predicted {predicted}')
    if len(images) < predicted:
        recorder.inconclusive(f'inconclusive at level {recorder.parameters["level"]}: '
                              f'{len(images)} of {predicted} images, deficit {predicted - len(images)}')
        if levels[-1] < max_level:
            recorder.inconclusive(f'levels {levels[-1] + 1} to {max_level} are not available in {r.label}')
    else:
        recorder.confirm(f'{len(images)} rational images at level {recorder.parameters["level"]}')
    return recorder.report()


def check_closure_rational_counts(r: GroupRealization, w: WeylElement) -> VerificationReport:
    t = flags.realized_twist(r)
    J = twist.sigma_closure(t, coxeter.support(w))
    group_size = counting.count_N(t, J).evaluate(r.q)
    group_count = counting.component_count(t, w).evaluate(r.q)
    recorder = CheckRecorder(statements.CLOSURE_RATIONAL_COUNTS, {
        'realization': r.label, 'w': _fmt(w), 'W^w': _members(J),
        'predicted_groups': group_count, 'predicted_group_size': group_size,
    })
    groups = _group_by(flags.rational_flags(r), lambda F: flags.project_partial(r, F, J))
    recorder.require('number of groups equals N(W)/N(W^w)', len(groups) == group_count,
                     f'found {len(groups)}, predicted {group_count}')
    for image, members in groups.items():
        recorder.require('every group has N(W^w) rational flags', len(members) == group_size,
                         f'{image}: {len(members)} members, predicted {group_size}')
    recorder.confirm(f'{len(groups)} groups of {group_size}')
    return recorder.report()


def check_X1_closure(r: GroupRealization, s: int) -> VerificationReport:
    t = flags.realized_twist(r)
    orbit = twist.sigma_orbit(t, s)
    w0 = coxeter.longest_element(t.datum, orbit)
    allowed = {flags.weyl_to_relpos(r, coxeter.identity(t.datum)), flags.weyl_to_relpos(r, w0)}
    predicted = 1 + r.q ** coxeter.length(w0)
    recorder = CheckRecorder(statements.X1_CLOSURE, {
        'realization': r.label, 's': s, 'orbit': _members(orbit), 'w_0^s': _fmt(w0), 'predicted': predicted,
    })
    base = flags.base_flag(r)
    y = flags.project_partial(r, base, orbit)
    rational = flags.rational_flags(r)
    fiber = {F for F in rational if flags.project_partial(r, F, orbit) == y}
    cells = {F for F in rational if flags.schubert_cell_of(r, base, F) in allowed}
    for F in sorted(fiber ^ cells, key=lambda flag: flag.basis):
        recorder.require('fiber through the base equals C_id u C_{w_0^s}', False,
                         f'{F} ({"fiber only" if F in fiber else "cells only"})')
    recorder.require('fiber has 1 + q^l(w_0^s) rational flags', len(fiber) == predicted,
                     f'found {len(fiber)}, predicted {predicted}')
    recorder.confirm(f'{len(fiber)} rational flags in the fiber')
    return recorder.report()


def check_component_bridge(r: GroupRealization, s: int) -> VerificationReport:
    """Every rational x in C_v, v fixed with vs < v, shares its G/P^{orbit(s)} fiber with a point of C_{v w_0^s}."""
    t = flags.realized_twist(r)
    orbit = twist.sigma_orbit(t, s)
    w0 = coxeter.longest_element(t.datum, orbit)
    recorder = CheckRecorder(statements.COMPONENT_BRIDGE, {
        'realization': r.label, 's': s, 'orbit': _members(orbit), 'w_0^s': _fmt(w0),
    })
    base = flags.base_flag(r)
    rational = flags.rational_flags(r)
    cell = {F: flags.relpos_to_weyl(r, flags.schubert_cell_of(r, base, F)) for F in rational}
    fibers = _group_by(rational, lambda F: flags.project_partial(r, F, orbit))
    bridged = 0
    for x in rational:
        v = cell[x]
        if twist.apply_sigma(t, v) != v or not coxeter.descent(v, s):
            continue
        target = coxeter.multiply(v, w0)
        recorder.require('v w_0^s < v', coxeter.length(target) < coxeter.length(v), _fmt(v))
        fiber = fibers[flags.project_partial(r, x, orbit)]
        found = any(cell[y] == target for y in fiber)
        recorder.require('fiber meets C_{v w_0^s}', found, f'x = {x} in C_{_fmt(v)}')
        bridged += found
    recorder.confirm(f'{bridged} rational flags bridged')
    return recorder.report()


########################
# Combinatorial checks #
########################

def check_steinberg(t: TwistedDatum) -> VerificationReport:
    return twist.verify_steinberg(t)


def check_descent_chain(t: TwistedDatum, I: Iterable[int]) -> VerificationReport:
    """Walks every v in W^sigma down to the identity by descents in I.

    Raises
    ------
    CriterionFails
        If the sigma-closure of I is not S.

    """
    I = coxeter.as_generator_set(t.datum, I)
    if not twist.is_connected_union(t, I):
        raise CriterionFails(f'The sigma-closure of {sorted(I)} is {sorted(twist.sigma_closure(t, I))}, not S.')
    structure = twist.fixed_subgroup(t)
    recorder = CheckRecorder(statements.DESCENT_CHAIN, {
        'group': t.datum.label, 'twist': t.sigma.label, 'I': _members(I),
    })
    longest = 0
    for v in structure.elements:
        for s in range(t.datum.rank):
            below = coxeter.length(coxeter.multiply(v, structure.generators[twist.sigma_orbit(t, s)])) \
                < coxeter.length(v)
            recorder.require('vs < v iff v sigma(s) < v iff v w_0^s < v',
                             coxeter.descent(v, s) == coxeter.descent(v, t.sigma(s)) == below,
                             f'v = {_fmt(v)}, s = {s}')
        chain = twist.descent_chain(t, I, v)
        lengths = [coxeter.length(x) for x in chain]
        recorder.require('chain lengths strictly decrease to the identity',
                         all(a > b for a, b in zip(lengths, lengths[1:])) and lengths[-1] == 0,
                         f'v = {_fmt(v)}: lengths {lengths}')
        longest = max(longest, len(chain) - 1)
    recorder.parameters['max_chain_length'] = longest
    recorder.confirm(f'{len(structure.elements) - 1} nontrivial fixed elements reach the identity')
    return recorder.report()


##########
# Suites #
##########

def _realization(entry: Dict[str, Any]) -> GroupRealization:
    bound = entry.get('bound')
    return flags.parse_realization(entry['realization'], entry.get('levels'), int(bound) if bound else None)


def _twisted(entry: Dict[str, Any]) -> TwistedDatum:
    datum = coxeter.parse_datum(str(entry['group']))
    return twist.parse_twist(datum, str(entry.get('twist', '1')))


def _generator_set(datum, value) -> frozenset:
    if isinstance(value, (list, tuple)):
        return coxeter.as_generator_set(datum, value)
    return coxeter.parse_generator_set(datum, str(value))


def run_check(entry: Dict[str, Any]) -> VerificationReport:
    """Runs one suite entry, e.g. ``{'check': 'theorem', 'realization': 'GL3@q=2', 'set': '0'}``."""
    name = entry['check']
    if name == statements.STEINBERG.NAME:
        return check_steinberg(_twisted(entry))
    if name == statements.DESCENT_CHAIN.NAME:
        t = _twisted(entry)
        return check_descent_chain(t, _generator_set(t.datum, entry['set']))

    r = _realization(entry)
    datum = flags.weyl_datum(r)
    m = int(entry.get('m', metadata.DEFAULT_UNITARY_LEVEL if r.is_unitary else metadata.DEFAULT_SPLIT_LEVEL))
    if name == statements.RATIONAL_COUNT.NAME:
        return check_rational_count(r)
    if name == statements.CELL_SIZES.NAME:
        return check_cell_sizes(r)
    if name == statements.THEOREM_CONNECTIVITY.NAME:
        return check_theorem_connectivity(r, _generator_set(datum, entry['set']))
    if name == statements.LEMMA_CELL_EMPTINESS.NAME:
        return check_lemma_cell_emptiness(r, int(entry['s']), m)
    if name == statements.COMPONENT_FIBERS.NAME:
        w = coxeter.parse_element(datum, str(entry['w']))
        return check_component_fibers(r, w, m, int(entry.get('max_level', metadata.DEFAULT_LEVEL_CAP)))
    if name == statements.CLOSURE_RATIONAL_COUNTS.NAME:
        return check_closure_rational_counts(r, coxeter.parse_element(datum, str(entry['w'])))
    if name == statements.X1_CLOSURE.NAME:
        return check_X1_closure(r, int(entry['s']))
    if name == statements.COMPONENT_BRIDGE.NAME:
        return check_component_bridge(r, int(entry['s']))
    raise ValueError(f'Unknown check {name!r}. Known checks are '
                     f'{[statements.STEINBERG.NAME, statements.DESCENT_CHAIN.NAME] + statements.ORACLE_CHECK_NAMES}.')


def run_suite(entries: List[Dict[str, Any]], workers: Optional[int] = None) -> List[VerificationReport]:
    """Runs independent entries, in a process pool when ``workers`` > 1; reports keep submission order."""
    if workers and workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(run_check, entries))
    return [run_check(entry) for entry in entries]
