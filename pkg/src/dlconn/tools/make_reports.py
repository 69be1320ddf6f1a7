"""Application functions behind the ``dlconn`` subcommands.

Each function writes its records to a :class:`ReportStream` and returns the
process exit code: 1 if a report failed (or, when strict, was
inconclusive), 0 otherwise.

"""
import itertools
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import click
import yaml
from loguru import logger

from dlconn.combinatorics import coxeter, counting, twist
from dlconn.combinatorics.coxeter import GeneratorSet, WeylElement
from dlconn.combinatorics.twist import TwistedDatum
from dlconn.constants import metadata, results, statements
from dlconn.oracle import flags
from dlconn.oracle.flags import GroupRealization
from dlconn.verification import checks
from dlconn.verification.reports import ReportStream, VerificationReport


def exit_code(reports: Iterable[VerificationReport], strict: bool) -> int:
    bad = {results.VERDICTS.FAIL}
    if strict:
        bad.add(results.VERDICTS.INCONCLUSIVE)
    return int(any(report.verdict in bad for report in reports))


def _open_stream(output: Optional[str], output_format: str, timings: bool):
    sink = click.open_file(output or '-', 'w')
    return sink, ReportStream(sink, output_format, timings)


def _emit(reports: List[VerificationReport], output: Optional[str], output_format: str, timings: bool):
    sink, stream = _open_stream(output, output_format, timings)
    with sink:
        for report in reports:
            logger.info(f'{report.check_name}: {report.verdict} {report.parameters}')
            stream.write_report(report)
        stream.close()


def _format(w: WeylElement) -> str:
    return coxeter.format_element(w) or 'id'


def build_criterion(t: TwistedDatum, I: Optional[GeneratorSet], w: Optional[WeylElement],
                    output: Optional[str], output_format: str) -> int:
    record: Dict[str, Any] = {'group': t.datum.label, 'twist': t.sigma.label}
    if w is not None:
        I = coxeter.support(w)
        record.update({'w': _format(w), 'support': sorted(I), 'irreducible': twist.is_irreducible(t, w)})
    record.update({'I': sorted(I), 'sigma_closure': sorted(twist.sigma_closure(t, I)),
                   'connected': twist.is_connected_union(t, I)})
    logger.info(f'{t.label}: sigma-closure of {sorted(I)} is {record["sigma_closure"]}.')
    sink, stream = _open_stream(output, output_format, False)
    with sink:
        stream.write(record)
        stream.close()
    return 0


def build_counts(t: TwistedDatum, J: Optional[GeneratorSet], table: bool, ws: Sequence[WeylElement],
                 qs: Sequence[int], output: Optional[str], output_format: str) -> int:
    """Writes N(W_J) for J, or for every sigma-stable J with ``table``, then one record per element."""
    header = {'group': t.datum.label, 'twist': t.sigma.label}
    if table:
        records = [{**header, **row} for row in counting.counting_table(t, qs)]
    else:
        J = t.datum.generators if J is None else J
        polynomial = counting.count_N(t, J)
        records = [{
            **header, 'J': sorted(J),
            'N': list(polynomial.coeffs), 'values': {str(q): polynomial.evaluate(q) for q in qs},
        }]
    for w in ws:
        components = counting.component_count(t, w)
        records.append({
            **header, 'w': _format(w),
            'W^w': sorted(twist.sigma_closure(t, coxeter.support(w))),
            'components': list(components.coeffs),
            'values': {str(q): components.evaluate(q) for q in qs},
        })
        logger.info(f'{t.label}: X({_format(w)}) has {components} components.')
    sink, stream = _open_stream(output, output_format, False)
    with sink:
        for record in records:
            stream.write(record)
        stream.close()
    return 0


def build_steinberg(t: TwistedDatum, strict: bool, output: Optional[str], output_format: str,
                    timings: bool) -> int:
    report = twist.verify_steinberg(t)
    _emit([report], output, output_format, timings)
    return exit_code([report], strict)


def verification_entries(r: GroupRealization, check_names: Sequence[str], sets: Sequence[GeneratorSet],
                         ws: Sequence[WeylElement], ss: Sequence[int], m: Optional[int],
                         max_level: int) -> List[Dict[str, Any]]:
    """Expands the verify options into suite entries.

    Missing sets default to every subset of S; missing elements and
    generators default to every generator. Each entry carries only the levels
    its check reads: the fibers check gets every level from m up to
    ``max_level`` that fits the field size bound, the lemma check level m and
    every other check level 1.

    """
    datum = flags.weyl_datum(r)
    generators = list(range(datum.rank))
    sets = list(sets) or [frozenset(c) for k in range(datum.rank + 1)
                          for c in itertools.combinations(generators, k)]
    ws = list(ws) or [coxeter.generator(datum, s) for s in generators]
    ss = list(ss) or generators
    level = m if m is not None else (metadata.DEFAULT_UNITARY_LEVEL if r.is_unitary else metadata.DEFAULT_SPLIT_LEVEL)
    escalation = list(flags.affordable_levels(r.kind, r.q, range(level, max(level, max_level) + 1))) or [level]
    if escalation[-1] < max_level:
        logger.warning(f'{r.label}: levels above {escalation[-1]} exceed the field size bound; '
                       f'the fibers check stops there.')
    base = {'realization': r.label, 'levels': [1]}
    if m is not None:
        base['m'] = m
    entries = []
    for name in check_names or statements.ORACLE_CHECK_NAMES:
        if name == statements.THEOREM_CONNECTIVITY.NAME:
            entries += [{**base, 'check': name, 'set': sorted(I)} for I in sets]
        elif name == statements.COMPONENT_FIBERS.NAME:
            entries += [{**base, 'check': name, 'levels': escalation, 'w': coxeter.format_element(w),
                         'max_level': max_level} for w in ws]
        elif name == statements.CLOSURE_RATIONAL_COUNTS.NAME:
            entries += [{**base, 'check': name, 'w': coxeter.format_element(w)} for w in ws]
        elif name == statements.LEMMA_CELL_EMPTINESS.NAME:
            entries += [{**base, 'check': name, 'levels': [level], 's': s} for s in ss]
        elif name in (statements.X1_CLOSURE.NAME, statements.COMPONENT_BRIDGE.NAME):
            entries += [{**base, 'check': name, 's': s} for s in ss]
        else:
            entries.append({**base, 'check': name})
    return entries


def build_verification(entries: List[Dict[str, Any]], workers: int, bound: Optional[int], strict: bool,
                       output: Optional[str], output_format: str, timings: bool) -> int:
    if bound is not None:
        entries = [{**entry, 'bound': bound} for entry in entries]
    logger.info(f'Running {len(entries)} checks with {workers or 1} worker(s).')
    reports = checks.run_suite(entries, workers)
    _emit(reports, output, output_format, timings)
    return exit_code(reports, strict)


def load_suite(path: Path) -> List[Dict[str, Any]]:
    """Flattens a suite specification into run_check entries.

    A suite has optional ``steinberg`` and ``descent`` lists of entries and a
    ``verify`` list of realizations, each with its own ``checks`` list.

    """
    with Path(path).open() as f:
        document = yaml.safe_load(f) or {}
    suite = document.get('suite', document)
    entries = []
    for entry in suite.get('steinberg', []):
        entries.append({'check': statements.STEINBERG.NAME, **entry})
    for entry in suite.get('descent', []):
        entries.append({'check': statements.DESCENT_CHAIN.NAME, **entry})
    for block in suite.get('verify', []):
        base = {key: value for key, value in block.items() if key != 'checks'}
        for check in block.get('checks', []):
            entries.append({**base, **check})
    unknown = {e['check'] for e in entries} - set(statements.ORACLE_CHECK_NAMES) - {
        statements.STEINBERG.NAME, statements.DESCENT_CHAIN.NAME}
    if unknown:
        raise ValueError(f'Suite {path} names unknown checks {sorted(unknown)}.')
    return entries


def build_suite(suite_path: str, workers: int, bound: Optional[int], strict: bool, output: Optional[str],
                output_format: str, timings: bool) -> int:
    entries = load_suite(Path(suite_path))
    logger.info(f'Loaded {len(entries)} entries from {suite_path}.')
    return build_verification(entries, workers, bound, strict, output, output_format, timings)
