import sys
from typing import Callable, Optional, Tuple

import click
from loguru import logger
from vivarium.framework.utilities import handle_exceptions

from dlconn import paths
from dlconn.combinatorics import coxeter, twist
from dlconn.constants import metadata, results, statements
from dlconn.exceptions import BoundExceeded
from dlconn.tools import (build_counts, build_criterion, build_steinberg, build_suite, build_verification,
                          configure_logging_to_terminal, verification_entries)
from dlconn.oracle import flags


def _parse(param_hint: str, parser: Callable, *args):
    try:
        return parser(*args)
    except (ValueError, BoundExceeded) as e:
        raise click.BadParameter(str(e), param_hint=param_hint)


def _parse_datum(ctx, param, value):
    return _parse('--group', coxeter.parse_datum, value)


def output_options(func):
    func = click.option('-o', '--output',
                        type=click.Path(dir_okay=False, writable=True),
                        help='Write the report stream to a file instead of stdout.')(func)
    func = click.option('--json/--tsv', 'as_json',
                        default=True,
                        show_default=True,
                        help='Newline-delimited JSON or a tab separated table.')(func)
    func = click.option('-v', 'verbose',
                        count=True,
                        help='Configure logging verbosity.')(func)
    func = click.option('--log-file',
                        type=click.Path(dir_okay=False, writable=True),
                        help='Also write serialized log records to this file.')(func)
    func = click.option('--pdb', 'with_debugger',
                        is_flag=True,
                        help='Drop into python debugger if an error occurs.')(func)
    return func


def check_options(func):
    func = click.option('--strict',
                        is_flag=True,
                        help='Treat inconclusive checks as failures.')(func)
    func = click.option('--timings',
                        is_flag=True,
                        help='Report measured runtimes instead of 0.')(func)
    return func


def oracle_options(func):
    func = click.option('--bound',
                        type=click.IntRange(min=1),
                        help=f'Maximum number of flags to enumerate (overrides {metadata.FLAG_BOUND_ENV_VAR}).')(func)
    func = click.option('--workers',
                        type=click.IntRange(min=1),
                        default=1,
                        show_default=True,
                        help='Run independent checks in this many processes.')(func)
    return func


def group_options(func):
    func = click.option('--twist', 'twist_text',
                        default='1',
                        show_default=True,
                        help='"1", a shorthand like "2A3" or "3D4", or a map like "0>2,2>0".')(func)
    func = click.option('-g', '--group', 'datum',
                        required=True,
                        callback=_parse_datum,
                        help='A type label like "A3" or a JSON Coxeter matrix.')(func)
    return func


def _output_format(as_json: bool) -> str:
    return results.OUTPUT_FORMATS[0] if as_json else results.OUTPUT_FORMATS[1]


def _run(application: Callable, with_debugger: bool, *args):
    main = handle_exceptions(application, logger, with_debugger=with_debugger)
    sys.exit(main(*args))


@click.group()
def dlconn():
    """Connectedness of Deligne-Lusztig varieties: criteria, counts and brute-force checks."""


@dlconn.command()
@group_options
@click.option('--set', 'set_text',
              help='Comma separated generator indices I.')
@click.option('--w', 'word',
              help='A dot separated reduced word; its support is used as I.')
@output_options
def criterion(datum, twist_text: str, set_text: Optional[str], word: Optional[str], output: Optional[str],
              as_json: bool, verbose: int, log_file: Optional[str], with_debugger: bool) -> None:
    """Decides whether X(id) and the X(s), s in I, have connected closure."""
    configure_logging_to_terminal(verbose, log_file)
    if (set_text is None) == (word is None):
        raise click.UsageError('Specify exactly one of --set and --w.')
    t = _parse('--twist', twist.parse_twist, datum, twist_text)
    I = _parse('--set', coxeter.parse_generator_set, datum, set_text) if set_text is not None else None
    w = _parse('--w', coxeter.parse_element, datum, word) if word is not None else None
    _run(build_criterion, with_debugger, t, I, w, output, _output_format(as_json))


@dlconn.command()
@group_options
@click.option('--set', 'set_text',
              help='A sigma-stable set J; N(W_J) is reported. Defaults to S.')
@click.option('--table',
              is_flag=True,
              help='Report N(W_J) for every sigma-stable J instead of one set.')
@click.option('--w', 'words',
              multiple=True,
              help='Report the component count of X(w). May be repeated.')
@click.option('--q', 'qs',
              type=int,
              multiple=True,
              default=(2,),
              show_default=True,
              help='Evaluate at q. May be repeated.')
@output_options
def count(datum, twist_text: str, set_text: Optional[str], table: bool, words: Tuple[str, ...],
          qs: Tuple[int, ...], output: Optional[str], as_json: bool, verbose: int, log_file: Optional[str],
          with_debugger: bool) -> None:
    """N-polynomials and connected component counts."""
    configure_logging_to_terminal(verbose, log_file)
    if table and set_text is not None:
        raise click.UsageError('Specify at most one of --set and --table.')
    t = _parse('--twist', twist.parse_twist, datum, twist_text)
    J = _parse('--set', coxeter.parse_generator_set, datum, set_text) if set_text is not None else None
    if J is not None and not twist.is_sigma_stable(t, J):
        raise click.BadParameter(f'{sorted(J)} is not stable under the twist {t.sigma.label}.', param_hint='--set')
    ws = [_parse('--w', coxeter.parse_element, datum, word) for word in words]
    if any(q < 2 for q in qs):
        raise click.BadParameter(f'q must be at least 2, got {list(qs)}.', param_hint='--q')
    _run(build_counts, with_debugger, t, J, table, ws, qs, output, _output_format(as_json))


@dlconn.command()
@group_options
@check_options
@output_options
def steinberg(datum, twist_text: str, strict: bool, timings: bool,
              output: Optional[str], as_json: bool, verbose: int, log_file: Optional[str], with_debugger: bool) -> None:
    """Verifies the Coxeter structure of the fixed group W^sigma."""
    configure_logging_to_terminal(verbose, log_file)
    t = _parse('--twist', twist.parse_twist, datum, twist_text)
    _run(build_steinberg, with_debugger, t, strict, output, _output_format(as_json), timings)


@dlconn.command()
@click.option('-r', '--realization', 'realization_text',
              required=True,
              help='"GL<n>@q=<q>" or "U<n>@q=<q>", 2 <= n <= 4.')
@click.option('-c', '--check', 'check_names',
              multiple=True,
              type=click.Choice(statements.ORACLE_CHECK_NAMES),
              help='Checks to run. Defaults to all. May be repeated.')
@click.option('--set', 'set_texts',
              multiple=True,
              help='Generator set I for the theorem check. May be repeated.')
@click.option('--w', 'words',
              multiple=True,
              help='Element w for the fibers and closure checks. May be repeated.')
@click.option('--s', 'ss',
              type=int,
              multiple=True,
              help='Generator s for the lemma, x1 and bridge checks. May be repeated.')
@click.option('--m', 'm',
              type=int,
              help='Extension level; defaults to 2 for GL and 1 for U.')
@click.option('--max-level',
              type=int,
              default=metadata.DEFAULT_LEVEL_CAP,
              show_default=True,
              help='Highest level the fibers check escalates to.')
@check_options
@oracle_options
@output_options
def verify(realization_text: str, check_names: Tuple[str, ...], set_texts: Tuple[str, ...], words: Tuple[str, ...],
           ss: Tuple[int, ...], m: Optional[int], max_level: int, strict: bool, timings: bool,
           bound: Optional[int], workers: int, output: Optional[str], as_json: bool, verbose: int,
           log_file: Optional[str], with_debugger: bool) -> None:
    """Runs brute-force flag variety checks for one realization."""
    configure_logging_to_terminal(verbose, log_file)
    if m is not None and m < 1:
        raise click.BadParameter(f'must be positive, got {m}.', param_hint='--m')
    if max_level < (m or 1):
        raise click.BadParameter(f'must be at least the level {m or 1}, got {max_level}.', param_hint='--max-level')
    r = _parse('--realization', flags.parse_realization, realization_text, [1], bound)
    datum = flags.weyl_datum(r)
    sets = [_parse('--set', coxeter.parse_generator_set, datum, text) for text in set_texts]
    ws = [_parse('--w', coxeter.parse_element, datum, word) for word in words]
    for s in ss:
        _parse('--s', coxeter.as_generator_set, datum, [s])
    entries = verification_entries(r, check_names, sets, ws, ss, m, max_level)
    _run(build_verification, with_debugger, entries, workers, bound, strict, output, _output_format(as_json), timings)


@dlconn.command(name='all')
@click.option('--suite', 'suite_path',
              type=click.Path(exists=True, dir_okay=False),
              default=str(paths.DEFAULT_SUITE),
              show_default=True,
              help='Suite specification to run.')
@check_options
@oracle_options
@output_options
def run_all(suite_path: str, strict: bool, timings: bool, bound: Optional[int], workers: int,
            output: Optional[str], as_json: bool, verbose: int, log_file: Optional[str], with_debugger: bool) -> None:
    """Runs every entry of a suite specification."""
    configure_logging_to_terminal(verbose, log_file)
    _run(build_suite, with_debugger, suite_path, workers, bound, strict, output, _output_format(as_json), timings)
