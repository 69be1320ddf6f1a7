"""Verification reports and the report stream.

A report ties one executed check to the statement it verifies. Reports are
written as newline-delimited JSON (one object per report, keys sorted) or as
a tab separated table built with pandas.

"""
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, NamedTuple, TextIO

import pandas as pd

from dlconn.constants import metadata, results
from dlconn.exceptions import InvariantViolation


@dataclass
class VerificationReport:
    check_name: str
    statement: str
    parameters: Dict[str, Any]
    verdict: str
    witnesses: List[str]
    runtime_ms: int = 0
    schema: str = metadata.REPORT_SCHEMA_VERSION

    def __post_init__(self):
        if self.verdict not in set(results.VERDICTS):
            raise ValueError(f'Verdict must be one of {list(results.VERDICTS)}. You specified {self.verdict}.')
        if self.verdict == results.VERDICTS.FAIL and not self.witnesses:
            raise InvariantViolation(f'Failing report for {self.check_name} carries no witnesses.')

    @property
    def passed(self) -> bool:
        return self.verdict == results.VERDICTS.PASS

    @property
    def failed(self) -> bool:
        return self.verdict == results.VERDICTS.FAIL

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class CheckRecorder:
    """Collects sub-check outcomes for one check and produces its report.

    Sub-checks either hold, fail with a witness, or are inconclusive. The
    verdict is ``fail`` if any sub-check failed, else ``inconclusive`` if any
    was inconclusive, else ``pass``.

    """

    def __init__(self, check: NamedTuple, parameters: Dict[str, Any]):
        self.check = check
        self.parameters = dict(parameters)
        self.failures: List[str] = []
        self.confirmations: List[str] = []
        self.inconclusive_reasons: List[str] = []
        self._start = time.perf_counter()

    def require(self, sub_check: str, holds: bool, witness: Any = '') -> bool:
        if not holds:
            detail = f': {witness}' if witness != '' else ''
            self.failures.append(f'{sub_check}{detail}')
        return holds

    def confirm(self, fact: str):
        self.confirmations.append(fact)

    def inconclusive(self, reason: str):
        self.inconclusive_reasons.append(reason)

    @property
    def verdict(self) -> str:
        if self.failures:
            return results.VERDICTS.FAIL
        if self.inconclusive_reasons:
            return results.VERDICTS.INCONCLUSIVE
        return results.VERDICTS.PASS

    def report(self) -> VerificationReport:
        verdict = self.verdict
        if verdict == results.VERDICTS.FAIL:
            witnesses = self.failures[:results.MAX_WITNESSES]
            if len(self.failures) > results.MAX_WITNESSES:
                witnesses.append(f'... {len(self.failures) - results.MAX_WITNESSES} more failures')
        else:
            witnesses = self.inconclusive_reasons + self.confirmations
        return VerificationReport(
            check_name=self.check.NAME,
            statement=self.check.STATEMENT,
            parameters=self.parameters,
            verdict=verdict,
            witnesses=witnesses,
            runtime_ms=int(round(1000 * (time.perf_counter() - self._start))),
        )


##################
# Report streams #
##################

def to_json_line(record: Dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, default=str)


def to_frame(records: Iterable[Dict[str, Any]]) -> pd.DataFrame:
    """Flattens report records into a frame; nested values are JSON encoded."""
    rows = []
    for record in records:
        rows.append({key: (json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value)
                     for key, value in record.items()})
    data = pd.DataFrame(rows)
    ordered = [c for c in results.REPORT_COLUMNS if c in data.columns]
    others = sorted(c for c in data.columns if c not in ordered)
    return data[ordered + others]


@dataclass
class ReportStream:
    """Writes records in submission order to a text sink.

    JSON records are written as they arrive; TSV records are buffered and
    written as one table by :meth:`close`.

    """
    sink: TextIO
    output_format: str = 'json'
    timings: bool = False
    records: List[Dict[str, Any]] = field(default_factory=list)

    def __post_init__(self):
        if self.output_format not in results.OUTPUT_FORMATS:
            raise ValueError(f'Output format must be one of {results.OUTPUT_FORMATS}. '
                             f'You specified {self.output_format}.')

    def write(self, record: Dict[str, Any]):
        record = dict(record)
        if 'runtime_ms' in record and not self.timings:
            record['runtime_ms'] = 0
        self.records.append(record)
        if self.output_format == 'json':
            self.sink.write(to_json_line(record) + '\n')

    def write_report(self, report: VerificationReport):
        self.write(report.to_dict())

    def close(self):
        if self.output_format == 'tsv' and self.records:
            to_frame(self.records).to_csv(self.sink, sep='\t', index=False)
        self.sink.flush()
