"""
Reading and writing CSV/JSON artifacts.

CSV artifacts are a header row plus one record per line. JSON artifacts
carry the same records under "rows", next to a "metadata" block with the
parameters and the filter convention that produced them. Signal inputs may
also be a bare JSON array of {index, value} objects.
"""
import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import tablib
from tablib.exceptions import InvalidDimensions

from apps.filterbank.services import Signal
from ripplets.exceptions import SignalFormatError

from .constants import OutputFormat

logger = logging.getLogger(__name__)


def _plain(value):
    if hasattr(value, 'item'):
        return value.item()
    return str(value)


@dataclass
class Artifact:
    columns: tuple
    rows: list
    metadata: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def dataset(self):
        return tablib.Dataset(*[tuple(row) for row in self.rows], headers=list(self.columns))

    def records(self):
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_dict(self):
        return {
            'metadata': self.metadata,
            'columns': list(self.columns),
            'rows': self.records(),
            'notes': self.notes,
        }

    def render(self, fmt):
        if fmt == OutputFormat.JSON:
            return json.dumps(self.to_dict(), indent=2, default=_plain) + '\n'
        return self.dataset().export('csv')


def write_artifact(text, out=None, stream=None):
    """Write to the path out, or to stream when no path is given."""
    if out:
        try:
            Path(out).write_text(text, encoding='utf-8', newline='')
        except OSError as e:
            raise SignalFormatError(f'Cannot write {out}: {e}') from e
        logger.info(f'Wrote artifact to {out}')
        return
    stream.write(text, ending='')


def read_rows(path):
    """(metadata, records) from a CSV or JSON artifact."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise SignalFormatError(f'Cannot read {path}: {e}') from e

    if path.suffix.lower() == '.json':
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise SignalFormatError(f'{path} is not valid JSON: {e}') from e
        if isinstance(payload, list):
            return {}, payload
        if isinstance(payload, dict) and isinstance(payload.get('rows'), list):
            return payload.get('metadata', {}), payload['rows']
        raise SignalFormatError(f'{path} holds neither a record array nor a "rows" list')

    if not text.strip():
        return {}, []
    try:
        dataset = tablib.Dataset().load(text, format='csv')
    except (csv.Error, InvalidDimensions) as e:
        raise SignalFormatError(f'{path} is not valid CSV: {e}') from e
    return {}, dataset.dict


def _field(record, name, cast):
    try:
        return cast(record[name])
    except (KeyError, TypeError, ValueError) as e:
        raise SignalFormatError(f'Bad or missing "{name}" in record {record!r}') from e


def read_signal(path):
    _, records = read_rows(path)
    pairs = [(_field(r, 'index', int), _field(r, 'value', float)) for r in records]
    return Signal.from_pairs(pairs)


def read_decomposition(path):
    """(level, kind, index, value) tuples from a decomposition artifact."""
    _, records = read_rows(path)
    return [
        (_field(r, 'level', int), _field(r, 'kind', str), _field(r, 'index', int), _field(r, 'value', float))
        for r in records
    ]
