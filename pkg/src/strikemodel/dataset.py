"""Private universities founded and public-university strike days per
two-year period, 1999-2022.

The rows are bundled as printed. The printed TOTAL row gives 111 private
universities and 1,323 strike days; the strike-day rows themselves sum to
1,533 (the first eleven periods sum to 1,323), so loading with the printed
totals as the check raises :class:`TotalsMismatchError`. Pass
``expected_totals=None`` to load without the check.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources

HEADER = ["period", "start_year", "end_year", "private_universities", "strike_days"]
EXPECTED_RECORDS = 12
PRINTED_TOTALS = (111, 1323)


class DatasetError(ValueError):
    def __init__(self, message: str, row: int | None = None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class TotalsMismatchError(DatasetError):
    def __init__(self, message: str, computed: tuple[int, int], expected: tuple[int, int]):
        super().__init__(message)
        self.computed = computed
        self.expected = expected


@dataclass(frozen=True)
class StrikeRecord:
    period_label: str
    start_year: int
    end_year: int
    private_universities: int
    strike_days: int


def totals(records) -> tuple[int, int]:
    return (
        sum(r.private_universities for r in records),
        sum(r.strike_days for r in records),
    )


def _int(text: str, name: str, row: int) -> int:
    try:
        return int(text.strip().replace(",", ""))
    except ValueError:
        raise DatasetError(f"{name} is not an integer: {text!r}", row) from None


def load_table1(
    csv_text: str,
    expected_totals: tuple[int, int] | None = PRINTED_TOTALS,
    expected_records: int | None = EXPECTED_RECORDS,
) -> list[StrikeRecord]:
    """Parse the strike table from CSV text.

    Row numbers in errors count the header as row 1.
    """
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DatasetError("empty input, expected a header row") from None
    if header != HEADER:
        raise DatasetError(f"header must be {','.join(HEADER)!r}, got {','.join(header)!r}", 1)

    records = []
    for rowno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(HEADER):
            raise DatasetError(f"expected {len(HEADER)} fields, got {len(row)}", rowno)
        label = row[0].strip()
        start, end, unis, days = (_int(v, n, rowno) for v, n in zip(row[1:], HEADER[1:]))
        if start > end:
            raise DatasetError(f"start_year {start} after end_year {end}", rowno)
        if unis < 0 or days < 0:
            raise DatasetError("counts must be >= 0", rowno)
        records.append(StrikeRecord(label, start, end, unis, days))

    if not records:
        raise DatasetError("no records")
    if expected_records is not None and len(records) != expected_records:
        raise DatasetError(f"expected {expected_records} records, got {len(records)}")
    if expected_totals is not None:
        got = totals(records)
        if got != tuple(expected_totals):
            raise TotalsMismatchError(
                f"totals (private_universities, strike_days) = {got}, expected {tuple(expected_totals)}",
                got,
                tuple(expected_totals),
            )
    return records


def bundled_csv() -> str:
    return resources.files("strikemodel").joinpath("data/table1.csv").read_text(encoding="utf-8")


def load_bundled(expected_totals: tuple[int, int] | None = None) -> list[StrikeRecord]:
    """Bundled rows, by default without the printed-totals check."""
    return load_table1(bundled_csv(), expected_totals=expected_totals)
