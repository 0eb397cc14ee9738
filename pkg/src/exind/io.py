"""Reading and writing single-column series files."""

import csv

import numpy as np

from exind.errors import InvalidInputError

__all__ = ["parse_series", "read_series", "write_series", "log_returns"]


def parse_series(lines, source="<input>"):
    """Parse newline-delimited numbers; a non-numeric first row is a header.

    Blank lines are skipped.  Only the first comma-separated field of each row
    is read.  Row numbers in error messages are 1-based physical lines.
    """
    values = []
    first = True
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        field = next(csv.reader([text]))[0].strip()
        is_first, first = first, False
        try:
            v = float(field)
        except ValueError:
            if is_first:
                continue
            raise InvalidInputError(f"{source}: row {lineno}: not a number: {field!r}") from None
        if not np.isfinite(v):
            raise InvalidInputError(f"{source}: row {lineno}: non-finite value {field!r}")
        values.append(v)
    if not values:
        raise InvalidInputError(f"{source}: no numeric rows")
    return np.asarray(values, dtype=np.float64)


def read_series(path):
    """Read a series file written by :func:`write_series` or by hand."""
    with open(path, encoding="utf-8") as fh:
        return parse_series(fh, source=str(path))


def write_series(values, fh, header="value"):
    """Write one value per row with 17 significant digits (lossless for float64)."""
    if header:
        fh.write(header + "\n")
    for v in np.asarray(values, dtype=np.float64):
        fh.write(f"{v:.17g}\n")


def log_returns(prices, source="<input>"):
    """``log(P_t / P_{t-1})`` of a strictly positive price series.

    Raises
    ------
    InvalidInputError
        On fewer than two prices or a nonpositive price (1-based row number in
        the message).
    """
    p = np.asarray(prices, dtype=np.float64)
    if p.ndim != 1 or p.size < 2:
        raise InvalidInputError(f"{source}: need at least 2 prices")
    bad = np.flatnonzero(~(p > 0))
    if bad.size:
        raise InvalidInputError(f"{source}: price {bad[0] + 1} is not strictly positive ({p[bad[0]]!r})")
    return np.log(p[1:] / p[:-1])
