import csv
from typing import IO, Sequence

import numpy as np

from .numbers import render_bits


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return '1' if value else '0'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)) or value is None:
        return render_bits(None if value is None else float(value))
    return str(value)


def write_table(header: Sequence[str], rows: Sequence[Sequence], stream: IO[str]) -> None:
    """CSV with a header line, floats at 9 decimals, booleans as 0/1."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
