# -*- coding: utf-8 -*-

import csv
import json
from fractions import Fraction


def exact(value):
    """Fraction as "p/q" (or "p") plus its decimal rendering."""
    value = Fraction(value)
    return str(value), f"{float(value):.12g}"


def _cell(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def write_rows(rows, fmt, stream):
    if fmt == "json":
        json.dump([{key: _cell(value) for key, value in row.items()}
                   for row in rows], stream, indent=2, sort_keys=True)
        stream.write("\n")
        return

    if not rows:
        return
    writer = csv.DictWriter(stream, fieldnames=list(rows[0]),
                            lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(value) for key, value in row.items()})
