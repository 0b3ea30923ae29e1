# -*- coding: utf-8 -*-

"""
Verification of the PDA conditions, regularity and cyclic star structure.
"""

from collections import Counter

import ppmadc.conditions  # noqa: F401  registers the condition checks
from .api import CONDITIONS
from .pda import PdaParams
from .tools import run_with_view
from .view import ArrayView


def collect_violations(array, disable=()):
    """
    Returns the first violation of every condition that fails, in the order
    A1, A2, A3. Conditions whose code is listed in ``disable`` are skipped.
    """
    view = ArrayView(array)
    violations = []
    for condition in CONDITIONS:
        if condition.code in disable:
            continue
        found = next(iter(run_with_view(condition.check, view)), None)
        if found is not None:
            violations.append(found)
    return violations


def verify_pda(array) -> PdaParams:
    violations = collect_violations(array)
    if violations:
        raise violations[0]

    view = ArrayView(array)
    return PdaParams(array.cols, array.rows, view.star_counts[0],
                     view.max_label)


def check_regularity(array):
    multiplicities = set(Counter(
        entry for _, _, entry in array.positions()
        if isinstance(entry, int)).values())
    if len(multiplicities) != 1:
        return None
    return multiplicities.pop()


def _block_start(stars, rows):
    """
    Start row of a cyclically consecutive block of stars, None when the
    column is all stars or has none, False when the stars are scattered.
    """
    if not stars or len(stars) == rows:
        return None

    members = set(stars)
    starts = [row for row in stars
              if (row - 2) % rows + 1 not in members]
    if len(starts) != 1:
        return False
    return starts[0]


def check_l_cyclic(array, l) -> bool:
    starts = [_block_start(array.star_rows(col), array.rows)
              for col in range(1, array.cols + 1)]

    if any(start is False for start in starts):
        return False

    for start, following in zip(starts, starts[1:]):
        if start is None or following is None:
            if start is not following:
                return False
            continue
        if (start + l - following) % array.rows:
            return False

    return True


def find_cyclic_shift(array):
    for shift in range(1, array.rows + 1):
        if check_l_cyclic(array, shift):
            return shift
    return None


def inspect_pda(array) -> PdaParams:
    """verify_pda plus the regularity degree and the smallest cyclic shift."""
    params = verify_pda(array)
    regularity = check_regularity(array)
    shift = find_cyclic_shift(array) if regularity is not None else None
    return params._replace(g=regularity, l=shift)
