# -*- coding: utf-8 -*-

from collections import defaultdict
from functools import cached_property

from .pda import STAR


class ArrayView:
    """
    Derived views of a PDA, computed on first use and shared by all
    condition checks run against the same array.
    """
    def __init__(self, array):
        self._array = array

    @property
    def array(self):
        return self._array

    @cached_property
    def star_counts(self):
        return [len(self._array.star_rows(col))
                for col in range(1, self._array.cols + 1)]

    @cached_property
    def label_positions(self):
        positions = defaultdict(list)
        for row, col, entry in self._array.positions():
            if entry is not STAR:
                positions[entry].append((row, col))
        return dict(sorted(positions.items()))

    @cached_property
    def labels(self):
        return set(self.label_positions)

    @property
    def max_label(self):
        return max(self.labels, default=0)
