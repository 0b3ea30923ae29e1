# -*- coding: utf-8 -*-

from itertools import combinations

from .api import BaseCondition
from .errors import A1Violation, A2Violation, A3Violation
from .pda import STAR


class StarCountPerColumn(BaseCondition):
    code = "A1"

    def check(self, star_counts):
        expected = star_counts[0]
        for column, count in enumerate(star_counts, 1):
            if count != expected:
                yield A1Violation(column, count, expected)


class LabelCoverage(BaseCondition):
    code = "A2"

    def check(self, labels, max_label):
        for label in range(1, max_label + 1):
            if label not in labels:
                yield A2Violation(label)


class CrossedPairs(BaseCondition):
    code = "A3"

    def check(self, array, label_positions):
        for positions in label_positions.values():
            for first, second in combinations(positions, 2):
                reason = self._offence(array, first, second)
                if reason:
                    yield A3Violation(first, second, reason)

    @staticmethod
    def _offence(array, first, second):
        (row1, col1), (row2, col2) = first, second
        if row1 == row2:
            return "same row"
        if col1 == col2:
            return "same column"
        if array[row1, col2] is not STAR or array[row2, col1] is not STAR:
            return "cross cell is not a star"
        return None
