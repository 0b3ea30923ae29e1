# -*- coding: utf-8 -*-

from ppmadc.pda import STAR, PdaArray

S = STAR

SUBSETS_3_2 = PdaArray([
    [S, S, 1],
    [S, 1, S],
    [1, S, S],
])

CYCLIC_6_2_TEXT = (
    "* 6 12 10 5 *\n"
    "* * 1 7 11 6\n"
    "1 * * 2 8 12\n"
    "7 2 * * 3 9\n"
    "10 8 3 * * 4\n"
    "5 11 9 4 * *\n"
)

CYCLIC_5_1 = PdaArray([
    [S, 1, 6, 9, 5],
    [1, S, 2, 7, 10],
    [6, 2, S, 3, 8],
    [9, 7, 3, S, 4],
    [5, 10, 8, 4, S],
])

# The cyclic 6x6 array with label 6 at (1, 2) overwritten by 1
CORRUPTED_TEXT = CYCLIC_6_2_TEXT.replace("* 6 12", "* 1 12", 1)
