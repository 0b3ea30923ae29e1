# -*- coding: utf-8 -*-

"""
PDA constructions: the lexicographic subset array, the 1-cyclic 2-regular
array, block extension and the two extended families built from them.
"""

from itertools import combinations
from math import comb

from .errors import OutOfRange, ParamError
from .pda import STAR, PdaArray, PdaParams, transpose
from .verifier import verify_pda


def cyclic_index(a, b):
    """[a]_b, wrapped into 1..b."""
    if b < 1:
        raise ParamError(f"modulus must be positive (got {b})")
    return (a - 1) % b + 1


def cyclic_interval(a, c, b):
    """[a, c]_b as the ordered list [a]_b, [a+1]_b, ..., [a+c]_b."""
    return [cyclic_index(a + offset, b) for offset in range(c + 1)]


def lex_subsets(F, t):
    return list(combinations(range(1, F + 1), t))


def lex_rank(subset, F):
    subset = tuple(subset)
    if not subset:
        raise OutOfRange("cannot rank the empty set")
    if list(subset) != sorted(set(subset)):
        raise OutOfRange(f"{subset} is not sorted and distinct")
    if subset[0] < 1 or subset[-1] > F:
        raise OutOfRange(f"{subset} is not a subset of [{F}]")

    size = len(subset)
    rank = 1
    previous = 0
    for position, element in enumerate(subset, 1):
        for skipped in range(previous + 1, element):
            rank += comb(F - skipped, size - position)
        previous = element
    return rank


def lex_unrank(rank, F, t):
    if not 1 <= t <= F:
        raise OutOfRange(f"subset size {t} outside [1, {F}]")
    if not 1 <= rank <= comb(F, t):
        raise OutOfRange(f"rank {rank} outside [1, {comb(F, t)}]")

    remaining = rank - 1
    subset = []
    element = 1
    for position in range(1, t + 1):
        while remaining >= comb(F - element, t - position):
            remaining -= comb(F - element, t - position)
            element += 1
        subset.append(element)
        element += 1
    return tuple(subset)


def man_pda(F, alpha):
    if not 1 <= alpha <= F - 1:
        raise ParamError(f"alpha in [1, F-1] violated (F={F}, alpha={alpha})")

    return PdaArray(
        [STAR if d in subset else lex_rank(sorted(subset + (d,)), F)
         for d in range(1, F + 1)]
        for subset in lex_subsets(F, alpha))


def _check_cyclic_params(Q, alpha):
    if Q < 2:
        raise ParamError(f"Q >= 2 violated (Q={Q})")
    if alpha < 1:
        raise ParamError(f"alpha > 0 violated (alpha={alpha})")
    if 2 * alpha >= Q:
        raise ParamError(f"alpha < Q/2 violated (Q={Q}, alpha={alpha})")
    if (Q + alpha) % 2:
        raise ParamError(f"Q+alpha even violated (Q={Q}, alpha={alpha})")


def cyclic_pda(Q, alpha):
    _check_cyclic_params(Q, alpha)

    middle = (Q + alpha) // 2
    grid = [[STAR] * (Q + 1) for _ in range(Q + 1)]

    for row in range(alpha + 1, middle + 1):
        start = (row - (alpha + 1)) * Q + 1
        for col in range(1, Q + 1):
            grid[row][col] = start + col - 1

    for j in range(1, middle - alpha + 1):
        source, target, shift = middle - j + 1, middle + j, middle - j
        for col in range(1, Q + 1):
            grid[target][cyclic_index(col + shift, Q)] = grid[source][col]

    shifted = [[STAR] * (Q + 1) for _ in range(Q + 1)]
    for col in range(1, Q + 1):
        for row in range(1, Q + 1):
            shifted[cyclic_index(row + col - 1, Q)][col] = grid[row][col]

    return PdaArray(row[1:] for row in shifted[1:])


def base_array(K):
    """The K x K array with 1 on the diagonal and stars elsewhere."""
    return PdaArray([1 if i == k else STAR for k in range(K)]
                    for i in range(K))


def extend_pda(base, K):
    if K <= 1:
        raise ParamError(f"K > 1 violated (K={K})")
    verify_pda(base)

    outer = base_array(K)
    rows = []
    for block_row in range(1, K + 1):
        for row in range(1, base.rows + 1):
            entries = []
            for block_col in range(1, K + 1):
                if outer[block_row, block_col] is STAR:
                    entries.extend([STAR] * base.cols)
                else:
                    entries.extend(base.row(row))
            rows.append(entries)
    return PdaArray(rows)


def construction1(F, alpha, K):
    return extend_pda(transpose(man_pda(F, alpha)), K)


def construction2(Q, alpha, K):
    return extend_pda(cyclic_pda(Q, alpha), K)


def man_pda_params(F, alpha):
    return PdaParams(F, comb(F, alpha), comb(F - 1, alpha - 1),
                     comb(F, alpha + 1), g=alpha + 1)


def transposed_man_pda_params(F, alpha):
    return PdaParams(comb(F, alpha), F, alpha, comb(F, alpha + 1),
                     g=alpha + 1)


def cyclic_pda_params(Q, alpha):
    return PdaParams(Q, Q, alpha, Q * (Q - alpha) // 2, g=2, l=1)


def extended_params(base, K):
    """Parameters of the K-fold extension of a (K_b, F_b, Z_b, S_b) base."""
    return PdaParams(K * base.K, K * base.F, (K - 1) * base.F + base.Z,
                     base.S)


def construction1_params(F, alpha, K):
    return extended_params(transposed_man_pda_params(F, alpha), K)


def construction2_params(Q, alpha, K):
    return extended_params(cyclic_pda_params(Q, alpha), K)
