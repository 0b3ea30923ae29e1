# -*- coding: utf-8 -*-

"""
Audit of the query privacy: the law of a broadcast query must not depend on
the demand it hides once the private column is unknown to the observer.

Laws are computed as exact rationals by enumeration; above the exact limit
the protocol's sampler is checked against the uniform law with a chi-square
statistic.
"""

import logging
from collections import Counter, defaultdict, namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Dict, Tuple

import numpy as np
from scipy import stats

from .errors import ParamError, PrivacyViolation
from .protocol import generate_query


logger = logging.getLogger(__name__)

EXACT_LIMIT = 6


@dataclass(frozen=True)
class QueryDistribution:
    Q: int
    probabilities: Dict[Tuple[int, ...], Fraction]

    def __post_init__(self):
        if sum(self.probabilities.values()) != 1:
            raise ValueError("probabilities do not sum to 1")

    def __getitem__(self, perm):
        return self.probabilities.get(tuple(perm), Fraction(0))

    def support(self):
        return set(self.probabilities)

    def is_uniform(self):
        cells = factorial(self.Q)
        return (len(self.probabilities) == cells and
                all(p == Fraction(1, cells)
                    for p in self.probabilities.values()))


def _uniform_prior(Q):
    return tuple(Fraction(1, Q) for _ in range(Q))


def query_law(Q, d, a):
    """Law of generate_query(d, a, Q, .).

    Uniform on the permutations that place d at position a.
    """
    others = [q for q in range(1, Q + 1) if q != d]
    weight = Fraction(1, factorial(Q - 1))
    law = {}
    for order in permutations(others):
        perm = list(order)
        perm.insert(a - 1, d)
        law[tuple(perm)] = weight
    return law


@lru_cache(maxsize=None)
def _marginal(Q, d, prior):
    probabilities = defaultdict(Fraction)
    for a, weight in enumerate(prior, 1):
        if weight:
            for perm, p in query_law(Q, d, a).items():
                probabilities[perm] += weight * p
    return QueryDistribution(Q, dict(sorted(probabilities.items())))


def exact_query_distribution(Q, d, prior=None) -> QueryDistribution:
    """
    Law of a query hiding demand ``d`` when its column is drawn from
    ``prior`` (uniform over [Q] unless given).
    """
    if not 1 <= d <= Q:
        raise ParamError(f"d={d} outside [1, {Q}]")
    prior = _uniform_prior(Q) if prior is None else tuple(
        Fraction(weight) for weight in prior)
    if len(prior) != Q or sum(prior) != 1:
        raise ParamError(f"prior must be {Q} weights summing to 1")
    return _marginal(Q, d, prior)


def total_variation(first, second):
    cells = first.support() | second.support()
    return sum((abs(first[perm] - second[perm]) for perm in cells),
               Fraction(0)) / 2


def joint_query_distribution(Q, demands, prior=None):
    """
    Joint law of the queries of reducers with the given demands, each
    column drawn independently from ``prior``.
    """
    prior = _uniform_prior(Q) if prior is None else tuple(
        Fraction(weight) for weight in prior)
    joint = defaultdict(Fraction)
    for columns in product(range(1, Q + 1), repeat=len(demands)):
        weight = Fraction(1)
        for column in columns:
            weight *= prior[column - 1]
        if not weight:
            continue
        laws = [query_law(Q, d, a) for d, a in zip(demands, columns)]
        for cells in product(*(law.items() for law in laws)):
            p = weight
            for _, cell_p in cells:
                p *= cell_p
            joint[tuple(perm for perm, _ in cells)] += p
    return dict(joint)


def _factorizes(Q, demands, prior):
    joint = joint_query_distribution(Q, demands, prior)
    marginals = [exact_query_distribution(Q, d, prior) for d in demands]
    for cells in product(*(marginal.support() for marginal in marginals)):
        expected = Fraction(1)
        for marginal, perm in zip(marginals, cells):
            expected *= marginal[perm]
        if joint.get(cells, Fraction(0)) != expected:
            return False
    return True


def independent_columns(prior):
    """Joint law of (a_k, a_j) when both columns are drawn from ``prior``."""
    return {(a_k, a_j): p_k * p_j
            for a_k, p_k in enumerate(prior, 1) if p_k
            for a_j, p_j in enumerate(prior, 1) if p_j}


def conditional_query_distribution(Q, d, observer, coupling):
    """
    Law of reducer j's query hiding ``d`` as seen by an observer whose own
    column is ``observer``. ``coupling`` is the joint law of the observer's
    column and reducer j's column.
    """
    if not 1 <= d <= Q:
        raise ParamError(f"d={d} outside [1, {Q}]")
    evidence = sum((p for (a_k, _), p in coupling.items()
                    if a_k == observer), Fraction(0))
    if not evidence:
        raise ParamError(f"observer column {observer} has probability 0")

    probabilities = defaultdict(Fraction)
    for (a_k, a_j), weight in coupling.items():
        if a_k != observer or not weight:
            continue
        for perm, p in query_law(Q, d, a_j).items():
            probabilities[perm] += weight * p / evidence
    return QueryDistribution(Q, dict(sorted(probabilities.items())))


def _coupling(Q, prior, coupling):
    if coupling is None:
        prior = _uniform_prior(Q) if prior is None else tuple(
            Fraction(weight) for weight in prior)
        if len(prior) != Q or sum(prior) != 1:
            raise ParamError(f"prior must be {Q} weights summing to 1")
        return independent_columns(prior)

    coupling = {columns: Fraction(weight)
                for columns, weight in coupling.items()}
    if sum(coupling.values()) != 1 or any(
            not 1 <= a <= Q for columns in coupling for a in columns):
        raise ParamError(
            f"coupling must be a law over column pairs of [{Q}]")
    return coupling


AuditReport = namedtuple(
    "AuditReport",
    ["Q", "K", "contexts", "pairs", "max_tv", "factorizes", "mode"])


def audit_independence(Q, K, prior=None, coupling=None,
                       joint_limit=3) -> AuditReport:
    """
    Checks that, for every column a_k an observer may hold, the law of
    another reducer's query given a_k is the same whatever that reducer's
    demand is.

    Columns are drawn from ``coupling``, a joint law of (a_k, a_j), or
    independently from ``prior`` when no coupling is given. The observer's
    demand d_k and query y_k only enter the observer's own sampler, so a_k
    is the whole of its context that reducer j's query can depend on.
    """
    if Q < 1 or K < 2:
        raise ParamError(f"Q >= 1 and K >= 2 required (Q={Q}, K={K})")
    coupled = coupling is not None
    coupling = _coupling(Q, prior, coupling)

    observers = sorted({a_k for (a_k, _), p in coupling.items() if p})
    pairs = 0
    max_tv = Fraction(0)
    for observer in observers:
        laws = {d: conditional_query_distribution(Q, d, observer, coupling)
                for d in range(1, Q + 1)}
        for d, d_prime in combinations(range(1, Q + 1), 2):
            pairs += 1
            distance = total_variation(laws[d], laws[d_prime])
            max_tv = max(max_tv, distance)
            if distance:
                logger.debug("observer column %d: tv(%d, %d) = %s",
                             observer, d, d_prime, distance)
                raise PrivacyViolation(d, d_prime, distance, observer)

    factorizes = None
    if not coupled and K <= joint_limit and Q <= joint_limit:
        others = K - 1
        factorizes = all(
            _factorizes(Q, demands, prior)
            for demands in product(range(1, Q + 1), repeat=others))

    return AuditReport(Q, K, len(observers), pairs, max_tv, factorizes,
                       "exact")


def chi_square_threshold(Q, quantile=0.999):
    cells = factorial(Q)
    if cells == 1:
        return 0.0
    return float(stats.chi2.ppf(quantile, cells - 1))


def _perm_rank(perm):
    """Lehmer rank of a permutation of [Q], 0-based."""
    rank = 0
    remaining = sorted(perm)
    for position, value in enumerate(perm):
        index = remaining.index(value)
        rank += index * factorial(len(perm) - position - 1)
        remaining.pop(index)
    return rank


def empirical_query_check(Q, d, trials, seed, sampler=generate_query):
    """
    Chi-square statistic of ``trials`` sampled queries against the uniform
    law over all Q! permutations.
    """
    if trials < 1:
        raise ParamError(f"trials >= 1 violated (trials={trials})")
    cells = factorial(Q)
    if cells == 1:
        return 0.0

    rng = np.random.default_rng(seed)
    counts = Counter()
    for _ in range(trials):
        a = int(rng.integers(1, Q + 1))
        counts[_perm_rank(sampler(d, a, Q, rng).perm)] += 1

    observed = np.zeros(cells)
    for rank, count in counts.items():
        observed[rank] = count
    return float(stats.chisquare(observed).statistic)


def audit_sampling(Q, trials, seed, quantile=0.999, sampler=generate_query):
    """Sampling fallback of audit_independence: one statistic per demand."""
    threshold = chi_square_threshold(Q, quantile)
    statistics = {d: empirical_query_check(Q, d, trials, seed + d, sampler)
                  for d in range(1, Q + 1)}
    return statistics, threshold
