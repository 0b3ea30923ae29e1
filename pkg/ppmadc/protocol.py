# -*- coding: utf-8 -*-

"""
Private map/shuffle/reduce rounds of the alpha-connect and alpha-cyclic
partial private mapper assignment models.

Mapper block k holds the batches Batch(k, 1) .. Batch(k, F), F being the rows
of the inner PDA. Reducer k impersonates column a_k of column block k of the
extended PDA and broadcasts a query permutation that hides its demand d_k
among all Q functions.
"""

import hashlib
import json
import logging
from collections import defaultdict, namedtuple
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Optional, Tuple

import numpy as np

from .bits import BitString
from .constructions import (
    cyclic_interval, cyclic_index, cyclic_pda, extend_pda, lex_rank, man_pda)
from .errors import (
    AccessMismatch, DecodeFailure, DivisibilityError, IncompleteInput,
    InfeasibleTransmission, LoadMismatch, OutputMismatch, ParamError)
from .pda import STAR, PdaArray, PdaParams, transpose
from .verifier import verify_pda


logger = logging.getLogger(__name__)


class Model(Enum):
    CONNECT = "connect"
    CYCLIC = "cyclic"


Batch = namedtuple("Batch", ["block", "row"])

Assignment = namedtuple("Assignment", ["demand", "column"])

Demand = namedtuple("Demand", ["function", "batch", "label"])

PacketId = namedtuple("PacketId", ["function", "batch", "superscript"])


@dataclass(frozen=True)
class InstanceConfig:
    """
    ``inner`` is F for the connect model (Q = C(F, alpha) is derived) and Q
    for the cyclic model. ``beta`` defaults to 8*(K-1), ``b_out`` to beta.
    """
    model: Model
    K: int
    inner: int
    alpha: int
    eta: int = 1
    beta: Optional[int] = None
    b_out: Optional[int] = None
    d_file: int = 64
    seed: int = 0
    Q: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        if self.beta is None:
            object.__setattr__(self, "beta", 8 * max(self.K - 1, 1))
        if self.b_out is None:
            object.__setattr__(self, "b_out", self.beta)

    @property
    def functions(self):
        if self.model is Model.CONNECT:
            return comb(self.inner, self.alpha)
        return self.inner

    @property
    def rows_per_block(self):
        return self.inner

    @property
    def files(self):
        return self.K * self.inner * self.eta

    def validate(self):
        if self.K < 2:
            raise ParamError(f"K >= 2 violated (K={self.K})")
        if self.model is Model.CONNECT:
            if not 1 <= self.alpha <= self.inner - 1:
                raise ParamError(
                    f"alpha in [1, F-1] violated "
                    f"(F={self.inner}, alpha={self.alpha})")
            if self.Q is not None and self.Q != self.functions:
                raise ParamError(
                    f"Q = C(F, alpha) = {self.functions} violated "
                    f"(Q={self.Q})")
        else:
            if self.alpha < 1 or 2 * self.alpha >= self.inner:
                raise ParamError(
                    f"alpha < Q/2 violated "
                    f"(Q={self.inner}, alpha={self.alpha})")
            if (self.inner + self.alpha) % 2:
                raise ParamError(
                    f"Q+alpha even violated "
                    f"(Q={self.inner}, alpha={self.alpha})")
            if self.Q is not None and self.Q != self.inner:
                raise ParamError(f"Q={self.Q} contradicts inner={self.inner}")
        if self.eta < 1 or self.beta < 1 or self.b_out < 1:
            raise ParamError("eta, beta and b_out must be positive")
        if (self.eta * self.beta) % (self.K - 1):
            raise DivisibilityError(self.eta, self.beta, self.K - 1)
        return self

    def inner_pda(self):
        if self.model is Model.CONNECT:
            return transpose(man_pda(self.inner, self.alpha))
        return cyclic_pda(self.inner, self.alpha)


@dataclass(frozen=True)
class MadcInstance:
    config: InstanceConfig
    pda: PdaArray
    inner_pda: PdaArray
    params: PdaParams
    assignments: Tuple[Assignment, ...]
    connections: Tuple[frozenset, ...]

    @property
    def K(self):
        return self.config.K

    @property
    def Q(self):
        return self.inner_pda.cols

    @property
    def F(self):
        return self.inner_pda.rows

    @property
    def S(self):
        return self.params.S

    @property
    def N(self):
        return self.config.files

    def mapper(self, k, f):
        """Global id of the mapper that stores Batch(k, f)."""
        return (k - 1) * self.F + f

    @property
    def mappers(self):
        return self.K * self.F

    def stored_batch(self, mapper):
        return Batch((mapper - 1) // self.F + 1, (mapper - 1) % self.F + 1)

    def mapped_files(self, mapper):
        """Files whose IVs the mapper computes: those of its stored batch."""
        return self.batch_files(self.stored_batch(mapper))

    def batches(self):
        return [Batch(k, f) for k in range(1, self.K + 1)
                for f in range(1, self.F + 1)]

    def batch_files(self, batch):
        first = (self.mapper(*batch) - 1) * self.config.eta + 1
        return tuple(range(first, first + self.config.eta))

    def column_of(self, k, i):
        return (k - 1) * self.Q + i

    def batch_of_row(self, row):
        return Batch((row - 1) // self.F + 1, (row - 1) % self.F + 1)

    def other_blocks(self, k):
        return [j for j in range(1, self.K + 1) if j != k]


def build_instance(config, connectivity, demands=None) -> MadcInstance:
    config.validate()

    inner = config.inner_pda()
    params = verify_pda(inner)
    pda = extend_pda(inner, config.K)
    Q = inner.cols

    if len(connectivity) != config.K:
        raise ParamError(
            f"expected connectivity for {config.K} reducers, "
            f"got {len(connectivity)}")
    if demands is None:
        demands = [cyclic_index(k, Q) for k in range(1, config.K + 1)]
    if len(demands) != config.K or any(not 1 <= d <= Q for d in demands):
        raise ParamError(f"demands must be {config.K} indices in [1, {Q}]")

    assignments, connections = [], []
    for k, (private, demand) in enumerate(zip(connectivity, demands), 1):
        column, rows = _impersonated_column(config, private)
        if set(inner.star_rows(column)) != rows:
            raise AccessMismatch(k, rows, inner.star_rows(column))
        assignments.append(Assignment(demand, column))
        connections.append(rows)

    logger.debug("built %s instance K=%d inner=%d alpha=%d (S=%d)",
                 config.model.value, config.K, config.inner, config.alpha,
                 params.S)
    return MadcInstance(config, pda, inner, params, tuple(assignments),
                        tuple(connections))


def _impersonated_column(config, private):
    if config.model is Model.CONNECT:
        subset = tuple(sorted(set(private)))
        if len(subset) != config.alpha or len(subset) != len(tuple(private)):
            raise ParamError(
                f"connectivity {private} is not an {config.alpha}-subset")
        return lex_rank(subset, config.inner), frozenset(subset)

    start = int(private)
    if not 1 <= start <= config.inner:
        raise ParamError(f"start index {start} outside [1, {config.inner}]")
    rows = cyclic_interval(start, config.alpha - 1, config.inner)
    return start, frozenset(rows)


def accessible_batches(inst, k):
    column = inst.column_of(k, inst.assignments[k - 1].column)
    return frozenset(inst.batch_of_row(row)
                     for row in inst.pda.star_rows(column))


def missing_batches(inst, k):
    return frozenset(inst.batches()) - accessible_batches(inst, k)


@lru_cache(maxsize=1 << 16)
def _keyed_bits(seed, q, n, beta):
    key = repr(seed).encode()[:64]
    stream = b""
    block = 0
    while len(stream) * 8 < beta:
        stream += hashlib.blake2b(f"{q}:{n}:{block}".encode(),
                                  key=key).digest()
        block += 1
    return int.from_bytes(stream, "big") >> (len(stream) * 8 - beta)


@dataclass(frozen=True)
class IvOracle:
    """Stands in for the map functions: the IV of (q, n) is a keyed hash."""
    seed: int
    beta: int

    def iv(self, q, n):
        return BitString(_keyed_bits(self.seed, q, n, self.beta), self.beta)

    def aggregate(self, q, files):
        return BitString.concat(self.iv(q, n) for n in files)

    def output(self, q, N, width):
        folded = BitString.zeros(self.beta)
        for n in range(1, N + 1):
            folded ^= self.iv(q, n)
        return folded.fit(width)


@dataclass(frozen=True)
class Query:
    owner: int
    perm: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ParamError(f"{self.perm} is not a permutation")

    def __getitem__(self, index):
        return self.perm[index - 1]

    def __len__(self):
        return len(self.perm)

    @classmethod
    def fixed(cls, owner, perm, demand, column):
        query = cls(owner, tuple(perm))
        if query[column] != demand:
            raise ParamError(
                f"query {query.perm} does not hold {demand} at slot {column}")
        return query


def generate_query(d, a, Q, rng, owner=None) -> Query:
    if not (1 <= d <= Q and 1 <= a <= Q):
        raise ParamError(f"d={d} and a={a} must lie in [1, {Q}]")
    others = [q for q in range(1, Q + 1) if q != d]
    perm = [int(q) for q in rng.permutation(others)] if others else []
    perm.insert(a - 1, d)
    return Query(owner, tuple(perm))


def _packet_width(inst):
    return inst.config.eta * inst.config.beta // (inst.K - 1)


def _label_cells(inner):
    cells = defaultdict(list)
    for row, col, entry in inner.positions():
        if entry is not STAR:
            cells[entry].append((row, col))
    return cells


def demand_table(inst, queries):
    """Maps (block j, column i, row f) to the aggregated symbol demanded."""
    table = {}
    for j in range(1, inst.K + 1):
        for f, i, label in inst.inner_pda.positions():
            if label is STAR:
                continue
            table[(j, i, f)] = Demand(queries[j - 1][i], Batch(j, f), label)
    return table


class _LocalStore:
    """The IVs one reducer can compute from the batches it reaches."""

    def __init__(self, inst, k, oracle):
        self._inst = inst
        self._oracle = oracle
        self.k = k
        self.accessible = accessible_batches(inst, k)

    def can_compute(self, batch):
        return batch in self.accessible

    def aggregate(self, function, batch):
        return self._oracle.aggregate(function,
                                      self._inst.batch_files(batch))

    def packet(self, packet):
        superscripts = self._inst.other_blocks(packet.batch.block)
        parts = self.aggregate(packet.function, packet.batch).split(
            len(superscripts))
        return parts[superscripts.index(packet.superscript)]


@dataclass(frozen=True)
class CodedSymbol:
    sender: int
    label: int
    payload: BitString
    packets: frozenset


@dataclass(frozen=True)
class ShuffleTranscript:
    symbols: Tuple[CodedSymbol, ...]
    _index: Dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {
            (symbol.sender, symbol.label): symbol for symbol in self.symbols})

    def symbol(self, k, t):
        return self._index[(k, t)]

    @property
    def total_bits(self):
        return sum(symbol.payload.width for symbol in self.symbols)


def _check_queries(inst, queries):
    if len(queries) != inst.K or any(len(query) != inst.Q
                                     for query in queries):
        raise ParamError(
            f"expected {inst.K} queries, each a permutation of [{inst.Q}]")


def _coded_packets(inst, queries, cells, sender):
    for j in inst.other_blocks(sender):
        for f, i in cells:
            yield PacketId(queries[j - 1][i], Batch(j, f), sender)


def shuffle_round(inst, queries, oracle) -> ShuffleTranscript:
    _check_queries(inst, queries)
    cells = _label_cells(inst.inner_pda)
    width = _packet_width(inst)

    symbols = []
    for k in range(1, inst.K + 1):
        store = _LocalStore(inst, k, oracle)
        for t in range(1, inst.S + 1):
            payload = BitString.zeros(width)
            packets = []
            for packet in _coded_packets(inst, queries, cells[t], k):
                if not store.can_compute(packet.batch):
                    raise InfeasibleTransmission(k, t, packet)
                payload ^= store.packet(packet)
                packets.append(packet)
            symbols.append(CodedSymbol(k, t, payload, frozenset(packets)))

    logger.debug("shuffle produced %d coded symbols", len(symbols))
    return ShuffleTranscript(tuple(symbols))


def decode_reducer(inst, k, transcript, queries, oracle):
    """Returns {n: IV of (d_k, n)} for every file n, decoded by reducer k."""
    store = _LocalStore(inst, k, oracle)
    cells = _label_cells(inst.inner_pda)
    demand, column = inst.assignments[k - 1]

    decoded = {}
    for batch in sorted(store.accessible):
        for n in inst.batch_files(batch):
            decoded[n] = oracle.iv(demand, n)

    for f in range(1, inst.F + 1):
        t = inst.inner_pda[f, column]
        if t is STAR:
            continue
        batch = Batch(k, f)
        pieces = []
        for sender in inst.other_blocks(k):
            residual = transcript.symbol(sender, t).payload
            unknown = set()
            for packet in _coded_packets(inst, queries, cells[t], sender):
                if store.can_compute(packet.batch):
                    residual ^= store.packet(packet)
                else:
                    unknown.add(packet)
            if unknown != {PacketId(demand, batch, sender)}:
                raise DecodeFailure(k, t, frozenset(unknown))
            pieces.append(residual)

        ivs = BitString.concat(pieces).split(inst.config.eta)
        decoded.update(zip(inst.batch_files(batch), ivs))

    return dict(sorted(decoded.items()))


def reduce_output(inst, k, decoded_ivs, oracle):
    missing = set(range(1, inst.N + 1)) - set(decoded_ivs)
    if missing:
        raise IncompleteInput(k, missing)

    folded = BitString.zeros(oracle.beta)
    for n in range(1, inst.N + 1):
        folded ^= decoded_ivs[n]
    return folded.fit(inst.config.b_out)


def load_formula(config):
    K, alpha = config.K, config.alpha
    if config.model is Model.CONNECT:
        F = config.inner
        return Fraction(F - alpha, F * (K - 1) * (alpha + 1))
    Q = config.inner
    return Fraction(Q - alpha, 2 * Q * (K - 1))


@dataclass(frozen=True)
class LoadReport:
    r_measured: Fraction
    L_measured: Fraction
    r_formula: Fraction
    L_formula: Fraction

    @property
    def matches(self):
        return (self.r_measured == self.r_formula and
                self.L_measured == self.L_formula)


def measure_loads(inst, transcript) -> LoadReport:
    mapped = sum(len(set(inst.mapped_files(mapper)))
                 for mapper in range(1, inst.mappers + 1))
    normalization = inst.Q * inst.N * inst.config.beta
    return LoadReport(Fraction(mapped, inst.N),
                      Fraction(transcript.total_bits, normalization),
                      Fraction(1),
                      load_formula(inst.config))


def expected_transcript_bits(inst):
    return inst.K * inst.S * _packet_width(inst)


def random_connectivity(config, rng):
    if config.model is Model.CONNECT:
        return [tuple(sorted(int(x) + 1 for x in rng.choice(
            config.inner, size=config.alpha, replace=False)))
                for _ in range(config.K)]
    return [int(rng.integers(1, config.inner + 1)) for _ in range(config.K)]


def random_demands(config, rng):
    return [int(rng.integers(1, config.functions + 1))
            for _ in range(config.K)]


def derive_seed(base, *point):
    digest = hashlib.blake2b(repr((base,) + point).encode(), digest_size=8)
    return int.from_bytes(digest.digest(), "big")


@dataclass(frozen=True)
class RoundResult:
    instance: MadcInstance
    queries: Tuple[Query, ...]
    transcript: ShuffleTranscript
    decoded: Dict[int, Dict[int, BitString]]
    outputs: Dict[int, BitString]
    loads: LoadReport


def run_round(config, connectivity=None, seed=None, demands=None,
              queries=None):
    if seed is None:
        seed = config.seed
    rng = np.random.default_rng(seed)
    if connectivity is None:
        connectivity = random_connectivity(config.validate(), rng)
    inst = build_instance(config, connectivity, demands)
    oracle = IvOracle(seed, config.beta)

    if queries is None:
        queries = [generate_query(demand, column, inst.Q, rng, owner=k)
                   for k, (demand, column) in enumerate(inst.assignments, 1)]
    else:
        queries = [Query.fixed(k, query.perm if isinstance(query, Query)
                               else query, demand, column)
                   for k, (query, (demand, column))
                   in enumerate(zip(queries, inst.assignments), 1)]

    transcript = shuffle_round(inst, queries, oracle)

    decoded, outputs = {}, {}
    for k, (demand, _) in enumerate(inst.assignments, 1):
        ivs = decode_reducer(inst, k, transcript, queries, oracle)
        if any(ivs.get(n) != oracle.iv(demand, n)
               for n in range(1, inst.N + 1)):
            raise OutputMismatch(k)
        outputs[k] = reduce_output(inst, k, ivs, oracle)
        if outputs[k] != oracle.output(demand, inst.N, config.b_out):
            raise OutputMismatch(k)
        decoded[k] = ivs

    loads = measure_loads(inst, transcript)
    if not loads.matches:
        raise LoadMismatch(loads)

    logger.debug("round seed=%d: %d bits, L=%s", seed,
                 transcript.total_bits, loads.L_measured)
    return RoundResult(inst, tuple(queries), transcript, decoded, outputs,
                       loads)


def dump_transcript(transcript):
    """One JSON record per coded symbol, ordered by (sender, label)."""
    lines = []
    for symbol in sorted(transcript.symbols,
                         key=lambda symbol: (symbol.sender, symbol.label)):
        lines.append(json.dumps({
            "sender": symbol.sender,
            "label": symbol.label,
            "bits": symbol.payload.width,
            "payload": symbol.payload.hex(),
            "packets": sorted([packet.function, packet.batch.block,
                               packet.batch.row, packet.superscript]
                              for packet in symbol.packets),
        }, sort_keys=True))
    return "\n".join(lines) + "\n"
