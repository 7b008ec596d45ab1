"""Exhaustive depth-first search for (k, n) codes computing a target function."""
import itertools
import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from netcap.codes import (
    CutRequirement,
    EdgeFunction,
    NetworkCode,
    _find_conflict,
    _input_index,
    _source_symbols,
    _synthesize,
    word_symbols,
)
from netcap.cuts import enumerate_cuts
from netcap.functions import check_problem, vector_table
from netcap.limits import DEFAULT_LIMITS
from netcap.network import edge_order
from netcap.validator import validate_network

logger = logging.getLogger(__name__)

SEARCH_STATUSES = ("found", "exhausted", "timeout")


@dataclass
class SearchResult:
    """Outcome of a code search.

    Parameters
    ----------
    status: str
        found, exhausted or timeout
    code: NetworkCode or None
        The first code found, decoder included
    candidates: int
        Complete assignments handed to the decoder check
    nodes: int
        Partial assignments visited
    elapsed: float
        Wall-clock seconds
    reason: str or None
        Why a search stopped early
    """

    status: str
    code: Optional[NetworkCode] = None
    candidates: int = 0
    nodes: int = 0
    elapsed: float = 0.0
    reason: Optional[str] = None

    @property
    def found(self):
        return self.status == "found"


def restricted_growth_strings(length, alphabet):
    """Every table of `length` entries over `alphabet` in first-occurrence form.

    Entry i is at most one more than the largest of entries 0..i-1, so every
    relabeling class of tables is produced exactly once. Lexicographic order.
    """
    if length == 0:
        yield ()
        return
    table = [0] * length

    def grow(position, top):
        if position == length:
            yield tuple(table)
            return
        for value in range(min(top + 2, alphabet)):
            table[position] = value
            yield from grow(position + 1, max(top, value))

    yield from grow(1, 0)


def restricted_growth_count(length, alphabet):
    """Number of restricted growth strings: sum of S(length, j) for j <= alphabet."""
    if length == 0:
        return 1
    # row[j] = S(i, j), Stirling numbers of the second kind
    row = [1] + [0] * alphabet
    for _ in range(length):
        row = [0] + [j * row[j] + row[j - 1] for j in range(1, alphabet + 1)]
    return sum(row)


def _tables(length, alphabet, prune):
    if prune:
        return restricted_growth_strings(length, alphabet)
    return itertools.product(range(alphabet), repeat=length)


def _table_count(length, alphabet, prune):
    if prune:
        return restricted_growth_count(length, alphabet)
    return alphabet ** length


class _Search(object):
    def __init__(self, net, f, k, n, prune, deadline, max_candidates, limits):
        self.net = net
        self.f = f
        self.k = k
        self.n = n
        self.prune = prune
        self.deadline = deadline
        self.max_candidates = max_candidates
        self.limits = limits

        q = net.alphabet_size
        self.alphabet = q ** n
        self.order = edge_order(net)
        self.symbols = _source_symbols(net, k)
        self.target = vector_table(f, k)
        self.inputs = {}
        self.lengths = {}
        for edge_id in self.order:
            if net.is_source_edge(edge_id):
                self.inputs[edge_id] = None
                self.lengths[edge_id] = q ** k
            else:
                self.inputs[edge_id] = net.in_edge_ids(net.tail(edge_id))
                self.lengths[edge_id] = self.alphabet ** len(self.inputs[edge_id])
            limits.check("max_table_entries", self.lengths[edge_id])

        self.checks = [[] for _ in self.order]
        if prune:
            position = {edge_id: i for i, edge_id in enumerate(self.order)}
            for ctx in enumerate_cuts(net, limits=limits):
                level = max(position[edge_id] for edge_id in ctx.cut)
                if level < len(self.order) - 1:
                    self.checks[level].append(
                        CutRequirement(f, ctx, k, self.symbols, limits)
                    )

        self.sink_inputs = net.in_edge_ids(net.sink)
        self.tables = {}
        self.words = {}
        self.nodes = 0
        self.candidates = 0
        self.stopped = None

    def space(self):
        total = 1
        for edge_id in self.order:
            total *= _table_count(self.lengths[edge_id], self.alphabet, self.prune)
        return total

    def _positions(self, edge_id):
        inputs = self.inputs[edge_id]
        if inputs is None:
            return self.symbols[self.net.source_index(self.net.tail(edge_id)) - 1]
        return _input_index(self.words, inputs, self.alphabet, self.symbols.shape[1])

    def run(self, level=0):
        """Depth-first over tables of edge `level`; return a code or None."""
        if level == len(self.order):
            return self._leaf()
        edge_id = self.order[level]
        positions = self._positions(edge_id)
        for table in _tables(self.lengths[edge_id], self.alphabet, self.prune):
            self.nodes += 1
            if self.deadline is not None and time.monotonic() > self.deadline:
                self.stopped = "timeout reached"
                return None
            table = np.asarray(table, dtype=np.int64)
            self.tables[edge_id] = table
            self.words[edge_id] = table[positions]
            if all(check.holds(self.words) for check in self.checks[level]):
                code = self.run(level + 1)
                if code is not None or self.stopped:
                    return code
        del self.tables[edge_id], self.words[edge_id]
        return None

    def _leaf(self):
        if self.max_candidates is not None and self.candidates >= self.max_candidates:
            self.stopped = f"max_candidates={self.max_candidates} reached"
            return None
        self.candidates += 1
        keys = _input_index(
            self.words, self.sink_inputs, self.alphabet, self.target.size
        )
        if _find_conflict(keys, self.target) is not None:
            return None
        code = NetworkCode(
            self.k,
            self.n,
            {
                edge_id: EdgeFunction(
                    word_symbols(self.tables[edge_id], self.net.alphabet_size, self.n),
                    self.inputs[edge_id],
                )
                for edge_id in self.net.edge_ids
            },
        )
        result = _synthesize(
            code, self.net, self.f, self.sink_inputs, self.words, self.target, self.limits
        )
        return NetworkCode(self.k, self.n, code.edges, result.decoder)


def search_code(
    net,
    f,
    k,
    n,
    timeout=None,
    max_candidates=None,
    prune=True,
    limits=DEFAULT_LIMITS,
):
    """Search every (k, n) code of a network for one that computes f.

    Edges are assigned in `edge_order`; each edge's table is enumerated in
    lexicographic order. With `prune`, a branch is abandoned as soon as some
    fully assigned cut merges two source matrices that it must separate,
    and each table is only enumerated up to relabeling of its words.
    Without `prune` every table is enumerated; the verdict is the same.

    Parameters
    ----------
    net: netcap.network.Network
    f: netcap.functions.TargetFunction
    k, n: int
    timeout: float, optional
        Seconds before the search gives up
    max_candidates: int, optional
        Complete assignments to try before giving up
    prune: bool, default=True
    limits: netcap.limits.Limits, optional

    Returns
    -------
    SearchResult

    Raises
    ------
    LimitExceededError
        If the estimated number of candidates is above
        `limits.max_search_space`
    """
    validate_network(net).raise_for_violations()
    check_problem(f, net)
    limits.check("max_table_entries", net.alphabet_size ** (k * net.num_sources))
    start = time.monotonic()
    deadline = start + timeout if timeout is not None else None

    search = _Search(net, f, k, n, prune, deadline, max_candidates, limits)
    space = search.space()
    limits.check("max_search_space", space)
    logger.info(
        "searching (%d, %d) codes over %d edges, %d candidate tables",
        k,
        n,
        len(search.order),
        space,
    )

    code = search.run()
    elapsed = time.monotonic() - start
    if code is not None:
        status = "found"
    elif search.stopped:
        status = "timeout"
    else:
        status = "exhausted"
    logger.info(
        "search %s after %d nodes and %d candidates in %.2fs",
        status,
        search.nodes,
        search.candidates,
        elapsed,
    )
    return SearchResult(
        status, code, search.candidates, search.nodes, elapsed, search.stopped
    )
