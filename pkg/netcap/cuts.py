"""Cut sets, their separated and reaching sources, and strong partitions."""
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import FrozenSet, Optional, Tuple

import networkx as nx
from more_itertools import set_partitions

from netcap.exceptions import LimitWarning, ProblemMismatchError, UnknownIdentifierError
from netcap.functions import rank_over_prime_field
from netcap.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)

SLOW_ENUMERATION_EDGES = 16


@dataclass(frozen=True)
class CutContext:
    """A cut set C with its source sets.

    Source sets hold 1-based source indices.

    Parameters
    ----------
    cut: tuple of str
        The edge ids of C, sorted
    I: frozenset of int
        Sources separated from the sink once C is deleted
    K: frozenset of int
        Sources with a path to the tail of some edge of C
    J: frozenset of int
        K minus I
    num_sources: int
        Number of sources of the network
    """

    cut: Tuple[str, ...]
    I: FrozenSet[int]  # noqa: E741
    K: FrozenSet[int]
    J: FrozenSet[int]
    num_sources: int

    @property
    def size(self):
        return len(self.cut)

    @property
    def is_global(self):
        return len(self.I) == self.num_sources


@dataclass(frozen=True)
class StrongPartition:
    """A partition of a cut into blocks with nonempty, disjoint separated sources.

    Parameters
    ----------
    blocks: tuple of tuple of str
        Blocks C_1..C_m, each sorted, ordered by their smallest edge id
    block_sources: tuple of frozenset of int
        I_{C_l} for every block
    residual: frozenset of int
        L, the sources of I_C separated by no single block
    """

    blocks: Tuple[Tuple[str, ...], ...]
    block_sources: Tuple[FrozenSet[int], ...]
    residual: FrozenSet[int]

    @property
    def is_trivial(self):
        return len(self.blocks) == 1


def _check_edges(net, cut):
    cut = tuple(sorted(set(cut)))
    for edge_id in cut:
        if not net.has_edge_id(edge_id):
            raise UnknownIdentifierError(f"unknown edge id: {edge_id}")
    return cut


def separated_sources(net, cut):
    """Return I_C, the sources with no path to the sink once `cut` is deleted."""
    cut = _check_edges(net, cut)
    removed = [net.endpoints(edge_id) + (edge_id,) for edge_id in cut]
    view = nx.restricted_view(net, [], removed)
    alive = nx.ancestors(view, net.sink) | {net.sink}
    return frozenset(
        index
        for index, source in enumerate(net.sources, start=1)
        if source not in alive
    )


def reaching_sources(net, cut):
    """Return K_C, the sources with a path to the tail of some edge of `cut`."""
    cut = _check_edges(net, cut)
    tails = {net.tail(edge_id) for edge_id in cut}
    upstream = set(tails)
    for tail in tails:
        upstream |= nx.ancestors(net, tail)
    return frozenset(
        index
        for index, source in enumerate(net.sources, start=1)
        if source in upstream
    )


def cut_context(net, cut):
    """Build the CutContext of an edge set, or None if it separates no source."""
    cut = _check_edges(net, cut)
    separated = separated_sources(net, cut)
    if not separated:
        return None
    reaching = reaching_sources(net, cut)
    return CutContext(
        cut=cut,
        I=separated,
        K=reaching,
        J=reaching - separated,
        num_sources=net.num_sources,
    )


def enumerate_cuts(net, max_size=None, limits=DEFAULT_LIMITS):
    """Return every cut set of the network.

    Cuts are ordered by size, then by their sorted edge-id tuple.

    Parameters
    ----------
    net: netcap.network.Network
    max_size: optional, int, default=None
        Largest cut size to consider
    limits: netcap.limits.Limits, optional

    Returns
    -------
    list of CutContext

    Raises
    ------
    LimitExceededError
        If the network has more than `limits.max_cut_edges` edges and
        `max_size` does not bring the number of subsets under 2**max_cut_edges
    """
    edge_ids = sorted(net.edge_ids)
    top = len(edge_ids) if max_size is None else min(max_size, len(edge_ids))
    if max_size is None:
        limits.check("max_cut_edges", len(edge_ids))
    else:
        subsets = sum(comb(len(edge_ids), size) for size in range(1, top + 1))
        limits.check("max_cut_edges", subsets.bit_length() - 1)
    if len(edge_ids) > SLOW_ENUMERATION_EDGES and top > SLOW_ENUMERATION_EDGES:
        warnings.warn(
            f"enumerating cuts over {len(edge_ids)} edges may be slow",
            LimitWarning,
        )

    cuts = []
    for size in range(1, top + 1):
        for cut in combinations(edge_ids, size):
            context = cut_context(net, cut)
            if context is not None:
                cuts.append(context)
    logger.debug("found %d cut sets among %d edges", len(cuts), len(edge_ids))
    return cuts


def enumerate_strong_partitions(net, ctx, limits=DEFAULT_LIMITS):
    """Return every strong partition of a cut, trivial partition included.

    A strong partition has at most |I_C| blocks, so only set partitions
    with that many blocks are generated.

    Returns
    -------
    list of StrongPartition
        Blocks sorted by smallest edge id, partitions sorted lexicographically
    """
    max_blocks = min(len(ctx.I), ctx.size)
    if limits.max_partition_blocks is not None:
        max_blocks = min(max_blocks, limits.max_partition_blocks)

    block_cache = {}

    def block_sources(block):
        if block not in block_cache:
            block_cache[block] = separated_sources(net, block)
        return block_cache[block]

    partitions = []
    for num_blocks in range(1, max_blocks + 1):
        for candidate in set_partitions(ctx.cut, num_blocks):
            blocks = sorted(tuple(sorted(block)) for block in candidate)
            sources = [block_sources(block) for block in blocks]
            if not all(sources):
                continue
            if sum(len(s) for s in sources) != len(frozenset().union(*sources)):
                continue
            partitions.append(
                StrongPartition(
                    blocks=tuple(blocks),
                    block_sources=tuple(sources),
                    residual=ctx.I - frozenset().union(*sources),
                )
            )
    partitions.sort(key=lambda sp: sp.blocks)
    return partitions


def has_nontrivial_strong_partition(net, ctx, limits=DEFAULT_LIMITS):
    return len(enumerate_strong_partitions(net, ctx, limits=limits)) > 1


@dataclass(frozen=True)
class MinCutResult:
    """Minimum of |C| / Rank([T_i : i in I_C]) and the first cut attaining it."""

    value: Optional[Fraction]
    cut: Optional[Tuple[str, ...]]


def min_cut_linear(net, spec, limits=DEFAULT_LIMITS):
    """Evaluate the min-cut condition of a linear target function.

    Cuts whose separated sources have rank-0 columns carry no constraint and
    are skipped. Ties keep the earliest cut in enumeration order.

    Parameters
    ----------
    net: netcap.network.Network
    spec: netcap.functions.LinearSpec

    Returns
    -------
    MinCutResult
    """
    if spec.s != net.num_sources:
        raise ProblemMismatchError(
            f"the matrix has {spec.s} columns but the network has "
            f"{net.num_sources} sources"
        )
    best = MinCutResult(None, None)
    for ctx in enumerate_cuts(net, limits=limits):
        rank = rank_over_prime_field([spec.column(i) for i in sorted(ctx.I)], spec.q)
        if rank == 0:
            continue
        ratio = Fraction(ctx.size, rank)
        if best.value is None or ratio < best.value:
            best = MinCutResult(ratio, ctx.cut)
    return best
