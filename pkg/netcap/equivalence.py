"""Equivalence classes of source assignments and the class counts of a cut.

Assignments over a set of sources are addressed by their mixed-radix index
(lowest source index most significant). Class ids are numbered in order of
the smallest member index.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from netcap.cuts import enumerate_strong_partitions
from netcap.exceptions import ConsistencyError, InvalidContextError
from netcap.functions import check_problem, mixed_radix_digits, mixed_radix_index
from netcap.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Assignment:
    """One symbol per source of `over`, in ascending source order."""

    over: Tuple[int, ...] = ()
    values: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "over", tuple(self.over))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.over) != len(self.values):
            raise InvalidContextError(
                f"assignment over {self.over} needs {len(self.over)} values, "
                f"got {len(self.values)}"
            )
        if list(self.over) != sorted(set(self.over)):
            raise InvalidContextError(
                f"assignment sources must be ascending and distinct: {self.over}"
            )

    def index(self, q):
        return mixed_radix_index(self.values, q)

    @classmethod
    def from_index(cls, over, index, q):
        return cls(tuple(over), mixed_radix_digits(index, q, len(over)))

    @classmethod
    def all(cls, over, q):
        """Every assignment over `over`, in index order."""
        over = tuple(over)
        for values in itertools.product(range(q), repeat=len(over)):
            yield cls(over, values)

    def as_dict(self):
        return dict(zip(self.over, self.values))


@dataclass(frozen=True, eq=False)
class EquivalencePartition:
    """A partition of the assignments over `over` into classes.

    Parameters
    ----------
    over: tuple of int
        The ground set sources
    q: int
        The alphabet size
    labels: numpy.ndarray
        Class id of every assignment, indexed by assignment index
    context: dict
        The fixed assignments the partition was computed under
    """

    over: Tuple[int, ...]
    q: int
    labels: np.ndarray
    context: Dict[str, Assignment] = field(default_factory=dict)

    @property
    def num_classes(self):
        return int(self.labels.max()) + 1

    def members(self, class_id):
        """Member indices of one class, ascending."""
        return np.flatnonzero(self.labels == class_id)

    def classes(self):
        """Every class as a list of member assignments."""
        return [
            [Assignment.from_index(self.over, int(i), self.q) for i in self.members(c)]
            for c in range(self.num_classes)
        ]

    def class_of(self, values):
        return int(self.labels[mixed_radix_index(values, self.q)])


@dataclass(frozen=True)
class PartitionContext:
    """Blocks I_1..I_m of separated sources, the residual L and J, as sorted tuples."""

    blocks: Tuple[Tuple[int, ...], ...]
    residual: Tuple[int, ...]
    J: Tuple[int, ...]  # noqa: E741

    def __post_init__(self):
        blocks = tuple(tuple(sorted(block)) for block in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "residual", tuple(sorted(self.residual)))
        object.__setattr__(self, "J", tuple(sorted(self.J)))
        everything = [s for block in blocks for s in block] + list(self.residual)
        if not blocks or any(not block for block in blocks):
            raise InvalidContextError("every block of a partition context needs sources")
        if len(everything) != len(set(everything)):
            raise InvalidContextError("blocks and residual sources must be disjoint")
        if set(everything) & set(self.J):
            raise InvalidContextError("separated sources and J must be disjoint")

    @property
    def I(self):  # noqa: E743
        return tuple(sorted(s for block in self.blocks + (self.residual,) for s in block))

    @classmethod
    def from_strong_partition(cls, ctx, sp):
        return cls(
            blocks=tuple(tuple(sorted(sources)) for sources in sp.block_sources),
            residual=tuple(sorted(sp.residual)),
            J=tuple(sorted(ctx.J)),
        )

    @classmethod
    def trivial(cls, I, J):  # noqa: E741
        return cls(blocks=(tuple(sorted(I)),), residual=(), J=tuple(sorted(J)))


@dataclass(frozen=True, eq=False)
class ClassArray:
    """The array M(a_L, a_J): ambient class ids indexed by one class per block."""

    entries: np.ndarray
    a_L: Assignment
    a_J: Assignment
    ambient: EquivalencePartition
    blocks: Tuple[EquivalencePartition, ...]

    @property
    def shape(self):
        return self.entries.shape


@dataclass(frozen=True)
class PartitionCount:
    """n_C(P_C) with the maximizing J-assignment and its per-class counts N(Cl)."""

    value: int
    a_J_star: Assignment
    class_counts: Tuple[int, ...]


@dataclass(frozen=True)
class CutCount:
    """n_{C,f} with its maximizing strong partition."""

    value: int
    partition: object
    a_J_star: Assignment
    class_counts: Tuple[int, ...]
    partitions_examined: int


def _first_occurrence_labels(rows):
    """Label equal rows alike; ids follow the first row of each kind."""
    seen = {}
    labels = np.empty(rows.shape[0], dtype=np.int64)
    for i, row in enumerate(rows):
        labels[i] = seen.setdefault(row.tobytes(), len(seen))
    return labels


def _as_sources(sources, s, name):
    sources = tuple(sorted(set(sources)))
    for index in sources:
        if not 1 <= index <= s:
            raise InvalidContextError(f"source index {index} in {name} is out of range")
    return sources


def _as_assignment(assignment, over, q, name):
    if assignment is None:
        assignment = ()
    if not isinstance(assignment, Assignment):
        assignment = Assignment(over, assignment)
    if assignment.over != tuple(over):
        raise InvalidContextError(
            f"{name} is over sources {assignment.over}, expected {tuple(over)}"
        )
    if any(not 0 <= v < q for v in assignment.values):
        raise InvalidContextError(f"{name} has a symbol outside [0, {q})")
    return assignment


def ec_partition(f, I, J, a_J=None, limits=DEFAULT_LIMITS):  # noqa: E741
    """Partition A^I into (I, a_J)-equivalence classes.

    Two assignments b, b' of I are equivalent when f(b, a_J, d) = f(b', a_J, d)
    for every completion d of the sources outside I and J.

    Parameters
    ----------
    f: netcap.functions.TargetFunction
    I: iterable of int
        Source indices of the ground set
    J: iterable of int
        Source indices held fixed, disjoint from I
    a_J: Assignment or sequence of int, optional
        Values of the sources of J

    Returns
    -------
    EquivalencePartition
    """
    I = _as_sources(I, f.arity, "I")  # noqa: E741
    J = _as_sources(J, f.arity, "J")
    if set(I) & set(J):
        raise InvalidContextError(f"I {I} and J {J} overlap")
    a_J = _as_assignment(a_J, J, f.q, "a_J")
    limits.check("max_class_space", f.q ** len(I))

    index = [slice(None)] * f.arity
    for source, value in zip(J, a_J.values):
        index[source - 1] = value
    fixed = f.as_array()[tuple(index)]

    free = [source for source in range(1, f.arity + 1) if source not in J]
    completion = [source for source in free if source not in I]
    order = [free.index(source) for source in I + tuple(completion)]
    signatures = np.transpose(fixed, order).reshape(f.q ** len(I), -1)

    return EquivalencePartition(
        over=I,
        q=f.q,
        labels=_first_occurrence_labels(signatures),
        context={"a_J": a_J},
    )


def _block_tensor(ambient, context, a_L):
    """Ambient labels with L fixed to a_L, one axis per block.

    Axis l has length q**|I_l| and is indexed by the assignment index over I_l.
    """
    q = ambient.q
    I = ambient.over  # noqa: E741
    labels = ambient.labels.reshape((q,) * len(I))
    index = [slice(None)] * len(I)
    for source, value in zip(context.residual, a_L.values):
        index[I.index(source)] = value
    fixed = labels[tuple(index)]

    free = [source for source in I if source not in context.residual]
    order = [free.index(source) for block in context.blocks for source in block]
    return np.transpose(fixed, order).reshape(
        tuple(q ** len(block) for block in context.blocks)
    )


def _check_context(f, context, a_L, a_J, ambient):
    _as_sources(context.I + context.J, f.arity, "partition context")
    a_L = _as_assignment(a_L, context.residual, f.q, "a_L")
    a_J = _as_assignment(a_J, context.J, f.q, "a_J")
    if ambient is None:
        ambient = ec_partition(f, context.I, context.J, a_J)
    elif ambient.over != context.I:
        raise InvalidContextError("ambient partition is not over I")
    return a_L, a_J, ambient


def pec_partition(f, context, l, a_L=None, a_J=None, ambient=None):  # noqa: E741
    """Partition A^{I_l} into (I_l, a_L, a_J)-equivalence classes.

    Two assignments of block `l` (0-based) are equivalent when, for every
    choice of assignments of the other blocks, completing both with a_L gives
    (I, a_J)-equivalent assignments of I. With a single block covering I this
    is exactly `ec_partition`.
    """
    if not 0 <= l < len(context.blocks):
        raise InvalidContextError(f"block index {l} is out of range")
    a_L, a_J, ambient = _check_context(f, context, a_L, a_J, ambient)
    tensor = _block_tensor(ambient, context, a_L)
    rows = np.moveaxis(tensor, l, 0).reshape(tensor.shape[l], -1)
    return EquivalencePartition(
        over=context.blocks[l],
        q=f.q,
        labels=_first_occurrence_labels(rows),
        context={"a_L": a_L, "a_J": a_J},
    )


def _h(tensor, blocks, class_ids):
    members = [block.members(c) for block, c in zip(blocks, class_ids)]
    values = np.unique(tensor[np.ix_(*members)])
    if values.size != 1:
        raise ConsistencyError(
            f"block classes {tuple(class_ids)} span ambient classes "
            f"{values.tolist()}; expected exactly one"
        )
    return int(values[0])


def h_map(f, context, class_ids, a_L=None, a_J=None, ambient=None):
    """Return the ambient class containing every combination of the given block classes.

    Parameters
    ----------
    f: netcap.functions.TargetFunction
    context: PartitionContext
    class_ids: sequence of int
        One class id per block, numbered as in `pec_partition`
    a_L, a_J: Assignment or sequence of int
    ambient: EquivalencePartition, optional
        The (I, a_J)-partition; computed when omitted

    Raises
    ------
    ConsistencyError
        If the members do not all lie in one ambient class
    """
    a_L, a_J, ambient = _check_context(f, context, a_L, a_J, ambient)
    blocks = [
        pec_partition(f, context, l, a_L, a_J, ambient)
        for l in range(len(context.blocks))
    ]
    if len(class_ids) != len(blocks) or any(
        not 0 <= c < block.num_classes for block, c in zip(blocks, class_ids)
    ):
        raise InvalidContextError(f"invalid block classes {tuple(class_ids)}")
    return _h(_block_tensor(ambient, context, a_L), blocks, class_ids)


def build_class_array(f, context, a_L=None, a_J=None, ambient=None):
    """Build M(a_L, a_J), with one axis per block sized by its class count."""
    a_L, a_J, ambient = _check_context(f, context, a_L, a_J, ambient)
    tensor = _block_tensor(ambient, context, a_L)
    blocks = tuple(
        pec_partition(f, context, l, a_L, a_J, ambient)
        for l in range(len(context.blocks))
    )
    shape = tuple(block.num_classes for block in blocks)
    entries = np.empty(shape, dtype=np.int64)
    for class_ids in np.ndindex(*shape):
        entries[class_ids] = _h(tensor, blocks, class_ids)
    return ClassArray(entries, a_L, a_J, ambient, blocks)


def count_N(arr, class_id):
    """Number of entries of the array equal to `class_id`."""
    return int(np.count_nonzero(arr.entries == class_id))


def _partition_count(f, context, limits):
    limits.check(
        "max_assignment_space", f.q ** (len(context.J) + len(context.residual))
    )
    best = None
    for a_J in Assignment.all(context.J, f.q):
        ambient = ec_partition(f, context.I, context.J, a_J, limits=limits)
        counts = np.zeros(ambient.num_classes, dtype=np.int64)
        for a_L in Assignment.all(context.residual, f.q):
            arr = build_class_array(f, context, a_L, a_J, ambient)
            counts = np.maximum(
                counts, np.bincount(arr.entries.ravel(), minlength=counts.size)
            )
        if counts.min() < 1:
            raise ConsistencyError(f"an ambient class has no array entry for a_J={a_J}")
        total = int(counts.sum())
        if best is None or total > best.value:
            best = PartitionCount(total, a_J, tuple(int(c) for c in counts))
    return best


def n_C_of_partition(f, net, ctx, sp, limits=DEFAULT_LIMITS):
    """Evaluate n_C(P_C) for one strong partition of a cut.

    For every J-assignment, N(Cl) is the largest count of class Cl over the
    arrays M(a_L, a_J); the result is the largest sum of N(Cl) over a_J.
    Ties keep the smallest a_J index.

    Returns
    -------
    PartitionCount
    """
    check_problem(f, net)
    return _partition_count(f, PartitionContext.from_strong_partition(ctx, sp), limits)


def n_C_f(f, net, ctx, limits=DEFAULT_LIMITS):
    """Evaluate n_{C,f}, the largest n_C(P_C) over the strong partitions of a cut.

    Returns
    -------
    CutCount
        Ties keep the first partition in canonical order
    """
    check_problem(f, net)
    partitions = enumerate_strong_partitions(net, ctx, limits=limits)
    best = None
    for sp in partitions:
        count = n_C_of_partition(f, net, ctx, sp, limits=limits)
        if best is None or count.value > best.value:
            best = CutCount(
                count.value, sp, count.a_J_star, count.class_counts, len(partitions)
            )
    logger.debug("n_C,f = %d for cut %s", best.value, ctx.cut)
    return best


def w_C_f(f, net, ctx, limits=DEFAULT_LIMITS):
    """The largest number of (I, a_J)-classes over all J-assignments."""
    check_problem(f, net)
    limits.check("max_assignment_space", f.q ** len(ctx.J))
    return max(
        ec_partition(f, ctx.I, ctx.J, a_J, limits=limits).num_classes
        for a_J in Assignment.all(sorted(ctx.J), f.q)
    )


def class_diagnostics(f, context, a_L=None, a_J=None):
    """A JSON-ready description of the classes and the array M(a_L, a_J)."""
    arr = build_class_array(f, context, a_L, a_J)

    def describe(partition):
        return {
            "over": list(partition.over),
            "classes": [
                [list(member.values) for member in members]
                for members in partition.classes()
            ],
        }

    return {
        "a_L": {"over": list(arr.a_L.over), "values": list(arr.a_L.values)},
        "a_J": {"over": list(arr.a_J.over), "values": list(arr.a_J.values)},
        "ambient": describe(arr.ambient),
        "blocks": [describe(block) for block in arr.blocks],
        "array": arr.entries.tolist(),
        "counts": [count_N(arr, c) for c in range(arr.ambient.num_classes)],
    }
