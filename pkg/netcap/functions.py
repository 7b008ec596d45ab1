"""Target functions f: A^s -> O stored as dense tables."""
from dataclasses import dataclass
from typing import Tuple

import galois
import numpy as np

from netcap.exceptions import (
    InvalidLinearSpecError,
    NetcapError,
    NetworkParseError,
    NonPrimeFieldError,
    ProblemMismatchError,
)
from netcap.limits import DEFAULT_LIMITS
from netcap.utils.io import dump_json, read_json, read_text
from netcap.utils.misc import check_fields, validate_type

BUILTIN_KINDS = ("arith_sum", "mod_sum", "max", "min", "identity")


def input_grid(s, q):
    """Return every input of A^s as the columns of an (s, q**s) array.

    Column j is the input whose mixed-radix index is j, x_1 most significant.
    """
    if s == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.indices((q,) * s, dtype=np.int64).reshape(s, -1)


def mixed_radix_index(digits, base):
    """Return the index of `digits` over a uniform base, first digit most significant.

    `digits` may be a sequence of ints or of equally shaped integer arrays.
    """
    index = 0
    for digit in digits:
        index = index * base + digit
    return index


def mixed_radix_digits(index, base, length):
    """Inverse of `mixed_radix_index` for a scalar index."""
    digits = []
    for _ in range(length):
        index, digit = divmod(index, base)
        digits.append(digit)
    return tuple(int(digit) for digit in reversed(digits))


@dataclass(frozen=True, eq=False)
class TargetFunction:
    """A function of s source symbols over an alphabet of size q.

    Parameters
    ----------
    arity: int
        The number s of arguments
    q: int
        The input alphabet size
    output_alphabet_size: int
        The number of output symbols; outputs are 0..output_alphabet_size-1
    table: numpy.ndarray
        q**s outputs indexed by the mixed-radix index of the input
    """

    arity: int
    q: int
    output_alphabet_size: int
    table: np.ndarray

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64).reshape(-1)
        if self.arity < 1 or self.q < 2:
            raise NetcapError(
                f"a target function needs s >= 1 and q >= 2, got s={self.arity}, "
                f"q={self.q}"
            )
        if table.size != self.q ** self.arity:
            raise NetcapError(
                f"table has {table.size} entries, expected q^s = "
                f"{self.q ** self.arity}"
            )
        if table.size and (
            table.min() < 0 or table.max() >= self.output_alphabet_size
        ):
            raise NetcapError(
                "table entries must lie in [0, output_alphabet_size)"
            )
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_table(cls, s, q, table, output_alphabet_size=None):
        """Create a function from its table; the output size defaults to max + 1."""
        table = np.asarray(table, dtype=np.int64)
        if output_alphabet_size is None:
            output_alphabet_size = int(table.max()) + 1 if table.size else 1
        return cls(s, q, output_alphabet_size, table)

    def __call__(self, *x):
        return int(self.table[self.index(x)])

    def __eq__(self, other):
        if not isinstance(other, TargetFunction):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.q == other.q
            and self.output_alphabet_size == other.output_alphabet_size
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.arity, self.q, self.output_alphabet_size, self.table.tobytes()))

    def index(self, x):
        if len(x) != self.arity:
            raise NetcapError(f"expected {self.arity} arguments, got {len(x)}")
        return mixed_radix_index(x, self.q)

    def inputs(self):
        """Iterate over A^s in index order."""
        for column in input_grid(self.arity, self.q).T:
            yield tuple(int(value) for value in column)

    def as_array(self):
        """The table reshaped so that axis i-1 is the argument of source i."""
        return self.table.reshape((self.q,) * self.arity)


@dataclass(frozen=True)
class LinearSpec:
    """Coefficients of a linear target function f(x) = T x over the prime field F_q."""

    q: int
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "matrix", tuple(tuple(int(v) for v in row) for row in self.matrix)
        )

    @property
    def l(self):  # noqa: E743
        return len(self.matrix)

    @property
    def s(self):
        return len(self.matrix[0]) if self.matrix else 0

    def column(self, i):
        """Column T_i of source i (1-based)."""
        return tuple(row[i - 1] for row in self.matrix)


def _check_prime(q):
    if not galois.is_prime(q):
        raise NonPrimeFieldError(
            f"q={q} is not prime; only prime fields are supported"
        )


def _table_size(s, q, limits):
    size = q ** s
    limits.check("max_table_entries", size)
    return size


def make_builtin(kind, s, q, limits=DEFAULT_LIMITS):
    """Create one of the built-in target functions.

    Parameters
    ----------
    kind: str
        One of arith_sum, mod_sum, max, min, identity
    s: int
        Number of sources
    q: int
        Alphabet size
    limits: netcap.limits.Limits, optional

    Returns
    -------
    TargetFunction
    """
    if kind not in BUILTIN_KINDS:
        raise NetcapError(
            f"unsupported function kind {kind!r}; expected one of "
            f"{', '.join(BUILTIN_KINDS)}"
        )
    if s < 1 or q < 2:
        raise NetcapError(f"need s >= 1 and q >= 2, got s={s}, q={q}")
    size = _table_size(s, q, limits)
    grid = input_grid(s, q)

    if kind == "arith_sum":
        return TargetFunction(s, q, s * (q - 1) + 1, grid.sum(axis=0))
    if kind == "mod_sum":
        return TargetFunction(s, q, q, grid.sum(axis=0) % q)
    if kind == "max":
        return TargetFunction(s, q, q, grid.max(axis=0))
    if kind == "min":
        return TargetFunction(s, q, q, grid.min(axis=0))
    return TargetFunction(s, q, size, np.arange(size))


def rank_over_prime_field(columns, q):
    """Rank of a set of column vectors over F_q.

    Parameters
    ----------
    columns: sequence of sequences of int
        The column vectors, all of the same length
    q: int
        A prime

    Returns
    -------
    int
        0 for an empty column set
    """
    _check_prime(q)
    columns = [list(column) for column in columns]
    if not columns:
        return 0
    field = galois.GF(q)
    matrix = field(np.array(columns, dtype=np.int64).T % q)
    return int(np.linalg.matrix_rank(matrix))


def linear_from_spec(spec, limits=DEFAULT_LIMITS):
    """Create the table of f(x) = T x over F_q.

    The output T x is encoded as a mixed-radix index over q with the first
    row most significant, so the output alphabet has q**l symbols.

    Raises
    ------
    NonPrimeFieldError
        If q is not prime
    InvalidLinearSpecError
        For an empty matrix, ragged rows, entries outside [0, q), an all-zero
        column, or rank(T) < l
    """
    _check_prime(spec.q)
    if spec.l == 0 or spec.s == 0:
        raise InvalidLinearSpecError("the coefficient matrix is empty")
    if any(len(row) != spec.s for row in spec.matrix):
        raise InvalidLinearSpecError("the coefficient matrix is ragged")
    if any(not 0 <= v < spec.q for row in spec.matrix for v in row):
        raise InvalidLinearSpecError(f"matrix entries must lie in [0, {spec.q})")
    for i in range(1, spec.s + 1):
        if not any(spec.column(i)):
            raise InvalidLinearSpecError(f"column {i} is all zero")
    rank = rank_over_prime_field([spec.column(i) for i in range(1, spec.s + 1)], spec.q)
    if rank < spec.l:
        raise InvalidLinearSpecError(
            f"rank(T) = {rank} is smaller than the number of rows {spec.l}"
        )

    _table_size(spec.s, spec.q, limits)
    field = galois.GF(spec.q)
    coefficients = field(np.array(spec.matrix, dtype=np.int64))
    images = np.asarray(coefficients @ field(input_grid(spec.s, spec.q)))
    table = mixed_radix_index(images.astype(np.int64), spec.q)
    return TargetFunction(spec.s, spec.q, spec.q ** spec.l, table)


def image_size(f):
    """Number of distinct values |f(A^s)|."""
    return int(np.unique(f.table).size)


def vector_table(f, k):
    """Table of the row-wise extension of f to k-row source matrices.

    Inputs are indexed source by source: source i contributes one symbol of
    alphabet q**k (its k-vector, row 1 most significant) and source 1 is
    most significant. The output vector is encoded over the output alphabet
    with row 1 most significant.
    """
    grid = input_grid(f.arity, f.q ** k)
    rows = [(grid // f.q ** (k - 1 - p)) % f.q for p in range(k)]
    outputs = [f.table[mixed_radix_index(row, f.q)] for row in rows]
    return mixed_radix_index(outputs, f.output_alphabet_size)


def parse_function(text, source=None, limits=DEFAULT_LIMITS):
    """Parse a function file of builtin, linear or table type."""
    doc = read_json(text, source)
    if not isinstance(doc, dict) or "type" not in doc:
        raise NetworkParseError("function file needs a type field")
    kind = doc["type"]
    if kind == "builtin":
        check_fields(doc, ("type", "kind", "s", "q"), where="builtin function")
        validate_type([doc["s"], doc["q"]], int, where="builtin function")
        if doc["kind"] not in BUILTIN_KINDS:
            raise NetworkParseError(
                f"unsupported function kind {doc['kind']!r}; expected one of "
                f"{', '.join(BUILTIN_KINDS)}",
                source=source,
            )
        return make_builtin(doc["kind"], doc["s"], doc["q"], limits=limits)
    if kind == "linear":
        check_fields(doc, ("type", "q", "matrix"), where="linear function")
        validate_type([doc["q"]], int, where="linear function")
        if not isinstance(doc["matrix"], list) or not all(
            isinstance(row, list) for row in doc["matrix"]
        ):
            raise NetworkParseError("matrix must be a list of rows")
        for row in doc["matrix"]:
            validate_type(row, int, where="matrix")
        return linear_from_spec(LinearSpec(doc["q"], doc["matrix"]), limits=limits)
    if kind == "table":
        check_fields(
            doc,
            ("type", "s", "q", "output_alphabet_size", "table"),
            where="table function",
        )
        validate_type(
            [doc["s"], doc["q"], doc["output_alphabet_size"]],
            int,
            where="table function",
        )
        if not isinstance(doc["table"], list):
            raise NetworkParseError("table must be a list of integers", source=source)
        validate_type(doc["table"], int, where="table")
        _table_size(doc["s"], doc["q"], limits)
        try:
            return TargetFunction(
                doc["s"], doc["q"], doc["output_alphabet_size"], doc["table"]
            )
        except NetcapError as ex:
            raise NetworkParseError(str(ex), source=source) from ex
    raise NetworkParseError(f"unknown function type {kind!r}")


def load_function(path, limits=DEFAULT_LIMITS):
    """Read and parse a function file."""
    return parse_function(read_text(path), source=str(path), limits=limits)


def function_to_dict(f):
    """Return the table-type function document of `f`."""
    return {
        "type": "table",
        "s": f.arity,
        "q": f.q,
        "output_alphabet_size": f.output_alphabet_size,
        "table": [int(v) for v in f.table],
    }


def dump_function(f):
    return dump_json(function_to_dict(f))


def check_problem(f, net):
    """Raise ProblemMismatchError unless f takes one symbol per source of `net`."""
    if f.arity != net.num_sources or f.q != net.alphabet_size:
        raise ProblemMismatchError(
            f"function over s={f.arity}, q={f.q} does not fit a network with "
            f"{net.num_sources} sources and q={net.alphabet_size}"
        )
