"""Function-computing network codes.

A (k, n) code lets every source emit k symbols and every edge carry an
n-symbol word. Words are addressed by their mixed-radix index over q (first
symbol most significant); a source's k-vector is addressed the same way.
Codes are evaluated on every source matrix at once: matrix number m is the
mixed-radix index of the sources' k-vectors, source 1 most significant.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from netcap.cuts import cut_context, enumerate_cuts, separated_sources
from netcap.equivalence import Assignment, ec_partition
from netcap.exceptions import (
    DecoderConflictError,
    NetworkParseError,
    NonSurjectiveEdgeError,
    NotGlobalCutError,
    ShapeMismatchError,
    UnknownIdentifierError,
)
from netcap.functions import (
    TargetFunction,
    check_problem,
    input_grid,
    mixed_radix_digits,
    mixed_radix_index,
    vector_table,
)
from netcap.limits import DEFAULT_LIMITS
from netcap.network import edge_order
from netcap.utils.io import dump_json, read_json, read_text
from netcap.utils.misc import check_fields, validate_type

logger = logging.getLogger(__name__)


def word_index(rows, q):
    """Index of every row of an (L, n) symbol array."""
    return mixed_radix_index(np.asarray(rows, dtype=np.int64).T, q)


def word_symbols(words, q, n):
    """Inverse of `word_index`: an (L, n) symbol array."""
    words = np.asarray(words, dtype=np.int64)
    return np.stack([(words // q ** (n - 1 - j)) % q for j in range(n)], axis=-1)


@dataclass(frozen=True, eq=False)
class EdgeFunction:
    """The local function of one edge.

    Parameters
    ----------
    table: numpy.ndarray
        (L, n) array: one n-symbol word per input index
    inputs: tuple of str or None
        The ordered in-edges of the tail read by a non-source edge; None for
        an edge leaving a source, whose input is the source's k-vector
    """

    table: np.ndarray
    inputs: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "table", np.asarray(self.table, dtype=np.int64))
        if self.inputs is not None:
            object.__setattr__(self, "inputs", tuple(self.inputs))

    def words(self, q):
        return word_index(self.table, q)


@dataclass(frozen=True, eq=False)
class Decoder:
    """The sink's decoding table: k output symbols per tuple of incoming words."""

    inputs: Tuple[str, ...]
    table: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "table", np.asarray(self.table, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class NetworkCode:
    """A (k, n) network code: one local function per edge and an optional decoder."""

    k: int
    n: int
    edges: Dict[str, EdgeFunction]
    decoder: Optional[Decoder] = None

    @classmethod
    def from_functions(cls, net, k, n, functions, decoder=None, inputs=None):
        """Tabulate a code from one callable per edge.

        Parameters
        ----------
        net: netcap.network.Network
        k, n: int
        functions: dict of str to callable
            For an edge leaving a source, called with the source's k-vector
            as a tuple; for any other edge, called with one word tuple per
            input edge. Must return at most n symbols (or a single int);
            shorter messages are padded with 0.
        decoder: callable, optional
            Called with one word per in-edge of the sink (sorted by id),
            returns the k output symbols
        inputs: dict of str to sequence of str, optional
            Input order of non-source edges; defaults to the in-edges of the
            tail sorted by id

        Returns
        -------
        NetworkCode
        """
        q = net.alphabet_size
        words = list(itertools.product(range(q), repeat=n))
        edges = {}
        for edge_id in net.edge_ids:
            local = functions[edge_id]
            if net.is_source_edge(edge_id):
                rows = [
                    _pad(local(x), n, edge_id)
                    for x in itertools.product(range(q), repeat=k)
                ]
                edges[edge_id] = EdgeFunction(np.array(rows, dtype=np.int64))
                continue
            order = tuple((inputs or {}).get(edge_id, net.in_edge_ids(net.tail(edge_id))))
            rows = [
                _pad(local(*combo), n, edge_id)
                for combo in itertools.product(words, repeat=len(order))
            ]
            edges[edge_id] = EdgeFunction(np.array(rows, dtype=np.int64), order)

        sink_decoder = None
        if decoder is not None:
            order = net.in_edge_ids(net.sink)
            rows = [
                _pad(decoder(*combo), k, "decoder")
                for combo in itertools.product(words, repeat=len(order))
            ]
            sink_decoder = Decoder(order, np.array(rows, dtype=np.int64))
        return cls(k, n, edges, sink_decoder)

    def with_edge(self, edge_id, table):
        """Return a copy with the table of one edge replaced."""
        edges = dict(self.edges)
        edges[edge_id] = EdgeFunction(table, self.edges[edge_id].inputs)
        return NetworkCode(self.k, self.n, edges, self.decoder)

    def without_decoder(self):
        return NetworkCode(self.k, self.n, dict(self.edges), None)


def _pad(message, length, where):
    if isinstance(message, (int, np.integer)):
        message = (message,)
    message = tuple(int(symbol) for symbol in message)
    if len(message) > length:
        raise ShapeMismatchError(
            f"{where} produced {len(message)} symbols, at most {length} allowed"
        )
    return message + (0,) * (length - len(message))


def code_rate(code):
    return Fraction(code.k, code.n)


def check_shape(code, net, f=None, limits=DEFAULT_LIMITS):
    """Raise ShapeMismatchError unless the code fits the network (and f).

    Every edge needs one local function; edges leaving a source read the
    source's k-vector, every other edge declares its tail's in-edges in
    some order; words have n symbols in [0, q). A decoder, when present,
    reads the sink's in-edges and writes k output symbols.
    """
    q = net.alphabet_size
    if code.k < 1 or code.n < 1:
        raise ShapeMismatchError(f"k and n must be positive, got k={code.k}, n={code.n}")
    limits.check("max_table_entries", q ** (code.k * net.num_sources))
    missing = sorted(set(net.edge_ids) - set(code.edges))
    extra = sorted(set(code.edges) - set(net.edge_ids))
    if missing:
        raise ShapeMismatchError(f"no local function for edge(s): {', '.join(missing)}")
    if extra:
        raise ShapeMismatchError(f"code has unknown edge(s): {', '.join(extra)}")

    for edge_id in net.edge_ids:
        local = code.edges[edge_id]
        if net.is_source_edge(edge_id):
            if local.inputs is not None:
                raise ShapeMismatchError(f"edge {edge_id} leaves a source and takes no inputs")
            rows = q ** code.k
        else:
            expected = net.in_edge_ids(net.tail(edge_id))
            if local.inputs is None or sorted(local.inputs) != list(expected):
                raise ShapeMismatchError(
                    f"edge {edge_id} must read the in-edges {list(expected)} of "
                    f"{net.tail(edge_id)}, got {local.inputs}"
                )
            rows = (q ** code.n) ** len(expected)
        _check_table(local.table, rows, code.n, q, f"edge {edge_id}")

    if code.decoder is not None:
        expected = net.in_edge_ids(net.sink)
        if sorted(code.decoder.inputs) != list(expected):
            raise ShapeMismatchError(
                f"decoder must read the in-edges {list(expected)} of the sink, "
                f"got {list(code.decoder.inputs)}"
            )
        outputs = f.output_alphabet_size if f is not None else None
        _check_table(
            code.decoder.table,
            (q ** code.n) ** len(expected),
            code.k,
            outputs,
            "decoder",
        )


def _check_table(table, rows, width, alphabet, where):
    if table.ndim != 2 or table.shape != (rows, width):
        raise ShapeMismatchError(
            f"{where} table has shape {table.shape}, expected ({rows}, {width})"
        )
    if alphabet is not None and table.size and (table.min() < 0 or table.max() >= alphabet):
        raise ShapeMismatchError(f"{where} table has a symbol outside [0, {alphabet})")


def _source_symbols(net, k):
    """The k-vector index of every source for every source matrix: (s, q**(k*s))."""
    return input_grid(net.num_sources, net.alphabet_size ** k)


def _input_index(words, inputs, base, size):
    if not inputs:
        return np.zeros(size, dtype=np.int64)
    return mixed_radix_index([words[edge_id] for edge_id in inputs], base)


def _evaluate(code, net, symbols):
    """Word index on every edge for every column of `symbols`."""
    q = net.alphabet_size
    words = {}
    for edge_id in edge_order(net):
        local = code.edges[edge_id]
        if local.inputs is None:
            index = symbols[net.source_index(net.tail(edge_id)) - 1]
        else:
            index = _input_index(words, local.inputs, q ** code.n, symbols.shape[1])
        words[edge_id] = local.words(q)[index]
    return words


def source_matrix(index, net, k):
    """The k x s source matrix with the given index; column i is source i's vector."""
    q = net.alphabet_size
    vectors = mixed_radix_digits(index, q ** k, net.num_sources)
    columns = [mixed_radix_digits(v, q, k) for v in vectors]
    return np.array(columns, dtype=np.int64).T.reshape(k, net.num_sources)


def matrix_index(x_S, net, k):
    x_S = np.asarray(x_S, dtype=np.int64)
    if x_S.shape != (k, net.num_sources):
        raise ShapeMismatchError(
            f"source matrix has shape {x_S.shape}, expected ({k}, {net.num_sources})"
        )
    q = net.alphabet_size
    if x_S.size and (x_S.min() < 0 or x_S.max() >= q):
        raise ShapeMismatchError(f"source matrix has a symbol outside [0, {q})")
    vectors = [mixed_radix_index(column, q) for column in x_S.T]
    return int(mixed_radix_index(vectors, q ** k))


def eval_global(code, net, x_S):
    """Evaluate every edge message for one source matrix.

    Parameters
    ----------
    code: NetworkCode
    net: netcap.network.Network
    x_S: array_like
        k x s matrix; column i holds the k symbols of source i

    Returns
    -------
    dict of str to tuple of int
        The n-symbol word carried by every edge
    """
    check_shape(code, net)
    index = matrix_index(x_S, net, code.k)
    symbols = _source_symbols(net, code.k)[:, [index]]
    words = _evaluate(code, net, symbols)
    return {
        edge_id: mixed_radix_digits(int(word[0]), net.alphabet_size, code.n)
        for edge_id, word in words.items()
    }


@dataclass(frozen=True, eq=False)
class Witness:
    """Two source matrices with equal cut messages but different target values."""

    inputs: np.ndarray
    other: np.ndarray
    value: Tuple[int, ...]
    other_value: Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class DecoderResult:
    """A synthesized cut decoder, or the witness that none exists."""

    inputs: Tuple[str, ...]
    decoder: Optional[Decoder] = None
    reached: Optional[np.ndarray] = None
    outputs: Optional[np.ndarray] = None
    witness: Optional[Witness] = None

    @property
    def ok(self):
        return self.witness is None


def _find_conflict(keys, values):
    """First pair of positions with equal keys and different values, or None."""
    order = np.lexsort((values, keys))
    keys, values = keys[order], values[order]
    clash = np.flatnonzero((keys[1:] == keys[:-1]) & (values[1:] != values[:-1]))
    if clash.size == 0:
        return None
    first, second = sorted((int(order[clash[0]]), int(order[clash[0] + 1])))
    return first, second


def is_single_valued(keys, values):
    """True if equal keys always come with equal values."""
    return _find_conflict(np.asarray(keys), np.asarray(values)) is None


def _vector_value(index, f, k):
    return mixed_radix_digits(int(index), f.output_alphabet_size, k)


def _synthesize(code, net, f, inputs, words, target, limits):
    q = net.alphabet_size
    size = (q ** code.n) ** len(inputs)
    limits.check("max_table_entries", size)
    keys = _input_index(words, inputs, q ** code.n, target.size)
    conflict = _find_conflict(keys, target)
    if conflict is not None:
        first, second = conflict
        witness = Witness(
            source_matrix(first, net, code.k),
            source_matrix(second, net, code.k),
            _vector_value(target[first], f, code.k),
            _vector_value(target[second], f, code.k),
        )
        return DecoderResult(inputs, witness=witness)

    outputs = np.zeros(size, dtype=np.int64)
    reached = np.zeros(size, dtype=bool)
    outputs[keys] = target
    reached[keys] = True
    table = word_symbols(outputs, f.output_alphabet_size, code.k)
    return DecoderResult(inputs, Decoder(inputs, table), reached, outputs)


def _global_cut(net, cut, order):
    cut = tuple(cut)
    if order is None:
        order = tuple(sorted(cut))
    order = tuple(order)
    if len(set(order)) != len(order) or set(order) != set(cut):
        raise ShapeMismatchError(f"edge order {list(order)} does not list the cut {list(cut)}")
    if len(separated_sources(net, cut)) != net.num_sources:
        raise NotGlobalCutError(f"cut is not global: {', '.join(sorted(cut))}")
    return order


def synthesize_decoder(code, net, f, cut, edge_order=None, limits=DEFAULT_LIMITS):
    """Build the decoder reading the messages of a global cut.

    The decoder maps the cut's words, read in `edge_order`, to f evaluated
    row by row on the source matrix. Word tuples that never occur decode to
    output index 0.

    Returns
    -------
    DecoderResult
        Carries a witness pair instead of a decoder when two source matrices
        with equal cut messages need different outputs

    Raises
    ------
    NotGlobalCutError
        If some source still reaches the sink once the cut is deleted
    """
    check_problem(f, net)
    check_shape(code, net, limits=limits)
    order = _global_cut(net, cut, edge_order)
    words = _evaluate(code, net, _source_symbols(net, code.k))
    return _synthesize(code, net, f, order, words, vector_table(f, code.k), limits)


@dataclass(frozen=True, eq=False)
class Counterexample:
    """A source matrix the code gets wrong.

    When the sink cannot tell two matrices apart, `other` holds the second
    matrix and `decoded` the target value it needs.
    """

    inputs: np.ndarray
    expected: Tuple[int, ...]
    decoded: Tuple[int, ...]
    other: Optional[np.ndarray] = None

    def to_dict(self):
        document = {
            "inputs": self.inputs.tolist(),
            "expected": list(self.expected),
            "decoded": list(self.decoded),
        }
        if self.other is not None:
            document["colliding_inputs"] = self.other.tolist()
        return document


@dataclass(frozen=True, eq=False)
class Verdict:
    ok: bool
    checked: int
    counterexample: Optional[Counterexample] = None


def verify_code(code, net, f, limits=DEFAULT_LIMITS):
    """Check the code on every source matrix.

    Uses the code's decoder when it has one, otherwise the decoder
    synthesized over the sink's in-edges.

    Returns
    -------
    Verdict
    """
    check_problem(f, net)
    check_shape(code, net, f, limits=limits)
    words = _evaluate(code, net, _source_symbols(net, code.k))
    target = vector_table(f, code.k)
    checked = int(target.size)

    if code.decoder is None:
        result = _synthesize(
            code, net, f, net.in_edge_ids(net.sink), words, target, limits
        )
        if result.ok:
            return Verdict(True, checked)
        witness = result.witness
        return Verdict(
            False,
            checked,
            Counterexample(witness.inputs, witness.value, witness.other_value, witness.other),
        )

    keys = _input_index(words, code.decoder.inputs, net.alphabet_size ** code.n, checked)
    decoded = word_index(code.decoder.table, f.output_alphabet_size)[keys]
    wrong = np.flatnonzero(decoded != target)
    if wrong.size == 0:
        return Verdict(True, checked)
    first = int(wrong[0])
    return Verdict(
        False,
        checked,
        Counterexample(
            source_matrix(first, net, code.k),
            _vector_value(target[first], f, code.k),
            _vector_value(decoded[first], f, code.k),
        ),
    )


def induce_function(code, net, f, cut, edge_order=None, limits=DEFAULT_LIMITS):
    """The target function the code's decoder defines on a global cut.

    The induced function has one argument per cut edge, in `edge_order`,
    over the alphabet of q**n words, and outputs the index of the k-vector
    of target values.

    Raises
    ------
    DecoderConflictError
        If the cut messages do not determine the target value
    NonSurjectiveEdgeError
        If some cut edge never carries one of the q**n words
    """
    check_problem(f, net)
    check_shape(code, net, limits=limits)
    order = _global_cut(net, cut, edge_order)
    words = _evaluate(code, net, _source_symbols(net, code.k))
    result = _synthesize(code, net, f, order, words, vector_table(f, code.k), limits)
    if not result.ok:
        raise DecoderConflictError(
            f"the messages on {', '.join(order)} do not determine the target value",
            witness=result.witness,
        )
    alphabet = net.alphabet_size ** code.n
    for edge_id in order:
        if np.unique(words[edge_id]).size != alphabet:
            raise NonSurjectiveEdgeError(f"edge {edge_id} does not carry every word")
    return TargetFunction(
        len(order), alphabet, f.output_alphabet_size ** code.k, result.outputs
    )


@dataclass
class Rate2Report:
    """Structure of a (2n, n) code on a two-source network."""

    bijective: Dict[str, bool] = field(default_factory=dict)
    surjective: Dict[str, bool] = field(default_factory=dict)
    fibers: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    fiber_size: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_rate2_structure(code, net, limits=DEFAULT_LIMITS):
    """Check the structure every correct (2n, n) code for max on the two-source network has.

    For each source, the words on its two out-edges determine its 2n
    symbols; every edge carries every word; every word on a source edge
    comes from exactly q**n source vectors.

    Returns
    -------
    Rate2Report
        Violations are reported, not raised

    Raises
    ------
    ShapeMismatchError
        If k != 2n or the network does not have two sources with two
        out-edges each
    """
    if code.k != 2 * code.n:
        raise ShapeMismatchError(
            f"rate-2 structure needs k = 2n, got k={code.k}, n={code.n}"
        )
    if net.num_sources != 2 or any(
        len(net.out_edge_ids(source)) != 2 for source in net.sources
    ):
        raise ShapeMismatchError("rate-2 structure needs two sources with two out-edges each")
    check_shape(code, net, limits=limits)

    q = net.alphabet_size
    alphabet = q ** code.n
    report = Rate2Report(fiber_size=q ** code.n)
    for source in net.sources:
        first, second = (code.edges[e].words(q) for e in net.out_edge_ids(source))
        pairs = np.unique(first * alphabet + second).size
        report.bijective[source] = pairs == q ** code.k
        if not report.bijective[source]:
            report.violations.append(f"out-edges of {source} are not a bijection")
        for edge_id in net.out_edge_ids(source):
            fibers = np.bincount(code.edges[edge_id].words(q), minlength=alphabet)
            report.fibers[edge_id] = tuple(int(c) for c in fibers)
            if np.any(fibers != report.fiber_size):
                report.violations.append(f"edge {edge_id} is not an equipartition")

    words = _evaluate(code, net, _source_symbols(net, code.k))
    for edge_id in net.edge_ids:
        report.surjective[edge_id] = np.unique(words[edge_id]).size == alphabet
        if not report.surjective[edge_id]:
            report.violations.append(f"edge {edge_id} is not surjective")
    return report


class CutRequirement(object):
    """Pairs of source matrices a code must tell apart on one cut.

    Two source matrices that agree on J must produce different messages on
    the cut whenever, in some row, their I-parts are not
    (I, a_J)-equivalent for that row's J-values.
    """

    def __init__(self, f, ctx, k, symbols, limits=DEFAULT_LIMITS):
        self.cut = ctx.cut
        q = f.q
        I, J = sorted(ctx.I), sorted(ctx.J)  # noqa: E741
        classes = np.empty((q ** len(J), q ** len(I)), dtype=np.int64)
        for a_J in Assignment.all(J, q):
            classes[a_J.index(q)] = ec_partition(f, I, J, a_J, limits=limits).labels

        size = symbols.shape[1]
        per_row = []
        for p in range(k):
            digits = (symbols // q ** (k - 1 - p)) % q
            i_index = mixed_radix_index([digits[i - 1] for i in I], q)
            j_index = _input_index(digits, [j - 1 for j in J], q, size)
            per_row.append(classes[j_index, i_index])
        self.required = _dense(per_row, size)
        self.context = _input_index(symbols, [j - 1 for j in J], q ** k, size)

    def holds(self, words):
        keys = _dense([self.context] + [words[edge_id] for edge_id in self.cut], self.context.size)
        return is_single_valued(keys, self.required)


def _dense(columns, size):
    """Number the distinct rows of the stacked columns 0, 1, ... in sorted order."""
    key = np.zeros(size, dtype=np.int64)
    for column in columns:
        key = key * (int(column.max()) + 1) + column
        key = np.unique(key, return_inverse=True)[1].reshape(-1)
    return key


def cut_condition_holds(code, net, f, ctx, limits=DEFAULT_LIMITS):
    """True if the code separates every pair of source matrices it must on this cut."""
    check_problem(f, net)
    check_shape(code, net, limits=limits)
    symbols = _source_symbols(net, code.k)
    words = _evaluate(code, net, symbols)
    return CutRequirement(f, ctx, code.k, symbols, limits).holds(words)


def violated_cuts(code, net, f, max_size=None, limits=DEFAULT_LIMITS):
    """Every cut on which the code fails the distinguishability condition."""
    check_problem(f, net)
    check_shape(code, net, limits=limits)
    symbols = _source_symbols(net, code.k)
    words = _evaluate(code, net, symbols)
    return [
        ctx.cut
        for ctx in enumerate_cuts(net, max_size=max_size, limits=limits)
        if not CutRequirement(f, ctx, code.k, symbols, limits).holds(words)
    ]


def parse_code(text, source=None, limits=DEFAULT_LIMITS):
    """Parse a code file.

    Returns
    -------
    NetworkCode
    """
    doc = read_json(text, source)
    check_fields(doc, ("k", "n", "edges"), ("decoder",), where="code")
    validate_type([doc["k"], doc["n"]], int, where="code")
    if not isinstance(doc["edges"], dict):
        raise NetworkParseError("field edges must be an object keyed by edge id")

    edges = {}
    for edge_id, record in doc["edges"].items():
        where = f"edge {edge_id}"
        check_fields(record, ("table",), ("inputs",), where=where)
        inputs = record.get("inputs")
        if inputs is not None:
            if not isinstance(inputs, list):
                raise NetworkParseError(f"inputs of {where} must be a list")
            validate_type(inputs, str, where=where)
        edges[edge_id] = EdgeFunction(_parse_table(record["table"], where, limits), inputs)

    decoder = None
    if doc.get("decoder") is not None:
        record = doc["decoder"]
        check_fields(record, ("inputs", "table"), where="decoder")
        if not isinstance(record["inputs"], list):
            raise NetworkParseError("inputs of decoder must be a list")
        validate_type(record["inputs"], str, where="decoder")
        decoder = Decoder(record["inputs"], _parse_table(record["table"], "decoder", limits))
    return NetworkCode(doc["k"], doc["n"], edges, decoder)


def _parse_table(rows, where, limits):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise NetworkParseError(f"table of {where} must be a nonempty list of words")
    limits.check("max_table_entries", len(rows))
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise NetworkParseError(f"table of {where} has words of different lengths")
        validate_type(row, int, where=f"table of {where}")
    return np.array(rows, dtype=np.int64).reshape(len(rows), width)


def load_code(path, limits=DEFAULT_LIMITS):
    """Read and parse a code file."""
    return parse_code(read_text(path), source=str(path), limits=limits)


def code_to_dict(code):
    document = {"k": code.k, "n": code.n, "edges": {}}
    for edge_id, local in code.edges.items():
        record = {"table": local.table.tolist()}
        if local.inputs is not None:
            record["inputs"] = list(local.inputs)
        document["edges"][edge_id] = record
    if code.decoder is not None:
        document["decoder"] = {
            "inputs": list(code.decoder.inputs),
            "table": code.decoder.table.tolist(),
        }
    return document


def dump_code(code):
    return dump_json(code_to_dict(code))


def global_cut_order(net, cut):
    """Validate a cut given on the command line and return it in the given order."""
    for edge_id in cut:
        if not net.has_edge_id(edge_id):
            raise UnknownIdentifierError(f"unknown edge id: {edge_id}")
    ctx = cut_context(net, cut)
    if ctx is None or not ctx.is_global:
        raise NotGlobalCutError(f"cut is not global: {', '.join(cut)}")
    return tuple(cut)
