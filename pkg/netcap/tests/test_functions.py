import itertools

import numpy as np
import pytest

from netcap.exceptions import (
    InvalidLinearSpecError,
    LimitExceededError,
    NetcapError,
    NetworkParseError,
    NonPrimeFieldError,
    ProblemMismatchError,
)
from netcap.functions import (
    LinearSpec,
    TargetFunction,
    check_problem,
    dump_function,
    function_to_dict,
    image_size,
    input_grid,
    linear_from_spec,
    load_function,
    make_builtin,
    mixed_radix_digits,
    mixed_radix_index,
    parse_function,
    rank_over_prime_field,
    vector_table,
)
from netcap.limits import Limits
from netcap.tests.base_test import BaseTest
from netcap.tests.utils import get_fn

LINEAR_THAT_TABLE = [0, 2, 1, 3, 2, 0, 3, 1]


class TestFunctions(BaseTest):
    def test_input_grid(self):
        grid = input_grid(2, 3)
        assert grid.shape == (2, 9)
        assert grid[:, 5].tolist() == [1, 2]
        assert input_grid(0, 2).shape == (0, 1)

    def test_mixed_radix(self):
        assert mixed_radix_index((1, 0, 1), 2) == 5
        assert mixed_radix_digits(5, 2, 3) == (1, 0, 1)
        assert mixed_radix_digits(7, 8, 2) == (0, 7)

    @pytest.mark.parametrize(
        "kind, outputs, x, value",
        [
            ("arith_sum", 4, (1, 1, 0), 2),
            ("mod_sum", 2, (1, 1, 0), 0),
            ("max", 2, (0, 1, 0), 1),
            ("min", 2, (0, 1, 1), 0),
            ("identity", 8, (1, 1, 0), 6),
        ],
    )
    def test_builtins(self, kind, outputs, x, value):
        f = make_builtin(kind, 3, 2)
        assert f.output_alphabet_size == outputs
        assert f(*x) == value

    def test_arith_sum_larger_alphabet(self):
        f = make_builtin("arith_sum", 2, 3)
        assert f.output_alphabet_size == 5
        assert f(2, 2) == 4

    def test_unknown_builtin(self):
        with pytest.raises(NetcapError, match="unsupported function kind"):
            make_builtin("median", 3, 2)

    def test_table_size_limit(self):
        with pytest.raises(LimitExceededError) as excinfo:
            make_builtin("max", 21, 2)
        assert excinfo.value.limit == "max_table_entries"
        make_builtin("max", 4, 2, limits=Limits(max_table_entries=16))

    def test_table_is_read_only(self, arith_sum3):
        with pytest.raises(ValueError):
            arith_sum3.table[0] = 1

    def test_from_table(self):
        f = TargetFunction.from_table(2, 2, [0, 3, 1, 1])
        assert f.output_alphabet_size == 4
        assert f(0, 1) == 3
        assert list(f.inputs()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert f.as_array().tolist() == [[0, 3], [1, 1]]

    def test_equality(self, arith_sum3):
        assert arith_sum3 == make_builtin("arith_sum", 3, 2)
        assert arith_sum3 != make_builtin("max", 3, 2)
        assert hash(arith_sum3) == hash(make_builtin("arith_sum", 3, 2))

    def test_invalid_tables(self):
        with pytest.raises(NetcapError, match="expected q\\^s"):
            TargetFunction(2, 2, 2, [0, 1, 1])
        with pytest.raises(NetcapError, match="output_alphabet_size"):
            TargetFunction(1, 2, 2, [0, 2])
        with pytest.raises(NetcapError):
            TargetFunction(1, 2, 2, [0, 1])(0, 1)

    def test_linear_that(self, linear_that):
        assert linear_that.output_alphabet_size == 4
        assert linear_that.table.tolist() == LINEAR_THAT_TABLE

    def test_linear_over_three(self):
        f = linear_from_spec(LinearSpec(3, [[1, 2]]))
        assert f(1, 1) == 0
        assert f(2, 0) == 2

    @pytest.mark.parametrize(
        "matrix, message",
        [
            ([], "empty"),
            ([[1, 0], [1]], "ragged"),
            ([[1, 2]], "entries"),
            ([[1, 0]], "column 2 is all zero"),
            ([[1, 1], [1, 1]], "rank"),
        ],
    )
    def test_invalid_linear(self, matrix, message):
        with pytest.raises(InvalidLinearSpecError, match=message):
            linear_from_spec(LinearSpec(2, matrix))

    def test_non_prime(self):
        with pytest.raises(NonPrimeFieldError):
            linear_from_spec(LinearSpec(4, [[1, 1]]))
        with pytest.raises(NonPrimeFieldError):
            load_function(get_fn("fn_nonprime_error.json"))

    def test_rank(self):
        assert rank_over_prime_field([], 2) == 0
        assert rank_over_prime_field([(1, 0), (0, 1), (1, 1)], 2) == 2
        assert rank_over_prime_field([(1, 1), (1, 1)], 2) == 1
        assert rank_over_prime_field([(1, 2), (2, 1)], 3) == 1
        assert rank_over_prime_field([(1, 2), (2, 1)], 5) == 2

    def test_image_size(self, arith_sum3, linear_that):
        assert image_size(arith_sum3) == 4
        assert image_size(linear_that) == 4
        assert image_size(make_builtin("max", 2, 2)) == 2

    def test_vector_table(self, max2):
        table = vector_table(max2, 2)
        assert table.size == 16
        # x1 = (1, 0), x2 = (0, 0) -> rows (1, 0) -> 2
        assert table[mixed_radix_index((2, 0), 4)] == 2
        # x1 = (0, 1), x2 = (1, 0) -> rows (1, 1) -> 3
        assert table[mixed_radix_index((1, 2), 4)] == 3
        assert np.array_equal(vector_table(max2, 1), max2.table)

    def test_parse_builtin(self):
        f = parse_function('{"type": "builtin", "kind": "max", "s": 2, "q": 3}')
        assert f == make_builtin("max", 2, 3)

    def test_parse_errors(self):
        with pytest.raises(NetworkParseError, match="type"):
            parse_function('{"kind": "max"}')
        with pytest.raises(NetworkParseError, match="unknown function type"):
            parse_function('{"type": "sparse"}')
        with pytest.raises(NetworkParseError, match="missing field"):
            parse_function('{"type": "builtin", "kind": "max", "s": 2}')
        with pytest.raises(NetworkParseError):
            load_function(get_fn("fn_short_table_error.json"))

    def test_parse_table_not_a_list(self):
        text = '{"type": "table", "s": 1, "q": 2, "output_alphabet_size": 2, "table": 5}'
        with pytest.raises(NetworkParseError, match="table must be a list"):
            parse_function(text)

    def test_parse_unknown_builtin_kind(self):
        with pytest.raises(NetworkParseError, match="unsupported function kind 'median'"):
            parse_function('{"type": "builtin", "kind": "median", "s": 2, "q": 2}')

    def test_function_file_round_trip(self, linear_that):
        text = dump_function(linear_that)
        assert function_to_dict(linear_that)["type"] == "table"
        assert parse_function(text) == linear_that

    def test_load_function(self):
        assert load_function(get_fn("fn_max3.json")) == make_builtin("max", 3, 2)

    def test_check_problem(self, three_source, arith_sum3, max2):
        check_problem(arith_sum3, three_source)
        with pytest.raises(ProblemMismatchError):
            check_problem(max2, three_source)
        with pytest.raises(ProblemMismatchError):
            check_problem(make_builtin("max", 3, 3), three_source)


class TestFunctionTables(BaseTest):
    FORMULAS = {
        "arith_sum": lambda x, q: sum(x),
        "mod_sum": lambda x, q: sum(x) % q,
        "max": lambda x, q: max(x),
        "min": lambda x, q: min(x),
        "identity": lambda x, q: mixed_radix_index(x, q),
    }

    @pytest.mark.parametrize("kind", sorted(FORMULAS))
    @pytest.mark.parametrize("s, q", [(1, 2), (2, 3), (3, 2), (3, 4), (4, 3)])
    def test_builtin_tables_are_exhaustive(self, kind, s, q):
        f = make_builtin(kind, s, q)
        formula = self.FORMULAS[kind]
        for x in itertools.product(range(q), repeat=s):
            assert f(*x) == formula(x, q)
            assert f(*x) < f.output_alphabet_size

    @pytest.mark.parametrize(
        "spec",
        [
            LinearSpec(2, [[1, 0, 1], [0, 1, 0]]),
            LinearSpec(2, [[1, 1]]),
            LinearSpec(3, [[1, 2]]),
            LinearSpec(3, [[1, 0], [0, 1]]),
            LinearSpec(5, [[1, 2, 3], [0, 1, 4]]),
        ],
    )
    def test_linear_tables_are_additive(self, spec):
        f = linear_from_spec(spec)
        q, rows = spec.q, spec.l
        inputs = list(itertools.product(range(q), repeat=spec.s))
        for x in inputs:
            fx = mixed_radix_digits(f(*x), q, rows)
            for y in inputs:
                fy = mixed_radix_digits(f(*y), q, rows)
                total = tuple((a + b) % q for a, b in zip(x, y))
                expected = tuple((a + b) % q for a, b in zip(fx, fy))
                assert mixed_radix_digits(f(*total), q, rows) == expected
