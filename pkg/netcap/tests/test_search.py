import itertools

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from netcap.codes import check_rate2_structure, verify_code
from netcap.exceptions import LimitExceededError, NetcapError, ProblemMismatchError
from netcap.functions import TargetFunction, make_builtin
from netcap.limits import Limits
from netcap.network import load_network
from netcap.search import (
    restricted_growth_count,
    restricted_growth_strings,
    search_code,
)
from netcap.tests.base_test import BaseTest
from netcap.tests.utils import get_fn

FIXTURE_SETTINGS = settings(
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)


def table_functions(arity):
    return st.lists(
        st.integers(min_value=0, max_value=3), min_size=2 ** arity, max_size=2 ** arity
    ).map(lambda table: TargetFunction(arity, 2, max(table) + 1, table))


class TestRestrictedGrowth(BaseTest):
    def test_binary(self):
        assert list(restricted_growth_strings(3, 2)) == [
            (0, 0, 0),
            (0, 0, 1),
            (0, 1, 0),
            (0, 1, 1),
        ]

    def test_ternary(self):
        assert list(restricted_growth_strings(3, 3)) == [
            (0, 0, 0),
            (0, 0, 1),
            (0, 1, 0),
            (0, 1, 1),
            (0, 1, 2),
        ]

    def test_empty(self):
        assert list(restricted_growth_strings(0, 2)) == [()]
        assert restricted_growth_count(0, 2) == 1

    @pytest.mark.parametrize("length", range(1, 7))
    @pytest.mark.parametrize("alphabet", [1, 2, 3, 4])
    def test_count(self, length, alphabet):
        strings = list(restricted_growth_strings(length, alphabet))
        assert len(strings) == restricted_growth_count(length, alphabet)
        assert len(set(strings)) == len(strings)
        assert strings == sorted(strings)

    def test_bell_numbers(self):
        assert [restricted_growth_count(n, n) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


class TestSearch(BaseTest):
    def test_arith_sum_rate_one_is_impossible(self, three_source, arith_sum3):
        result = search_code(three_source, arith_sum3, 1, 1)
        assert result.status == "exhausted"
        assert result.code is None
        assert result.reason is None
        assert result.nodes > 0

    def test_reverse_butterfly_rate_one(self, reverse_butterfly, max2):
        result = search_code(reverse_butterfly, max2, 1, 1)
        assert result.found
        assert result.code.decoder is not None
        assert verify_code(result.code, reverse_butterfly, max2).ok

    @pytest.mark.timeout(120)
    def test_upper_rate_two(self, upper, max2):
        result = search_code(upper, max2, 2, 1)
        assert result.found
        assert verify_code(result.code, upper, max2).ok
        assert check_rate2_structure(result.code, upper).ok

    def test_max_candidates(self, reverse_butterfly, max2):
        result = search_code(reverse_butterfly, max2, 1, 1, max_candidates=0)
        assert result.status == "timeout"
        assert result.reason == "max_candidates=0 reached"
        assert result.candidates == 0

    def test_timeout(self, reverse_butterfly, max2):
        result = search_code(reverse_butterfly, max2, 1, 1, timeout=0)
        assert result.status == "timeout"
        assert result.reason == "timeout reached"

    def test_search_space_limit(self, reverse_butterfly, max2):
        with pytest.raises(LimitExceededError) as excinfo:
            search_code(reverse_butterfly, max2, 1, 1, limits=Limits(max_search_space=10))
        assert excinfo.value.limit == "max_search_space"

    def test_mismatch(self, reverse_butterfly, arith_sum3):
        with pytest.raises(ProblemMismatchError):
            search_code(reverse_butterfly, arith_sum3, 1, 1)

    def test_invalid_network(self, max2):
        net = load_network(get_fn("source_incoming.json"))
        with pytest.raises(NetcapError):
            search_code(net, make_builtin("max", 2, 2), 1, 1)

    @pytest.mark.parametrize(
        "network_file, k, n, status",
        [
            ("path.json", 1, 1, "found"),
            ("path.json", 2, 1, "exhausted"),
            ("parallel.json", 2, 1, "found"),
        ],
    )
    def test_pruning_keeps_the_verdict(self, network_file, k, n, status):
        net = load_network(get_fn(network_file))
        identity = make_builtin("identity", 1, 2)
        pruned = search_code(net, identity, k, n)
        plain = search_code(net, identity, k, n, prune=False)
        assert pruned.status == plain.status == status
        assert pruned.nodes <= plain.nodes

    @pytest.mark.parametrize("network_file", ["path.json", "parallel.json"])
    @pytest.mark.parametrize("k", [1, 2])
    def test_pruning_oracle_on_two_edges(self, network_file, k):
        net = load_network(get_fn(network_file))
        for table in itertools.product(range(3), repeat=2):
            f = TargetFunction(1, 2, max(table) + 1, table)
            pruned = search_code(net, f, k, 1)
            plain = search_code(net, f, k, 1, prune=False)
            assert pruned.status == plain.status

    @FIXTURE_SETTINGS
    @given(f=table_functions(2))
    def test_pruning_oracle_on_relay(self, f):
        net = load_network(get_fn("relay.json"))
        pruned = search_code(net, f, 1, 1)
        plain = search_code(net, f, 1, 1, prune=False)
        assert pruned.status == plain.status
        for result in (pruned, plain):
            if result.found:
                assert verify_code(result.code, net, f).ok
