import networkx as nx
import pytest

from netcap.exceptions import CycleError, NetworkParseError, UnknownIdentifierError
from netcap.network import (
    Network,
    dump_network,
    edge_order,
    load_network,
    network_to_dict,
    parse_network,
    reaches,
    topo_order,
)
from netcap.tests.base_test import BaseTest
from netcap.tests.utils import get_fn


class TestNetwork(BaseTest):
    def test_attributes(self, three_source):
        assert three_source.sources == ("s1", "s2", "s3")
        assert three_source.sink == "rho"
        assert three_source.alphabet_size == 2
        assert three_source.num_sources == 3
        assert three_source.edge_ids == ("e1", "e2", "e3", "e4", "e5", "e6")

    def test_frozen(self, three_source):
        assert nx.is_frozen(three_source)
        with pytest.raises(nx.NetworkXError):
            three_source.add_edge("s1", "rho", key="e9")

    def test_endpoints(self, reverse_butterfly):
        assert reverse_butterfly.endpoints("e5") == ("v1", "v2")
        assert reverse_butterfly.tail("e8") == "v3"
        assert reverse_butterfly.head("e8") == "rho"
        assert reverse_butterfly.in_edge_ids("rho") == ("e8", "e9")
        assert reverse_butterfly.out_edge_ids("s1") == ("e1", "e2")
        assert reverse_butterfly.is_source_edge("e4")
        assert not reverse_butterfly.is_source_edge("e5")

    def test_source_index(self, three_source):
        assert three_source.source_index("s2") == 2
        assert three_source.source_index("v1") is None
        assert three_source.source_node(3) == "s3"
        with pytest.raises(UnknownIdentifierError):
            three_source.source_node(4)

    def test_unknown_ids(self, three_source):
        with pytest.raises(UnknownIdentifierError, match="unknown edge id: e9"):
            three_source.endpoints("e9")
        with pytest.raises(UnknownIdentifierError, match="unknown node id: v9"):
            three_source.in_edge_ids("v9")
        with pytest.raises(KeyError):
            three_source.tail("e9")

    def test_parallel_edges(self):
        net = load_network(get_fn("parallel.json"))
        assert net.number_of_edges() == 2
        assert net.out_edge_ids("s1") == ("e1", "e2")
        assert net.in_edge_ids("rho") == ("e1", "e2")

    def test_topo_order(self, reverse_butterfly):
        order = topo_order(reverse_butterfly)
        assert order[:2] == ["s1", "s2"]
        assert order[-1] == "rho"

    def test_topo_order_cycle(self):
        with pytest.raises(CycleError):
            topo_order(load_network(get_fn("cyclic.json")))

    def test_edge_order(self, reverse_butterfly, lower):
        assert edge_order(reverse_butterfly) == [
            "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"
        ]
        assert edge_order(lower) == ["e1", "e6", "e7", "e4", "e8", "e9"]

    def test_reaches(self, three_source):
        assert reaches(three_source, "s1", "rho")
        assert reaches(three_source, "v1", "v1")
        assert not reaches(three_source, "s1", "v2")
        with pytest.raises(UnknownIdentifierError):
            reaches(three_source, "s1", "nowhere")

    def test_dump_and_parse(self, reverse_butterfly):
        text = dump_network(reverse_butterfly)
        again = parse_network(text)
        assert network_to_dict(again) == network_to_dict(reverse_butterfly)
        assert dump_network(again) == text

    def test_build_rejects_duplicate_node(self):
        with pytest.raises(NetworkParseError, match="duplicate node id"):
            Network.build(["s1", "s1"], [], ["s1"], "s1")

    def test_build_rejects_unknown_sink(self):
        with pytest.raises(NetworkParseError, match="unknown node: rho"):
            Network.build(["s1"], [], ["s1"], "rho")

    def test_parse_positions(self):
        with pytest.raises(NetworkParseError) as excinfo:
            load_network(get_fn("malformed_error.json"))
        assert excinfo.value.line == 2
        assert "malformed JSON" in str(excinfo.value)

    def test_parse_missing_field(self):
        with pytest.raises(NetworkParseError, match="missing field\\(s\\) in network: sink"):
            load_network(get_fn("missing_field_error.json"))

    def test_parse_unknown_field(self):
        text = dump_network(load_network(get_fn("path.json")))
        with pytest.raises(NetworkParseError, match="unknown field"):
            parse_network(text.replace('"sink"', '"colour": 1, "sink"'))

    def test_parse_wrong_type(self):
        text = dump_network(load_network(get_fn("path.json")))
        with pytest.raises(NetworkParseError, match="alphabet_size"):
            parse_network(text.replace('"alphabet_size": 2', '"alphabet_size": "2"'))
        with pytest.raises(NetworkParseError):
            parse_network(text.replace('"alphabet_size": 2', '"alphabet_size": true'))
