"""Module to represent function-computing networks as graph structures."""
from functools import cached_property

import networkx as nx

from netcap.exceptions import (
    CycleError,
    NetworkParseError,
    UnknownIdentifierError,
)
from netcap.utils.io import dump_json, read_json, read_text
from netcap.utils.misc import check_fields, validate_type

NETWORK_FIELDS = ("alphabet_size", "nodes", "sources", "sink", "edges")
EDGE_FIELDS = ("id", "tail", "head")


class Network(nx.MultiDiGraph):
    """A directed acyclic multigraph with ordered sources and a single sink.

    This class subclasses nx.MultiDiGraph. Nodes are identified by text
    labels and every edge is keyed by its edge id, so parallel edges are
    distinct edges of the network. The ordered source list, the sink and
    the alphabet size q are stored as graph attributes.

    Use `Network.build` to construct a network; the returned graph is
    frozen and must not be modified afterwards.
    """

    def __init__(self, *args, **kwargs):
        super(Network, self).__init__(*args, **kwargs)
        self.graph.setdefault("sources", ())
        self.graph.setdefault("sink", None)
        self.graph.setdefault("alphabet_size", 2)
        self.graph.setdefault("edge_ids", ())

    @classmethod
    def build(cls, nodes, edges, sources, sink, alphabet_size=2):
        """Create a frozen network.

        Parameters
        ----------
        nodes: iterable of str
            The node ids
        edges: iterable of (str, str, str)
            (edge id, tail node id, head node id) records in file order
        sources: iterable of str
            The source node ids; position i is source i+1
        sink: str
            The sink node id
        alphabet_size: int, default=2
            The size q of the symbol alphabet carried by each edge use

        Returns
        -------
        Network

        Raises
        ------
        NetworkParseError
            For duplicate ids or references to unknown nodes
        """
        net = cls()
        for node in nodes:
            if node in net:
                raise NetworkParseError(f"duplicate node id: {node}")
            net.add_node(node)

        edge_ids = []
        for edge_id, tail, head in edges:
            if edge_id in edge_ids:
                raise NetworkParseError(f"duplicate edge id: {edge_id}")
            for end in (tail, head):
                if end not in net:
                    raise NetworkParseError(
                        f"edge {edge_id} references unknown node: {end}"
                    )
            net.add_edge(tail, head, key=edge_id)
            edge_ids.append(edge_id)

        sources = tuple(sources)
        for node in sources + (sink,):
            if node not in net:
                raise NetworkParseError(f"unknown node: {node}")

        net.graph.update(
            sources=sources,
            sink=sink,
            alphabet_size=alphabet_size,
            edge_ids=tuple(edge_ids),
        )
        return nx.freeze(net)

    @property
    def sources(self):
        """The ordered source node ids."""
        return self.graph["sources"]

    @property
    def sink(self):
        return self.graph["sink"]

    @property
    def alphabet_size(self):
        return self.graph["alphabet_size"]

    @property
    def edge_ids(self):
        """Edge ids in file order."""
        return self.graph["edge_ids"]

    @property
    def num_sources(self):
        return len(self.sources)

    @cached_property
    def _endpoints(self):
        return {key: (tail, head) for tail, head, key in self.edges(keys=True)}

    def has_edge_id(self, edge_id):
        return edge_id in self._endpoints

    def endpoints(self, edge_id):
        """Return (tail, head) of an edge."""
        try:
            return self._endpoints[edge_id]
        except KeyError:
            raise UnknownIdentifierError(f"unknown edge id: {edge_id}")

    def tail(self, edge_id):
        return self.endpoints(edge_id)[0]

    def head(self, edge_id):
        return self.endpoints(edge_id)[1]

    def in_edge_ids(self, node):
        """Ids of the edges entering `node`, sorted by id."""
        self._check_node(node)
        return tuple(sorted(key for _, _, key in self.in_edges(node, keys=True)))

    def out_edge_ids(self, node):
        """Ids of the edges leaving `node`, sorted by id."""
        self._check_node(node)
        return tuple(
            sorted(key for _, _, key in self.out_edges(node, keys=True))
        )

    def source_index(self, node):
        """Return the 1-based source index of `node`, or None."""
        for index, source in enumerate(self.sources, start=1):
            if source == node:
                return index
        return None

    def source_node(self, index):
        """Return the node id of source `index` (1-based)."""
        if not 1 <= index <= self.num_sources:
            raise UnknownIdentifierError(f"unknown source index: {index}")
        return self.sources[index - 1]

    def is_source_edge(self, edge_id):
        return self.tail(edge_id) in self.sources

    def _check_node(self, node):
        if node not in self:
            raise UnknownIdentifierError(f"unknown node id: {node}")


def parse_network(text, source=None):
    """Parse the contents of a network file.

    Structural invariants are not checked here; see
    `netcap.validator.validate_network`.

    Parameters
    ----------
    text: str
        Contents of a network JSON file
    source: optional, str, default=None
        Name of the file, used in error messages

    Returns
    -------
    Network
    """
    doc = read_json(text, source)
    check_fields(doc, NETWORK_FIELDS, where="network")

    validate_type([doc["alphabet_size"]], int, where="alphabet_size")
    for name in ("nodes", "sources", "edges"):
        if not isinstance(doc[name], list):
            raise NetworkParseError(f"field {name} must be a list")
    validate_type(doc["nodes"], str, where="nodes")
    validate_type(doc["sources"], str, where="sources")
    validate_type([doc["sink"]], str, where="sink")

    edges = []
    for record in doc["edges"]:
        check_fields(record, EDGE_FIELDS, where="edge record")
        validate_type(record.values(), str, where="edge record")
        edges.append((record["id"], record["tail"], record["head"]))

    return Network.build(
        nodes=doc["nodes"],
        edges=edges,
        sources=doc["sources"],
        sink=doc["sink"],
        alphabet_size=doc["alphabet_size"],
    )


def load_network(path):
    """Read and parse a network file."""
    return parse_network(read_text(path), source=str(path))


def network_to_dict(net):
    """Return the canonical JSON document of a network."""
    return {
        "alphabet_size": net.alphabet_size,
        "nodes": list(net.nodes),
        "sources": list(net.sources),
        "sink": net.sink,
        "edges": [
            {"id": edge_id, "tail": net.tail(edge_id), "head": net.head(edge_id)}
            for edge_id in net.edge_ids
        ],
    }


def dump_network(net):
    """Serialize a network to the network file format."""
    return dump_json(network_to_dict(net))


def topo_order(net):
    """Return the node ids in topological order.

    Ties are broken by ascending node id.

    Raises
    ------
    CycleError
        If the network contains a directed cycle
    """
    try:
        return list(nx.lexicographical_topological_sort(net))
    except nx.NetworkXUnfeasible:
        raise CycleError("cycle detected: the network has no topological order")


def edge_order(net):
    """Return the edge ids ordered by the position of their tail, then by id.

    This is the order in which the messages of a network code are computed.
    """
    position = {node: i for i, node in enumerate(topo_order(net))}
    return sorted(net.edge_ids, key=lambda e: (position[net.tail(e)], e))


def reaches(net, u, v):
    """Return True if there is a directed path from `u` to `v`.

    A node always reaches itself.
    """
    net._check_node(u)
    net._check_node(v)
    if u == v:
        return True
    return nx.has_path(net, u, v)
