"""Validation of the structural rules of a network."""
from collections import Counter
from dataclasses import dataclass, field
from typing import List

import networkx as nx

from netcap.exceptions import ValidationError, raise_collected


@dataclass
class ValidationReport:
    """The violations found in a network. Empty means the network is valid."""

    violations: List[ValidationError] = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def messages(self):
        return [str(violation) for violation in self.violations]

    def raise_for_violations(self):
        """Raise the collected violations, if any."""
        raise_collected(self.violations)


class NetworkValidator(object):
    """Check a network against every structural rule and collect violations."""

    def __init__(self, net):
        self.net = net
        self.errors = []

    def run(self):
        self.validate_alphabet()
        self.validate_sources()
        self.validate_acyclic()
        self.validate_sink_reachability()
        return ValidationReport(self.errors)

    def report(self, rule, subject):
        self.errors.append(ValidationError(f"{rule}: {subject}", rule, subject))

    def validate_alphabet(self):
        if self.net.alphabet_size < 2:
            self.report("alphabet size must be at least 2", self.net.alphabet_size)

    def validate_sources(self):
        net = self.net
        if not net.sources:
            self.report("network has no sources", net.sink)

        for source, count in Counter(net.sources).items():
            if count > 1:
                self.report("source listed twice", source)
        if net.sink in net.sources:
            self.report("sink is listed as a source", net.sink)

        for source in dict.fromkeys(net.sources):
            if net.in_degree(source) > 0:
                self.report("source has incoming edge", source)
        if net.out_degree(net.sink) > 0:
            self.report("sink has outgoing edge", net.sink)

    def validate_acyclic(self):
        try:
            cycle = nx.find_cycle(self.net)
        except nx.NetworkXNoCycle:
            return
        path = [edge[0] for edge in cycle] + [cycle[0][0]]
        self.report("cycle detected", " -> ".join(path))

    def validate_sink_reachability(self):
        net = self.net
        reaching = nx.ancestors(net, net.sink)
        for node in net.nodes:
            if node != net.sink and node not in reaching:
                self.report("node has no path to sink", node)


def validate_network(net):
    """Check every structural rule of a network.

    The rules are: q is at least 2; there is at least one source and the
    sources are distinct from each other and from the sink; sources have no
    incoming edges and the sink has no outgoing edges; the graph is acyclic;
    every node other than the sink has a directed path to the sink.

    Parameters
    ----------
    net: netcap.network.Network

    Returns
    -------
    ValidationReport
        One violation per offending rule and node
    """
    return NetworkValidator(net).run()
