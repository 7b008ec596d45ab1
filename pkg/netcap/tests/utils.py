import glob
import itertools
from os.path import abspath, join, split

from netcap.functions import TargetFunction


def get_fn(filename):
    """Gets the full path of the file name for a particular test file.

    Parameters
    ----------
    filename : str
        Name of the file to get

    Returns
    -------
    path: str
        Name of the test file with the full path location
    """
    return join(split(abspath(__file__))[0], "files", filename)


def glob_fn(pattern):
    """Gets the full paths for test files adhering to the glob pattern."""
    return glob.glob(join(split(abspath(__file__))[0], "files", pattern))


def dfs_reachable(net, start, removed=()):
    """Nodes reachable from `start` by plain depth-first search."""
    removed = set(removed)
    adjacency = {}
    for edge_id in net.edge_ids:
        if edge_id not in removed:
            tail, head = net.endpoints(edge_id)
            adjacency.setdefault(tail, []).append(head)
    seen, stack = {start}, [start]
    while stack:
        node = stack.pop()
        for head in adjacency.get(node, ()):
            if head not in seen:
                seen.add(head)
                stack.append(head)
    return seen


def brute_separated_sources(net, cut):
    return frozenset(
        index
        for index, source in enumerate(net.sources, start=1)
        if net.sink not in dfs_reachable(net, source, cut)
    )


def brute_num_classes(f, I, J, a_J):
    """Count (I, a_J)-classes by comparing full value signatures."""
    rest = [i for i in range(1, f.arity + 1) if i not in I and i not in J]
    signatures = set()
    for b in itertools.product(range(f.q), repeat=len(I)):
        signature = []
        for d in itertools.product(range(f.q), repeat=len(rest)):
            x = [0] * f.arity
            for source, value in zip(I, b):
                x[source - 1] = value
            for source, value in zip(J, a_J):
                x[source - 1] = value
            for source, value in zip(rest, d):
                x[source - 1] = value
            signature.append(f(*x))
        signatures.add(tuple(signature))
    return len(signatures)


def induced_max_table():
    """F(y1, y2, y3) = (max(y1, y3), y2) over bits, output encoded as 2*row1 + row2."""
    table = [
        2 * max(y1, y3) + y2
        for y1, y2, y3 in itertools.product(range(2), repeat=3)
    ]
    return TargetFunction(3, 2, 4, table)


def brute_set_partitions(items):
    """Every set partition of `items`, built by inserting one item at a time."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in brute_set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
