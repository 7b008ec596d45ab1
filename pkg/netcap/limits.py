"""Resource limits shared by every enumeration in netcap."""
from dataclasses import dataclass
from typing import Optional

from netcap.exceptions import LimitExceededError


@dataclass(frozen=True)
class Limits:
    """Upper bounds on the size of exhaustive computations.

    Parameters
    ----------
    max_table_entries: int, default=2**20
        Largest dense table (function tables, code tables and the number
        of source matrices a code is evaluated on)
    max_cut_edges: int, default=20
        Largest edge count for which every edge subset is enumerated
    max_partition_blocks: int or None, default=None
        Cap on the number of blocks of a strong partition
    max_class_space: int, default=2**16
        Largest ground set A^I of an equivalence partition
    max_assignment_space: int, default=2**16
        Largest joint space of J- and L-assignments scanned for one
        strong partition
    max_search_space: int, default=2**40
        Largest estimated number of code candidates a search may visit
    """

    max_table_entries: int = 2 ** 20
    max_cut_edges: int = 20
    max_partition_blocks: Optional[int] = None
    max_class_space: int = 2 ** 16
    max_assignment_space: int = 2 ** 16
    max_search_space: int = 2 ** 40

    def check(self, name, requested):
        """Raise LimitExceededError if `requested` is above the named limit."""
        allowed = getattr(self, name)
        if allowed is not None and requested > allowed:
            raise LimitExceededError(name, requested, allowed)


DEFAULT_LIMITS = Limits()
