"""Upper bounds on the computing capacity of a network and target function.

Every bound is a minimum over cuts of |C| / log_q n for a cut-dependent
count n. Ratios are compared exactly on integers:
|C1| / log n1 < |C2| / log n2  iff  n2 ** |C1| < n1 ** |C2|.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from netcap.cuts import enumerate_cuts
from netcap.equivalence import n_C_f, w_C_f
from netcap.functions import check_problem, image_size
from netcap.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)

BOUND_KINDS = ("footprint", "huang", "improved")


def exact_log(n, q):
    """Return k if n == q**k, else None."""
    k, power = 0, 1
    while power < n:
        power *= q
        k += 1
    return k if power == n else None


def ratio_value(size, count, q):
    """The float |C| / log_q(count); +inf when count is 1."""
    if count <= 1:
        return math.inf
    k = exact_log(count, q)
    if k is not None:
        return size / k
    return size * math.log(q) / math.log(count)


def ratio_less(a, b):
    """True if the ratio of (size, count) pair `a` is strictly below that of `b`."""
    size_a, count_a = a
    size_b, count_b = b
    if count_a <= 1:
        return False
    if count_b <= 1:
        return True
    return count_b ** size_a < count_a ** size_b


@dataclass
class BoundRow:
    """One cut of a bound report."""

    cut: Tuple[str, ...]
    size: int
    count: int
    ratio: float
    I: Tuple[int, ...]  # noqa: E741
    J: Tuple[int, ...]
    is_global: bool
    partition: Optional[Tuple[Tuple[str, ...], ...]] = None
    a_J_star: Optional[Tuple[int, ...]] = None
    class_counts: Optional[Tuple[int, ...]] = None
    strong_partitions: Optional[int] = None

    @property
    def has_nontrivial_partition(self):
        return bool(self.strong_partitions and self.strong_partitions > 1)

    def to_dict(self):
        row = {
            "cut": list(self.cut),
            "size": self.size,
            "n": self.count,
            "ratio": _json_float(self.ratio),
            "I": list(self.I),
            "J": list(self.J),
            "is_global": self.is_global,
        }
        if self.partition is not None:
            row["partition"] = [list(block) for block in self.partition]
            row["aJ_star"] = list(self.a_J_star)
            row["class_counts"] = list(self.class_counts)
            row["strong_partitions"] = self.strong_partitions
        return row


@dataclass
class BoundReport:
    """The value of one bound, its minimizing cut and every evaluated cut."""

    kind: str
    q: int
    rows: List[BoundRow] = field(default_factory=list)
    best: Optional[BoundRow] = None

    @property
    def value(self):
        return self.best.ratio if self.best is not None else math.inf

    @property
    def argmin(self):
        return self.best.cut if self.best is not None else None

    @property
    def witness(self):
        """The exact (|C|, n, q) triple of the minimum, or None when infinite."""
        if self.best is None:
            return None
        return (self.best.size, self.best.count, self.q)

    @property
    def exact_value(self):
        """The minimum as a Fraction when n is a power of q, else None."""
        if self.best is None:
            return None
        k = exact_log(self.best.count, self.q)
        return Fraction(self.best.size, k) if k else None

    def add(self, row):
        self.rows.append(row)
        if row.count > 1 and (
            self.best is None
            or ratio_less((row.size, row.count), (self.best.size, self.best.count))
        ):
            self.best = row

    def is_at_most(self, other):
        """Exact comparison: self.value <= other.value."""
        if other.best is None:
            return True
        if self.best is None:
            return False
        return not ratio_less(
            (other.best.size, other.best.count), (self.best.size, self.best.count)
        )

    def to_dict(self, rows=False):
        report = {
            "value": _json_float(self.value),
            "argmin": list(self.argmin) if self.argmin is not None else None,
            "witness": list(self.witness) if self.witness is not None else None,
            "exact": str(self.exact_value) if self.exact_value is not None else None,
        }
        if self.kind == "improved" and self.best is not None:
            report["partition"] = [list(block) for block in self.best.partition]
            report["aJ_star"] = list(self.best.a_J_star)
        if rows:
            report["rows"] = [row.to_dict() for row in self.rows]
        return report


def _json_float(value):
    if math.isinf(value):
        return None
    return float(f"{value:.12g}")


def _row(ctx, count, q):
    return BoundRow(
        cut=ctx.cut,
        size=ctx.size,
        count=count,
        ratio=ratio_value(ctx.size, count, q),
        I=tuple(sorted(ctx.I)),
        J=tuple(sorted(ctx.J)),
        is_global=ctx.is_global,
    )


def _cuts(net, f, max_size, limits):
    check_problem(f, net)
    return enumerate_cuts(net, max_size=max_size, limits=limits)


def bound_footprint(net, f, max_size=None, limits=DEFAULT_LIMITS):
    """min over global cuts of |C| / log_q |f(A^s)|."""
    report = BoundReport("footprint", net.alphabet_size)
    images = image_size(f)
    for ctx in _cuts(net, f, max_size, limits):
        if ctx.is_global:
            report.add(_row(ctx, images, net.alphabet_size))
    return report


def bound_huang(net, f, max_size=None, limits=DEFAULT_LIMITS):
    """min over all cuts of |C| / log_q w_{C,f}."""
    report = BoundReport("huang", net.alphabet_size)
    for ctx in _cuts(net, f, max_size, limits):
        report.add(_row(ctx, w_C_f(f, net, ctx, limits=limits), net.alphabet_size))
    return report


def _improved_row(net, f, ctx, limits):
    count = n_C_f(f, net, ctx, limits=limits)
    row = _row(ctx, count.value, net.alphabet_size)
    row.partition = count.partition.blocks
    row.a_J_star = count.a_J_star.values
    row.class_counts = count.class_counts
    row.strong_partitions = count.partitions_examined
    return row


def bound_improved(net, f, max_size=None, limits=DEFAULT_LIMITS):
    """min over all cuts of |C| / log_q n_{C,f}."""
    report = BoundReport("improved", net.alphabet_size)
    for ctx in _cuts(net, f, max_size, limits):
        report.add(_improved_row(net, f, ctx, limits))
    return report


@dataclass
class FullReport:
    """Every requested bound, evaluated over one shared cut enumeration."""

    reports: dict

    @property
    def footprint(self):
        return self.reports.get("footprint")

    @property
    def huang(self):
        return self.reports.get("huang")

    @property
    def improved(self):
        return self.reports.get("improved")

    @property
    def ordered(self):
        """True if improved <= huang <= footprint for the bounds present."""
        chain = [self.reports[kind] for kind in reversed(BOUND_KINDS) if kind in self.reports]
        return all(a.is_at_most(b) for a, b in zip(chain, chain[1:]))

    def rows(self):
        """One merged record per cut."""
        merged = {}
        for kind in BOUND_KINDS:
            report = self.reports.get(kind)
            if report is None:
                continue
            for row in report.rows:
                record = merged.setdefault(
                    row.cut,
                    {
                        "cut": list(row.cut),
                        "size": row.size,
                        "I": list(row.I),
                        "J": list(row.J),
                        "is_global": row.is_global,
                    },
                )
                record[kind] = {"n": row.count, "ratio": _json_float(row.ratio)}
                if kind == "improved":
                    record[kind]["partition"] = [list(b) for b in row.partition]
                    record[kind]["aJ_star"] = list(row.a_J_star)
        return list(merged.values())

    def to_dict(self):
        document = {kind: report.to_dict() for kind, report in self.reports.items()}
        document["ordered"] = self.ordered
        document["rows"] = self.rows()
        return document


def full_report(net, f, kinds=BOUND_KINDS, max_size=None, limits=DEFAULT_LIMITS):
    """Evaluate the requested bounds over a single enumeration of the cuts.

    Parameters
    ----------
    net: netcap.network.Network
    f: netcap.functions.TargetFunction
    kinds: iterable of str, default=all three
        Any of footprint, huang, improved
    max_size: optional, int
    limits: netcap.limits.Limits, optional

    Returns
    -------
    FullReport
    """
    reports = {kind: BoundReport(kind, net.alphabet_size) for kind in BOUND_KINDS if kind in kinds}
    images = image_size(f)
    cuts = _cuts(net, f, max_size, limits)
    for ctx in cuts:
        if "footprint" in reports and ctx.is_global:
            reports["footprint"].add(_row(ctx, images, net.alphabet_size))
        if "huang" in reports:
            reports["huang"].add(
                _row(ctx, w_C_f(f, net, ctx, limits=limits), net.alphabet_size)
            )
        if "improved" in reports:
            reports["improved"].add(_improved_row(net, f, ctx, limits))
    logger.info("evaluated %s over %d cuts", ", ".join(reports), len(cuts))
    return FullReport(reports)
