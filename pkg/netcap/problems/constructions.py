"""Hand-built codes on the packaged networks."""
from netcap.codes import NetworkCode


def max_upper(net):
    """Rate-2 (2, 1) code for max on ``reverse_butterfly_upper``.

    Row 1 of each source goes straight to the sink, row 2 of both sources
    meets at the relay, which forwards their maximum.
    """
    return NetworkCode.from_functions(
        net,
        k=2,
        n=1,
        functions={
            "e1": lambda x: x[0],
            "e2": lambda x: x[1],
            "e3": lambda x: x[1],
            "e4": lambda x: x[0],
            "e5": lambda w2, w3: max(w2[0], w3[0]),
        },
        decoder=lambda w1, w4, w5: (max(w1[0], w4[0]), w5[0]),
    )


def max_upper_swapped(net):
    """`max_upper` with the roles of the two rows exchanged at both sources."""
    return NetworkCode.from_functions(
        net,
        k=2,
        n=1,
        functions={
            "e1": lambda x: x[1],
            "e2": lambda x: x[0],
            "e3": lambda x: x[0],
            "e4": lambda x: x[1],
            "e5": lambda w2, w3: max(w2[0], w3[0]),
        },
        decoder=lambda w1, w4, w5: (w5[0], max(w1[0], w4[0])),
    )


def max_reverse_butterfly(net):
    """Rate-3/2 (3, 2) code for max on ``reverse_butterfly``.

    Row 1 of each source takes its private edge; rows 2 and 3 are combined
    at v1 and split again at v2.
    """
    return NetworkCode.from_functions(
        net,
        k=3,
        n=2,
        functions={
            "e1": lambda x: x[0],
            "e2": lambda x: (x[1], x[2]),
            "e3": lambda x: (x[1], x[2]),
            "e4": lambda x: x[0],
            "e5": lambda w2, w3: (max(w2[0], w3[0]), max(w2[1], w3[1])),
            "e6": lambda w5: w5[0],
            "e7": lambda w5: w5[1],
            "e8": lambda w1, w6: (w1[0], w6[0]),
            "e9": lambda w4, w7: (w4[0], w7[0]),
        },
        decoder=lambda w8, w9: (max(w8[0], w9[0]), w8[1], w9[1]),
    )


def linear_three_source(net):
    """Rate-2/3 (2, 3) code for ``linear_that`` on ``three_source``.

    Both relays forward everything they receive; the sink adds sources 1
    and 3 row by row.
    """

    def decode(w5, w6):
        x1, x2, x3 = w5[:2], (w5[2], w6[2]), w6[:2]
        return tuple(2 * ((x1[p] + x3[p]) % 2) + x2[p] for p in range(2))

    return NetworkCode.from_functions(
        net,
        k=2,
        n=3,
        functions={
            "e1": lambda x: x,
            "e2": lambda x: x[0],
            "e3": lambda x: x[1],
            "e4": lambda x: x,
            "e5": lambda w1, w2: (w1[0], w1[1], w2[0]),
            "e6": lambda w3, w4: (w4[0], w4[1], w3[0]),
        },
        decoder=decode,
    )


CODES = {
    "max_upper": ("reverse_butterfly_upper", max_upper),
    "max_upper_swapped": ("reverse_butterfly_upper", max_upper_swapped),
    "max_reverse_butterfly": ("reverse_butterfly", max_reverse_butterfly),
    "linear_three_source": ("three_source", linear_three_source),
}
