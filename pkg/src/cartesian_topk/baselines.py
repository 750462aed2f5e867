"""Reference methods for top-k on X+Y."""
import numpy as np

from .errors import OutOfRangeError
from .loh import LohConfig, lohify
from .pairwise_select import (
    SelectionResult,
    SelectionTrace,
    _check_inputs,
    _Corners,
    run_phase3,
)


def _check_k(k, total):
    if not 0 <= k <= total:
        raise OutOfRangeError(f"k={k} outside [0, {total}]")


def naive_select(x, y, k):
    """Materialize all ``|X|*|Y|`` sums, sort them fully, keep the first k."""
    x, y = _check_inputs(x, y)
    _check_k(k, len(x) * len(y))
    sums = np.add.outer(x, y).ravel()
    sums.sort()
    return SelectionResult(sums[:k].copy())


def all_corners(x_loh, y_loh):
    """Both corners of every layer product, sorted ascending."""
    c = _Corners(x_loh, y_loh)
    corners = []
    for u in range(1, c.lx + 1):
        for v in range(1, c.ly + 1):
            corners.append(c.low(u, v))
            corners.append(c.high(u, v))
    corners.sort()
    return corners


def simplified_select(x, y, k, config=None, instrument=False):
    """Top-k by sorting every corner of every layer product up front.

    The sorted corners are scanned, adding product sizes at max corners
    until ``k`` values are covered.  Every product whose min corner was seen
    by then is a candidate; candidates are inflated and k-selected exactly
    as in phase 3 of :func:`select_cartesian_k`.
    """
    config = config or LohConfig()
    x, y = _check_inputs(x, y)
    _check_k(k, len(x) * len(y))
    x_loh = lohify(x, config)
    y_loh = lohify(y, config)
    if k == 0:
        return SelectionResult(np.empty(0, np.result_type(x, y)), SelectionTrace() if instrument else None)
    c = _Corners(x_loh, y_loh)
    trace = SelectionTrace(k=k)
    opened = {}
    for corner in all_corners(x_loh, y_loh):
        key = (corner.u, corner.v)
        if corner.is_max:
            del opened[key]
            size = c.size(*key)
            trace.q.append(key)
            trace.q_sizes.append(size)
            trace.s += size
            trace.last_product_size = size
            if trace.s >= k:
                break
        else:
            opened[key] = None
    trace.phase1_count = len(trace.q)
    # Products opened but not closed before the stop; dict keeps scan order.
    for key in opened:
        size = c.size(*key)
        trace.q.append(key)
        trace.q_sizes.append(size)
        trace.s_prime += size
    values = run_phase3(x_loh, y_loh, trace.q, k, config.pivot)
    return SelectionResult(values, trace if instrument else None)
