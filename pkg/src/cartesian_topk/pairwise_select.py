"""Top-k on the Cartesian sum X+Y in O(n + k).

Both inputs are turned into layer-ordered heaps.  A layer product
``X^(u) + Y^(v)`` is represented only by its two corners, the min corner
(``is_max=False``) and the max corner (``is_max=True``).  Corners are popped
from a binary heap in ascending lexicographic order starting from the min
corner of ``(1, 1)``:

* popping a min corner inserts the min corners of ``(u+1, v)`` and
  ``(u, v+1)`` plus its own max corner;
* popping a max corner commits the whole product to the candidate list ``q``
  and adds its size to ``s``.  Phase 1 stops once ``s >= k``.

Phase 2 commits every product whose max corner is still in the heap (their
sizes sum to ``s_prime``).  Phase 3 materializes the committed products into
one buffer of ``s + s_prime`` values and k-selects it.
"""
import heapq
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numba import njit

from ._values import as_values
from .errors import InvalidInputError, OutOfRangeError, SelectionError
from .linear_select import select_k_smallest
from .loh import LohConfig, lohify


class CornerTuple(NamedTuple):
    """Min or max corner of layer product ``(u, v)``; u and v are 1-indexed.

    Tuples compare lexicographically on ``(value, u, v, is_max)``.
    """

    value: object
    u: int
    v: int
    is_max: bool


@dataclass
class FrontierState:
    heap: list = field(default_factory=list)
    seen: set = field(default_factory=set)

    def push(self, corner):
        key = (corner.u, corner.v, corner.is_max)
        if key in self.seen:
            return False
        self.seen.add(key)
        heapq.heappush(self.heap, corner)
        return True

    def pop(self):
        return heapq.heappop(self.heap)


@dataclass
class SelectionTrace:
    """Bookkeeping of one selection.

    ``q[:phase1_count]`` was committed in phase 1, the rest in phase 2;
    ``q_sizes`` holds the matching product sizes.  ``pop_sequence`` is only
    recorded when instrumentation is on.
    """

    k: int = 0
    q: list = field(default_factory=list)
    q_sizes: list = field(default_factory=list)
    s: int = 0
    s_prime: int = 0
    phase1_count: int = 0
    last_product_size: int = 0
    pop_sequence: list = None

    @property
    def overhead_ratio(self):
        return (self.s + self.s_prime) / self.k if self.k else float("nan")

    @property
    def phase2_sizes(self):
        return self.q_sizes[self.phase1_count :]


@dataclass
class SelectionResult:
    values: np.ndarray
    trace: SelectionTrace = None


class _Corners:
    """Per-layer minima, maxima and sizes of both LOHs as Python scalars."""

    def __init__(self, x_loh, y_loh):
        self.x_min = x_loh.mins().tolist()
        self.x_max = x_loh.maxs().tolist()
        self.y_min = y_loh.mins().tolist()
        self.y_max = y_loh.maxs().tolist()
        self.x_size = x_loh.sizes().tolist()
        self.y_size = y_loh.sizes().tolist()
        self.lx = x_loh.layer_count
        self.ly = y_loh.layer_count

    def low(self, u, v):
        return CornerTuple(self.x_min[u - 1] + self.y_min[v - 1], u, v, False)

    def high(self, u, v):
        return CornerTuple(self.x_max[u - 1] + self.y_max[v - 1], u, v, True)

    def size(self, u, v):
        return self.x_size[u - 1] * self.y_size[v - 1]


def phase1_expand(state, popped, x_loh, y_loh):
    """Insert the successors of a just-popped corner into the frontier.

    A min corner brings in the min corners below and to the right of it
    (where those layers exist) and its own max corner; a max corner brings
    in nothing.
    """
    if popped.is_max:
        return
    c = _Corners(x_loh, y_loh)
    u, v = popped.u, popped.v
    if u < c.lx:
        state.push(c.low(u + 1, v))
    if v < c.ly:
        state.push(c.low(u, v + 1))
    state.push(c.high(u, v))


def run_phase1(x_loh, y_loh, k, instrument=False):
    """Pop corners until the committed products hold at least ``k`` values."""
    if k < 1:
        raise OutOfRangeError(f"k must be >= 1, got {k}")
    c = _Corners(x_loh, y_loh)
    x_min, y_min, x_max, y_max = c.x_min, c.y_min, c.x_max, c.y_max
    x_size, y_size, lx, ly = c.x_size, c.y_size, c.lx, c.ly
    state = FrontierState()
    heap, seen = state.heap, state.seen
    push, pop = heapq.heappush, heapq.heappop
    trace = SelectionTrace(k=k, pop_sequence=[] if instrument else None)
    q, q_sizes = trace.q, trace.q_sizes
    s = 0
    state.push(c.low(1, 1))
    # Same expansion rule as phase1_expand, inlined for speed.
    while s < k:
        if not heap:
            raise OutOfRangeError(f"k={k} exceeds the {s} values of X+Y")
        popped = pop(heap)
        if instrument:
            trace.pop_sequence.append(popped)
        _, u, v, is_max = popped
        if is_max:
            size = x_size[u - 1] * y_size[v - 1]
            q.append((u, v))
            q_sizes.append(size)
            s += size
            trace.last_product_size = size
            continue
        if u < lx and (u + 1, v, False) not in seen:
            seen.add((u + 1, v, False))
            push(heap, CornerTuple(x_min[u] + y_min[v - 1], u + 1, v, False))
        if v < ly and (u, v + 1, False) not in seen:
            seen.add((u, v + 1, False))
            push(heap, CornerTuple(x_min[u - 1] + y_min[v], u, v + 1, False))
        # A min corner pops once, so its max corner is always new.
        seen.add((u, v, True))
        push(heap, CornerTuple(x_max[u - 1] + y_max[v - 1], u, v, True))
    trace.s = s
    trace.phase1_count = len(q)
    return state, trace


def run_phase2(state, trace, x_loh, y_loh):
    """Commit every product whose max corner is still in the frontier.

    Min corners left in the heap are ignored.
    """
    c = _Corners(x_loh, y_loh)
    # Heap order is irrelevant here; sort for a reproducible q.
    for corner in sorted(state.heap):
        if not corner.is_max:
            continue
        size = c.size(corner.u, corner.v)
        trace.q.append((corner.u, corner.v))
        trace.q_sizes.append(size)
        trace.s_prime += size


@njit(cache=True)
def _inflate(xd, xb, yd, yb, us, vs, out):
    pos = 0
    for i in range(len(us)):
        u = us[i]
        v = vs[i]
        for a in range(xb[u - 1], xb[u]):
            xa = xd[a]
            for b in range(yb[v - 1], yb[v]):
                out[pos] = xa + yd[b]
                pos += 1


def inflate(x_loh, y_loh, q):
    """Materialize the layer products in ``q`` into one contiguous buffer."""
    xb = np.asarray(x_loh.boundaries, dtype=np.int64)
    yb = np.asarray(y_loh.boundaries, dtype=np.int64)
    idx = np.asarray(q, dtype=np.int64).reshape(-1, 2)
    us, vs = idx[:, 0].copy(), idx[:, 1].copy()
    if len(idx) and (
        us.min() < 1 or us.max() > x_loh.layer_count or vs.min() < 1 or vs.max() > y_loh.layer_count
    ):
        raise OutOfRangeError("layer product index outside the LOHs")
    total = int(((xb[us] - xb[us - 1]) * (yb[vs] - yb[vs - 1])).sum())
    buf = np.empty(total, dtype=np.result_type(x_loh.data.dtype, y_loh.data.dtype))
    _inflate(x_loh.data, xb, y_loh.data, yb, us, vs, buf)
    return buf


def run_phase3(x_loh, y_loh, q, k, pivot="random"):
    """Inflate the products in ``q`` and return their ``k`` smallest values."""
    buf = inflate(x_loh, y_loh, q)
    if len(buf) < k:
        raise SelectionError(
            f"internal invariant violated: candidates hold {len(buf)} < k={k} values"
        )
    return select_k_smallest(buf, k, pivot).prefix.copy()


def select_from_lohs(x_loh, y_loh, k, instrument=False, pivot="random"):
    """Phases 1-3 on already built LOHs."""
    total = len(x_loh) * len(y_loh)
    if not 0 <= k <= total:
        raise OutOfRangeError(f"k={k} outside [0, {total}]")
    if k == 0:
        dtype = np.result_type(x_loh.data.dtype, y_loh.data.dtype)
        return SelectionResult(np.empty(0, dtype=dtype), SelectionTrace() if instrument else None)
    state, trace = run_phase1(x_loh, y_loh, k, instrument)
    run_phase2(state, trace, x_loh, y_loh)
    values = run_phase3(x_loh, y_loh, trace.q, k, pivot)
    return SelectionResult(values, trace if instrument else None)


def _check_inputs(x, y):
    x = as_values(x)
    y = as_values(y)
    if not len(x) or not len(y):
        raise InvalidInputError("X and Y must both be nonempty")
    return x, y


def select_cartesian_k(x, y, k, config=None, instrument=False, sort=False):
    """Return the ``k`` smallest values of ``{x_i + y_j}``.

    Values come back unordered unless ``sort`` is set.  With ``instrument``
    the result carries a :class:`SelectionTrace`.

    >>> sorted(select_cartesian_k([1, 2], [10, 20], 2).values.tolist())
    [11, 12]
    """
    config = config or LohConfig()
    x, y = _check_inputs(x, y)
    if k > len(x) * len(y):
        raise OutOfRangeError(f"k={k} exceeds |X|*|Y| = {len(x) * len(y)}")
    if k < 0:
        raise OutOfRangeError(f"k must be >= 0, got {k}")
    x_loh = lohify(x, config)
    y_loh = lohify(y, config)
    result = select_from_lohs(x_loh, y_loh, k, instrument, config.pivot)
    if sort:
        result.values.sort()
    return result
