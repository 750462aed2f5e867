"""In-place one-dimensional k-selection.

The kernels are compiled with numba and work on int64 or float64 arrays.
Two pivot rules are available:

* ``"random"`` (default): uniformly random pivots.  If the active range
  fails to shrink to at most 3/4 of its size too often, the call switches to
  median-of-medians for the remainder, so the worst case stays linear.
* ``"median_of_medians"``: the deterministic BFPRT rule with groups of 5.

Partitioning is three-way, so runs of equal keys cost nothing extra.
Every kernel returns the number of element comparisons it performed.
"""
from dataclasses import dataclass

import numpy as np
from numba import njit

from ._values import as_values
from .errors import InvalidConfigError, OutOfRangeError

PIVOT_RULES = ("random", "median_of_medians")

_RANDOM = 0
_MEDIAN_OF_MEDIANS = 1
_SMALL = 16
_GROUP = 5
_BAD_ROUNDS = 4


@njit(cache=True)
def _insertion_sort(a, lo, hi, counter):
    for i in range(lo + 1, hi):
        v = a[i]
        j = i
        while j > lo:
            counter[0] += 1
            if a[j - 1] > v:
                a[j] = a[j - 1]
                j -= 1
            else:
                break
        a[j] = v


@njit(cache=True)
def _partition3(a, lo, hi, pivot, counter):
    # Leaves a[lo:lt] < pivot, a[lt:gt] == pivot, a[gt:hi] > pivot.
    lt = lo
    i = lo
    gt = hi
    while i < gt:
        v = a[i]
        counter[0] += 1
        if v < pivot:
            a[i] = a[lt]
            a[lt] = v
            lt += 1
            i += 1
        else:
            counter[0] += 1
            if v > pivot:
                gt -= 1
                a[i] = a[gt]
                a[gt] = v
            else:
                i += 1
    return lt, gt


# Not cached: numba segfaults loading a cached self-recursive function.
@njit(cache=False)
def _select(a, lo, hi, t, mode, counter):
    # Rearranges a[lo:hi] so a[t] holds its sorted-order value, with
    # a[lo:t] <= a[t] <= a[t+1:hi].
    bad = 0
    while hi - lo > _SMALL:
        size = hi - lo
        if mode == _RANDOM:
            pivot = a[np.random.randint(lo, hi)]
        else:
            # Median of each group of 5 is moved to the front of the range,
            # then the median of those medians is selected recursively.
            ng = 0
            for g in range(lo, hi, _GROUP):
                e = min(g + _GROUP, hi)
                _insertion_sort(a, g, e, counter)
                m = (g + e - 1) // 2
                tmp = a[lo + ng]
                a[lo + ng] = a[m]
                a[m] = tmp
                ng += 1
            mid = lo + (ng - 1) // 2
            _select(a, lo, lo + ng, mid, _MEDIAN_OF_MEDIANS, counter)
            pivot = a[mid]
        lt, gt = _partition3(a, lo, hi, pivot, counter)
        if t < lt:
            hi = lt
        elif t >= gt:
            lo = gt
        else:
            return
        if mode == _RANDOM and 4 * (hi - lo) > 3 * size:
            bad += 1
            if bad > _BAD_ROUNDS:
                mode = _MEDIAN_OF_MEDIANS
    _insertion_sort(a, lo, hi, counter)


@njit(cache=False)
def _peel_layers(a, boundaries, mode, counter):
    # Splits off layers largest-first: the active range a[:boundaries[u + 1]]
    # is partitioned so a[:boundaries[u]] holds its smallest values.
    for u in range(len(boundaries) - 2, 0, -1):
        _select(a, 0, boundaries[u + 1], boundaries[u] - 1, mode, counter)


def _mode(pivot):
    if pivot == "random":
        return _RANDOM
    if pivot == "median_of_medians":
        return _MEDIAN_OF_MEDIANS
    raise InvalidConfigError(f"unknown pivot rule {pivot!r}; expected one of {PIVOT_RULES}")


def nth_element(arr, lo, hi, t, pivot="random"):
    """Place the sorted-order element of ``arr[lo:hi]`` at index ``t``.

    ``arr`` must be an int64/float64 ndarray; it is modified in place.
    Returns the number of comparisons performed.
    """
    counter = np.zeros(1, dtype=np.int64)
    _select(arr, lo, hi, t, _mode(pivot), counter)
    return int(counter[0])


def peel_layers(arr, boundaries, pivot="random"):
    """Partition ``arr`` in place into the layers delimited by ``boundaries``.

    ``boundaries`` runs from 0 to ``len(arr)``.  Layers are split off from
    the back, the largest first.  Returns the number of comparisons.
    """
    counter = np.zeros(1, dtype=np.int64)
    _peel_layers(arr, np.asarray(boundaries, dtype=np.int64), _mode(pivot), counter)
    return int(counter[0])


@dataclass
class Partitioned:
    """Result of :func:`select_k_smallest`.

    ``data[:split]`` holds the ``split`` smallest values, unordered; every one
    of them is <= every value in ``data[split:]``.
    """

    data: np.ndarray
    split: int
    comparisons: int = 0

    @property
    def prefix(self):
        return self.data[: self.split]

    @property
    def suffix(self):
        return self.data[self.split :]


def _workspace(data):
    if (
        isinstance(data, np.ndarray)
        and data.ndim == 1
        and data.dtype in (np.int64, np.float64)
        and data.flags.writeable
    ):
        as_values(data)  # NaN check only
        return data
    return as_values(data, copy=True)


def select_k_smallest(data, k, pivot="random"):
    """Partition ``data`` so its ``k`` smallest values come first.

    A writeable 1-D int64/float64 ndarray (views included) is partitioned in
    place; any other input is converted into a fresh array first.  Ties may
    fall on either side of the split.
    """
    arr = _workspace(data)
    n = len(arr)
    if not 0 <= k <= n:
        raise OutOfRangeError(f"k={k} outside [0, {n}]")
    mode = _mode(pivot)
    if k == 0 or k == n:
        return Partitioned(arr, k, 0)
    counter = np.zeros(1, dtype=np.int64)
    _select(arr, 0, n, k - 1, mode, counter)
    return Partitioned(arr, k, int(counter[0]))


def kth_smallest_value(data, k, pivot="random"):
    """Return the k-th smallest value (1-indexed) of ``data``.

    The caller's array is left untouched.
    """
    arr = as_values(data, copy=True)
    n = len(arr)
    if not 1 <= k <= n:
        raise OutOfRangeError(f"k={k} outside [1, {n}]")
    counter = np.zeros(1, dtype=np.int64)
    _select(arr, 0, n, k - 1, _mode(pivot), counter)
    return arr[k - 1].item()
