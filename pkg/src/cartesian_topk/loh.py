"""Layer-ordered heaps (LOHs).

A LOH of rank ``alpha`` is an array cut into contiguous layers where every
value of layer ``u`` is <= every value of layer ``u + 1``.  Layers are not
sorted internally.  Layer ``u`` (1-indexed) has ``ceil(alpha ** (u - 1))``
elements, except that the last layer is cut short at ``n``.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from ._values import as_values
from .errors import InvalidConfigError, OutOfRangeError
from .linear_select import peel_layers


@dataclass(frozen=True)
class LohConfig:
    alpha: float = 2.0
    pivot: str = "random"

    def __post_init__(self):
        if not (isinstance(self.alpha, (int, float)) and math.isfinite(self.alpha)):
            raise InvalidConfigError(f"alpha must be a finite real, got {self.alpha!r}")
        if self.alpha <= 1:
            raise InvalidConfigError(f"alpha must be > 1, got {self.alpha}")


def layer_sizes(n, alpha):
    """Sizes of the layers of a rank-``alpha`` LOH over ``n`` values.

    >>> layer_sizes(5, 2.0)
    [1, 2, 2]
    >>> layer_sizes(7, 2.0)
    [1, 2, 4]
    """
    if alpha <= 1:
        raise InvalidConfigError(f"alpha must be > 1, got {alpha}")
    if n < 0:
        raise OutOfRangeError(f"n must be >= 0, got {n}")
    sizes = []
    total = 0
    u = 0
    while total < n:
        size = min(math.ceil(alpha**u), n - total)
        sizes.append(size)
        total += size
        u += 1
    return sizes


@dataclass(frozen=True)
class Loh:
    """A LOH: ``data`` is layer-contiguous, layer ``u`` is
    ``data[boundaries[u - 1]:boundaries[u]]``.

    ``data`` is read-only.  ``comparisons`` counts the element comparisons
    spent building it.
    """

    data: np.ndarray
    boundaries: tuple
    alpha: float
    comparisons: int = 0
    _mins: np.ndarray = field(default=None, repr=False, compare=False)
    _maxs: np.ndarray = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.data)

    @property
    def layer_count(self):
        return len(self.boundaries) - 1

    def _check(self, u):
        if not 1 <= u <= self.layer_count:
            raise OutOfRangeError(f"layer {u} outside [1, {self.layer_count}]")

    def layer(self, u):
        self._check(u)
        return self.data[self.boundaries[u - 1] : self.boundaries[u]]

    def layer_size(self, u):
        self._check(u)
        return self.boundaries[u] - self.boundaries[u - 1]

    def sizes(self):
        return np.diff(np.asarray(self.boundaries, dtype=np.int64))

    def mins(self):
        """Per-layer minima, index 0 holding layer 1."""
        if self._mins is None:
            object.__setattr__(self, "_mins", self._reduce(np.minimum))
        return self._mins

    def maxs(self):
        """Per-layer maxima, index 0 holding layer 1."""
        if self._maxs is None:
            object.__setattr__(self, "_maxs", self._reduce(np.maximum))
        return self._maxs

    def _reduce(self, ufunc):
        if not self.layer_count:
            return self.data[:0].copy()
        return ufunc.reduceat(self.data, np.asarray(self.boundaries[:-1], dtype=np.intp))


def lohify(data, config=None):
    """Build a LOH from a copy of ``data``.

    The largest (last) layer is split off first by a linear-time selection
    over the whole active range, which then shrinks to the remaining prefix;
    the work is a geometric series, hence linear for constant ``alpha``.
    """
    config = config or LohConfig()
    arr = as_values(data, copy=True)
    sizes = layer_sizes(len(arr), config.alpha)
    boundaries = [0]
    for size in sizes:
        boundaries.append(boundaries[-1] + size)
    comparisons = peel_layers(arr, boundaries, config.pivot)
    arr.flags.writeable = False
    return Loh(arr, tuple(boundaries), float(config.alpha), comparisons)


def layer_min(loh, u):
    """Minimum of layer ``u`` (1-indexed), by a scan of the layer."""
    return loh.layer(u).min().item()


def layer_max(loh, u):
    """Maximum of layer ``u`` (1-indexed), by a scan of the layer."""
    return loh.layer(u).max().item()
