import numpy as np

from .errors import InvalidInputError

_INT64_MAX = np.iinfo(np.int64).max


def as_values(data, copy=False):
    """Return ``data`` as a 1-D int64 or float64 array.

    Integer and boolean inputs become int64, real floating inputs become
    float64.  Anything else (object, complex, strings) is rejected, as is NaN.
    An ndarray already of the target dtype is returned as-is unless ``copy``.
    """
    arr = np.asarray(data)
    if arr.ndim != 1:
        if arr.size == 0:
            arr = arr.reshape(0)
        else:
            raise InvalidInputError(f"expected a 1-D array, got shape {arr.shape}")
    kind = arr.dtype.kind
    if kind in "biu":
        if kind == "u" and arr.size and arr.max() > _INT64_MAX:
            raise InvalidInputError("unsigned values exceed the int64 range")
        target = np.int64
    elif kind == "f":
        target = np.float64
    elif arr.size == 0:
        target = np.float64
    else:
        raise InvalidInputError(f"unsupported element type {arr.dtype}")
    if arr.dtype != target:
        arr = arr.astype(target)
    elif copy:
        arr = arr.copy()
    if target is np.float64 and np.isnan(arr).any():
        raise InvalidInputError("NaN values are not totally ordered")
    return arr
