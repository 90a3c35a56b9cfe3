"""Dense vector conventions and the byte-accounting rules for every test.

Vectors are contiguous 1-D float64 numpy arrays throughout; id arrays are
32-bit signed integers. Byte counts charge each logical array traversal
once at its element width (8-byte floats, 4-byte indices), a perfect-cache
lower bound on data moved.
"""

from dataclasses import dataclass

import numpy as np

DVector = np.ndarray

BS_TESTS = ("bs1", "bs2", "bs3", "bs4", "bs5", "bs6", "bs7")

# bytes per element for the pure vector tests (bs1-bs5)
_VECTOR_BYTES_PER_ELEMENT = {
    "bs1": 16,  # read x, write y
    "bs2": 24,  # read x, read y, write y
    "bs3": 8,   # read x
    "bs4": 16,  # read x, read y
    "bs5": 48,  # read p, Ap, x, r; write x, r
}


def dvector(n: int) -> DVector:
    """Allocate a zero-filled vector of length n."""
    if n < 0:
        raise ValueError(f"vector length must be non-negative, got {n}")
    return np.zeros(n, dtype=np.float64)


def as_dvector(a) -> DVector:
    """Validate/convert `a` to a contiguous 1-D float64 array."""
    arr = np.ascontiguousarray(a, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {arr.shape}")
    return arr


def check_same_length(*vectors: DVector) -> int:
    lengths = {v.shape[0] for v in vectors}
    if len(lengths) > 1:
        raise ValueError(f"vector length mismatch: {sorted(lengths)}")
    return vectors[0].shape[0]


def vector_bytes_per_element(test: str) -> int:
    """Bytes moved per vector element for bs1-bs5 (used to size sweeps)."""
    try:
        return _VECTOR_BYTES_PER_ELEMENT[test]
    except KeyError:
        raise ValueError(f"no per-element byte count for test {test!r}") from None


def bytes_moved(test: str, n: int | None = None,
                nl: int | None = None, ng: int | None = None) -> int:
    """Bytes moved by one invocation of the given test.

    bs1-bs5 take the vector length `n`; bs6/bs7 take the local and global
    DOF counts `nl`/`ng`.
    """
    if test in _VECTOR_BYTES_PER_ELEMENT:
        if n is None or n < 0:
            raise ValueError(f"{test} requires a non-negative element count n")
        return _VECTOR_BYTES_PER_ELEMENT[test] * n
    if test == "bs6":
        if nl is None or ng is None or nl < 0 or ng < 0:
            raise ValueError("bs6 requires non-negative nl and ng")
        # read q (8*NL) and colIds (4*NL), write gatherq (8*NG),
        # read rowStarts (4*(NG+1)); blockStarts excluded
        return 8 * nl + 4 * nl + 8 * ng + 4 * (ng + 1)
    if test == "bs7":
        if nl is None or ng is None or nl < 0 or ng < 0:
            raise ValueError("bs7 requires non-negative nl and ng")
        # read scatterIds (4*NL), read gatherq once per global DOF (8*NG),
        # write q (8*NL)
        return 4 * nl + 8 * ng + 8 * nl
    raise ValueError(f"unknown test id {test!r}")


@dataclass(frozen=True)
class ByteAccount:
    """Data-moved record for one test invocation, per the fixed accounting."""

    test: str
    bytes: int

    @classmethod
    def for_test(cls, test: str, n: int | None = None,
                 nl: int | None = None, ng: int | None = None) -> "ByteAccount":
        return cls(test=test, bytes=bytes_moved(test, n=n, nl=nl, ng=ng))
