# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cycle-popping walk kernel.

Semantics (binary search, clamping, budget accounting, RNG consumption) must
stay bit-identical to the pure-Python twin in _walk_py.py: the test suite
asserts both produce the same tree from the same generator state.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from numpy.random cimport bitgen_t


def wilson_walk(long long[::1] indptr, int[::1] nbr, double[::1] cum,
                double[::1] total, int root, gen,
                int[::1] succ, long long[::1] succ_slot,
                unsigned char[::1] intree, long long step_budget):
    """Fill succ/succ_slot with the forward maze of Wilson's algorithm.

    Returns the number of walk steps, or -1 if the budget was exhausted.
    """
    cdef bitgen_t *rng
    capsule = gen.bit_generator.capsule
    if not PyCapsule_IsValid(capsule, "BitGenerator"):
        raise ValueError("expected a numpy Generator")
    rng = <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")

    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef long long steps = 0
    cdef Py_ssize_t i
    cdef long long u, lo, hi, mid, last
    cdef double target
    intree[root] = 1
    for i in range(n):
        u = i
        while not intree[u]:
            if steps >= step_budget:
                return -1
            steps += 1
            target = rng.next_double(rng.state) * total[u]
            lo = indptr[u]
            hi = indptr[u + 1]
            last = hi - 1
            # leftmost slot with cum[slot] > target
            while lo < hi:
                mid = (lo + hi) >> 1
                if cum[mid] > target:
                    hi = mid
                else:
                    lo = mid + 1
            if lo > last:
                lo = last
            succ[u] = nbr[lo]
            succ_slot[u] = lo
            u = nbr[lo]
        u = i
        while not intree[u]:
            intree[u] = 1
            u = succ[u]
    return steps
