# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel for permutation statistic tables.

Same interface and kind codes as ``gramcalc._statpure``; see that module.
Permutations are generated in place by the lexicographic successor step, so
the walk needs O(n) memory regardless of n.
"""

from libc.stdlib cimport calloc, free

KIND_EXTERIOR_PDD = 0
KIND_PEAK_DD = 1
KIND_CARLITZ = 2

IS_COMPILED = True


cdef inline bint _next_perm(int* p, int lo, int n) noexcept nogil:
    # Advance p[lo:n] to its lexicographic successor; False when exhausted.
    cdef int i = n - 2
    cdef int j, tmp, a, b
    while i >= lo and p[i] >= p[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = n - 1
    while p[j] <= p[i]:
        j -= 1
    tmp = p[i]; p[i] = p[j]; p[j] = tmp
    a = i + 1
    b = n - 1
    while a < b:
        tmp = p[a]; p[a] = p[b]; p[b] = tmp
        a += 1
        b -= 1
    return True


def count_table(int n, int kind, int first=0):
    """Tally the statistic key of every permutation of {1..n} (or a slice)."""
    if n < 1:
        raise ValueError("kernel requires n >= 1")
    if kind not in (KIND_EXTERIOR_PDD, KIND_PEAK_DD, KIND_CARLITZ):
        raise ValueError(f"unknown statistic kind code {kind}")

    cdef int side = n + 1
    cdef size_t ncells
    if kind == KIND_CARLITZ:
        ncells = <size_t> side * side * side * side
    else:
        ncells = <size_t> side * side

    cdef int* perm = <int*> calloc(n, sizeof(int))
    cdef unsigned long long* cells = <unsigned long long*> calloc(ncells, sizeof(unsigned long long))
    if perm == NULL or cells == NULL:
        free(perm)
        free(cells)
        raise MemoryError()

    cdef int lo = 0
    cdef int i, v, prev, cur, nxt
    cdef int s1, s2, s3, s4
    cdef bint more = True

    v = 0
    for i in range(1, n + 1):
        if i != first:
            perm[(1 if first else 0) + v] = i
            v += 1
    if first:
        perm[0] = first
        lo = 1

    with nogil:
        while more:
            if kind == 0:  # exterior peaks / proper double descents
                s1 = 1 if n >= 2 and perm[0] > perm[1] else 0
                for i in range(1, n - 1):
                    if perm[i - 1] < perm[i] and perm[i] > perm[i + 1]:
                        s1 += 1
                s2 = 0
                for i in range(2, n):
                    if perm[i - 2] > perm[i - 1] and perm[i - 1] > perm[i]:
                        s2 += 1
                cells[s1 * side + s2] += 1
            elif kind == 1:  # peaks / double descents
                s1 = 0
                s2 = 0
                for i in range(n):
                    prev = perm[i - 1] if i > 0 else 0
                    cur = perm[i]
                    nxt = perm[i + 1] if i < n - 1 else 0
                    if prev < cur and cur > nxt:
                        s1 += 1
                    elif prev > cur and cur > nxt:
                        s2 += 1
                cells[s1 * side + s2] += 1
            else:  # the four-class quadruple
                s1 = 0; s2 = 0; s3 = 0; s4 = 0
                for i in range(n):
                    prev = perm[i - 1] if i > 0 else 0
                    cur = perm[i]
                    nxt = perm[i + 1] if i < n - 1 else 0
                    if prev < cur:
                        if cur > nxt:
                            s1 += 1
                        else:
                            s4 += 1
                    else:
                        if cur > nxt:
                            s2 += 1
                        else:
                            s3 += 1
                cells[(((s1 - 1) * side + s2) * side + s3) * side + s4] += 1
            more = _next_perm(perm, lo, n)

    counts = {}
    cdef size_t idx
    try:
        if kind == KIND_CARLITZ:
            for idx in range(ncells):
                if cells[idx]:
                    counts[(
                        <int> (idx // (side * side * side)),
                        <int> ((idx // (side * side)) % side),
                        <int> ((idx // side) % side),
                        <int> (idx % side),
                    )] = cells[idx]
        else:
            for idx in range(ncells):
                if cells[idx]:
                    counts[(<int> (idx // side), <int> (idx % side))] = cells[idx]
    finally:
        free(perm)
        free(cells)
    return counts
