# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled trial kernel: shuffle, rotate, and measure in C.

Mirrors planetree._kernels_py draw for draw; see that module for the
contract.  The trial loop releases the GIL so campaigns can fan out over
threads.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"

KIND_BFS = 0
KIND_LEX_DFS = 1
KIND_REV_DFS = 2

cdef enum:  # C mirrors of the KIND_* codes, usable without the GIL
    ORDER_BFS = 0
    ORDER_LEX_DFS = 1
    ORDER_REV_DFS = 2

cdef uint64_t GOLDEN = <uint64_t> 0x9E3779B97F4A7C15
cdef uint64_t MIX1 = <uint64_t> 0xBF58476D1CE4E5B9
cdef uint64_t MIX2 = <uint64_t> 0x94D049BB133111EB


cdef inline uint64_t _avalanche(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline uint64_t _mix64(uint64_t seed, uint64_t index) noexcept nogil:
    return _avalanche(seed + GOLDEN * (index + 1))


cdef inline uint64_t _next64(uint64_t *state) noexcept nogil:
    state[0] += GOLDEN
    return _avalanche(state[0])


cdef inline uint64_t _randbelow(uint64_t *state, uint64_t k) noexcept nogil:
    cdef uint64_t mask = 1
    cdef uint64_t r
    if k <= 1:
        return 0
    while mask < k - 1:
        mask = (mask << 1) | 1
    while True:
        r = _next64(state) & mask
        if r < k:
            return r


cdef inline void _fisher_yates(int64_t *a, Py_ssize_t n, uint64_t *state) noexcept nogil:
    cdef Py_ssize_t i
    cdef uint64_t j
    cdef int64_t tmp
    for i in range(n - 1, 0, -1):
        j = _randbelow(state, <uint64_t> (i + 1))
        tmp = a[i]
        a[i] = a[<Py_ssize_t> j]
        a[<Py_ssize_t> j] = tmp


cdef void _hw_bfs(int64_t *c, Py_ssize_t n, Py_ssize_t k,
                  int64_t *h_out, int64_t *w_out) noexcept nogil:
    # counts are read rotated by k without materializing the rotation
    cdef int64_t q = 1, h = 0, w = 1
    cdef Py_ssize_t j, idx, level_end = 1
    idx = k
    for j in range(1, n + 1):
        if idx >= n:
            idx -= n
        q += c[idx] - 1
        idx += 1
        if j == level_end:
            if q == 0:
                break
            h += 1
            if q > w:
                w = q
            level_end = j + <Py_ssize_t> q
    h_out[0] = h
    w_out[0] = w


cdef void _hw_dfs(int64_t *c, Py_ssize_t n, Py_ssize_t k,
                  int64_t *stack, int64_t *lvl,
                  int64_t *h_out, int64_t *w_out) noexcept nogil:
    cdef int64_t h = 0, w = 1, v, cj
    cdef Py_ssize_t j, d, idx, sp
    if n == 1:
        h_out[0] = 0
        w_out[0] = 1
        return
    for j in range(n):
        lvl[j] = 0
    lvl[0] = 1
    stack[0] = c[k]
    sp = 1
    idx = k + 1
    for j in range(1, n):
        if idx >= n:
            idx -= n
        cj = c[idx]
        idx += 1
        d = sp
        v = lvl[d] + 1
        lvl[d] = v
        if v > w:
            w = v
        if d > h:
            h = d
        stack[sp - 1] -= 1
        if cj:
            stack[sp] = cj
            sp += 1
        else:
            while sp > 0 and stack[sp - 1] == 0:
                sp -= 1
    h_out[0] = h
    w_out[0] = w


def mix64(seed, index):
    return int(_mix64(<uint64_t> (seed & 0xFFFFFFFFFFFFFFFF), <uint64_t> index))


def shuffle_once(values, seed):
    out = [int(v) for v in values]
    cdef Py_ssize_t n = len(out)
    cdef int64_t *buf = <int64_t *> malloc(n * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError
    cdef Py_ssize_t i
    cdef uint64_t state = <uint64_t> (seed & 0xFFFFFFFFFFFFFFFF)
    try:
        for i in range(n):
            buf[i] = out[i]
        _fisher_yates(buf, n, &state)
        return [int(buf[i]) for i in range(n)]
    finally:
        free(buf)


def hw_from_tree_sequence(counts, kind):
    cdef Py_ssize_t n = len(counts)
    cdef int64_t *buf = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t *stack = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef int64_t *lvl = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef int64_t h = 0, w = 0
    cdef Py_ssize_t i
    if buf == NULL or stack == NULL or lvl == NULL:
        free(buf); free(stack); free(lvl)
        raise MemoryError
    try:
        for i in range(n):
            buf[i] = counts[i]
        if kind == ORDER_BFS:
            _hw_bfs(buf, n, 0, &h, &w)
        else:
            _hw_dfs(buf, n, 0, stack, lvl, &h, &w)
        return int(h), int(w)
    finally:
        free(buf); free(stack); free(lvl)


def run_trials(int64_t[::1] base, Py_ssize_t trials, master_seed, int kind,
               Py_ssize_t trial_offset,
               int64_t[::1] out_h, int64_t[::1] out_w,
               int64_t[::1] out_pathmax, int64_t[::1] out_prefixmin):
    cdef Py_ssize_t n = base.shape[0]
    cdef Py_ssize_t half = n // 2
    cdef uint64_t seed = <uint64_t> (master_seed & 0xFFFFFFFFFFFFFFFF)
    cdef int64_t *c = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t *sums = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef int64_t *stack = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef int64_t *lvl = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    if c == NULL or sums == NULL or stack == NULL or lvl == NULL:
        free(c); free(sums); free(stack); free(lvl)
        raise MemoryError
    cdef Py_ssize_t t, i, k
    cdef uint64_t state
    cdef int64_t s, best, pmin, a, b, peak, h, w
    try:
        with nogil:
            for t in range(trials):
                for i in range(n):
                    c[i] = base[i]
                state = _mix64(seed, <uint64_t> (trial_offset + t))
                _fisher_yates(c, n, &state)

                sums[0] = 0
                s = 0
                best = 0
                k = 0
                pmin = 0
                for i in range(1, n + 1):
                    s += c[i - 1] - 1
                    sums[i] = s
                    if s < best:
                        best = s
                        k = i
                    if i <= half and s < pmin:
                        pmin = s
                a = sums[k]
                for i in range(k, n + 1):
                    if sums[i] > a:
                        a = sums[i]
                a -= sums[k]
                b = sums[0]
                for i in range(k + 1):
                    if sums[i] > b:
                        b = sums[i]
                b += sums[n] - sums[k]
                peak = a if a > b else b

                if k == n:
                    k = 0
                if kind == ORDER_BFS:
                    _hw_bfs(c, n, k, &h, &w)
                else:
                    _hw_dfs(c, n, k, stack, lvl, &h, &w)

                out_h[t] = h
                out_w[t] = w
                out_pathmax[t] = peak
                out_prefixmin[t] = pmin
    finally:
        free(c); free(sums); free(stack); free(lvl)
