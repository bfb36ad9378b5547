# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels; mirrors ``bfc._pykernels`` result for result."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free, calloc
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref

import numpy as np


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _pc(uint64_t x) nogil:
    return __builtin_popcountll(x)


def sensitivity_at(const unsigned char[::1] tt, int n, long x):
    cdef int i, c = 0
    cdef unsigned char v = tt[x]
    for i in range(n):
        if tt[x ^ (1 << i)] != v:
            c += 1
    return c


cdef int _minimal_blocks(const unsigned char[::1] tt, int n, long x,
                         unsigned char* has_sub, int* out) nogil:
    cdef long size = 1 << n
    cdef long b, m, low
    cdef unsigned char v = tt[x]
    cdef int sens, sub, cnt = 0
    has_sub[0] = 0
    for b in range(1, size):
        sens = tt[x ^ b] != v
        sub = 0
        m = b
        while m:
            low = m & -m
            if has_sub[b ^ low]:
                sub = 1
                break
            m ^= low
        if sens and not sub:
            out[cnt] = <int>b
            cnt += 1
        has_sub[b] = 1 if (sens or sub) else 0
    return cnt


cdef int _pack(int free_, const int* blocks, int nb, short* memo) nogil:
    cdef int cover = 0, k, b, low, val, cand
    if memo[free_] >= 0:
        return memo[free_]
    for k in range(nb):
        b = blocks[k]
        if (b & free_) == b:
            cover |= b
    if cover == 0:
        memo[free_] = 0
        return 0
    low = cover & -cover
    val = _pack(free_ & ~low, blocks, nb, memo)
    for k in range(nb):
        b = blocks[k]
        if (b & low) and (b & free_) == b:
            cand = 1 + _pack(free_ & ~b, blocks, nb, memo)
            if cand > val:
                val = cand
    memo[free_] = <short>val
    return val


def minimal_sensitive_blocks(const unsigned char[::1] tt, int n, long x):
    cdef long size = 1 << n
    cdef unsigned char* has_sub = <unsigned char*>malloc(size)
    cdef int* out = <int*>malloc(size * sizeof(int))
    cdef int cnt, k
    try:
        cnt = _minimal_blocks(tt, n, x, has_sub, out)
        return [out[k] for k in range(cnt)]
    finally:
        free(has_sub)
        free(out)


def max_block_packing(blocks, int n):
    cdef int nb = len(blocks)
    cdef long size = 1 << n
    cdef int* arr = <int*>malloc((nb + 1) * sizeof(int))
    cdef short* memo = <short*>malloc(size * sizeof(short))
    cdef int k, total, free_, cover, low, target, b, found
    try:
        for k in range(nb):
            arr[k] = blocks[k]
        for k in range(size):
            memo[k] = -1
        free_ = <int>(size - 1)
        total = _pack(free_, arr, nb, memo)
        chosen = []
        while _pack(free_, arr, nb, memo) > 0:
            cover = 0
            for k in range(nb):
                if (arr[k] & free_) == arr[k]:
                    cover |= arr[k]
            low = cover & -cover
            target = _pack(free_, arr, nb, memo)
            found = 0
            for k in range(nb):
                b = arr[k]
                if (b & low) and (b & free_) == b and 1 + _pack(free_ & ~b, arr, nb, memo) == target:
                    chosen.append(b)
                    free_ &= ~b
                    found = 1
                    break
            if not found:
                free_ &= ~low
        return total, sorted(chosen)
    finally:
        free(arr)
        free(memo)


def block_sensitivity_at(const unsigned char[::1] tt, int n, long x):
    return max_block_packing(minimal_sensitive_blocks(tt, n, x), n)


def block_sensitivity_max(const unsigned char[::1] tt, int n):
    cdef long size = 1 << n
    cdef unsigned char* has_sub = <unsigned char*>malloc(size)
    cdef int* blocks = <int*>malloc(size * sizeof(int))
    cdef short* memo = <short*>malloc(size * sizeof(short))
    cdef int best = -1, val, nb
    cdef long arg = 0, x, k
    try:
        with nogil:
            for x in range(size):
                nb = _minimal_blocks(tt, n, x, has_sub, blocks)
                if nb <= best:
                    continue
                for k in range(size):
                    memo[k] = -1
                val = _pack(<int>(size - 1), blocks, nb, memo)
                if val > best:
                    best = val
                    arg = x
        return best, arg
    finally:
        free(has_sub)
        free(blocks)
        free(memo)


cdef int _is_cert(const unsigned char[::1] tt, int n, long x, long s) nogil:
    cdef unsigned char v = tt[x]
    cdef long comp = ((1 << n) - 1) & ~s
    cdef long z = comp
    while True:
        if tt[x ^ z] != v:
            return 0
        if z == 0:
            return 1
        z = (z - 1) & comp


cdef long _cert_at(const unsigned char[::1] tt, int n, long x, int* rest, int* idx) nogil:
    # returns the certificate mask; lexicographic combinations of non-forced coordinates
    cdef unsigned char v = tt[x]
    cdef long forced = 0, s
    cdef int i, k, nr = 0, j
    for i in range(n):
        if tt[x ^ (1 << i)] != v:
            forced |= 1 << i
        else:
            rest[nr] = i
            nr += 1
    for k in range(nr + 1):
        for i in range(k):
            idx[i] = i
        while True:
            s = forced
            for i in range(k):
                s |= 1 << rest[idx[i]]
            if _is_cert(tt, n, x, s):
                return s
            # advance to the next k-combination in lexicographic order
            j = k - 1
            while j >= 0 and idx[j] == nr - k + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for i in range(j + 1, k):
                idx[i] = idx[i - 1] + 1
    return (1 << n) - 1


def certificate_at(const unsigned char[::1] tt, int n, long x):
    cdef int rest[64]
    cdef int idx[64]
    cdef long s = _cert_at(tt, n, x, rest, idx)
    return _pc(<uint64_t>s), s


def certificate_max(const unsigned char[::1] tt, int n):
    cdef int rest[64]
    cdef int idx[64]
    cdef long size = 1 << n, x, arg = 0
    cdef int best = -1, val
    with nogil:
        for x in range(size):
            val = _pc(<uint64_t>_cert_at(tt, n, x, rest, idx))
            if val > best:
                best = val
                arg = x
    return best, arg


def decision_tree_depth(const unsigned char[::1] tt, int n):
    """Bottom-up minimax over all 3^n subcubes.

    A subcube is a ternary word whose digit i is 0/1 (x_i fixed) or 2 (free);
    both children of a free digit have smaller indices, so one ascending pass
    suffices.
    """
    cdef long total = 1, idx, rest, word, c0, c1
    cdef int i, d, best, a, b, nfree
    cdef long pw[64]
    for i in range(n):
        pw[i] = total
        total *= 3
    cdef unsigned char* depth = <unsigned char*>malloc(total)
    cdef signed char* const_ = <signed char*>malloc(total)
    cdef int first
    try:
        with nogil:
            for idx in range(total):
                rest = idx
                word = 0
                first = -1
                for i in range(n):
                    d = rest % 3
                    rest = rest // 3
                    if d == 2:
                        if first < 0:
                            first = i
                    elif d == 1:
                        word |= 1 << i
                if first < 0:
                    depth[idx] = 0
                    const_[idx] = tt[word]
                    continue
                c0 = idx - 2 * pw[first]
                c1 = idx - pw[first]
                if const_[c0] >= 0 and const_[c0] == const_[c1]:
                    depth[idx] = 0
                    const_[idx] = const_[c0]
                    continue
                const_[idx] = -1
                best = depth[c0] if depth[c0] > depth[c1] else depth[c1]
                rest = idx
                for i in range(n):
                    d = rest % 3
                    rest = rest // 3
                    if d != 2 or i == first:
                        continue
                    a = depth[idx - 2 * pw[i]]
                    b = depth[idx - pw[i]]
                    if b > a:
                        a = b
                    if a < best:
                        best = a
                depth[idx] = <unsigned char>(1 + best)
        return depth[total - 1]
    finally:
        free(depth)
        free(const_)


cdef int _pdt(uint64_t V, uint64_t F, const uint64_t* P, int size,
              unordered_map[uint64_t, int]& memo):
    cdef uint64_t on = V & F, a, key
    cdef int s, d, e, best = -1, nseen = 0, k, dup
    cdef uint64_t seen[64]
    cdef unordered_map[uint64_t, int].iterator it
    if on == 0 or on == V:
        return 0
    it = memo.find(V)
    if it != memo.end():
        return deref(it).second
    for s in range(1, size):
        a = V & P[s]
        if a == 0 or a == V:
            continue
        key = a if a < (V ^ a) else (V ^ a)
        dup = 0
        for k in range(nseen):
            if seen[k] == key:
                dup = 1
                break
        if dup:
            continue
        seen[nseen] = key
        nseen += 1
        d = _pdt(a, F, P, size, memo)
        if best >= 0 and d >= best:
            continue
        e = _pdt(V ^ a, F, P, size, memo)
        if e > d:
            d = e
        if best < 0 or d < best:
            best = d
            if best == 0:
                break
    memo[V] = 1 + best
    return 1 + best


def parity_tree_depth(tt_bits, int n):
    if n > 6:
        raise ValueError("compiled parity-tree kernel supports n <= 6")
    cdef int size = 1 << n
    cdef uint64_t P[64]
    cdef int s, x
    cdef uint64_t m
    cdef uint64_t full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if size == 64 else (((<uint64_t>1) << size) - 1)
    for s in range(size):
        m = 0
        for x in range(size):
            if _pc(<uint64_t>(x & s)) & 1:
                m |= (<uint64_t>1) << x
        P[s] = m
    cdef unordered_map[uint64_t, int] memo
    return _pdt(full, <uint64_t>tt_bits, P, size, memo)


def shi_vertex_sweep(const unsigned char[::1] tt, int n, long q):
    if n == 0:
        return 0
    cdef long size = 1 << n
    cdef long a, b, d, z, j, r
    cdef int m, w
    cdef int64_t counts[65]
    cdef int64_t jp[65]
    cdef int64_t rp[65]
    cdef int64_t val, best = 0, scale, qp[65]
    qp[0] = 1
    for w in range(1, n + 1):
        qp[w] = qp[w - 1] * q
    with nogil:
        for a in range(size):
            for b in range(a + 1, size):
                d = a ^ b
                m = _pc(<uint64_t>d)
                for w in range(m + 1):
                    counts[w] = 0
                z = d
                while True:
                    counts[_pc(<uint64_t>z)] += tt[a ^ z]
                    if z == 0:
                        break
                    z = (z - 1) & d
                scale = qp[n - m]
                for j in range(q + 1):
                    r = q - j
                    jp[0] = 1
                    rp[0] = 1
                    for w in range(1, m + 1):
                        jp[w] = jp[w - 1] * j
                        rp[w] = rp[w - 1] * r
                    val = 0
                    for w in range(m + 1):
                        if counts[w] == 0:
                            continue
                        if w > 0:
                            val += counts[w] * w * jp[w - 1] * rp[m - w]
                        if w < m:
                            val -= counts[w] * (m - w) * jp[w] * rp[m - w - 1]
                    if val < 0:
                        val = -val
                    val *= scale
                    if val > best:
                        best = val
    return best
