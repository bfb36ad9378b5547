"""Pure-Python hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; ``tt`` is a
sequence of 0/1 values of length 2^n indexed by input word.
"""

from itertools import combinations


def _popcount(x):
    return bin(x).count("1")


def sensitivity_at(tt, n, x):
    tt = bytes(tt)
    v = tt[x]
    return sum(1 for i in range(n) if tt[x ^ (1 << i)] != v)


def minimal_sensitive_blocks(tt, n, x):
    """Minimal sensitive blocks at x, ascending by mask."""
    tt = bytes(tt)
    size = 1 << n
    v = tt[x]
    # has_sub[B]: some nonempty subset of B (B included) is sensitive
    has_sub = bytearray(size)
    out = []
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
            out.append(b)
        has_sub[b] = 1 if (sens or sub) else 0
    return out


def max_block_packing(blocks, n):
    """Exact maximum set of pairwise disjoint blocks.

    Returns (count, chosen) with ``chosen`` ascending; branches on the lowest
    coordinate still coverable, trying its blocks in ascending mask order before
    leaving it uncovered, so the witness is deterministic.
    """
    memo = {}

    def best(free):
        if free in memo:
            return memo[free]
        cover = 0
        for b in blocks:
            if b & free == b:
                cover |= b
        if not cover:
            memo[free] = 0
            return 0
        low = cover & -cover
        val = best(free & ~low)
        for b in blocks:
            if b & low and b & free == b:
                cand = 1 + best(free & ~b)
                if cand > val:
                    val = cand
        memo[free] = val
        return val

    full = (1 << n) - 1
    total = best(full)
    chosen = []
    free = full
    while memo.get(free, 0) > 0:
        cover = 0
        for b in blocks:
            if b & free == b:
                cover |= b
        low = cover & -cover
        target = memo[free]
        for b in blocks:
            if b & low and b & free == b and 1 + best(free & ~b) == target:
                chosen.append(b)
                free &= ~b
                break
        else:
            free &= ~low
    return total, sorted(chosen)


def block_sensitivity_at(tt, n, x):
    tt = bytes(tt)
    return max_block_packing(minimal_sensitive_blocks(tt, n, x), n)


def block_sensitivity_max(tt, n):
    """(bs(f), least input attaining it)."""
    tt = bytes(tt)
    best, arg = -1, 0
    for x in range(1 << n):
        blocks = minimal_sensitive_blocks(tt, n, x)
        if len(blocks) <= best:
            continue
        val, _ = max_block_packing(blocks, n)
        if val > best:
            best, arg = val, x
    return best, arg


def _is_certificate(tt, n, x, s):
    v = tt[x]
    comp = ((1 << n) - 1) & ~s
    z = comp
    while True:
        if tt[x ^ z] != v:
            return False
        if z == 0:
            return True
        z = (z - 1) & comp


def certificate_at(tt, n, x):
    """(C(f, x), lexicographically least minimum certificate mask)."""
    tt = bytes(tt)
    v = tt[x]
    forced = 0
    for i in range(n):
        if tt[x ^ (1 << i)] != v:
            forced |= 1 << i
    rest = [i for i in range(n) if not (forced >> i) & 1]
    for k in range(len(rest) + 1):
        for combo in combinations(rest, k):
            s = forced
            for i in combo:
                s |= 1 << i
            if _is_certificate(tt, n, x, s):
                return _popcount(s), s
    raise AssertionError("the full coordinate set is always a certificate")


def certificate_max(tt, n):
    tt = bytes(tt)
    best, arg = -1, 0
    for x in range(1 << n):
        val, _ = certificate_at(tt, n, x)
        if val > best:
            best, arg = val, x
    return best, arg


def decision_tree_depth(tt, n):
    """Minimax depth over subcubes keyed by (fixed mask, assignment)."""
    tt = bytes(tt)
    full = (1 << n) - 1
    memo = {}

    # returns (depth, constant value or -1)
    def solve(fixed, assign):
        key = (fixed, assign)
        hit = memo.get(key)
        if hit is not None:
            return hit
        free = full & ~fixed
        if not free:
            res = (0, tt[assign])
            memo[key] = res
            return res
        low = free & -free
        d0, c0 = solve(fixed | low, assign)
        d1, c1 = solve(fixed | low, assign | low)
        if c0 >= 0 and c0 == c1:
            res = (0, c0)
            memo[key] = res
            return res
        best = max(d0, d1)
        m = free ^ low
        while m and best > 0:
            bit = m & -m
            m ^= bit
            a, _ = solve(fixed | bit, assign)
            if a >= best:
                continue
            b, _ = solve(fixed | bit, assign | bit)
            cand = a if a > b else b
            if cand < best:
                best = cand
        res = (1 + best, -1)
        memo[key] = res
        return res

    return solve(0, 0)[0]


def parity_masks(n):
    """P[S] = point-set bitmask of {x : <S, x> = 1 mod 2}."""
    size = 1 << n
    out = [0] * size
    for s in range(size):
        m = 0
        for x in range(size):
            if _popcount(x & s) & 1:
                m |= 1 << x
        out[s] = m
    return out


def parity_tree_depth(tt_bits, n):
    """Minimax depth over affine subspaces, each keyed by its point set."""
    size = 1 << n
    full = (1 << size) - 1
    F = tt_bits
    P = parity_masks(n)
    memo = {}

    def solve(V):
        hit = memo.get(V)
        if hit is not None:
            return hit
        on = V & F
        if on == 0 or on == V:
            memo[V] = 0
            return 0
        best = None
        seen = set()
        for s in range(1, size):
            a = V & P[s]
            if a == 0 or a == V:
                continue
            key = a if a < V ^ a else V ^ a
            if key in seen:
                continue
            seen.add(key)
            d = solve(a)
            if best is not None and d >= best:
                continue
            e = solve(V ^ a)
            if e > d:
                d = e
            if best is None or d < best:
                best = d
                if best == 0:
                    break
        memo[V] = 1 + best
        return 1 + best

    return solve(full)


def shi_vertex_sweep(tt, n, q):
    """Max |f'_l(j/q)| over cube-vertex segments l and j = 0..q, times q^(n-1).

    On a segment between vertices a and b differing in m coordinates the
    extension restricts to sum_w N_w t^w (1-t)^(m-w), N_w counting ones of f at
    distance w from a inside the spanned subcube.
    """
    tt = bytes(tt)
    if n == 0:
        return 0
    size = 1 << n
    best = 0
    for a in range(size):
        for b in range(a + 1, size):
            d = a ^ b
            m = _popcount(d)
            counts = [0] * (m + 1)
            z = d
            while True:
                counts[_popcount(z)] += tt[a ^ z]
                if z == 0:
                    break
                z = (z - 1) & d
            scale = q ** (n - m)
            for j in range(q + 1):
                r = q - j
                val = 0
                for w in range(m + 1):
                    c = counts[w]
                    if not c:
                        continue
                    if w:
                        val += c * w * j ** (w - 1) * r ** (m - w)
                    if w < m:
                        val -= c * (m - w) * j ** w * r ** (m - w - 1)
                val = abs(val) * scale
                if val > best:
                    best = val
    return best
