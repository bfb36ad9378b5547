"""Slow measures computed straight from the definitions.

Nothing here shares code with ``kernels``: subfunctions are plain tuples,
blocks are every sensitive subset, and subspaces are explicit point sets.
Used to cross-check the fast paths at small n.
"""

from functools import lru_cache
from itertools import combinations


def _table(f):
    return tuple(int(v) for v in f.values)


def _pc(x):
    return bin(x).count("1")


def sensitivity(f):
    t = _table(f)
    return max(sum(t[x] != t[x ^ (1 << i)] for i in range(f.n)) for x in range(len(t)))


def block_sensitivity_at(f, x):
    """Max packing over *all* sensitive blocks: g(U) = max_{B <= U} 1 + g(U - B)."""
    t = _table(f)
    v = t[x]
    sens = [b for b in range(1, 1 << f.n) if t[x ^ b] != v]
    memo = {}

    def g(u):
        if u in memo:
            return memo[u]
        best = 0
        for b in sens:
            if b & u == b:
                best = max(best, 1 + g(u & ~b))
        memo[u] = best
        return best

    return g((1 << f.n) - 1)


def block_sensitivity(f):
    return max(block_sensitivity_at(f, x) for x in range(1 << f.n))


def certificate_at(f, x):
    """Smallest S such that every y agreeing with x on S has f(y) = f(x)."""
    t = _table(f)
    for k in range(f.n + 1):
        for combo in combinations(range(f.n), k):
            s = sum(1 << i for i in combo)
            if all(t[y] == t[x] for y in range(len(t)) if (y ^ x) & s == 0):
                return k
    raise AssertionError("unreachable")


def certificate_complexity(f):
    return max(certificate_at(f, x) for x in range(1 << f.n))


def _drop(t, n, i, b):
    # subfunction on n-1 variables: x_i fixed to b, others renumbered
    out = []
    for y in range(1 << (n - 1)):
        lo = y & ((1 << i) - 1)
        hi = y >> i
        out.append(t[lo | (b << i) | (hi << (i + 1))])
    return tuple(out)


def decision_tree_depth(f):
    @lru_cache(maxsize=None)
    def d(t, n):
        if len(set(t)) == 1:
            return 0
        return 1 + min(max(d(_drop(t, n, i, 0), n - 1), d(_drop(t, n, i, 1), n - 1)) for i in range(n))

    return d(_table(f), f.n)


def multilinear_coefficients(f):
    """c_S = sum_{T subset S} (-1)^{|S - T|} f(T) by explicit inclusion-exclusion."""
    t = _table(f)
    out = []
    for s in range(len(t)):
        c = 0
        sub = s
        while True:
            c += (-1) ** _pc(s ^ sub) * t[sub]
            if sub == 0:
                break
            sub = (sub - 1) & s
        out.append(c)
    return out


def degree(f):
    return max((_pc(s) for s, c in enumerate(multilinear_coefficients(f)) if c), default=0)


def degree_mod2(f):
    return max((_pc(s) for s, c in enumerate(multilinear_coefficients(f)) if c % 2), default=0)


def parity_tree_depth(f):
    """Over explicit point sets; a query is any nonempty S, answers split the set."""
    t = _table(f)
    n = f.n

    @lru_cache(maxsize=None)
    def d(points):
        if len({t[p] for p in points}) == 1:
            return 0
        best = None
        for s in range(1, 1 << n):
            ones = frozenset(p for p in points if _pc(p & s) % 2)
            zeros = points - ones
            if not ones or not zeros:
                continue
            cand = max(d(ones), d(zeros))
            if best is None or cand < best:
                best = cand
        return 1 + best

    return d(frozenset(range(1 << n)))


def fourier_numerators(f):
    """a_S = sum_x (-1)^{f(x) + |x & S|} straight from the definition."""
    t = _table(f)
    return [sum((-1) ** (t[x] + _pc(x & s)) for x in range(len(t))) for s in range(len(t))]
