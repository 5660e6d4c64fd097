"""Independent brute-force references; nothing here imports the search code."""

from itertools import combinations


def endpoints(n, kind, m):
    if kind == 0:
        return None
    return {m % n, (m + (1 if kind == 1 else 3)) % n}


def clash(n, a, b):
    """Whether elements a=(kind, i) and b may not share a colour in C_n(1,3)."""
    if a == b:
        return False
    (ka, ia), (kb, ib) = a, b
    if ka == 0 and kb == 0:
        return (ia - ib) % n in (1, 3, n - 1, n - 3)
    if ka == 0:
        return ia in endpoints(n, kb, ib)
    if kb == 0:
        return ib in endpoints(n, ka, ia)
    return bool(endpoints(n, ka, ia) & endpoints(n, kb, ib))


def all_elements(n):
    return [(k, i) for k in range(3) for i in range(n)]


def naive_conflicts(n, vertex, e1, e3):
    colour = {}
    for kind, word in enumerate((vertex, e1, e3)):
        for i, c in enumerate(word):
            colour[(kind, i)] = c
    els = all_elements(n)
    return [(a, b) for a, b in combinations(els, 2) if colour[a] == colour[b] and clash(n, a, b)]


def brute_independence(n):
    adj = lambda u, v: (u - v) % n in (1, 3, n - 1, n - 3)
    best = 0
    for mask in range(1 << n):
        members = [v for v in range(n) if mask >> v & 1]
        if len(members) > best and all(not adj(u, v) for u, v in combinations(members, 2)):
            best = len(members)
    return best


def brute_5p9q(n):
    return [(p, q) for q in range(n // 9 + 1) for p in range(n // 5 + 1) if 5 * p + 9 * q == n]


def naive_total_colourable(n, k):
    """Plain backtracking in a fixed order; v0 is pinned to colour 1."""
    order = []
    for v in range(n):
        for e in [(0, v), (1, v), (2, v), (1, (v - 1) % n), (2, (v - 3) % n)]:
            if e not in order:
                order.append(e)
    earlier = [[b for b in order[:i] if clash(n, a, b)] for i, a in enumerate(order)]
    colour = {}

    def go(i):
        if i == len(order):
            return True
        a = order[i]
        taken = {colour[b] for b in earlier[i]}
        for c in ([1] if i == 0 else range(1, k + 1)):
            if c not in taken:
                colour[a] = c
                if go(i + 1):
                    return True
        colour.pop(a, None)
        return False

    return go(0)
