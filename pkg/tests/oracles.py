"""Slow, independent reference implementations used as test oracles.

Sets are Python frozensets of 1-based ints; nothing here touches bit words
or the package under test.
"""

from itertools import combinations


def naive_intersecting(sets):
    sets = list(sets)
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not sets[i] & sets[j]:
                return False
    if len(sets) == 1 and not sets[0]:
        return False
    return True


def naive_degrees(sets, n):
    return [sum(1 for s in sets if x in s) for x in range(1, n + 1)]


def naive_diversity(sets, n):
    return len(sets) - max(naive_degrees(sets, n))


def naive_upset(sets, n):
    fam = set(sets)
    return all(s | {x} in fam for s in fam for x in range(1, n + 1))


def subsets_at_least(n, size):
    out = []
    for r in range(size, n + 1):
        out.extend(frozenset(c) for c in combinations(range(1, n + 1), r))
    return out


def naive_shift(s, n):
    return frozenset(x % n + 1 for x in s)


def naive_orbit(seed, n):
    out, cur = set(), frozenset(seed)
    for _ in range(n):
        out.add(cur)
        cur = naive_shift(cur, n)
    return out


def pascal(rows):
    tri = [[1]]
    for a in range(1, rows + 1):
        prev = tri[-1]
        tri.append([1] + [prev[b - 1] + prev[b] for b in range(1, a)] + [1])
    return tri


def naive_plane_lines(q):
    """Lines of PG(2, q), q prime, as frozensets of 1-based point indices."""
    pts = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                t = (a, b, c)
                nz = [v for v in t if v]
                if nz and nz[0] == 1:
                    pts.append(t)
    pts.sort()
    lines = set()
    for u in pts:
        lines.add(
            frozenset(
                i + 1
                for i, x in enumerate(pts)
                if (u[0] * x[0] + u[1] * x[1] + u[2] * x[2]) % q == 0
            )
        )
    return pts, lines


def naive_Ai(lines, n, i):
    return {
        frozenset(c)
        for c in combinations(range(1, n + 1), i)
        if any(l <= set(c) for l in lines)
    }


def backtrack_max_diversity(n):
    """Max diversity over one-of-each-complementary-pair intersecting families.

    Depth-first over the pairs with pruning on disjointness; returns
    ``(max_diversity, number_of_intersecting_choices)``.
    """
    full = frozenset(range(1, n + 1))
    small = [frozenset(c) for r in range(0, (n - 1) // 2 + 1)
             for c in combinations(range(1, n + 1), r)]
    pairs = [(s, full - s) for s in small]
    best, count = [None], [0]

    def rec(idx, chosen):
        if idx == len(pairs):
            count[0] += 1
            d = naive_diversity(chosen, n)
            if best[0] is None or d > best[0]:
                best[0] = d
            return
        for side in pairs[idx]:
            if side and all(side & c for c in chosen):
                chosen.append(side)
                rec(idx + 1, chosen)
                chosen.pop()

    rec(0, [])
    return best[0], count[0]
