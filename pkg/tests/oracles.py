"""Brute-force oracles used by the test suite.

Everything here is deliberately naive (exhaustive subset enumeration,
BFS, set-partition enumeration) and shares no code path with the
package implementation it checks.
"""

import itertools
import math

import numpy as np

from anonytope.geometry import NormalizedDataset


def dataset(points) -> NormalizedDataset:
    pts = np.asarray(points, float)
    d = pts.shape[1]
    return NormalizedDataset(
        points=pts,
        scale_params=tuple((0.0, 1.0) for _ in range(d)),
        row_ids=tuple(range(1, len(pts) + 1)),
        qi_names=tuple(f"q{j}" for j in range(d)),
    )


def dist(p, q) -> float:
    return float(np.linalg.norm(np.asarray(p, float) - np.asarray(q, float)))


def circumsphere(pts):
    """Smallest ball with all pts on its boundary, None if degenerate."""
    pts = [np.asarray(p, float) for p in pts]
    if len(pts) == 1:
        return pts[0], 0.0
    p0 = pts[0]
    diffs = np.array([p - p0 for p in pts[1:]])
    gram = diffs @ diffs.T
    rhs = 0.5 * np.einsum("ij,ij->i", diffs, diffs)
    if abs(np.linalg.det(gram)) < 1e-14:
        return None
    y = np.linalg.solve(gram, rhs)
    center = p0 + y @ diffs
    return center, max(dist(center, p) for p in pts)


def meb_bruteforce(points) -> float:
    """MEB radius by trying every support subset of size <= d+1."""
    pts = [np.asarray(p, float) for p in points]
    d = len(pts[0])
    best = math.inf
    for size in range(1, min(len(pts), d + 1) + 1):
        for sub in itertools.combinations(pts, size):
            cs = circumsphere(list(sub))
            if cs is None:
                continue
            c, r = cs
            if r < best and all(dist(c, p) <= r + 1e-9 for p in pts):
                best = r
    return best


def components_bfs(points, eps):
    """Connected components (0-based) of the eps-neighborhood graph."""
    n = len(points)
    adj = {i: [] for i in range(n)}
    for i, j in itertools.combinations(range(n), 2):
        if dist(points[i], points[j]) <= 2 * eps:
            adj[i].append(j)
            adj[j].append(i)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return sorted(comps)


def set_partitions(items):
    """All partitions of items into nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]


def k_anonymity_bruteforce(points, eps, k) -> bool:
    """Does ANY partition into blocks of size >= k with per-block
    MEB <= eps exist?  Stated directly from the definition."""
    n = len(points)
    if k > n:
        return False
    cache = {}

    def block_ok(block):
        key = tuple(block)
        if key not in cache:
            cache[key] = meb_bruteforce([points[i] for i in block]) <= eps
        return cache[key]

    for part in set_partitions(range(n)):
        if all(len(b) >= k and block_ok(sorted(b)) for b in part):
            return True
    return False


def gf2_rank(columns) -> int:
    rows = {}
    rank = 0
    for col in columns:
        while col:
            low = col.bit_length() - 1
            if low in rows:
                col ^= rows[low]
            else:
                rows[low] = col
                rank += 1
                break
    return rank


def betti_numbers(simplices_by_dim) -> list[int]:
    """Betti numbers from explicit simplex lists per dimension, by
    rank-nullity over GF(2)."""
    cap = len(simplices_by_dim) - 1
    ranks = [0] * (cap + 2)
    for d in range(1, cap + 1):
        faces = {s: i for i, s in enumerate(simplices_by_dim[d - 1])}
        cols = []
        for s in simplices_by_dim[d]:
            mask = 0
            for f in itertools.combinations(s, len(s) - 1):
                mask |= 1 << faces[f]
            cols.append(mask)
        ranks[d] = gf2_rank(cols)
    return [len(simplices_by_dim[d]) - ranks[d] - ranks[d + 1]
            for d in range(cap + 1)]
