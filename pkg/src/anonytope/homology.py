"""Persistence over GF(2): boundary matrices, column reduction, barcodes,
and the weighted H0 diagram.

Columns are stored as Python ints used as bit sets, which keeps the
left-to-right reduction and the rank computations exact and fast at the
scales this package targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Filtration, SimplicialComplex, simplex_dim
from .errors import ContractViolation
from .geometry import NormalizedDataset, _dist, min_enclosing_ball


@dataclass(frozen=True)
class BoundaryMatrix:
    """Per filtration entry, the indices of its codimension-1 faces."""

    columns: tuple[tuple[int, ...], ...]
    dims: tuple[int, ...]


@dataclass(frozen=True)
class PersistencePairs:
    pairs: tuple[tuple[int, int], ...]   # (birth index, death index)
    unpaired: tuple[int, ...]


@dataclass(frozen=True)
class Bar:
    dim: int
    birth: float
    death: float | None    # None encodes +infinity

    @property
    def is_zero_length(self) -> bool:
        return self.death is not None and self.death == self.birth


@dataclass(frozen=True)
class Barcode:
    bars: tuple[Bar, ...]

    def display_bars(self) -> list[Bar]:
        """Bars with positive length; zero-length ones stay in .bars."""
        return [b for b in self.bars if not b.is_zero_length]

    def betti_at(self, eps: float) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.bars:
            if b.birth <= eps and (b.death is None or eps < b.death):
                out[b.dim] = out.get(b.dim, 0) + 1
        return out


@dataclass(frozen=True)
class WeightedBar:
    birth: float
    death: float | None
    # piecewise-constant component size: value steps[i][1] from steps[i][0]
    # up to the next step (or death)
    weight_steps: tuple[tuple[float, int], ...]

    def weight_at(self, eps: float) -> int:
        w = 0
        for e, size in self.weight_steps:
            if e <= eps:
                w = size
        return w


@dataclass(frozen=True)
class WeightedBarcode:
    h0_bars: tuple[WeightedBar, ...]
    # component partition recorded at birth and after every merge event
    snapshots: tuple[tuple[float, tuple[tuple[int, ...], ...]], ...]
    n_points: int

    def live_bars(self, eps: float) -> list[WeightedBar]:
        return [b for b in self.h0_bars
                if b.birth <= eps and (b.death is None or eps < b.death)]


def boundary_matrix(filt: Filtration) -> BoundaryMatrix:
    index = {s: i for i, (_, s) in enumerate(filt.entries)}
    cols, dims = [], []
    for i, (_, s) in enumerate(filt.entries):
        dims.append(simplex_dim(s))
        if len(s) == 1:
            cols.append(())
            continue
        faces = []
        for f in combinations(s, len(s) - 1):
            j = index.get(f)
            if j is None or j >= i:
                raise ContractViolation(
                    f"face {f} of {s} missing or out of order in filtration")
            faces.append(j)
        cols.append(tuple(sorted(faces)))
    return BoundaryMatrix(columns=tuple(cols), dims=tuple(dims))


def reduce_matrix(bm: BoundaryMatrix) -> PersistencePairs:
    """Standard left-to-right column reduction with low-index pairing."""
    n = len(bm.columns)
    cols = [sum(1 << f for f in c) for c in bm.columns]
    low_owner: dict[int, int] = {}
    pairs = []
    for j in range(n):
        col = cols[j]
        while col:
            low = col.bit_length() - 1
            other = low_owner.get(low)
            if other is None:
                break
            col ^= cols[other]
        cols[j] = col
        if col:
            low = col.bit_length() - 1
            low_owner[low] = j
            pairs.append((low, j))
    killed = {i for i, _ in pairs} | {j for _, j in pairs}
    unpaired = tuple(i for i in range(n) if i not in killed)
    return PersistencePairs(pairs=tuple(sorted(pairs)), unpaired=unpaired)


def barcode(pairs: PersistencePairs, filt: Filtration) -> Barcode:
    bars = []
    for i, j in pairs.pairs:
        bars.append(Bar(dim=simplex_dim(filt.entries[i][1]),
                        birth=filt.entries[i][0],
                        death=filt.entries[j][0]))
    for i in pairs.unpaired:
        bars.append(Bar(dim=simplex_dim(filt.entries[i][1]),
                        birth=filt.entries[i][0], death=None))
    bars.sort(key=lambda b: (b.dim, b.birth,
                             float("inf") if b.death is None else b.death))
    return Barcode(bars=tuple(bars))


class _UnionFind:
    def __init__(self, ids):
        self.parent = {i: i for i in ids}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        # elder rule: the component whose oldest member has the smaller
        # row id survives
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra, rb


def weighted_h0_barcode(data: NormalizedDataset) -> WeightedBarcode:
    """Union-find sweep over edges by birth; merges follow the elder rule
    and the surviving bar absorbs the dying bar's weight."""
    ids = list(data.row_ids)
    n = len(ids)
    edges = []
    for a, b in combinations(ids, 2):
        edges.append((_dist(data.point(a), data.point(b)) / 2.0, a, b))
    edges.sort()

    uf = _UnionFind(ids)
    members = {i: [i] for i in ids}
    steps = {i: [(0.0, 1)] for i in ids}
    deaths: dict[int, float] = {}
    snapshots = [(0.0, tuple((i,) for i in ids))]

    for eps, a, b in edges:
        merged = uf.union(a, b)
        if merged is None:
            continue
        survivor, dying = merged
        deaths[dying] = eps
        members[survivor] = sorted(members[survivor] + members[dying])
        steps[survivor].append((eps, len(members[survivor])))
        del members[dying]
        parts = tuple(sorted(tuple(m) for m in members.values()))
        snapshots.append((eps, parts))

    bars = []
    for i in ids:
        if i in deaths or i in members:
            bar_steps = steps[i]
            bars.append(WeightedBar(
                birth=0.0,
                death=deaths.get(i),
                weight_steps=tuple(bar_steps)))
    bars.sort(key=lambda b: (float("inf") if b.death is None else b.death,
                             b.weight_steps[0]))
    return WeightedBarcode(h0_bars=tuple(bars),
                           snapshots=tuple(snapshots), n_points=n)


def _gf2_rank(columns: list[int]) -> int:
    rows: dict[int, int] = {}
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


def homology_dims_at(complex_: SimplicialComplex) -> list[int]:
    """Betti numbers dim H_0 .. dim H_(dim_cap - 1) by rank-nullity."""
    cap = complex_.dim_cap
    by_dim = [complex_.simplices_of_dim(d) for d in range(cap + 1)]
    ranks = [0] * (cap + 2)    # ranks[d] = rank of boundary_d
    for d in range(1, cap + 1):
        if not by_dim[d]:
            continue
        face_index = {s: i for i, s in enumerate(by_dim[d - 1])}
        cols = []
        for s in by_dim[d]:
            mask = 0
            for f in combinations(s, len(s) - 1):
                mask |= 1 << face_index[f]
            cols.append(mask)
        ranks[d] = _gf2_rank(cols)
    return [len(by_dim[d]) - ranks[d] - ranks[d + 1] for d in range(cap)]


def barcode_json(bars: Barcode, weighted: WeightedBarcode | None,
                 n_points: int) -> dict:
    """The on-disk JSON shape: H0 bars carry their weight steps, higher
    dimensions carry null."""
    weight_by_key: dict[tuple, list] = {}
    if weighted is not None:
        for wb in weighted.h0_bars:
            weight_by_key.setdefault((wb.birth, wb.death), []).append(
                [[e, w] for e, w in wb.weight_steps])
    out = []
    for b in bars.bars:
        entry = {"dim": b.dim, "birth": b.birth, "death": b.death,
                 "weight_steps": None}
        if b.dim == 0:
            queue = weight_by_key.get((b.birth, b.death))
            if queue:
                entry["weight_steps"] = queue.pop(0)
        out.append(entry)
    return {"bars": out, "n_points": n_points}
