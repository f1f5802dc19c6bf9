"""Point geometry: table normalization and minimum enclosing balls.

The one geometric primitive everything else rests on is the minimum
enclosing ball (MEB): the closed eps-balls around a point set share a
common point exactly when the set's MEB radius is at most eps, so every
"do these balls intersect" question reduces to one MEB computation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, IngestionError

ROLE_IDENTIFIER = "identifier"
ROLE_QUASI = "quasi_identifier"
ROLE_SENSITIVE = "sensitive"

ROLES = (ROLE_IDENTIFIER, ROLE_QUASI, ROLE_SENSITIVE)

# containment slack used when checking points against a candidate ball
_CONTAIN_TOL = 1e-12

#: relative radius accuracy guaranteed by min_enclosing_ball in any dimension
MEB_REL_TOL = 1e-9


@dataclass(frozen=True)
class Column:
    name: str
    role: str

    def __post_init__(self):
        if self.role not in ROLES:
            raise IngestionError(f"unknown column role {self.role!r} "
                                 f"for column {self.name!r}")


@dataclass
class NumericTable:
    """A typed table whose quasi-identifier cells are finite reals."""

    columns: list[Column]
    rows: list[dict]

    def __post_init__(self):
        if not self.rows:
            raise IngestionError("table has no data rows")
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise IngestionError("duplicate column names")
        if not self.quasi_names:
            raise IngestionError("no quasi-identifier columns declared")
        for i, row in enumerate(self.rows, start=1):
            if set(row) != set(names):
                raise IngestionError(f"row {i} does not match the schema")
            for name in self.quasi_names:
                v = row[name]
                if not isinstance(v, (int, float)) or isinstance(v, bool) \
                        or not math.isfinite(float(v)):
                    raise IngestionError(
                        f"row {i}, column {name!r}: value {v!r} is not a "
                        f"finite number")

    @property
    def quasi_names(self) -> list[str]:
        return [c.name for c in self.columns if c.role == ROLE_QUASI]

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_quasi(self) -> int:
        return len(self.quasi_names)


@dataclass(frozen=True)
class NormalizedDataset:
    """Rows mapped into the unit hypercube, one point per row.

    Row ids are stable 1-based indices into the originating table.
    """

    points: np.ndarray                      # shape (N, d), values in [0, 1]
    scale_params: tuple[tuple[float, float], ...]   # per-column (min, max)
    row_ids: tuple[int, ...]
    qi_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, float))
        self.points.setflags(write=False)

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def point(self, row_id: int) -> np.ndarray:
        try:
            idx = self.row_ids.index(row_id)
        except ValueError:
            raise ContractViolation(f"unknown row id {row_id}") from None
        return self.points[idx]

    def subset(self, row_ids) -> np.ndarray:
        return np.array([self.point(r) for r in row_ids])

    def denormalize(self, point) -> np.ndarray:
        point = np.asarray(point, float)
        out = np.empty_like(point)
        for j, (lo, hi) in enumerate(self.scale_params):
            out[j] = lo if hi == lo else lo + point[j] * (hi - lo)
        return out


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, float))

    def contains(self, point, tol: float = 1e-9) -> bool:
        return _dist(self.center, np.asarray(point, float)) <= self.radius + tol


def normalize_dataset(table: NumericTable) -> NormalizedDataset:
    """Min-max scale each quasi-identifier column onto [0, 1].

    Constant columns map to 0: a constant quasi-identifier never
    separates rows, so pinning it costs nothing and keeps the map total.
    """
    qi = table.quasi_names
    raw = np.array([[float(row[name]) for name in qi] for row in table.rows])
    scale = []
    pts = np.zeros_like(raw)
    for j in range(raw.shape[1]):
        lo, hi = raw[:, j].min(), raw[:, j].max()
        scale.append((float(lo), float(hi)))
        if hi > lo:
            pts[:, j] = (raw[:, j] - lo) / (hi - lo)
    return NormalizedDataset(
        points=pts,
        scale_params=tuple(scale),
        row_ids=tuple(range(1, table.n_rows + 1)),
        qi_names=tuple(qi),
    )


def _dist(a, b) -> float:
    return float(np.linalg.norm(a - b))


def _ball_from_boundary(boundary: list[np.ndarray]):
    """Smallest ball with all boundary points on its surface.

    For two points this is the diametral ball; larger sets solve the
    equidistance system restricted to the affine hull (least squares, so
    affinely dependent boundaries degrade gracefully).
    """
    if not boundary:
        return None
    if len(boundary) == 1:
        return boundary[0], 0.0
    if len(boundary) == 2:
        p, q = boundary
        return (p + q) / 2.0, _dist(p, q) / 2.0
    p0 = boundary[0]
    diffs = np.array([p - p0 for p in boundary[1:]])
    rhs = 0.5 * np.einsum("ij,ij->i", diffs, diffs)
    gram = diffs @ diffs.T
    y, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    center = p0 + y @ diffs
    radius = max(_dist(center, p) for p in boundary)
    return center, radius


def _welzl(pts: list[np.ndarray], boundary: list[np.ndarray], dim: int):
    ball = _ball_from_boundary(boundary)
    if len(boundary) == dim + 1:
        return ball
    for i, p in enumerate(pts):
        if ball is None or _dist(ball[0], p) > ball[1] + _CONTAIN_TOL:
            ball = _welzl(pts[:i], boundary + [p], dim)
    return ball


def min_enclosing_ball(points) -> Ball:
    """Smallest closed ball containing all points (Welzl move-to-front).

    Works in any dimension; the returned radius is within MEB_REL_TOL of
    optimal and is inflated (never deflated) so that every input point
    satisfies the containment invariant.
    """
    pts = np.asarray(points, float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if pts.size == 0:
        raise ContractViolation("min_enclosing_ball of an empty point set")
    n, d = pts.shape
    if n == 1:
        return Ball(pts[0].copy(), 0.0)
    if n == 2:
        return Ball((pts[0] + pts[1]) / 2.0, _dist(pts[0], pts[1]) / 2.0)
    order = list(range(n))
    random.Random(0x5EB).shuffle(order)
    center, radius = _welzl([pts[i] for i in order], [], d)
    # inflating to the farthest point guarantees containment without
    # breaking minimality beyond float noise
    radius = max(radius, max(_dist(center, p) for p in pts))
    return Ball(center, radius)


def balls_intersect(points, eps: float) -> bool:
    """Do the closed eps-balls around the points share a common point?

    Closed-ball convention: equality with the MEB radius counts.
    """
    if eps < 0:
        raise ContractViolation(f"eps must be nonnegative, got {eps}")
    return min_enclosing_ball(points).radius <= eps
