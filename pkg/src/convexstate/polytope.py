"""V-representation polytopes with exact rational face machinery.

A polytope is given by its vertices (rational coordinates).  Faces are
represented as vertex subsets, and every face query reduces to vertex
support linear programs in rational mode, so the answers are exact
certificates rather than approximations.

Simplex testing exposes two notions side by side:

* the standard one: the vertex set is affinely independent;
* a pairwise one: no point lies in the open interior of two segments
  between different vertex pairs ("ambiguous mixtures").

Affine independence implies the pairwise property (barycentric coordinates
are unique), so segment enumeration only runs on affinely dependent input;
when it finds a crossing it returns the four vertices and weights as a
machine-checkable certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import TheoryFormatError
from .lp import INFEASIBLE, LPProblem, OPTIMAL, lp_solve, rat

Point = tuple[Fraction, ...]


def parse_point(coords: Sequence) -> Point:
    return tuple(rat(c) for c in coords)


class VPolytope:
    """Convex hull of finitely many points, stored irredundantly.

    Construction rejects duplicate or non-extreme input points with an
    irredundancy LP sweep, so ``vertices`` always equals the extreme points.
    """

    def __init__(self, vertices: Iterable[Sequence], name: str | None = None):
        verts = [parse_point(v) for v in vertices]
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        dim = len(verts[0])
        for i, v in enumerate(verts):
            if len(v) != dim:
                raise ValueError(
                    f"vertex {i} has {len(v)} coordinates, expected {dim}"
                )
        self.ambient_dim = dim
        self.vertices: tuple[Point, ...] = tuple(verts)
        self.name = name
        self._check_irredundant()

    def _check_irredundant(self) -> None:
        n = len(self.vertices)
        if n == 1:
            return
        for i, v in enumerate(self.vertices):
            others = [u for j, u in enumerate(self.vertices) if j != i]
            if _hull_contains(others, v):
                raise ValueError(
                    f"vertex {i} {tuple(map(str, v))} is redundant: it lies in "
                    "the hull of the remaining vertices"
                )

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"VPolytope(dim={self.ambient_dim}, vertices={len(self.vertices)}{tag})"

    def contains(self, point: Sequence) -> bool:
        return _hull_contains(self.vertices, parse_point(point))

    def vertex_index(self, point: Sequence) -> int | None:
        p = parse_point(point)
        for i, v in enumerate(self.vertices):
            if v == p:
                return i
        return None

    def barycenter(self, indices: Sequence[int] | None = None) -> Point:
        idx = range(len(self.vertices)) if indices is None else indices
        pts = [self.vertices[i] for i in idx]
        k = Fraction(len(pts))
        return tuple(sum(col, Fraction(0)) / k for col in zip(*pts))

    def affine_image(self, matrix: Sequence[Sequence], shift: Sequence) -> "VPolytope":
        """Polytope with vertices M v + t (exact rational arithmetic)."""
        m = [[rat(x) for x in row] for row in matrix]
        t = [rat(x) for x in shift]
        if len(t) != len(m) or any(len(row) != self.ambient_dim for row in m):
            raise ValueError("affine map shape does not match the polytope")
        new_verts = []
        for v in self.vertices:
            new_verts.append(
                tuple(sum(m[r][c] * v[c] for c in range(self.ambient_dim)) + t[r]
                      for r in range(len(m)))
            )
        return VPolytope(new_verts, name=self.name)


def _membership_problem(vertices: Sequence[Point], point: Point,
                        objective: Sequence | None = None) -> LPProblem:
    d = len(point)
    n = len(vertices)
    a_eq = [[vertices[i][k] for i in range(n)] for k in range(d)]
    a_eq.append([Fraction(1)] * n)
    b_eq = list(point) + [Fraction(1)]
    obj = [Fraction(0)] * n if objective is None else list(objective)
    return LPProblem.make(obj, a_eq=a_eq, b_eq=b_eq)


def _hull_contains(vertices: Sequence[Point], point: Point) -> bool:
    if len(point) != len(vertices[0]):
        raise ValueError(
            f"point has {len(point)} coordinates, polytope lives in "
            f"dimension {len(vertices[0])}"
        )
    sol = lp_solve(_membership_problem(vertices, point))
    return sol.status == OPTIMAL


@dataclass(frozen=True)
class Face:
    """A face of a polytope, identified by the vertices it contains."""

    parent: VPolytope
    vertex_indices: tuple[int, ...]

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(self.parent.vertices[i] for i in self.vertex_indices)

    def affine_dimension(self) -> int:
        return affine_dimension_of(self.vertices)

    def as_polytope(self) -> VPolytope:
        return VPolytope(self.vertices)


def minimal_face(k: VPolytope, point: Sequence) -> Face:
    """Smallest face of `k` containing `point`.

    A vertex belongs to the minimal face iff some convex representation of
    the point gives it positive weight, i.e. iff the maximum of its weight
    over all representations is positive; that maximum is an exact LP.
    """
    p = parse_point(point)
    if not k.contains(p):
        raise ValueError(f"point {tuple(map(str, p))} is not in the polytope")
    n = len(k.vertices)
    support = []
    for i in range(n):
        obj = [Fraction(0)] * n
        obj[i] = Fraction(-1)
        sol = lp_solve(_membership_problem(k.vertices, p, objective=obj))
        if sol.status != OPTIMAL:  # cannot happen: membership already proved
            raise ValueError("support LP unexpectedly infeasible")
        if -sol.value > 0:
            support.append(i)
    return Face(k, tuple(support))


def generated_face(k: VPolytope, x: Sequence, y: Sequence) -> Face:
    """Smallest face containing both points: the minimal face of their
    midpoint (any face containing an interior segment point contains both
    endpoints)."""
    px, py = parse_point(x), parse_point(y)
    if px == py:
        raise ValueError("generated_face needs two distinct points")
    mid = tuple((a + b) / 2 for a, b in zip(px, py))
    return minimal_face(k, mid)


def verify_face(k: VPolytope, vertex_indices: Sequence[int]) -> bool:
    """Re-validate that a vertex subset is exactly the face it claims to be:
    the minimal face of its barycenter must list the same vertices."""
    idx = tuple(sorted(vertex_indices))
    bary = k.barycenter(idx)
    return minimal_face(k, bary).vertex_indices == idx


def affine_dimension_of(points: Sequence[Point]) -> int:
    """Dimension of the affine hull, by exact Gaussian elimination."""
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[c - b for c, b in zip(p, base)] for p in points[1:]]
    return _exact_rank(rows)


def affine_dimension(k: VPolytope) -> int:
    return affine_dimension_of(k.vertices)


def _exact_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = Fraction(1) / prow[col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f != 0:
                rows[i] = [a - f * inv * b for a, b in zip(rows[i], prow)]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# Simplex decisions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AmbiguousMixtureCertificate:
    """A point written two ways as an interior mixture of vertex pairs:
    lam*w + (1-lam)*x == mu*y + (1-mu)*z with lam, mu in (0,1) and
    w not in {y, z}."""

    indices: tuple[int, int, int, int]  # w, x, y, z
    w: Point
    x: Point
    y: Point
    z: Point
    lam: Fraction
    mu: Fraction

    def mixture_point(self) -> Point:
        return tuple(self.lam * a + (1 - self.lam) * b for a, b in zip(self.w, self.x))

    def validate(self) -> bool:
        """Exact re-check, independent of how the certificate was found."""
        if not (0 < self.lam < 1 and 0 < self.mu < 1):
            return False
        iw, _, iy, iz = self.indices
        if iw in (iy, iz):
            return False
        left = self.mixture_point()
        right = tuple(self.mu * a + (1 - self.mu) * b for a, b in zip(self.y, self.z))
        return left == right


@dataclass(frozen=True)
class SimplexDecision:
    affinely_independent: bool
    pairwise_simplex: bool
    pairwise_checked: str  # "implied" | "enumerated"
    certificate: AmbiguousMixtureCertificate | None

    @property
    def simplex(self) -> bool:
        return self.affinely_independent


def _segment_crossing(w: Point, x: Point, y: Point, z: Point):
    """Interior crossing of segments [w,x] and [y,z], found by maximizing
    the margin t = min(lam, 1-lam, mu, 1-mu) with an exact LP.

    Returns (lam, mu) with both in (0,1), or None.  A cheap exact
    consistency pre-check (Gaussian elimination on the 2-variable linear
    system) skips segments whose affine hulls cannot meet.
    """
    d = len(w)
    cols = [[w[i] - x[i] for i in range(d)], [-(y[i] - z[i]) for i in range(d)]]
    rhs = [z[i] - x[i] for i in range(d)]
    if not _consistent_2var(cols, rhs):
        return None
    a_eq = [[cols[0][i], cols[1][i], Fraction(0)] for i in range(d)]
    b_eq = rhs
    # t <= lam, t <= 1-lam, t <= mu, t <= 1-mu
    a_ub = [[-1, 0, 1], [1, 0, 1], [0, -1, 1], [0, 1, 1]]
    b_ub = [0, 1, 0, 1]
    prob = LPProblem.make([0, 0, -1], a_eq=a_eq, b_eq=b_eq, a_ub=a_ub, b_ub=b_ub,
                          bounds=[(0, 1), (0, 1), (0, Fraction(1, 2))])
    sol = lp_solve(prob)
    if sol.status != OPTIMAL:
        return None
    lam, mu, t = sol.point
    if t <= 0:
        return None
    return lam, mu


def _consistent_2var(cols: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Whether the d x 2 system [cols] (lam, mu)^T = rhs has any solution."""
    a = [[cols[0][i], cols[1][i], rhs[i]] for i in range(len(rhs))]
    return _exact_rank([row[:2] for row in a]) == _exact_rank(a)


def find_ambiguous_mixture(k: VPolytope) -> AmbiguousMixtureCertificate | None:
    """First interior segment crossing in index order, if any."""
    n = len(k.vertices)
    segs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for si in range(len(segs)):
        for sj in range(si + 1, len(segs)):
            i, j = segs[si]
            kk, ll = segs[sj]
            if {i, j} == {kk, ll}:
                continue
            hit = _segment_crossing(
                k.vertices[i], k.vertices[j], k.vertices[kk], k.vertices[ll]
            )
            if hit is None:
                continue
            lam, mu = hit
            # Orient so the distinguished vertex w avoids {y, z}.
            if i not in (kk, ll):
                w_i, x_i, lam_w = i, j, lam
            elif j not in (kk, ll):
                w_i, x_i, lam_w = j, i, 1 - lam
            else:
                continue  # both endpoints shared: same segment, not ambiguous
            cert = AmbiguousMixtureCertificate(
                indices=(w_i, x_i, kk, ll),
                w=k.vertices[w_i], x=k.vertices[x_i],
                y=k.vertices[kk], z=k.vertices[ll],
                lam=lam_w, mu=mu,
            )
            if not cert.validate():
                raise AssertionError("constructed certificate failed validation")
            return cert
    return None


def is_simplex(k: VPolytope, force_enumeration: bool = False) -> SimplexDecision:
    """Decide simplexhood, reporting both notions.

    When the vertices are affinely independent the pairwise property is
    implied (unique barycentric coordinates), so enumeration is skipped
    unless ``force_enumeration`` asks for the exhaustive check anyway.
    """
    independent = affine_dimension(k) == len(k.vertices) - 1
    if independent and not force_enumeration:
        return SimplexDecision(True, True, "implied", None)
    cert = find_ambiguous_mixture(k)
    return SimplexDecision(
        affinely_independent=independent,
        pairwise_simplex=cert is None,
        pairwise_checked="enumerated",
        certificate=cert,
    )


# ---------------------------------------------------------------------------
# Theory files
# ---------------------------------------------------------------------------

def theory_to_dict(k: VPolytope) -> dict:
    return {
        "name": k.name or "polytope",
        "ambient_dim": k.ambient_dim,
        "vertices": [[str(c) for c in v] for v in k.vertices],
    }


def theory_from_dict(data, source: str = "<dict>") -> VPolytope:
    if not isinstance(data, dict):
        raise TheoryFormatError(f"{source}: top level must be an object")
    for field in ("name", "ambient_dim", "vertices"):
        if field not in data:
            raise TheoryFormatError(f"{source}: missing field {field!r}")
    name = data["name"]
    if not isinstance(name, str):
        raise TheoryFormatError(f"{source}: field 'name' must be a string")
    dim = data["ambient_dim"]
    if not isinstance(dim, int) or dim < 1:
        raise TheoryFormatError(f"{source}: field 'ambient_dim' must be a positive integer")
    raw = data["vertices"]
    if not isinstance(raw, list) or not raw:
        raise TheoryFormatError(f"{source}: field 'vertices' must be a nonempty list")
    verts = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise TheoryFormatError(
                f"{source}: vertex {i} must be a list of {dim} coordinates"
            )
        coords = []
        for jc, c in enumerate(row):
            try:
                coords.append(rat(c))
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise TheoryFormatError(
                    f"{source}: vertex {i} coordinate {jc}: {exc}"
                ) from exc
        verts.append(coords)
    try:
        return VPolytope(verts, name=name)
    except ValueError as exc:
        raise TheoryFormatError(f"{source}: {exc}") from exc


def load_theory(path: str) -> VPolytope:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise TheoryFormatError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise TheoryFormatError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return theory_from_dict(data, source=path)
