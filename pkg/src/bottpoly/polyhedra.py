"""Exact rational H-polytopes.

Everything here is exact: halfspaces carry integer normals and rational
bounds, vertices are tuples of ``Fraction``.  Vertex enumeration is the
brute-force facet-subset method, which is fine for the small dimensions
(n <= 10, roughly 2n facets) this package works in.

Facets, edges and simplicity are derived combinatorially from the
vertex-facet incidences, so redundant or duplicated halfspaces never affect
a verdict, and lower-dimensional polytopes are handled inside their affine
hull.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, gcd
from typing import Iterable, Iterator, Sequence

from . import _linalg
from .errors import DomainError, ResourceError

DEFAULT_LATTICE_CAP = 10**8

Point = tuple[Fraction, ...]


class UnboundedError(DomainError):
    """Raised for an unbounded H-description; ``ray`` is a recession direction."""

    def __init__(self, ray: Sequence[Fraction]):
        self.ray = tuple(Fraction(v) for v in ray)
        super().__init__("polyhedron is unbounded along ray (" + ", ".join(map(str, self.ray)) + ")")


@dataclass(frozen=True)
class Halfspace:
    """The set ``{x : normal . x <= bound}``."""

    normal: tuple[int, ...]
    bound: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", tuple(int(a) for a in self.normal))
        object.__setattr__(self, "bound", Fraction(self.bound))
        if not any(self.normal):
            raise DomainError("halfspace normal must be non-zero")

    def value(self, x: Sequence) -> Fraction:
        return sum((a * v for a, v in zip(self.normal, x)), Fraction(0))

    def contains(self, x: Sequence) -> bool:
        return self.value(x) <= self.bound

    def is_tight(self, x: Sequence) -> bool:
        return self.value(x) == self.bound

    def scaled_ints(self) -> tuple[tuple[int, ...], int]:
        """Integer row ``(a, b)`` describing the same halfspace."""
        d = self.bound.denominator
        return tuple(a * d for a in self.normal), self.bound.numerator


@dataclass(frozen=True)
class HPolytope:
    dim: int
    halfspaces: tuple[Halfspace, ...]
    # set by constructors that guarantee boundedness (twisted cubes)
    bounded_by_construction: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        for h in self.halfspaces:
            if len(h.normal) != self.dim:
                raise DomainError(f"halfspace of length {len(h.normal)} in dimension {self.dim}")

    @classmethod
    def from_inequalities(cls, rows: Iterable[Sequence], bounds: Iterable, dim: int | None = None) -> "HPolytope":
        rows = [tuple(r) for r in rows]
        bounds = list(bounds)
        if dim is None:
            dim = len(rows[0])
        return cls(dim, tuple(Halfspace(r, b) for r, b in zip(rows, bounds)))

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "HPolytope":
        n = len(lower)
        hs = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            hs.append(Halfspace(tuple(e), Fraction(upper[i])))
            e[i] = -1
            hs.append(Halfspace(tuple(e), -Fraction(lower[i])))
        return cls(n, tuple(hs), bounded_by_construction=True)

    def int_rows(self) -> list[tuple[tuple[int, ...], int]]:
        return [h.scaled_ints() for h in self.halfspaces]

    def contains(self, x: Sequence) -> bool:
        return contains(self, x)

    def scale(self, k) -> "HPolytope":
        """Dilation ``x -> k x`` for a positive rational ``k``."""
        k = Fraction(k)
        if k <= 0:
            raise DomainError("dilation factor must be positive")
        return HPolytope(self.dim, tuple(Halfspace(h.normal, h.bound * k) for h in self.halfspaces),
                         self.bounded_by_construction)

    def translate(self, t: Sequence) -> "HPolytope":
        return HPolytope(self.dim, tuple(Halfspace(h.normal, h.bound + h.value(t)) for h in self.halfspaces),
                         self.bounded_by_construction)


@dataclass(frozen=True)
class VertexSet:
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = {tuple(Fraction(v) for v in p) for p in self.points}
        object.__setattr__(self, "points", tuple(sorted(pts)))

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return tuple(Fraction(v) for v in p) in set(self.points)

    @property
    def dim(self) -> int | None:
        return len(self.points[0]) if self.points else None

    def as_set(self) -> frozenset[Point]:
        return frozenset(self.points)


def _as_points(V) -> tuple[Point, ...]:
    if isinstance(V, VertexSet):
        return V.points
    return VertexSet(tuple(V)).points


# ---------------------------------------------------------------------------
# vertex enumeration


def _basic_feasible_points(rows: list[tuple[tuple[int, ...], int]], cols: Sequence[int]) -> set[Point]:
    """Feasible points with ``len(cols)`` linearly independent tight rows, restricted to ``cols``."""
    n = len(cols)
    sub = [tuple(a[c] for c in cols) for a, _ in rows]
    out: set[Point] = set()
    if n == 0:
        if all(b >= 0 for _, b in rows):
            out.add(())
        return out
    bs = [b for _, b in rows]
    for idx in combinations(range(len(rows)), n):
        sol = _linalg.solve_int([sub[i] for i in idx], [bs[i] for i in idx])
        if sol is None:
            continue
        y, d = sol
        for a, b in zip(sub, bs):
            s = 0
            for ai, yi in zip(a, y):
                if ai:
                    s += ai * yi
            if s > b * d:
                break
        else:
            out.add(tuple(Fraction(v, d) for v in y))
    return out


def _recession_ray(rows: list[tuple[tuple[int, ...], int]], n: int):
    """A non-zero ``d`` with ``A d <= 0``, or ``None`` (the cone is assumed pointed)."""
    normals = [a for a, _ in rows]
    for idx in combinations(range(len(normals)), n - 1):
        basis = _linalg.nullspace([normals[i] for i in idx], n)
        if len(basis) != 1:
            continue
        d = _linalg.primitive(basis[0])
        for cand in (d, tuple(-v for v in d)):
            if all(sum(a * v for a, v in zip(row, cand)) <= 0 for row in normals):
                return cand
    return None


@lru_cache(maxsize=4096)
def vertices(P: HPolytope) -> VertexSet:
    """Exact vertex set of a bounded H-polytope (empty iff ``P`` is empty).

    Every feasible point with ``dim`` linearly independent tight constraints
    is an extreme point, so the surviving basic solutions need no further
    filtering once duplicates are merged.
    """
    n = P.dim
    rows = P.int_rows()
    if n == 0:
        return VertexSet(((),))
    normals = [a for a, _ in rows]
    if _linalg.rank(normals) < n:
        # non-trivial lineality space: unbounded unless empty
        cols: list[int] = []
        for c in range(n):
            if _linalg.rank([[a[k] for k in cols + [c]] for a in normals]) > len(cols):
                cols.append(c)
        if _basic_feasible_points(rows, cols):
            ray = _linalg.nullspace(normals, n)[0]
            raise UnboundedError(_linalg.primitive(ray))
        return VertexSet(())
    pts = _basic_feasible_points(rows, range(n))
    if pts and not P.bounded_by_construction:
        ray = _recession_ray(rows, n)
        if ray is not None:
            raise UnboundedError(ray)
    return VertexSet(tuple(pts))


def is_lattice_polytope(V) -> bool:
    return all(v.denominator == 1 for p in _as_points(V) for v in p)


def contains(P: HPolytope, x: Sequence) -> bool:
    if len(x) != P.dim:
        raise DomainError(f"point of length {len(x)} in dimension {P.dim}")
    x = [Fraction(v) for v in x]
    return all(h.contains(x) for h in P.halfspaces)


def contains_polytope(P: HPolytope, V) -> bool:
    return all(contains(P, p) for p in _as_points(V))


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (-1 for the empty set)."""
    if not points:
        return -1
    p0 = points[0]
    return _linalg.rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


# ---------------------------------------------------------------------------
# combinatorics: facets and edges from incidences


@dataclass(frozen=True)
class FaceLattice:
    vertices: tuple[Point, ...]
    dim: int
    facets: tuple[frozenset[int], ...]
    # facet-index sets per vertex
    vertex_facets: tuple[frozenset[int], ...]


@lru_cache(maxsize=4096)
def face_lattice(P: HPolytope) -> FaceLattice:
    verts = vertices(P).points
    d = affine_dimension(verts)
    facets: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for h in P.halfspaces:
        tight = frozenset(i for i, v in enumerate(verts) if h.is_tight(v))
        if not tight or tight in seen:
            continue
        if affine_dimension([verts[i] for i in sorted(tight)]) == d - 1:
            seen.add(tight)
            facets.append(tight)
    facets.sort(key=sorted)
    vf = tuple(frozenset(k for k, f in enumerate(facets) if i in f) for i in range(len(verts)))
    return FaceLattice(verts, d, tuple(facets), vf)


def edges(P: HPolytope) -> list[tuple[int, int]]:
    """Vertex-index pairs spanning edges of ``P``.

    ``u, v`` span an edge iff the smallest face containing both (the
    intersection of all facets through them) has no further vertex.
    """
    fl = face_lattice(P)
    nv = len(fl.vertices)
    everything = frozenset(range(nv))
    out = []
    for u, v in combinations(range(nv), 2):
        common = fl.vertex_facets[u] & fl.vertex_facets[v]
        face = everything
        for k in common:
            face = face & fl.facets[k]
        if len(face) == 2:
            out.append((u, v))
    return out


def check_simple(P: HPolytope) -> tuple[bool, dict | None]:
    """Simplicity with a witness vertex when it fails."""
    fl = face_lattice(P)
    if not fl.vertices:
        raise DomainError("empty polytope")
    for v, fs in zip(fl.vertices, fl.vertex_facets):
        if len(fs) != fl.dim:
            return False, {"vertex": v, "facets": len(fs), "dim": fl.dim}
    return True, None


def is_simple(P: HPolytope) -> bool:
    """Every vertex lies on exactly ``d`` facets, ``d`` the dimension of the affine hull."""
    return check_simple(P)[0]


def check_smooth(P: HPolytope) -> tuple[bool, dict | None]:
    fl = face_lattice(P)
    if not is_lattice_polytope(fl.vertices):
        raise DomainError("smoothness is only defined for lattice polytopes")
    ok, wit = check_simple(P)
    if not ok:
        return False, {"reason": "not simple", **wit}
    nbrs: dict[int, list[int]] = {i: [] for i in range(len(fl.vertices))}
    for u, v in edges(P):
        nbrs[u].append(v)
        nbrs[v].append(u)
    for i, v in enumerate(fl.vertices):
        dirs = [_linalg.primitive([a - b for a, b in zip(fl.vertices[j], v)]) for j in nbrs[i]]
        if len(dirs) != fl.dim:
            return False, {"reason": "edge count", "vertex": v, "edges": len(dirs), "dim": fl.dim}
        g = _linalg.gcd_maximal_minors(dirs)
        if g != 1:
            return False, {"reason": "vertex cone not unimodular", "vertex": v, "index": g,
                           "edge_directions": dirs}
    return True, None


def is_smooth(P: HPolytope) -> bool:
    """Simple, and the primitive edge directions at each vertex form a lattice basis."""
    return check_smooth(P)[0]


# ---------------------------------------------------------------------------
# lattice points


def _scan(P: HPolytope, cap: int, count_only: bool) -> Iterator:
    """Integer points of ``P``, scanning coordinates from last to first.

    At each level only constraints whose support is already fixed bound the
    current coordinate, so triangular systems (twisted cubes) are scanned
    without visiting points outside ``P``.  Coordinates left without a bound
    fall back to the vertex bounding box.  ``cap`` limits the number of
    candidate values examined.
    """
    n = P.dim
    if n == 0:
        yield 1 if count_only else ()
        return
    rows = P.int_rows()
    order = list(range(n - 1, -1, -1))
    pos = {v: t for t, v in enumerate(order)}
    ready: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(n)]
    for a, b in rows:
        t = max(pos[c] for c in range(n) if a[c])
        ready[t].append((a, b))
    has_lo = [any(a[order[t]] < 0 for a, _ in ready[t]) for t in range(n)]
    has_hi = [any(a[order[t]] > 0 for a, _ in ready[t]) for t in range(n)]
    box = None
    if not (all(has_lo) and all(has_hi)):
        V = vertices(P).points
        if not V:
            return
        box = [(min(p[c] for p in V), max(p[c] for p in V)) for c in range(n)]
    x = [0] * n
    budget = [cap]

    def rec(t: int) -> Iterator[tuple[int, ...]]:
        var = order[t]
        lo = hi = None
        if box is not None:
            lo = -((-box[var][0].numerator) // box[var][0].denominator)
            hi = box[var][1].numerator // box[var][1].denominator
        for a, b in ready[t]:
            c = a[var]
            rest = b
            for u in order[:t]:
                if a[u]:
                    rest -= a[u] * x[u]
            if c > 0:
                ub = rest // c
                hi = ub if hi is None or ub < hi else hi
            else:
                lb = -(rest // -c)
                lo = lb if lo is None or lb > lo else lo
        if lo > hi:
            return
        if count_only and t == n - 1:
            yield hi - lo + 1
            return
        budget[0] -= hi - lo + 1
        if budget[0] < 0:
            raise ResourceError(f"lattice point scan exceeded cap of {cap} candidates")
        for val in range(lo, hi + 1):
            x[var] = val
            if t == n - 1:
                yield tuple(x)
            else:
                yield from rec(t + 1)

    yield from rec(0)


def iter_lattice_points(P: HPolytope, cap: int = DEFAULT_LATTICE_CAP) -> Iterator[tuple[int, ...]]:
    return _scan(P, cap, False)


def lattice_points(P: HPolytope, cap: int = DEFAULT_LATTICE_CAP) -> list[tuple[int, ...]]:
    return sorted(_scan(P, cap, False))


def count_lattice_points(P: HPolytope, cap: int = DEFAULT_LATTICE_CAP) -> int:
    """Like ``len(lattice_points(P))`` but the innermost coordinate is counted, not scanned."""
    return sum(_scan(P, cap, True))


# ---------------------------------------------------------------------------
# triangulation and volume


def _affine_coords(simplex: Sequence[Point], p: Sequence) -> list[Fraction]:
    """Barycentric coordinates of ``p`` (assumed in the affine hull) w.r.t. ``simplex``."""
    s0 = simplex[0]
    B = [[a - b for a, b in zip(s, s0)] for s in simplex[1:]]
    k = len(B)
    if k == 0:
        return [Fraction(1)]
    rhs = [a - b for a, b in zip(p, s0)]
    gram = [[sum(x * y for x, y in zip(B[i], B[j])) for j in range(k)] for i in range(k)]
    proj = [sum(x * y for x, y in zip(B[i], rhs)) for i in range(k)]
    # exact Gauss-Jordan on the Gram system
    m = [[Fraction(v) for v in gram[i]] + [Fraction(proj[i])] for i in range(k)]
    for c in range(k):
        piv = next(r for r in range(c, k) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(k):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    lam = [m[i][k] for i in range(k)]
    return [1 - sum(lam)] + lam


def placing_triangulation(points) -> tuple[list[tuple[int, ...]], int]:
    """Placing triangulation of the lexicographically sorted point list.

    Returns simplices as index tuples into the sorted list, and the dimension
    of their affine hull.
    """
    pts = list(_as_points(points))
    if not pts:
        return [], -1
    simplices: list[tuple[int, ...]] = [(0,)]
    k = 0
    for idx in range(1, len(pts)):
        p = pts[idx]
        base = [pts[i] for i in simplices[0]]
        if affine_dimension(base + [p]) > k:
            simplices = [s + (idx,) for s in simplices]
            k += 1
            continue
        count: dict[tuple[int, ...], int] = {}
        for s in simplices:
            for j in range(len(s)):
                f = s[:j] + s[j + 1:]
                count[f] = count.get(f, 0) + 1
        new = []
        for s in simplices:
            bary = None
            for j in range(len(s)):
                f = s[:j] + s[j + 1:]
                if count[f] != 1:
                    continue
                if bary is None:
                    bary = _affine_coords([pts[i] for i in s], p)
                if bary[j] < 0:
                    new.append(f + (idx,))
        simplices.extend(tuple(sorted(s)) for s in new)
    return simplices, k


def volume(V) -> Fraction:
    """Euclidean volume of conv(V) via the placing triangulation."""
    pts = _as_points(V)
    if not pts:
        raise DomainError("volume of an empty vertex set")
    n = len(pts[0])
    simplices, k = placing_triangulation(pts)
    if k < n:
        return Fraction(0)
    total = 0
    for s in simplices:
        s0 = pts[s[0]]
        rows = [[a - b for a, b in zip(pts[i], s0)] for i in s[1:]]
        den = 1
        for r in rows:
            for v in r:
                den = den * v.denominator // gcd(den, v.denominator)
        total += Fraction(abs(_linalg.det_int([[int(v * den) for v in r] for r in rows])), den**n)
    return Fraction(total) / factorial(n)


# ---------------------------------------------------------------------------
# H-description of a convex hull


def hull_halfspaces(V) -> HPolytope:
    """Irredundant H-description of conv(V), equalities written as opposite halfspace pairs."""
    pts = _as_points(V)
    if not pts:
        raise DomainError("hull of an empty point set")
    n = len(pts[0])
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    perp = [_linalg.primitive(v) for v in _linalg.nullspace(diffs, n)] if diffs else [
        tuple(int(i == j) for j in range(n)) for i in range(n)]
    hs: list[Halfspace] = []
    for a in perp:
        b = sum(x * y for x, y in zip(a, p0))
        hs.append(Halfspace(a, b))
        hs.append(Halfspace(tuple(-x for x in a), -b))
    d = n - len(perp)
    seen = set()
    for sub in combinations(range(len(pts)), d) if d > 0 else ():
        chosen = [pts[i] for i in sub]
        if affine_dimension(chosen) != d - 1:
            continue
        rows = [[a - b for a, b in zip(q, chosen[0])] for q in chosen[1:]] + [list(a) for a in perp]
        ns = _linalg.nullspace(rows, n)
        if len(ns) != 1:
            continue
        a = _linalg.primitive(ns[0])
        vals = [sum(x * y for x, y in zip(a, q)) for q in pts]
        b = sum(x * y for x, y in zip(a, chosen[0]))
        if all(v <= b for v in vals):
            cand = (a, b)
        elif all(v >= b for v in vals):
            cand = (tuple(-x for x in a), -b)
        else:
            continue
        if cand not in seen:
            seen.add(cand)
            hs.append(Halfspace(*cand))
    return HPolytope(n, tuple(hs), bounded_by_construction=True)


# ---------------------------------------------------------------------------
# export


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def vertices_to_json(V) -> dict:
    pts = _as_points(V)
    return {
        "dim": len(pts[0]) if pts else None,
        "vertices": [[rational_str(v) for v in p] for p in pts],
    }


def _cyclic_order(points: list[Point], normal: Sequence) -> list[int]:
    """Order coplanar 3-D points counter-clockwise around ``normal``."""
    m = len(points)
    c = [sum(p[i] for p in points) / m for i in range(3)]
    rel = [[p[i] - c[i] for i in range(3)] for p in points]
    ref = rel[0]

    def cross(u, v):
        return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def key(i):
        w = rel[i]
        s = dot(normal, cross(ref, w))
        half = 0 if s > 0 or (s == 0 and dot(ref, w) > 0) else 1
        return half, w

    from functools import cmp_to_key

    def cmp(i, j):
        hi, wi = key(i)
        hj, wj = key(j)
        if hi != hj:
            return hi - hj
        s = dot(normal, cross(wi, wj))
        return -1 if s > 0 else (1 if s < 0 else 0)

    return sorted(range(m), key=cmp_to_key(cmp))


def _off_number(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return repr(float(q))


def vertices_to_off(V) -> str:
    """OFF mesh of conv(V) for a 3-D vertex set."""
    pts = list(_as_points(V))
    if not pts or len(pts[0]) != 3:
        raise DomainError("OFF export needs a non-empty vertex set in dimension 3")
    d = affine_dimension(pts)
    faces: list[list[int]] = []
    if d == 3:
        H = hull_halfspaces(pts)
        for h in H.halfspaces:
            idx = [i for i, p in enumerate(pts) if h.is_tight(p)]
            order = _cyclic_order([pts[i] for i in idx], h.normal)
            faces.append([idx[i] for i in order])
    elif d == 2:
        p0 = pts[0]
        normal = _linalg.primitive(_linalg.nullspace([[a - b for a, b in zip(p, p0)] for p in pts[1:]], 3)[0])
        order = _cyclic_order(pts, normal)
        faces.append(order)
    lines = ["OFF", f"{len(pts)} {len(faces)} 0"]
    lines += [" ".join(_off_number(v) for v in p) for p in pts]
    lines += [" ".join([str(len(f))] + [str(i) for i in f]) for f in faces]
    return "\n".join(lines) + "\n"


def dumps_json(obj) -> str:
    """Insertion-ordered, so callers control field order; the output is deterministic either way."""
    return json.dumps(obj, indent=2)
