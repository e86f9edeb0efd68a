"""Exact lattice-polytope geometry: hulls, Minkowski sums, volumes, mixed volumes.

Everything here runs on Python integers and :class:`fractions.Fraction`, so
volumes and mixed volumes are exact.  Hulls are built with an incremental
beneath-beyond algorithm whose placing triangulation also yields the volume.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from typing import Sequence

import numpy as np

from .polynomial import IdealSpec

MAX_DIM = 6

Point = tuple[int, ...]


# --------------------------------------------------------------------------
# exact linear algebra helpers

def _det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant; closed form up to 3x3, Bareiss elimination beyond."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for r in range(rank + 1, len(m)):
            if m[r][c] != 0:
                a, b = pr[c], m[r][c]
                m[r] = [a * x - b * y for x, y in zip(m[r], pr)]
        rank += 1
        if rank == len(m):
            break
    return rank


def _pivot_columns(rows: Sequence[Sequence[int]]) -> list[int]:
    """Pivot columns of the row-echelon form of ``rows``."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, len(m)):
            if m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    return pivots


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve a square system exactly; None when singular."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _facet_normal(pts: Sequence[Point]) -> tuple[int, ...]:
    """Primitive integer normal of the hyperplane through ``len(pts) == dim`` points."""
    base = pts[0]
    vecs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    dim = len(base)
    normal = []
    for j in range(dim):
        minor = [v[:j] + v[j + 1:] for v in vecs]
        normal.append((-1) ** j * _det(minor))
    g = reduce(math.gcd, normal)
    if g == 0:
        raise ArithmeticError("degenerate facet")
    return tuple(v // g for v in normal)


# --------------------------------------------------------------------------
# beneath-beyond hull of a full-dimensional point set

@dataclass
class _Facet:
    verts: tuple[int, ...]  # indices into the point list
    normal: tuple[int, ...]
    offset: int
    alive: bool = True


class _FacetTable:
    """Facet normals in an int64 array for vectorized visibility tests.

    Falls back to Python integers when coordinates are large enough that a
    dot product could overflow.
    """

    def __init__(self, dim: int, coord_bound: int):
        self.dim = dim
        self.coord_bound = coord_bound
        self.normals = np.zeros((64, dim), dtype=np.int64)
        self.offsets = np.zeros(64, dtype=np.int64)
        self.alive = np.zeros(64, dtype=bool)
        self.py: list[tuple[tuple[int, ...], int]] = []
        self.exact = True

    def add(self, f: _Facet):
        fid = len(self.py)
        self.py.append((f.normal, f.offset))
        if fid == len(self.offsets):
            self.normals = np.concatenate([self.normals, np.zeros_like(self.normals)])
            self.offsets = np.concatenate([self.offsets, np.zeros_like(self.offsets)])
            self.alive = np.concatenate([self.alive, np.zeros_like(self.alive)])
        big = max(abs(v) for v in f.normal) * self.coord_bound * self.dim
        if self.exact and big < 2**62 and abs(f.offset) < 2**62:
            self.normals[fid] = f.normal
            self.offsets[fid] = f.offset
        else:
            self.exact = False
        self.alive[fid] = True

    def kill(self, fid: int):
        self.alive[fid] = False

    def visible(self, p) -> list[int]:
        n = len(self.py)
        if self.exact:
            hit = (self.normals[:n] @ np.asarray(p, dtype=np.int64) > self.offsets[:n]) & self.alive[:n]
            return np.flatnonzero(hit).tolist()
        return [fid for fid in range(n) if self.alive[fid] and _dot(self.py[fid][0], p) > self.py[fid][1]]


class _Hull:
    """Full-dimensional convex hull in Z^m.

    Attributes after construction: ``facets`` (simplicial, outward normals),
    ``normalized_volume`` (m! times the Euclidean volume) and
    ``vertex_indices``.
    """

    def __init__(self, points: Sequence[Point]):
        self.points = list(points)
        self.dim = len(self.points[0])
        self._build()

    def _initial_simplex(self) -> list[int]:
        chosen = [0]
        base = self.points[0]
        vecs: list[list[int]] = []
        for i, p in enumerate(self.points):
            if len(chosen) == self.dim + 1:
                break
            v = [a - b for a, b in zip(p, base)]
            if _rank(vecs + [v]) > len(vecs):
                vecs.append(v)
                chosen.append(i)
        if len(chosen) != self.dim + 1:
            raise ValueError("point set is not full-dimensional")
        return chosen

    def _make_facet(self, verts: tuple[int, ...]) -> _Facet:
        pts = [self.points[i] for i in verts]
        normal = _facet_normal(pts)
        offset = _dot(normal, pts[0])
        # interior_sum is (dim+1) * interior point; orient outward
        if _dot(normal, self.interior_sum) > (self.dim + 1) * offset:
            normal = tuple(-v for v in normal)
            offset = -offset
        return _Facet(verts, normal, offset)

    def _register(self, fid: int):
        f = self.facets[fid]
        for ridge in itertools.combinations(sorted(f.verts), self.dim - 1):
            self.ridges.setdefault(ridge, set()).add(fid)

    def _unregister(self, fid: int):
        f = self.facets[fid]
        for ridge in itertools.combinations(sorted(f.verts), self.dim - 1):
            owners = self.ridges[ridge]
            owners.discard(fid)
            if not owners:
                del self.ridges[ridge]

    def _build(self):
        dim = self.dim
        simplex = self._initial_simplex()
        spts = [self.points[i] for i in simplex]
        self.interior_sum = tuple(sum(c) for c in zip(*spts))
        self.facets: list[_Facet] = []
        self.ridges: dict[tuple[int, ...], set[int]] = {}
        base = spts[0]
        vol = abs(_det([[a - b for a, b in zip(p, base)] for p in spts[1:]]))
        for drop in range(dim + 1):
            verts = tuple(v for k, v in enumerate(simplex) if k != drop)
            self.facets.append(self._make_facet(verts))
            self._register(len(self.facets) - 1)
        # far points first: they are the likely vertices, so fewer facets get
        # created only to be buried again
        c = self.interior_sum
        k = dim + 1
        order = sorted((i for i in range(len(self.points)) if i not in set(simplex)),
                       key=lambda i: (-sum((k * x - y) ** 2 for x, y in zip(self.points[i], c)), i))
        bound = max(abs(x) for p in self.points for x in p) + 1
        table = _FacetTable(dim, bound)
        for f in self.facets:
            table.add(f)
        for idx in order:
            p = self.points[idx]
            visible = table.visible(p)
            if not visible:
                continue
            vis = set(visible)
            horizon = []
            for fid in visible:
                f = self.facets[fid]
                for ridge in itertools.combinations(sorted(f.verts), dim - 1):
                    if any(o not in vis for o in self.ridges.get(ridge, ())):
                        horizon.append(ridge)
                vol += abs(_det([[a - b for a, b in zip(self.points[v], p)] for v in f.verts]))
            for fid in visible:
                self._unregister(fid)
                self.facets[fid].alive = False
                table.kill(fid)
            for ridge in horizon:
                f = self._make_facet(ridge + (idx,))
                self.facets.append(f)
                self._register(len(self.facets) - 1)
                table.add(f)
        self.facets = [f for f in self.facets if f.alive]
        self.normalized_volume = vol

    @cached_property
    def hyperplanes(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted({(f.normal, f.offset) for f in self.facets})

    @cached_property
    def vertex_indices(self) -> list[int]:
        candidates = sorted({v for f in self.facets for v in f.verts})
        out = []
        for i in candidates:
            p = self.points[i]
            normals = [nv for nv, off in self.hyperplanes if _dot(nv, p) == off]
            if _rank(normals) == self.dim:
                out.append(i)
        return out


# --------------------------------------------------------------------------
# public types

@dataclass(frozen=True)
class HalfSpace:
    """``normal . u <= offset`` with rational data."""

    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(Fraction(v) for v in self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    def contains(self, u) -> bool:
        return _dot(self.normal, u) <= self.offset

    def on_boundary(self, u) -> bool:
        return _dot(self.normal, u) == self.offset

    def dump(self) -> str:
        return " ".join(str(v) for v in self.normal) + f" <= {self.offset}"


class LatticePolytope:
    """Integer-vertex polytope stored by its (extreme, sorted) vertices.

    Use :func:`convex_hull` to build one from arbitrary points; the
    constructor trusts ``vertices`` unless ``reduce=True``.
    """

    def __init__(self, vertices: Sequence[Sequence[int]], ambient_dim: int | None = None,
                 *, reduce: bool = True):
        verts = [tuple(int(c) for c in v) for v in vertices]
        if not verts:
            raise ValueError("a polytope needs at least one point")
        dim = len(verts[0]) if ambient_dim is None else ambient_dim
        if any(len(v) != dim for v in verts):
            raise ValueError(f"all points must have length {dim}")
        self.ambient_dim = dim
        if reduce:
            verts, hull = _reduce(verts, dim)
            self.__dict__["_hull"] = hull
        self.vertices: tuple[Point, ...] = tuple(sorted(set(verts)))

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return f"LatticePolytope({list(self.vertices)})"

    def __add__(self, other):
        return minkowski_sum(self, other)

    def scale(self, k: int) -> "LatticePolytope":
        if k < 0:
            raise ValueError("scale factor must be non-negative")
        if k == 0:
            return LatticePolytope([(0,) * self.ambient_dim], self.ambient_dim, reduce=False)
        # positive scaling keeps every vertex extreme
        return LatticePolytope([tuple(k * c for c in v) for v in self.vertices],
                               self.ambient_dim, reduce=False)

    @cached_property
    def affine_dim(self) -> int:
        base = self.vertices[0]
        return _rank([[a - b for a, b in zip(v, base)] for v in self.vertices[1:]])

    @cached_property
    def _hull(self) -> _Hull | None:
        if self.affine_dim < self.ambient_dim:
            return None
        return _Hull(self.vertices)

    @property
    def normalized_volume(self) -> int:
        """``ambient_dim!`` times the volume; always an integer."""
        h = self._hull
        return 0 if h is None else h.normalized_volume

    def inequalities(self) -> list[HalfSpace]:
        """Facet inequalities ``normal . u <= offset`` (full-dimensional only)."""
        if self._hull is None:
            raise ValueError("H-representation is only available for full-dimensional polytopes")
        return [HalfSpace(nv, off) for nv, off in self._hull.hyperplanes]

    @cached_property
    def _projection(self):
        """Pivot coordinates of the affine hull and the hull (or interval) of the projected vertices."""
        base = self.vertices[0]
        diffs = [[a - b for a, b in zip(v, base)] for v in self.vertices[1:]]
        pivots = _pivot_columns(diffs) if diffs else []
        proj = [tuple(v[c] for c in pivots) for v in self.vertices]
        if len(pivots) == 1:
            return pivots, diffs, (min(proj)[0], max(proj)[0])
        return pivots, diffs, (_Hull(proj) if len(pivots) > 1 else None)

    def contains(self, u) -> bool:
        """Exact membership test; ``u`` may have rational coordinates."""
        u = tuple(Fraction(c) for c in u)
        if len(u) != self.ambient_dim:
            raise ValueError(f"point has length {len(u)}, expected {self.ambient_dim}")
        if self._hull is not None:
            return all(_dot(nv, u) <= off for nv, off in self._hull.hyperplanes)
        pivots, diffs, shape = self._projection
        base = self.vertices[0]
        if not pivots:
            return u == tuple(Fraction(c) for c in base)
        # u must lie in the affine hull: adding u - base may not raise the rank
        den = math.lcm(*(c.denominator for c in u))
        offset = [int((c - b) * den) for c, b in zip(u, base)]
        if _rank(diffs + [offset]) > len(pivots):
            return False
        pu = tuple(u[c] for c in pivots)
        if len(pivots) == 1:
            return shape[0] <= pu[0] <= shape[1]
        return all(_dot(nv, pu) <= off for nv, off in shape.hyperplanes)

    def dump(self) -> str:
        return "\n".join(" ".join(str(c) for c in v) for v in self.vertices)


def _reduce(points: list[Point], dim: int) -> tuple[list[Point], _Hull | None]:
    """Extreme points of ``points`` (deduplicated), plus the hull when full-dimensional."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts, None
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    pivots = _pivot_columns(diffs)
    r = len(pivots)
    if r == dim:
        hull = _Hull(pts)
        return [pts[i] for i in hull.vertex_indices], hull
    # the projection onto the pivot coordinates is injective on the affine hull
    proj = [tuple(p[c] for c in pivots) for p in pts]
    if r == 1:
        lo = min(range(len(pts)), key=lambda i: proj[i])
        hi = max(range(len(pts)), key=lambda i: proj[i])
        return [pts[lo], pts[hi]], None
    hull = _Hull(proj)
    return [pts[i] for i in hull.vertex_indices], None


def convex_hull(points: Sequence[Sequence[int]], dim: int | None = None) -> LatticePolytope:
    """Minimal vertex set of the convex hull of integer ``points``."""
    points = [tuple(p) for p in points]
    if not points:
        raise ValueError("convex_hull needs at least one point")
    dim = len(points[0]) if dim is None else dim
    if any(len(p) != dim for p in points):
        raise ValueError(f"dimension mismatch: expected points of length {dim}")
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} exceeds the supported maximum {MAX_DIM}")
    if any(not isinstance(c, int) and not float(c).is_integer() for p in points for c in p):
        raise ValueError("lattice polytopes need integer coordinates")
    return LatticePolytope(points, dim)


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("Minkowski sum of polytopes in different dimensions")
    pts = [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices]
    return LatticePolytope(pts, P.ambient_dim)


def simplex(n: int, d: int = 1) -> LatticePolytope:
    """The scaled standard simplex ``d * Delta_n``."""
    verts = [(0,) * n] + [tuple(d if j == i else 0 for j in range(n)) for i in range(n)]
    return LatticePolytope(verts, n, reduce=d != 0)


def volume(P: LatticePolytope) -> Fraction:
    """Exact Euclidean volume (zero for lower-dimensional polytopes)."""
    if P.ambient_dim > MAX_DIM:
        raise ValueError(f"dimension {P.ambient_dim} exceeds the supported maximum {MAX_DIM}")
    return Fraction(P.normalized_volume, math.factorial(P.ambient_dim))


def _check_family(Ps: Sequence[LatticePolytope]) -> int:
    n = len(Ps)
    if n == 0:
        raise ValueError("mixed volume of an empty family")
    for P in Ps:
        if P.ambient_dim != n:
            raise ValueError(f"need {P.ambient_dim} polytopes in dimension {P.ambient_dim}, got {n}")
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
    return n


@lru_cache(maxsize=16384)
def _sum_of(family: tuple[LatticePolytope, ...]) -> LatticePolytope:
    # families are sorted, so partial sums are shared across calls
    if len(family) == 1:
        return family[0]
    return minkowski_sum(_sum_of(family[:-1]), family[-1])


def mixed_volume(Ps: Sequence[LatticePolytope]) -> int:
    """Mixed volume, normalized so that ``mixed_volume([P]*n) == n! * vol(P)``.

    Inclusion-exclusion over the ``2^n - 1`` partial Minkowski sums.
    """
    n = _check_family(Ps)
    total = 0
    for size in range(1, n + 1):
        for S in itertools.combinations(range(n), size):
            family = tuple(sorted((Ps[i] for i in S), key=lambda P: P.vertices))
            total += (-1) ** (n - size) * _sum_of(family).normalized_volume
    # the alternating sum of normalized volumes is n! times the Euclidean one
    mv, rem = divmod(total, math.factorial(n))
    if rem or mv < 0:
        raise ArithmeticError(f"mixed volume {Fraction(total, math.factorial(n))} is not a non-negative integer")
    return mv


def multilinear_volume_coefficient(Ps: Sequence[LatticePolytope],
                                   nodes: Sequence[int] | None = None) -> int:
    """Coefficient of ``l1*...*ln`` in ``Vol(l1*P1 + ... + ln*Pn)`` by interpolation.

    Independent check on :func:`mixed_volume`: the volumes come from Qhull
    (floating point, snapped to multiples of ``1/n!``) and the coefficient is
    extracted by tensor Lagrange interpolation on ``nodes**n``.  The default
    nodes ``1..n+1`` suffice for any per-variable degree up to ``n``.  Because
    the volume is homogeneous of total degree ``n``, two nodes such as
    ``(1, 2)`` are already exact and much cheaper.
    """
    n = _check_family(Ps)
    nodes = list(range(1, n + 2)) if nodes is None else [int(v) for v in nodes]
    if len(set(nodes)) != len(nodes) or len(nodes) < 2:
        raise ValueError("need at least two distinct interpolation nodes")
    lin = [_linear_lagrange_coefficient(nodes, a) for a in range(len(nodes))]
    verts = [np.array(P.vertices, dtype=float) for P in Ps]
    total = Fraction(0)
    for combo in itertools.product(range(len(nodes)), repeat=n):
        weight = math.prod(lin[a] for a in combo)
        if weight == 0:
            continue
        lam = [nodes[a] for a in combo]
        total += weight * _qhull_normalized_volume([lv * V for lv, V in zip(lam, verts)])
    total /= math.factorial(n)
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"interpolated mixed volume {total} is not a non-negative integer")
    return int(total)


def _linear_lagrange_coefficient(nodes: list[int], a: int) -> Fraction:
    """Coefficient of ``x`` in the Lagrange basis polynomial for ``nodes[a]``."""
    others = [v for k, v in enumerate(nodes) if k != a]
    denom = math.prod(nodes[a] - v for v in others)
    # d/dx prod(x - v) at 0 = sum over v of prod_{w != v} (-w)
    num = sum(math.prod(-w for w in others if w is not v) for v in others)
    return Fraction(num, denom)


def _qhull_normalized_volume(vertex_arrays) -> int:
    from scipy.spatial import ConvexHull, QhullError

    pts = vertex_arrays[0]
    if pts.shape[1] == 1:
        total = sum(float(V.max() - V.min()) for V in vertex_arrays)
        return int(round(total))
    for V in vertex_arrays[1:]:
        pts = (pts[:, None, :] + V[None, :, :]).reshape(-1, pts.shape[1])
        pts = np.unique(pts, axis=0)
        if len(pts) > pts.shape[1] + 1 and np.linalg.matrix_rank(pts - pts[0]) == pts.shape[1]:
            pts = pts[ConvexHull(pts).vertices]
    dim = pts.shape[1]
    if len(pts) <= dim or np.linalg.matrix_rank(pts - pts[0]) < dim:
        return 0
    try:
        vol = ConvexHull(pts).volume * math.factorial(dim)
    except QhullError:
        return 0
    rounded = round(vol)
    if abs(vol - rounded) > 1e-6 * max(1.0, abs(vol)):
        raise ArithmeticError(f"Qhull volume {vol} is not a lattice volume")
    return int(rounded)


# --------------------------------------------------------------------------
# Newton polytopes of B-systems

def _check_monomial_ideal(ideal: IdealSpec):
    if not ideal.is_monomial:
        raise ValueError("Newton polytopes need monomial generators; monomialize the ideal first "
                         "(the resulting count is then only an upper bound)")


def newton_polytope_of_bsystem(ideal: IdealSpec, d: int) -> LatticePolytope:
    """Newton polytope (x0 dropped) of a general degree-``d`` member of the ideal."""
    _check_monomial_ideal(ideal)
    n = ideal.n
    points = []
    for g in ideal.generators:
        (exps,) = g.terms.keys()
        p = sum(exps)
        if d < p:
            raise ValueError(f"degree {d} is smaller than generator degree {p}")
        e = exps[1:]
        points.append(e)
        for i in range(n):
            points.append(tuple(c + (d - p if j == i else 0) for j, c in enumerate(e)))
    return convex_hull(points, n)


def excess_by_mixed_volume(ideal: IdealSpec, d: Sequence[int]) -> int:
    """Excess number of a monomial ideal as the mixed volume of the Newton polytopes."""
    _check_monomial_ideal(ideal)
    d = [int(v) for v in d]
    if len(d) != ideal.n:
        raise ValueError(f"need {ideal.n} degrees, got {len(d)}")
    if min(d) < max(ideal.degrees):
        raise ValueError(f"min degree {min(d)} is below the largest generator degree {max(ideal.degrees)}")
    cache: dict[int, LatticePolytope] = {}
    polys = []
    for di in d:
        if di not in cache:
            cache[di] = newton_polytope_of_bsystem(ideal, di)
        polys.append(cache[di])
    return mixed_volume(polys)


# --------------------------------------------------------------------------
# simplex slicing by the powers hyperplane

@dataclass(frozen=True)
class SlicedSimplex:
    """The simplex with vertices ``0`` and ``D e_i`` cut by ``sum u_j/p_j = Lambda``.

    ``S1`` is the far side of the cut (away from the origin), ``S0`` the
    side containing the origin.  Both are H-representations.
    """

    S: LatticePolytope
    S0: tuple[HalfSpace, ...]
    S1: tuple[HalfSpace, ...]
    lam: tuple[int, ...]
    p: tuple[int, ...]
    d: tuple[int, ...]

    @property
    def D(self) -> int:
        return sum(l * di for l, di in zip(self.lam, self.d))

    @property
    def Lambda(self) -> int:
        return sum(self.lam)

    def vertices_S1(self) -> list[tuple[Fraction, ...]]:
        return _enumerate_vertices(self.S1, len(self.d))

    def vertices_S0(self) -> list[tuple[Fraction, ...]]:
        return _enumerate_vertices(self.S0, len(self.d))


def slice_simplex(p: Sequence[int], d: Sequence[int], lam: Sequence[int]) -> SlicedSimplex:
    p, d, lam = tuple(map(int, p)), tuple(map(int, d)), tuple(map(int, lam))
    n, k = len(d), len(p)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if len(lam) != n:
        raise ValueError("need one weight per degree")
    if min(lam) < 1:
        raise ValueError("weights must be positive integers")
    if min(p) < 1:
        raise ValueError("powers must be positive")
    if min(d) < max(p):
        raise ValueError(f"min degree {min(d)} is below max power {max(p)}")
    D = sum(l * di for l, di in zip(lam, d))
    Lam = sum(lam)
    S = simplex(n, D)
    coords = [HalfSpace(tuple(-1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    h_d = HalfSpace((1,) * n, D)
    h_p = tuple(Fraction(1, p[j]) if j < k else Fraction(0) for j in range(n))
    far = HalfSpace(tuple(-v for v in h_p), -Lam)
    near = HalfSpace(h_p, Lam)
    return SlicedSimplex(S, tuple(coords + [h_d, near]), tuple(coords + [h_d, far]), lam, p, d)


def _enumerate_vertices(halfspaces: Sequence[HalfSpace], n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of a bounded H-polytope by brute force over n-subsets of constraints."""
    found = set()
    for rows in itertools.combinations(halfspaces, n):
        sol = _solve([list(h.normal) for h in rows], [h.offset for h in rows])
        if sol is None:
            continue
        if all(h.contains(sol) for h in halfspaces):
            found.add(tuple(sol))
    return sorted(found)


def powers_newton_polytopes(p: Sequence[int], d: Sequence[int]) -> list[LatticePolytope]:
    """Newton polytopes for the ideal ``(x1^p1, ..., xk^pk)`` at degrees ``d``."""
    ideal = IdealSpec.powers(p, len(d))
    return [newton_polytope_of_bsystem(ideal, di) for di in d]
