"""Exact integer lattice and pointed rational cone kernel.

Vectors are plain tuples of Python ints; :class:`LatticeVector` is available
when the M/N ambient tag matters. Cones keep their rays primitive and sorted
lexicographically, so every derived object (dual rays, faces) is
deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .config import DEFAULT
from .errors import ConeError, DimensionError, FaceError, PointednessError, RankLimitError

Vector = tuple[int, ...]

BOUNDARY = "boundary"
INTERIOR = "interior"


@dataclass(frozen=True)
class LatticeVector:
    coords: Vector
    ambient: str = "N"  # "M" or "N"

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if self.ambient not in ("M", "N"):
            raise ValueError(f"ambient must be 'M' or 'N', got {self.ambient!r}")
        if not self.coords:
            raise DimensionError("lattice vectors need rank >= 1")

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_primitive(self) -> bool:
        return any(self.coords) and gcd_vec(self.coords) == 1

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


def as_vector(v) -> Vector:
    if isinstance(v, LatticeVector):
        return v.coords
    return tuple(int(c) for c in v)


def pairing(m, p) -> int:
    """Duality pairing <m, p>; rejects mismatched ranks and equal ambient tags."""
    if isinstance(m, LatticeVector) and isinstance(p, LatticeVector) and m.ambient == p.ambient:
        raise DimensionError(f"pairing needs one M and one N vector, got two {m.ambient} vectors")
    m, p = as_vector(m), as_vector(p)
    if len(m) != len(p):
        raise DimensionError(f"rank mismatch: {len(m)} vs {len(p)}")
    return sum(a * b for a, b in zip(m, p))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def add(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a) -> Vector:
    return tuple(c * x for x in a)


def gcd_vec(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def primitive(v) -> Vector:
    v = as_vector(v)
    g = gcd_vec(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive multiple")
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence[Fraction]) -> Vector:
    """Positive integer multiple of a rational vector, then primitivized."""
    lcm = 1
    for x in v:
        lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
    return primitive(tuple(int(Fraction(x) * lcm) for x in v))


def first_nonzero_positive(v: Vector) -> Vector:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(r + 1, len(mat)):
            if mat[i][c]:
                f, g = mat[i][c], mat[r][c]
                mat[i] = [g * x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def det(mat: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant of a square integer matrix."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def maximal_minor_gcd(rows: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a k x n matrix: the product of its elementary divisors."""
    k = len(rows)
    if k == 0:
        return 1
    n = len(rows[0])
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = math.gcd(g, det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return 1
    return g


def solve_integer(rows: Sequence[Sequence[int]], rhs: Sequence[int], ncols: int | None = None):
    """Integer solutions of ``rows @ x = rhs``.

    Returns ``(x0, kernel_basis)`` with every solution equal to ``x0`` plus an
    integer combination of the kernel basis, or ``None`` when no integer
    solution exists. Uses unimodular column operations (column-style HNF).
    """
    m = len(rows)
    n = ncols if ncols is not None else len(rows[0])
    h = [list(r) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of u track the transform

    def colop(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for mat in (h, u):
            for r in mat:
                x, y = r[i], r[j]
                r[i], r[j] = a * x + b * y, c * x + d * y

    col = 0
    pivot_rows = []
    for r in range(m):
        if col == n:
            break
        for c in range(col + 1, n):
            if h[r][c]:
                a, b = h[r][col], h[r][c]
                g, s, t = xgcd(a, b)
                colop(col, c, s, t, -b // g, a // g)
        if h[r][col]:
            pivot_rows.append(r)
            col += 1
    # h is now lower echelon: row pivot_rows[j] has its pivot in column j
    y: list[int] = []
    pivot_set = set(pivot_rows)
    for r in range(m):
        acc = sum(h[r][c] * y[c] for c in range(len(y)))
        if r in pivot_set:
            q, rem = divmod(rhs[r] - acc, h[r][len(y)])
            if rem:
                return None
            y.append(q)
        elif acc != rhs[r]:
            return None
    y += [0] * (n - len(y))
    x0 = tuple(sum(u[i][j] * y[j] for j in range(n)) for i in range(n))
    kernel = [tuple(u[i][j] for i in range(n)) for j in range(col, n)]
    return x0, kernel


def hermite_basis(generators: Sequence[Sequence[int]]) -> list[Vector]:
    """Row Hermite normal form basis of the lattice spanned by ``generators``."""
    rows = [list(g) for g in generators if any(g)]
    if not rows:
        return []
    n = len(rows[0])
    basis = []
    r0 = 0
    for c in range(n):
        nz = [i for i in range(r0, len(rows)) if rows[i][c]]
        if not nz:
            continue
        # gcd-combine all rows with nonzero entry in column c into row r0
        while True:
            nz = [i for i in range(r0, len(rows)) if rows[i][c]]
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r0], rows[piv] = rows[piv], rows[r0]
            done = True
            for i in range(r0 + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r0][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r0])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if rows[r0][c] < 0:
            rows[r0] = [-x for x in rows[r0]]
        for i in range(r0):
            q = rows[i][c] // rows[r0][c]
            rows[i] = [x - q * y for x, y in zip(rows[i], rows[r0])]
        r0 += 1
        rows = rows[:r0] + [r for r in rows[r0:] if any(r)]
        if r0 == len(rows):
            break
    basis = [tuple(r) for r in rows[:r0]]
    return basis


def _pivot_columns(rows: Sequence[Vector]) -> list[int]:
    picked: list[int] = []
    for c in range(len(rows[0])):
        trial = picked + [c]
        if rank([[r[i] for i in trial] for r in rows]) == len(trial):
            picked = trial
    return picked


def _independent_subset(rows: Sequence[Vector], k: int) -> list[int]:
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == k:
                break
    return chosen


def extreme_rays_of_halfspaces(constraints: Sequence[Vector], dim: int) -> list[Vector]:
    """Extreme rays of ``{x : <a, x> >= 0 for every a}`` by double description.

    The constraints must span Q^dim, so the cone is pointed. Starts from the
    simplicial cone of ``dim`` independent constraints and inserts the rest
    one at a time, combining adjacent ray pairs across each new hyperplane.
    """
    constraints = [tuple(a) for a in constraints]
    base = _independent_subset(constraints, dim)
    if len(base) < dim:
        raise ConeError("constraints do not span the ambient space")
    b = [constraints[i] for i in base]
    d = det(b)
    # columns of adj(b) * sign(d) satisfy b x_i = |d| e_i
    rays = []
    for i in range(dim):
        col = []
        for r in range(dim):
            minor = [[b[rr][cc] for cc in range(dim) if cc != r] for rr in range(dim) if rr != i]
            col.append((-1) ** (i + r) * det(minor))
        col = tuple(c if d > 0 else -c for c in col)
        rays.append(primitive(col))
    seen = list(base)
    zero_sets = [frozenset(j for j in seen if _dot(constraints[j], r) == 0) for r in rays]
    for idx, a in enumerate(constraints):
        if idx in base:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos + zer]
        new_zero = [zero_sets[i] for i in pos] + [zero_sets[i] | {idx} for i in zer]
        for i in pos:
            for j in neg:
                common = zero_sets[i] & zero_sets[j]
                if len(common) < dim - 2:
                    continue
                if any(
                    k != i and k != j and common <= zero_sets[k] for k in range(len(rays))
                ):
                    continue
                r = primitive(sub(scale(vals[i], rays[j]), scale(vals[j], rays[i])))
                new_rays.append(r)
                new_zero.append(common | {idx})
        rays, zero_sets = new_rays, new_zero
        seen.append(idx)
    return sorted(set(rays))


@dataclass(frozen=True)
class Face:
    indices: tuple[int, ...]
    rays: tuple[Vector, ...]
    dim: int
    smooth: bool

    def to_json(self):
        return list(self.indices)


@dataclass(frozen=True)
class RationalCone:
    """Cone in N_Q given by primitive generators; derived data is computed at construction.

    ``rays`` are the extreme rays when the cone is pointed. ``facet_normals``
    are M-vectors cutting the cone out of its linear span; for a
    full-dimensional pointed cone they generate the dual cone.
    """

    rays: tuple[Vector, ...]
    rank: int
    dim: int
    pointed: bool
    facet_normals: tuple[Vector, ...]
    _faces: tuple[Face, ...] = field(default=(), repr=False, compare=False)

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.rank

    @property
    def dual_rays(self) -> tuple[Vector, ...]:
        if not (self.pointed and self.full_dimensional):
            raise ConeError("dual rays need a pointed full-dimensional cone")
        return self.facet_normals

    def ray_index(self, ray) -> int:
        return self.rays.index(primitive(ray))

    def face(self, indices: Iterable[int]) -> Face:
        """Look up the face with exactly these ray indices."""
        key = tuple(sorted(set(indices)))
        for f in self.faces():
            if f.indices == key:
                return f
        raise FaceError(f"ray subset {list(key)} is not a face")

    def faces(self) -> tuple[Face, ...]:
        if not self.pointed:
            raise PointednessError("face lattice requested for a cone containing a line")
        return self._faces

    def to_json(self):
        out = {"rays": [list(r) for r in self.rays]}
        if self.pointed and self.full_dimensional:
            out["dual_rays"] = [list(m) for m in self.dual_rays]
            out["facet_normals"] = [list(m) for m in self.facet_normals]
        return out


def cone(generators: Iterable, *, max_rank: int = DEFAULT.max_rank) -> RationalCone:
    """Build a cone from generators; redundant and repeated generators are dropped."""
    gens = [as_vector(g) for g in generators]
    if not gens:
        raise ConeError("a cone needs at least one generator")
    n = len(gens[0])
    if n < 1 or any(len(g) != n for g in gens):
        raise DimensionError("generators must share one positive rank")
    if n > max_rank:
        raise RankLimitError(f"rank {n} exceeds the configured limit {max_rank}")
    gens = sorted({primitive(g) for g in gens if any(g)})
    if not gens:
        raise ConeError("the zero cone is not supported")
    k = rank(gens)
    piv = _pivot_columns(gens)
    proj = [tuple(g[c] for c in piv) for g in gens]
    normals_k = extreme_rays_of_halfspaces(proj, k)
    pointed = rank(normals_k) == k if normals_k else False
    normals = []
    for f in normals_k:
        m = [0] * n
        for c, x in zip(piv, f):
            m[c] = x
        normals.append(tuple(m))
    normals = sorted(normals)
    if pointed:
        rays = tuple(
            g for g in gens if rank([f for f in normals if _dot(f, g) == 0]) == k - 1
        )
    else:
        rays = tuple(gens)
    c = RationalCone(rays=rays, rank=n, dim=k, pointed=pointed, facet_normals=tuple(normals))
    if pointed:
        object.__setattr__(c, "_faces", _face_lattice(c))
    return c


def _make_face(c: RationalCone, idx: Iterable[int]) -> Face:
    idx = tuple(sorted(idx))
    rs = tuple(c.rays[i] for i in idx)
    d = rank(rs)
    smooth = d == len(rs) and maximal_minor_gcd(rs) == 1
    return Face(indices=idx, rays=rs, dim=d, smooth=smooth)


def _face_lattice(c: RationalCone) -> tuple[Face, ...]:
    facets = {
        frozenset(i for i, r in enumerate(c.rays) if _dot(f, r) == 0) for f in c.facet_normals
    }
    found = set(facets) | {frozenset(range(len(c.rays)))}
    frontier = set(facets)
    while frontier:
        nxt = set()
        for a in frontier:
            for b in facets:
                s = a & b
                if s not in found:
                    nxt.add(s)
        found |= nxt
        frontier = nxt
    faces = [_make_face(c, s) for s in found]
    faces.sort(key=lambda f: (f.dim, f.indices))
    return tuple(faces)


def is_pointed(c) -> bool:
    """True iff the dual cone is full-dimensional (no line in the cone)."""
    if not isinstance(c, RationalCone):
        c = cone(c)
    return c.pointed


def _require_pointed_full(c: RationalCone):
    if not c.pointed:
        raise PointednessError("cone contains a line")
    if not c.full_dimensional:
        raise ConeError("cone is not full-dimensional, so its dual is not pointed")


def dual_cone(c: RationalCone) -> RationalCone:
    _require_pointed_full(c)
    dual = RationalCone(
        rays=c.facet_normals, rank=c.rank, dim=c.rank, pointed=True, facet_normals=c.rays
    )
    object.__setattr__(dual, "_faces", _face_lattice(dual))
    return dual


def faces(c: RationalCone) -> tuple[Face, ...]:
    return c.faces()


def cone_membership(c: RationalCone, m, mode: str = BOUNDARY) -> bool:
    """Membership of a lattice vector in a full-dimensional cone via its facet normals."""
    m = as_vector(m)
    if len(m) != c.rank:
        raise DimensionError(f"rank mismatch: {len(m)} vs {c.rank}")
    _require_pointed_full(c)
    vals = [_dot(f, m) for f in c.facet_normals]
    if mode == BOUNDARY:
        return all(v >= 0 for v in vals)
    if mode == INTERIOR:
        return all(v > 0 for v in vals)
    raise ValueError(f"unknown membership mode {mode!r}")


def dual_membership(sigma: RationalCone, m, mode: str = BOUNDARY) -> bool:
    """Membership in the dual cone (or its relative interior) tested against sigma's rays."""
    m = as_vector(m)
    if len(m) != sigma.rank:
        raise DimensionError(f"rank mismatch: {len(m)} vs {sigma.rank}")
    vals = [_dot(m, r) for r in sigma.rays]
    if mode == BOUNDARY:
        return all(v >= 0 for v in vals)
    if mode == INTERIOR:
        return all(v > 0 for v in vals)
    raise ValueError(f"unknown membership mode {mode!r}")


def in_span(vectors: Sequence[Vector], v) -> bool:
    v = as_vector(v)
    if not any(v):
        return True
    return rank(list(vectors) + [v]) == rank(vectors)


def semigroup_points(sigma: RationalCone, bound: int = DEFAULT.degree_bound) -> list[Vector]:
    """Lattice points of the dual cone whose ray pairings sum to at most ``bound``."""
    _require_pointed_full(sigma)
    n = sigma.rank
    basis_idx = _independent_subset(sigma.rays, n)
    b = [[Fraction(x) for x in sigma.rays[i]] for i in basis_idx]
    inv = _invert(b)  # m = inv @ s with s the pairings against the chosen rays
    ranges = []
    for i in range(n):
        lo = bound * sum(min(Fraction(0), inv[i][k]) for k in range(n))
        hi = bound * sum(max(Fraction(0), inv[i][k]) for k in range(n))
        ranges.append(range(math.floor(lo), math.ceil(hi) + 1))
    pts = []
    for m in itertools.product(*ranges):
        vals = [_dot(m, r) for r in sigma.rays]
        if min(vals) >= 0 and sum(vals) <= bound:
            pts.append(tuple(m))
    return pts


def _invert(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    # a has rays as rows; we need the matrix X with a @ X = I
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def box_points(n: int, radius: int):
    """Integer points of the box [-radius, radius]^n, ordered by max-norm then lexicographically."""
    pts = list(itertools.product(range(-radius, radius + 1), repeat=n))
    pts.sort(key=lambda v: (max((abs(x) for x in v), default=0), v))
    return pts
