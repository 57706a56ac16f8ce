"""Fan of a generalized Bott manifold and Batyrev's Fano criterion.

Rays are the columns ``e_1^1..e_m^{n_m}, v_1..v_m`` of ``(E | A)``. The
fan is combinatorially a product of simplices, so the maximal cones and
the primitive collections ``R_j = {v_j, e_j^1, ..., e_j^{n_j}}`` are known
in closed form; only the primitive relations need solving.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .gbm import GeneralizedBottMatrix, TwoStageSpec, validate


@dataclass(frozen=True)
class RayMatrix:
    fiber_dims: tuple[int, ...]
    columns: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return sum(self.fiber_dims)

    def offset(self, i: int) -> int:
        """Coordinate offset of block ``i`` (1-based)."""
        return sum(self.fiber_dims[: i - 1])

    def e_index(self, i: int, k: int) -> int:
        return self.offset(i) + (k - 1)

    def v_index(self, j: int) -> int:
        return self.dimension + (j - 1)

    def e(self, i: int, k: int) -> tuple[int, ...]:
        return self.columns[self.e_index(i, k)]

    def v(self, j: int) -> tuple[int, ...]:
        return self.columns[self.v_index(j)]

    def label(self, index: int) -> str:
        n = self.dimension
        if index >= n:
            return f"v{index - n + 1}"
        for i in range(1, len(self.fiber_dims) + 1):
            if index < self.offset(i) + self.fiber_dims[i - 1]:
                return f"e{i}^{index - self.offset(i) + 1}"
        raise IndexError(index)


@dataclass(frozen=True)
class PrimitiveRelation:
    """``v_j + sum_k e_j^k = sum_{i>j} (lam_i[0] v_i + sum_k lam_i[k] e_i^k)``."""

    j: int
    lambdas: dict[int, tuple[int, ...]]
    degree: int

    @property
    def coefficient_sum(self) -> int:
        return sum(sum(lam) for lam in self.lambdas.values())


@dataclass(frozen=True)
class FanoReport:
    is_fano: bool
    relations: tuple[PrimitiveRelation, ...]

    def __bool__(self) -> bool:
        return self.is_fano

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.degree for r in self.relations)


def ray_matrix(gbm: GeneralizedBottMatrix) -> RayMatrix:
    validate(gbm)
    dims = gbm.fiber_dims
    n = sum(dims)
    offsets = [sum(dims[:i]) for i in range(len(dims))]
    cols = []
    for idx in range(n):
        col = [0] * n
        col[idx] = 1
        cols.append(tuple(col))
    for j in range(1, gbm.stages + 1):
        col = [0] * n
        for k in range(dims[j - 1]):
            col[offsets[j - 1] + k] = -1
        for i in range(j + 1, gbm.stages + 1):
            for k, x in enumerate(gbm.a(i, j)):
                col[offsets[i - 1] + k] = x
        cols.append(tuple(col))
    return RayMatrix(dims, tuple(cols))


def integer_det(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    size = len(a)
    if any(len(r) != size for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for r in range(k + 1, size):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for jj in range(k + 1, size):
                a[i][jj] = (a[i][jj] * a[k][k] - a[i][k] * a[k][jj]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if size else 1


def maximal_cones(gbm: GeneralizedBottMatrix) -> list[tuple[int, ...]]:
    """All maximal cones as sorted tuples of ray indices.

    A maximal cone drops exactly one generator from every ``R_j``.
    """
    rays = ray_matrix(gbm)
    collections = [sorted(c) for c in _collection_indices(rays)]
    cones = []
    for dropped in product(*collections):
        keep = set()
        for coll, w in zip(collections, dropped):
            keep.update(x for x in coll if x != w)
        cones.append(tuple(sorted(keep)))
    return cones


def cone_determinant(gbm: GeneralizedBottMatrix, cone: tuple[int, ...]) -> int:
    rays = ray_matrix(gbm)
    n = rays.dimension
    return integer_det([[rays.columns[c][r] for c in cone] for r in range(n)])


def _collection_indices(rays: RayMatrix) -> list[tuple[int, ...]]:
    out = []
    for j, nj in enumerate(rays.fiber_dims, start=1):
        out.append((rays.v_index(j), *(rays.e_index(j, k) for k in range(1, nj + 1))))
    return out


def primitive_collections(gbm: GeneralizedBottMatrix) -> list[tuple[int, ...]]:
    """``R_1..R_m`` as tuples of ray indices, ``v_j`` first."""
    return _collection_indices(ray_matrix(gbm))


def primitive_relation(gbm: GeneralizedBottMatrix, j: int) -> PrimitiveRelation:
    """Solve the primitive relation of ``R_j`` by sweeping blocks upward.

    ``v_i`` only touches blocks ``>= i``, so block ``i`` of the running
    remainder fixes ``lam_{i,j}``: the ``v_i`` coefficient is the smallest
    shift making every entry nonnegative, which also leaves some entry zero.
    """
    validate(gbm)
    m = gbm.stages
    if not 1 <= j <= m:
        raise ValueError(f"collection index {j} out of range 1..{m}")
    rays = ray_matrix(gbm)
    n = rays.dimension
    w = list(rays.v(j))
    for k in range(1, gbm.n(j) + 1):
        w[rays.e_index(j, k)] += 1
    lambdas: dict[int, tuple[int, ...]] = {}
    for i in range(j + 1, m + 1):
        off = rays.offset(i)
        block = w[off : off + gbm.n(i)]
        lam0 = max(0, -min(block))
        lambdas[i] = (lam0, *(c + lam0 for c in block))
        for k in range(gbm.n(i)):
            w[off + k] = 0
        if lam0:
            for l in range(i + 1, m + 1):
                off_l = rays.offset(l)
                for k, x in enumerate(gbm.a(l, i)):
                    w[off_l + k] -= lam0 * x
    assert w == [0] * n, "primitive relation sweep left a remainder"
    total = sum(sum(lam) for lam in lambdas.values())
    return PrimitiveRelation(j, lambdas, gbm.n(j) + 1 - total)


def relation_rhs(gbm: GeneralizedBottMatrix, rel: PrimitiveRelation) -> tuple[int, ...]:
    """Evaluate the right-hand side of a primitive relation as a vector."""
    rays = ray_matrix(gbm)
    out = [0] * rays.dimension
    for i, lam in rel.lambdas.items():
        vecs = [rays.v(i)] + [rays.e(i, k) for k in range(1, gbm.n(i) + 1)]
        for coeff, vec in zip(lam, vecs):
            for r, x in enumerate(vec):
                out[r] += coeff * x
    return tuple(out)


def is_fano(gbm: GeneralizedBottMatrix) -> FanoReport:
    """Batyrev: Fano iff every primitive collection has positive degree."""
    rels = tuple(primitive_relation(gbm, j) for j in range(1, gbm.stages + 1))
    return FanoReport(all(r.degree > 0 for r in rels), rels)


def is_fano_two_stage(spec: TwoStageSpec) -> bool:
    if not spec.is_normalized:
        raise ValueError(f"{spec} is not normalized; apply normalize() first")
    return sum(spec.a) <= spec.n1
