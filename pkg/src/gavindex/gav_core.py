"""Arrangement data, grading, moving cone and the ample fan.

The central object is a pair of matrices (A, P). A is a rational
(c+1) x (r+1) matrix in general position; P stacks a block matrix P0
built from the exponent data l over a free integer part D. Columns of P
are indexed by blocks 0..r (sizes n_0..n_r) followed by m extra columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import NotAmple, NotQuasiprojectiveSetup
from .exactla import (
    IntMat,
    IntVec,
    Rat,
    mat_vec,
    primitive,
    rank,
    snf,
    transpose,
)
from .polyhedra import (
    Cone,
    Fan,
    cone_from_generators,
    contains_cone,
    intersect,
    is_complete,
    make_fan,
    zero_cone,
)
from . import tropical


@dataclass(frozen=True)
class ArrangementData:
    r: int
    c: int
    s: int
    n: tuple[int, ...]
    m: int
    l: tuple[tuple[int, ...], ...]
    A: tuple[tuple[Rat, ...], ...]
    D: IntMat

    @property
    def n_total(self) -> int:
        return sum(self.n)

    @property
    def num_cols(self) -> int:
        return self.n_total + self.m

    @property
    def ambient_dim(self) -> int:
        return self.r + self.s

    @property
    def p0(self) -> IntMat:
        rows = []
        for i in range(1, self.r + 1):
            row: list[int] = []
            for block, size in enumerate(self.n):
                if block == 0:
                    row.extend(-x for x in self.l[0])
                elif block == i:
                    row.extend(self.l[i])
                else:
                    row.extend(0 for _ in range(size))
            row.extend(0 for _ in range(self.m))
            rows.append(tuple(row))
        return tuple(rows)

    @property
    def p(self) -> IntMat:
        return self.p0 + self.D

    def columns(self) -> IntMat:
        return transpose(self.p)

    def column_labels(self) -> tuple[str, ...]:
        labels = []
        for i, size in enumerate(self.n):
            labels.extend(f"v{i}{j}" for j in range(1, size + 1))
        labels.extend(f"v{k}" for k in range(1, self.m + 1))
        return tuple(labels)

    def block_of_column(self, col: int) -> int | None:
        """Block index of a column, or None for the m extra columns."""
        offset = 0
        for i, size in enumerate(self.n):
            if col < offset + size:
                return i
            offset += size
        return None

    def l_of_column(self, col: int) -> int | None:
        offset = 0
        for i, size in enumerate(self.n):
            if col < offset + size:
                return self.l[i][col - offset]
            offset += size
        return None


def make_data(
    r: int,
    c: int,
    n: Sequence[int],
    m: int,
    l: Sequence[Sequence[int]],
    A: Sequence[Sequence[Rat | int | str]],
    D: Sequence[Sequence[int]],
) -> ArrangementData:
    """Assemble arrangement data, checking shapes only.

    Semantic conditions (primitivity, general position of A and so on)
    are reported by validate rather than raised here.
    """
    n_t = tuple(int(x) for x in n)
    if len(n_t) != r + 1:
        raise ValueError(f"n must list r+1 = {r + 1} block sizes, got {len(n_t)}")
    l_t = tuple(tuple(int(x) for x in li) for li in l)
    if len(l_t) != r + 1:
        raise ValueError("l must provide one exponent tuple per block")
    for li, ni in zip(l_t, n_t):
        if len(li) != ni:
            raise ValueError("exponent tuple length must match its block size")
    a_t = tuple(tuple(Fraction(x) for x in row) for row in A)
    if len(a_t) != c + 1 or any(len(row) != r + 1 for row in a_t):
        raise ValueError(f"A must have shape ({c + 1})x({r + 1})")
    d_t = tuple(tuple(int(x) for x in row) for row in D)
    total = sum(n_t) + m
    for row in d_t:
        if len(row) != total:
            raise ValueError(f"D rows must have n+m = {total} entries")
    return ArrangementData(
        r=int(r), c=int(c), s=len(d_t), n=n_t, m=int(m), l=l_t, A=a_t, D=d_t
    )


def validate(data: ArrangementData) -> list[str]:
    """Semantic checks; an empty list means the data is admissible."""
    violations: list[str] = []
    if not data.r >= data.c > 0:
        violations.append("require r >= c > 0")
    if any(ni < 1 for ni in data.n):
        violations.append("block sizes must be positive")
    if data.m < 0:
        violations.append("m must be non-negative")
    if any(x < 1 for li in data.l for x in li):
        violations.append("exponents l_ij must be positive integers")
    a_cols = transpose(data.A)
    for combo in itertools.combinations(range(data.r + 1), min(data.c + 1, data.r + 1)):
        sub = tuple(a_cols[j] for j in combo)
        if rank(sub) != data.c + 1:
            violations.append(
                f"columns {list(combo)} of A are linearly dependent"
            )
            break
    cols = data.columns()
    if len(set(cols)) != len(cols):
        violations.append("columns of P must be pairwise different")
    for idx, col in enumerate(cols):
        if not any(col):
            violations.append(f"column {idx} of P is zero")
        elif primitive(col) != col:
            violations.append(f"column {idx} of P is not primitive")
    if rank(cols) != data.ambient_dim:
        violations.append("columns of P must span the ambient space")
    return violations


@dataclass(frozen=True)
class Relation:
    """A homogeneous trinomial-style relation, stored symbolically.

    Terms pair a rational coefficient with the block index whose monomial
    T_i^{l_i} it multiplies.
    """

    terms: tuple[tuple[Rat, int, tuple[int, ...]], ...]


def _det_rat(m: Sequence[Sequence[Rat]]) -> Rat:
    k = len(m)
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(k):
        minor = tuple(row[:j] + row[j + 1 :] for row in m[1:])
        total += (-1) ** j * Fraction(m[0][j]) * _det_rat(minor)
    return total


def relations(data: ArrangementData) -> tuple[Relation, ...]:
    """The r - c defining relations, by cofactor expansion along the monomial row."""
    a_cols = transpose(data.A)
    out = []
    for t in range(1, data.r - data.c + 1):
        sel = list(range(data.c + 1)) + [data.c + t]
        terms = []
        for pos, j in enumerate(sel):
            rest = tuple(a_cols[k] for k in sel if k != j)
            minor = _det_rat(transpose(rest))
            sign = (-1) ** (data.c + 1 + pos)
            terms.append((sign * minor, j, data.l[j]))
        out.append(Relation(terms=tuple(terms)))
    return tuple(out)


@dataclass(frozen=True)
class KElement:
    free: IntVec
    tors: IntVec


@dataclass(frozen=True)
class DegreeData:
    free_rank: int
    torsion: tuple[int, ...]
    q_free: IntMat
    q_tors: IntMat
    degrees: tuple[KElement, ...]
    relation_degree: KElement

    def element_of(self, x: Sequence[int]) -> KElement:
        free = mat_vec(self.q_free, x)
        tors = tuple(
            v % d for v, d in zip(mat_vec(self.q_tors, x), self.torsion)
        )
        return KElement(free, tors)

    def add(self, a: KElement, b: KElement) -> KElement:
        return KElement(
            tuple(x + y for x, y in zip(a.free, b.free)),
            tuple((x + y) % d for x, y, d in zip(a.tors, b.tors, self.torsion)),
        )

    def scale(self, k: int, a: KElement) -> KElement:
        return KElement(
            tuple(k * x for x in a.free),
            tuple((k * x) % d for x, d in zip(a.tors, self.torsion)),
        )

    def zero(self) -> KElement:
        return KElement(
            tuple(0 for _ in range(self.free_rank)),
            tuple(0 for _ in self.torsion),
        )


@lru_cache(maxsize=256)
def degree_map(data: ArrangementData) -> DegreeData:
    """Presentation of the grading group as cokernel of the transpose of P.

    Free coordinates come from the rows of the Smith transformation
    beyond the rank; torsion coordinates from rows with elementary
    divisor greater than one.
    """
    pt = transpose(data.p)
    s_mat, u, _ = snf(pt)
    ncols = data.ambient_dim
    nrows = data.num_cols
    diag = [s_mat[i][i] for i in range(min(nrows, ncols))]
    rho = sum(1 for d in diag if d != 0)
    free_rows = [list(u[i]) for i in range(rho, nrows)]
    # orient each free row so the first nonzero degree entry is positive
    for row in free_rows:
        lead = next((row[j] for j in range(nrows) if row[j] != 0), 0)
        if lead < 0:
            row[:] = [-x for x in row]
    q_free = tuple(tuple(row) for row in free_rows)
    torsion = tuple(diag[i] for i in range(rho) if diag[i] > 1)
    q_tors = tuple(u[i] for i in range(rho) if diag[i] > 1)
    for prow in data.p:
        if any(v != 0 for v in mat_vec(q_free, prow)):
            raise AssertionError("free part of the grading does not kill P")
        for v, d in zip(mat_vec(q_tors, prow), torsion):
            if v % d != 0:
                raise AssertionError("torsion part of the grading does not kill P")
    dd = DegreeData(
        free_rank=nrows - rho,
        torsion=torsion,
        q_free=q_free,
        q_tors=q_tors,
        degrees=(),
        relation_degree=KElement((), ()),
    )
    basis = tuple(
        tuple(1 if k == j else 0 for k in range(nrows)) for j in range(nrows)
    )
    degrees = tuple(dd.element_of(e) for e in basis)
    mus = []
    offset = 0
    for i, size in enumerate(data.n):
        x = [0] * nrows
        for j in range(size):
            x[offset + j] = data.l[i][j]
        mus.append(dd.element_of(tuple(x)))
        offset += size
    if any(mu != mus[0] for mu in mus):
        raise AssertionError("monomial degrees differ across blocks")
    return DegreeData(
        free_rank=dd.free_rank,
        torsion=torsion,
        q_free=q_free,
        q_tors=q_tors,
        degrees=degrees,
        relation_degree=mus[0],
    )


def anticanonical_class(data: ArrangementData) -> KElement:
    """Sum of all generator degrees minus (r-c) times the relation degree."""
    dd = degree_map(data)
    total = dd.zero()
    for w in dd.degrees:
        total = dd.add(total, w)
    correction = dd.scale(-(data.r - data.c), dd.relation_degree)
    return dd.add(total, correction)


def moving_cone(data: ArrangementData) -> Cone:
    """Intersection over the orthant's facets of the degree images.

    Lives in the free part of the grading group.
    """
    cols = data.columns()
    hull = cone_from_generators(cols)
    if hull.normals or hull.equations:
        raise NotQuasiprojectiveSetup(
            "columns of P must generate the ambient space as a cone"
        )
    dd = degree_map(data)
    if dd.free_rank == 0:
        return zero_cone(0)
    result: Cone | None = None
    for drop in range(data.num_cols):
        gens = [dd.degrees[j].free for j in range(data.num_cols) if j != drop]
        facet_cone = cone_from_generators(gens, ambient=dd.free_rank)
        result = facet_cone if result is None else intersect(result, facet_cone)
    assert result is not None
    return result


def _free_part(u: KElement | Sequence[int]) -> tuple[int, ...]:
    if isinstance(u, KElement):
        return tuple(u.free)
    return tuple(int(x) for x in u)


def _relint_of_degree_cone(dd: DegreeData, subset: tuple[int, ...], u: tuple[int, ...]) -> bool:
    gens = [dd.degrees[j].free for j in subset]
    if dd.free_rank == 1:
        vals = [g[0] for g in gens]
        x = u[0]
        has_pos = any(v > 0 for v in vals)
        has_neg = any(v < 0 for v in vals)
        if has_pos and has_neg:
            return True
        if has_pos:
            return x > 0
        if has_neg:
            return x < 0
        return x == 0
    c = cone_from_generators(gens, ambient=dd.free_rank)
    return c.relint_contains(u)


def _sigma_u(data: ArrangementData, u_free: tuple[int, ...]) -> Fan:
    """The raw ample-class fan: images of complementary orthant faces.

    Iterates over all faces of the positive orthant; a face qualifies
    when u lies in the relative interior of the image of its span.
    """
    if data.num_cols > 20:
        raise ValueError("face enumeration over more than 2^20 subsets refused")
    dd = degree_map(data)
    cols = data.columns()
    qualifying: list[tuple[int, ...]] = []
    for bits in itertools.product((0, 1), repeat=data.num_cols):
        gamma0 = tuple(j for j, b in enumerate(bits) if b)
        if not gamma0:
            continue
        if _relint_of_degree_cone(dd, gamma0, u_free):
            complement = tuple(j for j, b in enumerate(bits) if not b)
            qualifying.append(complement)
    subset_maximal = [
        g
        for g in qualifying
        if not any(h != g and set(g) <= set(h) for h in qualifying)
    ]
    cones: dict[Cone, tuple[int, ...]] = {}
    for idx_set in subset_maximal:
        cone = (
            cone_from_generators([cols[j] for j in idx_set], ambient=data.ambient_dim)
            if idx_set
            else zero_cone(data.ambient_dim)
        )
        cones.setdefault(cone, idx_set)
    unique = list(cones)
    maximal = [
        c for c in unique if not any(d != c and contains_cone(d, c) for d in unique)
    ]
    # face images of a fixed class intersect in common faces; callers
    # still run the completeness check on the result
    return _with_column_info(make_fan(maximal, validate=False), cols)


def _columns_in(cols: IntMat, cone: Cone) -> tuple[int, ...]:
    return tuple(j for j, col in enumerate(cols) if cone.contains(col))


def _with_column_info(fan: Fan, cols: IntMat) -> Fan:
    """Attach the generating columns and per-cone membership index sets."""
    index_sets = tuple(_columns_in(cols, c) for c in fan.maximal)
    return Fan(fan.ambient, fan.maximal, cols, index_sets)


def fan_from_ample(data: ArrangementData, u: KElement | Sequence[int]) -> Fan:
    """Minimal projective fan attached to an ample class.

    The raw face-image fan is required to be complete; cones whose
    relative interior misses the tropical support are then pruned away.
    """
    dd = degree_map(data)
    u_free = _free_part(u)
    if len(u_free) != dd.free_rank:
        raise ValueError("class has wrong free rank")
    mov = moving_cone(data)
    if dd.free_rank == 0 or not mov.relint_contains(u_free):
        raise NotAmple("class is not in the interior of the moving cone")
    raw = _sigma_u(data, u_free)
    if not is_complete(raw):
        raise ValueError("ample-class fan failed the completeness check")
    trop = tropical.trop_structure(data.r, data.c, data.s)
    pruned = tropical.prune_to_minimal(trop, raw)
    return _with_column_info(pruned, data.columns())


def is_fano(data: ArrangementData) -> tuple[bool, Fan | None]:
    """Whether the anticanonical class is ample with a complete raw fan."""
    dd = degree_map(data)
    if dd.free_rank == 0:
        return False, None
    anti = anticanonical_class(data)
    mov = moving_cone(data)
    if not mov.relint_contains(anti.free):
        return False, None
    raw = _sigma_u(data, anti.free)
    if not is_complete(raw):
        return False, None
    trop = tropical.trop_structure(data.r, data.c, data.s)
    pruned = tropical.prune_to_minimal(trop, raw)
    return True, _with_column_info(pruned, data.columns())


def fan_from_index_sets(
    data: ArrangementData, index_sets: Sequence[Sequence[int]]
) -> Fan:
    """Fan whose maximal cones are spanned by the given column subsets."""
    cols = data.columns()
    cones = []
    for idx_set in index_sets:
        for j in idx_set:
            if not 0 <= j < len(cols):
                raise ValueError(f"column index {j} out of range")
        cones.append(
            cone_from_generators([cols[j] for j in idx_set], ambient=data.ambient_dim)
        )
    return _with_column_info(make_fan(cones, validate=True), cols)
