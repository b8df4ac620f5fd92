"""Leaf decomposition of the tropicalized arrangement variety.

The tropical support in Q^(r+s) is a union of leaves: cones spanned by
up to c of the vectors e_0, .., e_r (with e_0 = -e_1 - .. - e_r)
together with a common lineality space spanned by the last s
coordinates. Fan cones are classified by how they sit relative to the
leaves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import MalformedFanCone
from .polyhedra import (
    Cone,
    Fan,
    cone_from_generators,
    contains_cone,
    facets,
    intersect,
    make_fan,
    relative_interior_point,
)


@dataclass(frozen=True)
class TropStructure:
    r: int
    c: int
    s: int
    leaves: tuple[tuple[frozenset, Cone], ...]
    lineality_cone: Cone

    @property
    def ambient(self) -> int:
        return self.r + self.s

    def leaf(self, indices: Sequence[int]) -> Cone:
        want = frozenset(indices)
        for key, cone in self.leaves:
            if key == want:
                return cone
        raise KeyError(f"no leaf with index set {sorted(want)}")


def _direction(r: int, s: int, i: int) -> tuple[int, ...]:
    if i == 0:
        return tuple(-1 for _ in range(r)) + tuple(0 for _ in range(s))
    return tuple(1 if k == i - 1 else 0 for k in range(r)) + tuple(
        0 for _ in range(s)
    )


@lru_cache(maxsize=64)
def trop_structure(r: int, c: int, s: int) -> TropStructure:
    if not r >= c > 0 or s < 0:
        raise ValueError("require r >= c > 0 and s >= 0")
    ambient = r + s
    lin = tuple(
        tuple(1 if k == r + j else 0 for k in range(ambient)) for j in range(s)
    )
    leaves = []
    for size in range(1, c + 1):
        for combo in itertools.combinations(range(r + 1), size):
            gens = [_direction(r, s, i) for i in combo]
            leaves.append(
                (
                    frozenset(combo),
                    cone_from_generators(gens, lineality=lin, ambient=ambient),
                )
            )
    lineality_cone = cone_from_generators((), lineality=lin, ambient=ambient)
    return TropStructure(r=r, c=c, s=s, leaves=tuple(leaves), lineality_cone=lineality_cone)


def minimal_indices(trop: TropStructure, x: Sequence[int | Fraction]) -> frozenset:
    """Smallest index set I with x inside the leaf of I.

    Writing x (ignoring the lineality coordinates) as a non-negative
    combination of e_0, .., e_r with minimal e_0 coefficient, the set
    collects the indices with positive coefficient. Membership in the
    leaf of I is equivalent to this set being contained in I.
    """
    head = [Fraction(v) for v in x[: trop.r]]
    t_star = max(Fraction(0), -min(head)) if head else Fraction(0)
    out = {i + 1 for i, v in enumerate(head) if v + t_star > 0}
    if t_star > 0:
        out.add(0)
    return frozenset(out)


def indices_of_cone(trop: TropStructure, cone: Cone) -> frozenset:
    """Union of the minimal index sets over generators; minimal I with cone in leaf(I)."""
    out: frozenset = frozenset()
    for g in cone.generators():
        out = out | minimal_indices(trop, g)
    return out


@dataclass(frozen=True)
class ConeKind:
    kind: str
    leaf_indices: frozenset | None
    elementary: bool | None


@lru_cache(maxsize=1 << 16)
def _meets_relint(cone: Cone, other: Cone) -> bool:
    """Whether other intersects the relative interior of cone.

    One relative interior point of the intersection decides this: a
    convex subset meeting the relative interior has its own relative
    interior inside it.
    """
    common = intersect(cone, other)
    return cone.relint_contains(relative_interior_point(common))


@lru_cache(maxsize=1 << 15)
def classify_cone(trop: TropStructure, cone: Cone) -> ConeKind:
    """Classify a fan cone as a leaf cone or a big cone.

    Leaf: contained in a single leaf. Big: its relative interior meets
    every ray direction's leaf. Elementary big cones in addition have
    exactly one extreme ray inside the leaf of {i} for every i.
    """
    if cone.ambient != trop.ambient:
        raise ValueError("cone lives in the wrong ambient space")
    indices = indices_of_cone(trop, cone)
    if len(indices) <= trop.c:
        return ConeKind(kind="leaf", leaf_indices=indices, elementary=None)
    if all(
        _meets_relint(cone, trop.leaf([i])) for i in range(trop.r + 1)
    ):
        elementary = all(
            sum(
                1
                for ray in cone.rays
                if minimal_indices(trop, ray) <= {i}
            )
            == 1
            for i in range(trop.r + 1)
        )
        return ConeKind(kind="big", leaf_indices=None, elementary=elementary)
    raise MalformedFanCone(
        "cone is neither inside a leaf nor big", cone=cone
    )


def relint_meets_trop(trop: TropStructure, cone: Cone) -> bool:
    """Whether the relative interior of the cone meets the tropical support."""
    for size_c in itertools.combinations(range(trop.r + 1), trop.c):
        if _meets_relint(cone, trop.leaf(size_c)):
            return True
    return False


def prune_to_minimal(trop: TropStructure, fan: Fan) -> Fan:
    """Drop cones whose relative interior misses the tropical support.

    Removed cones are replaced by their facets; the loop runs until all
    surviving inclusion-maximal cones meet the support openly.
    """
    work: list[Cone] = list(dict.fromkeys(fan.maximal))
    while True:
        keep, dropped = [], []
        for c in work:
            (keep if relint_meets_trop(trop, c) else dropped).append(c)
        if not dropped:
            break
        candidates = list(keep)
        for c in dropped:
            candidates.extend(facets(c))
        unique = list(dict.fromkeys(candidates))
        work = [
            c
            for c in unique
            if not any(d != c and contains_cone(d, c) for d in unique)
        ]
    # faces of a validated fan still meet in faces, so skip revalidation
    return make_fan(work, validate=False, ray_columns=fan.ray_columns)


@dataclass(frozen=True)
class LinealityReport:
    meets_relint: bool
    slice_dim: int
    expected_dim: int

    @property
    def full(self) -> bool:
        return self.slice_dim == self.expected_dim


def check_big_cone_lineality(trop: TropStructure, cone: Cone) -> LinealityReport:
    """How a big cone intersects the common lineality space of the leaves."""
    common = intersect(cone, trop.lineality_cone)
    return LinealityReport(
        meets_relint=cone.relint_contains(relative_interior_point(common)),
        slice_dim=common.dim,
        expected_dim=trop.s,
    )
