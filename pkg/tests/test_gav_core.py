"""Arrangement data, grading and ample fan tests.

The running example (fixture `worked`) has free grading group Z with
generator degrees 5, 8, 9, 6 and relation degree 18; its anticanonical
fan has two full dimensional cones plus one two dimensional cone.
"""

from fractions import Fraction

import pytest

from gavindex.errors import NotAmple, NotQuasiprojectiveSetup
from gavindex.exactla import mat_vec
from gavindex.gav_core import (
    DegreeData,
    KElement,
    anticanonical_class,
    degree_map,
    fan_from_ample,
    fan_from_index_sets,
    is_fano,
    make_data,
    moving_cone,
    relations,
    validate,
)


def test_assembled_matrix(worked):
    assert worked.p0 == ((-2, -1, 2, 0), (-2, -1, 0, 3))
    assert worked.p == ((-2, -1, 2, 0), (-2, -1, 0, 3), (-1, -2, 1, 2))
    assert worked.columns() == ((-2, -2, -1), (-1, -1, -2), (2, 0, 1), (0, 3, 2))
    assert worked.column_labels() == ("v01", "v02", "v11", "v21")
    assert worked.num_cols == 4
    assert worked.ambient_dim == 3


def test_column_lookups(worked):
    assert [worked.block_of_column(j) for j in range(4)] == [0, 0, 1, 2]
    assert [worked.l_of_column(j) for j in range(4)] == [2, 1, 2, 3]


def test_extra_columns_have_no_block():
    data = make_data(
        r=1,
        c=1,
        n=(1, 1),
        m=2,
        l=((1,), (1,)),
        A=((1, 0), (0, 1)),
        D=((2, 0, 1, -1),),
    )
    assert data.block_of_column(2) is None
    assert data.l_of_column(3) is None
    assert data.column_labels() == ("v01", "v11", "v1", "v2")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=(2, 1)),
        dict(l=((2, 1), (2,), (3,), (1,))),
        dict(l=((2,), (2,), (3,))),
        dict(A=((-1, 1), (-1, 0))),
        dict(D=((-1, -2, 1),)),
    ],
)
def test_make_data_rejects_bad_shapes(kwargs):
    base = dict(
        r=2,
        c=1,
        n=(2, 1, 1),
        m=0,
        l=((2, 1), (2,), (3,)),
        A=((-1, 1, 0), (-1, 0, 1)),
        D=((-1, -2, 1, 2),),
    )
    base.update(kwargs)
    with pytest.raises(ValueError):
        make_data(**base)


def test_validate_accepts_worked(worked):
    assert validate(worked) == []


def test_validate_flags_duplicate_and_degenerate_columns():
    data = make_data(
        r=2,
        c=1,
        n=(2, 1, 1),
        m=0,
        l=((1, 1), (1,), (1,)),
        A=((-1, 1, 0), (-1, 0, 1)),
        D=((0, 0, 0, 0),),
    )
    problems = validate(data)
    assert any("pairwise different" in p for p in problems)
    assert any("span" in p for p in problems)


def test_validate_flags_imprimitive_column():
    data = make_data(
        r=1, c=1, n=(1, 1), m=0, l=((2,), (1,)), A=((1, 0), (0, 1)), D=((0, 1),)
    )
    assert any("primitive" in p for p in validate(data))


def test_validate_flags_dependent_a_columns():
    data = make_data(
        r=1, c=1, n=(1, 1), m=0, l=((1,), (1,)), A=((1, 1), (1, 1)), D=((1, 2),)
    )
    assert any("dependent" in p for p in validate(data))


def test_relation_of_worked_example(worked):
    rels = relations(worked)
    assert len(rels) == 1
    assert rels[0].terms == (
        (Fraction(1), 0, (2, 1)),
        (Fraction(1), 1, (2,)),
        (Fraction(1), 2, (3,)),
    )


def test_relations_empty_in_square_case():
    data = make_data(
        r=1, c=1, n=(1, 1), m=0, l=((1,), (1,)), A=((1, 0), (0, 1)), D=((1, 2),)
    )
    assert relations(data) == ()


def test_two_relations_share_leading_block():
    data = make_data(
        r=3,
        c=1,
        n=(1, 1, 1, 1),
        m=0,
        l=((1,), (1,), (1,), (1,)),
        A=((-1, 1, 0, 1), (-1, 0, 1, 2)),
        D=((1, 2, 3, 4),),
    )
    g1, g2 = relations(data)
    assert g1.terms == (
        (Fraction(1), 0, (1,)),
        (Fraction(1), 1, (1,)),
        (Fraction(1), 2, (1,)),
    )
    assert g2.terms == (
        (Fraction(2), 0, (1,)),
        (Fraction(1), 1, (1,)),
        (Fraction(1), 3, (1,)),
    )


def test_degree_map_of_worked_example(worked):
    dd = degree_map(worked)
    assert dd.free_rank == 1
    assert dd.torsion == ()
    assert dd.q_free == ((5, 8, 9, 6),)
    assert [w.free for w in dd.degrees] == [(5,), (8,), (9,), (6,)]
    assert dd.relation_degree == KElement((18,), ())


def test_degree_map_kills_rows_of_p(worked):
    dd = degree_map(worked)
    for row in worked.p:
        assert mat_vec(dd.q_free, row) == (0,)


def test_degree_map_with_torsion():
    data = make_data(
        r=1, c=1, n=(1, 1), m=0, l=((2,), (2,)), A=((1, 0), (0, 1)), D=((1, 1),)
    )
    assert validate(data) == []
    dd = degree_map(data)
    assert dd.free_rank == 0
    assert dd.torsion == (4,)
    assert sorted(w.tors for w in dd.degrees) == [(1,), (3,)]
    assert dd.relation_degree.tors == (2,)


def test_kelement_arithmetic_wraps_torsion():
    dd = DegreeData(
        free_rank=1,
        torsion=(4,),
        q_free=((1, 0),),
        q_tors=((0, 1),),
        degrees=(),
        relation_degree=KElement((0,), (0,)),
    )
    a = KElement((2,), (3,))
    b = KElement((-1,), (2,))
    assert dd.add(a, b) == KElement((1,), (1,))
    assert dd.scale(-1, a) == KElement((-2,), (1,))
    assert dd.scale(4, a) == KElement((8,), (0,))
    assert dd.element_of((5, 7)) == KElement((5,), (3,))


def test_anticanonical_class_of_worked_example(worked):
    assert anticanonical_class(worked) == KElement((10,), ())


def test_moving_cone_of_worked_example(worked):
    mov = moving_cone(worked)
    assert mov.ambient == 1
    assert mov.rays == ((1,),)
    assert mov.relint_contains((10,))


def test_moving_cone_requires_spanning_cone():
    data = make_data(
        r=1, c=1, n=(1, 1), m=0, l=((2,), (2,)), A=((1, 0), (0, 1)), D=((1, 1),)
    )
    with pytest.raises(NotQuasiprojectiveSetup):
        moving_cone(data)


EXPECTED_INDEX_SETS = ((0, 1), (0, 2, 3), (1, 2, 3))


def test_fan_from_ample_matches_expected_cones(worked):
    fan = fan_from_ample(worked, (10,))
    assert len(fan.maximal) == 3
    assert fan.ray_columns == worked.columns()
    assert tuple(sorted(fan.index_sets)) == EXPECTED_INDEX_SETS
    expected = fan_from_index_sets(worked, EXPECTED_INDEX_SETS)
    assert fan.key() == expected.key()


def test_fan_from_ample_accepts_kelement(worked):
    fan = fan_from_ample(worked, anticanonical_class(worked))
    assert len(fan.maximal) == 3


def test_fan_depends_only_on_chamber(worked):
    keys = {fan_from_ample(worked, (t,)).key() for t in (1, 7, 10, 23)}
    assert len(keys) == 1


def test_fan_from_ample_rejects_boundary_classes(worked):
    with pytest.raises(NotAmple):
        fan_from_ample(worked, (0,))
    with pytest.raises(NotAmple):
        fan_from_ample(worked, (-3,))


def test_is_fano_on_worked_example(worked):
    ok, fan = is_fano(worked)
    assert ok
    assert fan.key() == fan_from_ample(worked, (10,)).key()


def test_is_fano_false_without_free_part():
    data = make_data(
        r=1, c=1, n=(1, 1), m=0, l=((2,), (2,)), A=((1, 0), (0, 1)), D=((1, 1),)
    )
    ok, fan = is_fano(data)
    assert not ok and fan is None


def test_is_fano_false_on_boundary_class():
    # toric surface with the anticanonical class on the moving cone boundary
    data = make_data(
        r=1,
        c=1,
        n=(1, 1),
        m=2,
        l=((1,), (1,)),
        A=((1, 0), (0, 1)),
        D=((2, 0, 1, -1),),
    )
    assert validate(data) == []
    ok, fan = is_fano(data)
    assert not ok and fan is None


def test_fan_from_index_sets_rejects_bad_index(worked):
    with pytest.raises(ValueError):
        fan_from_index_sets(worked, [(0, 4)])


def test_fan_from_index_sets_rejects_overlapping_cones(worked):
    # all four columns span the whole space, which strictly contains the
    # second cone without having it as a face
    with pytest.raises(ValueError):
        fan_from_index_sets(worked, [(0, 1, 2, 3), (0, 2, 3)])
