from fractions import Fraction

import pytest

from filaments.generators import gen_random_arcs, gen_random_polylines
from filaments.geometry import Point, PolylineFilament, SemicircleFilament
from filaments.instance import AbstractFilament, Instance, build_index
from filaments.instfile import (InstanceFormatError, make_document,
                                parse_document, serialize_document)
from filaments.mwis import solve_mwis


def _roundtrip(doc):
    return parse_document(serialize_document(doc))


def test_roundtrip_preserves_solving():
    for seed in (1, 2, 3):
        inst = gen_random_arcs(8, seed=seed, weight_range=(-5, 50))
        doc = make_document(inst)
        back = _roundtrip(doc)
        assert back.ids == doc.ids
        assert back.instance.weights == inst.weights
        assert back.instance.intersection_matrix() == inst.intersection_matrix()
        a, _ = solve_mwis(build_index(inst))
        b, _ = solve_mwis(build_index(back.instance))
        assert (a.weight, a.members) == (b.weight, b.members)


def test_roundtrip_polylines_and_rationals():
    f = PolylineFilament((Point(Fraction(1, 2), 0), Point(2, Fraction(7, 3)),
                          Point(4, 0)))
    inst = Instance((f, SemicircleFilament(Fraction(-3, 2), 5)), (2, 3))
    back = _roundtrip(make_document(inst))
    assert back.instance.filaments == inst.filaments


def test_roundtrip_abstract_with_matrix_and_edges():
    inst = Instance((AbstractFilament(0, 4), AbstractFilament(1, 5)), (1, 2),
                    adjacency=((True, True), (True, True)))
    doc = make_document(inst, ids=("p", "q"), edge_weights={(0, 1): 9})
    back = _roundtrip(doc)
    assert back.instance.adjacency == inst.adjacency
    assert back.edge_weights == {(0, 1): 9}
    assert back.ids == ("p", "q")


def test_serialization_is_deterministic():
    inst = gen_random_polylines(5, seed=9, weight_range=(1, 20))
    a = serialize_document(make_document(inst))
    b = serialize_document(make_document(inst))
    assert a == b


def test_float_weights_roundtrip():
    inst = Instance((SemicircleFilament(0, 2),), (2.5,))
    back = _roundtrip(make_document(inst))
    assert back.instance.weights == (2.5,)
    assert back.instance.float_mode


def test_comments_and_blank_lines_ignored():
    text = """# a comment
filament-instance 1

filament a 3 semicircle 0 2   # trailing comment
filament b 4 semicircle 1 3
"""
    doc = parse_document(text)
    assert doc.ids == ("a", "b")
    assert doc.instance.weights == (3, 4)


def test_empty_instance_file():
    doc = parse_document("filament-instance 1\n")
    assert doc.instance.size == 0


@pytest.mark.parametrize("text,needle", [
    ("", "header"),
    ("filament a 1 semicircle 0 2\n", "header"),
    ("filament-instance 2\n", "version"),
    ("filament-instance 1\nfilament a 1 semicircle 0 2\n"
     "filament a 1 semicircle 3 4\n", "duplicate id"),
    ("filament-instance 1\nfilament a 1 blob 0 2\n", "unknown kind"),
    ("filament-instance 1\nfilament a 1 semicircle 0\n", "exactly l and r"),
    ("filament-instance 1\nfilament a 1 semicircle 0 1/0\n", "bad rational"),
    ("filament-instance 1\nfilament a x semicircle 0 2\n", "bad weight"),
    ("filament-instance 1\nfilament a 1 polyline 0,0\n", "at least 2"),
    ("filament-instance 1\nfilament a 1 polyline 0,0 1;2 2,0\n", "bad vertex"),
    ("filament-instance 1\nfilament a 1 abstract 0 2\n", "adjacency"),
    ("filament-instance 1\nfilament a 1 abstract 0 2\nadjacency 1\n"
     "adjacency 1\n", "adjacency rows"),
    ("filament-instance 1\nfilament a 1 abstract 0 2\nadjacency 0\n",
     "diagonal"),
    ("filament-instance 1\nfilament a 1 abstract 0 3\n"
     "filament b 1 abstract 1 4\nadjacency 1 1\nadjacency 0 1\n",
     "asymmetric"),
    ("filament-instance 1\nfilament a 1 abstract 0 2\nadjacency 2\n",
     "0 or 1"),
    ("filament-instance 1\nfilament a 1 semicircle 0 2\n"
     "edge a z 4\n", "unknown id"),
    ("filament-instance 1\nfilament a 1 semicircle 0 2\n"
     "edge a a 4\n", "differ"),
    ("filament-instance 1\nfilament a 1 semicircle 0 2\n"
     "filament b 1 semicircle 1 3\nedge a b 4\nedge b a 5\n", "duplicate edge"),
    ("filament-instance 1\nwormhole a\n", "unknown record"),
])
def test_malformed_files_rejected(text, needle):
    with pytest.raises(InstanceFormatError) as err:
        parse_document(text)
    assert needle in str(err.value)


def test_make_document_refuses_derived_instances():
    from filaments.instance import InstanceError
    from filaments.mwim import build_union_instance
    from filaments.instance import make_semicircle_instance

    union = build_union_instance(make_semicircle_instance([(0, 2), (1, 3)]))
    with pytest.raises(InstanceError):
        make_document(union)
