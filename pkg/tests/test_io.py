import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherenets import Plane, Point, Sphere
from spherenets.exceptions import SchemaError
from spherenets.generators import torus_net
from spherenets.grid import Grid
from spherenets.io import (
    NetDocument,
    VerificationReport,
    doc_to_grid,
    export_obj,
    grid_to_doc,
    load_net,
    obj_text,
    save_net,
)
from spherenets.pseudo_euclid import ProjectiveLine


def _torus_doc():
    return grid_to_doc(torus_net(2.0, 0.7, 4, 3), "contact_elements", {"surface": "torus"})


def test_save_load_torus_bit_exact(tmp_path):
    doc = _torus_doc()
    path = tmp_path / "torus.json"
    save_net(doc, path)
    back = load_net(path)
    assert back.entries == doc.entries and back.extents == doc.extents and back.metadata == doc.metadata
    save_net(back, tmp_path / "again.json")
    assert (tmp_path / "again.json").read_bytes() == path.read_bytes()


def _grid(extents, fn):
    g = Grid(extents)
    for k, u in enumerate(g.indices()):
        g[u] = fn(k)
    return g


@pytest.mark.parametrize("kind", ["points", "planes", "spheres", "contact_elements", "lines"])
def test_round_trip_every_kind(kind, tmp_path):
    rng = np.random.default_rng(0)

    def value(k):
        if kind == "points":
            return rng.normal(size=3)
        if kind == "planes":
            v = rng.normal(size=3)
            return Plane.from_normal(v, rng.normal())
        if kind == "spheres":
            return Sphere(rng.normal(size=3), rng.uniform(0.1, 2))
        if kind == "contact_elements":
            x = rng.normal(size=3)
            return (x, Plane.through(x, rng.normal(size=3)))
        return ProjectiveLine.span(rng.normal(size=(2, 6)))

    doc = grid_to_doc(_grid((3, 2), value), kind)
    doc.entries[4] = None
    save_net(doc, tmp_path / "n.json")
    back = load_net(tmp_path / "n.json")
    assert back.entries == doc.entries
    assert back.to_json() == doc.to_json()
    g = doc_to_grid(back)
    assert g[1, 1] is None and g[0, 0] is not None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=6, max_size=6))
def test_points_round_trip_any_floats(vals):
    doc = NetDocument("points", (2,), [vals[:3], vals[3:]])
    back = NetDocument.from_json(doc.to_json())
    assert back.entries == [[float(t) for t in vals[:3]], [float(t) for t in vals[3:]]]


def test_extents_mismatch():
    with pytest.raises(SchemaError, match="entries"):
        NetDocument("points", (2, 2), [[0, 0, 0]] * 3)


def test_plane_normal_length_names_cell():
    entries = [[0, 0, 1, 0]] * 4
    entries[3] = [0, 0, 0.9, 0]
    with pytest.raises(SchemaError, match=r"cell \(1, 1\)"):
        NetDocument("planes", (2, 2), entries)


def test_contact_element_incidence_validated():
    with pytest.raises(SchemaError, match="not on its plane"):
        NetDocument("contact_elements", (1,), [[0, 0, 1, 0, 0, 1, 0]])


def test_schema_errors():
    with pytest.raises(SchemaError, match="line 2"):
        NetDocument.from_json('{\n  "kind": ,\n}')
    with pytest.raises(SchemaError, match="kind"):
        NetDocument("circles", (1,), [[0, 0, 0]])
    good = json.loads(NetDocument("points", (1,), [[1, 2, 3]]).to_json())
    for key, val in (("schema_version", 99), ("dims", 2), ("extents", [0]), ("entries", [[1, 2]])):
        bad = dict(good, **{key: val})
        with pytest.raises(SchemaError):
            NetDocument.from_json(json.dumps(bad))
    del good["entries"]
    with pytest.raises(SchemaError, match="entries"):
        NetDocument.from_json(json.dumps(good))
    with pytest.raises(SchemaError):
        load_net("/nonexistent/net.json")


def test_document_is_line_per_entry():
    text = NetDocument("points", (3,), [[0, 0, 0], [1, 0, 0], None]).to_json()
    assert "    [1.0, 0.0, 0.0],\n" in text and "    null\n" in text


def test_obj_unit_square():
    doc = NetDocument("points", (2, 2), [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]])
    lines = obj_text(doc).splitlines()
    assert [l for l in lines if l.startswith("v ")] == [
        "v 0.0 0.0 0.0", "v 1.0 0.0 0.0", "v 0.0 1.0 0.0", "v 1.0 1.0 0.0"]
    assert [l for l in lines if l.startswith("f ")] == ["f 1 2 4 3"]


def test_obj_counts_and_errors(tmp_path):
    doc = NetDocument("points", (3, 3), [[float(k), 0.0, 0.0] for k in range(9)])
    export_obj(doc, tmp_path / "m.obj")
    lines = (tmp_path / "m.obj").read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 9 and sum(l.startswith("f ") for l in lines) == 4
    assert "f 5 6 9 8" in lines
    with pytest.raises(SchemaError):
        obj_text(NetDocument("points", (2, 2, 2), [[0.0, 0.0, 0.0]] * 8))
    with pytest.raises(SchemaError):
        obj_text(NetDocument("planes", (1, 1), [[0, 0, 1, 0]]))


def test_grid_conversion_of_elements():
    g = Grid((2,))
    g[(0,)] = Point((1, 2, 3))
    g[(1,)] = Sphere((0, 0, 0), 2)
    doc = grid_to_doc(g, "spheres")
    assert doc.entries == [[1.0, 2.0, 3.0, 0.0], [0.0, 0.0, 0.0, 2.0]]
    back = doc_to_grid(doc)
    assert back[(0,)] == Point((1, 2, 3)) and back[(1,)] == Sphere((0, 0, 0), 2)


def test_verification_report():
    r = VerificationReport("check x", {(0, 0): 1e-12, (1, 0): 3e-10}, 1e-9)
    assert r.passed and r.max == 3e-10 and r.worst() == (1, 0)
    assert "check x: PASS" in r.to_text()
    d = json.loads(r.to_json())
    assert d["passed"] and d["count"] == 2
    bad = VerificationReport("check x", {(0, 0): 1e-6}, 1e-9)
    assert not bad.passed and "worst cell: (0, 0)" in bad.to_text()
    assert VerificationReport("empty", {}, 1e-9).passed
