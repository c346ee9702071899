"""Gazetteer loading, resolution rules, hierarchy, and distance."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mediawatch.geo.gazetteer import (
    GeoEntity,
    ancestors,
    distance_km,
    expand,
    load_gazetteer,
    resolve,
    tag_geo,
)

from conftest import document


# --- loading -------------------------------------------------------------


def test_fixture_loads_cleanly(gaz):
    assert len(gaz) == 13
    assert gaz.skipped_rows == 0
    assert gaz.missing_parents == 0
    tokyo = gaz.get(2)
    assert tokyo.name == "Tokyo"
    assert "東京" in tokyo.alt_names
    assert tokyo.parent_id == 1


def test_malformed_rows_skipped_and_counted(tmp_path):
    p = tmp_path / "gaz.tsv"
    p.write_text(
        "geo_id\tname\talt_names\tlat\tlon\tfeature\tcountry_code\tpopulation\tparent_id\n"
        "1\tJapan\t\t36.0\t138.0\tcountry\tJP\t100\t\n"
        "2\tBad\t\tnot-a-float\t0\tcity\tJP\t1\t\n"
        "3\t\t\t0\t0\tcity\tJP\t1\t\n"
        "4\tShort\tonly\tfour\tfields\n",
        encoding="utf-8",
    )
    g = load_gazetteer(p)
    assert len(g) == 1
    assert g.skipped_rows == 3


def test_missing_parent_is_unset(tmp_path):
    p = tmp_path / "gaz.tsv"
    p.write_text(
        "1\tTown\t\t0\t0\tcity\tJP\t10\t999\n",
        encoding="utf-8",
    )
    g = load_gazetteer(p)
    assert g.missing_parents == 1
    assert g.get(1).parent_id is None


def test_empty_gazetteer_rejected(tmp_path):
    p = tmp_path / "gaz.tsv"
    p.write_text("# nothing here\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_gazetteer(p)


def test_entity_validation():
    base = dict(geo_id=1, name="X", alt_names=(), lat=0.0, lon=0.0,
                feature="city", country_code="JP", population=0)
    with pytest.raises(ValueError):
        GeoEntity(**{**base, "lat": 91.0})
    with pytest.raises(ValueError):
        GeoEntity(**{**base, "lon": -180.0})
    with pytest.raises(ValueError):
        GeoEntity(**{**base, "feature": "volcano"})


# --- resolution ----------------------------------------------------------

RESOLUTION_CASES = [
    # (surface, publisher_country, expected geo_id, expected method)
    ("Tokyo", "unknown", 2, "unique"),
    ("Tokio", "unknown", 2, "unique"),
    ("東京", "unknown", 2, "unique"),
    ("Japan", "unknown", 1, "unique"),
    ("Nippon", "JP", 1, "unique"),
    ("Shinjuku", "unknown", 3, "unique"),
    ("新宿", "JP", 3, "unique"),
    ("United Kingdom", "unknown", 4, "unique"),
    ("UK", "unknown", 4, "unique"),
    ("Britain", "FR", 4, "unique"),
    ("England", "unknown", 5, "unique"),
    ("London", "GB", 6, "publisher_country"),
    ("London", "gb", 6, "publisher_country"),
    ("London", "CA", 9, "publisher_country"),
    ("London", "unknown", 6, "population"),
    ("London", "", 6, "population"),
    ("London", "JP", 6, "population"),
    ("London Ontario", "unknown", 9, "unique"),
    ("Paris", "FR", 11, "unique"),
    ("Narnia", "unknown", None, "unresolved"),
]


@pytest.mark.parametrize("surface,country,expected,method", RESOLUTION_CASES)
def test_resolution_rules(gaz, surface, country, expected, method):
    m = resolve(surface, country, gaz)
    assert m.resolved == expected
    assert m.method == method


def test_resolution_is_case_insensitive(gaz):
    assert resolve("tokyo", "unknown", gaz).resolved == 2
    assert resolve("LONDON", "CA", gaz).resolved == 9


def test_empty_surface_raises(gaz):
    with pytest.raises(ValueError):
        resolve("", "JP", gaz)


def test_tag_geo_scans_working_text(gaz):
    doc = document(
        "Outbreak near Tokyo",
        "Cases were confirmed in Shinjuku and later in London.",
        country="JP",
    )
    mentions = tag_geo(doc, gaz)
    text = doc.working_text()
    assert [(m.surface, m.resolved) for m in mentions] == [
        ("Tokyo", 2),
        ("Shinjuku", 3),
        ("London", 6),  # publisher JP has no London; population rule picks UK
    ]
    for m in mentions:
        assert text[m.span[0] : m.span[1]] == m.surface


# --- hierarchy -----------------------------------------------------------


def test_expand_includes_all_descendants(gaz):
    assert expand(1, gaz) == {1, 2, 3, 12}
    assert expand(2, gaz) == {2, 3}
    assert expand(3, gaz) == {3}
    assert expand(7, gaz) == {7, 8, 9, 13}


def test_ancestors_chain(gaz):
    assert ancestors(3, gaz) == [2, 1]
    assert ancestors(6, gaz) == [5, 4]
    assert ancestors(1, gaz) == []


def test_expand_unknown_id_raises(gaz):
    with pytest.raises(KeyError):
        expand(999, gaz)
    with pytest.raises(KeyError):
        ancestors(999, gaz)


@given(st.sampled_from(list(range(1, 14))))
def test_expand_and_ancestors_are_consistent(geo_id):
    # every member of expand(x) has x on its ancestor chain (or is x)
    from conftest import FIXTURES

    g = load_gazetteer(FIXTURES / "gazetteer.tsv")
    for member in expand(geo_id, g):
        assert member == geo_id or geo_id in ancestors(member, g)


def test_parent_cycle_detected():
    a = GeoEntity(1, "A", (), 0.0, 0.0, "city", "JP", 1, parent_id=2)
    b = GeoEntity(2, "B", (), 0.0, 0.0, "city", "JP", 1, parent_id=1)
    from mediawatch.geo.gazetteer import Gazetteer

    g = Gazetteer([a, b])
    with pytest.raises(ValueError):
        ancestors(1, g)


# --- distance ------------------------------------------------------------


def test_paris_london_distance(gaz):
    d = distance_km(gaz.get(11), gaz.get(6))
    assert d == pytest.approx(343.556060341, abs=1e-6)


def test_tokyo_yokohama_distance(gaz):
    d = distance_km(gaz.get(2), gaz.get(12))
    assert d == pytest.approx(25.8767515559, abs=1e-6)


def test_london_to_london_distance(gaz):
    d = distance_km(gaz.get(6), gaz.get(9))
    assert d == pytest.approx(5876.31283988, abs=1e-5)


def test_distance_is_symmetric_and_zero_on_self(gaz):
    a, b = gaz.get(2), gaz.get(11)
    assert distance_km(a, b) == distance_km(b, a)
    assert distance_km(a, a) == 0.0


def test_antipodal_distance_is_half_circumference():
    a = GeoEntity(100, "A", (), 0.0, 0.0, "city", "XX", 0)
    b = GeoEntity(101, "B", (), 0.0, 180.0, "city", "XX", 0)
    assert distance_km(a, b) == pytest.approx(math.pi * 6371.0, abs=1e-6)
