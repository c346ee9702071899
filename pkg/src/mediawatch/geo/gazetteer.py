"""Gazetteer: canonical geographic entities, synonym lookup, hierarchy,
publisher-aware disambiguation, and great-circle distance.

The classic hard case is a shared place name: London, UK versus London,
Ontario. Resolution prefers a unique name match, then the publisher's
country, then the larger population, and records which rule fired so the
choice can be audited later.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from mediawatch.text.matcher import PhraseMatcher

log = logging.getLogger(__name__)

EARTH_RADIUS_KM = 6371.0

FEATURES = ("country", "admin1", "city", "district", "lake", "region")

METHOD_UNIQUE = "unique"
METHOD_PUBLISHER = "publisher_country"
METHOD_POPULATION = "population"
METHOD_UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class GeoEntity:
    geo_id: int
    name: str
    alt_names: tuple[str, ...]
    lat: float
    lon: float
    feature: str
    country_code: str
    population: int
    parent_id: int | None = None

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude out of range: {self.lat}")
        if not -180.0 < self.lon <= 180.0:
            raise ValueError(f"longitude out of range: {self.lon}")
        if self.feature not in FEATURES:
            raise ValueError(f"unknown feature type {self.feature!r}")
        if self.population < 0:
            raise ValueError("population must be non-negative")

    @property
    def names(self) -> tuple[str, ...]:
        return (self.name, *self.alt_names)


@dataclass(frozen=True)
class GeoMention:
    surface: str
    span: tuple[int, int]
    resolved: int | None
    method: str


class Gazetteer:
    """Immutable after load; lookups are read-only and thread-safe."""

    def __init__(self, entities: list[GeoEntity], missing_parents: int = 0, skipped_rows: int = 0):
        self.entities: dict[int, GeoEntity] = {}
        self.name_index: dict[str, list[int]] = {}
        self.children_index: dict[int, list[int]] = {}
        self.missing_parents = missing_parents
        self.skipped_rows = skipped_rows
        for ent in entities:
            if ent.geo_id in self.entities:
                raise ValueError(f"duplicate geo_id {ent.geo_id}")
            self.entities[ent.geo_id] = ent
        for ent in entities:
            for name in ent.names:
                key = name.lower()
                ids = self.name_index.setdefault(key, [])
                if ent.geo_id not in ids:
                    ids.append(ent.geo_id)
            if ent.parent_id is not None:
                self.children_index.setdefault(ent.parent_id, []).append(ent.geo_id)
        self._matcher: PhraseMatcher | None = None

    def __len__(self) -> int:
        return len(self.entities)

    def __contains__(self, geo_id: int) -> bool:
        return geo_id in self.entities

    def get(self, geo_id: int) -> GeoEntity:
        return self.entities[geo_id]

    def candidates(self, surface: str) -> list[GeoEntity]:
        ids = self.name_index.get(surface.lower(), [])
        return [self.entities[i] for i in ids]

    def children(self, geo_id: int) -> list[int]:
        return list(self.children_index.get(geo_id, []))

    def matcher(self) -> PhraseMatcher:
        # built lazily; payload is the lookup key
        if self._matcher is None:
            m = PhraseMatcher()
            for key in self.name_index:
                m.add(key, key)
            self._matcher = m
        return self._matcher


def _parse_row(parts: list[str]) -> GeoEntity:
    if len(parts) != 9:
        raise ValueError(f"expected 9 fields, got {len(parts)}")
    geo_id = int(parts[0])
    name = parts[1].strip()
    if not name:
        raise ValueError("empty name")
    alt_names = tuple(a.strip() for a in parts[2].split("|") if a.strip())
    lat = float(parts[3])
    lon = float(parts[4])
    feature = parts[5].strip()
    country_code = parts[6].strip()
    population = int(parts[7]) if parts[7].strip() else 0
    parent_id = int(parts[8]) if parts[8].strip() else None
    return GeoEntity(
        geo_id=geo_id,
        name=name,
        alt_names=alt_names,
        lat=lat,
        lon=lon,
        feature=feature,
        country_code=country_code,
        population=population,
        parent_id=parent_id,
    )


def load_gazetteer(path: str | Path) -> Gazetteer:
    """Load the TSV gazetteer dump.

    Columns: geo_id, name, alt_names (pipe-separated), lat, lon, feature,
    country_code, population, parent_id. Malformed rows are skipped with a
    logged diagnostic; a parent_id that never appears is unset with a
    warning so the hierarchy stays internally consistent.
    """
    path = Path(path)
    rows: list[GeoEntity] = []
    skipped = 0
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            if lineno == 1 and line.split("\t")[0].strip().lower() == "geo_id":
                continue  # header row
            try:
                rows.append(_parse_row(line.split("\t")))
            except (ValueError, IndexError) as exc:
                skipped += 1
                log.warning("%s:%d: skipping row: %s", path, lineno, exc)
    if not rows:
        raise ValueError(f"gazetteer {path} has no usable rows")

    known = {e.geo_id for e in rows}
    missing = 0
    fixed: list[GeoEntity] = []
    for ent in rows:
        if ent.parent_id is not None and ent.parent_id not in known:
            missing += 1
            log.warning("geo_id %d references missing parent %d", ent.geo_id, ent.parent_id)
            ent = GeoEntity(
                geo_id=ent.geo_id,
                name=ent.name,
                alt_names=ent.alt_names,
                lat=ent.lat,
                lon=ent.lon,
                feature=ent.feature,
                country_code=ent.country_code,
                population=ent.population,
                parent_id=None,
            )
        fixed.append(ent)
    return Gazetteer(fixed, missing_parents=missing, skipped_rows=skipped)


def resolve(
    surface: str,
    publisher_country: str,
    gaz: Gazetteer,
    span: tuple[int, int] = (0, 0),
) -> GeoMention:
    """Disambiguate a place-name surface.

    Rule order: unique candidate; candidate in the publisher's country;
    largest population (ties to the smallest geo_id); otherwise unresolved.
    Total and deterministic.
    """
    if not surface:
        raise ValueError("surface must be non-empty")
    cands = gaz.candidates(surface)
    if not cands:
        return GeoMention(surface, span, None, METHOD_UNRESOLVED)
    if len(cands) == 1:
        return GeoMention(surface, span, cands[0].geo_id, METHOD_UNIQUE)
    pc = publisher_country.upper() if publisher_country else ""
    if pc and pc != "UNKNOWN":
        local = [c for c in cands if c.country_code.upper() == pc]
        if local:
            # several in the same country fall back to size within it
            best = max(local, key=lambda e: (e.population, -e.geo_id))
            return GeoMention(surface, span, best.geo_id, METHOD_PUBLISHER)
    best = max(cands, key=lambda e: (e.population, -e.geo_id))
    return GeoMention(surface, span, best.geo_id, METHOD_POPULATION)


def tag_geo(doc, gaz: Gazetteer) -> list[GeoMention]:
    """Scan working text for gazetteer names; spans index into working_text()."""
    text = doc.working_text()
    country = doc.raw.publisher_country
    out = []
    for match in gaz.matcher().find(text):
        out.append(resolve(match.surface, country, gaz, span=(match.start, match.end)))
    return out


def expand(geo_id: int, gaz: Gazetteer) -> set[int]:
    """The entity and every descendant: a Tokyo query covers its sub-cities."""
    if geo_id not in gaz:
        raise KeyError(f"unknown geo_id {geo_id}")
    out = {geo_id}
    frontier = [geo_id]
    while frontier:
        current = frontier.pop()
        for child in gaz.children(current):
            if child not in out:
                out.add(child)
                frontier.append(child)
    return out


def ancestors(geo_id: int, gaz: Gazetteer) -> list[int]:
    """Parent chain from immediate parent up to the root, in order."""
    if geo_id not in gaz:
        raise KeyError(f"unknown geo_id {geo_id}")
    chain: list[int] = []
    seen = {geo_id}
    current = gaz.get(geo_id).parent_id
    while current is not None:
        if current in seen:
            raise ValueError(f"parent cycle at geo_id {current}")
        if current not in gaz:
            break
        chain.append(current)
        seen.add(current)
        current = gaz.get(current).parent_id
    return chain


def distance_km(a: GeoEntity, b: GeoEntity) -> float:
    """Haversine great-circle distance in kilometres."""
    lat1, lon1 = math.radians(a.lat), math.radians(a.lon)
    lat2, lon2 = math.radians(b.lat), math.radians(b.lon)
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))
