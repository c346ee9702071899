"""Geographic entities: gazetteer, toponym resolution, hierarchy, distance."""

from mediawatch.geo.gazetteer import (
    EARTH_RADIUS_KM,
    FEATURES,
    METHOD_POPULATION,
    METHOD_PUBLISHER,
    METHOD_UNIQUE,
    METHOD_UNRESOLVED,
    Gazetteer,
    GeoEntity,
    GeoMention,
    ancestors,
    distance_km,
    expand,
    load_gazetteer,
    resolve,
    tag_geo,
)

__all__ = [
    "EARTH_RADIUS_KM",
    "FEATURES",
    "METHOD_POPULATION",
    "METHOD_PUBLISHER",
    "METHOD_UNIQUE",
    "METHOD_UNRESOLVED",
    "Gazetteer",
    "GeoEntity",
    "GeoMention",
    "ancestors",
    "distance_km",
    "expand",
    "load_gazetteer",
    "resolve",
    "tag_geo",
]
