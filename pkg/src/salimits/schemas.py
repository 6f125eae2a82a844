"""Versioned JSON schemas for the CLI payloads.

Each schema is a plain dict; ``validate`` pulls in ``jsonschema`` lazily so
the package has no hard dependency on it.
"""

from __future__ import annotations

_PAIR = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

_REGION = {
    "type": "object",
    "required": ["period", "flip", "intervals", "qs", "margins"],
    "properties": {
        "period": {"type": "integer", "minimum": 1},
        "flip": {"type": "boolean"},
        "intervals": {"type": "array", "items": _PAIR, "minItems": 1},
        "qs": {"type": "array", "items": {"type": "number"}},
        "margins": {
            "type": "object",
            "additionalProperties": {"type": "number"},
        },
    },
}

_CYCLE = {
    "type": "object",
    "required": ["period", "points", "multiplier", "stability"],
    "properties": {
        "period": {"type": "integer", "minimum": 1},
        "points": {"type": "array", "items": {"type": "number"}},
        "multiplier": {"type": "number"},
        "stability": {"type": "string"},
    },
}

TOWER_V1 = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema", "family", "mu", "p", "truncated", "nodes"],
    "properties": {
        "schema": {"const": "salimits/tower/1"},
        "family": {"type": "string"},
        "mu": {"type": "number"},
        "p": {"type": "integer", "minimum": 0},
        "truncated": {"type": "boolean"},
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "kind", "attracting_type", "cycle",
                             "region", "bands"],
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "kind": {
                        "enum": ["repelling_cycle", "cantor", "attracting"]
                    },
                    "attracting_type": {
                        "anyOf": [{"enum": [1, 2, 4, 5]}, {"type": "null"}]
                    },
                    "cycle": {"anyOf": [_CYCLE, {"type": "null"}]},
                    "region": {"anyOf": [_REGION, {"type": "null"}]},
                    "bands": {
                        "anyOf": [
                            {"type": "array", "items": _PAIR},
                            {"type": "null"},
                        ]
                    },
                },
            },
        },
    },
}

SALPHA_V1 = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema", "family", "mu", "x", "level", "closed", "pieces"],
    "properties": {
        "schema": {"const": "salimits/salpha/1"},
        "family": {"type": "string"},
        "mu": {"type": "number"},
        "x": {"type": "number"},
        "level": {"type": "integer", "minimum": -1},
        "closed": {"type": "boolean"},
        "pieces": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["lo", "hi", "lo_closed", "hi_closed"],
                "properties": {
                    "lo": {"type": "number"},
                    "hi": {"type": "number"},
                    "lo_closed": {"type": "boolean"},
                    "hi_closed": {"type": "boolean"},
                },
            },
        },
    },
}

CLASSES_V1 = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema", "family", "mu", "n", "eps", "classes"],
    "properties": {
        "schema": {"const": "salimits/classes/1"},
        "family": {"type": "string"},
        "mu": {"type": "number"},
        "n": {"type": "integer", "minimum": 2},
        "eps": {"type": "number"},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "cells", "runs"],
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "cells": {"type": "integer", "minimum": 1},
                    "runs": {"type": "array", "items": _PAIR},
                },
            },
        },
    },
}

ITINERARY_V1 = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema", "family", "mu", "x", "node", "symbols",
                 "itinerary", "matrix", "forbidden"],
    "properties": {
        "schema": {"const": "salimits/itinerary/1"},
        "family": {"type": "string"},
        "mu": {"type": "number"},
        "x": {"type": "number"},
        "node": {"type": "integer", "minimum": 0},
        "symbols": {"type": "string"},
        "itinerary": {"type": "string"},
        "matrix": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
        "forbidden": {"type": "array", "items": {"type": "string"}},
    },
}

SCHEMAS = {
    "salimits/tower/1": TOWER_V1,
    "salimits/salpha/1": SALPHA_V1,
    "salimits/classes/1": CLASSES_V1,
    "salimits/itinerary/1": ITINERARY_V1,
}


def validate(payload: dict) -> None:
    """Check ``payload`` against the schema named in its ``schema`` key."""
    import jsonschema

    name = payload.get("schema")
    if name not in SCHEMAS:
        raise KeyError(f"unknown schema: {name!r}")
    jsonschema.validate(payload, SCHEMAS[name])
