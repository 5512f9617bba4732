"""Serializable claim records and the JSON schemas they follow."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .graph import GeodesicPath

CERTIFICATE_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Certificate",
    "type": "object",
    "required": ["claim", "value", "witness", "verified", "method", "checker_stats"],
    "additionalProperties": False,
    "properties": {
        "claim": {
            "type": "object",
            "required": ["theorem", "params"],
            "additionalProperties": False,
            "properties": {"theorem": {"type": "string"}, "params": {"type": "object"}},
        },
        "value": {"type": "integer", "minimum": 0},
        "witness": {
            "type": "object",
            "required": ["type", "data"],
            "additionalProperties": False,
            "properties": {
                "type": {"enum": ["edge_set", "geodesic_list"]},
                "data": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
        "verified": {"type": "boolean"},
        "method": {"type": "string"},
        "checker_stats": {
            "type": "object",
            "required": ["max_marked", "pairs_swept"],
            "properties": {
                "max_marked": {"type": ["integer", "null"]},
                "pairs_swept": {"type": ["integer", "null"]},
            },
        },
    },
}

REPRO_ROW_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["theorem", "family", "params", "claimed", "computed", "method", "verified", "wall_time"],
    "additionalProperties": False,
    "properties": {
        "theorem": {"type": "string"},
        "family": {"type": "string"},
        "params": {"type": "object"},
        "quantity": {"type": "string"},
        "claimed": {"type": "integer"},
        "computed": {"type": ["integer", "null"]},
        "method": {"type": "string"},
        "verified": {"type": "boolean"},
        "wall_time": {"type": ["number", "null"]},
        "note": {"type": "string"},
    },
}

REPRO_TABLE_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ReproRows",
    "type": "array",
    "items": REPRO_ROW_SCHEMA,
}


@dataclass
class Certificate:
    theorem: str
    params: dict
    value: int
    witness: Any  # frozenset of edges, or a sequence of GeodesicPath
    verified: bool
    method: str
    max_marked: int | None = None
    pairs_swept: int | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def witness_type(self) -> str:
        return "geodesic_list" if self.witness and isinstance(next(iter(self.witness)), GeodesicPath) else "edge_set"

    def to_dict(self) -> dict:
        if self.witness_type == "geodesic_list":
            data = [list(p.vertices) for p in self.witness]
        else:
            data = [list(e) for e in sorted(self.witness)]
        return {
            "claim": {"theorem": self.theorem, "params": dict(self.params)},
            "value": int(self.value),
            "witness": {"type": self.witness_type, "data": data},
            "verified": bool(self.verified),
            "method": self.method,
            "checker_stats": {"max_marked": self.max_marked, "pairs_swept": self.pairs_swept},
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


def witness_from_dict(doc: dict):
    """Rebuild the witness object of a serialized certificate."""
    w = doc["witness"]
    if w["type"] == "geodesic_list":
        return tuple(GeodesicPath(tuple(p)) for p in w["data"])
    return frozenset((min(e), max(e)) for e in w["data"])
