"""Published JSON Schemas for every wire format the service emits.

Tests validate endpoint bodies against these; the dashboard treats them as
the contract.
"""

from __future__ import annotations

_NUMBER_OR_NULL = {"type": ["number", "null"]}
_DATE = {"type": "string", "pattern": r"^\d{4}-\d{2}-\d{2}$"}

METRICS_SCHEMA = {
    "type": "array",
    "items": {"type": "string"},
}

SERIES_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["qubit", "grid", "values"],
        "additionalProperties": False,
        "properties": {
            "qubit": {"type": "integer", "minimum": 0},
            "grid": {"type": "array", "items": _DATE},
            "values": {"type": "array", "items": _NUMBER_OR_NULL},
        },
    },
}

TOPOLOGY_SCHEMA = {
    "type": "object",
    "required": ["num_qubits", "edges", "coords"],
    "additionalProperties": False,
    "properties": {
        "num_qubits": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "coords": {
            "type": ["array", "null"],
            "items": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}

GRID_SCHEMA = {
    "type": "object",
    "required": ["time_edges", "value_edges", "counts", "medians"],
    "properties": {
        "time_edges": {"type": "array", "items": {"type": "number"}, "minItems": 2},
        "value_edges": {"type": "array", "items": {"type": "number"}, "minItems": 2},
        "counts": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
        "medians": {
            "type": "array",
            "items": {"type": "array", "items": _NUMBER_OR_NULL},
        },
        "members": {"type": "array"},
    },
    "additionalProperties": False,
}

HISTOGRAM_SCHEMA = {
    "type": "object",
    "required": ["metric", "qubit", "edges", "counts"],
    "additionalProperties": False,
    "properties": {
        "metric": {"type": "string"},
        "qubit": {"type": "integer", "minimum": 0},
        "edges": {"type": "array", "items": {"type": "number"}, "minItems": 2},
        "counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

CLUSTER_SCHEMA = {
    "type": "object",
    "required": ["k", "metric", "seed", "assignments", "barycenters",
                 "inertia", "iterations", "qubits"],
    "additionalProperties": False,
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "metric": {
            "type": "object",
            "required": ["kind", "band"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["euclidean", "dtw"]},
                "band": {"type": ["integer", "null"], "minimum": 0},
            },
        },
        "seed": {"type": "integer"},
        "assignments": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "barycenters": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
        "inertia": {"type": "number", "minimum": 0},
        "iterations": {"type": "integer", "minimum": 1},
        "qubits": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

MATRIX_SCHEMA = {
    "type": "object",
    "required": ["n", "d", "qubits"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "d": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number", "minimum": 0}},
        },
        "qubits": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

_LEVEL_REPORT = {
    "type": "object",
    "required": ["level", "depth", "single", "multi", "qasm"],
    "additionalProperties": False,
    "properties": {
        "level": {"enum": [1, 2, 3]},
        "depth": {"type": "integer", "minimum": 0},
        "single": {"type": "integer", "minimum": 0},
        "multi": {"type": "integer", "minimum": 0},
        "qasm": {"type": "string"},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["input", "levels", "layout"],
    "additionalProperties": False,
    "properties": {
        "input": {
            "type": "object",
            "required": ["depth", "single", "multi"],
            "additionalProperties": False,
            "properties": {
                "depth": {"type": "integer", "minimum": 0},
                "single": {"type": "integer", "minimum": 0},
                "multi": {"type": "integer", "minimum": 0},
            },
        },
        "levels": {"type": "array", "items": _LEVEL_REPORT, "minItems": 1},
        "layout": {
            "type": ["array", "null"],
            "items": {"type": "integer", "minimum": 0},
        },
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["status", "code", "message"],
    "additionalProperties": False,
    "properties": {
        "status": {"type": "integer", "minimum": 400, "maximum": 599},
        "code": {"type": "string"},
        "message": {"type": "string"},
        "location": {
            "type": "object",
            "required": ["line", "column"],
            "additionalProperties": False,
            "properties": {
                "line": {"type": "integer", "minimum": 1},
                "column": {"type": "integer", "minimum": 1},
            },
        },
    },
}

ENDPOINT_SCHEMAS = {
    "metrics": METRICS_SCHEMA,
    "series": SERIES_SCHEMA,
    "topology": TOPOLOGY_SCHEMA,
    "bin2d": GRID_SCHEMA,
    "histogram": HISTOGRAM_SCHEMA,
    "cluster": CLUSTER_SCHEMA,
    "matrix": MATRIX_SCHEMA,
    "transpile": REPORT_SCHEMA,
    "error": ERROR_SCHEMA,
}
