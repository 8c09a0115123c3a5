"""JSON schemas for the machine-readable CLI outputs.

These are data only; validation happens in the test suite. The residue
report schema is shared by the residue, dicritical, classify-t2 and
check-t1 commands; the infinity schema covers infinity and corollary.
"""

RESIDUE_FRACTION = {
    "type": "object",
    "properties": {"num": {"type": "string"}, "den": {"type": "string"}},
    "required": ["num", "den"],
    "additionalProperties": False,
}

WITNESS = {
    "type": ["object", "null"],
    "properties": {
        "rho": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        "theta": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
    },
    "required": ["rho", "theta"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "dicritical": {"type": "boolean"},
        "residue": RESIDUE_FRACTION,
        "regenerable": {"type": "boolean"},
        "witness": WITNESS,
        "verdict": {"type": "string"},
        "B_f": {"type": ["array", "null"], "items": {"type": "integer"}},
        "gamma": {"type": ["integer", "null"]},
    },
    "required": ["dicritical", "residue", "regenerable", "witness", "verdict"],
}

TREE_NODE_SCHEMA = {
    "type": "object",
    "properties": {
        "id": {"type": "string"},
        "point": {"type": "string"},
        "steps": {"type": "string"},
        "dicritical": {"type": "boolean"},
        "residue": {"anyOf": [RESIDUE_FRACTION, {"type": "null"}]},
        "children": {"type": "array"},
    },
    "required": ["id", "dicritical", "residue", "children"],
}

TREE_SCHEMA = {
    "type": "object",
    "properties": {
        "f": {"type": "string"},
        "g": {"type": "string"},
        "field": {"type": "string"},
        "root": {"anyOf": [TREE_NODE_SCHEMA, {"type": "null"}]},
    },
    "required": ["f", "g", "field", "root"],
}

INFINITY_SCHEMA = {
    "type": "object",
    "properties": {
        "polynomial": {"type": "string"},
        "field": {"type": "string"},
        "degree": {"type": "integer"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "chart": {"enum": ["X", "Y"]},
                    "point": {"type": "string"},
                    "minpoly": {"type": ["string", "null"]},
                    "field": {"type": "string"},
                    "tree": TREE_SCHEMA,
                },
                "required": ["chart", "point", "field", "tree"],
            },
        },
        "dicritical_divisors": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "chart": {"enum": ["X", "Y"]},
                    "point": {"type": "string"},
                    "id": {"type": "string"},
                    "steps": {"type": "string"},
                    "residue": RESIDUE_FRACTION,
                    "regenerable": {"type": "boolean"},
                    "witness": WITNESS,
                },
                "required": ["chart", "point", "id", "residue", "regenerable"],
            },
        },
    },
    "required": ["polynomial", "field", "degree", "points", "dicritical_divisors"],
}
