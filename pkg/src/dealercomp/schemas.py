"""JSON Schemas for the CLI's ``--format json`` output."""

_int = {"type": "integer"}
_num = {"type": "number"}

BREAKDOWN = {
    "type": "object",
    "properties": {
        k: _int
        for k in ("unrestricted", "r1", "r2", "r3", "r4", "r_star", "r2_star", "net")
    },
    "required": ["unrestricted", "r1", "r2", "r3", "r4", "r_star", "r2_star", "net"],
    "additionalProperties": False,
}

_RULES = {"stand": _int, "bust": _int, "max_card": _int}

COUNT = {
    "type": "object",
    "properties": {
        "cards": _int,
        "upcard": _int,
        "target": _int,
        **_RULES,
        "regime": {"enum": ["closed", "general"]},
        "net": _int,
        "breakdown": BREAKDOWN,
        "oracle_count": _int,
        "match": {"type": "boolean"},
    },
    "required": ["cards", "upcard", "target", "stand", "bust", "max_card", "regime", "net"],
    "additionalProperties": False,
}

ENUMERATE = {
    "type": "object",
    "properties": {
        "cards": _int,
        "upcard": _int,
        "target": _int,
        **_RULES,
        "compositions": {"type": "array", "items": {"type": "array", "items": _int}},
    },
    "required": ["cards", "upcard", "target", "compositions"],
    "additionalProperties": False,
}

PROB = {
    "type": "object",
    "properties": {
        "upcard": _int,
        "target": _int,
        **_RULES,
        "method": {"enum": ["closed_form", "exact"]},
        "probability": _num,
    },
    "required": ["upcard", "target", "method", "probability"],
    "additionalProperties": False,
}

OUTCOME_DISTRIBUTION = {
    "type": "object",
    "properties": {
        "final_totals": {"type": "object", "additionalProperties": _num},
        "bust": _num,
        "stderr": {"type": "object", "additionalProperties": _num},
        "trials": _int,
    },
    "required": ["final_totals", "bust"],
    "additionalProperties": False,
}

DIST = {
    "type": "object",
    "properties": {
        "upcard": _int,
        **_RULES,
        "exact": OUTCOME_DISTRIBUTION,
        "monte_carlo": OUTCOME_DISTRIBUTION,
        "seed": _int,
    },
    "required": ["upcard", "exact"],
    "additionalProperties": False,
}

_RECORD = {
    "type": "object",
    "properties": {
        "m": _int, "w": _int, "s": _int, "d": _int, "b": _int, "max_card": _int,
        "regime": {"enum": ["closed", "general"]},
        "formula_net": _int, "oracle_count": _int, "delta": _int,
    },
    "required": ["m", "w", "s", "d", "b", "max_card", "regime", "formula_net",
                 "oracle_count", "delta"],
    "additionalProperties": False,
}

_TALLY = {
    "type": "object",
    "properties": {"agree": _int, "disagree": _int},
    "required": ["agree", "disagree"],
}

VERIFY = {
    "type": "object",
    "properties": {
        "records": {"type": "array", "items": _RECORD},
        "summary": {
            "type": "object",
            "properties": {"closed": _TALLY, "general": _TALLY},
            "required": ["closed", "general"],
        },
    },
    "required": ["records", "summary"],
    "additionalProperties": False,
}

TABLEAU = {
    "type": "object",
    "properties": {
        "parts": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "rows": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["parts", "rows"],
    "additionalProperties": False,
}

BY_COMMAND = {
    "count": COUNT,
    "enumerate": ENUMERATE,
    "prob": PROB,
    "dist": DIST,
    "verify": VERIFY,
    "tableau": TABLEAU,
}
