"""Serializable construction records.

A Recipe pins a permutation family, its field, and every parameter needed
to rebuild the exact same value table, so any catalog entry can be
replayed and re-verified bit-for-bit later.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc

from .field import field_from_spec


@dataclass
class Recipe:
    family: str
    field_spec: dict
    k: int
    params: dict
    verified: dict = dc(default_factory=dict)
    inverse_of: str | None = None  # content id (table hash) of the inverted recipe

    def to_dict(self):
        d = {
            "family": self.family,
            "field": self.field_spec,
            "k": self.k,
            "params": self.params,
            "verified": self.verified,
        }
        if self.inverse_of is not None:
            d["inverse_of"] = self.inverse_of
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        for key in ("family", "field", "k", "params"):
            if key not in d:
                raise KeyError(f"recipe is missing {key!r}")
        return cls(d["family"], d["field"], int(d["k"]), d["params"],
                   dict(d.get("verified", {})), d.get("inverse_of"))

    def rebuild_field(self, **kwargs):
        return field_from_spec(self.field_spec, **kwargs)


def table_digest(table):
    """Content hash of a value table; stable because tables are
    deterministic functions of their recipe."""
    return hashlib.sha256(table.values.tobytes()).hexdigest()


def replay(d: dict):
    """Rebuild the table and freshly computed verdicts for a recipe dict.

    Returns (table, verified, extra) where `verified` mirrors the structure
    stored in the recipe and `extra` carries family-specific results.
    The "special" family uses the flat wire format ("sign", "delta", "s",
    "L" at top level); the others nest their parameters under "params".
    """
    from . import construct, special  # local import: builders depend on us

    family = d.get("family")
    if "field" not in d:
        raise KeyError("recipe is missing its field spec")
    fld = field_from_spec(d["field"])
    if family == "switching":
        return construct.replay_switching(fld, Recipe.from_dict(d))
    if family == "quad-trace":
        return construct.replay_quad_trace(fld, Recipe.from_dict(d))
    if family == "trinomial-cpp":
        return construct.replay_trinomial(fld, Recipe.from_dict(d))
    if family == "special":
        return special.replay_special(fld, d)
    if family == "plus-power":
        return special.replay_plus_power(fld, d)
    if family == "cr-spe":
        return special.replay_cr_spe(fld, d)
    raise ValueError(f"unknown recipe family {family!r}")
