"""JSON encodings shared by the CLI and the tests.

Field elements use the canonical encodings of their field: ints for F_p,
ints or "a/b" strings for Q, little-endian lists for extensions.
"""

import json

from .coherent import presentation_make
from .fields import FieldDescriptor, field_make
from .poly import Poly
from .torsion import TorsionModule


def load_field(obj):
    return field_make(FieldDescriptor.from_json(obj))


def load_matrix(obj):
    """TorsionModule from {"field": ..., "matrix": [[...], ...]}."""
    F = load_field(obj["field"])
    rows = obj["matrix"]
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    return TorsionModule(F, [[F.decode(x) for x in row] for row in rows])


def dump_matrix(F, A):
    return {"field": F.descriptor.to_json(), "matrix": [[F.encode(x) for x in row] for row in A]}


def dump_module(M):
    return dump_matrix(M.field, M.mat)


def load_poly(F, coeffs):
    return Poly.from_json(F, coeffs)


def load_presentation(obj):
    F = load_field(obj["field"])
    beta = [[Poly.from_json(F, e["p"]) for e in row] for row in obj["beta"]]
    return presentation_make(F, obj["source"], obj["target"], beta)


def dump_witness(w):
    return {
        "field": w.field.descriptor.to_json(),
        "residue_field": w.residue_field.descriptor.to_json(),
        "m": w.ideal_gen.to_json(),
        "unit": [[w.field.encode(x) for x in row] for row in w.unit_matrix],
        "counit": [[w.residue_field.encode(x) for x in row] for row in w.counit_matrix],
        "checks": dict(w.checks),
    }


def dumps(obj):
    """Byte-stable serialization."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
