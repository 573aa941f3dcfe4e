"""JSON ingestion and report serialization.

Group file schema (format 1):
    {"format": 1, "p": int, "order": int, "table": [[int]], "name": str,
     "factorization": {"B": [[int]], "C": [[int]]}}   # factorization optional

Tables are row-major and 0-based.  The identity need not sit at index 0 in
a file; it is re-indexed to 0 on load.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import AlgebraContext, AugmentedSubalgebra
from .fplin import FpSubspace
from .groups import GroupError, PGroup


class SchemaError(ValueError):
    pass


def _normalize_identity(table: np.ndarray) -> np.ndarray:
    """Re-index so the two-sided identity sits at index 0."""
    n = table.shape[0]
    ident = None
    for e in range(n):
        if np.array_equal(table[e], np.arange(n)) and \
           np.array_equal(table[:, e], np.arange(n)):
            ident = e
            break
    if ident is None:
        raise SchemaError("table has no two-sided identity")
    if ident == 0:
        return table
    perm = [ident] + [x for x in range(n) if x != ident]  # new -> old
    inv = np.empty(n, dtype=np.int64)
    for new, old in enumerate(perm):
        inv[old] = new
    out = np.empty_like(table)
    for a in range(n):
        for b in range(n):
            out[a, b] = inv[table[perm[a], perm[b]]]
    return out


def group_from_dict(data: dict) -> tuple[PGroup, AugmentedSubalgebra | None,
                                         AugmentedSubalgebra | None]:
    for key in ("p", "order", "table"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    p = data["p"]
    order = data["order"]
    table = np.asarray(data["table"], dtype=np.int64)
    if table.shape != (order, order):
        raise SchemaError(
            f"table shape {table.shape} does not match order {order}")
    table = _normalize_identity(table)
    try:
        G = PGroup(p, table, name=str(data.get("name", "")))
    except GroupError as exc:
        raise SchemaError(str(exc)) from exc
    B = C = None
    if "factorization" in data:
        fz = data["factorization"]
        ctx = AlgebraContext(G)
        try:
            B = AugmentedSubalgebra.from_space(
                ctx, FpSubspace(p, order, np.asarray(fz["B"], dtype=np.int64)))
            C = AugmentedSubalgebra.from_space(
                ctx, FpSubspace(p, order, np.asarray(fz["C"], dtype=np.int64)))
        except ValueError as exc:
            raise SchemaError(f"invalid factorization: {exc}") from exc
    return G, B, C


def load_inputs(path) -> tuple[PGroup, AugmentedSubalgebra | None,
                               AugmentedSubalgebra | None]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return group_from_dict(data)


def group_to_dict(G: PGroup, B: FpSubspace | None = None,
                  C: FpSubspace | None = None) -> dict:
    out = {
        "format": 1,
        "p": int(G.p),
        "order": int(G.order),
        "table": [[int(x) for x in row] for row in G.table],
        "name": G.name,
    }
    if B is not None and C is not None:
        out["factorization"] = {"B": B.basis_rows(), "C": C.basis_rows()}
    return out


def group_fingerprint(G: PGroup) -> dict:
    from .groups import abelian_invariants, characteristic_subgroup, \
        quotient_group
    center = characteristic_subgroup(G, "center")
    derived = characteristic_subgroup(G, "derived")
    Ab, _ = quotient_group(G, derived)
    return {
        "name": G.name,
        "p": int(G.p),
        "order": int(G.order),
        "exponent": int(G.exponent()),
        "center_order": int(center.order),
        "abelianization": [int(x) for x in abelian_invariants(Ab)],
    }


def dump_report(body: dict, timing: dict) -> str:
    """Canonical report: deterministic body, timing segregated."""
    envelope = {"body": body, "timing": timing}
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def canonical_body_bytes(body: dict) -> bytes:
    return json.dumps(body, sort_keys=True).encode()
