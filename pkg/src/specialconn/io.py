"""JSON file records for algebras, pairs and products.

Record shapes (rationals are strings ``"p"`` or ``"p/q"``):

* Lie algebra: ``{"dim", "basis_names", "brackets": [[i, j, [coeffs]]]}``
  listing nonzero brackets with ``i < j``.  On input a ``(j, i)`` entry is
  accepted when it agrees with antisymmetry.
* symmetric pair: a Lie record plus ``"involution"`` (row-major matrix whose
  column ``j`` is the image of basis vector ``j``).
* product tensor: ``{"dim", "entries": [[i, j, [coeffs]]], "symmetric"}``;
  with ``symmetric`` true only ``i <= j`` is listed and the rest is mirrored.
* nonassociative algebra: ``{"dim", "basis_names", "products": [[i, j, [coeffs]]]}``
  listing every nonzero ``(i, j)``.

:func:`serialize` emits sorted keys and canonical rationals, so
``serialize(parse(serialize(x))) == serialize(x)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import RecordError
from .exact import Mat, format_rational, parse_rational, zero_vec
from .jordan import NonassocAlgebra
from .lie import LieAlgebra
from .pairs import Involution, SymmetricPair, decompose
from .products import ProductTensor

_FIELDS = {
    "lie": {"dim", "basis_names", "brackets"},
    "pair": {"dim", "basis_names", "brackets", "involution"},
    "product": {"dim", "entries", "symmetric"},
    "nonassoc": {"dim", "basis_names", "products"},
}


# ---------------------------------------------------------------------------
# serialization


def _coeffs(v) -> list[str]:
    return [format_rational(x) for x in v]


def _table(entries, n: int, keep) -> list:
    return [[i, j, _coeffs(entries[i][j])] for i in range(n) for j in range(n) if keep(i, j) and any(entries[i][j])]


def to_record(value) -> dict:
    if isinstance(value, SymmetricPair):
        rec = to_record(value.algebra)
        rec["involution"] = [_coeffs(row) for row in value.involution.matrix.tolist()]
        return rec
    if isinstance(value, LieAlgebra):
        return {
            "dim": value.dim,
            "basis_names": list(value.basis_names),
            "brackets": _table(value.structure, value.dim, lambda i, j: i < j),
        }
    if isinstance(value, ProductTensor):
        n = value.dim
        sym = all(value.alpha[i][j] == value.alpha[j][i] for i in range(n) for j in range(i + 1, n))
        keep = (lambda i, j: i <= j) if sym else (lambda i, j: True)
        return {"dim": n, "entries": _table(value.alpha, n, keep), "symmetric": sym}
    if isinstance(value, NonassocAlgebra):
        return {
            "dim": value.dim,
            "basis_names": list(value.basis_names),
            "products": _table(value.product, value.dim, lambda i, j: True),
        }
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _default(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    raise TypeError(f"{type(obj).__name__} is not serializable")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def serialize(value) -> bytes:
    return dumps(to_record(value)).encode()


def write(value, path) -> bytes:
    data = serialize(value)
    Path(path).write_bytes(data)
    return data


# ---------------------------------------------------------------------------
# parsing


def record_kind(rec: dict) -> str:
    if not isinstance(rec, dict):
        raise RecordError("record must be a JSON object", "$")
    if "involution" in rec:
        return "pair"
    if "entries" in rec:
        return "product"
    if "products" in rec:
        return "nonassoc"
    if "brackets" in rec:
        return "lie"
    raise RecordError("cannot tell the record kind (expected brackets, involution, entries or products)", "$")


def _check_fields(rec: dict, kind: str):
    required = _FIELDS[kind] - ({"basis_names", "symmetric"})
    for key in sorted(required):
        if key not in rec:
            raise RecordError(f"missing field {key!r}", "$")
    for key in sorted(rec):
        if key not in _FIELDS[kind]:
            raise RecordError(f"unknown field {key!r}", f"$.{key}")


def _dim(rec: dict) -> int:
    d = rec["dim"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise RecordError("dim must be a natural number", "$.dim")
    return d


def _names(rec: dict, d: int):
    names = rec.get("basis_names")
    if names is None:
        return None
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise RecordError("basis_names must be a list of strings", "$.basis_names")
    if len(names) != d:
        raise RecordError(f"{len(names)} basis names for dim {d}", "$.basis_names")
    return names


def _rational(s, path: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise RecordError(f"rational must be a string, got {s!r}", path)
    try:
        return parse_rational(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise RecordError(f"malformed rational {s!r} ({exc})", path) from None


def _vector(raw, d: int, path: str) -> tuple:
    if not isinstance(raw, list):
        raise RecordError("coefficients must be a list", path)
    if len(raw) != d:
        raise RecordError(f"expected {d} coefficients, got {len(raw)}", path)
    return tuple(_rational(x, f"{path}[{k}]") for k, x in enumerate(raw))


def _entries(raw, d: int, field: str):
    """Yield (i, j, vector, path) from an [[i, j, [coeffs]], ...] list."""
    if not isinstance(raw, list):
        raise RecordError(f"{field} must be a list", f"$.{field}")
    for n, item in enumerate(raw):
        path = f"$.{field}[{n}]"
        if not isinstance(item, list) or len(item) != 3:
            raise RecordError("entry must be [i, j, [coefficients]]", path)
        i, j, coeffs = item
        for idx, val in ((0, i), (1, j)):
            if isinstance(val, bool) or not isinstance(val, int) or not 0 <= val < d:
                raise RecordError(f"index {val!r} out of range [0, {d})", f"{path}[{idx}]")
        yield i, j, _vector(coeffs, d, f"{path}[2]"), path


def _table_from(raw, d: int, field: str, mirror, antisymmetric: bool = False):
    """Dense table with duplicate/consistency checking.

    ``mirror(v)`` gives the implied (j, i) entry, or None for no completion.
    """
    table = [[zero_vec(d) for _ in range(d)] for _ in range(d)]
    source: dict[tuple[int, int], str] = {}
    for i, j, v, path in _entries(raw, d, field):
        implied = [((i, j), v)]
        if antisymmetric and i == j:
            if any(v):
                raise RecordError(f"bracket of basis vector {i} with itself must be zero", path)
            continue
        if mirror is not None and i != j:
            implied.append(((j, i), mirror(v)))
        for key, val in implied:
            if key in source:
                if table[key[0]][key[1]] != val:
                    raise RecordError(f"entry for {key} conflicts with {source[key]}", path)
            else:
                table[key[0]][key[1]] = val
                source[key] = path
    return table


def _neg(v):
    return tuple(-x for x in v)


def from_record(rec: dict):
    kind = record_kind(rec)
    _check_fields(rec, kind)
    d = _dim(rec)
    if kind in ("lie", "pair"):
        names = _names(rec, d)
        table = _table_from(rec["brackets"], d, "brackets", _neg, antisymmetric=True)
        L = LieAlgebra(d, names, table)
        if kind == "lie":
            return L
        raw = rec["involution"]
        if not isinstance(raw, list) or len(raw) != d:
            raise RecordError(f"involution must be a {d}x{d} matrix", "$.involution")
        rows = [_vector(r, d, f"$.involution[{k}]") for k, r in enumerate(raw)]
        return decompose(L, Involution(L, Mat(rows, d)))
    if kind == "product":
        sym = rec.get("symmetric", False)
        if not isinstance(sym, bool):
            raise RecordError("symmetric must be a boolean", "$.symmetric")
        table = _table_from(rec["entries"], d, "entries", (lambda v: v) if sym else None)
        return ProductTensor(d, table)
    names = _names(rec, d)
    table = _table_from(rec["products"], d, "products", None)
    return NonassocAlgebra(d, table, names)


def loads(data: bytes | str):
    try:
        rec = json.loads(data)
    except json.JSONDecodeError as exc:
        raise RecordError(f"invalid JSON ({exc.msg} at line {exc.lineno})", "$") from None
    return from_record(rec)


def parse(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise RecordError(f"cannot read file ({exc.strerror})", str(path)) from None
    return loads(data)
