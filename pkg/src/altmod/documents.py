"""JSON documents for modules and embedding certificates.

Fractions are always strings ("a/b") so nothing passes through floating point.
"""

from __future__ import annotations

import json
from typing import Any

from .ablattice import QZ, FinAbGroup, Morphism
from .altmodule import AlternateModule, InvalidModuleError, standard_symplectic
from .embed import EmbeddingCertificate


class DocumentError(ValueError):
    """Malformed input document; ``location`` names the offending field."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"expected an integer, got {value!r}", where)
    return value


def _fraction(value, where: str) -> QZ:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"expected a fraction string like '1/4', got {value!r}", where)
    if isinstance(value, int):
        return QZ(value, 1)
    if not isinstance(value, str):
        raise DocumentError(f"expected a fraction string, got {value!r}", where)
    try:
        return QZ.parse(value)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"cannot parse fraction {value!r}", where) from None


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"expected a list, got {type(value).__name__}", where)
    return value


def module_from_data(data: Any, where: str = "") -> AlternateModule:
    if not isinstance(data, dict):
        raise DocumentError("expected an object with 'orders' and 'gram'", where or "$")
    for key in ("orders", "gram"):
        if key not in data:
            raise DocumentError(f"missing field '{key}'", where or "$")
    orders = [_int(d, f"{where}orders[{i}]") for i, d in enumerate(_list(data["orders"], f"{where}orders"))]
    rows = _list(data["gram"], f"{where}gram")
    gram = [
        [_fraction(x, f"{where}gram[{i}][{j}]") for j, x in enumerate(_list(row, f"{where}gram[{i}]"))]
        for i, row in enumerate(rows)
    ]
    try:
        group = FinAbGroup(orders)
    except ValueError as exc:
        raise DocumentError(str(exc), f"{where}orders") from None
    return AlternateModule(group, gram)


def parse_module(text: str) -> AlternateModule:
    """Parse and validate a module document.

    Raises DocumentError for malformed JSON or fields, and InvalidModuleError
    (naming the violated invariant) for an inconsistent Gram matrix.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    return module_from_data(data)


def module_to_data(m: AlternateModule) -> dict:
    return {"orders": list(m.orders), "gram": [[str(x) for x in row] for row in m.gram]}


def certificate_to_data(c: EmbeddingCertificate) -> dict:
    return {
        "source": module_to_data(c.source),
        "b_orders": list(c.b_orders),
        "map": [list(row) for row in c.embedding.images],
        "trace": list(c.trace),
    }


def certificate_from_data(data: Any) -> EmbeddingCertificate:
    if not isinstance(data, dict):
        raise DocumentError("expected a certificate object", "$")
    for key in ("source", "b_orders", "map"):
        if key not in data:
            raise DocumentError(f"missing field '{key}'", "$")
    source = module_from_data(data["source"], "source.")
    b_orders = [_int(b, f"b_orders[{i}]") for i, b in enumerate(_list(data["b_orders"], "b_orders"))]
    if any(b < 2 for b in b_orders):
        raise DocumentError("every entry must be >= 2", "b_orders")
    rows = [
        [_int(x, f"map[{k}][{i}]") for i, x in enumerate(_list(row, f"map[{k}]"))]
        for k, row in enumerate(_list(data["map"], "map"))
    ]
    target = standard_symplectic(b_orders).group
    if len(rows) != target.rank or any(len(row) != source.rank for row in rows):
        raise DocumentError(f"map must be {target.rank}x{source.rank} (one column per source generator)", "map")
    trace = _list(data.get("trace", []), "trace")
    return EmbeddingCertificate(source, tuple(b_orders), Morphism(source.group, target, rows), tuple(trace))


def parse_certificate(text: str) -> EmbeddingCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    return certificate_from_data(data)


def _is_flat(value) -> bool:
    return isinstance(value, list) and all(not isinstance(x, (list, dict)) for x in value)


def _write(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, item) in enumerate(value.items()):
            out.append(f"{pad}  {json.dumps(key)}: ")
            _write(item, indent + 1, out)
            out.append(",\n" if k < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, list) and value and not _is_flat(value):
        out.append("[\n")
        for k, item in enumerate(value):
            out.append(pad + "  ")
            _write(item, indent + 1, out)
            out.append(",\n" if k < len(value) - 1 else "\n")
        out.append(pad + "]")
    else:
        out.append(json.dumps(value, separators=(", ", ": ")))


def dumps(data: Any) -> str:
    """Canonical text: two-space indentation, flat lists kept on one line, trailing newline."""
    out: list[str] = []
    _write(data, 0, out)
    return "".join(out) + "\n"


__all__ = [
    "DocumentError",
    "InvalidModuleError",
    "certificate_from_data",
    "certificate_to_data",
    "dumps",
    "module_from_data",
    "module_to_data",
    "parse_certificate",
    "parse_module",
]
