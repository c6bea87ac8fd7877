"""JSON input and output for algebras, bimodules and extensions.

Algebra schema::

    {"dim": n, "basis": [names], "table": [[i, j, k, "p/q"], ...], "unit": [coeffs] | null}

Extension schema: ``ideal``, ``total`` and ``quotient`` are algebra objects
or paths (relative to the extension file), and ``incl``, ``proj``,
``section`` are row-major rational matrices.  A bimodule file carries
``dim`` plus ``left`` entries ``[i, m, m', c]`` and ``right`` entries
``[m, i, m', c]``.

Rationals are integers or strings ``"p"`` / ``"p/q"``; floats are rejected.
Errors name the line and column of the offending token.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    Extension,
    validate_algebra,
    validate_bimodule,
    validate_extension,
)
from .errors import ParseError, ValidationError
from .linalg import SparseMatrix


@dataclass(frozen=True)
class Located:
    value: object
    line: int
    column: int


_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][+-]?\d+)?|true|false|null')
_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def _positions(text: str) -> list[tuple[int, int]]:
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]
    out = []
    li = 0
    for m in _TOKEN.finditer(text):
        pos = m.start()
        while li + 1 < len(line_starts) and line_starts[li + 1] <= pos:
            li += 1
        out.append((li + 1, pos - line_starts[li] + 1))
    return out


def load_located(text: str):
    """Parse JSON, replacing every scalar with a :class:`Located` wrapper.

    Objects become lists of ``(key, value)`` pairs so duplicate keys stay
    visible to the schema checks.
    """
    try:
        raw = json.loads(text, object_pairs_hook=lambda pairs: ("__object__", pairs))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    pos = iter(_positions(text))

    def walk(node):
        if isinstance(node, tuple) and len(node) == 2 and node[0] == "__object__":
            out = []
            for k, v in node[1]:
                line, col = next(pos)
                out.append((Located(k, line, col), walk(v)))
            return dict_like(out)
        if isinstance(node, list):
            return [walk(x) for x in node]
        line, col = next(pos)
        return Located(node, line, col)

    return walk(raw)


class dict_like(list):
    """Object node: ordered (Located key, value) pairs."""

    def get(self, key, default=None):
        for k, v in self:
            if k.value == key:
                return v
        return default

    def keys(self):
        return [k.value for k, _ in self]

    def location(self):
        return (self[0][0].line, self[0][0].column) if self else (None, None)


def _err(msg: str, node) -> ParseError:
    if isinstance(node, Located):
        return ParseError(msg, node.line, node.column)
    if isinstance(node, dict_like):
        return ParseError(msg, *node.location())
    if isinstance(node, list) and node:
        return _err(msg, node[0])
    return ParseError(msg)


def parse_rational(node) -> Fraction:
    if not isinstance(node, Located):
        raise _err("expected a rational number", node)
    v = node.value
    if isinstance(v, bool) or v is None:
        raise _err(f"malformed rational {v!r}", node)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        raise _err(f"malformed rational {v!r}: floats are not accepted, use \"p/q\"", node)
    if isinstance(v, str):
        m = _RATIONAL.match(v)
        if not m or (m.group(2) is not None and int(m.group(2)) == 0):
            raise _err(f"malformed rational {v!r}", node)
        return Fraction(int(m.group(1)), int(m.group(2) or 1))
    raise _err(f"malformed rational {v!r}", node)


def _int(node, what: str, lo: int = 0, hi: int | None = None) -> int:
    if not isinstance(node, Located) or isinstance(node.value, bool) or not isinstance(node.value, int):
        raise _err(f"{what}: expected an integer", node)
    v = node.value
    if v < lo or (hi is not None and v >= hi):
        raise _err(f"{what}: {v} out of range", node)
    return v


def _require(obj, key: str):
    if not isinstance(obj, dict_like):
        raise _err("expected a JSON object", obj)
    v = obj.get(key)
    if v is None:
        raise _err(f"missing field {key!r}", obj)
    return v


def _entries(node, width: int, what: str) -> list:
    if not isinstance(node, list):
        raise _err(f"{what}: expected a list", node)
    for row in node:
        if not isinstance(row, list) or len(row) != width:
            raise _err(f"{what}: each entry needs {width} items", row if row else node)
    return node


def algebra_from_node(node, name: str = "") -> Algebra:
    dim = _int(_require(node, "dim"), "dim")
    basis_node = node.get("basis")
    basis = ()
    if basis_node is not None and not (isinstance(basis_node, Located) and basis_node.value is None):
        if not isinstance(basis_node, list) or len(basis_node) != dim:
            raise _err("basis must list one label per dimension", basis_node)
        basis = tuple(str(b.value) for b in basis_node)
    table: dict = {}
    for row in _entries(_require(node, "table"), 4, "table"):
        i = _int(row[0], "table index", 0, dim)
        j = _int(row[1], "table index", 0, dim)
        k = _int(row[2], "table index", 0, dim)
        c = parse_rational(row[3])
        if (i, j) in table and k in table[(i, j)]:
            raise _err(f"duplicate table entry ({i}, {j}, {k})", row[0])
        table.setdefault((i, j), {})[k] = c
    unit_node = node.get("unit")
    unit = None
    if unit_node is not None and not (isinstance(unit_node, Located) and unit_node.value is None):
        if not isinstance(unit_node, list) or len(unit_node) != dim:
            raise _err("unit must have one coefficient per dimension", unit_node)
        unit = tuple(parse_rational(x) for x in unit_node)
    nm = node.get("name")
    a = Algebra(dim, table, unit, basis, name=str(nm.value) if isinstance(nm, Located) else name)
    rep = validate_algebra(a)
    if not rep:
        raise ValidationError(f"algebra fails validation: {rep.message}")
    return a


def matrix_from_node(node, rows: int, cols: int, what: str) -> SparseMatrix:
    if not isinstance(node, list) or len(node) != rows:
        raise _err(f"{what}: expected {rows} rows", node)
    dense = []
    for r in node:
        if not isinstance(r, list) or len(r) != cols:
            raise _err(f"{what}: expected {cols} columns per row", r if r else node)
        dense.append([parse_rational(x) for x in r])
    return SparseMatrix.from_dense(dense, cols)


def parse_algebra(text: str, name: str = "") -> Algebra:
    return algebra_from_node(load_located(text), name)


def load_algebra(path) -> Algebra:
    p = Path(path)
    return parse_algebra(p.read_text(), name=p.stem)


def parse_bimodule(text: str, a: Algebra) -> Bimodule:
    node = load_located(text)
    dim = _int(_require(node, "dim"), "dim")
    left: dict = {}
    right: dict = {}
    for key, store, ranges in (("left", left, (a.dim, dim)), ("right", right, (dim, a.dim))):
        entries = node.get(key)
        if entries is None:
            continue
        for row in _entries(entries, 4, key):
            x = _int(row[0], key, 0, ranges[0])
            y = _int(row[1], key, 0, ranges[1])
            z = _int(row[2], key, 0, dim)
            store.setdefault((x, y), {})[z] = parse_rational(row[3])
    m = Bimodule(dim, a, left, right, name="M")
    rep = validate_bimodule(m)
    if not rep:
        raise ValidationError(f"bimodule fails validation: {rep.message}")
    return m


def load_bimodule(path, a: Algebra) -> Bimodule:
    return parse_bimodule(Path(path).read_text(), a)


def parse_extension(text: str, base: Path | None = None, name: str = "") -> Extension:
    node = load_located(text)
    algs = {}
    for key in ("ideal", "total", "quotient"):
        sub = _require(node, key)
        if isinstance(sub, Located):
            if not isinstance(sub.value, str):
                raise _err(f"{key}: expected a path or an algebra object", sub)
            path = (base or Path(".")) / sub.value
            try:
                algs[key] = load_algebra(path)
            except OSError as exc:
                raise _err(f"{key}: cannot read {path}: {exc.strerror}", sub) from exc
        else:
            algs[key] = algebra_from_node(sub, key)
    I, E, Q = algs["ideal"], algs["total"], algs["quotient"]
    incl = matrix_from_node(_require(node, "incl"), E.dim, I.dim, "incl")
    proj = matrix_from_node(_require(node, "proj"), Q.dim, E.dim, "proj")
    sec = matrix_from_node(_require(node, "section"), E.dim, Q.dim, "section")
    ext = Extension(I, E, Q, AlgebraMorphism(I, E, incl), AlgebraMorphism(E, Q, proj), sec,
                    name=name)
    rep = validate_extension(ext)
    if not rep:
        raise ValidationError(f"extension fails validation: {rep.message}")
    return ext


def load_extension(path) -> Extension:
    p = Path(path)
    return parse_extension(p.read_text(), p.parent, name=p.stem)


# ---------------------------------------------------------------------------
# output


def rational_str(x: Fraction) -> str:
    return str(x)


def algebra_to_json(a: Algebra) -> dict:
    table = [[i, j, k, rational_str(c)]
             for (i, j), prod in sorted(a.table.items()) for k, c in sorted(prod.items())]
    return {
        "name": a.name,
        "dim": a.dim,
        "basis": list(a.basis),
        "table": table,
        "unit": None if a.unit is None else [rational_str(c) for c in a.unit],
    }


def matrix_to_json(m: SparseMatrix) -> list:
    return [[rational_str(x) for x in row] for row in m.to_dense()]


def extension_to_json(ext: Extension) -> dict:
    return {
        "name": ext.name,
        "ideal": algebra_to_json(ext.ideal),
        "total": algebra_to_json(ext.total),
        "quotient": algebra_to_json(ext.quotient),
        "incl": matrix_to_json(ext.incl.matrix),
        "proj": matrix_to_json(ext.proj.matrix),
        "section": matrix_to_json(ext.section),
    }


def algebras_equal(a: Algebra, b: Algebra) -> bool:
    return (a.dim == b.dim and a.table == b.table and a.unit == b.unit
            and tuple(a.basis) == tuple(b.basis))
