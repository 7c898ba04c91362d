"""Problem files: one JSON document with ``algebras``, ``actions``, ``maps``
and ``tasks``.

Rationals are integers or strings such as ``"-3/2"``; floats are rejected.
Basis indices are 1-based.  Structure constants are declared once per
unordered pair and mirrored on load::

    {"algebras": {"K4": {"dim": 4,
                         "binary":  [{"i": 1, "j": 2, "out": {"4": "2"}}],
                         "ternary": [{"i": 1, "j": 2, "k": 1, "out": {"4": "1"}}]}},
     "actions":  {"ad": {"source": "K4", "target": "K4", "kind": "adjoint"}},
     "maps":     {"H0": {"domain": "K4", "codomain": "K4", "action": "ad",
                         "matrix": [["0","0","0","0"], ...]}},
     "tasks":    {"axioms": {"kind": "validate-algebra", "algebra": "K4"}}}

An action gives either ``"kind": "adjoint" | "trivial"`` or explicit
``"rho"`` (m matrices) and ``"mu"`` (m x m matrices).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra import LYAlgebra, StructureError, ly_algebra
from .linalg import q, qarray, qzeros
from .representation import InvalidAlgebraError, Representation, adjoint_rep, trivial_rep

__all__ = [
    "ProblemError",
    "ParseError",
    "UnresolvedReferenceError",
    "InvariantError",
    "ActionSpec",
    "MapSpec",
    "Task",
    "ProblemFile",
    "TASK_KINDS",
    "parse_problem",
    "parse_text",
    "load_document",
    "to_document",
    "serialize",
    "bundled_path",
    "bundled_text",
]

TASK_KINDS = (
    "validate-algebra", "validate-rep", "validate-action", "check-crossed", "graph-check",
    "rb-check", "semidirect", "induced-rep", "cohomology", "dsquared-check",
    "nijenhuis-check", "linear-deform-check", "formal-deform-check", "equivalence-check",
    "obstruction", "extend",
)

# task parameters that name other objects in the file
_REFS = {
    "algebra": "algebras",
    "action": "actions",
    "crossed": "maps",
    "operator": "maps",
    "perturbation": "maps",
    "series": "maps",
    "series1": "maps",
    "series2": "maps",
    "phi": "maps",
    "vphi": "maps",
}


class ProblemError(Exception):
    """Anything wrong with a problem file; the CLI maps it to exit code 2."""


class ParseError(ProblemError):
    pass


class UnresolvedReferenceError(ProblemError):
    pass


class InvariantError(ProblemError):
    pass


@dataclass(frozen=True, eq=False)
class ActionSpec:
    source: str
    target: str
    rep: Representation
    kind: str | None = None

    def __eq__(self, other):
        if not isinstance(other, ActionSpec):
            return NotImplemented
        return (self.source, self.target, self.kind) == (other.source, other.target, other.kind) \
            and self.rep == other.rep

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class MapSpec:
    domain: str
    codomain: str
    matrix: np.ndarray
    action: str | None = None

    def __eq__(self, other):
        if not isinstance(other, MapSpec):
            return NotImplemented
        return ((self.domain, self.codomain, self.action) == (other.domain, other.codomain, other.action)
                and self.matrix.shape == other.matrix.shape
                and bool(np.all(self.matrix == other.matrix)))

    __hash__ = object.__hash__


@dataclass(frozen=True)
class Task:
    kind: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ProblemFile:
    algebras: dict
    actions: dict
    maps: dict
    tasks: dict


# -- reading ---------------------------------------------------------------

def _fail(where: str, msg: str):
    raise ParseError(f"{where}: {msg}")


def _obj(value, where) -> dict:
    if not isinstance(value, dict):
        _fail(where, f"expected an object, got {type(value).__name__}")
    return value


def _list(value, where) -> list:
    if not isinstance(value, list):
        _fail(where, f"expected an array, got {type(value).__name__}")
    return value


def _int(value, where, lo=None, hi=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(where, f"expected an integer, got {value!r}")
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        _fail(where, f"{value} out of range [{lo}, {hi}]")
    return value


def _rat(value, where):
    if isinstance(value, float):
        _fail(where, f"float {value!r} not allowed; write rationals as strings like \"1/3\"")
    try:
        return q(value)
    except (TypeError, ValueError, ZeroDivisionError):
        _fail(where, f"not a rational: {value!r}")


def _matrix(value, rows: int, cols: int, where) -> np.ndarray:
    value = _list(value, where)
    if len(value) != rows:
        _fail(where, f"expected {rows} rows, got {len(value)}")
    out = qzeros((rows, cols))
    for r, row in enumerate(value):
        row = _list(row, f"{where}[{r}]")
        if len(row) != cols:
            _fail(f"{where}[{r}]", f"expected {cols} entries, got {len(row)}")
        for c, x in enumerate(row):
            out[r, c] = _rat(x, f"{where}[{r}][{c}]")
    return out


def _brackets(entries, dim, keys, where) -> dict:
    table: dict = {}
    for e, entry in enumerate(_list(entries, where)):
        here = f"{where}[{e}]"
        entry = _obj(entry, here)
        unknown = set(entry) - set(keys) - {"out"}
        if unknown:
            _fail(here, f"unknown field(s) {sorted(unknown)}")
        idx = tuple(_int(entry.get(k), f"{here}.{k}", 1, dim) for k in keys)
        out = table.setdefault(idx, {})
        for key, val in _obj(entry.get("out", {}), f"{here}.out").items():
            try:
                k = int(key)
            except ValueError:
                _fail(f"{here}.out", f"basis index {key!r} is not an integer")
            _int(k, f"{here}.out.{key}", 1, dim)
            val = _rat(val, f"{here}.out.{key}")
            if k in out and out[k] != val:
                _fail(f"{here}.out.{key}", "conflicts with an earlier declaration")
            out[k] = val
    return table


def _algebra(name, raw) -> LYAlgebra:
    where = f"algebras.{name}"
    raw = _obj(raw, where)
    unknown = set(raw) - {"dim", "binary", "ternary"}
    if unknown:
        _fail(where, f"unknown field(s) {sorted(unknown)}")
    dim = _int(raw.get("dim"), f"{where}.dim", 0)
    binary = _brackets(raw.get("binary", []), dim, ("i", "j"), f"{where}.binary")
    ternary = _brackets(raw.get("ternary", []), dim, ("i", "j", "k"), f"{where}.ternary")
    try:
        return ly_algebra(dim, binary, ternary, name=name)
    except StructureError as exc:
        raise InvariantError(f"{where}: {exc}") from None


def _resolve(name, table, kind, where):
    if not isinstance(name, str):
        _fail(where, f"expected a name, got {name!r}")
    if name not in table:
        raise UnresolvedReferenceError(f"{where}: unknown {kind} {name!r}")
    return table[name]


def _action(name, raw, algebras) -> ActionSpec:
    where = f"actions.{name}"
    raw = _obj(raw, where)
    unknown = set(raw) - {"source", "target", "kind", "rho", "mu"}
    if unknown:
        _fail(where, f"unknown field(s) {sorted(unknown)}")
    g = _resolve(raw.get("source"), algebras, "algebra", f"{where}.source")
    h = _resolve(raw.get("target"), algebras, "algebra", f"{where}.target")
    m, n = g.dim, h.dim
    kind = raw.get("kind")
    if kind is not None:
        if "rho" in raw or "mu" in raw:
            _fail(where, "give either a kind or explicit rho/mu, not both")
        if kind == "adjoint":
            if g != h:
                raise InvariantError(f"{where}: the adjoint action needs source == target")
            try:
                rep = adjoint_rep(g)
            except InvalidAlgebraError as exc:
                raise InvariantError(f"{where}: {exc}") from None
        elif kind == "trivial":
            rep = trivial_rep(g, n)
        else:
            _fail(f"{where}.kind", f"unknown action kind {kind!r} (adjoint, trivial)")
        return ActionSpec(raw["source"], raw["target"], rep, kind)
    rho_raw = _list(raw.get("rho", []), f"{where}.rho")
    mu_raw = _list(raw.get("mu", []), f"{where}.mu")
    if len(rho_raw) != m:
        _fail(f"{where}.rho", f"expected {m} matrices, got {len(rho_raw)}")
    if len(mu_raw) != m:
        _fail(f"{where}.mu", f"expected {m} rows of matrices, got {len(mu_raw)}")
    rho = qzeros((m, n, n))
    mu = qzeros((m, m, n, n))
    for i, mat in enumerate(rho_raw):
        rho[i] = _matrix(mat, n, n, f"{where}.rho[{i}]")
    for i, row in enumerate(mu_raw):
        row = _list(row, f"{where}.mu[{i}]")
        if len(row) != m:
            _fail(f"{where}.mu[{i}]", f"expected {m} matrices, got {len(row)}")
        for j, mat in enumerate(row):
            mu[i, j] = _matrix(mat, n, n, f"{where}.mu[{i}][{j}]")
    return ActionSpec(raw["source"], raw["target"], Representation(g, rho, mu))


def _map(name, raw, algebras, actions) -> MapSpec:
    where = f"maps.{name}"
    raw = _obj(raw, where)
    unknown = set(raw) - {"domain", "codomain", "matrix", "action"}
    if unknown:
        _fail(where, f"unknown field(s) {sorted(unknown)}")
    action = raw.get("action")
    if action is not None:
        spec = _resolve(action, actions, "action", f"{where}.action")
        dom = raw.get("domain", spec.source)
        cod = raw.get("codomain", spec.target)
        if (dom, cod) != (spec.source, spec.target):
            raise InvariantError(f"{where}: domain/codomain do not match action {action!r}")
    else:
        dom, cod = raw.get("domain"), raw.get("codomain")
    g = _resolve(dom, algebras, "algebra", f"{where}.domain")
    h = _resolve(cod, algebras, "algebra", f"{where}.codomain")
    mat = _matrix(raw.get("matrix"), h.dim, g.dim, f"{where}.matrix")
    return MapSpec(dom, cod, mat, action)


def _task(name, raw, tables) -> Task:
    where = f"tasks.{name}"
    raw = dict(_obj(raw, where))
    kind = raw.pop("kind", None)
    if kind not in TASK_KINDS:
        _fail(f"{where}.kind", f"unknown task kind {kind!r}")
    for key, value in raw.items():
        table = _REFS.get(key)
        if table is None:
            continue
        names = value if isinstance(value, list) else [value]
        for i, ref in enumerate(names):
            _resolve(ref, tables[table], table[:-1], f"{where}.{key}" + (f"[{i}]" if isinstance(value, list) else ""))
    return Task(kind, raw)


def load_document(doc: dict) -> ProblemFile:
    doc = _obj(doc, "<root>")
    unknown = set(doc) - {"algebras", "actions", "maps", "tasks"}
    if unknown:
        _fail("<root>", f"unknown top-level key(s) {sorted(unknown)}")
    algebras = {k: _algebra(k, v) for k, v in _obj(doc.get("algebras", {}), "algebras").items()}
    actions = {k: _action(k, v, algebras) for k, v in _obj(doc.get("actions", {}), "actions").items()}
    maps = {k: _map(k, v, algebras, actions) for k, v in _obj(doc.get("maps", {}), "maps").items()}
    tables = {"algebras": algebras, "actions": actions, "maps": maps}
    tasks = {k: _task(k, v, tables) for k, v in _obj(doc.get("tasks", {}), "tasks").items()}
    return ProblemFile(algebras, actions, maps, tasks)


def parse_text(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load_document(doc)


def parse_problem(path) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_text(text)
    except ProblemError as exc:
        raise type(exc)(f"{path}: {exc}") from None


# -- writing ---------------------------------------------------------------

def _s(x) -> str:
    return str(q(x))


def _rows(mat) -> list:
    return [[_s(x) for x in row] for row in qarray(mat)]


def _algebra_doc(alg: LYAlgebra) -> dict:
    m = alg.dim
    binary, ternary = [], []
    for i in range(m):
        for j in range(i + 1, m):
            out = {str(k + 1): _s(v) for k, v in enumerate(alg.binary[i, j]) if v != 0}
            if out:
                binary.append({"i": i + 1, "j": j + 1, "out": out})
            for k in range(m):
                out = {str(l + 1): _s(v) for l, v in enumerate(alg.ternary[i, j, k]) if v != 0}
                if out:
                    ternary.append({"i": i + 1, "j": j + 1, "k": k + 1, "out": out})
    return {"dim": m, "binary": binary, "ternary": ternary}


def _action_doc(spec: ActionSpec) -> dict:
    doc = {"source": spec.source, "target": spec.target}
    if spec.kind is not None:
        doc["kind"] = spec.kind
        return doc
    doc["rho"] = [_rows(r) for r in spec.rep.rho]
    doc["mu"] = [[_rows(x) for x in row] for row in spec.rep.mu]
    return doc


def _map_doc(spec: MapSpec) -> dict:
    doc = {"domain": spec.domain, "codomain": spec.codomain}
    if spec.action is not None:
        doc["action"] = spec.action
    doc["matrix"] = _rows(spec.matrix)
    return doc


def to_document(pf: ProblemFile) -> dict:
    return {
        "algebras": {k: _algebra_doc(v) for k, v in pf.algebras.items()},
        "actions": {k: _action_doc(v) for k, v in pf.actions.items()},
        "maps": {k: _map_doc(v) for k, v in pf.maps.items()},
        "tasks": {k: {"kind": t.kind, **t.params} for k, t in pf.tasks.items()},
    }


def _pretty(value, depth: int = 0, width: int = 88) -> str:
    flat = json.dumps(value)
    pad = "  " * depth
    if len(pad) + len(flat) <= width or not isinstance(value, (dict, list)) or not value:
        return flat
    inner = "  " * (depth + 1)
    if isinstance(value, dict):
        items = [f"{inner}{json.dumps(k)}: {_pretty(v, depth + 1, width)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    items = [inner + _pretty(v, depth + 1, width) for v in value]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def serialize(pf: ProblemFile) -> str:
    return _pretty(to_document(pf)) + "\n"


def bundled_path(name: str = "k4.lyk"):
    return resources.files("lieykit") / "data" / name


def bundled_text(name: str = "k4.lyk") -> str:
    return bundled_path(name).read_text()
