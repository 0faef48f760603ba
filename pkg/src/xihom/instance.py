"""JSON instance files: a quiver algebra over F_p, named modules and a proper class.

Layout::

    {
      "p": 2,
      "quiver": {"vertices": 1,
                 "arrows": [{"src": 0, "tgt": 0, "name": "x"}],
                 "relations": [[{"coeff": 1, "path": ["x", "x"]}]],
                 "nilpotency_bound": 2},
      "modules": {"k": {"dim": 1, "action": {"x": [[0]]}, "vertex_blocks": {"0": [[1]]}}},
      "proper_class": "all"            # or {"relative": ["k"]}
    }

Vertices are 0-based.  Matrices are row lists of integers and are reduced mod
p.  A module whose vertex blocks are not coordinate projections is rewritten
in a basis adapted to the blocks, so loaded modules are always graded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path as FsPath

import numpy as np

from . import linalg
from .algebra import Algebra, PresentationError, QuiverPresentation, enumerate_basis
from .modcat import Module, ModuleError
from .propclass import ProperClass

SCHEMA_VERSION = 1

_TOP_KEYS = {"p", "quiver", "modules", "proper_class"}
_QUIVER_KEYS = {"vertices", "arrows", "relations", "nilpotency_bound"}
_ARROW_KEYS = {"src", "tgt", "name"}
_TERM_KEYS = {"coeff", "path"}
_MODULE_KEYS = {"dim", "action", "vertex_blocks"}


class InstanceError(ValueError):
    """Malformed or invalid instance; ``location`` points into the document."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass
class Instance:
    p: int
    presentation: QuiverPresentation
    algebra: Algebra
    modules: dict[str, Module]
    class_choice: str | list[str]
    name: str = ""
    proper_class: ProperClass = field(init=False)

    def __post_init__(self):
        if self.class_choice == "all":
            self.proper_class = ProperClass.all(self.algebra)
        else:
            self.proper_class = ProperClass.relative_to(
                self.algebra, [self.modules[n] for n in self.class_choice],
                "relative(" + ",".join(self.class_choice) + ")")

    def module(self, name: str) -> Module:
        try:
            return self.modules[name]
        except KeyError:
            raise InstanceError("$.modules", f"no module named {name!r}") from None

    @property
    def class_label(self) -> str:
        return "all" if self.class_choice == "all" else self.proper_class.label


def _require(cond: bool, loc: str, msg: str) -> None:
    if not cond:
        raise InstanceError(loc, msg)


def _keys(obj, allowed: set, required: set, loc: str) -> None:
    _require(isinstance(obj, dict), loc, "expected an object")
    extra = sorted(set(obj) - allowed)
    _require(not extra, loc, f"unknown keys {extra}")
    missing = sorted(required - set(obj))
    _require(not missing, loc, f"missing keys {missing}")


def _int(x, loc: str) -> int:
    _require(isinstance(x, int) and not isinstance(x, bool), loc, "expected an integer")
    return x


def _matrix(rows, n: int, p: int, loc: str) -> np.ndarray:
    _require(isinstance(rows, list) and len(rows) == n, loc, f"expected {n} rows")
    for i, r in enumerate(rows):
        _require(isinstance(r, list) and len(r) == n, f"{loc}[{i}]", f"expected {n} entries")
        for j, x in enumerate(r):
            _int(x, f"{loc}[{i}][{j}]")
    return np.array(rows, dtype=np.int64).reshape(n, n) % p


def _parse_quiver(doc, p: int) -> QuiverPresentation:
    loc = "$.quiver"
    _keys(doc, _QUIVER_KEYS, {"vertices", "arrows", "nilpotency_bound"}, loc)
    nv = _int(doc["vertices"], f"{loc}.vertices")
    arrows = []
    _require(isinstance(doc["arrows"], list), f"{loc}.arrows", "expected a list")
    for i, a in enumerate(doc["arrows"]):
        al = f"{loc}.arrows[{i}]"
        _keys(a, _ARROW_KEYS, _ARROW_KEYS, al)
        _require(isinstance(a["name"], str) and a["name"], f"{al}.name", "expected a name")
        arrows.append((_int(a["src"], f"{al}.src"), _int(a["tgt"], f"{al}.tgt"), a["name"]))
    rels = []
    raw = doc.get("relations", [])
    _require(isinstance(raw, list), f"{loc}.relations", "expected a list")
    for i, rel in enumerate(raw):
        rl = f"{loc}.relations[{i}]"
        _require(isinstance(rel, list), rl, "expected a list of terms")
        terms = []
        for j, t in enumerate(rel):
            tl = f"{rl}[{j}]"
            _keys(t, _TERM_KEYS, _TERM_KEYS, tl)
            _require(isinstance(t["path"], list) and all(isinstance(s, str) for s in t["path"]),
                     f"{tl}.path", "expected a list of arrow names")
            terms.append((_int(t["coeff"], f"{tl}.coeff"), tuple(t["path"])))
        rels.append(terms)
    nb = _int(doc["nilpotency_bound"], f"{loc}.nilpotency_bound")
    return QuiverPresentation.build(p, nv, arrows, rels, nb)


def graded_module(alg: Algebra, action: dict, blocks: list[np.ndarray], name: str) -> Module:
    """Module from arbitrary idempotent vertex blocks, rewritten in an adapted basis."""
    p = alg.p
    diag = all(np.array_equal(e, np.diag(np.diag(e))) for e in blocks)
    if diag:
        n = blocks[0].shape[0] if blocks else 0
        grading = np.zeros(n, dtype=np.int64)
        for v, e in enumerate(blocks):
            grading[np.diag(e) == 1] = v
        return Module(alg, grading, action, name=name)
    cols = [linalg.column_basis(e, p) for e in blocks]
    t = np.concatenate(cols, axis=1)
    tinv = linalg.inverse(t, p)
    grading = np.concatenate([np.full(c.shape[1], v, dtype=np.int64) for v, c in enumerate(cols)])
    arrows = {a: tinv @ m @ t % p for a, m in action.items()}
    return Module(alg, grading, arrows, name=name)


def _parse_module(alg: Algebra, name: str, doc, loc: str) -> Module:
    p = alg.p
    _keys(doc, _MODULE_KEYS, {"dim"}, loc)
    n = _int(doc["dim"], f"{loc}.dim")
    _require(n >= 0, f"{loc}.dim", "dimension must be >= 0")
    names = {a.name for a in alg.arrows}
    action = {}
    raw_act = doc.get("action", {})
    _require(isinstance(raw_act, dict), f"{loc}.action", "expected an object")
    for a, rows in raw_act.items():
        _require(a in names, f"{loc}.action", f"unknown arrow {a!r}")
        action[a] = _matrix(rows, n, p, f"{loc}.action.{a}")
    raw_blocks = doc.get("vertex_blocks")
    if raw_blocks is None:
        _require(alg.vertices == 1, f"{loc}", "vertex_blocks required for quivers with several vertices")
        raw_blocks = {"0": linalg.identity(n).tolist()}
    _require(isinstance(raw_blocks, dict), f"{loc}.vertex_blocks", "expected an object")
    blocks = []
    for v in range(alg.vertices):
        key = str(v)
        if key in raw_blocks:
            blocks.append(_matrix(raw_blocks[key], n, p, f"{loc}.vertex_blocks.{key}"))
        else:
            blocks.append(linalg.zeros(n, n))
    extra = sorted(set(raw_blocks) - {str(v) for v in range(alg.vertices)})
    _require(not extra, f"{loc}.vertex_blocks", f"unknown vertices {extra}")
    bl = f"{loc}.vertex_blocks"
    total = linalg.zeros(n, n)
    for v, e in enumerate(blocks):
        _require(np.array_equal(e @ e % p, e), f"{bl}.{v}", "block is not idempotent")
        for w, f in enumerate(blocks):
            if w != v:
                _require(not np.any(e @ f % p), f"{bl}.{v}", f"block not orthogonal to block {w}")
        total = (total + e) % p
    _require(np.array_equal(total, linalg.identity(n)), bl, "blocks do not sum to the identity")
    for arr in alg.arrows:
        x = action.get(arr.name, linalg.zeros(n, n))
        placed = blocks[arr.target] @ x @ blocks[arr.source] % p
        _require(np.array_equal(placed, x), f"{loc}.action.{arr.name}",
                 "arrow does not map its source block into its target block")
    try:
        return graded_module(alg, action, blocks, name)
    except ModuleError as exc:
        raise InstanceError(loc, str(exc)) from None


def parse_instance(doc, name: str = "") -> Instance:
    _keys(doc, _TOP_KEYS, _TOP_KEYS, "$")
    p = _int(doc["p"], "$.p")
    try:
        linalg.check_prime(p)
    except ValueError as exc:
        raise InstanceError("$.p", str(exc)) from None
    _require(p <= 1 << 16, "$.p", "modulus above 2^16 is not supported")
    pres = _parse_quiver(doc["quiver"], p)
    try:
        alg = enumerate_basis(pres)
    except PresentationError as exc:
        raise InstanceError("$.quiver", str(exc)) from None
    _require(isinstance(doc["modules"], dict), "$.modules", "expected an object")
    mods = {}
    for mname, mdoc in doc["modules"].items():
        mods[mname] = _parse_module(alg, mname, mdoc, f"$.modules.{mname}")
    chosen = doc["proper_class"]
    if chosen != "all":
        _keys(chosen, {"relative"}, {"relative"}, "$.proper_class")
        rel = chosen["relative"]
        _require(isinstance(rel, list) and rel, "$.proper_class.relative", "expected a nonempty list")
        for r in rel:
            _require(r in mods, "$.proper_class.relative", f"unknown module {r!r}")
        chosen = list(rel)
    return Instance(p, pres, alg, mods, chosen, name)


def load_instance(path) -> Instance:
    path = FsPath(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceError(str(path), str(exc)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_instance(doc, path.stem)


def module_to_dict(m: Module) -> dict:
    return {
        "dim": m.dim,
        "action": {a.name: m.arrows[a.name].tolist() for a in m.algebra.arrows},
        "vertex_blocks": {str(v): m.vertex_block(v).tolist() for v in range(m.algebra.vertices)},
    }


def instance_to_dict(inst: Instance) -> dict:
    pres = inst.presentation
    return {
        "p": inst.p,
        "quiver": {
            "vertices": pres.vertices,
            "arrows": [{"src": a.source, "tgt": a.target, "name": a.name} for a in pres.arrows],
            "relations": [[{"coeff": c, "path": list(path)} for c, path in rel] for rel in pres.relations],
            "nilpotency_bound": pres.nilpotency_bound,
        },
        "modules": {name: module_to_dict(m) for name, m in inst.modules.items()},
        "proper_class": "all" if inst.class_choice == "all" else {"relative": list(inst.class_choice)},
    }


def _is_matrix(x) -> bool:
    return isinstance(x, list) and all(
        isinstance(r, list) and all(isinstance(v, int) for v in r) for r in x)


def _emit(obj, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{inner}{json.dumps(k)}: {_emit(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and obj and not _is_matrix(obj) and not all(
            isinstance(v, (int, str)) for v in obj):
        return "[\n" + ",\n".join(inner + _emit(v, depth + 1) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj, separators=(", ", ": "))


def dumps_instance(inst: Instance) -> str:
    """Indented JSON with matrices and arrow paths kept on one line."""
    return _emit(instance_to_dict(inst), 0) + "\n"


def catalog_names() -> list[str]:
    root = resources.files("xihom") / "catalog"
    return sorted(f.name[:-5] for f in root.iterdir() if f.name.endswith(".json"))


def load_catalog(name: str) -> Instance:
    root = resources.files("xihom") / "catalog"
    doc = json.loads((root / f"{name}.json").read_text())
    return parse_instance(doc, name)
