"""JSON workspace documents and the machine-readable report format.

A workspace is one JSON object::

    {
      "field": "Q",
      "algebra":   {"names": [...], "structure": [[[c_ij^k]]], "unit": [...]},
      "graded":    {"group": {"elements": [...], "table": [[...]]}, "degrees": [...]},
      "coring":    {"kind": "graded" | "trivial" | "sweedler" | "explicit", ...},
      "grouplikes": [{"name": ..., "vector": [...]}],
      "comodules": [{"name": ..., "grouplike": ...}
                    | {"name": ..., "degrees": [...], "action": [...]}
                    | {"name": ..., "action": [...], "coaction": [[...]]}],
      "family":    [names of grouplikes or comodules],
      "subgroup":  [group element labels],
      "probes":    [comodule names] | "graded-simples"
    }

Rationals are written as strings "p/q" (integers are accepted too).  Matrices
are lists of rows.  ``structure[i][j]`` is the coordinate vector of e_i e_j.
Explicit corings give the bimodule actions, the counit (dim A x dim C) and the
comultiplication in the coordinates of C (x)_Q C, pairs (i, j) -> i*dim C + j;
explicit comodules give the coaction in the coordinates of M (x)_Q C.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, Module, Report, check_algebra, check_module
from .coring import (
    Comodule, Coring, Grouplike, check_comodule, check_coring, comodule_from_grouplike, is_grouplike,
    regular_comodule, sweedler_coring, trivial_coring,
)
from .exactlin import Matrix, Subspace, format_rational, rational
from .graded import GradedAlgebra, GradedModule, GradingError, Group, graded_coring, graded_simple_probes, \
    graded_to_comodule


class WorkspaceError(Exception):
    """Input problems, each paired with the location (JSON path or line) where it occurred."""

    def __init__(self, errors: list[tuple[str, str]]):
        self.errors = list(errors)
        super().__init__("; ".join(f"{loc}: {msg}" for loc, msg in self.errors))


class _Errors:
    def __init__(self):
        self.items: list[tuple[str, str]] = []

    def add(self, loc: str, msg: str):
        self.items.append((loc, msg))

    def raise_if_any(self):
        if self.items:
            raise WorkspaceError(self.items)


# -- primitive readers -----------------------------------------------------------

def _rat(x, loc: str, errs: _Errors):
    try:
        return rational(x)
    except (ValueError, TypeError) as exc:
        errs.add(loc, str(exc))
        return Fraction(0)


def _vector(x, n: int | None, loc: str, errs: _Errors):
    if not isinstance(x, list):
        errs.add(loc, "expected a list of rationals")
        return None
    if n is not None and len(x) != n:
        errs.add(loc, f"expected {n} entries, found {len(x)}")
        return None
    return tuple(_rat(v, f"{loc}[{i}]", errs) for i, v in enumerate(x))


def _matrix(x, rows: int | None, cols: int | None, loc: str, errs: _Errors):
    if not isinstance(x, list) or any(not isinstance(r, list) for r in x):
        errs.add(loc, "expected a matrix (list of rows)")
        return None
    if rows is not None and len(x) != rows:
        errs.add(loc, f"expected {rows} rows, found {len(x)}")
        return None
    width = cols if cols is not None else (len(x[0]) if x else 0)
    data = []
    for i, r in enumerate(x):
        if len(r) != width:
            errs.add(f"{loc}[{i}]", f"expected {width} columns, found {len(r)}")
            return None
        data.append([_rat(v, f"{loc}[{i}][{j}]", errs) for j, v in enumerate(r)])
    return Matrix(len(data), width, data)


def _matrices(x, count: int, n: int, loc: str, errs: _Errors):
    if not isinstance(x, list) or len(x) != count:
        errs.add(loc, f"expected {count} matrices (one per basis element of A)")
        return None
    mats = [_matrix(m, n, n, f"{loc}[{k}]", errs) for k, m in enumerate(x)]
    return None if any(m is None for m in mats) else mats


def _names(x, loc: str, errs: _Errors) -> list[str] | None:
    if not isinstance(x, list) or any(not isinstance(s, str) for s in x):
        errs.add(loc, "expected a list of names")
        return None
    return list(x)


def _matrix_rows(m: Matrix) -> list[list[str]]:
    return [[format_rational(v) for v in r] for r in m.row_list()]


def _vector_strings(v) -> list[str]:
    return [format_rational(x) for x in v]


# -- the document ---------------------------------------------------------------

@dataclass
class Workspace:
    raw: dict
    algebra: Algebra | None = None
    graded: GradedAlgebra | None = None
    coring: Coring | None = None
    grouplike_vectors: dict = field(default_factory=dict)
    comodule_specs: dict = field(default_factory=dict)
    family: list | None = None
    subgroup: list | None = None
    probes: object = None

    @property
    def empty(self) -> bool:
        return self.algebra is None

    @property
    def grouplikes(self) -> dict:
        """Name -> vector for the grouplikes the constructions provide and those listed in the file."""
        return dict(self.grouplike_vectors)

    def grouplike(self, name: str, loc: str = "grouplikes") -> Grouplike:
        if name not in self.grouplike_vectors:
            raise WorkspaceError([(loc, f"unknown grouplike {name!r}")])
        v = self.grouplike_vectors[name]
        if not is_grouplike(self.coring, v):
            raise WorkspaceError([(loc, f"{name!r} is not a grouplike element")])
        return Grouplike(self.coring, v, name)

    @property
    def comodules(self) -> dict:
        return {name: self.comodule(name) for name in self.comodule_specs}

    def comodule(self, name: str, loc: str = "comodules") -> Comodule:
        if name in self.comodule_specs:
            spec = self.comodule_specs[name]
            if isinstance(spec, Comodule):
                return spec
            kind, value = spec
            if kind == "grouplike":
                c = comodule_from_grouplike(self.coring, self.grouplike(value, loc))
                c.name = name
                self.comodule_specs[name] = c
                return c
            raise WorkspaceError([(loc, f"cannot build comodule {name!r}")])
        if name in self.grouplike_vectors:
            return comodule_from_grouplike(self.coring, self.grouplike(name, loc))
        raise WorkspaceError([(loc, f"unknown comodule or grouplike {name!r}")])

    def default_family(self) -> list[str]:
        if self.family is not None:
            return list(self.family)
        if self.subgroup is not None:
            return list(self.subgroup)
        return list(self.grouplike_vectors)

    def default_probes(self) -> list[Comodule]:
        spec = self.probes
        if spec is None:
            spec = "graded-simples" if self.graded is not None and getattr(self.coring, "graded", None) else None
        if spec == "graded-simples":
            return [graded_to_comodule(self.coring, m) for m in graded_simple_probes(self.graded)]
        if spec is None:
            return [regular_comodule(self.coring)]
        return [self.comodule(n, "probes") for n in spec]


def parse_workspace(text: str) -> Workspace:
    """Parse and validate a workspace document; raises WorkspaceError with located messages."""
    if not text.strip():
        return Workspace({})
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError([(f"line {exc.lineno}, column {exc.colno}", exc.msg)]) from None
    if not isinstance(raw, dict):
        raise WorkspaceError([("document", "expected a JSON object")])
    return build_workspace(raw)


def build_workspace(raw: dict) -> Workspace:
    errs = _Errors()
    ws = Workspace(raw)
    known = {"field", "algebra", "graded", "coring", "grouplikes", "comodules", "family", "subgroup", "probes"}
    for key in raw:
        if key not in known:
            errs.add(key, "unknown section")
    if not raw or set(raw) == {"field"}:
        if raw and raw.get("field") != "Q":
            errs.add("field", "only the rational field 'Q' is supported")
        errs.raise_if_any()
        return ws
    if raw.get("field") != "Q":
        errs.add("field", "field marker must be 'Q'")
    if "algebra" not in raw:
        errs.add("algebra", "missing section")
        errs.raise_if_any()
    ws.algebra = _read_algebra(raw["algebra"], errs)
    errs.raise_if_any()
    a = ws.algebra
    rep = check_algebra(a)
    if not rep.ok:
        errs.add("algebra", "; ".join(rep.failures))
        errs.raise_if_any()
    if "graded" in raw:
        ws.graded = _read_graded(raw["graded"], a, errs)
        errs.raise_if_any()
    coring_spec = raw.get("coring", {"kind": "graded"} if ws.graded is not None else {"kind": "trivial"})
    ws.coring, provided = _read_coring(coring_spec, ws, errs)
    errs.raise_if_any()
    ws.grouplike_vectors.update(provided)
    for k, g in enumerate(raw.get("grouplikes", [])):
        loc = f"grouplikes[{k}]"
        if not isinstance(g, dict) or not isinstance(g.get("name"), str):
            errs.add(loc, "expected an object with a name")
            continue
        v = _vector(g.get("vector"), ws.coring.dim, f"{loc}.vector", errs)
        if v is not None:
            ws.grouplike_vectors[g["name"]] = v
    errs.raise_if_any()
    for k, spec in enumerate(raw.get("comodules", [])):
        _read_comodule(spec, f"comodules[{k}]", ws, errs)
    errs.raise_if_any()
    names = set(ws.grouplike_vectors) | set(ws.comodule_specs)
    if "family" in raw:
        fam = _names(raw["family"], "family", errs)
        if fam is not None:
            if not fam:
                errs.add("family", "empty family")
            for i, n in enumerate(fam):
                if n not in names:
                    errs.add(f"family[{i}]", f"unknown comodule or grouplike {n!r}")
            ws.family = fam
    if "subgroup" in raw:
        ws.subgroup = _read_subgroup(raw["subgroup"], ws, "subgroup", errs)
    if "probes" in raw:
        p = raw["probes"]
        if p == "graded-simples":
            if ws.graded is None:
                errs.add("probes", "graded-simples needs a graded section")
            ws.probes = p
        else:
            lst = _names(p, "probes", errs)
            if lst is not None:
                for i, n in enumerate(lst):
                    if n not in names:
                        errs.add(f"probes[{i}]", f"unknown comodule {n!r}")
                ws.probes = lst
    errs.raise_if_any()
    return ws


def _read_subgroup(x, ws: Workspace, loc: str, errs: _Errors):
    if ws.graded is None:
        errs.add(loc, "a subgroup selector needs a graded section")
        return None
    labels = _names(x, loc, errs)
    if labels is None:
        return None
    grp = ws.graded.group
    idx = []
    for i, lab in enumerate(labels):
        if lab not in grp.labels:
            errs.add(f"{loc}[{i}]", f"unknown group element {lab!r}")
        else:
            idx.append(grp.index(lab))
    if len(idx) == len(labels) and not grp.is_subgroup(idx):
        errs.add(loc, "the listed elements do not form a subgroup")
    return labels


def _read_algebra(x, errs: _Errors) -> Algebra | None:
    if not isinstance(x, dict):
        errs.add("algebra", "expected an object")
        return None
    st = x.get("structure")
    if not isinstance(st, list) or not st:
        errs.add("algebra.structure", "expected a non-empty dim x dim x dim array")
        return None
    n = len(st)
    table = []
    for i, row in enumerate(st):
        if not isinstance(row, list) or len(row) != n:
            errs.add(f"algebra.structure[{i}]", f"expected {n} entries")
            return None
        table.append([_vector(v, n, f"algebra.structure[{i}][{j}]", errs) for j, v in enumerate(row)])
    unit = _vector(x.get("unit"), n, "algebra.unit", errs)
    names = x.get("names")
    if names is not None:
        names = _names(names, "algebra.names", errs)
        if names is not None and len(names) != n:
            errs.add("algebra.names", f"expected {n} names")
            names = None
    if errs.items or unit is None:
        return None
    return Algebra(table, unit, names)


def _read_group(x, errs: _Errors) -> Group | None:
    if not isinstance(x, dict):
        errs.add("graded.group", "expected an object with elements and table")
        return None
    labels = _names(x.get("elements"), "graded.group.elements", errs)
    tab = x.get("table")
    if labels is None:
        return None
    n = len(labels)
    if not isinstance(tab, list) or len(tab) != n or any(not isinstance(r, list) or len(r) != n for r in tab):
        errs.add("graded.group.table", f"expected a {n} x {n} table of element names")
        return None
    idx = []
    for i, r in enumerate(tab):
        row = []
        for j, v in enumerate(r):
            if v not in labels:
                errs.add(f"graded.group.table[{i}][{j}]", f"unknown group element {v!r}")
                return None
            row.append(labels.index(v))
        idx.append(row)
    try:
        return Group(labels, idx)
    except GradingError as exc:
        errs.add("graded.group.table", str(exc))
        return None


def _read_graded(x, a: Algebra, errs: _Errors) -> GradedAlgebra | None:
    if not isinstance(x, dict):
        errs.add("graded", "expected an object")
        return None
    grp = _read_group(x.get("group"), errs)
    degs = _names(x.get("degrees"), "graded.degrees", errs)
    if grp is None or degs is None:
        return None
    if len(degs) != a.dim:
        errs.add("graded.degrees", f"expected {a.dim} degrees")
        return None
    for i, d in enumerate(degs):
        if d not in grp.labels:
            errs.add(f"graded.degrees[{i}]", f"unknown group element {d!r}")
            return None
    try:
        return GradedAlgebra(a, grp, [grp.index(d) for d in degs])
    except GradingError as exc:
        errs.add("graded", str(exc))
        return None


def _read_coring(x, ws: Workspace, errs: _Errors):
    a = ws.algebra
    if not isinstance(x, dict) or "kind" not in x:
        errs.add("coring", "expected an object with a kind")
        return None, {}
    kind = x["kind"]
    if kind == "graded":
        if ws.graded is None:
            errs.add("coring.kind", "a graded coring needs a graded section")
            return None, {}
        c, gls = graded_coring(ws.graded)
        return c, {g.name: g.vector for g in gls}
    if kind == "trivial":
        c = trivial_coring(a)
        return c, {"1": a.unit}
    if kind == "sweedler":
        vecs = x.get("subalgebra", [a.unit])
        if not isinstance(vecs, list):
            errs.add("coring.subalgebra", "expected a list of vectors")
            return None, {}
        span = [_vector(v, a.dim, f"coring.subalgebra[{i}]", errs) for i, v in enumerate(vecs)]
        if errs.items:
            return None, {}
        b = Subspace.span(span, a.dim)
        if not b.contains(a.unit) or any(not b.contains(a.mul(u, v)) for u in b.vectors() for v in b.vectors()):
            errs.add("coring.subalgebra", "not a unital subalgebra")
            return None, {}
        c = sweedler_coring(a, b)
        return c, {"1(x)1": c.one}
    if kind == "explicit":
        return _read_explicit_coring(x, a, errs), {}
    errs.add("coring.kind", f"unknown coring kind {kind!r}")
    return None, {}


def _read_explicit_coring(x, a: Algebra, errs: _Errors) -> Coring | None:
    n = x.get("dim")
    if not isinstance(n, int) or n <= 0:
        errs.add("coring.dim", "expected a positive integer")
        return None
    left = _matrices(x.get("left"), a.dim, n, "coring.left", errs)
    right = _matrices(x.get("right"), a.dim, n, "coring.right", errs)
    comult = _matrix(x.get("comult"), n * n, n, "coring.comult", errs)
    counit = _matrix(x.get("counit"), a.dim, n, "coring.counit", errs)
    if errs.items:
        return None
    bim = Module(n, left_ring=a, left=left, right_ring=a, right=right, name=x.get("name", "C"))
    rep = check_module(bim)
    if not rep.ok:
        errs.add("coring", "; ".join(rep.failures))
        return None
    from .algebra import tensor_over
    sq = tensor_over(bim, a, bim)
    return Coring(a, bim, sq.projection @ comult, counit, name=x.get("name", "C"), square=sq)


def _read_comodule(x, loc: str, ws: Workspace, errs: _Errors):
    if not isinstance(x, dict) or not isinstance(x.get("name"), str):
        errs.add(loc, "expected an object with a name")
        return
    name = x["name"]
    if name in ws.comodule_specs:
        errs.add(f"{loc}.name", f"duplicate comodule name {name!r}")
        return
    a, c = ws.algebra, ws.coring
    if "grouplike" in x:
        if x["grouplike"] not in ws.grouplike_vectors:
            errs.add(f"{loc}.grouplike", f"unknown grouplike {x['grouplike']!r}")
            return
        ws.comodule_specs[name] = ("grouplike", x["grouplike"])
        return
    action = x.get("action")
    if not isinstance(action, list) or not action or not isinstance(action[0], list):
        errs.add(f"{loc}.action", "expected one matrix per basis element of A")
        return
    dim = len(action[0])
    mats = _matrices(action, a.dim, dim, f"{loc}.action", errs)
    if mats is None:
        return
    mod = Module(dim, right_ring=a, right=mats, name=name)
    rep = check_module(mod)
    if not rep.ok:
        errs.add(f"{loc}.action", "; ".join(rep.failures))
        return
    if "degrees" in x:
        if ws.graded is None or not getattr(c, "graded", None):
            errs.add(f"{loc}.degrees", "graded comodules need the graded coring")
            return
        degs = _names(x["degrees"], f"{loc}.degrees", errs)
        if degs is None:
            return
        grp = ws.graded.group
        if len(degs) != dim or any(d not in grp.labels for d in degs):
            errs.add(f"{loc}.degrees", f"expected {dim} group elements")
            return
        try:
            gm = GradedModule(ws.graded, mod, [grp.index(d) for d in degs], name=name)
        except GradingError as exc:
            errs.add(f"{loc}.degrees", str(exc))
            return
        ws.comodule_specs[name] = graded_to_comodule(c, gm)
        return
    co = _matrix(x.get("coaction"), dim * c.dim, dim, f"{loc}.coaction", errs)
    if co is None:
        return
    from .algebra import tensor_over
    t = tensor_over(mod, a, c.module)
    ws.comodule_specs[name] = Comodule(c, mod, t.projection @ co, name=name)


# -- checks -----------------------------------------------------------------------

def check_workspace(ws: Workspace) -> list[Report]:
    """Axiom reports for everything the document defines."""
    reports = []
    if ws.empty:
        return reports
    reports.append(check_algebra(ws.algebra))
    rep = check_coring(ws.coring)
    rep.subject = "coring axioms"
    reports.append(rep)
    for name, v in ws.grouplike_vectors.items():
        rep = Report(f"grouplike ({name})")
        if not is_grouplike(ws.coring, v):
            rep.fail("Delta(g) != g (x) g or eps(g) != 1")
        reports.append(rep)
    for name in ws.comodule_specs:
        try:
            m = ws.comodule(name)
        except WorkspaceError as exc:
            rep = Report(f"comodule axioms ({name})")
            rep.fail(str(exc))
            reports.append(rep)
            continue
        reports.append(check_comodule(ws.coring, m))
    return reports


# -- exporting constructions -------------------------------------------------------

def algebra_document(a: Algebra) -> dict:
    return {
        "names": list(a.names),
        "structure": [[_vector_strings(v) for v in row] for row in a.table],
        "unit": _vector_strings(a.unit),
    }


def coring_document(c: Coring) -> dict:
    """An explicit coring section; the comultiplication is lifted to C (x)_Q C."""
    return {
        "kind": "explicit",
        "name": c.name,
        "dim": c.dim,
        "left": [_matrix_rows(m) for m in c.module.left],
        "right": [_matrix_rows(m) for m in c.module.right],
        "comult": _matrix_rows(c.comult_lift),
        "counit": _matrix_rows(c.counit),
    }


def export_document(c: Coring, grouplikes: dict | None = None) -> dict:
    doc = {"field": "Q", "algebra": algebra_document(c.ring), "coring": coring_document(c)}
    if grouplikes:
        doc["grouplikes"] = [{"name": n, "vector": _vector_strings(v)} for n, v in grouplikes.items()]
    return doc


# -- machine-readable reports -----------------------------------------------------

_REPORT_TYPES: dict[str, type] = {}


def register_report(cls):
    _REPORT_TYPES[cls.__name__] = cls
    return cls


def encode(obj):
    """JSON-ready form of reports, matrices and plain data."""
    if isinstance(obj, Matrix):
        return {"__matrix__": [obj.rows, obj.cols], "data": _matrix_rows(obj)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {"__report__": type(obj).__name__}
        for f in dataclasses.fields(obj):
            out[f.name] = encode(getattr(obj, f.name))
        return out
    if isinstance(obj, Fraction):
        return {"__rational__": format_rational(obj)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return obj


def decode(data):
    """Inverse of :func:`encode` for registered report types."""
    if isinstance(data, dict):
        if "__matrix__" in data:
            rows, cols = data["__matrix__"]
            return Matrix(rows, cols, [[rational(v) for v in r] for r in data["data"]])
        if "__rational__" in data:
            return rational(data["__rational__"])
        if "__report__" in data:
            cls = _REPORT_TYPES.get(data["__report__"])
            if cls is None:
                raise ValueError(f"unknown report type {data['__report__']!r}")
            kwargs = {k: decode(v) for k, v in data.items() if k != "__report__"}
            return cls(**kwargs)
        return {k: decode(v) for k, v in data.items()}
    if isinstance(data, list):
        return [decode(v) for v in data]
    return data


def dumps(obj) -> str:
    return json.dumps(encode(obj), indent=2)


def loads(text: str):
    return decode(json.loads(text))
