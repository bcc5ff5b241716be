"""JSON readers and writers for categories, fiber algebras, polytopes and isotopies.

All rationals are ``[num, den]`` pairs (plain integers and ``"p/q"`` strings
are accepted on input). Novikov scalars use
``{"terms": [[num, den, re, im], ...], "cutoff": [num, den] | "inf"}``; a bare
number is read as a constant. Tables are grouped per class label as
``{"tables": {label: [{"arity": k, "entries": [{"in": [...], "out": vector}]}]}}``.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .fukcat import (CategoryData, HolonomyCharacter, LagrangianLabel,
                     MorphismComponent, PolygonClass)
from .graded import GradedBasis, MultilinearTable
from .potential import DiskClass, DiskData, FiberAlgebra, MCPoint
from .toric import Polytope
from .wallcross import IsotopyReparam, PseudoIsotopy

BUILTINS = ("cp2-toric", "p1xp1-toric", "t3-synthetic", "wallcross-basic", "fukcat-random-spec")


def load_builtin(name: str) -> dict:
    if name not in BUILTINS:
        raise KeyError(f"unknown built-in dataset {name!r}; choose from {', '.join(BUILTINS)}")
    text = resources.files("cyclic_fukaya.data").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def load_document(source: str) -> dict:
    """A built-in dataset name or a path to a JSON file."""
    if source in BUILTINS:
        return load_builtin(source)
    return json.loads(Path(source).read_text())


# -- fiber algebras and pseudo-isotopies ------------------------------------

def _disk_data(cls, obj) -> DiskData:
    rank = int(obj["rank"]) if "rank" in obj else len(obj["classes"][0]["boundary"])
    basis = GradedBasis.torus(rank)
    classes = tuple(DiskClass.from_json(c) for c in obj.get("classes", []))
    tables = {}
    for label, tabs in obj.get("tables", {}).items():
        for t in tabs:
            table = MultilinearTable.from_json(t, (basis,) * int(t["arity"]), basis)
            tables[label, table.arity] = table
    return cls(rank, classes, tables, basis)


def _disk_data_json(data: DiskData) -> dict:
    tables: dict[str, list] = {}
    for (label, _), t in data.sorted_tables():
        tables.setdefault(label, []).append(t.to_json())
    return {"rank": data.rank, "classes": [c.to_json() for c in data.classes], "tables": tables}


def fiber_from_json(obj) -> FiberAlgebra:
    return _disk_data(FiberAlgebra, obj)


def fiber_to_json(alg: FiberAlgebra) -> dict:
    return _disk_data_json(alg)


def isotopy_from_json(obj) -> tuple[PseudoIsotopy, IsotopyReparam]:
    F = _disk_data(PseudoIsotopy, obj)
    r = IsotopyReparam.from_json(obj["reparam"]) if "reparam" in obj else IsotopyReparam.identity(F.rank)
    return F, r


def isotopy_to_json(F: PseudoIsotopy, r: IsotopyReparam) -> dict:
    out = _disk_data_json(F)
    out["reparam"] = r.to_json()
    return out


def points_from_json(obj) -> list[MCPoint]:
    return [MCPoint.from_json(p) for p in obj.get("points", [])]


def gamma_from_json(obj, order: int) -> HolonomyCharacter | None:
    g = obj.get("gamma")
    return None if g is None else HolonomyCharacter.from_json(g, order)


def polytope_from_json(obj) -> Polytope:
    return Polytope.from_json(obj)


# -- categories --------------------------------------------------------------

def category_from_json(obj, strict: bool = True) -> CategoryData:
    n = int(obj["n"])
    order = 2 * n
    objects, el = {}, {}
    for o in obj["objects"]:
        lab = LagrangianLabel(o["name"], int(o.get("h1_rank", 0)), bool(o.get("oriented", True)),
                              int(o.get("ambient_dim", 2)))
        chi = HolonomyCharacter.from_json(o.get("character", [0] * lab.h1_rank), order)
        objects[lab.name] = (lab, chi)
        if "el_system" in o:
            el[lab.name] = HolonomyCharacter.from_json(o["el_system"], order)
    comps = {}
    for c in obj["components"]:
        comps[c["id"]] = MorphismComponent(c["id"], c["source"], c["target"], int(c["dim_c"]),
                                           GradedBasis.from_json(c["basis"]),
                                           int(c.get("s", 0)) % order, c.get("reverse"))
    tables = obj.get("tables", {})
    classes = []
    for c in obj["classes"]:
        cls = PolygonClass(c["label"], int(c["k"]), c["energy"], int(c["maslov"]),
                           tuple(c["components"]))
        in_bases = tuple(comps[x].basis for x in cls.inputs)
        out_basis = comps[comps[cls.c0].reverse].basis if comps[cls.c0].reverse else comps[cls.c0].basis
        t = tables.get(cls.label, {"arity": cls.k, "entries": []})
        classes.append((cls, MultilinearTable.from_json(t, in_bases, out_basis)))
    return CategoryData(n, objects, el, comps, tuple(classes), strict)


def category_to_json(cat: CategoryData) -> dict:
    objs = []
    for name, (lab, chi) in cat.objects.items():
        o = {"name": name, "h1_rank": lab.h1_rank, "oriented": lab.oriented,
             "ambient_dim": lab.ambient_dim, "character": chi.to_json()}
        if name in cat.el_systems:
            o["el_system"] = cat.el_systems[name].to_json()
        objs.append(o)
    comps = [{"id": c.id, "source": c.source, "target": c.target, "dim_c": c.dim_c,
              "basis": c.basis.to_json(), "s": c.s, "reverse": c.reverse}
             for c in cat.components.values()]
    classes = [{"label": cls.label, "k": cls.k, "energy": [cls.energy.numerator, cls.energy.denominator],
                "maslov": cls.maslov, "components": list(cls.components)}
               for cls, _ in cat.classes]
    return {"n": cat.n, "objects": objs, "components": comps, "classes": classes,
            "tables": {cls.label: t.to_json() for cls, t in cat.classes}}
