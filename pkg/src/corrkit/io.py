"""JSON document formats for graphs, algebras, spaces, and morphisms.

Scalars travel as strings of exact rationals ("1", "-2", "3/2") so no
reader ever sees a float.  Loaders raise ParseError when a document is
not readable JSON and ValidationError when it parses but describes an
inconsistent object; writers emit documents the loaders accept, with
keys in a deterministic order.

Vertex keys for labelled graphs are either plain strings or indexed
pairs, written in JSON as a two-element list ["v", 3].  Edge families
follow the closed-form shape of the labelled module: endpoint specs are
{"kind": "const", "vertex": "w1"} or {"kind": "indexed", "base": "v",
"offset": -1}, and the first instance index may sit on the family
record or on an endpoint spec as "from".
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import CommAlgebra, PresentationError
from .correspondences import Correspondence, Morphism
from .errors import ParseError, ValidationError
from .exactlinalg import sort_key
from .graphs import Graph
from .labelled import (CONST, IDX, Edge, EdgeFamily, LabelledGraph,
                       LabelledSpace, build_space)
from .setexpr import EMPTY, SetExpr, atoms as atom_set, tail


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def dump_json(doc, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=False)
        fh.write("\n")


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValidationError(f"scalar {s!r} must be a rational string or integer")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(f"bad rational scalar {s!r}") from exc


def parse_vec(out, where: str) -> dict:
    """An `out` list [[symbol, scalar], ...] (or a symbol->scalar mapping)
    as an exact coefficient dict."""
    vec: dict = {}
    if isinstance(out, dict):
        items = out.items()
    elif isinstance(out, list):
        items = []
        for entry in out:
            if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                raise ValidationError(f"{where}: out entry {entry!r} is not a [symbol, scalar] pair")
            items.append((entry[0], entry[1]))
    else:
        raise ValidationError(f"{where}: expected a list of pairs, got {type(out).__name__}")
    for sym, scalar in items:
        if not isinstance(sym, str):
            raise ValidationError(f"{where}: symbol {sym!r} is not a string")
        c = parse_rational(scalar)
        if c:
            vec[sym] = vec.get(sym, Fraction(0)) + c
    return {k: v for k, v in vec.items() if v}


def vec_json(vec: dict) -> list:
    return [[k, str(Fraction(v))] for k, v in sorted(vec.items(), key=lambda kv: sort_key(kv[0]))]


def _need(doc, key: str, kind, where: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ValidationError(f"{where}: missing key {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise ValidationError(f"{where}: key {key!r} has type {type(val).__name__}")
    return val


# ---------------------------------------------------------------- graphs

def graph_from_json(doc) -> Graph:
    verts = _need(doc, "vertices", list, "graph")
    edges = _need(doc, "edges", list, "graph")
    triples = []
    for e in edges:
        name = _need(e, "name", str, "graph edge")
        triples.append((name, _need(e, "src", str, f"edge {name}"),
                        _need(e, "dst", str, f"edge {name}")))
    g = Graph(verts, triples)
    rep = g.validate()
    if not rep.ok:
        raise ValidationError("graph: " + "; ".join(c.line() for c in rep.failures()))
    return g


def to_graph_json(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"name": e, "src": g.src[e], "dst": g.dst[e]} for e in g.edges],
    }


# -------------------------------------------------------------- algebras

def algebra_from_json(doc) -> CommAlgebra:
    basis = _need(doc, "basis", list, "algebra")
    mult = _need(doc, "mult", list, "algebra")
    table = {}
    for rec in mult:
        l = _need(rec, "l", str, "algebra mult")
        r = _need(rec, "r", str, "algebra mult")
        table[(l, r)] = parse_vec(_need(rec, "out", (list, dict), f"mult ({l},{r})"),
                                  f"mult ({l},{r})")
    name = doc.get("name", "A")
    try:
        return CommAlgebra(name, basis, table)
    except PresentationError as exc:
        raise ValidationError(str(exc)) from exc


def to_algebra_json(alg: CommAlgebra) -> dict:
    mult = []
    for i, a in enumerate(alg.basis):
        for b in alg.basis[i:]:
            prod = alg.basis_product(a, b)
            if prod:
                mult.append({"l": a, "r": b, "out": vec_json(prod)})
    return {"name": alg.name, "basis": list(alg.basis), "mult": mult}


# ------------------------------------------------------- labelled spaces

def vertex_from_json(v, where: str):
    if isinstance(v, str):
        return v
    if isinstance(v, (list, tuple)) and len(v) == 2 and isinstance(v[0], str):
        try:
            return (v[0], int(v[1]))
        except (TypeError, ValueError):
            pass
    raise ValidationError(f"{where}: bad vertex key {v!r}")


def vertex_json(v):
    return list(v) if isinstance(v, tuple) else v


def _endpoint_from_json(spec, where: str) -> tuple:
    if isinstance(spec, str):
        return (CONST, spec)
    if isinstance(spec, (list, tuple)):
        return (CONST, vertex_from_json(spec, where))
    if not isinstance(spec, dict):
        raise ValidationError(f"{where}: bad endpoint spec {spec!r}")
    kind = spec.get("kind", "const")
    if kind in ("const", "vertex"):
        v = spec.get("vertex", spec.get("name"))
        if v is None:
            raise ValidationError(f"{where}: constant endpoint needs a vertex")
        return (CONST, vertex_from_json(v, where))
    if kind == "indexed":
        base = _need(spec, "base", str, where)
        return (IDX, base, int(spec.get("offset", 0)))
    raise ValidationError(f"{where}: unknown endpoint kind {kind!r}")


def _endpoint_json(spec: tuple) -> dict:
    if spec[0] == CONST:
        return {"kind": "const", "vertex": vertex_json(spec[1])}
    return {"kind": "indexed", "base": spec[1], "offset": spec[2]}


def _label_from_json(spec, default, where: str) -> tuple:
    if spec is None:
        return (CONST, default)
    if isinstance(spec, str):
        return (CONST, spec)
    if isinstance(spec, dict) and "base" in spec:
        return (IDX, _need(spec, "base", str, where), int(spec.get("offset", 0)))
    raise ValidationError(f"{where}: bad label spec {spec!r}")


def _seed_from_json(rec, bases, where: str) -> SetExpr:
    if not isinstance(rec, dict):
        raise ValidationError(f"{where}: family-seed record {rec!r} is not an object")
    out = EMPTY
    if "atoms" in rec:
        vals = rec["atoms"]
        if not isinstance(vals, list):
            raise ValidationError(f"{where}: atoms must be a list")
        out = out.union(atom_set(*(vertex_from_json(v, where) for v in vals)))
    if "tail" in rec:
        k = rec["tail"]
        base = rec.get("base")
        if isinstance(k, (list, tuple)) and len(k) == 2:
            base, k = k[0], k[1]
        if base is None:
            if len(bases) != 1:
                raise ValidationError(f"{where}: tail record needs a base (bases: {sorted(bases)})")
            base = next(iter(bases))
        if base not in bases:
            raise ValidationError(f"{where}: unknown tail base {base!r}")
        out = out.union(tail(base, int(k)))
    if out is EMPTY and ("atoms" in rec or "tail" in rec):
        raise ValidationError(f"{where}: empty family seed")
    if "atoms" not in rec and "tail" not in rec:
        raise ValidationError(f"{where}: seed record needs atoms or tail")
    return out


def labelled_graph_from_json(doc):
    """Graph, family seeds, and optional horizon from a space document."""
    vert_entries = _need(doc, "vertices", list, "labelled space")
    named = [vertex_from_json(v, "vertices") for v in vert_entries]
    if any(isinstance(v, tuple) for v in named):
        raise ValidationError("labelled space: the vertices list holds named vertices; "
                              "indexed vertices come from vertex_bases")
    labels = doc.get("labels", {})
    if not isinstance(labels, dict):
        raise ValidationError("labelled space: labels must map edge names to labels")

    edges = []
    for e in doc.get("edges", []):
        if not isinstance(e, dict) or "name" not in e:
            raise ValidationError(f"edge record {e!r} needs a name")
        name = e["name"]
        if not isinstance(name, str):
            name = vertex_from_json(name, "edge name")
        src = vertex_from_json(e["src"], f"edge {name}") if "src" in e else None
        dst = vertex_from_json(e["dst"], f"edge {name}") if "dst" in e else None
        if src is None or dst is None:
            raise ValidationError(f"edge {name}: needs src and dst")
        lab = e.get("label")
        if lab is None:
            lab = labels.get(name if isinstance(name, str) else None, name)
        elif not isinstance(lab, str):
            lab = vertex_from_json(lab, f"edge {name} label")
        edges.append(Edge(name, src, dst, lab))

    families = []
    for rec in doc.get("families", []):
        base = _need(rec, "edge", str, "family")
        where = f"family {base}"
        src = _endpoint_from_json(_need(rec, "src", (dict, str, list), where), where)
        dst = _endpoint_from_json(_need(rec, "dst", (dict, str, list), where), where)
        start = rec.get("from")
        for spec in (rec.get("src"), rec.get("dst")):
            if start is None and isinstance(spec, dict):
                start = spec.get("from")
        start = 1 if start is None else int(start)
        lab = _label_from_json(rec.get("label"), base, where)
        families.append(EdgeFamily(base, start, src, dst, lab))

    bases = set(doc.get("vertex_bases", []))
    for fam in families:
        for spec in (fam.src, fam.dst):
            if spec[0] == IDX:
                bases.add(spec[1])
    for rec in doc.get("B", []):
        if isinstance(rec, dict) and isinstance(rec.get("base"), str):
            bases.add(rec["base"])

    g = LabelledGraph(frozenset(named), frozenset(bases), tuple(edges), tuple(families))
    rep = g.validate()
    if not rep.ok:
        raise ValidationError("labelled space: " + "; ".join(c.line() for c in rep.failures()))

    seeds = tuple(_seed_from_json(rec, bases, "B") for rec in doc.get("B", []))
    horizon = doc.get("horizon")
    if horizon is not None:
        horizon = int(horizon)
    return g, seeds, horizon


def labelled_space_from_json(doc, horizon: int | None = None, budget: int = 10000) -> LabelledSpace:
    g, seeds, doc_horizon = labelled_graph_from_json(doc)
    h = horizon if horizon is not None else (doc_horizon if doc_horizon is not None else 8)
    return build_space(g, generators=seeds, horizon=h, budget=budget)


def to_labelled_json(g: LabelledGraph, seeds=(), horizon=None) -> dict:
    doc: dict = {"vertices": sorted(g.named_vertices, key=sort_key)}
    if g.vertex_bases:
        doc["vertex_bases"] = sorted(g.vertex_bases)
    doc["edges"] = [
        {"name": str(e.name) if isinstance(e.name, str) else list(e.name),
         "src": vertex_json(e.src), "dst": vertex_json(e.dst), "label": _label_json_value(e.label)}
        for e in g.edges
    ]
    if g.families:
        doc["families"] = [
            {"edge": f.base, "from": f.start,
             "src": _endpoint_json(f.src), "dst": _endpoint_json(f.dst),
             "label": (f.label[1] if f.label[0] == CONST
                       else {"base": f.label[1], "offset": f.label[2]})}
            for f in g.families
        ]
    if seeds:
        doc["B"] = [_seed_json(s) for s in seeds]
    if horizon is not None:
        doc["horizon"] = horizon
    return doc


def _label_json_value(lab):
    return list(lab) if isinstance(lab, tuple) else lab


def _seed_json(s: SetExpr) -> dict:
    rec: dict = {}
    atoms_out = [vertex_json(v) for v in sorted(s.atoms, key=sort_key)]
    if atoms_out:
        rec["atoms"] = atoms_out
    if len(s.tails) > 1:
        raise ValidationError(f"seed {s!r} has tails over several bases; one per record")
    for base, k in sorted(s.tails):
        rec["base"] = base
        rec["tail"] = k
    return rec


# -------------------------------------------------------- correspondences

def correspondence_from_json(doc) -> Correspondence:
    name = doc.get("name", "X")
    alg = algebra_from_json(_need(doc, "algebra", dict, f"correspondence {name}"))
    gens = _need(doc, "generators", list, f"correspondence {name}")
    inner = {}
    for rec in doc.get("inner", []):
        g = _need(rec, "left", str, "inner")
        h = _need(rec, "right", str, "inner")
        inner[(g, h)] = parse_vec(_need(rec, "out", (list, dict), f"inner ({g},{h})"),
                                  f"inner ({g},{h})")
    right = {}
    for rec in doc.get("right", []):
        g = _need(rec, "gen", str, "right")
        b = _need(rec, "alg", str, "right")
        right[(g, b)] = parse_vec(_need(rec, "out", (list, dict), f"right ({g},{b})"),
                                  f"right ({g},{b})")
    left = {}
    for rec in doc.get("left", []):
        b = _need(rec, "alg", str, "left")
        g = _need(rec, "gen", str, "left")
        left[(b, g)] = parse_vec(_need(rec, "out", (list, dict), f"left ({b},{g})"),
                                 f"left ({b},{g})")
    try:
        return Correspondence(name, alg, gens, inner, right, left)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def to_correspondence_json(corr: Correspondence) -> dict:
    gens = sorted(corr.gens, key=sort_key)
    basis = sorted(corr.algebra.basis, key=sort_key)
    inner = []
    for i, g in enumerate(gens):
        for h in gens[i:]:
            v = corr.inner_product(corr.gen(g), corr.gen(h))
            if v:
                inner.append({"left": g, "right": h, "out": vec_json(v)})
    right = []
    left = []
    for g in gens:
        for b in basis:
            v = corr.right_action(corr.gen(g), {b: Fraction(1)})
            if v:
                right.append({"gen": g, "alg": b, "out": vec_json(v)})
            w = corr.left_action({b: Fraction(1)}, corr.gen(g))
            if w:
                left.append({"alg": b, "gen": g, "out": vec_json(w)})
    return {"name": corr.name, "algebra": to_algebra_json(corr.algebra),
            "generators": list(corr.gens), "inner": inner, "right": right, "left": left}


def morphism_from_json(doc, src: Correspondence, dst: Correspondence) -> Morphism:
    amap_doc = _need(doc, "algebra_map", dict, "morphism")
    mmap_doc = _need(doc, "module_map", dict, "morphism")
    dst_basis = set(dst.algebra.basis)
    dst_gens = set(dst.gens)
    alg_map = {}
    for b in src.algebra.basis:
        vec = parse_vec(amap_doc.get(b, []), f"algebra_map[{b}]")
        bad = set(vec) - dst_basis
        if bad:
            raise ValidationError(f"algebra_map[{b}]: unknown target symbols {sorted(bad)}")
        alg_map[b] = vec
    for key in amap_doc:
        if key not in src.algebra.basis:
            raise ValidationError(f"algebra_map: {key!r} is not a source basis symbol")
    mod_map = {}
    for g in src.gens:
        vec = parse_vec(mmap_doc.get(g, []), f"module_map[{g}]")
        bad = set(vec) - dst_gens
        if bad:
            raise ValidationError(f"module_map[{g}]: unknown target symbols {sorted(bad)}")
        mod_map[g] = vec
    for key in mmap_doc:
        if key not in src.gens:
            raise ValidationError(f"module_map: {key!r} is not a source generator")
    return Morphism(src, dst, alg_map, mod_map)


def to_morphism_json(m: Morphism) -> dict:
    return {
        "algebra_map": {b: vec_json(v) for b, v in sorted(m.alg_map.items(), key=lambda kv: sort_key(kv[0]))},
        "module_map": {g: vec_json(v) for g, v in sorted(m.mod_map.items(), key=lambda kv: sort_key(kv[0]))},
    }


def corr_check_from_json(doc):
    """A corr-check job: ("single", corr) or ("morphism", morphism)."""
    if not isinstance(doc, dict):
        raise ValidationError("corr-check: document must be an object")
    if "correspondence" in doc:
        return ("single", correspondence_from_json(doc["correspondence"]))
    if {"source", "target", "morphism"} <= set(doc):
        src = correspondence_from_json(doc["source"])
        dst = correspondence_from_json(doc["target"])
        return ("morphism", morphism_from_json(doc["morphism"], src, dst))
    raise ValidationError("corr-check: expected 'correspondence' or "
                          "'source'/'target'/'morphism' keys")


# ----------------------------------------------------------------- reports

def ktheory_json(result) -> dict:
    pres = result.presentation
    return {
        "presentation": {
            "rows": list(pres.row_labels),
            "cols": list(pres.col_labels),
            "matrix": pres.as_lists(),
        },
        "snf_diagonal": list(result.diagonal),
        "K0": result.k0_str(),
        "K1": result.k1_str(),
    }
