"""Chain, simplex and figure documents: exact JSON round-trips.

Rationals serialize as canonical fraction strings, residues as explicit
{"mod", "r"} objects, and nested chain coefficients as embedded term lists.
Loading validates structure term by term (with the failing index in the
diagnostic) and rejects documents whose term list is not in canonical form,
so parse and emit are mutually inverse on valid documents.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .chains import CoordChain, Iv, Pt
from .errors import FlatchainError, ValidationError
from .groups import (ChainCoefficients, GroupDescriptor, Integers, Rationals,
                     Residues)
from .simplices import Simplex, SimplexChain
from .slicing import Figure, FigureInterval
from .tensor import Split, TensorChain

FORMAT = "flatchain/1"


def rat_str(q: Fraction) -> str:
    return str(Fraction(q))


def parse_rat(s) -> Fraction:
    if isinstance(s, str) or isinstance(s, int):
        return Fraction(s)
    raise ValidationError(f"expected a rational string, got {s!r}")


def descriptor_to_obj(g: GroupDescriptor) -> dict:
    if isinstance(g, Integers):
        return {"kind": "integers"}
    if isinstance(g, Residues):
        return {"kind": "residues", "mod": g.m}
    if isinstance(g, Rationals):
        return {"kind": "rationals"}
    if isinstance(g, ChainCoefficients):
        return {"kind": "nested", "n": g.n, "k": g.k,
                "inner": descriptor_to_obj(g.inner)}
    raise ValidationError(f"unknown descriptor {g!r}")


def obj_to_descriptor(obj) -> GroupDescriptor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError("descriptor must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "integers":
        return Integers()
    if kind == "residues":
        return Residues(int(obj["mod"]))
    if kind == "rationals":
        return Rationals()
    if kind == "nested":
        return ChainCoefficients(int(obj["n"]), int(obj["k"]),
                                 obj_to_descriptor(obj["inner"]))
    raise ValidationError(f"unknown descriptor kind {kind!r}")


def coeff_to_obj(group: GroupDescriptor, payload):
    if isinstance(group, Integers):
        return payload
    if isinstance(group, Residues):
        return {"mod": group.m, "r": payload}
    if isinstance(group, Rationals):
        return rat_str(payload)
    if isinstance(group, ChainCoefficients):
        return {"terms": [_term_to_obj(group.inner, cell, val.payload)
                          for cell, val in payload.terms]}
    raise ValidationError(f"unknown descriptor {group!r}")


def obj_to_coeff(group: GroupDescriptor, obj):
    if isinstance(group, Integers):
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise ValidationError(f"integer coefficient expected, got {obj!r}")
        return obj
    if isinstance(group, Residues):
        if not isinstance(obj, dict) or obj.get("mod") != group.m:
            raise ValidationError(f"residue object with mod={group.m} expected")
        return int(obj["r"])
    if isinstance(group, Rationals):
        return parse_rat(obj)
    if isinstance(group, ChainCoefficients):
        items = [_obj_to_term(group.inner, t, group.n, i)
                 for i, t in enumerate(obj["terms"])]
        return CoordChain.build(group.n, group.k, group.inner, items)
    raise ValidationError(f"unknown descriptor {group!r}")


def _factor_to_obj(f):
    if isinstance(f, Pt):
        return {"pt": rat_str(f.q)}
    return {"iv": [rat_str(f.a), rat_str(f.b)]}


def _obj_to_factor(obj, where: str):
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: factor must be an object")
    if "pt" in obj:
        return Pt(parse_rat(obj["pt"]))
    if "iv" in obj:
        a, b = obj["iv"]
        a, b = parse_rat(a), parse_rat(b)
        if not a < b:
            raise ValidationError(f"{where}: interval needs a < b, got [{a},{b}]")
        return Iv(a, b)
    raise ValidationError(f"{where}: factor needs 'pt' or 'iv'")


def _term_to_obj(group, cell, payload) -> dict:
    return {"cell": [_factor_to_obj(f) for f in cell],
            "coeff": coeff_to_obj(group, payload)}


def _obj_to_term(group, obj, n: int, index: int):
    where = f"term {index}"
    if not isinstance(obj, dict) or "cell" not in obj or "coeff" not in obj:
        raise ValidationError(f"{where}: needs 'cell' and 'coeff'")
    cell = obj["cell"]
    if len(cell) != n:
        raise ValidationError(f"{where}: cell has {len(cell)} axes, expected {n}")
    factors = tuple(_obj_to_factor(f, f"{where}, axis {ax}")
                    for ax, f in enumerate(cell))
    return factors, obj_to_coeff(group, obj["coeff"])


def chain_to_doc(c, name: str | None = None) -> dict:
    if isinstance(c, TensorChain):
        doc = chain_to_doc(c.body, name)
        doc["signature"] = {"n": c.body.n,
                            "split": [c.split.n1, c.split.n2],
                            "bidegree": [c.k1, c.k2]}
        return doc
    if isinstance(c, SimplexChain):
        doc = {"format": FORMAT,
               "descriptor": descriptor_to_obj(c.group),
               "signature": {"n": c.n, "k": c.k, "kind": "simplex"},
               "terms": [{"vertices": [[rat_str(x) for x in v] for v in s.vertices],
                          "coeff": coeff_to_obj(c.group, val.payload)}
                         for s, val in c.terms]}
    elif isinstance(c, CoordChain):
        doc = {"format": FORMAT,
               "descriptor": descriptor_to_obj(c.group),
               "signature": {"n": c.n, "k": c.k},
               "terms": [_term_to_obj(c.group, cell, val.payload)
                         for cell, val in c.terms]}
    else:
        raise ValidationError(f"cannot serialize {type(c).__name__}")
    if name:
        doc["metadata"] = {"name": name}
    return doc


def doc_to_chain(doc):
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise ValidationError(f"unknown format {doc.get('format')!r}")
    group = obj_to_descriptor(doc.get("descriptor"))
    sig = doc.get("signature")
    if not isinstance(sig, dict) or "n" not in sig:
        raise ValidationError("signature needs an ambient dimension 'n'")
    n = int(sig["n"])
    terms = doc.get("terms")
    if not isinstance(terms, list):
        raise ValidationError("terms must be an array")

    if sig.get("kind") == "simplex":
        k = int(sig["k"])
        items = []
        for i, t in enumerate(terms):
            verts = tuple(tuple(parse_rat(x) for x in v) for v in t["vertices"])
            try:
                s = Simplex(verts)
            except FlatchainError as e:
                raise ValidationError(f"term {i}: {e}") from e
            if s.n != n or s.k != k:
                raise ValidationError(f"term {i}: simplex signature mismatch")
            items.append((s, obj_to_coeff(group, t["coeff"])))
        return SimplexChain.build(n, k, group, items, check_overlap=False)

    if "split" in sig:
        n1, n2 = (int(v) for v in sig["split"])
        k1, k2 = (int(v) for v in sig["bidegree"])
        items = [_obj_to_term(group, t, n, i) for i, t in enumerate(terms)]
        try:
            body = CoordChain.build(n, k1 + k2, group, items)
        except FlatchainError as e:
            raise ValidationError(str(e)) from e
        _require_canonical(body, items)
        return TensorChain(Split(n1, n2), k1, k2, body)

    k = int(sig["k"])
    items = [_obj_to_term(group, t, n, i) for i, t in enumerate(terms)]
    try:
        chain = CoordChain.build(n, k, group, items)
    except FlatchainError as e:
        raise ValidationError(str(e)) from e
    _require_canonical(chain, items)
    return chain


def _require_canonical(chain: CoordChain, items) -> None:
    canonical = [(cell, val.payload) for cell, val in chain.terms]
    if canonical != [(cell, chain.group.canon(p)) for cell, p in items]:
        raise ValidationError(
            "document is not in canonical form (overlaying or reordering "
            "its terms changes the representation); re-emit it")


def figure_to_obj(fig: Figure) -> dict:
    def interval(f: FigureInterval):
        return {"lo": None if f.lo is None else rat_str(f.lo),
                "hi": None if f.hi is None else rat_str(f.hi),
                "lo_closed": f.lo_closed, "hi_closed": f.hi_closed}

    return {"n": fig.n,
            "boxes": [[interval(f) for f in box] for box in fig.boxes]}


def obj_to_figure(obj) -> Figure:
    boxes = []
    for box in obj["boxes"]:
        boxes.append(tuple(FigureInterval(
            None if f["lo"] is None else parse_rat(f["lo"]),
            None if f["hi"] is None else parse_rat(f["hi"]),
            bool(f["lo_closed"]), bool(f["hi_closed"])) for f in box))
    return Figure(int(obj["n"]), tuple(boxes))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def load_chain(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: invalid JSON ({e})") from e
    except OSError as e:
        raise ValidationError(f"{path}: {e}") from e
    return doc_to_chain(doc)


def save_chain(path: str, chain, name: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(chain_to_doc(chain, name)))
        fh.write("\n")
