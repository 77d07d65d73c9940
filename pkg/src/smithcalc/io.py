"""JSON encoding of every value type.

``dumps`` produces canonical text (sorted keys, fixed separators, trailing
newline), so equal values always give identical bytes.  ``decode`` accepts a
parsed JSON document and reconstructs the value, raising
:class:`MalformedInputError` with the path of the offending field.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .conic import ConicCFun, Fan
from .errors import MalformedInputError, SmithcalcError
from .fields import Ring
from .hecke import FiniteGroupAction, HeckeElement
from .roots.characters import InvariantElement
from .roots.datum import RootDatum, root_datum
from .simplicial.action import GComplex
from .simplicial.calculus import CFun
from .simplicial.complex import Complex, SimplicialMap, build_complex
from .tate import TateComplex


def dumps(obj: Any) -> str:
    """Canonical JSON text for a value or an already encoded document."""
    doc = obj if isinstance(obj, (dict, list, str, int, bool)) or obj is None else encode(obj)
    return json.dumps(_plain(doc), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e.strerror}") from None
    return loads(text)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.astype(int).tolist()
    if isinstance(x, np.integer):
        return int(x)
    return x


# ---------------------------------------------------------------------------
# small helpers


def _need(doc, key, where):
    if not isinstance(doc, dict):
        raise MalformedInputError(f"{where}: expected an object")
    if key not in doc:
        raise MalformedInputError(f"{where}: missing field {key!r}")
    return doc[key]


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedInputError(f"{where}: expected an integer, got {x!r}")
    return x


def _ring(doc, where):
    try:
        return Ring.parse(doc.get("ring", "Z"))
    except MalformedInputError as e:
        raise MalformedInputError(f"{where}.ring: {e}") from None


def _key(s) -> str:
    return ",".join(map(str, s))


def _vertex_lookup(c: Complex) -> dict:
    return {str(v): v for v in c.vertices}


def _parse_simplex(text, lookup, c: Complex, where):
    if not isinstance(text, str):
        raise MalformedInputError(f"{where}: simplex keys are strings")
    try:
        s = tuple(sorted(lookup[t.strip()] for t in text.split(",")))
    except KeyError:
        raise MalformedInputError(f"{where}: {text!r} is not a simplex of the complex") from None
    if s not in c:
        raise MalformedInputError(f"{where}: {text!r} is not a simplex of the complex")
    return s


def matrix_to_json(m) -> list:
    return np.asarray(m).astype(int).tolist() if np.size(m) else [list() for _ in range(np.shape(m)[0])]


def _matrix(x, where):
    if not isinstance(x, list) or any(not isinstance(r, list) for r in x):
        raise MalformedInputError(f"{where}: expected a list of rows")
    for i, r in enumerate(x):
        for j, v in enumerate(r):
            _int(v, f"{where}[{i}][{j}]")
    if len({len(r) for r in x}) > 1:
        raise MalformedInputError(f"{where}: ragged matrix")
    return x


# ---------------------------------------------------------------------------
# simplicial


def complex_to_json(c: Complex) -> dict:
    for v in c.vertices:
        if isinstance(v, bool) or not isinstance(v, (str, int)) or (isinstance(v, str) and ("," in v or "|" in v)):
            raise MalformedInputError(f"vertex {v!r} has no JSON form; relabel with strings or integers first")
    return {"simplices": [list(s) for s in c.maximal_simplices]}


def complex_from_json(doc, where="complex") -> Complex:
    simp = _need(doc, "simplices", where)
    if not isinstance(simp, list):
        raise MalformedInputError(f"{where}.simplices: expected a list")
    for i, s in enumerate(simp):
        if not isinstance(s, list) or not s:
            raise MalformedInputError(f"{where}.simplices[{i}]: expected a nonempty vertex list")
        for v in s:
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise MalformedInputError(f"{where}.simplices[{i}]: bad vertex {v!r}")
    if len({type(v) for s in simp for v in s}) > 1:
        raise MalformedInputError(f"{where}.simplices: mix of string and integer vertices")
    try:
        return build_complex(simp)
    except MalformedInputError as e:
        raise MalformedInputError(f"{where}.simplices: {e}") from None


def gcomplex_to_json(g: GComplex) -> dict:
    out = complex_to_json(g.base)
    out["generator"] = {str(v): g.generator[v] for v in g.base.vertices}
    out["order"] = g.order
    return out


def gcomplex_from_json(doc, where="gcomplex") -> GComplex:
    c = complex_from_json(doc, where)
    gen = _need(doc, "generator", where)
    order = _int(_need(doc, "order", where), f"{where}.order")
    lookup = _vertex_lookup(c)
    if not isinstance(gen, dict):
        raise MalformedInputError(f"{where}.generator: expected an object")
    perm = {}
    for k, v in gen.items():
        if k not in lookup or str(v) not in lookup:
            raise MalformedInputError(f"{where}.generator: unknown vertex in {k!r} -> {v!r}")
        perm[lookup[k]] = lookup[str(v)]
    try:
        return GComplex(c, perm, order)
    except SmithcalcError as e:
        raise type(e)(f"{where}: {e}") from None


def cfun_to_json(f: CFun) -> dict:
    return {
        "complex": complex_to_json(f.carrier),
        "ring": f.ring.name,
        "coefficients": {_key(s): c for s, c in f.coefficients.items()},
    }


def cfun_from_json(doc, carrier: Complex | None = None, where="function") -> CFun:
    if carrier is None:
        carrier = complex_from_json(_need(doc, "complex", where), f"{where}.complex")
    ring = _ring(doc, where)
    coeffs = _need(doc, "coefficients", where)
    if not isinstance(coeffs, dict):
        raise MalformedInputError(f"{where}.coefficients: expected an object")
    lookup = _vertex_lookup(carrier)
    out = {}
    for k, v in coeffs.items():
        s = _parse_simplex(k, lookup, carrier, f"{where}.coefficients")
        v = _int(v, f"{where}.coefficients[{k!r}]")
        if ring.p and not 0 <= v < ring.p:
            raise MalformedInputError(f"{where}.coefficients[{k!r}]: {v} is not in [0, {ring.p})")
        out[s] = v
    return CFun(carrier, ring, out)


def map_to_json(u: SimplicialMap) -> dict:
    return {
        "source": complex_to_json(u.source),
        "target": complex_to_json(u.target),
        "assignment": {str(v): u.assignment[v] for v in u.source.vertices},
    }


def map_from_json(doc, where="map") -> SimplicialMap:
    src = complex_from_json(_need(doc, "source", where), f"{where}.source")
    tgt = complex_from_json(_need(doc, "target", where), f"{where}.target")
    asg = _need(doc, "assignment", where)
    if not isinstance(asg, dict):
        raise MalformedInputError(f"{where}.assignment: expected an object")
    ls, lt = _vertex_lookup(src), _vertex_lookup(tgt)
    out = {}
    for k, v in asg.items():
        if k not in ls or str(v) not in lt:
            raise MalformedInputError(f"{where}.assignment: unknown vertex in {k!r} -> {v!r}")
        out[ls[k]] = lt[str(v)]
    try:
        return SimplicialMap(src, tgt, out)
    except SmithcalcError as e:
        raise type(e)(f"{where}: {e}") from None


def signs_from_json(doc, c: Complex, where="signs") -> dict:
    raw = _need(doc, "signs", where) if isinstance(doc, dict) and "signs" in doc else doc
    if not isinstance(raw, dict):
        raise MalformedInputError(f"{where}: expected an object vertex -> '+', '0' or '-'")
    lookup = _vertex_lookup(c)
    out = {}
    for k, v in raw.items():
        if k not in lookup:
            raise MalformedInputError(f"{where}: unknown vertex {k!r}")
        if v not in ("+", "0", "-", 1, 0, -1):
            raise MalformedInputError(f"{where}[{k!r}]: bad sign {v!r}")
        out[lookup[k]] = v
    return out


# ---------------------------------------------------------------------------
# hecke


def hecke_to_json(f: HeckeElement) -> dict:
    return {
        "complex": complex_to_json(f.carrier),
        "ring": f.ring.name,
        "entries": {f"{_key(s)}|{_key(t)}": c for (s, t), c in f.kernel.items()},
    }


def hecke_from_json(doc, carrier: Complex | None = None, where="kernel") -> HeckeElement:
    if carrier is None:
        carrier = complex_from_json(_need(doc, "complex", where), f"{where}.complex")
    ring = _ring(doc, where)
    entries = _need(doc, "entries", where)
    if not isinstance(entries, dict):
        raise MalformedInputError(f"{where}.entries: expected an object")
    lookup = _vertex_lookup(carrier)
    out = {}
    for k, v in entries.items():
        parts = k.split("|") if isinstance(k, str) else []
        if len(parts) != 2:
            raise MalformedInputError(f"{where}.entries: key {k!r} is not of the form 'sigma|tau'")
        s = _parse_simplex(parts[0], lookup, carrier, f"{where}.entries")
        t = _parse_simplex(parts[1], lookup, carrier, f"{where}.entries")
        out[(s, t)] = _int(v, f"{where}.entries[{k!r}]")
    return HeckeElement(carrier, ring, out)


def group_action_to_json(act: FiniteGroupAction) -> dict:
    verts = act.carrier.vertices

    def perm(key):
        return {str(v): w for v, w in zip(verts, key)}

    out = complex_to_json(act.carrier)
    out["generators"] = [perm(g) for g in act.generators]
    out["varpi"] = perm(act.varpi)
    out["p"] = act.p
    return out


def group_action_from_json(doc, where="group") -> FiniteGroupAction:
    c = complex_from_json(doc, where)
    lookup = _vertex_lookup(c)

    def perm(x, w):
        if not isinstance(x, dict):
            raise MalformedInputError(f"{w}: expected a vertex permutation object")
        try:
            return {lookup[k]: lookup[str(v)] for k, v in x.items()}
        except KeyError as e:
            raise MalformedInputError(f"{w}: unknown vertex {e.args[0]!r}") from None

    gens = _need(doc, "generators", where)
    if not isinstance(gens, list):
        raise MalformedInputError(f"{where}.generators: expected a list")
    gens = [perm(g, f"{where}.generators[{i}]") for i, g in enumerate(gens)]
    varpi = perm(_need(doc, "varpi", where), f"{where}.varpi")
    p = doc.get("p")
    try:
        return FiniteGroupAction(c, gens, varpi, p=p)
    except SmithcalcError as e:
        raise type(e)(f"{where}: {e}") from None


# ---------------------------------------------------------------------------
# fans


def fan_to_json(fan: Fan) -> dict:
    return {"dim": fan.dim, "cones": [{"rays": [list(r) for r in c]} for c in fan.maximal_cones]}


def fan_from_json(doc, where="fan") -> Fan:
    dim = _int(_need(doc, "dim", where), f"{where}.dim")
    cones = _need(doc, "cones", where)
    if not isinstance(cones, list):
        raise MalformedInputError(f"{where}.cones: expected a list")
    rays = []
    for i, c in enumerate(cones):
        r = _matrix(_need(c, "rays", f"{where}.cones[{i}]"), f"{where}.cones[{i}].rays")
        rays.append(r)
    try:
        return Fan(dim, rays)
    except SmithcalcError as e:
        raise type(e)(f"{where}: {e}") from None


def conic_to_json(f: ConicCFun) -> dict:
    return {
        "fan": fan_to_json(f.fan),
        "ring": f.ring.name,
        "values": [{"rays": [list(r) for r in c], "value": v} for c, v in sorted(f.values.items())],
    }


def conic_from_json(doc, fan: Fan | None = None, where="conic") -> ConicCFun:
    if fan is None:
        fan = fan_from_json(_need(doc, "fan", where), f"{where}.fan")
    ring = _ring(doc, where)
    vals = _need(doc, "values", where)
    if not isinstance(vals, list):
        raise MalformedInputError(f"{where}.values: expected a list of {{rays, value}} entries")
    out = {}
    for i, e in enumerate(vals):
        w = f"{where}.values[{i}]"
        rays = tuple(tuple(r) for r in _matrix(_need(e, "rays", w), f"{w}.rays"))
        if rays and rays not in fan:
            raise MalformedInputError(f"{w}.rays: {[list(r) for r in rays]} is not a cone of the fan")
        out[rays] = _int(_need(e, "value", w), f"{w}.value")
    return ConicCFun(fan, ring, out)


# ---------------------------------------------------------------------------
# roots


def root_datum_to_json(rd: RootDatum) -> dict:
    label = rd.type
    if rd.is_irreducible and rd.isogeny in ("sc", "ad"):
        kind, rank = label[0], int(label[1:])
        try:
            std = root_datum(kind, rank, rd.isogeny)
        except MalformedInputError:
            std = None
        if std == rd:
            return {"type": kind, "rank": rank, "isogeny": rd.isogeny}
    return {
        "isogeny": rd.isogeny,
        "simple_coroots": [list(r) for r in rd.simple_coroots],
        "simple_roots": [list(r) for r in rd.simple_roots],
        "type": label,
    }


def root_datum_from_json(doc, where="datum") -> RootDatum:
    if isinstance(doc, dict) and "simple_roots" in doc:
        sr = _matrix(doc["simple_roots"], f"{where}.simple_roots")
        sc = _matrix(_need(doc, "simple_coroots", where), f"{where}.simple_coroots")
        try:
            return RootDatum(sr, sc, doc.get("isogeny", "custom"))
        except SmithcalcError as e:
            raise type(e)(f"{where}: {e}") from None
    kind = _need(doc, "type", where)
    if not isinstance(kind, str):
        raise MalformedInputError(f"{where}.type: expected a string")
    rank = doc.get("rank")
    if rank is None:
        kind, rank = kind[:1], kind[1:]
        if not rank.isdigit():
            raise MalformedInputError(f"{where}: give 'rank' or a type such as 'E8'")
        rank = int(rank)
    rank = _int(rank, f"{where}.rank")
    try:
        return root_datum(kind, rank, doc.get("isogeny", "sc"), doc.get("basis"))
    except SmithcalcError as e:
        raise type(e)(f"{where}: {e}") from None


def invariant_to_json(e: InvariantElement) -> dict:
    return {
        "datum": root_datum_to_json(e.datum),
        "ring": e.ring.name,
        "weights": {_key(w): c for w, c in sorted(e.weights.items())},
    }


def invariant_from_json(doc, datum: RootDatum | None = None, where="element") -> InvariantElement:
    if datum is None:
        datum = root_datum_from_json(_need(doc, "datum", where), f"{where}.datum")
    ring = _ring(doc, where)
    if "dominant" in doc:
        w = doc["dominant"]
        if not isinstance(w, dict):
            raise MalformedInputError(f"{where}.dominant: expected an object")
        return InvariantElement.from_dominant(datum, ring, {k: _int(v, f"{where}.dominant[{k!r}]")
                                                            for k, v in w.items()})
    w = _need(doc, "weights", where)
    if not isinstance(w, dict):
        raise MalformedInputError(f"{where}.weights: expected an object")
    return InvariantElement(datum, ring, {k: _int(v, f"{where}.weights[{k!r}]") for k, v in w.items()})


# ---------------------------------------------------------------------------
# tate


def tate_to_json(m: TateComplex) -> dict:
    return {
        "p": m.p,
        "degrees": {str(i): {"dim": m.dim(i), "action": matrix_to_json(m.action(i))} for i in m.support},
        "differentials": {str(i): matrix_to_json(d) for i, d in m.differentials.items()},
    }


def tate_from_json(doc, where="tate") -> TateComplex:
    p = _int(_need(doc, "p", where), f"{where}.p")
    degs = _need(doc, "degrees", where)
    if not isinstance(degs, dict):
        raise MalformedInputError(f"{where}.degrees: expected an object keyed by degree")
    degrees = {}
    for k, e in degs.items():
        w = f"{where}.degrees[{k!r}]"
        try:
            i = int(k)
        except ValueError:
            raise MalformedInputError(f"{w}: degree keys are integers") from None
        dim = _int(_need(e, "dim", w), f"{w}.dim")
        act = e.get("action")
        if act is not None:
            _matrix(act, f"{w}.action")
        degrees[i] = (dim, act)
    diffs = {}
    raw = doc.get("differentials", {})
    if not isinstance(raw, dict):
        raise MalformedInputError(f"{where}.differentials: expected an object keyed by degree")
    for k, d in raw.items():
        try:
            i = int(k)
        except ValueError:
            raise MalformedInputError(f"{where}.differentials: degree key {k!r} is not an integer") from None
        diffs[i] = _matrix(d, f"{where}.differentials[{k!r}]")
    try:
        return TateComplex(p, degrees, diffs)
    except SmithcalcError as e:
        raise type(e)(f"{where}: {e}") from None


# ---------------------------------------------------------------------------
# dispatch

_ENCODERS = [
    (GComplex, "gcomplex", gcomplex_to_json),
    (Complex, "complex", complex_to_json),
    (SimplicialMap, "map", map_to_json),
    (CFun, "cfun", cfun_to_json),
    (HeckeElement, "hecke", hecke_to_json),
    (FiniteGroupAction, "group", group_action_to_json),
    (Fan, "fan", fan_to_json),
    (ConicCFun, "conic", conic_to_json),
    (RootDatum, "datum", root_datum_to_json),
    (InvariantElement, "element", invariant_to_json),
    (TateComplex, "tate", tate_to_json),
]

_DECODERS = {
    "complex": complex_from_json,
    "gcomplex": gcomplex_from_json,
    "map": map_from_json,
    "cfun": cfun_from_json,
    "hecke": hecke_from_json,
    "group": group_action_from_json,
    "fan": fan_from_json,
    "conic": conic_from_json,
    "datum": root_datum_from_json,
    "element": invariant_from_json,
    "tate": tate_from_json,
}


def kind_of(obj) -> str:
    for cls, kind, _ in _ENCODERS:
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


def encode(obj) -> dict:
    for cls, _, fn in _ENCODERS:
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


def decode(kind: str, doc):
    if kind not in _DECODERS:
        raise MalformedInputError(f"unknown value kind {kind!r}")
    return _DECODERS[kind](doc)


def serialize(obj) -> str:
    """Canonical text of a tagged document ``{"kind": ..., "value": ...}``."""
    return dumps({"kind": kind_of(obj), "value": encode(obj)})


def deserialize(text: str):
    doc = loads(text)
    kind = _need(doc, "kind", "document")
    return decode(kind, _need(doc, "value", "document"))
