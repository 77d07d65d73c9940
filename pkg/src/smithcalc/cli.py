"""Command-line front end.

Exit status: 0 on success, 1 when a checked property fails (the report then
carries a counterexample), 2 on malformed input or an unknown command.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import charp, checks, conic, hecke, tate
from . import io as sio
from .errors import InternalConsistencyError, MalformedInputError, SmithcalcError
from .fields import Ring
from .roots import (
    branching,
    centralizer_by_congruence,
    centralizer_by_deletion,
    centralizer_datum,
    display_layout,
    dual_datum,
    highest_root_coeffs,
    kac_nodes,
    kac_order_p_nodes,
    render_layout,
    root_datum,
    sha_model,
    smith_sha,
    verify_coroot_compatibility,
    weyl_character,
)
from .simplicial import (
    dualize,
    euler_integral,
    fixed_subcomplex,
    pullback,
    pullback_shriek,
    pushforward,
    pushforward_star,
    smith_restrict,
    specialize,
)


class Report:
    """What a command produced: a JSON document, optional table rows, and a status."""

    def __init__(self, doc, rows=None, header=None, status: int = 0):
        self.doc = doc
        self.rows = rows
        self.header = header
        self.status = status


def _tsv(rep: Report) -> str:
    def cell(x):
        if isinstance(x, (list, tuple)):
            return ",".join(map(str, x))
        return str(x)
    lines = []
    if rep.rows is not None:
        if rep.header:
            lines.append("\t".join(rep.header))
        lines += ["\t".join(cell(x) for x in r) for r in rep.rows]
    elif isinstance(rep.doc, dict):
        for k in sorted(rep.doc):
            v = rep.doc[k]
            if isinstance(v, (dict, list)) and not (isinstance(v, list) and all(isinstance(x, int) for x in v)):
                v = json.dumps(sio._plain(v), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            lines.append(f"{k}\t{cell(v)}")
    else:
        lines.append(cell(rep.doc))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input helpers


def _load(path, kind, **kw):
    doc = sio.read_json(path)
    if isinstance(doc, dict) and "kind" in doc and "value" in doc:
        if doc["kind"] != kind:
            raise MalformedInputError(f"{path}: expected a {kind} document, got {doc['kind']!r}")
        doc = doc["value"]
    fn = {
        "cfun": sio.cfun_from_json, "hecke": sio.hecke_from_json, "conic": sio.conic_from_json,
        "element": sio.invariant_from_json,
    }.get(kind)
    if fn is not None:
        return fn(doc, **kw)
    return sio.decode(kind, doc)


def _carrier(args):
    return _load(args.complex, "complex") if getattr(args, "complex", None) else None


def _with_ring(f, args):
    """Explicit change of coefficients requested by --ring."""
    if args.ring is None or Ring.parse(args.ring) == f.ring:
        return f
    r = Ring.parse(args.ring)
    if f.ring.p != 0 or r.p == 0:
        raise MalformedInputError(f"cannot change coefficients from {f.ring.name} to {r.name}")
    return f.reduce(r.p)


def _ints(text: str, what: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise MalformedInputError(f"{what}: expected comma-separated integers, got {text!r}") from None


def _datum(args):
    if getattr(args, "datum", None):
        return _load(args.datum, "datum")
    if not args.type:
        raise MalformedInputError("give --type (and --rank) or --datum FILE")
    kind, rank = args.type, args.rank
    if rank is None:
        kind, rank = kind[:1], kind[1:]
        if not rank.isdigit():
            raise MalformedInputError(f"--type {args.type!r}: give --rank or a type such as E8")
        rank = int(rank)
    return root_datum(kind.upper(), rank, args.isogeny)


def _node(rd, args):
    c = highest_root_coeffs(rd)
    if args.node is not None:
        if not 1 <= args.node <= rd.rank:
            raise MalformedInputError(f"--node must be between 1 and {rd.rank}")
        nodes = [n for n in kac_order_p_nodes(rd, c[args.node - 1]) if n.index == args.node] \
            if _is_prime(c[args.node - 1]) else []
        if not nodes:
            raise MalformedInputError(f"node {args.node} has coefficient {c[args.node - 1]}, not a prime")
        return nodes[0]
    if args.p is None:
        raise MalformedInputError("give --node or --p")
    nodes = kac_order_p_nodes(rd, args.p)
    if not nodes:
        raise MalformedInputError(f"no node with coefficient {args.p}")
    return nodes[0]


def _is_prime(n):
    from .fields import is_prime
    return is_prime(n)


# ---------------------------------------------------------------------------
# euler


def cmd_euler_integral(args):
    f = _with_ring(_load(args.function, "cfun", carrier=_carrier(args)), args)
    v = euler_integral(f)
    return Report({"ring": f.ring.name, "integral": v}, rows=[[v]])


def cmd_euler_pull(args):
    u = _load(args.map, "map")
    g = _with_ring(_load(args.function, "cfun", carrier=u.target), args)
    return Report(sio.encode(pullback_shriek(u, g) if args.shriek else pullback(u, g)))


def cmd_euler_push(args):
    u = _load(args.map, "map")
    f = _with_ring(_load(args.function, "cfun", carrier=u.source), args)
    return Report(sio.encode(pushforward_star(u, f) if args.star else pushforward(u, f)))


def cmd_euler_dual(args):
    f = _with_ring(_load(args.function, "cfun", carrier=_carrier(args)), args)
    return Report(sio.encode(dualize(f)))


def cmd_euler_smith(args):
    g = _load(args.action, "gcomplex")
    f = _with_ring(_load(args.function, "cfun", carrier=g.base), args)
    s = smith_restrict(g, f)
    a, b = euler_integral(f), euler_integral(s)
    doc = {"fixed": sio.encode(s), "integral": a, "fixed_integral": b, "congruent": a == b}
    if a != b:
        return Report(dict(doc, counterexample={"action": sio.encode(g), "function": sio.encode(f)}), status=1)
    return Report(doc)


def cmd_euler_specialize(args):
    f = _with_ring(_load(args.function, "cfun", carrier=_carrier(args)), args)
    signs = sio.signs_from_json(sio.read_json(args.signs), f.carrier)
    return Report(sio.encode(specialize(f.carrier, signs, f)))


# ---------------------------------------------------------------------------
# hecke


def cmd_hecke_convolve(args):
    c = _carrier(args)
    k1 = _with_ring(_load(args.kernel[0], "hecke", carrier=c), args)
    k2 = _with_ring(_load(args.kernel[1], "hecke", carrier=c or k1.carrier), args)
    return Report(sio.encode(hecke.convolve(k1, k2)))


def cmd_hecke_smith(args):
    act = _load(args.group, "group")
    k = _with_ring(_load(args.kernel, "hecke", carrier=act.carrier), args)
    return Report(sio.encode(hecke.smith_hecke(k, act)))


def cmd_hecke_groupring(args):
    orders = [args.order] if args.order else [2, 3, 4, 6, 8]
    rows, bad = [], []
    for n in orders:
        for name, g in sorted(hecke.small_groups(n).items()):
            rep = hecke.group_ring_bridge(g, args.ring or "Z").verify()
            ok = all(rep.values())
            rows.append([n, name, "pass" if ok else "FAIL"])
            if not ok:
                bad.append({"group": name, "report": rep})
    doc = {"groups": [{"order": r[0], "name": r[1], "passed": r[2] == "pass"} for r in rows]}
    if bad:
        doc["counterexample"] = bad[0]
    return Report(doc, rows=rows, header=["order", "group", "result"], status=1 if bad else 0)


# ---------------------------------------------------------------------------
# fans


def _covectors(args, n):
    out = [_ints(c, "--covector") for c in (args.covector or [])]
    for c in out:
        if len(c) != n:
            raise MalformedInputError(f"covector {list(c)} does not have {n} coordinates")
    return out


def cmd_fan_ft(args):
    f = _with_ring(_load(args.function, "conic"), args)
    if args.dual_fan:
        g = conic.ft(f, _load(args.dual_fan, "fan"))
        return Report(sio.encode(g))
    covs = _covectors(args, f.fan.dim) or [tuple(r) for r in f.fan.rays]
    rows = [[list(c), conic.ft_value(f, c)] for c in covs]
    return Report({"values": [{"covector": r[0], "value": r[1]} for r in rows]}, rows=rows,
                  header=["covector", "value"])


def cmd_fan_smith(args):
    f = _load(args.function, "conic")
    perm = list(_ints(args.perm, "--perm"))
    fz = f if f.ring.p == 0 else conic.ConicCFun(f.fan, "Z", f.values)
    p = conic._perm_order(perm)
    fixed = conic.smith_conic(fz.reduce(p), perm)
    m = len(fixed.fan.rays[0]) if fixed.fan.rays else fixed.fan.dim
    covs = _covectors(args, m) or [(1,) * m, (-1,) * m, (0,) * m]
    rows = conic.smith_ft_square(fz, perm, covs)
    ok = all(r["equal_mod_p"] for r in rows)
    doc = {"p": p, "fixed": sio.encode(fixed), "square": rows}
    table = [[list(r["covector"]), r["ft_then_smith"], r["smith_then_ft"], r["equal_over_Z"], r["equal_mod_p"]]
             for r in rows]
    return Report(doc, rows=table, header=["covector", "ft_then_smith", "smith_then_ft", "equal_over_Z",
                                            f"equal_mod_{p}"], status=0 if ok else 1)


# ---------------------------------------------------------------------------
# roots


def cmd_root_data(args):
    rd = _datum(args)
    doc = {
        "datum": sio.encode(rd),
        "type": rd.type,
        "cartan": [list(r) for r in rd.cartan],
        "roots": len(rd.roots),
        "weyl_order": rd.weyl_order,
        "center_order": rd.center_order,
        "simple_roots": [list(r) for r in rd.simple_roots],
        "simple_coroots": [list(r) for r in rd.simple_coroots],
    }
    if rd.is_irreducible:
        doc["highest_root"] = list(highest_root_coeffs(rd))
        doc["layout"] = display_layout(rd)
        doc["diagram"] = render_layout(rd)
    return Report(doc)


def cmd_root_kac(args):
    rd = _datum(args)
    nodes = kac_order_p_nodes(rd, args.p) if args.p else [n for n in kac_nodes(rd) if _is_prime(n.order)]
    rows = [[n.index, n.coefficient, [str(x) for x in n.coweight], centralizer_datum(rd, n).type]
            for n in nodes]
    doc = {"type": rd.type, "p": args.p, "nodes": [
        {"node": r[0], "coefficient": r[1], "coweight": r[2], "centralizer": r[3]} for r in rows]}
    return Report(doc, rows=rows, header=["node", "coefficient", "coweight", "centralizer"])


def cmd_root_centralizer(args):
    rd = _datum(args)
    node = _node(rd, args)
    h = centralizer_by_deletion(rd, node)
    cong = centralizer_by_congruence(rd, node)
    same = set(h.roots) == cong
    doc = {"type": rd.type, "node": node.index, "order": node.order, "centralizer": h.type,
           "datum": sio.encode(h), "roots": len(h.roots), "routes_agree": same, "rank": h.rank}
    if not same:
        doc["counterexample"] = {"deletion_only": sorted(map(list, set(h.roots) - cong)),
                                 "congruence_only": sorted(map(list, cong - set(h.roots)))}
    return Report(doc, status=0 if same else 1)


def cmd_root_dual(args):
    return Report(sio.encode(dual_datum(_datum(args))))


def _element_rows(e):
    return [[list(w), c] for w, c in sorted(e.weights.items())]


def cmd_root_character(args):
    rd = _datum(args)
    e = weyl_character(rd, _ints(args.weight, "--weight"), args.ring or "Z")
    return Report(sio.encode(e), rows=_element_rows(e), header=["weight", "multiplicity"])


def cmd_root_branch(args):
    rd = _datum(args)
    node = _node(rd, args)
    g, h = dual_datum(rd), dual_datum(centralizer_datum(rd, node))
    lam = _ints(args.weight, "--weight")
    table = branching(g, h, lam)
    rows = [[list(w), m] for w, m in table]
    doc = {"group": g.type, "subgroup": h.type, "weight": list(lam),
           "branching": [{"weight": r[0], "multiplicity": r[1]} for r in rows]}
    return Report(doc, rows=rows, header=["weight", "multiplicity"])


def cmd_root_smith_sha(args):
    rd = _datum(args)
    node = _node(rd, args)
    p = args.p or node.order
    model = sha_model(rd)
    if args.element:
        e = _load(args.element, "element", datum=model.datum)
    elif args.weight:
        e = model.orbit_basis(_ints(args.weight, "--weight"))
    else:
        raise MalformedInputError("give --element FILE or --weight")
    out = smith_sha(model, e, node, p)
    return Report(sio.encode(out), rows=_element_rows(out), header=["weight", "multiplicity"])


def cmd_root_coroot_check(args):
    rd = _datum(args)
    nodes = [_node(rd, args)] if (args.node or args.p) else \
        [n for q in (2, 3, 5, 7) for n in kac_order_p_nodes(rd, q)]
    reps = [verify_coroot_compatibility(rd, n) for n in nodes]
    ok = all(r["passed"] for r in reps)
    rows = [[r["node"], r["order"], r["centralizer"], r["roots_checked"], "pass" if r["passed"] else "FAIL"]
            for r in reps]
    doc = {"type": rd.type, "reports": reps}
    if not ok:
        doc["counterexample"] = next(r for r in reps if not r["passed"])
    return Report(doc, rows=rows, header=["node", "order", "centralizer", "roots_checked", "result"],
                  status=0 if ok else 1)


# ---------------------------------------------------------------------------
# charp


def cmd_charp_verify(args):
    q = args.field
    if args.construction == "odd-sum":
        rep = charp.odd_orthogonal_sum_embedding(args.a, args.b, q, samples=args.samples, seed=args.seed)
    else:
        rep = charp.so_to_sp(args.a, q)
    ok = rep["passed"]
    doc = dict(rep)
    if not ok:
        fails = rep.get("failures") or rep.get("counterexamples") or []
        doc["counterexample"] = fails[0] if fails else {"report": "see fields"}
    return Report(doc, status=0 if ok else 1)


def cmd_charp_dickson(args):
    f = charp.standard_form(args.dim, args.field)
    g = sio.loads(args.matrix) if args.matrix.lstrip().startswith("[") else sio.read_json(args.matrix)
    g = sio._matrix(g, "matrix")
    if not charp.is_isometry(g, f):
        raise MalformedInputError("matrix is not an isometry of the standard form")
    d = charp.dickson_invariant(g, f)
    return Report({"dim": args.dim, "field": args.field, "dickson": d, "in_SO": d == 0}, rows=[[d]])


def cmd_charp_f4(args):
    rep = charp.f4_primitivity_check()
    return Report(rep, status=0 if rep["passed"] else 1)


# ---------------------------------------------------------------------------
# tate


def _tate_table(m):
    h = tate.tate_cohomology(m)
    return [[i, d] for i, d in sorted(h.items())]


def cmd_tate_chi(args):
    m = _load(args.complex, "tate")
    v = tate.chi_mod_p(m)
    return Report({"p": m.p, "chi": v}, rows=[[v]])


def cmd_tate_cohomology(args):
    m = _load(args.complex, "tate")
    rows = _tate_table(m)
    return Report({"p": m.p, "tate_cohomology": {str(i): d for i, d in rows}}, rows=rows,
                  header=["degree", "dimension"])


def cmd_tate_perfect(args):
    m = _load(args.complex, "tate")
    rows = _tate_table(m)
    return Report({"p": m.p, "chi": tate.chi_mod_p(m), "perfect": tate.is_perfect(m),
                   "tate_cohomology": {str(i): d for i, d in rows}})


def cmd_tate_witness(args):
    m = _load(args.complex, "tate")
    w = tate.periodicity_witness(m, short=args.short)
    rep = w.verify()
    ok = rep["quasi_isomorphism"] and rep["cone_perfect"]
    doc = {"report": rep, "cone": sio.encode(w.cone)}
    if not ok:
        doc["counterexample"] = {"complex": sio.encode(m)}
    return Report(doc, status=0 if ok else 1)


def cmd_tate_cochains(args):
    g = _load(args.action, "gcomplex")
    if args.vertex is not None:
        lookup = {str(v): v for v in g.base.vertices}
        if args.vertex not in lookup:
            raise MalformedInputError(f"unknown vertex {args.vertex!r}")
        res = tate.link_cone_perfection(g, lookup[args.vertex])
        return Report({"vertex": args.vertex, "applicable": res.applicable, "perfect": res.perfect,
                       "reason": res.reason}, status=1 if res.applicable and not res.perfect else 0)
    m = tate.equivariant_cochains(g)
    rows = _tate_table(m)
    free = len(fixed_subcomplex(g)) == 0
    doc = {"complex": sio.encode(m), "chi": tate.chi_mod_p(m), "perfect": tate.is_perfect(m),
           "free_action": free, "tate_cohomology": {str(i): d for i, d in rows}}
    status = 1 if free and not doc["perfect"] else 0
    if status:
        doc["counterexample"] = {"action": sio.encode(g)}
    return Report(doc, status=status)


# ---------------------------------------------------------------------------
# check


def cmd_check(args):
    try:
        names = checks.select(args.target)
    except KeyError:
        raise MalformedInputError(f"unknown check or group {args.target!r}") from None
    t0 = time.perf_counter()
    results = []
    for name in names:
        c = checks.CHECKS[name]
        n = max(1, round(c.count * args.scale)) if c.count > 1 else c.count
        r = checks.run_check(name, args.seed, n)
        results.append(r)
        if args.verbose:
            print(f"{'PASS' if r.passed else 'FAIL'}\t{name}\t{r.instances}\t{r.seconds:.1f}s", file=sys.stderr)
    results.sort(key=lambda r: r.name)
    ok = all(r.passed for r in results)
    doc = {"seed": args.seed, "passed": ok, "checks": [r.to_json(args.timing) for r in results]}
    if args.timing:
        doc["seconds"] = round(time.perf_counter() - t0, 3)
    rows = [[r.name, "pass" if r.passed else "FAIL", r.instances] for r in results]
    return Report(doc, rows=rows, header=["check", "result", "instances"], status=0 if ok else 1)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default=None, help="Z, F2, F3, F5, ... (explicit change of coefficients)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", default=None, help="write the report to FILE instead of stdout")
    common.add_argument("--format", choices=["json", "tsv"], default="json")

    parser = argparse.ArgumentParser(prog="smithcalc", description="Constructible functions and Smith operators.")
    top = parser.add_subparsers(dest="group", required=True)

    def group(name, help):
        g = top.add_parser(name, help=help)
        return g.add_subparsers(dest="command", required=True)

    def cmd(sub, name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    eu = group("euler", "Euler calculus on simplicial complexes")
    p = cmd(eu, "integral", cmd_euler_integral, "Euler integral of a function")
    p.add_argument("--function", required=True)
    p.add_argument("--complex")
    p = cmd(eu, "pull", cmd_euler_pull, "pullback u^* (or u^! with --shriek)")
    p.add_argument("--map", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--shriek", action="store_true")
    p = cmd(eu, "push", cmd_euler_push, "pushforward u_! (or u_* with --star)")
    p.add_argument("--map", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--star", action="store_true")
    p = cmd(eu, "dual", cmd_euler_dual, "Verdier dual of a function")
    p.add_argument("--function", required=True)
    p.add_argument("--complex")
    p = cmd(eu, "smith", cmd_euler_smith, "Smith restriction to the fixed subcomplex")
    p.add_argument("--action", required=True)
    p.add_argument("--function", required=True)
    p = cmd(eu, "specialize", cmd_euler_specialize, "upper specialization along vertex signs")
    p.add_argument("--function", required=True)
    p.add_argument("--signs", required=True)
    p.add_argument("--complex")

    he = group("hecke", "convolution algebras")
    p = cmd(he, "convolve", cmd_hecke_convolve, "convolution of two kernels")
    p.add_argument("--kernel", action="append", required=True)
    p.add_argument("--complex")
    p = cmd(he, "smith", cmd_hecke_smith, "Smith operator on an invariant kernel")
    p.add_argument("--group", required=True)
    p.add_argument("--kernel", required=True)
    p = cmd(he, "groupring", cmd_hecke_groupring, "group-ring isomorphism check")
    p.add_argument("--order", type=int)

    fa = group("fan", "conic functions and the Fourier-Sato transform")
    p = cmd(fa, "ft", cmd_fan_ft, "transform values at covectors (or on a dual fan)")
    p.add_argument("--function", required=True)
    p.add_argument("--covector", action="append")
    p.add_argument("--dual-fan")
    p = cmd(fa, "smith", cmd_fan_smith, "Smith restriction and the Smith/transform square")
    p.add_argument("--function", required=True)
    p.add_argument("--perm", required=True, help="coordinate permutation, e.g. 1,0")
    p.add_argument("--covector", action="append")

    ro = group("root", "root data, Kac nodes and the lattice Satake model")

    def datum_args(p, node=False):
        p.add_argument("--type", help="A..G, or a full label such as E8")
        p.add_argument("--rank", type=int)
        p.add_argument("--isogeny", default="sc", choices=["sc", "ad"])
        p.add_argument("--datum", help="root-datum file instead of --type")
        if node:
            p.add_argument("--node", type=int)
            p.add_argument("--p", type=int)

    datum_args(cmd(ro, "data", cmd_root_data, "Cartan matrix, roots, highest root"))
    p = cmd(ro, "kac", cmd_root_kac, "nodes of prime coefficient")
    datum_args(p)
    p.add_argument("--p", type=int)
    datum_args(cmd(ro, "centralizer", cmd_root_centralizer, "centralizer datum, both routes"), node=True)
    datum_args(cmd(ro, "dual", cmd_root_dual, "Langlands dual datum"))
    p = cmd(ro, "character", cmd_root_character, "Weyl character of a dominant weight")
    datum_args(p)
    p.add_argument("--weight", required=True)
    p = cmd(ro, "branch", cmd_root_branch, "branching from the dual group to the dual centralizer")
    datum_args(p, node=True)
    p.add_argument("--weight", required=True)
    p = cmd(ro, "smith-sha", cmd_root_smith_sha, "Smith map on the lattice Satake model")
    datum_args(p, node=True)
    p.add_argument("--element")
    p.add_argument("--weight", help="cocharacter whose orbit sum is mapped (instead of --element)")
    datum_args(cmd(ro, "coroot-check", cmd_root_coroot_check, "root/coroot compatibility"), node=True)

    ch = group("charp", "quadratic forms in characteristic 2")
    p = cmd(ch, "verify", cmd_charp_verify, "check an embedding construction")
    p.add_argument("--construction", choices=["odd-sum", "so-sp"], default="odd-sum")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--field", type=int, choices=[2, 4], default=2)
    p.add_argument("--samples", type=int, default=1000)
    p = cmd(ch, "dickson", cmd_charp_dickson, "Dickson invariant of an isometry")
    p.add_argument("--matrix", required=True, help="JSON matrix or a file containing one")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", type=int, choices=[2, 4], default=2)
    cmd(ch, "f4", cmd_charp_f4, "primitivity of F4 roots")

    ta = group("tate", "complexes of F_p[Z/p]-modules")
    for name, fn, help in [("chi", cmd_tate_chi, "Euler characteristic mod p"),
                           ("cohomology", cmd_tate_cohomology, "Tate cohomology over the stable window"),
                           ("perfect", cmd_tate_perfect, "perfection verdict")]:
        cmd(ta, name, fn, help).add_argument("--complex", required=True)
    p = cmd(ta, "witness", cmd_tate_witness, "periodicity witness and its cone")
    p.add_argument("--complex", required=True)
    p.add_argument("--short", action="store_true", help="degree-1 witness (p = 2)")
    p = cmd(ta, "cochains", cmd_tate_cochains, "equivariant cochains (or the link check at --vertex)")
    p.add_argument("--action", required=True)
    p.add_argument("--vertex")

    ck = group("check", "seeded property suite")
    p = cmd(ck, "all", cmd_check, "run every check")
    p.set_defaults(target="all")
    p.add_argument("--only", dest="target", default="all", help="a check name or module prefix")
    p.add_argument("--scale", type=float, default=1.0, help="multiply instance counts")
    p.add_argument("--timing", action="store_true", help="include timings (reports stop being byte-stable)")
    p.add_argument("--verbose", action="store_true")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        rep = args.fn(args)
    except InternalConsistencyError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (SmithcalcError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = _tsv(rep) if args.format == "tsv" else sio.dumps(rep.doc)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as e:
            print(f"error: cannot write {args.out}: {e.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return rep.status


def main():
    sys.exit(run())
