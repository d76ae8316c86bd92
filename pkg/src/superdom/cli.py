"""Command-line interface.

Exit codes: 0 success, 1 refusal or failed verification, 2 search budget
exhausted, 64 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from . import acceptance
from .graph import (
    Graph,
    GraphError,
    components,
    cycle_graph,
    format_graph,
    parse_graph,
    path_graph,
    star_graph,
    subdivide,
)
from .matching import CertificateError, IIMatchingCertificate, SearchIncomplete, max_ii_matching
from .reductions import (
    CnfError,
    audit_gf,
    build_gf,
    build_product,
    independent_to_ii,
    parse_dimacs_cnf,
)
from .subdivision import build_superdom_set_subdivision, gamma_sp_subdivision_value
from .superdom import NotSuperDominating, bounds, gamma_sp_exact, verify_super_dom
from .tree import NotAForest, OpCounter, tree_gamma_sp_set

EXIT_OK, EXIT_REFUSED, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64

FIELDS = ("command", "instance", "value", "certificate", "provenance", "timing", "status")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(args) -> Graph:
    if args.input is None:
        raise UsageError("--input is required")
    return parse_graph(_read(args.input))


def _parse_ids(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--set expects comma separated vertex ids, got {text!r}") from None


def _instance(g: Graph) -> dict[str, int]:
    return {"n": g.n, "m": g.m, "components": len(components(g))}


def _pairs(g: Graph, eids) -> list[list[int]]:
    return sorted(list(g.edges[e]) for e in eids)


def _result(command: str, g: Graph | None, **kw: Any) -> dict[str, Any]:
    out = {"command": command, "instance": _instance(g) if g is not None else None,
           "value": None, "certificate": None, "provenance": None, "timing": None, "status": "exact"}
    out.update(kw)
    return out


# -- commands -----------------------------------------------------------------

def cmd_gamma_sp(args) -> tuple[dict, int]:
    g = _load_graph(args)
    try:
        r = gamma_sp_exact(g, budget=args.budget)
    except SearchIncomplete as exc:
        return _result("compute gamma-sp", g, status="incomplete",
                       bounds={"lower": exc.lower, "upper": exc.upper}), EXIT_BUDGET
    return _result("compute gamma-sp", g, value=r.value, provenance="search",
                   certificate=r.certificate.sorted_set() if args.cert else None,
                   nodes=r.nodes), EXIT_OK


def cmd_tree(args) -> tuple[dict, int]:
    g = _load_graph(args)
    counter = OpCounter()
    try:
        value, cert = tree_gamma_sp_set(g, counter)
    except NotAForest as exc:
        return _result("compute tree", g, status="refused", error=str(exc)), EXIT_REFUSED
    return _result("compute tree", g, value=value, provenance="tree labelling: n - matching number",
                   certificate=cert.sorted_set() if args.cert else None, steps=counter.steps), EXIT_OK


def cmd_subdivision(args) -> tuple[dict, int]:
    g = _load_graph(args)
    if args.k is None or args.k < 0:
        raise UsageError("compute subdivision needs --k >= 0")
    try:
        val = gamma_sp_subdivision_value(g, args.k, args.budget)
        cert = None
        if args.cert:
            _, c, _ = build_superdom_set_subdivision(g, args.k, args.budget)
            cert = c.sorted_set()
    except SearchIncomplete as exc:
        return _result("compute subdivision", g, status="incomplete", k=args.k,
                       bounds={"lower": exc.lower, "upper": exc.upper}), EXIT_BUDGET
    except CertificateError as exc:
        return _result("compute subdivision", g, status="refused", k=args.k, error=str(exc)), EXIT_REFUSED
    sd = subdivide(g, args.k)
    return _result("compute subdivision", g, value=val.value, provenance=val.provenance, k=args.k,
                   subdivided={"n": sd.result.n, "m": sd.result.m}, base_invariant=val.base_invariant,
                   certificate=cert), EXIT_OK


def cmd_ii(args) -> tuple[dict, int]:
    g = _load_graph(args)
    try:
        c = max_ii_matching(g, budget=args.budget)
    except SearchIncomplete as exc:
        return _result("compute ii", g, status="incomplete",
                       bounds={"lower": exc.lower, "upper": exc.upper}), EXIT_BUDGET
    cert = {"m1": _pairs(g, c.m1), "m2": _pairs(g, c.m2)} if args.cert else None
    return _result("compute ii", g, value=c.size, provenance="search", certificate=cert), EXIT_OK


def cmd_bounds(args) -> tuple[dict, int]:
    g = _load_graph(args)
    try:
        rep = bounds(g, exact=args.exact, budget=args.budget)
    except SearchIncomplete:
        rep = bounds(g)
        return _result("compute bounds", g, status="incomplete", value=None,
                       bounds={"lower": rep.gamma_lower, "upper": rep.gamma_upper}), EXIT_BUDGET
    detail = {"lower": rep.gamma_lower, "upper": rep.gamma_upper, "matching_number": rep.matching_number,
              "packing_number": rep.packing_number, "independence_number": rep.independence_number,
              "bipartite": rep.bipartite, "has_isolated": rep.has_isolated}
    return _result("compute bounds", g, value=rep.gamma, bounds=detail, provenance="bounds",
                   status="exact" if rep.gamma is not None else "bounds-only"), EXIT_OK


def _parse_ii(text: str, g: Graph) -> IIMatchingCertificate:
    parts = text.split("/")
    if len(parts) > 2:
        raise UsageError("--ii expects 'u-v,u-v/u-v,...' (two parts at most)")
    sides = []
    for part in parts + [""] * (2 - len(parts)):
        eids = set()
        for tok in filter(None, (t.strip() for t in part.split(","))):
            try:
                u, v = (int(x) for x in tok.split("-"))
            except ValueError:
                raise UsageError(f"bad edge {tok!r} in --ii") from None
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                raise CertificateError(f"{u}-{v} is not an edge")
            eids.add(g.edge_id(u, v))
        sides.append(frozenset(eids))
    return IIMatchingCertificate(sides[0], sides[1])


def cmd_verify(args) -> tuple[dict, int]:
    g = _load_graph(args)
    if args.k:
        g = subdivide(g, args.k).result
    if (args.set is None) == (args.ii is None):
        raise UsageError("verify needs exactly one of --set or --ii")
    if args.ii is not None:
        try:
            c = _parse_ii(args.ii, g)
            c.validate(g)
        except CertificateError as exc:
            return _result("verify", g, status="refused", error=str(exc)), EXIT_REFUSED
        return _result("verify", g, value=c.size, provenance="ii-matching check"), EXIT_OK
    ids = _parse_ids(args.set)
    bad = [v for v in ids if not 0 <= v < g.n]
    if bad:
        raise UsageError(f"vertex {bad[0]} not in graph")
    try:
        cert = verify_super_dom(g, ids)
    except NotSuperDominating as exc:
        return _result("verify", g, status="refused",
                       refusal={"vertex": exc.vertex, "reason": exc.reason}), EXIT_REFUSED
    return _result("verify", g, value=cert.size, provenance="super domination check",
                   certificate=cert.sorted_set() if args.cert else None,
                   core=sorted(cert.b) if args.cert else None), EXIT_OK


def cmd_reduce_sat(args) -> tuple[dict, int]:
    if args.input is None:
        raise UsageError("--input is required")
    f = parse_dimacs_cnf(_read(args.input))
    art = build_gf(f)
    au = audit_gf(art)
    _write_artifact(args, art)
    audit = {"n": au.n, "expected_n": au.expected_n, "bipartite": au.bipartite,
             "girth": None if au.girth == float("inf") else au.girth, "tree_shaped": au.is_tree,
             "girth_at_least_8": au.girth_ok, "matching_number": au.matching_number,
             "expected_matching_number": au.expected_matching_number,
             "forced_edges_present": au.forced_edges_present,
             "per_gadget_matching_edges": list(au.per_gadget_matching_edges)}
    extra = {"threshold": art.threshold, "audit": audit,
             "graph": format_graph(art.graph), "roles": art.role_sidecar()}
    if au.is_tree:
        extra["note"] = "tree-shaped instance"
    return _result("reduce sat", art.graph, value=art.threshold, provenance="SAT gadget graph", **extra), EXIT_OK


def cmd_reduce_alpha(args) -> tuple[dict, int]:
    f = _load_graph(args)
    art = build_product(f)
    _write_artifact(args, art)
    extra: dict[str, Any] = {"graph": format_graph(art.graph), "roles": art.role_sidecar()}
    if args.k is not None:
        extra["threshold"] = 2 * args.k
    if args.set is not None:
        try:
            c = independent_to_ii(f, _parse_ids(args.set))
        except CertificateError as exc:
            return _result("reduce alpha", art.graph, status="refused", error=str(exc)), EXIT_REFUSED
        extra["certificate"] = {"m1": _pairs(art.graph, c.m1), "m2": _pairs(art.graph, c.m2)}
        extra["value"] = c.size
    return _result("reduce alpha", art.graph, provenance="product with K4", **extra), EXIT_OK


def _write_artifact(args, art) -> None:
    if args.out:
        with open(args.out + ".el", "w", encoding="utf-8") as fh:
            fh.write(format_graph(art.graph))
        with open(args.out + ".roles", "w", encoding="utf-8") as fh:
            fh.write(art.role_sidecar())


def cmd_bench(args) -> tuple[dict, int]:
    rows = []
    for fam, make, sizes in (("path", path_graph, (100, 1000, 10000)),
                             ("star", star_graph, (100, 1000, 10000)),
                             ("caterpillar", _caterpillar, (100, 1000, 10000))):
        for n in sizes:
            g = make(n)
            counter = OpCounter()
            t = time.perf_counter()
            value, _ = tree_gamma_sp_set(g, counter)
            rows.append({"solver": "tree", "family": fam, "n": g.n, "value": value, "steps": counter.steps,
                         "steps_per_vertex": round(counter.steps / g.n, 3), "seconds": time.perf_counter() - t})
    for n in range(10, 41, 6):
        for fam, g in (("cycle", cycle_graph(n)), ("path", path_graph(n))):
            t = time.perf_counter()
            r = gamma_sp_exact(g)
            rows.append({"solver": "exact", "family": fam, "n": n, "value": r.value, "steps": r.nodes,
                         "seconds": time.perf_counter() - t})
    if args.canonical:
        for row in rows:
            row.pop("seconds")
    return {"command": "bench", "rows": rows, "status": "exact"}, EXIT_OK


def _caterpillar(n: int) -> Graph:
    spine = n // 2
    edges = [(i, i + 1) for i in range(spine - 1)] + [(i, spine + i) for i in range(n - spine)]
    return Graph.from_edges(n, edges)


def cmd_selftest(args) -> tuple[dict, int]:
    numbers = [args.suite] if args.suite is not None else None
    if numbers:
        results = [acceptance.run_suite(n) for n in numbers]
    else:
        results = acceptance.run_all()
    out = sys.stdout
    for r in results:
        if args.verbose:
            out.write(r.transcript())
        out.write(r.summary(canonical=args.canonical) + "\n")
    ok = all(r.passed for r in results)
    out.write(("selftest: all criteria passed" if ok else
               f"selftest: {sum(not r.passed for r in results)} criteria failed") + "\n")
    return {}, EXIT_OK if ok else EXIT_REFUSED


# -- output -------------------------------------------------------------------

def _emit(result: dict, args) -> None:
    if not result:
        return
    if args.canonical:
        result.pop("timing", None)
    if args.format == "tsv":
        if "rows" in result:
            keys = list(result["rows"][0])
            print("\t".join(keys))
            for row in result["rows"]:
                print("\t".join(str(row[k]) for k in keys))
            return
        keys = [k for k in result if k not in ("graph", "roles")]
        print("\t".join(keys))
        print("\t".join(_tsv_cell(result[k]) for k in keys))
        return
    print(json.dumps(result, sort_keys=True, ensure_ascii=False, indent=None if args.canonical else 2))


def _tsv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="edge-list file (or '-' for stdin); CNF for 'reduce sat'")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--budget", type=int, help="search node limit")
    common.add_argument("--canonical", action="store_true", help="deterministic output without timings")
    common.add_argument("--cert", action="store_true", help="include certificates")

    p = _Parser(prog="superdom", description="Super domination toolkit.")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    comp = sub.add_parser("compute", help="compute an invariant")
    csub = comp.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for name, fn in (("gamma-sp", cmd_gamma_sp), ("tree", cmd_tree), ("subdivision", cmd_subdivision),
                     ("ii", cmd_ii), ("bounds", cmd_bounds)):
        sp = csub.add_parser(name, parents=[common])
        sp.set_defaults(func=fn)
        if name == "subdivision":
            sp.add_argument("--k", type=int)
        if name == "bounds":
            sp.add_argument("--exact", action="store_true", help="also compute gamma_sp exactly")

    ver = sub.add_parser("verify", parents=[common], help="verify a super dominating set or an II-matching")
    ver.add_argument("--set", help="comma separated vertex ids")
    ver.add_argument("--ii", help="II-matching as 'u-v,u-v/u-v,...'")
    ver.add_argument("--k", type=int, default=0, help="verify on the k-subdivision of the input")
    ver.set_defaults(func=cmd_verify)

    red = sub.add_parser("reduce", help="generate a reduction instance")
    rsub = red.add_subparsers(dest="what", required=True, parser_class=_Parser)
    rs = rsub.add_parser("sat", parents=[common])
    rs.add_argument("--out", help="write PREFIX.el and PREFIX.roles")
    rs.set_defaults(func=cmd_reduce_sat)
    ra = rsub.add_parser("alpha", parents=[common])
    ra.add_argument("--out", help="write PREFIX.el and PREFIX.roles")
    ra.add_argument("--k", type=int, help="independence target; threshold is 2k")
    ra.add_argument("--set", help="independent set to translate into an II-matching")
    ra.set_defaults(func=cmd_reduce_alpha)

    b = sub.add_parser("bench", parents=[common], help="benchmark tables")
    b.set_defaults(func=cmd_bench)

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance suites")
    st.add_argument("--suite", type=int, help="run one suite only")
    st.add_argument("--verbose", action="store_true", help="print every instance line")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        result, code = args.func(args)
    except (UsageError, GraphError, CnfError) as exc:
        parser.print_usage(sys.stderr)
        print(f"superdom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if result and "timing" in result:
        result["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    _emit(result, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
