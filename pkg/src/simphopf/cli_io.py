"""Bundle files, JSON reports and the ``simphopf`` command line.

A bundle is a line-based text file holding complexes and maps::

    complex S2_4
    dim 2
    facet A B C
    ...
    map f K S2_4
    0 -> A

Exit codes: 0 ok, 1 validation failure, 2 parse error, 3 precondition
unmet, 4 theorem violation.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex import (build_complex,
                      validate_closed_oriented_3_manifold, validate_sphere_2)
from .errors import (BundleSyntaxError, BundleUnknownVertex, NotACoboundary,
                     NotHomologySphere, SimpHopfError, TheoremViolation,
                     UnknownComplex, UnmappedVertex)
from .fibers import certify_component, extract_fiber, verify_lower_bound
from .generators import FAMILIES
from .hopf import hopf_invariant
from .maps import SimplicialMap, mu, mu_all, validate_simplicial

SCHEMA = "simphopf.report"
SCHEMA_VERSION = 1

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_PRECONDITION, EXIT_VIOLATION = range(5)

log = logging.getLogger("simphopf")

_TOKEN = re.compile(r"[A-Za-z0-9]+\Z")


@dataclass
class Bundle:
    complexes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing

def _check_token(tok, lineno):
    if not _TOKEN.match(tok):
        raise BundleSyntaxError(lineno, f"label {tok!r} is not alphanumeric")


class _Parser:
    def __init__(self):
        self.bundle = Bundle()
        self.section = None  # ("complex", name, line, dim, facets) or ("map", ...)

    def close(self):
        sec, self.section = self.section, None
        if sec is None:
            return
        if sec[0] == "complex":
            _, name, line, dim, facets = sec
            if dim is None:
                raise BundleSyntaxError(line, f"complex {name} has no dim line")
            if not facets:
                raise BundleSyntaxError(line, f"complex {name} has no facets")
            try:
                self.bundle.complexes[name] = build_complex(name, facets)
            except SimpHopfError as exc:
                raise BundleSyntaxError(line, str(exc)) from exc
        else:
            _, name, line, src, tgt, assignment = sec[:6]
            missing = [src.labels[v] for v in src.vertices if v not in assignment]
            if missing:
                raise UnmappedVertex(line, f"map {name}: unmapped vertices {missing[:5]}")
            self.bundle.maps[name] = SimplicialMap(name, src, tgt, assignment)

    def feed(self, lineno, line):
        toks = line.split("#", 1)[0].split()
        if not toks:
            return
        head = toks[0]
        if head == "complex":
            if len(toks) != 2:
                raise BundleSyntaxError(lineno, "expected: complex <name>")
            self.close()
            name = toks[1]
            if name in self.bundle.complexes:
                raise BundleSyntaxError(lineno, f"complex {name} defined twice")
            self.section = ["complex", name, lineno, None, []]
        elif head == "dim":
            if not self.section or self.section[0] != "complex" or len(toks) != 2:
                raise BundleSyntaxError(lineno, "dim outside a complex section")
            if self.section[3] is not None or not toks[1].isdigit():
                raise BundleSyntaxError(lineno, "bad or repeated dim line")
            self.section[3] = int(toks[1])
        elif head == "facet":
            sec = self.section
            if not sec or sec[0] != "complex" or sec[3] is None:
                raise BundleSyntaxError(lineno, "facet before complex/dim")
            verts = toks[1:]
            for t in verts:
                _check_token(t, lineno)
            if len(verts) != sec[3] + 1:
                raise BundleSyntaxError(lineno, f"facet needs {sec[3] + 1} vertices")
            if len(set(verts)) != len(verts):
                raise BundleSyntaxError(lineno, "facet repeats a vertex")
            sec[4].append(tuple(verts))
        elif head == "map":
            if len(toks) != 4:
                raise BundleSyntaxError(lineno, "expected: map <name> <source> <target>")
            self.close()
            name, s, t = toks[1:]
            if name in self.bundle.maps:
                raise BundleSyntaxError(lineno, f"map {name} defined twice")
            for c in (s, t):
                if c not in self.bundle.complexes:
                    raise UnknownComplex(lineno, f"unknown complex {c!r}")
            src, tgt = self.bundle.complexes[s], self.bundle.complexes[t]
            self.section = ["map", name, lineno, src, tgt, {},
                            {lab: v for v, lab in src.labels.items()},
                            {lab: v for v, lab in tgt.labels.items()}]
        elif len(toks) == 3 and toks[1] == "->":
            sec = self.section
            if not sec or sec[0] != "map":
                raise BundleSyntaxError(lineno, "assignment outside a map section")
            src, tgt, assignment, src_ids, tgt_ids = sec[3:]
            v, w = toks[0], toks[2]
            if v not in src_ids:
                raise BundleUnknownVertex(lineno, f"no vertex {v!r} in {src.name}")
            if w not in tgt_ids:
                raise BundleUnknownVertex(lineno, f"no vertex {w!r} in {tgt.name}")
            vid, wid = src_ids[v], tgt_ids[w]
            if vid in assignment:
                raise BundleSyntaxError(lineno, f"vertex {v} mapped twice")
            assignment[vid] = wid
        else:
            raise BundleSyntaxError(lineno, f"unrecognized line: {line.strip()!r}")


def parse_bundle(text: str) -> Bundle:
    """Parse bundle text; every error carries the offending line number."""
    p = _Parser()
    lineno = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        p.feed(lineno, line)
    p.close()
    if not p.bundle.complexes:
        raise BundleSyntaxError(max(lineno, 1), "bundle defines no complexes")
    return p.bundle


# ---------------------------------------------------------------------------
# serialization

def _rank_order(complex_):
    """Vertex order under which re-parsing reproduces the same ids.

    Facets are written in stored order; inside a facet, vertices already
    seen come first by rank, then new ones by id.
    """
    rank = {}
    rows = []
    for f in complex_.facets:
        new = sorted(v for v in f if v not in rank)
        for v in new:
            rank[v] = len(rank)
        rows.append(sorted(f, key=rank.__getitem__))
    return rank, rows


def serialize_bundle(bundle: Bundle) -> str:
    out = []
    ranks = {}
    for name, c in bundle.complexes.items():
        rank, rows = _rank_order(c)
        ranks[name] = rank
        out.append(f"complex {name}")
        out.append(f"dim {c.dim}")
        out.extend("facet " + " ".join(c.labels[v] for v in row) for row in rows)
        out.append("")
    for name, f in bundle.maps.items():
        out.append(f"map {name} {f.source.name} {f.target.name}")
        rank = ranks.get(f.source.name) or _rank_order(f.source)[0]
        for v in sorted(f.source.vertices, key=rank.__getitem__):
            out.append(f"{f.source.labels[v]} -> {f.target.labels[f.assignment[v]]}")
        out.append("")
    return "\n".join(out)


def bundle_from_map(f: SimplicialMap) -> Bundle:
    b = Bundle()
    b.complexes[f.source.name] = f.source
    b.complexes[f.target.name] = f.target
    b.maps[f.name] = f
    return b


def load_bundle(path) -> Bundle:
    with open(path, encoding="utf-8") as fh:
        return parse_bundle(fh.read())


# ---------------------------------------------------------------------------
# reports

def _tri_label(f, s):
    return ",".join(f.target.labels[v] for v in s)


def mu_table(f):
    return {_tri_label(f, s): c for s, c in sorted(mu_all(f).items())}


def fiber_report(f, s):
    s = tuple(sorted(s))
    diagram = extract_fiber(f, s)
    comps = []
    for i, comp in enumerate(diagram.components):
        cert = certify_component(f, comp, i)
        entry = comp.summary(f.source.labels)
        entry["certificate"] = cert.to_dict(f.source.labels, f.target.labels)
        comps.append(entry)
    return {"triangle": _tri_label(f, s), "mu": mu(f, s),
            "components": comps, "total": diagram.total}


def theorem_report(f):
    """Full report for one map plus the exit code it deserves."""
    doc = {"map": f.name}
    src = validate_closed_oriented_3_manifold(f.source)
    tgt = validate_sphere_2(f.target)
    simp = validate_simplicial(f)
    doc["validation"] = {"source": src.to_dict(), "target": tgt.to_dict(),
                         "simplicial": bool(simp)}
    if not (src.ok and tgt.ok and simp):
        doc["status"] = "invalid"
        return doc, EXIT_INVALID
    doc["mu"] = mu_table(f)
    if not src.s3_homology:
        doc["status"] = "precondition unmet: source is not a homology 3-sphere"
        return doc, EXIT_PRECONDITION
    try:
        h = hopf_invariant(f, all_triangles=True, trials=3, check=False)
    except NotACoboundary as exc:
        doc["status"] = f"precondition unmet: {exc}"
        return doc, EXIT_PRECONDITION
    doc["hopf"] = h.to_dict(f.target.labels)
    bounds = []
    try:
        for s in f.target.faces(2):
            bounds.append(verify_lower_bound(f, s, h.value).to_dict(
                f.source.labels, f.target.labels))
    except TheoremViolation as exc:
        doc["bound"] = {"holds": False, "reason": str(exc), "triangles": bounds}
        doc["status"] = "theorem violation"
        return doc, EXIT_VIOLATION
    holds = h.value == 0 or all(c >= 9 for c in doc["mu"].values())
    doc["bound"] = {"holds": holds, "triangles": bounds}
    doc["status"] = "ok" if holds else "theorem violation"
    return doc, EXIT_OK if holds else EXIT_VIOLATION


def document(kind, body):
    return {"schema": SCHEMA, "schema_version": SCHEMA_VERSION, "kind": kind, **body}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# command line

def _pick_map(bundle, name):
    if name is None:
        if len(bundle.maps) != 1:
            raise SystemExit(_fail(EXIT_PARSE, f"bundle has {len(bundle.maps)} maps; use --map"))
        return next(iter(bundle.maps.values()))
    if name not in bundle.maps:
        raise SystemExit(_fail(EXIT_PARSE, f"no map named {name!r}"))
    return bundle.maps[name]


def _fail(code, msg):
    log.error(msg)
    return code


def _triangle(f, text):
    labels = text.split(",")
    if len(labels) != 3:
        raise SystemExit(_fail(EXIT_PARSE, f"--triangle needs three labels, got {text!r}"))
    try:
        s = tuple(sorted(f.target.vertex_by_label(x) for x in labels))
    except SimpHopfError as exc:
        raise SystemExit(_fail(EXIT_PARSE, str(exc)))
    if s not in f.target:
        raise SystemExit(_fail(EXIT_PRECONDITION, f"{text} is not a triangle of {f.target.name}"))
    return s


def _emit(doc, as_json, lines):
    if as_json:
        sys.stdout.write(dumps(doc))
    else:
        for line in lines:
            print(line)


def cmd_validate(args, bundle):
    reports = []
    for c in bundle.complexes.values():
        rep = (validate_sphere_2(c) if c.dim == 2 else validate_closed_oriented_3_manifold(c))
        reports.append(rep)
    simp = {name: bool(validate_simplicial(f)) for name, f in bundle.maps.items()}
    ok = all(r.ok for r in reports) and all(simp.values())
    doc = document("validate", {"complexes": [r.to_dict() for r in reports],
                                "maps_simplicial": simp, "ok": ok})
    lines = [f"{r.name}: {r.verdict.value}" + (f" ({r.reason})" if r.reason else "")
             for r in reports]
    lines += [f"map {n}: {'simplicial' if v else 'NOT simplicial'}" for n, v in simp.items()]
    _emit(doc, args.json, lines)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_mu(args, bundle):
    f = _pick_map(bundle, args.map)
    if not validate_simplicial(f):
        return _fail(EXIT_INVALID, f"map {f.name} is not simplicial")
    if args.triangle:
        s = _triangle(f, args.triangle)
        table = {_tri_label(f, s): mu(f, s)}
    else:
        table = mu_table(f)
    _emit(document("mu", {"map": f.name, "mu": table}), args.json,
          [f"{k} {v}" for k, v in table.items()])
    return EXIT_OK


def _check_source(f):
    rep = validate_closed_oriented_3_manifold(f.source)
    if not rep.ok or not validate_simplicial(f) or not validate_sphere_2(f.target).ok:
        return _fail(EXIT_INVALID, f"map {f.name}: invalid input ({rep.reason or 'map or target'})")
    return None


def cmd_fibers(args, bundle):
    f = _pick_map(bundle, args.map)
    bad = _check_source(f)
    if bad is not None:
        return bad
    rep = fiber_report(f, _triangle(f, args.triangle))
    lines = [f"fiber over {rep['triangle']}: mu = {rep['mu']}, {len(rep['components'])} component(s)"]
    for i, c in enumerate(rep["components"]):
        cert = c["certificate"]
        w = f" witness {cert['witness']}" if cert["witness"] is not None else ""
        lines.append(f"  C{i}: |S| = {c['size']}, |V| = {c['vertices']}, {cert['kind']}{w}")
    _emit(document("fibers", {"map": f.name, **rep}), args.json, lines)
    return EXIT_OK


def cmd_hopf(args, bundle):
    f = _pick_map(bundle, args.map)
    bad = _check_source(f)
    if bad is not None:
        return bad
    try:
        h = hopf_invariant(f, all_triangles=True, trials=args.trials, seed=args.seed)
    except (NotHomologySphere, NotACoboundary) as exc:
        return _fail(EXIT_PRECONDITION, str(exc))
    lines = [f"H = {h.value}"] + [f"  {c}: {v}" for c, v in h.well_definedness_checks]
    _emit(document("hopf", {"map": f.name, "hopf": h.to_dict(f.target.labels)}), args.json, lines)
    return EXIT_OK if h.consistent else EXIT_INVALID


def _theorem_job(text_and_name):
    text, name = text_and_name
    return theorem_report(parse_bundle(text).maps[name])


def cmd_check_theorem(args, bundle):
    if args.map is not None:
        names = [_pick_map(bundle, args.map).name]
    else:
        names = sorted(bundle.maps)
    if not names:
        return _fail(EXIT_PARSE, "bundle has no maps")
    if len(names) == 1:
        results = [theorem_report(bundle.maps[names[0]])]
    else:
        # maps of one bundle are verified in worker processes
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_theorem_job, [(args.text, n) for n in names]))
    code = max(c for _, c in results)
    docs = [d for d, _ in results]
    lines = []
    for d in docs:
        lines.append(f"{d['map']}: {d['status']}")
        if "hopf" in d:
            lines.append(f"  H = {d['hopf']['value']}")
        if "mu" in d:
            lines.append("  mu: " + ", ".join(f"{k}={v}" for k, v in d["mu"].items()))
    body = docs[0] if len(docs) == 1 else {"maps": docs}
    _emit(document("check-theorem", body), args.json, lines)
    return code


def cmd_generate(args):
    if args.family not in FAMILIES:
        return _fail(EXIT_PARSE, f"unknown family {args.family!r}")
    try:
        gm = FAMILIES[args.family](args.n) if args.n is not None else FAMILIES[args.family]()
    except ValueError as exc:
        return _fail(EXIT_PRECONDITION, str(exc))
    for line in gm.construction_log:
        log.info(line)
    text = serialize_bundle(bundle_from_map(gm.map))
    text = f"# {gm.provenance}\n" + text
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", args.out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="simphopf",
                                description="Exact analysis of simplicial maps to the 2-sphere.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
        return sp

    with_file("validate", "check every complex and map in a bundle")
    sp = with_file("mu", "count tetrahedra over each target triangle")
    sp.add_argument("--map")
    sp.add_argument("--triangle")
    sp = with_file("fibers", "fiber circles over a triangle and their certificates")
    sp.add_argument("--map")
    sp.add_argument("--triangle", required=True)
    sp = with_file("hopf", "Hopf invariant with well-definedness checks")
    sp.add_argument("--map")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp = with_file("check-theorem", "full report and the lower-bound verdict")
    sp.add_argument("--map")
    sp = sub.add_parser("generate", help="write a generated map as a bundle")
    sp.add_argument("--family", required=True, choices=sorted(FAMILIES))
    sp.add_argument("--n", type=int)
    sp.add_argument("--out")
    return p


COMMANDS = {"validate": cmd_validate, "mu": cmd_mu, "fibers": cmd_fibers,
            "hopf": cmd_hopf, "check-theorem": cmd_check_theorem}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.command == "generate":
        return cmd_generate(args)
    try:
        with open(args.file, encoding="utf-8") as fh:
            args.text = fh.read()
        bundle = parse_bundle(args.text)
    except OSError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except BundleSyntaxError as exc:
        return _fail(EXIT_PARSE, f"{args.file}: {exc}")
    try:
        return COMMANDS[args.command](args, bundle)
    except SystemExit as exc:
        return exc.code
    except TheoremViolation as exc:
        return _fail(EXIT_VIOLATION, str(exc))
    except SimpHopfError as exc:
        return _fail(EXIT_PRECONDITION, f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
