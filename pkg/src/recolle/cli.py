"""Command-line surface.

Subcommands: analyze, recollements, stratify, exceptional, hom, nakayama,
oracle-check.  All reports are deterministic given the same input and seed;
exit codes: 0 success, 2 parse error, 3 a report contains Unknown verdicts
(reports are still emitted), 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import __name__ as _pkg
from .algebra import build_algebra, cartan_matrix, fingerprint, is_local
from .errors import (
    CapTooLarge,
    InvariantViolation,
    ParseError,
    RecolleError,
)
from .fields import GF, QQ
from .ladders import ladder_heights, nakayama, simplicity_report
from .modules import projective_module, radical_filtration
from .oracle import bar_tor, hom_bruteforce, path_count
from .quiverio import (
    composition_diagram,
    load_presentation,
    parse_field,
    render_tribool,
    resolve_module_literal,
    trees_to_dot,
)
from .recollement import (
    build_recollement,
    restriction_report,
    stratifying_status,
)
from .resolutions import gldim, min_resolution, tor_dim
from .search import enumerate_exceptional, jh_across, stratification_trees
from .verdicts import Finite


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="recolle",
        description="exact workbench for recollements of derived module categories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="quiver JSON file")
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--field", default=None,
                       help='override ground field: "Q" or a prime p')
        p.add_argument("--format", choices=["json", "text", "dot"],
                       default="text")
        p.add_argument("--out", default=None)

    p = sub.add_parser("analyze", help="dimensions, Cartan data, projectives")
    common(p)
    p = sub.add_parser("recollements",
                       help="stratifying status and restriction levels per idempotent")
    common(p)
    p = sub.add_parser("stratify", help="stratification trees and factor comparison")
    common(p)
    p.add_argument("--recursion-limit", type=int, default=8)
    p = sub.add_parser("exceptional", help="bounded exceptional-object search")
    common(p)
    p.add_argument("--max-len", type=int, default=2)
    p.add_argument("--max-mult", type=int, default=2)
    p = sub.add_parser("hom", help="Hom space between shifted stalk complexes")
    common(p)
    p.add_argument("--x", required=True, help='module literal, e.g. "P2"')
    p.add_argument("--y", required=True)
    p.add_argument("-n", type=int, default=0)
    p = sub.add_parser("nakayama", help="derived Nakayama image of a stalk")
    common(p)
    p.add_argument("--x", required=True, help='projective literal, e.g. "P2"')
    p = sub.add_parser("oracle-check",
                       help="cross-check main algorithms against brute-force oracles")
    common(p)

    args = parser.parse_args(argv)
    try:
        report, text = _dispatch(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CapTooLarge as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 4

    if args.format == "json":
        payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif args.format == "dot":
        payload = report.get("dot", "") if isinstance(report, dict) else ""
        if not payload:
            print("no DOT output for this command", file=sys.stderr)
            return 2
    else:
        payload = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 3 if _contains_unknown(report) else 0


def _field_override(args):
    if args.field is None:
        return None
    if args.field == "Q":
        return QQ
    return GF(int(args.field))


def _load(args):
    q = load_presentation(args.input, _field_override(args))
    return q, build_algebra(q)


def _contains_unknown(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("value") == "unknown" or obj.get("kind") in ("Unknown",
                                                                "DepthExceeded",
                                                                "Inconclusive"):
            return True
        return any(_contains_unknown(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(_contains_unknown(v) for v in obj)
    return False


def _dispatch(args):
    cmd = args.command
    if cmd == "analyze":
        return cmd_analyze(args)
    if cmd == "recollements":
        return cmd_recollements(args)
    if cmd == "stratify":
        return cmd_stratify(args)
    if cmd == "exceptional":
        return cmd_exceptional(args)
    if cmd == "hom":
        return cmd_hom(args)
    if cmd == "nakayama":
        return cmd_nakayama(args)
    if cmd == "oracle-check":
        return cmd_oracle_check(args)
    raise ParseError(f"unknown command {cmd}")


def cmd_analyze(args):
    q, a = _load(args)
    gl = gldim(a, args.depth, args.seed)
    lines = [f"algebra over {a.field}: dim {a.dim}, vertices {a.vertices}"]
    cart = cartan_matrix(a)
    lines.append(f"cartan (rows = projectives): {cart}")
    projs = {}
    for v in range(a.num_vertices):
        p = projective_module(a, v)
        layers = radical_filtration(p)
        projs[a.vertices[v]] = layers
        lines.append(
            f"P_{a.vertices[v]}: dim {p.dim}, layers "
            + composition_diagram(layers, a.vertices)
        )
    lines.append(f"global dimension: {gl}")
    fp = fingerprint(a)
    lines.append(f"fingerprint: {fp}")
    report = {
        "dim": a.dim,
        "vertices": a.vertices,
        "cartan": cart,
        "projective_layers": projs,
        "gldim": gl.json(),
        "fingerprint": fp.json(),
        "seed": args.seed,
    }
    return report, "\n".join(lines) + "\n"


def cmd_recollements(args):
    q, a = _load(args)
    lines = []
    rows = []
    r = a.num_vertices
    for size in range(1, r):
        for verts in itertools.combinations(range(r), size):
            names = [a.vertices[v] for v in verts]
            st = stratifying_status(a, list(verts), args.depth, args.seed)
            row = {"idempotent": names, "stratifying": st.json()}
            lines.append(f"e = {names}: {st}")
            if st.certified:
                rec = build_recollement(a, list(verts), args.depth, args.seed)
                rec.seed = args.seed
                rr = restriction_report(rec, args.depth)
                lad = ladder_heights(rec, 2, args.depth)
                row.update({
                    "B": fingerprint(rec.b).json(),
                    "C": fingerprint(rec.c).json(),
                    "rank_additivity": rec.rank_additive,
                    "restriction": rr.json(),
                    "ladder": lad.json(),
                })
                lines.append(
                    "  factors: B "
                    + repr(fingerprint(rec.b))
                    + "  C "
                    + repr(fingerprint(rec.c))
                )
                lines.append(
                    "  restricts to: D-(Mod) %s | Db(Mod) %s | Db(mod) %s | Kb(proj) %s"
                    % tuple(render_tribool(t) for t in (
                        rr.dminus, rr.db_Mod, rr.db_mod, rr.kbproj))
                )
                lines.append(
                    f"  ladder: certified height {lad.certified_height()}, "
                    f"complete: {render_tribool(lad.complete)}"
                )
            rows.append(row)
    rep = simplicity_report(a, args.depth, seed=args.seed)
    lines.append(
        "simplicity: D(Mod) %s | D-(Mod) %s | Kb/Db %s"
        % (rep.d_mod.kind, rep.d_minus.kind, rep.kb_proj.kind)
    )
    report = {"idempotents": rows, "simplicity": rep.json(), "seed": args.seed}
    return report, "\n".join(lines) + "\n"


def cmd_stratify(args):
    q, a = _load(args)
    trees = stratification_trees(a, args.depth, args.recursion_limit, args.seed)
    verdict = jh_across(trees)
    lines = [f"{len(trees)} stratification tree(s)"]
    for i, t in enumerate(trees):
        leaves = ", ".join(
            f"(dim {l.fingerprint_.dim}, {'comm' if l.fingerprint_.commutative else 'noncomm'}, {l.tag})"
            for l in t.root.leaves()
        )
        lines.append(f"tree {i}: leaves {leaves}")
    lines.append(f"factor comparison: {verdict.kind} {verdict.reason}")
    dot = trees_to_dot(trees)
    report = {
        "trees": [t.json() for t in trees],
        "verdict": verdict.json(),
        "dot": dot,
        "seed": args.seed,
    }
    return report, "\n".join(lines) + "\n"


def cmd_exceptional(args):
    fld = _field_override(args) or GF(2)
    q = load_presentation(args.input, fld)
    a = build_algebra(q)
    cat = enumerate_exceptional(a, args.max_len, args.max_mult, args.seed)
    lines = [
        f"{len(cat.entries)} exceptional object(s) within caps "
        f"(len {args.max_len}, mult {args.max_mult}) over {a.field}"
    ]
    for e in cat.entries:
        lines.append(f"  {e.complex}  End: {e.end_fingerprint}")
    lines.append(f"note: {cat.note}")
    return {"catalog": cat.json(), "seed": args.seed}, "\n".join(lines) + "\n"


def cmd_hom(args):
    from .complexes import hom_dim, stalk_complex

    q, a = _load(args)
    xm = resolve_module_literal(a, args.x)
    ym = resolve_module_literal(a, args.y)
    # stalk complexes of projectives when possible, else resolve
    def as_complex(m, literal):
        from .resolutions import minimal_replacement

        rep = minimal_replacement({0: m}, {}, 4 * a.dim + 4, args.seed)
        if not isinstance(rep.status, Finite):
            raise RecolleError(
                f"{literal} has no finite resolution; Hom in K^b undefined"
            )
        return rep.proj_complex()

    x = as_complex(xm, args.x)
    y = as_complex(ym, args.y)
    space = hom_dim(x, y, args.n)
    text = f"dim Hom(K^b)({args.x}, {args.y}[{args.n}]) = {space.dim}\n"
    return {"dim": space.dim, "n": args.n, "x": args.x, "y": args.y,
            "seed": args.seed}, text


def cmd_nakayama(args):
    from .complexes import proj_stalk

    q, a = _load(args)
    if not args.x.startswith("P"):
        raise ParseError("nakayama input must be a projective literal like P2")
    from .quiverio import _vertex_index

    v = _vertex_index(a, args.x[1:])
    nu = nakayama(a, proj_stalk(a, v), args.depth, args.seed)
    text = f"nu({args.x}) = {nu}\n"
    return {"nakayama": nu.json(), "input": args.x, "seed": args.seed}, text


def cmd_oracle_check(args):
    """Agreement panel: Hom in K^b vs exhaustive enumeration over GF(2),
    Tor vs the truncated bar construction, dim vs path counting."""
    from .algebra import opposite
    from .complexes import hom_dim, proj_stalk, two_term_complex
    from .modules import quotient_algebra_as_right_module
    from .oracle import OracleReport

    q = load_presentation(args.input, _field_override(args))
    reports = []

    # dimension vs path counting (monomial presentations only)
    monomial = all(len(rel) == 1 for rel in q.relations)
    a = build_algebra(q)
    if monomial:
        reports.append(OracleReport("dim", "path basis", path_count(q), a.dim))

    # Hom agreement over GF(2)
    q2 = load_presentation(args.input, GF(2))
    a2 = build_algebra(q2)
    panel = [proj_stalk(a2, v) for v in range(a2.num_vertices)]
    rad = set(a2.radical_idx)
    for w in range(a2.num_vertices):
        for v in range(a2.num_vertices):
            entries = [i for i in a2.corner_indices(w, v) if i in rad]
            for i in entries[:1]:
                mults_s = [1 if u == v else 0 for u in range(a2.num_vertices)]
                mults_t = [1 if u == w else 0 for u in range(a2.num_vertices)]
                x = two_term_complex(a2, mults_s, mults_t, [[a2.basis_vec(i)]])
                if x.total_dim() <= 8:
                    panel.append(x)
    for x in panel:
        for y in panel:
            if x.total_dim() + y.total_dim() > 10:
                continue
            for n in range(-2, 3):
                main = hom_dim(x, y, n).dim
                try:
                    orc = hom_bruteforce(x, y, n)
                except RecolleError:
                    continue
                reports.append(OracleReport(
                    "hom", f"{x}!{y}!n={n}", orc, main))

    # Tor vs bar on the stratifying checks
    aop = opposite(a)
    r = a.num_vertices
    for size in range(1, r):
        for verts in itertools.combinations(range(r), size):
            bmod, _ = quotient_algebra_as_right_module(a, list(verts))
            bleft, _ = quotient_algebra_as_right_module(aop, list(verts))
            for i in range(0, 4):
                main = tor_dim(bmod, bleft, i, seed=args.seed)
                orc = bar_tor(bmod, bleft, i)
                reports.append(OracleReport(
                    "tor", f"B=A/Ae{[a.vertices[v] for v in verts]}A, i={i}",
                    orc, main))

    agree = all(r.agree for r in reports)
    lines = [f"{len(reports)} oracle comparisons, all agree: {agree}"]
    for r in reports:
        if not r.agree:
            lines.append(f"DISAGREEMENT {r.target} {r.instance}: "
                         f"oracle {r.oracle_value} vs main {r.main_value}")
    if not agree:
        raise InvariantViolation("oracle disagreement")
    return ({"comparisons": [r.json() for r in reports], "all_agree": agree,
             "seed": args.seed},
            "\n".join(lines) + "\n")


if __name__ == "__main__":
    sys.exit(main())
