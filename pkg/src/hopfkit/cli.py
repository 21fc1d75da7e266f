"""Command line interface.

One report per invocation, printed to stdout as a JSON object with
sorted keys, so identical inputs give byte-identical output.  Domain
failures (anything derived from HopfkitError) exit 2; file and parse
problems exit 1; both print {"error": <class name>, "detail": <text>}.
Reports that fall back on a default normalization constant carry
"normalized_constants": true.

The growth command can emit its table as CSV and render the log-plot
to an SVG file next to it; the SVG is written without timestamps and
with a fixed hash salt, so repeated runs agree byte for byte.

HOPFKIT_SEED is reserved; no command consumes randomness.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .complexes import Complex3
from .errors import HopfkitError, InvalidParams
from .estimates import TubeParams, milnor_thurston_degree_bound, tube_report
from .families import (STANDARD_SPEC, AnosovSpec, anosov_pairing,
                       example1_build, example2_build, growth_certificate)
from .filling import (chain_from_json_dict, chain_to_json_dict,
                      dual_curve_from_json_dict, dual_curve_to_json_dict,
                      fill_cycle_any, fill_cycle_min_l1,
                      filling_constant_bound, hopf_size_upper_bound)
from .homology import homology_summary
from .maps import (degree, hopf_invariant, linking_number, map_from_json_dict,
                   map_to_json_dict)

__all__ = ["main"]


def _num(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dump_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True)
        fh.write("\n")


def _load_complex(path) -> Complex3:
    return Complex3.from_json_dict(_load_json(path))


def _load_map(args):
    source = _load_complex(args.complex)
    data = _load_json(args.map)
    target = None
    if args.target is not None:
        target = _load_complex(args.target)
    elif "target" not in data:
        raise InvalidParams("map file embeds no target; pass --target")
    return map_from_json_dict(data, source, target)


def _parse_spec(text):
    if text is None:
        return STANDARD_SPEC
    parts = text.split(",")
    if len(parts) != 4:
        raise InvalidParams("spec must be four integers a,b,c,d")
    try:
        a, b, c, d = (int(p) for p in parts)
    except ValueError:
        raise InvalidParams("spec must be four integers a,b,c,d")
    return AnosovSpec(((a, b), (c, d)))


def _cmd_validate(args):
    c = _load_complex(args.complex)
    return {
        "ok": True,
        "vertices": c.vertex_count,
        "edges": len(c.edge_index),
        "triangles": c.n_triangles,
        "tetrahedra": c.n_tets,
        "closed_oriented": c.is_closed_oriented(),
    }


def _cmd_homology(args):
    return homology_summary(_load_complex(args.complex))


def _cmd_fill(args):
    c = _load_complex(args.complex)
    y = chain_from_json_dict(_load_json(args.cycle))
    if args.min_l1:
        z, norm = fill_cycle_min_l1(y, c)
    else:
        z = fill_cycle_any(y, c)
        norm = sum(abs(v) for v in z.coeffs.values())
    return {"filling": chain_to_json_dict(z), "l1_norm": _num(norm)}


def _cmd_hopf(args):
    return {"hopf": hopf_invariant(_load_map(args))}


def _cmd_degree(args):
    return {"degree": degree(_load_map(args))}


def _cmd_linking(args):
    c = _load_complex(args.complex)
    y1 = chain_from_json_dict(_load_json(args.cycle))
    y2 = dual_curve_from_json_dict(_load_json(args.curve))
    return {"linking": _num(linking_number(y1, y2, c))}


def _cmd_bounds(args):
    report = {}
    normalized = False
    if args.complex is not None:
        c = _load_complex(args.complex)
        fb = filling_constant_bound(c)
        report["filling"] = {
            "rank_r": fb.rank_r,
            "inverse_entry_bound_E": _num(fb.inverse_entry_bound_E),
            "inverse_entry_bound_E_squared": _num(fb.inverse_entry_bound_E_squared),
            "fill_ratio_bound": _num(fb.fill_ratio_bound),
        }
        report["hopf_size_upper_bound"] = _num(hopf_size_upper_bound(c))
    if args.N is not None or args.V is not None:
        if args.N is None or args.V is None:
            raise InvalidParams("the degree bound needs both --N and --V")
        C = args.C if args.C is not None else 1.0
        normalized = normalized or args.C is None
        report["milnor_thurston_degree_bound"] = \
            milnor_thurston_degree_bound(args.N, args.V, C)
    if not report:
        raise InvalidParams("nothing to bound: pass --complex or --N with --V")
    if normalized:
        report["normalized_constants"] = True
    return report


def _cmd_tube(args):
    normalized = args.c is None or args.C is None
    params = TubeParams(
        epsilon=args.epsilon,
        theta=args.theta,
        q=args.q,
        c=args.c if args.c is not None else 1.0,
        C=args.C if args.C is not None else 1.0,
        q_max=args.qmax,
    )
    report = tube_report(params).to_json_dict()
    if normalized:
        report["normalized_constants"] = True
    return report


def _cmd_family(args):
    spec = _parse_spec(args.spec)
    if args.example == 1:
        inst = example1_build(args.N, spec)
        manifest = {
            "N": inst.N,
            "predicted_linking": inst.predicted_linking,
            "tet_count": inst.complex.n_tets,
        }
        if args.out is not None:
            os.makedirs(args.out, exist_ok=True)
            _dump_json(os.path.join(args.out, "complex.json"),
                       inst.complex.to_json_dict())
            _dump_json(os.path.join(args.out, "tube1.json"),
                       chain_to_json_dict(inst.tube1))
            _dump_json(os.path.join(args.out, "tube2.json"),
                       dual_curve_to_json_dict(inst.tube2))
            _dump_json(os.path.join(args.out, "manifest.json"), manifest)
        return manifest
    M, f1, f2, f3 = example2_build(args.N, spec)
    manifest = {
        "N": args.N,
        "predicted_defect": 2 * anosov_pairing(spec, args.N),
        "tet_count": M.n_tets,
    }
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        _dump_json(os.path.join(args.out, "complex.json"), M.to_json_dict())
        for name, f in (("map1", f1), ("map2", f2), ("map3", f3)):
            _dump_json(os.path.join(args.out, name + ".json"),
                       map_to_json_dict(f, embed_target=True))
        _dump_json(os.path.join(args.out, "manifest.json"), manifest)
    return manifest


def _render_growth_svg(table, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "hopfkit"
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ns = list(range(1, len(table) + 1))
    ax.semilogy(ns, table, marker="o", color="#205080")
    ax.set_xlabel("N")
    ax.set_ylabel("pairing")
    ax.set_title("tube linking growth")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _cmd_growth(args):
    spec = _parse_spec(args.spec)
    c_estimate, table = growth_certificate(spec, args.N_max)
    if args.svg is not None:
        _render_growth_svg(table, args.svg)
    if args.format == "csv":
        lines = ["N,pairing"]
        lines += ["%d,%d" % (n + 1, v) for n, v in enumerate(table)]
        sys.stdout.write("\n".join(lines) + "\n")
        return None
    return {"c_estimate": _num(c_estimate), "table": table}


def _add_map_args(p):
    p.add_argument("--complex", required=True, metavar="PATH",
                   help="source complex file")
    p.add_argument("--map", required=True, metavar="PATH",
                   help="map file (vertex_map, optional embedded target)")
    p.add_argument("--target", metavar="PATH",
                   help="target complex file, overriding any embedded one")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hopfkit",
        description="Hopf invariants, fillings, and linking bounds "
                    "for oriented simplicial 3-complexes.",
        epilog="HOPFKIT_SEED is reserved; no command consumes randomness.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("validate", help="check a complex file, summarize cells")
    p.add_argument("--complex", required=True, metavar="PATH")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("homology", help="Betti numbers and H1 torsion")
    p.add_argument("--complex", required=True, metavar="PATH")
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser("fill", help="fill a null-homologous 1-cycle")
    p.add_argument("--complex", required=True, metavar="PATH")
    p.add_argument("--cycle", required=True, metavar="PATH")
    p.add_argument("--min-l1", action="store_true", dest="min_l1",
                   help="certified minimum-L1 filling instead of any filling")
    p.set_defaults(handler=_cmd_fill)

    p = sub.add_parser("hopf", help="Hopf invariant of a simplicial map")
    _add_map_args(p)
    p.set_defaults(handler=_cmd_hopf)

    p = sub.add_parser("degree", help="degree of a simplicial map")
    _add_map_args(p)
    p.set_defaults(handler=_cmd_degree)

    p = sub.add_parser("linking", help="linking of a cycle with a dual curve")
    p.add_argument("--complex", required=True, metavar="PATH")
    p.add_argument("--cycle", required=True, metavar="PATH")
    p.add_argument("--curve", required=True, metavar="PATH")
    p.set_defaults(handler=_cmd_linking)

    p = sub.add_parser("bounds",
                       help="filling constants, Hopf size, degree bound")
    p.add_argument("--complex", metavar="PATH")
    p.add_argument("--N", type=int, help="simplex count for the degree bound")
    p.add_argument("--V", type=float, help="volume for the degree bound")
    p.add_argument("--C", type=float, help="degree bound constant (default 1)")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("tube", help="short-geodesic tube trichotomy report")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--q", type=int)
    p.add_argument("--qmax", type=int, default=1000)
    p.add_argument("--c", type=float, help="lower constant (default 1)")
    p.add_argument("--C", type=float, help="upper constant (default 1)")
    p.set_defaults(handler=_cmd_tube)

    p = sub.add_parser("family", help="build a family member")
    p.add_argument("--example", type=int, choices=(1, 2), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--spec", metavar="a,b,c,d",
                   help="matrix rows (default 2,1,1,1)")
    p.add_argument("--out", metavar="DIR",
                   help="write complex, tubes or maps, and manifest here")
    p.set_defaults(handler=_cmd_family)

    p = sub.add_parser("growth", help="pairing growth certificate")
    p.add_argument("--N-max", type=int, required=True, dest="N_max")
    p.add_argument("--spec", metavar="a,b,c,d",
                   help="matrix rows (default 2,1,1,1)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--svg", metavar="PATH",
                   help="render the log-plot to this file")
    p.set_defaults(handler=_cmd_growth)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return 1
    try:
        report = args.handler(args)
    except HopfkitError as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)},
                         sort_keys=True))
        return 2
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)},
                         sort_keys=True))
        return 1
    if report is not None:
        print(json.dumps(report, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
