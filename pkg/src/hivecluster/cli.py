"""Command-line interface for the hive cluster toolkit.

All machine output is JSON unless --plain.  Exit codes: 0 success, 1 a
verification failed (a witness is printed), 2 usage error.  Randomized
subcommands echo their seed so runs are reproducible.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .cones import UnboundedError, extremal_rays, lattice_points
from .hive import (
    build_delta,
    build_sigma,
    text_to_weight,
    weight_to_text,
)
from .lr import (
    g_cone,
    g_polytope,
    lr_coeff,
    pair_weight,
    partitions_to_wt,
    to_dict,
    vertex_order,
    weight_cone_rays,
    wt_to_partitions,
)
from .quiver import IceQuiver
from .schofield import check_exchange, exchange_sign, independence_rank
from .seeds import (
    enumerate_cluster_variables,
    initial_seed,
    laurent_to_text,
)
from .hive import delta_vertices


def _parse_seq(text: str) -> list[tuple]:
    pairs = re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", text)
    if not pairs and text.strip():
        raise ValueError(f"cannot parse mutation sequence {text!r}")
    return [(int(a), int(b)) for a, b in pairs]


def _parse_partition(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _emit(args, payload: dict, plain_lines):
    quiver_for_figure = payload.pop("_figure_quiver", None)
    if getattr(args, "plain", False):
        text = "\n".join(plain_lines)
    else:
        text = json.dumps(payload, indent=2)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text + "\n")
        if quiver_for_figure is not None:
            draw_quiver(quiver_for_figure, Path(out).with_suffix(".png"))
    else:
        print(text)


def draw_quiver(q: IceQuiver, path) -> None:
    """Render the quiver on the triangular grid to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 6))

    def pos(v):
        i, j = v
        return (j + i / 2, i * (3**0.5) / 2)

    for (t, h), m in q.arrows.items():
        (x1, y1), (x2, y2) = pos(t), pos(h)
        ax.annotate(
            "",
            xy=(x2 + 0.18 * (x1 - x2), y2 + 0.18 * (y1 - y2)),
            xytext=(x1 + 0.18 * (x2 - x1), y1 + 0.18 * (y2 - y1)),
            arrowprops={"arrowstyle": "-|>", "lw": 1.2 * m, "color": "tab:gray"},
        )
    for v in q.vertices:
        x, y = pos(v)
        frozen = v in q.frozen
        marker = "s" if frozen else "o"
        color = "tab:blue" if frozen else "tab:red"
        ax.scatter([x], [y], marker=marker, s=320, color="white", edgecolors=color, zorder=3)
        ax.text(x, y, f"{v[0]},{v[1]}", ha="center", va="center", fontsize=7, zorder=4)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


# -- subcommands ---------------------------------------------------------------


def cmd_quiver(args) -> int:
    q = build_delta(args.n)
    payload = {
        "n": args.n,
        "quiver": q.to_dict(),
        "vertices": len(q.vertices),
        "mutable": len(q.mutable),
        "dynkin_mutable_part": q.dynkin_type(),
        "_figure_quiver": q,
    }
    lines = [f"{v[0]},{v[1]}\t{'frozen' if v in q.frozen else 'mutable'}" for v in q.vertices]
    if args.figure:
        draw_quiver(q, args.figure)
    _emit(args, payload, lines)
    return 0


def cmd_mutate(args) -> int:
    q = build_delta(args.n)
    sigma = build_sigma(args.n)
    seq = _parse_seq(args.seq)
    for v in seq:
        if v not in set(q.vertices):
            raise ValueError(f"vertex {v} not in the quiver")
        if v in q.frozen:
            raise ValueError(f"vertex {v} is frozen")
        sigma = q.mutate_weight(sigma, v)
        q = q.mutate(v)
    payload = {
        "n": args.n,
        "seq": [list(v) for v in seq],
        "quiver": q.to_dict(),
        "dynkin_mutable_part": q.dynkin_type(),
        "weights": {f"{v[0]},{v[1]}": weight_to_text(sigma[v]) for v in q.vertices},
        "b_matrix": q.b_matrix(),
        "_figure_quiver": q,
    }
    if args.show == "mutable-part":
        lines = [q.dynkin_type() or "not Dynkin"]
    elif args.show == "weights":
        lines = [f"{v[0]},{v[1]}\t{weight_to_text(sigma[v])}" for v in q.vertices]
    elif args.show == "b-matrix":
        lines = ["\t".join(str(x) for x in row) for row in q.b_matrix()]
    else:
        lines = [q.dynkin_type() or "not Dynkin"]
    if args.figure:
        draw_quiver(q, args.figure)
    _emit(args, payload, lines)
    return 0


def cmd_cluster_vars(args) -> int:
    q = build_delta(args.n)
    seed = initial_seed(q, build_sigma(args.n))
    res = enumerate_cluster_variables(seed, budget=args.budget)
    verts = q.vertices
    payload = {
        "n": args.n,
        "count": len(res.variables),
        "clusters": res.cluster_count,
        "complete": res.complete,
        "variables": [
            {
                "laurent": laurent_to_text(r.expression, verts),
                "g_vector": {f"{v[0]},{v[1]}": g for v, g in zip(verts, r.g_vector) if g},
                "weight": weight_to_text(r.weight),
            }
            for r in res.variables
        ],
    }
    lines = [f"{len(res.variables)}\t{res.cluster_count}\t{'complete' if res.complete else 'budget-exhausted'}"]
    lines += [laurent_to_text(r.expression, verts) for r in res.variables]
    _emit(args, payload, lines)
    return 0 if res.complete else 1


def cmd_lr(args) -> int:
    lam = _parse_partition(args.lam)
    mu = _parse_partition(args.mu)
    nu = _parse_partition(args.nu)
    n = args.n or max(len(lam), len(mu), len(nu)) + 1
    methods = ["triangles", "gcone", "tableaux"] if args.method == "all" else [args.method]
    values = {m: lr_coeff(lam, mu, nu, n, method=m) for m in methods}
    payload = {"lambda": list(lam), "mu": list(mu), "nu": list(nu), "n": n, **values}
    lines = [" ".join(str(values[m]) for m in methods)]
    _emit(args, payload, lines)
    if len(set(values.values())) > 1:
        print(f"method disagreement: {values}", file=sys.stderr)
        return 1
    return 0


def cmd_cone(args) -> int:
    if not args.rays:
        raise ValueError("nothing to do: pass --rays")
    if args.what == "g":
        rays = extremal_rays(g_cone(args.n))
        order = vertex_order(args.n)
        payload = {
            "n": args.n,
            "cone": "g",
            "count": len(rays),
            "rays": [to_dict(r, args.n) for r in rays],
        }
        lines = ["\t".join(str(x) for x in r) for r in rays]
    else:
        rays = weight_cone_rays(args.n)
        payload = {
            "n": args.n,
            "cone": "weight",
            "count": len(rays),
            "rays": [weight_to_text(r) for r in rays],
        }
        lines = ["\t".join(str(x) for x in r) for r in rays]
    _emit(args, payload, lines)
    return 0


def cmd_polytope(args) -> int:
    sigma = text_to_weight(args.sigma)
    try:
        points = lattice_points(g_polytope(args.n, sigma))
    except UnboundedError as exc:
        print(f"polytope unbounded in direction {exc.args[0]}", file=sys.stderr)
        return 1
    payload = {"n": args.n, "sigma": args.sigma, "count": len(points)}
    lines = [str(len(points))]
    if args.list:
        payload["points"] = [to_dict(p, args.n) for p in points]
        lines = ["\t".join(str(x) for x in p) for p in points]
    _emit(args, payload, lines)
    return 0


def cmd_schofield(args) -> int:
    if args.check == "exchange":
        failures = []
        for (i, j) in delta_vertices(args.n):
            from .hive import is_frozen

            if is_frozen((i, j), args.n):
                continue
            if not check_exchange(args.n, i, j, trials=args.trials, seed=args.seed):
                failures.append((i, j))
        payload = {
            "n": args.n,
            "check": "exchange",
            "seed": args.seed,
            "trials": args.trials,
            "sign": exchange_sign(args.n),
            "passed": not failures,
            "failures": [list(v) for v in failures],
        }
        lines = [f"seed={args.seed}", "pass" if not failures else f"FAIL at {failures}"]
        _emit(args, payload, lines)
        return 0 if not failures else 1
    rank_value = independence_rank(args.n, seed=args.seed)
    expected = len(delta_vertices(args.n))
    payload = {
        "n": args.n,
        "check": "independence",
        "seed": args.seed,
        "rank": rank_value,
        "expected": expected,
        "passed": rank_value == expected,
    }
    lines = [f"seed={args.seed}", f"rank {rank_value} / {expected}"]
    _emit(args, payload, lines)
    return 0 if rank_value == expected else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(state_dir=args.state_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hivecluster")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, figure=False):
        sp.add_argument("--plain", action="store_true", help="delimited text instead of JSON")
        sp.add_argument("--out", help="write output to this file (a .png figure is rendered alongside when the command draws)")
        if figure:
            sp.add_argument("--figure", help="render the quiver figure to this path")

    sp = sub.add_parser("quiver", help="build the hive quiver")
    sp.add_argument("--n", type=int, required=True)
    common(sp, figure=True)
    sp.set_defaults(fn=cmd_quiver)

    sp = sub.add_parser("mutate", help="mutate the hive quiver along a sequence")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seq", required=True, help='e.g. "(1,3),(2,1),(1,1),(1,2)"')
    sp.add_argument("--show", choices=["mutable-part", "weights", "b-matrix"], default="mutable-part")
    common(sp, figure=True)
    sp.set_defaults(fn=cmd_mutate)

    sp = sub.add_parser("cluster-vars", help="enumerate cluster variables by seed BFS")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=100000)
    common(sp)
    sp.set_defaults(fn=cmd_cluster_vars)

    sp = sub.add_parser("lr", help="Littlewood-Richardson coefficient")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--method", choices=["triangles", "gcone", "tableaux", "all"], default="all")
    sp.add_argument("--n", type=int)
    common(sp)
    sp.set_defaults(fn=cmd_lr)

    sp = sub.add_parser("cone", help="extremal rays of the g-vector or weight cone")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--what", choices=["g", "weight"], required=True)
    sp.add_argument("--rays", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_cone)

    sp = sub.add_parser("polytope", help="lattice points of a g-vector weight slice")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sigma", required=True, help='weight "a1,..;b1,..;c1,..;z"')
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--count", action="store_true")
    group.add_argument("--list", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_polytope)

    sp = sub.add_parser("schofield", help="semi-invariant identity checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--check", choices=["exchange", "independence"], required=True)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_schofield)

    sp = sub.add_parser("serve", help="run the explorer HTTP service")
    sp.add_argument("--port", type=int, default=8000)
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--state-dir", default=None)
    sp.set_defaults(fn=cmd_serve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
