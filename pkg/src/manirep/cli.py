"""Batch command-line interface; one JSON document per invocation.

Verbs: ``dims`` (one Weyl dimension), ``irreps`` (bounded enumeration),
``classify`` (admissibility of one target or a full sweep), ``stabilizer``
(structured stabilizer of a matrix file), ``embed`` (one point of a
manifold realization), ``verify`` (equivariance residuals), ``cartan``
(symmetric-space comparison), ``census`` (per-group summary report).

Output is a single JSON document on stdout (``--pretty`` only adds
whitespace); the seed comes from ``--seed`` or MANIREP_SEED.  Exit codes:
0 success, 1 domain error (reported as an ``error`` object), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import classify as C
from . import embeddings as E
from . import groups as G
from . import weyl
from .errors import ManirepError
from .numkit import Mat
from .stabilizers import (
    stabilizer_congruence_skew,
    stabilizer_congruence_sym,
    stabilizer_left_mult,
    stabilizer_similarity,
)


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t != "")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t != "")


def _read_matrix(path: str) -> np.ndarray:
    with open(path) as fh:
        return Mat.from_json(json.load(fh)).to_array()


def _group_from_args(args) -> G.GroupDescriptor:
    fam = args.group
    if fam == "SL":
        return G.sl(args.n, args.field)
    if fam == "SO":
        return G.so(args.n, args.field)
    if fam == "Sp":
        return G.sp(args.n, args.field)
    if fam == "SU":
        return G.su(args.n)
    if fam == "SOpq":
        p, q = _ints(args.signature)
        return G.so_pq(p, q)
    if fam == "SpCompact":
        return G.sp_compact(args.n)
    raise ManirepError(f"unknown group family {fam!r}")


def _manifold_from_args(args) -> E.ManifoldDescriptor:
    return E.ManifoldDescriptor(
        family=args.manifold,
        n=args.n,
        k=args.k,
        ks=_ints(args.ks) if args.ks else None,
        p=args.p,
        pq=_ints(args.pq) if args.pq else None,
        sizes=_ints(args.sizes) if args.sizes else None,
        field=args.field,
        spectrum=_floats(args.spectrum) if args.spectrum else None,
    )


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MANIREP_SEED")
    return int(env) if env else 0


def cmd_dims(args) -> dict:
    w = weyl.HighestWeight(args.algebra, args.n, _ints(args.kappa))
    return {"dim": str(weyl.weyl_dim(w))}


def cmd_irreps(args) -> dict:
    found = weyl.enumerate_irreps_below(args.algebra, args.n, args.bound)
    return {
        "algebra": args.algebra,
        "n": args.n,
        "bound": str(args.bound),
        "irreps": [w.to_json() for w, _ in found],
    }


def cmd_classify(args) -> dict:
    g = _group_from_args(args)
    if args.enumerate:
        reports = C.enumerate_admissible(g)
        return {"group": g.to_json(), "admissible": [r.to_json() for r in reports]}
    if args.multiplicities is None:
        raise ManirepError("either --enumerate or --multiplicities is required")
    rep = C.admissible(C.TargetSpec(g, _ints(args.multiplicities)))
    return rep.to_json()


def cmd_stabilizer(args) -> dict:
    X = _read_matrix(args.matrix)
    if args.action == "left-mult":
        return stabilizer_left_mult(X).to_json()
    if args.action == "congruence-skew":
        return stabilizer_congruence_skew(X).to_json()
    if args.action == "congruence-sym":
        return stabilizer_congruence_sym(X).to_json()
    if args.action == "similarity":
        return stabilizer_similarity(X, args.mode).to_json()
    raise ManirepError(f"unknown action {args.action!r}")


def cmd_embed(args) -> dict:
    md = _manifold_from_args(args)
    if args.element:
        g = _read_matrix(args.element)
        return E.embed(md, g).to_json()
    return E.base_point(md).to_json()


def cmd_verify(args) -> dict:
    seed = _seed(args)
    if args.manifold == "all":
        results = []
        for md in E.all_smallest_legal():
            r = E.check_equivariance(md, args.trials, seed)
            results.append(
                {"manifold": md.to_json(), "residual": r, "trials": args.trials, "seed": seed}
            )
        return {"results": results, "max_residual": max(r["residual"] for r in results)}
    md = _manifold_from_args(args)
    r = E.check_equivariance(md, args.trials, seed)
    return {"manifold": md.to_json(), "residual": r, "trials": args.trials, "seed": seed}


def cmd_cartan(args) -> dict:
    rep = E.cartan_compare(args.type, args.n, args.k, trials=args.trials, seed=_seed(args))
    return rep.to_json()


def cmd_census(args) -> dict:
    g = _group_from_args(args)
    fam = C.classification_family(g)
    out = {"group": g.to_json(), "targets": []}
    for rep in C.enumerate_admissible(g):
        entry = rep.to_json()
        mods = rep.modules
        if mods:
            witnesses = [C.canonical_witness(m) for m in mods]
            form = C.stabilizer_form(rep.spec, witnesses)
            entry["canonical_h_dim"] = form.h_dim
        else:
            entry["canonical_h_dim"] = G.group_dim(g)
        out["targets"].append(entry)
    if fam in ("SL", "SO", "Sp"):
        algebra = {"SL": "SL", "SO": "SO", "Sp": "SP"}[fam]
        n = g.n if fam != "Sp" else g.n // 2
        cat = weyl.low_dim_classification(algebra, n)
        out["low_dim_modules"] = [m.to_json() for m in cat.modules]
        out["low_dim_advisory"] = cat.advisory
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="manirep", description=__doc__)
    ap.add_argument("--pretty", action="store_true", help="indent the JSON output")
    ap.add_argument("--out", help="write the JSON document to this file instead of stdout")
    # the same flags are accepted after the verb; SUPPRESS keeps the
    # subparser from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("dims", parents=[common], help="Weyl dimension of one highest weight")
    p.add_argument("--algebra", required=True, choices=["SL", "SO", "SP"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", required=True)
    p.set_defaults(fn=cmd_dims)

    p = sub.add_parser("irreps", parents=[common], help="all irreducibles below a dimension bound")
    p.add_argument("--algebra", required=True, choices=["SL", "SO", "SP"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=cmd_irreps)

    p = sub.add_parser("classify", parents=[common], help="admissible faithful targets of a group")
    p.add_argument("--group", required=True,
                   choices=["SL", "SO", "Sp", "SU", "SOpq", "SpCompact"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="R", choices=["R", "C"])
    p.add_argument("--signature", help="p,q for SOpq")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--multiplicities", help="comma-separated multiplicity tuple")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("stabilizer", parents=[common], help="structured stabilizer of a matrix")
    p.add_argument("--action", required=True,
                   choices=["left-mult", "congruence-skew", "congruence-sym", "similarity"])
    p.add_argument("--matrix", required=True, help="path to a matrix JSON file")
    p.add_argument("--mode", default="exact", choices=["exact", "numeric"])
    p.set_defaults(fn=cmd_stabilizer)

    def add_manifold_flags(p):
        p.add_argument("--manifold", required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int)
        p.add_argument("--ks", help="flag sizes, e.g. 1,2")
        p.add_argument("--p", type=int, help="odd part for ifl-odd")
        p.add_argument("--pq", help="plane type for gr-indefinite, e.g. 1,1")
        p.add_argument("--sizes", help="ambient split for gr-indefinite, e.g. 2,3")
        p.add_argument("--field", choices=["R", "C"])
        p.add_argument("--spectrum", help="override spectral values, e.g. 7,-2")

    p = sub.add_parser("embed", parents=[common], help="a point of a manifold realization")
    add_manifold_flags(p)
    p.add_argument("--element", help="path to a group-element JSON file")
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("verify", parents=[common], help="equivariance residuals")
    p.add_argument("--manifold", required=True, help="a family name or 'all'")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--k", type=int)
    p.add_argument("--ks")
    p.add_argument("--p", type=int)
    p.add_argument("--pq")
    p.add_argument("--sizes")
    p.add_argument("--field", choices=["R", "C"])
    p.add_argument("--spectrum")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("cartan", parents=[common], help="Cartan embedding vs minimal realization")
    p.add_argument("--type", required=True, choices=list(E.CARTAN_TYPES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_cartan)

    p = sub.add_parser("census", parents=[common], help="admissible-target summary for a group")
    p.add_argument("--group", required=True,
                   choices=["SL", "SO", "Sp", "SU", "SOpq", "SpCompact"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="R", choices=["R", "C"])
    p.add_argument("--signature")
    p.set_defaults(fn=cmd_census)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        payload = args.fn(args)
        code = 0
    except ManirepError as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = 1
    text = json.dumps(payload, sort_keys=True, indent=2 if args.pretty else None,
                      separators=None if args.pretty else (",", ":"))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
