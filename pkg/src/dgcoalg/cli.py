"""Command-line entry point: ``dgcoalg <command> [flags]``.

Every command prints one JSON report (sorted keys, stable order).  The exit
code is 0 when all verifications pass, 1 when one fails and 2 for malformed
input or a computation that cannot be carried out in the given truncation.
Defaults for the global flags may come from a JSON file named by the
``DGCOALG_CONFIG`` environment variable; command-line flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import io
from .chain_complex import ChainComplex, GradedVectorSpace, LinearMap, homology, label_str, unit_complex
from .coalgebra import (LiftError, lift_cell_structure, perturb_ainfty,
                        random_lift_instance, verify_ainfty, verify_pcoalgebra)
from .field import Field
from .operad import Report
from .simplicial import SimplicialSet

CONFIG_ENV = "DGCOALG_CONFIG"
DEFAULTS = {"field": "2", "max_arity": 3, "deg_min": None, "deg_max": None, "seed": 0}


@dataclass
class RunConfig:
    field: Field
    max_arity: int
    deg_min: int | None
    deg_max: int | None
    seed: int
    out: str | None

    @property
    def window(self) -> tuple | None:
        if self.deg_min is None and self.deg_max is None:
            return None
        if self.deg_min is None or self.deg_max is None:
            raise io.FormatError("flags", "--deg-min and --deg-max must be given together")
        return (self.deg_min, self.deg_max)


def load_config_defaults() -> dict:
    out = dict(DEFAULTS)
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return out
    data = io.load_json(path)
    if not isinstance(data, dict):
        raise io.FormatError(path, "config must be a JSON object")
    for k, v in data.items():
        key = k.replace("-", "_")
        if key not in DEFAULTS:
            raise io.FormatError(f"{path}.{k}", "unknown config key")
        out[key] = v
    return out


def make_config(args) -> RunConfig:
    cfg = RunConfig(io.parse_field(args.field), int(args.max_arity),
                    None if args.deg_min is None else int(args.deg_min),
                    None if args.deg_max is None else int(args.deg_max), int(args.seed), args.out)
    if cfg.max_arity < 1:
        raise io.FormatError("flags", "--max-arity must be positive")
    if cfg.deg_min is not None and cfg.deg_max is not None and cfg.deg_min > cfg.deg_max:
        raise io.FormatError("flags", "--deg-min exceeds --deg-max")
    return cfg


# ---------------------------------------------------------------------------
# input helpers


def _load(arg: str):
    """A file path, ``builtin:NAME``, an inline JSON document or a bare spec string."""
    if os.path.exists(arg) or arg.startswith("builtin:"):
        return io.load_json(arg)
    s = arg.strip()
    if s[:1] in "{[":
        try:
            return json.loads(s)
        except json.JSONDecodeError as e:
            raise io.FormatError(f"argument:{e.colno}", e.msg) from None
    if s.endswith(".json"):
        raise io.FormatError(arg, "file not found")
    return s


def _space_or_complex(data, F: Field):
    if isinstance(data, dict) and "basis" in data:
        return io.complex_from_json(data, field=F if "field" not in data else None)
    return io.simplicial_from_json(data)


def _sequence(data, F: Field):
    if isinstance(data, str):
        return io.parse_sequence_spec(data, F)
    return io.sequence_from_json(data)


def _presentation(data, F: Field):
    from .trees import empty_presentation
    if isinstance(data, str):
        if data in ("unit", "I"):
            return empty_presentation(F)
        return io.parse_presentation_spec(data, F)
    return io.presentation_from_json(data, field=F if "field" not in data else None)


def _complex(data, F: Field) -> ChainComplex:
    if data in ("unit", "k"):
        return unit_complex(F)
    if isinstance(data, str):
        raise io.FormatError("complex", f"unknown complex spec {data!r}")
    return io.complex_from_json(data, field=F if "field" not in data else None)


def _vec_json(v: dict) -> dict:
    return {label_str(k): io.scalar_to_json(c) for k, c in sorted(v.items(), key=lambda kv: label_str(kv[0]))}


# ---------------------------------------------------------------------------
# commands; each returns (report dict, passed)


def cmd_homology(args, cfg: RunConfig):
    X = _space_or_complex(_load(args.input), cfg.field)
    if isinstance(X, SimplicialSet):
        from .simplicial import normalized_chains
        C = normalized_chains(X, cfg.field)
    else:
        C = X
    H = homology(C)
    reps = {str(d): [_vec_json(H.representatives[h]) for h in H.space.basis.get(d, [])]
            for d in sorted(H.space.basis)}
    betti = {str(d): b for d, b in sorted(H.betti().items()) if b}
    return {"command": "homology", "field": C.field.to_json(), "betti": betti,
            "representatives": reps, "status": "pass"}, True


def cmd_e_structure(args, cfg: RunConfig):
    from .barratt_eccles import e_coalgebra_structure
    X = io.simplicial_from_json(_load(args.input))
    arity = args.arity if args.arity is not None else cfg.max_arity
    deg = args.deg if args.deg is not None else (cfg.deg_max if cfg.deg_max is not None else 4)
    S = e_coalgebra_structure(X, cfg.field, arity, deg)
    R = verify_pcoalgebra(S, max_arity=arity)
    return {"command": "e-structure", "space": X.name, "field": cfg.field.to_json(),
            "truncation": {"max_arity": arity, "max_deg": deg},
            "tables": io.structure_table_to_json(S, arity), "verification": R.to_json(),
            "status": R.status}, R.passed


def _cocycle_arg(arg: str, X: SimplicialSet, H) -> dict:
    s = arg.strip()
    if s[:1] == "{" or os.path.exists(s):
        data = _load(s)
        if not isinstance(data, dict):
            raise io.FormatError("class", "expected an object {simplex: coefficient}")
        return {k: int(v) % 2 for k, v in data.items() if int(v) % 2}
    bits = s.split(":")
    try:
        q, j = int(bits[0]), int(bits[1]) if len(bits) > 1 else 0
    except ValueError:
        raise io.FormatError("class", f"expected q:j, a JSON cochain or a file, got {arg!r}") from None
    gens = H.generators(q)
    if not 0 <= j < len(gens):
        raise io.FormatError("class", f"H^{q} has {len(gens)} generators")
    return gens[j]


def cmd_steenrod(args, cfg: RunConfig):
    from .field import F2
    from .steenrod import cohomology, cup, steenrod_square, structure
    X = io.simplicial_from_json(_load(args.input))
    H = cohomology(X, F2)
    x = _cocycle_arg(args.cls, X, H)
    S = structure(X, F2)
    res = steenrod_square(X, args.i, x, S=S, H=H)
    R = Report("Steenrod square")
    if args.i == res.degree - args.i and x:
        # top square is the cup square
        R.record("top square equals cup square", res.cochain == cup(S, x, x))
    out = {"command": "steenrod", "space": X.name, "input": _vec_json(x), "square": res.to_json(),
           "verification": R.to_json(), "status": R.status}
    return out, R.passed


def cmd_verify_coalgebra(args, cfg: RunConfig):
    data = _load(args.input)
    if not isinstance(data, dict):
        raise io.FormatError("coalgebra", "expected a coalgebra object")
    if args.operad:
        data = dict(data)
        data["presentation"] = _load(args.operad)
    C = io.cell_coalgebra_from_json(data)
    R = C.generator_report()
    R.name = "coalgebra"
    if R.passed:
        S = C.as_pcoalgebra(cfg.max_arity, cfg.window)
        R.merge(verify_pcoalgebra(S, max_arity=cfg.max_arity))
    return {"command": "verify-coalgebra", "truncation": {"max_arity": cfg.max_arity,
                                                          "window": _win(cfg.window)},
            "verification": R.to_json(), "status": R.status}, R.passed


def cmd_verify_ainfty(args, cfg: RunConfig):
    data = _load(args.input)
    A = io.parse_ainfty_spec(data, cfg.field) if isinstance(data, str) else io.ainfty_from_json(data)
    out = {"command": "verify-ainfty", "n": args.n}
    if args.perturb:
        A, (n, key, c) = perturb_ainfty(A, cfg.seed, args.n, involving=args.involving)
        out["perturbation"] = {"seed": cfg.seed, "arity": n, "term": label_str(key),
                               "coeff": io.scalar_to_json(c)}
        out["coalgebra"] = io.ainfty_to_json(A)
    R = verify_ainfty(A, args.n)
    out.update({"verification": R.to_json(), "status": R.status})
    return out, R.passed


def cmd_free_operad(args, cfg: RunConfig):
    from .trees import FreeOperad, QuasiFreePresentation, _dec_name, tree_to_planar
    data = _load(args.generators)
    arity = args.arity if args.arity is not None else cfg.max_arity
    if args.presentation or (isinstance(data, dict) and "generators" in data) or \
            (isinstance(data, str) and data.startswith("ainfty")):
        P = _presentation(data, cfg.field)
        T = P.realize(arity, cfg.window, check=False)
        namer = _dec_name
    else:
        M = _sequence(data, cfg.field)
        T = FreeOperad(M, arity, cfg.window)
        namer = None
    R = T.check_d_squared()
    dims, basis = {}, {}
    for n in range(1, arity + 1):
        dims[str(n)] = {str(d): k for d, k in sorted(T.dims(n).items()) if k}
        basis[str(n)] = [{"degree": T.degree_of(n, t), "tree": tree_to_planar(t, namer)}
                         for t in T.all_basis(n)]
    return {"command": "free-operad", "truncation": {"max_arity": arity, "window": _win(cfg.window)},
            "dims": dims, "basis": basis, "verification": R.to_json(), "status": R.status}, R.passed


def cmd_compose_product(args, cfg: RunConfig):
    from .symmetric_sequence import compose_product
    M = _sequence(_load(args.left), cfg.field)
    N = _sequence(_load(args.right), cfg.field)
    MN = compose_product(M, N, cfg.max_arity, cfg.window)
    R = Report("composition product")
    bad = MN.check()
    R.record("symmetric sequence", not bad, bad[:5])
    dims = {str(n): {str(d): k for d, k in sorted(MN.dims(n).items()) if k}
            for n in range(cfg.max_arity + 1)}
    return {"command": "compose-product", "truncation": {"max_arity": cfg.max_arity,
                                                         "window": _win(cfg.window)},
            "dims": dims, "verification": R.to_json(), "status": R.status}, R.passed


def cmd_cofree(args, cfg: RunConfig):
    from .dual_schur import cofree_coalgebra
    P = _presentation(_load(args.operad), cfg.field)
    V = _complex(_load(args.carrier), cfg.field)
    window = cfg.window
    if args.window:
        window = _parse_window(args.window)
    if window is None:
        raise io.FormatError("flags", "cofree needs a degree window (--window lo:hi or --deg-min/--deg-max)")
    op_window = _parse_window(args.operad_window) if args.operad_window else (0, window[1] - window[0])
    T = P.realize(cfg.max_arity, op_window, check=False)
    res = cofree_coalgebra(T, V, cfg.max_arity, window)
    R = verify_pcoalgebra(res.structure, max_arity=cfg.max_arity)
    counit = {label_str(k): _vec_json(v) for k, v in sorted((res.counit or {}).items(),
                                                           key=lambda kv: label_str(kv[0]))}
    return {"command": "cofree", "complex": io.complex_to_json(res.complex),
            "provenance": res.provenance, "counit": counit,
            "verification": R.to_json(), "status": R.status}, R.passed


def cmd_attach_cell(args, cfg: RunConfig):
    P = _presentation(_load(args.presentation), cfg.field)
    cell = _load(args.cell)
    if not isinstance(cell, dict):
        raise io.FormatError("cell", "expected a cell object")
    P2 = io.attach_from_json(P, cell)
    T = P2.realize(cfg.max_arity, cfg.window, check=False)
    R = T.check_d_squared()
    return {"command": "attach-cell", "presentation": io.presentation_to_json(P2),
            "verification": R.to_json(), "status": R.status}, R.passed


def cmd_lift(args, cfg: RunConfig):
    if args.input == "random":
        W, V, dVx, f = random_lift_instance(cfg.seed, cfg.field, args.p, args.k)
        p, k = args.p, args.k
    else:
        data = _load(args.input)
        if not isinstance(data, dict):
            raise io.FormatError("lift", "expected an object with W, V, f, delta_Vx")
        W = io.cell_coalgebra_from_json(io._need(data, "W", "lift"), "lift.W")
        V = _complex(io._need(data, "V", "lift"), W.field)
        f = io.map_from_json(W.field, io._need(data, "f", "lift"), W.carrier, V)
        g = W.presentation.generator("y")
        p, k = g["arity"], g["degree"]
        dVx = io.coop_from_json(W.field, io._need(data, "delta_Vx", "lift"), V, p, "lift.delta_Vx")
    res = lift_cell_structure(W, V, dVx, f, p, k)
    R = res.report
    R.merge(verify_pcoalgebra(res.structure.as_pcoalgebra(), max_arity=max(p, 2)))
    return {"command": "lift", "structure": io.cell_coalgebra_to_json(res.structure),
            "homotopy": io.coop_to_json(res.homotopy), "verification": R.to_json(),
            "status": R.status}, R.passed


def _win(w):
    return list(w) if w is not None else None


def _parse_window(s: str) -> tuple:
    try:
        lo, hi = (int(v) for v in s.split(":"))
    except ValueError:
        raise io.FormatError("window", f"expected lo:hi, got {s!r}") from None
    if lo > hi:
        raise io.FormatError("window", "empty window")
    return (lo, hi)


# ---------------------------------------------------------------------------
# parser


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    d = dict(DEFAULTS) if defaults is None else defaults

    def flags(with_defaults: bool):
        # subcommands repeat the global flags without defaults, so a flag given
        # before the command name is not reset by the subparser
        g = argparse.ArgumentParser(add_help=False)
        dflt = (lambda v: v) if with_defaults else (lambda v: argparse.SUPPRESS)
        g.add_argument("--field", default=dflt(str(d["field"])), help="prime p or Q (default 2)")
        g.add_argument("--max-arity", type=int, default=dflt(d["max_arity"]))
        g.add_argument("--deg-min", type=int, default=dflt(d["deg_min"]))
        g.add_argument("--deg-max", type=int, default=dflt(d["deg_max"]))
        g.add_argument("--seed", type=int, default=dflt(d["seed"]))
        g.add_argument("--out", default=dflt(None), help="write the report here instead of stdout")
        return g

    common, sub_common = flags(True), flags(False)

    ap = argparse.ArgumentParser(prog="dgcoalg", parents=[common], allow_abbrev=False,
                                 description="Coalgebras over dg operads: exact computations and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[sub_common], help=help_, allow_abbrev=False)
        p.set_defaults(func=fn)
        return p

    p = add("homology", cmd_homology, "Betti numbers and representatives")
    p.add_argument("input", help="simplicial set or chain complex JSON, or builtin:NAME")
    p = add("e-structure", cmd_e_structure, "Barratt-Eccles coalgebra structure on chains")
    p.add_argument("input")
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--deg", type=int, default=None)
    p = add("steenrod", cmd_steenrod, "Steenrod square of a mod 2 class")
    p.add_argument("input")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True, help="q:j (j-th generator of H^q) or a cochain")
    p = add("verify-coalgebra", cmd_verify_coalgebra, "check a coalgebra over a quasi-free operad")
    p.add_argument("input")
    p.add_argument("--operad", default=None, help="presentation overriding the one in the input")
    p = add("verify-ainfty", cmd_verify_ainfty, "check the A-infinity relations")
    p.add_argument("input", help="A-infinity coalgebra JSON or poly-dual[-counital]:n")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--perturb", action="store_true", help="add a random term first (negative control)")
    p.add_argument("--involving", default=None)
    p = add("free-operad", cmd_free_operad, "tree basis of a free or quasi-free operad")
    p.add_argument("generators", help="sequence spec/JSON, or presentation spec/JSON")
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--presentation", action="store_true", help="read the input as a presentation")
    p = add("compose-product", cmd_compose_product, "dimensions of a composition product")
    p.add_argument("left")
    p.add_argument("right")
    p = add("cofree", cmd_cofree, "cofree coalgebra over a quasi-free operad")
    p.add_argument("operad", help="presentation spec/JSON, or unit")
    p.add_argument("carrier", help="chain complex JSON, or unit")
    p.add_argument("--window", default=None, help="lo:hi degree window for the carrier side")
    p.add_argument("--operad-window", default=None, help="lo:hi degree window for the operad")
    p = add("attach-cell", cmd_attach_cell, "attach a cell to a presentation")
    p.add_argument("presentation")
    p.add_argument("cell", help="cell JSON {name, arity, degree, boundary}")
    p = add("lift", cmd_lift, "lift a cell structure along a quasi-isomorphism")
    p.add_argument("input", help="lift JSON {W, V, f, delta_Vx}, or random")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    return ap


def _emit(obj: dict, out: str | None):
    text = io.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    out = None
    try:
        defaults = load_config_defaults()
        args = build_parser(defaults).parse_args(argv)
        out = args.out
        cfg = make_config(args)
        report, ok = args.func(args, cfg)
    except io.FormatError as e:
        _emit(e.to_json(), out)
        return 2
    except (ValueError, KeyError, LiftError, RuntimeError, NotImplementedError) as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e)}}, out)
        return 2
    _emit(report, out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
