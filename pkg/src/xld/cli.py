"""Command-line front end: ``xld <subcommand> ...``.

Exit codes: 0 success, 2 bad parameters, 3 two computation routes disagree
(or a golden file is stale), 4 an enumeration cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import conelattice, hodgecomb, icohom, kvol, stability

EXIT_OK = 0
EXIT_BAD_PARAMS = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4

GOLDEN_FILES = ("diamonds", "ih", "t1", "kvol")


@dataclass
class RunConfig:
    subcommand: str
    params: dict[str, Any]
    fmt: str = "json"
    cap: int | None = None
    output: str | None = None


@dataclass
class Result:
    payload: dict
    table: list[dict] | None = None
    pretty: str | None = None
    exit_code: int = EXIT_OK


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(payload) -> str:
    return json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return dumps(result.payload)
    if fmt == "pretty":
        if result.pretty is not None:
            return result.pretty.rstrip("\n") + "\n"
        return "".join(f"{k}: {_jsonable(v)}\n" for k, v in sorted(result.payload.items()))
    rows = result.table
    if rows is None:
        rows = [{k: v for k, v in result.payload.items() if not isinstance(v, (dict, list))}]
    buf = io.StringIO()
    cols = sorted({k for r in rows for k in r})
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _jsonable(v) for k, v in r.items()})
    return buf.getvalue()


# -- diamond ---------------------------------------------------------------


def diamond_payload(base: str, a: int, b: int, append: int | None) -> tuple[dict, hodgecomb.HodgeDiamond]:
    if base == "xld":
        g, d = hodgecomb.xld_cohomology(a, b), b
    else:
        g, d = hodgecomb.smooth_hypersurface(a, b), b
    label = f"{base} {a} {b}"
    if append:
        g = hodgecomb.append_blocks(g, g.dim_X, append, d)
        label += f" + {append} block(s)"
    D = hodgecomb.assemble_diamond(g)
    out = D.to_json()
    out["label"] = label
    return out, D


def cmd_diamond(cfg: RunConfig) -> Result:
    p = cfg.params
    if p["xld"]:
        base, (a, b) = "xld", p["xld"]
    else:
        base, (a, b) = "smooth", p["smooth"]
    payload, D = diamond_payload(base, a, b, p["append"])
    table = [{"degree": k, "p": pp, "q": k - pp, "h": D[pp, k - pp]} for k in range(2 * D.dim + 1) for pp in range(min(k, D.dim), max(0, k - D.dim) - 1, -1)]
    return Result(payload, table, D.pretty())


# -- ih --------------------------------------------------------------------


def ih_payload(l: int, d: int) -> dict:
    s = icohom.ih_series(l, d)
    o = icohom.ih_oracle(l, d)
    return {
        "l": l,
        "d": d,
        "coefficients": s.to_list(),
        "palindromic": s.is_palindromic(l * d - 2),
        "unimodal": icohom.is_unimodal(s),
        "oracle": "match" if s == o else "mismatch",
        "oracle_coefficients": o.to_list(),
    }


def cmd_ih(cfg: RunConfig) -> Result:
    p = ih_payload(cfg.params["l"], cfg.params["d"])
    table = [{"i": i, "ih_2i": c} for i, c in enumerate(p["coefficients"])]
    pretty = f"IH(X_{{{p['l']},{p['d']}}}) = {icohom.ih_series(p['l'], p['d'])}\npalindromic: {p['palindromic']}\noracle: {p['oracle']}"
    return Result(p, table, pretty, EXIT_OK if p["oracle"] == "match" else EXIT_MISMATCH)


# -- lattice ---------------------------------------------------------------


def cmd_lattice(cfg: RunConfig) -> Result:
    p = cfg.params
    ctx = conelattice.LatticeCtx(p["l"], p["d"])
    if p["N"] is not None:
        counts = conelattice.count_by_phi(ctx, p["N"])
        payload = {
            "l": ctx.l,
            "d": ctx.d,
            "N": p["N"],
            "degree": p["N"] * ctx.d * (ctx.l - 1),
            "counts_by_phi": counts,
            "residual": conelattice.count_residual(ctx, p["N"]),
        }
        table = [{"phi": m, "count": c, "leading": conelattice.leading_count(ctx, p["N"], m)} for m, c in enumerate(counts)]
        return Result(payload, table)
    k = p["degree"]
    pts = conelattice.enumerate_degree(ctx, k, cfg.cap)
    hist = Counter(u.phi for u in pts)
    lhs = sum(conelattice.gamma_dim(m, ctx.l) * c for m, c in hist.items())
    rhs = conelattice.hilbert_function(ctx.l, ctx.d, k)
    payload = {
        "l": ctx.l,
        "d": ctx.d,
        "degree": k,
        "count": len(pts),
        "phi_histogram": {m: hist[m] for m in sorted(hist)},
        "hilbert": {"lattice": lhs, "ring": rhs, "ok": lhs == rhs},
    }
    table = [{"phi": m, "count": hist[m]} for m in sorted(hist)]
    return Result(payload, table, exit_code=EXIT_OK if lhs == rhs else EXIT_MISMATCH)


# -- stability -------------------------------------------------------------


def t1_payload(l: int, d: int, cap=None) -> dict:
    size = len(stability.t1_weights(l, d, cap))
    oracle = stability.t1_dim_oracle(l, d)
    return {
        "l": l,
        "d": d,
        "phi_size": size,
        "oracle": oracle,
        "match": size == oracle,
        "family_polystable": {t: stability.family_polystable(l, d, t, cap) for t in range(1, l + 1)},
    }


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational list {text!r}") from exc


def cmd_stability(cfg: RunConfig) -> Result:
    p = cfg.params
    action = p["action"]
    if action == "t1":
        payload = t1_payload(p["l"], p["d"], cfg.cap)
        table = [{"t": t, "polystable": v} for t, v in payload["family_polystable"].items()]
        return Result(payload, table, exit_code=EXIT_OK if payload["match"] else EXIT_MISMATCH)
    if action == "family":
        sup = stability.family_support(p["l"], p["d"], p["t"], cfg.cap)
        verdict = stability.family_polystable(p["l"], p["d"], p["t"], cfg.cap)
        return Result({"l": p["l"], "d": p["d"], "t": p["t"], "support_size": len(sup), "polystable": verdict})
    if action == "aut":
        order, rank = stability.aut_group_data(p["l"], p["d"])
        return Result({"l": p["l"], "d": p["d"], "finite_part_order": order, "torus_rank": rank})
    w, v = _rationals(p["w"]), _rationals(p["v"])
    if len(v) < 2 or not w:
        raise ValueError("need at least one y-weight and two x-weights")
    lhs, rhs, tight = stability.append_git_inequality(stability.WeightSystem(w), stability.WeightSystem(v), len(v) - 2, len(w))
    return Result({"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs, "tight": tight})


# -- kvol ------------------------------------------------------------------


def kvol_certificate_payload(l: int, d: int) -> dict:
    return {"l": l, "d": d, "reports": [r.to_json() for r in kvol.delta_certificate(l, d)]}


def cmd_kvol(cfg: RunConfig) -> Result:
    p = cfg.params
    action = p["action"]
    if action == "beta":
        rows = [{"l": l, "d": d, "ok": kvol.beta_identity(l, d)} for l in range(2, p["lmax"] + 1) for d in range(2, p["dmax"] + 1)]
        ok = all(r["ok"] for r in rows)
        return Result({"all_pass": ok, "table": rows}, rows, exit_code=EXIT_OK if ok else EXIT_MISMATCH)
    l, d = p["l"], p["d"]
    if action == "certificate":
        payload = kvol_certificate_payload(l, d)
        return Result(payload, payload["reports"])
    model = kvol.ValuationModel.for_l(p["model"], l, Fraction(p["scale"]))
    if action == "vol":
        alpha = Fraction(p["alpha"])
        v = kvol.vol_x(l, d, model, alpha)
        return Result({"l": l, "d": d, "model": model.kind, "alpha": alpha, "volume": v, "volume_float": float(v)})
    direct, transfer = kvol.s_x_direct(l, d, model), kvol.s_x_transfer(l, d, model)
    payload = {"l": l, "d": d, "model": model.kind, "S_p": kvol.s_p(model), "S_x_direct": direct, "S_x_transfer": transfer, "A": model.A, "match": direct == transfer}
    return Result(payload, exit_code=EXIT_OK if direct == transfer else EXIT_MISMATCH)


# -- golden ----------------------------------------------------------------


def golden_payloads() -> dict[str, dict]:
    diamonds = {
        "smooth_7_3": diamond_payload("smooth", 7, 3, None)[0],
        "xld_3_3": diamond_payload("xld", 3, 3, None)[0],
        "smooth_4_3_append_1": diamond_payload("smooth", 4, 3, 1)[0],
        "smooth_1_3_append_2": diamond_payload("smooth", 1, 3, 2)[0],
        "xld_2_2": diamond_payload("xld", 2, 2, None)[0],
    }
    ih = {f"{l}_{d}": icohom.ih_series(l, d).to_list() for l in range(1, 5) for d in range(2, 6)}
    t1 = {f"{l}_{d}": stability.t1_dim_oracle(l, d) for l in range(1, 4) for d in range(2, 5)}
    kv = {f"{l}_{d}": kvol_certificate_payload(l, d)["reports"] for l in (2, 3, 4) for d in (2, 3)}
    return {"diamonds": diamonds, "ih": ih, "t1": t1, "kvol": kv}


def golden_dir() -> Path:
    return Path(str(resources.files("xld") / "golden"))


def cmd_golden(cfg: RunConfig) -> Result:
    where = Path(cfg.params["dir"]) if cfg.params["dir"] else golden_dir()
    fresh = golden_payloads()
    status = {}
    if cfg.params["bless"]:
        where.mkdir(parents=True, exist_ok=True)
        for name in GOLDEN_FILES:
            (where / f"{name}.json").write_text(dumps(fresh[name]))
            status[name] = "blessed"
        return Result({"dir": str(where), "files": status})
    for name in GOLDEN_FILES:
        path = where / f"{name}.json"
        if not path.exists():
            status[name] = "missing"
        else:
            status[name] = "ok" if path.read_text() == dumps(fresh[name]) else "stale"
    ok = all(s == "ok" for s in status.values())
    return Result({"dir": str(where), "files": status, "ok": ok}, exit_code=EXIT_OK if ok else EXIT_MISMATCH)


# -- argument parsing ------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"), default=argparse.SUPPRESS)
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write to this file instead of stdout")
    common.add_argument("--cap", type=_positive, default=argparse.SUPPRESS, help="enumeration cap (default from XLD_ENUM_CAP or 10^7)")

    ap = argparse.ArgumentParser(prog="xld", description="Cohomology, lattice and stability computations for X_{l,d}.", parents=[common])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    dia = sub.add_parser("diamond", parents=[common], help="Hodge-Du Bois diamond")
    src = dia.add_mutually_exclusive_group(required=True)
    src.add_argument("--xld", nargs=2, type=_positive, metavar=("L", "D"))
    src.add_argument("--smooth", nargs=2, type=_positive, metavar=("N", "D"))
    dia.add_argument("--append", type=_positive, metavar="L", help="append L blocks of the same degree")

    ih = sub.add_parser("ih", parents=[common], help="intersection Betti series")
    ih.add_argument("l", type=_positive)
    ih.add_argument("d", type=_positive)

    lat = sub.add_parser("lattice", parents=[common], help="cone points and the phi grading")
    lat.add_argument("l", type=_positive)
    lat.add_argument("d", type=_positive)
    which = lat.add_mutually_exclusive_group(required=True)
    which.add_argument("--degree", type=_nonneg)
    which.add_argument("--N", type=_nonneg)

    st = sub.add_parser("stability", parents=[common], help="deformation weights and stability checks")
    ss = st.add_subparsers(dest="action", required=True)
    for name in ("t1", "aut"):
        q = ss.add_parser(name, parents=[common])
        q.add_argument("l", type=_positive)
        q.add_argument("d", type=_positive)
    q = ss.add_parser("family", parents=[common])
    q.add_argument("l", type=_positive)
    q.add_argument("d", type=_positive)
    q.add_argument("t", type=_positive)
    q = ss.add_parser("git", parents=[common], help="appending inequality for given weights")
    q.add_argument("w", help="comma-separated rationals on the appended block")
    q.add_argument("v", help="comma-separated rationals on the base")

    kv = sub.add_parser("kvol", parents=[common], help="volumes and S-invariants")
    ks = kv.add_subparsers(dest="action", required=True)
    q = ks.add_parser("beta", parents=[common])
    q.add_argument("--lmax", type=_positive, default=6)
    q.add_argument("--dmax", type=_positive, default=6)
    q = ks.add_parser("certificate", parents=[common])
    q.add_argument("l", type=_positive)
    q.add_argument("d", type=_positive)
    for name in ("vol", "s"):
        q = ks.add_parser(name, parents=[common])
        q.add_argument("l", type=_positive)
        q.add_argument("d", type=_positive)
        q.add_argument("--model", choices=kvol.KINDS, default="point_blowup")
        q.add_argument("--scale", default="1")
        if name == "vol":
            q.add_argument("--alpha", default="0")

    gd = sub.add_parser("golden", parents=[common], help="compare against (or regenerate) golden files")
    gd.add_argument("--bless", action="store_true")
    gd.add_argument("--dir", default=None)
    return ap


HANDLERS: dict[str, Callable[[RunConfig], Result]] = {
    "diamond": cmd_diamond,
    "ih": cmd_ih,
    "lattice": cmd_lattice,
    "stability": cmd_stability,
    "kvol": cmd_kvol,
    "golden": cmd_golden,
}


def parse_config(argv: list[str] | None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    sub = ns.pop("subcommand")
    fmt = ns.pop("fmt", "json")
    output = ns.pop("output", None)
    cap = ns.pop("cap", None)
    return RunConfig(sub, ns, fmt, cap, output)


def run(cfg: RunConfig) -> tuple[int, str, bool]:
    """Exit code, rendered text, and whether the text is an error report."""
    try:
        res = HANDLERS[cfg.subcommand](cfg)
    except conelattice.EnumerationCapExceeded as exc:
        return EXIT_CAP, dumps({"error": "cap_exceeded", "message": str(exc)}), True
    except (kvol.RouteMismatch, icohom.PurityError) as exc:
        return EXIT_MISMATCH, dumps({"error": "mismatch", "message": str(exc)}), True
    except ValueError as exc:
        return EXIT_BAD_PARAMS, dumps({"error": "bad_params", "message": str(exc)}), True
    return res.exit_code, render(res, cfg.fmt), False


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse: usage errors exit 2, --help exits 0
        return int(exc.code or 0)
    code, text, failed = run(cfg)
    if failed:
        sys.stderr.write(text)
    elif cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
