"""Command-line front end: single-shot computations and the seeded check suites.

Every command prints one JSON document to stdout (or to a file with --out);
CSV is available for the flat tables only (spectra and dimension sweeps).
Exact scalars appear in the canonical ``p/q*pi^(s/2)`` sum form produced by
``ExactScalar.to_text``.  Exit status: 0 when every check in the invoked
command passes, 1 when a check fails, 2 on invalid configuration — the
latter with a structured ``{"error": ...}`` object in the output.  The
environment variable ``SUPERHARM_TOL`` overrides the default numeric
tolerance; a per-command ``--tol`` overrides both.
"""

import argparse
import csv
import io
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import verify
from .harmonics import (
    dim_harmonics,
    dim_polynomials,
    fischer_decompose,
    fischer_reconstruct,
)
from .integrate import pizzetti, reduce_integral
from .radial import (
    RadialProfile,
    fundamental_normalization_check,
    fundamental_solution,
    laplacian_profile,
)
from .scalar import ExactScalar
from .schrodinger import (
    GridSpec,
    numeric_rows,
    oscillator_spectrum,
    reduce as reduce_problem,
    solve_numeric,
)
from .superpoly import Signature, SuperPolynomial, laplacian
from .zonal import funk_hecke_alpha_monomial, hankel, mehler_bessel_check

DEFAULT_TOL_ENV = "SUPERHARM_TOL"


def _default_tol() -> float:
    try:
        return float(os.environ.get(DEFAULT_TOL_ENV, "1e-10"))
    except ValueError:
        return 1e-10


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings for one command invocation."""

    m: int = 1
    n: int = 0
    deg_max: int = 12
    k_max: int = 12
    tol: float = 1e-10
    fmt: str = "json"
    seed: int = 7
    out: Optional[str] = None

    def __post_init__(self):
        if self.m > 6 or self.n > 3:
            raise ValueError("signature outside supported caps (m <= 6, n <= 3)")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")

    def signature(self) -> Signature:
        return Signature(self.m, self.n)

    def check_degree(self, k: int, what: str = "degree") -> int:
        if k < 0 or k > self.k_max:
            raise ValueError(f"{what} {k} outside supported range 0..{self.k_max}")
        return k


# -- output plumbing ----------------------------------------------------------


_ERROR_SLUGS = {
    "UnsupportedSignatureError": "unsupported-signature",
    "NonIntegrableError": "non-integrable",
    "TruncationError": "truncation",
    "GammaPoleError": "gamma-pole",
    "DegenerateDegreeError": "degenerate-degree",
}


def _error_payload(exc: Exception) -> dict:
    slug = _ERROR_SLUGS.get(type(exc).__name__, "invalid-config")
    return {"error": {"type": slug, "message": str(exc)}}


def _render(payload: dict, fmt: str) -> str:
    if fmt == "csv":
        rows = payload.get("rows") if isinstance(payload, dict) else None
        if not rows:
            raise ValueError("csv output is only available for flat tables")
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    return json.dumps(payload, indent=2) + "\n"


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_coeffs(text: str) -> List[Fraction]:
    toks = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not toks:
        raise ValueError("empty coefficient list")
    return [Fraction(t) for t in toks]


# -- command handlers ---------------------------------------------------------


Result = Tuple[dict, bool, str]


def _cmd_dims(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    if args.kmax is not None:
        cfg.check_degree(args.kmax, "--kmax")
        rows = [
            {"k": k, "harmonics": dim_harmonics(sig, k), "polynomials": dim_polynomials(sig, k)}
            for k in range(args.kmax + 1)
        ]
        return {"m": cfg.m, "n": cfg.n, "rows": rows}, True, cfg.fmt
    if args.k is None:
        raise ValueError("dims needs --k (single degree) or --kmax (sweep)")
    if cfg.fmt == "csv":
        raise ValueError("csv output is only for the dimension sweep (--kmax)")
    cfg.check_degree(args.k, "--k")
    return {"dim": dim_harmonics(sig, args.k)}, True, "json"


def _cmd_pizzetti(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    f = SuperPolynomial.parse(args.poly, sig)
    if f.terms and f.degree() > cfg.deg_max:
        raise ValueError(f"polynomial degree {f.degree()} above cap {cfg.deg_max}")
    return {"value": pizzetti(f).to_text()}, True, "json"


def _cmd_fischer(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    f = SuperPolynomial.parse(args.poly, sig)
    if not f.terms:
        return {"degree": 0, "blocks": [], "round_trip": True}, True, "json"
    if f.degree() > cfg.deg_max:
        raise ValueError(f"polynomial degree {f.degree()} above cap {cfg.deg_max}")
    if len(f.homogeneous_components()) > 1:
        raise ValueError("fischer needs a homogeneous polynomial")
    blocks = fischer_decompose(f)
    ok = all(laplacian(H).is_zero for _, H in blocks)
    ok = ok and (fischer_reconstruct(sig, blocks) - f).is_zero
    payload = {
        "degree": f.degree(),
        "blocks": [{"j": j, "harmonic": H.to_text()} for j, H in blocks],
        "round_trip": ok,
    }
    return payload, ok, "json"


def _cmd_funk_hecke(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    M = sig.superdim
    l = cfg.check_degree(args.l, "--l")
    if args.profile is not None:
        coeffs = _parse_coeffs(args.profile)
        if len(coeffs) - 1 > cfg.k_max:
            raise ValueError(f"kernel degree {len(coeffs) - 1} above cap {cfg.k_max}")
        values = []
        for k, c in enumerate(coeffs):
            if not c:
                continue
            al = funk_hecke_alpha_monomial(M, l, k) * c
            values.append({"k": k, "alpha": al.to_text()})
        return {"superdim": M, "l": l, "values": values}, True, "json"
    if args.k is None:
        raise ValueError("funk-hecke needs --k (monomial degree) or --profile (coefficients)")
    k = cfg.check_degree(args.k, "--k")
    al = funk_hecke_alpha_monomial(M, l, k)
    return {"superdim": M, "l": l, "k": k, "value": al.to_text()}, True, "json"


def _cmd_bochner(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    k = cfg.check_degree(args.k, "--k")
    psi = RadialProfile.parse(args.profile)
    nu = k + sig.superdim / 2.0 - 1.0
    rows = [{"u": u, "value": hankel(nu, psi, u, cfg.tol)} for u in (0.5, 1.0, 1.5, 2.0)]
    return {"nu": nu, "profile": args.profile, "rows": rows}, True, "json"


def _cmd_mehler(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    K = args.kmax
    if K < 0 or K > 80:
        raise ValueError("truncation order outside supported range 0..80")
    rnd = random.Random(cfg.seed)
    x = [rnd.uniform(-0.8, 0.8) for _ in range(sig.m)]
    y = [rnd.uniform(-0.8, 0.8) for _ in range(sig.m)]
    res = mehler_bessel_check(sig, x, y, K=K, tol=cfg.tol, m2_limit=True)
    ok = res < cfg.tol
    payload = {
        "x": x,
        "y": y,
        "K": K,
        "residual": res,
        "tolerance": cfg.tol,
        "passed": ok,
    }
    return payload, ok, "json"


def _cmd_fundsol(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    l = args.l
    if l < 1 or l > 6:
        raise ValueError("--l outside supported range 1..6")
    fs = fundamental_solution(sig, l)
    p = fs.profile
    for _ in range(l):
        p = laplacian_profile(p, sig.superdim)
    annihilated = p.is_zero
    payload = {"superdim": sig.superdim, "l": l, "profile": fs.profile.to_text(),
               "annihilated": annihilated}
    ok = annihilated
    if sig.superdim % 2:
        lhs, rhs = fundamental_normalization_check(sig, l)
        norm_ok = lhs == rhs
        payload["normalization"] = {
            "computed": lhs.to_text(),
            "expected": rhs.to_text(),
            "passed": norm_ok,
        }
        ok = ok and norm_ok
    return payload, ok, "json"


def _cmd_spectrum(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    jmax = cfg.check_degree(args.jmax, "--jmax")
    kmax = cfg.check_degree(args.kmax, "--kmax")
    if args.V == "osc":
        entries = oscillator_spectrum(sig, jmax, kmax)
        rows = [e.as_row() for e in entries]
    else:
        V = RadialProfile.parse(args.V)
        grid = GridSpec(r_max=args.rmax, nodes=args.nodes, box=args.box)
        rows = []
        window = tuple(args.window) if args.window else None
        for k in range(kmax + 1):
            prob = reduce_problem(sig, V, k)
            res = solve_numeric(prob, grid, count=jmax + 1, e_window=window)
            rows.extend(numeric_rows(prob, res))
        rows.sort(key=lambda r: (r["E"], r["k"], r["j"]))
    return {"m": cfg.m, "n": cfg.n, "V": args.V, "rows": rows}, True, cfg.fmt


def _cmd_reduce_integral(cfg: RunConfig, args) -> Result:
    sig = cfg.signature()
    prof = RadialProfile.parse(args.profile)
    val = reduce_integral(prof, sig, cfg.tol)
    if isinstance(val, ExactScalar):
        payload = {"superdim": sig.superdim, "value": val.to_text(), "float": val.to_float()}
    else:
        payload = {"superdim": sig.superdim, "value": float(val)}
    return payload, True, "json"


def _cmd_verify_all(cfg: RunConfig, args) -> Result:
    report = verify.run_all(seed=cfg.seed, tol=cfg.tol, names=args.suite or None)
    return report, bool(report["passed"]), "json"


_DISPATCH = {
    "dims": _cmd_dims,
    "pizzetti": _cmd_pizzetti,
    "fischer": _cmd_fischer,
    "funk-hecke": _cmd_funk_hecke,
    "bochner": _cmd_bochner,
    "mehler": _cmd_mehler,
    "fundsol": _cmd_fundsol,
    "spectrum": _cmd_spectrum,
    "reduce-integral": _cmd_reduce_integral,
    "verify-all": _cmd_verify_all,
}


# -- argument parsing ---------------------------------------------------------


def _add_sig(p: argparse.ArgumentParser):
    p.add_argument("--m", type=int, required=True, help="number of commuting variables")
    p.add_argument("--n", type=int, required=True, help="half the number of anticommuting variables")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=None, help="numeric tolerance (default from SUPERHARM_TOL)")
    p.add_argument("--out", default=None, help="write the result to this file instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superharm",
        description="Exact and numeric harmonic analysis on R^{m|2n}.",
        epilog=f"Default tolerance comes from ${DEFAULT_TOL_ENV} (fallback 1e-10).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="dimension of the degree-k spherical harmonics")
    _add_sig(p)
    p.add_argument("--k", type=int, default=None, help="single degree")
    p.add_argument("--kmax", type=int, default=None, help="sweep degrees 0..kmax")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    _add_common(p)

    p = sub.add_parser("pizzetti", help="exact sphere integral of a polynomial")
    _add_sig(p)
    p.add_argument("--poly", required=True, help='polynomial text, e.g. "x1^2 + 2 f1 f2"')
    _add_common(p)

    p = sub.add_parser("fischer", help="harmonic block decomposition of a homogeneous polynomial")
    _add_sig(p)
    p.add_argument("--poly", required=True, help="homogeneous polynomial text")
    _add_common(p)

    p = sub.add_parser("funk-hecke", help="exact sphere-transform coefficients of a zonal kernel")
    _add_sig(p)
    p.add_argument("--l", type=int, required=True, help="harmonic degree")
    p.add_argument("--k", type=int, default=None, help="monomial kernel degree t^k")
    p.add_argument("--profile", default=None, help='polynomial kernel coefficients "c0,c1,..."')
    _add_common(p)

    p = sub.add_parser("bochner", help="radial transform values for a decaying profile")
    _add_sig(p)
    p.add_argument("--k", type=int, required=True, help="harmonic degree (sets the transform order)")
    p.add_argument("--profile", required=True, help='radial profile, e.g. "exp(1/2)"')
    _add_common(p)

    p = sub.add_parser("mehler", help="kernel expansion residual at a seeded random point pair")
    _add_sig(p)
    p.add_argument("--kmax", type=int, default=40, help="series truncation order")
    p.add_argument("--seed", type=int, default=7)
    _add_common(p)

    p = sub.add_parser("fundsol", help="iterated-Laplacian fundamental solution profile")
    _add_sig(p)
    p.add_argument("--l", type=int, required=True, help="half the order of the iterated Laplacian")
    _add_common(p)

    p = sub.add_parser("spectrum", help="radial Schrodinger spectrum (exact oscillator or numeric)")
    _add_sig(p)
    p.add_argument("--V", required=True, help='"osc" for the exact oscillator, else a profile like "pow(-1/2)"')
    p.add_argument("--jmax", type=int, required=True, help="radial quantum numbers 0..jmax")
    p.add_argument("--kmax", type=int, required=True, help="harmonic degrees 0..kmax")
    p.add_argument("--rmax", type=float, default=12.0, help="numeric grid extent")
    p.add_argument("--nodes", type=int, default=1500, help="numeric grid size")
    p.add_argument("--box", action="store_true", help="accept a hard wall at rmax")
    p.add_argument("--window", type=float, nargs=2, default=None, metavar=("LO", "HI"),
                   help="keep numeric eigenvalues in [LO, HI]")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    _add_common(p)

    p = sub.add_parser("reduce-integral", help="full-space integral of a radial profile by branch")
    _add_sig(p)
    p.add_argument("--profile", required=True, help='radial profile, e.g. "exp(1)"')
    _add_common(p)

    p = sub.add_parser("verify-all", help="run the seeded property-check suites")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--suite", action="append", choices=sorted(verify.SUITES),
                   help="restrict to one or more suites (repeatable)")
    _add_common(p)

    return parser


def _config_from(args) -> RunConfig:
    tol = args.tol if getattr(args, "tol", None) is not None else _default_tol()
    return RunConfig(
        m=getattr(args, "m", 1),
        n=getattr(args, "n", 0),
        tol=tol,
        fmt=getattr(args, "fmt", "json"),
        seed=getattr(args, "seed", 7),
        out=getattr(args, "out", None),
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out = getattr(args, "out", None)
    try:
        cfg = _config_from(args)
        payload, passed, fmt = _DISPATCH[args.command](cfg, args)
        text = _render(payload, fmt)
    except (ValueError, ZeroDivisionError) as exc:
        _write(_render(_error_payload(exc), "json"), out)
        return 2
    _write(text, cfg.out)
    return 0 if passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
