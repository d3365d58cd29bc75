"""Command-line interface.

Subcommands::

    specshift spectrum     --weights SPEC --kind {sym,asym} --kmax K --tol T
    specshift closed-form  --a A --kind {sym,asym} --kmax K
    specshift oracle-check --weights SPEC --kind {sym,asym} --kmax K --tol T
    specshift shift-diag classify    --alpha SPEC --mu SPEC --N N
    specshift shift-diag norm-bounds --alpha SPEC --mu SPEC --N N --iters I --seed S
    specshift shift-diag disk-check  --alpha SPEC --mu SPEC --samples S --tol T --seed S
    specshift shift-diag example-43  --lam Z --tol T

Output is JSON (default) or CSV on stdout or ``--output``.  Identical inputs
and seed produce byte-identical output.  Exit codes: 0 success, 1 validation
error, 2 internal consistency failure (oracle mismatch).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

import numpy as np

from . import blocks, oracle, shiftdiag, spectrum
from .eig import multiset_match, tridiag_eigenvalues
from .weights import WeightIndexError, WeightSpecError, parse_weight_spec

DEFAULT_TOL = 1e-10
DEFAULT_KMAX = 50
DEFAULT_N = 120
DEFAULT_SEED = 42


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="specshift",
                                description="Point spectra of symmetric tensor "
                                            "products of weighted shifts")
    sub = p.add_subparsers(dest="command", required=True)

    def add_io(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", default=None, help="path (default stdout)")

    sp = sub.add_parser("spectrum", help="block spectra via the recurrence path")
    sp.add_argument("--weights", required=True)
    sp.add_argument("--kind", choices=blocks.KINDS, required=True)
    sp.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    add_io(sp)

    sp = sub.add_parser("closed-form", help="exact spectra for geometric weights")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--kind", choices=blocks.KINDS, required=True)
    sp.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    add_io(sp)

    sp = sub.add_parser("oracle-check",
                        help="recurrence vs brute-force block comparison")
    sp.add_argument("--weights", required=True)
    sp.add_argument("--kind", choices=blocks.KINDS, required=True)
    sp.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    sp.add_argument("--tol", type=float, default=1e-8)
    add_io(sp)

    sd = sub.add_parser("shift-diag", help="shift (.) diagonal analysis")
    sdsub = sd.add_subparsers(dest="sd_command", required=True)

    sp = sdsub.add_parser("classify")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--N", type=int, default=DEFAULT_N)
    add_io(sp)

    sp = sdsub.add_parser("norm-bounds")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--N", type=int, default=DEFAULT_N)
    sp.add_argument("--iters", type=int, default=500)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    add_io(sp)

    sp = sdsub.add_parser("disk-check")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--samples", type=int, default=25)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--safety", type=float, default=0.95)
    add_io(sp)

    sp = sdsub.add_parser("example-43")
    sp.add_argument("--lam", default="0.9", help="complex literal, |lam| < 1")
    sp.add_argument("--tol", type=float, default=1e-8)
    add_io(sp)
    return p


def _multiset_payload(ms: spectrum.EigenMultiset) -> dict:
    blocks_out = []
    for b, vals in sorted(ms.by_block().items(), key=lambda kv: kv[0].k):
        blocks_out.append({"k": b.k, "kind": b.kind, "dim": b.dim,
                           "eigenvalues": [float(v) for v in vals]})
    return {"blocks": blocks_out, "meta": ms.meta}


def _write(payload: dict, fmt: str, out, csv_rows=None, csv_header=None) -> None:
    if fmt == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)


def _spectrum_csv(ms: spectrum.EigenMultiset):
    rows = []
    for b, vals in sorted(ms.by_block().items(), key=lambda kv: kv[0].k):
        for idx, v in enumerate(vals):
            rows.append([b.kind, b.k, idx, repr(float(v))])
    return rows, ["kind", "k", "index", "eigenvalue"]


def _closed_form_csv(ms: spectrum.EigenMultiset):
    rows = []
    for b, vals in sorted(ms.by_block().items(), key=lambda kv: kv[0].k):
        for j, v in enumerate(vals, start=1):
            rows.append([b.k, j, repr(float(v))])
    return rows, ["k", "j", "value"]


def _cmd_spectrum(args, out) -> int:
    w = parse_weight_spec(args.weights)
    if args.tol <= 0 or args.kmax < 0:
        raise ValueError("require tol > 0 and kmax >= 0")
    ms = spectrum.point_spectrum(args.kind, w, args.kmax, args.tol)
    payload = _multiset_payload(ms)
    payload["meta"]["weights"] = args.weights
    rows, header = _spectrum_csv(ms)
    _write(payload, args.format, out, rows, header)
    return 0


def _cmd_closed_form(args, out) -> int:
    ms = spectrum.closed_form_spectrum(args.a, args.kind, args.kmax)
    payload = _multiset_payload(ms)
    rows, header = _closed_form_csv(ms)
    _write(payload, args.format, out, rows, header)
    return 0


def _cmd_oracle_check(args, out) -> int:
    w = parse_weight_spec(args.weights)
    results = []
    ok = True
    k_start = 0 if args.kind == blocks.SYM else 1
    for k in range(k_start, args.kmax + 1):
        T = blocks.build_block_matrix(args.kind, k, w)
        recur = tridiag_eigenvalues(T, min(args.tol * 1e-2, 1e-10))
        brute = oracle.oracle_block_eigenvalues(args.kind, k, w)
        report = multiset_match(recur, brute, args.tol)
        ok = ok and report.matched
        results.append({"k": k, "kind": args.kind, "dim": T.dim,
                        "matched": report.matched,
                        "max_deviation": report.max_deviation})
    payload = {"blocks": results,
               "meta": {"weights": args.weights, "kind": args.kind,
                        "kmax": args.kmax, "tol": args.tol, "all_matched": ok}}
    rows = [[r["kind"], r["k"], r["dim"], r["matched"], repr(r["max_deviation"])]
            for r in results]
    _write(payload, args.format, out, rows,
           ["kind", "k", "dim", "matched", "max_deviation"])
    return 0 if ok else 2


def _cmd_classify(args, out) -> int:
    alpha = parse_weight_spec(args.alpha)
    mu = parse_weight_spec(args.mu)
    res = shiftdiag.classify_point_spectrum_shift_diag(alpha, mu, args.N)
    payload = {"classification": res.classification, "witness": res.witness,
               "checks": res.checks,
               "meta": {"alpha": args.alpha, "mu": args.mu, "N": args.N}}
    _write(payload, args.format, out,
           [[res.classification, res.witness]], ["classification", "witness"])
    return 0


def _cmd_norm_bounds(args, out) -> int:
    alpha = parse_weight_spec(args.alpha)
    mu = parse_weight_spec(args.mu)
    bounds = shiftdiag.norm_bounds_adj(alpha, mu, args.N)
    op = oracle.build_truncated_sym_product(oracle.ADJSHIFT_DIAG, alpha, mu, args.N)
    est = shiftdiag.estimate_norm_truncated(op, args.iters, args.seed)
    payload = {"lower": bounds.lower, "upper": bounds.upper,
               "lower_witness": bounds.lower_witness,
               "upper_is_estimate": bounds.upper_is_estimate,
               "power_iteration_estimate": est,
               "meta": {"alpha": args.alpha, "mu": args.mu, "N": args.N,
                        "iters": args.iters, "seed": args.seed}}
    _write(payload, args.format, out,
           [[repr(bounds.lower), repr(est), repr(bounds.upper)]],
           ["lower", "estimate", "upper"])
    return 0


def _cmd_disk_check(args, out) -> int:
    alpha = parse_weight_spec(args.alpha)
    mu = parse_weight_spec(args.mu)
    rad = shiftdiag.disk_radius(alpha, mu, 400)
    rng = np.random.default_rng(args.seed)
    certs = []
    all_ok = True
    for _ in range(args.samples):
        r = args.safety * rad.value * np.sqrt(rng.uniform(0.0, 1.0))
        theta = rng.uniform(0.0, 2.0 * np.pi)
        lam = complex(r * np.cos(theta), r * np.sin(theta))
        try:
            _, cert = shiftdiag.build_disk_eigenvector(lam, alpha, mu, tol=args.tol)
            certs.append({"lam_re": lam.real, "lam_im": lam.imag, "J": cert.J,
                          "beta": cert.beta, "residual": cert.residual,
                          "accepted": True})
        except (shiftdiag.OutsideDiskError, shiftdiag.CertificationError) as exc:
            all_ok = False
            certs.append({"lam_re": lam.real, "lam_im": lam.imag,
                          "accepted": False, "error": str(exc)})
    payload = {"radius": rad.value, "radius_is_estimate": rad.is_estimate,
               "certificates": certs,
               "meta": {"alpha": args.alpha, "mu": args.mu,
                        "samples": args.samples, "tol": args.tol,
                        "seed": args.seed, "safety": args.safety,
                        "all_accepted": all_ok}}
    rows = [[c["lam_re"], c["lam_im"], c.get("J"), c.get("residual"),
             c["accepted"]] for c in certs]
    _write(payload, args.format, out, rows,
           ["lam_re", "lam_im", "J", "residual", "accepted"])
    return 0 if all_ok else 2


def _cmd_example_43(args, out) -> int:
    lam = complex(args.lam)
    _, residual = shiftdiag.unweighted_disk_eigenvector(lam, tol=args.tol)
    payload = {"lam_re": lam.real, "lam_im": lam.imag,
               "abs_lam": abs(lam), "series_disk_radius": 0.5,
               "outside_series_disk": abs(lam) >= 0.5,
               "residual": residual, "certified": residual <= args.tol,
               "meta": {"tol": args.tol}}
    _write(payload, args.format, out,
           [[lam.real, lam.imag, repr(residual)]],
           ["lam_re", "lam_im", "residual"])
    return 0


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "closed-form": _cmd_closed_form,
    "oracle-check": _cmd_oracle_check,
}
_SD_DISPATCH = {
    "classify": _cmd_classify,
    "norm-bounds": _cmd_norm_bounds,
    "disk-check": _cmd_disk_check,
    "example-43": _cmd_example_43,
}


def run(argv, stdout=None) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    if args.command == "shift-diag":
        handler = _SD_DISPATCH[args.sd_command]
    else:
        handler = _DISPATCH[args.command]
    buf = io.StringIO()
    try:
        code = handler(args, buf)
    except (WeightSpecError, WeightIndexError, shiftdiag.HypothesisError,
            shiftdiag.OutsideDiskError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = buf.getvalue()
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        (stdout or sys.stdout).write(text)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
