"""Command-line front end.

Every command prints a report (JSON by default, ``--output table`` for a
human-readable view) and exits 0 when all residuals are within tolerance,
1 when one is not (the offending residual is named on stderr) and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import pi
from pathlib import Path

import numpy as np

from . import continuum, dhvalue, hilbert, ncvalue, twoqubit
from .jsonio import decode_matrix, decode_vector, dumps

ZETA_GRID = (0, 1, 2, 3)  # multiples of pi/2
R_GRID = (0.0, 0.3, 0.6, 1.0)


# --------------------------------------------------------------------------- #
#                                 formatting                                  #
# --------------------------------------------------------------------------- #

def fmt_complex(x) -> str:
    x = complex(x)
    re, im = x.real, x.imag
    re = 0.0 if abs(re) < 5e-16 else re
    im = 0.0 if abs(im) < 5e-16 else im
    sign = "-" if im < 0 or (im == 0 and np.signbit(im)) else "+"
    return f"{re:.6g}{sign}{abs(im):.6g}i"


def _fmt_matrix(m, indent="  "):
    m = np.asarray(m, dtype=complex)
    cells = [[fmt_complex(x) for x in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(indent + "  ".join(c.rjust(width) for c in row) for row in cells)


def _fmt_value(v):
    if isinstance(v, dict) and set(v) == {"f", "v"}:
        f = fmt_complex(complex(*v["f"]))
        comps = ", ".join(fmt_complex(complex(*p)) for p in v["v"])
        return "{" + f + "; " + comps + "}"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def render_table(report) -> str:
    lines = [f"command: {report['command']}"]
    for k, v in report["params"].items():
        lines.append(f"  {k} = {_fmt_value(v)}")
    lines.append("results:")
    for k, v in report["results"].items():
        if isinstance(v, dict) and "matrix" in v:
            lines.append(f"  {k} [{v.get('completion_id', '')}]:")
            lines.append(_fmt_matrix(decode_matrix(v["matrix"]), "    "))
        elif isinstance(v, dict) and set(v) == {"f", "v"}:
            lines.append(f"  {k} = {_fmt_value(v)}")
        elif isinstance(v, list) and v and isinstance(v[0], list) \
                and v[0] and isinstance(v[0][0], list):
            lines.append(f"  {k}:")
            lines.append(_fmt_matrix(decode_matrix(v), "    "))
        elif isinstance(v, dict):
            lines.append(f"  {k}:")
            for kk, vv in v.items():
                lines.append(f"    {kk} = {_fmt_value(vv)}")
        else:
            lines.append(f"  {k} = {_fmt_value(v)}")
    lines.append("residuals:")
    for k, v in report["residuals"].items():
        lines.append(f"  {k} = {v:.3e}")
    lines.append(f"pass: {report['pass']}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------- #
#                                  commands                                   #
# --------------------------------------------------------------------------- #

def _load_json_arg(text, decode):
    try:
        if text.startswith("@"):
            text = Path(text[1:]).read_text(encoding="utf-8")
        return decode(json.loads(text))
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read {text[:40]!r}: {exc}") from exc


def _input_pair(args):
    """State and observable from flags, a two-qubit preset or a seeded draw."""
    if args.pauli:
        ops = twoqubit.basic_observables()
        if args.pauli not in ops:
            raise UsageError(f"unknown --pauli {args.pauli!r}; choose from {sorted(ops)}")
        phi = twoqubit.bell_like_state(args.r, args.zeta)
        return phi, ops[args.pauli].matrix
    if args.state:
        phi = hilbert.StateVector(_load_json_arg(args.state, decode_vector))
    else:
        phi = hilbert.sample_random("state", args.dim, args.seed)
    if args.observable:
        try:
            B = hilbert.Observable(_load_json_arg(args.observable, decode_matrix)).matrix
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        B = hilbert.sample_random("hermitian", phi.dim, args.seed + 1).matrix
    if B.shape[0] != phi.dim:
        raise UsageError(f"observable dimension {B.shape[0]} != state dimension {phi.dim}")
    return phi, B


def cmd_nc_value(args):
    phi, B = _input_pair(args)
    val = ncvalue.nc_value(B, phi)
    z = phi.amplitudes
    residuals = {
        "orthogonality": abs(np.sum(val.v * z)),
        "imag_f": abs(val.f.imag),
        "uncertainty_identity": abs(ncvalue.uncertainty(val)
                                    - (ncvalue.expectation_fn(B @ B, phi) - val.f ** 2).real),
    }
    results = {"value": val.to_dict(), "uncertainty": ncvalue.uncertainty(val)}
    return _params(args, "dim", "seed", "pauli", "r", "zeta"), results, residuals


def cmd_dh_value(args):
    phi, B = _input_pair(args)
    if args.pauli:
        comp = twoqubit.u_q_completion(args.r, args.zeta)
    else:
        comp = dhvalue.complete_unitary(phi, seed=args.completion_seed)
    val = dhvalue.dh_value(B, comp)
    m = val.matrix
    residuals = {
        "corner_vs_expectation": abs(m[0, 0] - ncvalue.expectation_fn(B, phi)),
        "hermiticity": hilbert.max_abs_diff(m, m.conj().T),
        "homomorphism": dhvalue.verify_dh_homomorphism(B, B, comp),
    }
    return (_params(args, "dim", "seed", "pauli", "r", "zeta", "completion_seed"),
            {"value": val.to_dict()}, residuals)


def _homomorphism_trial(dim, seed):
    B = hilbert.sample_random("hermitian", dim, 3 * seed).matrix
    C = hilbert.sample_random("hermitian", dim, 3 * seed + 1).matrix
    phi = hilbert.sample_random("state", dim, 3 * seed + 2)
    comp = dhvalue.complete_unitary(phi, seed=seed)
    a, b = ncvalue.nc_value(B, phi), ncvalue.nc_value(C, phi)
    direct = ncvalue.nc_value(B @ C, phi)
    return {
        "dh_product": dhvalue.verify_dh_homomorphism(B, C, comp),
        "nc_star_scalar": abs(ncvalue.star_scalar(a, b) - direct.f),
        "nc_product": ncvalue.nc_diff(ncvalue.nc_value_of_product(B, C, phi), direct),
        "uncertainty_identity": abs(ncvalue.uncertainty(a)
                                    - (ncvalue.expectation_fn(B @ B, phi) - a.f ** 2).real),
    }


def run_homomorphism_sweep(dims, trials, seed):
    worst = {}
    for t in range(trials):
        dim = dims[t % len(dims)]
        for k, v in _homomorphism_trial(dim, seed * 100003 + t).items():
            worst[k] = max(worst.get(k, 0.0), v)
    return worst


def cmd_star_check(args):
    dims = _int_list(args.dims)
    worst = run_homomorphism_sweep(dims, args.trials, args.seed)
    return (_params(args, "dims", "trials", "seed"),
            {"trials": args.trials}, worst)


def _locality_trial(dims, seed):
    rng_seed = 7919 * seed
    d0 = dims[0]
    d_rest = int(np.prod(dims[1:]))
    B_loc = hilbert.sample_random("hermitian", d0, rng_seed).matrix
    U_other = hilbert.sample_random("unitary", d_rest, rng_seed + 1).matrix
    phi = hilbert.sample_random("state", int(np.prod(dims)), rng_seed + 2)
    comp = dhvalue.complete_unitary(phi, seed=seed)
    dh_res = dhvalue.verify_strong_locality(B_loc, 0, U_other, comp, dims)
    B = hilbert.lift_local(B_loc, 0, dims)
    W = hilbert.lift_local(U_other, tuple(range(1, len(dims))), dims)
    before = ncvalue.nc_value(B, phi)
    after = ncvalue.nc_value(B, W @ phi.amplitudes)
    return {
        "dh_invariance": dh_res,
        "nc_f_invariance": abs(after.f - before.f),
        "nc_v_transport": hilbert.max_abs_diff(after.v, W.conj() @ before.v),
        "uncertainty_invariance": abs(ncvalue.uncertainty(after) - ncvalue.uncertainty(before)),
    }


def run_locality_sweep(dims_list, trials, seed):
    worst = {}
    for t in range(trials):
        dims = dims_list[t % len(dims_list)]
        for k, v in _locality_trial(dims, seed * 100003 + t).items():
            worst[k] = max(worst.get(k, 0.0), v)
    return worst


def cmd_locality_check(args):
    dims = _int_list(args.dims)
    if len(dims) < 2:
        raise UsageError("--dims needs at least two factors")
    worst = run_locality_sweep([dims], args.trials, args.seed)
    return _params(args, "dims", "trials", "seed"), {"trials": args.trials}, worst


def two_qubit_results(r, zeta):
    fx_dh = twoqubit.closed_form_dh(r, zeta)
    fx_nc = twoqubit.closed_form_nc(r, zeta)
    comp = twoqubit.u_q_completion(r, zeta)
    results = {
        f"dh_{k}": dhvalue.DHMatrixValue(m, comp.completion_id).to_dict()
        for k, m in fx_dh.items()
    }
    for k in ("sigma1A", "sigma1B", "sigma3A"):
        results[f"nc_{k}"] = fx_nc[k].to_dict()
    return results, fx_dh, fx_nc


def cmd_two_qubit(args):
    try:
        p = twoqubit.TwoQubitParams(args.r, args.zeta, args.theta_a, args.theta_b,
                                    args.psi_a, args.psi_b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    results, fx_dh, fx_nc = two_qubit_results(args.r, args.zeta)
    eng_dh = twoqubit.engine_dh(args.r, args.zeta)
    eng_nc = twoqubit.engine_nc(args.r, args.zeta)
    psi = twoqubit.bell_like_state(args.r, args.zeta)
    rho_a = hilbert.partial_trace(hilbert.density_matrix(psi), 0, (2, 2))
    expected_rho = np.diag([(1 + args.r) / 2, (1 - args.r) / 2])
    state = twoqubit.state_from_params(p)
    residuals = {
        "dh_fixture_vs_engine": max(hilbert.max_abs_diff(fx_dh[k], eng_dh[k]) for k in fx_dh),
        "nc_fixture_vs_engine": max(ncvalue.nc_diff(fx_nc[k], eng_nc[k]) for k in fx_nc),
        "u_psi_first_column": hilbert.max_abs_diff(twoqubit.u_psi(p).matrix[:, 0],
                                                   state.amplitudes),
        "reduced_density": hilbert.max_abs_diff(rho_a, expected_rho),
        "purity": abs(hilbert.purity(rho_a) - (1 + args.r ** 2) / 2),
    }
    results["entanglement"] = twoqubit.entanglement(p)
    results["state"] = state.amplitudes
    results["reduced_density_A"] = rho_a
    if args.r < 1:
        col = twoqubit.collapse_analysis(args.r, args.zeta)
        results["collapse"] = col.to_dict()
        residuals["collapse_inverse"] = col.inverse_residual
    return (_params(args, "r", "zeta", "theta_a", "theta_b", "psi_a", "psi_b"),
            results, residuals)


def cmd_epr_grid(args):
    try:
        g = continuum.GridSystem(args.n, args.box)
        p_snapped = continuum.snap_momentum(g, args.p)
        params = continuum.EPRParams(p_snapped, args.ro, args.width)
        rep = continuum.verify_epr_grid(g, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    d = rep.to_dict()
    results = {"grid": d["grid"], "expectations": d["expectations"],
               "uncertainties": d["uncertainties"], "schmidt": d["schmidt"],
               "p_requested": args.p, "p_used": p_snapped}
    tols = rep.tolerances
    return (_params(args, "n", "box", "p", "ro", "width"), results,
            rep.residuals, tols)


def fixture_payload(r, k):
    zeta = k * pi / 2
    results, _, _ = two_qubit_results(r, zeta)
    results["nc_sigma3B"] = twoqubit.closed_form_nc(r, zeta)["sigma3B"].to_dict()
    return {"r": r, "zeta": zeta, "zeta_over_half_pi": k, "values": results}


def fixture_name(r, k):
    return f"two_qubit_r{r:.1f}_zeta{k}.json"


def write_fixtures(directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for r in R_GRID:
        for k in ZETA_GRID:
            path = directory / fixture_name(r, k)
            path.write_text(dumps(fixture_payload(r, k)), encoding="utf-8")
            written.append(path.name)
    return written


def diff_fixtures(directory):
    directory = Path(directory)
    mismatched = []
    for r in R_GRID:
        for k in ZETA_GRID:
            path = directory / fixture_name(r, k)
            if not path.exists() or path.read_text(encoding="utf-8") != dumps(fixture_payload(r, k)):
                mismatched.append(path.name)
    return mismatched


def cmd_fixtures(args):
    if args.regen:
        written = write_fixtures(args.dir)
        return ({"dir": str(args.dir), "regen": True},
                {"written": written}, {"mismatched_files": 0.0})
    bad = diff_fixtures(args.dir)
    return ({"dir": str(args.dir), "regen": False},
            {"mismatched": bad}, {"mismatched_files": float(len(bad))})


# --------------------------------------------------------------------------- #
#                                   parser                                    #
# --------------------------------------------------------------------------- #

class UsageError(Exception):
    pass


def _int_list(text):
    try:
        vals = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc
    if not vals or any(v < 1 for v in vals):
        raise UsageError(f"expected positive integers, got {text!r}")
    return vals


def _params(args, *names):
    return {n: getattr(args, n) for n in names}


def _positive(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=_positive, default=1e-10)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(
        prog="qvalues",
        description="Deutsch-Hayden and noncommutative values of observables.")
    sub = parser.add_subparsers(dest="command", required=True)

    def value_cmd(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--state", help="JSON state [[re,im],...] or @file")
        p.add_argument("--observable", help="JSON matrix or @file")
        p.add_argument("--dim", type=int, default=4, help="dimension for random input")
        p.add_argument("--pauli", help="two-qubit preset: sigma1A, sigma1B, sigma3A, sigma3B")
        p.add_argument("--r", type=float, default=0.6)
        p.add_argument("--zeta", type=float, default=0.0)
        return p

    value_cmd("nc-value", "noncommutative value of an observable")
    p = value_cmd("dh-value", "Deutsch-Hayden matrix value of an observable")
    p.add_argument("--completion-seed", type=int, default=None)

    p = sub.add_parser("star-check", parents=[common], help="homomorphism sweep")
    p.add_argument("--dims", default="2,4,8,16")
    p.add_argument("--trials", type=int, default=500)

    p = sub.add_parser("locality-check", parents=[common], help="strong locality sweep")
    p.add_argument("--dims", default="2,2")
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("two-qubit", parents=[common], help="two-qubit values and collapse")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--zeta", type=float, default=0.0, help="radians")
    p.add_argument("--theta-a", type=float, default=0.0)
    p.add_argument("--theta-b", type=float, default=0.0)
    p.add_argument("--psi-a", type=float, default=0.0)
    p.add_argument("--psi-b", type=float, default=0.0)

    p = sub.add_parser("epr-grid", parents=[common], help="EPR state on a periodic grid")
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--box", type=float, default=64.0)
    p.add_argument("--p", type=float, default=0.9817477042468103)
    p.add_argument("--ro", type=float, default=8.0)
    p.add_argument("--width", type=float, default=2.0)

    p = sub.add_parser("fixtures", parents=[common], help="golden two-qubit fixtures")
    p.add_argument("--regen", action="store_true")
    p.add_argument("--dir", default="fixtures")
    return parser


COMMANDS = {
    "nc-value": cmd_nc_value,
    "dh-value": cmd_dh_value,
    "star-check": cmd_star_check,
    "locality-check": cmd_locality_check,
    "two-qubit": cmd_two_qubit,
    "epr-grid": cmd_epr_grid,
    "fixtures": cmd_fixtures,
}


def run(args):
    """Execute parsed ``args``; returns ``(exit_code, report_dict)``."""
    out = COMMANDS[args.command](args)
    params, results, residuals = out[:3]
    tols = out[3] if len(out) > 3 else {}
    failed = []
    for name, value in residuals.items():
        tol = 0.0 if name == "mismatched_files" else tols.get(name, args.tolerance)
        if not value <= tol:
            failed.append((name, value, tol))
    report = {
        "command": args.command,
        "params": params,
        "results": results,
        "residuals": residuals,
        "pass": not failed,
    }
    return (1 if failed else 0), report, failed


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, report, failed = run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qvalues: error: {exc}", file=sys.stderr)
        return 2
    text = render_table(json.loads(dumps(report))) if args.output == "table" else dumps(report)
    sys.stdout.write(text)
    for name, value, tol in failed:
        print(f"residual {name} = {value:.3e} exceeds tolerance {tol:.1e}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
