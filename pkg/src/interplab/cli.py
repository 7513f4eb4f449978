"""Command-line interface: config ingestion, dispatch, report emission.

Every emitted report carries the fully resolved configuration
(discretization, tolerances, seed), so each number is reproducible.
Exit codes: 0 ok, 2 config error, 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from . import dynamics as dy
from . import interpolation as ip
from . import norms as nm
from . import oracles as orc
from . import spheres as sp
from . import strip as st

CSV_HEADER = f"# interp-lab v{__version__}"


class ConfigError(ValueError):
    pass


def parse_vector(text: str) -> np.ndarray:
    """Complex vector from JSON: entries are numbers or [re, im] pairs."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"bad vector {text!r}: {e}") from e
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"vector must be a nonempty JSON list, got {text!r}")
    out = []
    for item in raw:
        if isinstance(item, (int, float)):
            out.append(complex(item))
        elif isinstance(item, list) and len(item) == 2:
            out.append(complex(item[0], item[1]))
        else:
            raise ConfigError(f"bad vector entry {item!r}")
    return np.array(out)


def parse_grid(text: str) -> np.ndarray:
    try:
        vals = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"bad grid {text!r}: {e}") from e
    if not isinstance(vals, list) or not vals:
        raise ConfigError(f"grid must be a nonempty JSON list, got {text!r}")
    return np.asarray(vals, dtype=float)


def load_couple(path: str) -> ip.Couple:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read couple file {path}: {e}") from e
    try:
        return ip.couple_from_json(obj)
    except (KeyError, nm.NormError, ip.InterpolationError) as e:
        raise ConfigError(f"bad couple file {path}: {e}") from e


def cplx(z: complex) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def vec(v) -> list:
    return [cplx(z) for z in np.asarray(v)]


def emit(args, payload: dict, rows=None):
    payload = dict(payload)
    payload["version"] = __version__
    text_fmt = getattr(args, "format", "json")
    if text_fmt == "csv":
        if rows is None:
            raise ConfigError("csv output is not available for this command")
        header, data = rows
        lines = [CSV_HEADER, ",".join(header)]
        lines += [",".join(f"{c}" for c in row) for row in data]
        out = "\n".join(lines) + "\n"
    else:
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def resolved_config(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "output") and v is not None}
    cfg.update(extra)
    return cfg


def _check_report(report) -> int:
    return 0 if report is None or report.converged else 3


# ---------------------------------------------------------------------------
# subcommands


def cmd_norm(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    value, report = ip.calderon_norm(couple, args.theta, x, K=args.K, M=args.M, full=True)
    emit(args, {"config": resolved_config(args), "value": value,
                "report": report.__dict__})
    return _check_report(report)


def cmd_norm_path(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    grid = parse_grid(args.grid)
    res = ip.norm_path(couple, x, grid, K=args.K, M=args.M)
    rows = (["theta", "value"], [(t, v) for t, v in zip(res.thetas, res.values)])
    emit(args, {
        "config": resolved_config(args),
        "path": [{"theta": float(t), "value": float(v)} for t, v in zip(res.thetas, res.values)],
        "limit_right": res.limit_right,
        "limit_left": res.limit_left,
        "gap_right": res.gap_right,
        "gap_left": res.gap_left,
        "logconvexity_slack": res.logconvexity_slack,
    }, rows=rows)
    return 0


def cmd_kfun(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    value, report = ip.k_functional(couple, x, args.t, full=True)
    emit(args, {"config": resolved_config(args), "value": value, "report": report.__dict__})
    return _check_report(report)


def cmd_gagliardo(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    value = ip.gagliardo_norm(couple, x, args.side)
    emit(args, {"config": resolved_config(args), "value": value})
    return 0


def cmd_minfun(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    mf = ip.f2_minimal(couple, args.theta, x, K=args.K, M=args.M)
    emit(args, {
        "config": resolved_config(args),
        "energy": mf.energy,
        "unique": mf.unique,
        "function": st.fn_to_json(mf.fn),
        "report": mf.report.__dict__,
    })
    return _check_report(mf.report)


def cmd_omega(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    value = ip.omega(couple, args.theta, x, order=args.order, K=args.K, M=args.M)
    emit(args, {"config": resolved_config(args), "value": vec(value)})
    return 0


def cmd_vertical(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    y = dy.vertical_map(couple, args.theta, args.t, x, K=args.K, M=args.M)
    emit(args, {"config": resolved_config(args), "value": vec(y)})
    return 0


def cmd_orbit(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    grid = parse_grid(args.t_grid)
    pts = dy.orbit_sample(couple, args.theta, x, grid, K=args.K, M=args.M)
    header = ["t"]
    for i in range(couple.dim):
        header += [f"re{i}", f"im{i}"]
    header += ["norm0", "norm1", "norm_theta"]
    data = []
    records = []
    for t, y in zip(grid, pts):
        row = [float(t)]
        for z in y:
            row += [float(z.real), float(z.imag)]
        row += [nm.norm_eval(couple.norm0, y), nm.norm_eval(couple.norm1, y),
                ip.theta_norm(couple, args.theta, y, K=args.K, M=args.M)]
        data.append(row)
        records.append({"t": float(t), "value": vec(y)})
    emit(args, {"config": resolved_config(args), "orbit": records}, rows=(header, data))
    return 0


def cmd_classify(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    oc = dy.classify_orbit(couple, args.theta, x, tol=args.tol, K=args.K, M=args.M)
    diag = {k: (v if not isinstance(v, (list, np.ndarray)) else list(map(float, v)))
            for k, v in oc.diagnostics.items()}
    emit(args, {"config": resolved_config(args), "class": oc.kind, "period": oc.period,
                "diagnostics": diag})
    return 0


def cmd_fourier_check(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    T = args.T
    if T is None:
        oc = dy.classify_orbit(couple, args.theta, x, K=args.K, M=args.M)
        if oc.kind != "Periodic":
            raise ConfigError(f"orbit is {oc.kind}, not Periodic; pass --T explicitly")
        T = oc.period
    rep = dy.periodic_fourier_check(couple, args.theta, x, T, n_modes=args.n_modes,
                                    K=args.K, M=args.M)
    emit(args, {"config": resolved_config(args, T=T), "report": rep.__dict__})
    return 0


def cmd_daher(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    y = sp.daher_map(couple, args.theta, args.theta_prime, x, K=args.K, M=args.M)
    emit(args, {"config": resolved_config(args), "value": vec(y)})
    return 0


def cmd_mazur_limit(args):
    couple = load_couple(args.couple)
    x = parse_vector(args.x)
    res = sp.limit_mazur(couple, args.theta, x, k_max=args.k_max, K=args.K, M=args.M)
    emit(args, {
        "config": resolved_config(args),
        "limit": vec(res.limit),
        "s_values": res.s_values.tolist(),
        "endpoint_norms": res.endpoint_norms.tolist(),
        "gap": res.gap,
        "in_delta": res.in_delta,
        "residual": res.residual,
    })
    return 0


def _modulus_payload(report: sp.ModulusReport) -> tuple[dict, tuple]:
    header = ["s", "t", "eps", "alpha_hat", "n_pairs"]
    data = []
    tables = []
    for tb in report.tables:
        tables.append({
            "label": tb.label,
            "s": tb.s,
            "t": tb.t,
            "eps": tb.eps.tolist(),
            "alpha": tb.alpha.tolist(),
        })
        for e, a in zip(tb.eps, tb.alpha):
            data.append([tb.s, "" if tb.t is None else tb.t, float(e), float(a), report.n_pairs])
    payload = {
        "eps_grid": report.eps_grid.tolist(),
        "tables": tables,
        "n_pairs": report.n_pairs,
        "seed": report.seed,
        "verdict": report.verdict,
        "meta": report.meta,
    }
    return payload, (header, data)


def cmd_modulus(args):
    couple = load_couple(args.couple)
    eps = parse_grid(args.eps_grid)
    report = sp.modulus_probe(couple, args.theta, args.theta_prime, args.n_pairs, eps,
                              seed=args.seed, K=args.K, M=args.M)
    payload, rows = _modulus_payload(report)
    payload["config"] = resolved_config(args)
    emit(args, payload, rows=rows)
    return 0


def cmd_uniformity(args):
    couple = load_couple(args.couple)
    eps = parse_grid(args.eps_grid)
    s_grid = parse_grid(args.s_grid)
    t_grid = parse_grid(args.t_grid)
    report = sp.uniformity_probe(couple, eps, s_grid, t_grid, args.n_pairs,
                                 seed=args.seed, K=args.K, M=args.M)
    payload, rows = _modulus_payload(report)
    payload["config"] = resolved_config(args)
    emit(args, payload, rows=rows)
    return 0


def cmd_oracle(args):
    spec = orc.LpCoupleSpec(p0=args.p0, p1=args.p1)
    x = parse_vector(args.x)
    payload = {"config": resolved_config(args),
               "norm": orc.lp_interpolation_norm(spec, args.theta, x)}
    if args.z is not None:
        zr, zi = json.loads(args.z)
        payload["minimal_value"] = vec(orc.lp_minimal_function(spec, args.theta, x, complex(zr, zi)))
    emit(args, payload)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="interplab",
                                     description="complex interpolation laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theta=True, discretization=True):
        p.add_argument("--couple", required=True, help="path to a couple JSON file")
        p.add_argument("--x", required=True, help="vector as JSON, entries number or [re, im]")
        if theta:
            p.add_argument("--theta", type=float, required=True)
        if discretization:
            p.add_argument("--K", type=int, default=ip.DEFAULT_K)
            p.add_argument("--M", type=int, default=ip.DEFAULT_M)
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("norm", help="interpolation norm ||x||_theta")
    common(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("norm-path", help="norms along a theta grid with endpoint limits")
    common(p, theta=False)
    p.add_argument("--grid", required=True, help="theta grid as a JSON list")
    p.set_defaults(func=cmd_norm_path)

    p = sub.add_parser("kfun", help="K-functional K(x, t)")
    common(p, theta=False, discretization=False)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_kfun)

    p = sub.add_parser("gagliardo", help="Gagliardo completion norm")
    common(p, theta=False, discretization=False)
    p.add_argument("--side", type=int, choices=[0, 1], required=True)
    p.set_defaults(func=cmd_gagliardo)

    p = sub.add_parser("minfun", help="minimal function of x at theta")
    common(p)
    p.set_defaults(func=cmd_minfun)

    p = sub.add_parser("omega", help="Omega operator coefficient")
    common(p)
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("vertical", help="vertical map phi_theta^t(x)")
    common(p)
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=cmd_vertical)

    p = sub.add_parser("orbit", help="orbit samples over a t grid")
    common(p)
    p.add_argument("--t-grid", dest="t_grid", required=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("classify", help="orbit classification")
    common(p)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fourier-check", help="Fourier pairing checks for a periodic point")
    common(p)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--n-modes", dest="n_modes", type=int, default=32)
    p.set_defaults(func=cmd_fourier_check)

    p = sub.add_parser("daher", help="Daher map between spheres")
    common(p)
    p.add_argument("--theta-prime", dest="theta_prime", type=float, required=True)
    p.set_defaults(func=cmd_daher)

    p = sub.add_parser("mazur-limit", help="limit Mazur map via extrapolation")
    common(p)
    p.add_argument("--k-max", dest="k_max", type=int, default=6)
    p.set_defaults(func=cmd_mazur_limit)

    p = sub.add_parser("modulus", help="empirical modulus of the Daher map")
    p.add_argument("--couple", required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--theta-prime", dest="theta_prime", type=float, required=True)
    p.add_argument("--n-pairs", dest="n_pairs", type=int, default=400)
    p.add_argument("--eps-grid", dest="eps_grid", default="[0.5, 0.2, 0.1, 0.05]")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--K", type=int, default=sp.PROBE_K)
    p.add_argument("--M", type=int, default=sp.PROBE_M)
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_modulus)

    p = sub.add_parser("uniformity", help="uniformity probe of the vertical maps")
    p.add_argument("--couple", required=True)
    p.add_argument("--s-grid", dest="s_grid", required=True)
    p.add_argument("--t-grid", dest="t_grid", required=True)
    p.add_argument("--eps-grid", dest="eps_grid", default="[0.5, 0.2, 0.1]")
    p.add_argument("--n-pairs", dest="n_pairs", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--K", type=int, default=sp.PROBE_K)
    p.add_argument("--M", type=int, default=sp.PROBE_M)
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("oracle", help="closed-form diagonal l_p oracle values")
    p.add_argument("--p0", type=float, required=True)
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--z", default=None, help="strip point as [re, im]")
    p.add_argument("--output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ConfigError, nm.NormError, ip.InterpolationError, st.StripError,
            dy.DynamicsError, sp.SphereError, orc.OracleError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
