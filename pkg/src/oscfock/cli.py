"""
Command-line interface.

    oscfock state KIND [parameters] -o state.json
    oscfock observables state.json [--allow-unnormalized]
    oscfock density state.json [grid flags] -o grid.csv
    oscfock verify --tier fast|full

Complex parameters are entered as modulus/argument pairs.  Exit codes:
0 success, 1 verification failure, 2 usage error, 3 convergence error.
"""

import argparse
import json
import os
import sys
from contextlib import nullcontext

import numpy as np

from . import __version__
from .density import density_grid, sidecar, write_density_csv, write_sidecar
from .errors import ConvergenceError, OscFockError
from .fock import ModePair, SqueezeSpec, dumps_state, load_state, save_state
from .observables import dispersion_1d_analytic, dispersion_2d_analytic, uncertainty_products
from .states import (
    MAX_SQUEEZE,
    SU2CoherentSpec,
    coherent_1d,
    expansion_2d,
    squeezed_1d,
    squeezed_2d,
    squeezed_vacuum_exponential,
    su2_coherent,
    suggest_cutoff,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3
DEFAULT_CUTOFF_CAP = 120
MODE_RESCALE_TOL = 1e-9
KINDS = ("coherent1d", "squeezed1d", "su2cs", "squeezed2d", "squeezedvac")


def _polar(mod, arg):
    return complex(mod * np.exp(1j * arg))


def _modes(args):
    alpha = _polar(args.alpha_mod, args.alpha_arg)
    beta = _polar(args.beta_mod, args.beta_arg)
    total = abs(alpha) ** 2 + abs(beta) ** 2
    pair, factor = ModePair.rescaled(alpha, beta)
    if abs(total - 1.0) > MODE_RESCALE_TOL:
        print(f"note: rescaled (alpha, beta) by {factor:.12g} to satisfy |alpha|^2+|beta|^2=1",
              file=sys.stderr)
    return pair, factor


def _spec(args):
    return SqueezeSpec(_polar(args.psi_mod, args.psi_arg), args.r, args.theta)


def _auto_cutoff(spec, cap):
    if spec.squeeze_modulus >= MAX_SQUEEZE:
        return 0  # the constructor refuses with its own guidance
    need = suggest_cutoff(spec)
    if need is None or need > cap:
        raise ConvergenceError(
            f"default cutoff would exceed {cap}; pass --cutoff explicitly", suggested_cutoff=need
        )
    return need


def build_state(args):
    kind = args.kind
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    if kind == "coherent1d":
        z = _polar(args.z_mod, args.z_arg)
        lam = abs(z) ** 2
        cutoff = args.cutoff if args.cutoff is not None else int(np.ceil(lam + 10 * np.sqrt(lam + 1) + 20))
        state = coherent_1d(z, cutoff)
    elif kind == "squeezed1d":
        spec = _spec(args)
        cutoff = args.cutoff if args.cutoff is not None else _auto_cutoff(spec, 400)
        state = squeezed_1d(spec, cutoff)
    elif kind == "su2cs":
        modes, factor = _modes(args)
        cfg["mode_rescale"] = factor
        cutoff = args.cutoff if args.cutoff is not None else args.nu
        state = su2_coherent(SU2CoherentSpec(args.nu, modes), cutoff)
    elif kind == "squeezed2d":
        modes, factor = _modes(args)
        cfg["mode_rescale"] = factor
        if args.eigen_z_mod is not None:
            if args.terms is None:
                raise OscFockError("--eigen-z-mod needs --terms")
            cutoff = args.cutoff if args.cutoff is not None else args.terms - 1
            gamma = -np.exp(1j * args.theta) * np.tanh(args.r)
            state, _ = expansion_2d(_polar(args.eigen_z_mod, args.eigen_z_arg), gamma, modes,
                                    cutoff, args.terms)
        else:
            spec = _spec(args)
            if args.cutoff is not None:
                cutoff = args.cutoff
            elif args.terms is not None:
                cutoff = args.terms - 1
            else:
                cutoff = _auto_cutoff(spec, DEFAULT_CUTOFF_CAP)
            state = squeezed_2d(spec, modes, cutoff, terms=args.terms)
    elif kind == "squeezedvac":
        modes, factor = _modes(args)
        cfg["mode_rescale"] = factor
        spec = SqueezeSpec(0.0, args.r, args.theta)
        cutoff = args.cutoff if args.cutoff is not None else _auto_cutoff(spec, DEFAULT_CUTOFF_CAP)
        state = squeezed_vacuum_exponential(spec, modes, cutoff)
    else:  # argparse restricts choices
        raise OscFockError(f"unknown kind {kind!r}")
    return state.replace(metadata={"config": cfg, "version": __version__})


def cmd_state(args):
    state = build_state(args)
    if args.output == "-":
        print(dumps_state(state))
    else:
        save_state(state, args.output)
        print(f"wrote {state.kind} state (cutoff {state.cutoff}, norm {state.norm:.15g}) to {args.output}")
    return EXIT_OK


def _decode_complex(v):
    return complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)


def _decode_modes(d):
    return ModePair(_decode_complex(d["alpha"]), _decode_complex(d["beta"]))


def _decode_spec(d):
    return SqueezeSpec(_decode_complex(d["displacement"]), d["squeeze_modulus"], d["squeeze_phase"])


def analytic_for(state):
    """Closed-form variances for states whose construction parameters are known."""
    meta = state.metadata
    kind = meta.get("construction")
    if kind == "coherent_1d":
        return {"varX": 0.5, "varP": 0.5}
    if kind == "squeezed_1d":
        vx, vp = dispersion_1d_analytic(_decode_spec(meta["spec"]))
        return {"varX": vx, "varP": vp}
    if kind == "su2_coherent":
        m = _decode_modes(meta["modes"])
        nu = int(meta["nu"])
        vx, vy = 0.5 + abs(m.alpha) ** 2 * nu, 0.5 + abs(m.beta) ** 2 * nu
        return {"varX": vx, "varPx": vx, "varY": vy, "varPy": vy}
    if kind in ("squeezed_2d", "squeezed_vacuum_exponential") and not state.unnormalized:
        rep = dispersion_2d_analytic(_decode_spec(meta["spec"]), _decode_modes(meta["modes"]))
        return {"varX": rep.varX, "varPx": rep.varPx, "varY": rep.varY, "varPy": rep.varPy}
    return None


def cmd_observables(args):
    state = load_state(args.state)
    rep = uncertainty_products(state, allow_unnormalized=args.allow_unnormalized)
    out = rep.to_dict()
    if state.kind == "fock1d":
        out["varP"] = out.pop("varPx")
        for k in ("varY", "varPy"):
            out.pop(k)
        out["products"] = out["products"][:1]
    out["variance_products"] = [out.get("varX") * out.get("varP", out.get("varPx"))]
    if state.kind == "fock2d":
        out["variance_products"].append(out["varY"] * out["varPy"])
    ana = analytic_for(state)
    if ana is not None:
        out["analytic"] = ana
        out["delta"] = {k: out[k] - v for k, v in ana.items()}
    out["config"] = {"command": "observables", "state": args.state,
                     "allow_unnormalized": args.allow_unnormalized}
    out["state_metadata"] = state.metadata
    text = json.dumps(out, indent=2)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_density(args):
    state = load_state(args.state)
    xr = (args.x_min, args.x_max) if args.x_min is not None else None
    yr = (args.y_min, args.y_max) if args.y_min is not None else None
    grid = density_grid(state, xr, yr, args.nx, args.ny)
    write_density_csv(grid, args.output)
    meta = sidecar(grid, state, floor=args.floor,
                   config={k: v for k, v in vars(args).items() if k != "func"})
    side = args.sidecar or os.path.splitext(args.output)[0] + ".meta.json"
    write_sidecar(meta, side)
    print(f"wrote {args.output} and {side}: mass {grid.mass:.6g}, "
          f"{meta['maxima_count']} maxima above {args.floor} x max")
    return EXIT_OK


def cmd_verify(args):
    from .verify import run_checks

    results = run_checks(args.tier, report=lambda line: print(line, flush=True))
    failed = [r for r in results if not r.passed]
    total = sum(r.seconds for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {total:.1f}s (tier {args.tier})")
    for r in failed:
        print(f"failed: {r.number} {r.name}")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="oscfock", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("state", help="construct a state and write it as JSON")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("-o", "--output", default="-")
    s.add_argument("--cutoff", type=int)
    s.add_argument("--z-mod", type=float, default=0.0)
    s.add_argument("--z-arg", type=float, default=0.0)
    s.add_argument("--psi-mod", type=float, default=0.0)
    s.add_argument("--psi-arg", type=float, default=0.0)
    s.add_argument("--r", type=float, default=0.0, help="squeeze modulus r (or R)")
    s.add_argument("--theta", type=float, default=0.0, help="squeeze phase")
    s.add_argument("--nu", type=int, default=0)
    s.add_argument("--alpha-mod", type=float, default=1.0)
    s.add_argument("--alpha-arg", type=float, default=0.0)
    s.add_argument("--beta-mod", type=float, default=0.0)
    s.add_argument("--beta-arg", type=float, default=0.0)
    s.add_argument("--terms", type=int, help="hard-truncate the 2D expansion to this many terms")
    s.add_argument("--eigen-z-mod", type=float,
                   help="squeezed2d: use this eigenvalue Z directly instead of deriving it from psi")
    s.add_argument("--eigen-z-arg", type=float, default=0.0)
    s.set_defaults(func=cmd_state)

    o = sub.add_parser("observables", help="quadrature dispersions of a state file")
    o.add_argument("state")
    o.add_argument("--allow-unnormalized", action="store_true")
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_observables)

    d = sub.add_parser("density", help="position-space density grid as CSV plus JSON sidecar")
    d.add_argument("state")
    d.add_argument("-o", "--output", required=True)
    d.add_argument("--sidecar")
    d.add_argument("--x-min", type=float)
    d.add_argument("--x-max", type=float)
    d.add_argument("--y-min", type=float)
    d.add_argument("--y-max", type=float)
    d.add_argument("--nx", type=int, default=241)
    d.add_argument("--ny", type=int, default=241)
    d.add_argument("--floor", type=float, default=0.1)
    d.set_defaults(func=cmd_density)

    v = sub.add_parser("verify", help="run the numerical verification suite")
    v.add_argument("--tier", choices=("fast", "full"), default="fast")
    v.set_defaults(func=cmd_verify)
    return p


def _thread_limit():
    n = os.environ.get("OSCFOCK_THREADS")
    if not n:
        return nullcontext()
    from threadpoolctl import threadpool_limits

    return threadpool_limits(int(n))


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for lo, hi in (("x_min", "x_max"), ("y_min", "y_max")):
        if (getattr(args, lo, None) is None) != (getattr(args, hi, None) is None):
            parser.error(f"--{lo.replace('_', '-')} and --{hi.replace('_', '-')} go together")
    try:
        with _thread_limit():
            return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (OscFockError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
