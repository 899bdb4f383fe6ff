"""Command-line entry point: ``twisted-yangian <command> [flags]``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 numerical failure.
Flags may also be given in a ``key = value`` file passed with ``--config``;
keys are the long flag names without dashes and command-line flags win.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import bae, kernels, scattering, verify
from .errors import (
    ContractError,
    ConvergenceError,
    DegenerateEquationError,
    InvalidIndexError,
    QuadratureError,
    RepresentationError,
    SizeError,
)
from .export import write_csv, write_manifest
from .kernels import AlgebraSpec
from .scattering import DefectSpec
from .special import perturbed_a_hat

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

CHANNEL_CHOICES = ("bulk", "bulk_SS", "bulk_SSbar", "boundary", "trans_full", "T", "Tbar", "Tstar", "Tbarstar")


class UsageError(Exception):
    pass


def parse_range(text, field_name):
    try:
        a, b, c = text.split(":")
        a, b, count = float(a), float(b), int(c)
    except ValueError:
        raise UsageError(f"--{field_name}: expected a:b:count, got {text!r}")
    if count < 1:
        raise UsageError(f"--{field_name}: count must be positive")
    return a, b, count


def parse_M(text):
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        try:
            k, v = item.split("=")
            out[int(k)] = int(v)
        except ValueError:
            raise UsageError(f"--M: expected l=v,..., got {text!r}")
    return out


def parse_alpha(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--alpha: expected a comma list of integers, got {text!r}")


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    n: int | None = None
    N: int | None = None
    omega: tuple = (-20.0, 20.0, 401)
    lam: tuple = (-5.0, 5.0, 101)
    L: int = 64
    M: dict = field(default_factory=dict)
    theta: float = 0.0
    alpha: tuple | None = None
    channel: str = "bulk"
    out: str = "out"
    tol: float = 1e-10
    perturb: float = 0.0
    criteria: tuple | None = None
    sea: int = 1
    bins: int | None = None
    state: str | None = None
    variant: str = "plus"

    def spec(self, required=True):
        if self.family is None and self.n is None and self.N is None:
            if required:
                raise UsageError("specify the algebra with --N or with --family and --n")
            return None
        if self.N is not None:
            s = AlgebraSpec.from_N(self.N)
            if self.family is not None and self.family != s.parity:
                raise UsageError(f"--family {self.family} is inconsistent with --N {self.N}")
            if self.n is not None and self.n != s.n:
                raise UsageError(f"--n {self.n} is inconsistent with --N {self.N}")
            return s
        if self.family is None or self.n is None:
            raise UsageError("--family and --n must be given together")
        return AlgebraSpec(self.family, self.n)

    def defect(self, spec):
        if self.alpha is None:
            return None
        if len(self.alpha) != spec.N:
            raise UsageError(f"--alpha needs {spec.N} labels, got {len(self.alpha)}")
        return DefectSpec(self.theta, self.alpha)

    def grid(self, which):
        a, b, c = self.omega if which == "omega" else self.lam
        return np.linspace(a, b, c)

    def as_dict(self):
        d = asdict(self)
        d["M"] = {str(k): v for k, v in self.M.items()}
        return d


def read_config_file(path):
    values = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key = value")
                k, v = line.split("=", 1)
                values[k.strip().replace("-", "_")] = v.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    return values


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with defaults for any flag")
    common.add_argument("--family", choices=("odd", "even"))
    common.add_argument("--n", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--omega", help="omega grid a:b:count")
    common.add_argument("--lambda", dest="lam", help="rapidity grid a:b:count (use --lambda=-5:5:11 for negative a)")
    common.add_argument("--L", type=int)
    common.add_argument("--M", help="level occupations l=v,...")
    common.add_argument("--theta", type=float)
    common.add_argument("--alpha", help="defect weights, comma list")
    common.add_argument("--channel", choices=CHANNEL_CHOICES)
    common.add_argument("--out", help="output directory (or file for solve)")
    common.add_argument("--tol", type=float)
    common.add_argument("--perturb", type=float, help="test only: relative perturbation of a_hat_1")
    common.add_argument("--criteria", help="comma list of criterion numbers (verify)")
    common.add_argument("--sea", type=int)
    common.add_argument("--bins", type=int)
    common.add_argument("--state", help="input state JSON (solve seed)")
    common.add_argument("--variant", choices=("plus", "conjugate"), help="odd-family defect factors")

    p = argparse.ArgumentParser(prog="twisted-yangian", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("verify", "run the identity suite and print a pass/fail table"),
        ("kernel", "export K and its inverse on an omega grid"),
        ("density", "export ground-state densities and hole energies"),
        ("amplitude", "export a scattering or transmission amplitude on a rapidity grid"),
        ("solve", "solve the finite-size Bethe equations and write the state as JSON"),
        ("histogram", "compare the root spacing density with the thermodynamic density"),
    ):
        sub.add_parser(name, parents=[common], help=helptext)
    return p


_CONVERTERS = {
    "family": str, "n": int, "N": int, "L": int, "theta": float, "channel": str, "out": str,
    "tol": float, "perturb": float, "sea": int, "bins": int, "state": str, "variant": str,
}


def make_config(args) -> RunConfig:
    raw = {}
    if args.config:
        raw.update(read_config_file(args.config))
    for k, v in vars(args).items():
        if k in ("config", "command") or v is None:
            continue
        raw[k] = v
    if "lambda" in raw:
        raw["lam"] = raw.pop("lambda")
    cfg = RunConfig(command=args.command)
    for k, v in raw.items():
        try:
            if k == "omega":
                cfg.omega = parse_range(v, "omega") if isinstance(v, str) else v
            elif k == "lam":
                cfg.lam = parse_range(v, "lambda") if isinstance(v, str) else v
            elif k == "M":
                cfg.M = parse_M(v)
            elif k == "alpha":
                cfg.alpha = parse_alpha(v)
            elif k == "criteria":
                cfg.criteria = tuple(int(t) for t in str(v).split(","))
            elif k in _CONVERTERS:
                setattr(cfg, k, _CONVERTERS[k](v))
            else:
                raise UsageError(f"unknown configuration key {k!r}")
        except (TypeError, ValueError):
            raise UsageError(f"invalid value for {k}: {v!r}")
    if cfg.family is not None and cfg.family not in ("odd", "even"):
        raise UsageError("family must be odd or even")
    if cfg.channel not in CHANNEL_CHOICES:
        raise UsageError(f"channel must be one of {CHANNEL_CHOICES}")
    if cfg.L < 1:
        raise UsageError("L must be positive")
    if cfg.criteria and any(c not in verify.CRITERIA for c in cfg.criteria):
        raise UsageError(f"criteria must be among {sorted(verify.CRITERIA)}")
    return cfg


# -- commands -------------------------------------------------------------------


def cmd_verify(cfg: RunConfig):
    spec = cfg.spec(required=False)
    specs = [spec] if spec is not None else None
    rows = verify.run_suite(cfg.criteria, specs, cfg.perturb)
    for r in rows:
        print(r.line())
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    return EXIT_OK if not failed else EXIT_CHECK


def _outdir(cfg):
    os.makedirs(cfg.out, exist_ok=True)
    return cfg.out


def cmd_kernel(cfg: RunConfig):
    spec = cfg.spec()
    w = cfg.grid("omega")
    K, R = kernels.kernel_matrix(spec), kernels.inverse_kernel(spec)
    d = _outdir(cfg)
    files = []
    for label, mat in (("K", K), ("RR", R)):
        for i in range(1, spec.n + 1):
            for j in range(1, spec.n + 1):
                files.append(write_csv(os.path.join(d, f"{label}_{i}_{j}.csv"),
                                       {"omega": w, "value": mat.entry(i, j)(w)}))
    write_manifest(os.path.join(d, "manifest.json"), "kernel", cfg.as_dict(), files,
                   {"spec": {"parity": spec.parity, "n": spec.n, "N": spec.N},
                    "entries": [os.path.basename(f)[:-4] for f in files]})
    print(f"wrote {len(files)} CSV files to {d}")
    return EXIT_OK


def cmd_density(cfg: RunConfig):
    spec = cfg.spec()
    w = cfg.grid("omega")
    cols = {"omega": w}
    for j in range(1, spec.n + 1):
        cols[f"sigma_{j}"] = kernels.ground_state_density(spec, j)(w)
        cols[f"eps_{j}"] = kernels.hole_energy(spec, j)(w)
    d = _outdir(cfg)
    f = write_csv(os.path.join(d, "density.csv"), cols)
    write_manifest(os.path.join(d, "manifest.json"), "density", cfg.as_dict(), [f],
                   {"spec": {"parity": spec.parity, "n": spec.n, "N": spec.N}})
    print(f"wrote {f}")
    return EXIT_OK


def _phase_for(cfg, spec):
    ch = cfg.channel
    if ch == "bulk":
        return scattering.bulk_phase(spec)
    if ch in ("bulk_SS", "bulk_SSbar"):
        return scattering.bulk_channel(spec.N, ch[5:])
    if ch == "boundary":
        return scattering.boundary_phase(spec)
    defect = cfg.defect(spec) or DefectSpec(cfg.theta, [1] + [0] * (spec.N - 1))
    dec = scattering.transmission_phase(spec, defect)
    return dec.total if ch == "trans_full" else dec.channels[ch]


def cmd_amplitude(cfg: RunConfig):
    spec = cfg.spec()
    lam = cfg.grid("lambda")
    phase = _phase_for(cfg, spec)
    q = scattering.PVQuadrature()
    amp = scattering.amplitude(phase, lam, q, allow_odd=True)
    d = _outdir(cfg)
    f = write_csv(os.path.join(d, f"amplitude_{cfg.channel}.csv"), {
        "lambda": lam, "re": amp.value.real, "im": amp.value.imag, "abs": np.abs(amp.value),
        "arg": np.angle(amp.value), "err": amp.quadrature_error})
    write_manifest(os.path.join(d, "manifest.json"), "amplitude", cfg.as_dict(), [f], {
        "spec": {"parity": spec.parity, "n": spec.n, "N": spec.N},
        "channel": cfg.channel,
        "defect": None if phase.defect is None else {"theta": phase.defect.theta, "alpha": list(phase.defect.alpha)},
        "quadrature": {"h": q.h, "order": q.order, "cutoff": q.cutoff, "omega_cap": q.omega_cap},
    })
    print(f"wrote {f}; max ||X|-1| = {np.max(np.abs(np.abs(amp.value) - 1)):.3e}")
    return EXIT_OK


def cmd_solve(cfg: RunConfig):
    if cfg.state:
        seed = bae.BetheState.from_json(cfg.state)
        spec = seed.spec
        st = bae.solve(spec, seed.L, seed=seed, defect=seed.defect, variant=seed.defect_variant, tol=cfg.tol)
    else:
        spec = cfg.spec()
        defect = cfg.defect(spec)
        M = None
        if cfg.M:
            if any(not 1 <= k <= spec.n for k in cfg.M):
                raise UsageError(f"--M levels must be in 1..{spec.n}")
            gs = bae.ground_state_counts(spec, cfg.L, defect, cfg.variant)
            M = tuple(cfg.M.get(l, gs[l - 1]) for l in range(1, spec.n + 1))
        st = bae.solve(spec, cfg.L, M=M, defect=defect, variant=cfg.variant, tol=cfg.tol)
    path = cfg.out if cfg.out.endswith(".json") else os.path.join(_outdir(cfg), "state.json")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    st.to_json(path)
    print(f"M={st.M} max residual {st.report.max_residual:.3e} -> {path}")
    return EXIT_OK


def cmd_histogram(cfg: RunConfig):
    spec = cfg.spec()
    st = bae.solve(spec, cfg.L, defect=cfg.defect(spec), variant=cfg.variant, tol=cfg.tol)
    h = bae.density_histogram(st, cfg.sea, cfg.bins)
    d = _outdir(cfg)
    f = write_csv(os.path.join(d, f"histogram_sea{cfg.sea}.csv"),
                  {"lambda": h.centers, "empirical": h.empirical, "closed_form": h.predicted})
    write_manifest(os.path.join(d, "manifest.json"), "histogram", cfg.as_dict(), [f],
                   {"spec": {"parity": spec.parity, "n": spec.n, "N": spec.N}, "M": list(st.M)})
    print(f"wrote {f}")
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify, "kernel": cmd_kernel, "density": cmd_density,
    "amplitude": cmd_amplitude, "solve": cmd_solve, "histogram": cmd_histogram,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        ctx = perturbed_a_hat(cfg.perturb) if (cfg.perturb and cfg.command != "verify") else None
        if ctx is None:
            return COMMANDS[cfg.command](cfg)
        with ctx:
            return COMMANDS[cfg.command](cfg)
    except (UsageError, ContractError, InvalidIndexError, RepresentationError, SizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        hist = ", ".join(f"{h:.2e}" for h in exc.history[-5:])
        print(f"numerical failure: {exc} (last residuals: {hist})", file=sys.stderr)
        return EXIT_NUMERIC
    except (QuadratureError, DegenerateEquationError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
