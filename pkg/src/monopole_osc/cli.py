"""
monopole-osc: spectra, eigenfunctions, hard-wall levels, tables and figure data.

Every data command writes CSV to stdout: one '#'-prefixed JSON metadata line,
a header row, then rows formatted with %.9g. --json switches to JSON lines
(a {"meta": ...} object followed by one object per row).

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__, reports
from .dirac import dirac_eigenfunctions, dirac_energy
from .dirac import default_grid as dirac_grid
from .hardwall import (
    Condition,
    HardWallSpec,
    dirac_hardwall_asymptotic,
    exact_levels,
    kgo_hardwall_asymptotic,
)
from .kgo import default_grid as kgo_grid
from .kgo import kgo_eigenfunction, kgo_energy
from .model import (
    Branch,
    DiracChannel,
    KgoChannel,
    MonopoleBackground,
    Oscillator,
    from_dict,
)
from .specfun import DomainError

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 2, 3

# config section -> (model type, {field: flag dest})
CONFIG_SECTIONS = {
    "background": (MonopoleBackground, {"alpha": "alpha"}),
    "oscillator": (Oscillator, {"mass": "mass", "omega": "omega"}),
    "dirac_channel": (DiracChannel, {"kappa": "kappa", "n": "n"}),
    "kgo_channel": (KgoChannel, {"l": "l", "xi": "xi", "n": "n"}),
    "wall": (HardWallSpec, {"r0": "r0", "condition": "bc", "mode": "mode"}),
}

DEFAULTS = {"model": None, "alpha": "1", "mass": 1.0, "xi": 0.0, "n": "0", "omega": None,
            "omega_range": "0:2:21", "branch": "both", "l": None, "kappa": None,
            "bc": None, "mode": "both", "r0": None, "count": 5, "points": None, "s_max": None}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output

def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.9g" % value
    return str(value)


def _jsonable(value):
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def emit(rows, columns, meta, as_json, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps({"meta": meta}, sort_keys=True) + "\n")
        for row in rows:
            out.write(json.dumps({c: _jsonable(row.get(c)) for c in columns}) + "\n")
        return
    out.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_fmt(row.get(c)) for c in columns) + "\n")


# ---------------------------------------------------------------- parameters

def _load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    values = {}
    for section, content in data.items():
        if section not in CONFIG_SECTIONS:
            raise UsageError(f"unknown config section {section!r}; expected {sorted(CONFIG_SECTIONS)}")
        cls, mapping = CONFIG_SECTIONS[section]
        try:
            from_dict(cls, content)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"invalid {section} in config: {exc}")
        for key, dest in mapping.items():
            if key in content:
                values[dest] = content[key]
    return values


def resolve(args):
    """Merge defaults < config file < explicit flags into a plain dict."""
    keys = set(vars(args)) - {"command"}
    params = {k: DEFAULTS.get(k) for k in keys}
    if getattr(args, "config", None):
        params.update({k: v for k, v in _load_config(args.config).items() if k in keys})
    for key in keys:
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if "model" in keys and params["model"] is None and args.command != "hardwall":
        params["model"] = "dirac"
    return params


def _float_list(text, name):
    try:
        return [float(x) for x in str(text).split(",")]
    except ValueError:
        raise UsageError(f"--{name} expects a comma-separated list of numbers, got {text!r}")


def _int_list(text, name):
    values = _float_list(text, name)
    if any(v != int(v) or v < 0 for v in values):
        raise UsageError(f"--{name} expects non-negative integers, got {text!r}")
    return [int(v) for v in values]


def _omega_range(text):
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"--omega-range expects lo:hi:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--omega-range expects lo:hi:steps, got {text!r}")
    if steps < 1 or lo < 0 or hi < lo:
        raise UsageError("--omega-range needs steps >= 1 and 0 <= lo <= hi")
    return [lo] if steps == 1 else list(np.linspace(lo, hi, steps))


def _model_channel(params, n, model=None):
    model = model or params["model"]
    if model == "dirac":
        if params.get("kappa") is None:
            raise UsageError("the Dirac model needs --kappa")
        if params.get("l") is not None or params.get("xi") not in (None, 0.0, DEFAULTS["xi"]):
            raise UsageError("--l/--xi belong to the kgo model; the Dirac channel is set by --kappa")
        return DiracChannel(kappa=float(params["kappa"]), n=n)
    if model == "kgo":
        if params.get("kappa") is not None:
            raise UsageError("--kappa belongs to the Dirac model; use --l and --xi for kgo")
        return KgoChannel(l=int(params["l"] or 0), xi=float(params["xi"]), n=n)
    raise UsageError(f"unknown model {model!r}")


def _single(values, name):
    if len(values) != 1:
        raise UsageError(f"--{name} takes a single value for this command")
    return values[0]


# ---------------------------------------------------------------- commands

def cmd_spectrum(params):
    alphas = _float_list(params["alpha"], "alpha")
    ns = _int_list(params["n"], "n")
    mass = float(params["mass"])
    omegas = _omega_range(params["omega_range"])
    branch = params["branch"]
    energy_fn = dirac_energy if params["model"] == "dirac" else kgo_energy
    rows = []
    for alpha in alphas:
        bg = MonopoleBackground(alpha)
        for n in ns:
            ch = _model_channel(params, n)
            for w in omegas:
                osc = Oscillator(mass, w * mass)
                row = {"omega_over_m": w, "n": n, "alpha": alpha, "energy_pos": None, "energy_neg": None}
                if branch in ("pos", "both"):
                    row["energy_pos"] = energy_fn(bg, ch, osc, Branch.POSITIVE).value / mass
                if branch in ("neg", "both"):
                    row["energy_neg"] = energy_fn(bg, ch, osc, Branch.NEGATIVE).value / mass
                rows.append(row)
    rows.sort(key=lambda r: (r["alpha"], r["n"], r["omega_over_m"]))
    columns = ["omega_over_m", "n", "alpha", "energy_pos", "energy_neg"]
    return rows, columns, {}


def cmd_wavefunction(params):
    alpha = _single(_float_list(params["alpha"], "alpha"), "alpha")
    n = _single(_int_list(params["n"], "n"), "n")
    if params.get("omega") is None:
        raise UsageError("wavefunction needs --omega > 0")
    osc = Oscillator(float(params["mass"]), float(params["omega"]))
    if not osc.omega > 0:
        raise UsageError("wavefunction needs --omega > 0")
    bg = MonopoleBackground(alpha)
    ch = _model_channel(params, n)
    grid = None
    if params.get("s_max") is not None or params.get("points") is not None:
        base = (dirac_grid if params["model"] == "dirac" else kgo_grid)(bg, ch, osc)
        s_max = float(params["s_max"]) if params.get("s_max") is not None else base[-1]
        points = int(params["points"]) if params.get("points") is not None else base.size
        if s_max <= 0 or points < 2:
            raise UsageError("--s-max must be positive and --points at least 2")
        grid = np.linspace(0.0, s_max, points)
    if params["model"] == "dirac":
        branch = Branch.NEGATIVE if params["branch"] == "neg" else Branch.POSITIVE
        prof = dirac_eigenfunctions(bg, ch, osc, grid, branch)
    else:
        prof = kgo_eigenfunction(bg, ch, osc, grid)
    columns = ["s", *prof.labels]
    rows = [dict(zip(columns, (s, *vals))) for s, *vals in zip(prof.s, *prof.values)]
    meta = {"norm_constant": prof.norm_constant, "norm_source": prof.norm_source,
            "summary": reports.profile_summary(prof)}
    return rows, columns, meta


def cmd_hardwall(params):
    if params.get("bc") is None or params.get("r0") is None:
        raise UsageError("hardwall needs --bc and --r0")
    condition = Condition(params["bc"])
    mode = params["mode"]
    model = "dirac" if condition is Condition.MIT else "kgo"
    if params.get("model") not in (None, model):
        raise UsageError(f"--bc {condition.value} uses the {model} model")
    params["model"] = model
    alpha = _single(_float_list(params["alpha"], "alpha"), "alpha")
    mass = float(params["mass"])
    omega = float(params["omega"] or 0.0)
    count = int(params["count"])
    if count < 1:
        raise UsageError("--count must be at least 1")
    if mode in ("exact", "both") and not omega > 0:
        raise UsageError("exact wall levels need --omega > 0; use --mode asymptotic for omega = 0")
    bg, osc = MonopoleBackground(alpha), Oscillator(mass, omega)
    ch = _model_channel(params, 0, model)
    wall = HardWallSpec(float(params["r0"]), condition)
    meta = {}
    if mode == "both":
        rows, extra = reports.wall_comparison_rows(bg, ch, osc, wall, count)
        meta.update(extra)
    elif mode == "exact":
        rows = [{"index": lvl.n, "energy_exact": lvl.value} for lvl in exact_levels(bg, ch, osc, wall, count)]
    else:
        rows = []
        for i in range(count):
            if condition is Condition.MIT:
                e = dirac_hardwall_asymptotic(bg, ch, osc, wall, i).value
            else:
                e = kgo_hardwall_asymptotic(bg, ch, osc, wall, i, condition).value
            rows.append({"index": i, "energy_asymptotic": e})
    for row in rows:
        for key in ("energy_exact", "energy_asymptotic"):
            if row.get(key) is not None:
                row[key] /= mass
    return rows, ["index", "energy_exact", "energy_asymptotic", "rel_dev"], meta


def cmd_table(params):
    rows = reports.table_rows(int(params["id"]))
    return rows, list(rows[0]), {}


def cmd_figure(params):
    rows = reports.figure_rows(params["name"], params["panel"])
    columns = list(rows[0])
    return rows, columns, {"description": reports.FIGURES[params["name"]]}


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=None, help="emit JSON lines instead of CSV")
    common.add_argument("--config", help="JSON parameter file (background, oscillator, *_channel, wall)")

    def physics(p, lists=False):
        p.add_argument("--model", choices=("dirac", "kgo"))
        p.add_argument("--alpha", help="deficit parameter" + (" (comma list)" if lists else ""))
        p.add_argument("--kappa", type=float, help="Dirac spin-orbit number")
        p.add_argument("--l", type=int, help="KGO angular momentum")
        p.add_argument("--xi", type=float, help="KGO curvature coupling")
        p.add_argument("--n", help="radial quantum number" + (" (comma list)" if lists else ""))
        p.add_argument("--mass", type=float, help="mass m (default 1)")

    parser = argparse.ArgumentParser(prog="monopole-osc", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="energies over an omega/m grid")
    physics(p, lists=True)
    p.add_argument("--omega-range", help="lo:hi:steps in units of m (default 0:2:21)")
    p.add_argument("--branch", choices=("pos", "neg", "both"))

    p = sub.add_parser("wavefunction", parents=[common], help="normalized radial profile")
    physics(p)
    p.add_argument("--omega", type=float, help="oscillator frequency (> 0)")
    p.add_argument("--s-max", type=float, help="grid end (default s_peak + 40)")
    p.add_argument("--points", type=int, help="grid points (default 2001)")
    p.add_argument("--branch", choices=("pos", "neg"))

    p = sub.add_parser("hardwall", parents=[common], help="hard-wall levels, exact and asymptotic")
    physics(p)
    p.add_argument("--bc", choices=[c.value for c in Condition])
    p.add_argument("--mode", choices=("exact", "asymptotic", "both"))
    p.add_argument("--r0", type=float, help="wall radius")
    p.add_argument("--omega", type=float, help="oscillator frequency")
    p.add_argument("--count", type=int, help="number of levels (default 5)")

    p = sub.add_parser("table", parents=[common], help="normalization-constant tables")
    p.add_argument("--id", type=int, required=True, choices=(1, 2))

    p = sub.add_parser("figure", parents=[common], help="figure data")
    p.add_argument("--name", required=True, choices=sorted(reports.FIGURES))
    p.add_argument("--panel", required=True, choices=("left", "right"))

    p = sub.add_parser("verify", help="oracle-equivalence report (JSON)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--quick", action="store_true", help="n <= 2, alpha in {1, 0.6} (default)")
    group.add_argument("--full", action="store_true", help="full oracle grid")
    return parser


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "hardwall": cmd_hardwall,
    "table": cmd_table,
    "figure": cmd_figure,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.command == "verify":
        report = reports.run_verify("full" if args.full else "quick")
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return EXIT_OK if report["passed"] else EXIT_NUMERICAL

    try:
        params = resolve(args)
        rows, columns, extra = COMMANDS[args.command](params)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"monopole-osc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"monopole-osc {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    meta = {"command": args.command, "version": __version__, "energy_unit": "m"}
    meta["params"] = {k: _jsonable(v) for k, v in sorted(params.items())
                      if k not in ("json", "config") and v is not None}
    meta.update(extra)
    emit(rows, columns, meta, bool(params.get("json")), out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
