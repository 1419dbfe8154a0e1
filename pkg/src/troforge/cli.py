"""Command line interface
=========================

Console script ``troforge`` with the subcommands

- ``envelope``: enveloping TRO of one Cartan factor,
- ``verify-grid``: axiom check of a built-in or a JSON grid,
- ``closure``: TRO generated by JSON generators,
- ``sweep``: the classification table over all families up to the caps,
- ``radical``: radical and exact sequence of a TRO given by blocks.

Exit codes are the ones of :class:`troforge.errors.ExitStatus`.

"""
import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from inflection import dasherize

from .config import complete_params_from_config
from .const import SWEEP_TYPE1_SHAPES
from .envelopes import CartanSpec, envelope
from .errors import ExitStatus, NotUniversalError, TroforgeError
from .grids import (
    Grid,
    build_hermitian_grid,
    build_rank_one_grid,
    build_rectangular_grid,
    build_spin_grid,
    build_symplectic_grid,
    verify_grid,
)
from .log import logger
from .matrix import element_from_json
from .output import emit, render, render_sweep, sweep_table
from .params import (
    apply_seed_override,
    check_params,
    create_default_params,
    tolerance_from_params,
)
from .radical import exact_sequence_report, tro_from_blocks
from .tro import decompose_blocks, tro_closure, word_antiautomorphism

_builtin_grids = {
    "spin": lambda n, m: build_spin_grid(n),
    "hermitian": lambda n, m: build_hermitian_grid(n),
    "symplectic": lambda n, m: build_symplectic_grid(n),
    "rectangular": lambda n, m: build_rectangular_grid(n, m),
    "rank-one": lambda n, m: build_rank_one_grid(n),
}


def _read_json(path):
    with Path(path).open() as file:
        return json.load(file)


def _echo(report, params):
    """Add the seed and the tolerances to a report dictionary."""
    report.update(seed=params.seed, **tolerance_from_params(params).to_dict())
    return report


def _emit(report, params, template_name, stem):
    text = render(report, params.output.format, template_name)
    emit(text, params.output.path_dir, stem, params.output.format)


def spec_from_args(args):
    """:class:`troforge.envelopes.CartanSpec` of ``--family --n --m --dim``."""
    values = {"n": args.n, "m": args.m, "dim": args.dim}
    names = {"I": ("n", "m"), "II": ("n",), "III": ("n",), "IV": ("dim",)}
    missing = [name for name in names.get(args.family, ()) if values[name] is None]
    if missing:
        raise ValueError(
            f"Family {args.family} needs {', '.join('--' + name for name in missing)}"
        )
    return CartanSpec(args.family, tuple(values[name] for name in names.get(args.family, ())))


def check_caps(spec, params):
    """Refuse factors above the desk scale caps of ``params.caps``."""
    caps = params.caps
    family, values = spec.family, spec.params
    if family == "IV" and values[0] - 1 > caps.spin_k:
        raise ValueError(f"{spec}: k = {values[0] - 1} > max spin k {caps.spin_k}")
    if family == "I":
        n, m = values
        if min(n, m) == 1 and max(n, m) > caps.rank1_n:
            raise ValueError(f"{spec}: rank one dimension > {caps.rank1_n}")
        if min(n, m) > 1 and n * m > caps.type1_nm:
            raise ValueError(f"{spec}: n m > {caps.type1_nm}")
    if family in ("II", "III") and values[0] > caps.type23_n:
        raise ValueError(f"{spec}: n > {caps.type23_n}")


def _envelope_row(spec, tol, seed, max_word_length):
    return envelope(spec, tol, seed, max_word_length).to_dict()


def cmd_envelope(args, params):
    """Enveloping TRO of a Cartan factor."""
    spec = spec_from_args(args)
    check_caps(spec, params)
    report = envelope(
        spec,
        tolerance_from_params(params),
        params.seed,
        params.caps.max_word_length,
    )
    stem = "envelope_" + "-".join([spec.family, *map(str, spec.params)])
    _emit(_echo(report.to_dict(), params), params, "envelope.md.j2", stem)
    return ExitStatus.OK if report.theorem_pass else ExitStatus.VERDICT_FAILED


def cmd_verify_grid(args, params):
    """Exhaustive axiom check of a grid."""
    if args.file:
        grid = Grid.from_json(_read_json(args.file))
    elif args.builtin:
        if args.kind is None or args.n is None:
            raise ValueError("--builtin needs --kind and --n")
        if args.kind == "rectangular" and args.m is None:
            raise ValueError("--kind rectangular needs --m")
        grid = _builtin_grids[args.kind](args.n, args.m)
    else:
        raise ValueError("Give either --file or --builtin")
    report = verify_grid(grid, tolerance_from_params(params))
    _emit(_echo(report.to_dict(), params), params, "grid.md.j2", f"grid_{grid.kind.name}")
    return ExitStatus.OK if report.passed else ExitStatus.VERDICT_FAILED


def generators_from_json(obj):
    """Generators from ``{"generators": [blockElementJSON, ...]}`` or a bare list."""
    items = obj["generators"] if isinstance(obj, dict) else obj
    if not isinstance(items, list):
        raise ValueError("Expected a list of generators")
    return [element_from_json(item) for item in items]


def cmd_closure(args, params):
    """TRO generated by the generators of a JSON file."""
    tol = tolerance_from_params(params)
    gens = generators_from_json(_read_json(args.file))
    closure = tro_closure(gens, tol, params.caps.max_word_length)
    report = closure.to_dict()
    report["blocks"] = [list(b) for b in decompose_blocks(closure, tol, params.seed).blocks]
    try:
        theta = word_antiautomorphism(gens, closure, tol, params.seed)
        report["theta_residual"] = theta.residual
    except NotUniversalError as err:
        report["theta_residual"] = err.residual
    _emit(_echo(report, params), params, "closure.md.j2", "closure")
    return ExitStatus.OK


def cmd_radical(args, params):
    """Radical and exact sequence of a TRO given by blocks or generators."""
    tol = tolerance_from_params(params)
    obj = _read_json(args.file)
    if isinstance(obj, dict) and "blocks" in obj:
        closure = tro_from_blocks(obj["blocks"], tol)
    else:
        closure = tro_closure(generators_from_json(obj), tol, params.caps.max_word_length)
    report = exact_sequence_report(closure, tol, params.seed)
    _emit(_echo(report.to_dict(), params), params, "radical.md.j2", "radical")
    return ExitStatus.OK if report.passed else ExitStatus.VERDICT_FAILED


def sweep_specs(params):
    """Factors visited by the sweep, in row order."""
    caps = params.caps
    specs = [CartanSpec.type4(k + 1) for k in range(2, caps.spin_k + 1)]
    specs += [CartanSpec.type3(n) for n in range(2, caps.type23_n + 1)]
    specs += [CartanSpec.type2(n) for n in range(5, caps.type23_n + 1)]
    specs += [
        CartanSpec.type1(n, m) for n, m in SWEEP_TYPE1_SHAPES if n * m <= caps.type1_nm
    ]
    specs += [CartanSpec.type1(1, n) for n in range(1, caps.rank1_n + 1)]
    specs += [CartanSpec("V"), CartanSpec("VI")]
    return specs


def cmd_sweep(args, params):
    """Envelopes of all families up to the caps."""
    tol = tolerance_from_params(params)
    specs = sweep_specs(params)
    jobs = params.sweep.jobs
    arguments = (specs, [tol] * len(specs), [params.seed] * len(specs))
    arguments += ([params.caps.max_word_length] * len(specs),)
    logger.info(f"sweep: {len(specs)} rows, {jobs} job(s)")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            rows = list(executor.map(_envelope_row, *arguments))
    else:
        rows = list(map(_envelope_row, *arguments))
    table = sweep_table(rows)
    meta = _echo({}, params)
    text = render_sweep(table, params.output.format, **meta)
    emit(text, params.output.path_dir, "sweep", params.output.format)
    return ExitStatus.OK if table["pass"].all() else ExitStatus.VERDICT_FAILED


_handlers = (cmd_envelope, cmd_verify_grid, cmd_closure, cmd_sweep, cmd_radical)


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--tol", type=float, default=None, help="Rank tolerance.")
    parser.add_argument("--eq-tol", type=float, default=None, help="Equality tolerance.")
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Seed of the randomized steps (overridden by TROFORGE_SEED).",
    )
    parser.add_argument(
        "--format", choices=("json", "markdown"), default=None, help="Report format."
    )
    parser.add_argument(
        "-o",
        "--output-dir",
        default=None,
        help="Write reports in this directory instead of printing them.",
    )
    parser.add_argument(
        "--config", default=None, help="YAML configuration file (default: XDG lookup)."
    )
    parser.add_argument("--max-spin-k", type=int, default=None, help="params.caps.spin_k")
    parser.add_argument(
        "--max-rank1-n", type=int, default=None, help="params.caps.rank1_n"
    )
    parser.add_argument(
        "--max-word-length",
        type=int,
        default=None,
        help=(
            "params.caps.max_word_length: closure word length cap. Unbounded by "
            "default since the spin factors with k = 10 need words longer than 9"
        ),
    )
    return parser


def create_parser():
    parser = argparse.ArgumentParser(
        prog="troforge",
        description="Enveloping TROs of finite dimensional JB*-triples",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = _common_parser()
    subparsers = parser.add_subparsers(dest="command", required=True)
    commands = {}
    for handler in _handlers:
        name = dasherize(handler.__name__[len("cmd_") :])
        commands[name] = subparsers.add_parser(
            name, parents=[common], help=handler.__doc__
        )
        commands[name].set_defaults(handler=handler)

    commands["envelope"].add_argument(
        "--family", required=True, choices=("I", "II", "III", "IV", "V", "VI")
    )
    for name in ("envelope", "verify-grid"):
        commands[name].add_argument("--n", type=int, default=None)
        commands[name].add_argument("--m", type=int, default=None)
    commands["envelope"].add_argument("--dim", type=int, default=None)

    grid = commands["verify-grid"]
    grid.add_argument("--kind", choices=sorted(_builtin_grids), default=None)
    grid.add_argument("--builtin", action="store_true", help="Use a built-in grid.")
    grid.add_argument("--file", default=None, help="Grid JSON file.")

    commands["closure"].add_argument("--file", required=True, help="Generators JSON.")
    commands["radical"].add_argument(
        "--file", required=True, help='JSON {"blocks": [[n, m], ...]} or generators.'
    )
    commands["sweep"].add_argument(
        "-j", "--jobs", type=int, default=None, help="params.sweep.jobs"
    )
    return parser


def params_from_args(args):
    """Defaults, configuration file, flags and ``TROFORGE_SEED``, in that order."""
    params = create_default_params()
    complete_params_from_config(params, args.config)
    flags = [
        (params.tolerance, "rank_tol", args.tol),
        (params.tolerance, "eq_tol", args.eq_tol),
        (params, "seed", args.seed),
        (params.output, "format", args.format),
        (params.output, "path_dir", args.output_dir),
        (params.caps, "spin_k", args.max_spin_k),
        (params.caps, "rank1_n", args.max_rank1_n),
        (params.caps, "max_word_length", args.max_word_length),
        (params.sweep, "jobs", getattr(args, "jobs", None)),
    ]
    for node, name, value in flags:
        if value is not None:
            setattr(node, name, value)
    apply_seed_override(params)
    check_params(params)
    return params


def run(argv=None):
    """Run the console script and return an :class:`ExitStatus`."""
    args = create_parser().parse_args(argv)
    try:
        params = params_from_args(args)
        return args.handler(args, params)
    except (TroforgeError, ValueError, KeyError, TypeError, OSError) as err:
        logger.error(f"{type(err).__name__}: {err}")
        return ExitStatus.USAGE_ERROR


def main(argv=None):
    """Used for the command troforge"""
    status = run(argv)
    if status is not ExitStatus.OK:
        logger.info(status.message)
    sys.exit(status.code)
