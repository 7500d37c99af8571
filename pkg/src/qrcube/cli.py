"""Command-line front end.

Exit codes: 0 success, 1 validation error (bad flags, files, or
arguments), 2 numeric non-convergence. Output is byte-deterministic for
identical arguments. ``--config FILE.toml`` supplies defaults for any
flag; keys are flag names with dashes or underscores, either at top
level or inside a table named after the command (``[band.sweep]``).
Top-level keys a command lacks are ignored; unknown keys in the
command's own table are errors. Flags given on the command line win.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import bbh, convnet, cube, notation, stark, unfold
from ._format import csv_lines, g12
from .errors import ConvergenceError, QrcubeError

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# helpers ----------------------------------------------------------------

def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _check_out(path):
    if path is None:
        return
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise UsageError(f"output directory does not exist: {parent}")


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _round12(obj):
    if isinstance(obj, float):
        return float(g12(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _json(obj):
    """JSON with floats at 12 significant digits, like the CSV output."""
    return json.dumps(_round12(obj), indent=1) + "\n"


def _load_cube(path):
    try:
        return cube.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _grid_text(a):
    return "\n".join(",".join(g12(v) for v in row) for row in np.asarray(a)) + "\n"


def _grid_list(a):
    return [[float(v) for v in row] for row in np.asarray(a)]


def _complex(z):
    return {"re": float(z.real) + 0.0, "im": float(z.imag) + 0.0}


def _ctext(z):
    im = g12(z.imag)
    return f"{g12(z.real)}{im if im.startswith('-') else '+' + im}j"


# cube -------------------------------------------------------------------

_NEW_KINDS = ("labeled", "uniform", "bbh", "stark", "spin", "pauli-x")


def _cmd_cube_new(a):
    _check_out(a.out)
    if a.kind in ("labeled", "uniform"):
        state = cube.CubeState.labeled(a.order) if a.kind == "labeled" else cube.CubeState.uniform(a.order)
    elif a.kind == "bbh":
        state = bbh.bbh_cube()
    elif a.kind == "stark":
        state = stark.stark_cube(stark.StarkConfig(field=a.field))
    elif a.kind == "spin":
        state = cube.spin_expansion_cube()
    else:
        state = cube.pauli_x_cube()
    _emit(cube.dumps(state), a.out)


def _cmd_cube_apply(a):
    start = _load_cube(a.state)
    _check_out(a.out)
    seq = notation.parse(a.moves)
    _emit(cube.dumps(cube.apply(start, seq)), a.out)


def _search_payload(res):
    return {
        "found": res.found,
        "sequence": notation.format_sequence(res.sequence) if res.found else None,
        "length": len(res.sequence) if res.found else None,
        "reason": res.reason,
    }


def _search_text(res):
    if res.found:
        return (notation.format_sequence(res.sequence) or "(empty)") + "\n"
    return f"not found ({res.reason})\n"


def _cmd_cube_search(a):
    start, target = _load_cube(a.start), _load_cube(a.target)
    _check_out(a.out)
    res = cube.search_sequence(start, target, a.max_depth)
    _emit(_json(_search_payload(res)) if a.format == "json" else _search_text(res), a.out)


def _cmd_cube_spin(a):
    _check_out(a.out)
    spin, target = cube.spin_expansion_cube(), cube.pauli_x_cube()
    reached = cube.apply(spin, cube.SPIN_TO_PAULI_X) == target
    res = cube.search_sequence(spin, target, a.max_depth)
    if a.format == "json":
        _emit(_json({"sequence": cube.SPIN_TO_PAULI_X, "reaches_target": reached, "search": _search_payload(res)}), a.out)
    else:
        _emit(f"reference sequence: {cube.SPIN_TO_PAULI_X}\nreaches target: {str(reached).lower()}\n"
              f"search: {_search_text(res)}", a.out)


# band -------------------------------------------------------------------

def _cmd_band_sweep(a):
    _check_out(a.out)
    grid = bbh.ComplexGrid(a.re_min, a.re_max, a.re_n, a.im_min, a.im_max, a.im_n)
    params = bbh.BbhParams(a.gamma, a.lam, a.delta)
    records = bbh.band_sweep(a.variant, grid, params)
    if a.format == "json":
        _emit(_json([{"k": _complex(r.momentum), "eigenvalues": [_complex(z) for z in r.eigenvalues]}
                     for r in records]), a.out)
    else:
        _emit(bbh.sweep_csv(records), a.out)


def _cmd_band_check(a):
    _check_out(a.out)
    rep = bbh.oracle_check(a.variant, bbh.square_grid(a.samples, a.re_min, a.re_max, a.im_min, a.im_max), a.tol)
    if a.format == "json":
        _emit(_json({"variant": rep.variant, "samples": rep.samples, "max_deviation": rep.max_deviation,
                     "worst_point": _complex(rep.worst_point), "tol": rep.tol, "ok": rep.ok}), a.out)
    else:
        _emit(f"variant: {rep.variant}\nsamples: {rep.samples}\nmax deviation: {g12(rep.max_deviation)}\n"
              f"worst point: {_ctext(rep.worst_point)}\nok: {str(rep.ok).lower()}\n", a.out)
    return 0 if rep.ok else 1


# stark ------------------------------------------------------------------

def _cmd_stark_splitting(a):
    _check_out(a.out)
    if a.f_n < 2 or not a.f_max > 0:
        raise UsageError("need --f-n >= 2 and --f-max > 0")
    rows = stark.splitting_data(_floats(a.scales), np.linspace(0.0, a.f_max, a.f_n))
    if a.format == "json":
        _emit(_json([dict(zip(stark.SPLITTING_HEADER, r)) for r in rows]), a.out)
    else:
        _emit(stark.splitting_csv(rows), a.out)


def _cmd_stark_dipole(a):
    _check_out(a.out)
    av, bv = stark.dipole_coefficients(1.0, a.tol)
    if a.format == "json":
        _emit(_json({"A": av, "B": bv, "A_exact": stark.A_COEF, "B_exact": stark.B_COEF}), a.out)
    else:
        _emit(csv_lines(("coefficient", "quadrature", "closed_form"),
                        [("A", av, stark.A_COEF), ("B", bv, stark.B_COEF)]), a.out)


def _cmd_stark_cube(a):
    _check_out(a.out)
    state = stark.stark_cube(stark.StarkConfig(field=a.field))
    if a.apply:
        state = stark.apply_fifth_order_sequence(state)
    _emit(cube.dumps(state), a.out)


# conv -------------------------------------------------------------------

_EXPECTED_SUM = [[-0.5, 0.4, 0.7], [0.3, 1.9, 1.9], [0.5, 1.5, 1.0]]
_EXPECTED_BACKWARD = ([[0.1, 0.5, 0.6], [0.4, 1.6, 1.6], [0.4, 1.2, 0.8]],
       [[-0.6, -0.1, 0.1], [-0.1, 0.3, 0.3], [0.1, 0.3, 0.2]])


def conv_demo_data() -> dict:
    w1, w2 = convnet.DEMO_KERNELS
    d1, d2 = convnet.DEMO_DELTAS
    return {
        "kernels": [w1, w2],
        "deltas": [d1, d2],
        "padded": [convnet.zero_pad(d1, 1), convnet.zero_pad(d2, 1)],
        "rotated": [convnet.rotate180(w1), convnet.rotate180(w2)],
        "backward": [convnet.backward_figure(d1, w1), convnet.backward_figure(d2, w2)],
        "sum": convnet.multi_kernel_backward([d1, d2], [w1, w2]),
    }


def _cmd_conv_demo(a):
    _check_out(a.out)
    data = conv_demo_data()
    expected = list(_EXPECTED_BACKWARD) + [_EXPECTED_SUM]
    got = data["backward"] + [data["sum"]]
    if any(np.max(np.abs(np.asarray(g) - np.asarray(e))) > 1e-12 for g, e in zip(got, expected)):
        raise UsageError("demo numbers differ from the reference values")
    if a.format == "json":
        _emit(_json({k: [_grid_list(m) for m in v] if isinstance(v, list) else _grid_list(v)
                     for k, v in data.items()}), a.out)
        return
    parts = []
    for name, title in (("kernels", "kernel"), ("deltas", "delta"), ("padded", "padded delta"),
                        ("rotated", "rotated kernel"), ("backward", "backward")):
        for i, m in enumerate(data[name], 1):
            parts.append(f"# {title} {i}\n{_grid_text(m)}")
    parts.append(f"# sum\n{_grid_text(data['sum'])}")
    _emit("\n".join(parts), a.out)


# unfold -----------------------------------------------------------------

def _cmd_unfold(a):
    state = _load_cube(a.state) if a.state else None
    _check_out(a.out)
    d = unfold.unfold(a.order if state is None else state.order)
    if state is not None and a.order is not None and a.order != state.order:
        raise UsageError(f"--order {a.order} does not match the state's order {state.order}")
    d = unfold.color_by_state(d, state or cube.CubeState.labeled(d.order))
    _emit(unfold.dumps(d) if a.format == "json" else unfold.render_svg(d), a.out)


_REQUIRED = {"cube.apply": ("state", "moves"), "cube.search": ("start", "target")}


# parser -----------------------------------------------------------------

def _common(p, formats=("text", "json")):
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--config", default=None, help="TOML file of flag defaults")


def build_parser():
    parser = _Parser(prog="qrcube", description="Cube-state algebra, spectra and figure data.")
    top = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    leaves = {}

    def leaf(group, path, name, func, **kw):
        p = group.add_parser(name, **kw)
        p.set_defaults(func=func, path=path)
        leaves[path] = p
        return p

    pc = top.add_parser("cube", help="cube states and move sequences")
    cs = pc.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = leaf(cs, "cube.new", "new", _cmd_cube_new, help="write a cube state")
    p.add_argument("--kind", choices=_NEW_KINDS, default="labeled")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--field", type=float, default=1.0)
    _common(p, ("json",))
    p = leaf(cs, "cube.apply", "apply", _cmd_cube_apply, help="apply a move sequence")
    p.add_argument("--state")
    p.add_argument("--moves")
    _common(p, ("json",))
    p = leaf(cs, "cube.search", "search", _cmd_cube_search, help="shortest mapping sequence")
    p.add_argument("--start")
    p.add_argument("--target")
    p.add_argument("--max-depth", type=int, default=6)
    _common(p)
    p = leaf(cs, "cube.spin", "spin", _cmd_cube_spin, help="check the spin-to-sigma-x sequence")
    p.add_argument("--max-depth", type=int, default=5)
    _common(p)

    pb = top.add_parser("band", help="BBH band structure")
    bs = pb.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = leaf(bs, "band.sweep", "sweep", _cmd_band_sweep, help="eigenvalues over a complex momentum grid")
    p.add_argument("--variant", choices=("mirror", "antimirror"), default="mirror")
    for name, val in (("re-min", -6.0), ("re-max", -4.0), ("im-min", -1.0), ("im-max", 1.0)):
        p.add_argument(f"--{name}", type=float, default=val)
    p.add_argument("--re-n", type=int, default=21)
    p.add_argument("--im-n", type=int, default=21)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.0)
    _common(p, ("csv", "json"))
    p = leaf(bs, "band.check", "check", _cmd_band_check, help="closed form against numeric spectra")
    p.add_argument("--variant", choices=("mirror", "antimirror"), default="mirror")
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--tol", type=float, default=1e-8)
    for name, val in (("re-min", -6.0), ("re-max", -4.0), ("im-min", -1.0), ("im-max", 1.0)):
        p.add_argument(f"--{name}", type=float, default=val)
    _common(p)

    ps = top.add_parser("stark", help="hydrogen Stark effect")
    ss = ps.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = leaf(ss, "stark.fig5", "fig5", _cmd_stark_splitting, aliases=["splitting"], help="level splitting against field")
    p.add_argument("--scales", type=_floats, default=list(stark.SPLITTING_SCALES))
    p.add_argument("--f-max", type=float, default=0.1)
    p.add_argument("--f-n", type=int, default=11)
    _common(p, ("csv", "json"))
    p = leaf(ss, "stark.dipole", "dipole", _cmd_stark_dipole, help="dipole coefficients by quadrature")
    p.add_argument("--tol", type=float, default=1e-8)
    _common(p, ("csv", "json"))
    p = leaf(ss, "stark.cube", "cube", _cmd_stark_cube, help="fifth-order Stark cube")
    p.add_argument("--field", type=float, default=1.0)
    p.add_argument("--apply", action="store_true", help="run the fifth-order move sequence")
    _common(p, ("json",))

    pv = top.add_parser("conv", help="convolution figures")
    vs = pv.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = leaf(vs, "conv.demo", "demo", _cmd_conv_demo, help="forward/backward figure pipeline")
    _common(p)

    p = leaf(top, "unfold", "unfold", _cmd_unfold, help="Josephus-ring diagram")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--state", default=None)
    _common(p, ("svg", "json"))
    return parser, leaves


def _config_defaults(path, table_path, leaf):
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"{path} is not valid TOML: {exc}") from None
    # shared levels (top, then group) are lenient; the command's own table is strict
    parts = table_path.split(".")
    merged = {}
    node = data
    for depth in range(len(parts) + 1):
        if depth:
            node = node.get(parts[depth - 1], {}) if isinstance(node, dict) else {}
        if not isinstance(node, dict):
            raise UsageError(f"config entry {'.'.join(parts[:depth])!r} must be a table")
        strict = depth == len(parts)
        merged.update({k: (v, strict) for k, v in node.items() if not isinstance(v, dict)})
    known = {act.dest: act for act in leaf._actions}
    out = {}
    for key, (value, strict) in merged.items():
        dest = key.replace("-", "_")
        if dest not in known or dest in ("help", "config", "func", "path"):
            if strict:
                raise UsageError(f"unknown config key {key!r} for {table_path.replace('.', ' ')}")
            continue
        act = known[dest]
        if act.choices is not None and value not in act.choices:
            raise UsageError(f"config key {key!r}: {value!r} not in {list(act.choices)}")
        if act.type is not None and not isinstance(value, (list, bool)):
            try:
                value = act.type(value)
            except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"config key {key!r}: {exc}") from None
        out[dest] = value
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, leaves = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            leaf = leaves[args.path]
            leaf.set_defaults(**_config_defaults(args.config, args.path, leaf))
            args = parser.parse_args(argv)
        missing = [f"--{d}" for d in _REQUIRED.get(args.path, ()) if getattr(args, d) is None]
        if missing:
            raise UsageError(f"missing required option(s): {', '.join(missing)}")
        if args.path == "unfold" and args.order is None and args.state is None:
            args.order = 3
        rc = args.func(args)
        return int(rc or 0)
    except ConvergenceError as exc:
        print(f"qrcube: convergence error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, QrcubeError) as exc:
        print(f"qrcube: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
