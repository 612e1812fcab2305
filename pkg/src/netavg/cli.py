"""Command-line front end: ``netavg <command> [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .eigenbasis import (DEFAULT_BASIS_N_MAX, ConditioningError, assemble_basis, compare_with_oracle,
                         completeness_check, kernel_fields, kernel_summary, verify_eigenbasis)
from .flows import even_flow_basis, expected_dimensions, odd_flow_basis
from .network import NetworkError, load_network, parse_generator
from .quadrature import discretize_A
from .spectral_map import (DEFAULT_N_MAX, dl_point_spectrum, lambda_images, omega_star, sinc_grid,
                           spectrum_A_finite, tree_analysis)
from .spectrum import eigendecompose

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    gen: str | None = None
    conductance: float = 1.0
    n_max: int | None = None
    nodes: int = 64
    tol: float = 1e-9
    oracle_tol: float = 1e-5
    q: int = 2
    r: int | None = None
    grid: int = 1000
    lambdas: tuple = ()
    omega_range: tuple = (0.0, 6 * math.pi)
    skip_oracle: bool = False


class InputError(Exception):
    pass


def _round(obj):
    """Recursively cast to plain JSON types with floats at 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.12g}")
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{x:.12g}" if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def _network(cfg: RunConfig):
    if cfg.gen:
        return parse_generator(cfg.gen, cfg.conductance)
    if not cfg.input:
        raise InputError("a network is required: use -i FILE or --gen kind:N")
    try:
        return load_network(cfg.input)
    except FileNotFoundError:
        raise InputError("input not found") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _n_max(cfg, default):
    return default if cfg.n_max is None else cfg.n_max


def cmd_spectrum(cfg: RunConfig):
    net = _network(cfg)
    sp = eigendecompose(net)
    desc = spectrum_A_finite(sp, _n_max(cfg, DEFAULT_N_MAX), is_tree=net.cyclomatic_number == 0)
    return {"network": net.to_json(), "spectrum_P": sp.to_json(net.vertices),
            "spectrum_A": desc.to_json()}, EXIT_OK


def cmd_basis(cfg: RunConfig):
    net = _network(cfg)
    sp = eigendecompose(net)
    n_max = _n_max(cfg, DEFAULT_BASIS_N_MAX)
    basis = assemble_basis(net, sp, n_max)
    flows = kernel_fields(net, n_max)
    return {"n_max": n_max, "count": len(basis), "flow_count": len(flows),
            "fields": [b.to_json() for b in basis],
            "flow_fields": [b.to_json() for b in flows]}, EXIT_OK


def cmd_flows(cfg: RunConfig):
    net = _network(cfg)
    odd, even = odd_flow_basis(net), even_flow_basis(net)
    d_odd, d_even = expected_dimensions(net)
    return {"odd": {"dimension": odd.dimension, "expected": d_odd,
                    "flows": [f.to_json(net) for f in odd.flows]},
            "even": {"dimension": even.dimension, "expected": d_even,
                     "flows": [f.to_json(net) for f in even.flows],
                     "flagged": list(even.flagged)}}, EXIT_OK


def cmd_verify(cfg: RunConfig):
    net = _network(cfg)
    sp = eigendecompose(net)
    n_max = _n_max(cfg, DEFAULT_BASIS_N_MAX)
    basis = assemble_basis(net, sp, n_max)
    report = verify_eigenbasis(net, basis, kernel_fields(net, n_max))
    ok = (report["gram_deviation"] <= cfg.tol and report["max_eigen_residual"] <= cfg.tol)
    out = {"basis": report, "kernel": kernel_summary(net, sp, n_max), "tol": cfg.tol}
    if not cfg.skip_oracle:
        ev = discretize_A(net, cfg.nodes).eigenvalues()
        cmp = compare_with_oracle(net, sp, cfg.nodes, tol=cfg.oracle_tol, eigenvalues=ev)
        comp = completeness_check(net, sp, basis, cfg.nodes, cfg.oracle_tol, eigenvalues=ev)
        out["oracle"] = cmp
        out["completeness"] = comp
        ok = ok and cmp["ok"] and comp["ok"]
    out["passed"] = ok
    return out, EXIT_OK if ok else EXIT_VERIFY


def cmd_map(cfg: RunConfig):
    lo, hi = cfg.omega_range
    rows = [("grid", w, v, "", "") for w, v in sinc_grid(lo, hi, cfg.grid)]
    rows += [("image", "", m, lam, n)
             for lam, n, m in lambda_images(cfg.lambdas, _n_max(cfg, DEFAULT_N_MAX))]
    return dumps_csv(["kind", "omega", "mu", "lambda", "n"], rows), EXIT_OK


def cmd_omega_star(cfg: RunConfig):
    w = omega_star(1e-12)
    return {"omega_star": w, "value": math.sin(w) / w, "tan_residual": abs(math.tan(w) - w)}, EXIT_OK


def cmd_tree(cfg: RunConfig):
    return tree_analysis(cfg.q).to_json(), EXIT_OK


def cmd_dl(cfg: RunConfig):
    r = cfg.q if cfg.r is None else cfg.r
    return dl_point_spectrum(cfg.q, r), EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum, "basis": cmd_basis, "flows": cmd_flows, "verify": cmd_verify,
    "map": cmd_map, "omega-star": cmd_omega_star, "tree": cmd_tree, "dl": cmd_dl,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="netavg",
                                description="Spectrum and eigenbasis of the averaging operator "
                                            "on metric graphs.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("-i", "--input", help="network JSON file")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.add_argument("--gen", help="inline generator kind:N (cycle, path, complete, star)")
    p.add_argument("--conductance", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=None,
                   help="truncation of the index n (default 3 for basis/verify, 8 otherwise)")
    p.add_argument("--nodes", type=int, default=64, help="quadrature nodes per edge")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--oracle-tol", type=float, default=1e-5)
    p.add_argument("--skip-oracle", action="store_true")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--lambdas", type=float, nargs="*", default=[])
    p.add_argument("--range", type=float, nargs=2, default=[0.0, 6 * math.pi],
                   metavar=("WMIN", "WMAX"))
    return p


def config_from_args(ns) -> RunConfig:
    return RunConfig(command=ns.command, input=ns.input, output=ns.output, gen=ns.gen,
                     conductance=ns.conductance, n_max=ns.n_max, nodes=ns.nodes, tol=ns.tol,
                     oracle_tol=ns.oracle_tol, q=ns.q, r=ns.r, grid=ns.grid,
                     lambdas=tuple(ns.lambdas), omega_range=tuple(ns.range),
                     skip_oracle=ns.skip_oracle)


def run(cfg: RunConfig):
    """(text, exit code) for a configuration; input problems give code 2."""
    try:
        result, code = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        return str(exc), EXIT_INPUT
    except (NetworkError, ConditioningError, ValueError) as exc:
        return f"input error: {exc}", EXIT_INPUT
    text = result if isinstance(result, str) else dumps_json(result)
    return text, code


def main(argv=None) -> int:
    cfg = config_from_args(build_parser().parse_args(argv))
    text, code = run(cfg)
    if code == EXIT_INPUT:
        print(text, file=sys.stderr)
        return code
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
