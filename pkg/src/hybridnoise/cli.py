"""Command line entry point.

Examples
--------
Default sweep for Advanced LIGO as CSV on stdout::

    hybridnoise --scenario advligo

Lossless 10 m prototype with the susceptibility columns, as JSON::

    hybridnoise --scenario prototype10m --no-losses \\
        --curves sql,interferometer,hybrid,susceptibility --format json

Spin design numbers::

    hybridnoise design --scenario advligo
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import matching
from .noise import NoiseSpectrum, compute_spectrum
from .params import (PRESETS, TWO_PI, FrequencyGrid, ParameterError, SqueezeParams,
                     from_config, strip_losses)

CURVES = ("sql", "interferometer", "hybrid", "susceptibility")
DEFAULT_CURVES = ("sql", "interferometer", "hybrid")
SCENARIOS = tuple(PRESETS) + ("custom",)


@dataclass(frozen=True)
class RunRequest:
    scenario: str = "advligo"
    config_path: Optional[str] = None
    grid: FrequencyGrid = FrequencyGrid()
    curves: tuple = DEFAULT_CURVES
    losses_enabled: bool = True
    squeezing_override_r: Optional[float] = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ParameterError(f"scenario: unknown scenario {self.scenario!r}", key="scenario")
        if self.scenario == "custom" and self.config_path is None:
            raise ParameterError("scenario: 'custom' needs --config", key="config")
        bad = [c for c in self.curves if c not in CURVES]
        if bad or not self.curves:
            raise ParameterError(f"curves: unknown or empty curve selection {bad!r}",
                                 key="curves")
        if self.output_format not in ("csv", "json"):
            raise ParameterError(f"format: {self.output_format!r}", key="format")


def resolve_parameters(scenario, config_path=None, losses_enabled=True,
                       squeezing_override_r=None):
    """Return ``(ifo, spin, sqz)`` for a scenario, config overrides applied.

    For a preset the config may override any subset of fields; a custom
    scenario takes every field from the config.
    """
    if scenario == "custom" and config_path is None:
        raise ParameterError("scenario: 'custom' needs --config", key="config")
    base = None if scenario == "custom" else PRESETS[scenario](losses=losses_enabled)
    if config_path is not None:
        try:
            mapping = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParameterError(f"config: cannot read {config_path}: {exc}",
                                 key="config") from exc
        ifo, spin, sqz = from_config(mapping, base=base)
        if not losses_enabled:
            ifo, spin = strip_losses(ifo, spin)
    else:
        ifo, spin, sqz = base
    if squeezing_override_r is not None:
        sqz = SqueezeParams(squeezing_override_r)
    return ifo, spin, sqz


def columns_for(curves):
    cols = ["f_Hz"]
    if "sql" in curves:
        cols.append("sqrt_S_sql")
    if "interferometer" in curves:
        cols.append("sqrt_S_ifo")
    if "hybrid" in curves:
        cols += ["sqrt_S_hybrid", "gain_db"]
    if "susceptibility" in curves:
        cols += ["abs_chi", "abs_chi_S"]
    return cols


def spectrum_columns(spectrum: NoiseSpectrum, curves):
    data = {
        "f_Hz": spectrum.frequency,
        "sqrt_S_sql": np.sqrt(spectrum.S_sql_x),
        "sqrt_S_ifo": np.sqrt(spectrum.S_ifo_x),
        "sqrt_S_hybrid": np.sqrt(spectrum.S_hybrid_x),
        "gain_db": spectrum.gain_db,
        "abs_chi": spectrum.abs_chi,
        "abs_chi_S": spectrum.abs_chi_S,
    }
    return {name: data[name] for name in columns_for(curves)}


def _fmt(x):
    return f"{x:.8e}"


def format_csv(columns):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = list(columns)
    writer.writerow(names)
    for row in zip(*(columns[n] for n in names)):
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def format_json(columns, meta):
    names = list(columns)
    records = [{n: float(_fmt(v)) for n, v in zip(names, row)}
               for row in zip(*(columns[n] for n in names))]
    return json.dumps({**meta, "columns": names, "records": records}, indent=1) + "\n"


def run(request: RunRequest):
    """Evaluate a request; returns ``(spectrum, text)`` with the encoded output."""
    ifo, spin, sqz = resolve_parameters(request.scenario, request.config_path,
                                        request.losses_enabled,
                                        request.squeezing_override_r)
    spectrum = compute_spectrum(request.grid, ifo, spin, sqz)
    columns = spectrum_columns(spectrum, request.curves)
    if request.output_format == "csv":
        text = format_csv(columns)
    else:
        meta = {"scenario": request.scenario, "losses": request.losses_enabled,
                "squeeze_factor_r": sqz.squeeze_factor_r}
        text = format_json(columns, meta)
    return spectrum, text


def design_report(ifo, spin):
    """Matching and balancing numbers for a parameter set.

    The single-pass coupling is taken from ``spin`` and the coupling
    mirror re-solved for balance against ``ifo``.
    """
    Gamma_matched = matching.matched_gamma_S(ifo.Theta, ifo.kappa_I, spin.Omega_S)
    theta_SP = spin.theta_SP
    A_S = spin.intracavity_loss_A_S
    b = matching.balance_coefficient(theta_SP, ifo.Theta, ifo.kappa_I, ifo.eta_I2)
    T_S = matching.balance_transmissivity(theta_SP, A_S, ifo.Theta, ifo.kappa_I, ifo.eta_I2)
    theta = 4.0 * theta_SP / (T_S + A_S)
    eta_S2 = T_S / (T_S + A_S)
    residual = matching.frequency_independent_condition(
        theta, ifo.Theta, ifo.kappa_I, ifo.eta_I2, eta_S2)
    scale = ifo.eta_I2 * ifo.Theta / ((2 * ifo.eta_I2 - 1) * ifo.kappa_I)
    Gamma_S = theta / spin.Omega_S
    return {
        "Theta_cuberoot_over_2pi_Hz": ifo.Theta ** (1 / 3) / TWO_PI,
        "Gamma_S_matched_Hz": Gamma_matched / TWO_PI,
        "theta_matched": Gamma_matched * spin.Omega_S,
        "theta_SP": theta_SP,
        "b": b,
        "T_S": T_S,
        "A_S": A_S,
        "finesse": TWO_PI / (T_S + A_S),
        "theta": theta,
        "Gamma_S_Hz": Gamma_S / TWO_PI,
        "d0": Gamma_S / spin.gamma_S,
        "balance_residual_rel": residual / scale,
    }


def _curves_arg(text):
    return tuple(c.strip() for c in text.split(",") if c.strip())


def _common_args(p):
    p.add_argument("--scenario", choices=SCENARIOS, default="advligo")
    p.add_argument("--config", help="JSON parameter file (required for custom)")
    p.add_argument("--no-losses", action="store_true",
                   help="drop all optical losses and efficiencies")
    p.add_argument("--squeezing-r", type=float, default=None,
                   help="override the two-mode squeeze factor r")
    p.add_argument("--output", help="write to this path instead of stdout")


def build_parser():
    p = argparse.ArgumentParser(
        prog="hybridnoise",
        description="Quantum noise of an interferometer read out against a "
                    "negative-mass spin system. Use 'hybridnoise design ...' "
                    "for the spin design numbers.")
    _common_args(p)
    p.add_argument("--fmin", type=float, default=1.0, help="Hz")
    p.add_argument("--fmax", type=float, default=1e4, help="Hz")
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--curves", type=_curves_arg, default=DEFAULT_CURVES,
                   help="comma separated subset of " + ",".join(CURVES))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def build_design_parser():
    p = argparse.ArgumentParser(prog="hybridnoise design",
                                description="Spin readout rate and cavity design.")
    _common_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _emit(text, path):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            if argv and argv[0] == "design":
                args = build_design_parser().parse_args(argv[1:])
                ifo, spin, _ = resolve_parameters(args.scenario, args.config,
                                                  not args.no_losses, args.squeezing_r)
                report = design_report(ifo, spin)
                if args.format == "json":
                    text = json.dumps(report, indent=1) + "\n"
                else:
                    text = "".join(f"{k:28s} {v:.9g}\n" for k, v in report.items())
            else:
                args = build_parser().parse_args(argv)
                request = RunRequest(
                    scenario=args.scenario, config_path=args.config,
                    grid=FrequencyGrid(args.fmin, args.fmax, args.points),
                    curves=args.curves, losses_enabled=not args.no_losses,
                    squeezing_override_r=args.squeezing_r, output_format=args.format)
                _, text = run(request)
        except ValueError as exc:
            for w in caught:
                print(f"warning: {w.message}", file=sys.stderr)
            print(f"error: {exc}", file=sys.stderr)
            return 2
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
