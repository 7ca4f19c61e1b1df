"""Command-line front end.

Subcommands:

    air-index    refractive index and dispersion scalars for given conditions
    modes        spectral profiles (CSV) and coefficient table of the LO modes
    sensitivity  shot-noise / contamination report for the ranging scheme
    multicolor   two-/three-color baseline comparison as CSV
    simulate     Monte Carlo run, immunity verdict, optional sample CSV

Every subcommand is deterministic in (config, seed): outputs carry no
timestamps and no machine state.  Exit codes: 0 success, 2 validation
error, 3 numerical/domain error.  The environment variable
COMB_RANGER_SEED overrides the default seed; an explicit --seed flag wins
over both.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

import numpy as np

from . import air_model, detection, mode_algebra, multicolor, simulator
from .air_model import AirState, Wavenumber
from .config import RunConfig, load_config
from .errors import DomainError, ValidationError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3

SEED_ENV_VAR = "COMB_RANGER_SEED"


def _fmt(value: float) -> str:
    return f"{value:.12e}"


def _resolve_seed(flag_seed: int | None, config: RunConfig) -> int:
    if flag_seed is not None:
        return flag_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValidationError(f"{SEED_ENV_VAR}={env!r} is not an integer") from exc
    return config.seed


def cmd_air_index(args: argparse.Namespace, out) -> int:
    state = AirState(
        temperature_c=args.temperature,
        pressure_pa=args.pressure,
        co2_percent=args.co2,
        water_vapor_pa=args.humidity_pa,
    )
    wn = Wavenumber.from_wavelength(args.wavelength * 1e-9)
    scalars = air_model.dispersion_scalars(wn.angular_frequency)
    rows = [
        ("wavelength_nm", args.wavelength),
        ("sigma_per_um", wn.sigma),
        ("n_phi", air_model.phase_index(wn.sigma, state)),
        ("n_g", air_model.group_index(wn.sigma, state)),
        ("k_dispersion", air_model.k_dispersion(wn.sigma)),
        ("water_term_per_pa", air_model.water_term(wn.sigma)),
        ("density_factor", air_model.density_factor(state)),
        ("delta1", scalars.delta1),
        ("delta2", scalars.delta2),
        ("eta1", scalars.eta1),
        ("eta2", scalars.eta2),
    ]
    for key, value in rows:
        print(f"{key} = {_fmt(float(value))}", file=out)
    return EXIT_OK


def _mode_table(config: RunConfig):
    """(label, coefficients, k_const) rows in the real-envelope convention."""
    pulse = config.pulse
    w_l, w_x, w_pw = detection.ranging_modes(pulse, config.state, config.length_m)
    w_lp = detection.purify(w_l, [w_x, w_pw])
    u = mode_algebra.gaussian_mode(pulse)
    rows = [
        ("u", u, None),
        ("v0", mode_algebra.hermite_gauss(0, pulse), None),
        ("v1", mode_algebra.hermite_gauss(1, pulse), None),
        ("v2", mode_algebra.hermite_gauss(2, pulse), None),
        ("w_L", w_l.mode, w_l.k_const),
        ("w_X", w_x.mode, w_x.k_const),
        ("w_Pw", w_pw.mode, w_pw.k_const),
        ("w_L_p", w_lp.mode, w_lp.k_const),
    ]
    return rows, (w_l, w_x, w_pw, w_lp)


def _envelope_coefficients(mode: mode_algebra.SpectralMode, order: int) -> list[float]:
    """Real coefficients with the basis global phase stripped."""
    vec = mode.padded(order)
    k = int(np.argmax(np.abs(vec)))
    phase = vec[k] / abs(vec[k])
    rotated = vec / phase
    return [float(c) + 0.0 for c in rotated.real]


def cmd_modes(args: argparse.Namespace, out) -> int:
    config = load_config(args.config)
    rows, _ = _mode_table(config)
    order = 2
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["mode", "c0", "c1", "c2", "k_const"])
    for label, mode, k_const in rows:
        coeffs = _envelope_coefficients(mode, order)
        writer.writerow(
            [label] + [f"{ic:.12e}" for ic in coeffs] + ["" if k_const is None else f"{k_const:.12e}"]
        )

    pulse = config.pulse
    x = np.linspace(-mode_algebra.GRID_HALF_WIDTH, mode_algebra.GRID_HALF_WIDTH, 2049)
    omega = pulse.omega0 + x * pulse.delta_omega
    scale = math.sqrt(pulse.delta_omega)
    profile_rows = [r for r in rows if r[0] in ("u", "v0", "v1", "v2", "w_L", "w_L_p")]
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        pw = csv.writer(fh, lineterminator="\n")
        pw.writerow(["x"] + [label for label, _, _ in profile_rows])
        profiles = [mode_algebra.real_profile(m, omega) * scale for _, m, _ in profile_rows]
        for i in range(x.size):
            pw.writerow([f"{x[i]:.9e}"] + [f"{p[i]:.12e}" for p in profiles])
    print(f"# profiles written to {args.out}", file=out)
    return EXIT_OK


def cmd_sensitivity(args: argparse.Namespace, out) -> int:
    config = load_config(args.config)
    report = detection.contamination_report(
        config.pulse, config.state, config.length_m, config.photons
    )
    out.write(report.to_text())
    return EXIT_OK


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"{flag}: {text!r} is not a comma-separated number list") from exc


def cmd_multicolor(args: argparse.Namespace, out) -> int:
    lambdas_nm = _parse_float_list(args.wavelengths, "--wavelengths")
    photons = _parse_float_list(args.photons, "--photons")
    expected = 2 if args.scheme == "2wi" else 3
    if len(lambdas_nm) != expected:
        raise ValidationError(
            f"scheme {args.scheme} needs {expected} wavelengths, got {len(lambdas_nm)}"
        )
    if len(photons) == 1:
        photons = photons * expected
    if len(photons) != expected:
        raise ValidationError(f"--photons needs 1 or {expected} entries")
    ws = multicolor.WavelengthSet(tuple(lam * 1e-9 for lam in lambdas_nm), tuple(photons))
    moist = AirState(20.0, 101325.0, 0.04, args.humidity_pa)

    if args.scheme == "2wi":
        comb = multicolor.two_color_combination(ws)
        alpha = multicolor.alpha_2wi(*ws.wavelengths_m)
        noise = multicolor.shot_noise_2wi(ws)
        coeff_cols = {"alpha": alpha, "beta": "", "gamma": ""}
    else:
        comb = multicolor.synth_3wi(*ws.wavelengths_m)
        noise = multicolor.shot_noise_3wi(ws, comb)
        coeff_cols = {"alpha": "", "beta": comb.weights[1], "gamma": comb.weights[2]}
    bias = comb.reconstruct(multicolor.phase_lengths(ws, moist, args.length)) - args.length

    writer = csv.writer(out, lineterminator="\n")
    header = (
        ["scheme"]
        + [f"lambda{i + 1}_nm" for i in range(expected)]
        + [f"photons{i + 1}" for i in range(expected)]
        + ["alpha", "beta", "gamma", "shot_noise_m", "humidity_bias_m"]
    )
    writer.writerow(header)
    writer.writerow(
        [args.scheme]
        + [f"{lam:.6f}" for lam in lambdas_nm]
        + [f"{n:.6e}" for n in photons]
        + [v if v == "" else f"{v:.9e}" for v in coeff_cols.values()]
        + [f"{noise:.9e}", f"{bias:.9e}"]
    )
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, out) -> int:
    config = load_config(args.config)
    config = config.with_overrides(
        seed=_resolve_seed(args.seed, config), samples=args.samples
    )
    sim_config = config.to_sim_config()
    keep = args.out is not None
    if sim_config.fluctuating_labels:
        result = simulator.immunity_report(sim_config, keep_samples=keep)
    else:
        result = simulator.run(sim_config, keep_samples=keep)
    out.write(result.to_text())
    if keep:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["index", "p_L_m", "p_X", "p_Pw_pa", "signal_m"])
            for row in result.samples:
                writer.writerow(
                    [int(row[0])] + [f"{v:.12e}" for v in row[1:]]
                )
        print(f"# samples written to {args.out}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comb-ranger",
        description="Dispersion-immune frequency-comb ranging toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_air = sub.add_parser("air-index", help="Refractive index of air for given conditions.")
    p_air.add_argument("--wavelength", type=float, default=633.0, help="vacuum wavelength [nm]")
    p_air.add_argument("--temperature", type=float, default=20.0, help="temperature [C]")
    p_air.add_argument("--pressure", type=float, default=101325.0, help="total pressure [Pa]")
    p_air.add_argument("--co2", type=float, default=0.04, help="CO2 content [percent]")
    p_air.add_argument("--humidity-pa", type=float, default=0.0, help="water vapor partial pressure [Pa]")
    p_air.set_defaults(func=cmd_air_index)

    p_modes = sub.add_parser("modes", help="LO mode profiles (CSV) and coefficient table.")
    p_modes.add_argument("--config", default=None, help="configuration file path")
    p_modes.add_argument("--out", default="mode_profiles.csv", help="profiles CSV path")
    p_modes.set_defaults(func=cmd_modes)

    p_sens = sub.add_parser("sensitivity", help="Shot-noise and contamination report.")
    p_sens.add_argument("--config", default=None, help="configuration file path")
    p_sens.set_defaults(func=cmd_sensitivity)

    p_multi = sub.add_parser("multicolor", help="Multicolor baseline comparison CSV.")
    p_multi.add_argument("--scheme", choices=("2wi", "3wi"), required=True)
    p_multi.add_argument(
        "--wavelengths", default="1064,532", help="comma-separated wavelengths [nm]"
    )
    p_multi.add_argument(
        "--photons", default="4e16", help="photon number(s), single value or per wavelength"
    )
    p_multi.add_argument("--humidity-pa", type=float, default=1000.0, help="P_w for the bias column [Pa]")
    p_multi.add_argument("--length", type=float, default=1.0, help="path length [m]")
    p_multi.set_defaults(func=cmd_multicolor)

    p_sim = sub.add_parser("simulate", help="Monte Carlo homodyne simulation.")
    p_sim.add_argument("--config", default=None, help="configuration file path")
    p_sim.add_argument("--seed", type=int, default=None, help="RNG seed (wins over env and file)")
    p_sim.add_argument("--samples", type=int, default=None, help="sample count override")
    p_sim.add_argument("--out", default=None, help="write raw samples to this CSV path")
    p_sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
