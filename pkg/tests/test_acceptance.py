"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.

Reference configuration throughout: 800 nm carrier (pinned by the 3 fs FWHM
/ relative bandwidth 1/6 combination), standard air, L = 1 m, N = 8e16
photons unless a criterion states otherwise.
"""

import math

import numpy as np

from comb_ranger import (
    AirState,
    GaussianPulse,
    PerturbationVector,
    SPEED_OF_LIGHT,
    SimConfig,
    WavelengthSet,
    alpha_2wi,
    contamination_report,
    homodyne_signal,
    inner_product,
    linearized_field,
    min_detectable,
    numeric_detection_mode,
    phase_index,
    purified_ranging_sensitivity,
    purify,
    ranging_modes,
    shot_noise_2wi,
    shot_noise_3wi,
    synth_3wi,
    time_detection_modes,
)
from comb_ranger.multicolor import phase_lengths
from comb_ranger.simulator import immunity_report, run

PULSE = GaussianPulse.from_wavelength(800e-9)
AIR = AirState.standard()
N_PHOTONS = 8e16


def record(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}  {detail}")


def test_criterion_01_standard_air_index():
    n_minus_1 = phase_index(1.0 / 0.633, AIR) - 1.0
    ok = 2.6e-4 <= n_minus_1 <= 2.8e-4
    record(1, ok, f"n_phi - 1 at 633 nm, standard dry air: {n_minus_1:.4e} in [2.6e-4, 2.8e-4]")
    assert ok


def test_criterion_02_two_color_alpha():
    alpha = alpha_2wi(1.064e-6, 0.532e-6)
    ok = 55.0 <= alpha <= 75.0
    record(2, ok, f"alpha(1064 nm, 532 nm) = {alpha:.3f} in [55, 75]")
    assert ok


def test_criterion_03_two_color_shot_noise():
    noise = shot_noise_2wi(WavelengthSet((1.064e-6, 0.532e-6), (4e16, 4e16)))
    ok = 2e-14 <= noise <= 4e-14
    record(3, ok, f"two-color shot noise at 4e16 photons/color: {noise:.3e} m in [2e-14, 4e-14]")
    assert ok


def test_criterion_04_three_color_shot_noise():
    ws = WavelengthSet((1.064e-6, 0.532e-6, 0.355e-6), (N_PHOTONS / 3,) * 3)
    noise = shot_noise_3wi(ws, synth_3wi(*ws.wavelengths_m))
    ok = 3e-13 <= noise <= 3e-12
    record(4, ok, f"three-color shot noise at 8e16 total photons: {noise:.3e} m in [3e-13, 3e-12]")
    assert ok


def test_criterion_05_mode_algebra_exactness():
    w0, dw = PULSE.omega0, PULSE.delta_omega
    w_phi, w_g, w_gvd = time_detection_modes(PULSE)
    phi_p = purify(w_phi, [w_g, w_gvd])
    gvd_p = purify(w_gvd, [w_phi, w_g])
    checks = {
        "w_gvd coefficients": np.allclose(
            w_gvd.mode.padded(2), [1 / math.sqrt(3), 0, math.sqrt(2 / 3)], rtol=1e-12, atol=1e-14
        ),
        "w_phi^p coefficients": np.allclose(
            phi_p.mode.padded(2), [math.sqrt(2 / 3), 0, -1 / math.sqrt(3)], rtol=1e-12, atol=1e-14
        ),
        "K_phi^p": abs(phi_p.k_const / (math.sqrt(2 / 3) * w0) - 1) < 1e-12,
        "K_gvd^p": abs(gvd_p.k_const / (math.sqrt(2) * dw**2 / w0) - 1) < 1e-12,
    }
    ok = all(checks.values())
    record(5, ok, f"mode/constant identities to 1e-12: {checks}")
    assert ok


def test_criterion_06_signal_cross_terms():
    rng = np.random.default_rng(2026)
    w_phi, w_g, w_gvd = time_detection_modes(PULSE)
    r2 = PULSE.delta_omega**2 / PULSE.omega0**2
    worst = 0.0
    for _ in range(25):
        p_phi, p_g, p_gvd = rng.uniform(-1, 1, 3) * (1e-19, 1e-18, 1e-18)
        field = linearized_field(PULSE, PerturbationVector.time_delays(p_phi, p_g, p_gvd))
        s_phi = homodyne_signal(field, w_phi)
        s_gvd = homodyne_signal(field, w_gvd)
        expect_phi = p_phi + r2 * p_gvd
        expect_gvd = p_phi / (3 * r2) + p_gvd
        worst = max(
            worst,
            abs(s_phi / expect_phi - 1.0),
            abs(s_gvd / expect_gvd - 1.0),
        )
    ok = worst < 1e-10
    record(6, ok, f"phase/GVD signal cross-terms, worst relative error {worst:.2e} < 1e-10")
    assert ok


def test_criterion_07_displacement_sensitivity():
    w_l = ranging_modes(PULSE, AIR, 1.0)[0]
    noise = min_detectable(w_l.k_const, N_PHOTONS)
    same = SPEED_OF_LIGHT / (2 * math.sqrt(N_PHOTONS) * math.sqrt(PULSE.omega0**2 + PULSE.delta_omega**2))
    ok = 1.5e-16 <= noise <= 3e-16 and abs(noise / same - 1) < 1e-12
    record(7, ok, f"comb displacement shot noise: {noise:.3e} m in [1.5e-16, 3e-16]")
    assert ok


def test_criterion_08_contamination_prefactors():
    report = contamination_report(PULSE, AIR, 1.0, N_PHOTONS, baselines=False)
    x_ok = abs(report.x_contamination_per_m / 27e-5 - 1.0) <= 0.20
    pw_ok = abs(report.pw_contamination_per_m_pa / -3.7e-10 - 1.0) <= 0.05
    ok = x_ok and pw_ok
    record(
        8,
        ok,
        f"prefactors: X {report.x_contamination_per_m:.3e} (20% of 2.7e-4), "
        f"Pw {report.pw_contamination_per_m_pa:.3e} (5% of -3.7e-10)",
    )
    assert ok


def test_criterion_09_purified_ranging_sensitivity():
    sens = purified_ranging_sensitivity(PULSE, AIR, 1.0, N_PHOTONS)
    full_ok = 2e-11 / 3 <= sens.full_m <= 2e-11 * 3
    x_only_ok = 3e-13 / 3 <= sens.x_only_m <= 3e-13 * 3
    order_ok = sens.full_m > sens.x_only_m > sens.raw_m
    ok = full_ok and x_only_ok and order_ok
    record(
        9,
        ok,
        f"purified sensitivities: full {sens.full_m:.3e} m (factor-3 of 2e-11: {full_ok}), "
        f"X-only {sens.x_only_m:.3e} m (factor-3 of 3e-13: {x_only_ok}), "
        f"ordering full > X-only > raw: {order_ok}",
    )
    assert ok


def test_criterion_10_oracle_equivalence():
    rng = np.random.default_rng(77)
    worst_coeff = 0.0
    worst_k = 0.0
    for _ in range(10):
        lam = rng.uniform(600e-9, 1600e-9)
        rel_bw = rng.uniform(0.05, 0.2)
        pulse = GaussianPulse.from_wavelength(lam, rel_bw)
        state = AirState(
            rng.uniform(0.0, 40.0),
            rng.uniform(8e4, 1.1e5),
            rng.uniform(0.03, 0.05),
            rng.uniform(0.0, 2000.0),
        )
        length = rng.uniform(0.1, 100.0)
        for analytic in ranging_modes(pulse, state, length):
            numeric = numeric_detection_mode(analytic.label, pulse, state, length)
            order = numeric.mode.order
            dev = float(
                np.max(np.abs(analytic.mode.padded(order) - numeric.mode.padded(order)))
            )
            k_rel = abs(numeric.k_const / analytic.k_const - 1.0)
            worst_coeff = max(worst_coeff, dev)
            worst_k = max(worst_k, k_rel)
    ok = worst_coeff < 1e-3 and worst_k < 1e-3
    record(
        10,
        ok,
        f"finite-difference oracle over 10 random configs: worst coefficient "
        f"deviation {worst_coeff:.2e} < 1e-3, worst K relative {worst_k:.2e} < 1e-3",
    )
    assert ok


def test_criterion_11_purification_orthogonality_and_cost():
    w_l, w_x, w_pw = ranging_modes(PULSE, AIR, 1.0)
    pure = purify(w_l, [w_x, w_pw])
    o_x = abs(inner_product(pure.mode, w_x.mode).real)
    o_pw = abs(inner_product(pure.mode, w_pw.mode).real)
    sens = purified_ranging_sensitivity(PULSE, AIR, 1.0, N_PHOTONS)
    k_rel = abs(pure.k_const / sens.k_full - 1.0)
    ok = o_x < 1e-10 and o_pw < 1e-10 and k_rel < 1e-10
    record(
        11,
        ok,
        f"purified overlaps {o_x:.1e}, {o_pw:.1e} < 1e-10; closed-form vs "
        f"Gram-Schmidt K_L^p relative difference {k_rel:.1e} < 1e-10",
    )
    assert ok


def test_criterion_12_monte_carlo_calibration():
    base = dict(
        pulse=PULSE, state=AIR, length_m=1.0, n_photons=N_PHOTONS, sample_count=100_000
    )
    quiet = SimConfig(lo_choice="raw", rng_seed=7, **base)
    res_quiet = run(quiet)
    se_sigma = res_quiet.predicted_sigma_m / math.sqrt(2 * (quiet.sample_count - 1))
    sigma_ok = abs(res_quiet.std_estimate_m - res_quiet.predicted_sigma_m) < 3 * se_sigma

    noisy = dict(sigma_p_x=1e-6, sigma_p_pw_pa=10.0, rng_seed=8)
    res_pure = immunity_report(SimConfig(lo_choice="purified", **base, **noisy))
    pure_ok = res_pure.immune is True

    res_raw = immunity_report(SimConfig(lo_choice="raw", **base, **noisy))
    expected = contamination_report(PULSE, AIR, 1.0, N_PHOTONS, baselines=False).matrix[0]
    raw_ok = all(
        abs(res_raw.slopes[lab].value - truth) < 3 * res_raw.slopes[lab].std_error
        for lab, truth in (("X", expected[1]), ("Pw", expected[2]))
    )

    rerun_ok = run(quiet) == res_quiet
    ok = sigma_ok and pure_ok and raw_ok and rerun_ok
    record(
        12,
        ok,
        f"MC: sigma {res_quiet.std_estimate_m:.4e} vs predicted "
        f"{res_quiet.predicted_sigma_m:.4e} ({sigma_ok}); purified immune ({pure_ok}); "
        f"raw slopes match analytic ({raw_ok}); bit-identical rerun ({rerun_ok})",
    )
    assert ok


def test_criterion_13_three_color_immunity():
    ws = WavelengthSet((1.064e-6, 0.532e-6, 0.355e-6), (N_PHOTONS / 3,) * 3)
    comb = synth_3wi(*ws.wavelengths_m)
    length = 1.0

    def rebuilt(state):
        return comb.reconstruct(phase_lengths(ws, state, length))

    # relative length shift per relative density-factor shift (via pressure)
    hi = AirState(20.0, 101325.0 + 2000.0, 0.04, 0.0)
    lo = AirState(20.0, 101325.0 - 2000.0, 0.04, 0.0)
    from comb_ranger import density_factor

    sens_x = abs(
        (rebuilt(hi) - rebuilt(lo))
        / (density_factor(hi) - density_factor(lo))
        * density_factor(AIR)
        / length
    )
    # length shift per 1000 Pa humidity swing, relative to the length
    moist_hi = AirState(20.0, 101325.0, 0.04, 1500.0)
    moist_lo = AirState(20.0, 101325.0, 0.04, 500.0)
    sens_pw = abs((rebuilt(moist_hi) - rebuilt(moist_lo)) / 1000.0) * 1000.0 / length

    # direct length response stays unity
    l_response = (
        comb.reconstruct(phase_lengths(ws, AIR, 2.0)) - comb.reconstruct(phase_lengths(ws, AIR, 1.0))
    )
    ok = sens_x < 1e-10 and sens_pw < 1e-10 and abs(l_response - 1.0) < 1e-9
    record(
        13,
        ok,
        f"three-color finite-difference immunity: X sensitivity {sens_x:.2e}, "
        f"Pw sensitivity {sens_pw:.2e}, both < 1e-10 of the unit length response",
    )
    assert ok
