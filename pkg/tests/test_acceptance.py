"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with `pytest tests/test_acceptance.py -v -rA` to see every line.

Three criteria fail by construction of the underlying formulas, not by
implementation defects; their assertion messages carry the measured
evidence and the failing tests double as the record of the analysis:

- the continuum correlation decays as xt^-3 at large equal distances
  (criteria 4c and 7): the cross structures of the fourfold sum carry a
  soft 1/(total pair frequency) denominator whose infrared enhancement
  overtakes the xt^-4 factorized term that the closed-form far-field law
  tracks; verified independently by three evaluation routes.
- the exact ground state's energy density differs from the closed-form
  profile at the same order in the coupling (criterion 5b): the closed
  form is the expectation on the first-order dressed state, while the
  exact state adds a second-order cross term of equal order (verified by
  rebuilding perturbative states numerically from the assembled
  Hamiltonian).
- the truncated one-cavity two-mode model at lambda = 0.05 collapses
  through its displacement instability (criterion 5a at the largest
  coupling), so no certified oracle number exists there.
"""

import math

import numpy as np
import pytest

import vacmirror as vm
from conftest import (brute_correlation, brute_delta_energy_density,
                      brute_delta_phi_squared, brute_em_fluct,
                      brute_energy_shift, params_for_lambda)

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


def report(cid, ok, detail):
    print(f"ACCEPTANCE {cid}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {cid}: {detail}"


# -------------------------------------------------------------------------
# 1. asymptotic coefficient
# -------------------------------------------------------------------------

def test_criterion_1_asymptotic_coefficient(params_unit):
    val = vm.asymptotic_correlation(params_unit, 1.0, 1.0)
    ref = -1.0 / (2.0**9 * math.pi**4)
    rel = abs(val - ref) / abs(ref)
    report("1 (far-field coefficient)", rel <= 1e-14,
           f"value {val:.16e}, closed form {ref:.16e}, rel {rel:.2e}")


# -------------------------------------------------------------------------
# 2. sign laws on the reference grid
# -------------------------------------------------------------------------

def reference_params():
    # omega0 = pi c / L, lambda = 0.05
    return params_for_lambda(0.05, omega0=math.pi)


def test_criterion_2_sign_laws():
    p = reference_params()
    cut = vm.CutoffSpec.exponential(50 * p.omega0)
    de = vm.energy_shift(p, cut)
    x1 = np.linspace(0.05, 0.95, 10)
    x2 = np.linspace(1.05, 1.95, 10)
    grid = vm.squared_field_correlation_discrete(p, cut, x1, x2,
                                                 negativity="raise")
    ok = de < 0 and np.all(grid.values < 0)
    report("2 (sign laws)", ok,
           f"energy shift {de:.6e} < 0; correlation max "
           f"{grid.values.max():.6e} < 0 on 10x10 grid")


# -------------------------------------------------------------------------
# 3. vanishing cross correlator
# -------------------------------------------------------------------------

def test_criterion_3_vanishing_cross_correlator():
    p = params_for_lambda(0.05)
    structural = vm.phi_phi_cross_correlation(
        p, vm.CutoffSpec.exponential(30.0), 0.3, 1.7)
    model = vm.build_hamiltonian(p, vm.TruncationSpec(1, 6, 6), "two")
    res = vm.ground_state(model)
    orc = vm.expectation(model, res, ("phi1phi2", 0.63, 1.37))
    ok = abs(structural) <= 1e-14 and abs(orc) <= 1e-10
    report("3 (vanishing phi-phi correlator)", ok,
           f"structural {structural:.1e}, oracle {orc:.2e}")


# -------------------------------------------------------------------------
# 4. scaling suite
# -------------------------------------------------------------------------

def test_criterion_4a_mass_scaling():
    p = reference_params()
    cut = vm.CutoffSpec.exponential(30 * p.omega0)
    p2 = p.with_mass(2 * p.mass)
    worst = 0.0
    de = vm.energy_shift(p, cut)
    worst = max(worst, abs(2 * vm.energy_shift(p2, cut) - de) / abs(de))
    grid = vm.default_grid(p, 30)
    dh = vm.delta_energy_density(p, cut, grid).values
    dh2 = vm.delta_energy_density(p2, cut, grid).values
    worst = max(worst, np.max(np.abs(2 * dh2 - dh) / np.abs(dh)))
    cv = vm.squared_field_correlation_discrete(p, cut, [0.6], [1.4]).values[0, 0]
    cv2 = vm.squared_field_correlation_discrete(p2, cut, [0.6], [1.4]).values[0, 0]
    worst = max(worst, abs(2 * cv2 - cv) / abs(cv))
    report("4a (exact 1/m scaling)", worst <= 1e-12,
           f"worst relative deviation under mass doubling {worst:.2e}")


def test_criterion_4b_asymptotic_slopes(params_unit):
    probes = vm.scaling_probe(params_unit, "asymptotic", "omega0",
                              [1.0, 2.0, 4.0])
    w_ok = all(abs(q.log_slope + 3.0) < 1e-12 for q in probes)
    # per-coordinate distance slope from the closed form directly
    a = vm.asymptotic_correlation(params_unit, 10.0, 7.0)
    b = vm.asymptotic_correlation(params_unit, 20.0, 7.0)
    s1 = math.log(abs(b) / abs(a)) / math.log(2.0)
    c = vm.asymptotic_correlation(params_unit, 10.0, 14.0)
    s2 = math.log(abs(c) / abs(a)) / math.log(2.0)
    d_ok = abs(s1 + 2.0) < 1e-12 and abs(s2 + 2.0) < 1e-12
    report("4b (far-field log-slopes)", w_ok and d_ok,
           f"omega0 slope -3 exact: {w_ok}; per-coordinate slopes "
           f"{s1:.12f}, {s2:.12f}")


def test_criterion_4c_continuum_distance_slope(params_unit):
    probes = vm.scaling_probe(params_unit, "continuum", "distance",
                              [10.0, 20.0, 40.0], omega_m=1e3, rel_tol=1e-8)
    slopes = [q.log_slope for q in probes]
    ok = all(abs(s + 4.0) <= 0.05 for s in slopes)
    report("4c (continuum distance slope -4 +- 0.05 at xt >= 10 c/omega0)", ok,
           f"measured slopes {[f'{s:.4f}' for s in slopes]}: the fourfold "
           "sum's cross structures carry a soft 1/(sum of all four mode "
           "frequencies) denominator whose continuum limit decays as xt^-3 "
           "and dominates the xt^-4 factorized term at these distances")


# -------------------------------------------------------------------------
# 5. oracle equivalence
# -------------------------------------------------------------------------

LAMBDAS = (0.05, 0.025, 0.0125)


def _ratio_band(rels):
    r1 = rels[0] / rels[1]
    r2 = rels[1] / rels[2]
    return r1, r2, (3.0 <= r1 <= 5.0) and (3.0 <= r2 <= 5.0)


def test_criterion_5a_oracle_energy_shift():
    rels = []
    shifts = []
    for lam in LAMBDAS:
        p = params_for_lambda(lam)
        res = vm.ground_state(vm.build_hamiltonian(
            p, vm.TruncationSpec(2, 6, 6), "one"))
        pert = vm.energy_shift(p, vm.CutoffSpec.sharp_n_modes(p, 2))
        shifts.append((res.energy_shift, pert))
        rels.append(abs(res.energy_shift - pert) / abs(pert))
    r1, r2, ok = _ratio_band(rels)
    report("5a (oracle energy shift, lambda halving ratios in [3,5])", ok,
           f"relative errors {[f'{r:.3e}' for r in rels]}, ratios "
           f"{r1:.2f}, {r2:.2f}; at lambda=0.05 the truncated two-mode "
           f"model is past its displacement instability (lowest state "
           f"E={shifts[0][0]:.3f} vs perturbative {shifts[0][1]:.4f}), so "
           "the lowest eigenpair is a collapsed artifact rather than the "
           "physical branch; the band holds on the stable domain "
           "(see the oracle test module)")


def test_criterion_5b_oracle_energy_density():
    x = 0.8
    rels = []
    for lam in LAMBDAS:
        p = params_for_lambda(lam)
        model = vm.build_hamiltonian(p, vm.TruncationSpec(2, 6, 6), "one")
        res = vm.ground_state(model)
        orc = vm.expectation(model, res, ("energy_density", x))
        pert = vm.delta_energy_density(
            p, vm.CutoffSpec.sharp_n_modes(p, 2), [x]).values[0]
        rels.append(abs(orc - pert) / abs(pert))
    r1, r2, ok = _ratio_band(rels)
    report("5b (oracle energy density, lambda halving ratios in [3,5])", ok,
           f"relative errors {[f'{r:.3e}' for r in rels]} do not shrink: "
           "the closed-form profile is the first-order-state expectation, "
           "while the exact state adds a same-order second-order cross "
           "term (the numerically rebuilt second-order state reproduces "
           "the exact value with the expected quadratic trend; see the "
           "oracle test module)")


def test_criterion_5c_oracle_correlation():
    x1, x2 = 0.63, 1.37
    rels = []
    for lam in LAMBDAS:
        p = params_for_lambda(lam)
        model = vm.build_hamiltonian(p, vm.TruncationSpec(1, 6, 6), "two")
        res = vm.ground_state(model)
        orc = vm.expectation(model, res, ("phi2phi2", x1, x2))
        pert = vm.squared_field_correlation_discrete(
            p, vm.CutoffSpec.sharp_n_modes(p, 1), [x1], [x2],
            negativity="ignore").values[0, 0]
        rels.append(abs(orc - pert) / abs(pert))
    r1, r2, ok = _ratio_band(rels)
    report("5c (oracle squared-field correlation, ratios in [3,5])", ok,
           f"relative errors {[f'{r:.3e}' for r in rels]}, ratios "
           f"{r1:.2f}, {r2:.2f}")


# -------------------------------------------------------------------------
# 6. quadrature cross-validation
# -------------------------------------------------------------------------

REFERENCE_POINTS = [
    (0.08, 0.10, 10.0),
    (0.10, 0.10, 10.0),
    (0.12, 0.09, 12.0),
    (0.15, 0.15, 15.0),
    (0.10, 0.14, 20.0),
]


def test_criterion_6_quadrature_paths(params_unit):
    worst = 0.0
    for xt1, xt2, wm in REFERENCE_POINTS:
        pa = vm.continuum_correlation(params_unit, wm, xt1, xt2,
                                      rel_tol=1e-8, method="partial_analytic")
        fq = vm.continuum_correlation(params_unit, wm, xt1, xt2,
                                      rel_tol=1e-7, method="full_quadrature",
                                      budget=4e9)
        worst = max(worst, abs(pa.value - fq.value) / abs(pa.value))
    report("6 (independent quadrature paths agree to 1e-6)", worst <= 1e-6,
           f"worst relative disagreement over 5 reference points {worst:.2e}")


# -------------------------------------------------------------------------
# 7. continuum versus far-field law
# -------------------------------------------------------------------------

def test_criterion_7_continuum_vs_asymptotic(params_unit):
    ratios = []
    for xt in (5.0, 10.0, 20.0, 40.0):
        cont = vm.continuum_correlation(params_unit, 1e3, xt, xt,
                                        rel_tol=1e-8).value
        ratios.append(cont / vm.asymptotic_correlation(params_unit, xt, xt))
    deviations = [abs(r - 1.0) for r in ratios]
    ok = all(b < a for a, b in zip(deviations, deviations[1:]))
    report("7 (continuum/far-field ratio tends to 1)", ok,
           f"ratios {[f'{r:.1f}' for r in ratios]} grow ~linearly in xt "
           "instead of tending to 1: the cross structures' xt^-3 tail "
           "(criterion 4c) dominates the xt^-4 closed form; the measured "
           "ratios are frozen as a regression baseline in the continuum "
           "test module")


# -------------------------------------------------------------------------
# 8. near-wall enhancement
# -------------------------------------------------------------------------

def test_criterion_8_near_wall_enhancement():
    p = reference_params()
    grid = vm.default_grid(p)
    near_wall = []
    argmax_ok = True
    for mult in (10.0, 25.0, 50.0):
        prof = vm.delta_energy_density(
            p, vm.CutoffSpec.exponential(mult * p.omega0), grid)
        argmax_ok &= int(np.argmax(np.abs(prof.values))) == len(grid) - 1
        near_wall.append(prof.values[-1])
    monotone = near_wall[0] < near_wall[1] < near_wall[2]
    report("8 (near-wall enhancement)", argmax_ok and monotone,
           f"|dH| peaks at the grid point nearest the movable wall; "
           f"near-wall values {[f'{v:.4e}' for v in near_wall]} grow with "
           "the cutoff")


# -------------------------------------------------------------------------
# 9. brute-force equivalence of every mode sum
# -------------------------------------------------------------------------

def test_criterion_9_brute_force_equivalence(params_weak):
    p = params_weak
    worst = 0.0

    for n in (1, 2, 3):
        cut = vm.CutoffSpec.sharp_n_modes(p, n)
        a = vm.energy_shift(p, cut)
        worst = max(worst, abs(a - brute_energy_shift(p, n)) / abs(a))

    cut3 = vm.CutoffSpec.sharp_n_modes(p, 3)
    cut3e = vm.CutoffSpec.exponential(9.0)
    grid = np.array([0.23, 0.5, 0.81])

    amps = vm.dressed_amplitudes(p, cut3)
    for (k, j), c in zip(amps.pairs, amps.coeffs):
        wk, wj = k * p.omega1, j * p.omega1
        direct = ((-1.0) ** (k + j) / p.length
                  * math.sqrt(p.hbar / (8 * p.mass * p.omega0))
                  * math.sqrt(wk * wj) / (p.omega0 + wk + wj))
        worst = max(worst, abs(c - direct) / abs(direct))

    for x in grid:
        a = vm.delta_energy_density(p, cut3, [x]).values[0]
        worst = max(worst, abs(a - brute_delta_energy_density(p, 3, x)) / abs(a))
        a = vm.delta_energy_density(p, cut3e, [x], n_max=3).values[0]
        worst = max(worst, abs(a - brute_delta_energy_density(
            p, 3, x, omega_m=9.0)) / abs(a))
        for comp in ("E", "B"):
            a = vm.em_field_fluctuations(p, cut3, [x], comp).values[0]
            worst = max(worst, abs(a - brute_em_fluct(p, 3, x, comp)) / abs(a))
        a = vm.delta_phi_squared(p, cut3, [x]).values[0]
        worst = max(worst, abs(a - brute_delta_phi_squared(p, 3, x)) / abs(a))

    for (x1, x2) in [(0.3, 1.2), (0.7, 1.6)]:
        a = vm.squared_field_correlation_discrete(
            p, cut3e, [x1], [x2], n_max=3).values[0, 0]
        worst = max(worst, abs(a - brute_correlation(
            p, 3, x1, x2, omega_m=9.0)) / abs(a))

    report("9 (mode sums equal naive enumeration at N <= 3)", worst <= 1e-14,
           f"worst relative deviation {worst:.2e}")
