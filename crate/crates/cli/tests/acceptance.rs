//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relqi::bellcorr::{bell_parameter, boosted_chsh_demo, horodecki_m, BellSettings};
use relqi::entanglement::{
    closed_forms_bell, closed_forms_triplet, concurrence, is_ppt, linear_entropy, renyi_entropy, total_entanglement,
    von_neumann_entropy, LogBase,
};
use relqi::kinematics::{boost_from_velocity, wigner_angle_perpendicular, wigner_rotation, FourVector};
use relqi::linalg::{Subsystem, C64};
use relqi::qstate::{
    bell_state, classically_correlated, compose_total, BellKind, DensityMatrix, Partition, PureState,
    MOMENTUM_FACTORS, SPIN_FACTORS,
};
use relqi::relboost::{
    boost_scenario, boost_two_particle, gaussian_boosted_spin_density, pst_entropy, GaussianPacket, ScenarioParams,
    SpinFamily,
};

type Outcome = Result<String, String>;

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed > limit {
        return Err(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    Ok(())
}

struct Worst(f64);

impl Worst {
    fn see(&mut self, x: f64) {
        if !(x <= self.0) {
            self.0 = x;
        }
    }
}

fn wigner_angle_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = Worst(0.0);
    let m = 1.0;
    for &v in &grid(0.0, 0.99, 25) {
        for &w in &grid(0.0, 0.99, 25) {
            let lambda = boost_from_velocity([w, 0.0, 0.0]).map_err(|e| e.to_string())?;
            let p = FourVector::momentum_from_velocity(m, [0.0, 0.0, v]).map_err(|e| e.to_string())?;
            let from_matrices = wigner_rotation(&lambda, p, m).map_err(|e| e.to_string())?.angle();
            let closed = wigner_angle_perpendicular(v, w).map_err(|e| e.to_string())?;
            worst.see((from_matrices - closed).abs());
        }
    }
    let lambda = boost_from_velocity([0.8, 0.0, 0.0]).unwrap();
    let p = FourVector::momentum_from_velocity(m, [0.0, 0.0, 0.8]).unwrap();
    let cos_matrix = wigner_rotation(&lambda, p, m).unwrap().angle().cos();
    let cos_closed = wigner_angle_perpendicular(0.8, 0.8).unwrap().cos();
    let canonical = (cos_matrix - 15.0 / 17.0).abs().max((cos_closed - 15.0 / 17.0).abs());
    within(start.elapsed(), Duration::from_secs(1))?;
    check(
        worst.0 <= 1e-10 && canonical <= 1e-12,
        format!("max |δ_matrix − δ_closed| = {:.2e} (≤ 1e-10); |cos δ − 15/17| = {canonical:.2e} at v = w = 0.8", worst.0),
    )
}

fn bell_grid() -> Vec<(f64, f64, f64)> {
    let g = grid(0.0, FRAC_PI_2, 9);
    let mut out = Vec::new();
    for &a in &g {
        for &b in &g {
            for &d in &g {
                out.push((a, b, d));
            }
        }
    }
    out
}

fn triplet_grid() -> Vec<(f64, f64, f64, f64)> {
    let half = grid(0.0, FRAC_PI_2, 7);
    let full = grid(0.0, PI, 7);
    let mut out = Vec::new();
    for &a in &half {
        for &t in &full {
            for &p in &full {
                for &d in &half {
                    out.push((a, t, p, d));
                }
            }
        }
    }
    out
}

fn bell_closed_forms() -> Outcome {
    let start = Instant::now();
    let (mut forms, mut diff) = (Worst(0.0), Worst(0.0));
    let (four, sm) = (Partition::four_qubits(), Partition::spin_momentum());
    for (a, b, d) in bell_grid() {
        let params = ScenarioParams::with_delta(SpinFamily::BellType { beta: b }, a, d);
        let (init, boosted) = boost_scenario(&params).map_err(|e| e.to_string())?;
        let f = closed_forms_bell(a, b, d);
        let e0 = total_entanglement(&init, &four).unwrap();
        let e1 = total_entanglement(&boosted, &four).unwrap();
        let esm = total_entanglement(&boosted, &sm).unwrap();
        forms.see((e0 - f.e_4q_unboosted).abs());
        forms.see((e1 - f.e_4q_boosted).abs());
        forms.see((e1 - e0 - f.e_4q_diff).abs());
        forms.see((esm - f.e_spinmom_boosted).abs());
        let simple = d.sin().powi(2) * (2.0 * a).sin().powi(2) * (2.0 * b).cos().powi(2);
        diff.see((e1 - e0 - simple).abs());
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    check(
        forms.0 <= 1e-9 && diff.0 <= 1e-12,
        format!(
            "729 points: max closed-form residual {:.2e} (≤ 1e-9), difference formula residual {:.2e} (≤ 1e-12)",
            forms.0, diff.0
        ),
    )
}

fn alice_bob_invariance() -> Outcome {
    let (ab, cross) = (Partition::alice_bob(), Partition::alice_bob_crossed());
    let (mut change, mut closed) = (Worst(0.0), Worst(0.0));
    for (a, b, d) in bell_grid() {
        let (init, boosted) =
            boost_scenario(&ScenarioParams::with_delta(SpinFamily::BellType { beta: b }, a, d)).unwrap();
        for p in [&ab, &cross] {
            let e0 = total_entanglement(&init, p).unwrap();
            change.see((total_entanglement(&boosted, p).unwrap() - e0).abs());
        }
        let e0 = total_entanglement(&init, &ab).unwrap();
        let expected = (16.0 - (3.0 + (4.0 * a).cos()) * (3.0 + (4.0 * b).cos())) / 8.0;
        closed.see((e0 - expected).abs());
    }
    for (a, t, p, d) in triplet_grid() {
        let (init, boosted) =
            boost_scenario(&ScenarioParams::with_delta(SpinFamily::TripletType { theta: t, phi: p }, a, d)).unwrap();
        for part in [&ab, &cross] {
            let e0 = total_entanglement(&init, part).unwrap();
            change.see((total_entanglement(&boosted, part).unwrap() - e0).abs());
        }
    }
    let e = |a, b| {
        let s = compose_total(&relqi::qstate::momentum_state(a), &relqi::qstate::bell_type_spin(b)).unwrap();
        total_entanglement(&s, &ab).unwrap()
    };
    let separable = e(0.0, 0.0).abs();
    let bell_bell = (e(FRAC_PI_4, FRAC_PI_4) - 1.5).abs();
    check(
        change.0 <= 1e-12 && closed.0 <= 1e-10 && separable <= 1e-12 && bell_bell <= 1e-12,
        format!(
            "max |ΔE_ab| = {:.2e} over Bell 9³ + triplet 7⁴ incl. crossed blocks; closed form {:.2e}; separable {:.1e}; Bell-Bell |E − 3/2| {:.1e}",
            change.0, closed.0, separable, bell_bell
        ),
    )
}

fn triplet_closed_forms() -> Outcome {
    let (four, sm, ab) = (Partition::four_qubits(), Partition::spin_momentum(), Partition::alice_bob());
    let mut worst = Worst(0.0);
    for (a, t, p, d) in triplet_grid() {
        let (init, boosted) =
            boost_scenario(&ScenarioParams::with_delta(SpinFamily::TripletType { theta: t, phi: p }, a, d)).unwrap();
        let f = closed_forms_triplet(a, t, p, d);
        let diff = total_entanglement(&boosted, &four).unwrap() - total_entanglement(&init, &four).unwrap();
        worst.see((diff - f.e_diff_4q).abs());
        worst.see((total_entanglement(&boosted, &sm).unwrap() - f.e_spinmom_boosted).abs());
        worst.see((total_entanglement(&init, &ab).unwrap() - f.e_ab).abs());
    }
    let mut boundary = Worst(0.0);
    for &phi in &grid(0.0, 2.0 * PI, 9) {
        for &d in &grid(0.0, FRAC_PI_2, 5) {
            boundary.see(closed_forms_triplet(0.0, 0.0, phi, d).e_ab.abs());
        }
    }
    for &a in &grid(0.0, FRAC_PI_2, 9) {
        for &d in &grid(0.0, FRAC_PI_2, 9) {
            boundary.see(closed_forms_triplet(a, FRAC_PI_4, 0.0, d).e_diff_4q.abs());
        }
    }
    check(
        worst.0 <= 1e-9 && boundary.0 <= 1e-12,
        format!("2401 points: max residual {:.2e} (≤ 1e-9); boundary values {:.2e} (≤ 1e-12)", worst.0, boundary.0),
    )
}

fn half_pi_coincidence() -> Outcome {
    let (four, sm) = (Partition::four_qubits(), Partition::spin_momentum());
    let (mut analytic, mut numeric) = (Worst(0.0), Worst(0.0));
    let g = grid(0.0, FRAC_PI_2, 9);
    for &a in &g {
        for &b in &g {
            let f = closed_forms_bell(a, b, FRAC_PI_2);
            analytic.see((f.e_spinmom_boosted - f.e_4q_diff).abs());
            let (init, boosted) =
                boost_scenario(&ScenarioParams::with_delta(SpinFamily::BellType { beta: b }, a, FRAC_PI_2)).unwrap();
            let diff = total_entanglement(&boosted, &four).unwrap() - total_entanglement(&init, &four).unwrap();
            numeric.see((total_entanglement(&boosted, &sm).unwrap() - diff).abs());
        }
    }
    check(
        analytic.0 <= 1e-12 && numeric.0 <= 1e-12,
        format!("max |E_spinmom − E_4q_diff| at δ = π/2: closed form {:.2e}, numeric {:.2e}", analytic.0, numeric.0),
    )
}

fn chsh() -> Outcome {
    let singlet = SpinFamily::BellType { beta: -FRAC_PI_4 };
    let settings = BellSettings::standard();
    let s0 = bell_parameter(&bell_state(BellKind::PsiMinus).density(), &settings).unwrap();
    let unboosted = (s0.abs() - 2.0 * SQRT_2).abs();
    let mut boosted = Worst(0.0);
    for v in [0.3, 0.8, 0.99] {
        for w in [0.3, 0.8, 0.99] {
            let demo = boosted_chsh_demo(&ScenarioParams::from_speeds(singlet, 0.0, v, w).unwrap(), &settings)
                .map_err(|e| e.to_string())?;
            boosted.see((demo.s_boosted_transformed.abs() - 2.0 * SQRT_2).abs());
        }
    }
    let m_singlet = (horodecki_m(&bell_state(BellKind::PsiMinus).density()).unwrap() - 2.0).abs();
    let product = relqi::qstate::bell_type_spin(0.0).density();
    let m_product = (horodecki_m(&product).unwrap() - 1.0).abs();
    check(
        unboosted <= 1e-12 && boosted.0 <= 1e-10 && m_singlet <= 1e-12 && m_product <= 1e-12,
        format!(
            "||S| − 2√2|: unboosted {unboosted:.1e}, boosted PL max {:.1e}; |M(ψ⁻) − 2| {m_singlet:.1e}; |M(product) − 1| {m_product:.1e}",
            boosted.0
        ),
    )
}

fn random_state(rng: &mut ChaCha8Rng, factors: &[relqi::qstate::Factor]) -> PureState {
    let amps = (0..4).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    PureState::normalized(amps, factors.to_vec()).unwrap()
}

fn gingrich_adami() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..200 {
        let mom = random_state(&mut rng, &MOMENTUM_FACTORS);
        let spin = random_state(&mut rng, &SPIN_FACTORS);
        let (v, w) = (rng.gen_range(0.0..0.999), rng.gen_range(0.0..0.999));
        let delta = wigner_angle_perpendicular(v, w).unwrap();
        let total = compose_total(&mom, &spin).unwrap();
        let boosted = boost_two_particle(&total, delta).unwrap();
        let before = concurrence(&total.reduce(&[2, 3]).unwrap()).unwrap();
        let after = concurrence(&boosted.reduce(&[2, 3]).unwrap()).unwrap();
        worst = worst.max(after - before);
    }
    check(worst <= 1e-10, format!("200 seeded scenarios: max (C_after − C_before) = {worst:.2e} (≤ 1e-10)"))
}

fn measure_sanity() -> Outcome {
    let half = DensityMatrix::maximally_mixed(1);
    let lin = (linear_entropy(&half) - 0.5).abs();
    let vn = (von_neumann_entropy(&half, LogBase::Bits).unwrap() - 1.0).abs();
    let mut renyi = Worst(0.0);
    for a in [1.0 - 1e-4, 1.0 + 1e-4] {
        renyi.see((renyi_entropy(&half, a, LogBase::Bits).unwrap() - 1.0).abs());
    }
    // a state with a non-flat spectrum: the first-order terms cancel in the symmetric mean
    let skew = DensityMatrix::from_matrix(relqi::linalg::CMatrix::diag(&[
        C64::new(0.6, 0.0),
        C64::new(0.3, 0.0),
        C64::new(0.1, 0.0),
        C64::new(0.0, 0.0),
    ]))
    .unwrap();
    let s = von_neumann_entropy(&skew, LogBase::Bits).unwrap();
    let mean = 0.5
        * (renyi_entropy(&skew, 1.0 - 1e-4, LogBase::Bits).unwrap()
            + renyi_entropy(&skew, 1.0 + 1e-4, LogBase::Bits).unwrap());
    renyi.see((mean - s).abs());
    let mut conc = Worst(0.0);
    for k in [BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus] {
        conc.see((concurrence(&bell_state(k).density()).unwrap() - 1.0).abs());
    }
    let singlet = is_ppt(&bell_state(BellKind::PsiMinus).density(), [2, 2], Subsystem::B).unwrap();
    let classical = is_ppt(&classically_correlated(), [2, 2], Subsystem::B).unwrap();
    let ppt_ok = !singlet.ppt && (singlet.min_eigenvalue + 0.5).abs() <= 1e-10 && classical.ppt;
    check(
        lin <= 1e-12 && vn <= 1e-12 && renyi.0 <= 1e-6 && conc.0 <= 1e-10 && ppt_ok,
        format!(
            "S_L(I/2) err {lin:.1e}; S(I/2) err {vn:.1e}; Rényi α = 1 ± 1e-4 err {:.1e}; C(Bell) err {:.1e}; PPT ψ⁻ {} (λ_min {:.12}), classical {}",
            renyi.0, conc.0, singlet.ppt, singlet.min_eigenvalue, classical.ppt
        ),
    )
}

fn pst_experiment() -> Outcome {
    let start = Instant::now();
    let (m, xi) = (1.0, 1.0);
    let entropy = |width: f64, nodes: usize| -> Result<f64, String> {
        let rho = gaussian_boosted_spin_density(&GaussianPacket::new(m, width, xi, nodes)).map_err(|e| e.to_string())?;
        von_neumann_entropy(&rho, LogBase::Nats).map_err(|e| e.to_string())
    };
    let s21 = entropy(0.01, 21)?;
    let elapsed = start.elapsed();
    let s17 = entropy(0.01, 17)?;
    let converged = (s21 - s17).abs();
    let mut widths = Vec::new();
    for ww in [0.05, 0.02, 0.01, 0.005] {
        widths.push(entropy(ww, 21)?);
    }
    let monotone = widths.windows(2).all(|p| p[1] < p[0]);
    let predicted = pst_entropy(0.01, m, xi);
    let ratio = s21 / predicted;
    within(elapsed, Duration::from_secs(30))?;
    check(
        s21 > 0.0 && monotone && (0.5..=2.0).contains(&ratio) && converged <= 1e-8,
        format!(
            "ww/m = 0.01, ξ = 1: S = {s21:.6e} nats (17³ vs 21³ differ by {converged:.1e}), formula {predicted:.6e}, ratio {ratio:.4}; S(ww) for ww/m = 0.05, 0.02, 0.01, 0.005: {}; 21³ in {elapsed:.2?}",
            widths.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("fig2_{k}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_relqi"))
            .args(["sweep", "--preset", "fig2", "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("run {k} exited with {status}"));
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    check(
        outputs[0] == outputs[1] && !outputs[0].is_empty(),
        format!("two `sweep --preset fig2` runs: {} and {} bytes, identical = {}", outputs[0].len(), outputs[1].len(), outputs[0] == outputs[1]),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Wigner-angle oracle equivalence", wigner_angle_oracle),
        ("Bell-type closed forms", bell_closed_forms),
        ("Alice-Bob invariance", alice_bob_invariance),
        ("Triplet closed forms", triplet_closed_forms),
        ("δ → π/2 coincidence", half_pi_coincidence),
        ("CHSH and Horodecki", chsh),
        ("Gingrich-Adami monotonicity", gingrich_adami),
        ("Measure sanity suite", measure_sanity),
        ("Gaussian packet spin entropy", pst_experiment),
        ("Sweep determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("{tag} [{:>2}] {name} ({:.2?}): {detail}", i + 1, t.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
