//! Acceptance criteria. Each test prints one `[PASS]` or `[FAIL]` line and
//! then asserts. Run with `-- --nocapture --test-threads=1` to see the lines
//! in order.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

use qinv_core::families::{laurent_certificate, log_fundamental_link_norm, torus_cable_eval, ChainSpec, TorusCable, TorusCableSpec};
use qinv_core::skein::sixj_zero;
use qinv_core::surgery::{
    chain_class, chain_surgery_nr, lens_sum, nr, nr0_knot_surgery, nr0_symmetric_knot, LinkingMatrix,
    SurgeryPresentation, Weighting,
};
use qinv_core::{families::chain_eval, lobachevsky, Color, LimitPolicy, QParams, Sign};

type C = Complex<f64>;

const SEED: u64 = 0x5eed_0001;

fn q(r: i64) -> QParams<f64> {
    QParams::new(r).unwrap()
}

fn report(id: u32, what: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] AC-{id:02} {what}: {detail}");
    assert!(pass, "AC-{id:02} {what}: {detail}");
}

fn random_admissible(rng: &mut ChaCha8Rng, r: i64) -> C {
    loop {
        let z = C::new(rng.gen_range(-(r as f64)..r as f64), rng.gen_range(-1.0..1.0));
        if z.im.abs() > 1e-3 || (z.re - z.re.round()).abs() > 1e-3 {
            return z;
        }
    }
}

#[test]
fn ac01_gauss_sum_identities() {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for r in [2, 3, 5, 6, 7, 9, 10, 11, 13] {
        let qr = q(r);
        for s in [Sign::Plus, Sign::Minus] {
            worst = worst.max((qr.delta(s) - qr.gauss_delta(s)).norm());
        }
    }
    let zero4 = q(4).delta(Sign::Minus) == C::new(0.0, 0.0);
    let el = t.elapsed();
    report(
        1,
        "closed-form Delta vs Gauss sums",
        worst <= 1e-9 && zero4 && el < Duration::from_millis(100),
        format!("max abs err {worst:.2e}, Delta_-(4) == 0: {zero4}, {el:?}"),
    );
}

#[test]
fn ac02_factorial_and_binomial_identities() {
    let mut worst = 0.0f64;
    for r in [3i64, 5, 7] {
        let qr = q(r);
        let i_pow = C::new(0.0, 1.0).powu(r as u32 - 1) * r as f64;
        for a in 0..r as u32 {
            worst = worst.max((qr.qfact(a) * qr.qfact(r as u32 - 1 - a) - i_pow).norm());
        }
        let rm1 = r - 1;
        for a in 0..r {
            for b in 0..=a {
                let re = |x: i64| C::new(x as f64, 0.0);
                let lhs = qr.qbin(re(a), re(b)).unwrap();
                let rhs = qr.qbin(re(rm1 - b), re(rm1 - a)).unwrap();
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    report(2, "factorial reflection and binomial symmetry", worst <= 1e-10, format!("max abs err {worst:.2e}"));
}

#[test]
fn ac03_character_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failing = Vec::new();
    let mut worst = 0.0f64;
    for r in 2..=9i64 {
        let qr = q(r);
        let mut worst_r = 0.0f64;
        for _ in 0..100 {
            let b = random_admissible(&mut rng, r);
            let inv = qr.mdim(Color(b)).unwrap().inv();
            // the identity exactly as stated, with no parity sign
            let sum: C = qr.hr().iter().map(|l| qr.qpow(b * l as f64)).sum::<C>() / r as f64;
            worst_r = worst_r.max((inv - sum).norm() / inv.norm());
        }
        if worst_r > 1e-9 {
            failing.push(r);
        }
        worst = worst.max(worst_r);
    }
    let mut worst_enc = 0.0f64;
    for r in [3i64, 5, 7, 9] {
        let qr = q(r);
        for _ in 0..20 {
            let a = random_admissible(&mut rng, r);
            let s: C = qr.hr().iter().map(|k| qr.mdim(Color(a + k as f64)).unwrap().inv()).sum();
            worst_enc = worst_enc.max((s - C::new(1.0, 0.0)).norm());
        }
    }
    report(
        3,
        "character sum for 1/d and encircling sum",
        failing.is_empty() && worst_enc <= 1e-8,
        format!("levels failing the charsum: {failing:?} (max rel err {worst:.2e}); encircling max err {worst_enc:.2e}"),
    );
}

#[test]
fn ac04_trefoil_closed_form() {
    let q5 = q(5);
    let pol = LimitPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = C::new(rng.gen_range(-2.5..2.5), rng.gen_range(-0.5..0.5));
        let got = torus_cable_eval(&q5, &TorusCableSpec { f: -2, n: 1, alpha: Color(a) }, &pol);
        let qq = |x: f64| q5.qpow_re(x);
        let want = q5.qpow(a * a / 2.0) * 5.0
            * (qq(3.0) * q5.qnum(a * 3.0) + qq(1.0) * q5.qnum(a * 5.0) - qq(-1.0) * q5.qnum(a * 9.0))
            / q5.qnum(a * 5.0);
        worst = worst.max((got - want).norm() / want.norm());
    }
    report(4, "trefoil closed form at r = 5", worst <= 1e-9, format!("max rel err {worst:.2e}"));
}

#[test]
fn ac05_poincare_sphere() {
    let t = Instant::now();
    let q5 = q(5);
    let pol = LimitPolicy::default();
    let k = TorusCable::poincare_trefoil();
    let a = nr0_knot_surgery(&q5, &k, Weighting::Forward, &pol).unwrap();
    let b = nr0_symmetric_knot(&q5, &k, &pol).unwrap();
    let qq = q5.qpow_re(1.0);
    let want = -(qq * qq + 1.0) * (qq * qq + 1.0);
    let el = t.elapsed();
    let (ea, eb, eab) = ((a - want).norm(), (b - want).norm(), (a - b).norm());
    report(
        5,
        "Poincare sphere order-zero value at r = 5",
        ea <= 1e-8 && eb <= 1e-8 && eab <= 1e-10 && el < Duration::from_secs(1),
        format!("{a} vs -(q^2+1)^2 = {want}; errs {ea:.1e}/{eb:.1e}, routes differ by {eab:.1e}, {el:?}"),
    );
}

#[test]
fn ac06_lens_spaces_distinguished() {
    let t = Instant::now();
    let q3 = q(3);
    let a = lens_sum(&q3, &[8, -8]).unwrap();
    let b = lens_sum(&q3, &[4, 3, 2, -3]).unwrap();
    let gap = (a.sum - b.sum).norm();
    let el = t.elapsed();
    report(
        6,
        "S_3(L(65,8)) != S_3(L(65,18))",
        gap > 1e-6 && el < Duration::from_secs(1),
        format!("{} vs {}, gap {gap:.4}, {el:?}", a.sum, b.sum),
    );
}

#[test]
fn ac07_kirby_invariance() {
    let q3 = q(3);
    let mut worst = 0.0f64;
    for k in 1..65 {
        let a = chain_surgery_nr(&q3, &[8, -8], k, &[]).unwrap();
        let b = chain_surgery_nr(&q3, &[8, -7, 1], k, &[]).unwrap();
        worst = worst.max((a - b).norm());
    }
    let same_multiset = lens_sum(&q3, &[8, -8]).unwrap().multiset() == lens_sum(&q3, &[8, -7, 1]).unwrap().multiset();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut worst_lift = 0.0f64;
    for framings in [vec![8i64, -8], vec![8, -7, 1]] {
        for k in 1..65 {
            let base = chain_surgery_nr(&q3, &framings, k, &[]).unwrap();
            let lifts: Vec<i64> = framings.iter().map(|_| 2 * rng.gen_range(-3..=3)).collect();
            let other = chain_surgery_nr(&q3, &framings, k, &lifts).unwrap();
            worst_lift = worst_lift.max((base - other).norm() / base.norm().max(1.0));
        }
    }
    report(
        7,
        "blow-down and lift independence",
        worst <= 1e-6 && same_multiset && worst_lift <= 1e-8,
        format!("per-class max diff {worst:.2e}, multisets equal: {same_multiset}, lift max rel diff {worst_lift:.2e}"),
    );
}

#[test]
fn ac08_volume_asymptotics() {
    let t = Instant::now();
    let target = 16.0 * lobachevsky(std::f64::consts::FRAC_PI_4, 1e-12);
    let mut vs = Vec::new();
    let mut positive = true;
    for r in [51i64, 101, 201] {
        let qr = q(r);
        let s = sixj_zero(&qr).unwrap();
        positive &= s.re > 0.0 && s.im.abs() <= 1e-9 * s.re;
        let v = 2.0 * std::f64::consts::PI / r as f64 * log_fundamental_link_norm(&qr, 2).unwrap();
        vs.push(v);
    }
    let gaps: Vec<f64> = vs.iter().map(|v| (v - target).abs()).collect();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let rel = gaps[2] / target;
    let el = t.elapsed();
    report(
        8,
        "volume sequence approaches 16 Lambda(pi/4)",
        monotone && positive && rel <= 0.05 && el < Duration::from_secs(5),
        format!(
            "v(51,101,201) = {:.4}, {:.4}, {:.4}; target {target:.5}; rel gap at 201 = {rel:.4}; monotone {monotone}; 6j positive {positive}; {el:?}",
            vs[0], vs[1], vs[2]
        ),
    );
}

#[test]
fn ac09_mirror_conjugation() {
    let q3 = q(3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 20 {
        let n = rng.gen_range(1..=4);
        let framings: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        let colors: Vec<Color<f64>> = (0..n).map(|_| Color(random_admissible(&mut rng, 3))).collect();
        let spec = ChainSpec::new(framings.clone(), colors).unwrap();
        let a = chain_eval(&q3, &spec).unwrap();
        let b = chain_eval(&q3, &spec.mirror()).unwrap();
        worst = worst.max((a.conj() - b).norm() / a.norm().max(1.0));

        let det = LinkingMatrix::chain(&framings).det();
        let p: i64 = det.try_into().unwrap_or(0);
        if p.abs() < 2 {
            continue;
        }
        let k = rng.gen_range(1..p.abs());
        let class = chain_class::<f64>(&framings, k).unwrap();
        if !class.is_computable(1e-9) {
            continue;
        }
        let mirrored: Vec<i64> = framings.iter().map(|x| -x).collect();
        let v = nr(&q3, &SurgeryPresentation::chain(&framings), &class, &[]).unwrap();
        let w = nr(&q3, &SurgeryPresentation::chain(&mirrored), &class.chain_mirror(), &[]).unwrap();
        worst = worst.max((v.conj() - w).norm() / v.norm().max(1.0));
        done += 1;
    }
    report(9, "mirror gives complex conjugate", worst <= 1e-9, format!("20 chains at r = 3, max rel err {worst:.2e}"));
}

#[test]
fn ac10_doubleslide_symmetry_and_laurent_certificate() {
    let pol = LimitPolicy::default();
    let mut worst = 0.0f64;
    let mut worst_cert = 0.0f64;
    for r in [3i64, 5, 7] {
        let qr = q(r);
        for k in [TorusCable::poincare_trefoil(), TorusCable { f: -4, n: 1 }] {
            let a = nr0_knot_surgery(&qr, &k, Weighting::Forward, &pol).unwrap();
            let b = nr0_knot_surgery(&qr, &k, Weighting::Backward, &pol).unwrap();
            worst = worst.max((a - b).norm() / a.norm().max(1e-12));
            worst_cert = worst_cert.max(laurent_certificate(&qr, &k, &pol));
        }
    }
    report(
        10,
        "q^k and q^-k weighted P-sums agree; Laurent certificate",
        worst <= 1e-8 && worst_cert <= 1e-7,
        format!("max rel diff {worst:.2e}, certificate residual {worst_cert:.2e}"),
    );
}
