//! Acceptance gate: the eleven headline checks, one pass/fail line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use nslen::constructions::{alt, matrix_group_perm, solvable_l2_witness, sym, wreath_tower_a5};
use nslen::group::Group;
use nslen::oracle;
use nslen::perm::Permutation;
use nslen::rarefied;
use nslen::rs;
use nslen::structure::{self, Caps, Mode};
use nslen::verify::{self, Verdict};
use std::time::Instant;

fn caps() -> Caps {
    Caps::default()
}

fn sl25() -> Group {
    matrix_group_perm(5, 2, &[vec![1, 1, 0, 1], vec![0, 1, 4, 0]], &caps()).unwrap()
}

fn line(n: usize, what: &str, ok: bool) {
    println!("criterion {n:2} ({what}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {what}");
}

#[test]
fn criterion_01_tower_lambda() {
    let caps = caps();
    let start = Instant::now();
    let mut ok = true;
    for n in 1..=3 {
        let built = wreath_tower_a5(n, &caps).unwrap();
        let lam = rs::lambda(&built.group, Mode::Exact, &caps).unwrap();
        ok &= lam.value == n && lam.exact;
        // The builder's claimed certificate must survive independent checking.
        let cert = built.claimed_certificate.unwrap();
        ok &= rs::verify_certificate(&built.group, &cert, &caps).pass();
    }
    ok &= start.elapsed().as_secs() < 120;
    line(1, "lambda(W_n) = n for n = 1,2,3 under 2 minutes", ok);
}

#[test]
fn criterion_02_lambda_m_sweep() {
    let caps = caps();
    let start = Instant::now();
    let reports = verify::verify_lambda_m(5, 630, &caps).unwrap();
    let ok = reports.len() == 626
        && reports.iter().all(|r| r.verdict == Verdict::Pass)
        && start.elapsed().as_secs() < 300;
    line(2, "lambda(m) = floor(log5 m) attained for 5 <= m <= 630 under 5 minutes", ok);
}

#[test]
fn criterion_03_linear_lower_bound() {
    let caps = caps();
    let reports = verify::verify_lambda_f(&verify::default_lambda_f_cases(), &caps).unwrap();
    let ok = reports.iter().all(|r| r.verdict == Verdict::Pass);
    line(3, "lambda(GL(2,4)) = 1 and lambda(GL(2,4) wr A5 on 75 points) = 2", ok);
}

#[test]
fn criterion_04_exponent_witnesses() {
    let caps = caps();
    let ok = (1..=3).all(|n| {
        verify::verify_exponent(n, &caps).unwrap().verdict == Verdict::Pass
    });
    line(4, "elements of orders 2, 4, 8 in W_1, W_2, W_3", ok);
}

#[test]
fn criterion_05_lambda_le_l2() {
    let caps = caps();
    let corpus = verify::bound1_corpus(&caps).unwrap();
    let reports = verify::verify_bound1(&corpus, &caps).unwrap();
    let ok = corpus.len() == 8 && reports.iter().all(|r| r.verdict == Verdict::Pass);
    line(5, "lambda <= L2 on the eight-group corpus, exact", ok);
}

#[test]
fn criterion_06_rarefied_checks() {
    let caps = caps();
    let mut ok = true;
    let r = rarefied::check_rarefied(&sl25(), Mode::Exact, &caps).unwrap();
    ok &= r.n == 1 && r.strict == Some(true);
    let r = rarefied::check_rarefied(&alt(7), Mode::Exact, &caps).unwrap();
    ok &= r.strict == Some(false);
    ok &= r.failure_reason().map(|s| s.contains("2520")) == Some(true);
    let (h, hr) = rarefied::find_rarefied_subgroup(&alt(7), Mode::Exact, &caps).unwrap();
    ok &= h.order_u64() == Some(360) && hr.strict == Some(true);
    line(6, "SL(2,5) strict, A7 fails on the 2520 component, A7 search finds order 360", ok);
}

#[test]
fn criterion_07_quotient_closure_and_additivity() {
    let caps = caps();
    // Strong-rarefied corpus: the quotient proposition presupposes the
    // perfect reading (a strict-but-not-strong group like S5 has the
    // solvable quotient C2, which is not rarefied).
    let corpus = vec![alt(5), alt(6), sl25()];
    let mut ok = true;
    for g in &corpus {
        let strong = rarefied::check_rarefied(g, Mode::Exact, &caps)
            .unwrap()
            .strong;
        ok &= strong == Some(true);
        let n = rs::lambda(g, Mode::Exact, &caps).unwrap().value;
        for set in oracle::normal_subgroup_lattice(g).unwrap() {
            let nsub = Group::new(g.degree(), set.into_iter().collect()).unwrap();
            let (m, rep) =
                rarefied::quotient_stays_rarefied(g, &nsub, Mode::Exact, &caps).unwrap();
            ok &= m <= n && rep.strict == Some(true);
            let (w, p, q) = rarefied::lambda_additivity(g, &nsub, Mode::Exact, &caps).unwrap();
            ok &= w == p + q;
        }
    }
    line(7, "quotients stay rarefied and lambda is additive over oracle normals", ok);
}

#[test]
fn criterion_08_oracle_gate() {
    let caps = caps();
    let start = Instant::now();
    let corpus = verify::oracle_corpus(&caps).unwrap();
    let mut reports = verify::oracle_cross_check(&corpus, &caps).unwrap();
    reports.push(verify::verify_negative_control(&caps).unwrap());
    let checked = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Pass)
        .count();
    // Everything within the oracle's order cap must be checked and agree.
    let ok = reports.iter().all(|r| r.verdict != Verdict::Fail)
        && checked >= 8
        && start.elapsed().as_secs() < 600;
    line(8, "main algorithms equal the brute-force oracle on all corpus groups under 10 minutes", ok);
}

#[test]
fn criterion_09_subdirect_suite() {
    let caps = caps();
    let reports = verify::verify_subdirect(50, 2024, &caps).unwrap();
    let ok = reports.len() == 50 && reports.iter().all(|r| r.verdict == Verdict::Pass);
    line(9, "50 seeded subdirect products satisfy lambda(G) = max lambda(G/N_i)", ok);
}

#[test]
fn criterion_10_two_generation() {
    let caps = caps();
    let mut ok = true;
    let r = verify::verify_generators(&alt(5), 200, 11, &caps).unwrap();
    ok &= r.verdict == Verdict::Pass;
    let w2 = wreath_tower_a5(2, &caps).unwrap().group;
    let r = verify::verify_generators(&w2, 200, 11, &caps).unwrap();
    ok &= r.verdict == Verdict::Pass;
    // Exhausted trials must read "unknown", never "fail".
    let r = verify::verify_generators(&alt(5), 0, 11, &caps).unwrap();
    ok &= r.verdict == Verdict::Unknown;
    line(10, "2-generator subgroups attaining lambda found within 200 trials", ok);
}

#[test]
fn criterion_11_solvable_witness() {
    let caps = caps();
    let mut ok = true;
    for n in 1..=2 {
        let h = solvable_l2_witness(n, &caps).unwrap().group;
        let (o2, _) = structure::p_core_auto(&h, 2, &caps, 0).unwrap();
        let q = structure::quotient(&h, &o2, &caps).unwrap();
        let series = structure::two_length(&q.image, &caps).unwrap();
        ok &= series.l2 >= n;
    }
    line(11, "l2 of the solvable witness modulo O_2 is at least n for n = 1, 2", ok);
}

#[test]
fn sanity_cycle_convention() {
    // (1 2) then (2 3) maps 1 -> 2 -> 3 under left-to-right composition.
    let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
    let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
    assert_eq!(a.compose(&b).unwrap().apply(0), 2);
    assert_eq!(sym(3).order_u64(), Some(6));
}
