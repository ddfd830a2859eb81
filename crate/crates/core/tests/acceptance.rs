//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use stickbound::arcpres::random_batch;
use stickbound::bounds::{bae_park_upper, huh_oh_upper, theorem2_upper};
use stickbound::construct::{build_full, build_k1, stick_bound, Certificate, StickKnot};
use stickbound::invariants::{alexander, determinant, project, KnotInvariants};
use stickbound::{ArcPresentation, Diagram, LaurentPoly, Rational};

fn ap3() -> ArcPresentation {
    ArcPresentation::from_pairs(&[(1, 2), (2, 3), (3, 1)])
}

fn ap5() -> ArcPresentation {
    ArcPresentation::from_pairs(&[(1, 3), (2, 4), (3, 5), (1, 4), (2, 5)])
}

struct Report {
    failed: Vec<usize>,
}

impl Report {
    fn line(
        &mut self,
        id: usize,
        ok: bool,
        elapsed: Duration,
        limit: Option<Duration>,
        detail: String,
    ) {
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = ok && in_time;
        let limit = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "criterion {id}: {} — {detail}; {:.2}s{limit}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !pass {
            self.failed.push(id);
        }
    }
}

fn determinant_of(ap: &ArcPresentation) -> u64 {
    KnotInvariants::of(&ap.diagram().unwrap())
        .unwrap()
        .determinant_u64()
        .unwrap()
}

fn criterion_1(r: &mut Report) {
    let t = Instant::now();
    let (k, cert) = build_full(&ap5()).unwrap();
    let ok = k.stick_count() == 6
        && Rational::from_integer(6.into()) == stick_bound(5)
        && cert.embedded()
        && cert.output_invariants.determinant == 3.into()
        && determinant_of(&ap5()) == 3;
    r.line(
        1,
        ok,
        t.elapsed(),
        Some(Duration::from_secs(1)),
        format!(
            "AP5 gives {} sticks, det {}",
            k.stick_count(),
            cert.output_invariants.determinant
        ),
    );
}

fn criterion_2(r: &mut Report) {
    let t = Instant::now();
    let (k, cert) = build_full(&ap3()).unwrap();
    let ok =
        k.stick_count() == 3 && cert.embedded() && cert.output_invariants.determinant == 1.into();
    r.line(
        2,
        ok,
        t.elapsed(),
        Some(Duration::from_secs(1)),
        format!(
            "AP3 gives {} sticks, det {}",
            k.stick_count(),
            cert.output_invariants.determinant
        ),
    );
}

fn criteria_3_and_4(r: &mut Report) {
    let t = Instant::now();
    let batch = random_batch(200, 3, 12, 42).unwrap();
    let k1_bad = batch
        .par_iter()
        .filter(|(_, ap)| {
            let k = build_k1(ap).unwrap();
            !(k.len() == 2 * ap.n()
                && k.stick_count() == 2 * ap.n()
                && k.embedded().unwrap().is_embedded())
        })
        .count();
    r.line(
        3,
        k1_bad == 0,
        t.elapsed(),
        Some(Duration::from_secs(30)),
        format!("{} of 200 cylinder polygons wrong", k1_bad),
    );

    let t = Instant::now();
    let beta_bad = batch
        .iter()
        .filter(|(_, ap)| {
            let (_, b) = ap.classify().unwrap();
            let (norm, _) = ap.normalize().unwrap();
            let (_, nb) = norm.classify().unwrap();
            !(b.beta1 == b.beta3 && nb.beta1 == nb.beta3 && nb.beta1 <= (ap.n() - 1) / 2)
        })
        .count();
    r.line(
        4,
        beta_bad == 0,
        t.elapsed(),
        None,
        format!("{} of 200 violate the type accounting", beta_bad),
    );
}

struct Built {
    ap: ArcPresentation,
    knot: StickKnot,
    cert: Certificate,
    output: Diagram,
}

fn build_500() -> Vec<Built> {
    random_batch(500, 5, 12, 7)
        .unwrap()
        .into_par_iter()
        .map(|(_, ap)| {
            let (knot, cert) = build_full(&ap).unwrap();
            let output = project(&knot.vertices).unwrap().diagram;
            Built {
                ap,
                knot,
                cert,
                output,
            }
        })
        .collect()
}

fn criterion_5(r: &mut Report, built: &[Built], elapsed: Duration) {
    let mut bad = 0;
    let mut applied = 0;
    for b in built {
        let c = &b.cert;
        let n = c.n;
        let sticks_ok = b.knot.stick_count() == c.sticks_k3;
        let ok = if c.top_reduction.is_applied() {
            applied += 1;
            c.sticks_k3 == n + c.beta.beta1 - 1 && c.bound_satisfied
        } else {
            c.sticks_k3 == n + c.beta.beta1 + 1
                && c.top_reduction.to_string().starts_with("skipped:")
                && c.bound_satisfied
                    == (Rational::from_integer(c.sticks_k3.into()) <= stick_bound(n))
        };
        if !(ok && sticks_ok && c.embedded()) {
            bad += 1;
        }
    }
    let rate = applied as f64 / built.len() as f64;
    r.line(
        5,
        bad == 0 && rate >= 0.95,
        elapsed,
        Some(Duration::from_secs(120)),
        format!(
            "{bad} accounting failures; top reduction applied {applied}/{} = {:.1}%",
            built.len(),
            100.0 * rate
        ),
    );
}

fn criterion_6(r: &mut Report, built: &[Built]) {
    let t = Instant::now();
    let bad = built
        .par_iter()
        .filter(|b| {
            let input = b.ap.diagram().unwrap();
            let (di, do_) = (
                determinant(&input).unwrap(),
                determinant(&b.output).unwrap(),
            );
            let (ai, ao) = (alexander(&input).unwrap(), alexander(&b.output).unwrap());
            !(di == do_ && ai == ao && b.cert.invariants_match)
        })
        .count();
    r.line(
        6,
        bad == 0,
        t.elapsed(),
        None,
        format!("{bad} of {} disagree", built.len()),
    );
}

fn identities_hold(d: &Diagram) -> bool {
    let delta: LaurentPoly = alexander(d).unwrap();
    let at_one = delta.eval(1).unwrap();
    let at_minus_one = delta.eval(-1).unwrap();
    let reversed = LaurentPoly::new(0, delta.coeffs.iter().rev().cloned().collect());
    at_one.magnitude() == &1u32.into()
        && (delta.equivalent(&reversed))
        && at_minus_one.magnitude() % 2u32 == 1u32.into()
        && at_minus_one.magnitude() == determinant(d).unwrap().magnitude()
}

fn criterion_7(r: &mut Report, built: &[Built]) {
    let t = Instant::now();
    let bad = built
        .par_iter()
        .map(|b| {
            [b.ap.diagram().unwrap(), b.output.clone()]
                .iter()
                .filter(|d| !identities_hold(d))
                .count()
        })
        .sum::<usize>();
    r.line(
        7,
        bad == 0,
        t.elapsed(),
        None,
        format!("{bad} of {} diagrams fail an identity", 2 * built.len()),
    );
}

fn criterion_8(r: &mut Report) {
    let t = Instant::now();
    let mut bad = 0;
    for c in 3..=100u64 {
        for f in [false, true] {
            if theorem2_upper(bae_park_upper(c, f).unwrap()).unwrap() != huh_oh_upper(c, f).unwrap()
            {
                bad += 1;
            }
        }
        if c >= 4 && huh_oh_upper(c, false).unwrap() >= Rational::from_integer((2 * c).into()) {
            bad += 1;
        }
    }
    r.line(
        8,
        bad == 0,
        t.elapsed(),
        None,
        format!("{bad} failures over c = 3..100"),
    );
}

fn criterion_9(r: &mut Report) {
    let t = Instant::now();
    let batch = random_batch(100, 5, 12, 9).unwrap();
    let results: Vec<(usize, usize)> = batch
        .par_iter()
        .map(|(_, ap)| {
            let base = KnotInvariants::of(&ap.diagram().unwrap()).unwrap();
            let (mut moves, mut bad) = (0, 0);
            for k in 0..ap.n() as i64 {
                let shifted = ap.cyclic_shift(k);
                let mut candidates = vec![shifted.clone()];
                candidates.extend(shifted.destabilize_top());
                for c in candidates {
                    moves += 1;
                    let inv = KnotInvariants::of(&c.diagram().unwrap()).unwrap();
                    if !base.consistent_with(&inv) {
                        bad += 1;
                    }
                }
            }
            (moves, bad)
        })
        .collect();
    let moves: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    r.line(
        9,
        bad == 0,
        t.elapsed(),
        None,
        format!("{bad} of {moves} moves change an invariant"),
    );
}

#[test]
fn acceptance() {
    let mut r = Report { failed: Vec::new() };
    criterion_1(&mut r);
    criterion_2(&mut r);
    criteria_3_and_4(&mut r);
    let t = Instant::now();
    let built = build_500();
    let elapsed = t.elapsed();
    criterion_5(&mut r, &built, elapsed);
    criterion_6(&mut r, &built);
    criterion_7(&mut r, &built);
    criterion_8(&mut r);
    criterion_9(&mut r);
    assert!(r.failed.is_empty(), "failed criteria: {:?}", r.failed);
}
