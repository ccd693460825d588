//! Named invariant suites, runnable from the command line.
//!
//! Each suite evaluates a list of exact identities or tolerance checks and
//! reports one line per check; a failed check makes the whole run fail. The
//! acceptance tests exercise the same material with pinned tolerances; the
//! suites exist so a built binary can re-validate itself in the field.

use std::collections::BTreeSet;

use num::{BigUint, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::closed_form::{
    bec_f_alpha, closed_form_special, delta_mixture_law, delta_multinomial_form,
    delta_multinomial_form_refined, nabla_mixture_law, nabla_multinomial_form,
    nabla_multinomial_form_refined, star_power, ClosedFormKind,
};
use crate::algebra::counting::{
    multinomial_identity_holds, phi_bound, phi_count, varphi_in_bracket,
};
use crate::algebra::{
    arikan_general, arikan_symmetric, delta_m, diamond, nabla_m, star, transform_by_pattern,
    transform_lrp_by_pattern, Side,
};
use crate::channel::{BscMixture, Lrp, TransitionMatrix};
use crate::codec::{bec_genie_erasure_profile, build_generator, encode, fast_encode};
use crate::error::{Error, Result};
use crate::pattern::PatternIndex;
use crate::rational::{complement, rat, Rational};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs one of `algebra`, `oracle`, `closedform`, `identity`.
pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "algebra" => Ok(algebra_suite()),
        "oracle" => Ok(oracle_suite(3)),
        "closedform" => Ok(closedform_suite()),
        "identity" => Ok(identity_suite()),
        other => Err(Error::InvalidParameter(format!(
            "unknown suite {other:?}; expected algebra, oracle, closedform or identity"
        ))),
    }
}

/// Deterministic sample of canonical mixtures with at most `max_parts`
/// sub-channels.
pub fn random_mixtures(count: usize, max_parts: usize, seed: u64) -> Vec<BscMixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let parts = rng.gen_range(1..=max_parts);
            let mut crossovers: BTreeSet<Rational> = BTreeSet::new();
            while crossovers.len() < parts {
                let den = rng.gen_range(2..=24u64) as i64;
                let num = rng.gen_range(0..=den as u64) as i64;
                crossovers.insert(rat(num, 2 * den));
            }
            let weights: Vec<i64> = (0..parts).map(|_| rng.gen_range(1..=20)).collect();
            let total: i64 = weights.iter().sum();
            BscMixture::from_parts(
                crossovers
                    .into_iter()
                    .zip(weights)
                    .map(|(c, w)| (c, rat(w, total))),
            )
            .expect("generated parts are canonical")
        })
        .collect()
}

/// Deterministic sample of mixtures with exactly `interior` crossovers
/// strictly inside `(0, 1/2)` plus a part at exactly 1/2.
pub fn random_mixtures_with_half(count: usize, interior: usize, seed: u64) -> Vec<BscMixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut crossovers: BTreeSet<Rational> = BTreeSet::new();
            while crossovers.len() < interior {
                let den = rng.gen_range(3..=24u64) as i64;
                let num = rng.gen_range(1..den as u64) as i64;
                crossovers.insert(rat(num, 2 * den));
            }
            let weights: Vec<i64> = (0..=interior).map(|_| rng.gen_range(1..=20)).collect();
            let total: i64 = weights.iter().sum();
            let mut parts: Vec<(Rational, Rational)> = crossovers
                .into_iter()
                .zip(&weights)
                .map(|(c, &w)| (c, rat(w, total)))
                .collect();
            parts.push((rat(1, 2), rat(weights[interior], total)));
            BscMixture::from_parts(parts).expect("generated parts are canonical")
        })
        .collect()
}

fn check(checks: &mut Vec<Check>, name: &str, passed: bool) {
    checks.push(Check { name: name.to_string(), passed });
}

fn scalar_grid() -> Vec<Rational> {
    [
        (0, 1),
        (1, 7),
        (1, 4),
        (1, 3),
        (2, 5),
        (1, 2),
        (5, 8),
        (3, 4),
        (9, 10),
        (1, 1),
    ]
    .into_iter()
    .map(|(n, d)| rat(n, d))
    .collect()
}

pub fn algebra_suite() -> SuiteReport {
    let mut checks = Vec::new();
    let grid = scalar_grid();

    let mut comm = true;
    let mut assoc = true;
    let mut comp = true;
    let mut units = true;
    for a in &grid {
        for b in &grid {
            comm &= star(a, b) == star(b, a) && diamond(a, b) == diamond(b, a);
            comp &= star(&complement(a), b) == complement(&star(a, b));
            let interior = |x: &Rational| !x.is_zero() && !x.is_one();
            if interior(a) && interior(b) {
                comp &= diamond(&complement(a), &complement(b)) == complement(&diamond(a, b));
            }
            if interior(a) {
                units &= diamond(a, &complement(a)) == rat(1, 2) && diamond(a, &rat(1, 2)) == *a;
            }
            units &= star(a, &rat(1, 2)) == rat(1, 2) && star(a, &Rational::zero()) == *a;
            for c in &grid {
                assoc &= star(&star(a, b), c) == star(a, &star(b, c));
                assoc &= diamond(&diamond(a, b), c) == diamond(a, &diamond(b, c));
            }
        }
    }
    check(&mut checks, "star/diamond commutativity", comm);
    check(&mut checks, "star/diamond associativity", assoc);
    check(&mut checks, "complement laws", comp);
    check(&mut checks, "absorbing and neutral elements", units);

    let ws = random_mixtures(12, 3, 101);
    let mut path = true;
    let mut closure = true;
    for w0 in &ws {
        for w1 in &ws {
            for side in [Side::A0, Side::A1] {
                let mixture = arikan_symmetric(side, w0, w1);
                let profile = arikan_general(side, &w0.to_lrp(), &w1.to_lrp());
                path &= mixture.to_lrp() == profile;
                closure &= profile.is_symmetric();
            }
        }
    }
    check(&mut checks, "mixture and profile transform paths agree", path);
    check(&mut checks, "transforms of symmetric channels are symmetric", closure);

    let mut commutes = true;
    let mut associates = true;
    for (i, a) in ws.iter().enumerate().take(5) {
        for b in ws.iter().skip(i).take(4) {
            commutes &= arikan_symmetric(Side::A0, a, b) == arikan_symmetric(Side::A0, b, a);
            commutes &= arikan_symmetric(Side::A1, a, b) == arikan_symmetric(Side::A1, b, a);
            for c in ws.iter().take(3) {
                associates &= arikan_symmetric(Side::A0, &arikan_symmetric(Side::A0, a, b), c)
                    == arikan_symmetric(Side::A0, a, &arikan_symmetric(Side::A0, b, c));
                associates &= arikan_symmetric(Side::A1, &arikan_symmetric(Side::A1, a, b), c)
                    == arikan_symmetric(Side::A1, a, &arikan_symmetric(Side::A1, b, c));
            }
        }
    }
    check(&mut checks, "transform commutativity", commutes);
    check(&mut checks, "transform associativity", associates);

    // The bit side does not commute for asymmetric operands: the swapped
    // transform is symmetric while the original is not.
    let sigma = BscMixture::bsc(&rat(21, 50)).unwrap().to_lrp();
    let bab = TransitionMatrix::b_ab(&rat(1, 8), &rat(1, 4)).unwrap().lrp();
    let w = arikan_general(Side::A1, &sigma, &bab);
    let w_swapped = arikan_general(Side::A1, &bab, &sigma);
    check(
        &mut checks,
        "bit side is order-sensitive for asymmetric operands",
        w != w_swapped && w_swapped.is_symmetric() && !w.is_symmetric(),
    );

    let mut conserved = true;
    for w in random_mixtures(100, 4, 7) {
        let base = w.metrics().capacity;
        let lo = arikan_symmetric(Side::A0, &w, &w).metrics().capacity;
        let hi = arikan_symmetric(Side::A1, &w, &w).metrics().capacity;
        conserved &= (lo + hi - 2.0 * base).abs() <= 1e-9;
    }
    check(&mut checks, "capacity sum conserved across the kernel", conserved);

    let mut ident = true;
    for k in 0..=6u32 {
        for a in 0..=(1u64 << k) {
            ident &= multinomial_identity_holds(k, a);
        }
    }
    check(&mut checks, "closing multinomial identity", ident);

    let mut bracket = true;
    for k in 1..=6u32 {
        for alpha in PatternIndex::all_of_length(k) {
            bracket &= varphi_in_bracket(&alpha).unwrap_or(false);
        }
    }
    check(&mut checks, "pattern weight bracketing and oddness", bracket);

    let mut bounded = true;
    let patterns: Vec<PatternIndex> =
        ["0", "1", "00", "01", "10", "11"].iter().map(|s| s.parse().unwrap()).collect();
    for n in 1..=4usize {
        for w in random_mixtures_with_half(12, n, 900 + n as u64) {
            for alpha in &patterns {
                let count = BigUint::from(phi_count(&transform_by_pattern(&w, alpha)));
                bounded &= count <= phi_bound(alpha, n as u64).unwrap();
            }
        }
    }
    check(&mut checks, "switch sizes stay within printed bounds", bounded);

    SuiteReport { suite: "algebra".into(), checks }
}

/// The four reference channels used by the explicit-channel comparisons.
pub fn oracle_reference_channels() -> Vec<(String, TransitionMatrix)> {
    let bsc = BscMixture::bsc(&rat(1, 4)).unwrap();
    let bec = BscMixture::bec(&rat(1, 3)).unwrap();
    let two_part =
        BscMixture::from_parts([(rat(1, 8), rat(1, 2)), (rat(1, 3), rat(1, 2))]).unwrap();
    vec![
        ("B(1/4)".into(), TransitionMatrix::from_mixture(&bsc)),
        ("E(1/3)".into(), TransitionMatrix::from_mixture(&bec)),
        ("B(1/8)/B(1/3) switch".into(), TransitionMatrix::from_mixture(&two_part)),
        ("B_{1/8,1/4}".into(), TransitionMatrix::b_ab(&rat(1, 8), &rat(1, 4)).unwrap()),
    ]
}

pub fn oracle_suite(max_depth: usize) -> SuiteReport {
    let mut checks = Vec::new();
    for (name, matrix) in oracle_reference_channels() {
        let base = matrix.lrp();
        let symmetric = base.is_symmetric();
        let mixture = symmetric.then(|| BscMixture::from_lrp(&base).unwrap());
        let mut agree = true;
        let mut sizes = true;
        for len in 0..=max_depth as u32 {
            for alpha in PatternIndex::all_of_length(len) {
                let explicit = crate::construct::oracle_channel(&matrix, &alpha).unwrap();
                sizes &= explicit.output_count()
                    == (1usize << alpha.b_value())
                        * matrix.output_count().pow(1u32 << alpha.len());
                let explicit = explicit.lrp();
                agree &= explicit == transform_lrp_by_pattern(&base, &alpha);
                if let Some(m) = &mixture {
                    agree &= explicit == transform_by_pattern(m, &alpha).to_lrp();
                }
            }
        }
        check(&mut checks, &format!("explicit channel matches algebra for {name}"), agree);
        check(&mut checks, &format!("output alphabet size law for {name}"), sizes);
    }
    SuiteReport { suite: "oracle".into(), checks }
}

pub fn closedform_suite() -> SuiteReport {
    let mut checks = Vec::new();

    let mut special = true;
    for eps in [rat(1, 4), rat(1, 3)] {
        let base = BscMixture::bsc(&eps).unwrap();
        let mut kinds = Vec::new();
        for l in 0..=2 {
            kinds.push(ClosedFormKind::AllZeros { l });
            for v in 0..=2 {
                kinds.push(ClosedFormKind::ZerosThenOnes { l, ones: v + 1 });
                for w in 0..=2 {
                    kinds.push(ClosedFormKind::ZeroOneBlock { l, i: v, k: w });
                    kinds.push(ClosedFormKind::ZeroOneZeroBlock { l, i: v, t: w });
                    kinds.push(ClosedFormKind::ZeroOneZeroOneBlock { l, i: v, t: w });
                }
            }
        }
        for kind in kinds {
            special &= closed_form_special(&eps, kind).unwrap()
                == transform_by_pattern(&base, &kind.pattern());
        }
    }
    check(&mut checks, "explicit pattern-family forms match iteration", special);

    let interior = BscMixture::from_parts([
        (rat(1, 5), rat(1, 3)),
        (rat(1, 3), rat(1, 3)),
        (rat(2, 5), rat(1, 3)),
    ])
    .unwrap();
    let with_half = BscMixture::from_parts([
        (rat(1, 5), rat(1, 4)),
        (rat(1, 3), rat(1, 4)),
        (rat(1, 2), rat(1, 2)),
    ])
    .unwrap();
    let mut forms = true;
    for m in 0..=5u32 {
        forms &= delta_multinomial_form(&interior, m).unwrap() == delta_m(&interior, m);
        forms &= nabla_multinomial_form(&interior, m).unwrap() == nabla_m(&interior, m);
        forms &= delta_multinomial_form_refined(&with_half, m).unwrap() == delta_m(&with_half, m);
        forms &= nabla_multinomial_form_refined(&with_half, m).unwrap() == nabla_m(&with_half, m);
    }
    check(&mut checks, "multinomial compound forms match iteration", forms);

    let inner = BscMixture::bsc(&rat(1, 4)).unwrap();
    let mut laws = true;
    for (pn, pd, qn, qd) in [(1i64, 5i64, 3i64, 10i64), (0, 1, 1, 3), (2, 5, 0, 1)] {
        let (p, q) = (rat(pn, pd), rat(qn, qd));
        let padded = BscMixture::from_parts([
            (rat(0, 1), p.clone()),
            (rat(1, 2), q.clone()),
            (rat(1, 4), Rational::one() - &p - &q),
        ])
        .unwrap();
        for t in 1..=5u32 {
            laws &= delta_mixture_law(&p, &q, &inner, t).unwrap() == delta_m(&padded, t);
            laws &= nabla_mixture_law(&p, &q, &inner, t).unwrap() == nabla_m(&padded, t);
        }
    }
    check(&mut checks, "padded mixture laws match iteration", laws);

    let mut bec = true;
    for q in [rat(1, 3), rat(1, 2), rat(2, 3)] {
        let base = BscMixture::bec(&q).unwrap();
        for alpha in PatternIndex::all_of_length(8) {
            bec &= transform_by_pattern(&base, &alpha)
                == BscMixture::bec(&bec_f_alpha(&q, &alpha)).unwrap();
        }
    }
    bec &= bec_f_alpha(&rat(1, 2), &"0110".parse().unwrap()) == rat(34911, 65536);
    check(&mut checks, "erasure-channel composition closed form", bec);

    // Uniform blocks reduce to pure compounds.
    let w = BscMixture::bsc(&rat(1, 3)).unwrap();
    let mut blocks = true;
    for k in 1..=3usize {
        let zeros = PatternIndex::from_bits(&vec![0u8; k]);
        let ones = PatternIndex::from_bits(&vec![1u8; k]);
        blocks &= transform_by_pattern(&w, &zeros) == delta_m(&w, 1 << k);
        blocks &= transform_by_pattern(&w, &ones) == nabla_m(&w, 1 << k);
        blocks &= delta_m(&w, 1 << k).parts().len() == 1
            && delta_m(&w, 1 << k).parts()[0].0 == star_power(&rat(1, 3), 1u64 << k);
    }
    check(&mut checks, "uniform blocks equal pure compounds", blocks);

    SuiteReport { suite: "closedform".into(), checks }
}

pub fn identity_suite() -> SuiteReport {
    let mut checks = Vec::new();

    // Printed generator matrices.
    let g1 = build_generator(1).unwrap();
    let g2 = build_generator(2).unwrap();
    let g3 = build_generator(3).unwrap();
    let printed_g1 = [vec![1u8, 0], vec![1, 1]];
    let printed_g2 = [
        vec![1u8, 0, 0, 0],
        vec![1, 0, 1, 0],
        vec![1, 1, 0, 0],
        vec![1, 1, 1, 1],
    ];
    let printed_g3: [Vec<u8>; 8] = [
        vec![1, 0, 0, 0, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 1, 0, 0, 0],
        vec![1, 0, 1, 0, 0, 0, 0, 0],
        vec![1, 0, 1, 0, 1, 0, 1, 0],
        vec![1, 1, 0, 0, 0, 0, 0, 0],
        vec![1, 1, 0, 0, 1, 1, 0, 0],
        vec![1, 1, 1, 1, 0, 0, 0, 0],
        vec![1, 1, 1, 1, 1, 1, 1, 1],
    ];
    let matches = (0..2).all(|i| g1.row(i) == printed_g1[i].as_slice())
        && (0..4).all(|i| g2.row(i) == printed_g2[i].as_slice())
        && (0..8).all(|i| g3.row(i) == printed_g3[i].as_slice());
    check(&mut checks, "generator matches printed matrices", matches);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fast = true;
    for k in 1..=6u32 {
        let g = build_generator(k).unwrap();
        for _ in 0..20 {
            let u: Vec<u8> = (0..g.size()).map(|_| rng.gen_range(0..2u8)).collect();
            fast &= fast_encode(k, &u).unwrap() == encode(&g, &u).unwrap();
        }
    }
    check(&mut checks, "fast encode equals matrix encode", fast);

    // Decoder wiring: position δ of the decoder sees exactly the pattern-δ
    // synthetic channel, pinned by the exact erasure profile.
    let mut wiring = true;
    for k in 1..=3u32 {
        for q in [rat(1, 2), rat(1, 3)] {
            let profile = bec_genie_erasure_profile(k, &q).unwrap();
            for (i, got) in profile.iter().enumerate() {
                let alpha = PatternIndex::from_value(i as u64, k);
                wiring &= got == &bec_f_alpha(&q, &alpha);
            }
        }
    }
    check(&mut checks, "decode position matches transform pattern", wiring);

    // Equivalence identities from the channel model.
    let fig4 = TransitionMatrix::from_rows([
        vec![rat(2, 9), rat(2, 3), rat(1, 9)],
        vec![rat(4, 9), rat(1, 3), rat(2, 9)],
    ])
    .unwrap();
    let folded = BscMixture::bsc(&rat(3, 10)).unwrap().to_lrp()
        == BscMixture::bsc(&rat(7, 10)).unwrap().to_lrp();
    let fig4_eq = fig4.lrp() == BscMixture::bsc(&rat(1, 3)).unwrap().to_lrp();
    let erasure_switch = Lrp::rsc_combine(&[
        (rat(1, 2), BscMixture::bsc(&rat(1, 2)).unwrap().to_lrp()),
        (rat(1, 2), BscMixture::bsc(&rat(0, 1)).unwrap().to_lrp()),
    ])
    .unwrap()
        == BscMixture::bec(&rat(1, 2)).unwrap().to_lrp();
    check(&mut checks, "crossover folding identity", folded);
    check(&mut checks, "three-output channel equivalent to a crossover channel", fig4_eq);
    check(&mut checks, "noiseless/noisy switch equals an erasure channel", erasure_switch);

    // Round trip between canonical switches and profiles.
    let mut round = true;
    for w in random_mixtures(25, 4, 303) {
        round &= BscMixture::from_lrp(&w.to_lrp()).unwrap() == w;
    }
    check(&mut checks, "switch/profile round trip", round);

    SuiteReport { suite: "identity".into(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for name in ["algebra", "closedform", "identity"] {
            let report = run_suite(name).unwrap();
            for c in &report.checks {
                assert!(c.passed, "{} / {}", report.suite, c.name);
            }
        }
        // Depth 2 keeps the explicit-channel sweep fast in unit tests; the
        // acceptance suite runs the full depth.
        let report = oracle_suite(2);
        for c in &report.checks {
            assert!(c.passed, "oracle / {}", c.name);
        }
        assert!(run_suite("bogus").is_err());
    }

    #[test]
    fn mixture_generators_are_canonical_and_deterministic() {
        let a = random_mixtures(10, 4, 1);
        let b = random_mixtures(10, 4, 1);
        assert_eq!(a, b);
        for w in &a {
            assert!(w.part_count() >= 1 && w.part_count() <= 4);
        }
        for w in random_mixtures_with_half(10, 3, 2) {
            assert_eq!(w.part_count(), 4);
            assert_eq!(w.parts().last().unwrap().0, rat(1, 2));
            assert!(w.parts()[0].0 > rat(0, 1));
        }
    }
}
