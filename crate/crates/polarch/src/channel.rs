//! Exact representations of binary-input channels.
//!
//! A channel with uniformly distributed binary input is characterized, up to
//! equivalence, by its likelihood ratio profile ([`Lrp`]): the distribution of
//! the posterior `Pr(x=0 | y)` over the output alphabet. Symmetric channels
//! additionally admit a canonical form as a random switch over binary
//! symmetric sub-channels ([`BscMixture`]). Explicit transition tables
//! ([`TransitionMatrix`]) exist mainly to validate the algebraic paths by
//! brute force.
//!
//! All probabilities are exact rationals; capacity and the Bhattacharyya
//! parameter are evaluated in `f64` at the very end (their integrands involve
//! logarithms and square roots), while the error probability stays exact.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{BigUint, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{
    complement, format_rational, is_probability, parse_rational, rat, rational_to_f64, Rational,
};

fn half() -> Rational {
    rat(1, 2)
}

/// Likelihood ratio profile: the exact distribution of the posterior
/// `ε = Pr(x=0 | y)`. Points are strictly increasing in `ε`, carry positive
/// mass, the masses sum to 1 and the mean posterior is exactly 1/2.
///
/// Two channels are equivalent (mutually degraded) iff their profiles are
/// equal, so `PartialEq` on `Lrp` *is* the channel-equivalence test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lrp {
    points: Vec<(Rational, Rational)>,
}

impl Lrp {
    /// Validating constructor from `(posterior, mass)` pairs in any order;
    /// equal posteriors are merged, zero masses dropped.
    pub fn from_points<I>(points: I) -> Result<Lrp>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (eps, mass) in points {
            if !is_probability(&eps) {
                return Err(Error::InvalidParameter(format!(
                    "posterior {} outside [0,1]",
                    format_rational(&eps)
                )));
            }
            if mass.is_negative() {
                return Err(Error::InvalidParameter("negative mass".into()));
            }
            *acc.entry(eps).or_insert_with(Rational::zero) += mass;
        }
        Lrp::from_accumulated(acc)
    }

    fn from_accumulated(acc: BTreeMap<Rational, Rational>) -> Result<Lrp> {
        let points: Vec<(Rational, Rational)> =
            acc.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let total: Rational = points.iter().map(|(_, m)| m.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "profile mass sums to {}, not 1",
                format_rational(&total)
            )));
        }
        let mean: Rational = points.iter().map(|(e, m)| e * m).sum();
        if mean != half() {
            return Err(Error::InvalidParameter(format!(
                "mean posterior is {}, not 1/2",
                format_rational(&mean)
            )));
        }
        Ok(Lrp { points })
    }

    /// Points in ascending posterior order.
    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Mass at an exact posterior value (zero if absent).
    pub fn mass_at(&self, eps: &Rational) -> Rational {
        match self.points.binary_search_by(|(e, _)| e.cmp(eps)) {
            Ok(i) => self.points[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// A profile is symmetric when each point `(ε, m)` is matched by
    /// `(1-ε, m)`.
    pub fn is_symmetric(&self) -> bool {
        self.points
            .iter()
            .all(|(e, m)| self.mass_at(&complement(e)) == *m)
    }

    /// Pointwise mixture `P(ε) = Σ q_j P_j(ε)` of independent channels with
    /// disjoint outputs. Weights must be nonnegative and sum to 1.
    pub fn rsc_combine(parts: &[(Rational, Lrp)]) -> Result<Lrp> {
        let total: Rational = parts.iter().map(|(q, _)| q.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "switch weights sum to {}, not 1",
                format_rational(&total)
            )));
        }
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (q, lrp) in parts {
            if q.is_negative() {
                return Err(Error::InvalidParameter("negative switch weight".into()));
            }
            if q.is_zero() {
                continue;
            }
            for (e, m) in &lrp.points {
                *acc.entry(e.clone()).or_insert_with(Rational::zero) += q * m;
            }
        }
        Lrp::from_accumulated(acc)
    }

    /// Reliability functionals evaluated on the profile.
    pub fn metrics(&self) -> Metrics {
        let mut capacity = 0.0;
        let mut bhattacharyya = 0.0;
        let mut error_prob = Rational::zero();
        for (e, m) in &self.points {
            let ef = rational_to_f64(e);
            let mf = rational_to_f64(m);
            // 1 + ε log2 ε + (1-ε) log2 (1-ε), with 0 log 0 = 0.
            let mut f = 1.0;
            if ef > 0.0 {
                f += ef * ef.log2();
            }
            if ef < 1.0 {
                f += (1.0 - ef) * (1.0 - ef).log2();
            }
            capacity += f * mf;
            bhattacharyya += 2.0 * (ef * (1.0 - ef)).sqrt() * mf;
            let c = complement(e);
            error_prob += if *e <= c { e } else { &c } * m;
        }
        Metrics {
            capacity,
            error_prob,
            bhattacharyya,
        }
    }

    pub fn to_json(&self) -> LrpJson {
        LrpJson {
            points: self
                .points
                .iter()
                .map(|(e, m)| LrpPointJson {
                    eps: format_rational(e),
                    mass: format_rational(m),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &LrpJson) -> Result<Lrp> {
        Lrp::from_points(
            json.points
                .iter()
                .map(|p| Ok((parse_rational(&p.eps)?, parse_rational(&p.mass)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LrpJson {
    pub points: Vec<LrpPointJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct LrpPointJson {
    pub eps: String,
    pub mass: String,
}

/// Reliability summary of a channel. `error_prob` is exact; the two
/// entropy-like quantities are `f64` because their integrands are irrational.
#[derive(Clone, Debug)]
pub struct Metrics {
    pub capacity: f64,
    pub error_prob: Rational,
    pub bhattacharyya: f64,
}

/// Canonical form of a symmetric channel: a random switch over binary
/// symmetric sub-channels with strictly increasing crossovers in `[0, 1/2]`
/// and positive weights summing to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BscMixture {
    parts: Vec<(Rational, Rational)>,
}

impl BscMixture {
    /// Canonicalizes `(crossover, weight)` pairs: crossovers above 1/2 fold to
    /// their complement, equal crossovers merge, zero weights drop.
    pub fn from_parts<I>(parts: I) -> Result<BscMixture>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (eps, w) in parts {
            if !is_probability(&eps) {
                return Err(Error::InvalidParameter(format!(
                    "crossover {} outside [0,1]",
                    format_rational(&eps)
                )));
            }
            if w.is_negative() {
                return Err(Error::InvalidParameter("negative mixture weight".into()));
            }
            if w.is_zero() {
                continue;
            }
            let folded = if eps > half() { complement(&eps) } else { eps };
            *acc.entry(folded).or_insert_with(Rational::zero) += w;
        }
        let parts: Vec<(Rational, Rational)> = acc.into_iter().collect();
        let total: Rational = parts.iter().map(|(_, w)| w.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "mixture weights sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(BscMixture { parts })
    }

    /// The binary symmetric channel `B(ε)`, folded to crossover `min(ε, 1-ε)`.
    pub fn bsc(eps: &Rational) -> Result<BscMixture> {
        if !is_probability(eps) {
            return Err(Error::InvalidParameter(format!(
                "crossover {} outside [0,1]",
                format_rational(eps)
            )));
        }
        BscMixture::from_parts([(eps.clone(), Rational::one())])
    }

    /// The binary erasure channel `E(q)` in switch form: a noiseless part of
    /// weight `1-q` and a completely noisy part of weight `q`.
    pub fn bec(q: &Rational) -> Result<BscMixture> {
        if !is_probability(q) {
            return Err(Error::InvalidParameter(format!(
                "erasure probability {} outside [0,1]",
                format_rational(q)
            )));
        }
        BscMixture::from_parts([(Rational::zero(), complement(q)), (half(), q.clone())])
    }

    /// Parts in ascending crossover order.
    pub fn parts(&self) -> &[(Rational, Rational)] {
        &self.parts
    }

    /// Number of sub-channels in the canonical switch.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Weight sitting on crossover exactly `c` (zero if absent).
    pub fn weight_at(&self, c: &Rational) -> Rational {
        match self.parts.binary_search_by(|(e, _)| e.cmp(c)) {
            Ok(i) => self.parts[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Expands to the likelihood ratio profile: each part `B(ε)` contributes
    /// `(ε, w/2)` and `(1-ε, w/2)`, collapsing to `(1/2, w)` at `ε = 1/2`.
    pub fn to_lrp(&self) -> Lrp {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (eps, w) in &self.parts {
            if *eps == half() {
                *acc.entry(half()).or_insert_with(Rational::zero) += w;
            } else {
                let hw = w / rat(2, 1);
                *acc.entry(eps.clone()).or_insert_with(Rational::zero) += hw.clone();
                *acc.entry(complement(eps)).or_insert_with(Rational::zero) += hw;
            }
        }
        Lrp::from_accumulated(acc).expect("mixture expansion always yields a valid profile")
    }

    /// Reads the canonical switch back off a symmetric profile; inverse of
    /// [`to_lrp`](Self::to_lrp).
    pub fn from_lrp(lrp: &Lrp) -> Result<BscMixture> {
        if !lrp.is_symmetric() {
            return Err(Error::Asymmetric);
        }
        let mut parts = Vec::new();
        for (e, m) in lrp.points() {
            if *e < half() {
                parts.push((e.clone(), m * rat(2, 1)));
            } else if *e == half() {
                parts.push((e.clone(), m.clone()));
            }
        }
        BscMixture::from_parts(parts)
    }

    pub fn metrics(&self) -> Metrics {
        self.to_lrp().metrics()
    }

    pub fn to_json(&self) -> BscMixtureJson {
        BscMixtureJson {
            parts: self
                .parts
                .iter()
                .map(|(c, w)| BscPartJson {
                    crossover: format_rational(c),
                    weight: format_rational(w),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &BscMixtureJson) -> Result<BscMixture> {
        BscMixture::from_parts(
            json.parts
                .iter()
                .map(|p| Ok((parse_rational(&p.crossover)?, parse_rational(&p.weight)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BscMixtureJson {
    pub parts: Vec<BscPartJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BscPartJson {
    pub crossover: String,
    pub weight: String,
}

/// Explicit 2×N transition table with exact entries.
///
/// Entries are stored as integer numerators over one shared denominator;
/// iterated explicit transforms square the alphabet at every step, and the
/// shared-denominator form keeps those tables compact and multiplication
/// cheap while staying exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionMatrix {
    denom: BigUint,
    rows: [Vec<BigUint>; 2],
}

impl TransitionMatrix {
    /// Builds from two rows of exact probabilities; each row must be
    /// nonnegative and sum to 1.
    pub fn from_rows(rows: [Vec<Rational>; 2]) -> Result<TransitionMatrix> {
        if rows[0].len() != rows[1].len() || rows[0].is_empty() {
            return Err(Error::InvalidParameter(
                "transition matrix needs two equal-length nonempty rows".into(),
            ));
        }
        let mut denom = BigUint::one();
        for row in &rows {
            for p in row {
                if p.is_negative() {
                    return Err(Error::InvalidParameter("negative transition probability".into()));
                }
                denom = denom.lcm(p.denom().magnitude());
            }
        }
        let scale = |row: &[Rational]| -> Vec<BigUint> {
            row.iter()
                .map(|p| p.numer().magnitude() * (&denom / p.denom().magnitude()))
                .collect()
        };
        let m = TransitionMatrix {
            rows: [scale(&rows[0]), scale(&rows[1])],
            denom,
        };
        m.check_rows()?;
        Ok(m)
    }

    pub(crate) fn from_raw(denom: BigUint, rows: [Vec<BigUint>; 2]) -> TransitionMatrix {
        TransitionMatrix { denom, rows }
    }

    fn check_rows(&self) -> Result<()> {
        for row in &self.rows {
            let sum: BigUint = row.iter().sum();
            if sum != self.denom {
                return Err(Error::InvalidParameter("transition row does not sum to 1".into()));
            }
        }
        Ok(())
    }

    /// The two-output channel of crossed transition probabilities `a` and
    /// `b`: input 0 reaches output 0 with probability `a`, input 1 reaches
    /// output 0 with probability `b`. Requires `0 ≤ a < b ≤ 1-a`.
    pub fn b_ab(a: &Rational, b: &Rational) -> Result<TransitionMatrix> {
        if !(is_probability(a) && is_probability(b) && a < b && *b <= complement(a)) {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= a < b <= 1-a, got a={}, b={}",
                format_rational(a),
                format_rational(b)
            )));
        }
        TransitionMatrix::from_rows([
            vec![a.clone(), complement(a)],
            vec![b.clone(), complement(b)],
        ])
    }

    /// Explicit table of a canonical switch: each part `B(ε)` of weight `w`
    /// contributes its own pair of outputs with probabilities scaled by `w`.
    pub fn from_mixture(w: &BscMixture) -> TransitionMatrix {
        let mut row0 = Vec::new();
        let mut row1 = Vec::new();
        for (eps, weight) in w.parts() {
            row0.push(weight * complement(eps));
            row0.push(weight * eps);
            row1.push(weight * eps);
            row1.push(weight * complement(eps));
        }
        TransitionMatrix::from_rows([row0, row1]).expect("canonical mixture rows sum to 1")
    }

    pub fn output_count(&self) -> usize {
        self.rows[0].len()
    }

    /// `Pr(y | x)` as an exact rational.
    pub fn prob(&self, x: usize, y: usize) -> Rational {
        Rational::new(
            BigInt::from(self.rows[x][y].clone()),
            BigInt::from(self.denom.clone()),
        )
    }

    pub(crate) fn denom_raw(&self) -> &BigUint {
        &self.denom
    }

    pub(crate) fn rows_raw(&self) -> [&[BigUint]; 2] {
        [&self.rows[0], &self.rows[1]]
    }

    /// Groups outputs by posterior `Pr(y|0) / (Pr(y|0) + Pr(y|1))`, weighting
    /// by `Pr(y) = (Pr(y|0) + Pr(y|1)) / 2`. Outputs never reached from
    /// either input occur with probability zero and are dropped.
    pub fn lrp(&self) -> Lrp {
        let mut acc: BTreeMap<Rational, BigUint> = BTreeMap::new();
        for y in 0..self.output_count() {
            let n0 = &self.rows[0][y];
            let n1 = &self.rows[1][y];
            let total = n0 + n1;
            if total.is_zero() {
                continue;
            }
            let eps = Rational::new(BigInt::from(n0.clone()), BigInt::from(total.clone()));
            *acc.entry(eps).or_insert_with(BigUint::zero) += total;
        }
        let mass_denom = BigInt::from(&self.denom * 2u32);
        Lrp::from_accumulated(
            acc.into_iter()
                .map(|(e, n)| (e, Rational::new(BigInt::from(n), mass_denom.clone())))
                .collect(),
        )
        .expect("grouped transition table always yields a valid profile")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn lrp_of_bsc(eps: &Rational) -> Lrp {
        BscMixture::bsc(eps).unwrap().to_lrp()
    }

    #[test]
    fn bsc_folds_crossover() {
        assert_eq!(
            BscMixture::bsc(&rat(0, 1)).unwrap().parts(),
            &[(rat(0, 1), rat(1, 1))]
        );
        assert_eq!(
            BscMixture::bsc(&rat(7, 10)).unwrap().parts(),
            &[(rat(3, 10), rat(1, 1))]
        );
        assert_eq!(
            BscMixture::bsc(&rat(1, 2)).unwrap().parts(),
            &[(rat(1, 2), rat(1, 1))]
        );
        assert!(BscMixture::bsc(&rat(3, 2)).is_err());
    }

    #[test]
    fn bec_drops_zero_weight_parts() {
        assert_eq!(
            BscMixture::bec(&rat(0, 1)).unwrap().parts(),
            &[(rat(0, 1), rat(1, 1))]
        );
        assert_eq!(
            BscMixture::bec(&rat(1, 1)).unwrap().parts(),
            &[(rat(1, 2), rat(1, 1))]
        );
        assert_eq!(
            BscMixture::bec(&rat(1, 3)).unwrap().parts(),
            &[(rat(0, 1), rat(2, 3)), (rat(1, 2), rat(1, 3))]
        );
    }

    #[test]
    fn b_ab_transcribes_edge_labels() {
        let m = TransitionMatrix::b_ab(&rat(1, 8), &rat(1, 4)).unwrap();
        assert_eq!(m.prob(0, 0), rat(1, 8));
        assert_eq!(m.prob(0, 1), rat(7, 8));
        assert_eq!(m.prob(1, 0), rat(1, 4));
        assert_eq!(m.prob(1, 1), rat(3, 4));
        assert!(TransitionMatrix::b_ab(&rat(1, 4), &rat(1, 4)).is_err());
        assert!(TransitionMatrix::b_ab(&rat(1, 4), &rat(4, 5)).is_err());
    }

    #[test]
    fn lrp_of_b_ab_matches_printed_profile() {
        let m = TransitionMatrix::b_ab(&rat(1, 8), &rat(1, 4)).unwrap();
        assert_eq!(
            m.lrp().points(),
            &[(rat(1, 3), rat(3, 16)), (rat(7, 13), rat(13, 16))]
        );
    }

    #[test]
    fn b_ab_with_complementary_probabilities_is_a_bsc() {
        let m = TransitionMatrix::b_ab(&rat(1, 5), &rat(4, 5)).unwrap();
        assert_eq!(m.lrp(), lrp_of_bsc(&rat(1, 5)));
        // One error-free output when a = 0.
        let m = TransitionMatrix::b_ab(&rat(0, 1), &rat(1, 2)).unwrap();
        assert_eq!(m.lrp().points()[0].0, rat(0, 1));
    }

    #[test]
    fn identity_matrix_profile() {
        let m = TransitionMatrix::from_rows([
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ])
        .unwrap();
        assert_eq!(m.lrp().points(), &[(rat(0, 1), rat(1, 2)), (rat(1, 1), rat(1, 2))]);
    }

    /// Three-output channel equivalent to a BSC: outputs carry probabilities
    /// (2p/3, 1-p, p/3) from input 0 and (2(1-p)/3, p, (1-p)/3) from input 1.
    pub(crate) fn three_output_bsc(p: &Rational) -> TransitionMatrix {
        let pb = complement(p);
        TransitionMatrix::from_rows([
            vec![p * rat(2, 3), pb.clone(), p * rat(1, 3)],
            vec![&pb * rat(2, 3), p.clone(), &pb * rat(1, 3)],
        ])
        .unwrap()
    }

    #[test]
    fn three_output_channel_collapses_to_bsc() {
        let m = three_output_bsc(&rat(1, 3));
        assert_eq!(m.lrp(), lrp_of_bsc(&rat(1, 3)));
        assert!(m.lrp().is_symmetric());
    }

    #[test]
    fn zero_probability_outputs_are_dropped() {
        let m = TransitionMatrix::from_rows([
            vec![rat(3, 4), rat(1, 4), rat(0, 1)],
            vec![rat(1, 4), rat(3, 4), rat(0, 1)],
        ])
        .unwrap();
        assert_eq!(m.lrp(), lrp_of_bsc(&rat(1, 4)));
    }

    #[test]
    fn rsc_combine_merges_pointwise() {
        let e = |q: Rational| BscMixture::bec(&q).unwrap().to_lrp();
        let one_part = Lrp::rsc_combine(&[(rat(1, 1), e(rat(1, 4)))]).unwrap();
        assert_eq!(one_part, e(rat(1, 4)));

        let mixed = Lrp::rsc_combine(&[(rat(1, 2), e(rat(1, 4))), (rat(1, 2), e(rat(3, 4)))]).unwrap();
        assert_eq!(mixed, e(rat(1, 2)));

        let half_noise = Lrp::rsc_combine(&[
            (rat(1, 2), lrp_of_bsc(&rat(1, 2))),
            (rat(1, 2), lrp_of_bsc(&rat(0, 1))),
        ])
        .unwrap();
        assert_eq!(half_noise, e(rat(1, 2)));

        assert!(Lrp::rsc_combine(&[(rat(1, 3), e(rat(1, 4)))]).is_err());
    }

    #[test]
    fn symmetry_detection() {
        assert!(lrp_of_bsc(&rat(1, 4)).is_symmetric());
        assert!(BscMixture::bec(&rat(1, 3)).unwrap().to_lrp().is_symmetric());
        let asym = TransitionMatrix::b_ab(&rat(1, 8), &rat(1, 4)).unwrap().lrp();
        assert!(!asym.is_symmetric());
    }

    #[test]
    fn mixture_round_trips_through_profile() {
        let cases = [
            BscMixture::bsc(&rat(1, 4)).unwrap(),
            BscMixture::bec(&rat(1, 3)).unwrap(),
            BscMixture::from_parts([
                (rat(0, 1), rat(1, 2)),
                (rat(1, 4), rat(1, 4)),
                (rat(1, 2), rat(1, 4)),
            ])
            .unwrap(),
        ];
        for w in cases {
            assert_eq!(BscMixture::from_lrp(&w.to_lrp()).unwrap(), w);
        }
        let four_point = Lrp::from_points([
            (rat(0, 1), rat(1, 4)),
            (rat(1, 4), rat(1, 4)),
            (rat(3, 4), rat(1, 4)),
            (rat(1, 1), rat(1, 4)),
        ])
        .unwrap();
        assert_eq!(
            BscMixture::from_lrp(&four_point).unwrap().parts(),
            &[(rat(0, 1), rat(1, 2)), (rat(1, 4), rat(1, 2))]
        );
        let asym = TransitionMatrix::b_ab(&rat(1, 8), &rat(1, 4)).unwrap().lrp();
        assert!(BscMixture::from_lrp(&asym).is_err());
    }

    #[test]
    fn equivalence_is_exact_profile_equality() {
        assert_eq!(lrp_of_bsc(&rat(3, 10)), lrp_of_bsc(&rat(7, 10)));
        assert_eq!(three_output_bsc(&rat(1, 3)).lrp(), lrp_of_bsc(&rat(1, 3)));
        assert_ne!(lrp_of_bsc(&rat(1, 4)), lrp_of_bsc(&rat(1, 3)));
    }

    #[test]
    fn metric_reference_points() {
        let m = BscMixture::bsc(&rat(0, 1)).unwrap().metrics();
        assert_eq!(m.capacity, 1.0);
        assert_eq!(m.error_prob, rat(0, 1));
        assert_eq!(m.bhattacharyya, 0.0);

        let m = BscMixture::bsc(&rat(1, 2)).unwrap().metrics();
        assert_eq!(m.capacity, 0.0);
        assert_eq!(m.error_prob, rat(1, 2));
        assert!((m.bhattacharyya - 1.0).abs() < 1e-15);

        let m = BscMixture::bsc(&rat(1, 4)).unwrap().metrics();
        assert!((m.capacity - 0.18872187554086717).abs() < 1e-12);
        assert_eq!(m.error_prob, rat(1, 4));
        assert!((m.bhattacharyya - 0.8660254037844386).abs() < 1e-12);
    }

    #[test]
    fn metrics_are_linear_over_switching() {
        let a = lrp_of_bsc(&rat(1, 8));
        let b = BscMixture::bec(&rat(2, 5)).unwrap().to_lrp();
        let q = rat(1, 3);
        let mixed = Lrp::rsc_combine(&[(q.clone(), a.clone()), (complement(&q), b.clone())]).unwrap();
        let (ma, mb, mm) = (a.metrics(), b.metrics(), mixed.metrics());
        assert_eq!(
            mm.error_prob,
            &q * &ma.error_prob + complement(&q) * &mb.error_prob
        );
        let qf = rational_to_f64(&q);
        assert!((mm.capacity - (qf * ma.capacity + (1.0 - qf) * mb.capacity)).abs() < 1e-12);
        assert!(
            (mm.bhattacharyya - (qf * ma.bhattacharyya + (1.0 - qf) * mb.bhattacharyya)).abs()
                < 1e-12
        );
    }

    #[test]
    fn profile_invariant_under_column_permutation_and_splitting() {
        let m = TransitionMatrix::from_rows([
            vec![rat(1, 8), rat(7, 8)],
            vec![rat(1, 4), rat(3, 4)],
        ])
        .unwrap();
        let permuted = TransitionMatrix::from_rows([
            vec![rat(7, 8), rat(1, 8)],
            vec![rat(3, 4), rat(1, 4)],
        ])
        .unwrap();
        // Split column 0 into thirds.
        let split = TransitionMatrix::from_rows([
            vec![rat(1, 24), rat(1, 12), rat(7, 8)],
            vec![rat(1, 12), rat(1, 6), rat(3, 4)],
        ])
        .unwrap();
        assert_eq!(m.lrp(), permuted.lrp());
        assert_eq!(m.lrp(), split.lrp());
    }

    #[test]
    fn json_round_trips() {
        let w = BscMixture::from_parts([(rat(1, 4), rat(1, 2)), (rat(1, 2), rat(1, 2))]).unwrap();
        let js = serde_json::to_string(&w.to_json()).unwrap();
        assert_eq!(
            js,
            r#"{"parts":[{"crossover":"1/4","weight":"1/2"},{"crossover":"1/2","weight":"1/2"}]}"#
        );
        let back = BscMixture::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
        assert_eq!(back, w);

        let lrp = w.to_lrp();
        let js = serde_json::to_string(&lrp.to_json()).unwrap();
        let back = Lrp::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
        assert_eq!(back, lrp);

        let one = BscMixture::bsc(&rat(1, 4)).unwrap();
        assert!(serde_json::to_string(&one.to_json()).unwrap().contains("\"weight\":\"1\""));
    }
}
