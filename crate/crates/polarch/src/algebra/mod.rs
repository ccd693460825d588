//! The transform algebra.
//!
//! The two kernel transforms act on likelihood ratio profiles directly
//! ([`arikan_general`], valid for arbitrary channels) and, when the inputs
//! are symmetric, reduce to algebra on canonical switch forms
//! ([`arikan_symmetric`]) built from two scalar operations:
//!
//! * `a ⋆ b = (1-a)b + a(1-b)` — crossover of the check-side combination,
//! * `a ⋄ b = ab / ((1-a) ⋆ b)` — crossover of the bit-side combination,
//!   with `a ⋄ b = 0` whenever `a` or `b` is an endpoint.
//!
//! Multi-step compounds ([`delta_m`], [`nabla_m`], [`transform_by_pattern`])
//! iterate the binary transforms with exact merging; closed-form expansions
//! live in [`closed_form`] and serve as independent cross-checks.

pub mod closed_form;
pub mod counting;

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::channel::{BscMixture, Lrp};
use crate::pattern::PatternIndex;
use crate::rational::{complement, rat, Rational};

/// Which output of the 2×2 kernel a transform step produces.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Check side: the sum `u0+u1` seen through both outputs.
    A0,
    /// Bit side: `u1` seen through both outputs and the revealed `u0`.
    A1,
}

impl Side {
    pub fn from_bit(bit: u8) -> Side {
        if bit == 0 {
            Side::A0
        } else {
            Side::A1
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Side::A0 => 0,
            Side::A1 => 1,
        }
    }
}

/// `a ⋆ b = (1-a)b + a(1-b)`; commutative and associative, `1/2` absorbing,
/// `0` neutral.
pub fn star(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(crate::rational::is_probability(a) && crate::rational::is_probability(b));
    complement(a) * b + a * complement(b)
}

/// `a ⋄ b = ab / (ab + (1-a)(1-b))`, and 0 when either argument is an
/// endpoint; commutative and associative, `1/2` neutral.
pub fn diamond(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(crate::rational::is_probability(a) && crate::rational::is_probability(b));
    if a.is_zero() || b.is_zero() || a.is_one() || b.is_one() {
        return Rational::zero();
    }
    let num = a * b;
    let den = &num + complement(a) * complement(b);
    num / den
}

/// Profile of a kernel transform of two independent channels, computed
/// exactly from the input profiles.
///
/// Check side: mass `P0(ε0) P1(ε1)` lands on posterior `1 - ε0⋆ε1`.
/// Bit side: the pair splits in two, mass `(1-ε0⋆ε1) P0 P1` on posterior
/// `ε0ε1 / (1-ε0⋆ε1)` and mass `(ε0⋆ε1) P0 P1` on `(1-ε0)ε1 / (ε0⋆ε1)`;
/// a vanishing denominator comes with vanishing mass and the term is skipped.
pub fn arikan_general(side: Side, w0: &Lrp, w1: &Lrp) -> Lrp {
    fn add(acc: &mut BTreeMap<Rational, Rational>, key: Rational, mass: Rational) {
        if !mass.is_zero() {
            *acc.entry(key).or_insert_with(Rational::zero) += mass;
        }
    }
    let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
    for (e0, m0) in w0.points() {
        for (e1, m1) in w1.points() {
            let joint = m0 * m1;
            let t = star(e0, e1);
            let tb = complement(&t);
            match side {
                Side::A0 => add(&mut acc, tb, joint),
                Side::A1 => {
                    if !tb.is_zero() {
                        add(&mut acc, e0 * e1 / &tb, &tb * &joint);
                    }
                    if !t.is_zero() {
                        add(&mut acc, complement(e0) * e1 / &t, &t * &joint);
                    }
                }
            }
        }
    }
    Lrp::from_points(acc).expect("transform of valid profiles is a valid profile")
}

/// Kernel transform in canonical switch form. For sub-channel crossovers
/// `ε` and `σ` with weights `q` and `r`:
///
/// * check side contributes `B(ε⋆σ)` with weight `qr`;
/// * bit side contributes `B(ε⋄σ)` with weight `qr(ε⋆(1-σ))` and
///   `B(ε⋄(1-σ))` with weight `qr(ε⋆σ)`.
///
/// The result is re-canonicalized (crossovers folded to `[0, 1/2]`, equal
/// crossovers merged).
pub fn arikan_symmetric(side: Side, w0: &BscMixture, w1: &BscMixture) -> BscMixture {
    let mut parts: Vec<(Rational, Rational)> = Vec::new();
    for (e, q) in w0.parts() {
        for (s, r) in w1.parts() {
            let weight = q * r;
            match side {
                Side::A0 => parts.push((star(e, s), weight)),
                Side::A1 => {
                    let sb = complement(s);
                    parts.push((diamond(e, s), &weight * star(e, &sb)));
                    parts.push((diamond(e, &sb), &weight * star(e, s)));
                }
            }
        }
    }
    BscMixture::from_parts(parts).expect("transform of canonical mixtures is canonical")
}

/// `m`-fold check-side compound; `delta_m(w, 0)` is the noiseless channel.
pub fn delta_m(w: &BscMixture, m: u32) -> BscMixture {
    let mut cur = BscMixture::bsc(&Rational::zero()).expect("B(0) is valid");
    for _ in 0..m {
        cur = arikan_symmetric(Side::A0, &cur, w);
    }
    cur
}

/// `m`-fold bit-side compound; `nabla_m(w, 0)` is the completely noisy
/// channel.
pub fn nabla_m(w: &BscMixture, m: u32) -> BscMixture {
    let mut cur = BscMixture::bsc(&rat(1, 2)).expect("B(1/2) is valid");
    for _ in 0..m {
        cur = arikan_symmetric(Side::A1, &cur, w);
    }
    cur
}

/// Applies a whole pattern, leftmost bit first; each step transforms two
/// independent copies of the current channel.
pub fn transform_by_pattern(w: &BscMixture, alpha: &PatternIndex) -> BscMixture {
    let mut cur = w.clone();
    for &bit in alpha.bits() {
        cur = arikan_symmetric(Side::from_bit(bit), &cur, &cur);
    }
    cur
}

/// Pattern application on bare profiles; unlike the mixture route this also
/// covers asymmetric channels.
pub fn transform_lrp_by_pattern(l: &Lrp, alpha: &PatternIndex) -> Lrp {
    let mut cur = l.clone();
    for &bit in alpha.bits() {
        cur = arikan_general(Side::from_bit(bit), &cur, &cur);
    }
    cur
}
