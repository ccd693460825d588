//! Closed-form switch representations of compound transforms.
//!
//! Everything here re-derives, by explicit combinatorial expansion, channels
//! that [`delta_m`]/[`nabla_m`]/[`transform_by_pattern`] build by iterated
//! binary transforms. The two routes are implemented independently so that a
//! transcription slip in either one is caught by comparing them.

use num::{BigUint, One, Signed, Zero};

use super::counting::{binomial, multinomial};
use super::{delta_m, diamond, nabla_m, star};
use crate::channel::BscMixture;
use crate::error::{Error, Result};
use crate::pattern::PatternIndex;
use crate::rational::{complement, format_rational, rat, Rational};

fn big(n: BigUint) -> Rational {
    Rational::from_integer(n.into())
}

fn pow(r: &Rational, e: u64) -> Rational {
    num::pow::pow(r.clone(), e as usize)
}

/// `ε^{⋆a}`: the crossover of `a` identical check-side combinations,
/// expanded as the odd-weight binomial sum; `ε^{⋆0} = 0` (the ⋆-identity).
pub fn star_power(eps: &Rational, a: u64) -> Rational {
    let mut sum = Rational::zero();
    let epsb = complement(eps);
    let mut i = 1;
    while i <= a {
        sum += big(binomial(a, i)) * pow(eps, i) * pow(&epsb, a - i);
        i += 2;
    }
    sum
}

/// `σ^{⋄a} = σ^a / (σ^a + (1-σ)^a)`; `σ^{⋄0} = 1/2` (the ⋄-identity).
pub fn diamond_power(sigma: &Rational, a: u64) -> Rational {
    if a == 0 {
        return rat(1, 2);
    }
    let num = pow(sigma, a);
    let den = &num + pow(&complement(sigma), a);
    num / den
}

/// The pattern families with fully explicit switch forms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosedFormKind {
    /// `0^l`
    AllZeros { l: u32 },
    /// `0^l 1^ones`, `ones >= 1`
    ZerosThenOnes { l: u32, ones: u32 },
    /// `0^l 1 0^i 1^k`
    ZeroOneBlock { l: u32, i: u32, k: u32 },
    /// `0^l 1 0^i 1 0^t`
    ZeroOneZeroBlock { l: u32, i: u32, t: u32 },
    /// `0^l 1 0^i 1 0^t 1`
    ZeroOneZeroOneBlock { l: u32, i: u32, t: u32 },
}

impl ClosedFormKind {
    /// The bit string this kind instantiates.
    pub fn pattern(&self) -> PatternIndex {
        let mut bits = Vec::new();
        let zeros = |bits: &mut Vec<u8>, n: u32| bits.extend(std::iter::repeat_n(0, n as usize));
        match *self {
            ClosedFormKind::AllZeros { l } => zeros(&mut bits, l),
            ClosedFormKind::ZerosThenOnes { l, ones } => {
                zeros(&mut bits, l);
                bits.extend(std::iter::repeat_n(1, ones as usize));
            }
            ClosedFormKind::ZeroOneBlock { l, i, k } => {
                zeros(&mut bits, l);
                bits.push(1);
                zeros(&mut bits, i);
                bits.extend(std::iter::repeat_n(1, k as usize));
            }
            ClosedFormKind::ZeroOneZeroBlock { l, i, t } => {
                zeros(&mut bits, l);
                bits.push(1);
                zeros(&mut bits, i);
                bits.push(1);
                zeros(&mut bits, t);
            }
            ClosedFormKind::ZeroOneZeroOneBlock { l, i, t } => {
                zeros(&mut bits, l);
                bits.push(1);
                zeros(&mut bits, i);
                bits.push(1);
                zeros(&mut bits, t);
                bits.push(1);
            }
        }
        PatternIndex::from_bits(&bits)
    }
}

/// Intermediate scalars shared by the deeper pattern families.
struct BlockScalars {
    eps_li: Rational,
    q_li: Rational,
}

fn block_scalars(eps: &Rational, l: u32, i: u32) -> BlockScalars {
    let eps_l = star_power(eps, 1u64 << l);
    let q1 = pow(&eps_l, 2) + pow(&complement(&eps_l), 2);
    BlockScalars {
        eps_li: star_power(&diamond_power(&eps_l, 2), 1u64 << i),
        q_li: pow(&q1, 1u64 << i),
    }
}

/// Evaluates the explicit switch form of `A_α(B(ε))` for the supported
/// pattern families, then canonicalizes. Must agree exactly with
/// [`transform_by_pattern`] on the corresponding bit string.
pub fn closed_form_special(eps: &Rational, kind: ClosedFormKind) -> Result<BscMixture> {
    if eps.is_zero() || *eps >= rat(1, 2) {
        return Err(Error::InvalidParameter(format!(
            "closed forms require a crossover strictly inside (0, 1/2), got {}",
            format_rational(eps)
        )));
    }
    let parts = match kind {
        ClosedFormKind::AllZeros { l } => {
            vec![(star_power(eps, 1u64 << l), Rational::one())]
        }
        ClosedFormKind::ZerosThenOnes { l, ones } => {
            if ones == 0 {
                return Err(Error::InvalidParameter("need at least one trailing 1".into()));
            }
            let k = ones - 1;
            let eps_l = star_power(eps, 1u64 << l);
            let elb = complement(&eps_l);
            let ee = &eps_l * &elb;
            let half_n = 1u64 << k; // 2^k
            let full_n = 1u64 << (k + 1); // 2^{k+1}
            let mut parts = vec![(rat(1, 2), big(binomial(full_n, half_n)) * pow(&ee, half_n))];
            for i in 1..=half_n {
                let weight = big(binomial(full_n, half_n - i))
                    * (pow(&eps_l, 2 * i) + pow(&elb, 2 * i))
                    * pow(&ee, half_n - i);
                parts.push((diamond_power(&eps_l, 2 * i), weight));
            }
            parts
        }
        ClosedFormKind::ZeroOneBlock { l, i, k } => {
            let BlockScalars { eps_li, q_li } = block_scalars(eps, l, i);
            let eb = complement(&eps_li);
            let qb = complement(&q_li);
            let ee = &eps_li * &eb;
            let q2ee = pow(&q_li, 2) * &ee;
            let n = 1u64 << k; // 2^k
            let mut parts = Vec::new();
            let mut half_weight = Rational::zero();
            for b in 0..=(n / 2) {
                half_weight += big(multinomial(n, &[n - 2 * b, b, b]))
                    * pow(&qb, n - 2 * b)
                    * pow(&q2ee, b);
            }
            parts.push((rat(1, 2), half_weight));
            for a in 1..=n {
                let mut inner = Rational::zero();
                let mut b = 0;
                while a + 2 * b <= n {
                    let s = n - a - 2 * b;
                    inner += big(multinomial(n, &[s, a + b, b])) * pow(&qb, s) * pow(&q2ee, b);
                    b += 1;
                }
                let weight = (pow(&eps_li, a) + pow(&eb, a)) * pow(&q_li, a) * inner;
                parts.push((diamond_power(&eps_li, a), weight));
            }
            parts
        }
        ClosedFormKind::ZeroOneZeroBlock { l, i, t } => {
            let (a, spines) = zero_one_zero_parts(eps, l, i, t);
            let mut parts = vec![(rat(1, 2), a)];
            parts.extend(spines);
            parts
        }
        ClosedFormKind::ZeroOneZeroOneBlock { l, i, t } => {
            let (a, spines) = zero_one_zero_parts(eps, l, i, t);
            let mut half_weight = pow(&a, 2);
            let mut parts = Vec::new();
            for (beta, b) in &spines {
                half_weight += rat(2, 1) * pow(b, 2) * beta * complement(beta);
                parts.push((beta.clone(), rat(2, 1) * &a * b));
                parts.push((
                    diamond_power(beta, 2),
                    pow(b, 2) * (pow(beta, 2) + pow(&complement(beta), 2)),
                ));
            }
            for s in 0..spines.len() {
                for r in s + 1..spines.len() {
                    let (beta_s, b_s) = &spines[s];
                    let (beta_r, b_r) = &spines[r];
                    for sigma in [beta_r.clone(), complement(beta_r)] {
                        let weight = rat(2, 1)
                            * b_s
                            * b_r
                            * (beta_s * &sigma + complement(beta_s) * complement(&sigma));
                        parts.push((diamond(beta_s, &sigma), weight));
                    }
                }
            }
            parts.push((rat(1, 2), half_weight));
            parts
        }
    };
    BscMixture::from_parts(parts)
}

/// The `B(1/2)` weight and the `(β_s, b_s)` spine of the `0^l 1 0^i 1 0^t`
/// form, reused by the trailing-1 refinement.
fn zero_one_zero_parts(
    eps: &Rational,
    l: u32,
    i: u32,
    t: u32,
) -> (Rational, Vec<(Rational, Rational)>) {
    let BlockScalars { eps_li, q_li } = block_scalars(eps, l, i);
    let qb = complement(&q_li);
    let p = pow(&q_li, 2) * (pow(&eps_li, 2) + pow(&complement(&eps_li), 2))
        + rat(2, 1) * &q_li * &qb;
    let r = rat(2, 1) * &q_li * &qb / &p;
    let rb = complement(&r);
    let n = 1u64 << t; // 2^t
    let p_n = pow(&p, n);
    let a = complement(&p_n);
    let d2 = diamond_power(&eps_li, 2);
    let spines = (0..=n)
        .map(|s| {
            let beta = star(&star_power(&d2, n - s), &star_power(&eps_li, s));
            let b = big(binomial(n, s)) * pow(&rb, n - s) * pow(&r, s) * &p_n;
            (beta, b)
        })
        .collect();
    (a, spines)
}

/// Exact erasure probability of `A_α(E(q))` via the run-length composition:
/// a maximal run of `t` equal bits maps `p ↦ (1-p)^{2^t}`, with phantom empty
/// runs inserted so that runs alternate starting from a 0-run and ending with
/// a 1-run.
pub fn bec_f_alpha(q: &Rational, alpha: &PatternIndex) -> Rational {
    debug_assert!(crate::rational::is_probability(q));
    let mut exponents: Vec<u64> = Vec::new();
    let mut expect = 0u8;
    for (bit, len) in alpha.runs() {
        if bit != expect {
            exponents.push(0);
            expect = 1 - expect;
        }
        exponents.push(len as u64);
        expect = 1 - expect;
    }
    if exponents.len() % 2 == 1 {
        exponents.push(0);
    }
    let mut p = q.clone();
    for t in exponents {
        p = pow(&complement(&p), 1u64 << t);
    }
    p
}

/// Expanded form of the `m`-fold check-side compound over a switch whose
/// crossovers all lie in `(0, 1/2]`: one part per multiset of sub-channel
/// choices.
pub fn delta_multinomial_form(w: &BscMixture, m: u32) -> Result<BscMixture> {
    require_interior(w)?;
    if m == 0 {
        return BscMixture::bsc(&Rational::zero());
    }
    let parts_in = w.parts();
    let n = parts_in.len();
    let mut parts = Vec::new();
    for a in compositions(m as u64, n) {
        let mut weight = big(multinomial(m as u64, &a));
        let mut crossover = Rational::zero();
        for (idx, &ai) in a.iter().enumerate() {
            let (eps, q) = &parts_in[idx];
            weight *= pow(q, ai);
            crossover = star(&crossover, &star_power(eps, ai));
        }
        parts.push((crossover, weight));
    }
    BscMixture::from_parts(parts)
}

/// Expanded form of the `m`-fold bit-side compound over a switch whose
/// crossovers all lie in `(0, 1/2]`. Crossover `ε` and its complement are
/// enumerated as distinct switch outcomes (even at `ε = 1/2`) and only then
/// folded by canonicalization.
pub fn nabla_multinomial_form(w: &BscMixture, m: u32) -> Result<BscMixture> {
    require_interior(w)?;
    if m == 0 {
        return BscMixture::bsc(&rat(1, 2));
    }
    let parts_in = w.parts();
    let n = parts_in.len();
    let m = m as u64;
    let mut parts = Vec::new();
    for total_b in 0..=(m / 2) {
        let total_a = m - 2 * total_b;
        for a in compositions(total_a, n) {
            for b in compositions(total_b, n) {
                let mut shape: Vec<u64> = Vec::with_capacity(2 * n);
                shape.extend(a.iter().zip(&b).map(|(ai, bi)| ai + bi));
                shape.extend(b.iter().copied());
                let mut base = big(multinomial(m, &shape));
                for (idx, (eps, q)) in parts_in.iter().enumerate() {
                    base *= pow(q, a[idx] + 2 * b[idx])
                        * pow(&(eps * complement(eps)), b[idx]);
                }
                parts.extend(sigma_expansion(parts_in, &a, &base));
            }
        }
    }
    BscMixture::from_parts(parts)
}

/// Inner sum of the bit-side expansion: every choice of `σ_i ∈ {ε_i, 1-ε_i}`
/// over the positions with `a_i > 0`, weighted by
/// `(Π σ_i^{a_i} + Π (1-σ_i)^{a_i}) / 2` on crossover `⋄_i σ_i^{⋄a_i}`.
fn sigma_expansion(
    parts_in: &[(Rational, Rational)],
    a: &[u64],
    base: &Rational,
) -> Vec<(Rational, Rational)> {
    let active: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0).collect();
    if active.is_empty() {
        return vec![(rat(1, 2), base.clone())];
    }
    let mut out = Vec::with_capacity(1 << active.len());
    for mask in 0u32..(1 << active.len()) {
        let mut straight = Rational::one();
        let mut flipped = Rational::one();
        let mut crossover = rat(1, 2);
        for (pos, &idx) in active.iter().enumerate() {
            let eps = &parts_in[idx].0;
            let sigma = if (mask >> pos) & 1 == 0 { eps.clone() } else { complement(eps) };
            straight *= pow(&sigma, a[idx]);
            flipped *= pow(&complement(&sigma), a[idx]);
            crossover = diamond(&crossover, &diamond_power(&sigma, a[idx]));
        }
        out.push((crossover, base * (straight + flipped) / rat(2, 1)));
    }
    out
}

/// Refined check-side expansion for a switch whose top crossover is exactly
/// 1/2 and whose remaining crossovers lie strictly inside `(0, 1/2)`: the
/// noisy part collapses into a single `B(1/2)` term.
pub fn delta_multinomial_form_refined(w: &BscMixture, m: u32) -> Result<BscMixture> {
    let (clean, q_half) = split_trailing_half(w)?;
    if m == 0 {
        return BscMixture::bsc(&Rational::zero());
    }
    let mut parts = vec![(rat(1, 2), complement(&pow(&complement(&q_half), m as u64)))];
    let n = clean.len();
    for a in compositions(m as u64, n) {
        let mut weight = big(multinomial(m as u64, &a));
        let mut crossover = Rational::zero();
        for (idx, &ai) in a.iter().enumerate() {
            let (eps, q) = &clean[idx];
            weight *= pow(q, ai);
            crossover = star(&crossover, &star_power(eps, ai));
        }
        parts.push((crossover, weight));
    }
    BscMixture::from_parts(parts)
}

/// Refined bit-side expansion for the same family: slots assigned to the
/// `B(1/2)` part are absorbed by the ⋄-identity, leaving a plain multinomial
/// over the interior crossovers.
pub fn nabla_multinomial_form_refined(w: &BscMixture, m: u32) -> Result<BscMixture> {
    let (clean, q_half) = split_trailing_half(w)?;
    if m == 0 {
        return BscMixture::bsc(&rat(1, 2));
    }
    let n = clean.len();
    let m = m as u64;
    let mut parts = Vec::new();
    for s in 0..=m {
        let rest = m - s;
        for total_b in 0..=(rest / 2) {
            let total_a = rest - 2 * total_b;
            for a in compositions(total_a, n) {
                for b in compositions(total_b, n) {
                    let mut shape: Vec<u64> = Vec::with_capacity(2 * n + 1);
                    shape.push(s);
                    shape.extend(a.iter().zip(&b).map(|(ai, bi)| ai + bi));
                    shape.extend(b.iter().copied());
                    let mut base = big(multinomial(m, &shape)) * pow(&q_half, s);
                    for (idx, (eps, q)) in clean.iter().enumerate() {
                        base *= pow(q, a[idx] + 2 * b[idx])
                            * pow(&(eps * complement(eps)), b[idx]);
                    }
                    parts.extend(sigma_expansion(&clean, &a, &base));
                }
            }
        }
    }
    BscMixture::from_parts(parts)
}

/// Check-side law for a padded switch `p·B(0) + q·B(1/2) + (1-p-q)·W`:
/// any slot drawing `B(1/2)` forces `B(1/2)`; the rest binomially mixes the
/// compounds of `W`, with `B(0)` slots absorbed by the ⋆-identity.
pub fn delta_mixture_law(p: &Rational, q: &Rational, inner: &BscMixture, t: u32) -> Result<BscMixture> {
    check_padding(p, q)?;
    let c = Rational::one() - p - q;
    let t = t as u64;
    let mut parts = vec![(rat(1, 2), complement(&pow(&complement(q), t)))];
    for i in 0..=t {
        let coeff = big(binomial(t, i)) * pow(p, t - i) * pow(&c, i);
        for (eps, w) in delta_m(inner, i as u32).parts() {
            parts.push((eps.clone(), &coeff * w));
        }
    }
    BscMixture::from_parts(parts)
}

/// Bit-side law for the same padding, with the roles of `B(0)` and `B(1/2)`
/// exchanged.
pub fn nabla_mixture_law(p: &Rational, q: &Rational, inner: &BscMixture, t: u32) -> Result<BscMixture> {
    check_padding(p, q)?;
    let c = Rational::one() - p - q;
    let t = t as u64;
    let mut parts = vec![(Rational::zero(), complement(&pow(&complement(p), t)))];
    for i in 0..=t {
        let coeff = big(binomial(t, i)) * pow(q, t - i) * pow(&c, i);
        for (eps, w) in nabla_m(inner, i as u32).parts() {
            parts.push((eps.clone(), &coeff * w));
        }
    }
    BscMixture::from_parts(parts)
}

fn check_padding(p: &Rational, q: &Rational) -> Result<()> {
    if p.is_negative() || q.is_negative() || p + q > Rational::one() {
        return Err(Error::InvalidParameter(
            "padding weights must be nonnegative with p + q <= 1".into(),
        ));
    }
    Ok(())
}

fn require_interior(w: &BscMixture) -> Result<()> {
    if w.parts().iter().any(|(eps, _)| eps.is_zero()) {
        return Err(Error::InvalidParameter(
            "expansion requires crossovers in (0, 1/2]; split off the noiseless part first".into(),
        ));
    }
    Ok(())
}

/// Splits a switch of shape `q_0 B(ε_0) + ... + q_{n-1} B(ε_{n-1}) + q_n B(1/2)`
/// with `0 < ε_0 < ... < ε_{n-1} < 1/2` into its interior parts and the
/// weight of the noisy part.
fn split_trailing_half(w: &BscMixture) -> Result<(Vec<(Rational, Rational)>, Rational)> {
    let parts = w.parts();
    let (last, rest) = parts.split_last().ok_or_else(|| {
        Error::InvalidParameter("empty mixture".into())
    })?;
    if last.0 != rat(1, 2) || rest.iter().any(|(eps, _)| eps.is_zero()) {
        return Err(Error::InvalidParameter(
            "refined expansion needs a B(1/2) part and interior remaining crossovers".into(),
        ));
    }
    Ok((rest.to_vec(), last.1.clone()))
}

/// All length-`n` vectors of nonnegative integers summing to `m`.
fn compositions(m: u64, n: usize) -> Vec<Vec<u64>> {
    fn rec(m: u64, n: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 1 {
            prefix.push(m);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=m {
            prefix.push(v);
            rec(m - v, n - 1, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(m, n, &mut Vec::new(), &mut out);
    out
}
