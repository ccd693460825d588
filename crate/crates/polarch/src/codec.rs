//! Encoder, successive-cancellation decoder, and the Monte-Carlo harness
//! that validates the exact construction.
//!
//! The generator matrix follows the index-subset definition: entry
//! `(δ, α)` is 1 iff every position forced by `α` (reading its bits
//! reversed) is set in `δ`. That matrix factors into the bit-reversal
//! permutation times the `k`-fold Kronecker power of the 2×2 kernel, which
//! gives both the fast butterfly encoder and the decoder's wiring: channel
//! position `α` feeds butterfly slot `reverse(α)`, and the synthetic channel
//! decoded at position `δ` is exactly the pattern-`δ` transform.
//!
//! Decoding works on log-likelihood ratios saturated at ±40, which is wide
//! enough to keep noiseless and erasure certainty intact: an exact zero is
//! an erasure, positive means 0.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{BscMixture, TransitionMatrix};
use crate::construct::FrozenPlan;
use crate::error::{Error, Result};
use crate::pattern::PatternIndex;
use crate::rational::{complement, rational_to_f64, Rational};

/// Largest generator order built explicitly (the matrix has `4^k` entries).
pub const MAX_GENERATOR_ORDER: u32 = 12;

/// Symmetric log-likelihood saturation bound.
pub const LLR_SATURATION: f64 = 40.0;

/// Reverses the low `k` bits of `v`.
pub fn bit_reverse(v: u64, k: u32) -> u64 {
    (0..k).fold(0, |acc, i| (acc << 1) | ((v >> i) & 1))
}

/// Explicit 0-1 generator matrix of order `2^k`; row `δ`, column `α`, both
/// in ascending binary-value order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    order_k: u32,
    rows: Vec<Vec<u8>>,
}

pub fn build_generator(k: u32) -> Result<GeneratorMatrix> {
    if !(1..=MAX_GENERATOR_ORDER).contains(&k) {
        return Err(Error::OrderOutOfRange { order: k, min: 1, max: MAX_GENERATOR_ORDER });
    }
    let n = 1u64 << k;
    let rows = (0..n)
        .map(|delta| {
            (0..n)
                .map(|alpha| {
                    let forced = bit_reverse(alpha, k);
                    u8::from(delta & forced == forced)
                })
                .collect()
        })
        .collect();
    Ok(GeneratorMatrix { order_k: k, rows })
}

impl GeneratorMatrix {
    pub fn order(&self) -> u32 {
        self.order_k
    }

    pub fn size(&self) -> usize {
        1 << self.order_k
    }

    pub fn entry(&self, delta: usize, alpha: usize) -> u8 {
        self.rows[delta][alpha]
    }

    pub fn row(&self, delta: usize) -> &[u8] {
        &self.rows[delta]
    }
}

/// Matrix-definition encoding: `x_α = Σ_δ u_δ entry(δ, α) mod 2`.
pub fn encode(g: &GeneratorMatrix, u: &[u8]) -> Result<Vec<u8>> {
    if u.len() != g.size() {
        return Err(Error::LengthMismatch { expected: g.size(), actual: u.len() });
    }
    let mut x = vec![0u8; g.size()];
    for (delta, &bit) in u.iter().enumerate() {
        if bit & 1 == 1 {
            for (xi, gi) in x.iter_mut().zip(g.row(delta)) {
                *xi ^= gi;
            }
        }
    }
    Ok(x)
}

/// Butterfly encoding; must agree with [`encode`] bit for bit.
pub fn fast_encode(k: u32, u: &[u8]) -> Result<Vec<u8>> {
    let n = 1usize << k;
    if u.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: u.len() });
    }
    let mut v: Vec<u8> = u.iter().map(|&b| b & 1).collect();
    kernel_transform(&mut v);
    // Column α of the generator is column reverse(α) of the Kronecker power.
    Ok((0..n).map(|j| v[bit_reverse(j as u64, k) as usize]).collect())
}

/// In-place `k`-fold Kronecker power of [[1,0],[1,1]] acting on a row vector.
fn kernel_transform(x: &mut [u8]) {
    let n = x.len();
    if n <= 1 {
        return;
    }
    let (lo, hi) = x.split_at_mut(n / 2);
    for (l, h) in lo.iter_mut().zip(hi.iter()) {
        *l ^= h;
    }
    kernel_transform(lo);
    kernel_transform(hi);
}

/// Check-node combination in the log domain: the exact rule
/// `(L0 L1 + 1) / (L0 + L1)` written with the Jacobian correction. Exactly
/// zero whenever either input is zero, so erasures propagate exactly.
fn check_llr(a: f64, b: f64) -> f64 {
    let sign = if (a < 0.0) != (b < 0.0) { -1.0 } else { 1.0 };
    let v = sign * a.abs().min(b.abs()) + ((-(a + b).abs()).exp().ln_1p()
        - (-(a - b).abs()).exp().ln_1p());
    v.clamp(-LLR_SATURATION, LLR_SATURATION)
}

/// Bit-node combination given the decided upper bit: `L1 * L0^(1-2u)` in the
/// log domain.
fn bit_llr(a: f64, b: f64, u: u8) -> f64 {
    let v = if u & 1 == 0 { b + a } else { b - a };
    v.clamp(-LLR_SATURATION, LLR_SATURATION)
}

fn hard_decision(llr: f64) -> u8 {
    // Ties decode to 0: decide 0 whenever the likelihood ratio is >= 1.
    u8::from(llr < 0.0)
}

/// Per-index genie-aided decoding record. `unreliable[δ]` is set when the
/// decision at `δ` was wrong *or* rested on an exactly balanced likelihood;
/// over an erasure channel the rate of that event is exactly the synthetic
/// channel's erasure probability.
#[derive(Clone, Debug)]
pub struct GenieTrace {
    pub decisions: Vec<u8>,
    pub unreliable: Vec<bool>,
}

/// Successive-cancellation decoder for a fixed frozen plan.
#[derive(Clone, Debug)]
pub struct ScDecoder {
    order_k: u32,
    frozen: Vec<Option<u8>>,
}

impl ScDecoder {
    /// `frozen_values` is the full-length input word; only its frozen
    /// positions are read.
    pub fn new(plan: &FrozenPlan, frozen_values: &[u8]) -> Result<ScDecoder> {
        let n = 1usize << plan.order();
        if frozen_values.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: frozen_values.len() });
        }
        let mask = plan.frozen_mask();
        let frozen = (0..n)
            .map(|i| mask[i].then_some(frozen_values[i] & 1))
            .collect();
        Ok(ScDecoder { order_k: plan.order(), frozen })
    }

    pub fn order(&self) -> u32 {
        self.order_k
    }

    fn permuted(&self, received: &[f64]) -> Result<Vec<f64>> {
        let n = 1usize << self.order_k;
        if received.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: received.len() });
        }
        Ok((0..n)
            .map(|i| {
                let l = received[bit_reverse(i as u64, self.order_k) as usize];
                if l.is_nan() {
                    0.0
                } else {
                    l.clamp(-LLR_SATURATION, LLR_SATURATION)
                }
            })
            .collect())
    }

    /// Decodes channel log-likelihood ratios given in physical position
    /// order; returns the input word estimate in ascending `b(δ)` order.
    pub fn decode(&self, received: &[f64]) -> Result<Vec<u8>> {
        let llrs = self.permuted(received)?;
        let mut decisions = vec![0u8; llrs.len()];
        sc_node(&llrs, 0, &mut |idx, llr| {
            let u = match self.frozen[idx] {
                Some(v) => v,
                None => hard_decision(llr),
            };
            decisions[idx] = u;
            u
        });
        Ok(decisions)
    }

    /// Genie-aided pass: every decision is recorded against the true word,
    /// then corrected before decoding continues, so errors never propagate.
    /// Frozen positions are copied and never counted.
    pub fn decode_genie(&self, received: &[f64], truth: &[u8]) -> Result<GenieTrace> {
        let llrs = self.permuted(received)?;
        let n = llrs.len();
        if truth.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: truth.len() });
        }
        let mut decisions = vec![0u8; n];
        let mut unreliable = vec![false; n];
        sc_node(&llrs, 0, &mut |idx, llr| {
            match self.frozen[idx] {
                Some(v) => {
                    decisions[idx] = v;
                }
                None => {
                    let d = hard_decision(llr);
                    decisions[idx] = d;
                    unreliable[idx] = llr == 0.0 || d != truth[idx] & 1;
                }
            }
            truth[idx] & 1
        });
        Ok(GenieTrace { decisions, unreliable })
    }
}

/// Recursive butterfly descent. `decide` receives `(input index, llr)` and
/// returns the value to propagate; the return value is the re-encoded
/// subtree needed by the bit-node stage.
fn sc_node(llrs: &[f64], base: usize, decide: &mut impl FnMut(usize, f64) -> u8) -> Vec<u8> {
    let n = llrs.len();
    if n == 1 {
        return vec![decide(base, llrs[0])];
    }
    let half = n / 2;
    let left_llrs: Vec<f64> = (0..half).map(|i| check_llr(llrs[i], llrs[half + i])).collect();
    let left = sc_node(&left_llrs, base, decide);
    let right_llrs: Vec<f64> = (0..half)
        .map(|i| bit_llr(llrs[i], llrs[half + i], left[i]))
        .collect();
    let right = sc_node(&right_llrs, base + half, decide);
    let mut x = vec![0u8; n];
    for i in 0..half {
        x[i] = left[i] ^ right[i];
        x[half + i] = right[i];
    }
    x
}

/// Precomputed sampler: for each input bit, the outcome distribution over
/// receiver log-likelihood ratios.
#[derive(Clone, Debug)]
pub struct ChannelSimulator {
    outcomes: [Vec<(f64, f64)>; 2], // (cumulative probability, llr)
}

impl ChannelSimulator {
    pub fn from_mixture(w: &BscMixture) -> ChannelSimulator {
        let mut outcomes = [Vec::new(), Vec::new()];
        for (x, table) in outcomes.iter_mut().enumerate() {
            for (eps, weight) in w.parts() {
                let e = rational_to_f64(eps);
                let wf = rational_to_f64(weight);
                // Log ratio for receiving 0; receiving 1 flips the sign.
                let l0 = if e == 0.0 { LLR_SATURATION } else { ((1.0 - e) / e).ln() };
                let stay = if x == 0 { l0 } else { -l0 };
                table.push((wf * (1.0 - e), stay.clamp(-LLR_SATURATION, LLR_SATURATION)));
                table.push((wf * e, (-stay).clamp(-LLR_SATURATION, LLR_SATURATION)));
            }
        }
        ChannelSimulator::accumulate(outcomes)
    }

    pub fn from_matrix(m: &TransitionMatrix) -> ChannelSimulator {
        let mut outcomes = [Vec::new(), Vec::new()];
        for y in 0..m.output_count() {
            let p0 = rational_to_f64(&m.prob(0, y));
            let p1 = rational_to_f64(&m.prob(1, y));
            let llr = if p1 == 0.0 {
                LLR_SATURATION
            } else if p0 == 0.0 {
                -LLR_SATURATION
            } else {
                (p0 / p1).ln().clamp(-LLR_SATURATION, LLR_SATURATION)
            };
            outcomes[0].push((p0, llr));
            outcomes[1].push((p1, llr));
        }
        ChannelSimulator::accumulate(outcomes)
    }

    fn accumulate(outcomes: [Vec<(f64, f64)>; 2]) -> ChannelSimulator {
        let cum = |v: Vec<(f64, f64)>| {
            let mut acc = 0.0;
            v.into_iter()
                .filter(|(p, _)| *p > 0.0)
                .map(|(p, l)| {
                    acc += p;
                    (acc, l)
                })
                .collect()
        };
        let [o0, o1] = outcomes;
        ChannelSimulator { outcomes: [cum(o0), cum(o1)] }
    }

    /// Log-likelihood ratio of one sampled transmission of bit `x`.
    pub fn sample<R: Rng>(&self, x: u8, rng: &mut R) -> f64 {
        let outcomes = &self.outcomes[(x & 1) as usize];
        let draw: f64 = rng.gen();
        for (cum, llr) in outcomes {
            if draw < *cum {
                return *llr;
            }
        }
        outcomes.last().expect("nonempty outcome table").1
    }
}

/// Samples one word through the channel; position `i` uses the stream
/// belonging to `(seed, trial)` so concurrent trials reproduce exactly.
pub fn simulate_channel(sim: &ChannelSimulator, x: &[u8], seed: u64, trial: u64) -> Vec<f64> {
    let mut rng = trial_rng(seed, trial);
    x.iter().map(|&b| sim.sample(b, &mut rng)).collect()
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Aggregated Monte-Carlo counts.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SimOutcome {
    pub trials: u64,
    pub frame_errors: u64,
    pub per_index: Vec<u64>,
}

/// Encode–transmit–decode loop: information bits uniform, frozen bits zero.
///
/// Genie-aided mode records, per information index, the unreliable-decision
/// events of [`ScDecoder::decode_genie`]; plain mode records the first wrong
/// information decision per frame. Frames with any counted event are frame
/// errors. Deterministic for a fixed `(seed, trials)` regardless of thread
/// scheduling.
pub fn monte_carlo_fer(
    sim: &ChannelSimulator,
    plan: &FrozenPlan,
    trials: u64,
    seed: u64,
    genie: bool,
) -> Result<SimOutcome> {
    let k = plan.order();
    let n = 1usize << k;
    let frozen_values = vec![0u8; n];
    let decoder = ScDecoder::new(plan, &frozen_values)?;
    let frozen_mask = plan.frozen_mask();

    let zero = || SimOutcome { trials: 0, frame_errors: 0, per_index: vec![0; n] };
    let outcome = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let mut u = vec![0u8; n];
            for (i, slot) in u.iter_mut().enumerate() {
                if !frozen_mask[i] {
                    *slot = rng.gen_range(0..2u8);
                }
            }
            let x = fast_encode(k, &u).expect("length fixed by construction");
            let llrs: Vec<f64> = x.iter().map(|&b| sim.sample(b, &mut rng)).collect();

            let mut out = zero();
            out.trials = 1;
            if genie {
                let trace = decoder.decode_genie(&llrs, &u).expect("lengths fixed");
                let mut any = false;
                for (i, hit) in trace.unreliable.iter().enumerate() {
                    if !frozen_mask[i] && *hit {
                        out.per_index[i] += 1;
                        any = true;
                    }
                }
                out.frame_errors = u64::from(any);
            } else {
                let decisions = decoder.decode(&llrs).expect("lengths fixed");
                if let Some(first) =
                    (0..n).find(|&i| !frozen_mask[i] && decisions[i] != u[i])
                {
                    out.per_index[first] += 1;
                    out.frame_errors = 1;
                }
            }
            out
        })
        .reduce(zero, |mut a, b| {
            a.trials += b.trials;
            a.frame_errors += b.frame_errors;
            for (ai, bi) in a.per_index.iter_mut().zip(&b.per_index) {
                *ai += bi;
            }
            a
        });
    Ok(outcome)
}

/// Exact genie-aided erasure profile over `E(q)` at order `k`, by
/// enumerating every erasure subset and running the production decoder on
/// it. Index `δ`'s erasure probability must equal the composed erasure map
/// of the pattern `δ` — this pins down the wiring between decoding
/// positions and transform patterns.
pub fn bec_genie_erasure_profile(k: u32, q: &Rational) -> Result<Vec<Rational>> {
    if k > 4 {
        return Err(Error::OrderOutOfRange { order: k, min: 1, max: 4 });
    }
    let n = 1usize << k;
    let plan = FrozenPlan::from_info_set(
        k,
        PatternIndex::all_of_length(k).collect(),
    )?;
    let decoder = ScDecoder::new(&plan, &vec![0u8; n])?;
    let truth = vec![0u8; n];
    let mut acc = vec![Rational::from_integer(0.into()); n];
    for subset in 0u64..(1 << n) {
        let erased = subset.count_ones() as usize;
        let weight = num::pow::pow(q.clone(), erased)
            * num::pow::pow(complement(q), n - erased);
        let llrs: Vec<f64> = (0..n)
            .map(|i| if subset >> i & 1 == 1 { 0.0 } else { LLR_SATURATION })
            .collect();
        let trace = decoder.decode_genie(&llrs, &truth)?;
        for (slot, &hit) in acc.iter_mut().zip(&trace.unreliable) {
            if hit {
                *slot += weight.clone();
            }
        }
    }
    Ok(acc)
}
