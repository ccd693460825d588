//! Level-wise synthesis of all `2^k` synthetic channels, reliability tables,
//! frozen-set selection, and a brute-force explicit-channel oracle.
//!
//! Synthesis keeps one representative mixture per equivalence class: the
//! channels at a given level that share a pattern are independent and
//! equivalent, so a level holds `2^m` mixtures rather than `2^k` channel
//! copies. The oracle path builds the literal joint-output transition tables
//! instead; its alphabet doubles exponentially, so it is capped at three
//! transform steps and exists purely to validate the algebra.

use std::io::Write;

use num::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{arikan_symmetric, counting::phi_count, Side};
use crate::channel::{BscMixture, Metrics, TransitionMatrix};
use crate::error::{Error, Result};
use crate::pattern::PatternIndex;
use crate::rational::format_rational;

/// Largest supported synthesis order; mixture sizes stay modest for typical
/// channels but the row count is `2^k`.
pub const MAX_ORDER: u32 = 16;

/// Hard cap on explicit oracle depth: the output alphabet at depth `d` has
/// `2^(b(alpha)) * |Y|^(2^d)` symbols.
pub const MAX_ORACLE_DEPTH: usize = 3;

/// Per-pattern reliability record.
#[derive(Clone, Debug)]
pub struct MetricsRow {
    pub alpha: PatternIndex,
    pub mixture: BscMixture,
    pub metrics: Metrics,
    pub phi: usize,
}

/// All `2^k` synthetic channels of one underlying symmetric channel, in
/// ascending `b(α)` order.
#[derive(Clone, Debug)]
pub struct SynthesisTable {
    order_k: u32,
    rows: Vec<MetricsRow>,
}

/// Synthesizes every pattern of length `k` over `w`, level by level. Each
/// level applies both kernel sides to each of the previous level's `2^m`
/// representative mixtures. An optional exact part-count cap aborts cleanly
/// instead of letting a combinatorially growing mixture run away.
pub fn synthesize_all(
    w: &BscMixture,
    k: u32,
    part_cap: Option<usize>,
) -> Result<SynthesisTable> {
    if !(1..=MAX_ORDER).contains(&k) {
        return Err(Error::OrderOutOfRange { order: k, min: 1, max: MAX_ORDER });
    }
    let mut level: Vec<BscMixture> = vec![w.clone()];
    for _ in 0..k {
        level = level
            .par_iter()
            .flat_map_iter(|m| {
                [
                    arikan_symmetric(Side::A0, m, m),
                    arikan_symmetric(Side::A1, m, m),
                ]
            })
            .collect();
        if let Some(cap) = part_cap {
            for m in &level {
                if m.part_count() > cap {
                    return Err(Error::PartBudgetExceeded { parts: m.part_count(), cap });
                }
            }
        }
    }
    let rows = level
        .into_par_iter()
        .enumerate()
        .map(|(i, mixture)| MetricsRow {
            alpha: PatternIndex::from_value(i as u64, k),
            metrics: mixture.metrics(),
            phi: phi_count(&mixture),
            mixture,
        })
        .collect();
    Ok(SynthesisTable { order_k: k, rows })
}

impl SynthesisTable {
    pub fn order(&self) -> u32 {
        self.order_k
    }

    /// Rows in ascending `b(α)` order with metrics populated.
    pub fn rows(&self) -> &[MetricsRow] {
        &self.rows
    }

    pub fn row(&self, alpha: &PatternIndex) -> &MetricsRow {
        assert_eq!(alpha.len(), self.order_k as usize, "pattern length must match order");
        &self.rows[alpha.b_value() as usize]
    }

    /// `alpha,b_alpha,capacity,error_prob,bhattacharyya,phi` with exact
    /// rational error probabilities and 17-significant-digit floats.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "alpha,b_alpha,capacity,error_prob,bhattacharyya,phi")?;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{:.16e},{},{:.16e},{}",
                row.alpha,
                row.alpha.b_value(),
                row.metrics.capacity,
                format_rational(&row.metrics.error_prob),
                row.metrics.bhattacharyya,
                row.phi
            )?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            order_k: self.order_k,
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    alpha: r.alpha.clone(),
                    b_alpha: r.alpha.b_value(),
                    capacity: r.metrics.capacity,
                    error_prob: format_rational(&r.metrics.error_prob),
                    bhattacharyya: r.metrics.bhattacharyya,
                    phi: r.phi,
                    mixture: r.mixture.to_json(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct TableJson {
    pub order_k: u32,
    pub rows: Vec<RowJson>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct RowJson {
    pub alpha: PatternIndex,
    pub b_alpha: u64,
    pub capacity: f64,
    pub error_prob: String,
    pub bhattacharyya: f64,
    pub phi: usize,
    pub mixture: crate::channel::BscMixtureJson,
}

/// Chosen split of pattern indices into information and frozen sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrozenPlan {
    order_k: u32,
    info: Vec<PatternIndex>,
    frozen: Vec<PatternIndex>,
}

impl FrozenPlan {
    pub fn order(&self) -> u32 {
        self.order_k
    }

    pub fn dimension(&self) -> usize {
        self.info.len()
    }

    /// Information indices in ascending `b(α)` order.
    pub fn info_set(&self) -> &[PatternIndex] {
        &self.info
    }

    /// Frozen indices in ascending `b(α)` order.
    pub fn frozen_set(&self) -> &[PatternIndex] {
        &self.frozen
    }

    /// `mask[b(α)] = true` iff `α` is frozen.
    pub fn frozen_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; 1 << self.order_k];
        for alpha in &self.frozen {
            mask[alpha.b_value() as usize] = true;
        }
        mask
    }

    /// Builds a plan directly from index sets (used by tests and JSON input).
    pub fn from_info_set(order_k: u32, info: Vec<PatternIndex>) -> Result<FrozenPlan> {
        let n = 1usize << order_k;
        let mut is_info = vec![false; n];
        for alpha in &info {
            if alpha.len() != order_k as usize {
                return Err(Error::InvalidParameter(format!(
                    "index {alpha} has wrong length for order {order_k}"
                )));
            }
            if std::mem::replace(&mut is_info[alpha.b_value() as usize], true) {
                return Err(Error::InvalidParameter(format!("duplicate index {alpha}")));
            }
        }
        let mut info: Vec<PatternIndex> = info;
        info.sort_by_key(PatternIndex::b_value);
        let frozen = (0..n)
            .filter(|&i| !is_info[i])
            .map(|i| PatternIndex::from_value(i as u64, order_k))
            .collect();
        Ok(FrozenPlan { order_k, info, frozen })
    }

    pub fn to_json(&self) -> FrozenPlanJson {
        FrozenPlanJson {
            order_k: self.order_k,
            dimension: self.info.len(),
            info_set: self.info.clone(),
            frozen_set: self.frozen.clone(),
        }
    }

    pub fn from_json(json: &FrozenPlanJson) -> Result<FrozenPlan> {
        let plan = FrozenPlan::from_info_set(json.order_k, json.info_set.clone())?;
        let mut frozen = json.frozen_set.clone();
        frozen.sort_by_key(PatternIndex::b_value);
        if plan.frozen != frozen {
            return Err(Error::InvalidParameter(
                "frozen set is not the complement of info set".into(),
            ));
        }
        Ok(plan)
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct FrozenPlanJson {
    pub order_k: u32,
    pub dimension: usize,
    pub info_set: Vec<PatternIndex>,
    pub frozen_set: Vec<PatternIndex>,
}

/// Picks the `dimension` most reliable indices as the information set,
/// ranking by exact error probability with ties broken toward smaller
/// `b(α)`.
pub fn select_frozen(table: &SynthesisTable, dimension: usize) -> Result<FrozenPlan> {
    let n = table.rows().len();
    if dimension > n {
        return Err(Error::InvalidParameter(format!(
            "dimension {dimension} exceeds {n} indices"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        table.rows[a]
            .metrics
            .error_prob
            .cmp(&table.rows[b].metrics.error_prob)
            .then(a.cmp(&b))
    });
    let info = order[..dimension]
        .iter()
        .map(|&i| table.rows[i].alpha.clone())
        .collect();
    FrozenPlan::from_info_set(table.order_k, info)
}

/// One explicit kernel step on transition tables: the check side over the
/// joint outputs `(y0, y1)`, the bit side additionally revealing `u0`.
pub fn arikan_matrix(side: Side, a: &TransitionMatrix, b: &TransitionMatrix) -> TransitionMatrix {
    let (na, nb) = (a.output_count(), b.output_count());
    let ra = a.rows_raw();
    let rb = b.rows_raw();
    let denom = a.denom_raw() * b.denom_raw() * BigUint::from(2u32);
    match side {
        Side::A0 => {
            // Pr(y0,y1 | u0) = 1/2 * sum_{u1} Pr(y0 | u0+u1) Pr(y1 | u1)
            let build = |u0: usize| -> Vec<BigUint> {
                (0..na * nb)
                    .into_par_iter()
                    .map(|c| {
                        let (y0, y1) = (c / nb, c % nb);
                        &ra[u0][y0] * &rb[0][y1] + &ra[1 - u0][y0] * &rb[1][y1]
                    })
                    .collect()
            };
            TransitionMatrix::from_raw(denom, [build(0), build(1)])
        }
        Side::A1 => {
            // Pr(y0,y1,u0 | u1) = 1/2 * Pr(y0 | u0+u1) Pr(y1 | u1)
            let build = |u1: usize| -> Vec<BigUint> {
                (0..2 * na * nb)
                    .into_par_iter()
                    .map(|c| {
                        let u0 = c & 1;
                        let (y0, y1) = ((c >> 1) / nb, (c >> 1) % nb);
                        &ra[u0 ^ u1][y0] * &rb[u1][y1]
                    })
                    .collect()
            };
            TransitionMatrix::from_raw(denom, [build(0), build(1)])
        }
    }
}

/// Explicit joint-output synthetic channel for a pattern, leftmost bit
/// applied first; both operands of each step are independent copies of the
/// previous step's channel.
pub fn oracle_channel(w: &TransitionMatrix, alpha: &PatternIndex) -> Result<TransitionMatrix> {
    if alpha.len() > MAX_ORACLE_DEPTH {
        return Err(Error::PatternTooLong { len: alpha.len(), max: MAX_ORACLE_DEPTH });
    }
    let mut cur = w.clone();
    for &bit in alpha.bits() {
        cur = arikan_matrix(Side::from_bit(bit), &cur, &cur);
    }
    Ok(cur)
}
