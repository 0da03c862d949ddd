//! Monte Carlo run of the reserve-and-repair coloring procedure:
//!
//! 1. reserve every color for B independently with probability `p`;
//! 2. abort if at least `threshold` A-vertices have every list color reserved;
//! 3. for each such starved A-vertex, unreserve its smallest list color.
//!
//! A trial succeeds when afterwards every B-vertex sees a reserved color; B
//! then colors inside the reserved set and A outside it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{mask_of, CheckError, Mask, MAX_COLORS};
use crate::bounds::{alpha, entropy_f, reserve_probability_formula};
use crate::model::{Coloring, ListInstance, ModelError, RegimePoint};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReserveConfig {
    pub p: f64,
    pub epsilon: f64,
    /// Overrides `u₀/f(u₀)·(1+ε/k_A)·ln Δ_A`.
    pub abort_threshold: Option<f64>,
}

impl ReserveConfig {
    pub fn with_p(p: f64) -> Self {
        ReserveConfig { p, epsilon: 0.1, abort_threshold: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReserveTally {
    pub trials: u64,
    pub successes: u64,
    /// Stopped at step 2.
    pub aborted: u64,
    /// Some B-vertex had no reserved color left.
    #[serde(rename = "bStarved")]
    pub b_starved: u64,
    /// Abort threshold in effect; `None` when step 2 never aborts.
    pub threshold: Option<f64>,
}

impl ReserveTally {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

/// The default abort threshold. Thresholds below one would abort on any
/// starved vertex and leave step 3 unreachable; they disable the abort.
fn default_threshold(instance: &ListInstance, epsilon: f64) -> Option<f64> {
    let ka = instance.ka;
    if ka <= 1 {
        return None;
    }
    let a = alpha(ka as u32);
    let f0 = entropy_f(a.u_star).ok()?;
    let t = a.u_star / f0 * (1.0 + epsilon / ka as f64) * (instance.b_count() as f64).ln();
    (t >= 1.0).then_some(t)
}

/// Reserve probability suggested for a point; see
/// [`reserve_probability_formula`].
pub fn reserve_probability(point: RegimePoint, epsilon: f64) -> Option<f64> {
    reserve_probability_formula(point, epsilon)
}

pub fn simulate_reserve_coloring(
    instance: &ListInstance,
    config: ReserveConfig,
    trials: u64,
    seed: u64,
) -> Result<ReserveTally, CheckError> {
    if !(0.0..=1.0).contains(&config.p) {
        return Err(CheckError::BadProbability(config.p));
    }
    if !instance.is_complete() {
        return Err(ModelError::NotCompleteBipartite.into());
    }
    if instance.universe > MAX_COLORS {
        return Err(CheckError::TooManyColors(instance.universe));
    }
    instance.ensure_valid()?;

    let threshold = match config.abort_threshold {
        Some(t) => Some(t),
        None => default_threshold(instance, config.epsilon),
    };
    let a_masks: Vec<Mask> = instance.a_lists.iter().map(|l| mask_of(l)).collect();
    let b_masks: Vec<Mask> = instance.b_lists.iter().map(|l| mask_of(l)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = ReserveTally { trials, successes: 0, aborted: 0, b_starved: 0, threshold };

    for _ in 0..trials {
        let mut reserved: Mask = 0;
        for c in 0..instance.universe {
            if rng.gen::<f64>() < config.p {
                reserved |= 1 << c;
            }
        }
        let starved: Vec<Mask> = a_masks.iter().copied().filter(|&m| m & !reserved == 0).collect();
        if threshold.is_some_and(|t| starved.len() as f64 >= t) {
            tally.aborted += 1;
            continue;
        }
        for m in starved {
            if m != 0 {
                reserved &= !(1 << m.trailing_zeros());
            }
        }
        if b_masks.iter().all(|&m| m & reserved != 0) && a_masks.iter().all(|&m| m & !reserved != 0) {
            tally.successes += 1;
            debug_assert!(Coloring {
                a: a_masks.iter().map(|&m| (m & !reserved).trailing_zeros()).collect(),
                b: b_masks.iter().map(|&m| (m & reserved).trailing_zeros()).collect(),
            }
            .is_proper_for(instance));
        } else {
            tally.b_starved += 1;
        }
    }
    Ok(tally)
}
