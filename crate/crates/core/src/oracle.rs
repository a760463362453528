//! Brute-force reference construction on a truncated universe.
//!
//! The universe holds every `u ⊆ {1,…,M}` with `|u| ≤ L` and `γ̄_u ≥ w_min`.
//! It is enumerated by a plain depth-first recursion, sorted by weight, and
//! the heaviest sets are taken greedily. The mass outside the universe is
//! certified through `A_s`.

use crate::active_set::{ActiveSet, Method};
use crate::error::{Error, Result};
use crate::opt::weight_order;
use crate::pw::check_eps;
use crate::subset::Subset;
use crate::summation::Compensated;
use crate::tails::{a_s_bound, TailBound};
use crate::weights::{ProductWeight, WeightParams};

/// Largest universe the oracle will enumerate.
pub const MAX_UNIVERSE: usize = 10_000_000;

/// Outside mass allowed, as a fraction of `ε^{p*}`.
pub const OUTSIDE_FRACTION: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedUniverse {
    pub max_index: u32,
    pub max_card: usize,
    pub min_weight: f64,
}

impl TruncatedUniverse {
    pub fn new(max_index: u32, max_card: usize) -> Self {
        Self {
            max_index,
            max_card,
            min_weight: 0.0,
        }
    }

    pub fn with_min_weight(mut self, min_weight: f64) -> Self {
        self.min_weight = min_weight;
        self
    }

    /// Every member of the universe with its weight, in depth-first order.
    pub fn enumerate(&self, weight: &ProductWeight) -> Result<Vec<(Subset, f64)>> {
        if self.min_weight <= 0.0 && full_count(self.max_index, self.max_card) > MAX_UNIVERSE as f64
        {
            return Err(Error::UniverseTooLarge {
                limit: MAX_UNIVERSE,
            });
        }
        let m = self.max_index as usize;
        // boost[k] bounds the growth from indices ≥ k
        let mut boost = vec![1.0; m + 2];
        for k in (1..=m).rev() {
            boost[k] = boost[k + 1] * weight.element(k as u32).max(1.0);
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.dfs(weight, &boost, &mut prefix, 1.0, 1, &mut out)?;
        Ok(out)
    }

    fn dfs(
        &self,
        weight: &ProductWeight,
        boost: &[f64],
        prefix: &mut Vec<u32>,
        g: f64,
        next: u32,
        out: &mut Vec<(Subset, f64)>,
    ) -> Result<()> {
        if g >= self.min_weight {
            out.push((Subset::new(prefix.clone())?, g));
            if out.len() > MAX_UNIVERSE {
                return Err(Error::UniverseTooLarge {
                    limit: MAX_UNIVERSE,
                });
            }
        }
        if prefix.len() == self.max_card {
            return Ok(());
        }
        for k in next..=self.max_index {
            let gk = g * weight.element(k);
            if gk * boost[k as usize + 1] < self.min_weight {
                break;
            }
            prefix.push(k);
            self.dfs(weight, boost, prefix, gk, k + 1, out)?;
            prefix.pop();
        }
        Ok(())
    }
}

fn full_count(m: u32, l: usize) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0;
    for k in 0..=l.min(m as usize) {
        total += binom;
        binom = binom * f64::from(m - k as u32) / (k as f64 + 1.0);
    }
    total
}

/// `Σ_{u ∈ universe} γ̄_u`.
pub fn oracle_direct_sum(params: &WeightParams, universe: &TruncatedUniverse) -> Result<f64> {
    let items = universe.enumerate(&params.modified_weights()?)?;
    Ok(items.iter().map(|(_, w)| *w).sum::<Compensated>().value())
}

/// Optimal active set computed from the universe. `∅` always comes first;
/// the remaining sets are taken in decreasing weight order until the
/// excluded mass, including everything outside the universe, is at most
/// `ε^{p*}`. Fails unless the outside mass is below `10^{-2} ε^{p*}`.
pub fn oracle_opt_set(
    params: &WeightParams,
    eps: f64,
    universe: &TruncatedUniverse,
    s: u64,
) -> Result<ActiveSet> {
    check_eps(eps)?;
    let budget = params.budget(eps)?;
    let total = a_s_bound(params, s)?;
    let mut items = universe.enumerate(&params.modified_weights()?)?;
    let outside = outside_mass(&total, &items);
    let allowed = OUTSIDE_FRACTION * budget;
    if outside >= allowed {
        return Err(Error::UniverseTooSmall { outside, allowed });
    }

    items.retain(|(u, _)| !u.is_empty());
    items.sort_by(weight_order);
    // excluded[k] = Σ_{i ≥ k} γ̄ of the sorted items
    let mut excluded = vec![0.0; items.len() + 1];
    let mut acc = Compensated::default();
    for k in (0..items.len()).rev() {
        acc += items[k].1;
        excluded[k] = acc.value();
    }
    let take = (0..=items.len())
        .find(|&k| outside + excluded[k] <= budget)
        .expect("the outside mass is below the budget");
    let mut members = Vec::with_capacity(take + 1);
    members.push(Subset::empty());
    members.extend(items.into_iter().take(take).map(|(u, _)| u));
    Ok(ActiveSet {
        members,
        method: Method::Oracle,
        eps,
        residual_certificate: outside + excluded[take],
        slack_bound: total.slack_bound,
        truncation: Some(s),
        intervals_processed: 0,
    })
}

fn outside_mass(total: &TailBound, items: &[(Subset, f64)]) -> f64 {
    let mut rest = Compensated::new(total.value);
    for (_, w) in items {
        rest -= *w;
    }
    rest.value()
}

/// The universe `{u : γ̄_u ≥ w}` with the largest decade `w ≤ 10^{-2} ε^{p*}`
/// whose outside mass is below `10^{-2} ε^{p*}`. `M` and `L` are the
/// smallest bounds that contain every set above the floor.
pub fn adequate_universe(params: &WeightParams, eps: f64, s: u64) -> Result<TruncatedUniverse> {
    let weights = params.modified_weights()?;
    let budget = params.budget(eps)?;
    let total = a_s_bound(params, s)?;
    let allowed = OUTSIDE_FRACTION * budget;
    let growth = {
        let mut g = 1.0;
        let mut j = 1;
        while weights.element(j) > 1.0 {
            g *= weights.element(j);
            j += 1;
        }
        g
    };
    let mut floor = OUTSIDE_FRACTION * budget;
    let mut last_outside = f64::INFINITY;
    for _ in 0..12 {
        let mut max_index = 1u32;
        while max_index < MAX_INDEX && weights.element(max_index + 1) * growth >= floor {
            max_index += 1;
        }
        let mut max_card = 0;
        while weights.eval(&Subset::first_of_cardinality(max_card + 1)) >= floor {
            max_card += 1;
        }
        let universe = TruncatedUniverse {
            max_index,
            max_card,
            min_weight: floor,
        };
        let items = universe.enumerate(&weights)?;
        last_outside = outside_mass(&total, &items);
        if last_outside < allowed {
            return Ok(universe);
        }
        floor /= 10.0;
    }
    Err(Error::UniverseTooSmall {
        outside: last_outside,
        allowed,
    })
}

const MAX_INDEX: u32 = 1 << 24;
