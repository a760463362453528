//! Threshold construction: every set whose weight exceeds a threshold.
//!
//! For `p = 1` the set `{u : γ_u > ε}` is the smallest active set. For
//! `p > 1` the threshold is `(ε^{p*} / Σ_u γ̄_u^t)^{1/(1−t)}`, maximized over
//! the grid `t = i/40`. Since `γ̄_u ≤ thr` implies `γ̄_u ≤ γ̄_u^t thr^{1−t}`,
//! the excluded mass is at most `thr^{1−t} Σ_u γ̄_u^t = ε^{p*}`.

use crate::active_set::{ActiveSet, Method};
use crate::config::ConstructionConfig;
use crate::enumeration::SubsetWalk;
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::tails::power_sum_bound;
use crate::weights::{Conjugate, ProductWeight, WeightParams};

/// Number of grid steps for the exponent `t`.
pub const T_GRID: u32 = 40;

pub(crate) struct Collected {
    pub members: Vec<Subset>,
    /// Largest weight among the rejected sets that bound everything excluded.
    pub max_excluded: f64,
}

/// All sets with weight strictly above `threshold`, cardinality-major.
///
/// Each cardinality class is walked from `{1,…,ℓ}` and pruned by domination.
/// The loop over cardinalities stops once `{1,…,ℓ}` is rejected and
/// `ℓ + 1 ≥ c^{1/a}`, since from there on adding indices only lowers weights.
pub(crate) fn collect_above(
    weight: &ProductWeight,
    threshold: f64,
    growth_limit: f64,
    l_max: usize,
) -> Result<Collected> {
    let mut members = Vec::new();
    let mut max_excluded: f64 = 0.0;
    if 1.0 > threshold {
        members.push(Subset::empty());
    } else {
        max_excluded = 1.0;
    }
    let mut len = 1;
    loop {
        if len > l_max {
            return Err(Error::CardinalityLimit { l_max });
        }
        let head = Subset::first_of_cardinality(len);
        let head_weight = weight.eval(&head);
        if head_weight <= threshold {
            max_excluded = max_excluded.max(head_weight);
            if (len + 1) as f64 >= growth_limit {
                break;
            }
            len += 1;
            continue;
        }
        let mut walk = SubsetWalk::new(head);
        loop {
            let w = weight.eval(walk.current());
            let inside = w > threshold;
            if inside {
                members.push(walk.current().clone());
            } else {
                max_excluded = max_excluded.max(w);
            }
            if !walk.advance(inside) {
                break;
            }
        }
        len += 1;
    }
    Ok(Collected {
        members,
        max_excluded,
    })
}

/// `{u : ∏_{j∈u} c/j^a > ε}` for `p = 1`.
pub fn pw_set_p1(
    params: &WeightParams,
    eps: f64,
    config: &ConstructionConfig,
) -> Result<ActiveSet> {
    if params.p_star() != Conjugate::Infinite {
        return Err(Error::InvalidParams("pw_set_p1 requires p = 1".into()));
    }
    check_eps(eps)?;
    let collected = collect_above(&params.weights(), eps, params.growth_limit(), config.l_max)?;
    Ok(ActiveSet {
        members: collected.members,
        method: Method::Pw,
        eps,
        residual_certificate: collected.max_excluded,
        slack_bound: 0.0,
        truncation: None,
        intervals_processed: 0,
    })
}

/// `(ε^{p*} / Σ_u γ̄_u^t)^{1/(1−t)}` with the certified upper bound on the
/// power sum.
pub fn pw_threshold(params: &WeightParams, eps: f64, t: f64, s: u64) -> Result<f64> {
    let sum = power_sum_bound(params, t, s)?.value;
    Ok(threshold_from_sum(params.budget(eps)?, sum, t))
}

fn threshold_from_sum(budget: f64, power_sum: f64, t: f64) -> f64 {
    (budget / power_sum).powf(1.0 / (1.0 - t))
}

/// Grid indices `i` with `40/(a p*) < i ≤ 39`.
pub fn t_grid(params: &WeightParams) -> Result<Vec<u32>> {
    let ap = params.a() * params.finite_p_star()?;
    let lower = f64::from(T_GRID) / ap;
    let grid: Vec<u32> = (1..T_GRID)
        .filter(|&i| f64::from(i) > lower && ap * f64::from(i) / f64::from(T_GRID) > 1.0)
        .collect();
    if grid.is_empty() {
        return Err(Error::EmptyGrid(ap));
    }
    Ok(grid)
}

/// The grid exponent maximizing the threshold, with the threshold itself.
/// Ties go to the smaller exponent.
pub fn pw_select_t(params: &WeightParams, eps: f64, s: u64) -> Result<(f64, f64)> {
    let budget = params.budget(eps)?;
    let mut best: Option<(f64, f64)> = None;
    for i in t_grid(params)? {
        let t = f64::from(i) / f64::from(T_GRID);
        let thr = threshold_from_sum(budget, power_sum_bound(params, t, s)?.value, t);
        if best.is_none_or(|(_, b)| thr > b) {
            best = Some((t, thr));
        }
    }
    Ok(best.expect("grid is non-empty"))
}

/// `{u : γ̄_u > Threshold(ε, t*)}` for finite `p*`.
pub fn pw_set(params: &WeightParams, eps: f64, config: &ConstructionConfig) -> Result<ActiveSet> {
    let weights = params.modified_weights()?;
    check_eps(eps)?;
    let s = config.truncation_for(params, eps)?;
    let (t, threshold) = pw_select_t(params, eps, s)?;
    let collected = collect_above(&weights, threshold, params.growth_limit(), config.l_max)?;
    let power_sum = power_sum_bound(params, t, s)?;
    Ok(ActiveSet {
        members: collected.members,
        method: Method::Pw,
        eps,
        residual_certificate: threshold.powf(1.0 - t) * power_sum.value,
        slack_bound: 0.0,
        truncation: Some(s),
        intervals_processed: 0,
    })
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "eps must be positive, got {eps}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{gamma, validate_params};

    fn set(xs: &[u32]) -> Subset {
        Subset::new(xs.to_vec()).unwrap()
    }

    fn cfg() -> ConstructionConfig {
        ConstructionConfig::default()
    }

    #[test]
    fn p1_small_examples() {
        let p = validate_params(4.0, 1.0, 1.0).unwrap();
        let u = pw_set_p1(&p, 0.1, &cfg()).unwrap();
        assert_eq!(u.members, vec![Subset::empty(), set(&[1])]);
        assert!(u.residual_certificate <= 0.1);

        let p = validate_params(2.0, 1.0, 1.0).unwrap();
        let u = pw_set_p1(&p, 0.01, &cfg()).unwrap();
        assert_eq!(u.len(), 22);
        let n = u.members.len();
        assert_eq!(&u.members[n - 2..], &[set(&[1, 2, 3]), set(&[1, 2, 4])]);

        let p = validate_params(3.0, 1.0, 1.0).unwrap();
        let u = pw_set_p1(&p, 1.0, &cfg()).unwrap();
        assert!(u.is_empty());
        assert_eq!(u.residual_certificate, 1.0);
    }

    #[test]
    fn p1_residual_is_sup_of_excluded() {
        let p = validate_params(2.0, 1.0, 1.0).unwrap();
        let u = pw_set_p1(&p, 0.01, &cfg()).unwrap();
        // {10} and {2,5} have γ = 0.01 exactly, the largest excluded value
        assert!((u.residual_certificate - 0.01).abs() < 1e-17);
        assert!(!u.contains(&set(&[10])));
        assert!(gamma(&p, &set(&[9])) > 0.01);
    }

    #[test]
    fn p1_with_large_c_skips_empty_heads() {
        // c = 4, a = 1: {1} = 4, {1,2} = 8, {1,2,3} = 32/3, {1,2,3,4} = 32/3
        let p = validate_params(1.0, 4.0, 1.0).unwrap();
        let u = pw_set_p1(&p, 10.0, &cfg()).unwrap();
        assert_eq!(u.members, vec![set(&[1, 2, 3]), set(&[1, 2, 3, 4])]);
    }

    #[test]
    fn p1_requires_p1() {
        let p = validate_params(2.0, 1.0, 2.0).unwrap();
        assert!(pw_set_p1(&p, 0.1, &cfg()).is_err());
        let p1 = validate_params(2.0, 1.0, 1.0).unwrap();
        assert_eq!(pw_set(&p1, 0.1, &cfg()), Err(Error::InfiniteConjugate));
    }

    #[test]
    fn grid_bounds() {
        let p = validate_params(2.0, 1.0, f64::INFINITY).unwrap();
        assert_eq!(t_grid(&p).unwrap(), (21..=39).collect::<Vec<_>>());
        let p = validate_params(4.0, 1.0, 2.0).unwrap();
        assert_eq!(t_grid(&p).unwrap(), (6..=39).collect::<Vec<_>>());
        // a p* barely above 1 leaves no grid point below 1
        let p = validate_params(1.01, 1.0, f64::INFINITY).unwrap();
        assert!(matches!(t_grid(&p), Err(Error::EmptyGrid(_))));
    }

    #[test]
    fn threshold_degenerates_with_unit_sum() {
        assert_eq!(threshold_from_sum(1e-4, 1.0, 0.5), 1e-8);
    }

    #[test]
    fn threshold_increases_with_eps() {
        let p = validate_params(4.0, 1.0, 2.0).unwrap();
        let a = pw_threshold(&p, 0.01, 0.5, 1024).unwrap();
        let b = pw_threshold(&p, 0.02, 0.5, 1024).unwrap();
        assert!(b > a);
    }

    #[test]
    fn selected_t_maximizes_threshold() {
        let p = validate_params(2.0, 1.0, 2.0).unwrap();
        let (t, thr) = pw_select_t(&p, 0.01, 4096).unwrap();
        for i in t_grid(&p).unwrap() {
            let ti = f64::from(i) / 40.0;
            assert!(pw_threshold(&p, 0.01, ti, 4096).unwrap() <= thr);
        }
        assert_eq!(pw_threshold(&p, 0.01, t, 4096).unwrap(), thr);
    }

    #[test]
    fn pw_small_counts() {
        let p = validate_params(4.0, 1.0, 2.0).unwrap();
        assert_eq!(pw_set(&p, 0.01, &cfg()).unwrap().len(), 8);
        let p = validate_params(3.0, 1.0, f64::INFINITY).unwrap();
        let u = pw_set(&p, 0.1, &cfg()).unwrap();
        assert_eq!(u.len(), 21);
        assert!(u.residual_certificate <= 0.1 * (1.0 + 1e-12));
    }
}
