use std::time::{Duration, Instant};

use serde::Serialize;

use crate::active_set::{ActiveSet, Method};
use crate::config::ConstructionConfig;
use crate::error::{Error, Result};
use crate::opt::opt_set;
use crate::oracle::{adequate_universe, oracle_opt_set};
use crate::pw::{check_eps, pw_set, pw_set_p1};
use crate::qopt::qopt_set;
use crate::subset::Subset;
use crate::tails::operator_norm_bounds;
use crate::weights::{Conjugate, WeightParams};

/// Runs one construction.
pub fn construct(
    params: &WeightParams,
    eps: f64,
    method: Method,
    config: &ConstructionConfig,
) -> Result<ActiveSet> {
    match method {
        Method::Pw => match params.p_star() {
            Conjugate::Infinite => pw_set_p1(params, eps, config),
            Conjugate::Finite(_) => pw_set(params, eps, config),
        },
        Method::Qopt => qopt_set(params, eps, config),
        Method::Opt => opt_set(params, eps, config),
        Method::Oracle => {
            if params.p_star() == Conjugate::Infinite {
                return Err(Error::InvalidParams("the oracle requires p > 1".into()));
            }
            check_eps(eps)?;
            let s = config.truncation_for(params, eps)?;
            let universe = adequate_universe(params, eps, s)?;
            oracle_opt_set(params, eps, &universe, s)
        }
    }
}

/// A construction together with the quantities reported for it.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub params: WeightParams,
    pub method: Method,
    pub eps: f64,
    /// `ε·‖S‖` for the normalized variant, otherwise `ε`.
    pub effective_eps: f64,
    /// Lower bound on `‖S‖` used by the normalized variant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<f64>,
    pub size: usize,
    pub d: usize,
    pub residual: f64,
    pub slack_bound: f64,
    pub intervals: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u64>,
    #[serde(skip)]
    pub wall_time: Duration,
    #[serde(skip)]
    pub set: ActiveSet,
}

impl ConstructionReport {
    fn new(params: &WeightParams, eps: f64, set: ActiveSet, wall_time: Duration) -> Self {
        Self {
            params: *params,
            method: set.method,
            eps,
            effective_eps: set.eps,
            norm: None,
            size: set.len(),
            d: set.max_cardinality(),
            residual: set.residual_certificate,
            slack_bound: set.slack_bound,
            intervals: set.intervals_processed,
            truncation: set.truncation,
            wall_time,
            set,
        }
    }

    /// Members in canonical order.
    pub fn members(&self) -> Vec<Subset> {
        self.set.sorted_members()
    }
}

pub fn run_construct(
    params: &WeightParams,
    eps: f64,
    method: Method,
    config: &ConstructionConfig,
) -> Result<ConstructionReport> {
    let start = Instant::now();
    let set = construct(params, eps, method, config)?;
    Ok(ConstructionReport::new(params, eps, set, start.elapsed()))
}

/// Construction for the normalized error `ε·‖S‖`. The truncation point is
/// the one the unnormalized run would use, so the result is contained in it.
pub fn run_normalized(
    params: &WeightParams,
    eps: f64,
    method: Method,
    config: &ConstructionConfig,
) -> Result<ConstructionReport> {
    check_eps(eps)?;
    let start = Instant::now();
    let (config, norm) = match params.p_star() {
        Conjugate::Infinite => (config.clone(), operator_norm_bounds(params, 1)?.0),
        Conjugate::Finite(_) => {
            let s = config.truncation_for(params, eps)?;
            let mut config = config.clone().with_truncation(s);
            if config.j_max.is_none() && config.partition.is_none() {
                config.j_max = Some(crate::enumeration::default_j_max(
                    params.finite_p_star()?,
                    eps,
                ));
            }
            (config, operator_norm_bounds(params, s)?.0)
        }
    };
    let set = construct(params, eps * norm, method, &config)?;
    let mut report = ConstructionReport::new(params, eps, set, start.elapsed());
    report.norm = Some(norm);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::validate_params;

    #[test]
    fn dispatch_p1_pw() {
        let p = validate_params(4.0, 1.0, 1.0).unwrap();
        let r = run_construct(&p, 1e-2, Method::Pw, &ConstructionConfig::default()).unwrap();
        assert_eq!((r.size, r.d), (6, 2));
    }

    #[test]
    fn normalized_with_unit_norm_is_unchanged() {
        let p = validate_params(3.0, 1.0, 1.0).unwrap();
        let cfg = ConstructionConfig::default();
        let a = run_construct(&p, 1e-2, Method::Pw, &cfg).unwrap();
        let b = run_normalized(&p, 1e-2, Method::Pw, &cfg).unwrap();
        assert_eq!(b.norm, Some(1.0));
        assert_eq!(a.set.members, b.set.members);
    }

    #[test]
    fn normalized_is_contained() {
        let p = validate_params(2.0, 1.0, 2.0).unwrap();
        let cfg = ConstructionConfig::default();
        for method in [Method::Pw, Method::Qopt, Method::Opt] {
            let a = run_construct(&p, 1e-2, method, &cfg).unwrap();
            let b = run_normalized(&p, 1e-2, method, &cfg).unwrap();
            assert!(b.norm.unwrap() >= 1.0);
            assert!(b.set.is_subset_of(&a.set), "{method}");
            assert!(b.size <= 30 || method != Method::Opt);
        }
    }

    #[test]
    fn oracle_needs_finite_conjugate() {
        let p = validate_params(2.0, 1.0, 1.0).unwrap();
        assert!(construct(&p, 0.1, Method::Oracle, &ConstructionConfig::default()).is_err());
    }
}
