//! Quasi-optimal active sets.
//!
//! Weights are processed interval by interval (`I_1 = [10^{-1}, ∞)`,
//! `I_j = [10^{-j}, 10^{-j+1})`). Within an interval every visited set whose
//! weight falls into it is included immediately and subtracted from the
//! remaining budget `T = A_s − ε^{p*} − Σ_{u∈U} γ̄_u`; sets that fall below
//! are queued in `L_{j+1}` and replayed first in the next interval. The
//! construction stops the moment `T ≤ 0`.

use std::collections::HashSet;

use crate::active_set::{ActiveSet, Method};
use crate::config::ConstructionConfig;
use crate::enumeration::{BucketList, IntervalPartition, SubsetWalk};
use crate::error::{Error, Result};
use crate::pw::{check_eps, pw_set_p1};
use crate::subset::Subset;
use crate::summation::Compensated;
use crate::tails::a_s_bound;
use crate::weights::{Conjugate, ProductWeight, WeightParams};

/// Outcome of one search phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// `T ≤ 0`: the active set is complete.
    Complete,
    /// Continue with the fresh traversal from this cardinality.
    Continue { next_len: usize },
}

/// Mutable state of the quasi-optimal construction.
#[derive(Clone, Debug)]
pub struct QoptState {
    weights: ProductWeight,
    partition: IntervalPartition,
    remaining: Compensated,
    buckets: BucketList,
    members: Vec<Subset>,
    member_index: HashSet<Subset>,
    c: f64,
    l_max: usize,
    trace: Option<Vec<Subset>>,
}

impl QoptState {
    /// Fresh state with remaining budget `remaining` and no members.
    pub fn new(
        weights: ProductWeight,
        partition: IntervalPartition,
        remaining: f64,
        c: f64,
        l_max: usize,
    ) -> Self {
        let buckets = BucketList::new(partition.j_max() + 1);
        Self {
            weights,
            partition,
            remaining: Compensated::new(remaining),
            buckets,
            members: Vec::new(),
            member_index: HashSet::new(),
            c,
            l_max,
            trace: None,
        }
    }

    /// Records every inspected set.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn remaining(&self) -> f64 {
        self.remaining.value()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn buckets(&self) -> &BucketList {
        &self.buckets
    }

    pub fn buckets_mut(&mut self) -> &mut BucketList {
        &mut self.buckets
    }

    pub fn trace(&self) -> Option<&[Subset]> {
        self.trace.as_deref()
    }

    /// Adds `u` and subtracts its weight; returns whether `T ≤ 0`.
    pub fn include(&mut self, u: Subset, weight: f64) -> bool {
        self.member_index.insert(u.clone());
        self.members.push(u);
        self.remaining -= weight;
        self.remaining.value() <= 0.0
    }

    fn inspect(&mut self, u: &Subset) -> f64 {
        if let Some(trace) = &mut self.trace {
            trace.push(u.clone());
        }
        self.weights.eval(u)
    }
}

/// Replays the sets carried over into `L_j`, following each with the
/// increment walk. A walk stops early when it meets a set that is already a
/// member, since all its successors were visited along with it.
pub fn q_opt_search(state: &mut QoptState, j: usize) -> Step {
    let mut next_len = 1;
    while let Some(start) = state.buckets.pop(j) {
        let mut walk = SubsetWalk::new(start);
        loop {
            let u = walk.current().clone();
            state.buckets.remove(j, &u);
            let w = state.inspect(&u);
            let inside = state.partition.contains(j, w);
            if inside {
                if state.member_index.contains(&u) {
                    break;
                }
                if state.include(u, w) {
                    return Step::Complete;
                }
            } else {
                state.buckets.push(j + 1, u);
            }
            if !walk.advance(inside) {
                break;
            }
        }
        next_len = walk.current().len() + 1;
    }
    Step::Continue { next_len }
}

/// Cardinality-major traversal of not yet visited sets with weight in `I_j`.
fn fresh_search(state: &mut QoptState, j: usize, next_len: usize) -> Result<Step> {
    for len in next_len..=state.l_max {
        let head = Subset::first_of_cardinality(len);
        let head_weight = state.weights.eval(&head);
        if !state.partition.contains(j, head_weight) && len as f64 >= state.c {
            return Ok(Step::Continue { next_len: len });
        }
        let mut walk = SubsetWalk::new(head);
        loop {
            let u = walk.current().clone();
            let w = state.inspect(&u);
            let inside = state.partition.contains(j, w);
            if inside {
                if state.include(u, w) {
                    return Ok(Step::Complete);
                }
            } else {
                state.buckets.push(j + 1, u);
            }
            if !walk.advance(inside) {
                break;
            }
        }
    }
    Err(Error::CardinalityLimit { l_max: state.l_max })
}

/// The quasi-optimal active set. For `p = 1` this is the threshold set,
/// which is optimal there.
pub fn qopt_set(params: &WeightParams, eps: f64, config: &ConstructionConfig) -> Result<ActiveSet> {
    run(params, eps, config, false).map(|(set, _)| set)
}

/// [`qopt_set`] together with the sequence of inspected sets.
pub fn qopt_set_traced(
    params: &WeightParams,
    eps: f64,
    config: &ConstructionConfig,
) -> Result<(ActiveSet, Vec<Subset>)> {
    run(params, eps, config, true).map(|(set, trace)| (set, trace.unwrap_or_default()))
}

fn run(
    params: &WeightParams,
    eps: f64,
    config: &ConstructionConfig,
    traced: bool,
) -> Result<(ActiveSet, Option<Vec<Subset>>)> {
    check_eps(eps)?;
    let p_star = match params.p_star() {
        Conjugate::Infinite => {
            let mut set = pw_set_p1(params, eps, config)?;
            set.method = Method::Qopt;
            return Ok((set, None));
        }
        Conjugate::Finite(q) => q,
    };
    let budget = params.budget(eps)?;
    let s = config.truncation_for(params, eps)?;
    let total = a_s_bound(params, s)?;
    let partition = config.partition_for(p_star, eps);
    let j_max = partition.j_max();

    let mut state = QoptState::new(
        params.modified_weights()?,
        partition,
        total.value,
        params.c(),
        config.l_max,
    );
    if traced {
        state = state.with_trace();
    }
    state.remaining -= budget;

    let finish = |state: QoptState, j: usize| {
        let residual = {
            let mut r = state.remaining;
            r += budget;
            r.value()
        };
        debug_assert!(residual <= budget);
        let set = ActiveSet {
            members: state.members,
            method: Method::Qopt,
            eps,
            residual_certificate: residual,
            slack_bound: total.slack_bound,
            truncation: Some(s),
            intervals_processed: j,
        };
        (set, state.trace)
    };

    if state.include(Subset::empty(), 1.0) {
        return Ok(finish(state, 0));
    }
    for j in 1..=j_max {
        let next_len = match q_opt_search(&mut state, j) {
            Step::Complete => return Ok(finish(state, j)),
            Step::Continue { next_len } => next_len,
        };
        if fresh_search(&mut state, j, next_len)? == Step::Complete {
            return Ok(finish(state, j));
        }
    }
    let mut residual = state.remaining;
    residual += budget;
    Err(Error::IntervalsExhausted {
        j_max,
        residual: residual.value(),
        target: budget,
    })
}
