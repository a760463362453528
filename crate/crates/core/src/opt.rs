//! Optimal active sets.
//!
//! The traversal is the same as for the quasi-optimal construction, but each
//! interval is collected completely before anything is added. If the
//! interval holds more mass than is still needed, its sets are added in
//! decreasing weight order until the budget is met; otherwise all of them
//! are added and the next interval is searched.

use std::cmp::Ordering;
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

/// Decreasing weight, then smaller cardinality, then lexicographic.
pub fn weight_order(a: &(Subset, f64), b: &(Subset, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.canonical_cmp(&b.0))
}

/// Mutable state of the optimal construction.
#[derive(Clone, Debug)]
pub struct OptState {
    weights: ProductWeight,
    partition: IntervalPartition,
    remaining: Compensated,
    tally: Compensated,
    unsorted: Vec<(Subset, f64)>,
    unsorted_index: HashSet<Subset>,
    buckets: BucketList,
    members: Vec<Subset>,
    c: f64,
    l_max: usize,
    trace: Option<Vec<Subset>>,
}

impl OptState {
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
            tally: Compensated::default(),
            unsorted: Vec::new(),
            unsorted_index: HashSet::new(),
            buckets,
            members: Vec::new(),
            c,
            l_max,
            trace: None,
        }
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn remaining(&self) -> f64 {
        self.remaining.value()
    }

    /// Mass collected in the current interval.
    pub fn tally(&self) -> f64 {
        self.tally.value()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    /// Sets collected in the current interval, in visiting order.
    pub fn collected(&self) -> &[(Subset, f64)] {
        &self.unsorted
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

    fn collect(&mut self, u: Subset, w: f64) {
        self.unsorted_index.insert(u.clone());
        self.unsorted.push((u, w));
        self.tally += w;
    }

    fn inspect(&mut self, u: &Subset) -> f64 {
        if let Some(trace) = &mut self.trace {
            trace.push(u.clone());
        }
        self.weights.eval(u)
    }

    fn include(&mut self, u: Subset, w: f64) -> bool {
        self.members.push(u);
        self.remaining -= w;
        self.remaining.value() <= 0.0
    }

    /// Moves the collected sets into the result. Returns whether `T ≤ 0`.
    fn settle(&mut self) -> bool {
        let mut collected = std::mem::take(&mut self.unsorted);
        self.unsorted_index.clear();
        let tally = std::mem::take(&mut self.tally);
        if tally.value() >= self.remaining.value() {
            collected.sort_by(weight_order);
            for (u, w) in collected {
                if self.include(u, w) {
                    return true;
                }
            }
            false
        } else {
            self.members.extend(collected.into_iter().map(|(u, _)| u));
            self.remaining -= tally;
            self.remaining.value() <= 0.0
        }
    }
}

/// Replays the carry-over queue `L_j` into the interval collection.
/// Returns the cardinality at which the fresh traversal resumes.
pub fn opt_search(state: &mut OptState, j: usize) -> usize {
    let mut next_len = 1;
    while let Some(start) = state.buckets.pop(j) {
        let mut walk = SubsetWalk::new(start);
        loop {
            let u = walk.current().clone();
            state.buckets.remove(j, &u);
            let w = state.inspect(&u);
            let inside = state.partition.contains(j, w);
            if inside {
                if state.unsorted_index.contains(&u) {
                    break;
                }
                state.collect(u, w);
            } else {
                state.buckets.push(j + 1, u);
            }
            if !walk.advance(inside) {
                break;
            }
        }
        next_len = walk.current().len() + 1;
    }
    next_len
}

fn fresh_search(state: &mut OptState, j: usize, next_len: usize) -> Result<()> {
    for len in next_len..=state.l_max {
        let head = Subset::first_of_cardinality(len);
        let head_weight = state.weights.eval(&head);
        if !state.partition.contains(j, head_weight) && len as f64 >= state.c {
            return Ok(());
        }
        let mut walk = SubsetWalk::new(head);
        loop {
            let u = walk.current().clone();
            let w = state.inspect(&u);
            let inside = state.partition.contains(j, w);
            if inside {
                state.collect(u, w);
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

/// The smallest active set: `∅` followed by the heaviest sets until the
/// excluded mass is at most `ε^{p*}`. For `p = 1` this is the threshold set.
pub fn opt_set(params: &WeightParams, eps: f64, config: &ConstructionConfig) -> Result<ActiveSet> {
    run(params, eps, config, false).map(|(set, _)| set)
}

/// [`opt_set`] together with the sequence of inspected sets.
pub fn opt_set_traced(
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
            set.method = Method::Opt;
            return Ok((set, None));
        }
        Conjugate::Finite(q) => q,
    };
    let budget = params.budget(eps)?;
    let s = config.truncation_for(params, eps)?;
    let total = a_s_bound(params, s)?;
    let partition = config.partition_for(p_star, eps);
    let j_max = partition.j_max();

    let mut state = OptState::new(
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

    let finish = |state: OptState, j: usize| {
        let mut r = state.remaining;
        r += budget;
        let residual = r.value();
        debug_assert!(residual <= budget);
        let set = ActiveSet {
            members: state.members,
            method: Method::Opt,
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
        let next_len = opt_search(&mut state, j);
        fresh_search(&mut state, j, next_len)?;
        if state.settle() {
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

/// Upper bound on the ε-superposition dimension: `d(U)` of the optimal
/// set. Exact for `p = 1`.
pub fn d_sup_upper(params: &WeightParams, eps: f64, config: &ConstructionConfig) -> Result<usize> {
    Ok(opt_set(params, eps, config)?.max_cardinality())
}
