//! Cardinality-major traversal of finite subsets of ℕ₊.
//!
//! Within one cardinality the traversal starts at `{1,…,ℓ}` and moves with
//! [`increment_u`]: after an accepted set it increments the last index, after
//! a rejected one it backs off to the previous index. For any predicate that
//! is closed under domination (`v_j ≥ u_j` for all `j` and `v` accepted
//! implies `u` accepted) this visits every accepted set exactly once.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Default cardinality guard.
pub const DEFAULT_L_MAX: usize = 64;

/// Replaces `u_i` by `u_i + 1` and every later entry `u_r` by `u_i + r − i`.
/// The index `i` is one-based.
pub fn increment_u(u: &Subset, i: usize) -> Result<Subset> {
    let mut next = u.clone();
    next.increment_from(i)?;
    Ok(next)
}

/// `{1, …, ℓ}`; `∅` for `ℓ = 0`.
pub fn first_of_cardinality(len: usize) -> Subset {
    Subset::first_of_cardinality(len)
}

impl Subset {
    /// In-place form of [`increment_u`].
    pub fn increment_from(&mut self, i: usize) -> Result<()> {
        let len = self.len();
        if i == 0 || i > len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        let v = self.indices_mut();
        let base = v[i - 1] + 1;
        for (offset, x) in v[i - 1..].iter_mut().enumerate() {
            *x = base + offset as u32;
        }
        Ok(())
    }
}

/// Cursor over one cardinality class, driven by the accept/reject outcome
/// of each visited set.
#[derive(Clone, Debug)]
pub struct SubsetWalk {
    current: Subset,
    index: usize,
}

impl SubsetWalk {
    pub fn new(start: Subset) -> Self {
        let index = start.len();
        Self {
            current: start,
            index,
        }
    }

    pub fn current(&self) -> &Subset {
        &self.current
    }

    /// Moves past the current set. An accepted set continues from the last
    /// index, a rejected one from the index before the previous one. Returns
    /// `false` once the walk is exhausted; the current set is then unchanged.
    pub fn advance(&mut self, accepted: bool) -> bool {
        if accepted {
            self.index = self.current.len();
        } else {
            self.index = self.index.saturating_sub(1);
        }
        if self.index == 0 {
            return false;
        }
        self.current
            .increment_from(self.index)
            .expect("walk index stays within the subset");
        true
    }
}

/// Decreasing boundaries `b_1 > b_2 > …`; `I_1 = [b_1, ∞)` and
/// `I_j = [b_j, b_{j-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalPartition {
    boundaries: Vec<f64>,
}

impl IntervalPartition {
    pub fn new(boundaries: Vec<f64>) -> Result<Self> {
        let ok = !boundaries.is_empty()
            && boundaries.iter().all(|b| b.is_finite() && *b > 0.0)
            && boundaries.windows(2).all(|w| w[0] > w[1]);
        if !ok {
            return Err(Error::InvalidParams(
                "interval boundaries must be positive and strictly decreasing".into(),
            ));
        }
        Ok(Self { boundaries })
    }

    /// Decades `b_j = 10^{-j}` for `j = 1..=j_max`.
    pub fn decades(j_max: usize) -> Self {
        let boundaries = (1..=j_max.max(1))
            .map(|j| format!("1e-{j}").parse::<f64>().expect("valid literal"))
            .collect();
        Self { boundaries }
    }

    pub fn j_max(&self) -> usize {
        self.boundaries.len()
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// Lower boundary `b_j` of `I_j` (one-based).
    pub fn lower(&self, j: usize) -> f64 {
        self.boundaries[j - 1]
    }

    /// `w ∈ I_j`.
    #[inline]
    pub fn contains(&self, j: usize, w: f64) -> bool {
        w >= self.boundaries[j - 1] && (j == 1 || w < self.boundaries[j - 2])
    }

    /// The `j ≤ j_max` with `w ∈ I_j`, or `None` when `w < b_{j_max}`.
    pub fn interval_index(&self, w: f64) -> Result<Option<usize>> {
        if w.is_nan() || w <= 0.0 {
            return Err(Error::NonPositiveWeight(w));
        }
        Ok(self.boundaries.iter().position(|&b| w >= b).map(|k| k + 1))
    }
}

/// `2·⌈p*·log10(1/ε)⌉ + 8`, at least 1.
pub fn default_j_max(p_star: f64, eps: f64) -> usize {
    // tolerate log10 rounding just above an integer
    let depth = (p_star * (1.0 / eps).log10() - 1e-9).ceil();
    (2.0 * depth + 8.0).max(1.0) as usize
}

/// Per-interval carry-over queues `L_1, L_2, …` in insertion order. A subset
/// lives in at most one queue; pushing it elsewhere moves it.
#[derive(Clone, Debug, Default)]
pub struct BucketList {
    queues: Vec<VecDeque<Subset>>,
    location: HashMap<Subset, usize>,
}

impl BucketList {
    pub fn new(intervals: usize) -> Self {
        Self {
            queues: vec![VecDeque::new(); intervals + 1],
            location: HashMap::new(),
        }
    }

    fn ensure(&mut self, j: usize) {
        if self.queues.len() <= j {
            self.queues.resize(j + 1, VecDeque::new());
        }
    }

    /// Appends `u` to `L_j` unless it is already queued there.
    pub fn push(&mut self, j: usize, u: Subset) {
        self.ensure(j);
        match self.location.get(&u) {
            Some(&k) if k == j => {}
            _ => {
                self.location.insert(u.clone(), j);
                self.queues[j].push_back(u);
            }
        }
    }

    /// Removes and returns the oldest live entry of `L_j`.
    pub fn pop(&mut self, j: usize) -> Option<Subset> {
        let queue = self.queues.get_mut(j)?;
        while let Some(u) = queue.pop_front() {
            if self.location.get(&u) == Some(&j) {
                self.location.remove(&u);
                return Some(u);
            }
        }
        None
    }

    /// Drops `u` from `L_j` if it is queued there.
    pub fn remove(&mut self, j: usize, u: &Subset) -> bool {
        if self.location.get(u) == Some(&j) {
            self.location.remove(u);
            true
        } else {
            false
        }
    }

    pub fn contains(&self, j: usize, u: &Subset) -> bool {
        self.location.get(u) == Some(&j)
    }

    /// Live entries of `L_j` in queue order.
    pub fn entries(&self, j: usize) -> Vec<Subset> {
        self.queues
            .get(j)
            .map(|q| {
                q.iter()
                    .filter(|u| self.location.get(*u) == Some(&j))
                    .cloned()
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn len(&self, j: usize) -> usize {
        self.entries(j).len()
    }

    pub fn is_empty(&self, j: usize) -> bool {
        self.len(j) == 0
    }

    /// The bucket holding `u`, if any.
    pub fn bucket_of(&self, u: &Subset) -> Option<usize> {
        self.location.get(u).copied()
    }
}
