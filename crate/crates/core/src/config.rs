use crate::enumeration::{default_j_max, IntervalPartition, DEFAULT_L_MAX};
use crate::error::Result;
use crate::tails::choose_s;
use crate::weights::WeightParams;

/// Knobs shared by every construction. The defaults reproduce the
/// published experiments.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionConfig {
    /// Truncation point of the tail bounds; `None` picks it with [`choose_s`].
    pub truncation: Option<u64>,
    /// Number of intervals searched; `None` uses [`default_j_max`].
    pub j_max: Option<usize>,
    /// Largest cardinality considered.
    pub l_max: usize,
    /// Replaces the default decade partition.
    pub partition: Option<IntervalPartition>,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        Self {
            truncation: None,
            j_max: None,
            l_max: DEFAULT_L_MAX,
            partition: None,
        }
    }
}

impl ConstructionConfig {
    pub fn with_truncation(mut self, s: u64) -> Self {
        self.truncation = Some(s);
        self
    }

    pub fn truncation_for(&self, params: &WeightParams, eps: f64) -> Result<u64> {
        match self.truncation {
            Some(s) => Ok(s),
            None => choose_s(params, eps),
        }
    }

    pub fn partition_for(&self, p_star: f64, eps: f64) -> IntervalPartition {
        if let Some(part) = &self.partition {
            return part.clone();
        }
        IntervalPartition::decades(self.j_max.unwrap_or_else(|| default_j_max(p_star, eps)))
    }
}
