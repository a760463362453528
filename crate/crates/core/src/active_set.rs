use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pw,
    Qopt,
    Opt,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Pw => "pw",
            Method::Qopt => "qopt",
            Method::Opt => "opt",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "pw" => Ok(Method::Pw),
            "qopt" | "q-opt" => Ok(Method::Qopt),
            "opt" => Ok(Method::Opt),
            "oracle" => Ok(Method::Oracle),
            _ => Err(Error::InvalidParams(format!("unknown method {s:?}"))),
        }
    }
}

/// A constructed collection of coordinate subsets together with the
/// certificate proving that the neglected mass is within budget.
#[derive(Clone, Debug, PartialEq)]
pub struct ActiveSet {
    /// Construction order.
    pub members: Vec<Subset>,
    pub method: Method,
    pub eps: f64,
    /// Certified bound on the excluded mass: `Σ_{u∉U} γ̄_u` for finite `p*`,
    /// `sup_{u∉U} γ_u` for `p = 1`.
    pub residual_certificate: f64,
    /// Certified overestimate of the total mass used (0 when none is involved).
    pub slack_bound: f64,
    /// Truncation point of the tail bounds, if any.
    pub truncation: Option<u64>,
    /// Index of the last interval processed (0 when none was needed).
    pub intervals_processed: usize,
}

impl ActiveSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `d(U) = max_{u∈U} |u|`; 0 for an empty collection.
    pub fn max_cardinality(&self) -> usize {
        self.members.iter().map(Subset::len).max().unwrap_or(0)
    }

    pub fn contains(&self, u: &Subset) -> bool {
        self.members.iter().any(|m| m == u)
    }

    /// Members ordered by cardinality, then lexicographically.
    pub fn sorted_members(&self) -> Vec<Subset> {
        let mut v = self.members.clone();
        v.sort_by(Subset::canonical_cmp);
        v
    }

    pub fn member_set(&self) -> HashSet<&Subset> {
        self.members.iter().collect()
    }

    pub fn is_subset_of(&self, other: &ActiveSet) -> bool {
        let theirs = other.member_set();
        self.members.iter().all(|u| theirs.contains(u))
    }

    pub fn has_duplicates(&self) -> bool {
        self.member_set().len() != self.members.len()
    }
}
