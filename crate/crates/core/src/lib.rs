//! Active sets for the multivariate decomposition method with product
//! weights `γ_u = ∏_{j∈u} c j^{-a}`.

pub mod active_set;
pub mod cli;
pub mod config;
pub mod enumeration;
pub mod error;
pub mod notation;
pub mod opt;
pub mod oracle;
pub mod pw;
pub mod qopt;
pub mod report;
pub mod subset;
pub mod summation;
pub mod tails;
pub mod weights;

pub use active_set::{ActiveSet, Method};
pub use config::ConstructionConfig;
pub use enumeration::{increment_u, IntervalPartition};
pub use error::{Error, Result};
pub use notation::{compress_members, compress_notation, parse_notation};
pub use opt::{d_sup_upper, opt_set};
pub use oracle::{adequate_universe, oracle_direct_sum, oracle_opt_set, TruncatedUniverse};
pub use pw::{pw_set, pw_set_p1};
pub use qopt::qopt_set;
pub use report::{construct, run_construct, run_normalized, ConstructionReport};
pub use subset::Subset;
pub use tails::{a_s_bound, choose_s, operator_norm, power_sum_bound};
pub use weights::{gamma, gamma_bar, validate_params, SpaceExponent, WeightParams};
