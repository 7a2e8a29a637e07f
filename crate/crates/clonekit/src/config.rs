//! Resource caps shared by every module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tunable limits. Every operation that needs one of these has a `*_with`
/// variant taking a `Config`; the plain variant uses [`Config::default`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Largest arity of a Boolean function (tables live in one `u64`).
    pub arity_cap: usize,
    /// Largest degree parameter of the separating clone families.
    pub degree_cap: usize,
    /// Largest number of functions a single closure may hold.
    pub closure_budget: usize,
    /// Largest variable count for exhaustive fallbacks.
    pub brute_var_cap: usize,
    /// Default modal depth bound for bounded modal enumeration.
    pub modal_depth_bound: usize,
    /// Default world bound for bounded Kripke model enumeration.
    pub modal_model_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            arity_cap: 6,
            degree_cap: 5,
            closure_budget: 65536,
            brute_var_cap: 24,
            modal_depth_bound: 4,
            modal_model_bound: 6,
        }
    }
}

impl Config {
    /// Checks that all limits are positive and the arity cap fits a `u64` table.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("arity_cap", self.arity_cap),
            ("degree_cap", self.degree_cap),
            ("closure_budget", self.closure_budget),
            ("brute_var_cap", self.brute_var_cap),
            ("modal_depth_bound", self.modal_depth_bound),
            ("modal_model_bound", self.modal_model_bound),
        ];
        for (name, value) in fields {
            if value == 0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        if self.arity_cap > crate::boolfn::MAX_ARITY {
            return Err(Error::ArityOutOfRange {
                arity: self.arity_cap,
                cap: crate::boolfn::MAX_ARITY,
            });
        }
        if self.degree_cap < 2 {
            return Err(Error::InvalidInput("degree_cap must be at least 2".into()));
        }
        Ok(())
    }
}
