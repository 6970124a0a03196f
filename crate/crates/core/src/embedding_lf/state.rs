//! Jet states of a Levi-flat second fundamental form.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::embedding_ln::state::JetValue;

use super::table::LF_JETS;
use super::LfError;

/// Renamed imaginary parts on the reduced bundles.
pub const LF_RENAMED: [&str; 3] = ["u", "v", "z"];

/// Jet values `a, b, u0, u1, v0, v1, w0, w1, z0, z1` and the renamed
/// `u = Im u1`, `v = Im v1`, `z = Im z1`; unlisted entries are symbolic.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LfJetState {
    #[serde(default)]
    pub values: BTreeMap<String, JetValue>,
}

fn is_real_name(name: &str) -> Option<bool> {
    LF_JETS.iter().find(|(n, _)| *n == name).map(|(_, c)| !c).or(LF_RENAMED.contains(&name).then_some(true))
}

impl LfJetState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, v: impl Into<JetValue>) -> Result<Self, LfError> {
        self.values.insert(name.to_string(), v.into());
        self.validate()?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> JetValue {
        self.values.get(name).cloned().unwrap_or(JetValue::Symbolic)
    }

    /// Known names and real values for the real jets.
    pub fn validate(&self) -> Result<(), LfError> {
        for (k, v) in &self.values {
            let real = is_real_name(k).ok_or_else(|| LfError::Input(format!("unknown jet coordinate {k}")))?;
            if real {
                if let Some(z) = v.to_c64() {
                    if z.im.abs() > crate::config::RANK_TOL * z.norm().max(1.0) {
                        return Err(LfError::Input(format!("{k} must be real")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Numeric value of a coordinate, if known.
    pub fn value(&self, name: &str) -> Option<Complex64> {
        self.get(name).to_c64()
    }
}

/// Rank of `a kappa^2 + 2i b kappa eta`.
pub fn lf_ii_rank(state: &LfJetState) -> Result<u8, LfError> {
    state.validate()?;
    let (a, b) = (state.get("a"), state.get("b"));
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Ok(0),
        (true, false) => Err(LfError::Invariant("a vanishes but b does not".into())),
        (false, true) => Ok(1),
        (false, false) => Ok(2),
    }
}
