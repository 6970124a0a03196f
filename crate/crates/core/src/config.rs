//! Default tolerances, seeds and numeric steps.

use std::collections::BTreeMap;

pub const PIT_SEEDS: u64 = 20;
pub const PIT_TOL: f64 = 1e-8;
pub const CATALOG_TOL: f64 = 1e-9;
pub const KERR_TOL: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-5;
pub const RANK_TOL: f64 = 1e-12;
pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;
pub const NEWTON_MIN_DERIV: f64 = 1e-14;
pub const MUTATION_FLOOR: f64 = 0.1;
pub const SHEAR_CONTROL_FLOOR: f64 = 1e-2;
pub const QUADRIC_TOL: f64 = 1e-14;
pub const LIFT_TOL: f64 = 1e-8;
pub const MIN_ABS_V: f64 = 0.1;

/// Run-wide numeric settings; every field can be overridden by name.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub seeds: Vec<u64>,
    pub pit_tol: f64,
    pub catalog_tol: f64,
    pub kerr_tol: f64,
    pub fd_step: f64,
    pub rank_tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seeds: (0..PIT_SEEDS).collect(),
            pit_tol: PIT_TOL,
            catalog_tol: CATALOG_TOL,
            kerr_tol: KERR_TOL,
            fd_step: FD_STEP,
            rank_tol: RANK_TOL,
        }
    }
}

impl Config {
    /// Seeds `base..base+PIT_SEEDS`.
    pub fn with_seed(seed: u64) -> Self {
        Config { seeds: (seed..seed + PIT_SEEDS).collect(), ..Config::default() }
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), String> {
        if !(value.is_finite() && value > 0.0) {
            return Err(format!("tolerance {name} must be positive"));
        }
        match name {
            "pit" => self.pit_tol = value,
            "catalog" => self.catalog_tol = value,
            "kerr" => self.kerr_tol = value,
            "fd_step" => self.fd_step = value,
            "rank" => self.rank_tol = value,
            _ => return Err(format!("unknown tolerance {name}")),
        }
        Ok(())
    }

    pub fn as_map(&self) -> BTreeMap<&'static str, f64> {
        BTreeMap::from([
            ("catalog", self.catalog_tol),
            ("fd_step", self.fd_step),
            ("kerr", self.kerr_tol),
            ("pit", self.pit_tol),
            ("rank", self.rank_tol),
        ])
    }
}
