//! Equivariant embeddability of homogeneous Levi-nondegenerate models.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{Label, ModelSpec, ModelValues};
use crate::config::Config;

use super::curved::{solve_curved_equivariant, CurvedBranch, CurvedSolution};
use super::flat::{flat_constant_solutions, flat_h4, flat_rank_two, transform_to_vi3e};
use super::LnError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Target {
    #[serde(rename = "SU(3,1)")]
    SU31,
    #[serde(rename = "SU(2,2)")]
    SU22,
}

impl Target {
    pub const ALL: [Target; 2] = [Target::SU31, Target::SU22];

    /// Sign of the hyperquadric: `1` for `SU(3,1)`, `-1` for `SU(2,2)`.
    pub fn epsilon(self) -> i64 {
        match self {
            Target::SU31 => 1,
            Target::SU22 => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Target::SU31 => "SU(3,1)",
            Target::SU22 => "SU(2,2)",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = LnError;

    fn from_str(s: &str) -> Result<Self, LnError> {
        let k: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        match k.as_str() {
            "31" => Ok(Target::SU31),
            "22" => Ok(Target::SU22),
            _ => Err(LnError::Input(format!("unknown target {s}; expected SU(3,1) or SU(2,2)"))),
        }
    }
}

/// Verdict with the data that realizes it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub label: String,
    pub target: Target,
    pub embeddable: bool,
    pub rank_ii: Option<u8>,
    pub witness: Value,
    pub note: Option<String>,
}

/// `sqrt(2)/3`, the only `(IX,L)` member in `SU(2,2)`.
pub fn ix_l_split_member() -> f64 {
    2f64.sqrt() / 3.0
}

fn model_b(spec: &ModelSpec) -> Option<f64> {
    match &spec.values {
        ModelValues::Symbolic { .. } => None,
        _ => Some(spec.numeric(&Default::default()).1),
    }
}

fn curved_json(s: &[CurvedSolution]) -> Value {
    serde_json::to_value(s).expect("serializable")
}

/// `(VIII,K)` in `SU(2,2)` and `(IX,L)` in `SU(3,1)`: `a^2 = eps B`.
fn family_decision(spec: &ModelSpec, target: Target, cfg: &Config) -> Result<Decision, LnError> {
    let eps = target.epsilon();
    let (a, note) = match model_b(spec) {
        Some(b) => ((eps as f64 * b).sqrt(), None),
        None => (1.0, Some("every member of the family; witness at a = 1".to_string())),
    };
    let sols = solve_curved_equivariant(eps, CurvedBranch::AZeroBZero, Some(a), cfg)?;
    let sol = sols.first().ok_or_else(|| LnError::Invariant("family member not recovered".into()))?;
    if sol.label != spec.label.as_str() {
        return Err(LnError::Invariant(format!("identified {} instead of {}", sol.label, spec.label)));
    }
    Ok(Decision {
        label: spec.label.to_string(),
        target,
        embeddable: true,
        rank_ii: Some(sol.rank),
        witness: curved_json(&sols),
        note,
    })
}

fn no(spec: &ModelSpec, target: Target, note: Option<String>, witness: Value) -> Decision {
    Decision { label: spec.label.to_string(), target, embeddable: false, rank_ii: None, witness, note }
}

/// Decision for a catalog model and a target hyperquadric.
pub fn decide_embeddable(spec: &ModelSpec, target: Target, cfg: &Config) -> Result<Decision, LnError> {
    let eps = target.epsilon();
    let yes = |rank: u8, witness: Value, note: Option<String>| Decision {
        label: spec.label.to_string(),
        target,
        embeddable: true,
        rank_ii: Some(rank),
        witness,
        note,
    };
    Ok(match (spec.label, target) {
        (Label::IIA, _) => yes(0, json!({"a": 0, "b": 0, "c": 0}), Some("orbit of U(2,1)".into())),
        (Label::IXD, Target::SU31) | (Label::VIIIC, Target::SU22) => yes(
            1,
            json!({"epsilon": eps, "c": 0, "u1": 0, "u3": 0, "u2": format!("{}i/2", -eps), "Im v3": 0}),
            Some("orbit of a central U(1) extension".into()),
        ),
        (Label::VI3E, Target::SU22) => {
            let (h4, _) = flat_h4(eps)?;
            let two = flat_rank_two(&h4)?;
            let sols = flat_constant_solutions(&two)?;
            let checks = sols.iter().map(|s| transform_to_vi3e(&two, s)).collect::<Result<Vec<_>, _>>()?;
            if sols.is_empty() || !checks.iter().all(|c| c.pass) {
                return Err(LnError::Invariant("flat constant solutions do not reach (VI_3,E)".into()));
            }
            let w: Vec<Value> = sols.iter().map(|s| s.to_json()).collect();
            yes(2, json!(w), None)
        }
        (Label::IXL, Target::SU31) | (Label::VIIIK, Target::SU22) => family_decision(spec, target, cfg)?,
        (Label::IXL, Target::SU22) => {
            let sols = solve_curved_equivariant(eps, CurvedBranch::AZeroBNonzero, None, cfg)?;
            let member = ix_l_split_member();
            match model_b(spec) {
                Some(b) if (b - member).abs() <= cfg.catalog_tol * member.max(1.0) => {
                    let rank = sols.first().map(|s| s.rank).ok_or_else(|| LnError::Invariant("no rank-one member".into()))?;
                    yes(rank, curved_json(&sols), Some("single member B = sqrt(2)/3".into()))
                }
                _ => no(spec, target, Some("only the member B = sqrt(2)/3 embeds, with rank 1".into()), curved_json(&sols)),
            }
        }
        (Label::VItE, Target::SU22) => {
            let sols = solve_curved_equivariant(eps, CurvedBranch::ANonzero, None, cfg)?;
            let note = "not in the classification theorem; the constant second fundamental form system \
                        has rank-one solutions for the member listed in the witness";
            no(spec, target, Some(note.into()), curved_json(&sols))
        }
        _ => no(spec, target, None, Value::Null),
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::catalog::model;

    fn spec(label: Label, params: &[(&str, f64)]) -> ModelSpec {
        let p: BTreeMap<String, f64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        model(label, &p).unwrap()
    }

    #[test]
    fn theorem_table() {
        let cfg = Config::default();
        let expect: [(Label, &[(&str, f64)], Target, Option<u8>); 9] = [
            (Label::IXL, &[("B", 5.0)], Target::SU31, Some(2)),
            (Label::IXL, &[("B", 5.0)], Target::SU22, None),
            (Label::VIIIK, &[("B", -3.0)], Target::SU22, Some(2)),
            (Label::VIIIK, &[("B", -3.0)], Target::SU31, None),
            (Label::IIA, &[], Target::SU31, Some(0)),
            (Label::IIA, &[], Target::SU22, Some(0)),
            (Label::IXD, &[], Target::SU31, Some(1)),
            (Label::VIIIC, &[], Target::SU22, Some(1)),
            (Label::VI3E, &[], Target::SU22, Some(2)),
        ];
        for (label, params, target, rank) in expect {
            let d = decide_embeddable(&spec(label, params), target, &cfg).unwrap();
            assert_eq!((d.embeddable, d.rank_ii), (rank.is_some(), rank), "{label} {target}");
        }
        for (label, target) in [(Label::IXD, Target::SU22), (Label::VIIIC, Target::SU31), (Label::VI3E, Target::SU31), (Label::IIIB, Target::SU22)] {
            assert!(!decide_embeddable(&spec(label, &[]), target, &cfg).unwrap().embeddable);
        }
    }

    #[test]
    fn single_split_member() {
        let cfg = Config::default();
        let d = decide_embeddable(&spec(Label::IXL, &[("B", ix_l_split_member())]), Target::SU22, &cfg).unwrap();
        assert!(d.embeddable);
        assert_eq!(d.rank_ii, Some(1));
    }

    #[test]
    fn type_iv_is_not_embeddable() {
        for t in Target::ALL {
            let d = decide_embeddable(&spec(Label::IVF, &[]), t, &Config::default()).unwrap();
            assert!(!d.embeddable);
        }
    }

    #[test]
    fn families_embed_for_every_member() {
        let cfg = Config::default();
        for b in [0.25, 1.0, 7.5] {
            let d = decide_embeddable(&spec(Label::IXL, &[("B", b)]), Target::SU31, &cfg).unwrap();
            assert_eq!(d.rank_ii, Some(2));
            let d = decide_embeddable(&spec(Label::VIIIK, &[("B", -b)]), Target::SU22, &cfg).unwrap();
            assert_eq!(d.rank_ii, Some(2));
        }
        let d = decide_embeddable(&spec(Label::IXL, &[]), Target::SU31, &cfg).unwrap();
        assert!(d.embeddable && d.note.is_some());
    }

    #[test]
    fn targets_parse() {
        assert_eq!("SU(3,1)".parse::<Target>().unwrap(), Target::SU31);
        assert_eq!("su22".parse::<Target>().unwrap(), Target::SU22);
        assert!("SU(4)".parse::<Target>().is_err());
    }
}
