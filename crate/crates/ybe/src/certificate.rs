//! Certificates: machine-readable records of verified properties.
//!
//! A certificate field is only ever populated by actually running the
//! corresponding check; absent fields mean "not requested", never
//! "assumed". Serialisation is canonical (fixed field order, compact),
//! so certificates for the same input are byte-identical across runs.

use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::congruence;
use crate::families::{self, FamilyParams};
use crate::group::PermGroup;
use crate::solution::Solution;

pub const CERTIFICATE_SCHEMA: &str = "ybe/1";

/// The checks `cmd_verify` knows how to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Ybe,
    Involutive,
    Nondegenerate,
    Indecomposable,
    Irretractable,
    Simple,
    MultipermutationLevel,
    Group,
    Singular,
}

impl Check {
    pub const DEFAULT: [Check; 8] = [
        Check::Ybe,
        Check::Involutive,
        Check::Nondegenerate,
        Check::Indecomposable,
        Check::Irretractable,
        Check::Simple,
        Check::Group,
        Check::Singular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ybe => "ybe",
            Check::Involutive => "involutive",
            Check::Nondegenerate => "nondegenerate",
            Check::Indecomposable => "indecomposable",
            Check::Irretractable => "irretractable",
            Check::Simple => "simple",
            Check::MultipermutationLevel => "mpl",
            Check::Group => "group",
            Check::Singular => "singular",
        }
    }

    pub fn parse(name: &str) -> Option<Check> {
        match name {
            "ybe" => Some(Check::Ybe),
            "involutive" => Some(Check::Involutive),
            "nondegenerate" => Some(Check::Nondegenerate),
            "indecomposable" => Some(Check::Indecomposable),
            "irretractable" => Some(Check::Irretractable),
            "simple" => Some(Check::Simple),
            "mpl" => Some(Check::MultipermutationLevel),
            "group" => Some(Check::Group),
            "singular" => Some(Check::Singular),
            _ => None,
        }
    }
}

/// Multipermutation level: a finite tower height, or `"none"` when the
/// retract tower stabilises above one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipermutationLevel {
    Finite(u32),
    None,
}

impl Serialize for MultipermutationLevel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MultipermutationLevel::Finite(k) => serializer.serialize_u32(*k),
            MultipermutationLevel::None => serializer.serialize_str("none"),
        }
    }
}

impl<'de> Deserialize<'de> for MultipermutationLevel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::Number(n) => n
                .as_u64()
                .and_then(|v| u32::try_from(v).ok())
                .map(MultipermutationLevel::Finite)
                .ok_or_else(|| D::Error::custom("level out of range")),
            serde_json::Value::String(s) if s == "none" => Ok(MultipermutationLevel::None),
            _ => Err(D::Error::custom("expected an integer or \"none\"")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<FamilyParams>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ybe: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub involutive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nondegenerate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub indecomposable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub irretractable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub simple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multipermutation_level: Option<MultipermutationLevel>,
    /// Exact group order, in decimal.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group_order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group_is_p_group_for: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub singular_primes: Option<Vec<u64>>,
}

impl Certificate {
    pub fn new(s: &Solution) -> Certificate {
        Certificate {
            schema: CERTIFICATE_SCHEMA.to_string(),
            family: s.family().cloned(),
            n: s.n(),
            ybe: None,
            involutive: None,
            nondegenerate: None,
            indecomposable: None,
            irretractable: None,
            simple: None,
            multipermutation_level: None,
            group_order: None,
            group_is_p_group_for: None,
            singular_primes: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("certificate serialisation cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Result of running a batch of checks: the certificate plus the
/// pass/fail verdict per requested check.
pub struct VerifyOutcome {
    pub certificate: Certificate,
    /// Names of the checks that did not pass.
    pub failures: Vec<String>,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The prime `p` with `order = p^k`, if there is one. The trivial group
/// is a p-group for every prime, reported as `None` for want of a
/// canonical choice.
fn p_group_prime(order: &BigUint) -> Option<u64> {
    let primes = arith::distinct_prime_factors_big(order)?;
    match primes.as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

/// Runs the requested checks and assembles the certificate. Boolean
/// property checks pass when the property holds; computations (`group`,
/// `mpl`, `singular`) pass when they complete.
pub fn run_checks(s: &Solution, checks: &[Check], par: usize) -> VerifyOutcome {
    let mut cert = Certificate::new(s);
    let mut failures = Vec::new();
    let mut group: Option<PermGroup> = None;
    let ensure_group = |group: &mut Option<PermGroup>| -> BigUint {
        group
            .get_or_insert_with(|| {
                PermGroup::from_generators(s.n(), s.sigma().to_vec())
                    .expect("rows share the degree")
            })
            .order()
            .clone()
    };
    for &check in checks {
        match check {
            Check::Ybe => {
                let ok = s.check_ybe();
                cert.ybe = Some(ok);
                if !ok {
                    failures.push("ybe".into());
                }
            }
            Check::Involutive => {
                let ok = s.check_involutive();
                cert.involutive = Some(ok);
                if !ok {
                    failures.push("involutive".into());
                }
            }
            Check::Nondegenerate => {
                let ok = s.check_nondegenerate();
                cert.nondegenerate = Some(ok);
                if !ok {
                    failures.push("nondegenerate".into());
                }
            }
            Check::Indecomposable => {
                let ok = s.is_indecomposable();
                cert.indecomposable = Some(ok);
                if !ok {
                    failures.push("indecomposable".into());
                }
            }
            Check::Irretractable => {
                let ok = s.is_irretractable();
                cert.irretractable = Some(ok);
                if !ok {
                    failures.push("irretractable".into());
                }
            }
            Check::Simple => match congruence::is_simple_par(s, par) {
                Ok(ok) => {
                    cert.simple = Some(ok);
                    if !ok {
                        failures.push("simple".into());
                    }
                }
                Err(err) => failures.push(format!("simple ({err})")),
            },
            Check::MultipermutationLevel => match s.multipermutation_level() {
                Ok(level) => {
                    cert.multipermutation_level = Some(match level {
                        Some(k) => MultipermutationLevel::Finite(k),
                        None => MultipermutationLevel::None,
                    });
                }
                Err(err) => failures.push(format!("mpl ({err})")),
            },
            Check::Group => {
                let order = ensure_group(&mut group);
                cert.group_order = Some(order.to_string());
                cert.group_is_p_group_for = p_group_prime(&order);
            }
            Check::Singular => {
                if !s.is_indecomposable() {
                    failures.push("singular (requires an indecomposable solution)".into());
                    continue;
                }
                let order = ensure_group(&mut group);
                match families::is_singular_witness(s, &order) {
                    Ok(primes) => cert.singular_primes = Some(primes),
                    Err(err) => failures.push(format!("singular ({err})")),
                }
            }
        }
    }
    VerifyOutcome {
        certificate: cert,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn default_checks_on_a_simple_solution() {
        let s = families::theorem_main(2, 1).unwrap();
        let outcome = run_checks(&s, &Check::DEFAULT, 1);
        assert!(outcome.all_passed(), "failures: {:?}", outcome.failures);
        let c = &outcome.certificate;
        assert_eq!(c.ybe, Some(true));
        assert_eq!(c.involutive, Some(true));
        assert_eq!(c.nondegenerate, Some(true));
        assert_eq!(c.indecomposable, Some(true));
        assert_eq!(c.irretractable, Some(true));
        assert_eq!(c.simple, Some(true));
        assert_eq!(c.group_is_p_group_for, Some(2));
        assert_eq!(c.singular_primes, Some(vec![]));
    }

    #[test]
    fn non_simple_solution_fails_the_simple_check() {
        let s = families::theorem23(2, 2).unwrap();
        let outcome = run_checks(&s, &Check::DEFAULT, 1);
        assert!(!outcome.all_passed());
        assert_eq!(outcome.failures, vec!["simple"]);
        assert_eq!(outcome.certificate.simple, Some(false));
        assert_eq!(outcome.certificate.indecomposable, Some(true));
        assert_eq!(outcome.certificate.irretractable, Some(true));
    }

    #[test]
    fn mpl_field_serialises_as_number_or_none() {
        let cyclic = families::cyclic_solution(4).unwrap();
        let outcome = run_checks(&cyclic, &[Check::MultipermutationLevel], 1);
        let text = outcome.certificate.to_json_string();
        assert!(text.contains("\"multipermutation_level\":1"));
        let irretractable = families::theorem_main(2, 1).unwrap();
        let outcome = run_checks(&irretractable, &[Check::MultipermutationLevel], 1);
        let text = outcome.certificate.to_json_string();
        assert!(text.contains("\"multipermutation_level\":\"none\""));
        let back = Certificate::from_json_str(&text).unwrap();
        assert_eq!(
            back.multipermutation_level,
            Some(MultipermutationLevel::None)
        );
    }

    #[test]
    fn certificates_are_reproducible() {
        let s = families::remark31(2).unwrap();
        let a = run_checks(&s, &Check::DEFAULT, 1)
            .certificate
            .to_json_string();
        let b = run_checks(&s, &Check::DEFAULT, 4)
            .certificate
            .to_json_string();
        assert_eq!(a, b);
    }

    #[test]
    fn check_names_roundtrip() {
        for check in Check::DEFAULT {
            assert_eq!(Check::parse(check.name()), Some(check));
        }
        assert_eq!(Check::parse("mpl"), Some(Check::MultipermutationLevel));
        assert_eq!(Check::parse("bogus"), None);
    }
}
