//! Serializable report documents. Rationals travel as `"p/q"` strings so
//! nothing is lost in JSON.

use serde::{Deserialize, Serialize};

use crate::invariance::{
    FullSolution, Omega2Report, Reducibility, SpecialValueReport, Status, Verification,
};
use crate::rootsys::RootSystem;
use crate::selftest::SelftestReport;
use crate::{fmt_rational, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub algebra: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub submodules: Vec<SubmoduleRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omega2: Vec<Omega2Record>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelftestRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub s: String,
    pub t: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleRecord {
    pub roots: Vec<Vec<i64>>,
    pub highest_weight: Vec<i64>,
    /// The `s` forced by the character condition.
    #[serde(rename = "s_eq47")]
    pub s0: String,
    pub solutions: Vec<SolutionRecord>,
    pub status: Status,
    pub equation_count: usize,
    #[serde(default)]
    pub non_rational_root: bool,
    /// Present only when the full `(s, t)` audit was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reducibility: Option<ReducibilityRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub s_candidates: Vec<String>,
    pub solutions: Vec<SolutionRecord>,
    pub non_rational_root: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityRecord {
    pub eigen_on_system: String,
    pub eigen_on_vacuum: String,
    pub reducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildRecord {
    pub dim: usize,
    pub positive_roots: usize,
    pub highest_root: Vec<i64>,
    /// Dimensions of the grades −2, …, 2.
    pub grading: [usize; 5],
    pub components: Vec<Vec<Vec<i64>>>,
    pub deleted_diagram: Vec<Vec<usize>>,
    pub jacobi_checks: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub s: String,
    pub t: String,
    pub checks: usize,
    pub failures: Vec<[Vec<i64>; 2]>,
    pub operator_nonzero: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omega2Record {
    /// Simple-root indices, 1-based as in the usual diagram labelling.
    pub component: Vec<usize>,
    pub equation_count: usize,
    pub solutions: Vec<String>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRecord {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestRecord {
    pub seed: u64,
    pub suites: Vec<SuiteRecord>,
    pub passed: bool,
}

fn sol(s: &Rational, t: &Rational) -> SolutionRecord {
    SolutionRecord {
        s: fmt_rational(s),
        t: fmt_rational(t),
    }
}

impl SubmoduleRecord {
    pub fn from_report(rs: &RootSystem, r: &SpecialValueReport) -> Self {
        Self {
            roots: r
                .submodule
                .roots
                .iter()
                .map(|&id| rs.root(id).coords().to_vec())
                .collect(),
            highest_weight: r.submodule.highest_weight(rs).coords().to_vec(),
            s0: fmt_rational(&r.s0),
            solutions: r.solutions.iter().map(|(s, t)| sol(s, t)).collect(),
            status: r.status,
            equation_count: r.equation_count,
            non_rational_root: r.non_rational_root,
            audit: None,
            reducibility: None,
        }
    }

    pub fn with_audit(mut self, full: &FullSolution) -> Self {
        self.audit = Some(AuditRecord {
            s_candidates: full.s_candidates.iter().map(fmt_rational).collect(),
            solutions: full.solutions.iter().map(|(s, t)| sol(s, t)).collect(),
            non_rational_root: full.non_rational_root,
        });
        self
    }

    pub fn with_reducibility(mut self, r: &Reducibility) -> Self {
        self.reducibility = Some(ReducibilityRecord {
            eigen_on_system: fmt_rational(&r.eigen_on_system),
            eigen_on_vacuum: fmt_rational(&r.eigen_on_vacuum),
            reducible: r.reducible,
        });
        self
    }
}

impl VerifyRecord {
    pub fn new(rs: &RootSystem, s: &Rational, t: &Rational, v: &Verification) -> Self {
        Self {
            s: fmt_rational(s),
            t: fmt_rational(t),
            checks: v.checks,
            failures: v
                .failures
                .iter()
                .map(|&(a, b)| [rs.root(a).coords().to_vec(), rs.root(b).coords().to_vec()])
                .collect(),
            operator_nonzero: v.operator_nonzero,
            passed: v.passed(),
        }
    }

    /// Merges checks over several submodules.
    pub fn absorb(&mut self, other: VerifyRecord) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.operator_nonzero |= other.operator_nonzero;
        self.passed = self.failures.is_empty() && self.operator_nonzero;
    }
}

impl From<&Omega2Report> for Omega2Record {
    fn from(r: &Omega2Report) -> Self {
        Self {
            component: r.component.iter().map(|i| i + 1).collect(),
            equation_count: r.equation_count,
            solutions: r.solutions.iter().map(fmt_rational).collect(),
            status: r.status,
        }
    }
}

impl From<&SelftestReport> for SelftestRecord {
    fn from(r: &SelftestReport) -> Self {
        Self {
            seed: r.seed,
            suites: r
                .suites
                .iter()
                .map(|s| SuiteRecord {
                    name: s.name.to_string(),
                    checks: s.checks,
                    failures: s.failures,
                    first_failure: s.first_failure.clone(),
                })
                .collect(),
            passed: r.passed(),
        }
    }
}

impl Document {
    pub fn new(algebra: impl Into<String>, command: impl Into<String>) -> Self {
        Self {
            algebra: algebra.into(),
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.algebra);
        if let Some(b) = &self.build {
            out += &format!(
                "  dim {}  positive roots {}  highest root {:?}\n  grading (-2..2) {:?}\n",
                b.dim, b.positive_roots, b.highest_root, b.grading
            );
            out += &format!("  deleted diagram {:?}\n", b.deleted_diagram);
            for (i, c) in b.components.iter().enumerate() {
                out += &format!("  V- component {}: {} roots\n", i + 1, c.len());
            }
            out += &format!("  jacobi checks {}\n", b.jacobi_checks);
            if let Some(c) = &b.cache {
                out += &format!("  cache {c}\n");
            }
        }
        for (i, m) in self.submodules.iter().enumerate() {
            out += &format!(
                "  component {} (dim {}, highest weight {:?}): s0 = {}, {} equations, {}",
                i + 1,
                m.roots.len(),
                m.highest_weight,
                m.s0,
                m.equation_count,
                m.status
            );
            for s in &m.solutions {
                out += &format!(" (s, t) = ({}, {})", s.s, s.t);
            }
            if m.non_rational_root {
                out += " [non-rational root detected]";
            }
            out.push('\n');
            if let Some(a) = &m.audit {
                out += &format!("    audit: s candidates {:?}, solutions", a.s_candidates);
                for s in &a.solutions {
                    out += &format!(" ({}, {})", s.s, s.t);
                }
                out.push('\n');
            }
            if let Some(r) = &m.reducibility {
                out += &format!(
                    "    H_gamma acts by {} on the system and by {} on 1⊗1: {}\n",
                    r.eigen_on_system,
                    r.eigen_on_vacuum,
                    if r.reducible {
                        "M_q(C_{s0 dχ}) is reducible"
                    } else {
                        "no conclusion"
                    }
                );
            }
        }
        if let Some(v) = &self.verify {
            out += &format!(
                "  (s, t) = ({}, {}): {} checks, {} nonzero, operator {}: {}\n",
                v.s,
                v.t,
                v.checks,
                v.failures.len(),
                if v.operator_nonzero {
                    "nonzero"
                } else {
                    "zero"
                },
                if v.passed { "PASS" } else { "FAIL" }
            );
        }
        for o in &self.omega2 {
            out += &format!(
                "  component {:?}: {} equations, {}, s = {:?}\n",
                o.component, o.equation_count, o.status, o.solutions
            );
        }
        if let Some(st) = &self.selftest {
            for s in &st.suites {
                out += &format!(
                    "  {:<26} {:>7} checks  {}\n",
                    s.name,
                    s.checks,
                    if s.failures == 0 {
                        "ok".to_string()
                    } else {
                        format!("{} FAILED", s.failures)
                    }
                );
                if let Some(f) = &s.first_failure {
                    out += &format!("      first failure: {f}\n");
                }
            }
            out += &format!(
                "  seed {}  {}\n",
                st.seed,
                if st.passed { "PASS" } else { "FAIL" }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::invariance::solve_special_values;

    #[test]
    fn json_round_trip() {
        let ctx = Context::new("A2".parse().unwrap()).unwrap();
        let mut doc = Document::new("A2", "special-values");
        for e in ctx.components() {
            let r = solve_special_values(&ctx, e).unwrap();
            doc.submodules
                .push(SubmoduleRecord::from_report(ctx.root_system(), &r));
        }
        let text = doc.to_json();
        assert!(text.contains("\"t\": \"3/4\""));
        assert!(text.contains("\"status\": \"Exists\""));
        assert_eq!(Document::from_json(&text).unwrap(), doc);
        assert!(doc.to_text().contains("(s, t) = (0, 3/4)"));
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(Document::from_json("{\"algebra\": 3}").is_err());
        assert!(Document::from_json(
            "{\"algebra\": \"A2\", \"command\": \"x\", \"submodules\": [{\"status\": \"Maybe\"}]}"
        )
        .is_err());
    }
}
