//! Self-contained claims about a list assignment, re-checkable from scratch.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFile};
use crate::lists::{amplitude_sigma_total, Color, ListAssignment, ListsFile, Precolored};
use crate::solver::color_with_lists;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Uncolorable,
    Colorable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub lists: ListAssignment,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub claim: Claim,
    pub family: String,
    /// Amplitude sum the construction is expected to have, when it has a closed form.
    pub sigma: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CertificateFile {
    graph: GraphFile,
    a: usize,
    b: usize,
    c: usize,
    lists: Vec<Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    precolored: Option<Precolored>,
    claim: Claim,
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<usize>,
}

impl Certificate {
    pub fn graph(&self) -> &Graph {
        self.lists.graph()
    }

    pub fn to_json(&self) -> Result<String> {
        let lists = ListsFile::from_assignment(&self.lists);
        let file = CertificateFile {
            graph: GraphFile::from(self.graph()),
            a: self.a,
            b: self.b,
            c: self.c,
            lists: lists.lists,
            precolored: lists.precolored,
            claim: self.claim,
            family: self.family.clone(),
            sigma: self.sigma,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CertificateFile = serde_json::from_str(text)?;
        let graph = Graph::try_from(file.graph)?;
        let lists = ListsFile {
            lists: file.lists,
            precolored: file.precolored,
        }
        .into_assignment(graph)?;
        Ok(Certificate {
            lists,
            a: file.a,
            b: file.b,
            c: file.c,
            claim: file.claim,
            family: file.family,
            sigma: file.sigma,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Re-checks list sizes, separation, the recorded amplitude sum and the
/// claim itself (by the exact solver).
pub fn verify(cert: &Certificate) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let l = &cert.lists;
    if cert.b > cert.a {
        return Err(Error::InvalidParameter(format!("b = {} exceeds a = {}", cert.b, cert.a)));
    }
    let sizes = l.check_sizes(cert.a, cert.b);
    checks.push(Check {
        name: "list-sizes",
        passed: sizes.is_ok(),
        detail: sizes.err().unwrap_or_else(|| "ok".into()),
    });
    let sep = l.separation();
    checks.push(Check {
        name: "separation",
        passed: sep <= cert.c,
        detail: format!("separation {sep}, claimed c = {}", cert.c),
    });
    if let Some(expected) = cert.sigma {
        let (passed, detail) = match amplitude_sigma_total(l) {
            Ok(s) => (s == expected, format!("Sigma(L) = {s}, expected {expected}")),
            Err(e) => (false, e.to_string()),
        };
        checks.push(Check {
            name: "amplitude-sum",
            passed,
            detail,
        });
    }
    let out = color_with_lists(l, cert.b)?;
    let actual = if out.colorable { Claim::Colorable } else { Claim::Uncolorable };
    checks.push(Check {
        name: "claim",
        passed: actual == cert.claim,
        detail: format!("claimed {:?}, solver says {:?}", cert.claim, actual).to_lowercase(),
    });
    Ok(VerifyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::fig1_fixture;

    #[test]
    fn fixture_round_trip_and_verify() {
        let cert = fig1_fixture();
        let json = cert.to_json().unwrap();
        assert!(json.contains("\"claim\": \"uncolorable\""));
        let back = Certificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert!(verify(&back).unwrap().passed());
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut flipped = fig1_fixture();
        flipped.claim = Claim::Colorable;
        let report = verify(&flipped).unwrap();
        assert_eq!(report.first_failure().unwrap().name, "claim");

        let mut grown = fig1_fixture();
        let (g, mut lists, pre) = grown.lists.clone().into_parts();
        lists[0].insert(99);
        grown.lists = ListAssignment::new(g, lists).unwrap().with_precolored(pre).unwrap();
        let report = verify(&grown).unwrap();
        assert_eq!(report.first_failure().unwrap().name, "list-sizes");
    }

    #[test]
    fn malformed_json_is_an_error() {
        assert!(Certificate::from_json("{\"graph\": 3}").is_err());
    }
}
