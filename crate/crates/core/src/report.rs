//! Verdicts and per-condition verification reports.

use serde::{Deserialize, Serialize};

use crate::forms::{CertificateKind, CertificateMode, EmptinessCertificate, GroebnerCaps};
use crate::linalg::{PrimeField, DEFAULT_PRIME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Probable,
    Indeterminate,
    Fail,
}

/// How open conditions are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Certificates over ℚ.
    Exact,
    /// 𝔽_p filters with PROBABLE verdicts.
    Fast,
}

impl VerifyMode {
    /// Exact up to charge 3, fast beyond.
    pub fn default_for(n: usize) -> Self {
        if n <= 3 {
            VerifyMode::Exact
        } else {
            VerifyMode::Fast
        }
    }
}

impl std::str::FromStr for VerifyMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(VerifyMode::Exact),
            "fast" => Ok(VerifyMode::Fast),
            other => Err(format!("unknown mode {other:?} (expected exact or fast)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    pub prime: PrimeField,
    pub caps: GroebnerCaps,
}

impl VerifyOptions {
    pub fn new(mode: VerifyMode) -> Self {
        VerifyOptions { mode, prime: PrimeField::new(DEFAULT_PRIME).expect("default prime"), caps: GroebnerCaps::default() }
    }

    pub fn exact() -> Self {
        Self::new(VerifyMode::Exact)
    }

    pub fn fast() -> Self {
        Self::new(VerifyMode::Fast)
    }

    pub fn with_prime(mut self, prime: PrimeField) -> Self {
        self.prime = prime;
        self
    }
}

/// Whether a verdict came from exact computation or a modular filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Exact,
    Probabilistic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    pub description: String,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<EmptinessCertificate>,
}

impl ReportEntry {
    pub fn exact(label: &str, description: &str, pass: bool, detail: impl Into<String>) -> Self {
        ReportEntry {
            label: label.to_string(),
            description: description.to_string(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            evidence: Evidence::Exact,
            detail: detail.into(),
            certificate: None,
        }
    }

    /// Entry for "the rank-drop locus is empty", read off a certificate.
    pub fn from_certificate(label: &str, description: &str, cert: EmptinessCertificate) -> Self {
        let evidence = match cert.mode {
            CertificateMode::Certified => Evidence::Exact,
            CertificateMode::Probabilistic => Evidence::Probabilistic,
        };
        let (verdict, detail) = match cert.kind {
            CertificateKind::Empty => (Verdict::Pass, "degeneracy locus is empty".to_string()),
            CertificateKind::ProbableEmpty => (Verdict::Probable, "degeneracy locus is empty modulo p".to_string()),
            CertificateKind::NonEmpty => (Verdict::Fail, "degeneracy locus is nonempty".to_string()),
            CertificateKind::ProbableNonEmpty => (Verdict::Fail, "degeneracy locus is nonempty modulo p".to_string()),
            CertificateKind::Indeterminate => (Verdict::Indeterminate, cert.detail.clone().unwrap_or_default()),
        };
        ReportEntry { label: label.to_string(), description: description.to_string(), verdict, evidence, detail, certificate: Some(cert) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub mode: VerifyMode,
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, mode: VerifyMode) -> Self {
        VerificationReport { subject: subject.into(), mode, entries: Vec::new() }
    }

    pub fn push(&mut self, e: ReportEntry) {
        assert!(self.entry(&e.label).is_none(), "duplicate condition {}", e.label);
        self.entries.push(e);
    }

    pub fn entry(&self, label: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn verdict(&self, label: &str) -> Option<Verdict> {
        self.entry(label).map(|e| e.verdict)
    }

    /// FAIL dominates, then INDETERMINATE, then PROBABLE.
    pub fn overall(&self) -> Verdict {
        self.entries.iter().map(|e| e.verdict).max().unwrap_or(Verdict::Pass)
    }

    pub fn all_pass(&self) -> bool {
        self.overall() == Verdict::Pass
    }

    /// Label and verdict pairs, for invariance comparisons.
    pub fn verdicts(&self) -> Vec<(String, Verdict)> {
        self.entries.iter().map(|e| (e.label.clone(), e.verdict)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_ordering() {
        let mut r = VerificationReport::new("x", VerifyMode::Exact);
        r.push(ReportEntry::exact("a", "", true, ""));
        assert_eq!(r.overall(), Verdict::Pass);
        let mut p = ReportEntry::exact("b", "", true, "");
        p.verdict = Verdict::Probable;
        r.push(p);
        assert_eq!(r.overall(), Verdict::Probable);
        r.push(ReportEntry::exact("c", "", false, ""));
        assert_eq!(r.overall(), Verdict::Fail);
        assert_eq!(serde_json::to_value(Verdict::Indeterminate).unwrap(), "INDETERMINATE");
    }
}
