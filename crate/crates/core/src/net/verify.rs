//! Barth's conditions for a net: rank, surjectivity of a^∨, and h⁰(E) = 0.

use crate::forms::{projective_emptiness, CertificateMode, EmptinessCertificate, LinearFormMatrix};
use crate::linalg::{rank, Field, Rat};
use crate::report::{ReportEntry, VerificationReport, VerifyMode, VerifyOptions};

use super::cohomology::Monad;
use super::{presentation_any_rank, NetPresentation, QuadricNet};

/// h⁰(E) from the t = 0 section map.
pub fn section_count<F: Field>(p: &NetPresentation<F>) -> u64 {
    Monad::from_presentation(p).raw_h0_h1(0).0
}

/// Emptiness certificate for the locus where a^∨_q drops rank.
pub fn surjectivity_certificate(adual: &LinearFormMatrix<Rat>, opts: &VerifyOptions) -> EmptinessCertificate {
    let ideal = adual.minor_ideal(adual.rows()).expect("rows <= cols");
    let mode = match opts.mode {
        VerifyMode::Exact => CertificateMode::Certified,
        VerifyMode::Fast => CertificateMode::Probabilistic,
    };
    projective_emptiness(&ideal, mode, &opts.prime, &opts.caps)
}

/// Labels shared with the framed and slice variants.
pub(crate) const RANK_DESC: &str = "flattened net has rank 2n+2";
pub(crate) const SURJ_DESC: &str = "a^∨ is surjective at every point";
pub(crate) const SECTIONS_DESC: &str = "h⁰(E) = 0";

/// (ii) and (iii) evaluated on a presentation of any rank.
pub(crate) fn open_conditions(p: &NetPresentation<Rat>, opts: &VerifyOptions, surj_label: &str, sect_label: &str) -> (ReportEntry, ReportEntry) {
    let surj = if p.w_dim() < p.n {
        ReportEntry::exact(surj_label, SURJ_DESC, false, format!("dim W = {} < n = {}", p.w_dim(), p.n))
    } else {
        let (_, adual) = p.monad_maps();
        ReportEntry::from_certificate(surj_label, SURJ_DESC, surjectivity_certificate(&adual, opts))
    };
    let h0 = section_count(p);
    let sect = ReportEntry::exact(sect_label, SECTIONS_DESC, h0 == 0, format!("h0 = {h0}"));
    (surj, sect)
}

/// One verdict per Barth condition; works for ambient 4 and 3 alike.
pub fn barth_verify(net: &QuadricNet<Rat>, opts: &VerifyOptions) -> VerificationReport {
    let subject = if net.ambient() == 4 { "net" } else { "plane net" };
    let mut report = VerificationReport::new(format!("{subject} n={}", net.n()), opts.mode);
    let r = rank(net.flatten().as_matrix());
    let want = 2 * net.n() + 2;
    report.push(ReportEntry::exact("(i)", RANK_DESC, r == want, format!("rank {r}, expected {want}")));
    let p = presentation_any_rank(net);
    let (surj, sect) = open_conditions(&p, opts, "(ii)", "(iii)");
    report.push(surj);
    report.push(sect);
    report
}
