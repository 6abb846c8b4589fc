//! Cross-validation of a facet system and a face list against an oracle
//! sample. Every check reports counterexamples instead of stopping early.

use std::collections::HashMap;
use std::fmt;

use crate::error::Result;
use crate::face::{enumerate_faces, face_inclusion, facet_inequalities, FaceDescriptor, RawInequality};
use crate::linalg::{independent_subset, rank};
use crate::oracle::{CertifiedSample, Oracle};
use crate::schubert::SchubertCalculus;

/// Maximum number of counterexamples kept per check.
const MAX_EXAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub counterexamples: Vec<String>,
}

impl Check {
    fn new(name: &'static str, detail: String, failures: Vec<String>) -> Self {
        Check {
            name,
            passed: failures.is_empty(),
            detail,
            counterexamples: failures.into_iter().take(MAX_EXAMPLES).collect(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)?;
        for c in &self.counterexamples {
            write!(f, "\n    counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn format_tuple(t: &[Vec<i64>]) -> String {
    let parts: Vec<String> = t.iter().map(|nu| format!("{nu:?}")).collect();
    format!("({})", parts.join(", "))
}

fn satisfies_all(ineqs: &[RawInequality], t: &[Vec<i64>]) -> bool {
    ineqs.iter().all(|i| i.satisfied(t))
}

/// No certified point violates an inequality.
pub fn check_validity(ineqs: &[RawInequality], sample: &CertifiedSample) -> Check {
    let mut bad = Vec::new();
    for p in &sample.points {
        for (n, i) in ineqs.iter().enumerate() {
            if !i.satisfied(&p.tuple) {
                bad.push(format!(
                    "{} (k = {}) violates inequality {n} (value {})",
                    format_tuple(&p.tuple),
                    p.k,
                    i.value(&p.tuple)
                ));
            }
        }
    }
    Check::new(
        "validity",
        format!("{} inequalities on {} certified points", ineqs.len(), sample.points.len()),
        bad,
    )
}

/// Every inequality is attained with equality at a nonzero certified point.
pub fn check_tightness(ineqs: &[RawInequality], sample: &CertifiedSample) -> Check {
    let mut bad = Vec::new();
    for (n, i) in ineqs.iter().enumerate() {
        let tight = sample
            .points
            .iter()
            .any(|p| p.tuple.iter().flatten().any(|&x| x != 0) && i.value(&p.tuple) == 0);
        if !tight {
            bad.push(format!("inequality {n} {:?} is not tight on the sample", i.coeffs));
        }
    }
    Check::new("tightness", format!("{} inequalities", ineqs.len()), bad)
}

/// A dominant box tuple satisfies every inequality iff it is certified.
pub fn check_completeness(ineqs: &[RawInequality], sample: &CertifiedSample) -> Check {
    let mut bad = Vec::new();
    let tuples = sample.all_tuples();
    for t in &tuples {
        let inside = satisfies_all(ineqs, t);
        let certified = sample.is_certified(t);
        if inside != certified {
            bad.push(if certified {
                format!("{} is certified but cut off by the system", format_tuple(t))
            } else {
                format!(
                    "{} satisfies the system but has no invariant up to depth {}",
                    format_tuple(t),
                    sample.depth
                )
            });
        }
    }
    Check::new(
        "completeness",
        format!("{} box tuples, {} certified", tuples.len(), sample.points.len()),
        bad,
    )
}

/// Box tuples inside the system that lie on the face.
pub fn face_points(face: &FaceDescriptor, ineqs: &[RawInequality], tuples: &[Vec<Vec<i64>>]) -> Vec<Vec<Vec<i64>>> {
    tuples
        .iter()
        .filter(|t| face.contains(t) && satisfies_all(ineqs, t))
        .cloned()
        .collect()
}

fn point_rank(points: &[Vec<Vec<i64>>]) -> usize {
    let flat: Vec<Vec<i64>> = points.iter().map(|t| t.iter().flatten().copied().collect()).collect();
    independent_subset(&flat).len()
}

/// The lattice points of each face span a subspace of codimension `codim`.
pub fn check_codimension(faces: &[FaceDescriptor], face_pts: &[Vec<Vec<Vec<i64>>>], total_dim: usize) -> Check {
    let mut bad = Vec::new();
    for (n, (f, pts)) in faces.iter().zip(face_pts).enumerate() {
        let expected = f.parabolic.dim_center();
        let dim = point_rank(pts);
        if f.codim != expected || dim + expected != total_dim {
            bad.push(format!(
                "face {n}: codim {} but |Δ∖Δ(P)| = {expected} and its points span dimension {dim} of {total_dim}",
                f.codim
            ));
        }
    }
    Check::new("codimension", format!("{} faces", faces.len()), bad)
}

/// Distinct faces have distinct defining subspaces and distinct point sets.
pub fn check_injectivity(faces: &[FaceDescriptor], face_pts: &[Vec<Vec<Vec<i64>>>]) -> Check {
    let mut bad = Vec::new();
    let mut spans = HashMap::new();
    let mut sets: HashMap<&Vec<Vec<Vec<i64>>>, usize> = HashMap::new();
    for (n, f) in faces.iter().enumerate() {
        if let Some(m) = spans.insert(f.span_key(), n) {
            bad.push(format!("faces {m} and {n} have the same equations"));
        }
        if let Some(m) = sets.insert(&face_pts[n], n) {
            bad.push(format!("faces {m} and {n} have the same lattice points"));
        }
    }
    Check::new("injectivity", format!("{} faces", faces.len()), bad)
}

/// `ker E_i ⊆ ker E_j`, i.e. the equations of `j` lie in the row space of
/// those of `i`. Exact face containment once each face spans its kernel.
fn kernel_contained(fi: &FaceDescriptor, fj: &FaceDescriptor) -> bool {
    let ki = fi.span_key();
    let mut stacked = ki.clone();
    stacked.extend(fj.span_key());
    rank(&stacked) == ki.len()
}

/// The combinatorial inclusion test agrees with exact containment of the
/// defining systems and with containment of lattice points, on every
/// ordered pair.
pub fn check_inclusion(
    sc: &SchubertCalculus,
    faces: &[FaceDescriptor],
    face_pts: &[Vec<Vec<Vec<i64>>>],
) -> Result<Check> {
    let mut bad = Vec::new();
    let mut included = 0;
    for (i, fi) in faces.iter().enumerate() {
        for (j, fj) in faces.iter().enumerate() {
            let comb = face_inclusion(sc.weyl(), fi, fj)?;
            let linear = kernel_contained(fi, fj);
            let geom = face_pts[i].iter().all(|t| fj.contains(t));
            included += usize::from(comb);
            if comb != linear || comb != geom {
                bad.push(format!(
                    "faces {i} ⊆ {j}: criterion says {comb}, equations say {linear}, lattice points say {geom}"
                ));
            }
        }
    }
    Ok(Check::new(
        "inclusion",
        format!("{} ordered pairs, {included} inclusions", faces.len() * faces.len()),
        bad,
    ))
}

/// Validity, tightness and completeness of an arbitrary inequality system.
pub fn verify_inequalities(ineqs: &[RawInequality], sample: &CertifiedSample) -> VerifyReport {
    VerifyReport {
        checks: vec![
            check_validity(ineqs, sample),
            check_tightness(ineqs, sample),
            check_completeness(ineqs, sample),
        ],
    }
}

/// The full cross-validation of the Θ facet system and the face lattice up
/// to `max_codim`.
pub fn verify_theta(
    sc: &SchubertCalculus,
    oracle: &Oracle,
    s: usize,
    max_codim: usize,
    box_bound: i64,
    depth: u32,
    budget: u64,
) -> Result<VerifyReport> {
    let faces = enumerate_faces(sc, s, max_codim.max(1), budget)?;
    let sample = oracle.sample_cone(s, box_bound, depth)?;
    let ineqs: Vec<RawInequality> = facet_inequalities(&faces, &sample)?.iter().map(|i| i.to_raw()).collect();
    let mut report = verify_inequalities(&ineqs, &sample);
    let faces: Vec<FaceDescriptor> = faces.into_iter().filter(|f| f.codim <= max_codim).collect();
    let tuples = sample.all_tuples();
    let pts: Vec<_> = faces.iter().map(|f| face_points(f, &ineqs, &tuples)).collect();
    if s >= 2 {
        let total = sc.weyl().rank() * (s + 1);
        report.checks.push(check_codimension(&faces, &pts, total));
        report.checks.push(check_injectivity(&faces, &pts));
    }
    report.checks.push(check_inclusion(sc, &faces, &pts)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Limits;
    use crate::face::Relation;
    use crate::rootsys::build_root_system;
    use crate::weyl::enumerate_weyl;
    use std::sync::Arc;

    fn setup(t: &str) -> (SchubertCalculus, Oracle) {
        let rs = Arc::new(build_root_system(&t.parse().unwrap()));
        let sc = SchubertCalculus::new(Arc::new(enumerate_weyl(rs.clone()).unwrap()), &Limits::default()).unwrap();
        (sc, Oracle::new(rs, Limits::default()))
    }

    #[test]
    fn sl2_passes() {
        let (sc, o) = setup("A1");
        let r = verify_theta(&sc, &o, 2, 1, 4, 2, 10_000_000).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn corrupted_system_fails_with_counterexample() {
        let (_, o) = setup("A1");
        let sample = o.sample_cone(2, 4, 2).unwrap();
        let ineqs = vec![
            RawInequality { coeffs: vec![-1, 1, 1], relation: Relation::Ge },
            RawInequality { coeffs: vec![1, -1, 1], relation: Relation::Ge },
            RawInequality { coeffs: vec![1, 1, -2], relation: Relation::Ge },
        ];
        let r = verify_inequalities(&ineqs, &sample);
        assert!(!r.all_passed());
        let v = r.get("validity").unwrap();
        assert!(!v.passed && !v.counterexamples.is_empty());
        // dropping a facet breaks completeness only
        let r = verify_inequalities(&ineqs[..2], &sample);
        assert!(r.get("validity").unwrap().passed);
        assert!(!r.get("completeness").unwrap().passed);
    }

    #[test]
    fn sl3_passes_small_box() {
        let (sc, o) = setup("A2");
        let r = verify_theta(&sc, &o, 2, 2, 3, 3, 10_000_000).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
