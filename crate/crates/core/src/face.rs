//! Faces of the tensor cone from Θ: defining equations, oriented facets,
//! the combinatorial inclusion test, membership and the Hasse diagram.

use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::bk::{enumerate_theta, BkTuple};
use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::oracle::CertifiedSample;
use crate::rational::{primitive_integer_vector, q, Q};
use crate::schubert::SchubertCalculus;
use crate::weyl::{ParabolicSubset, WeylGroup};

/// `nu -> sum_i <u_i^-1 nu_i, omega_k^vee>` on `(s+1)`-tuples of weights in
/// fundamental coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional {
    pub k: usize,
    /// Weyl ids `u_i`.
    pub words: Vec<usize>,
    blocks: Vec<Vec<Q>>,
}

impl LinearFunctional {
    pub fn new(weyl: &WeylGroup, k: usize, words: &[usize]) -> Self {
        let r = weyl.rank();
        let row = &weyl.root_system().coweight_rows()[k];
        let blocks = words
            .iter()
            .map(|&u| {
                let m = weyl.element(weyl.inverse_id(u)).action();
                (0..r)
                    .map(|j| (0..r).fold(Q::zero(), |acc, l| acc + &row[l] * q(m[l * r + j])))
                    .collect()
            })
            .collect();
        LinearFunctional { k, words: words.to_vec(), blocks }
    }

    /// Coefficients on each `nu_i`; they are also the simple-coroot
    /// coordinates of `u_i omega_k^vee`.
    pub fn blocks(&self) -> &[Vec<Q>] {
        &self.blocks
    }

    pub fn flat_coeffs(&self) -> Vec<Q> {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn eval(&self, point: &[Vec<i64>]) -> Q {
        self.blocks
            .iter()
            .zip(point)
            .flat_map(|(b, nu)| b.iter().zip(nu))
            .fold(Q::zero(), |acc, (c, &x)| acc + c * q(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub parabolic: ParabolicSubset,
    pub reps: Vec<usize>,
    pub equations: Vec<LinearFunctional>,
    pub codim: usize,
}

impl FaceDescriptor {
    pub fn s(&self) -> usize {
        self.reps.len() - 1
    }

    pub fn contains(&self, point: &[Vec<i64>]) -> bool {
        self.equations.iter().all(|e| e.eval(point).is_zero())
    }

    /// Reduced row echelon form of the equations: equal exactly when the
    /// faces span the same subspace.
    pub fn span_key(&self) -> Vec<Vec<Q>> {
        rref(&self.equations.iter().map(LinearFunctional::flat_coeffs).collect::<Vec<_>>())
    }
}

/// Which side of a facet hyperplane holds the cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Positive,
    Negative,
    /// The functional vanishes on the whole cone (happens for `s = 1`).
    Equality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeInequality {
    pub functional: LinearFunctional,
    pub direction: Direction,
    /// Index of the facet in the face list it was built from.
    pub face: usize,
}

impl ConeInequality {
    /// Signed value; nonnegative (zero for `Equality`) on the cone.
    pub fn value(&self, point: &[Vec<i64>]) -> Q {
        let v = self.functional.eval(point);
        match self.direction {
            Direction::Negative => -v,
            _ => v,
        }
    }

    pub fn satisfied(&self, point: &[Vec<i64>]) -> bool {
        let v = self.value(point);
        match self.direction {
            Direction::Equality => v.is_zero(),
            _ => !v.is_negative(),
        }
    }

    pub fn to_raw(&self) -> RawInequality {
        let mut coeffs = self.functional.flat_coeffs();
        if self.direction == Direction::Negative {
            coeffs.iter_mut().for_each(|c| *c = -c.clone());
        }
        RawInequality {
            coeffs: primitive_integer_vector(&coeffs)
                .iter()
                .map(|c| c.to_i64().expect("small coefficient"))
                .collect(),
            relation: if self.direction == Direction::Equality { Relation::Eq } else { Relation::Ge },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Eq,
}

/// `coeffs . (nu_0, ..., nu_s) >= 0` (or `= 0`) with integer coefficients on
/// the concatenated fundamental coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInequality {
    pub coeffs: Vec<i64>,
    pub relation: Relation,
}

impl RawInequality {
    pub fn value(&self, point: &[Vec<i64>]) -> i64 {
        self.coeffs.iter().zip(point.iter().flatten()).map(|(a, b)| a * b).sum()
    }

    pub fn satisfied(&self, point: &[Vec<i64>]) -> bool {
        match self.relation {
            Relation::Ge => self.value(point) >= 0,
            Relation::Eq => self.value(point) == 0,
        }
    }
}

/// The face attached to a Θ-member.
pub fn face_from_theta(weyl: &WeylGroup, s: usize, member: &BkTuple) -> Result<FaceDescriptor> {
    if !member.retained || member.cup_coeff != 1 {
        return Err(Error::Usage("tuple is not in Θ (⊙₀ coefficient is not 1)".into()));
    }
    if member.reps.len() != s + 1 {
        return Err(Error::Usage(format!(
            "tuple has {} entries, expected s+1 = {}",
            member.reps.len(),
            s + 1
        )));
    }
    let complement = member.parabolic.complement();
    let equations = complement
        .iter()
        .map(|&k| LinearFunctional::new(weyl, k, &member.reps))
        .collect();
    Ok(FaceDescriptor {
        parabolic: member.parabolic.clone(),
        reps: member.reps.clone(),
        equations,
        codim: complement.len(),
    })
}

/// All faces of codimension at most `max_codim`, grouped by parabolic in the
/// order of `ParabolicSubset::all_proper`. Fails if two Θ-members give the
/// same subspace.
pub fn enumerate_faces(sc: &SchubertCalculus, s: usize, max_codim: usize, budget: u64) -> Result<Vec<FaceDescriptor>> {
    let weyl = sc.weyl();
    let mut faces = Vec::new();
    for p in ParabolicSubset::all_proper(weyl.rank()) {
        if p.dim_center() > max_codim {
            continue;
        }
        for member in enumerate_theta(sc, s, &p, budget)? {
            faces.push(face_from_theta(weyl, s, &member)?);
        }
    }
    if s >= 2 {
        let mut seen: HashMap<Vec<Vec<Q>>, usize> = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            if let Some(j) = seen.insert(f.span_key(), i) {
                return Err(Error::Consistency(format!(
                    "faces {j} and {i} have the same defining subspace"
                )));
            }
        }
    }
    Ok(faces)
}

/// Orients every codimension-one face so that all certified points lie on
/// the closed nonnegative side.
pub fn facet_inequalities(faces: &[FaceDescriptor], sample: &CertifiedSample) -> Result<Vec<ConeInequality>> {
    let mut out = Vec::new();
    for (idx, f) in faces.iter().enumerate() {
        if f.codim != 1 {
            continue;
        }
        let functional = f.equations[0].clone();
        let (mut pos, mut neg) = (false, false);
        for p in &sample.points {
            let v = functional.eval(&p.tuple);
            pos |= v.is_positive();
            neg |= v.is_negative();
        }
        let direction = match (pos, neg) {
            (true, true) => {
                return Err(Error::Consistency(format!(
                    "certified points lie strictly on both sides of facet {idx}"
                )))
            }
            (true, false) => Direction::Positive,
            (false, true) => Direction::Negative,
            (false, false) => Direction::Equality,
        };
        out.push(ConeInequality { functional, direction, face: idx });
    }
    Ok(out)
}

/// `F1 ⊆ F2` iff `Δ(P1) ⊆ Δ(P2)` and each rep of `F1` projects onto the
/// matching rep of `F2`.
pub fn face_inclusion(weyl: &WeylGroup, f1: &FaceDescriptor, f2: &FaceDescriptor) -> Result<bool> {
    if f1.reps.len() != f2.reps.len() || f1.parabolic.rank() != f2.parabolic.rank() {
        return Err(Error::Usage("faces come from different settings".into()));
    }
    if !f1.parabolic.is_subset(&f2.parabolic) {
        return Ok(false);
    }
    for (&a, &b) in f1.reps.iter().zip(&f2.reps) {
        if weyl.project_to_coset(weyl.element(a), &f2.parabolic)?.id() != b {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Interior,
    /// Faces whose equations vanish, and chamber walls `(i, j)` with
    /// `<nu_i, alpha_j^vee> = 0`.
    Boundary { faces: Vec<usize>, walls: Vec<(usize, usize)> },
    Outside,
}

/// Classifies a tuple of weights against the oriented facets, the
/// dominance chamber and the faces in `faces`.
pub fn membership(ineqs: &[ConeInequality], faces: &[FaceDescriptor], point: &[Vec<i64>]) -> Membership {
    if point.iter().flatten().any(|&x| x < 0) || ineqs.iter().any(|i| !i.satisfied(point)) {
        return Membership::Outside;
    }
    let active: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].contains(point)).collect();
    let walls: Vec<(usize, usize)> = point
        .iter()
        .enumerate()
        .flat_map(|(i, nu)| nu.iter().enumerate().filter(|(_, &x)| x == 0).map(move |(j, _)| (i, j)))
        .collect();
    if active.is_empty() && walls.is_empty() {
        Membership::Interior
    } else {
        Membership::Boundary { faces: active, walls }
    }
}

/// Covering relations `(smaller, larger)` of the inclusion order.
pub fn hasse_diagram(weyl: &WeylGroup, faces: &[FaceDescriptor]) -> Result<Vec<(usize, usize)>> {
    let n = faces.len();
    let mut incl = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            incl[i][j] = face_inclusion(weyl, &faces[i], &faces[j])?;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if incl[i][j] && incl[j][i] {
                return Err(Error::Consistency(format!(
                    "faces {i} and {j} are included in each other"
                )));
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !incl[i][j] {
                continue;
            }
            let covered = (0..n).any(|m| m != i && m != j && incl[i][m] && incl[m][j]);
            if !covered {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}
