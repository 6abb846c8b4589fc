//! Weyl group enumeration, parabolic subgroups and coset combinatorics.
//!
//! Elements are identified by their action on the weight lattice (an integer
//! matrix in the fundamental-weight basis). Enumeration is breadth first by
//! length, appending simple reflections on the right in increasing order, so
//! the first word found for an element is its lexicographically smallest
//! reduced word and ids are ordered by `(length, word)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Limits, Result};
use crate::rational::{q, Q};
use crate::rootsys::{RootSystem, Weight};

static NEXT_GROUP_TAG: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    id: usize,
    reduced_word: Vec<usize>,
    action: Vec<i64>,
    group: u64,
}

impl WeylElement {
    /// Canonical handle: position in the `(length, lexicographic word)` order.
    pub fn id(&self) -> usize {
        self.id
    }

    /// Lexicographically smallest reduced word, 0-based simple indices.
    pub fn reduced_word(&self) -> &[usize] {
        &self.reduced_word
    }

    /// Reduced word with 1-based indices, as used in serialized output.
    pub fn word_1based(&self) -> Vec<usize> {
        self.reduced_word.iter().map(|i| i + 1).collect()
    }

    pub fn length(&self) -> usize {
        self.reduced_word.len()
    }

    /// Row-major action matrix on fundamental-weight coordinates.
    pub fn action(&self) -> &[i64] {
        &self.action
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reduced_word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word_1based().iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// A standard parabolic, given by the simple roots `Delta(P)` of its Levi.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubset {
    levi: Vec<bool>,
}

impl ParabolicSubset {
    pub fn new(rank: usize, levi_simples: &[usize]) -> Result<Self> {
        let mut levi = vec![false; rank];
        for &i in levi_simples {
            if i >= rank {
                return Err(Error::Config(format!(
                    "simple index {} out of range for rank {rank}",
                    i + 1
                )));
            }
            levi[i] = true;
        }
        Ok(ParabolicSubset { levi })
    }

    /// The parabolic whose Levi omits exactly the given simple indices.
    pub fn from_complement(rank: usize, complement: &[usize]) -> Result<Self> {
        let mut p = ParabolicSubset::new(rank, &[])?;
        p.levi = vec![true; rank];
        for &i in complement {
            if i >= rank {
                return Err(Error::Config(format!(
                    "simple index {} out of range for rank {rank}",
                    i + 1
                )));
            }
            p.levi[i] = false;
        }
        Ok(p)
    }

    pub fn borel(rank: usize) -> Self {
        ParabolicSubset { levi: vec![false; rank] }
    }

    pub fn whole(rank: usize) -> Self {
        ParabolicSubset { levi: vec![true; rank] }
    }

    /// Every standard parabolic except `G` itself, ordered by codimension of
    /// the face they index, then by complement.
    pub fn all_proper(rank: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (0u32..(1 << rank) - 1)
            .map(|mask| ParabolicSubset {
                levi: (0..rank).map(|i| mask & (1 << i) != 0).collect(),
            })
            .collect();
        out.sort_by_key(|p| (p.dim_center(), p.complement()));
        out
    }

    pub fn rank(&self) -> usize {
        self.levi.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.levi[i]
    }

    pub fn levi_simples(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.levi[i]).collect()
    }

    /// Simple indices outside the Levi; they index the directions of `Z(P)`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.levi[i]).collect()
    }

    /// `dim Z(P)` for semisimple `G`.
    pub fn dim_center(&self) -> usize {
        self.levi.iter().filter(|&&b| !b).count()
    }

    pub fn is_whole(&self) -> bool {
        self.levi.iter().all(|&b| b)
    }

    /// `Delta(self) ⊆ Delta(other)`, i.e. `self ⊆ other` as subgroups.
    pub fn is_subset(&self, other: &ParabolicSubset) -> bool {
        self.levi.len() == other.levi.len()
            && self.levi.iter().zip(&other.levi).all(|(&a, &b)| !a || b)
    }

    fn supports(&self, simple_coords: &[i64]) -> bool {
        simple_coords
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || self.levi[i])
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.complement().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "P[complement {{{}}}]", c.join(","))
    }
}

#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    tag: u64,
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<i64>, usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    longest: usize,
    // integer weight coordinates of +-roots -> (positive root index, sign)
    roots: HashMap<Vec<i64>, (usize, bool)>,
    reflections: Vec<usize>,
}

/// Enumerates the Weyl group of `rs` under the default limits.
pub fn enumerate_weyl(rs: Arc<RootSystem>) -> Result<WeylGroup> {
    WeylGroup::enumerate(rs, &Limits::default())
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x != 0 {
                for j in 0..r {
                    out[i * r + j] += x * b[k * r + j];
                }
            }
        }
    }
    out
}

fn mat_vec(m: &[i64], v: &[i64], r: usize) -> Vec<i64> {
    (0..r).map(|i| (0..r).map(|k| m[i * r + k] * v[k]).sum()).collect()
}

impl WeylGroup {
    pub fn enumerate(rs: Arc<RootSystem>, limits: &Limits) -> Result<WeylGroup> {
        let r = rs.rank();
        if r > limits.max_rank {
            return Err(Error::Budget(format!(
                "rank {r} exceeds the Weyl group enumeration cap of {}",
                limits.max_rank
            )));
        }
        let cartan = rs.cartan_matrix();
        let simple: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut m = vec![0i64; r * r];
                for j in 0..r {
                    m[j * r + j] = 1;
                    m[j * r + i] -= cartan[i][j];
                }
                m
            })
            .collect();
        let tag = NEXT_GROUP_TAG.fetch_add(1, Ordering::Relaxed);
        let mut identity = vec![0i64; r * r];
        for i in 0..r {
            identity[i * r + i] = 1;
        }
        let mut elements = vec![WeylElement {
            id: 0,
            reduced_word: vec![],
            action: identity.clone(),
            group: tag,
        }];
        let mut lookup = HashMap::from([(identity, 0usize)]);
        let mut right: Vec<Vec<usize>> = vec![vec![usize::MAX; r]];
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &id in &level {
                for (j, sj) in simple.iter().enumerate() {
                    let m = mat_mul(&elements[id].action, sj, r);
                    let target = match lookup.get(&m) {
                        Some(&t) => t,
                        None => {
                            let t = elements.len();
                            let mut word = elements[id].reduced_word.clone();
                            word.push(j);
                            lookup.insert(m.clone(), t);
                            elements.push(WeylElement {
                                id: t,
                                reduced_word: word,
                                action: m,
                                group: tag,
                            });
                            right.push(vec![usize::MAX; r]);
                            next.push(t);
                            t
                        }
                    };
                    right[id][j] = target;
                }
            }
            level = next;
        }
        let left: Vec<Vec<usize>> = elements
            .iter()
            .map(|e| {
                simple
                    .iter()
                    .map(|sj| lookup[&mat_mul(sj, &e.action, r)])
                    .collect()
            })
            .collect();
        let inverse: Vec<usize> = elements
            .iter()
            .map(|e| e.reduced_word.iter().fold(0, |acc, &i| left[acc][i]))
            .collect();
        let longest = elements.len() - 1;

        let mut roots = HashMap::new();
        let mut reflections = Vec::new();
        for (idx, root) in rs.positive_roots().iter().enumerate() {
            let w = root.weight_coords.to_ints().unwrap();
            roots.insert(w.iter().map(|x| -x).collect(), (idx, false));
            let mut m = vec![0i64; r * r];
            for j in 0..r {
                m[j * r + j] += 1;
                for k in 0..r {
                    m[j * r + k] -= w[j] * root.coroot_coords[k];
                }
            }
            reflections.push(lookup[&m]);
            roots.insert(w, (idx, true));
        }
        Ok(WeylGroup {
            rs,
            tag,
            elements,
            lookup,
            right,
            left,
            inverse,
            longest,
            roots,
            reflections,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &WeylElement {
        &self.elements[id]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn longest(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        &self.elements[self.right[0][i]]
    }

    /// Id of `w s_i`.
    pub fn right_mul(&self, id: usize, i: usize) -> usize {
        self.right[id][i]
    }

    /// Id of `s_i w`.
    pub fn left_mul(&self, id: usize, i: usize) -> usize {
        self.left[id][i]
    }

    /// Id of the reflection through the positive root with the given index.
    pub fn reflection(&self, root: usize) -> usize {
        self.reflections[root]
    }

    /// The element with the given word (0-based letters, need not be reduced).
    pub fn from_word(&self, word: &[usize]) -> Result<&WeylElement> {
        let mut id = 0;
        for &i in word {
            if i >= self.rank() {
                return Err(Error::Config(format!(
                    "simple index {} out of range for rank {}",
                    i + 1,
                    self.rank()
                )));
            }
            id = self.right[id][i];
        }
        Ok(&self.elements[id])
    }

    /// Looks up an element by its action matrix.
    pub fn from_action(&self, action: &[i64]) -> Option<&WeylElement> {
        self.lookup.get(action).map(|&id| &self.elements[id])
    }

    fn check(&self, w: &WeylElement) -> Result<()> {
        if w.group != self.tag || w.id >= self.elements.len() {
            return Err(Error::Usage(format!(
                "Weyl element {w} belongs to a different root system"
            )));
        }
        Ok(())
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> Result<&WeylElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(&self.elements[self.compose_ids(a.id, b.id)])
    }

    pub fn compose_ids(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .reduced_word
            .iter()
            .fold(a, |acc, &i| self.right[acc][i])
    }

    pub fn invert(&self, a: &WeylElement) -> Result<&WeylElement> {
        self.check(a)?;
        Ok(&self.elements[self.inverse[a.id]])
    }

    pub fn inverse_id(&self, id: usize) -> usize {
        self.inverse[id]
    }

    pub fn act(&self, w: &WeylElement, v: &Weight) -> Result<Weight> {
        self.check(w)?;
        if v.rank() != self.rank() {
            return Err(Error::Usage(format!(
                "weight {v} has {} coordinates, expected {}",
                v.rank(),
                self.rank()
            )));
        }
        Ok(self.act_unchecked(w.id, v))
    }

    pub(crate) fn act_unchecked(&self, id: usize, v: &Weight) -> Weight {
        let r = self.rank();
        let m = &self.elements[id].action;
        Weight::new(
            (0..r)
                .map(|i| {
                    (0..r).fold(Q::zero(), |acc, k| {
                        let a = m[i * r + k];
                        if a == 0 {
                            acc
                        } else {
                            acc + &v.coords()[k] * q(a)
                        }
                    })
                })
                .collect(),
        )
    }

    pub fn act_ints(&self, id: usize, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.elements[id].action, v, self.rank())
    }

    /// Image of the positive root `root` under `w`, as (positive root index,
    /// is positive).
    pub fn act_on_root(&self, id: usize, root: usize) -> (usize, bool) {
        let w = self.rs.positive_roots()[root].weight_coords.to_ints().unwrap();
        self.roots[&self.act_ints(id, &w)]
    }

    /// Positive roots sent to negative roots, as indices into
    /// `positive_roots()`.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<usize> {
        (0..self.rs.positive_roots().len())
            .filter(|&b| !self.act_on_root(w.id, b).1)
            .collect()
    }

    pub fn is_min_coset_rep(&self, id: usize, p: &ParabolicSubset) -> bool {
        let len = self.elements[id].length();
        p.levi_simples()
            .into_iter()
            .all(|i| self.elements[self.right[id][i]].length() > len)
    }

    /// `W^P`: the minimal-length representatives of `W / W_P`, by id.
    pub fn min_coset_reps(&self, p: &ParabolicSubset) -> Vec<&WeylElement> {
        self.elements
            .iter()
            .filter(|e| self.is_min_coset_rep(e.id, p))
            .collect()
    }

    /// The parabolic subgroup `W_P`.
    pub fn parabolic_subgroup(&self, p: &ParabolicSubset) -> Vec<&WeylElement> {
        self.elements
            .iter()
            .filter(|e| e.reduced_word.iter().all(|&i| p.contains(i)))
            .collect()
    }

    /// Minimal-length representative of `w W_P`, by exhaustive scan of the
    /// coset.
    pub fn project_to_coset(&self, w: &WeylElement, p: &ParabolicSubset) -> Result<&WeylElement> {
        self.check(w)?;
        let best = self
            .parabolic_subgroup(p)
            .into_iter()
            .map(|u| self.compose_ids(w.id, u.id))
            .min_by_key(|&id| (self.elements[id].length(), id))
            .unwrap();
        Ok(&self.elements[best])
    }

    /// Indices of the positive roots of the unipotent radical `P^u`.
    pub fn unipotent_roots(&self, p: &ParabolicSubset) -> Vec<usize> {
        self.rs
            .positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| !p.supports(&r.simple_coords))
            .map(|(i, _)| i)
            .collect()
    }

    /// `dim G/P = |Phi(P^u)|`.
    pub fn flag_dimension(&self, p: &ParabolicSubset) -> usize {
        self.unipotent_roots(p).len()
    }

    /// Sum of the roots `alpha` of `P^u` lying in `w Phi^+`.
    pub fn theta(&self, p: &ParabolicSubset, w: &WeylElement) -> Result<Weight> {
        self.check(w)?;
        Ok(self.theta_id(p, w.id))
    }

    pub(crate) fn theta_id(&self, p: &ParabolicSubset, id: usize) -> Weight {
        let inv = self.inverse[id];
        let roots = self.rs.positive_roots();
        self.unipotent_roots(p)
            .into_iter()
            .filter(|&b| self.act_on_root(inv, b).1)
            .fold(Weight::zero(self.rank()), |acc, b| {
                &acc + &roots[b].weight_coords
            })
    }

    /// Half sum of the positive roots of the Levi of `P`.
    pub fn rho_levi(&self, p: &ParabolicSubset) -> Weight {
        let sum = self
            .rs
            .positive_roots()
            .iter()
            .filter(|r| p.supports(&r.simple_coords))
            .fold(Weight::zero(self.rank()), |acc, r| &acc + &r.weight_coords);
        sum.scale(&Q::new(1.into(), 2.into()))
    }
}
