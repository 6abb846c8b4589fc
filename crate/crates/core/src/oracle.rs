//! Brute-force representation theory on integral weights: Weyl dimensions,
//! Freudenthal multiplicities, Klimyk/Brauer tensor decomposition and a
//! saturation sampler of the tensor cone. Shares only the root data with the
//! Schubert side, so it can be used to check it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Limits, Result};
use crate::rational::{common_denominator, Q};
use crate::rootsys::{RootSystem, Weight};

/// Weight multiplicities of an irreducible module, over all its weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiplicityTable {
    pub highest_weight: Vec<i64>,
    pub entries: BTreeMap<Vec<i64>, u64>,
}

impl WeightMultiplicityTable {
    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Irreducible summands (by highest weight) with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecompTable {
    pub summands: BTreeMap<Vec<i64>, u64>,
}

impl DecompTable {
    pub fn multiplicity(&self, nu: &[i64]) -> u64 {
        self.summands.get(nu).copied().unwrap_or(0)
    }
}

/// A lattice tuple known to lie in the cone, with the least `k` such that
/// `k * tuple` has an invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CertifiedPoint {
    pub tuple: Vec<Vec<i64>>,
    pub k: u32,
}

/// Result of scanning every dominant tuple in a box.
#[derive(Debug, Clone)]
pub struct CertifiedSample {
    pub rank: usize,
    pub s: usize,
    pub box_bound: i64,
    pub depth: u32,
    /// Certified tuples in lexicographic order.
    pub points: Vec<CertifiedPoint>,
    witness: HashMap<Vec<Vec<i64>>, u32>,
}

impl CertifiedSample {
    pub fn witness(&self, tuple: &[Vec<i64>]) -> Option<u32> {
        self.witness.get(tuple).copied()
    }

    pub fn is_certified(&self, tuple: &[Vec<i64>]) -> bool {
        self.witness.contains_key(tuple)
    }

    /// Every dominant tuple of the box, certified or not, in lexicographic
    /// order.
    pub fn all_tuples(&self) -> Vec<Vec<Vec<i64>>> {
        box_tuples(self.rank, self.s, self.box_bound)
    }
}

/// All `(s+1)`-tuples of dominant weights with coordinates in `0..=b`.
pub fn box_tuples(rank: usize, s: usize, b: i64) -> Vec<Vec<Vec<i64>>> {
    let n = rank * (s + 1);
    let base = (b + 1) as usize;
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut flat = vec![0i64; n];
            for x in flat.iter_mut().rev() {
                *x = (idx % base) as i64;
                idx /= base;
            }
            flat.chunks(rank).map(<[i64]>::to_vec).collect()
        })
        .collect()
}

#[derive(Debug)]
struct Tables {
    dominant: HashMap<Vec<i64>, u64>,
    full: OnceLock<Arc<WeightMultiplicityTable>>,
}

pub struct Oracle {
    rs: Arc<RootSystem>,
    limits: Limits,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    // D * (omega_i, omega_j) for a common denominator D
    gram: Vec<Vec<i64>>,
    // D' * <., omega_k^vee>, for heights and the root-lattice test
    coweights: Vec<Vec<i64>>,
    coweight_den: i64,
    tables: RwLock<HashMap<Vec<i64>, Arc<Tables>>>,
}

impl std::fmt::Debug for Oracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Oracle")
            .field("type", &self.rs.cartan_type().to_string())
            .finish()
    }
}

impl Oracle {
    pub fn new(rs: Arc<RootSystem>, limits: Limits) -> Self {
        let r = rs.rank();
        let roots = rs
            .positive_roots()
            .iter()
            .map(|b| b.weight_coords.to_ints().expect("roots are integral"))
            .collect();
        let coroots = rs.positive_roots().iter().map(|b| b.coroot_coords.clone()).collect();
        let fund: Vec<Weight> = (0..r).map(|i| Weight::fundamental(r, i)).collect();
        let gram_q: Vec<Vec<Q>> = fund
            .iter()
            .map(|a| fund.iter().map(|b| rs.inner(a, b)).collect())
            .collect();
        let den = common_denominator(gram_q.iter().flatten());
        let gram = scale_to_ints(&gram_q, &den);
        let cw_den = common_denominator(rs.coweight_rows().iter().flatten());
        let coweights = scale_to_ints(rs.coweight_rows(), &cw_den);
        Oracle {
            rs,
            limits,
            roots,
            coroots,
            gram,
            coweights,
            coweight_den: cw_den.to_i64().unwrap(),
            tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn check_dominant(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rs.rank() {
            return Err(Error::Usage(format!(
                "weight {lambda:?} has {} coordinates, expected {}",
                lambda.len(),
                self.rs.rank()
            )));
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(Error::Usage(format!("weight {lambda:?} is not dominant")));
        }
        Ok(())
    }

    /// Weyl's dimension formula.
    pub fn weyl_dim(&self, lambda: &[i64]) -> Result<u64> {
        self.check_dominant(lambda)?;
        Ok(self.weyl_dim_unchecked(lambda))
    }

    fn weyl_dim_unchecked(&self, lambda: &[i64]) -> u64 {
        let mut num = Q::one();
        for c in &self.coroots {
            let rho: i64 = c.iter().sum();
            let top: i64 = rho + c.iter().zip(lambda).map(|(a, b)| a * b).sum::<i64>();
            num *= Q::new(top.into(), rho.into());
        }
        num.to_integer().to_u64().expect("dimension fits in u64")
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                s += (x as i128) * (y as i128) * (self.gram[i][j] as i128);
            }
        }
        s
    }

    fn reflect(&self, i: usize, v: &mut [i64]) {
        let c = v[i];
        for (x, &a) in v.iter_mut().zip(&self.rs.cartan_matrix()[i]) {
            *x -= c * a;
        }
    }

    /// Folds into the dominant chamber; returns the image and the parity of
    /// the number of reflections used.
    fn fold(&self, mut v: Vec<i64>) -> (Vec<i64>, bool) {
        let mut odd = false;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect(i, &mut v);
            odd = !odd;
        }
        (v, odd)
    }

    /// `lambda* = -w0 lambda`.
    pub fn dual_weight(&self, lambda: &[i64]) -> Vec<i64> {
        self.fold(lambda.iter().map(|x| -x).collect()).0
    }

    /// Coordinates of `v` in the simple-root basis if it lies in the root
    /// lattice.
    fn root_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.coweights
            .iter()
            .map(|row| {
                let n: i64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                if n % self.coweight_den == 0 {
                    Some(n / self.coweight_den)
                } else {
                    None
                }
            })
            .collect()
    }

    fn orbit(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::from([mu.to_vec()]);
        let mut queue = VecDeque::from([mu.to_vec()]);
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for i in 0..v.len() {
                if v[i] != 0 {
                    let mut w = v.clone();
                    self.reflect(i, &mut w);
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(v);
        }
        out
    }

    fn tables(&self, lambda: &[i64]) -> Result<Arc<Tables>> {
        if let Some(t) = self.tables.read().unwrap().get(lambda) {
            return Ok(t.clone());
        }
        let dim = self.weyl_dim_unchecked(lambda);
        if dim > self.limits.dim_cap {
            return Err(Error::Budget(format!(
                "module {lambda:?} has dimension {dim}, above the cap of {}",
                self.limits.dim_cap
            )));
        }
        let dominant = self.dominant_multiplicities(lambda)?;
        let total: u64 = dominant
            .iter()
            .map(|(mu, &m)| m * self.orbit(mu).len() as u64)
            .sum();
        if total != dim {
            return Err(Error::Consistency(format!(
                "Freudenthal total {total} differs from the Weyl dimension {dim} for {lambda:?}"
            )));
        }
        let t = Arc::new(Tables { dominant, full: OnceLock::new() });
        self.tables.write().unwrap().insert(lambda.to_vec(), t.clone());
        Ok(t)
    }

    fn dominant_multiplicities(&self, lambda: &[i64]) -> Result<HashMap<Vec<i64>, u64>> {
        // dominant weights below lambda, reached through dominant weights
        let mut seen: HashSet<Vec<i64>> = HashSet::from([lambda.to_vec()]);
        let mut stack = vec![lambda.to_vec()];
        while let Some(v) = stack.pop() {
            for a in &self.roots {
                let w: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - y).collect();
                if w.iter().all(|&x| x >= 0) && seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        let height = |mu: &Vec<i64>| -> i64 {
            let d: Vec<i64> = lambda.iter().zip(mu).map(|(x, y)| x - y).collect();
            self.root_coords(&d).expect("root lattice").iter().sum()
        };
        let mut order: Vec<Vec<i64>> = seen.into_iter().collect();
        order.sort_by_cached_key(|mu| (height(mu), mu.clone()));

        let rho = vec![1i64; lambda.len()];
        let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };
        let lr = shift(lambda);
        let top = self.form(&lr, &lr);
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::from([(lambda.to_vec(), 1)]);
        for mu in order.iter().skip(1) {
            let mut sum = 0i128;
            for a in &self.roots {
                let mut v: Vec<i64> = mu.clone();
                loop {
                    for (x, y) in v.iter_mut().zip(a) {
                        *x += y;
                    }
                    let (d, _) = self.fold(v.clone());
                    let Some(&m) = mult.get(&d) else { break };
                    sum += (m as i128) * self.form(&v, a);
                }
            }
            let mr = shift(mu);
            let den = top - self.form(&mr, &mr);
            let (quo, rem) = (2 * sum).div_rem(&den);
            if den <= 0 || rem != 0 || quo <= 0 {
                return Err(Error::Consistency(format!(
                    "Freudenthal recursion gave {}/{den} at {mu:?} in {lambda:?}",
                    2 * sum
                )));
            }
            mult.insert(mu.clone(), quo as u64);
        }
        Ok(mult)
    }

    fn multiplicity_in(&self, t: &Tables, mu: &[i64]) -> u64 {
        let (d, _) = self.fold(mu.to_vec());
        t.dominant.get(&d).copied().unwrap_or(0)
    }

    /// All weights of `V(lambda)` with multiplicities.
    pub fn freudenthal(&self, lambda: &[i64]) -> Result<Arc<WeightMultiplicityTable>> {
        self.check_dominant(lambda)?;
        let t = self.tables(lambda)?;
        Ok(self.full_table(lambda, &t))
    }

    fn full_table(&self, lambda: &[i64], t: &Tables) -> Arc<WeightMultiplicityTable> {
        t.full
            .get_or_init(|| {
                let mut entries = BTreeMap::new();
                for (mu, &m) in &t.dominant {
                    for w in self.orbit(mu) {
                        entries.insert(w, m);
                    }
                }
                Arc::new(WeightMultiplicityTable { highest_weight: lambda.to_vec(), entries })
            })
            .clone()
    }

    /// `V(lambda) ⊗ V(mu)` by Klimyk's formula, folding the weights of the
    /// smaller factor.
    pub fn tensor_decompose(&self, lambda: &[i64], mu: &[i64]) -> Result<DecompTable> {
        self.check_dominant(lambda)?;
        self.check_dominant(mu)?;
        let (dl, dm) = (self.weyl_dim_unchecked(lambda), self.weyl_dim_unchecked(mu));
        if dl.saturating_mul(dm) > self.limits.dim_cap {
            return Err(Error::Budget(format!(
                "tensor product of dimension {dl}x{dm} exceeds the cap of {}",
                self.limits.dim_cap
            )));
        }
        let (big, small) = if dl >= dm { (lambda, mu) } else { (mu, lambda) };
        let t = self.tables(small)?;
        let weights = self.full_table(small, &t);
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (g, &m) in &weights.entries {
            let v: Vec<i64> = big.iter().zip(g).map(|(a, b)| a + b + 1).collect();
            let (d, odd) = self.fold(v);
            if d.contains(&0) {
                continue;
            }
            let nu: Vec<i64> = d.iter().map(|x| x - 1).collect();
            *acc.entry(nu).or_insert(0) += if odd { -(m as i64) } else { m as i64 };
        }
        let mut summands = BTreeMap::new();
        for (nu, c) in acc {
            if c < 0 {
                return Err(Error::Consistency(format!(
                    "Klimyk gave multiplicity {c} for {nu:?} in {lambda:?} x {mu:?}"
                )));
            }
            if c > 0 {
                summands.insert(nu, c as u64);
            }
        }
        Ok(DecompTable { summands })
    }

    /// Multiplicity of `V(nu)` in `V(lambda) ⊗ V(mu)` by Brauer's formula,
    /// only tabulating `mu`.
    fn brauer(&self, lambda: &[i64], mu: &[i64], nu: &[i64]) -> Result<u64> {
        let t = self.tables(mu)?;
        let start: Vec<i64> = nu.iter().map(|x| x + 1).collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start, false)]);
        let mut total = 0i64;
        while let Some((v, odd)) = queue.pop_front() {
            let g: Vec<i64> = v.iter().zip(lambda).map(|(a, b)| a - b - 1).collect();
            let m = self.multiplicity_in(&t, &g) as i64;
            total += if odd { -m } else { m };
            for i in 0..v.len() {
                let mut w = v.clone();
                self.reflect(i, &mut w);
                if seen.insert(w.clone()) {
                    queue.push_back((w, !odd));
                }
            }
        }
        if total < 0 {
            return Err(Error::Consistency(format!(
                "Brauer gave multiplicity {total} for {nu:?} in {lambda:?} x {mu:?}"
            )));
        }
        Ok(total as u64)
    }

    /// Dimension of the invariants in `V(nu_0) ⊗ ... ⊗ V(nu_s)`.
    pub fn invariant_dim(&self, nus: &[Vec<i64>]) -> Result<u64> {
        for nu in nus {
            self.check_dominant(nu)?;
        }
        let r = self.rs.rank();
        let sum: Vec<i64> = (0..r).map(|j| nus.iter().map(|nu| nu[j]).sum()).collect();
        if self.root_coords(&sum).is_none() {
            return Ok(0);
        }
        let nus: Vec<&Vec<i64>> = nus.iter().filter(|nu| nu.iter().any(|&x| x != 0)).collect();
        match nus.len() {
            0 => Ok(1),
            1 => Ok(0),
            2 => Ok(u64::from(self.dual_weight(nus[0]) == *nus[1])),
            3 => {
                // the invariants of A⊗B⊗C count C* inside A⊗B; tabulate the
                // smallest factor only
                let mut idx = [0usize, 1, 2];
                idx.sort_by_key(|&i| self.weyl_dim_unchecked(nus[i]));
                let (small, a, c) = (nus[idx[0]], nus[idx[1]], nus[idx[2]]);
                self.brauer(a, small, &self.dual_weight(c))
            }
            _ => {
                let head = self.tensor_decompose(nus[0], nus[1])?;
                let mut total = 0;
                for (x, m) in head.summands {
                    let mut rest = vec![x];
                    rest.extend(nus[2..].iter().map(|v| (*v).clone()));
                    total += m * self.invariant_dim(&rest)?;
                }
                Ok(total)
            }
        }
    }

    /// Certifies every dominant `(s+1)`-tuple with coordinates at most
    /// `box_bound` for which some `k <= depth` gives `k * tuple` an invariant.
    pub fn sample_cone(&self, s: usize, box_bound: i64, depth: u32) -> Result<CertifiedSample> {
        let r = self.rs.rank();
        if box_bound < 0 || depth == 0 {
            return Err(Error::Usage("box bound must be >= 0 and depth >= 1".into()));
        }
        let count = ((box_bound + 1) as u64).checked_pow((r * (s + 1)) as u32);
        if count.is_none_or(|c| c > self.limits.tuple_budget) {
            return Err(Error::Budget(format!(
                "box {box_bound} gives more than {} tuples",
                self.limits.tuple_budget
            )));
        }
        let tuples = box_tuples(r, s, box_bound);
        let canonical: BTreeSet<Vec<Vec<i64>>> = tuples
            .iter()
            .map(|t| {
                let mut c = t.clone();
                c.sort();
                c
            })
            .collect();
        let canonical: Vec<Vec<Vec<i64>>> = canonical.into_iter().collect();
        let verdicts: Vec<Option<u32>> = canonical
            .par_iter()
            .map(|t| {
                for k in 1..=depth {
                    let scaled: Vec<Vec<i64>> = t
                        .iter()
                        .map(|nu| nu.iter().map(|x| x * k as i64).collect())
                        .collect();
                    if self.invariant_dim(&scaled)? > 0 {
                        return Ok(Some(k));
                    }
                }
                Ok(None)
            })
            .collect::<Result<_>>()?;
        let by_canon: HashMap<&Vec<Vec<i64>>, Option<u32>> =
            canonical.iter().zip(verdicts).collect();
        let mut points = Vec::new();
        let mut witness = HashMap::new();
        for t in tuples {
            let mut c = t.clone();
            c.sort();
            if let Some(k) = by_canon[&c] {
                witness.insert(t.clone(), k);
                points.push(CertifiedPoint { tuple: t, k });
            }
        }
        Ok(CertifiedSample { rank: r, s, box_bound, depth, points, witness })
    }
}

fn scale_to_ints(rows: &[Vec<Q>], den: &num_bigint::BigInt) -> Vec<Vec<i64>> {
    let d = Q::from_integer(den.clone());
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = x * &d;
                    debug_assert!(y.is_integer());
                    y.to_integer().to_i64().expect("small integer")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn oracle(t: &str) -> Oracle {
        Oracle::new(Arc::new(build_root_system(&t.parse().unwrap())), Limits::default())
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(oracle("A1").weyl_dim(&[2]).unwrap(), 3);
        assert_eq!(oracle("A2").weyl_dim(&[1, 1]).unwrap(), 8);
        assert_eq!(oracle("B2").weyl_dim(&[0, 0]).unwrap(), 1);
        assert_eq!(oracle("B2").weyl_dim(&[1, 0]).unwrap(), 5);
        assert_eq!(oracle("B2").weyl_dim(&[0, 1]).unwrap(), 4);
        assert_eq!(oracle("G2").weyl_dim(&[1, 0]).unwrap(), 7);
        assert_eq!(oracle("G2").weyl_dim(&[0, 1]).unwrap(), 14);
        assert_eq!(oracle("F4").weyl_dim(&[0, 0, 0, 1]).unwrap(), 26);
        assert_eq!(oracle("F4").weyl_dim(&[1, 0, 0, 0]).unwrap(), 52);
        assert!(matches!(oracle("A1").weyl_dim(&[-1]), Err(Error::Usage(_))));
    }

    #[test]
    fn freudenthal_examples() {
        let o = oracle("A1");
        let t = o.freudenthal(&[2]).unwrap();
        assert_eq!(t.entries, BTreeMap::from([(vec![-2], 1), (vec![0], 1), (vec![2], 1)]));
        let o = oracle("A2");
        let t = o.freudenthal(&[1, 0]).unwrap();
        assert_eq!(t.entries.len(), 3);
        assert!(t.entries.values().all(|&m| m == 1));
        let t = o.freudenthal(&[1, 1]).unwrap();
        assert_eq!(t.multiplicity(&[0, 0]), 2);
        assert_eq!(t.total(), 8);
        // G2 adjoint: zero weight has multiplicity 2 (the rank)
        let t = oracle("G2").freudenthal(&[0, 1]).unwrap();
        assert_eq!(t.multiplicity(&[0, 0]), 2);
    }

    #[test]
    fn multiplicities_are_weyl_symmetric() {
        let o = oracle("B2");
        let t = o.freudenthal(&[2, 1]).unwrap();
        for (mu, &m) in &t.entries {
            for i in 0..2 {
                let mut v = mu.clone();
                o.reflect(i, &mut v);
                assert_eq!(t.multiplicity(&v), m);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let o = oracle("A1");
        let d = o.tensor_decompose(&[1], &[1]).unwrap();
        assert_eq!(d.summands, BTreeMap::from([(vec![2], 1), (vec![0], 1)]));
        let o = oracle("A2");
        let d = o.tensor_decompose(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(d.summands, BTreeMap::from([(vec![1, 1], 1), (vec![0, 0], 1)]));
        let d = o.tensor_decompose(&[3, 1], &[0, 0]).unwrap();
        assert_eq!(d.summands, BTreeMap::from([(vec![3, 1], 1)]));
        let d = o.tensor_decompose(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(d.multiplicity(&[1, 1]), 2);
    }

    #[test]
    fn invariant_examples() {
        let o = oracle("A1");
        assert_eq!(o.invariant_dim(&[vec![1], vec![1], vec![2]]).unwrap(), 1);
        assert_eq!(o.invariant_dim(&[vec![1], vec![0], vec![2]]).unwrap(), 0);
        assert_eq!(o.invariant_dim(&[vec![1], vec![1], vec![1], vec![1]]).unwrap(), 2);
        let o = oracle("A2");
        assert_eq!(o.invariant_dim(&[vec![1, 0], vec![1, 0], vec![1, 0]]).unwrap(), 1);
        assert_eq!(o.invariant_dim(&[vec![0, 0], vec![0, 0], vec![0, 0]]).unwrap(), 1);
        assert_eq!(o.invariant_dim(&[vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap(), 2);
        assert_eq!(o.invariant_dim(&[vec![1, 0], vec![0, 1]]).unwrap(), 1);
        assert_eq!(o.invariant_dim(&[vec![1, 0], vec![1, 0]]).unwrap(), 0);
    }

    #[test]
    fn brauer_agrees_with_full_decomposition() {
        let o = oracle("B2");
        for a in [[1, 0], [0, 1], [1, 1], [2, 0]] {
            for b in [[0, 1], [1, 1], [0, 2]] {
                let d = o.tensor_decompose(&a, &b).unwrap();
                for (c, &m) in &d.summands {
                    let cd = o.dual_weight(c);
                    let via = o.invariant_dim(&[a.to_vec(), b.to_vec(), cd]).unwrap();
                    assert_eq!(via, m);
                }
            }
        }
    }

    #[test]
    fn duality() {
        for t in ["A2", "B2", "A3", "D4"] {
            let o = oracle(t);
            let r = o.root_system().rank();
            let mut rng = StdRng::seed_from_u64(7);
            for _ in 0..10 {
                let l: Vec<i64> = (0..r).map(|_| rng.gen_range(0..3)).collect();
                let ld = o.dual_weight(&l);
                assert_eq!(o.invariant_dim(&[l.clone(), ld.clone()]).unwrap(), 1);
                assert_eq!(o.weyl_dim(&l).unwrap(), o.weyl_dim(&ld).unwrap());
            }
        }
        assert_eq!(oracle("A2").dual_weight(&[2, 1]), vec![1, 2]);
        assert_eq!(oracle("B2").dual_weight(&[2, 1]), vec![2, 1]);
    }

    #[test]
    fn sampling_examples() {
        let o = oracle("A1");
        let s = o.sample_cone(2, 2, 1).unwrap();
        assert!(s.is_certified(&[vec![1], vec![1], vec![2]]));
        assert!(s.is_certified(&[vec![2], vec![1], vec![1]]));
        assert!(!s.is_certified(&[vec![1], vec![0], vec![2]]));
        assert_eq!(s.witness(&[vec![0], vec![0], vec![0]]), Some(1));
        // (1,1,1) needs k = 2
        let s2 = o.sample_cone(2, 2, 2).unwrap();
        assert_eq!(s2.witness(&[vec![1], vec![1], vec![1]]), Some(2));
        for p in &s.points {
            assert!(s2.is_certified(&p.tuple));
        }
        let o = oracle("A2");
        let s = o.sample_cone(2, 1, 2).unwrap();
        assert_eq!(s.witness(&[vec![1, 0], vec![1, 0], vec![1, 0]]), Some(1));
    }

    #[test]
    fn caps() {
        let o = Oracle::new(
            Arc::new(build_root_system(&"A2".parse().unwrap())),
            Limits { dim_cap: 20, ..Limits::default() },
        );
        assert!(matches!(o.freudenthal(&[5, 5]), Err(Error::Budget(_))));
        assert!(matches!(o.tensor_decompose(&[1, 1], &[1, 1]), Err(Error::Budget(_))));
        let o = Oracle::new(
            Arc::new(build_root_system(&"A2".parse().unwrap())),
            Limits { tuple_budget: 100, ..Limits::default() },
        );
        assert!(matches!(o.sample_cone(2, 2, 1), Err(Error::Budget(_))));
    }
}
