//! Root systems of simple and semisimple types at small rank.
//!
//! Weights are stored in the fundamental-weight basis, roots additionally
//! carry their coordinates in the simple-root and simple-coroot bases. The
//! Cartan matrix convention is `cartan[i][j] = <alpha_i, alpha_j^vee>`, so the
//! simple root `alpha_i` has fundamental-weight coordinates `cartan[i]`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{parse_q, q, to_i64, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B | Family::C => n >= 2,
            Family::D => n >= 3,
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }

    /// Cartan matrix of one simple factor, Bourbaki numbering.
    fn cartan_block(self, n: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let chain = |m: &mut Vec<Vec<i64>>, len: usize| {
            for i in 1..len {
                m[i - 1][i] = -1;
                m[i][i - 1] = -1;
            }
        };
        match self {
            Family::A => chain(&mut m, n),
            Family::B => {
                chain(&mut m, n);
                // alpha_n short
                m[n - 2][n - 1] = -2;
                m[n - 1][n - 2] = -1;
            }
            Family::C => {
                chain(&mut m, n);
                // alpha_n long
                m[n - 2][n - 1] = -1;
                m[n - 1][n - 2] = -2;
            }
            Family::D => {
                chain(&mut m, n - 1);
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 3] = -1;
            }
            Family::F => {
                chain(&mut m, 4);
                // alpha_1, alpha_2 long; alpha_3, alpha_4 short
                m[1][2] = -2;
                m[2][1] = -1;
            }
            Family::G => {
                // alpha_1 short, alpha_2 long
                m[0][1] = -1;
                m[1][0] = -3;
            }
        }
        m
    }
}

/// A (possibly semisimple) Cartan type such as `A2` or `A1xB2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanType {
    factors: Vec<(Family, usize)>,
}

impl CartanType {
    pub fn new(factors: Vec<(Family, usize)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Config("empty Cartan type".into()));
        }
        for &(f, n) in &factors {
            if !f.valid_rank(n) {
                return Err(Error::Config(format!(
                    "invalid Cartan type factor `{}{}`: rank {} is outside the range of family {}",
                    f.letter(),
                    n,
                    n,
                    f.letter()
                )));
            }
        }
        Ok(CartanType { factors })
    }

    pub fn factors(&self) -> &[(Family, usize)] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// Block-diagonal Cartan matrix of the product.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = vec![vec![0; r]; r];
        let mut off = 0;
        for &(f, n) in &self.factors {
            let block = f.cartan_block(n);
            for i in 0..n {
                for j in 0..n {
                    m[off + i][off + j] = block[i][j];
                }
            }
            off += n;
        }
        m
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let part = part.trim();
            let bad = || Error::Config(format!("invalid Cartan type factor `{part}` in `{s}`"));
            let mut chars = part.chars();
            let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
            let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
            factors.push((family, rank));
        }
        CartanType::new(factors)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(fam, n)| format!("{}{}", fam.letter(), n))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl Serialize for CartanType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A rational weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| q(c)).collect())
    }

    /// The fundamental weight `omega_i` (0-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = Q::one();
        w
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Integer coordinates, if the weight is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(to_i64).collect()
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        parts
            .iter()
            .map(|p| parse_q(p))
            .collect::<Result<Vec<_>>>()
            .map(Weight)
            .map_err(serde::de::Error::custom)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for &Q {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// A root in three coordinate systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the simple-root basis.
    pub simple_coords: Vec<i64>,
    /// Coordinates of the coroot in the simple-coroot basis.
    pub coroot_coords: Vec<i64>,
    /// Coordinates in the fundamental-weight basis.
    pub weight_coords: Weight,
    pub positive: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    /// `<lambda, beta^vee>` for a weight in fundamental coordinates.
    pub fn pair_coroot(&self, w: &Weight) -> Q {
        self.coroot_coords
            .iter()
            .zip(w.coords())
            .fold(Q::zero(), |acc, (&c, x)| acc + x * q(c))
    }

    pub fn pair_coroot_ints(&self, w: &[i64]) -> i64 {
        self.coroot_coords.iter().zip(w).map(|(c, x)| c * x).sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    rho: Weight,
    // Row k maps fundamental-weight coordinates to <., omega_k^vee>.
    coweight_rows: Vec<Vec<Q>>,
    // (alpha_i, alpha_i) / 2
    half_lengths: Vec<Q>,
}

/// Builds the root system of `t` by closing the simple roots under simple
/// reflections.
pub fn build_root_system(t: &CartanType) -> RootSystem {
    RootSystem::new(t.clone())
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let r = cartan.len();
        let half_lengths = symmetrizer(&cartan);

        let transpose: Vec<Vec<Q>> = (0..r)
            .map(|i| (0..r).map(|j| q(cartan[j][i])).collect())
            .collect();
        let coweight_rows =
            linalg::inverse(&transpose).expect("Cartan matrices of finite type are invertible");

        let positive_roots = positive_roots(&cartan, &half_lengths);
        let rho = Weight::from_ints(&vec![1; r]);
        RootSystem {
            cartan_type,
            cartan,
            positive_roots,
            rho,
            coweight_rows,
            half_lengths,
        }
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `(alpha_i, alpha_i) / 2` under the invariant form normalized so that
    /// the shortest simple root of each factor has squared length 2.
    pub fn half_lengths(&self) -> &[Q] {
        &self.half_lengths
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from_ints(&self.cartan[i])
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::Config(format!(
                "simple index {} out of range for rank {}",
                i + 1,
                self.rank()
            )));
        }
        Ok(())
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::Usage(format!(
                "weight {} has {} coordinates, expected {}",
                w,
                w.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Simple reflection `s_i(w) = w - <w, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        self.check_weight(w)?;
        let c = w.coords()[i].clone();
        let coords = w
            .coords()
            .iter()
            .zip(&self.cartan[i])
            .map(|(x, &a)| x - &c * q(a))
            .collect();
        Ok(Weight(coords))
    }

    /// `<w, omega_k^vee>`: the coefficient of `alpha_k` when `w` is written in
    /// the simple-root basis.
    pub fn pair_coweight(&self, w: &Weight, k: usize) -> Result<Q> {
        self.check_index(k)?;
        self.check_weight(w)?;
        Ok(self.coweight_rows[k]
            .iter()
            .zip(w.coords())
            .fold(Q::zero(), |acc, (a, x)| acc + a * x))
    }

    /// The matrix whose row `k` is the functional `<., omega_k^vee>` on
    /// fundamental-weight coordinates.
    pub fn coweight_rows(&self) -> &[Vec<Q>] {
        &self.coweight_rows
    }

    /// All coordinates of `w` in the simple-root basis.
    pub fn to_simple_root_coords(&self, w: &Weight) -> Vec<Q> {
        (0..self.rank())
            .map(|k| {
                self.coweight_rows[k]
                    .iter()
                    .zip(w.coords())
                    .fold(Q::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    /// `sum_i c_i alpha_i` in fundamental-weight coordinates.
    pub fn from_simple_root_coords(&self, c: &[i64]) -> Weight {
        let r = self.rank();
        let mut out = vec![0i64; r];
        for (i, &ci) in c.iter().enumerate() {
            for j in 0..r {
                out[j] += ci * self.cartan[i][j];
            }
        }
        Weight::from_ints(&out)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.coords().iter().all(|x| !x.is_negative())
    }

    pub fn is_strictly_dominant(&self, w: &Weight) -> bool {
        w.coords().iter().all(|x| x.is_positive())
    }

    /// The invariant symmetric form `(a, b)`.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let cb = self.to_simple_root_coords(b);
        a.coords()
            .iter()
            .zip(&cb)
            .zip(&self.half_lengths)
            .fold(Q::zero(), |acc, ((x, c), d)| acc + x * c * d)
    }
}

/// Solves `cartan[i][j] d_j = cartan[j][i] d_i` with the shortest simple root
/// of each component normalized to `d = 1`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<Q> {
    let r = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        d[start] = Some(Q::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..r {
                if j != i && cartan[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * q(cartan[j][i]) / q(cartan[i][j]));
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        for &i in &comp {
            d[i] = Some(d[i].clone().unwrap() / &min);
        }
    }
    d.into_iter().map(Option::unwrap).collect()
}

fn positive_roots(cartan: &[Vec<i64>], half_lengths: &[Q]) -> Vec<Root> {
    let r = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        for j in 0..r {
            let p: i64 = (0..r).map(|i| b[i] * cartan[i][j]).sum();
            let mut nb = b.clone();
            nb[j] -= p;
            if nb.iter().all(|&c| c >= 0) && !seen.contains(&nb) {
                seen.insert(nb.clone());
                queue.push_back(nb);
            }
        }
    }
    let mut roots: Vec<Root> = seen
        .into_iter()
        .map(|c| {
            let weight: Vec<i64> = (0..r)
                .map(|j| (0..r).map(|i| c[i] * cartan[i][j]).sum())
                .collect();
            // (beta, beta) / 2 = sum_ij c_i c_j cartan[i][j] d_j / 2
            let mut half_len = Q::zero();
            for i in 0..r {
                for j in 0..r {
                    half_len += q(c[i] * c[j] * cartan[i][j]) * &half_lengths[j];
                }
            }
            half_len /= q(2);
            let coroot: Vec<i64> = (0..r)
                .map(|i| {
                    let x = q(c[i]) * &half_lengths[i] / &half_len;
                    to_i64(&x).expect("coroot coordinates are integral")
                })
                .collect();
            Root {
                simple_coords: c,
                coroot_coords: coroot,
                weight_coords: Weight::from_ints(&weight),
                positive: true,
            }
        })
        .collect();
    roots.sort_by(|a, b| {
        a.height()
            .cmp(&b.height())
            .then_with(|| b.simple_coords.cmp(&a.simple_coords))
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn rs(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap())
    }

    #[test]
    fn parse_types() {
        let t: CartanType = "a1xB2".parse().unwrap();
        assert_eq!(t.to_string(), "A1xB2");
        assert_eq!(t.rank(), 3);
        let err = "Z9".parse::<CartanType>().unwrap_err();
        assert!(err.to_string().contains("Z9"));
        assert!("D2".parse::<CartanType>().is_err());
        assert!("G3".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
        assert!("".parse::<CartanType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("A1xA1", 2),
            ("A2xB2", 7),
        ] {
            assert_eq!(rs(t).positive_roots().len(), n, "{t}");
        }
    }

    #[test]
    fn rank_one_and_two_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.positive_roots()[0].simple_coords, vec![1]);
        assert_eq!(a1.rho(), &Weight::from_ints(&[1]));
        let a2 = rs("A2");
        assert_eq!(a2.rho(), &Weight::from_ints(&[1, 1]));
    }

    #[test]
    fn reflection_examples() {
        let a1 = rs("A1");
        let w1 = a1.fundamental_weight(0);
        assert_eq!(a1.reflect(0, &w1).unwrap(), Weight::from_ints(&[-1]));
        let a2 = rs("A2");
        assert_eq!(
            a2.reflect(0, &a2.fundamental_weight(1)).unwrap(),
            a2.fundamental_weight(1)
        );
        assert_eq!(
            a2.reflect(0, &a2.fundamental_weight(0)).unwrap(),
            Weight::from_ints(&[-1, 1])
        );
        assert!(a2.reflect(2, &w1_of(&a2)).is_err());
    }

    fn w1_of(rs: &RootSystem) -> Weight {
        rs.fundamental_weight(0)
    }

    #[test]
    fn coweight_pairing_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.pair_coweight(a2.rho(), 0).unwrap(), q(1));
        assert_eq!(a2.pair_coweight(&a2.simple_root(0), 1).unwrap(), q(0));
        assert_eq!(a2.pair_coweight(&a2.simple_root(0), 0).unwrap(), q(1));
        // omega_1 = (2 alpha_1 + alpha_2) / 3 in A2
        assert_eq!(
            a2.pair_coweight(&a2.fundamental_weight(0), 0).unwrap(),
            q_frac(2, 3)
        );
        assert!(a2.pair_coweight(a2.rho(), 5).is_err());
    }

    #[test]
    fn dominance() {
        let a2 = rs("A2");
        assert!(a2.is_strictly_dominant(a2.rho()));
        assert!(a2.is_dominant(&Weight::zero(2)));
        assert!(!a2.is_strictly_dominant(&Weight::zero(2)));
        let a1 = rs("A1");
        let m = Weight::from_ints(&[-1]);
        assert!(!a1.is_dominant(&m) && !a1.is_strictly_dominant(&m));
    }

    const TYPES: [&str; 9] = ["A1", "A3", "B3", "C3", "D4", "G2", "F4", "A1xA2", "B2"];

    #[test]
    fn reflection_closure() {
        for t in TYPES {
            let rs = rs(t);
            let all: BTreeSet<Weight> = rs
                .positive_roots()
                .iter()
                .flat_map(|r| [r.weight_coords.clone(), -&r.weight_coords])
                .collect();
            for r in rs.positive_roots() {
                for i in 0..rs.rank() {
                    let img = rs.reflect(i, &r.weight_coords).unwrap();
                    assert!(all.contains(&img), "{t}");
                }
            }
        }
    }

    #[test]
    fn rho_identities() {
        for t in TYPES {
            let rs = rs(t);
            for i in 0..rs.rank() {
                assert_eq!(rs.rho().coords()[i], q(1));
            }
            let sum = rs
                .positive_roots()
                .iter()
                .fold(Weight::zero(rs.rank()), |acc, r| &acc + &r.weight_coords);
            assert_eq!(sum, rs.rho().scale(&q(2)), "{t}");
        }
    }

    #[test]
    fn coordinate_consistency() {
        for t in TYPES {
            let rs = rs(t);
            for r in rs.positive_roots() {
                let back = rs.to_simple_root_coords(&r.weight_coords);
                let want: Vec<Q> = r.simple_coords.iter().map(|&c| q(c)).collect();
                assert_eq!(back, want, "{t}");
                assert_eq!(rs.from_simple_root_coords(&r.simple_coords), r.weight_coords);
                // <beta, beta^vee> = 2
                assert_eq!(r.pair_coroot(&r.weight_coords), q(2), "{t}");
            }
        }
    }

    #[test]
    fn serde_weight_roundtrip() {
        let w = Weight::new(vec![q_frac(1, 2), q(-3)]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"["1/2","-3"]"#);
        let back: Weight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
