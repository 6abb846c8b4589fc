//! Schubert calculus on `G/B` and `G/P` through BGG divided differences.
//!
//! Polynomials live in the symmetric algebra of the weight space with
//! variables `x_i = omega_i`. The Schubert class `sigma_w` (cohomological
//! degree `2 l(w)`, the class of `closure(B^- w B/B)`) is represented by
//! `S_w = d_{w^-1 w0}(prod_{alpha>0} alpha / |W|)`. Structure constants are
//! read off with `c_{uv}^w = const. term of d_w(S_u S_v)`, and `G/P`
//! constants are the `G/B` constants at minimal coset representatives.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Limits, Result};
use crate::poly::MultivariatePolynomial;
use crate::rational::{q, Q};
use crate::rootsys::RootSystem;
use crate::weyl::{ParabolicSubset, WeylElement, WeylGroup};

type Poly = MultivariatePolynomial;

fn simple_root_form(rs: &RootSystem, i: usize) -> Vec<Q> {
    rs.cartan_matrix()[i].iter().map(|&a| q(a)).collect()
}

/// `s_i` acting on a polynomial function of the weight coordinates.
pub fn reflect_polynomial(rs: &RootSystem, i: usize, f: &Poly) -> Poly {
    // s_i(omega_i) = omega_i - alpha_i, other omega_j fixed
    let x_i = Poly::variable(rs.rank(), i);
    let image = &x_i - &Poly::linear(&simple_root_form(rs, i));
    f.substitute(i, &image)
}

/// `d_i f = (f - s_i f) / alpha_i`.
pub fn divided_difference(rs: &RootSystem, i: usize, f: &Poly) -> Result<Poly> {
    if i >= rs.rank() {
        return Err(Error::Config(format!(
            "simple index {} out of range for rank {}",
            i + 1,
            rs.rank()
        )));
    }
    let num = f - &reflect_polynomial(rs, i, f);
    num.div_linear(&simple_root_form(rs, i), i).ok_or_else(|| {
        Error::Consistency(format!(
            "divided difference d_{} left a remainder on {f}",
            i + 1
        ))
    })
}

/// A class in `H^*(G/P)` in the Schubert basis, keyed by Weyl element id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    parabolic: ParabolicSubset,
    coeffs: BTreeMap<usize, Q>,
}

impl CohClass {
    pub fn new(parabolic: ParabolicSubset, coeffs: BTreeMap<usize, Q>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        CohClass { parabolic, coeffs }
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Q> {
        &self.coeffs
    }

    pub fn coefficient(&self, id: usize) -> Q {
        self.coeffs.get(&id).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether all support elements share one length.
    pub fn is_homogeneous(&self, weyl: &WeylGroup) -> bool {
        let mut lens = self.coeffs.keys().map(|&id| weyl.element(id).length());
        match lens.next() {
            None => true,
            Some(l) => lens.all(|x| x == l),
        }
    }
}

/// Cup product data of one `G/P`, in local indices over `W^P`.
#[derive(Debug)]
pub struct ParabolicRing {
    parabolic: ParabolicSubset,
    reps: Vec<usize>,
    local: HashMap<usize, usize>,
    lengths: Vec<usize>,
    dim: usize,
    top: usize,
    dual: Vec<usize>,
    table: HashMap<(usize, usize), Vec<(usize, u64)>>,
}

impl ParabolicRing {
    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    /// Weyl ids of `W^P`, ascending.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn local_index(&self, id: usize) -> Option<usize> {
        self.local.get(&id).copied()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Length of the representative at a local index (= cohomological
    /// degree / 2 of its class).
    pub fn length(&self, a: usize) -> usize {
        self.lengths[a]
    }

    /// `dim G/P`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Local index of the point class.
    pub fn top(&self) -> usize {
        self.top
    }

    /// Local index of the Poincare dual basis element.
    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    /// `sigma_a * sigma_b` as `(local index, coefficient)` pairs.
    pub fn mul(&self, a: usize, b: usize) -> &[(usize, u64)] {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.table.get(&key).map_or(&[], Vec::as_slice)
    }

    /// Multiplies a sparse class by a basis element.
    pub fn mul_class(&self, class: &BTreeMap<usize, u64>, b: usize) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (&a, &c) in class {
            for &(w, k) in self.mul(a, b) {
                *out.entry(w).or_insert(0) += c * k;
            }
        }
        out
    }

    /// Coefficient of the point class in the full iterated product.
    pub fn point_coefficient(&self, tuple: &[usize]) -> u64 {
        let total: usize = tuple.iter().map(|&a| self.lengths[a]).sum();
        if total != self.dim || tuple.is_empty() {
            return 0;
        }
        let mut class = BTreeMap::from([(tuple[0], 1u64)]);
        for &b in &tuple[1..] {
            class = self.mul_class(&class, b);
            if class.is_empty() {
                return 0;
            }
        }
        class.get(&self.top).copied().unwrap_or(0)
    }
}

pub struct SchubertCalculus {
    weyl: Arc<WeylGroup>,
    top: Poly,
    reps: Vec<OnceLock<Poly>>,
    products: Mutex<HashMap<(usize, usize), Arc<Vec<(usize, u64)>>>>,
    rings: Mutex<HashMap<ParabolicSubset, Arc<ParabolicRing>>>,
}

impl std::fmt::Debug for SchubertCalculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SchubertCalculus")
            .field("type", &self.weyl.root_system().cartan_type().to_string())
            .finish()
    }
}

impl SchubertCalculus {
    pub fn new(weyl: Arc<WeylGroup>, limits: &Limits) -> Result<Self> {
        if weyl.order() > limits.max_schubert_order {
            return Err(Error::Budget(format!(
                "Weyl group of order {} exceeds the Schubert calculus cap of {}",
                weyl.order(),
                limits.max_schubert_order
            )));
        }
        let rs = weyl.root_system();
        let r = rs.rank();
        let mut top = Poly::one(r);
        for root in rs.positive_roots() {
            let form: Vec<Q> = root.weight_coords.coords().to_vec();
            top = &top * &Poly::linear(&form);
        }
        let top = top.scale(&(Q::one() / q(weyl.order() as i64)));
        let reps = (0..weyl.order()).map(|_| OnceLock::new()).collect();
        Ok(SchubertCalculus {
            weyl,
            top,
            reps,
            products: Mutex::new(HashMap::new()),
            rings: Mutex::new(HashMap::new()),
        })
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn weyl_arc(&self) -> &Arc<WeylGroup> {
        &self.weyl
    }

    pub fn root_system(&self) -> &RootSystem {
        self.weyl.root_system()
    }

    /// The BGG representative `S_w`.
    pub fn schubert_representative(&self, w: &WeylElement) -> Result<&Poly> {
        self.weyl.invert(w)?;
        self.representative_id(w.id())
    }

    fn representative_id(&self, id: usize) -> Result<&Poly> {
        if let Some(p) = self.reps[id].get() {
            return Ok(p);
        }
        let w = &self.weyl;
        let value = if id == w.longest().id() {
            self.top.clone()
        } else {
            let len = w.element(id).length();
            let j = (0..w.rank())
                .find(|&j| w.element(w.right_mul(id, j)).length() > len)
                .expect("only the longest element has no ascent");
            let up = self.representative_id(w.right_mul(id, j))?;
            divided_difference(w.root_system(), j, up)?
        };
        let _ = self.reps[id].set(value);
        Ok(self.reps[id].get().unwrap())
    }

    /// `d_w f` for each target id, reusing shared word suffixes.
    fn extract(&self, f: &Poly, targets: &[usize]) -> Result<Vec<(usize, Q)>> {
        let w = &self.weyl;
        let rs = w.root_system();
        let mut memo: HashMap<usize, Poly> = HashMap::from([(0, f.clone())]);
        let mut out = Vec::new();
        for &t in targets {
            let word = w.element(t).reduced_word();
            // suffix ids: suffixes[j] = element of word[j..]
            let mut suffixes = vec![0usize; word.len() + 1];
            for j in (0..word.len()).rev() {
                suffixes[j] = w.left_mul(suffixes[j + 1], word[j]);
            }
            for j in (0..word.len()).rev() {
                if memo.contains_key(&suffixes[j]) {
                    continue;
                }
                let below = &memo[&suffixes[j + 1]];
                let g = if below.is_zero() {
                    below.clone()
                } else {
                    divided_difference(rs, word[j], below)?
                };
                memo.insert(suffixes[j], g);
            }
            out.push((t, memo[&t].constant_term()));
        }
        Ok(out)
    }

    /// Full `G/B` expansion of `sigma_u sigma_v` as (id, coefficient).
    pub fn product_ids(&self, u: usize, v: usize) -> Result<Arc<Vec<(usize, u64)>>> {
        let key = if u <= v { (u, v) } else { (v, u) };
        if let Some(hit) = self.products.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let w = &self.weyl;
        let deg = w.element(u).length() + w.element(v).length();
        let targets: Vec<usize> = w
            .elements()
            .iter()
            .filter(|e| e.length() == deg)
            .map(WeylElement::id)
            .collect();
        let f = self.representative_id(u)? * self.representative_id(v)?;
        let mut expansion = Vec::new();
        for (t, c) in self.extract(&f, &targets)? {
            if c.is_zero() {
                continue;
            }
            let k = integral_nonnegative(&c).ok_or_else(|| {
                Error::Consistency(format!(
                    "structure constant c_{{{},{}}}^{{{}}} = {c} is not a non-negative integer",
                    w.element(u),
                    w.element(v),
                    w.element(t)
                ))
            })?;
            expansion.push((t, k));
        }
        let expansion = Arc::new(expansion);
        self.products.lock().unwrap().insert(key, expansion.clone());
        Ok(expansion)
    }

    fn check_rep(&self, p: &ParabolicSubset, u: &WeylElement) -> Result<()> {
        self.weyl.invert(u)?;
        if p.rank() != self.weyl.rank() {
            return Err(Error::Usage(format!("{p} has the wrong rank")));
        }
        if !self.weyl.is_min_coset_rep(u.id(), p) {
            return Err(Error::Usage(format!(
                "{u} is not a minimal coset representative for {p}"
            )));
        }
        Ok(())
    }

    /// `sigma_u ⌣ sigma_v` in `H^*(G/P)`.
    pub fn cup_expand(&self, p: &ParabolicSubset, u: &WeylElement, v: &WeylElement) -> Result<CohClass> {
        self.check_rep(p, u)?;
        self.check_rep(p, v)?;
        let mut coeffs = BTreeMap::new();
        for &(t, c) in self.product_ids(u.id(), v.id())?.iter() {
            if !self.weyl.is_min_coset_rep(t, p) {
                return Err(Error::Consistency(format!(
                    "product of {u} and {v} leaves the span of W^P for {p}"
                )));
            }
            coeffs.insert(t, q(c as i64));
        }
        Ok(CohClass::new(p.clone(), coeffs))
    }

    /// Chevalley's rule for `sigma_{s_i} ⌣ sigma_v` on `G/B`, evaluated
    /// directly from reflections, independent of the polynomial model.
    pub fn chevalley_multiply(&self, i: usize, v: &WeylElement) -> Result<CohClass> {
        let w = &self.weyl;
        w.invert(v)?;
        if i >= w.rank() {
            return Err(Error::Config(format!("simple index {} out of range", i + 1)));
        }
        let mut coeffs: BTreeMap<usize, Q> = BTreeMap::new();
        for (b, root) in w.root_system().positive_roots().iter().enumerate() {
            let t = w.compose_ids(v.id(), w.reflection(b));
            if w.element(t).length() == v.length() + 1 {
                *coeffs.entry(t).or_insert_with(Q::zero) += q(root.coroot_coords[i]);
            }
        }
        Ok(CohClass::new(ParabolicSubset::borel(w.rank()), coeffs))
    }

    /// Cached cup product data for `G/P`.
    pub fn ring(&self, p: &ParabolicSubset) -> Result<Arc<ParabolicRing>> {
        if p.rank() != self.weyl.rank() {
            return Err(Error::Usage(format!("{p} has the wrong rank")));
        }
        if let Some(r) = self.rings.lock().unwrap().get(p) {
            return Ok(r.clone());
        }
        let w = &self.weyl;
        let reps: Vec<usize> = w.min_coset_reps(p).iter().map(|e| e.id()).collect();
        let local: HashMap<usize, usize> = reps.iter().enumerate().map(|(a, &id)| (id, a)).collect();
        let lengths: Vec<usize> = reps.iter().map(|&id| w.element(id).length()).collect();
        let dim = w.flag_dimension(p);
        let top = lengths.iter().position(|&l| l == dim).ok_or_else(|| {
            Error::Consistency(format!("no representative of length dim G/P for {p}"))
        })?;
        let w0 = w.longest().id();
        let mut dual = Vec::with_capacity(reps.len());
        for &id in &reps {
            let flipped = w.element(w.compose_ids(w0, id));
            dual.push(local[&w.project_to_coset(flipped, p)?.id()]);
        }
        let pairs: Vec<(usize, usize)> = (0..reps.len())
            .flat_map(|a| (a..reps.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| lengths[a] + lengths[b] <= dim)
            .collect();
        let products: Vec<((usize, usize), Vec<(usize, u64)>)> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let prod = self.product_ids(reps[a], reps[b])?;
                let mut out = Vec::with_capacity(prod.len());
                for &(t, c) in prod.iter() {
                    let Some(&lt) = local.get(&t) else {
                        return Err(Error::Consistency(format!(
                            "product of {} and {} leaves the span of W^P for {p}",
                            w.element(reps[a]),
                            w.element(reps[b])
                        )));
                    };
                    out.push((lt, c));
                }
                Ok(((a, b), out))
            })
            .collect::<Result<_>>()?;
        let ring = Arc::new(ParabolicRing {
            parabolic: p.clone(),
            reps,
            local,
            lengths,
            dim,
            top,
            dual,
            table: products.into_iter().collect(),
        });
        self.rings.lock().unwrap().insert(p.clone(), ring.clone());
        Ok(ring)
    }

    /// Coefficient of the point class in `sigma_{w_0} ⌣ ... ⌣ sigma_{w_s}`.
    /// Zero unless the lengths add up to `dim G/P`.
    pub fn multi_point_coefficient(&self, p: &ParabolicSubset, tuple: &[&WeylElement]) -> Result<u64> {
        for u in tuple {
            self.check_rep(p, u)?;
        }
        let ring = self.ring(p)?;
        let local: Vec<usize> = tuple.iter().map(|u| ring.local[&u.id()]).collect();
        Ok(ring.point_coefficient(&local))
    }

    pub fn point_class(&self, p: &ParabolicSubset) -> Result<CohClass> {
        let ring = self.ring(p)?;
        Ok(CohClass::new(
            p.clone(),
            BTreeMap::from([(ring.reps[ring.top], Q::one())]),
        ))
    }

    /// The Poincare dual `v` of `u`: the unique `v` in `W^P` with
    /// `sigma_u ⌣ sigma_v = [pt]`.
    pub fn dual(&self, p: &ParabolicSubset, u: &WeylElement) -> Result<&WeylElement> {
        self.check_rep(p, u)?;
        let ring = self.ring(p)?;
        Ok(self.weyl.element(ring.reps[ring.dual[ring.local[&u.id()]]]))
    }
}

fn integral_nonnegative(c: &Q) -> Option<u64> {
    if c.is_integer() && !c.is_negative() {
        c.to_integer().to_u64()
    } else {
        None
    }
}
