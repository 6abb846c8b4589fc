//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::rational::Q;

/// Exponent vector -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MultivariatePolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultivariatePolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    /// `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultivariatePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Substitutes `x_var -> form` where `form` is a polynomial.
    pub fn substitute(&self, var: usize, form: &Self) -> Self {
        let max_exp = self.terms.keys().map(|e| e[var]).max().unwrap_or(0);
        let mut powers = vec![Self::one(self.nvars)];
        for k in 1..=max_exp as usize {
            let next = &powers[k - 1] * form;
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var] as usize;
            rest[var] = 0;
            for (pe, pc) in &powers[k].terms {
                let mono: Vec<u32> = rest.iter().zip(pe).map(|(a, b)| a + b).collect();
                out.add_term(mono, c * pc);
            }
        }
        out
    }

    /// Exact division by a linear form with `form[pivot] != 0`. Returns `None`
    /// when the division leaves a remainder.
    pub fn div_linear(&self, form: &[Q], pivot: usize) -> Option<Self> {
        assert!(!form[pivot].is_zero());
        let lead = form[pivot].clone();
        // order: pivot exponent first, then the rest lexicographically
        let key = |e: &Vec<u32>| {
            let mut k = vec![e[pivot]];
            k.extend(e.iter().enumerate().filter(|&(i, _)| i != pivot).map(|(_, &x)| x));
            k
        };
        let mut rem: BTreeMap<Vec<u32>, (Vec<u32>, Q)> = self
            .terms
            .iter()
            .map(|(e, c)| (key(e), (e.clone(), c.clone())))
            .collect();
        let mut quotient = Self::zero(self.nvars);
        while let Some((_, (e, c))) = rem.pop_last() {
            if e[pivot] == 0 {
                return None;
            }
            let mut qe = e.clone();
            qe[pivot] -= 1;
            let qc = &c / &lead;
            // subtract qc * x^qe * form (the pivot term cancels the popped one)
            for (i, a) in form.iter().enumerate() {
                if i == pivot || a.is_zero() {
                    continue;
                }
                let mut m = qe.clone();
                m[i] += 1;
                let k = key(&m);
                let delta = -(&qc * a);
                match rem.entry(k) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert((m, delta));
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        o.get_mut().1 += delta;
                        if o.get().1.is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quotient.add_term(qe, qc);
        }
        Some(quotient)
    }
}

impl Add for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn add(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn sub(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;
    fn mul(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        let mut out = MultivariatePolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
