//! Sparse multivariate polynomials with rational coefficients, used as the
//! entries of generic matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::format_rational;

/// Exponent vector with trailing zeros removed.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exponents(a: &[u32], b: &[u32]) -> Exponents {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

impl MPoly {
    /// The indeterminate with index `v`.
    pub fn var(v: usize) -> Self {
        let mut e = vec![0; v + 1];
        e[v] = 1;
        MPoly {
            terms: BTreeMap::from([(e, BigRational::one())]),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn insert_add(&mut self, e: Exponents, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(trim(e)) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Evaluates at a point; indeterminates beyond `point` are treated as zero.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        'terms: for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match point.get(v) {
                    Some(x) => t *= crate::scalar::pow(x, k),
                    None => continue 'terms,
                }
            }
            acc += t;
        }
        acc
    }
}

impl From<BigRational> for MPoly {
    fn from(c: BigRational) -> Self {
        MPoly::constant(c)
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::constant(BigRational::one())
    }
}

impl<'a> Add<&'a MPoly> for MPoly {
    type Output = MPoly;

    fn add(mut self, rhs: &'a MPoly) -> MPoly {
        for (e, c) in &rhs.terms {
            self.insert_add(e.clone(), c.clone());
        }
        self
    }
}

impl Add for MPoly {
    type Output = MPoly;

    fn add(self, rhs: MPoly) -> MPoly {
        if self.terms.len() < rhs.terms.len() {
            rhs + &self
        } else {
            self + &rhs
        }
    }
}

impl<'a> Sub<&'a MPoly> for MPoly {
    type Output = MPoly;

    fn sub(mut self, rhs: &'a MPoly) -> MPoly {
        for (e, c) in &rhs.terms {
            self.insert_add(e.clone(), -c.clone());
        }
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;

    fn sub(self, rhs: MPoly) -> MPoly {
        self - &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;

    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<'a> Mul<&'a MPoly> for MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert_add(add_exponents(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;

    fn mul(self, rhs: MPoly) -> MPoly {
        self * &rhs
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&format_rational(c))?;
            for (v, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*z{v}")?,
                    _ => write!(f, "*z{v}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}
