//! Split semisimple algebras `F(m; a) = ⊕ M_{m_i}(F)` carrying the norm
//! `N(r_1, ..., r_k) = ∏ det(r_i)^{a_i}` of degree `n = Σ a_i m_i`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{char_coeffs, char_poly, random_integer_matrix, ExactMatrix};
use crate::scalar::{self, format_rational};

/// Block sizes `m_i` with multiplicities `a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ShapeJson", into = "ShapeJson")]
pub struct BlockShape {
    blocks: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ShapeJson {
    blocks: Vec<(usize, usize)>,
}

impl TryFrom<ShapeJson> for BlockShape {
    type Error = Error;

    fn try_from(s: ShapeJson) -> Result<Self> {
        BlockShape::new(s.blocks)
    }
}

impl From<BlockShape> for ShapeJson {
    fn from(s: BlockShape) -> Self {
        ShapeJson { blocks: s.blocks }
    }
}

impl BlockShape {
    /// Blocks as `(m_i, a_i)`; all entries positive and at least one block.
    /// Since every summand of `n = Σ a_i m_i` is at least 1, there are at most `n` blocks.
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("a shape needs at least one block".into()));
        }
        if blocks.iter().any(|&(m, a)| m == 0 || a == 0) {
            return Err(Error::InvalidArgument(
                "block sizes and multiplicities must be positive".into(),
            ));
        }
        Ok(BlockShape { blocks })
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    /// `n = Σ a_i m_i`.
    pub fn degree(&self) -> usize {
        self.blocks.iter().map(|&(m, a)| m * a).sum()
    }

    /// A random shape of degree at most `max_degree`.
    pub fn random(rng: &mut impl Rng, max_degree: usize) -> Self {
        let target = rng.gen_range(1..=max_degree);
        let mut left = target;
        let mut blocks = Vec::new();
        while left > 0 {
            let m = rng.gen_range(1..=left);
            let a = rng.gen_range(1..=left / m);
            blocks.push((m, a));
            left -= m * a;
        }
        BlockShape { blocks }
    }

    fn check(&self, r: &BlockElement) -> Result<()> {
        if r.blocks.len() != self.blocks.len() {
            return Err(Error::ShapeMismatch(format!(
                "element has {} blocks, shape has {}",
                r.blocks.len(),
                self.blocks.len()
            )));
        }
        for (k, (b, &(m, _))) in r.blocks.iter().zip(&self.blocks).enumerate() {
            if b.size() != m {
                return Err(Error::ShapeMismatch(format!(
                    "block {k} is {0}x{0}, shape expects {m}x{m}",
                    b.size()
                )));
            }
        }
        Ok(())
    }
}

impl FromStr for BlockShape {
    type Err = Error;

    /// `"2:1,1:1"` is one 2x2 block with multiplicity 1 plus one 1x1 block with multiplicity 1.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad shape {s:?}; expected m:a,m:a,..."));
        let blocks = s
            .split(',')
            .map(|part| {
                let (m, a) = part.trim().split_once(':').ok_or_else(bad)?;
                Ok((
                    m.trim().parse().map_err(|_| bad())?,
                    a.trim().parse().map_err(|_| bad())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        BlockShape::new(blocks)
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(m, a)| format!("{m}:{a}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// One rational matrix per block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockElement {
    blocks: Vec<ExactMatrix<BigRational>>,
}

impl BlockElement {
    pub fn new(blocks: Vec<ExactMatrix<BigRational>>) -> Self {
        BlockElement { blocks }
    }

    pub fn blocks(&self) -> &[ExactMatrix<BigRational>] {
        &self.blocks
    }

    pub fn identity(shape: &BlockShape) -> Self {
        BlockElement {
            blocks: shape.blocks.iter().map(|&(m, _)| ExactMatrix::identity(m)).collect(),
        }
    }

    /// Blocks with integer entries uniform in `[-bound, bound]`.
    pub fn random(shape: &BlockShape, rng: &mut impl Rng, bound: i64) -> Self {
        BlockElement {
            blocks: shape
                .blocks
                .iter()
                .map(|&(m, _)| ExactMatrix::from_integers(&random_integer_matrix(rng, m, bound)).expect("square"))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BlockElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BlockElement {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }
}

/// Dense univariate polynomial over the rationals, ascending coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<BigRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn one() -> Self {
        UniPoly(vec![BigRational::one()])
    }

    /// `t - c`.
    pub fn linear(c: BigRational) -> Self {
        UniPoly::new(vec![-c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            f.write_str(match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            })?;
            first = false;
            if !mag.is_one() || k == 0 {
                f.write_str(&format_rational(&mag))?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

pub fn norm(shape: &BlockShape, r: &BlockElement) -> Result<BigRational> {
    shape.check(r)?;
    let mut acc = BigRational::one();
    for (b, &(m, a)) in r.blocks.iter().zip(&shape.blocks) {
        let det = char_coeffs(b)[m - 1].clone();
        acc *= scalar::pow(&det, a as u32);
    }
    Ok(acc)
}

/// `χ_r(t) = N(t - r) = ∏ det(t - r_i)^{a_i}`, monic of degree `n`.
pub fn char_poly_block(shape: &BlockShape, r: &BlockElement) -> Result<UniPoly> {
    shape.check(r)?;
    let mut acc = UniPoly::one();
    for (b, &(_, a)) in r.blocks.iter().zip(&shape.blocks) {
        let mut coeffs = char_poly(b);
        coeffs.reverse();
        acc = acc.mul(&UniPoly::new(coeffs).pow(a));
    }
    Ok(acc)
}

/// Whether `poly` annihilates every block of `r` (Horner evaluation per block).
pub fn annihilates(poly: &UniPoly, shape: &BlockShape, r: &BlockElement) -> Result<bool> {
    shape.check(r)?;
    Ok(r.blocks.iter().all(|b| b.eval_poly(poly.coeffs()).is_zero()))
}

/// Cayley-Hamilton for the block norm: `χ_r(r) = 0`.
pub fn ch_check(shape: &BlockShape, r: &BlockElement) -> Result<bool> {
    annihilates(&char_poly_block(shape, r)?, shape, r)
}

/// `σ_1, ..., σ_n` read off `χ_r(t) = t^n + Σ (-1)^i σ_i t^{n-i}`.
pub fn sigma_from_norm(shape: &BlockShape, r: &BlockElement) -> Result<Vec<BigRational>> {
    let chi = char_poly_block(shape, r)?;
    let n = shape.degree();
    Ok((1..=n)
        .map(|i| {
            let c = chi.coeffs()[n - i].clone();
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect())
}
