//! Exact matrices and the evaluation homomorphism from the symbolic side to
//! matrix invariants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::NCPoly;
use crate::limits::{self, Limits};
use crate::mpoly::MPoly;
use crate::scalar::{self, format_rational, Scalar};
use crate::sigma::{SigmaGenerator, SigmaPoly};
use crate::word::{write_variable, Word};

/// Square matrix over a commutative scalar domain, row-major.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<R> {
    n: usize,
    entries: Vec<R>,
}

impl<R: Scalar> ExactMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![R::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    /// Matrix unit `e_{i,j}` (0-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = R::one();
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("matrix rows must form a square".into()));
        }
        Ok(ExactMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.entries.chunks(self.n.max(1)).map(<[R]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = R::zero();
            for k in 0..n {
                acc = acc + &(self[(i, k)].clone() * &other[(k, j)]);
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        ExactMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        ExactMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a.clone() * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    fn mul_vec(&self, v: &[R]) -> Vec<R> {
        (0..self.n)
            .map(|i| {
                let mut acc = R::zero();
                for (k, x) in v.iter().enumerate() {
                    acc = acc + &(self[(i, k)].clone() * x);
                }
                acc
            })
            .collect()
    }

    /// Principal submatrix on rows and columns `from..n`.
    fn trailing(&self, from: usize) -> Self {
        Self::from_fn(self.n - from, |i, j| self[(i + from, j + from)].clone())
    }

    /// Evaluates a univariate polynomial (ascending coefficients) at this matrix by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[R]) -> Self {
        let mut acc = Self::zeros(self.n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::identity(self.n).scale(c));
        }
        acc
    }
}

impl ExactMatrix<BigRational> {
    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let da = &factor * &a[col][j];
                    let di = &factor * &inv[col][j];
                    a[r][j] -= da;
                    inv[r][j] -= di;
                }
            }
        }
        ExactMatrix::from_rows(inv).ok()
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar::rat(x)).collect())
                .collect(),
        )
    }
}

impl<R> Index<(usize, usize)> for ExactMatrix<R> {
    type Output = R;

    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.entries[i * self.n + j]
    }
}

impl<R> IndexMut<(usize, usize)> for ExactMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.entries[i * self.n + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for ExactMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = self.entries.chunks(self.n.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl fmt::Display for ExactMatrix<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n.max(1)).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Rational matrices serialize as nested arrays of `"p/q"` strings.
impl Serialize for ExactMatrix<BigRational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix<BigRational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed: Option<Vec<Vec<BigRational>>> = rows
            .iter()
            .map(|r| r.iter().map(|x| scalar::parse_rational(x)).collect())
            .collect();
        let parsed = parsed.ok_or_else(|| D::Error::custom("bad rational entry"))?;
        ExactMatrix::from_rows(parsed).map_err(D::Error::custom)
    }
}

/// Coefficients `c_0 = 1, c_1, ..., c_n` of `det(t - M) = sum_k c_k t^{n-k}`.
///
/// Berkowitz's algorithm: peel off the first row and column repeatedly and
/// multiply the Toeplitz matrices built from `a`, `R C`, `R A C`, ...; no division.
pub fn char_poly<R: Scalar>(m: &ExactMatrix<R>) -> Vec<R> {
    let n = m.size();
    if n == 0 {
        return vec![R::one()];
    }
    let mut poly = vec![R::one(), -m[(n - 1, n - 1)].clone()];
    for k in (0..n - 1).rev() {
        let s = n - k - 1;
        let sub = m.trailing(k + 1);
        let row: Vec<R> = (k + 1..n).map(|j| m[(k, j)].clone()).collect();
        let mut v: Vec<R> = (k + 1..n).map(|i| m[(i, k)].clone()).collect();
        let mut col = Vec::with_capacity(s + 2);
        col.push(R::one());
        col.push(-m[(k, k)].clone());
        for l in 0..s {
            let mut dot = R::zero();
            for (r, x) in row.iter().zip(&v) {
                dot = dot + &(r.clone() * x);
            }
            col.push(-dot);
            if l + 1 < s {
                v = sub.mul_vec(&v);
            }
        }
        let next: Vec<R> = (0..s + 2)
            .map(|i| {
                let mut acc = R::zero();
                for (j, old) in poly.iter().enumerate().take(i.min(s) + 1) {
                    acc = acc + &(col[i - j].clone() * old);
                }
                acc
            })
            .collect();
        poly = next;
    }
    poly
}

/// `σ_1, ..., σ_n` with `det(t - M) = t^n + sum_i (-1)^i σ_i t^{n-i}`.
pub fn char_coeffs<R: Scalar>(m: &ExactMatrix<R>) -> Vec<R> {
    char_poly(m)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| if i % 2 == 1 { -c } else { c })
        .collect()
}

/// Matrices for the variables and scalars for the parameters.
#[derive(Debug, Clone)]
pub struct Assignment<R> {
    size: usize,
    matrices: BTreeMap<u32, ExactMatrix<R>>,
    params: BTreeMap<usize, R>,
}

impl<R: Scalar> Assignment<R> {
    pub fn new(size: usize) -> Self {
        Assignment {
            size,
            matrices: BTreeMap::new(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_matrices(matrices: impl IntoIterator<Item = ExactMatrix<R>>) -> Result<Self> {
        let matrices: Vec<_> = matrices.into_iter().collect();
        let size = matrices.first().map_or(0, ExactMatrix::size);
        let mut asg = Assignment::new(size);
        for (v, m) in matrices.into_iter().enumerate() {
            asg.set_matrix(v as u32, m)?;
        }
        Ok(asg)
    }

    pub fn set_matrix(&mut self, var: u32, m: ExactMatrix<R>) -> Result<()> {
        if m.size() != self.size {
            return Err(Error::ShapeMismatch(format!(
                "matrix for x{var} is {0}x{0}, expected {1}x{1}",
                m.size(),
                self.size
            )));
        }
        self.matrices.insert(var, m);
        Ok(())
    }

    pub fn set_param(&mut self, p: usize, value: R) {
        self.params.insert(p, value);
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrix(&self, var: u32) -> Result<&ExactMatrix<R>> {
        self.matrices.get(&var).ok_or(Error::UnassignedVariable(var))
    }

    pub fn param(&self, p: usize) -> Result<&R> {
        self.params.get(&p).ok_or(Error::UnassignedParameter(p))
    }

    /// Left-to-right product along the word; the empty word gives the identity.
    pub fn word_matrix(&self, w: &Word) -> Result<ExactMatrix<R>> {
        let mut acc: Option<ExactMatrix<R>> = None;
        for &v in w.letters() {
            let m = self.matrix(v)?;
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => a.mul(m),
            });
        }
        Ok(acc.unwrap_or_else(|| ExactMatrix::identity(self.size)))
    }
}

fn eval_sigma_cached<R: Scalar>(p: &SigmaPoly, asg: &Assignment<R>, cache: &mut HashMap<Word, Vec<R>>) -> Result<R> {
    p.eval(
        |g: &SigmaGenerator| {
            if !cache.contains_key(g.word()) {
                let coeffs = char_coeffs(&asg.word_matrix(g.word())?);
                cache.insert(g.word().clone(), coeffs);
            }
            let coeffs = &cache[g.word()];
            Ok(coeffs.get(g.index() as usize - 1).cloned().unwrap_or_else(R::zero))
        },
        |p| asg.param(p).cloned(),
    )
}

/// Image of a σ-polynomial: `σ_i(w)` goes to the `i`-th characteristic coefficient
/// of the matrix product along `w`.
pub fn eval_sigma_poly<R: Scalar>(p: &SigmaPoly, asg: &Assignment<R>) -> Result<R> {
    eval_sigma_cached(p, asg, &mut HashMap::new())
}

pub fn eval_nc_poly<R: Scalar>(f: &NCPoly, asg: &Assignment<R>) -> Result<ExactMatrix<R>> {
    let mut cache = HashMap::new();
    let mut acc = ExactMatrix::zeros(asg.size());
    for (w, c) in f.terms() {
        let scalar = eval_sigma_cached(c, asg, &mut cache)?;
        acc = acc.add(&asg.word_matrix(w)?.scale(&scalar));
    }
    Ok(acc)
}

/// `count` matrices of size `n` whose entries are distinct indeterminates; entry
/// `(h, k)` of matrix `i` is indeterminate `i*n*n + h*n + k`.
pub fn generic_matrices(n: usize, count: usize) -> Result<Vec<ExactMatrix<MPoly>>> {
    limits::check("generic indeterminates", count * n * n, Limits::current().max_generic)?;
    Ok((0..count)
        .map(|i| ExactMatrix::from_fn(n, |h, k| MPoly::var(i * n * n + h * n + k)))
        .collect())
}

/// Expression whose vanishing is to be verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Identity {
    Sigma(SigmaPoly),
    Nc(NCPoly),
}

impl Identity {
    fn num_vars(&self) -> usize {
        let max = match self {
            Identity::Sigma(p) => p.max_variable(),
            Identity::Nc(f) => f.max_variable(),
        };
        max.map_or(0, |v| v as usize + 1)
    }

    fn num_params(&self) -> usize {
        match self {
            Identity::Sigma(p) => p.num_params(),
            Identity::Nc(f) => f.num_params(),
        }
    }

    /// Total degree in the matrix entries (parameters included).
    pub fn degree(&self) -> usize {
        fn sigma_degree(p: &SigmaPoly) -> usize {
            p.terms()
                .map(|(k, _)| {
                    let t: u32 = k.tvars.iter().sum();
                    let g: usize = k.mono.iter().map(|(g, e)| g.weight() * *e as usize).sum();
                    t as usize + g
                })
                .max()
                .unwrap_or(0)
        }
        match self {
            Identity::Sigma(p) => sigma_degree(p),
            Identity::Nc(f) => f.terms().map(|(w, c)| w.len() + sigma_degree(c)).max().unwrap_or(0),
        }
    }
}

impl From<SigmaPoly> for Identity {
    fn from(p: SigmaPoly) -> Self {
        Identity::Sigma(p)
    }
}

impl From<NCPoly> for Identity {
    fn from(f: NCPoly) -> Self {
        Identity::Nc(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    ExactGeneric,
    Random {
        trials: usize,
        seed: u64,
        bound: i64,
    },
    /// Exact on generic matrices when `n <= 2` and degree `<= 6`, random otherwise.
    Auto {
        trials: usize,
        seed: u64,
        bound: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsExact,
    HoldsRandomized,
    Fails,
}

/// Integer assignment on which an identity does not vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub params: Vec<i64>,
    /// Nonzero value of the expression at the witness.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status != Status::Fails
    }
}

fn variable_name(v: u32) -> String {
    let mut s = String::new();
    write_variable(&mut s, v).expect("write to string");
    s
}

/// Per-trial generator: stream `trial` of the ChaCha8 generator seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn random_integer_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

struct IntegerPoint {
    matrices: Vec<Vec<Vec<i64>>>,
    params: Vec<i64>,
}

impl IntegerPoint {
    fn random(rng: &mut impl Rng, n: usize, vars: usize, params: usize, bound: i64) -> Self {
        IntegerPoint {
            matrices: (0..vars).map(|_| random_integer_matrix(rng, n, bound)).collect(),
            params: (0..params).map(|_| rng.gen_range(-bound..=bound)).collect(),
        }
    }

    fn assignment(&self, n: usize) -> Assignment<BigRational> {
        let mut asg = Assignment::new(n);
        for (v, m) in self.matrices.iter().enumerate() {
            asg.set_matrix(v as u32, ExactMatrix::from_integers(m).expect("square"))
                .expect("uniform size");
        }
        for (p, &x) in self.params.iter().enumerate() {
            asg.set_param(p, scalar::rat(x));
        }
        asg
    }

    fn witness(self, trial: Option<usize>, value: String) -> Witness {
        Witness {
            trial,
            matrices: self
                .matrices
                .into_iter()
                .enumerate()
                .map(|(v, m)| (variable_name(v as u32), m))
                .collect(),
            params: self.params,
            value,
        }
    }
}

/// Residual of the identity at a rational point, rendered; `None` when it vanishes.
fn residual(expr: &Identity, asg: &Assignment<BigRational>) -> Result<Option<String>> {
    Ok(match expr {
        Identity::Sigma(p) => {
            let v = eval_sigma_poly(p, asg)?;
            (!v.is_zero()).then(|| format_rational(&v))
        }
        Identity::Nc(f) => {
            let m = eval_nc_poly(f, asg)?;
            (!m.is_zero()).then(|| m.to_string())
        }
    })
}

fn verify_random(expr: &Identity, n: usize, trials: usize, seed: u64, bound: i64) -> Result<Verdict> {
    let (vars, params) = (expr.num_vars(), expr.num_params());
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let point = IntegerPoint::random(&mut rng, n, vars, params, bound);
        if let Some(value) = residual(expr, &point.assignment(n))? {
            return Ok(Verdict {
                status: Status::Fails,
                trials: Some(trial + 1),
                seed: Some(seed),
                witness: Some(point.witness(Some(trial), value)),
                caveat: None,
            });
        }
    }
    Ok(Verdict {
        status: Status::HoldsRandomized,
        trials: Some(trials),
        seed: Some(seed),
        witness: None,
        caveat: None,
    })
}

fn verify_generic(expr: &Identity, n: usize, seed: u64, bound: i64) -> Result<Verdict> {
    let (vars, params) = (expr.num_vars(), expr.num_params());
    let offset = vars * n * n;
    limits::check("generic indeterminates", offset + params, Limits::current().max_generic)?;
    let mut asg = Assignment::with_matrices(generic_matrices(n, vars)?)?;
    if vars == 0 {
        asg = Assignment::new(n);
    }
    for p in 0..params {
        asg.set_param(p, MPoly::var(offset + p));
    }
    let vanishes = match expr {
        Identity::Sigma(p) => eval_sigma_poly(p, &asg)?.is_zero(),
        Identity::Nc(f) => eval_nc_poly(f, &asg)?.is_zero(),
    };
    if vanishes {
        return Ok(Verdict {
            status: Status::HoldsExact,
            trials: None,
            seed: None,
            witness: None,
            caveat: None,
        });
    }
    // a nonzero polynomial is nonzero at most integer points; look for one
    for trial in 0..10_000 {
        let mut rng = trial_rng(seed, trial);
        let point = IntegerPoint::random(&mut rng, n, vars, params, bound.max(1));
        if let Some(value) = residual(expr, &point.assignment(n))? {
            return Ok(Verdict {
                status: Status::Fails,
                trials: None,
                seed: Some(seed),
                witness: Some(point.witness(None, value)),
                caveat: None,
            });
        }
    }
    Ok(Verdict {
        status: Status::Fails,
        trials: None,
        seed: Some(seed),
        witness: None,
        caveat: Some("nonzero on generic matrices; no integer witness found".into()),
    })
}

/// Checks that `expr` vanishes on `n x n` matrices, either as a polynomial identity
/// on generic matrices or on seeded random integer matrices.
pub fn verify_identity(expr: &Identity, n: usize, mode: VerifyMode) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    match mode {
        VerifyMode::ExactGeneric => verify_generic(expr, n, 0, 10),
        VerifyMode::Random { trials, seed, bound } => verify_random(expr, n, trials, seed, bound),
        VerifyMode::Auto { trials, seed, bound } => {
            if n <= 2 && expr.degree() <= 6 {
                verify_generic(expr, n, seed, bound)
            } else {
                let mut v = verify_random(expr, n, trials, seed, bound)?;
                v.caveat = Some(format!(
                    "n = {n}, degree {} is beyond the exact range; checked on {trials} random integer assignments",
                    expr.degree()
                ));
                Ok(v)
            }
        }
    }
}

/// Converts an integer-valued rational matrix back to machine integers.
pub fn to_integer_rows(m: &ExactMatrix<BigRational>) -> Option<Vec<Vec<i64>>> {
    m.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                .collect()
        })
        .collect()
}

/// The `n`-cycle permutation matrix sending basis vector `i` to `i+1 mod n`.
pub fn cycle_matrix<R: Scalar>(n: usize) -> ExactMatrix<R> {
    ExactMatrix::from_fn(n, |i, j| if i == (j + 1) % n { R::one() } else { R::zero() })
}

pub fn integer(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::ch_polynomial;
    use crate::scalar::rat;

    type Q = BigRational;

    fn q(rows: &[Vec<i64>]) -> ExactMatrix<Q> {
        ExactMatrix::from_integers(rows).unwrap()
    }

    #[test]
    fn char_coeffs_examples() {
        assert_eq!(char_coeffs(&ExactMatrix::<Q>::identity(2)), vec![rat(2), rat(1)]);
        for n in 1..=4 {
            let e12 = ExactMatrix::<Q>::unit(n.max(2), 0, 1);
            assert!(char_coeffs(&e12).iter().all(Zero::is_zero));
        }
        assert_eq!(char_coeffs(&cycle_matrix::<Q>(3)), vec![rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn char_coeffs_against_cofactor_determinant() {
        let m = q(&[vec![2, -1, 3], vec![0, 4, 1], vec![5, -2, 7]]);
        let c = char_coeffs(&m);
        assert_eq!(c[0], rat(13));
        // sum of principal 2x2 minors: (8-0) + (14-15) + (28+2) = 37
        assert_eq!(c[1], rat(37));
        // det by cofactors: 2(28+2) - (-1)(0-5) + 3(0-20) = 60 - 5 - 60 = -5
        assert_eq!(c[2], rat(-5));
    }

    #[test]
    fn generic_two_by_two_determinant() {
        let g = generic_matrices(2, 1).unwrap();
        let det = char_coeffs(&g[0])[1].clone();
        let expected = MPoly::var(0) * MPoly::var(3) - MPoly::var(1) * MPoly::var(2);
        assert_eq!(det, expected);
        assert_eq!(generic_matrices(2, 2).unwrap().len(), 2);
        assert_eq!(generic_matrices(1, 3).unwrap()[2][(0, 0)], MPoly::var(2));
        assert!(generic_matrices(10, 10).unwrap_err().is_resource_cap());
    }

    #[test]
    fn sigma_evaluation_examples() {
        let mut asg = Assignment::new(2);
        asg.set_matrix(0, q(&[vec![1, 2], vec![3, 4]])).unwrap();
        asg.set_matrix(1, q(&[vec![0, 1], vec![-1, 5]])).unwrap();
        let bbd = &SigmaPoly::sigma(2, "ab") - &(&SigmaPoly::sigma(2, "a") * &SigmaPoly::sigma(2, "b"));
        assert!(eval_sigma_poly(&bbd, &asg).unwrap().is_zero());
        assert_eq!(eval_sigma_poly(&SigmaPoly::integer(5), &asg).unwrap(), rat(5));

        let mut units = Assignment::<Q>::new(2);
        units.set_matrix(0, ExactMatrix::unit(2, 0, 0)).unwrap();
        assert_eq!(eval_sigma_poly(&SigmaPoly::sigma(1, "a"), &units).unwrap(), rat(1));
        assert_eq!(
            eval_sigma_poly(&SigmaPoly::sigma(1, "b"), &units),
            Err(Error::UnassignedVariable(1))
        );
        assert_eq!(
            eval_sigma_poly(&SigmaPoly::param(0), &units),
            Err(Error::UnassignedParameter(0))
        );
    }

    #[test]
    fn nc_evaluation_examples() {
        let a = q(&[vec![1, 2], vec![3, 4]]);
        let asg = Assignment::with_matrices([a.clone()]).unwrap();
        let x = NCPoly::var(0);
        assert_eq!(eval_nc_poly(&x, &asg).unwrap(), a);
        assert!(eval_nc_poly(&ch_polynomial(2, &x).unwrap(), &asg).unwrap().is_zero());
        let tr = NCPoly::constant(SigmaPoly::sigma(1, "a"));
        assert_eq!(
            eval_nc_poly(&tr, &asg).unwrap(),
            ExactMatrix::identity(2).scale(&rat(5))
        );
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let mut asg = Assignment::<Q>::new(2);
        assert!(asg.set_matrix(0, ExactMatrix::identity(3)).is_err());
        assert!(ExactMatrix::<Q>::from_rows(vec![vec![rat(1), rat(2)]]).is_err());
    }

    #[test]
    fn verification_examples() {
        let bbd = &SigmaPoly::sigma(2, "ab") - &(&SigmaPoly::sigma(2, "a") * &SigmaPoly::sigma(2, "b"));
        let v = verify_identity(&bbd.into(), 2, VerifyMode::ExactGeneric).unwrap();
        assert_eq!(v.status, Status::HoldsExact);

        let bad = &SigmaPoly::sigma(1, "ab") - &(&SigmaPoly::sigma(1, "a") * &SigmaPoly::sigma(1, "b"));
        let v = verify_identity(
            &bad.clone().into(),
            2,
            VerifyMode::Random {
                trials: 50,
                seed: 7,
                bound: 10,
            },
        )
        .unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(v.witness.is_some());

        // the elementary-matrix witness: tr(e12 e21) - tr(e12) tr(e21) = 1
        let asg = Assignment::with_matrices([ExactMatrix::<Q>::unit(2, 0, 1), ExactMatrix::unit(2, 1, 0)]).unwrap();
        assert_eq!(eval_sigma_poly(&bad, &asg).unwrap(), rat(1));

        let ch3 = ch_polynomial(3, &NCPoly::var(0)).unwrap();
        let v = verify_identity(
            &ch3.into(),
            3,
            VerifyMode::Random {
                trials: 100,
                seed: 1,
                bound: 10,
            },
        )
        .unwrap();
        assert_eq!(v.status, Status::HoldsRandomized);
        assert_eq!(v.trials, Some(100));
    }

    #[test]
    fn exact_failure_produces_integer_witness() {
        let bad = &SigmaPoly::sigma(1, "ab") - &(&SigmaPoly::sigma(1, "a") * &SigmaPoly::sigma(1, "b"));
        let v = verify_identity(&bad.into(), 2, VerifyMode::ExactGeneric).unwrap();
        assert_eq!(v.status, Status::Fails);
        let w = v.witness.unwrap();
        assert_eq!(w.matrices.len(), 2);
        assert!(w.matrices.contains_key("a"));
    }

    #[test]
    fn auto_mode_switches_to_random() {
        let ch3 = ch_polynomial(3, &NCPoly::var(0)).unwrap();
        let v = verify_identity(
            &ch3.into(),
            3,
            VerifyMode::Auto {
                trials: 10,
                seed: 3,
                bound: 5,
            },
        )
        .unwrap();
        assert_eq!(v.status, Status::HoldsRandomized);
        assert!(v.caveat.is_some());
        let ch2 = ch_polynomial(2, &NCPoly::var(0)).unwrap();
        let v = verify_identity(
            &ch2.into(),
            2,
            VerifyMode::Auto {
                trials: 10,
                seed: 3,
                bound: 5,
            },
        )
        .unwrap();
        assert_eq!(v.status, Status::HoldsExact);
    }

    #[test]
    fn verdict_json_is_deterministic() {
        let bad = &SigmaPoly::sigma(1, "ab") - &(&SigmaPoly::sigma(1, "a") * &SigmaPoly::sigma(1, "b"));
        let mode = VerifyMode::Random {
            trials: 50,
            seed: 7,
            bound: 10,
        };
        let a = serde_json::to_string(&verify_identity(&bad.clone().into(), 2, mode).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_identity(&bad.into(), 2, mode).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(r#"{"status":"fails","trials":"#));
    }

    #[test]
    fn inverse_and_horner() {
        let m = q(&[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(2));
        assert!(q(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
        let coeffs: Vec<Q> = char_poly(&m).into_iter().rev().collect();
        assert!(m.eval_poly(&coeffs).is_zero());
    }
}
