//! The commutative ring generated by the symbols `σ_i(p)`, `p` a Lyndon word,
//! optionally truncated at level `n` (`σ_i = 0` for `i > n`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, format_rational, Scalar};
use crate::symfun::{binomial_rational, power_transform, EPoly};
use crate::word::{cyclic_normalize, is_lyndon, Word};

/// `σ_index(word)` with `word` Lyndon.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaGenerator {
    index: u32,
    word: Word,
}

impl SigmaGenerator {
    pub fn new(index: u32, word: Word) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidArgument("sigma index must be at least 1".into()));
        }
        if !is_lyndon(&word) {
            return Err(Error::InvalidArgument(format!("{word} is not a Lyndon word")));
        }
        Ok(SigmaGenerator { index, word })
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn weight(&self) -> usize {
        self.index as usize * self.word.len()
    }
}

/// Truncation level of the σ-ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truncation {
    Unbounded,
    Level(usize),
}

impl Truncation {
    pub fn level(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("truncation level must be at least 1".into()));
        }
        Ok(Truncation::Level(n))
    }

    pub fn bound(self) -> Option<usize> {
        match self {
            Truncation::Level(n) => Some(n),
            Truncation::Unbounded => None,
        }
    }

    /// Whether `σ_i` survives this truncation.
    pub fn keeps(self, i: u32) -> bool {
        self.bound().is_none_or(|n| i as usize <= n)
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Unbounded => f.write_str("unbounded"),
            Truncation::Level(n) => write!(f, "level {n}"),
        }
    }
}

/// Sorted `(generator, exponent)` pairs; the empty monomial is `1`.
pub type SigmaMonomial = Vec<(SigmaGenerator, u32)>;

fn mono_mul(a: &SigmaMonomial, b: &SigmaMonomial) -> SigmaMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn add_tvars(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Key of one term: exponents of the commutative parameters `t_1, t_2, ...`
/// (trailing zeros removed) and the σ-monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub tvars: Vec<u32>,
    pub mono: SigmaMonomial,
}

/// Element of the σ-ring, with optional parameter exponents per term.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct SigmaPoly {
    terms: BTreeMap<TermKey, BigRational>,
}

impl SigmaPoly {
    pub fn zero() -> Self {
        SigmaPoly::default()
    }

    pub fn one() -> Self {
        SigmaPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = SigmaPoly::zero();
        p.add_term(Vec::new(), Vec::new(), c);
        p
    }

    pub fn integer(c: i64) -> Self {
        SigmaPoly::constant(scalar::rat(c))
    }

    pub fn generator(g: SigmaGenerator) -> Self {
        let mut p = SigmaPoly::zero();
        p.add_term(Vec::new(), vec![(g, 1)], BigRational::one());
        p
    }

    /// Shorthand for `σ_i(w)`; panics unless `w` is Lyndon and `i >= 1`.
    pub fn sigma(i: u32, w: &str) -> Self {
        let word: Word = w.parse().expect("valid word");
        SigmaPoly::generator(SigmaGenerator::new(i, word).expect("Lyndon word"))
    }

    /// The parameter monomial `t^exponents` (0-based parameter indices).
    pub fn param_monomial(exponents: &[u32]) -> Self {
        let mut p = SigmaPoly::zero();
        p.add_term(exponents.to_vec(), Vec::new(), BigRational::one());
        p
    }

    /// The parameter `t_{k+1}`.
    pub fn param(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        SigmaPoly::param_monomial(&e)
    }

    pub fn add_term(&mut self, tvars: Vec<u32>, mono: SigmaMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = TermKey {
            tvars: trim(tvars),
            mono,
        };
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if this is a constant (no generators, no parameters).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                (k.tvars.is_empty() && k.mono.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn has_params(&self) -> bool {
        self.terms.keys().any(|k| !k.tvars.is_empty())
    }

    /// Number of parameters referenced (largest index + 1).
    pub fn num_params(&self) -> usize {
        self.terms.keys().map(|k| k.tvars.len()).max().unwrap_or(0)
    }

    pub fn generators(&self) -> impl Iterator<Item = &SigmaGenerator> {
        self.terms.keys().flat_map(|k| k.mono.iter().map(|(g, _)| g))
    }

    pub fn max_variable(&self) -> Option<u32> {
        self.generators().filter_map(|g| g.word.max_variable()).max()
    }

    pub fn scale(&self, c: &BigRational) -> SigmaPoly {
        if c.is_zero() {
            return SigmaPoly::zero();
        }
        SigmaPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SigmaPoly {
        let mut acc = SigmaPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `t^exponents`, as a parameter-free polynomial.
    pub fn coefficient(&self, exponents: &[u32]) -> SigmaPoly {
        let target = trim(exponents.to_vec());
        let mut out = SigmaPoly::zero();
        for (k, c) in &self.terms {
            if k.tvars == target {
                out.add_term(Vec::new(), k.mono.clone(), c.clone());
            }
        }
        out
    }

    /// Splits into parameter-free coefficients keyed by their parameter exponents.
    pub fn by_params(&self) -> BTreeMap<Vec<u32>, SigmaPoly> {
        let mut out: BTreeMap<Vec<u32>, SigmaPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.tvars.clone())
                .or_default()
                .add_term(Vec::new(), k.mono.clone(), c.clone());
        }
        out
    }

    /// Weight of each term: `sum exponent * index * length(word)`.
    pub fn term_weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms
            .keys()
            .map(|k| k.mono.iter().map(|(g, e)| *e as usize * g.weight()).sum::<usize>())
    }

    /// Multidegree of each term in the original variables.
    pub fn term_multidegrees(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.terms.keys().map(|k| {
            let mut deg: Vec<u32> = Vec::new();
            for (g, e) in &k.mono {
                for (v, d) in g.word.multidegree().into_iter().enumerate() {
                    if deg.len() <= v {
                        deg.resize(v + 1, 0);
                    }
                    deg[v] += d * g.index * e;
                }
            }
            trim(deg)
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.term_weights();
        let mut d = self.term_multidegrees();
        match (w.next(), d.next()) {
            (Some(w0), Some(d0)) => w.all(|x| x == w0) && d.all(|x| x == d0),
            _ => true,
        }
    }

    /// Replaces every generator through `f`, keeping coefficients and parameters.
    pub fn map_generators(&self, mut f: impl FnMut(&SigmaGenerator) -> Result<SigmaPoly>) -> Result<SigmaPoly> {
        let mut images: BTreeMap<SigmaGenerator, SigmaPoly> = BTreeMap::new();
        let mut out = SigmaPoly::zero();
        for (k, c) in &self.terms {
            let mut term = SigmaPoly::zero();
            term.add_term(k.tvars.clone(), Vec::new(), c.clone());
            for (g, e) in &k.mono {
                if !images.contains_key(g) {
                    images.insert(g.clone(), f(g)?);
                }
                term = &term * &images[g].pow(*e);
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates into a commutative scalar domain.
    pub fn eval<R: Scalar>(
        &self,
        mut generator: impl FnMut(&SigmaGenerator) -> Result<R>,
        mut param: impl FnMut(usize) -> Result<R>,
    ) -> Result<R> {
        let mut gen_values: BTreeMap<&SigmaGenerator, R> = BTreeMap::new();
        let mut param_values: BTreeMap<usize, R> = BTreeMap::new();
        let mut acc = R::zero();
        for (k, c) in &self.terms {
            let mut t = R::from(c.clone());
            for (p, &e) in k.tvars.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let std::collections::btree_map::Entry::Vacant(e) = param_values.entry(p) {
                    e.insert(param(p)?);
                }
                t = t * &scalar::pow(&param_values[&p], e);
            }
            for (g, e) in &k.mono {
                if !gen_values.contains_key(g) {
                    gen_values.insert(g, generator(g)?);
                }
                t = t * &scalar::pow(&gen_values[g], *e);
            }
            acc = acc + &t;
        }
        Ok(acc)
    }

    pub fn render(&self, style: Style) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            s.push_str(match (idx, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let bare = k.tvars.is_empty() && k.mono.is_empty();
            if !mag.is_one() || bare {
                s.push_str(&format_rational(&mag));
            }
            for (p, &e) in k.tvars.iter().enumerate() {
                match (e, style) {
                    (0, _) => {}
                    (1, _) => s.push_str(&format!("t{}", p + 1)),
                    (_, Style::Unicode) => s.push_str(&format!("t{}^{}", p + 1, e)),
                    (_, Style::Ascii) => {
                        for _ in 0..e {
                            s.push_str(&format!("t{}", p + 1));
                        }
                    }
                }
            }
            for (g, e) in &k.mono {
                let factor = match style {
                    Style::Unicode => format!("σ_{}({})", g.index, g.word),
                    Style::Ascii => format!("s{}({})", g.index, g.word),
                };
                match (e, style) {
                    (1, _) => s.push_str(&factor),
                    (_, Style::Unicode) => s.push_str(&format!("{factor}^{e}")),
                    (_, Style::Ascii) => {
                        for _ in 0..*e {
                            s.push_str(&factor);
                        }
                    }
                }
            }
        }
        s
    }
}

/// Output flavour for σ-symbols: `s2(ab)` or `σ_2(ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

impl fmt::Debug for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaPoly({})", self.render(Style::Unicode))
    }
}

impl<'a> Add<&'a SigmaPoly> for &'a SigmaPoly {
    type Output = SigmaPoly;

    fn add(self, rhs: &'a SigmaPoly) -> SigmaPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.tvars.clone(), k.mono.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SigmaPoly> for &'a SigmaPoly {
    type Output = SigmaPoly;

    fn sub(self, rhs: &'a SigmaPoly) -> SigmaPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.tvars.clone(), k.mono.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a SigmaPoly> for &'a SigmaPoly {
    type Output = SigmaPoly;

    fn mul(self, rhs: &'a SigmaPoly) -> SigmaPoly {
        let mut out = SigmaPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(add_tvars(&ka.tvars, &kb.tvars), mono_mul(&ka.mono, &kb.mono), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SigmaPoly {
    type Output = SigmaPoly;

    fn neg(self) -> SigmaPoly {
        self.scale(&-BigRational::one())
    }
}

impl Add for SigmaPoly {
    type Output = SigmaPoly;

    fn add(self, rhs: SigmaPoly) -> SigmaPoly {
        &self + &rhs
    }
}

impl Sub for SigmaPoly {
    type Output = SigmaPoly;

    fn sub(self, rhs: SigmaPoly) -> SigmaPoly {
        &self - &rhs
    }
}

impl Mul for SigmaPoly {
    type Output = SigmaPoly;

    fn mul(self, rhs: SigmaPoly) -> SigmaPoly {
        &self * &rhs
    }
}

impl Neg for SigmaPoly {
    type Output = SigmaPoly;

    fn neg(self) -> SigmaPoly {
        -&self
    }
}

#[derive(Clone, Serialize, Deserialize)]
struct GeneratorJson {
    i: u32,
    word: Word,
}

#[derive(Serialize, Deserialize)]
struct SigmaTermJson {
    #[serde(with = "crate::scalar::rational_string")]
    coeff: BigRational,
    tvars: Vec<u32>,
    generators: Vec<GeneratorJson>,
}

impl Serialize for SigmaPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<SigmaTermJson> = self
            .terms
            .iter()
            .map(|(k, c)| SigmaTermJson {
                coeff: c.clone(),
                tvars: k.tvars.clone(),
                generators: k
                    .mono
                    .iter()
                    .flat_map(|(g, e)| {
                        std::iter::repeat_n(
                            GeneratorJson {
                                i: g.index,
                                word: g.word.clone(),
                            },
                            *e as usize,
                        )
                    })
                    .collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SigmaPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<SigmaTermJson>::deserialize(d)?;
        let mut out = SigmaPoly::zero();
        for t in terms {
            let mut term = SigmaPoly::zero();
            term.add_term(t.tvars, Vec::new(), t.coeff);
            for g in t.generators {
                let g = SigmaGenerator::new(g.i, g.word).map_err(D::Error::custom)?;
                term = &term * &SigmaPoly::generator(g);
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Substitutes `e_k -> σ_k(root)` into an e-polynomial.
fn epoly_at_root(p: &EPoly, root: &Word, trunc: Truncation) -> Result<SigmaPoly> {
    let mut out = SigmaPoly::zero();
    'terms: for (e, c) in p.terms() {
        let mut mono = Vec::new();
        for (k, &a) in e.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let index = k as u32 + 1;
            if !trunc.keeps(index) {
                continue 'terms;
            }
            mono.push((SigmaGenerator::new(index, root.clone())?, a));
        }
        out.add_term(Vec::new(), mono, BigRational::from_integer(c.clone()));
    }
    Ok(out)
}

/// Reduces `σ_i(w)` for an arbitrary word to the canonical generators.
///
/// The word is first put in cyclic normal form `N^j`; for `j > 1` the universal
/// `P_{i,j}` is truncated (when bounded) and evaluated at `e_k = σ_k(N)`.
/// `σ_i(1)` is `binom(n, i)` and only defined at a bounded level.
pub fn normalize_sigma(i: u32, w: &Word, trunc: Truncation) -> Result<SigmaPoly> {
    if i == 0 {
        return Err(Error::InvalidArgument("sigma index must be at least 1".into()));
    }
    if w.is_empty() {
        return match trunc {
            Truncation::Level(n) => Ok(SigmaPoly::constant(binomial_rational(n as u64, i as u64))),
            Truncation::Unbounded => Err(Error::UnboundedEmptyWord),
        };
    }
    if !trunc.keeps(i) {
        // e_i of j-th powers in n < i variables vanishes, so truncated P_{i,j} is zero
        return Ok(SigmaPoly::zero());
    }
    let nf = cyclic_normalize(w)?;
    if nf.exponent == 1 {
        return Ok(SigmaPoly::generator(SigmaGenerator {
            index: i,
            word: nf.root,
        }));
    }
    let p = power_transform(i, nf.exponent as u32)?;
    let p = match trunc {
        Truncation::Level(n) => p.truncate(n),
        Truncation::Unbounded => (*p).clone(),
    };
    epoly_at_root(&p, &nf.root, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_examples() {
        let u = Truncation::Unbounded;
        assert_eq!(normalize_sigma(1, &w("ba"), u).unwrap(), SigmaPoly::sigma(1, "ab"));
        let expected = &SigmaPoly::sigma(1, "ab").pow(2) - &SigmaPoly::sigma(2, "ab").scale(&scalar::rat(2));
        assert_eq!(normalize_sigma(1, &w("abab"), u).unwrap(), expected);
        assert!(normalize_sigma(3, &w("a"), Truncation::Level(2)).unwrap().is_zero());
        assert_eq!(
            normalize_sigma(1, &Word::empty(), Truncation::Level(2)).unwrap(),
            SigmaPoly::integer(2)
        );
        assert_eq!(
            normalize_sigma(2, &w("aa"), Truncation::Level(2)).unwrap(),
            SigmaPoly::sigma(2, "a").pow(2)
        );
    }

    #[test]
    fn normalization_errors() {
        assert_eq!(
            normalize_sigma(1, &Word::empty(), Truncation::Unbounded),
            Err(Error::UnboundedEmptyWord)
        );
        assert!(normalize_sigma(0, &w("a"), Truncation::Unbounded).is_err());
        assert!(SigmaGenerator::new(1, w("ba")).is_err());
        assert!(Truncation::level(0).is_err());
    }

    #[test]
    fn high_index_shortcut_matches_truncated_power_transform() {
        for n in 1..=3usize {
            for i in (n as u32 + 1)..=5 {
                for j in 2..=3u32 {
                    if i * j > 16 {
                        continue;
                    }
                    let p = power_transform(i, j).unwrap().truncate(n);
                    assert!(p.is_zero(), "P_{{{i},{j}}} truncated at {n} = {p}");
                }
            }
        }
    }

    #[test]
    fn ring_arithmetic() {
        let a = SigmaPoly::sigma(1, "a");
        let b = SigmaPoly::sigma(1, "b");
        assert_eq!((&a * &a).to_string(), "s1(a)s1(a)");
        assert_eq!((&a * &a).render(Style::Unicode), "σ_1(a)^2");
        assert_eq!(&(&a + &b) - &b, a);
        let t1t2 = SigmaPoly::param_monomial(&[1, 1]);
        let t1sq = SigmaPoly::param_monomial(&[2]);
        let p = &(&t1t2 * &SigmaPoly::sigma(2, "ab")) + &(&t1sq * &SigmaPoly::sigma(2, "a"));
        assert_eq!(p.coefficient(&[1, 1]), SigmaPoly::sigma(2, "ab"));
        assert_eq!(p.coefficient(&[2, 0]), SigmaPoly::sigma(2, "a"));
        assert!(p.coefficient(&[0, 2]).is_zero());
    }

    #[test]
    fn canonical_term_order() {
        let p = &SigmaPoly::sigma(2, "ab") + &(&SigmaPoly::sigma(1, "a") * &SigmaPoly::sigma(1, "b"));
        assert_eq!(p.to_string(), "s1(a)s1(b) + s2(ab)");
        let q = &(&SigmaPoly::sigma(1, "b") * &SigmaPoly::sigma(1, "a")) + &SigmaPoly::sigma(2, "ab");
        assert_eq!(p, q);
    }

    #[test]
    fn json_shape() {
        let p = &SigmaPoly::sigma(1, "a").pow(2).scale(&scalar::rat_frac(-3, 2)) + &SigmaPoly::param(1);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":"-3/2","tvars":[],"generators":[{"i":1,"word":[0]},{"i":1,"word":[0]}]},{"coeff":"1","tvars":[0,1],"generators":[]}]"#
        );
        let back: SigmaPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn homogeneity_of_reductions() {
        let p = normalize_sigma(2, &w("abab"), Truncation::Unbounded).unwrap();
        assert!(p.is_homogeneous());
        assert!(p.term_weights().all(|x| x == 8));
        assert!(p.term_multidegrees().all(|d| d == vec![4, 4]));
    }
}
