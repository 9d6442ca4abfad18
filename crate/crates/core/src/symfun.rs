//! Symmetric functions in the elementary basis.
//!
//! The central object is `P_{i,j}`, the universal integer polynomial with
//! `e_i(x_1^j, ..., x_N^j) = P_{i,j}(e_1, ..., e_{ij})` for every `N`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{self, Limits};
use crate::scalar::{self, Scalar};

/// Integer polynomial in `e_1, e_2, ...`; key `[a_1, a_2, ...]` is `e_1^{a_1} e_2^{a_2} ...`
/// with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EPoly {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

fn trimmed(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

/// Weight `sum k * a_k` of an e-monomial.
pub fn weight(exponents: &[u32]) -> u32 {
    exponents.iter().enumerate().map(|(k, &a)| (k as u32 + 1) * a).sum()
}

impl EPoly {
    pub fn zero() -> Self {
        EPoly::default()
    }

    /// The single generator `e_k`.
    pub fn elementary(k: usize) -> Self {
        assert!(k >= 1, "e_0 is not a generator");
        let mut e = vec![0; k];
        e[k - 1] = 1;
        EPoly::from_terms([(e, BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = EPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        let e = trimmed(e);
        let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms ordered by the largest generator used, then by exponents descending.
    pub fn ordered_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|e| weight(e) == w)
    }

    /// Drops every term containing some `e_k` with `k > n`.
    pub fn truncate(&self, n: usize) -> EPoly {
        EPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.len() <= n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `e_k -> values[k-1]`; generators past the end evaluate to zero.
    pub fn eval<R: Scalar>(&self, values: &[R]) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            if e.len() > values.len() {
                continue;
            }
            let mut t = R::from(BigRational::from_integer(c.clone()));
            for (k, &a) in e.iter().enumerate() {
                if a > 0 {
                    t = t * &scalar::pow(&values[k], a);
                }
            }
            acc = acc + &t;
        }
        acc
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.ordered_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = e.is_empty();
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
            }
            for (k, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "e_{}", k + 1)?,
                    _ => write!(f, "e_{}^{}", k + 1, a)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct EPolyTermJson {
    coeff: String,
    exponents: Vec<u32>,
}

impl Serialize for EPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<EPolyTermJson> = self
            .ordered_terms()
            .into_iter()
            .map(|(e, c)| EPolyTermJson {
                coeff: c.to_string(),
                exponents: e.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<EPolyTermJson>::deserialize(d)?;
        let mut p = EPoly::zero();
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            p.add_term(t.exponents, c);
        }
        Ok(p)
    }
}

/// Non-increasing positive parts.
type Partition = Vec<u32>;

/// Partitions of `total` with at most `max_parts` parts, each at most `max_part`.
fn partitions(total: u32, max_parts: usize, max_part: u32) -> Vec<Partition> {
    fn go(rest: u32, max_part: u32, parts_left: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Counts 0-1 matrices with the given row and column sums, i.e. the coefficient of
/// `x^cols` in `prod_r e_{rows[r]}`.
struct ZeroOneCounter {
    rows: Vec<u32>,
    memo: HashMap<(usize, Vec<u32>), BigInt>,
}

impl ZeroOneCounter {
    fn new(rows: Vec<u32>) -> Self {
        ZeroOneCounter {
            rows,
            memo: HashMap::new(),
        }
    }

    fn count(&mut self, cols: &[u32]) -> BigInt {
        let mut cols: Vec<u32> = cols.iter().copied().filter(|&c| c > 0).collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        self.count_from(0, cols)
    }

    fn count_from(&mut self, row: usize, cols: Vec<u32>) -> BigInt {
        if row == self.rows.len() {
            return if cols.is_empty() { BigInt::one() } else { BigInt::zero() };
        }
        let need = self.rows[row] as usize;
        if need > cols.len() {
            return BigInt::zero();
        }
        if let Some(v) = self.memo.get(&(row, cols.clone())) {
            return v.clone();
        }
        // group equal column sums: (value, multiplicity)
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &c in &cols {
            match groups.last_mut() {
                Some((v, m)) if *v == c => *m += 1,
                _ => groups.push((c, 1)),
            }
        }
        let mut total = BigInt::zero();
        let mut pick = vec![0usize; groups.len()];
        self.distribute(row, &groups, 0, need, &mut pick, &mut total);
        self.memo.insert((row, cols), total.clone());
        total
    }

    fn distribute(
        &mut self,
        row: usize,
        groups: &[(u32, usize)],
        g: usize,
        need: usize,
        pick: &mut Vec<usize>,
        total: &mut BigInt,
    ) {
        if g == groups.len() {
            if need != 0 {
                return;
            }
            let mut ways = BigInt::one();
            let mut next = Vec::new();
            for (&(v, m), &k) in groups.iter().zip(pick.iter()) {
                ways *= binomial(BigInt::from(m), BigInt::from(k));
                next.extend(std::iter::repeat_n(v - 1, k));
                next.extend(std::iter::repeat_n(v, m - k));
            }
            next.retain(|&c| c > 0);
            next.sort_unstable_by(|a, b| b.cmp(a));
            let sub = self.count_from(row + 1, next);
            *total += ways * sub;
            return;
        }
        let m = groups[g].1;
        for k in 0..=m.min(need) {
            pick[g] = k;
            self.distribute(row, groups, g + 1, need - k, pick, total);
        }
        pick[g] = 0;
    }
}

/// Exponents of `e_k` in the e-monomial whose leading monomial is `x^lambda`.
fn leading_e_monomial(lambda: &[u32]) -> Vec<u32> {
    (0..lambda.len())
        .map(|k| lambda[k] - lambda.get(k + 1).copied().unwrap_or(0))
        .collect()
}

/// Computes `P_{i,j}` in exactly `nvars` variables.
///
/// `e_i(x^j)` is the monomial symmetric function `m_{(j^i)}`; it is stored by its
/// coefficients on sorted exponent vectors and reduced by repeatedly subtracting
/// the e-monomial matching its lex-leading monomial. With `nvars < i*j` the result
/// equals `P_{i,j}` with `e_k = 0` for `k > nvars`.
pub fn power_transform_in(i: u32, j: u32, nvars: usize) -> EPoly {
    assert!(i >= 1 && j >= 1);
    let total = i * j;
    let mut remaining: BTreeMap<Partition, BigInt> = BTreeMap::new();
    if i as usize <= nvars {
        remaining.insert(vec![j; i as usize], BigInt::one());
    }
    let mut result = EPoly::zero();
    let candidates = partitions(total, nvars, total);
    while let Some((lambda, c)) = remaining.pop_last() {
        let e_mon = leading_e_monomial(&lambda);
        let rows: Vec<u32> = e_mon
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| std::iter::repeat_n(k as u32 + 1, a as usize))
            .collect();
        let mut counter = ZeroOneCounter::new(rows);
        for mu in candidates.iter().filter(|mu| **mu < lambda) {
            let k = counter.count(mu);
            if k.is_zero() {
                continue;
            }
            let entry = remaining.entry(mu.clone()).or_insert_with(BigInt::zero);
            *entry -= &c * k;
            if entry.is_zero() {
                remaining.remove(mu);
            }
        }
        result.add_term(e_mon, c);
    }
    result
}

type Cache = RwLock<HashMap<(u32, u32), Arc<EPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The universal polynomial `P_{i,j}`, memoized.
pub fn power_transform(i: u32, j: u32) -> Result<Arc<EPoly>> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument("P_{i,j} needs i, j >= 1".into()));
    }
    limits::check("power weight i*j", (i * j) as usize, Limits::current().max_power_weight)?;
    if let Some(p) = cache().read().unwrap().get(&(i, j)) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(power_transform_in(i, j, (i * j) as usize));
    let mut guard = cache().write().unwrap();
    Ok(Arc::clone(guard.entry((i, j)).or_insert(p)))
}

pub fn truncate_epoly(p: &EPoly, n: usize) -> EPoly {
    p.truncate(n)
}

/// `e_1, ..., e_N` of the given values, read off `prod (t - x_i)`.
pub fn elementary_from_roots(values: &[BigRational]) -> Vec<BigRational> {
    // e[k] holds e_k of the prefix processed so far
    let mut e = vec![BigRational::zero(); values.len() + 1];
    e[0] = BigRational::one();
    for (m, x) in values.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            let prev = &e[k - 1] * x;
            e[k] += prev;
        }
    }
    e.remove(0);
    e
}

/// `binom(n, i)` as a rational.
pub fn binomial_rational(n: u64, i: u64) -> BigRational {
    if i > n {
        BigRational::zero()
    } else {
        BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ep(terms: &[(&[u32], i64)]) -> EPoly {
        EPoly::from_terms(terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn small_power_transforms() {
        assert_eq!(*power_transform(1, 1).unwrap(), EPoly::elementary(1));
        assert_eq!(*power_transform(1, 2).unwrap(), ep(&[(&[2], 1), (&[0, 1], -2)]));
        assert_eq!(
            *power_transform(2, 2).unwrap(),
            ep(&[(&[0, 2], 1), (&[1, 0, 1], -2), (&[0, 0, 0, 1], 2)])
        );
    }

    #[test]
    fn truncation_examples() {
        let p22 = power_transform(2, 2).unwrap();
        assert_eq!(truncate_epoly(&p22, 2), ep(&[(&[0, 2], 1)]));
        assert_eq!(truncate_epoly(&EPoly::elementary(1), 1), EPoly::elementary(1));
        assert!(truncate_epoly(&EPoly::elementary(3), 2).is_zero());
    }

    #[test]
    fn roots_to_elementary() {
        assert_eq!(elementary_from_roots(&[rat(1), rat(1)]), vec![rat(2), rat(1)]);
        assert_eq!(elementary_from_roots(&[rat(2), rat(3)]), vec![rat(5), rat(6)]);
        assert!(elementary_from_roots(&[]).is_empty());
    }

    #[test]
    fn zero_one_counts() {
        // e_1^2 = m_2 + 2 m_11
        let mut c = ZeroOneCounter::new(vec![1, 1]);
        assert_eq!(c.count(&[2]), BigInt::from(1));
        assert_eq!(c.count(&[1, 1]), BigInt::from(2));
        // e_2 e_1 = m_21 + 3 m_111
        let mut c = ZeroOneCounter::new(vec![2, 1]);
        assert_eq!(c.count(&[2, 1]), BigInt::from(1));
        assert_eq!(c.count(&[1, 1, 1]), BigInt::from(3));
        assert_eq!(c.count(&[3]), BigInt::from(0));
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(partitions(4, 4, 4).len(), 5);
        assert_eq!(partitions(4, 2, 4).len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let err = power_transform(5, 5).unwrap_err();
        assert!(err.is_resource_cap());
        assert!(power_transform(0, 1).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(power_transform(2, 2).unwrap().to_string(), "e_2^2 - 2e_1e_3 + 2e_4");
        let json = serde_json::to_string(&*power_transform(1, 2).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":"1","exponents":[2]},{"coeff":"-2","exponents":[0,1]}]"#
        );
        let back: EPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, *power_transform(1, 2).unwrap());
    }
}
