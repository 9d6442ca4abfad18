//! The free Σ-algebra: noncommutative polynomials with σ-ring coefficients,
//! Amitsur's expansion of `σ_m` of a linear combination, and the derived
//! constructions (polarized forms, formal Cayley-Hamilton polynomials,
//! substitution endomorphisms, multiplicativity relations).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{self, Limits};
use crate::scalar::format_rational;
use crate::sigma::{normalize_sigma, SigmaPoly, Style, Truncation};
use crate::word::{lyndon_words, substitute_positional, Word};

/// Element of the free Σ-algebra: a finite sum of σ-ring coefficients times words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, SigmaPoly>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::constant(SigmaPoly::one())
    }

    pub fn constant(c: SigmaPoly) -> Self {
        NCPoly::term(c, Word::empty())
    }

    pub fn var(v: u32) -> Self {
        NCPoly::word(Word::letter(v))
    }

    pub fn word(w: Word) -> Self {
        NCPoly::term(SigmaPoly::one(), w)
    }

    pub fn term(c: SigmaPoly, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: SigmaPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &SigmaPoly)> {
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

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> SigmaPoly {
        self.terms.get(&Word::empty()).cloned().unwrap_or_default()
    }

    /// The coefficient if this polynomial is a pure scalar.
    pub fn as_scalar(&self) -> Option<SigmaPoly> {
        match self.terms.len() {
            0 => Some(SigmaPoly::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn max_variable(&self) -> Option<u32> {
        self.terms
            .iter()
            .flat_map(|(w, c)| w.max_variable().into_iter().chain(c.max_variable()))
            .max()
    }

    pub fn num_params(&self) -> usize {
        self.terms.values().map(SigmaPoly::num_params).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &SigmaPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest word length among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn render(&self, style: Style) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let mut body = String::new();
            let mut negative = false;
            match c.as_constant() {
                Some(q) => {
                    negative = q < BigRational::zero();
                    let mag = if negative { -q } else { q };
                    if !mag.is_one() || w.is_empty() {
                        body.push_str(&format_rational(&mag));
                    }
                }
                None if c.len() == 1 => {
                    let text = c.render(style);
                    match text.strip_prefix('-') {
                        Some(rest) => {
                            negative = true;
                            body.push_str(rest);
                        }
                        None => body.push_str(&text),
                    }
                }
                None => {
                    body.push('(');
                    body.push_str(&c.render(style));
                    body.push(')');
                }
            }
            if !w.is_empty() {
                body.push_str(&w.to_string());
            }
            s.push_str(match (idx, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({})", self.render(Style::Unicode))
    }
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;

    fn add(self, rhs: &'a NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;

    fn sub(self, rhs: &'a NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: &'a NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;

    fn neg(self) -> NCPoly {
        self.scale(&SigmaPoly::integer(-1))
    }
}

impl Add for NCPoly {
    type Output = NCPoly;

    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;

    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;

    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct NCTermJson {
    word: Word,
    coeff: SigmaPoly,
}

impl Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<NCTermJson> = self
            .terms
            .iter()
            .map(|(w, c)| NCTermJson {
                word: w.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mut out = NCPoly::zero();
        for t in Vec::<NCTermJson>::deserialize(d)? {
            out.add_term(t.word, t.coeff);
        }
        Ok(out)
    }
}

/// One summand `c · M` of the linear combination fed to the expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub coeff: SigmaPoly,
    pub word: Word,
}

impl Slot {
    /// `t_{param+1} · word`.
    pub fn param(param: usize, word: Word) -> Self {
        Slot {
            coeff: SigmaPoly::param(param),
            word,
        }
    }

    /// `t^exponents · word`.
    pub fn params(exponents: &[u32], word: Word) -> Self {
        Slot {
            coeff: SigmaPoly::param_monomial(exponents),
            word,
        }
    }

    pub fn with_coeff(coeff: SigmaPoly, word: Word) -> Self {
        Slot { coeff, word }
    }

    /// Parameter index if the coefficient is exactly one parameter.
    fn single_param(&self) -> Option<usize> {
        let (key, c) = match self.coeff.len() {
            1 => self.coeff.terms().next()?,
            _ => return None,
        };
        if !c.is_one() || !key.mono.is_empty() {
            return None;
        }
        let mut nonzero = key.tvars.iter().enumerate().filter(|(_, &e)| e != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((p, 1)), None) => Some(p),
            _ => None,
        }
    }
}

/// A term of Amitsur's formula over the slot alphabet: sign and
/// `(Lyndon word, exponent j)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmitsurTerm {
    pub negative: bool,
    pub factors: Vec<(Word, u32)>,
}

/// Enumerates the index set of Amitsur's formula for `σ_m` over `alphabet` letters:
/// sets of distinct Lyndon words with exponents `j_i >= 1` and `sum j_i·len(p_i) = m`.
/// With `target`, only terms whose letter multidegree equals `target` are produced.
pub fn amitsur_terms(m: usize, alphabet: usize, target: Option<&[u32]>) -> Result<Vec<AmitsurTerm>> {
    if let Some(t) = target {
        if t.len() != alphabet || t.iter().map(|&x| x as usize).sum::<usize>() != m {
            return Ok(Vec::new());
        }
    }
    let words: Vec<(Word, Vec<u32>)> = lyndon_words(alphabet as u32, m)?
        .into_iter()
        .map(|w| {
            let mut nu = w.multidegree();
            nu.resize(alphabet, 0);
            (w, nu)
        })
        .filter(|(_, nu)| target.is_none_or(|t| nu.iter().zip(t).all(|(a, b)| a <= b)))
        .collect();

    struct Walk<'a> {
        words: &'a [(Word, Vec<u32>)],
        m: usize,
        out: Vec<AmitsurTerm>,
        chosen: Vec<(usize, u32)>,
    }

    impl Walk<'_> {
        fn go(&mut self, start: usize, remaining: usize, budget: Option<&mut Vec<u32>>) {
            if remaining == 0 {
                let total_j: u32 = self.chosen.iter().map(|&(_, j)| j).sum();
                self.out.push(AmitsurTerm {
                    negative: (self.m as u32 - total_j) % 2 == 1,
                    factors: self
                        .chosen
                        .iter()
                        .map(|&(idx, j)| (self.words[idx].0.clone(), j))
                        .collect(),
                });
                return;
            }
            let mut budget = budget;
            for idx in start..self.words.len() {
                let len = self.words[idx].0.len();
                if len > remaining {
                    break;
                }
                let mut j = 1u32;
                while j as usize * len <= remaining {
                    if let Some(b) = budget.as_deref() {
                        let fits = self.words[idx].1.iter().zip(b).all(|(&nu, &left)| nu * j <= left);
                        if !fits {
                            break;
                        }
                    }
                    if let Some(b) = budget.as_deref_mut() {
                        for (left, &nu) in b.iter_mut().zip(&self.words[idx].1) {
                            *left -= nu * j;
                        }
                    }
                    self.chosen.push((idx, j));
                    self.go(idx + 1, remaining - j as usize * len, budget.as_deref_mut());
                    self.chosen.pop();
                    if let Some(b) = budget.as_deref_mut() {
                        for (left, &nu) in b.iter_mut().zip(&self.words[idx].1) {
                            *left += nu * j;
                        }
                    }
                    j += 1;
                }
            }
        }
    }

    let mut walk = Walk {
        words: &words,
        m,
        out: Vec::new(),
        chosen: Vec::new(),
    };
    let mut budget = target.map(<[u32]>::to_vec);
    walk.go(0, m, budget.as_mut());
    Ok(walk.out)
}

fn check_expansion_args(m: usize, slots: &[Slot], trunc: Truncation) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("expansion degree must be at least 1".into()));
    }
    if slots.is_empty() {
        return Err(Error::InvalidArgument("expansion needs at least one slot".into()));
    }
    let caps = Limits::current();
    limits::check("expansion degree m", m, caps.max_degree)?;
    limits::check("slot count", slots.len(), caps.max_slots)?;
    if trunc == Truncation::Unbounded && slots.iter().any(|s| s.word.is_empty()) {
        return Err(Error::UnboundedEmptyWord);
    }
    Ok(())
}

/// Evaluates a list of Amitsur terms with the slot letters substituted.
fn assemble(terms: &[AmitsurTerm], slots: &[Slot], trunc: Truncation) -> Result<SigmaPoly> {
    let images: Vec<&Word> = slots.iter().map(|s| &s.word).collect();
    let mut reduced: HashMap<(u32, Word), SigmaPoly> = HashMap::new();
    let mut coeff_powers: HashMap<(usize, u32), SigmaPoly> = HashMap::new();
    let mut out = SigmaPoly::zero();
    for term in terms {
        let mut value = if term.negative {
            SigmaPoly::integer(-1)
        } else {
            SigmaPoly::one()
        };
        for (p, j) in &term.factors {
            let key = (*j, p.clone());
            if !reduced.contains_key(&key) {
                let w = substitute_positional(p, &images);
                reduced.insert(key.clone(), normalize_sigma(*j, &w, trunc)?);
            }
            let sigma = &reduced[&key];
            if sigma.is_zero() {
                value = SigmaPoly::zero();
                break;
            }
            value = &value * sigma;
            for (slot, nu) in p.multidegree().into_iter().enumerate() {
                if nu == 0 {
                    continue;
                }
                let e = nu * j;
                let c = coeff_powers
                    .entry((slot, e))
                    .or_insert_with(|| slots[slot].coeff.pow(e));
                value = &value * c;
            }
        }
        out = &out + &value;
    }
    Ok(out)
}

/// `σ_m(sum_i c_i M_i)` by Amitsur's formula, reduced to canonical generators.
pub fn amitsur_expand(m: usize, slots: &[Slot], trunc: Truncation) -> Result<SigmaPoly> {
    check_expansion_args(m, slots, trunc)?;
    let terms = amitsur_terms(m, slots.len(), None)?;
    assemble(&terms, slots, trunc)
}

/// Coefficient of `t^multi_index` in `amitsur_expand(m, slots, trunc)`: the polarized
/// form `σ_{m; a_1, ...}` when slot `i` carries the parameter `t_i`.
pub fn polarize(m: usize, slots: &[Slot], trunc: Truncation, multi_index: &[u32]) -> Result<SigmaPoly> {
    check_expansion_args(m, slots, trunc)?;
    let params: Option<Vec<usize>> = slots.iter().map(Slot::single_param).collect();
    match params {
        Some(params) if distinct(&params) => {
            // each slot owns one parameter, so the multidegree over slots is fixed
            let target: Vec<u32> = params
                .iter()
                .map(|&p| multi_index.get(p).copied().unwrap_or(0))
                .collect();
            let covered: u32 = target.iter().sum();
            if covered != multi_index.iter().sum::<u32>() {
                return Ok(SigmaPoly::zero());
            }
            let terms = amitsur_terms(m, slots.len(), Some(&target))?;
            Ok(assemble(&terms, slots, trunc)?.coefficient(multi_index))
        }
        _ => Ok(amitsur_expand(m, slots, trunc)?.coefficient(multi_index)),
    }
}

fn distinct(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// `σ_i(f)` for an arbitrary element, each term of `f` becoming one slot.
pub fn sigma_of(i: u32, f: &NCPoly, trunc: Truncation) -> Result<SigmaPoly> {
    if i == 0 {
        return Err(Error::InvalidArgument("sigma index must be at least 1".into()));
    }
    if f.is_zero() {
        return Ok(SigmaPoly::zero());
    }
    let slots: Vec<Slot> = f.terms().map(|(w, c)| Slot::with_coeff(c.clone(), w.clone())).collect();
    amitsur_expand(i as usize, &slots, trunc)
}

/// The formal Cayley-Hamilton polynomial `f^n + sum_i (-1)^i σ_i(f) f^{n-i}`
/// computed at truncation level `n`.
pub fn ch_polynomial(n: usize, f: &NCPoly) -> Result<NCPoly> {
    let trunc = Truncation::level(n)?;
    let mut powers = vec![NCPoly::one()];
    for k in 1..=n {
        powers.push(&powers[k - 1] * f);
    }
    let mut out = powers[n].clone();
    for i in 1..=n {
        let mut s = sigma_of(i as u32, f, trunc)?;
        if i % 2 == 1 {
            s = -&s;
        }
        out = &out + &powers[n - i].scale(&s);
    }
    Ok(out)
}

/// Applies the endomorphism `x_v -> images[v]` (identity on unlisted variables),
/// rewriting the σ-coefficients through `sigma_of`.
pub fn t_substitute(f: &NCPoly, images: &BTreeMap<u32, NCPoly>, trunc: Truncation) -> Result<NCPoly> {
    for (&v, img) in images {
        if !img.constant_term().is_zero() {
            return Err(Error::ConstantTermImage(v));
        }
    }
    let mut word_images: HashMap<Word, NCPoly> = HashMap::new();
    let mut image_of = |w: &Word| -> NCPoly {
        word_images
            .entry(w.clone())
            .or_insert_with(|| {
                let mut acc = NCPoly::one();
                for &v in w.letters() {
                    acc = match images.get(&v) {
                        Some(img) => &acc * img,
                        None => &acc * &NCPoly::var(v),
                    };
                }
                acc
            })
            .clone()
    };
    let mut out = NCPoly::zero();
    for (w, c) in f.terms() {
        let coeff = c.map_generators(|g| sigma_of(g.index(), &image_of(g.word()), trunc))?;
        out = &out + &image_of(w).scale(&coeff);
    }
    Ok(out)
}

/// One coefficient `φ_{h,k}` of `σ_n(fg) - σ_n(f)σ_n(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRelation {
    pub h: Vec<u32>,
    pub k: Vec<u32>,
    pub phi: SigmaPoly,
}

/// Expands `σ_n(fg) - σ_n(f)σ_n(g)` for `f = sum u_i M_i`, `g = sum v_j N_j` at level `n`
/// and returns the nonzero coefficients of the `u^h v^k`.
pub fn kernel_relations(n: usize, f_monomials: &[Word], g_monomials: &[Word]) -> Result<Vec<KernelRelation>> {
    if f_monomials.is_empty() || g_monomials.is_empty() {
        return Err(Error::InvalidArgument("monomial lists must be nonempty".into()));
    }
    if f_monomials.iter().chain(g_monomials).any(Word::is_empty) {
        return Err(Error::EmptyWord);
    }
    let trunc = Truncation::level(n)?;
    let nf = f_monomials.len();
    let f_slots: Vec<Slot> = f_monomials
        .iter()
        .enumerate()
        .map(|(i, w)| Slot::param(i, w.clone()))
        .collect();
    let g_slots: Vec<Slot> = g_monomials
        .iter()
        .enumerate()
        .map(|(j, w)| Slot::param(nf + j, w.clone()))
        .collect();
    let mut fg_slots = Vec::new();
    for (i, fw) in f_monomials.iter().enumerate() {
        for (j, gw) in g_monomials.iter().enumerate() {
            let mut e = vec![0u32; nf + j + 1];
            e[i] = 1;
            e[nf + j] = 1;
            fg_slots.push(Slot::params(&e, fw.concat(gw)));
        }
    }
    let lhs = amitsur_expand(n, &fg_slots, trunc)?;
    let rhs = &amitsur_expand(n, &f_slots, trunc)? * &amitsur_expand(n, &g_slots, trunc)?;
    let diff = &lhs - &rhs;
    let mut out = Vec::new();
    for (mut e, phi) in diff.by_params() {
        e.resize(nf + g_monomials.len(), 0);
        let k = e.split_off(nf);
        out.push(KernelRelation { h: e, k, phi });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn s(i: u32, word: &str) -> SigmaPoly {
        SigmaPoly::sigma(i, word)
    }

    fn xy_slots() -> Vec<Slot> {
        vec![Slot::param(0, w("a")), Slot::param(1, w("b"))]
    }

    #[test]
    fn degree_one_is_additive() {
        let got = amitsur_expand(1, &xy_slots(), Truncation::Unbounded).unwrap();
        let expected = &(&SigmaPoly::param(0) * &s(1, "a")) + &(&SigmaPoly::param(1) * &s(1, "b"));
        assert_eq!(got, expected);
    }

    #[test]
    fn degree_two_two_slots() {
        let got = amitsur_expand(2, &xy_slots(), Truncation::Unbounded).unwrap();
        let mixed = &(&s(1, "a") * &s(1, "b")) - &s(1, "ab");
        let expected = &(&(&SigmaPoly::param_monomial(&[2]) * &s(2, "a"))
            + &(&SigmaPoly::param_monomial(&[0, 2]) * &s(2, "b")))
            + &(&SigmaPoly::param_monomial(&[1, 1]) * &mixed);
        assert_eq!(got, expected);
    }

    #[test]
    fn term_enumeration_counts() {
        // σ_2 over one letter: σ_2(a) and σ_1(a)^... only j=2 on 'a'
        let t = amitsur_terms(2, 1, None).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].factors, vec![(w("a"), 2)]);
        // target filter keeps only the mixed terms
        let t = amitsur_terms(2, 2, Some(&[1, 1])).unwrap();
        assert_eq!(t.len(), 2);
        assert!(amitsur_terms(2, 2, Some(&[1, 2])).unwrap().is_empty());
    }

    #[test]
    fn simple_polarizations() {
        let single = [Slot::param(0, w("a"))];
        assert_eq!(polarize(2, &single, Truncation::Unbounded, &[2]).unwrap(), s(2, "a"));
        assert_eq!(
            polarize(2, &xy_slots(), Truncation::Unbounded, &[0, 2]).unwrap(),
            s(2, "b")
        );
        assert!(polarize(2, &xy_slots(), Truncation::Unbounded, &[1, 2])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn polarize_matches_full_expansion() {
        let slots = vec![Slot::param(0, w("a")), Slot::param(1, w("b")), Slot::param(2, w("ab"))];
        let full = amitsur_expand(3, &slots, Truncation::Level(2)).unwrap();
        for idx in [[1, 1, 1], [2, 1, 0], [0, 0, 3], [1, 0, 2]] {
            assert_eq!(
                polarize(3, &slots, Truncation::Level(2), &idx).unwrap(),
                full.coefficient(&idx)
            );
        }
    }

    #[test]
    fn sigma_of_examples() {
        let ab = &NCPoly::var(0) + &NCPoly::var(1);
        let expected = &(&(&s(2, "a") + &s(2, "b")) + &(&s(1, "a") * &s(1, "b"))) - &s(1, "ab");
        assert_eq!(sigma_of(2, &ab, Truncation::Unbounded).unwrap(), expected);
        let three_a = NCPoly::var(0).scale(&SigmaPoly::integer(3));
        assert_eq!(
            sigma_of(1, &three_a, Truncation::Unbounded).unwrap(),
            s(1, "a").scale(&rat(3))
        );
        assert_eq!(
            sigma_of(2, &NCPoly::word(w("ab")), Truncation::Unbounded).unwrap(),
            s(2, "ab")
        );
        assert!(sigma_of(2, &NCPoly::zero(), Truncation::Unbounded).unwrap().is_zero());
    }

    #[test]
    fn sigma_of_scalar_coefficient_law() {
        // σ_2(σ_1(b)·a) = σ_1(b)^2 σ_2(a)
        let f = NCPoly::term(s(1, "b"), w("a"));
        assert_eq!(
            sigma_of(2, &f, Truncation::Unbounded).unwrap(),
            &s(1, "b").pow(2) * &s(2, "a")
        );
    }

    #[test]
    fn constants_in_bounded_mode() {
        // σ_1(1 + a) at level 2 = 2 + σ_1(a); σ_2(1 + a) = 1 + σ_1(a) + σ_2(a)
        let f = &NCPoly::one() + &NCPoly::var(0);
        assert_eq!(
            sigma_of(1, &f, Truncation::Level(2)).unwrap(),
            &SigmaPoly::integer(2) + &s(1, "a")
        );
        assert_eq!(
            sigma_of(2, &f, Truncation::Level(2)).unwrap(),
            &(&SigmaPoly::integer(1) + &s(1, "a")) + &s(2, "a")
        );
        assert_eq!(sigma_of(1, &f, Truncation::Unbounded), Err(Error::UnboundedEmptyWord));
    }

    #[test]
    fn ch_polynomial_small() {
        let x = NCPoly::var(0);
        let ch2 = ch_polynomial(2, &x).unwrap();
        let expected = &(&NCPoly::word(w("aa")) - &NCPoly::term(s(1, "a"), w("a"))) + &NCPoly::constant(s(2, "a"));
        assert_eq!(ch2, expected);
        let ch1 = ch_polynomial(1, &x).unwrap();
        assert_eq!(ch1, &x - &NCPoly::constant(s(1, "a")));
        assert_eq!(ch2.to_string(), "s2(a) - s1(a)a + aa");
    }

    #[test]
    fn substitution_examples() {
        let trunc = Truncation::Level(2);
        let f = NCPoly::constant(s(1, "a"));
        let images = BTreeMap::from([(0, NCPoly::word(w("ab")))]);
        assert_eq!(t_substitute(&f, &images, trunc).unwrap(), NCPoly::constant(s(1, "ab")));

        let a_plus_b = &NCPoly::var(0) + &NCPoly::var(1);
        let images = BTreeMap::from([(0, a_plus_b.clone())]);
        assert_eq!(t_substitute(&NCPoly::var(0), &images, trunc).unwrap(), a_plus_b);

        let f = NCPoly::constant(s(2, "a"));
        let expected = &(&(&s(2, "a") + &s(2, "b")) + &(&s(1, "a") * &s(1, "b"))) - &s(1, "ab");
        assert_eq!(t_substitute(&f, &images, trunc).unwrap(), NCPoly::constant(expected));

        let bad = BTreeMap::from([(0, &NCPoly::one() + &NCPoly::var(1))]);
        assert_eq!(t_substitute(&f, &bad, trunc), Err(Error::ConstantTermImage(0)));
    }

    #[test]
    fn kernel_examples() {
        let rel = kernel_relations(2, &[w("a")], &[w("b")]).unwrap();
        assert_eq!(rel.len(), 1);
        assert_eq!((rel[0].h.clone(), rel[0].k.clone()), (vec![2], vec![2]));
        assert_eq!(rel[0].phi, &s(2, "ab") - &(&s(2, "a") * &s(2, "b")));

        assert!(kernel_relations(2, &[w("a")], &[w("a")]).unwrap().is_empty());

        let rel = kernel_relations(1, &[w("a")], &[w("b")]).unwrap();
        assert_eq!(rel.len(), 1);
        assert_eq!(rel[0].phi, &s(1, "ab") - &(&s(1, "a") * &s(1, "b")));

        assert!(kernel_relations(2, &[], &[w("b")]).is_err());
        assert_eq!(kernel_relations(2, &[Word::empty()], &[w("b")]), Err(Error::EmptyWord));
    }

    #[test]
    fn caps_and_bad_arguments() {
        let err = amitsur_expand(9, &xy_slots(), Truncation::Unbounded).unwrap_err();
        assert!(err.is_resource_cap());
        let many: Vec<Slot> = (0..7).map(|i| Slot::param(i, Word::letter(i as u32))).collect();
        assert!(amitsur_expand(1, &many, Truncation::Unbounded)
            .unwrap_err()
            .is_resource_cap());
        assert!(amitsur_expand(0, &xy_slots(), Truncation::Unbounded).is_err());
        assert!(amitsur_expand(1, &[], Truncation::Unbounded).is_err());
        let empty_slot = [Slot::param(0, Word::empty())];
        assert_eq!(
            amitsur_expand(1, &empty_slot, Truncation::Unbounded),
            Err(Error::UnboundedEmptyWord)
        );
    }

    #[test]
    fn ncpoly_json_round_trip() {
        let p = ch_polynomial(2, &NCPoly::var(0)).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        let back: NCPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
