#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use sigmalaw_core::ExactMatrix;

pub type Q = BigRational;

pub fn rat(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn random_rational(rng: &mut impl Rng) -> Q {
    Q::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ExactMatrix<Q> {
    ExactMatrix::from_fn(n, |_, _| random_rational(rng))
}

pub fn all_words(q: u32, min: usize, max: usize) -> Vec<sigmalaw_core::Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for len in 1..=max {
        layer = layer
            .into_iter()
            .flat_map(|w| (0..q).map(move |c| [w.clone(), vec![c]].concat()))
            .collect();
        if len >= min {
            out.extend(layer.iter().cloned().map(sigmalaw_core::Word::new));
        }
    }
    out
}

/// Determinant by the permutation expansion.
pub fn leibniz(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = rat(0);
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = if inversions % 2 == 0 { rat(1) } else { rat(-1) };
        for (i, &j) in p.iter().enumerate() {
            term *= &m[i][j];
        }
        total += term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `σ_i` as the sum of the principal `i x i` minors.
pub fn principal_minor_sum(m: &ExactMatrix<Q>, i: usize) -> Q {
    let rows = m.rows();
    let n = rows.len();
    let mut total = rat(0);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let sub: Vec<Vec<Q>> = idx
            .iter()
            .map(|&r| idx.iter().map(|&c| rows[r][c].clone()).collect())
            .collect();
        total += leibniz(&sub);
    }
    total
}
