//! Weyl group elements as integer matrices on fundamental-weight coordinates.
//!
//! Enumeration walks the Cayley graph level by level: `s_i w` is one longer
//! than `w` exactly when `⟨wρ, α_i∨⟩ > 0`, so each level is generated from the
//! previous one alone and only two levels are ever held in memory.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::root_system::{RootSystem, Weight, WEYL_ORDER_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self { matrix, length: 0 }
    }

    /// Wraps a matrix, computing its length by counting inversions.
    pub fn from_matrix(rs: &RootSystem, matrix: Vec<Vec<i64>>) -> Self {
        let mut w = Self { matrix, length: 0 };
        w.length = inversion_count(rs, &w);
        w
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `ε(w) = (−1)^ℓ(w)`.
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, mu: &Weight) -> Weight {
        Weight::new(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(mu.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `self ∘ other` with the length recomputed from inversions.
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        WeylElement::from_matrix(rs, mat_mul(&self.matrix, &other.matrix))
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Left multiplication by `s_i`: row `k` loses `A[k][i]` times row `i`.
fn reflect_rows(rs: &RootSystem, m: &[Vec<i64>], i: usize) -> Vec<Vec<i64>> {
    let a = rs.cartan();
    m.iter()
        .enumerate()
        .map(|(k, row)| {
            row.iter()
                .zip(&m[i])
                .map(|(x, y)| x - a[k][i] * y)
                .collect()
        })
        .collect()
}

/// `s_i(μ) = μ − ⟨μ, α_i∨⟩ α_i`.
pub fn simple_reflection(rs: &RootSystem, mu: &Weight, i: usize) -> Weight {
    let a = rs.cartan();
    let c = mu[i];
    let mut out = mu.clone();
    for (k, x) in out.coords_mut().iter_mut().enumerate() {
        *x -= c * a[k][i];
    }
    out
}

/// Number of positive roots sent to negative roots.
pub fn inversion_count(rs: &RootSystem, w: &WeylElement) -> usize {
    rs.positive_roots_as_weights()
        .iter()
        .filter(|g| {
            let image = w.act(g);
            !rs.in_positive_cone(&image)
        })
        .count()
}

pub(crate) fn check_guard(rs: &RootSystem) -> Result<()> {
    if rs.weyl_order() > WEYL_ORDER_LIMIT && !rs.large_weyl_allowed() {
        return Err(Error::WeylGuard {
            name: rs.name().to_string(),
            order: rs.weyl_order(),
            limit: WEYL_ORDER_LIMIT,
        });
    }
    Ok(())
}

/// Streaming breadth-first enumeration of `W`, shortest elements first.
pub struct WeylIter<'a> {
    rs: &'a RootSystem,
    generators: Vec<usize>,
    level: Vec<(WeylElement, Weight)>,
    pos: usize,
}

impl<'a> WeylIter<'a> {
    fn new(rs: &'a RootSystem, generators: Vec<usize>) -> Self {
        let id = WeylElement::identity(rs.rank());
        Self {
            rs,
            generators,
            level: vec![(id, rs.rho().clone())],
            pos: 0,
        }
    }

    fn advance_level(&mut self) {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut next = Vec::new();
        for (w, image) in &self.level {
            for &i in &self.generators {
                if image[i] > 0 {
                    let img = simple_reflection(self.rs, image, i);
                    if seen.insert(img.clone()) {
                        let elem = WeylElement {
                            matrix: reflect_rows(self.rs, &w.matrix, i),
                            length: w.length + 1,
                        };
                        next.push((elem, img));
                    }
                }
            }
        }
        self.level = next;
        self.pos = 0;
    }
}

impl Iterator for WeylIter<'_> {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        if self.pos == self.level.len() {
            self.advance_level();
        }
        let item = self.level.get(self.pos)?.0.clone();
        self.pos += 1;
        Some(item)
    }
}

/// Every element of `W` exactly once, in order of increasing length.
pub fn enumerate_weyl(rs: &RootSystem) -> Result<WeylIter<'_>> {
    check_guard(rs)?;
    Ok(WeylIter::new(rs, (0..rs.rank()).collect()))
}

/// Fully materialized Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Ok(Self {
            elements: enumerate_weyl(rs)?.collect(),
        })
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The element of maximal length.
    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("W contains the identity")
    }

    /// `Σ_w q^ℓ(w)` from the enumeration.
    pub fn poincare_polynomial(&self) -> QPoly {
        QPoly::from_exponents(self.elements.iter().map(|w| w.length as i64))
    }
}

/// `(μ⁺, w)` with `w(μ) = μ⁺` dominant, by reflecting at negative coordinates.
pub fn dominant_representative(rs: &RootSystem, mu: &Weight) -> (Weight, WeylElement) {
    let mut v = mu.clone();
    let mut m = WeylElement::identity(rs.rank()).matrix;
    let mut steps = 0;
    while let Some(i) = (0..rs.rank()).find(|&i| v[i] < 0) {
        v = simple_reflection(rs, &v, i);
        m = reflect_rows(rs, &m, i);
        steps += 1;
    }
    (
        v,
        WeylElement {
            matrix: m,
            length: steps,
        },
    )
}

/// Dominant representative together with the parity of the sorting word;
/// the word has even length iff the sign is `+1`. Cheaper than
/// [`dominant_representative`] when no matrix is needed.
pub fn sort_to_dominant(rs: &RootSystem, mu: &Weight) -> (Weight, i64) {
    let mut v = mu.clone();
    let mut sign = 1;
    while let Some(i) = (0..rs.rank()).find(|&i| v[i] < 0) {
        v = simple_reflection(rs, &v, i);
        sign = -sign;
    }
    (v, sign)
}

/// Poincaré polynomial `t_ν(q)` of the stabilizer `W_ν` of a dominant weight.
pub fn stabilizer_poincare(rs: &RootSystem, nu: &Weight) -> Result<QPoly> {
    rs.check_rank(nu)?;
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu.to_string()));
    }
    let generators: Vec<usize> = (0..rs.rank()).filter(|&i| nu[i] == 0).collect();
    let iter = WeylIter::new(rs, generators);
    Ok(QPoly::from_exponents(iter.map(|w| w.length as i64)))
}

/// `Π_i (1 − q^{m_i+1})/(1 − q)` from the exponents.
pub fn poincare_product_formula(rs: &RootSystem) -> QPoly {
    rs.exponents()
        .iter()
        .map(|m| QPoly::q_integer((*m + 1) as u32))
        .fold(QPoly::one(), |acc, f| &acc * &f)
}

/// The full orbit `Wμ`.
pub fn orbit(rs: &RootSystem, mu: &Weight) -> BTreeSet<Weight> {
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut stack = vec![mu.clone()];
    seen.insert(mu.clone());
    while let Some(v) = stack.pop() {
        for i in 0..rs.rank() {
            if v[i] != 0 {
                let u = simple_reflection(rs, &v, i);
                if seen.insert(u.clone()) {
                    stack.push(u);
                }
            }
        }
    }
    seen
}
