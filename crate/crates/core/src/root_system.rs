//! Simple root systems of types A–G in Bourbaki numbering.
//!
//! Roots are stored in simple-root coordinates, weights in the
//! fundamental-weight basis. Conversion between the two goes through the
//! inverse Cartan matrix with exact rational arithmetic.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Systems whose Weyl group is larger than this are refused unless the
/// caller opts in (this excludes E7 and E8 by default).
pub const WEYL_ORDER_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Letter {
    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
        }
    }
}

/// A valid `(letter, rank)` pair naming a simple root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    letter: Letter,
    rank: usize,
}

impl CartanType {
    pub fn new(letter: Letter, rank: usize) -> Result<Self> {
        let ok = match letter {
            Letter::A => rank >= 1,
            Letter::B | Letter::C => rank >= 2,
            Letter::D => rank >= 4,
            Letter::E => (6..=8).contains(&rank),
            Letter::F => rank == 4,
            Letter::G => rank == 2,
        };
        if ok {
            Ok(Self { letter, rank })
        } else {
            Err(Error::InvalidType {
                letter: letter.as_char(),
                rank,
            })
        }
    }

    pub fn letter(self) -> Letter {
        self.letter
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Type of the dual (coroot) system.
    pub fn dual(self) -> Self {
        let letter = match self.letter {
            Letter::B => Letter::C,
            Letter::C => Letter::B,
            other => other,
        };
        Self {
            letter,
            rank: self.rank,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.letter, Letter::A | Letter::D | Letter::E)
    }

    /// Cartan matrix with `A[i][j] = ⟨α_j, α_i∨⟩`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.letter {
            Letter::A | Letter::B | Letter::C => {
                for i in 1..r {
                    link(i - 1, i);
                }
            }
            Letter::D => {
                for i in 1..r - 1 {
                    link(i - 1, i);
                }
                link(r - 3, r - 1);
            }
            Letter::E => {
                link(0, 2);
                link(1, 3);
                for i in 3..r {
                    link(i - 1, i);
                }
            }
            Letter::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Letter::G => link(0, 1),
        }
        match self.letter {
            // α_r short
            Letter::B => a[r - 1][r - 2] = -2,
            // α_r long
            Letter::C => a[r - 2][r - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            Letter::F => a[2][1] = -2,
            // α_1 short, α_2 long
            Letter::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Exponents `m_1 ≤ … ≤ m_r` of the Weyl group.
    pub fn exponents(self) -> Vec<i64> {
        let r = self.rank as i64;
        let mut e: Vec<i64> = match self.letter {
            Letter::A => (1..=r).collect(),
            Letter::B | Letter::C => (1..=r).map(|i| 2 * i - 1).collect(),
            Letter::D => (1..r).map(|i| 2 * i - 1).chain([r - 1]).collect(),
            Letter::E => match r {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Letter::F => vec![1, 5, 7, 11],
            Letter::G => vec![1, 5],
        };
        e.sort_unstable();
        e
    }

    /// `|W| = Π (m_i + 1)`, saturating at `u128::MAX`.
    pub fn weyl_order(self) -> u128 {
        self.exponents()
            .iter()
            .fold(1u128, |acc, m| acc.saturating_mul((*m + 1) as u128))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter.as_char(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .and_then(Letter::from_char)
            .ok_or_else(|| Error::Parse(format!("unknown root system type {s:?}")))?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 4 {
            return Err(Error::Parse(format!("bad rank in root system type {s:?}")));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in root system type {s:?}")))?;
        CartanType::new(letter, rank)
    }
}

/// Integral weight in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// The fundamental weight `ϖ_i` (0-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| *c >= 0)
    }

    pub fn is_strictly_dominant(&self) -> bool {
        self.0.iter().all(|c| *c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, optionally wrapped in `()` or `[]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
            .unwrap_or(t);
        if t.trim().is_empty() {
            return Err(Error::Parse(format!("empty weight {s:?}")));
        }
        t.split(',')
            .map(|part| {
                let part = part.trim();
                let digits = part.strip_prefix('-').unwrap_or(part);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!(
                        "bad weight coordinate {part:?} in {s:?}"
                    )));
                }
                part.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("weight coordinate {part:?} out of range")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// Immutable description of a simple root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    name: String,
    cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i)/2`, normalized so short roots have `d = 1`.
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    positive_roots_weight: Vec<Weight>,
    heights: Vec<i64>,
    /// `(γ, γ)/2` for each positive root.
    root_norms: Vec<i64>,
    root_index: HashMap<Vec<i64>, usize>,
    theta: usize,
    theta_s: usize,
    rho: Weight,
    rho_check: Vec<Rational64>,
    coxeter_number: i64,
    exponents: Vec<i64>,
    /// `inv_den · A⁻¹`, an integer matrix.
    inv_num: Vec<Vec<i64>>,
    inv_den: i64,
    allow_large_weyl: bool,
}

impl RootSystem {
    /// Builds the root system, refusing Weyl groups above [`WEYL_ORDER_LIMIT`].
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        Self::with_options(cartan_type, false)
    }

    pub fn with_options(cartan_type: CartanType, allow_large_weyl: bool) -> Result<Self> {
        let order = cartan_type.weyl_order();
        if order > WEYL_ORDER_LIMIT && !allow_large_weyl {
            return Err(Error::WeylGuard {
                name: cartan_type.to_string(),
                order,
                limit: WEYL_ORDER_LIMIT,
            });
        }
        Ok(Self::from_cartan(
            cartan_type,
            cartan_type.to_string(),
            cartan_type.cartan_matrix(),
            allow_large_weyl,
        ))
    }

    /// Parses a type string such as `"B3"` and builds the system.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    fn from_cartan(
        cartan_type: CartanType,
        name: String,
        cartan: Vec<Vec<i64>>,
        allow_large_weyl: bool,
    ) -> Self {
        let r = cartan.len();
        let symmetrizer = symmetrize(&cartan);
        let mut roots = generate_positive_roots(&cartan);
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let heights: Vec<i64> = roots.iter().map(|c| c.iter().sum()).collect();
        let norm = |c: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..r {
                for j in 0..r {
                    s += c[i] * symmetrizer[i] * cartan[i][j] * c[j];
                }
            }
            s / 2
        };
        let root_norms: Vec<i64> = roots.iter().map(|c| norm(c)).collect();
        let to_weight = |c: &[i64]| -> Weight {
            Weight(
                (0..r)
                    .map(|i| (0..r).map(|j| cartan[i][j] * c[j]).sum())
                    .collect(),
            )
        };
        let positive_roots_weight: Vec<Weight> = roots.iter().map(|c| to_weight(c)).collect();
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k))
            .collect();
        let theta = roots.len() - 1;
        let short = *root_norms.iter().min().unwrap_or(&1);
        let theta_s = (0..roots.len())
            .rev()
            .find(|&k| root_norms[k] == short)
            .unwrap_or(theta);

        let mut rho2 = vec![0i64; r];
        for w in &positive_roots_weight {
            for i in 0..r {
                rho2[i] += w[i];
            }
        }
        let rho = Weight(rho2.iter().map(|x| x / 2).collect());

        let mut rho_check = vec![Rational64::zero(); r];
        for (c, n) in roots.iter().zip(&root_norms) {
            for i in 0..r {
                rho_check[i] += Rational64::new(c[i] * symmetrizer[i], *n);
            }
        }
        for x in &mut rho_check {
            *x /= 2;
        }

        let (inv_num, inv_den) = scaled_inverse(&cartan);
        let coxeter_number = heights.last().copied().unwrap_or(0) + 1;
        Self {
            cartan_type,
            name,
            exponents: cartan_type.exponents(),
            cartan,
            symmetrizer,
            positive_roots: roots,
            positive_roots_weight,
            heights,
            root_norms,
            root_index,
            theta,
            theta_s,
            rho,
            rho_check,
            coxeter_number,
            inv_num,
            inv_den,
            allow_large_weyl,
        }
    }

    /// The system whose roots are the coroots of `self`.
    pub fn dual(&self) -> RootSystem {
        let r = self.rank();
        let transposed: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| self.cartan[j][i]).collect())
            .collect();
        let dual_type = self.cartan_type.dual();
        let name = if transposed == dual_type.cartan_matrix() {
            dual_type.to_string()
        } else if transposed == self.cartan {
            self.name.clone()
        } else {
            format!("{dual_type}^v")
        };
        Self::from_cartan(dual_type, name, transposed, self.allow_large_weyl)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// Display name; `"F4^v"` marks a dual system in non-Bourbaki numbering.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn large_weyl_allowed(&self) -> bool {
        self.allow_large_weyl
    }

    pub fn weyl_order(&self) -> u128 {
        self.cartan_type.weyl_order()
    }

    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in the fundamental-weight basis, same order.
    pub fn positive_roots_as_weights(&self) -> &[Weight] {
        &self.positive_roots_weight
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn root_norm(&self, k: usize) -> i64 {
        self.root_norms[k]
    }

    pub fn root_index(&self, root_coords: &[i64]) -> Option<usize> {
        self.root_index.get(root_coords).copied()
    }

    pub fn has_two_root_lengths(&self) -> bool {
        self.root_norms.iter().any(|n| *n != self.root_norms[0])
    }

    pub fn is_short_root(&self, k: usize) -> bool {
        self.root_norms[k] == 1
    }

    /// Indices of short positive roots. All roots count as short when simply laced.
    pub fn short_positive_roots(&self) -> Vec<usize> {
        (0..self.positive_roots.len())
            .filter(|&k| self.is_short_root(k))
            .collect()
    }

    pub fn is_short_simple(&self, i: usize) -> bool {
        self.symmetrizer[i] == 1
    }

    pub fn theta(&self) -> Weight {
        self.positive_roots_weight[self.theta].clone()
    }

    pub fn theta_root_coords(&self) -> &[i64] {
        &self.positive_roots[self.theta]
    }

    pub fn theta_s(&self) -> Weight {
        self.positive_roots_weight[self.theta_s].clone()
    }

    pub fn theta_s_root_coords(&self) -> &[i64] {
        &self.positive_roots[self.theta_s]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `ρ∨` in the basis of simple coroots.
    pub fn rho_check(&self) -> &[Rational64] {
        &self.rho_check
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|k| self.cartan[k][i]).collect())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                weight: w.to_string(),
                got: w.rank(),
                expected: self.rank(),
            });
        }
        Ok(())
    }

    /// Simple-root coordinates to the fundamental-weight basis: `A·c`.
    pub fn root_to_weight_basis(&self, root_coords: &[i64]) -> Weight {
        let r = self.rank();
        Weight(
            (0..r)
                .map(|i| (0..r).map(|j| self.cartan[i][j] * root_coords[j]).sum())
                .collect(),
        )
    }

    /// Exact solution `x` of `A·x = w`.
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Rational64> {
        self.scaled_root_coords(w)
            .into_iter()
            .map(|n| Rational64::new(n, self.inv_den))
            .collect()
    }

    fn scaled_root_coords(&self, w: &Weight) -> Vec<i64> {
        self.inv_num
            .iter()
            .map(|row| row.iter().zip(w.coords()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Simple-root coordinates when `w ∈ Q`.
    pub fn root_coords_integral(&self, w: &Weight) -> Option<Vec<i64>> {
        let den = self.inv_den;
        self.scaled_root_coords(w)
            .into_iter()
            .map(|n| if n % den == 0 { Some(n / den) } else { None })
            .collect()
    }

    /// Simple-root coordinates when `w ∈ Q_+`.
    pub fn positive_cone_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        let den = self.inv_den;
        let mut out = Vec::with_capacity(self.rank());
        for row in &self.inv_num {
            let n: i64 = row.iter().zip(w.coords()).map(|(a, b)| a * b).sum();
            if n < 0 || n % den != 0 {
                return None;
            }
            out.push(n / den);
        }
        Some(out)
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coords_integral(w).is_some()
    }

    pub fn in_positive_cone(&self, w: &Weight) -> bool {
        self.positive_cone_coords(w).is_some()
    }

    /// `μ ≼ λ`, i.e. `λ − μ ∈ Q_+`.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.in_positive_cone(&(lambda - mu))
    }

    /// `hot(γ)` for `γ ∈ Q_+`.
    pub fn height(&self, gamma: &Weight) -> Result<i64> {
        self.positive_cone_coords(gamma)
            .map(|c| c.iter().sum())
            .ok_or_else(|| Error::NotInPositiveCone(gamma.to_string()))
    }

    /// `hot(λ − μ)` when `μ ≼ λ`.
    pub fn depth(&self, lambda: &Weight, mu: &Weight) -> Option<i64> {
        self.positive_cone_coords(&(lambda - mu))
            .map(|c| c.iter().sum())
    }

    /// `⟨μ, ν∨⟩` for a positive root `ν` given in simple-root coordinates.
    pub fn pairing(&self, mu: &Weight, nu_root_coords: &[i64]) -> Result<Rational64> {
        let k = self
            .root_index(nu_root_coords)
            .ok_or_else(|| Error::NotARoot(format!("{nu_root_coords:?}")))?;
        Ok(Rational64::from_integer(self.coroot_pairing(mu, k)))
    }

    /// `⟨μ, γ_k∨⟩` for the `k`-th positive root.
    pub fn coroot_pairing(&self, mu: &Weight, k: usize) -> i64 {
        let c = &self.positive_roots[k];
        let s: i64 = (0..self.rank())
            .map(|i| mu[i] * c[i] * self.symmetrizer[i])
            .sum();
        s / self.root_norms[k]
    }

    /// `(μ, ν)` scaled by the fixed positive integer [`Self::form_scale`].
    pub fn inner_product_scaled(&self, mu: &Weight, nu: &Weight) -> i64 {
        let x = self.scaled_root_coords(mu);
        (0..self.rank())
            .map(|i| x[i] * self.symmetrizer[i] * nu[i])
            .sum()
    }

    pub fn form_scale(&self) -> i64 {
        self.inv_den
    }

    /// `(μ, 2ρ∨)`, which equals `2·hot(μ)` on the root lattice.
    pub fn two_rho_check_pairing(&self, mu: &Weight) -> Rational64 {
        self.weight_to_root_coords(mu).iter().sum::<Rational64>() * 2
    }

    /// `(μ, μ)` for a weight given in the fundamental basis, as a rational.
    pub fn norm_squared(&self, mu: &Weight) -> Rational64 {
        Rational64::new(self.inner_product_scaled(mu, mu), self.inv_den)
    }

    /// Whether `w` is a rational multiple of some root.
    pub fn is_multiple_of_root(&self, w: &Weight) -> bool {
        if w.is_zero() {
            return false;
        }
        let x = self.weight_to_root_coords(w);
        self.positive_roots.iter().any(|c| {
            let k = (0..c.len()).find(|&i| c[i] != 0).unwrap_or(0);
            let ratio = x[k] / Rational64::from_integer(c[k]);
            !ratio.is_zero()
                && x.iter()
                    .zip(c)
                    .all(|(xi, ci)| *xi == ratio * Rational64::from_integer(*ci))
        })
    }
}

/// Positive roots by closure from the simple roots using root strings:
/// for a root `β` with `β − pα_i, …, β` in the string, `β + α_i` is a root
/// iff `p − ⟨β, α_i∨⟩ > 0`.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut level: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut all = Vec::new();
    while !level.is_empty() {
        for b in &level {
            known.insert(b.clone());
        }
        let mut next: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        for beta in &level {
            for i in 0..r {
                let is_simple_i = beta
                    .iter()
                    .enumerate()
                    .all(|(j, c)| *c == i64::from(j == i));
                if is_simple_i {
                    continue;
                }
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !known.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let pair: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut level);
        level = next;
    }
    all
}

/// Smallest positive integers `d_i` with `d_i A_ij = d_j A_ji`.
fn symmetrize(cartan: &[Vec<i64>]) -> Vec<i64> {
    let r = cartan.len();
    let mut d: Vec<Option<Rational64>> = vec![None; r];
    d[0] = Some(Rational64::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..r {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                let di = d[i].unwrap_or_else(Rational64::one);
                d[j] = Some(di * Rational64::new(cartan[i][j], cartan[j][i]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Rational64> = d
        .into_iter()
        .map(|x| x.unwrap_or_else(Rational64::one))
        .collect();
    let min = d
        .iter()
        .copied()
        .fold(d[0], |a, b| if b < a { b } else { a });
    let scaled: Vec<Rational64> = d.iter().map(|x| x / min).collect();
    let den = scaled.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    scaled.iter().map(|x| (x * den).to_integer()).collect()
}

/// Returns `(N, D)` with `N = D·A⁻¹` integral and `D > 0` minimal.
fn scaled_inverse(a: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let r = a.len();
    let mut m: Vec<Vec<Rational64>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rational64> =
                a[i].iter().map(|x| Rational64::from_integer(*x)).collect();
            row.extend((0..r).map(|j| Rational64::from_integer(i64::from(i == j))));
            row
        })
        .collect();
    for col in 0..r {
        let piv = (col..r)
            .find(|&k| !m[k][col].is_zero())
            .expect("Cartan matrix is invertible");
        m.swap(col, piv);
        let p = m[col][col];
        for x in &mut m[col] {
            *x /= p;
        }
        for k in 0..r {
            if k != col && !m[k][col].is_zero() {
                let f = m[k][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[k].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    let inv: Vec<Vec<Rational64>> = m.into_iter().map(|row| row[r..].to_vec()).collect();
    let den = inv.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let num = inv
        .iter()
        .map(|row| row.iter().map(|x| (x * den).to_integer()).collect())
        .collect();
    (num, den.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    const ALL: &[&str] = &[
        "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "E6", "F4", "G2",
    ];

    #[test]
    fn type_parsing() {
        assert_eq!("b3".parse::<CartanType>().unwrap().to_string(), "B3");
        assert_eq!(" G2 ".parse::<CartanType>().unwrap().to_string(), "G2");
        for bad in [
            "", "A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3", "H3", "A", "A-1", "A+2", "Ax",
        ] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!("1,-2, 0".parse::<Weight>().unwrap(), w(&[1, -2, 0]));
        assert_eq!("[3]".parse::<Weight>().unwrap(), w(&[3]));
        assert_eq!(
            w(&[1, -2]).to_string().parse::<Weight>().unwrap(),
            w(&[1, -2])
        );
        for bad in [
            "",
            "1,,2",
            "a",
            "1.5",
            "--1",
            "1,2,",
            "99999999999999999999",
        ] {
            assert!(bad.parse::<Weight>().is_err(), "{bad}");
        }
    }

    #[test]
    fn build_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.coxeter_number(), 3);
        assert_eq!(a2.positive_roots().len(), 3);
        assert_eq!(a2.exponents(), &[1, 2]);

        let g2 = rs("G2");
        assert_eq!(g2.coxeter_number(), 6);
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.exponents(), &[1, 5]);

        let c3 = rs("C3");
        assert_eq!(c3.coxeter_number(), 6);
        assert_eq!(c3.positive_roots().len(), 9);
        assert_eq!(c3.theta_root_coords(), &[2, 2, 1]);
        assert_eq!(c3.theta_s_root_coords(), &[1, 2, 1]);
    }

    #[test]
    fn guard_refuses_e7_e8() {
        for t in ["E7", "E8"] {
            assert!(matches!(RootSystem::parse(t), Err(Error::WeylGuard { .. })));
            let ct: CartanType = t.parse().unwrap();
            let big = RootSystem::with_options(ct, true).unwrap();
            assert!(big.large_weyl_allowed());
        }
        assert!(RootSystem::parse("E6").is_ok());
    }

    #[test]
    fn structural_invariants() {
        for name in ALL {
            let rs = rs(name);
            let r = rs.rank() as i64;
            let h = rs.coxeter_number();
            let n = rs.positive_roots().len() as i64;
            assert_eq!(n, h * r / 2, "{name}: |Δ+| = hr/2");
            let e = rs.exponents();
            assert_eq!(e[0], 1);
            assert_eq!(*e.last().unwrap(), h - 1);
            for i in 0..e.len() {
                assert_eq!(e[i] + e[e.len() - 1 - i], h, "{name}: m_i + m_(r-i+1) = h");
            }
            assert_eq!(rs.rho(), &w(&vec![1; rs.rank()]), "{name}: ρ is all ones");
            assert_eq!(rs.height(&rs.theta()).unwrap(), h - 1);
            assert!(
                rs.theta().is_dominant() && rs.theta_s().is_dominant(),
                "{name}"
            );
            // ⟨α_i, ρ∨⟩ = 1
            for i in 0..rs.rank() {
                let s: Rational64 = (0..rs.rank())
                    .map(|j| rs.rho_check()[j] * rs.cartan()[j][i])
                    .sum();
                assert_eq!(s, Rational64::one(), "{name}");
            }
            // closure: every non-simple root has a simple root below it
            for c in rs.positive_roots() {
                if c.iter().sum::<i64>() == 1 {
                    continue;
                }
                let ok = (0..rs.rank()).any(|i| {
                    let mut d = c.clone();
                    d[i] -= 1;
                    rs.root_index(&d).is_some()
                });
                assert!(ok, "{name}: {c:?}");
            }
            // exponents dual to height counts
            let mut counts = vec![0i64; h as usize];
            for ht in rs.heights() {
                counts[*ht as usize - 1] += 1;
            }
            let dual: Vec<i64> = {
                let mut d: Vec<i64> = (1..=counts[0])
                    .map(|k| counts.iter().filter(|c| **c >= k).count() as i64)
                    .collect();
                d.sort_unstable();
                d
            };
            assert_eq!(dual, e, "{name}: exponents dual to height partition");
        }
    }

    #[test]
    fn basis_conversions() {
        let a2 = rs("A2");
        assert_eq!(a2.root_to_weight_basis(&[1, 0]), w(&[2, -1]));
        assert_eq!(a2.root_to_weight_basis(&[1, 1]), w(&[1, 1]));
        let g2 = rs("G2");
        assert_eq!(
            g2.root_to_weight_basis(g2.theta_s_root_coords()),
            w(&[1, 0])
        );
        assert_eq!(g2.theta(), w(&[0, 1]));

        let r = |a, b| Rational64::new(a, b);
        assert_eq!(
            a2.weight_to_root_coords(&w(&[1, 1])),
            vec![r(1, 1), r(1, 1)]
        );
        assert_eq!(
            a2.weight_to_root_coords(&w(&[1, 0])),
            vec![r(2, 3), r(1, 3)]
        );
        assert_eq!(
            a2.weight_to_root_coords(&w(&[0, 0])),
            vec![r(0, 1), r(0, 1)]
        );
    }

    #[test]
    fn dominance_and_height() {
        let a2 = rs("A2");
        assert!(a2.dominance_leq(&w(&[0, 0]), &a2.theta()));
        assert!(!a2.dominance_leq(&w(&[1, 0]), &a2.theta()));
        assert!(a2.dominance_leq(&a2.theta(), &a2.theta()));
        assert_eq!(a2.height(&a2.theta()).unwrap(), 2);
        assert_eq!(rs("G2").height(&rs("G2").theta()).unwrap(), 5);
        let c3 = rs("C3");
        assert_eq!(c3.height(&c3.theta_s()).unwrap(), 4);
        assert!(a2.height(&w(&[1, 0])).is_err());
        assert!(a2.height(&w(&[-2, 1])).is_err());
    }

    #[test]
    fn pairings() {
        for name in ["A3", "B3", "C3", "G2", "F4"] {
            let rs = rs(name);
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let mut e = vec![0; rs.rank()];
                    e[j] = 1;
                    let p = rs.pairing(&rs.fundamental_weight(i), &e).unwrap();
                    assert_eq!(p, Rational64::from_integer(i64::from(i == j)));
                }
            }
            for k in 0..rs.positive_roots().len() {
                let g = rs.positive_roots_as_weights()[k].clone();
                assert_eq!(rs.coroot_pairing(&g, k), 2);
            }
        }
        let a2 = rs("A2");
        assert_eq!(
            a2.pairing(&a2.theta(), &[1, 1]).unwrap(),
            Rational64::from_integer(2)
        );
        let g2 = rs("G2");
        assert_eq!(
            g2.pairing(&g2.theta(), g2.theta_s_root_coords()).unwrap(),
            Rational64::from_integer(3)
        );
        assert!(a2.pairing(&a2.theta(), &[2, 0]).is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(rs("B3").dual().cartan(), rs("C3").cartan());
        assert_eq!(rs("B3").dual().name(), "C3");
        assert_eq!(rs("C4").dual().cartan(), rs("B4").cartan());
        assert_eq!(rs("A2").dual().cartan(), rs("A2").cartan());
        let f4 = rs("F4");
        let f4v = f4.dual();
        assert_eq!(f4v.cartan_type().to_string(), "F4");
        assert_ne!(f4v.cartan(), f4.cartan());
        for i in 0..4 {
            assert_eq!(f4v.is_short_simple(i), !f4.is_short_simple(i));
        }
        let g2v = rs("G2").dual();
        assert!(!g2v.is_short_simple(0) && g2v.is_short_simple(1));
        assert_eq!(f4v.positive_roots().len(), 24);
        assert_eq!(f4v.coxeter_number(), 12);
        // θ of the dual is the coroot of θ_s
        let d = rs("B3").dual();
        let c3 = rs("C3");
        assert_eq!(d.theta_s(), c3.theta_s());
    }

    #[test]
    fn inner_product_is_symmetric_and_matches_pairing() {
        let rs = rs("G2");
        let roots = rs.positive_roots_as_weights();
        for a in roots {
            for b in roots {
                assert_eq!(rs.inner_product_scaled(a, b), rs.inner_product_scaled(b, a));
            }
        }
        for (k, g) in roots.iter().enumerate() {
            let mu = w(&[3, -1]);
            let lhs = Rational64::new(
                2 * rs.inner_product_scaled(&mu, g),
                rs.inner_product_scaled(g, g),
            );
            assert_eq!(lhs, Rational64::from_integer(rs.coroot_pairing(&mu, k)));
        }
        assert!(rs.is_multiple_of_root(&(2 * &rs.theta_s())));
        assert!(!rs.is_multiple_of_root(&w(&[1, 1])));
        assert_eq!(
            rs.two_rho_check_pairing(&rs.theta()),
            Rational64::from_integer(10)
        );
    }
}
