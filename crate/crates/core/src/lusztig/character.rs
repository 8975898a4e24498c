//! Ordinary characters: Freudenthal multiplicities, full weight systems,
//! the Weyl dimension formula and Brauer–Klimyk tensor decomposition.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{RootSystem, Weight};
use crate::weyl::{orbit, sort_to_dominant};

/// Finite multiset of weights. Zero multiplicities are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiset {
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_default() += m;
        }
    }

    pub fn get(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.entries.contains_key(w)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u128 {
        self.entries.values().map(|m| u128::from(*m)).sum()
    }

    /// Lexicographic order on coordinates.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> + '_ {
        self.entries.iter().map(|(w, m)| (w, *m))
    }

    /// Entries ordered by `hot(top − μ)` and then lexicographically; weights
    /// not below `top` come last.
    pub fn sorted_from(&self, rs: &RootSystem, top: &Weight) -> Vec<(Weight, u64)> {
        let mut v: Vec<(i64, Weight, u64)> = self
            .entries
            .iter()
            .map(|(w, m)| (rs.depth(top, w).unwrap_or(i64::MAX), w.clone(), *m))
            .collect();
        v.sort();
        v.into_iter().map(|(_, w, m)| (w, m)).collect()
    }
}

impl FromIterator<(Weight, u64)> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = (Weight, u64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (w, m) in iter {
            out.add(w, m);
        }
        out
    }
}

pub(crate) fn require_dominant(rs: &RootSystem, w: &Weight) -> Result<()> {
    rs.check_rank(w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()));
    }
    Ok(())
}

/// Dominant weights `ν ≼ λ`, reached from `λ` by subtracting positive roots
/// while staying dominant; sorted by `hot(λ − ν)`.
pub fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::from([lambda.clone()]);
    seen.insert(lambda.clone());
    while let Some(nu) = queue.pop_front() {
        for g in rs.positive_roots_as_weights() {
            let next = &nu - g;
            if next.is_dominant() && !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<(i64, Weight)> = seen
        .into_iter()
        .map(|w| (rs.depth(lambda, &w).unwrap_or(i64::MAX), w))
        .collect();
    out.sort();
    out.into_iter().map(|(_, w)| w).collect()
}

/// Multiplicities of the dominant weights of `V_λ` by Freudenthal's recursion
/// `(|λ+ρ|² − |μ+ρ|²) m(μ) = 2 Σ_{γ>0} Σ_{k≥1} (μ+kγ, γ) m(μ+kγ)`.
pub fn dominant_character(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    require_dominant(rs, lambda)?;
    let rho = rs.rho();
    let top = lambda + rho;
    let top_norm = rs.inner_product_scaled(&top, &top);
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    let lookup = |mult: &BTreeMap<Weight, u64>, w: &Weight| -> u64 {
        let (d, _) = sort_to_dominant(rs, w);
        mult.get(&d).copied().unwrap_or(0)
    };
    for mu in dominant_weights_below(rs, lambda) {
        if mu == *lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut num: i128 = 0;
        for g in rs.positive_roots_as_weights() {
            let mut v = &mu + g;
            while rs.dominance_leq(&v, lambda) {
                let m = lookup(&mult, &v);
                if m > 0 {
                    num += i128::from(m) * i128::from(rs.inner_product_scaled(&v, g));
                }
                v = &v + g;
            }
        }
        let shifted = &mu + rho;
        let den = i128::from(top_norm - rs.inner_product_scaled(&shifted, &shifted));
        let num = 2 * num;
        if den <= 0 || num % den != 0 {
            return Err(Error::Precondition(format!(
                "Freudenthal step for {mu} in V({lambda}) is not integral"
            )));
        }
        let m = u64::try_from(num / den)
            .map_err(|_| Error::Precondition(format!("negative multiplicity at {mu}")))?;
        if m > 0 {
            mult.insert(mu, m);
        }
    }
    Ok(mult)
}

/// Full character of `V_λ`: the dominant part spread over Weyl orbits.
pub fn character(rs: &RootSystem, lambda: &Weight) -> Result<WeightMultiset> {
    let dom = dominant_character(rs, lambda)?;
    let mut out = WeightMultiset::new();
    for (nu, m) in dom {
        for w in orbit(rs, &nu) {
            out.add(w, m);
        }
    }
    Ok(out)
}

/// `m_λ^μ` by Freudenthal; zero for non-weights.
pub fn freudenthal_multiplicity(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<u64> {
    require_dominant(rs, lambda)?;
    rs.check_rank(mu)?;
    let (d, _) = sort_to_dominant(rs, mu);
    if !rs.dominance_leq(&d, lambda) {
        return Ok(0);
    }
    Ok(dominant_character(rs, lambda)?
        .get(&d)
        .copied()
        .unwrap_or(0))
}

/// `dim V_λ = Π_{γ>0} ⟨λ+ρ, γ∨⟩ / ⟨ρ, γ∨⟩`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigInt> {
    require_dominant(rs, lambda)?;
    let top = lambda + rs.rho();
    let mut acc = BigRational::one();
    for k in 0..rs.positive_roots().len() {
        acc *= BigRational::new(
            rs.coroot_pairing(&top, k).into(),
            rs.coroot_pairing(rs.rho(), k).into(),
        );
    }
    Ok(acc.to_integer())
}

/// Highest weights (with multiplicity) of `V ⊗ V_γ`, where `V` has the
/// character `chi`: for each weight `μ` of `V`, sort `γ + μ + ρ` to the
/// dominant chamber, drop it if it lands on a wall, otherwise add `ε(w)·m`
/// at `w(γ+μ+ρ) − ρ`.
pub fn klimyk_decompose(
    rs: &RootSystem,
    chi: &WeightMultiset,
    gamma: &Weight,
) -> Result<WeightMultiset> {
    require_dominant(rs, gamma)?;
    let rho = rs.rho();
    let shifted = gamma + rho;
    let mut acc: BTreeMap<Weight, i128> = BTreeMap::new();
    for (mu, m) in chi.iter() {
        let (v, sign) = sort_to_dominant(rs, &(&shifted + mu));
        if !v.is_strictly_dominant() {
            continue;
        }
        *acc.entry(&v - rho).or_default() += i128::from(sign) * i128::from(m);
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(w, c)| {
            c.to_u64()
                .map(|c| (w.clone(), c))
                .ok_or_else(|| Error::Precondition(format!("negative tensor coefficient at {w}")))
        })
        .collect()
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

    #[test]
    fn freudenthal_examples() {
        let a2 = rs("A2");
        assert_eq!(
            freudenthal_multiplicity(&a2, &a2.theta(), &w(&[0, 0])).unwrap(),
            2
        );
        let g2 = rs("G2");
        assert_eq!(
            freudenthal_multiplicity(&g2, &g2.theta_s(), &w(&[0, 0])).unwrap(),
            1
        );
        let b3 = rs("B3");
        let l = w(&[1, 1, 1]);
        assert_eq!(freudenthal_multiplicity(&b3, &l, &l).unwrap(), 1);
        assert_eq!(
            freudenthal_multiplicity(&a2, &a2.theta(), &w(&[1, 0])).unwrap(),
            0
        );
        assert!(freudenthal_multiplicity(&a2, &w(&[-1, 0]), &w(&[0, 0])).is_err());
    }

    #[test]
    fn characters() {
        let a2 = rs("A2");
        let adj = character(&a2, &a2.theta()).unwrap();
        assert_eq!(adj.len(), 7);
        assert_eq!(adj.total(), 8);
        assert_eq!(adj.get(&w(&[0, 0])), 2);
        let b2 = rs("B2");
        let little = character(&b2, &b2.theta_s()).unwrap();
        assert_eq!(little.total(), 5);
        assert_eq!(little.len(), 5);
        assert_eq!(little.get(&w(&[0, 0])), 1);
        let std = character(&a2, &w(&[1, 0])).unwrap();
        assert_eq!(std.len(), 3);
        assert_eq!(std.total(), 3);
    }

    #[test]
    fn mass_equals_weyl_dimension_and_character_is_invariant() {
        for name in ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
            let rs = rs(name);
            let r = rs.rank();
            let mut tests = vec![rs.theta(), rs.theta_s(), 2 * &rs.fundamental_weight(0)];
            for i in 0..r {
                tests.push(rs.fundamental_weight(i));
                for j in i + 1..r {
                    tests.push(&rs.fundamental_weight(i) + &rs.fundamental_weight(j));
                }
            }
            if name == "F4" {
                tests.truncate(3);
            }
            for l in tests {
                let chi = character(&rs, &l).unwrap();
                assert_eq!(
                    BigInt::from(chi.total()),
                    weyl_dimension(&rs, &l).unwrap(),
                    "{name} {l}"
                );
                for (mu, m) in chi.iter().take(40) {
                    for v in orbit(&rs, mu) {
                        assert_eq!(chi.get(&v), m);
                    }
                }
            }
        }
        assert_eq!(
            weyl_dimension(&rs("F4"), &rs("F4").theta()).unwrap(),
            BigInt::from(52)
        );
        assert_eq!(
            weyl_dimension(&rs("E6"), &w(&[1, 0, 0, 0, 0, 0])).unwrap(),
            BigInt::from(27)
        );
    }

    #[test]
    fn klimyk_examples() {
        let a2 = rs("A2");
        // V(ϖ2) ⊗ V(ϖ1) = adjoint ⊕ trivial
        let chi = character(&a2, &w(&[0, 1])).unwrap();
        let dec = klimyk_decompose(&a2, &chi, &w(&[1, 0])).unwrap();
        let expect: WeightMultiset = [(w(&[1, 1]), 1), (w(&[0, 0]), 1)].into_iter().collect();
        assert_eq!(dec, expect);
        // adjoint ⊗ adjoint = 27 + 10 + 10* + 8 + 8 + 1
        let adj = character(&a2, &a2.theta()).unwrap();
        let dec = klimyk_decompose(&a2, &adj, &a2.theta()).unwrap();
        let expect: WeightMultiset = [
            (w(&[2, 2]), 1),
            (w(&[3, 0]), 1),
            (w(&[0, 3]), 1),
            (w(&[1, 1]), 2),
            (w(&[0, 0]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(dec, expect);
    }

    #[test]
    fn klimyk_preserves_dimension() {
        let b3 = rs("B3");
        let a = w(&[1, 0, 1]);
        let g = w(&[0, 1, 0]);
        let chi = character(&b3, &a).unwrap();
        let dec = klimyk_decompose(&b3, &chi, &g).unwrap();
        let total: BigInt = dec
            .iter()
            .map(|(nu, m)| weyl_dimension(&b3, nu).unwrap() * BigInt::from(m))
            .sum();
        assert_eq!(
            total,
            weyl_dimension(&b3, &a).unwrap() * weyl_dimension(&b3, &g).unwrap()
        );
    }
}
