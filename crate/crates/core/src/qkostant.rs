//! The q-analogue of Kostant's partition function,
//! `Π_{γ>0} 1/(1 − q e^γ) = Σ_μ P_q(μ) e^μ`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::poly::QPoly;
use crate::root_system::{RootSystem, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
}

type Memo = Mutex<HashMap<(usize, Vec<i64>), Arc<QPoly>>>;

/// Memoized `P_q` for one root system.
///
/// With the positive roots listed tallest first as `γ_0, …, γ_{N−1}`,
/// `f(k, v) = Σ_{j≥0} q^j f(k+1, v − jγ_k)` counts partitions of `v` using
/// only `γ_k, …`. The trailing block of simple roots is closed-form:
/// the partition is unique and uses `hot(v)` roots.
pub struct QPartition {
    rs: Arc<RootSystem>,
    /// Root coordinates, tallest first.
    roots: Vec<Vec<i64>>,
    /// Index where the simple roots start.
    simple_start: usize,
    memo: Memo,
    hits: AtomicU64,
}

impl QPartition {
    pub fn new(rs: Arc<RootSystem>) -> Self {
        let mut roots: Vec<Vec<i64>> = rs.positive_roots().to_vec();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            hb.cmp(&ha).then_with(|| a.cmp(b))
        });
        let simple_start = roots.len() - rs.rank();
        Self {
            rs,
            roots,
            simple_start,
            memo: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `P_q(μ)`; zero when `μ ∉ Q_+`.
    pub fn q_partition(&self, mu: &Weight) -> QPoly {
        match self.rs.positive_cone_coords(mu) {
            Some(v) => (*self.of_root_coords(&v)).clone(),
            None => QPoly::zero(),
        }
    }

    /// `P_q` for a vector already in simple-root coordinates (all entries ≥ 0).
    pub fn of_root_coords(&self, v: &[i64]) -> Arc<QPoly> {
        self.layer(0, v)
    }

    fn layer(&self, k: usize, v: &[i64]) -> Arc<QPoly> {
        if k >= self.simple_start {
            return Arc::new(QPoly::q_pow(v.iter().sum()));
        }
        let key = (k, v.to_vec());
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Arc::clone(hit);
        }
        let gamma = &self.roots[k];
        let mut acc = QPoly::zero();
        let mut rest = v.to_vec();
        let mut j = 0;
        loop {
            let sub = self.layer(k + 1, &rest);
            acc += &sub.shift(j);
            if !rest.iter().zip(gamma).all(|(a, g)| a >= g) {
                break;
            }
            for (a, g) in rest.iter_mut().zip(gamma) {
                *a -= g;
            }
            j += 1;
        }
        let value = Arc::new(acc);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, Arc::clone(&value));
        value
    }

    pub fn cache_stats(&self) -> CacheStats {
        CacheStats {
            entries: self.memo.lock().expect("memo lock").len(),
            hits: self.hits.load(Ordering::Relaxed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn setup(name: &str) -> QPartition {
        QPartition::new(Arc::new(RootSystem::parse(name).unwrap()))
    }

    /// Enumerates multisets of positive roots summing to `v`, tallying by size.
    fn brute_force(rs: &RootSystem, v: &[i64]) -> QPoly {
        fn go(roots: &[Vec<i64>], start: usize, rest: &mut Vec<i64>, used: i64, out: &mut QPoly) {
            if rest.iter().all(|x| *x == 0) {
                *out += &QPoly::q_pow(used);
                return;
            }
            for k in start..roots.len() {
                if rest.iter().zip(&roots[k]).all(|(a, g)| a >= g) {
                    for (a, g) in rest.iter_mut().zip(&roots[k]) {
                        *a -= g;
                    }
                    go(roots, k, rest, used + 1, out);
                    for (a, g) in rest.iter_mut().zip(&roots[k]) {
                        *a += g;
                    }
                }
            }
        }
        let mut out = QPoly::zero();
        go(rs.positive_roots(), 0, &mut v.to_vec(), 0, &mut out);
        out
    }

    #[test]
    fn small_values() {
        let p = setup("A2");
        let rs = p.root_system().clone();
        assert_eq!(p.q_partition(&rs.zero_weight()), QPoly::one());
        assert_eq!(p.q_partition(&rs.simple_root(0)), QPoly::q_pow(1));
        assert_eq!(p.q_partition(&rs.theta()), QPoly::from_exponents([1, 2]));
        assert_eq!(p.q_partition(&Weight::new(vec![1, 0])), QPoly::zero());
        assert_eq!(p.q_partition(&-&rs.theta()), QPoly::zero());
    }

    #[test]
    fn cache_stats_track_usage() {
        let p = setup("A3");
        assert_eq!(
            p.cache_stats(),
            CacheStats {
                entries: 0,
                hits: 0
            }
        );
        let theta = p.root_system().theta();
        p.q_partition(&theta);
        let first = p.cache_stats();
        assert!(first.entries >= 2, "{first:?}");
        p.q_partition(&theta);
        assert!(p.cache_stats().hits > first.hits);
    }

    #[test]
    fn agrees_with_enumeration() {
        for name in ["A2", "A3", "B2", "B3", "C3", "G2"] {
            let p = setup(name);
            let rs = p.root_system().clone();
            let r = rs.rank();
            let mut boxes = vec![vec![0i64; r]];
            for i in 0..r {
                boxes = boxes
                    .into_iter()
                    .flat_map(|b| {
                        (0..=3).map(move |c| {
                            let mut b = b.clone();
                            b[i] = c;
                            b
                        })
                    })
                    .collect();
            }
            for v in boxes.iter().filter(|b| b.iter().sum::<i64>() <= 8) {
                let got = p.of_root_coords(v);
                let want = brute_force(&rs, v);
                assert_eq!(*got, want, "{name} {v:?}");
                let ht: i64 = v.iter().sum();
                assert_eq!(got.degree(), Some(ht));
                assert!(got.is_monic());
                assert!(got.coefficients_nonnegative());
                let c0 = if ht == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(0)
                };
                assert_eq!(got.coefficient(0), c0);
            }
        }
    }
}
