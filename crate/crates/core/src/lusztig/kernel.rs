//! Coefficients of the kernel `ξ_q = Π_{γ>0} (1 − e^{−γ})/(1 − q e^{−γ})`.
//!
//! Each factor expands as `1 + Σ_{n≥1} q^{n−1}(q − 1) x^n` with `x = e^{−γ}`,
//! so the coefficient at `e^{−ν}` is a sum over multisets of positive roots
//! with sum `ν`, computed root by root like `P_q`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::poly::QPoly;
use crate::root_system::RootSystem;

fn factor_coefficient(n: i64) -> QPoly {
    if n == 0 {
        QPoly::one()
    } else {
        &QPoly::q_pow(n) - &QPoly::q_pow(n - 1)
    }
}

type Memo = Mutex<HashMap<(usize, Vec<i64>), Arc<QPoly>>>;

pub(crate) struct CherednikKernel {
    roots: Vec<Vec<i64>>,
    simple_start: usize,
    memo: Memo,
}

impl CherednikKernel {
    pub(crate) fn new(rs: &RootSystem) -> Self {
        let mut roots: Vec<Vec<i64>> = rs.positive_roots().to_vec();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            hb.cmp(&ha).then_with(|| a.cmp(b))
        });
        let simple_start = roots.len() - rs.rank();
        Self {
            roots,
            simple_start,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Coefficient at `e^{−ν}`, `ν` given in simple-root coordinates (≥ 0).
    pub(crate) fn coefficient(&self, nu: &[i64]) -> Arc<QPoly> {
        self.layer(0, nu)
    }

    fn layer(&self, k: usize, v: &[i64]) -> Arc<QPoly> {
        if k >= self.simple_start {
            return Arc::new(
                v.iter()
                    .map(|n| factor_coefficient(*n))
                    .fold(QPoly::one(), |acc, f| &acc * &f),
            );
        }
        let key = (k, v.to_vec());
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return Arc::clone(hit);
        }
        let gamma = &self.roots[k];
        let mut acc = QPoly::zero();
        let mut rest = v.to_vec();
        let mut n = 0;
        loop {
            let sub = self.layer(k + 1, &rest);
            if !sub.is_zero() {
                acc += &(&*sub * &factor_coefficient(n));
            }
            if !rest.iter().zip(gamma).all(|(a, g)| a >= g) {
                break;
            }
            for (a, g) in rest.iter_mut().zip(gamma) {
                *a -= g;
            }
            n += 1;
        }
        let value = Arc::new(acc);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, Arc::clone(&value));
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one() {
        let rs = RootSystem::parse("A1").unwrap();
        let k = CherednikKernel::new(&rs);
        assert_eq!(*k.coefficient(&[0]), QPoly::one());
        assert_eq!(*k.coefficient(&[1]), "-1 + q".parse().unwrap());
        assert_eq!(*k.coefficient(&[3]), "-1*q^2 + 1*q^3".parse().unwrap());
    }

    #[test]
    fn a2_low_terms() {
        let rs = RootSystem::parse("A2").unwrap();
        let k = CherednikKernel::new(&rs);
        // e^{−θ}: from θ alone, or α1 and α2 together
        let want = &(&QPoly::q_pow(1) - &QPoly::one()) + &(&QPoly::q_pow(1) - &QPoly::one()).pow(2);
        assert_eq!(*k.coefficient(&[1, 1]), want);
    }
}
