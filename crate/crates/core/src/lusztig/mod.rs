//! Lusztig's q-analogues of weight multiplicity and the character-theoretic
//! operations around them.
//!
//! `m_λ^μ(q) = Σ_{w∈W} ε(w) P_q(w(λ+ρ) − (μ+ρ))` is computed three ways:
//! directly from this alternating sum, by the reflection recursion from the
//! dominant chamber, and by expanding `χ_λ · ξ_q`.

mod character;
mod kernel;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use character::require_dominant;
pub use character::{
    character, dominant_character, dominant_weights_below, freudenthal_multiplicity,
    klimyk_decompose, weyl_dimension, WeightMultiset,
};
use kernel::CherednikKernel;

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::qkostant::{CacheStats, QPartition};
use crate::root_system::{RootSystem, Weight};
use crate::weyl::{check_guard, dominant_representative, enumerate_weyl, stabilizer_poincare};

type SignedOrbit = Arc<Vec<(Weight, i64)>>;

/// All q-analogue computations for one root system, with shared memos.
pub struct Engine {
    rs: Arc<RootSystem>,
    partitions: QPartition,
    kernel: CherednikKernel,
    orbits: Mutex<HashMap<Weight, SignedOrbit>>,
    defining: Mutex<HashMap<(Weight, Weight), QPoly>>,
    induction: Mutex<HashMap<(Weight, Weight), QPoly>>,
    characters: Mutex<HashMap<Weight, Arc<WeightMultiset>>>,
    w0: OnceLock<Vec<Vec<i64>>>,
}

impl Engine {
    /// Fails if the Weyl group is above the size guard.
    pub fn new(rs: RootSystem) -> Result<Self> {
        Self::from_arc(Arc::new(rs))
    }

    pub fn from_arc(rs: Arc<RootSystem>) -> Result<Self> {
        check_guard(&rs)?;
        Ok(Self {
            partitions: QPartition::new(Arc::clone(&rs)),
            kernel: CherednikKernel::new(&rs),
            rs,
            orbits: Mutex::new(HashMap::new()),
            defining: Mutex::new(HashMap::new()),
            induction: Mutex::new(HashMap::new()),
            characters: Mutex::new(HashMap::new()),
            w0: OnceLock::new(),
        })
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::new(RootSystem::parse(name)?)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn q_partition(&self, mu: &Weight) -> Result<QPoly> {
        self.rs.check_rank(mu)?;
        Ok(self.partitions.q_partition(mu))
    }

    pub fn partition_cache_stats(&self) -> CacheStats {
        self.partitions.cache_stats()
    }

    /// `{(w(λ+ρ), ε(w))}` over the whole group.
    fn signed_orbit(&self, lambda: &Weight) -> SignedOrbit {
        let mut orbits = self.orbits.lock().expect("orbit lock");
        if let Some(o) = orbits.get(lambda) {
            return Arc::clone(o);
        }
        let top = lambda + self.rs.rho();
        let list: Vec<(Weight, i64)> = enumerate_weyl(&self.rs)
            .expect("guard checked at construction")
            .map(|w| (w.act(&top), w.sign()))
            .collect();
        let list = Arc::new(list);
        orbits.insert(lambda.clone(), Arc::clone(&list));
        list
    }

    fn check_pair(&self, lambda: &Weight, mu: &Weight) -> Result<()> {
        require_dominant(&self.rs, lambda)?;
        self.rs.check_rank(mu)
    }

    /// `m_λ^μ(q)` from the alternating sum.
    pub fn lusztig_q_analogue(&self, lambda: &Weight, mu: &Weight) -> Result<QPoly> {
        self.check_pair(lambda, mu)?;
        Ok(self.defining_sum(lambda, mu))
    }

    fn defining_sum(&self, lambda: &Weight, mu: &Weight) -> QPoly {
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.defining.lock().expect("memo lock").get(&key) {
            return v.clone();
        }
        let target = mu + self.rs.rho();
        let mut acc = QPoly::zero();
        for (image, sign) in self.signed_orbit(lambda).iter() {
            if let Some(v) = self.rs.positive_cone_coords(&(image - &target)) {
                let p = self.partitions.of_root_coords(&v);
                if *sign > 0 {
                    acc += &p;
                } else {
                    acc -= &p;
                }
            }
        }
        self.defining
            .lock()
            .expect("memo lock")
            .insert(key, acc.clone());
        acc
    }

    /// `m_λ^μ(q)` by reflecting `μ` towards the dominant chamber: when
    /// `⟨μ, α∨⟩ = −n < 0`, `m^μ = q m^{μ+α}` for `n = 1` and
    /// `m^μ = q (m^{μ+α} + m^{μ+nα}) − m^{μ+(n−1)α}` otherwise.
    pub fn q_analogue_by_induction(&self, lambda: &Weight, mu: &Weight) -> Result<QPoly> {
        self.check_pair(lambda, mu)?;
        Ok(self.induction_step(lambda, mu))
    }

    fn induction_step(&self, lambda: &Weight, mu: &Weight) -> QPoly {
        if !self.rs.dominance_leq(mu, lambda) {
            return QPoly::zero();
        }
        if mu.is_dominant() {
            return self.defining_sum(lambda, mu);
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.induction.lock().expect("memo lock").get(&key) {
            return v.clone();
        }
        let i = (0..self.rs.rank())
            .find(|&i| mu[i] < 0)
            .expect("not dominant");
        let n = -mu[i];
        let alpha = self.rs.simple_root(i);
        let q = QPoly::q_pow(1);
        let up1 = self.induction_step(lambda, &(mu + &alpha));
        let value = if n == 1 {
            &q * &up1
        } else {
            let up_n = self.induction_step(lambda, &(mu + &(n * &alpha)));
            let up_n1 = self.induction_step(lambda, &(mu + &((n - 1) * &alpha)));
            &(&q * &(&up1 + &up_n)) - &up_n1
        };
        self.induction
            .lock()
            .expect("memo lock")
            .insert(key, value.clone());
        value
    }

    /// `m_0^{−ν}(q)`, the coefficient of `e^{−ν}` in `ξ_q`.
    pub fn cherednik_coefficient(&self, nu: &Weight) -> Result<QPoly> {
        self.rs.check_rank(nu)?;
        let v = self
            .rs
            .positive_cone_coords(nu)
            .ok_or_else(|| Error::NotInPositiveCone(nu.to_string()))?;
        Ok((*self.kernel.coefficient(&v)).clone())
    }

    /// `m_λ^μ(q) = Σ_{γ≽μ} m_λ^γ m_0^{μ−γ}(q)`.
    pub fn q_analogue_via_kernel(&self, lambda: &Weight, mu: &Weight) -> Result<QPoly> {
        self.check_pair(lambda, mu)?;
        let chi = self.character(lambda)?;
        let mut acc = QPoly::zero();
        for (gamma, m) in chi.iter() {
            if let Some(v) = self.rs.positive_cone_coords(&(gamma - mu)) {
                acc += &self.kernel.coefficient(&v).scale(&BigInt::from(m));
            }
        }
        Ok(acc)
    }

    pub fn freudenthal_multiplicity(&self, lambda: &Weight, mu: &Weight) -> Result<u64> {
        self.check_pair(lambda, mu)?;
        Ok(self.character(lambda)?.get(mu))
    }

    /// Memoized character of `V_λ`.
    pub fn character(&self, lambda: &Weight) -> Result<Arc<WeightMultiset>> {
        if let Some(c) = self.characters.lock().expect("memo lock").get(lambda) {
            return Ok(Arc::clone(c));
        }
        let chi = Arc::new(character(&self.rs, lambda)?);
        self.characters
            .lock()
            .expect("memo lock")
            .insert(lambda.clone(), Arc::clone(&chi));
        Ok(chi)
    }

    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigInt> {
        weyl_dimension(&self.rs, lambda)
    }

    /// `λ* = −w0(λ)`.
    pub fn dual_weight(&self, lambda: &Weight) -> Result<Weight> {
        require_dominant(&self.rs, lambda)?;
        let w0 = self.w0.get_or_init(|| {
            let (_, w) = dominant_representative(&self.rs, &-self.rs.rho());
            w.matrix().to_vec()
        });
        let image: Vec<i64> = w0
            .iter()
            .map(|row| {
                -row.iter()
                    .zip(lambda.coords())
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
            })
            .collect();
        Ok(Weight::new(image))
    }

    /// Highest weights of `V_λ ⊗ V_γ` with multiplicity.
    pub fn tensor_decomposition(&self, lambda: &Weight, gamma: &Weight) -> Result<WeightMultiset> {
        let chi = self.character(lambda)?;
        klimyk_decompose(&self.rs, &chi, gamma)
    }

    /// `m^0_{λ*⊗γ}(q) = Σ_ν c_ν m_ν^0(q)` over the constituents `V_ν`.
    pub fn tensor_zero_q(&self, lambda: &Weight, gamma: &Weight) -> Result<QPoly> {
        require_dominant(&self.rs, gamma)?;
        let dual = self.dual_weight(lambda)?;
        let zero = self.rs.zero_weight();
        let mut acc = QPoly::zero();
        for (nu, c) in self.tensor_decomposition(&dual, gamma)?.iter() {
            acc += &self.defining_sum(nu, &zero).scale(&BigInt::from(c));
        }
        Ok(acc)
    }

    /// `Σ_μ m_γ^μ m_λ^μ(q)` over the weights of `V_γ`.
    pub fn weighted_sum(&self, lambda: &Weight, gamma: &Weight) -> Result<QPoly> {
        require_dominant(&self.rs, lambda)?;
        let chi = self.character(gamma)?;
        let mut acc = QPoly::zero();
        for (mu, m) in chi.iter() {
            acc += &self.defining_sum(lambda, mu).scale(&BigInt::from(m));
        }
        Ok(acc)
    }

    /// `Σ_ν m_λ^ν(q) m_γ^ν(q) t_0(q)/t_ν(q)` over dominant `ν ≼ λ, γ`.
    pub fn brylinski_form(&self, lambda: &Weight, gamma: &Weight) -> Result<QPoly> {
        require_dominant(&self.rs, lambda)?;
        require_dominant(&self.rs, gamma)?;
        let t0 = stabilizer_poincare(&self.rs, &self.rs.zero_weight())?;
        let mut acc = QPoly::zero();
        for nu in dominant_weights_below(&self.rs, lambda) {
            if !self.rs.dominance_leq(&nu, gamma) {
                continue;
            }
            let ratio = t0.div_exact(&stabilizer_poincare(&self.rs, &nu)?)?;
            let term = &(&self.defining_sum(lambda, &nu) * &self.defining_sum(gamma, &nu)) * &ratio;
            acc += &term;
        }
        Ok(acc)
    }

    /// Exponents `m_j(λ)` with `m_λ^0(q) = Σ_j q^{m_j(λ)}`, ascending.
    pub fn generalized_exponents(&self, lambda: &Weight) -> Result<Vec<i64>> {
        require_dominant(&self.rs, lambda)?;
        if !self.rs.in_root_lattice(lambda) {
            return Err(Error::NotInRootLattice(lambda.to_string()));
        }
        let m = self.defining_sum(lambda, &self.rs.zero_weight());
        m.exponent_multiset().ok_or_else(|| {
            Error::Precondition(format!("m_{lambda}^0(q) = {m} has a negative coefficient"))
        })
    }

    /// True iff `⟨μ, γ∨⟩ ≥ −1` for every positive root `γ`.
    pub fn broer_nonnegativity_test(&self, mu: &Weight) -> Result<bool> {
        self.rs.check_rank(mu)?;
        Ok((0..self.rs.positive_roots().len()).all(|k| self.rs.coroot_pairing(mu, k) >= -1))
    }
}
