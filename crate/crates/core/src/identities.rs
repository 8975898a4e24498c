//! Checks of the closed formulas for q-analogues against the engine.
//!
//! Each verifier evaluates the closed side from root-system data (exponents,
//! heights, Poincaré polynomials) and the other side with [`Engine`], and
//! records every disagreement in a [`Report`]. Disagreements are reported,
//! not returned as errors; errors are reserved for violated preconditions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lusztig::Engine;
use crate::poly::QPoly;
use crate::root_system::{Letter, RootSystem, Weight};
use crate::weyl::{orbit, simple_reflection, sort_to_dominant, stabilizer_poincare};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The identity's hypothesis does not hold for these inputs.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub subject: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub root_system: String,
    pub inputs: BTreeMap<String, String>,
    pub status: Status,
    pub failures: Vec<Failure>,
    /// Values computed along the way (exponents, dimensions, sums).
    pub outputs: BTreeMap<String, String>,
}

impl Report {
    fn new(identity: &str, rs: &RootSystem) -> Self {
        Self {
            identity: identity.to_string(),
            root_system: rs.name().to_string(),
            inputs: BTreeMap::new(),
            status: Status::Pass,
            failures: Vec::new(),
            outputs: BTreeMap::new(),
        }
    }

    fn input(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    fn output(&mut self, key: &str, value: impl fmt::Display) {
        self.outputs.insert(key.to_string(), value.to_string());
    }

    fn fail(
        &mut self,
        subject: impl fmt::Display,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) {
        self.status = Status::Fail;
        self.failures.push(Failure {
            subject: subject.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn check<T: PartialEq + fmt::Display>(
        &mut self,
        subject: impl fmt::Display,
        expected: &T,
        actual: &T,
    ) {
        if expected != actual {
            self.fail(subject, expected, actual);
        }
    }

    fn skip(&mut self) {
        self.status = Status::Skipped;
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Names accepted by [`verify_by_name`].
pub const IDENTITY_NAMES: &[&str] = &[
    "adjoint",
    "little-adjoint",
    "main",
    "minuscule",
    "coxeter",
    "height-duality",
    "classification",
    "induction",
    "subregular",
    "viswanath",
];

fn q() -> QPoly {
    QPoly::q_pow(1)
}

fn q_minus_1() -> QPoly {
    &q() - &QPoly::one()
}

/// `(1 − q^n)/(1 − q)`.
fn q_int(n: i64) -> QPoly {
    QPoly::q_integer(u32::try_from(n).expect("positive"))
}

fn vec_str<T: fmt::Debug>(v: &[T]) -> String {
    format!("{v:?}")
}

/// Dual partition of `n_1 ≥ n_2 ≥ …`, in ascending order.
pub fn dual_partition(counts: &[usize]) -> Vec<i64> {
    let max = counts.iter().copied().max().unwrap_or(0);
    let mut parts: Vec<i64> = (1..=max)
        .map(|i| counts.iter().filter(|&&n| n >= i).count() as i64)
        .collect();
    parts.sort_unstable();
    parts
}

/// Number of items at each height `1, 2, …, max`.
fn height_counts(heights: impl IntoIterator<Item = i64>) -> Vec<usize> {
    let heights: Vec<i64> = heights.into_iter().collect();
    let max = heights.iter().copied().max().unwrap_or(0);
    (1..=max)
        .map(|h| heights.iter().filter(|&&x| x == h).count())
        .collect()
}

fn minus_root(rs: &RootSystem, k: usize) -> Weight {
    -&rs.positive_roots_as_weights()[k]
}

/// Adjoint module: the four closed forms for `m_θ^μ(q)`, `μ ∈ Δ ∪ {0}`, and
/// both sum formulas.
pub fn verify_adjoint(engine: &Engine) -> Result<Report> {
    let rs = engine.root_system();
    let mut rep = Report::new("adjoint", rs).input("lambda", rs.theta());
    let theta = rs.theta();
    let h = rs.coxeter_number();
    let r = rs.rank() as i64;
    let zero = rs.zero_weight();

    let m0 = QPoly::from_exponents(rs.exponents().iter().copied());
    rep.output("m_theta^0", &m0);
    rep.check("m^0 (i)", &m0, &engine.lusztig_q_analogue(&theta, &zero)?);

    for (k, mu) in rs.positive_roots_as_weights().iter().enumerate() {
        let want = QPoly::q_pow(h - 1 - rs.heights()[k]);
        rep.check(
            format!("m^{mu} (ii)"),
            &want,
            &engine.lusztig_q_analogue(&theta, mu)?,
        );
    }

    let at_minus_simple = &(&q_minus_1() * &m0) + &QPoly::q_pow(h - 1);
    for i in 0..rs.rank() {
        let mu = -&rs.simple_root(i);
        rep.check(
            format!("m^{mu} (iii)"),
            &at_minus_simple,
            &engine.lusztig_q_analogue(&theta, &mu)?,
        );
    }
    for k in 0..rs.positive_roots().len() {
        let mu = minus_root(rs, k);
        let want = at_minus_simple.shift(rs.heights()[k] - 1);
        rep.check(
            format!("m^{mu} (iv)"),
            &want,
            &engine.lusztig_q_analogue(&theta, &mu)?,
        );
    }

    let chi = engine.character(&theta)?;
    let mut plain = QPoly::zero();
    let mut weighted = QPoly::zero();
    for (mu, m) in chi.iter() {
        let v = engine.lusztig_q_analogue(&theta, mu)?;
        plain += &v;
        weighted += &v.scale(&m.into());
    }
    let tail = &m0.shift(-1) * &q_int(h);
    let plain_want = &(&m0 * &(&m0 + &QPoly::monomial(1 - r, 0))) + &tail;
    let weighted_want = &(&m0 * &m0) + &tail;
    rep.output("plain_sum", &plain);
    rep.output("weighted_sum", &weighted);
    rep.check("plain sum", &plain_want, &plain);
    rep.check("weighted sum", &weighted_want, &weighted);

    if rs.cartan_type().is_simply_laced() {
        let ht_s = h - 1;
        let little = &(&m0 * &m0) + &(&m0.shift(-(h - ht_s)) * &q_int(h));
        rep.check(
            "little-adjoint sum formula with hot(theta_s) = h - 1",
            &weighted_want,
            &little,
        );
    }
    Ok(rep)
}

/// Little adjoint module `V(θ_s)` of a system with two root lengths.
pub fn verify_little_adjoint(engine: &Engine) -> Result<Report> {
    let rs = engine.root_system();
    if !rs.has_two_root_lengths() {
        return Err(Error::SimplyLaced(rs.name().to_string()));
    }
    let ts = rs.theta_s();
    let mut rep = Report::new("little-adjoint", rs).input("lambda", &ts);
    let h = rs.coxeter_number();
    let ht_s = rs.height(&ts)?;
    let zero = rs.zero_weight();
    let short = rs.short_positive_roots();
    let l = (0..rs.rank()).filter(|&i| rs.is_short_simple(i)).count() as i64;

    let e = dual_partition(&height_counts(short.iter().map(|&k| rs.heights()[k])));
    rep.output("exponents", vec_str(&e));
    rep.check("number of exponents", &l, &(e.len() as i64));
    let gen = engine.generalized_exponents(&ts)?;
    rep.check(
        "generalized exponents (dual partition)",
        &vec_str(&e),
        &vec_str(&gen),
    );

    let m0 = QPoly::from_exponents(e.iter().copied());
    rep.output("m_theta_s^0", &m0);
    rep.check("m^0 (i)", &m0, &engine.lusztig_q_analogue(&ts, &zero)?);

    for &k in &short {
        let mu = &rs.positive_roots_as_weights()[k];
        let want = QPoly::q_pow(ht_s - rs.heights()[k]);
        rep.check(
            format!("m^{mu} (ii)"),
            &want,
            &engine.lusztig_q_analogue(&ts, mu)?,
        );
    }

    let at_minus_simple = &(&q_minus_1() * &m0) + &QPoly::q_pow(ht_s);
    for i in (0..rs.rank()).filter(|&i| rs.is_short_simple(i)) {
        let mu = -&rs.simple_root(i);
        rep.check(
            format!("m^{mu} (iii)"),
            &at_minus_simple,
            &engine.lusztig_q_analogue(&ts, &mu)?,
        );
    }
    for &k in &short {
        let mu = minus_root(rs, k);
        let want = at_minus_simple.shift(rs.heights()[k] - 1);
        rep.check(
            format!("m^{mu} (iv)"),
            &want,
            &engine.lusztig_q_analogue(&ts, &mu)?,
        );
    }

    let reduced = m0.shift(-(h - ht_s));
    if reduced.has_negative_exponents() {
        rep.fail(
            "m_theta_s^0 / q^(h - hot(theta_s)) is a polynomial",
            "no negative exponents",
            &reduced,
        );
    }
    let chi = engine.character(&ts)?;
    let mut plain = QPoly::zero();
    let mut weighted = QPoly::zero();
    for (mu, m) in chi.iter() {
        let v = engine.lusztig_q_analogue(&ts, mu)?;
        plain += &v;
        weighted += &v.scale(&m.into());
    }
    let tail = &reduced * &q_int(h);
    let plain_want = &(&m0 * &(&m0 + &QPoly::monomial(1 - l, 0))) + &tail;
    let weighted_want = &(&m0 * &m0) + &tail;
    rep.output("plain_sum", &plain);
    rep.output("weighted_sum", &weighted);
    rep.check("plain sum", &plain_want, &plain);
    rep.check("weighted sum", &weighted_want, &weighted);
    Ok(rep)
}

/// `Σ_μ m_γ^μ m_λ^μ(q) = Σ_μ m_λ^μ m_γ^μ(q) = m^0_{λ*⊗γ}(q) = Σ_ν m_λ^ν m_γ^ν t_0/t_ν`.
pub fn verify_main_identity(engine: &Engine, lambda: &Weight, gamma: &Weight) -> Result<Report> {
    let rs = engine.root_system();
    let mut rep = Report::new("main", rs)
        .input("lambda", lambda)
        .input("gamma", gamma);
    let a = engine.weighted_sum(lambda, gamma)?;
    let b = engine.weighted_sum(gamma, lambda)?;
    let c = engine.tensor_zero_q(lambda, gamma)?;
    let d = engine.brylinski_form(lambda, gamma)?;
    rep.output("value", &a);
    rep.check("sum over weights of V(gamma) vs V(lambda)", &a, &b);
    rep.check("zero-weight q-analogue of V(lambda*) x V(gamma)", &a, &c);
    rep.check("stabilizer form", &a, &d);
    Ok(rep)
}

/// True if every weight of `V_λ` lies in `Wλ`.
pub fn is_minuscule(engine: &Engine, lambda: &Weight) -> Result<bool> {
    let chi = engine.character(lambda)?;
    Ok(chi.len() == orbit(engine.root_system(), lambda).len() && chi.iter().all(|(_, m)| m == 1))
}

/// Minuscule `λ`: `m_λ^μ(q) = q^{hot(λ−μ)}` and `Σ_μ m_λ^μ(q) = t_0/t_λ`.
pub fn verify_minuscule(engine: &Engine, lambda: &Weight) -> Result<Report> {
    let rs = engine.root_system();
    if !is_minuscule(engine, lambda)? {
        return Err(Error::NotMinuscule(lambda.to_string()));
    }
    let mut rep = Report::new("minuscule", rs).input("lambda", lambda);
    let mut sum = QPoly::zero();
    let mut heights = QPoly::zero();
    for (mu, _) in engine.character(lambda)?.iter() {
        let d = rs.depth(lambda, mu).expect("weights lie below lambda");
        let v = engine.lusztig_q_analogue(lambda, mu)?;
        rep.check(format!("m^{mu}"), &QPoly::q_pow(d), &v);
        sum += &v;
        heights += &QPoly::q_pow(d);
    }
    let t0 = stabilizer_poincare(rs, &rs.zero_weight())?;
    let ratio = t0.div_exact(&stabilizer_poincare(rs, lambda)?)?;
    rep.output("sum", &sum);
    rep.check("sum of q^hot(lambda - mu)", &heights, &sum);
    rep.check("t_0 / t_lambda", &ratio, &sum);
    Ok(rep)
}

/// `t_0/t_{θ_s} = m_{θ_s}^0(q)/q^{h−hot θ_s} · [h]_q` on the system, and the
/// same with `θ` on the left and `θ∨`, the short dominant root of the dual
/// system, on the right.
pub fn verify_coxeter_identity(engine: &Engine) -> Result<Report> {
    let rs = engine.root_system();
    let mut rep = Report::new("coxeter", rs);
    let h = rs.coxeter_number();
    let t0 = stabilizer_poincare(rs, &rs.zero_weight())?;
    let zero = rs.zero_weight();

    let ts = rs.theta_s();
    let lhs = t0.div_exact(&stabilizer_poincare(rs, &ts)?)?;
    let m = engine.lusztig_q_analogue(&ts, &zero)?;
    let rhs = &m.shift(-(h - rs.height(&ts)?)) * &q_int(h);
    rep.output("t_0/t_theta_s", &lhs);
    rep.check("t_0/t_theta_s", &lhs, &rhs);

    let dual = Engine::new(rs.dual())?;
    let drs = dual.root_system();
    rep.output("dual_system", drs.name());
    let tc = drs.theta_s();
    let lhs = t0.div_exact(&stabilizer_poincare(rs, &rs.theta())?)?;
    let m = dual.lusztig_q_analogue(&tc, &drs.zero_weight())?;
    let rhs = &m.shift(-(h - drs.height(&tc)?)) * &q_int(h);
    rep.output("t_0/t_theta", &lhs);
    rep.check("t_0/t_theta via the dual system", &lhs, &rhs);

    if rs.cartan_type().is_simply_laced() {
        let m = engine.lusztig_q_analogue(&rs.theta(), &zero)?;
        let rhs = &m.shift(-1) * &q_int(h);
        rep.check("t_0/t_theta (simply laced)", &lhs, &rhs);
    }
    Ok(rep)
}

/// `(dim V^t, dim V^e)` for `λ ∈ Q`: the zero weight space, and the number of
/// principal sl2 summands, i.e. the weights with `(ν, 2ρ∨) ∈ {0, 1}`.
pub fn principal_dimensions(engine: &Engine, lambda: &Weight) -> Result<(u64, u64)> {
    let rs = engine.root_system();
    require_lattice_dominant(rs, lambda)?;
    let chi = engine.character(lambda)?;
    let mut dim_e = 0;
    for (nu, m) in chi.iter() {
        let k = rs.two_rho_check_pairing(nu);
        if k == Rational64::zero() || k == Rational64::from_integer(1) {
            dim_e += m;
        }
    }
    Ok((chi.get(&rs.zero_weight()), dim_e))
}

fn require_lattice_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if !rs.in_root_lattice(lambda) {
        return Err(Error::NotInRootLattice(lambda.to_string()));
    }
    Ok(())
}

/// When `dim V^t = dim V^e`: every nonzero weight has nonzero height and is a
/// multiple of a root, and
/// `Π_{γ∈P̃(V)_+} (1 − q^{hot γ + 1})/(1 − q^{hot γ}) = Π_i (1 − q^{m_i(λ)+1})/(1 − q)`.
pub fn verify_height_duality(engine: &Engine, lambda: &Weight) -> Result<Report> {
    let rs = engine.root_system();
    require_lattice_dominant(rs, lambda)?;
    let mut rep = Report::new("height-duality", rs).input("lambda", lambda);
    let (dim_t, dim_e) = principal_dimensions(engine, lambda)?;
    rep.output("dim_V^t", dim_t);
    rep.output("dim_V^e", dim_e);
    if dim_t != dim_e {
        rep.skip();
        return Ok(rep);
    }
    let exps = engine.generalized_exponents(lambda)?;
    rep.output("exponents", vec_str(&exps));
    rep.check(
        "number of generalized exponents",
        &dim_t,
        &(exps.len() as u64),
    );

    let chi = engine.character(lambda)?;
    let mut positive_heights = Vec::new();
    for (nu, m) in chi.iter() {
        if nu.is_zero() {
            continue;
        }
        let k = rs.two_rho_check_pairing(nu);
        if k.is_zero() {
            rep.fail(format!("height of {nu}"), "nonzero", 0);
        }
        if !rs.is_multiple_of_root(nu) {
            rep.fail(
                format!("weight {nu}"),
                "multiple of a root",
                "not a multiple of a root",
            );
        }
        if k > Rational64::zero() {
            let ht = rs.height(nu)?;
            positive_heights.extend(std::iter::repeat_n(ht, m as usize));
        }
    }

    // Both sides multiplied through by Π(1 − q^{hot γ})·(1 − q)^n.
    let one = QPoly::one();
    let factor = |e: i64| &one - &QPoly::q_pow(e);
    let mut lhs = factor(1).pow(exps.len() as u32);
    let mut rhs = QPoly::one();
    for &ht in &positive_heights {
        lhs = &lhs * &factor(ht + 1);
        rhs = &rhs * &factor(ht);
    }
    for &m in &exps {
        rhs = &rhs * &factor(m + 1);
    }
    rep.check("product identity", &lhs, &rhs);

    let dual = dual_partition(&height_counts(positive_heights));
    let nonzero: Vec<i64> = exps.iter().copied().filter(|&m| m != 0).collect();
    rep.check(
        "exponents dual to height counts",
        &vec_str(&dual),
        &vec_str(&nonzero),
    );
    Ok(rep)
}

/// Nonzero dominant `λ ∈ Q` with `hot(λ) ≤ bound`, in order of height.
pub fn lattice_dominant_weights(rs: &RootSystem, bound: i64) -> Vec<Weight> {
    let r = rs.rank();
    let fund_heights: Vec<Rational64> = (0..r)
        .map(|i| rs.two_rho_check_pairing(&rs.fundamental_weight(i)) / 2)
        .collect();
    let bound = Rational64::from_integer(bound);
    let mut out = Vec::new();
    let mut coords = vec![0i64; r];
    fn go(
        i: usize,
        acc: Rational64,
        coords: &mut Vec<i64>,
        fh: &[Rational64],
        bound: Rational64,
        rs: &RootSystem,
        out: &mut Vec<(Rational64, Weight)>,
    ) {
        if i == coords.len() {
            let w = Weight::new(coords.clone());
            if !w.is_zero() && rs.in_root_lattice(&w) {
                out.push((acc, w));
            }
            return;
        }
        let mut c = 0;
        while acc + fh[i] * c <= bound {
            coords[i] = c;
            go(i + 1, acc + fh[i] * c, coords, fh, bound, rs, out);
            c += 1;
        }
        coords[i] = 0;
    }
    go(
        0,
        Rational64::zero(),
        &mut coords,
        &fund_heights,
        bound,
        rs,
        &mut out,
    );
    out.sort();
    out.into_iter().map(|(_, w)| w).collect()
}

/// Pairs `(rs, λ)`, `0 ≠ λ ∈ Q ∩ 𝔛_+`, `hot(λ) ≤ bound`, with `dim V^t = dim V^e`.
pub fn classify_principal_pairs(engines: &[&Engine], bound: i64) -> Result<Vec<(String, Weight)>> {
    let mut out = Vec::new();
    for engine in engines {
        let rs = engine.root_system();
        for lambda in lattice_dominant_weights(rs, bound) {
            let (t, e) = principal_dimensions(engine, &lambda)?;
            if t == e {
                out.push((rs.name().to_string(), lambda));
            }
        }
    }
    Ok(out)
}

/// The known list of pairs with `dim V^t = dim V^e`: `θ`, `θ_s`, `2ϖ1` in
/// types B and G2 (and its image `2ϖ2` in C2 = B2), and `2mϖ1` in A1;
/// restricted to `hot(λ) ≤ bound`.
pub fn known_principal_pairs(rs: &RootSystem, bound: i64) -> Vec<Weight> {
    let ct = rs.cartan_type();
    let mut out = vec![rs.theta(), rs.theta_s()];
    match (ct.letter(), ct.rank()) {
        (Letter::A, 1) => {
            out.extend((1..=bound).map(|m| Weight::new(vec![2 * m])));
        }
        (Letter::B, _) | (Letter::G, _) => out.push(2 * &rs.fundamental_weight(0)),
        (Letter::C, 2) => out.push(2 * &rs.fundamental_weight(1)),
        _ => {}
    }
    out.retain(|w| rs.height(w).map(|h| h <= bound).unwrap_or(false));
    out.sort();
    out.dedup();
    out
}

/// Scan against [`known_principal_pairs`] up to the given height.
pub fn verify_classification(engine: &Engine, bound: i64) -> Result<Report> {
    let rs = engine.root_system();
    let mut rep = Report::new("classification", rs).input("height_bound", bound);
    let mut found: Vec<Weight> = classify_principal_pairs(&[engine], bound)?
        .into_iter()
        .map(|(_, w)| w)
        .collect();
    found.sort();
    let known = known_principal_pairs(rs, bound);
    rep.output("found", vec_str(&found));
    rep.check(
        "pairs up to the height bound",
        &vec_str(&known),
        &vec_str(&found),
    );
    Ok(rep)
}

/// `m^γ + m^{s_α γ − α} = q (m^{γ+α} + m^{s_α γ})` for `⟨γ, α∨⟩ < 0`.
pub fn verify_induction_lemma(
    engine: &Engine,
    lambda: &Weight,
    gamma: &Weight,
    i: usize,
) -> Result<Report> {
    let rs = engine.root_system();
    rs.check_rank(gamma)?;
    if i >= rs.rank() {
        return Err(Error::BadSimpleRoot(i));
    }
    if gamma[i] >= 0 {
        return Err(Error::Precondition(format!(
            "<{gamma}, alpha_{}^v> = {} is not negative",
            i + 1,
            gamma[i]
        )));
    }
    let mut rep = Report::new("induction", rs)
        .input("lambda", lambda)
        .input("gamma", gamma)
        .input("alpha", i + 1);
    let alpha = rs.simple_root(i);
    let s = simple_reflection(rs, gamma, i);
    let m = |mu: &Weight| engine.lusztig_q_analogue(lambda, mu);
    let lhs = &m(gamma)? + &m(&(&s - &alpha))?;
    let rhs = &q() * &(&m(&(gamma + &alpha))? + &m(&s)?);
    rep.check("relation", &lhs, &rhs);
    Ok(rep)
}

/// `q m_λ^α(q) = q^{hot α⁺} m_λ^{α⁺}(q)` for a short simple root `α`, with
/// `α⁺` its dominant conjugate; also `m_λ^0 − q m_λ^α` has nonnegative
/// coefficients.
pub fn verify_subregular_identity(engine: &Engine, lambda: &Weight, i: usize) -> Result<Report> {
    let rs = engine.root_system();
    require_lattice_dominant(rs, lambda)?;
    if i >= rs.rank() {
        return Err(Error::BadSimpleRoot(i));
    }
    if !rs.is_short_simple(i) {
        return Err(Error::LongSimpleRoot(i + 1));
    }
    let mut rep = Report::new("subregular", rs)
        .input("lambda", lambda)
        .input("alpha", i + 1);
    let alpha = rs.simple_root(i);
    let (top, _) = sort_to_dominant(rs, &alpha);
    let lhs = &q() * &engine.lusztig_q_analogue(lambda, &alpha)?;
    let rhs = engine
        .lusztig_q_analogue(lambda, &top)?
        .shift(rs.height(&top)?);
    rep.check("relation", &lhs, &rhs);
    let diff = &engine.lusztig_q_analogue(lambda, &rs.zero_weight())? - &lhs;
    rep.output("m^0 - q m^alpha", &diff);
    if !diff.coefficients_nonnegative() {
        rep.fail("m^0 - q m^alpha", "nonnegative coefficients", &diff);
    }
    Ok(rep)
}

/// `m_0^{−β} = (q−1) Σ_{j=1}^{k−1} m_0^{−β+jα_i} + q m_0^{−s_i β}` for
/// `β ∈ Q_+` with `k = ⟨β, α_i∨⟩ > 0`.
pub fn verify_viswanath(engine: &Engine, beta: &Weight, i: usize) -> Result<Report> {
    let rs = engine.root_system();
    rs.check_rank(beta)?;
    if !rs.in_positive_cone(beta) {
        return Err(Error::NotInPositiveCone(beta.to_string()));
    }
    if i >= rs.rank() {
        return Err(Error::BadSimpleRoot(i));
    }
    let k = beta[i];
    if k <= 0 {
        return Err(Error::Precondition(format!(
            "<{beta}, alpha_{}^v> = {k} is not positive",
            i + 1
        )));
    }
    let mut rep = Report::new("viswanath", rs)
        .input("beta", beta)
        .input("alpha", i + 1);
    let zero = rs.zero_weight();
    let alpha = rs.simple_root(i);
    let m = |nu: &Weight| engine.lusztig_q_analogue(&zero, nu);
    let lhs = m(&-beta)?;
    let mut inner = QPoly::zero();
    for j in 1..k {
        inner += &m(&(&(j * &alpha) - beta))?;
    }
    let s = simple_reflection(rs, beta, i);
    let rhs = &(&q_minus_1() * &inner) + &(&q() * &m(&-&s)?);
    rep.check("recurrence", &lhs, &rhs);
    Ok(rep)
}

/// Inputs for `verify all` on one system.
fn suite_weights(engine: &Engine) -> Vec<Weight> {
    let rs = engine.root_system();
    let mut ws = vec![rs.theta(), rs.theta_s()];
    for i in 0..rs.rank() {
        ws.push(rs.fundamental_weight(i));
    }
    ws.sort();
    ws.dedup();
    ws
}

/// Runs a single named identity with optional `λ` and `γ`; defaults are
/// chosen per identity.
pub fn verify_by_name(
    engine: &Engine,
    name: &str,
    lambda: Option<&Weight>,
    gamma: Option<&Weight>,
) -> Result<Vec<Report>> {
    let rs = engine.root_system();
    let theta = rs.theta();
    let lambda_or = |d: &Weight| lambda.cloned().unwrap_or_else(|| d.clone());
    match name {
        "adjoint" => Ok(vec![verify_adjoint(engine)?]),
        "little-adjoint" => Ok(vec![verify_little_adjoint(engine)?]),
        "main" => match (lambda, gamma) {
            (Some(l), Some(g)) => Ok(vec![verify_main_identity(engine, l, g)?]),
            (Some(l), None) => Ok(vec![verify_main_identity(engine, l, l)?]),
            _ => {
                let ws = suite_weights(engine);
                let mut out = Vec::new();
                for l in &ws {
                    for g in &ws {
                        out.push(verify_main_identity(engine, l, g)?);
                    }
                }
                Ok(out)
            }
        },
        "minuscule" => match lambda {
            Some(l) => Ok(vec![verify_minuscule(engine, l)?]),
            None => {
                let mut out = Vec::new();
                for i in 0..rs.rank() {
                    let w = rs.fundamental_weight(i);
                    if is_minuscule(engine, &w)? {
                        out.push(verify_minuscule(engine, &w)?);
                    }
                }
                Ok(out)
            }
        },
        "coxeter" => Ok(vec![verify_coxeter_identity(engine)?]),
        "height-duality" => match lambda {
            Some(l) => Ok(vec![verify_height_duality(engine, l)?]),
            None => {
                let mut ws = vec![theta.clone(), rs.theta_s()];
                ws.extend(known_principal_pairs(rs, 8));
                ws.sort();
                ws.dedup();
                ws.iter()
                    .map(|l| verify_height_duality(engine, l))
                    .collect()
            }
        },
        "classification" => Ok(vec![verify_classification(engine, 6)?]),
        "induction" => {
            let l = lambda_or(&theta);
            let mut out = Vec::new();
            for (g, _) in engine.character(&l)?.iter() {
                if let Some(i) = (0..rs.rank()).find(|&i| g[i] < 0) {
                    out.push(verify_induction_lemma(engine, &l, g, i)?);
                }
            }
            Ok(out)
        }
        "subregular" => {
            let l = lambda_or(&theta);
            (0..rs.rank())
                .filter(|&i| rs.is_short_simple(i))
                .map(|i| verify_subregular_identity(engine, &l, i))
                .collect()
        }
        "viswanath" => {
            let mut out = Vec::new();
            let mut betas: Vec<Weight> = rs.positive_roots_as_weights().to_vec();
            betas.push(&theta + &rs.theta_s());
            for b in &betas {
                for i in 0..rs.rank() {
                    if b[i] > 0 {
                        out.push(verify_viswanath(engine, b, i)?);
                    }
                }
            }
            Ok(out)
        }
        other => Err(Error::Parse(format!(
            "unknown identity '{other}'; expected one of {}",
            IDENTITY_NAMES.join(", ")
        ))),
    }
}

/// Every identity that applies to the system, with default inputs.
pub fn verify_all(engine: &Engine) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for name in IDENTITY_NAMES {
        if *name == "little-adjoint" && !engine.root_system().has_two_root_lengths() {
            continue;
        }
        out.extend(verify_by_name(engine, name, None, None)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(name: &str) -> Engine {
        Engine::parse(name).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    fn assert_pass(rep: &Report) {
        assert!(rep.passed(), "{}", rep.to_json());
        assert!(rep.failures.is_empty());
    }

    #[test]
    fn dual_partitions() {
        assert_eq!(dual_partition(&[2, 1]), vec![1, 2]);
        assert_eq!(dual_partition(&[3, 2, 2, 1, 1]), vec![1, 3, 5]);
        assert_eq!(dual_partition(&[]), Vec::<i64>::new());
    }

    #[test]
    fn adjoint_examples() {
        for name in ["A2", "G2", "C3"] {
            assert_pass(&verify_adjoint(&engine(name)).unwrap());
        }
    }

    #[test]
    fn little_adjoint_examples() {
        for (name, e) in [
            ("B3", "[3]"),
            ("G2", "[3]"),
            ("C3", "[2, 4]"),
            ("B2", "[2]"),
        ] {
            let rep = verify_little_adjoint(&engine(name)).unwrap();
            assert_pass(&rep);
            assert_eq!(rep.outputs["exponents"], e);
        }
        assert!(matches!(
            verify_little_adjoint(&engine("A3")),
            Err(Error::SimplyLaced(_))
        ));
    }

    #[test]
    fn main_identity_examples() {
        let a2 = engine("A2");
        assert_pass(&verify_main_identity(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap());
        let b2 = engine("B2");
        let rs = b2.root_system().clone();
        assert_pass(&verify_main_identity(&b2, &rs.theta(), &rs.theta_s()).unwrap());
        let a3 = engine("A3");
        assert_pass(&verify_main_identity(&a3, &w(&[0, 1, 0]), &w(&[1, 0, 1])).unwrap());
    }

    #[test]
    fn minuscule_examples() {
        let rep = verify_minuscule(&engine("A2"), &w(&[1, 0])).unwrap();
        assert_pass(&rep);
        assert_eq!(rep.outputs["sum"], "1*q^0 + 1*q^1 + 1*q^2");
        assert_pass(&verify_minuscule(&engine("A3"), &w(&[0, 1, 0])).unwrap());
        assert_pass(&verify_minuscule(&engine("D4"), &w(&[1, 0, 0, 0])).unwrap());
        assert!(matches!(
            verify_minuscule(&engine("A2"), &w(&[1, 1])),
            Err(Error::NotMinuscule(_))
        ));
    }

    #[test]
    fn coxeter_examples() {
        for name in ["A2", "B3", "G2", "C3"] {
            let rep = verify_coxeter_identity(&engine(name)).unwrap();
            assert_pass(&rep);
        }
        let rep = verify_coxeter_identity(&engine("B3")).unwrap();
        assert_eq!(rep.outputs["dual_system"], "C3");
    }

    #[test]
    fn height_duality_examples() {
        let rep = verify_height_duality(&engine("B3"), &w(&[2, 0, 0])).unwrap();
        assert_pass(&rep);
        assert_eq!(rep.outputs["exponents"], "[2, 4, 6]");
        assert_pass(&verify_height_duality(&engine("A2"), &w(&[1, 1])).unwrap());
        let rep = verify_height_duality(&engine("A1"), &w(&[4])).unwrap();
        assert_pass(&rep);
        assert_eq!(rep.outputs["exponents"], "[2]");
        let rep = verify_height_duality(&engine("A2"), &w(&[2, 2])).unwrap();
        assert_eq!(rep.status, Status::Skipped);
        assert!(verify_height_duality(&engine("A2"), &w(&[1, 0])).is_err());
    }

    #[test]
    fn classification_rank_two() {
        let names = ["A2", "B2", "C2", "G2"];
        let engines: Vec<Engine> = names.iter().map(|n| engine(n)).collect();
        let refs: Vec<&Engine> = engines.iter().collect();
        let found = classify_principal_pairs(&refs, 6).unwrap();
        let expect = vec![
            ("A2".to_string(), w(&[1, 1])),
            ("B2".to_string(), w(&[1, 0])),
            ("B2".to_string(), w(&[0, 2])),
            ("B2".to_string(), w(&[2, 0])),
            ("C2".to_string(), w(&[0, 1])),
            ("C2".to_string(), w(&[2, 0])),
            ("C2".to_string(), w(&[0, 2])),
            ("G2".to_string(), w(&[1, 0])),
            ("G2".to_string(), w(&[0, 1])),
            ("G2".to_string(), w(&[2, 0])),
        ];
        let mut found_sorted = found.clone();
        found_sorted.sort();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(found_sorted, expect_sorted);
        for e in &engines {
            assert_pass(&verify_classification(e, 6).unwrap());
        }
        let a1 = engine("A1");
        let found = classify_principal_pairs(&[&a1], 8).unwrap();
        assert_eq!(
            found.into_iter().map(|(_, w)| w).collect::<Vec<_>>(),
            (1..=8).map(|m| w(&[2 * m])).collect::<Vec<_>>()
        );
        assert!(classify_principal_pairs(&[], 6).unwrap().is_empty());
    }

    #[test]
    fn induction_examples() {
        let a2 = engine("A2");
        assert_pass(&verify_induction_lemma(&a2, &w(&[1, 1]), &w(&[-2, 1]), 0).unwrap());
        let g2 = engine("G2");
        let rs = g2.root_system().clone();
        let ts = rs.theta_s();
        let neg = -&ts;
        let i = (0..2).find(|&i| rs.is_short_simple(i)).unwrap();
        assert_pass(&verify_induction_lemma(&g2, &ts, &neg, i).unwrap());
        assert!(verify_induction_lemma(&a2, &w(&[1, 1]), &w(&[1, 1]), 0).is_err());
    }

    #[test]
    fn subregular_examples() {
        let a2 = engine("A2");
        let rep = verify_subregular_identity(&a2, &w(&[1, 1]), 0).unwrap();
        assert_pass(&rep);
        let c3 = engine("C3");
        let ts = c3.root_system().theta_s();
        assert_pass(&verify_subregular_identity(&c3, &ts, 0).unwrap());
        let b3 = engine("B3");
        assert_pass(&verify_subregular_identity(&b3, &w(&[2, 0, 0]), 2).unwrap());
        assert!(matches!(
            verify_subregular_identity(&b3, &w(&[2, 0, 0]), 0),
            Err(Error::LongSimpleRoot(1))
        ));
    }

    #[test]
    fn viswanath_examples() {
        let a2 = engine("A2");
        assert_pass(&verify_viswanath(&a2, &w(&[2, -1]), 0).unwrap());
        assert!(verify_viswanath(&a2, &w(&[-1, 2]), 0).is_err());
    }

    #[test]
    fn full_suite_passes_on_small_systems() {
        for name in ["A1", "A2", "B2", "G2", "A3", "C3"] {
            let reports = verify_all(&engine(name)).unwrap();
            assert!(!reports.is_empty());
            for rep in &reports {
                assert!(rep.status != Status::Fail, "{}", rep.to_json());
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let rep = verify_adjoint(&engine("A2")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        for key in [
            "identity",
            "root_system",
            "inputs",
            "status",
            "failures",
            "outputs",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["status"], "pass");
        let back: Report = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
    }
}
