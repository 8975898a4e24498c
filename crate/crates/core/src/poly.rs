//! Sparse Laurent polynomials in one variable `q` with arbitrary-precision
//! integer coefficients.
//!
//! Every q-analogue in this crate is a [`QPoly`]. The canonical textual form
//! lists terms in ascending exponent order, each written `c*q^e`, joined by
//! `" + "`; the zero polynomial prints as `0`. For example `q^3 - q` prints as
//! `-1*q^1 + 1*q^3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Laurent polynomial `Σ c_e q^e` with `c_e ∈ ℤ`. No stored coefficient is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c·q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// `Σ q^e` over the given exponents, with repetition.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.add_term(e, BigInt::one());
        }
        p
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// The q-integer `[n]_q = 1 + q + … + q^{n-1} = (1 − q^n)/(1 − q)`.
    pub fn q_integer(n: u32) -> Self {
        Self::from_exponents(0..i64::from(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.min_degree().is_some_and(|e| e < 0)
    }

    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exponents repeated according to their (nonnegative) coefficients.
    /// Returns `None` if some coefficient is negative.
    pub fn exponent_multiset(&self) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            if c.is_negative() {
                return None;
            }
            let n: usize = c.try_into().ok()?;
            out.extend(std::iter::repeat_n(*e, n));
        }
        Some(out)
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divide by the monomial `q^k`. Always exact in the Laurent ring.
    pub fn exact_div_monomial(&self, k: i64) -> Self {
        self.shift(-k)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Exact value at the integer `n`.
    pub fn eval(&self, n: i64) -> Result<BigRational> {
        if n == 0 && self.has_negative_exponents() {
            return Err(Error::NegativeExponentAtZero);
        }
        let base = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let power = if *e >= 0 {
                num_traits::pow(base.clone(), *e as usize)
            } else {
                num_traits::pow(base.recip(), e.unsigned_abs() as usize)
            };
            acc += power * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Value at `n` when it is an integer (always the case for ordinary
    /// polynomials at integer points).
    pub fn eval_integer(&self, n: i64) -> Result<BigInt> {
        let v = self.eval(n)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegralValue(v.to_string()))
        }
    }

    /// `p(q + 1)`, expanded by the binomial theorem.
    pub fn substitute_q_plus_1(&self) -> Result<Self> {
        if self.has_negative_exponents() {
            return Err(Error::NegativeExponent(self.to_string()));
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let n = *e as u64;
            let mut binom = BigInt::one();
            for k in 0..=n {
                out.add_term(k as i64, c * &binom);
                binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
            }
        }
        Ok(out)
    }

    /// Polynomial long division that must leave no remainder.
    ///
    /// Both operands are first normalized to ordinary polynomials by
    /// factoring out their lowest powers of `q`.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<Self> {
        let (Some(dlow), Some(ddeg)) = (divisor.min_degree(), divisor.degree()) else {
            return Err(Error::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let plow = self.min_degree().unwrap_or(0);
        let mut rem = self.shift(-plow);
        let d = divisor.shift(-dlow);
        let dtop = ddeg - dlow;
        let lc = d.leading_coefficient().cloned().unwrap_or_default();
        let mut quot = Self::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < dtop {
                break;
            }
            let rc = rem.leading_coefficient().cloned().unwrap_or_default();
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                break;
            }
            let k = rdeg - dtop;
            quot.add_term(k, qc.clone());
            rem -= &d.shift(k).scale(&qc);
        }
        if !rem.is_zero() {
            return Err(Error::InexactDivision {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(quot.shift(plow - dlow))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*q^{e}")?;
        }
        Ok(())
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Parses the canonical form. Also accepts terms in any order, `-`
    /// between terms, bare constants, and `q`, `q^e`, `c*q` shorthands.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("polynomial {s:?}: {why}"));
        let text = s.trim();
        if text.is_empty() {
            return Err(bad("empty input"));
        }
        let mut out = QPoly::zero();
        let mut rest = text;
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = BigInt::one();
            if !first {
                rest = rest.trim_start();
                if let Some(r) = rest.strip_prefix('+') {
                    rest = r;
                } else if let Some(r) = rest.strip_prefix('-') {
                    rest = r;
                    sign = -sign;
                } else {
                    return Err(bad("expected '+' or '-' between terms"));
                }
                rest = rest.trim_start();
            }
            first = false;
            let end = rest
                .char_indices()
                .skip(1)
                .find(|&(i, ch)| {
                    (ch == '+' || ch == '-') && !rest[..i].trim_end().ends_with(['^', '*'])
                })
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let term = rest[..end].trim();
            rest = &rest[end..];
            let (c, e) = parse_term(term).ok_or_else(|| bad("malformed term"))?;
            out.add_term(e, sign * c);
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Option<(BigInt, i64)> {
    if term.is_empty() || term.starts_with('+') {
        return None;
    }
    let (coef, mono) = match term.split_once('*') {
        Some((c, m)) => (Some(c.trim_end()), Some(m.trim_start())),
        None if term.contains('q') => (None, Some(term)),
        None => (Some(term), None),
    };
    if coef
        .into_iter()
        .chain(mono)
        .any(|piece| piece.contains(char::is_whitespace))
    {
        return None;
    }
    let c = match coef {
        Some(c) => parse_int(c)?,
        None => BigInt::one(),
    };
    let (c, mono) = match mono {
        Some(m) if coef.is_none() && m.starts_with("-q") => (-c, Some(&m[1..])),
        other => (c, other),
    };
    let e = match mono {
        None => 0,
        Some("q") => 1,
        Some(m) => {
            let exp = m.strip_prefix("q^")?;
            let exp = exp
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .unwrap_or(exp);
            if !valid_integer_literal(exp) {
                return None;
            }
            exp.parse::<i64>().ok()?
        }
    };
    Some((c, e))
}

fn valid_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn parse_int(s: &str) -> Option<BigInt> {
    if !valid_integer_literal(s) {
        return None;
    }
    s.parse::<BigInt>().ok()
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TermsVisitor;

        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = QPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of [exponent, \"coefficient\"] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<QPoly, A::Error> {
                let mut out = QPoly::zero();
                let mut last: Option<i64> = None;
                while let Some((e, c)) = seq.next_element::<(i64, String)>()? {
                    if last.is_some_and(|l| l >= e) {
                        return Err(de::Error::custom("exponents must be strictly ascending"));
                    }
                    last = Some(e);
                    let c = parse_int(&c)
                        .ok_or_else(|| de::Error::custom(format!("bad coefficient {c:?}")))?;
                    out.add_term(e, c);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_seq(TermsVisitor)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(mut self) -> QPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -self.clone()
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: QPoly) -> QPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("q - 1") + &QPoly::one(), QPoly::q_pow(1));
        assert_eq!(&QPoly::zero() + &p("q^2 + 3"), p("q^2 + 3"));
        assert_eq!(&p("q^2 - q") + &p("q - 1"), p("q^2 - 1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("q - 1") * &p("q + 1"), p("q^2 - 1"));
        assert_eq!(&p("q^3 - 2*q") * &QPoly::one(), p("q^3 - 2*q"));
        assert_eq!(&p("q + q^2") * &p("q + q^2"), p("q^2 + 2*q^3 + q^4"));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(p("q^2 - q").substitute_q_plus_1().unwrap(), p("q^2 + q"));
        assert_eq!(QPoly::one().substitute_q_plus_1().unwrap(), QPoly::one());
        assert_eq!(
            QPoly::q_pow(3).substitute_q_plus_1().unwrap(),
            p("q^3 + 3*q^2 + 3*q + 1")
        );
        assert!(QPoly::q_pow(-1).substitute_q_plus_1().is_err());
    }

    #[test]
    fn monomial_division() {
        assert_eq!(QPoly::q_pow(3).exact_div_monomial(3), QPoly::one());
        assert_eq!(p("q + q^2").exact_div_monomial(1), p("1 + q"));
        assert_eq!(QPoly::q_pow(3).exact_div_monomial(5), QPoly::q_pow(-2));
    }

    #[test]
    fn eval_examples() {
        let two = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(p("q + q^2").eval(1).unwrap(), two(2));
        assert_eq!(p("q^2 - q").eval(0).unwrap(), two(0));
        assert_eq!(p("q^2 - q").eval(2).unwrap(), two(2));
        assert!(QPoly::q_pow(-1).eval(0).is_err());
        assert_eq!(
            QPoly::q_pow(-2).eval(2).unwrap(),
            BigRational::new(1.into(), 4.into())
        );
    }

    #[test]
    fn long_division() {
        let t0 = &QPoly::q_integer(2) * &QPoly::q_integer(3);
        assert_eq!(
            t0.div_exact(&QPoly::q_integer(2)).unwrap(),
            QPoly::q_integer(3)
        );
        assert!(QPoly::q_integer(3).div_exact(&QPoly::q_integer(2)).is_err());
        assert!(QPoly::one().div_exact(&QPoly::zero()).is_err());
        let laurent = QPoly::q_integer(4).shift(-3);
        assert_eq!(
            laurent.div_exact(&QPoly::q_integer(2).shift(2)).unwrap(),
            p("1 + q^2").shift(-5)
        );
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("q^3 - q").to_string(), "-1*q^1 + 1*q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p("1*q^1 + 1*q^2"), p("q + q^2"));
        assert_eq!(p("2*q^-1 + -3*q^0"), QPoly::from_terms([(-1, 2), (0, -3)]));
        assert_eq!(p("-q^2"), QPoly::monomial(-1, 2));
        assert_eq!(p("0"), QPoly::zero());
        for bad in ["", "q^", "1*", "q^x", "2 3", "+", "1 ++ 2", "q^1.5"] {
            assert!(bad.parse::<QPoly>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn json_form() {
        let v = p("-q + 12345678901234567890123*q^3");
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"[[1,"-1"],[3,"12345678901234567890123"]]"#);
        assert_eq!(serde_json::from_str::<QPoly>(&js).unwrap(), v);
        assert!(serde_json::from_str::<QPoly>(r#"[[3,"1"],[1,"1"]]"#).is_err());
        assert!(serde_json::from_str::<QPoly>(r#"[[1,"x"]]"#).is_err());
        assert_eq!(
            serde_json::from_str::<QPoly>(r#"[[1,"0"]]"#).unwrap(),
            QPoly::zero()
        );
    }

    fn small_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-3i64..6, -5i64..6), 0..6).prop_map(QPoly::from_terms)
    }

    fn small_ordinary_poly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((0i64..6, -5i64..6), 0..6).prop_map(QPoly::from_terms)
    }

    proptest! {
        #[test]
        fn eval_is_multiplicative(a in small_poly(), b in small_poly(), n in -1i64..4) {
            let ab = &a * &b;
            if n == 0 && (a.has_negative_exponents() || b.has_negative_exponents()) {
                return Ok(());
            }
            if n == 0 && ab.has_negative_exponents() {
                return Ok(());
            }
            prop_assert_eq!(ab.eval(n).unwrap(), a.eval(n).unwrap() * b.eval(n).unwrap());
        }

        #[test]
        fn shift_by_one_is_ring_morphism(a in small_ordinary_poly(), b in small_ordinary_poly()) {
            let f = |x: &QPoly| x.substitute_q_plus_1().unwrap();
            prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
            prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
        }

        #[test]
        fn text_and_json_roundtrip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<QPoly>().unwrap(), a.clone());
            let js = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<QPoly>(&js).unwrap(), a);
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn parser_never_panics(s in "\\PC{0,24}") {
            let _ = s.parse::<QPoly>();
        }
    }
}
