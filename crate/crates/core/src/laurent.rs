//! Exact integer Laurent polynomials in one variable `t`.
//!
//! Coefficients are checked `i64`; every fallible operation reports
//! [`Overflow`] instead of wrapping. The `std::ops` impls are convenience
//! wrappers that panic on overflow.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{LaurentError, Overflow};

/// Element of `Z[t, t^-1]`: a map from exponent to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

fn int_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    i64::try_from(a).expect("gcd of i64 values fits unless both are i64::MIN")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Sums `(coefficient, exponent)` pairs; repeated exponents accumulate.
    pub fn from_terms<I>(terms: I) -> Result<Self, Overflow>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut out = BTreeMap::new();
        for (c, e) in terms {
            accumulate(&mut out, e, c)?;
        }
        Ok(LaurentPoly { terms: out })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Highest minus lowest exponent.
    pub fn breadth(&self) -> Result<u64, LaurentError> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => Ok(hi.abs_diff(lo)),
            _ => Err(LaurentError::ZeroPolynomial),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Overflow> {
        let mut terms = self.terms.clone();
        for (&e, &c) in &other.terms {
            accumulate(&mut terms, e, c)?;
        }
        Ok(LaurentPoly { terms })
    }

    pub fn checked_neg(&self) -> Result<Self, Overflow> {
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| Ok((e, c.checked_neg().ok_or(Overflow)?)))
            .collect::<Result<_, Overflow>>()?;
        Ok(LaurentPoly { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Overflow> {
        let mut terms = BTreeMap::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                let e = e1.checked_add(e2).ok_or(Overflow)?;
                let c = c1.checked_mul(c2).ok_or(Overflow)?;
                accumulate(&mut terms, e, c)?;
            }
        }
        Ok(LaurentPoly { terms })
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self, Overflow> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| Ok((e, c.checked_mul(k).ok_or(Overflow)?)))
            .collect::<Result<_, Overflow>>()?;
        Ok(LaurentPoly { terms })
    }

    /// Multiplication by the unit `t^k`.
    pub fn shift(&self, k: i64) -> Result<Self, Overflow> {
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| Ok((e.checked_add(k).ok_or(Overflow)?, c)))
            .collect::<Result<_, Overflow>>()?;
        Ok(LaurentPoly { terms })
    }

    /// Integer gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> i64 {
        self.terms.values().fold(0, |g, &c| int_gcd(g, c))
    }

    /// Representative of the class `{±t^k · self}`: lowest exponent 0 and
    /// positive lowest coefficient. Zero maps to zero.
    pub fn normalize_up_to_units(&self) -> Self {
        let Some((&lo, &c)) = self.terms.iter().next() else {
            return Self::zero();
        };
        let sign = if c < 0 { -1 } else { 1 };
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| (e - lo, c.checked_mul(sign).expect("coefficient overflow")))
            .collect();
        LaurentPoly { terms }
    }

    /// `true` iff `self = ±t^k · other` for some `k`.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.normalize_up_to_units() == other.normalize_up_to_units()
    }

    /// Exact quotient `self / divisor` in `Z[t, t^-1]`, or `None` if the
    /// division does not come out even.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>, Overflow> {
        let (Some(dlo), Some(plo)) = (divisor.min_exponent(), self.min_exponent()) else {
            return Ok(if divisor.is_zero() {
                None
            } else {
                Some(Self::zero())
            });
        };
        let num = to_dense(self);
        let den = to_dense(divisor);
        match dense_div_exact(&num, &den)? {
            Some(q) => Ok(Some(from_dense(&q).shift(plo - dlo)?)),
            None => Ok(None),
        }
    }

    /// Greatest common divisor in the UFD `Z[t, t^-1]`, in normalized form.
    pub fn gcd(&self, other: &Self) -> Result<Self, Overflow> {
        if self.is_zero() {
            return Ok(other.normalize_up_to_units());
        }
        if other.is_zero() {
            return Ok(self.normalize_up_to_units());
        }
        let content = int_gcd(self.content(), other.content());
        let mut a = primitive(&to_dense(self));
        let mut b = primitive(&to_dense(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_remainder(&a, &b)?;
            a = b;
            b = primitive(&r);
        }
        let g = from_dense(&a).checked_scale(content)?;
        Ok(g.normalize_up_to_units())
    }
}

fn accumulate(terms: &mut BTreeMap<i64, i64>, e: i64, c: i64) -> Result<(), Overflow> {
    if c == 0 {
        return Ok(());
    }
    let entry = terms.entry(e).or_insert(0);
    *entry = entry.checked_add(c).ok_or(Overflow)?;
    if *entry == 0 {
        terms.remove(&e);
    }
    Ok(())
}

/// Ascending coefficient vector after shifting the lowest exponent to 0.
/// Empty for zero.
fn to_dense(p: &LaurentPoly) -> Vec<i64> {
    let (Some(lo), Some(hi)) = (p.min_exponent(), p.max_exponent()) else {
        return Vec::new();
    };
    let mut v = vec![0; (hi - lo) as usize + 1];
    for (e, c) in p.terms() {
        v[(e - lo) as usize] = c;
    }
    v
}

fn from_dense(v: &[i64]) -> LaurentPoly {
    LaurentPoly {
        terms: v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as i64, c))
            .collect(),
    }
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    trim(&mut v);
    let g = v.iter().fold(0, |g, &c| int_gcd(g, c));
    if g > 1 {
        for c in &mut v {
            *c /= g;
        }
    }
    v
}

/// Remainder of `lc(b)^k · a` modulo `b`, with content stripped as it goes.
fn pseudo_remainder(a: &[i64], b: &[i64]) -> Result<Vec<i64>, Overflow> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lb = *b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let lr = *r.last().unwrap();
        let shift = r.len() - b.len();
        for c in &mut r {
            *c = c.checked_mul(lb).ok_or(Overflow)?;
        }
        for (i, &bc) in b.iter().enumerate() {
            let sub = bc.checked_mul(lr).ok_or(Overflow)?;
            r[i + shift] = r[i + shift].checked_sub(sub).ok_or(Overflow)?;
        }
        trim(&mut r);
        r = primitive(&r);
    }
    Ok(r)
}

fn dense_div_exact(num: &[i64], den: &[i64]) -> Result<Option<Vec<i64>>, Overflow> {
    let mut r = num.to_vec();
    trim(&mut r);
    let mut den = den.to_vec();
    trim(&mut den);
    if r.len() < den.len() {
        return Ok(if r.is_empty() { Some(Vec::new()) } else { None });
    }
    let ld = *den.last().unwrap();
    let mut q = vec![0; r.len() - den.len() + 1];
    while r.len() >= den.len() {
        let lr = *r.last().unwrap();
        if lr % ld != 0 {
            return Ok(None);
        }
        let f = lr / ld;
        let shift = r.len() - den.len();
        q[shift] = f;
        for (i, &dc) in den.iter().enumerate() {
            let sub = dc.checked_mul(f).ok_or(Overflow)?;
            r[i + shift] = r[i + shift].checked_sub(sub).ok_or(Overflow)?;
        }
        trim(&mut r);
    }
    Ok(if r.is_empty() { Some(q) } else { None })
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, e.g. `t^-2 - t^-1 + 1` or `1 - 2t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            f.write_str("t")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the display form plus optional `*` between coefficient and
    /// `t`, e.g. `-2*t^-1 + 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LaurentError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let bytes = compact.as_bytes();
        let mut i = 0;
        let mut terms = Vec::new();
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                compact[start..i].parse().map_err(|_| bad())?
            } else {
                1
            };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                if i >= bytes.len() || bytes[i] != b't' {
                    return Err(bad());
                }
            }
            let mut exp = 0i64;
            if i < bytes.len() && bytes[i] == b't' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = compact[es..i].parse().map_err(|_| bad())?;
                }
            } else if i == start {
                return Err(bad());
            }
            terms.push((sign * coeff, exp));
        }
        Ok(LaurentPoly::from_terms(terms)?)
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent coefficient overflow")
            }
        }
        impl std::ops::$trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self)
                    .$checked(&rhs)
                    .expect("Laurent coefficient overflow")
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("Laurent coefficient overflow")
    }
}

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// Σ_{k=0}^{2m} (-1)^k t^{k-2}
    fn family_formula(m: i64) -> LaurentPoly {
        LaurentPoly::from_terms((0..=2 * m).map(|k| (if k % 2 == 0 { 1 } else { -1 }, k - 2)))
            .unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(lp("t^-1") * lp("t"), LaurentPoly::one());
        assert_eq!(lp("1 - t") * lp("1 + t"), lp("1 - t^2"));
        let sum = family_formula(1) + lp("-t^-2");
        assert_eq!(sum, lp("-t^-1 + 1"));
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(
            lp("t^-2 - t^-1 + 1").normalize_up_to_units(),
            lp("1 - t + t^2")
        );
        assert_eq!(lp("-t^5").normalize_up_to_units(), LaurentPoly::one());
        assert_eq!(
            LaurentPoly::zero().normalize_up_to_units(),
            LaurentPoly::zero()
        );
    }

    #[test]
    fn gcd_examples() {
        let p = lp("1 - t + t^2");
        assert_eq!(p.gcd(&LaurentPoly::zero()).unwrap(), p);
        assert_eq!(lp("2 - 2t").gcd(&lp("3 - 3t")).unwrap(), lp("1 - t"));
        let assoc = -(&p * &lp("t^-3"));
        assert_eq!(p.gcd(&assoc).unwrap(), p);
        assert_eq!(lp("4 + 4t").gcd(&lp("6t^3 + 6t^4")).unwrap(), lp("2 + 2t"));
        assert_eq!(lp("1 + t").gcd(&lp("1 - t")).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn breadth_examples() {
        for m in 1..=5 {
            assert_eq!(family_formula(m).breadth().unwrap(), 2 * m as u64);
        }
        assert_eq!(LaurentPoly::constant(7).breadth().unwrap(), 0);
        assert_eq!(lp("t^-3 + t^4").breadth().unwrap(), 7);
        assert_eq!(
            LaurentPoly::zero().breadth(),
            Err(LaurentError::ZeroPolynomial)
        );
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(lp("1 - t + t^2").to_string(), "1 - t + t^2");
        assert_eq!(family_formula(1).to_string(), "t^-2 - t^-1 + 1");
        assert_eq!(lp("1 - 2*t^-1").to_string(), "-2t^-1 + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("0"), LaurentPoly::zero());
        assert!("t t".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = LaurentPoly::constant(i64::MAX);
        assert_eq!(big.checked_add(&LaurentPoly::one()), Err(Overflow));
        assert_eq!(big.checked_mul(&LaurentPoly::constant(2)), Err(Overflow));
        assert_eq!(LaurentPoly::constant(i64::MIN).checked_neg(), Err(Overflow));
    }

    #[test]
    fn exact_division() {
        let q = lp("1 - t^3").div_exact(&lp("1 - t")).unwrap().unwrap();
        assert_eq!(q, lp("1 + t + t^2"));
        assert_eq!(lp("1 + t").div_exact(&lp("2")).unwrap(), None);
        assert_eq!(
            lp("t^-1 + 1").div_exact(&lp("t + t^2")).unwrap(),
            Some(lp("t^-2"))
        );
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i64..=3, -3i64..=3), 0..5)
            .prop_map(|t| LaurentPoly::from_terms(t).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            let (a, b) = (&a * &c, &b * &c);
            let g = a.gcd(&b).unwrap();
            if !g.is_zero() {
                prop_assert!(a.div_exact(&g).unwrap().is_some());
                prop_assert!(b.div_exact(&g).unwrap().is_some());
                prop_assert!(g.div_exact(&c.normalize_up_to_units()).unwrap().is_some() || c.is_zero());
            }
            prop_assert_eq!(g.normalize_up_to_units(), g.clone());
        }

        #[test]
        fn gcd_is_associative(a in small_poly(), b in small_poly(), c in small_poly()) {
            let left = a.gcd(&b).unwrap().gcd(&c).unwrap();
            let right = a.gcd(&b.gcd(&c).unwrap()).unwrap();
            prop_assert!(left.is_associate(&right));
        }

        #[test]
        fn normalization_is_class_invariant(a in small_poly(), k in -5i64..5, neg in any::<bool>()) {
            let n = a.normalize_up_to_units();
            prop_assert_eq!(n.normalize_up_to_units(), n.clone());
            let mut b = a.shift(k).unwrap();
            if neg { b = -b; }
            prop_assert_eq!(b.normalize_up_to_units(), n);
        }

        #[test]
        fn display_parse_roundtrip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
