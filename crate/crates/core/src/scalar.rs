//! Scalars: the cyclotomic tower Q(zeta_{2^k}) for k = 1..4.
//!
//! A value at level k is a vector of 2^(k-1) exact rationals over the power
//! basis 1, z, ..., z^(2^(k-1)-1) where z = zeta_{2^k} and z^(2^(k-1)) = -1.
//! Level 1 is Q itself, level 2 is Q(i), level 3 is Q(zeta_8), level 4 is
//! Q(zeta_16).  Every value is kept at the smallest level that contains it,
//! so equality is plain structural equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const MAX_LEVEL: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
    LevelTooLow { have: u8, need: u8 },
    UnsupportedRoot { denom: BigInt },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::LevelTooLow { have, need } => {
                write!(f, "cannot embed level {need} value into level {have}")
            }
            ScalarError::UnsupportedRoot { denom } => {
                write!(f, "exponent denominator {denom} does not divide 16")
            }
        }
    }
}

/// Element of Q(zeta_{2^level}); invariant: coeffs.len() == 2^(level-1) and
/// the level is minimal (odd-index coefficients at level k+1 would all be 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycScalar {
    level: u8,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CycScalar {
    fn raw(level: u8, coeffs: Vec<BigRational>) -> Self {
        debug_assert!(level >= 1 && level <= MAX_LEVEL);
        debug_assert_eq!(coeffs.len(), 1usize << (level - 1));
        let mut s = CycScalar { level, coeffs };
        s.reduce_level();
        s
    }

    /// Shrink to the minimal level: an element lies one level down exactly
    /// when all odd-index coefficients vanish (zeta_{2^(k-1)} = zeta_{2^k}^2).
    fn reduce_level(&mut self) {
        while self.level > 1 {
            if self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero()) {
                self.coeffs = self.coeffs.iter().step_by(2).cloned().collect();
                self.level -= 1;
            } else {
                break;
            }
        }
    }

    pub fn zero() -> Self {
        CycScalar { level: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        CycScalar { level: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_int(n: i64) -> Self {
        CycScalar { level: 1, coeffs: vec![rat(n, 1)] }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        CycScalar { level: 1, coeffs: vec![rat(n, d)] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycScalar { level: 1, coeffs: vec![r] }
    }

    /// i = zeta_4.
    pub fn i() -> Self {
        CycScalar { level: 2, coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    /// zeta_8 = e^{i pi/4}.
    pub fn zeta8() -> Self {
        Self::root16(2)
    }

    /// zeta_16 = e^{i pi/8}.
    pub fn zeta16() -> Self {
        Self::root16(1)
    }

    /// zeta_16^k for any integer k.
    pub fn root16(k: i64) -> Self {
        let k = k.rem_euclid(16) as usize;
        let mut coeffs = vec![BigRational::zero(); 8];
        if k < 8 {
            coeffs[k] = BigRational::one();
        } else {
            coeffs[k - 8] = -BigRational::one();
        }
        CycScalar::raw(4, coeffs)
    }

    /// sqrt(2) = zeta_8 + zeta_8^(-1).
    pub fn sqrt2() -> Self {
        Self::zeta8().add(&Self::zeta8().inv().unwrap())
    }

    /// e^{2 pi i r} for a rational r whose denominator divides 16.
    pub fn from_exponent(r: &BigRational) -> Result<Self, ScalarError> {
        let sixteen = BigInt::from(16);
        let scaled = r * BigRational::from_integer(sixteen.clone());
        if !scaled.is_integer() {
            return Err(ScalarError::UnsupportedRoot { denom: r.denom().clone() });
        }
        let k = scaled.to_integer() % sixteen;
        let k: i64 = i64::try_from(&k).expect("exponent fits i64 after mod 16");
        Ok(Self::root16(k))
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.level == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.level == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.level == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.level == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.level == 1 && self.coeffs[0].is_integer()
    }

    /// Spread coefficients into the basis of the larger field;
    /// zeta_{2^k} = zeta_{2^t}^(2^(t-k)).
    pub fn embed_to_level(&self, target: u8) -> Result<Vec<BigRational>, ScalarError> {
        if target < self.level {
            return Err(ScalarError::LevelTooLow { have: target, need: self.level });
        }
        let stride = 1usize << (target - self.level);
        let mut out = vec![BigRational::zero(); 1usize << (target - 1)];
        for (idx, c) in self.coeffs.iter().enumerate() {
            out[idx * stride] = c.clone();
        }
        Ok(out)
    }

    fn unify(&self, other: &Self) -> (u8, Vec<BigRational>, Vec<BigRational>) {
        let lvl = self.level.max(other.level);
        let a = self.embed_to_level(lvl).expect("embed up");
        let b = other.embed_to_level(lvl).expect("embed up");
        (lvl, a, b)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.level == 1 && other.level == 1 {
            return CycScalar { level: 1, coeffs: vec![&self.coeffs[0] + &other.coeffs[0]] };
        }
        let (lvl, mut a, b) = self.unify(other);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        CycScalar::raw(lvl, a)
    }

    pub fn sub(&self, other: &Self) -> Self {
        if self.level == 1 && other.level == 1 {
            return CycScalar { level: 1, coeffs: vec![&self.coeffs[0] - &other.coeffs[0]] };
        }
        let (lvl, mut a, b) = self.unify(other);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x -= y;
        }
        CycScalar::raw(lvl, a)
    }

    pub fn neg(&self) -> Self {
        CycScalar { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Convolution product with the wrap rule z^d = -1 (d = coeffs.len()).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CycScalar::zero();
        }
        if self.level == 1 && other.level == 1 {
            return CycScalar { level: 1, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let (lvl, a, b) = self.unify(other);
        let d = a.len();
        let mut out = vec![BigRational::zero(); d];
        for (ia, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (ib, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let p = ca * cb;
                let k = ia + ib;
                if k < d {
                    out[k] += p;
                } else {
                    out[k - d] -= p;
                }
            }
        }
        CycScalar::raw(lvl, out)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return CycScalar::zero();
        }
        CycScalar::raw(self.level, self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Complex conjugation z -> z^(-1); on the power basis z^(-j) = -z^(d-j).
    pub fn conj(&self) -> Self {
        let d = self.coeffs.len();
        if d == 1 {
            return self.clone();
        }
        let mut out = vec![BigRational::zero(); d];
        out[0] = self.coeffs[0].clone();
        for j in 1..d {
            out[d - j] = -self.coeffs[j].clone();
        }
        CycScalar::raw(self.level, out)
    }

    /// Multiplicative inverse via the multiplication-matrix linear system.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.level == 1 {
            return Ok(CycScalar {
                level: 1,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let d = self.coeffs.len();
        // Column j of the multiplication matrix is self * z^j on the basis.
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for j in 0..d {
            for (i, c) in self.coeffs.iter().enumerate() {
                let k = i + j;
                if k < d {
                    m[k][j] += c;
                } else {
                    m[k - d][j] -= c;
                }
            }
        }
        let mut rhs = vec![BigRational::zero(); d];
        rhs[0] = BigRational::one();
        let sol = solve_rational(&mut m, &mut rhs).ok_or(ScalarError::DivisionByZero)?;
        Ok(CycScalar::raw(self.level, sol))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = CycScalar::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// |self|^2 = self * conj(self).
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// A crude archimedean height used for eigenvalue-candidate bounds:
    /// max over coefficients of ceil(|numerator| / denominator).
    pub fn height(&self) -> BigInt {
        let mut best = BigInt::zero();
        for c in &self.coeffs {
            let q = (c.numer().abs() + c.denom() - BigInt::one()) / c.denom();
            if q > best {
                best = q;
            }
        }
        best
    }
}

/// Gaussian elimination over Q for the tiny multiplication-matrix systems
/// that scalar inversion needs; returns None when the matrix is singular.
fn solve_rational(m: &mut [Vec<BigRational>], rhs: &mut [BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
            let t = &factor * &rhs[col];
            rhs[r] -= t;
        }
    }
    let mut out = Vec::with_capacity(n);
    for r in 0..n {
        out.push(&rhs[r] / &m[r][r]);
    }
    Some(out)
}

impl fmt::Display for CycScalar {
    /// Canonical text form "c0 + c1*z + ... @ level k" where z = zeta_{2^k}
    /// at the minimal level k of the value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let s = match j {
                0 => alloc::format!("{c}"),
                1 => alloc::format!("{c}*z"),
                _ => alloc::format!("{c}*z^{j}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            parts.push(String::from("0"));
        }
        write!(f, "{} @ level {}", parts.join(" + "), 1u32 << self.level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn zeta() -> CycScalar {
        CycScalar::zeta8()
    }

    /// a = (1 - i)/2, the Appendix constant.
    fn a_const() -> CycScalar {
        CycScalar::one()
            .sub(&CycScalar::i())
            .mul(&CycScalar::from_ratio(1, 2))
    }

    #[test]
    fn zeta8_squared_is_i() {
        assert_eq!(zeta().mul(&zeta()), CycScalar::i());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = CycScalar::sqrt2();
        assert_eq!(s.mul(&s), CycScalar::from_int(2));
        // And sqrt2 really is zeta8 + zeta8^-1.
        let alt = zeta().add(&zeta().pow(7));
        assert_eq!(s, alt.clone());
        assert_eq!(alt.mul(&alt), CycScalar::from_int(2));
    }

    #[test]
    fn a_times_conj_a_is_half() {
        let a = a_const();
        assert_eq!(a.mul(&a.conj()), CycScalar::from_ratio(1, 2));
    }

    #[test]
    fn inverse_of_a_is_one_plus_i() {
        let expect = CycScalar::one().add(&CycScalar::i());
        assert_eq!(a_const().inv().unwrap(), expect);
    }

    #[test]
    fn inverse_of_zeta_is_minus_zeta_cubed() {
        assert_eq!(zeta().inv().unwrap(), zeta().pow(3).neg());
    }

    #[test]
    fn conj_of_a_is_abar() {
        let abar = CycScalar::one()
            .add(&CycScalar::i())
            .mul(&CycScalar::from_ratio(1, 2));
        assert_eq!(a_const().conj(), abar);
    }

    #[test]
    fn embedding_is_minimal_level() {
        // zeta16^2 = zeta8 must come back down to level 3, and zeta8^2 = i to level 2.
        assert_eq!(CycScalar::zeta16().pow(2), CycScalar::zeta8());
        assert_eq!(CycScalar::zeta16().pow(2).level(), 3);
        assert_eq!(CycScalar::zeta8().pow(2).level(), 2);
        assert_eq!(CycScalar::zeta16().pow(8), CycScalar::from_int(-1));
        assert_eq!(CycScalar::zeta16().pow(16), CycScalar::one());
    }

    #[test]
    fn division_by_zero_reported() {
        assert_eq!(CycScalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn exponent_denominator_must_divide_16() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(matches!(
            CycScalar::from_exponent(&r),
            Err(ScalarError::UnsupportedRoot { .. })
        ));
        let ok = BigRational::new(BigInt::from(3), BigInt::from(8));
        assert_eq!(CycScalar::from_exponent(&ok).unwrap(), CycScalar::root16(6));
    }

    fn random_scalar(rng: &mut SplitMix64) -> CycScalar {
        let level = 1 + (rng.next_u64() % 4) as u8;
        let d = 1usize << (level - 1);
        let coeffs = (0..d)
            .map(|_| {
                let n = rng.next_i64_in(-9, 9);
                let den = 1 + (rng.next_u64() % 4) as i64;
                rat(n, den)
            })
            .collect();
        CycScalar::raw(level, coeffs)
    }

    #[test]
    fn field_axioms_hold_on_random_samples() {
        let mut rng = SplitMix64::new(0x5eed_0001);
        let mut nonzero_checked = 0usize;
        for _ in 0..1000 {
            let x = random_scalar(&mut rng);
            let y = random_scalar(&mut rng);
            let z = random_scalar(&mut rng);
            assert_eq!(x.add(&y), y.add(&x));
            assert_eq!(x.mul(&y), y.mul(&x));
            assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            assert_eq!(x.add(&CycScalar::zero()), x);
            assert_eq!(x.mul(&CycScalar::one()), x);
            assert_eq!(x.sub(&x), CycScalar::zero());
            assert_eq!(x.conj().conj(), x);
            assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
            if !x.is_zero() {
                nonzero_checked += 1;
                assert_eq!(x.mul(&x.inv().unwrap()), CycScalar::one());
            }
        }
        assert!(nonzero_checked >= 100);
    }

    #[test]
    fn display_form() {
        let v = CycScalar::from_ratio(1, 2).add(&CycScalar::zeta8().scale_rational(&rat(-1, 2)));
        assert_eq!(alloc::format!("{v}"), "1/2 + -1/2*z @ level 8");
        assert_eq!(alloc::format!("{}", CycScalar::zero()), "0 @ level 2");
    }
}
