//! Exact coefficient fields.
//!
//! Three concrete fields are provided: the rationals [`Rational`], the
//! Gaussian rationals [`Gaussian`] (rationals with a square root of -1
//! adjoined), and prime fields [`Fp`]. Characteristic 2 is rejected.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field of characteristic different from 2.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(q: &BigRational) -> Option<Self>;
    /// A square root of -1 when the field contains one.
    fn sqrt_minus_one() -> Option<Self>;
    /// Distinct roots lying in the field of the univariate polynomial with
    /// coefficients `coeffs` (constant term first).
    fn roots(coeffs: &[Self]) -> Vec<Self>;
    /// Canonical coefficient text used by the polynomial formatter.
    fn to_text(&self) -> String;
    /// Short human readable name of the field.
    fn field_name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into())).expect("denominator invertible in field")
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn rational_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The field of rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_text(&self.0))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Rational(q.clone()))
    }
    fn sqrt_minus_one() -> Option<Self> {
        None
    }
    fn roots(coeffs: &[Self]) -> Vec<Self> {
        let as_gauss: Vec<Gaussian> = coeffs.iter().map(|c| Gaussian::new(c.0.clone(), BigRational::zero())).collect();
        Gaussian::roots(&as_gauss).into_iter().filter(|z| z.im.is_zero()).map(|z| Rational(z.re)).collect()
    }
    fn to_text(&self) -> String {
        rational_text(&self.0)
    }
    fn field_name() -> String {
        "QQ".to_string()
    }
}

/// Gaussian rationals `re + im*i` with `i^2 = -1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Gaussian { re: BigRational::new(re.0.into(), re.1.into()), im: BigRational::new(im.0.into(), im.1.into()) }
    }

    pub fn i() -> Self {
        Gaussian::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn approx(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Field for Gaussian {
    fn zero() -> Self {
        Gaussian::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Gaussian::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Gaussian::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Gaussian::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gaussian::new(&self.re * &rhs.re, BigRational::zero());
        }
        Gaussian::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
    fn neg(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Gaussian::new(self.re.recip(), BigRational::zero()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Gaussian::new(&self.re / &norm, -&self.im / &norm))
    }
    fn from_i64(n: i64) -> Self {
        Gaussian::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Gaussian::new(q.clone(), BigRational::zero()))
    }
    fn sqrt_minus_one() -> Option<Self> {
        Some(Gaussian::i())
    }
    fn roots(coeffs: &[Self]) -> Vec<Self> {
        gaussian_roots(coeffs)
    }
    fn to_text(&self) -> String {
        if self.im.is_zero() {
            return rational_text(&self.re);
        }
        let mut s = String::from("(");
        if !self.re.is_zero() {
            s.push_str(&rational_text(&self.re));
        }
        let mag = self.im.abs();
        if self.im.is_negative() {
            s.push('-');
        } else if !self.re.is_zero() {
            s.push('+');
        }
        if !mag.is_one() {
            s.push_str(&rational_text(&mag));
        }
        s.push_str("i)");
        s
    }
    fn field_name() -> String {
        "QQ(i)".to_string()
    }
}

/// Prime field `Z/P`. `P` must be an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

/// The prime field of order 65537 (which is 1 mod 4, so it contains i).
pub type F65537 = Fp<65537>;

impl<const P: u64> Fp<P> {
    const ODD_PRIME: () = assert!(P > 2 && P % 2 == 1 && P < (1 << 32));

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::ODD_PRIME;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow_u64(P - 2))
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        Fp::<P>(den).inv().map(|d| Fp::<P>(num).mul(&d))
    }
    fn sqrt_minus_one() -> Option<Self> {
        if P % 4 != 1 {
            return None;
        }
        // a^((p-1)/4) is a square root of -1 for any quadratic non-residue a
        (2..P).map(Fp::<P>).find_map(|a| {
            let r = a.pow_u64((P - 1) / 4);
            (r.mul(&r) == Fp::new(-1)).then_some(r)
        })
    }
    fn roots(coeffs: &[Self]) -> Vec<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Vec::new();
        }
        (0..P)
            .map(Fp::<P>)
            .filter(|x| coeffs.iter().rev().fold(Fp::zero(), |acc, c| acc.mul(x).add(c)).is_zero())
            .collect()
    }
    fn to_text(&self) -> String {
        // symmetric representative
        if self.0 > P / 2 {
            format!("-{}", P - self.0)
        } else {
            self.0.to_string()
        }
    }
    fn field_name() -> String {
        format!("GF({P})")
    }
}

/// Root finding over the Gaussian rationals: numeric approximation of the
/// roots of the square-free part, rational reconstruction, exact check.
fn gaussian_roots(coeffs: &[Gaussian]) -> Vec<Gaussian> {
    let poly = crate::univariate::UniPoly::new(coeffs.to_vec());
    if poly.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sqfree = poly.squarefree_part();
    let deg = sqfree.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    let lead = sqfree.coeffs()[deg].clone();
    let approx: Vec<Complex64> = sqfree.coeffs().iter().map(|c| c.div(&lead).expect("nonzero lead").approx()).collect();
    let mut found: Vec<Gaussian> = Vec::new();
    for z in durand_kerner(&approx) {
        for max_den in [16i64, 1_000, 1_000_000] {
            let (Some(re), Some(im)) = (rationalize(z.re, max_den), rationalize(z.im, max_den)) else {
                continue;
            };
            let cand = Gaussian::new(re, im);
            if sqfree.eval(&cand).is_zero() {
                if !found.contains(&cand) {
                    found.push(cand);
                }
                break;
            }
        }
    }
    found
}

fn durand_kerner(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    if n == 1 {
        return vec![-monic[0]];
    }
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |a, c| a * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut zs: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(8.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(zs[i]) / denom;
            zs[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    zs
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    (q1 != 0).then(|| BigRational::new(p1.into(), q1.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_i_squares_to_minus_one() {
        let i = Gaussian::sqrt_minus_one().unwrap();
        assert_eq!(i.mul(&i), Gaussian::from_i64(-1));
    }

    #[test]
    fn fp_i_squares_to_minus_one() {
        let i = F65537::sqrt_minus_one().unwrap();
        assert_eq!(i.mul(&i), F65537::from_i64(-1));
        assert!(Fp::<7>::sqrt_minus_one().is_none());
    }

    #[test]
    fn rationals_have_no_i() {
        assert!(Rational::sqrt_minus_one().is_none());
    }

    #[test]
    fn coefficient_text() {
        assert_eq!(Gaussian::from_parts((1, 2), (-3, 1)).to_text(), "(1/2-3i)");
        assert_eq!(Gaussian::i().to_text(), "(i)");
        assert_eq!(Gaussian::i().neg().to_text(), "(-i)");
        assert_eq!(Gaussian::from_parts((0, 1), (2, 3)).to_text(), "(2/3i)");
        assert_eq!(Gaussian::from_ratio(-5, 4).to_text(), "-5/4");
        assert_eq!(F65537::from_i64(-3).to_text(), "-3");
    }

    #[test]
    fn gaussian_roots_of_split_polynomials() {
        // (T - 1/2)(T + i)(T - 3) expanded; constant term first
        let r1 = Gaussian::from_ratio(1, 2);
        let r2 = Gaussian::i().neg();
        let r3 = Gaussian::from_i64(3);
        let lin = |r: &Gaussian| crate::univariate::UniPoly::new(vec![r.neg(), Gaussian::one()]);
        let p = lin(&r1).mul(&lin(&r2)).mul(&lin(&r3)).mul(&lin(&r3));
        let mut roots = Gaussian::roots(p.coeffs());
        roots.sort_by_key(|z| z.to_text());
        let mut want = vec![r1, r2, r3];
        want.sort_by_key(|z| z.to_text());
        assert_eq!(roots, want);
    }

    #[test]
    fn irrational_roots_are_not_reported() {
        // T^2 - 2
        let p = [Rational::from_i64(-2), Rational::zero(), Rational::one()];
        assert!(Rational::roots(&p).is_empty());
        // T^2 + 1 has roots only after adjoining i
        let q = [Rational::one(), Rational::zero(), Rational::one()];
        assert!(Rational::roots(&q).is_empty());
        let qg = [Gaussian::one(), Gaussian::zero(), Gaussian::one()];
        assert_eq!(Gaussian::roots(&qg).len(), 2);
    }

    #[test]
    fn exact_cancellation() {
        let a = Gaussian::from_parts((7, 3), (-1, 5));
        let b = Gaussian::from_parts((2, 9), (4, 1));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&a.inv().unwrap()), Gaussian::one());
        let x = F65537::from_i64(12345);
        assert_eq!(x.mul(&x.inv().unwrap()), F65537::one());
    }
}
