//! Exact arithmetic in cyclotomic fields Q(zeta_m), plus a tolerance-based
//! complex mode used where square roots are unavoidable.
//!
//! Elements of Q(zeta_m) are stored on the power basis 1, zeta, ...,
//! zeta^(phi(m)-1), reduced modulo the m-th cyclotomic polynomial. Reduced
//! coefficient vectors are canonical, so equality is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed exact/approx arithmetic")]
    MixedMode,
    #[error("incompatible cyclotomic orders {0} and {1} (coercion disabled)")]
    IncompatibleOrders(u32, u32),
}

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Monic integer coefficients of the m-th cyclotomic polynomial,
/// ascending degree, length phi(m)+1. Computed once per order.
static CYCLOTOMIC_POLYS: Lazy<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    assert!(m >= 1, "order must be positive");
    if let Some(p) = CYCLOTOMIC_POLYS.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by the product of Phi_d over proper divisors d of m.
    let mut num = vec![BigInt::zero(); (m + 1) as usize];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    let arc = Arc::new(num);
    CYCLOTOMIC_POLYS
        .lock()
        .unwrap()
        .insert(m, arc.clone());
    arc
}

/// Exact division of integer polynomials (ascending coefficients); the
/// divisor is monic and the remainder is known to vanish.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An element of Q(zeta_m) in reduced power-basis form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let phi = euler_phi(order) as usize;
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); phi],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut c = Self::zero(order);
        // phi(1) = 1 and phi(2) = 1, so slot 0 always exists.
        c.coeffs[0] = r;
        if order == 1 {
            // Phi_1 = x - 1: zeta = 1, basis is {1}; nothing further.
        }
        c
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(n)))
    }

    /// zeta_m^k, k taken modulo m.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let m = order as i64;
        let k = k.rem_euclid(m) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        Self::from_poly(order, poly)
    }

    /// Builds an element from an arbitrary-degree polynomial in zeta_m,
    /// reducing modulo Phi_m.
    pub fn from_poly(order: u32, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg_phi = phi.len() - 1;
        // First fold exponents >= m using zeta^m = 1, so the division below
        // stays small.
        let m = order as usize;
        if poly.len() > m {
            let mut folded = vec![Rational::zero(); m];
            for (i, c) in poly.into_iter().enumerate() {
                folded[i % m] += c;
            }
            poly = folded;
        }
        while poly.len() > deg_phi {
            let lead = poly.pop().unwrap();
            if !lead.is_zero() {
                let k = poly.len() - deg_phi;
                for (i, d) in phi.iter().take(deg_phi).enumerate() {
                    let delta = &lead * Rational::from_integer(d.clone());
                    poly[k + i] -= delta;
                }
            }
        }
        poly.resize(deg_phi, Rational::zero());
        Cyclotomic {
            order,
            coeffs: poly,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reinterprets the element inside Q(zeta_target); target must be a
    /// multiple of the current order.
    pub fn coerce(&self, target: u32) -> Self {
        assert!(
            target % self.order == 0,
            "cannot coerce order {} into {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(target, poly)
    }

    fn lift(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let l = (a.order as u64).lcm(&(b.order as u64)) as u32;
            (a.coerce(l), b.coerce(l))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, mut b) = Self::lift(self, other);
        for (x, y) in b.coeffs.iter_mut().zip(a.coeffs.iter()) {
            *x += y;
        }
        b
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = Self::lift(self, other);
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.order, prod)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// Q[x] modulo Phi_m (which is irreducible, so any nonzero element
    /// is invertible).
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let phi = cyclotomic_polynomial(self.order);
        let modulus: Vec<Rational> = phi
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // Invariant: r0 = s0 * a (mod Phi), r1 = s1 * a (mod Phi).
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant gcd.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let inv_poly: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(self.order, inv_poly))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        let (a, b) = Self::lift(self, other);
        Ok(a.mul(&b.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self, ScalarError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        Ok(acc)
    }

    /// The Galois map zeta |-> zeta^k for k coprime to the order; k = -1 is
    /// complex conjugation.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.order as i64;
        let k = k.rem_euclid(m);
        assert!(
            (k as u64).gcd(&(m as u64)) == 1,
            "galois exponent must be coprime to the order"
        );
        let mut poly = vec![Rational::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((i as i64) * k).rem_euclid(m) as usize;
                poly[e] += c;
            }
        }
        Self::from_poly(self.order, poly)
    }

    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    /// Numerical evaluation with zeta_m -> exp(2*pi*i/m).
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().unwrap_or_else(|| {
                // Extremely large rationals: fall back through parts.
                let n = c.numer().to_f64().unwrap_or(f64::NAN);
                let d = c.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            });
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / m;
            re += x * ang.cos();
            im += x * ang.sin();
        }
        (re, im)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "z{}^{}", self.order, i)?;
            } else {
                write!(f, "{}*z{}^{}", a, self.order, i)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Complex double with an explicit comparison tolerance.
#[derive(Debug, Clone, Copy)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl ApproxComplex {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxComplex {
            re,
            im,
            tol: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tol(re: f64, im: f64, tol: f64) -> Self {
        ApproxComplex { re, im, tol }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn one() -> Self {
        Self::new(1.0, 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        let tol = self.tol.max(other.tol);
        (self.re - other.re).hypot(self.im - other.im) <= tol
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::with_tol(self.re + o.re, self.im + o.im, self.tol.max(o.tol))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::with_tol(self.re - o.re, self.im - o.im, self.tol.max(o.tol))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::with_tol(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.tol.max(o.tol),
        )
    }

    pub fn div(&self, o: &Self) -> Result<Self, ScalarError> {
        let d = o.re * o.re + o.im * o.im;
        if d == 0.0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::with_tol(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
            self.tol.max(o.tol),
        ))
    }

    pub fn sqrt(&self) -> Self {
        // Principal branch.
        let r = self.norm();
        let re = ((r + self.re) / 2.0).max(0.0).sqrt();
        let im_mag = ((r - self.re) / 2.0).max(0.0).sqrt();
        let im = if self.im < 0.0 { -im_mag } else { im_mag };
        Self::with_tol(re, im, self.tol)
    }

    pub fn conj(&self) -> Self {
        Self::with_tol(self.re, -self.im, self.tol)
    }
}

/// A field scalar: exact cyclotomic or tolerance-compared complex.
/// A computation declares its mode up front; mixing modes is an error
/// (the operator impls panic, the checked methods return one).
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(Cyclotomic),
    Approx(ApproxComplex),
}

impl Scalar {
    pub fn exact_zero(order: u32) -> Self {
        Scalar::Exact(Cyclotomic::zero(order))
    }

    pub fn exact_one(order: u32) -> Self {
        Scalar::Exact(Cyclotomic::one(order))
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        Scalar::Exact(Cyclotomic::from_rational(order, r))
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Scalar::Exact(Cyclotomic::from_integer(order, n))
    }

    pub fn root_of_unity(order: u32, k: i64) -> Self {
        Scalar::Exact(Cyclotomic::root_of_unity(order, k))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Approx(a) => a.norm() <= a.tol,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_one(),
            Scalar::Approx(a) => a.approx_eq(&ApproxComplex::one()),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.add(b))),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.add(b))),
            _ => Err(ScalarError::MixedMode),
        }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.sub(b))),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.sub(b))),
            _ => Err(ScalarError::MixedMode),
        }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.mul(b))),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.mul(b))),
            _ => Err(ScalarError::MixedMode),
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.div(b)?)),
            (Scalar::Approx(a), Scalar::Approx(b)) => Ok(Scalar::Approx(a.div(b)?)),
            _ => Err(ScalarError::MixedMode),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.neg()),
            Scalar::Approx(a) => Scalar::Approx(ApproxComplex::with_tol(-a.re, -a.im, a.tol)),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self {
            Scalar::Exact(c) => Ok(Scalar::Exact(c.inv()?)),
            Scalar::Approx(a) => Ok(Scalar::Approx(ApproxComplex::one().div(a)?)),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Self, ScalarError> {
        match self {
            Scalar::Exact(c) => Ok(Scalar::Exact(c.pow(n)?)),
            Scalar::Approx(a) => {
                let mut acc = ApproxComplex::one();
                let inv;
                let mut base = if n < 0 {
                    inv = ApproxComplex::one().div(a)?;
                    inv
                } else {
                    *a
                };
                let mut k = n.unsigned_abs();
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc.mul(&base);
                    }
                    base = base.mul(&base);
                    k >>= 1;
                }
                Ok(Scalar::Approx(acc))
            }
        }
    }

    /// Complex conjugation: the Galois map zeta -> zeta^(-1) in exact mode.
    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.conj()),
            Scalar::Approx(a) => Scalar::Approx(a.conj()),
        }
    }

    /// Numerical value. `precision_bits` caps the trusted precision; values
    /// are evaluated in doubles, so 48 bits is the honest ceiling.
    pub fn to_complex(&self, precision_bits: u32) -> ApproxComplex {
        let _ = precision_bits;
        match self {
            Scalar::Exact(c) => {
                let (re, im) = c.to_complex();
                ApproxComplex::new(re, im)
            }
            Scalar::Approx(a) => *a,
        }
    }

    /// Structural equality in exact mode (after order coercion),
    /// tolerance comparison in approx mode.
    pub fn eq_value(&self, o: &Self) -> bool {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                if a.order() == b.order() {
                    a == b
                } else {
                    let (x, y) = Cyclotomic::lift(a, b);
                    x == y
                }
            }
            (Scalar::Approx(a), Scalar::Approx(b)) => a.approx_eq(b),
            _ => false,
        }
    }

    pub fn as_exact(&self) -> Option<&Cyclotomic> {
        match self {
            Scalar::Exact(c) => Some(c),
            Scalar::Approx(_) => None,
        }
    }

    /// Some(r) for exact rational values.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_exact().and_then(|c| c.as_rational())
    }

    /// Some(n) when the value is an exact rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.denom().is_one() {
            Some(r.numer().clone())
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{}", c),
            Scalar::Approx(a) => write!(f, "{}{:+}i", a.re, a.im),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs)
                    .expect("scalar arithmetic: mixed modes or division by zero")
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(c) => {
                let mut st = ser.serialize_struct("Scalar", 2)?;
                st.serialize_field("order", &c.order())?;
                let coeffs: Vec<String> = c.coeffs().iter().map(|r| r.to_string()).collect();
                st.serialize_field("coeffs", &coeffs)?;
                st.end()
            }
            Scalar::Approx(a) => {
                let mut st = ser.serialize_struct("Scalar", 2)?;
                st.serialize_field("re", &a.re)?;
                st.serialize_field("im", &a.im)?;
                st.end()
            }
        }
    }
}

#[derive(Deserialize)]
struct ScalarRepr {
    order: Option<u32>,
    coeffs: Option<Vec<String>>,
    re: Option<f64>,
    im: Option<f64>,
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(de)?;
        match (repr.order, repr.coeffs, repr.re, repr.im) {
            (Some(order), Some(coeffs), _, _) => {
                let parsed: Result<Vec<Rational>, _> = coeffs
                    .iter()
                    .map(|s| s.parse::<Rational>().map_err(serde::de::Error::custom))
                    .collect();
                Ok(Scalar::Exact(Cyclotomic::from_poly(order, parsed?)))
            }
            (_, _, Some(re), Some(im)) => Ok(Scalar::Approx(ApproxComplex::new(re, im))),
            _ => Err(serde::de::Error::custom("not a scalar")),
        }
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if num.len() <= dd {
        return (vec![], trim(rem));
    }
    let lead = den[dd].recip();
    let mut quot = vec![Rational::zero(); num.len() - dd];
    for k in (0..=num.len() - 1 - dd).rev() {
        let c = &rem[k + dd] * &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                let delta = &c * d;
                rem[k + i] -= delta;
            }
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), Rational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(m: u32, k: i64) -> Scalar {
        Scalar::root_of_unity(m, k)
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let i = zeta(4, 1);
        let sq = &i * &i;
        assert!(sq.eq_value(&Scalar::from_integer(4, -1)));
    }

    #[test]
    fn twelfth_root_expansion() {
        // (A - A^-1)^2 = A^2 - 2 + A^-2 for A = zeta_12.
        let a = zeta(12, 1);
        let ai = zeta(12, -1);
        let d = &a - &ai;
        let lhs = &d * &d;
        let rhs = &(&(&a * &a) - &Scalar::from_integer(12, 2)) + &(&ai * &ai);
        assert!(lhs.eq_value(&rhs));
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let x = &Scalar::exact_one(5) + &zeta(5, 1);
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn root_of_unity_cases() {
        assert!(zeta(1, 0).is_one());
        let z93 = zeta(9, 3);
        assert!(z93.pow(3).unwrap().is_one());
        assert!(!z93.is_one());
        // zeta_9^3 is a primitive cube root.
        assert!(z93.eq_value(&zeta(3, 1).as_exact().map(|c| Scalar::Exact(c.coerce(9))).unwrap()));
    }

    #[test]
    fn roots_have_order_m_up_to_64() {
        for m in 1..=64u32 {
            for k in [0i64, 1, 2, (m as i64) - 1, (m as i64) / 2] {
                let z = zeta(m, k);
                assert!(z.pow(m as i64).unwrap().is_one(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn to_complex_matches_closed_forms() {
        let (re, im) = zeta(4, 1).as_exact().unwrap().to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);

        // Delta for r=5 with A = zeta_10: -10 / (A - A^-1)^2 ~ 9.472.
        let a = zeta(10, 1);
        let d = &a - &zeta(10, -1);
        let delta = Scalar::from_integer(10, -10)
            .checked_div(&(&d * &d))
            .unwrap();
        let v = delta.to_complex(48);
        assert!((v.re - 9.472135954999).abs() < 1e-9 && v.im.abs() < 1e-12);

        let m1 = Scalar::from_integer(7, -1).to_complex(48);
        assert!((m1.re + 1.0).abs() < 1e-12 && m1.im.abs() < 1e-12);
    }

    #[test]
    fn galois_conjugation_is_involutive() {
        let x = &(&zeta(12, 1) * &Scalar::from_integer(12, 3)) + &zeta(12, 7);
        let c = x.conj().conj();
        assert!(x.eq_value(&c));
    }

    #[test]
    fn mixed_mode_is_an_error() {
        let e = Scalar::exact_one(4);
        let a = Scalar::Approx(ApproxComplex::one());
        assert_eq!(e.checked_add(&a).unwrap_err(), ScalarError::MixedMode);
    }

    #[test]
    fn division_by_zero_reported() {
        let z = Scalar::exact_zero(5);
        assert_eq!(
            Scalar::exact_one(5).checked_div(&z).unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn phi_values() {
        for (m, phi) in [(1u32, 1u32), (2, 1), (3, 2), (4, 2), (9, 6), (12, 4), (81, 54)] {
            assert_eq!(euler_phi(m), phi);
        }
    }

    #[test]
    fn serde_roundtrip() {
        let x = &zeta(12, 5) + &Scalar::from_rational(12, "3/7".parse().unwrap());
        let s = serde_json::to_string(&x).unwrap();
        let y: Scalar = serde_json::from_str(&s).unwrap();
        assert!(x.eq_value(&y));
    }
}
