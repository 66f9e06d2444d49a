//! The Cayley dictionary between P¹(ℝ) and the unit circle, the SU(1,1) form
//! of real Möbius maps, and the tangent-addition group law on P¹(ℝ).
//!
//! In homogeneous coordinates the group law is multiplication of the complex
//! numbers `b + ia`: `[a : b] ↦ b + ia` identifies P¹(ℝ) with ℂ^×/ℝ_{>0}, and
//! the tangent addition formula is just the argument of the product. This is
//! what makes `+_L` total, including at ∞.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cover::CirclePoint;
use crate::error::{Error, Result};
use crate::projline::{MobiusMap, ProjPoint};

/// Allowed drift of `|z|` from 1 for inputs to the inverse Cayley transform.
pub const CIRCLE_TOL: f64 = 1e-8;

/// A point of the unit circle `𝕋 ⊂ ℂ^×`, serialized as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct UnitComplex {
    re: f64,
    im: f64,
}

impl UnitComplex {
    pub const ONE: UnitComplex = UnitComplex { re: 1.0, im: 0.0 };
    pub const I: UnitComplex = UnitComplex { re: 0.0, im: 1.0 };

    /// Validates `|z| ≈ 1` and renormalizes.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        let r = re.hypot(im);
        if !r.is_finite() || (r - 1.0).abs() > CIRCLE_TOL {
            return Err(Error::OffCircle(r - 1.0));
        }
        Ok(UnitComplex { re: re / r, im: im / r })
    }

    /// `e(t) = exp(2πit)`, exact at quarter turns.
    pub fn from_turns(t: f64) -> Self {
        let t = CirclePoint::new(t).value();
        let q = 4.0 * t;
        if q.fract() == 0.0 {
            return match q as u8 {
                0 => UnitComplex { re: 1.0, im: 0.0 },
                1 => UnitComplex { re: 0.0, im: 1.0 },
                2 => UnitComplex { re: -1.0, im: 0.0 },
                _ => UnitComplex { re: 0.0, im: -1.0 },
            };
        }
        let (s, c) = (std::f64::consts::TAU * t).sin_cos();
        UnitComplex { re: c, im: s }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    /// The angle in turns, in `[0, 1)`.
    pub fn turns(&self) -> CirclePoint {
        CirclePoint::new(self.im.atan2(self.re) / std::f64::consts::TAU)
    }

    pub fn conj(&self) -> UnitComplex {
        UnitComplex { re: self.re, im: -self.im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_complex_unchecked(z: Complex64) -> UnitComplex {
        let r = z.norm();
        UnitComplex { re: z.re / r, im: z.im / r }
    }
}

impl std::ops::Mul for UnitComplex {
    type Output = UnitComplex;

    fn mul(self, rhs: UnitComplex) -> UnitComplex {
        UnitComplex::from_complex_unchecked(self.to_complex() * rhs.to_complex())
    }
}

impl TryFrom<[f64; 2]> for UnitComplex {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        UnitComplex::new(v[0], v[1])
    }
}

impl From<UnitComplex> for [f64; 2] {
    fn from(z: UnitComplex) -> [f64; 2] {
        [z.re, z.im]
    }
}

/// Stereographic projection `C(x) = (x − i)/(1 − ix)`: ∞ ↦ i, ±1 ↦ ±1, 0 ↦ −i.
pub fn cayley(p: ProjPoint) -> UnitComplex {
    let (a, b) = (p.a(), p.b());
    let r = a * a + b * b;
    UnitComplex { re: 2.0 * a * b / r, im: (a * a - b * b) / r }
}

/// Inverse of [`cayley`]; fails if `|z|` is off by more than [`CIRCLE_TOL`].
pub fn cayley_inv(z: Complex64) -> Result<ProjPoint> {
    let z = UnitComplex::new(z.re, z.im)?;
    Ok(cayley_inv_unit(z))
}

pub fn cayley_inv_unit(z: UnitComplex) -> ProjPoint {
    // half-angle formulas; pick the branch away from cancellation
    let pair = if z.im <= 0.0 { (z.re, 1.0 - z.im) } else { (1.0 + z.im, z.re) };
    ProjPoint::new(pair.0, pair.1).expect("unit complex number has a nonzero half-angle pair")
}

/// `tan π(t + 1/4) = C⁻¹(e(t))`; the pole sits exactly at `t = 1/4`.
pub fn stereo_param(t: CirclePoint) -> ProjPoint {
    cayley_inv_unit(UnitComplex::from_turns(t.value()))
}

/// The renormalized Cayley map `L(z) = iC(z) = (1 + iz)/(1 − iz)`.
pub fn l_map(p: ProjPoint) -> UnitComplex {
    let (a, b) = (p.a(), p.b());
    let r = a * a + b * b;
    UnitComplex { re: (b * b - a * a) / r, im: 2.0 * a * b / r }
}

/// A matrix `[[u, v], [v̄, ū]]` with `|u|² − |v|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SU11Matrix {
    #[serde(serialize_with = "ser_complex")]
    pub u: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub v: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl SU11Matrix {
    pub fn det(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr()
    }

    /// `z ↦ (uz + v)/(v̄z + ū)`; preserves the unit circle.
    pub fn apply(&self, z: UnitComplex) -> UnitComplex {
        let z = z.to_complex();
        UnitComplex::from_complex_unchecked((self.u * z + self.v) / (self.v.conj() * z + self.u.conj()))
    }

    pub fn compose(&self, other: &SU11Matrix) -> SU11Matrix {
        SU11Matrix { u: self.u * other.u + self.v * other.v.conj(), v: self.u * other.v + self.v * other.u.conj() }
    }

    /// Moves `p` through the circle and back: `C (Ã (C̄ p))` conjugated, which
    /// reproduces the real action of the matrix this was conjugated from.
    pub fn transport(&self, p: ProjPoint) -> ProjPoint {
        cayley_inv_unit(self.apply(cayley(p).conj()).conj())
    }
}

/// `Ã = C⁻¹AC` for `A ∈ SL₂(ℝ)`:
/// `u = ½[(a+d) + i(c−b)]`, `v = ½[(b+c) + i(d−a)]`.
///
/// `C⁻¹` restricted to ℝ is `x ↦ conj(C(x))`, so the intertwining reads
/// `Ã(conj C(x)) = conj C(Ax)`.
pub fn su11_conjugate(m: &MobiusMap) -> Result<SU11Matrix> {
    let det = m.det();
    if (det - 1.0).abs() > 1e-10 {
        return Err(Error::DetNotOne(det));
    }
    let [a, b, c, d] = m.entries();
    Ok(SU11Matrix { u: Complex64::new(0.5 * (a + d), 0.5 * (c - b)), v: Complex64::new(0.5 * (b + c), 0.5 * (d - a)) })
}

/// `p +_L q = (p + q)/(1 − pq)`, total on P¹(ℝ).
pub fn group_add(p: ProjPoint, q: ProjPoint) -> ProjPoint {
    let (a, b) = (p.a(), p.b());
    let (c, d) = (q.a(), q.b());
    ProjPoint::new(a * d + b * c, b * d - a * c).expect("product of nonzero complex numbers")
}

/// `[−1]_L(p) = −p`; fixes 0 and ∞.
pub fn group_neg(p: ProjPoint) -> ProjPoint {
    p.neg()
}

/// `[m]_L(p)` by double-and-add.
pub fn group_mul_int(m: i64, p: ProjPoint) -> ProjPoint {
    let mut k = m.unsigned_abs();
    let mut base = p;
    let mut acc = ProjPoint::ZERO;
    while k > 0 {
        if k & 1 == 1 {
            acc = group_add(acc, base);
        }
        base = group_add(base, base);
        k >>= 1;
    }
    if m < 0 {
        group_neg(acc)
    } else {
        acc
    }
}

/// A rational number `num/den` with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let s = den.signum();
        Ok(Rational { num: s * num / g, den: s * den / g })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        match s.trim().split_once('/') {
            Some((n, d)) => Rational::new(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
            None => Rational::new(s.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The torsion point `tan(πq)`; exact at multiples of 1/4.
pub fn torsion_point(q: Rational) -> ProjPoint {
    let r = q.num.rem_euclid(q.den);
    let d = q.den;
    match (4 * r) as i128 {
        0 => ProjPoint::ZERO,
        x if x == d as i128 => ProjPoint::ONE,
        x if x == 2 * d as i128 => ProjPoint::INFINITY,
        x if x == 3 * d as i128 => ProjPoint::affine(-1.0),
        _ => ProjPoint::from_angle(std::f64::consts::PI * r as f64 / d as f64),
    }
}
