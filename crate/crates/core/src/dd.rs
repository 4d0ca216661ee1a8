//! Double-double arithmetic (about 32 significant digits).
//!
//! Maskit's genus-2 generators carry entries of size `e^β` whose products
//! cancel down to O(1) quantities, so their fixed points lose roughly
//! `3β/ln 10` digits. The group construction runs in this type and only the
//! recentred polygon data is rounded back to `f64`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub const fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Multiplication by an exact power of two.
    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let y = Dd::new(self.hi.sqrt());
        y + (self - y.sqr()) / (y + y)
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    /// `e^x - 1` for `|x| ≤ 0.75`, accurate in relative terms near zero.
    fn expm1_small(self) -> Self {
        const HALVINGS: i32 = 10;
        let r = self.ldexp(-HALVINGS);
        // Taylor series of e^r - 1; |r| < 1e-3 so 12 terms reach 1e-36.
        let mut term = r;
        let mut sum = r;
        for k in 2..=12 {
            term = term * r / Dd::new(k as f64);
            sum = sum + term;
        }
        // (1 + s)^2 - 1 = 2s + s^2
        for _ in 0..HALVINGS {
            sum = sum + sum + sum.sqr();
        }
        sum
    }

    pub fn expm1(self) -> Self {
        if self.hi.abs() <= 0.75 {
            self.expm1_small()
        } else {
            self.exp() - Dd::ONE
        }
    }

    pub fn exp(self) -> Self {
        if self.hi.abs() <= 0.75 {
            return self.expm1_small() + Dd::ONE;
        }
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = self - LN2 * Dd::new(k);
        (r.expm1_small() + Dd::ONE).ldexp(k as i32)
    }

    pub fn sinh(self) -> Self {
        if self.hi.abs() <= 0.75 {
            let a = self.expm1_small();
            let b = (-self).expm1_small();
            (a - b).ldexp(-1)
        } else {
            let e = self.exp();
            (e - e.recip()).ldexp(-1)
        }
    }

    pub fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).ldexp(-1)
    }

    /// `coth x - 1 = 2 / (e^{2x} - 1)`, without cancellation for large `x`.
    pub fn coth_minus_one(self) -> Self {
        Dd::new(2.0) / (self + self).expm1()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex number over [`Dd`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };
    pub const I: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ONE,
    };

    pub fn new(re: Dd, im: Dd) -> Self {
        Cdd { re, im }
    }

    pub fn real(re: Dd) -> Self {
        Cdd { re, im: Dd::ZERO }
    }

    pub fn imag(im: Dd) -> Self {
        Cdd { re: Dd::ZERO, im }
    }

    pub fn conj(self) -> Self {
        Cdd {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, k: Dd) -> Self {
        Cdd {
            re: self.re * k,
            im: self.im * k,
        }
    }

    /// Principal square root.
    pub fn sqrt(self) -> Self {
        let r = self.abs();
        if r.hi == 0.0 {
            return Cdd::ZERO;
        }
        let half = Dd::new(0.5);
        if self.re.hi >= 0.0 {
            let t = ((r + self.re) * half).sqrt();
            Cdd::new(t, self.im / (t + t))
        } else {
            let t = ((r - self.re) * half).sqrt();
            let t_signed = if self.im.hi < 0.0 { -t } else { t };
            Cdd::new(self.im.abs() / (t + t), t_signed)
        }
    }

    /// Projects onto the unit circle.
    pub fn normalized(self) -> Self {
        self.scale(self.abs().recip())
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl From<Complex64> for Cdd {
    fn from(z: Complex64) -> Self {
        Cdd::new(Dd::new(z.re), Dd::new(z.im))
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd::new(-self.re, -self.im)
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, b: Cdd) -> Cdd {
        Cdd::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, b: Cdd) -> Cdd {
        Cdd::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, b: Cdd) -> Cdd {
        Cdd::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, b: Cdd) -> Cdd {
        let den = b.norm_sqr();
        let num = self * b.conj();
        Cdd::new(num.re / den, num.im / den)
    }
}

/// 2×2 complex matrix over [`Cdd`], row-major `[a, b, c, d]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mdd {
    pub a: Cdd,
    pub b: Cdd,
    pub c: Cdd,
    pub d: Cdd,
}

impl Mdd {
    pub fn new(a: Cdd, b: Cdd, c: Cdd, d: Cdd) -> Self {
        Mdd { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mdd::new(Cdd::ONE, Cdd::ZERO, Cdd::ZERO, Cdd::ONE)
    }

    pub fn det(&self) -> Cdd {
        self.a * self.d - self.b * self.c
    }

    /// Adjugate; equals the inverse up to the scalar `det`.
    pub fn adjugate(&self) -> Self {
        Mdd::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, k: Cdd) -> Self {
        Mdd::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// Scales to determinant one.
    pub fn normalized(&self) -> Self {
        let s = self.det().sqrt();
        self.scale(Cdd::ONE / s)
    }

    pub fn apply(&self, z: Cdd) -> Cdd {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn to_c64(&self) -> [Complex64; 4] {
        [
            self.a.to_c64(),
            self.b.to_c64(),
            self.c.to_c64(),
            self.d.to_c64(),
        ]
    }

    /// Fixed points of a hyperbolic map as `(attracting, repelling)`, or
    /// `None` when the normalized trace is not real with `|tr| > 2`.
    pub fn hyperbolic_fixed_points(&self) -> Option<(Cdd, Cdd)> {
        let m = self.normalized();
        let tr = m.a + m.d;
        if tr.abs().to_f64() <= 2.0 {
            return None;
        }
        // c z^2 + (d - a) z - b = 0
        let disc = (tr * tr - Cdd::real(Dd::new(4.0))).sqrt();
        let amd = m.a - m.d;
        let plus = amd + disc;
        let minus = amd - disc;
        let big = if plus.norm_sqr() >= minus.norm_sqr() {
            plus
        } else {
            minus
        };
        let two = Cdd::real(Dd::new(2.0));
        let z1 = big / (two * m.c);
        let z2 = (-(two * m.b)) / big;
        let deriv = |z: Cdd| (m.c * z + m.d).norm_sqr();
        // |m'(z)| = 1/|cz+d|^2: attracting has the larger |cz+d|.
        if deriv(z1).to_f64() >= deriv(z2).to_f64() {
            Some((z1.normalized(), z2.normalized()))
        } else {
            Some((z2.normalized(), z1.normalized()))
        }
    }
}

impl Mul for Mdd {
    type Output = Mdd;
    fn mul(self, n: Mdd) -> Mdd {
        Mdd::new(
            self.a * n.a + self.b * n.c,
            self.a * n.b + self.b * n.d,
            self.c * n.a + self.d * n.c,
            self.c * n.b + self.d * n.d,
        )
    }
}

/// Product of a sequence of matrices, left to right.
pub fn product(ms: &[Mdd]) -> Mdd {
    ms.iter().fold(Mdd::identity(), |acc, m| acc * *m)
}
