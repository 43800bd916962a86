//! Forward-mode AD scalars.
//!
//! Everything downstream (metric closed forms, frame construction, quadrature
//! maps) is written against the [`Real`] trait so the same code path can be
//! evaluated with plain `f64`, with first-order duals (derivatives *through*
//! the frame construction), or with first/second-order jets (derivatives of
//! scalar fields). All containers are sized for the largest supported chart,
//! `DMAX = 6` real coordinates (three complex dimensions); unused slots carry
//! zero seeds and stay zero.

pub const DMAX: usize = 6;

/// Scalar admitting the handful of elementary operations the geometry needs.
pub trait Real:
    Copy
    + core::ops::Add<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Mul<Output = Self>
    + core::ops::Div<Output = Self>
    + core::ops::Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    /// Value part, stripped of all derivative payload. Used for pivoting and
    /// branch decisions only; branches must be locally constant in the inputs.
    fn val(&self) -> f64;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan(self) -> Self;
    fn atanh(self) -> Self;
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn val(&self) -> f64 {
        *self
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn atanh(self) -> Self {
        f64::atanh(self)
    }
}

/// First-order dual number over `f64` with `DMAX` simultaneous directions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: [f64; DMAX],
}

impl Dual {
    pub fn constant(v: f64) -> Self {
        Dual { v, d: [0.0; DMAX] }
    }

    /// Seeds coordinate `k`: value `v`, unit derivative in slot `k`.
    pub fn seed(v: f64, k: usize) -> Self {
        let mut d = [0.0; DMAX];
        d[k] = 1.0;
        Dual { v, d }
    }

    fn map(self, v: f64, dv: f64) -> Self {
        let mut d = self.d;
        for x in d.iter_mut() {
            *x *= dv;
        }
        Dual { v, d }
    }
}

impl core::ops::Add for Dual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut d = self.d;
        for (x, y) in d.iter_mut().zip(o.d) {
            *x += y;
        }
        Dual { v: self.v + o.v, d }
    }
}

impl core::ops::Sub for Dual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut d = self.d;
        for (x, y) in d.iter_mut().zip(o.d) {
            *x -= y;
        }
        Dual { v: self.v - o.v, d }
    }
}

impl core::ops::Mul for Dual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut d = [0.0; DMAX];
        for ((x, a), b) in d.iter_mut().zip(self.d).zip(o.d) {
            *x = a * o.v + self.v * b;
        }
        Dual { v: self.v * o.v, d }
    }
}

impl core::ops::Div for Dual {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = 1.0 / o.v;
        let mut d = [0.0; DMAX];
        for ((x, a), b) in d.iter_mut().zip(self.d).zip(o.d) {
            *x = (a - self.v * inv * b) * inv;
        }
        Dual { v: self.v * inv, d }
    }
}

impl core::ops::Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        let mut d = self.d;
        for x in d.iter_mut() {
            *x = -*x;
        }
        Dual { v: -self.v, d }
    }
}

impl Real for Dual {
    fn from_f64(x: f64) -> Self {
        Dual::constant(x)
    }
    fn val(&self) -> f64 {
        self.v
    }
    fn ln(self) -> Self {
        self.map(self.v.ln(), 1.0 / self.v)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.map(e, e)
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.map(s, 0.5 / s)
    }
    fn sin(self) -> Self {
        self.map(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.map(self.v.cos(), -self.v.sin())
    }
    fn atan(self) -> Self {
        self.map(self.v.atan(), 1.0 / (1.0 + self.v * self.v))
    }
    fn atanh(self) -> Self {
        self.map(self.v.atanh(), 1.0 / (1.0 - self.v * self.v))
    }
}

/// First-order jet over an arbitrary base scalar: value plus gradient.
#[derive(Clone, Copy, Debug)]
pub struct J1<S: Real> {
    pub v: S,
    pub g: [S; DMAX],
}

impl<S: Real> J1<S> {
    pub fn constant(v: S) -> Self {
        J1 { v, g: [S::zero(); DMAX] }
    }

    pub fn seed(v: S, k: usize) -> Self {
        let mut g = [S::zero(); DMAX];
        g[k] = S::one();
        J1 { v, g }
    }

    /// Chain rule for a univariate function: `fv = f(v)`, `f1 = f'(v)`.
    fn lift(self, fv: S, f1: S) -> Self {
        let mut g = self.g;
        for x in g.iter_mut() {
            *x = *x * f1;
        }
        J1 { v: fv, g }
    }
}

impl<S: Real> core::ops::Add for J1<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut g = self.g;
        for (x, y) in g.iter_mut().zip(o.g) {
            *x = *x + y;
        }
        J1 { v: self.v + o.v, g }
    }
}

impl<S: Real> core::ops::Sub for J1<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut g = self.g;
        for (x, y) in g.iter_mut().zip(o.g) {
            *x = *x - y;
        }
        J1 { v: self.v - o.v, g }
    }
}

impl<S: Real> core::ops::Mul for J1<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (fg)' = f'g + fg'
        let mut g = [S::zero(); DMAX];
        for ((x, a), b) in g.iter_mut().zip(self.g).zip(o.g) {
            *x = a * o.v + self.v * b;
        }
        J1 { v: self.v * o.v, g }
    }
}

impl<S: Real> core::ops::Div for J1<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = S::one() / o.v;
        let v = self.v * inv;
        let mut g = [S::zero(); DMAX];
        for ((x, a), b) in g.iter_mut().zip(self.g).zip(o.g) {
            *x = (a - v * b) * inv;
        }
        J1 { v, g }
    }
}

impl<S: Real> core::ops::Neg for J1<S> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut g = self.g;
        for x in g.iter_mut() {
            *x = -*x;
        }
        J1 { v: -self.v, g }
    }
}

impl<S: Real> Real for J1<S> {
    fn from_f64(x: f64) -> Self {
        J1::constant(S::from_f64(x))
    }
    fn val(&self) -> f64 {
        self.v.val()
    }
    fn ln(self) -> Self {
        self.lift(self.v.ln(), S::one() / self.v)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.lift(e, e)
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.lift(s, S::from_f64(0.5) / s)
    }
    fn sin(self) -> Self {
        self.lift(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.lift(self.v.cos(), -self.v.sin())
    }
    fn atan(self) -> Self {
        self.lift(self.v.atan(), S::one() / (S::one() + self.v * self.v))
    }
    fn atanh(self) -> Self {
        self.lift(self.v.atanh(), S::one() / (S::one() - self.v * self.v))
    }
}

/// Second-order jet: value, gradient, full (symmetric) Hessian.
#[derive(Clone, Copy, Debug)]
pub struct J2<S: Real> {
    pub v: S,
    pub g: [S; DMAX],
    pub h: [[S; DMAX]; DMAX],
}

impl<S: Real> J2<S> {
    pub fn constant(v: S) -> Self {
        J2 { v, g: [S::zero(); DMAX], h: [[S::zero(); DMAX]; DMAX] }
    }

    pub fn seed(v: S, k: usize) -> Self {
        let mut g = [S::zero(); DMAX];
        g[k] = S::one();
        J2 { v, g, h: [[S::zero(); DMAX]; DMAX] }
    }

    /// Chain rule for a univariate function: needs f, f', f'' at the value.
    /// (f∘u)'' = f''(u) u'⊗u' + f'(u) u''
    fn lift(self, fv: S, f1: S, f2: S) -> Self {
        let mut g = [S::zero(); DMAX];
        let mut h = [[S::zero(); DMAX]; DMAX];
        for k in 0..DMAX {
            g[k] = self.g[k] * f1;
        }
        for a in 0..DMAX {
            for b in 0..DMAX {
                h[a][b] = self.h[a][b] * f1 + self.g[a] * self.g[b] * f2;
            }
        }
        J2 { v: fv, g, h }
    }
}

impl<S: Real> core::ops::Add for J2<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut r = self;
        r.v = r.v + o.v;
        for k in 0..DMAX {
            r.g[k] = r.g[k] + o.g[k];
        }
        for a in 0..DMAX {
            for b in 0..DMAX {
                r.h[a][b] = r.h[a][b] + o.h[a][b];
            }
        }
        r
    }
}

impl<S: Real> core::ops::Sub for J2<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut r = self;
        r.v = r.v - o.v;
        for k in 0..DMAX {
            r.g[k] = r.g[k] - o.g[k];
        }
        for a in 0..DMAX {
            for b in 0..DMAX {
                r.h[a][b] = r.h[a][b] - o.h[a][b];
            }
        }
        r
    }
}

impl<S: Real> core::ops::Mul for J2<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (fg)'' = f''g + f'⊗g' + g'⊗f' + fg''
        let mut r = J2::constant(self.v * o.v);
        for k in 0..DMAX {
            r.g[k] = self.g[k] * o.v + self.v * o.g[k];
        }
        for a in 0..DMAX {
            for b in 0..DMAX {
                r.h[a][b] = self.h[a][b] * o.v
                    + self.g[a] * o.g[b]
                    + o.g[a] * self.g[b]
                    + self.v * o.h[a][b];
            }
        }
        r
    }
}

impl<S: Real> core::ops::Div for J2<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        // u/w = u * w⁻¹ with (w⁻¹)' = -w'/w², (w⁻¹)'' = (2w'⊗w' - w w'')/w³
        let inv = S::one() / o.v;
        let inv2 = inv * inv;
        let mut oi = J2::constant(inv);
        for k in 0..DMAX {
            oi.g[k] = -o.g[k] * inv2;
        }
        let two = S::from_f64(2.0);
        for a in 0..DMAX {
            for b in 0..DMAX {
                oi.h[a][b] = (two * o.g[a] * o.g[b] * inv - o.h[a][b]) * inv2;
            }
        }
        self * oi
    }
}

impl<S: Real> core::ops::Neg for J2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut r = self;
        r.v = -r.v;
        for k in 0..DMAX {
            r.g[k] = -r.g[k];
        }
        for a in 0..DMAX {
            for b in 0..DMAX {
                r.h[a][b] = -r.h[a][b];
            }
        }
        r
    }
}

impl<S: Real> Real for J2<S> {
    fn from_f64(x: f64) -> Self {
        J2::constant(S::from_f64(x))
    }
    fn val(&self) -> f64 {
        self.v.val()
    }
    fn ln(self) -> Self {
        let iv = S::one() / self.v;
        self.lift(self.v.ln(), iv, -iv * iv)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.lift(e, e, e)
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        let f1 = S::from_f64(0.5) / s;
        let f2 = -f1 / (S::from_f64(2.0) * self.v);
        self.lift(s, f1, f2)
    }
    fn sin(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.lift(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.lift(c, -s, -c)
    }
    fn atan(self) -> Self {
        let w = S::one() + self.v * self.v;
        let f1 = S::one() / w;
        let f2 = -S::from_f64(2.0) * self.v * f1 * f1;
        self.lift(self.v.atan(), f1, f2)
    }
    fn atanh(self) -> Self {
        let w = S::one() - self.v * self.v;
        let f1 = S::one() / w;
        let f2 = S::from_f64(2.0) * self.v * f1 * f1;
        self.lift(self.v.atanh(), f1, f2)
    }
}

/// Complex number over a generic real scalar. Fields stay real internally so
/// every AD layer sees only real arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct Cx<S: Real> {
    pub re: S,
    pub im: S,
}

pub type C64 = Cx<f64>;

impl<S: Real> Cx<S> {
    pub fn new(re: S, im: S) -> Self {
        Cx { re, im }
    }
    pub fn real(re: S) -> Self {
        Cx { re, im: S::zero() }
    }
    pub fn zero() -> Self {
        Cx::real(S::zero())
    }
    pub fn one() -> Self {
        Cx::real(S::one())
    }
    pub fn from_f64s(re: f64, im: f64) -> Self {
        Cx { re: S::from_f64(re), im: S::from_f64(im) }
    }
    pub fn i() -> Self {
        Cx { re: S::zero(), im: S::one() }
    }
    pub fn conj(self) -> Self {
        Cx { re: self.re, im: -self.im }
    }
    pub fn abs2(self) -> S {
        self.re * self.re + self.im * self.im
    }
    pub fn scale(self, s: S) -> Self {
        Cx { re: self.re * s, im: self.im * s }
    }
    pub fn inv(self) -> Self {
        let n = S::one() / self.abs2();
        Cx { re: self.re * n, im: -self.im * n }
    }
    pub fn exp(self) -> Self {
        let e = self.re.exp();
        Cx { re: e * self.im.cos(), im: e * self.im.sin() }
    }
    pub fn mul_i(self) -> Self {
        Cx { re: -self.im, im: self.re }
    }
    pub fn val(self) -> C64 {
        Cx { re: self.re.val(), im: self.im.val() }
    }
}

impl C64 {
    pub fn abs(self) -> f64 {
        self.abs2().sqrt()
    }
}

impl<S: Real> core::ops::Add for Cx<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<S: Real> core::ops::Sub for Cx<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<S: Real> core::ops::Mul for Cx<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cx {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<S: Real> core::ops::Div for Cx<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl<S: Real> core::ops::Neg for Cx<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx { re: -self.re, im: -self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    // g(x0,x1) = exp(x0) * atan(x1) + sqrt(x0 + 2) / (1 - x1), hand-derived partials.
    fn g<S: Real>(x: &[S; 2]) -> S {
        x[0].exp() * x[1].atan() + (x[0] + S::from_f64(2.0)).sqrt() / (S::one() - x[1])
    }

    #[test]
    fn dual_matches_closed_form_partials() {
        let (a, b) = (0.4_f64, -0.3_f64);
        let r = g(&[Dual::seed(a, 0), Dual::seed(b, 1)]);
        let d0 = a.exp() * b.atan() + 0.5 / (a + 2.0).sqrt() / (1.0 - b);
        let d1 = a.exp() / (1.0 + b * b) + (a + 2.0).sqrt() / (1.0 - b).powi(2);
        assert!(close(r.v, g(&[a, b]), 1e-15));
        assert!(close(r.d[0], d0, 1e-14));
        assert!(close(r.d[1], d1, 1e-14));
    }

    #[test]
    fn j2_matches_central_differences() {
        let p = [0.4, -0.3];
        let r = g(&[J2::seed(p[0], 0), J2::seed(p[1], 1)]);
        let h = 1e-5;
        for a in 0..2 {
            for b in 0..2 {
                let q = |da: f64, db: f64| {
                    let mut x = p;
                    x[a] += da;
                    x[b] += db;
                    g(&[x[0], x[1]])
                };
                let fd = (q(h, h) - q(h, -h) - q(-h, h) + q(-h, -h)) / (4.0 * h * h);
                assert!(close(r.h[a][b], fd, 1e-5), "hess[{a}][{b}]: {} vs {}", r.h[a][b], fd);
            }
        }
    }

    #[test]
    fn nested_j1_over_dual_gives_second_derivatives() {
        // d/dx0 of (dg/dx1) via J1<Dual> must match J2's mixed entry.
        let p = [0.4, -0.3];
        let r2 = g(&[J2::seed(p[0], 0), J2::seed(p[1], 1)]);
        let x0 = J1::seed(Dual::seed(p[0], 0), 0);
        let x1 = J1::seed(Dual::seed(p[1], 1), 1);
        let r = g(&[x0, x1]);
        assert!(close(r.g[1].d[0], r2.h[0][1], 1e-13));
        assert!(close(r.g[0].d[0], r2.h[0][0], 1e-13));
    }

    #[test]
    fn complex_field_ops() {
        let z = Cx::new(0.3, -0.7);
        let w = Cx::new(-1.1, 0.2);
        let q = (z * w + z.conj()) / w;
        let exact = {
            // hand-checked with (a+bi)(c+di) arithmetic
            let zw = Cx::new(0.3 * -1.1 - -0.7 * 0.2, 0.3 * 0.2 + -0.7 * -1.1);
            let num = zw + Cx::new(0.3, 0.7);
            num * w.inv()
        };
        assert!(close(q.re, exact.re, 1e-15) && close(q.im, exact.im, 1e-15));
        assert!(close(z.mul_i().re, 0.7, 1e-15));
        assert!(close(z.exp().re, 0.3_f64.exp() * 0.7_f64.cos(), 1e-15));
    }
}
