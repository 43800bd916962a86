//! Scalar fields and their exact derivatives.
//!
//! A [`ScalarField`] is a small expression tree over the chart coordinates
//! (complex polynomials, |z|², log/exp/sqrt/arctan of real subexpressions,
//! real and imaginary parts). Fields are evaluated generically over any
//! [`Real`] scalar, so first and second derivatives come from forward-mode
//! jets rather than divided differences.

use std::sync::Arc;

use crate::ambient::SpaceForm;
use crate::linalg::CMat;
use crate::scalar::{Cx, Real, C64, DMAX, J2};
use crate::Error;

#[derive(Debug)]
enum Expr {
    Const(C64),
    /// z_i as a complex value
    Z(usize),
    /// conj(z_i)
    Zbar(usize),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Conj(Arc<Expr>),
    ReP(Arc<Expr>),
    ImP(Arc<Expr>),
    /// |e|² as a real value
    AbsSq(Arc<Expr>),
    PowI(Arc<Expr>, u32),
    // The univariate transcendentals act on real-valued subexpressions
    // (radial potentials, distance functions). Exp is fully complex.
    Ln(Arc<Expr>),
    Sqrt(Arc<Expr>),
    Atan(Arc<Expr>),
    Atanh(Arc<Expr>),
    Exp(Arc<Expr>),
}

fn eval<S: Real>(e: &Expr, q: &[S; DMAX]) -> Cx<S> {
    match e {
        Expr::Const(c) => Cx::from_f64s(c.re, c.im),
        Expr::Z(i) => Cx::new(q[2 * i], q[2 * i + 1]),
        Expr::Zbar(i) => Cx::new(q[2 * i], -q[2 * i + 1]),
        Expr::Add(a, b) => eval(a, q) + eval(b, q),
        Expr::Sub(a, b) => eval(a, q) - eval(b, q),
        Expr::Mul(a, b) => eval(a, q) * eval(b, q),
        Expr::Div(a, b) => eval(a, q) / eval(b, q),
        Expr::Neg(a) => -eval(a, q),
        Expr::Conj(a) => eval(a, q).conj(),
        Expr::ReP(a) => Cx::real(eval(a, q).re),
        Expr::ImP(a) => Cx::real(eval(a, q).im),
        Expr::AbsSq(a) => Cx::real(eval(a, q).abs2()),
        Expr::PowI(a, k) => {
            let base = eval(a, q);
            let mut acc = Cx::one();
            for _ in 0..*k {
                acc = acc * base;
            }
            acc
        }
        Expr::Ln(a) => Cx::real(eval(a, q).re.ln()),
        Expr::Sqrt(a) => Cx::real(eval(a, q).re.sqrt()),
        Expr::Atan(a) => Cx::real(eval(a, q).re.atan()),
        Expr::Atanh(a) => Cx::real(eval(a, q).re.atanh()),
        Expr::Exp(a) => eval(a, q).exp(),
    }
}

/// Complex-valued field on a chart, exactly differentiable to second order.
#[derive(Clone, Debug)]
pub struct ScalarField(Arc<Expr>);

impl ScalarField {
    pub fn constant(re: f64, im: f64) -> Self {
        ScalarField(Arc::new(Expr::Const(Cx::new(re, im))))
    }
    /// The coordinate function z_i (0-based).
    pub fn z(i: usize) -> Self {
        assert!(i < DMAX / 2);
        ScalarField(Arc::new(Expr::Z(i)))
    }
    pub fn zbar(i: usize) -> Self {
        assert!(i < DMAX / 2);
        ScalarField(Arc::new(Expr::Zbar(i)))
    }
    /// |z|² = Σ_{i<n} z_i z̄_i.
    pub fn norm2(n: usize) -> Self {
        let mut acc = ScalarField::constant(0.0, 0.0);
        for i in 0..n {
            acc = acc + ScalarField::z(i).abs_sq();
        }
        acc
    }
    pub fn conj(&self) -> Self {
        ScalarField(Arc::new(Expr::Conj(self.0.clone())))
    }
    pub fn re(&self) -> Self {
        ScalarField(Arc::new(Expr::ReP(self.0.clone())))
    }
    pub fn im(&self) -> Self {
        ScalarField(Arc::new(Expr::ImP(self.0.clone())))
    }
    pub fn abs_sq(&self) -> Self {
        ScalarField(Arc::new(Expr::AbsSq(self.0.clone())))
    }
    pub fn powi(&self, k: u32) -> Self {
        ScalarField(Arc::new(Expr::PowI(self.0.clone(), k)))
    }
    /// Natural log of a real-valued positive field.
    pub fn ln(&self) -> Self {
        ScalarField(Arc::new(Expr::Ln(self.0.clone())))
    }
    pub fn sqrt(&self) -> Self {
        ScalarField(Arc::new(Expr::Sqrt(self.0.clone())))
    }
    pub fn atan(&self) -> Self {
        ScalarField(Arc::new(Expr::Atan(self.0.clone())))
    }
    pub fn atanh(&self) -> Self {
        ScalarField(Arc::new(Expr::Atanh(self.0.clone())))
    }
    pub fn exp(&self) -> Self {
        ScalarField(Arc::new(Expr::Exp(self.0.clone())))
    }
    pub fn scale(&self, s: f64) -> Self {
        ScalarField::constant(s, 0.0) * self.clone()
    }

    /// Evaluate with an arbitrary scalar; `q` holds the 2n real coordinates
    /// as (x_1, y_1, x_2, y_2, ...).
    pub fn eval<S: Real>(&self, q: &[S; DMAX]) -> Cx<S> {
        eval(&self.0, q)
    }

    pub fn value(&self, p: &[f64; DMAX]) -> C64 {
        self.eval(p)
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $node:ident) => {
        impl core::ops::$trait for ScalarField {
            type Output = ScalarField;
            fn $method(self, o: ScalarField) -> ScalarField {
                ScalarField(Arc::new(Expr::$node(self.0, o.0)))
            }
        }
    };
}
field_binop!(Add, add, Add);
field_binop!(Sub, sub, Sub);
field_binop!(Mul, mul, Mul);
field_binop!(Div, div, Div);

impl core::ops::Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField(Arc::new(Expr::Neg(self.0)))
    }
}

/// Second-order jet of a complex field at a point: value, the 2n real
/// coordinate partials, and the symmetric real Hessian, all complex-valued.
#[derive(Clone, Copy, Debug)]
pub struct Jet2 {
    pub n: usize,
    pub value: C64,
    pub grad: [C64; DMAX],
    pub hess: [[C64; DMAX]; DMAX],
}

impl Jet2 {
    /// ∂F/∂z_i = (∂_x − i∂_y)/2.
    pub fn dz(&self, i: usize) -> C64 {
        (self.grad[2 * i] - self.grad[2 * i + 1].mul_i()).scale(0.5)
    }
    /// ∂F/∂z̄_i = (∂_x + i∂_y)/2.
    pub fn dzbar(&self, i: usize) -> C64 {
        (self.grad[2 * i] + self.grad[2 * i + 1].mul_i()).scale(0.5)
    }
    /// ∂²F/∂z_i∂z̄_j.
    pub fn dz_dzbar(&self, i: usize, j: usize) -> C64 {
        let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        let re_part = self.hess[xi][xj] + self.hess[yi][yj];
        let im_part = self.hess[xi][yj] - self.hess[yi][xj];
        (re_part + im_part.mul_i()).scale(0.25)
    }
    /// ∂²F/∂z_i∂z_j (no Christoffel correction applied).
    pub fn dz_dz(&self, i: usize, j: usize) -> C64 {
        let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        let re_part = self.hess[xi][xj] - self.hess[yi][yj];
        let im_part = self.hess[xi][yj] + self.hess[yi][xj];
        (re_part - im_part.mul_i()).scale(0.25)
    }
    /// ∂²F/∂z̄_i∂z̄_j.
    pub fn dzbar_dzbar(&self, i: usize, j: usize) -> C64 {
        let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        let re_part = self.hess[xi][xj] - self.hess[yi][yj];
        let im_part = self.hess[xi][yj] + self.hess[yi][xj];
        (re_part + im_part.mul_i()).scale(0.25)
    }
}

/// Evaluate the full second-order jet of `f` at `p` (2n real coordinates).
pub fn jet2(f: &ScalarField, n: usize, p: &[f64; DMAX]) -> Jet2 {
    let mut q = [J2::<f64>::constant(0.0); DMAX];
    for k in 0..2 * n {
        q[k] = J2::seed(p[k], k);
    }
    let r = f.eval(&q);
    let mut grad = [Cx::zero(); DMAX];
    let mut hess = [[Cx::zero(); DMAX]; DMAX];
    for a in 0..2 * n {
        grad[a] = Cx::new(r.re.g[a], r.im.g[a]);
        for b in 0..2 * n {
            hess[a][b] = Cx::new(r.re.h[a][b], r.im.h[a][b]);
        }
    }
    Jet2 { n, value: Cx::new(r.re.v, r.im.v), grad, hess }
}

/// First derivatives in Wirtinger form: (∂F/∂z_i, ∂F/∂z̄_i) for i < n.
pub fn wirtinger(f: &ScalarField, n: usize, p: &[f64; DMAX]) -> ([C64; 3], [C64; 3]) {
    let j = jet2(f, n, p);
    let mut dz = [Cx::zero(); 3];
    let mut dzb = [Cx::zero(); 3];
    for i in 0..n {
        dz[i] = j.dz(i);
        dzb[i] = j.dzbar(i);
    }
    (dz, dzb)
}

/// The (1,1) covariant Hessian F_{ij̄} as an n×n complex matrix. Mixed-type
/// Christoffel symbols vanish on a Kähler chart, so this is the raw mixed
/// partial.
pub fn complex_hessian(space: &SpaceForm, f: &ScalarField, p: &[f64; DMAX]) -> Result<CMat<f64>, Error> {
    space.check_chart(p)?;
    let j = jet2(f, space.n, p);
    let mut m = crate::linalg::cmat_zero::<f64>();
    for i in 0..space.n {
        for k in 0..space.n {
            m[i][k] = j.dz_dzbar(i, k);
        }
    }
    Ok(m)
}

/// □F = h^{ij̄} F_{ij̄} (half the real Laplace–Beltrami operator).
pub fn box_op(space: &SpaceForm, f: &ScalarField, p: &[f64; DMAX]) -> Result<C64, Error> {
    space.check_chart(p)?;
    let j = jet2(f, space.n, p);
    box_of_jet(space, &j, p)
}

pub fn box_of_jet(space: &SpaceForm, j: &Jet2, p: &[f64; DMAX]) -> Result<C64, Error> {
    let mut fm = crate::linalg::cmat_zero::<f64>();
    for i in 0..space.n {
        for k in 0..space.n {
            fm[i][k] = j.dz_dzbar(i, k);
        }
    }
    let hinv = space.metric_inverse(p)?;
    Ok(trace_prod(&hinv, &fm, space.n))
}

/// Frobenius norm squared of the (1,1) Hessian with respect to the metric:
/// in any unitary frame this is Σ_{αβ} |F_{αβ̄}|².
pub fn d11_norm2(space: &SpaceForm, f: &ScalarField, p: &[f64; DMAX]) -> Result<f64, Error> {
    space.check_chart(p)?;
    let j = jet2(f, space.n, p);
    d11_norm2_of_jet(space, &j, p)
}

pub fn d11_norm2_of_jet(space: &SpaceForm, j: &Jet2, p: &[f64; DMAX]) -> Result<f64, Error> {
    let mut fm = crate::linalg::cmat_zero::<f64>();
    for i in 0..space.n {
        for k in 0..space.n {
            fm[i][k] = j.dz_dzbar(i, k);
        }
    }
    let hinv = space.metric_inverse(p)?;
    let n = space.n;
    // tr(H⁻¹ Fm H⁻¹ Fmᴴ)
    let mut total = 0.0;
    for i in 0..n {
        for jj in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let t = hinv[i][jj] * fm[jj][k] * hinv[k][l] * fm[i][l].conj();
                    total += t.re;
                }
            }
        }
    }
    Ok(total)
}

/// |∂̄F|² = h^{ij̄} F_ī conj(F_j̄); zero exactly when F is holomorphic at p.
pub fn dbar_norm2(space: &SpaceForm, f: &ScalarField, p: &[f64; DMAX]) -> Result<f64, Error> {
    space.check_chart(p)?;
    let j = jet2(f, space.n, p);
    dbar_norm2_of_jet(space, &j, p)
}

pub fn dbar_norm2_of_jet(space: &SpaceForm, j: &Jet2, p: &[f64; DMAX]) -> Result<f64, Error> {
    let hinv = space.metric_inverse(p)?;
    let n = space.n;
    let mut total = 0.0;
    for i in 0..n {
        for jj in 0..n {
            // h^{ij̄} = (H⁻¹)_{ji}
            let t = hinv[jj][i] * j.dzbar(i) * j.dzbar(jj).conj();
            total += t.re;
        }
    }
    Ok(total)
}

/// Covariant Hessian D²F(U, V) on complexified vectors at U's base point.
/// On a Kähler chart the mixed-type components are the raw mixed partials;
/// the pure components carry the Christoffel correction F_{;ij} = F_{ij} −
/// Γ^k_{ij} F_k and its conjugate.
pub fn covariant_hessian(
    space: &SpaceForm,
    f: &ScalarField,
    u: &crate::ambient::TangentVec,
    v: &crate::ambient::TangentVec,
) -> Result<C64, Error> {
    let p = &u.at.c;
    space.check_chart(p)?;
    let n = space.n;
    let j = jet2(f, n, p);
    let gam = space.christoffel(p)?;
    let mut s = Cx::zero();
    for a in 0..n {
        for b in 0..n {
            let mut s_ab = j.dz_dz(a, b);
            let mut sbar_ab = j.dzbar_dzbar(a, b);
            for k in 0..n {
                s_ab = s_ab - gam[k][a][b] * j.dz(k);
                sbar_ab = sbar_ab - gam[k][a][b].conj() * j.dzbar(k);
            }
            s = s + s_ab * u.hol(a) * v.hol(b)
                + sbar_ab * u.antihol(a) * v.antihol(b)
                + j.dz_dzbar(a, b) * u.hol(a) * v.antihol(b)
                + j.dz_dzbar(b, a) * u.antihol(a) * v.hol(b);
        }
    }
    Ok(s)
}

pub(crate) fn trace_prod(a: &CMat<f64>, b: &CMat<f64>, n: usize) -> C64 {
    let mut s = Cx::zero();
    for i in 0..n {
        for k in 0..n {
            s = s + a[i][k] * b[k][i];
        }
    }
    s
}
