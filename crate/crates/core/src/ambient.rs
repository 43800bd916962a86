//! The three complex space forms in a single affine chart each.
//!
//! Charts: ℂ^n for the flat space, the unit ball for the hyperbolic space,
//! all of ℂ^n for the projective space (one affine chart; the cut locus of
//! the origin is the hyperplane at infinity). The Hermitian metric is
//! normalized as h_{ij̄} = (1/2)∂_i∂_j̄φ, which makes the flat chart carry the
//! Euclidean metric and the holomorphic sectional curvature equal 4κ with
//! κ ∈ {0, −1, +1}.

use crate::jets::ScalarField;
use crate::linalg::{cinvert, cmat_zero, CMat};
use crate::scalar::{Cx, Dual, Real, C64, DMAX, J1};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Kappa {
    Flat,
    Hyperbolic,
    Projective,
}

impl Kappa {
    pub fn kappa(self) -> f64 {
        match self {
            Kappa::Flat => 0.0,
            Kappa::Hyperbolic => -1.0,
            Kappa::Projective => 1.0,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Kappa::Flat => "flat",
            Kappa::Hyperbolic => "ch",
            Kappa::Projective => "cp",
        }
    }
}

/// A space form of complex dimension `n` (2 or 3) in its standard chart.
#[derive(Clone, Debug)]
pub struct SpaceForm {
    pub kappa: Kappa,
    pub n: usize,
    /// Numerical guard for the projective chart; geometry never needs points
    /// this far out, but quadrature maps may sample toward the cut locus.
    pub cp_max_radius: f64,
}

/// Chart point. Coordinates are stored as (x_1, y_1, ..., x_n, y_n).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub c: [f64; DMAX],
}

impl Point {
    pub fn new(coords: &[f64]) -> Self {
        let mut c = [0.0; DMAX];
        c[..coords.len()].copy_from_slice(coords);
        Point { c }
    }

    pub fn origin() -> Self {
        Point { c: [0.0; DMAX] }
    }

    pub fn z(&self, i: usize) -> C64 {
        Cx::new(self.c[2 * i], self.c[2 * i + 1])
    }

    pub fn norm(&self, n: usize) -> f64 {
        let mut s = 0.0;
        for k in 0..2 * n {
            s += self.c[k] * self.c[k];
        }
        s.sqrt()
    }
}

/// Complexified tangent vector at a chart point, stored by its components
/// over the real coordinate basis (∂x_i, ∂y_i). Real vectors have real
/// components; the (1,0) and (0,1) parts are derived views.
#[derive(Clone, Copy, Debug)]
pub struct TangentVec {
    pub at: Point,
    pub comp: [C64; DMAX],
}

impl TangentVec {
    pub fn real(at: Point, comp_real: &[f64]) -> Self {
        let mut comp = [Cx::zero(); DMAX];
        for (c, r) in comp.iter_mut().zip(comp_real) {
            *c = Cx::new(*r, 0.0);
        }
        TangentVec { at, comp }
    }

    /// Pure (1,0) vector from holomorphic components w^i (so that the vector
    /// is Σ w^i ∂z_i).
    pub fn from_holomorphic(at: Point, w: &[C64]) -> Self {
        let mut comp = [Cx::zero(); DMAX];
        for (i, wi) in w.iter().enumerate() {
            comp[2 * i] = wi.scale(0.5);
            comp[2 * i + 1] = Cx::new(wi.im * 0.5, -wi.re * 0.5);
        }
        TangentVec { at, comp }
    }

    /// Real vector with the given holomorphic components (the coefficient of
    /// ∂z_i in v = Σ v^i ∂z_i + conj).
    pub fn real_from_hol(at: Point, w: &[C64]) -> Self {
        let mut comp = [Cx::zero(); DMAX];
        for (i, wi) in w.iter().enumerate() {
            comp[2 * i] = Cx::new(wi.re, 0.0);
            comp[2 * i + 1] = Cx::new(wi.im, 0.0);
        }
        TangentVec { at, comp }
    }

    /// Component of the (1,0) part along ∂z_i: u^i = comp_x + i comp_y.
    pub fn hol(&self, i: usize) -> C64 {
        self.comp[2 * i] + self.comp[2 * i + 1].mul_i()
    }

    /// Component of the (0,1) part along ∂z̄_i: u^ī = comp_x − i comp_y.
    pub fn antihol(&self, i: usize) -> C64 {
        self.comp[2 * i] - self.comp[2 * i + 1].mul_i()
    }

    /// The complex structure: (x, y) ↦ (−y, x) blockwise, extended
    /// complex-linearly to complexified vectors.
    pub fn j(&self) -> Self {
        let mut comp = [Cx::zero(); DMAX];
        for i in 0..DMAX / 2 {
            comp[2 * i] = -self.comp[2 * i + 1];
            comp[2 * i + 1] = self.comp[2 * i];
        }
        TangentVec { at: self.at, comp }
    }

    pub fn conj(&self) -> Self {
        let mut comp = self.comp;
        for c in comp.iter_mut() {
            *c = c.conj();
        }
        TangentVec { at: self.at, comp }
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut comp = self.comp;
        for c in comp.iter_mut() {
            *c = *c * s;
        }
        TangentVec { at: self.at, comp }
    }

    pub fn add(&self, o: &TangentVec) -> Self {
        let mut comp = self.comp;
        for (c, d) in comp.iter_mut().zip(o.comp) {
            *c = *c + d;
        }
        TangentVec { at: self.at, comp }
    }
}

impl SpaceForm {
    pub fn new(kappa: Kappa, n: usize) -> Self {
        assert!(n == 2 || n == 3, "supported complex dimensions are 2 and 3");
        SpaceForm { kappa, n, cp_max_radius: 1e3 }
    }

    pub fn m(&self) -> usize {
        self.n - 1
    }

    pub fn check_chart(&self, p: &[f64; DMAX]) -> Result<(), Error> {
        let mut r2 = 0.0;
        for k in 0..2 * self.n {
            if !p[k].is_finite() {
                return Err(Error::ChartViolation("non-finite coordinate".into()));
            }
            r2 += p[k] * p[k];
        }
        match self.kappa {
            Kappa::Flat => Ok(()),
            Kappa::Hyperbolic => {
                if r2 < 1.0 - 1e-8 {
                    Ok(())
                } else {
                    Err(Error::ChartViolation(format!("|z| = {} not inside unit ball", r2.sqrt())))
                }
            }
            Kappa::Projective => {
                if r2.sqrt() <= self.cp_max_radius {
                    Ok(())
                } else {
                    Err(Error::ChartViolation(format!(
                        "|z| = {} beyond configured chart radius {}",
                        r2.sqrt(),
                        self.cp_max_radius
                    )))
                }
            }
        }
    }

    /// Kähler potential φ as a field: |z|², −log(1−|z|²), log(1+|z|²).
    pub fn potential_field(&self) -> ScalarField {
        let r2 = ScalarField::norm2(self.n);
        match self.kappa {
            Kappa::Flat => r2,
            Kappa::Hyperbolic => -(ScalarField::constant(1.0, 0.0) - r2).ln(),
            Kappa::Projective => (ScalarField::constant(1.0, 0.0) + r2).ln(),
        }
    }

    pub fn potential(&self, p: &[f64; DMAX]) -> Result<f64, Error> {
        self.check_chart(p)?;
        Ok(self.potential_field().value(p).re)
    }

    /// The distinguished potential Φ with D^{1,1}Φ = metric and □Φ = n:
    /// |z|²/2, log cosh r = −(1/2)log(1−|z|²), −log cos r = (1/2)log(1+|z|²).
    pub fn phi_field(&self) -> ScalarField {
        self.potential_field().scale(0.5)
    }

    pub fn phi(&self, p: &[f64; DMAX]) -> Result<f64, Error> {
        self.check_chart(p)?;
        Ok(self.phi_field().value(p).re)
    }

    /// Geodesic distance from the chart center: |z|, arctanh |z|, arctan |z|.
    pub fn dist_to_center(&self, p: &[f64; DMAX]) -> Result<f64, Error> {
        self.check_chart(p)?;
        let r = Point { c: *p }.norm(self.n);
        Ok(match self.kappa {
            Kappa::Flat => r,
            Kappa::Hyperbolic => r.atanh(),
            Kappa::Projective => r.atan(),
        })
    }

    /// Distance to the center as a field (for Hessian checks); singular at
    /// the origin like any radial distance.
    pub fn dist_field(&self) -> ScalarField {
        let r = ScalarField::norm2(self.n).sqrt();
        match self.kappa {
            Kappa::Flat => r,
            Kappa::Hyperbolic => r.atanh(),
            Kappa::Projective => r.atan(),
        }
    }

    /// Chart radius of the geodesic sphere of radius `a` about the center.
    pub fn chart_radius(&self, a: f64) -> Result<f64, Error> {
        if a <= 0.0 {
            return Err(Error::BadArgument("sphere radius must be positive".into()));
        }
        match self.kappa {
            Kappa::Flat => Ok(a),
            Kappa::Hyperbolic => Ok(a.tanh()),
            Kappa::Projective => {
                if a < std::f64::consts::FRAC_PI_2 {
                    Ok(a.tan())
                } else {
                    Err(Error::BadArgument(format!(
                        "radius must be < pi/2 inside the projective chart, got {a}"
                    )))
                }
            }
        }
    }

    /// h_{ij̄} at S-valued coordinates, by the closed form of (1/2)∂∂̄φ.
    pub fn metric_generic<S: Real>(&self, q: &[S; DMAX]) -> CMat<S> {
        let n = self.n;
        let mut z = [Cx::<S>::zero(); 3];
        let mut r2 = S::zero();
        for i in 0..n {
            z[i] = Cx::new(q[2 * i], q[2 * i + 1]);
            r2 = r2 + z[i].abs2();
        }
        let mut h = cmat_zero::<S>();
        let half = S::from_f64(0.5);
        match self.kappa {
            Kappa::Flat => {
                for i in 0..n {
                    h[i][i] = Cx::real(half);
                }
            }
            Kappa::Hyperbolic => {
                // h_{ij̄} = (1/2)(δ_ij u + z̄_i z_j)/u², u = 1−|z|²
                let u = S::one() - r2;
                let iu2 = S::one() / (u * u);
                for i in 0..n {
                    for j in 0..n {
                        let mut t = z[i].conj() * z[j];
                        if i == j {
                            t = t + Cx::real(u);
                        }
                        h[i][j] = t.scale(half * iu2);
                    }
                }
            }
            Kappa::Projective => {
                // h_{ij̄} = (1/2)(δ_ij u − z̄_i z_j)/u², u = 1+|z|²
                let u = S::one() + r2;
                let iu2 = S::one() / (u * u);
                for i in 0..n {
                    for j in 0..n {
                        let mut t = -(z[i].conj() * z[j]);
                        if i == j {
                            t = t + Cx::real(u);
                        }
                        h[i][j] = t.scale(half * iu2);
                    }
                }
            }
        }
        h
    }

    pub fn metric(&self, p: &[f64; DMAX]) -> Result<CMat<f64>, Error> {
        self.check_chart(p)?;
        Ok(self.metric_generic(p))
    }

    pub fn metric_inverse(&self, p: &[f64; DMAX]) -> Result<CMat<f64>, Error> {
        let h = self.metric(p)?;
        cinvert(&h, self.n, 1e-300).ok_or(Error::SingularMetric)
    }

    /// Volume density of the real metric: √det G = 2^n det h.
    pub fn volume_density<S: Real>(&self, q: &[S; DMAX]) -> S {
        let h = self.metric_generic(q);
        // det of a Hermitian matrix is real; expand directly for n ≤ 3
        let n = self.n;
        let det = match n {
            2 => (h[0][0] * h[1][1] - h[0][1] * h[1][0]).re,
            3 => {
                let c0 = h[1][1] * h[2][2] - h[1][2] * h[2][1];
                let c1 = h[1][0] * h[2][2] - h[1][2] * h[2][0];
                let c2 = h[1][0] * h[2][1] - h[1][1] * h[2][0];
                (h[0][0] * c0 - h[0][1] * c1 + h[0][2] * c2).re
            }
            _ => unreachable!(),
        };
        det * S::from_f64((2.0_f64).powi(n as i32))
    }

    /// Christoffel symbols Γ^k_{ij} = h^{kl̄} ∂_i h_{jl̄} (holomorphic indices;
    /// mixed-type symbols vanish). Derivatives of the metric come from a
    /// first-order jet pass over the closed form.
    pub fn christoffel_generic<S: Real>(&self, q: &[S; DMAX]) -> Result<[[[Cx<S>; 3]; 3]; 3], Error> {
        let n = self.n;
        let mut out = [[[Cx::<S>::zero(); 3]; 3]; 3];
        if self.kappa == Kappa::Flat {
            return Ok(out);
        }
        let mut qj = [J1::<S>::constant(S::zero()); DMAX];
        for a in 0..2 * n {
            qj[a] = J1::seed(q[a], a);
        }
        let hj = self.metric_generic(&qj);
        let h = self.metric_generic(q);
        let hinv = cinvert(&h, n, 1e-300).ok_or(Error::SingularMetric)?;
        // ∂_i H[j][l] in Wirtinger form from the real partials
        let dz = |e: &Cx<J1<S>>, i: usize| -> Cx<S> {
            let gx = Cx::new(e.re.g[2 * i], e.im.g[2 * i]);
            let gy = Cx::new(e.re.g[2 * i + 1], e.im.g[2 * i + 1]);
            (gx - gy.mul_i()).scale(S::from_f64(0.5))
        };
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut s = Cx::<S>::zero();
                    for l in 0..n {
                        // h^{kl̄} = (H⁻¹)_{lk}
                        s = s + hinv[l][k] * dz(&hj[j][l], i);
                    }
                    out[k][i][j] = s;
                }
            }
        }
        Ok(out)
    }

    pub fn christoffel(&self, p: &[f64; DMAX]) -> Result<[[[C64; 3]; 3]; 3], Error> {
        self.check_chart(p)?;
        self.christoffel_generic(p)
    }

    /// Complex-bilinear extension of the Riemannian pairing. For real u, v
    /// this is g(u,v); for (1,0) vectors X, Y it gives ⟨X, Ȳ⟩ = Σ h_{ij̄} X^i Ȳ^j
    /// when the second argument is conjugated.
    pub fn pair(&self, h: &CMat<f64>, u: &TangentVec, v: &TangentVec) -> C64 {
        let mut s = Cx::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                s = s + h[i][j] * (u.hol(i) * v.antihol(j) + v.hol(i) * u.antihol(j));
            }
        }
        s
    }

    /// Curvature tensor of the space form on complexified vectors:
    /// R(v1,v2,v3,v4) = κ[⟨v1,v3⟩⟨v2,v4⟩ − ⟨v1,v4⟩⟨v2,v3⟩
    ///                  + ⟨v1,Jv3⟩⟨v2,Jv4⟩ − ⟨v1,Jv4⟩⟨v2,Jv3⟩ + 2⟨v1,Jv2⟩⟨v3,Jv4⟩].
    pub fn curvature(
        &self,
        v1: &TangentVec,
        v2: &TangentVec,
        v3: &TangentVec,
        v4: &TangentVec,
    ) -> Result<C64, Error> {
        for v in [v2, v3, v4] {
            if v.at != v1.at {
                return Err(Error::BadArgument("curvature arguments at different points".into()));
            }
        }
        let h = self.metric(&v1.at.c)?;
        let k = Cx::new(self.kappa.kappa(), 0.0);
        let p = |a: &TangentVec, b: &TangentVec| self.pair(&h, a, b);
        let t = p(v1, v3) * p(v2, v4) - p(v1, v4) * p(v2, v3)
            + p(v1, &v3.j()) * p(v2, &v4.j())
            - p(v1, &v4.j()) * p(v2, &v3.j())
            + (p(v1, &v2.j()) * p(v3, &v4.j())).scale(2.0);
        Ok(k * t)
    }

    /// Unit-speed geodesic through `p` with initial unit velocity `v`,
    /// evaluated at time `t`. Uses the standard quadric lifts of the chart.
    pub fn geodesic(&self, p: &Point, v: &TangentVec, t: f64) -> Result<Point, Error> {
        self.check_chart(&p.c)?;
        let n = self.n;
        match self.kappa {
            Kappa::Flat => {
                let mut c = p.c;
                for k in 0..2 * n {
                    c[k] += t * v.comp[k].re;
                }
                Ok(Point { c })
            }
            Kappa::Hyperbolic | Kappa::Projective => {
                let sgn = if self.kappa == Kappa::Hyperbolic { -1.0 } else { 1.0 };
                // lift ξ(z) = (1, z)/sqrt(1 ∓ |z|²), evaluated with a single
                // dual seed along v to get dξ(v)
                let mut q = [Dual::constant(0.0); DMAX];
                for k in 0..2 * n {
                    q[k] = Dual { v: p.c[k], d: { let mut d = [0.0; DMAX]; d[0] = v.comp[k].re; d } };
                }
                let mut r2 = Dual::constant(0.0);
                for i in 0..n {
                    let z = Cx::new(q[2 * i], q[2 * i + 1]);
                    r2 = r2 + z.abs2();
                }
                let s = (Dual::constant(1.0) + r2.map_scale(sgn)).sqrt();
                let mut xi = [C64::zero(); 4];
                let mut w = [C64::zero(); 4];
                {
                    let l0 = Cx::new(Dual::constant(1.0), Dual::constant(0.0)) / Cx::real(s);
                    xi[0] = Cx::new(l0.re.v, l0.im.v);
                    w[0] = Cx::new(l0.re.d[0], l0.im.d[0]);
                }
                for i in 0..n {
                    let li = Cx::new(q[2 * i], q[2 * i + 1]) / Cx::real(s);
                    xi[i + 1] = Cx::new(li.re.v, li.im.v);
                    w[i + 1] = Cx::new(li.re.d[0], li.im.d[0]);
                }
                // Hermitian pairing with signature (∓1, 1, ..., 1)
                let pairing = |a: &[C64; 4], b: &[C64; 4]| -> C64 {
                    let mut s = (a[0] * b[0].conj()).scale(sgn);
                    for i in 1..=n {
                        s = s + a[i] * b[i].conj();
                    }
                    s
                };
                // project out the lift direction, then normalize
                let wxi = pairing(&w, &xi);
                let mut eta = [C64::zero(); 4];
                let corr = wxi.scale(-sgn);
                for i in 0..=n {
                    eta[i] = w[i] + xi[i] * corr;
                }
                let nrm = pairing(&eta, &eta).re.sqrt();
                if !(nrm > 1e-12) {
                    return Err(Error::BadArgument("geodesic direction degenerate".into()));
                }
                for e in eta.iter_mut() {
                    *e = e.scale(1.0 / nrm);
                }
                let (ca, sa) = if self.kappa == Kappa::Hyperbolic {
                    (t.cosh(), t.sinh())
                } else {
                    (t.cos(), t.sin())
                };
                let mut g = [C64::zero(); 4];
                for i in 0..=n {
                    g[i] = xi[i].scale(ca) + eta[i].scale(sa);
                }
                if g[0].abs() < 1e-12 {
                    return Err(Error::ChartViolation("geodesic leaves the chart".into()));
                }
                let inv0 = g[0].inv();
                let mut c = [0.0; DMAX];
                for i in 0..n {
                    let z = g[i + 1] * inv0;
                    c[2 * i] = z.re;
                    c[2 * i + 1] = z.im;
                }
                let out = Point { c };
                self.check_chart(&out.c)?;
                Ok(out)
            }
        }
    }
}

trait DualScale {
    fn map_scale(self, s: f64) -> Self;
}
impl DualScale for Dual {
    fn map_scale(self, s: f64) -> Self {
        let mut d = self.d;
        for x in d.iter_mut() {
            *x *= s;
        }
        Dual { v: self.v * s, d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DMAX;

    fn pt(zs: &[(f64, f64)]) -> [f64; DMAX] {
        let mut p = [0.0; DMAX];
        for (i, (x, y)) in zs.iter().enumerate() {
            p[2 * i] = *x;
            p[2 * i + 1] = *y;
        }
        p
    }

    #[test]
    fn potential_values() {
        let p = pt(&[(0.5, 0.0), (0.0, 0.0)]);
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        assert!((ch.potential(&p).unwrap() - (-(0.75_f64).ln())).abs() < 1e-15);
        let cp = SpaceForm::new(Kappa::Projective, 2);
        let p1 = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!((cp.potential(&p1).unwrap() - (2.0_f64).ln()).abs() < 1e-15);
        let flat = SpaceForm::new(Kappa::Flat, 2);
        assert!((flat.potential(&p).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn metric_is_half_hessian_of_potential() {
        // closed form vs second-order jet of the potential field
        for kappa in [Kappa::Flat, Kappa::Hyperbolic, Kappa::Projective] {
            let sp = SpaceForm::new(kappa, 2);
            let p = pt(&[(0.31, -0.12), (0.05, 0.2)]);
            let h = sp.metric(&p).unwrap();
            let j = crate::jets::jet2(&sp.potential_field(), 2, &p);
            for i in 0..2 {
                for k in 0..2 {
                    let want = j.dz_dzbar(i, k).scale(0.5);
                    let d = h[i][k] - want;
                    assert!(d.abs() < 1e-12, "{kappa:?} entry {i}{k}");
                }
            }
        }
    }

    #[test]
    fn flat_metric_is_euclidean() {
        let flat = SpaceForm::new(Kappa::Flat, 2);
        let p = pt(&[(0.7, -0.3), (0.2, 0.9)]);
        let h = flat.metric(&p).unwrap();
        let at = Point { c: p };
        let u = TangentVec::real(at, &[1.0, 2.0, -1.0, 0.5]);
        let v = TangentVec::real(at, &[0.3, -0.2, 0.4, 1.0]);
        let g = flat.pair(&h, &u, &v).re;
        let eucl = 1.0 * 0.3 + 2.0 * -0.2 + -1.0 * 0.4 + 0.5 * 1.0;
        assert!((g - eucl).abs() < 1e-14);
    }

    #[test]
    fn dist_to_center_closed_forms() {
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        let r = 0.5_f64.tanh();
        assert!((ch.dist_to_center(&pt(&[(r, 0.0), (0.0, 0.0)])).unwrap() - 0.5).abs() < 1e-14);
        let cp = SpaceForm::new(Kappa::Projective, 2);
        let d = cp.dist_to_center(&pt(&[(1.0, 0.0), (0.0, 0.0)])).unwrap();
        assert!((d - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn phi_matches_radial_closed_form() {
        // log cosh(arctanh t) = −(1/2)log(1−t²); −log cos(arctan t) = (1/2)log(1+t²)
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        let cp = SpaceForm::new(Kappa::Projective, 2);
        for t in [0.1, 0.35, 0.62, 0.9] {
            let p = pt(&[(t * 0.6, t * 0.8), (0.0, 0.0)]);
            let r_ch = ch.dist_to_center(&p).unwrap();
            assert!((ch.phi(&p).unwrap() - r_ch.cosh().ln()).abs() < 1e-13);
            let r_cp = cp.dist_to_center(&p).unwrap();
            assert!((cp.phi(&p).unwrap() + r_cp.cos().ln()).abs() < 1e-13);
        }
        let flat = SpaceForm::new(Kappa::Flat, 2);
        let p = pt(&[(0.3, 0.4), (0.0, 0.0)]);
        assert!((flat.phi(&p).unwrap() - 0.125).abs() < 1e-15);
        // frozen value for the projective distinguished potential
        let q = pt(&[(0.3_f64.tan(), 0.0), (0.0, 0.0)]);
        assert!((cp.phi(&q).unwrap() - (-(0.3_f64.cos().ln()))).abs() < 1e-13);
    }

    #[test]
    fn christoffel_one_dim_closed_form_on_ball() {
        // Γ^1_{11} = 2 z̄ / (1−|z|²) on the hyperbolic chart along z2 = 0
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        let p = pt(&[(0.4, 0.2), (0.0, 0.0)]);
        let g = ch.christoffel(&p).unwrap();
        let z = Cx::new(0.4, 0.2);
        let want = z.conj().scale(2.0 / (1.0 - z.abs2()));
        assert!((g[0][0][0] - want).abs() < 1e-12);
        // symmetry in the lower indices
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert!((g[k][i][j] - g[k][j][i]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn christoffel_against_divided_differences_of_metric() {
        for kappa in [Kappa::Hyperbolic, Kappa::Projective] {
            let sp = SpaceForm::new(kappa, 2);
            let p = pt(&[(0.2, -0.3), (0.15, 0.1)]);
            let gam = sp.christoffel(&p).unwrap();
            let h = 1e-5;
            // ∂_i h_{jl̄} by Wirtinger central differences, then contract
            let hinv = sp.metric_inverse(&p).unwrap();
            for k in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        let mut want = Cx::zero();
                        for l in 0..2 {
                            let mut dx = p;
                            dx[2 * i] += h;
                            let mut dx2 = p;
                            dx2[2 * i] -= h;
                            let ddx = (sp.metric(&dx).unwrap()[j][l] - sp.metric(&dx2).unwrap()[j][l])
                                .scale(0.5 / h);
                            let mut dy = p;
                            dy[2 * i + 1] += h;
                            let mut dy2 = p;
                            dy2[2 * i + 1] -= h;
                            let ddy = (sp.metric(&dy).unwrap()[j][l] - sp.metric(&dy2).unwrap()[j][l])
                                .scale(0.5 / h);
                            let dih = (ddx - ddy.mul_i()).scale(0.5);
                            want = want + hinv[l][k] * dih;
                        }
                        assert!(
                            (gam[k][i][j] - want).abs() < 1e-8,
                            "{kappa:?} {k}{i}{j}: {:?} vs {:?}",
                            gam[k][i][j],
                            want
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_closed_form_sectional_values() {
        for (kappa, k) in [(Kappa::Hyperbolic, -1.0), (Kappa::Projective, 1.0), (Kappa::Flat, 0.0)] {
            let sp = SpaceForm::new(kappa, 2);
            let p = Point { c: pt(&[(0.2, 0.1), (-0.1, 0.25)]) };
            let h = sp.metric(&p.c).unwrap();
            // orthonormalize two real vectors
            let mut u = TangentVec::real(p, &[1.0, 0.3, -0.2, 0.5]);
            let nu = sp.pair(&h, &u, &u).re.sqrt();
            u = u.scale(Cx::new(1.0 / nu, 0.0));
            // J-invariant plane: sectional curvature 4κ
            let ju = u.j();
            let khol = sp.curvature(&u, &ju, &u, &ju).unwrap();
            assert!((khol.re - 4.0 * k).abs() < 1e-12 && khol.im.abs() < 1e-13);
            // totally real plane: project a second vector off span{u, Ju}
            let mut w = TangentVec::real(p, &[0.1, -0.7, 0.9, 0.2]);
            for b in [&u, &ju] {
                let c = sp.pair(&h, &w, b);
                w = w.add(&b.scale(-c));
            }
            let nw = sp.pair(&h, &w, &w).re.sqrt();
            w = w.scale(Cx::new(1.0 / nw, 0.0));
            let kreal = sp.curvature(&u, &w, &u, &w).unwrap();
            assert!((kreal.re - k).abs() < 1e-12, "{kappa:?}: {}", kreal.re);
        }
    }

    #[test]
    fn geodesics_radial_and_equation_residual() {
        // radial closed forms
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        let cp = SpaceForm::new(Kappa::Projective, 2);
        let o = Point::origin();
        let v = TangentVec::real(o, &[1.0, 0.0, 0.0, 0.0]);
        let q = ch.geodesic(&o, &v, 0.7).unwrap();
        assert!((q.c[0] - 0.7_f64.tanh()).abs() < 1e-13);
        let q = cp.geodesic(&o, &v, 0.7).unwrap();
        assert!((q.c[0] - 0.7_f64.tan()).abs() < 1e-12);

        // geodesic equation z̈^k + Γ^k_{ij} ż^i ż^j = 0 under central differences
        for sp in [&ch, &cp] {
            let p = Point { c: pt(&[(0.2, -0.1), (0.1, 0.15)]) };
            let h = sp.metric(&p.c).unwrap();
            let mut v = TangentVec::real(p, &[0.5, 0.1, -0.3, 0.8]);
            let nv = sp.pair(&h, &v, &v).re.sqrt();
            v = v.scale(Cx::new(1.0 / nv, 0.0));
            let t0 = 0.3;
            let dt = 1e-3;
            let at = |t: f64| sp.geodesic(&p, &v, t).unwrap();
            let (gm, g0, gp) = (at(t0 - dt), at(t0), at(t0 + dt));
            let gam = sp.christoffel(&g0.c).unwrap();
            for k in 0..2 {
                let zk = |q: &Point| q.z(k);
                let acc = (zk(&gp) - zk(&g0).scale(2.0) + zk(&gm)).scale(1.0 / (dt * dt));
                let vel = |i: usize| (gp.z(i) - gm.z(i)).scale(0.5 / dt);
                let mut corr = Cx::zero();
                for i in 0..2 {
                    for j in 0..2 {
                        corr = corr + gam[k][i][j] * vel(i) * vel(j);
                    }
                }
                let resid = acc + corr;
                assert!(resid.abs() < 1e-5, "{:?} k={k}: {:?}", sp.kappa, resid);
            }
        }
    }

    #[test]
    fn projective_geodesic_reports_chart_exit() {
        let cp = SpaceForm::new(Kappa::Projective, 2);
        let o = Point::origin();
        let v = TangentVec::real(o, &[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            cp.geodesic(&o, &v, std::f64::consts::FRAC_PI_2),
            Err(Error::ChartViolation(_))
        ));
    }

    #[test]
    fn tangent_vec_complex_structure() {
        let p = Point::origin();
        let u = TangentVec::real(p, &[1.0, 2.0, 3.0, 4.0]);
        let ju = u.j();
        assert_eq!(ju.comp[0].re, -2.0);
        assert_eq!(ju.comp[1].re, 1.0);
        assert_eq!(ju.comp[2].re, -4.0);
        assert_eq!(ju.comp[3].re, 3.0);
        // (1,0) components multiply by i under J
        let d = ju.hol(0) - u.hol(0).mul_i();
        assert!(d.abs() < 1e-15);
        // from_holomorphic round-trips
        let w = TangentVec::from_holomorphic(p, &[Cx::new(0.3, -0.8), Cx::new(1.1, 0.2)]);
        assert!((w.hol(0) - Cx::new(0.3, -0.8)).abs() < 1e-15);
        assert!(w.antihol(0).abs() < 1e-15 && w.antihol(1).abs() < 1e-15);
    }
}
