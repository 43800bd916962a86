//! Real hypersurfaces in the model spaces: adapted frames, the shape
//! operator, and the second fundamental form blocks the boundary operators
//! consume.
//!
//! A surface is a level set {rho = 0} with unit normal ν = ∇ρ/|∇ρ|. The
//! frame package at a point carries ν, the Reeb direction T = Jν, the
//! transverse (1,0) direction Z = (ν − iT)/√2 and a unitary CR frame X_α of
//! the maximal complex subbundle H = TΣ ∩ J(TΣ). Everything is computed
//! from closed-form fields by forward jets; the same construction runs at
//! jet-valued coordinates so that derivatives of the frame fields are exact.

use crate::ambient::{Kappa, Point, SpaceForm, TangentVec};
use crate::jets::ScalarField;
use crate::linalg::{cinvert, sym_eigen, CMat};
use crate::scalar::{Cx, Real, C64, DMAX, J1};
use crate::Error;

/// Frame data at one point, generic over the scalar so the whole package can
/// be differentiated by evaluating at jet coordinates.
/// Rows of `x` are holomorphic components: row 0 is Z, rows 1..m are the CR
/// frame X_α. `nu` holds the holomorphic components of the real normal.
#[derive(Clone, Copy, Debug)]
pub struct FrameData<S: Real> {
    pub grad_len: S,
    pub nu: [Cx<S>; 3],
    pub x: [[Cx<S>; 3]; 3],
}

/// Hermitian product Σ h_{ij̄} u^i conj(v^j) of holomorphic component vectors.
fn herm<S: Real>(h: &CMat<S>, u: &[Cx<S>; 3], v: &[Cx<S>; 3], n: usize) -> Cx<S> {
    let mut s = Cx::zero();
    for i in 0..n {
        for j in 0..n {
            s = s + h[i][j] * u[i] * v[j].conj();
        }
    }
    s
}

/// Build the adapted frame at `q`. The Gram-Schmidt seed choice must be a
/// fixed discrete decision for the construction to be differentiable, so the
/// plan of accepted coordinate seeds is recorded on the f64 pass and replayed
/// verbatim on jet passes.
pub fn frame_core<S: Real>(
    space: &SpaceForm,
    rho: &ScalarField,
    q: &[S; DMAX],
    plan: Option<&[usize]>,
) -> Result<(FrameData<S>, Vec<usize>), Error> {
    let n = space.n;
    let h = space.metric_generic(q);
    let hinv = cinvert(&h, n, 1e-300).ok_or(Error::SingularMetric)?;

    // first derivatives of rho at q, one jet layer up
    let mut qj = [J1::<S>::constant(S::zero()); DMAX];
    for a in 0..2 * n {
        qj[a] = J1::seed(q[a], a);
    }
    let rj = rho.eval(&qj);
    let half = S::from_f64(0.5);
    let mut rho_z = [Cx::<S>::zero(); 3];
    for i in 0..n {
        let gx = Cx::new(rj.re.g[2 * i], rj.im.g[2 * i]);
        let gy = Cx::new(rj.re.g[2 * i + 1], rj.im.g[2 * i + 1]);
        rho_z[i] = (gx - gy.mul_i()).scale(half);
    }

    // (∇ρ)^i = h^{ij̄} conj(ρ_j) with h^{ij̄} = (H⁻¹)_{ji}
    let mut grad = [Cx::<S>::zero(); 3];
    for i in 0..n {
        for j in 0..n {
            grad[i] = grad[i] + hinv[j][i] * rho_z[j].conj();
        }
    }
    let g2 = herm(&h, &grad, &grad, n).re * S::from_f64(2.0);
    if g2.val() < 1e-20 {
        return Err(Error::NotDifferentiable("vanishing gradient on the level set".into()));
    }
    let grad_len = g2.sqrt();
    let mut nu = grad;
    let inv = S::one() / grad_len;
    for c in nu.iter_mut() {
        *c = c.scale(inv);
    }

    // Z = √2 Σ ν^i ∂z_i is the Hermitian-unit transverse (1,0) direction
    let mut x = [[Cx::<S>::zero(); 3]; 3];
    let sqrt2 = S::from_f64(std::f64::consts::SQRT_2);
    for i in 0..n {
        x[0][i] = nu[i].scale(sqrt2);
    }

    // complete with coordinate seeds, projecting against the rows so far
    let mut chosen = Vec::new();
    let mut rows = 1usize;
    let candidates: Vec<usize> = match plan {
        Some(pl) => pl.to_vec(),
        None => (0..n).collect(),
    };
    for &k in &candidates {
        if rows > space.m() {
            break;
        }
        let mut v = [Cx::<S>::zero(); 3];
        v[k] = Cx::real(S::one());
        for r in 0..rows {
            let c = herm(&h, &v, &x[r], n);
            for i in 0..n {
                v[i] = v[i] - x[r][i] * c;
            }
        }
        let nn = herm(&h, &v, &v, n).re;
        if plan.is_none() && nn.val() < 1e-6 {
            continue;
        }
        let inv = S::one() / nn.sqrt();
        for c in v.iter_mut() {
            *c = c.scale(inv);
        }
        x[rows] = v;
        chosen.push(k);
        rows += 1;
    }
    if rows != space.m() + 1 {
        return Err(Error::FrameFailure(format!(
            "only {} of {} frame rows survived the pivot guard",
            rows,
            space.m() + 1
        )));
    }
    Ok((FrameData { grad_len, nu, x }, chosen))
}

/// Frame package at a point of a hypersurface, with the jet pass that makes
/// first derivatives of every frame component available.
pub struct BoundaryFrame {
    pub space: SpaceForm,
    pub p: Point,
    pub data: FrameData<f64>,
    pub jets: FrameData<J1<f64>>,
    pub plan: Vec<usize>,
    pub h: CMat<f64>,
    pub hinv: CMat<f64>,
    pub gamma: [[[C64; 3]; 3]; 3],
}

impl BoundaryFrame {
    pub fn build(space: &SpaceForm, rho: &ScalarField, p: &Point) -> Result<Self, Error> {
        space.check_chart(&p.c)?;
        let (data, plan) = frame_core(space, rho, &p.c, None)?;
        let mut qj = [J1::<f64>::constant(0.0); DMAX];
        for a in 0..2 * space.n {
            qj[a] = J1::seed(p.c[a], a);
        }
        let (jets, _) = frame_core(space, rho, &qj, Some(&plan))?;
        let h = space.metric(&p.c)?;
        let hinv = space.metric_inverse(&p.c)?;
        let gamma = space.christoffel(&p.c)?;
        Ok(BoundaryFrame { space: space.clone(), p: *p, data, jets, plan, h, hinv, gamma })
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    /// Unit normal as a real tangent vector.
    pub fn nu(&self) -> TangentVec {
        let w: Vec<C64> = (0..self.space.n).map(|i| self.data.nu[i]).collect();
        TangentVec::real_from_hol(self.p, &w)
    }

    /// Reeb direction T = Jν.
    pub fn t(&self) -> TangentVec {
        self.nu().j()
    }

    /// Transverse (1,0) direction Z as a complexified vector.
    pub fn z(&self) -> TangentVec {
        let w: Vec<C64> = (0..self.space.n).map(|i| self.data.x[0][i]).collect();
        TangentVec::from_holomorphic(self.p, &w)
    }

    /// CR frame member X_α (1-based α ∈ 1..=m) as a complexified vector.
    pub fn x(&self, alpha: usize) -> TangentVec {
        let w: Vec<C64> = (0..self.space.n).map(|i| self.data.x[alpha][i]).collect();
        TangentVec::from_holomorphic(self.p, &w)
    }

    /// Real orthonormal tangent frame: T, then (u_α, Ju_α) for each CR row.
    pub fn real_tangent_frame(&self) -> Vec<TangentVec> {
        let mut out = vec![self.t()];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for alpha in 1..=self.m() {
            let w: Vec<C64> =
                (0..self.space.n).map(|i| self.data.x[alpha][i].scale(s)).collect();
            let u = TangentVec::real_from_hol(self.p, &w);
            out.push(u);
            out.push(u.j());
        }
        out
    }

    /// Directional derivative of the normal field along `v` (complexified),
    /// with the connection correction: (Av)^k = v(ν^k) + Γ^k_{ij} v^i ν^j.
    /// A is the shape operator ∇ν extended complex-linearly.
    pub fn apply_shape(&self, v: &TangentVec) -> TangentVec {
        let n = self.space.n;
        let hol_of_real = |vr: &[C64; DMAX]| -> [C64; 3] {
            // derivative part: Σ_a v^a ∂_a ν^k, then Christoffel correction
            let mut out = [Cx::zero(); 3];
            for k in 0..n {
                let mut s = Cx::zero();
                for a in 0..2 * n {
                    let d = Cx::new(self.jets.nu[k].re.g[a], self.jets.nu[k].im.g[a]);
                    s = s + vr[a] * d;
                }
                let vi = |i: usize| vr[2 * i] + vr[2 * i + 1].mul_i();
                for i in 0..n {
                    for j in 0..n {
                        s = s + self.gamma[k][i][j] * vi(i) * self.data.nu[j];
                    }
                }
                out[k] = s;
            }
            out
        };
        // split into real and imaginary real-vectors so the result carries
        // correct antiholomorphic parts
        let mut vre = [Cx::zero(); DMAX];
        let mut vim = [Cx::zero(); DMAX];
        for a in 0..DMAX {
            vre[a] = Cx::new(v.comp[a].re, 0.0);
            vim[a] = Cx::new(v.comp[a].im, 0.0);
        }
        let wre = hol_of_real(&vre);
        let wim = hol_of_real(&vim);
        let mut comp = [Cx::zero(); DMAX];
        for k in 0..n {
            comp[2 * k] = Cx::new(wre[k].re, wim[k].re);
            comp[2 * k + 1] = Cx::new(wre[k].im, wim[k].im);
        }
        TangentVec { at: self.p, comp }
    }

    /// Second fundamental form Π(U, V) = g(AU, V), complex-bilinear.
    pub fn pi(&self, u: &TangentVec, v: &TangentVec) -> C64 {
        let au = self.apply_shape(u);
        self.space.pair(&self.h, &au, v)
    }

    /// Π(T, T), the normal curvature of the Reeb direction.
    pub fn alpha(&self) -> f64 {
        self.pi(&self.t(), &self.t()).re
    }

    /// Mean curvature H = tr_Σ A = α + 2 Σ_α Π(X_α, X̄_α).
    pub fn mean_curvature(&self) -> f64 {
        let mut hsum = self.alpha();
        for a in 1..=self.m() {
            let x = self.x(a);
            hsum += 2.0 * self.pi(&x, &x.conj()).re;
        }
        hsum
    }

    /// H_b = H − Π(T, T), the trace of Π over the complex subbundle.
    pub fn h_b(&self) -> f64 {
        self.mean_curvature() - self.alpha()
    }

    /// Levi form in the CR frame: L_{αβ̄} = 2 Π(X_α, X̄_β).
    pub fn levi(&self, alpha: usize, beta: usize) -> C64 {
        self.pi(&self.x(alpha), &self.x(beta).conj()).scale(2.0)
    }

    /// Hermitian block Π(X_α, X̄_β) and bilinear block Π(X_α, X_β), m×m.
    pub fn pi_blocks(&self) -> (CMat<f64>, CMat<f64>) {
        let m = self.m();
        let mut hermb = crate::linalg::cmat_zero::<f64>();
        let mut bilin = crate::linalg::cmat_zero::<f64>();
        for a in 1..=m {
            let xa = self.x(a);
            let axa = self.apply_shape(&xa);
            for b in 1..=m {
                let xb = self.x(b);
                hermb[a - 1][b - 1] = self.space.pair(&self.h, &axa, &xb.conj());
                bilin[a - 1][b - 1] = self.space.pair(&self.h, &axa, &xb);
            }
        }
        (hermb, bilin)
    }

    /// Π(T, X_α) for α ∈ 1..=m.
    pub fn pi_t_x(&self, alpha: usize) -> C64 {
        self.pi(&self.t(), &self.x(alpha))
    }

    /// Eigenvalues of the shape operator on TΣ in the real orthonormal
    /// frame, ascending.
    pub fn shape_spectrum(&self) -> Vec<f64> {
        let frame = self.real_tangent_frame();
        let d = frame.len();
        let mut mat = [[0.0; DMAX]; DMAX];
        for a in 0..d {
            for b in 0..d {
                mat[a][b] = self.pi(&frame[a], &frame[b]).re;
            }
        }
        // symmetrize against roundoff
        for a in 0..d {
            for b in 0..a {
                let s = 0.5 * (mat[a][b] + mat[b][a]);
                mat[a][b] = s;
                mat[b][a] = s;
            }
        }
        let (mut ev, _) = sym_eigen(&mat, d);
        let mut out: Vec<f64> = ev[..d].to_vec();
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
        ev[..d].copy_from_slice(&out);
        out
    }

    /// Largest deviation of Π from umbilicity on H in the CR frame:
    /// max(|Π(X_α,X̄_β) − λ δ_{αβ}|, |Π(X_α,X_β)|) where λ = H_b/2m.
    pub fn umbilic_residual(&self) -> f64 {
        let m = self.m();
        let lam = self.h_b() / (2.0 * m as f64);
        let (hb, bl) = self.pi_blocks();
        let mut worst = 0.0_f64;
        for a in 0..m {
            for b in 0..m {
                let mut d = hb[a][b];
                if a == b {
                    d = d - Cx::new(lam, 0.0);
                }
                worst = worst.max(d.abs()).max(bl[a][b].abs());
            }
        }
        worst
    }
}

/// A level-set hypersurface bounding a domain in one of the model spaces.
#[derive(Clone)]
pub struct Hypersurface {
    pub space: SpaceForm,
    pub rho: ScalarField,
    pub guess: f64,
    /// star-shaped about the chart center, so the quadrature maps apply
    pub star_shaped: bool,
    pub name: String,
}

impl Hypersurface {
    /// Geodesic sphere of radius `a` about the chart center, as the
    /// polynomial level set |z|² − c² with c the chart radius.
    pub fn sphere(space: &SpaceForm, a: f64) -> Result<Self, Error> {
        let c = space.chart_radius(a)?;
        let rho = ScalarField::norm2(space.n) - ScalarField::constant(c * c, 0.0);
        Ok(Hypersurface {
            space: space.clone(),
            rho,
            guess: c,
            star_shaped: true,
            name: format!("sphere(a={a})"),
        })
    }

    /// Ellipsoid-type level set Σ c_i |z_i|² = 1 (coefficients positive).
    pub fn ellipsoid(space: &SpaceForm, coef: &[f64]) -> Result<Self, Error> {
        if coef.len() != space.n || coef.iter().any(|c| *c <= 0.0) {
            return Err(Error::BadArgument("need one positive coefficient per z_i".into()));
        }
        let mut rho = ScalarField::constant(-1.0, 0.0);
        for (i, c) in coef.iter().enumerate() {
            rho = rho + ScalarField::z(i).abs_sq().scale(*c);
        }
        let guess = 1.0 / coef.iter().fold(f64::INFINITY, |a, b| a.min(*b)).sqrt();
        Ok(Hypersurface {
            space: space.clone(),
            rho,
            guess: guess.min(0.9),
            star_shaped: true,
            name: "ellipsoid".into(),
        })
    }

    /// Sphere of radius `a` perturbed by a quadratic angular mode:
    /// |z|² − c²(1 + ε Re(z_1 z̄_2)). Star-shaped and smooth for small ε.
    pub fn perturbed_sphere(space: &SpaceForm, a: f64, eps: f64) -> Result<Self, Error> {
        let c = space.chart_radius(a)?;
        if eps.abs() > 0.5 / (c * c).max(1e-12) {
            return Err(Error::BadArgument("perturbation too large for a graph".into()));
        }
        let bump = (ScalarField::z(0) * ScalarField::zbar(1)).re().scale(eps * c * c);
        let rho = ScalarField::norm2(space.n) - ScalarField::constant(c * c, 0.0) - bump;
        Ok(Hypersurface {
            space: space.clone(),
            rho,
            guess: c,
            star_shaped: true,
            name: format!("perturbed-sphere(a={a},eps={eps})"),
        })
    }

    /// Tube of geodesic radius `a` about a totally geodesic ℂP¹ inside the
    /// projective space, oriented by the normal pointing away from the core.
    ///
    /// n=2: the tube about the cut-locus line of the chart center is the
    /// chart sphere of radius cot a with inward normal, so rho is the negated
    /// sphere function. n=3: the core is {z_2 = z_3 = 0} and the level set
    /// uses sin² dist = (|z_2|²+|z_3|²)/(1+|z|²); not star-shaped about the
    /// center, pointwise operations only.
    pub fn tube(space: &SpaceForm, a: f64) -> Result<Self, Error> {
        if space.kappa != Kappa::Projective {
            return Err(Error::NotApplicable("tubes live in the projective space".into()));
        }
        if !(a > 0.0 && a < std::f64::consts::FRAC_PI_2) {
            return Err(Error::BadArgument("tube radius must lie in (0, pi/2)".into()));
        }
        match space.n {
            2 => {
                let c = (std::f64::consts::FRAC_PI_2 - a).tan(); // cot a
                let rho = ScalarField::constant(c * c, 0.0) - ScalarField::norm2(2);
                Ok(Hypersurface {
                    space: space.clone(),
                    rho,
                    guess: c,
                    star_shaped: true,
                    name: format!("tube(a={a})"),
                })
            }
            3 => {
                let s2 = a.sin() * a.sin();
                let rho = ScalarField::z(1).abs_sq() + ScalarField::z(2).abs_sq()
                    - (ScalarField::constant(1.0, 0.0) + ScalarField::norm2(3)).scale(s2);
                Ok(Hypersurface {
                    space: space.clone(),
                    rho,
                    guess: a.tan(),
                    star_shaped: false,
                    name: format!("tube3(a={a})"),
                })
            }
            _ => unreachable!(),
        }
    }

    /// Custom star-shaped level set.
    pub fn from_level_set(space: &SpaceForm, rho: ScalarField, guess: f64) -> Self {
        Hypersurface {
            space: space.clone(),
            rho,
            guess,
            star_shaped: true,
            name: "level-set".into(),
        }
    }

    pub fn frame(&self, p: &Point) -> Result<BoundaryFrame, Error> {
        BoundaryFrame::build(&self.space, &self.rho, p)
    }

    /// Point of the surface on the ray through `dir` (need not be unit).
    pub fn point_on(&self, dir: &[f64]) -> Result<Point, Error> {
        let n = self.space.n;
        let mut d = [0.0; DMAX];
        let mut nn = 0.0;
        for a in 0..2 * n {
            d[a] = dir.get(a).copied().unwrap_or(0.0);
            nn += d[a] * d[a];
        }
        if nn < 1e-20 {
            return Err(Error::BadArgument("zero direction".into()));
        }
        let s = nn.sqrt().recip();
        for x in d.iter_mut() {
            *x *= s;
        }
        let mut r = self.guess;
        for it in 0..100 {
            let mut q = [crate::scalar::Dual::constant(0.0); DMAX];
            for a in 0..2 * n {
                let mut g = [0.0; DMAX];
                g[0] = d[a];
                q[a] = crate::scalar::Dual { v: r * d[a], d: g };
            }
            let val = self.rho.eval(&q).re;
            if val.d[0].abs() < 1e-300 {
                return Err(Error::RootFind("stationary ray".into()));
            }
            let step = val.v / val.d[0];
            r -= step;
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::RootFind("left the star-shaped region".into()));
            }
            if step.abs() < 1e-14 * (1.0 + r.abs()) {
                break;
            }
            if it == 99 {
                return Err(Error::RootFind("no convergence".into()));
            }
        }
        let mut c = [0.0; DMAX];
        for a in 0..2 * n {
            c[a] = r * d[a];
        }
        Ok(Point { c })
    }

    /// Quadrature adapter: integral of `f` over the surface.
    pub fn integrate<F>(&self, order: usize, f: F) -> Result<f64, Error>
    where
        F: Fn(&[f64; DMAX]) -> Result<f64, Error> + Sync,
    {
        if !self.star_shaped {
            return Err(Error::NotApplicable(format!("{} is not star-shaped", self.name)));
        }
        let lr = crate::quadrature::LevelSetRadius { rho: &self.rho, guess: self.guess };
        crate::quadrature::surface_integral(&self.space, &lr, order, f)
    }

    /// Integral of `f` over the enclosed domain.
    pub fn integrate_domain<F>(&self, order: usize, order_radial: usize, f: F) -> Result<f64, Error>
    where
        F: Fn(&[f64; DMAX]) -> Result<f64, Error> + Sync,
    {
        if !self.star_shaped {
            return Err(Error::NotApplicable(format!("{} is not star-shaped", self.name)));
        }
        let lr = crate::quadrature::LevelSetRadius { rho: &self.rho, guess: self.guess };
        crate::quadrature::volume_integral(&self.space, &lr, order, order_radial, f)
    }

    /// Fused surface integral of `k` components sharing per-node work.
    pub fn integrate_vec<F>(&self, order: usize, k: usize, f: F) -> Result<Vec<f64>, Error>
    where
        F: Fn(&[f64; DMAX]) -> Result<Vec<f64>, Error> + Sync,
    {
        if !self.star_shaped {
            return Err(Error::NotApplicable(format!("{} is not star-shaped", self.name)));
        }
        let lr = crate::quadrature::LevelSetRadius { rho: &self.rho, guess: self.guess };
        crate::quadrature::surface_integral_vec(&self.space, &lr, order, k, f)
    }

    /// Fused domain integral of `k` components.
    pub fn integrate_domain_vec<F>(
        &self,
        order: usize,
        order_radial: usize,
        k: usize,
        f: F,
    ) -> Result<Vec<f64>, Error>
    where
        F: Fn(&[f64; DMAX]) -> Result<Vec<f64>, Error> + Sync,
    {
        if !self.star_shaped {
            return Err(Error::NotApplicable(format!("{} is not star-shaped", self.name)));
        }
        let lr = crate::quadrature::LevelSetRadius { rho: &self.rho, guess: self.guess };
        crate::quadrature::volume_integral_vec(&self.space, &lr, order, order_radial, k, f)
    }
}
