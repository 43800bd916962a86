//! Harmonic extension of unit-sphere boundary data in the flat space, via the
//! Poisson kernel P(x,ζ) = (1−|x|²)/(ω_{2n−1}|x−ζ|^{2n}). Derivatives in x
//! are taken on the closed-form kernel under the integral sign, never by
//! differentiating through quadrature nodes.

use crate::ambient::{Kappa, SpaceForm};
use crate::jets::{Jet2, ScalarField};
use crate::quadrature::{surface_element, AngularGrid};
use crate::scalar::{Cx, C64, DMAX, J1};
use crate::Error;

/// Interior evaluations are refused beyond this radius: the kernel
/// concentrates near ζ ≈ x and the fixed surface rule loses accuracy.
pub const EVAL_RADIUS_GUARD: f64 = 0.9;

struct KernelNode {
    zeta: [f64; DMAX],
    wda: f64,
    fval: C64,
}

pub struct PoissonExtension {
    pub n: usize,
    pub order: usize,
    omega: f64,
    nodes: Vec<KernelNode>,
}

impl PoissonExtension {
    pub fn new(space: &SpaceForm, f: &ScalarField, order: usize) -> Result<Self, Error> {
        if space.kappa != Kappa::Flat {
            return Err(Error::NotApplicable(
                "kernel extension is built for the flat space only".into(),
            ));
        }
        let n = space.n;
        // area of S^{2n-1}: 2π^n/(n-1)!
        let omega = match n {
            2 => 2.0 * std::f64::consts::PI.powi(2),
            3 => std::f64::consts::PI.powi(3),
            _ => return Err(Error::BadArgument("unsupported dimension".into())),
        };
        let grid = AngularGrid::new(n, order);
        let mut nodes = Vec::with_capacity(grid.node_count());
        for id in 0..grid.node_count() {
            let (dir, w) = grid.direction(id);
            let mut x = [J1::<f64>::constant(0.0); DMAX];
            x[..2 * n].copy_from_slice(&dir[..2 * n]);
            let zeta: [f64; DMAX] = std::array::from_fn(|a| x[a].v);
            let da = surface_element(space, &x, 2 * n - 1);
            nodes.push(KernelNode { zeta, wda: da * w, fval: f.value(&zeta) });
        }
        Ok(PoissonExtension { n, order, omega, nodes })
    }

    fn guard(&self, x: &[f64; DMAX]) -> Result<f64, Error> {
        let mut r2 = 0.0;
        for a in 0..2 * self.n {
            r2 += x[a] * x[a];
        }
        if !(r2.is_finite() && r2.sqrt() <= EVAL_RADIUS_GUARD) {
            return Err(Error::BadArgument(format!(
                "evaluation point |x| = {:.3} is outside the kernel accuracy guard {}",
                r2.sqrt(),
                EVAL_RADIUS_GUARD
            )));
        }
        Ok(r2)
    }

    /// F(x) alone; cheaper than the full jet.
    pub fn value(&self, x: &[f64; DMAX]) -> Result<C64, Error> {
        let r2 = self.guard(x)?;
        let nn = 2 * self.n;
        let u = 1.0 - r2;
        let mut acc = Cx::zero();
        for node in &self.nodes {
            let mut q = 0.0;
            for a in 0..nn {
                let d = x[a] - node.zeta[a];
                q += d * d;
            }
            let v = q.powi(-(self.n as i32));
            acc = acc + node.fval.scale(u * v * node.wda);
        }
        Ok(acc.scale(1.0 / self.omega))
    }

    /// F and its first and second x-derivatives at an interior point.
    pub fn jet(&self, x: &[f64; DMAX]) -> Result<Jet2, Error> {
        let r2 = self.guard(x)?;
        let nn = 2 * self.n;
        let en = self.n as f64;
        let u = 1.0 - r2;
        let mut value = Cx::zero();
        let mut grad = [Cx::zero(); DMAX];
        let mut hess = [[Cx::zero(); DMAX]; DMAX];
        for node in &self.nodes {
            let mut d = [0.0; DMAX];
            let mut q = 0.0;
            for a in 0..nn {
                d[a] = x[a] - node.zeta[a];
                q += d[a] * d[a];
            }
            // v = q^{-n}, v_a = -2n d_a q^{-n-1},
            // v_ab = -2n δ_ab q^{-n-1} + 4n(n+1) d_a d_b q^{-n-2}
            let qn1 = q.powi(-(self.n as i32) - 1);
            let v = qn1 * q;
            let vq2 = qn1 / q;
            let c = node.fval.scale(node.wda);
            value = value + c.scale(u * v);
            for a in 0..nn {
                let ua = -2.0 * x[a];
                let va = -2.0 * en * d[a] * qn1;
                grad[a] = grad[a] + c.scale(ua * v + u * va);
                for b in a..nn {
                    let ub = -2.0 * x[b];
                    let vb = -2.0 * en * d[b] * qn1;
                    let uab = if a == b { -2.0 } else { 0.0 };
                    let vab = 4.0 * en * (en + 1.0) * d[a] * d[b] * vq2
                        - if a == b { 2.0 * en * qn1 } else { 0.0 };
                    hess[a][b] = hess[a][b] + c.scale(uab * v + ua * vb + ub * va + u * vab);
                }
            }
        }
        let s = 1.0 / self.omega;
        value = value.scale(s);
        for a in 0..nn {
            grad[a] = grad[a].scale(s);
            for b in a..nn {
                hess[a][b] = hess[a][b].scale(s);
                hess[b][a] = hess[a][b];
            }
        }
        Ok(Jet2 { n: self.n, value, grad, hess })
    }
}

/// One-shot extension evaluation matching the operation contract.
pub fn extend(
    space: &SpaceForm,
    f: &ScalarField,
    order: usize,
    x: &[f64; DMAX],
) -> Result<Jet2, Error> {
    PoissonExtension::new(space, f, order)?.jet(x)
}

/// Deterministic interior sample grid: angular directions at a small order
/// crossed with a few radii, all within the kernel guard.
pub fn interior_grid(n: usize, radii: &[f64]) -> Vec<[f64; DMAX]> {
    let grid = AngularGrid::new(n, 2);
    let mut pts = Vec::new();
    for id in 0..grid.node_count() {
        let (dir, _) = grid.direction(id);
        for &r in radii {
            let p: [f64; DMAX] = std::array::from_fn(|a| if a < 2 * n { r * dir[a].v } else { 0.0 });
            pts.push(p);
        }
    }
    pts
}

/// Largest tangential Cauchy-Riemann residual of the data over deterministic
/// sphere samples; the hypothesis gate for the extension demonstration.
pub fn cr_residual(space: &SpaceForm, f: &ScalarField, samples: usize) -> Result<f64, Error> {
    let surf = crate::hypersurface::Hypersurface::sphere(space, 1.0)?;
    let grid = AngularGrid::new(space.n, 3);
    let mut worst: f64 = 0.0;
    let step = (grid.node_count() / samples.max(1)).max(1);
    for id in (0..grid.node_count()).step_by(step) {
        let (dir, _) = grid.direction(id);
        let d: Vec<f64> = (0..2 * space.n).map(|a| dir[a].v).collect();
        let p = surf.point_on(&d)?;
        let fr = surf.frame(&p)?;
        for c in crate::boundary::dbar_b(&fr, f)? {
            worst = worst.max(c.abs());
        }
    }
    Ok(worst)
}

/// Both sides of the energy identity for the harmonic extension, evaluated on
/// the concentric ball of radius `s` (well inside the kernel guard):
/// volume side ∫|D^{1,1}F|², boundary side −(1/4)∫ H_b |Z̄F|².
pub fn energy_sides(
    space: &SpaceForm,
    ext: &PoissonExtension,
    s: f64,
    order_surface: usize,
    order_volume: usize,
) -> Result<(f64, f64), Error> {
    let vol = crate::quadrature::volume_integral(
        space,
        &crate::quadrature::ConstRadius(s),
        order_volume,
        order_volume,
        |p| {
            let j = ext.jet(p)?;
            crate::jets::d11_norm2_of_jet(space, &j, p)
        },
    )?;
    let surf = crate::hypersurface::Hypersurface::sphere(space, s)?;
    let bnd = surf.integrate(order_surface, |p| {
        let fr = surf.frame(&crate::ambient::Point { c: *p })?;
        let j = ext.jet(p)?;
        let zf = crate::boundary::zbar_deriv(&fr, &j);
        Ok(fr.h_b() * zf.abs2())
    })?;
    Ok((vol, -0.25 * bnd))
}
