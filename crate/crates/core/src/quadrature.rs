//! Tensor quadrature over star-shaped hypersurfaces and the domains they
//! bound.
//!
//! A surface is described by its chart radius as a function of direction on
//! the unit sphere of the chart. The area and volume elements come from jet
//! Jacobians of the parametrization composed with the ambient metric, so the
//! same code integrates over geodesic spheres, ellipsoids and perturbed
//! spheres in any of the three model spaces. Sums are accumulated pairwise
//! in a fixed order, which keeps results bit-identical across thread counts.

use crate::ambient::SpaceForm;
use crate::jets::ScalarField;
use crate::linalg::rdet;
use crate::scalar::{Real, DMAX, J1};
use crate::Error;
use rayon::prelude::*;

/// Nodes and weights of the k-point Gauss-Legendre rule on (-1, 1).
/// Newton iteration on the Legendre recurrence, seeded by the Chebyshev
/// angle approximation; converges to machine precision in a few steps.
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(k >= 1);
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for i in 0..k {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // p_k(x) and p_k'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=k {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let p = if k == 1 { x } else { p1 };
            let pm1 = if k == 1 { 1.0 } else { p0 };
            dp = k as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // the recurrence walks roots right to left; present them ascending
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Deterministic pairwise sum: fixed midpoint splits, so the result does not
/// depend on how the values were produced.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 32 {
        let mut s = 0.0;
        for x in v {
            s += x;
        }
        return s;
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Chart radius of a star-shaped surface as a jet in the unit direction.
/// The direction comes in as a J1-valued chart vector of norm 1 whose
/// derivative slots carry the parametrization derivatives.
pub trait StarRadius: Sync {
    fn radius(&self, dir: &[J1<f64>; DMAX], n: usize) -> Result<J1<f64>, Error>;
}

/// Constant chart radius (geodesic spheres about the chart center).
pub struct ConstRadius(pub f64);

impl StarRadius for ConstRadius {
    fn radius(&self, _dir: &[J1<f64>; DMAX], _n: usize) -> Result<J1<f64>, Error> {
        Ok(J1::constant(self.0))
    }
}

/// Radius of {rho = 0} along a ray, by Newton in plain arithmetic followed
/// by one Newton step in jet arithmetic. The final jet step transports the
/// implicit-function derivatives once the scalar root has converged.
pub struct LevelSetRadius<'a> {
    pub rho: &'a ScalarField,
    pub guess: f64,
}

impl StarRadius for LevelSetRadius<'_> {
    fn radius(&self, dir: &[J1<f64>; DMAX], n: usize) -> Result<J1<f64>, Error> {
        let d0: [f64; DMAX] = std::array::from_fn(|a| dir[a].v);
        let eval = |r: f64| -> (f64, f64) {
            // value and radial derivative of rho at r*d0
            let mut q = [crate::scalar::Dual::constant(0.0); DMAX];
            for a in 0..2 * n {
                let mut d = [0.0; DMAX];
                d[0] = d0[a];
                q[a] = crate::scalar::Dual { v: r * d0[a], d };
            }
            let val = self.rho.eval(&q);
            (val.re.v, val.re.d[0])
        };
        let mut r = self.guess;
        let mut ok = false;
        for _ in 0..80 {
            let (v, dv) = eval(r);
            if dv.abs() < 1e-300 {
                return Err(Error::RootFind("stationary ray for level set".into()));
            }
            let step = v / dv;
            r -= step;
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::RootFind("ray left the star-shaped region".into()));
            }
            if step.abs() < 1e-14 * (1.0 + r.abs()) {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::RootFind("no convergence along ray".into()));
        }
        // one Newton step in jet arithmetic: r_jet = r - rho(r,dir)/d_r rho
        let mut q = [J1::<f64>::constant(0.0); DMAX];
        let rj = J1::constant(r);
        for a in 0..2 * n {
            q[a] = rj * dir[a];
        }
        let val = self.rho.eval(&q).re;
        // d_r rho at fixed direction is the plain radial derivative
        let (_, dv) = eval(r);
        Ok(rj - val * J1::constant(1.0 / dv))
    }
}

/// Tensor grid on the parameter cube of the odd sphere S^{2n-1}.
/// Polar angles carry Gauss-Legendre nodes, periodic angles a uniform rule.
pub(crate) struct AngularGrid {
    n: usize,
    theta_nodes: Vec<f64>,
    theta_weights: Vec<f64>,
    phi_count: usize,
}

impl AngularGrid {
    pub(crate) fn new(n: usize, order: usize) -> Self {
        let (tn, tw) = gauss_legendre(order);
        // map from (-1,1) to (0, pi/2)
        let half = std::f64::consts::FRAC_PI_4;
        let theta_nodes: Vec<f64> = tn.iter().map(|x| half * (x + 1.0)).collect();
        let theta_weights: Vec<f64> = tw.iter().map(|w| w * half).collect();
        AngularGrid { n, theta_nodes, theta_weights, phi_count: (2 * order).max(4) }
    }

    pub(crate) fn node_count(&self) -> usize {
        let k = self.theta_nodes.len();
        let p = self.phi_count;
        match self.n {
            2 => k * p * p,
            3 => k * k * p * p * p,
            _ => unreachable!(),
        }
    }

    /// Unit direction and parameter weight for flat node index `id`.
    /// Parameters are seeded into jet slots 0.. so the caller can read the
    /// full parametrization Jacobian out of the direction components.
    pub(crate) fn direction(&self, id: usize) -> ([J1<f64>; DMAX], f64) {
        let p = self.phi_count;
        let dphi = 2.0 * std::f64::consts::PI / p as f64;
        let phi_at = |j: usize| dphi * (j as f64 + 0.5);
        let mut dir = [J1::<f64>::constant(0.0); DMAX];
        let w;
        match self.n {
            2 => {
                let (it, rest) = (id / (p * p), id % (p * p));
                let (i1, i2) = (rest / p, rest % p);
                let th = J1::seed(self.theta_nodes[it], 0);
                let f1 = J1::seed(phi_at(i1), 1);
                let f2 = J1::seed(phi_at(i2), 2);
                dir[0] = th.cos() * f1.cos();
                dir[1] = th.cos() * f1.sin();
                dir[2] = th.sin() * f2.cos();
                dir[3] = th.sin() * f2.sin();
                w = self.theta_weights[it] * dphi * dphi;
            }
            3 => {
                let k = self.theta_nodes.len();
                let p3 = p * p * p;
                let (it, rest) = (id / (k * p3), id % (k * p3));
                let (jt, rest2) = (rest / p3, rest % p3);
                let (i1, r3) = (rest2 / (p * p), rest2 % (p * p));
                let (i2, i3) = (r3 / p, r3 % p);
                let t1 = J1::seed(self.theta_nodes[it], 0);
                let t2 = J1::seed(self.theta_nodes[jt], 1);
                let f1 = J1::seed(phi_at(i1), 2);
                let f2 = J1::seed(phi_at(i2), 3);
                let f3 = J1::seed(phi_at(i3), 4);
                dir[0] = t1.cos() * f1.cos();
                dir[1] = t1.cos() * f1.sin();
                dir[2] = t1.sin() * t2.cos() * f2.cos();
                dir[3] = t1.sin() * t2.cos() * f2.sin();
                dir[4] = t1.sin() * t2.sin() * f3.cos();
                dir[5] = t1.sin() * t2.sin() * f3.sin();
                w = self.theta_weights[it] * self.theta_weights[jt] * dphi * dphi * dphi;
            }
            _ => unreachable!(),
        }
        (dir, w)
    }
}

/// Real metric components G_ab out of the Hermitian matrix, at jet scalars.
fn real_metric<S: Real>(space: &SpaceForm, q: &[S; DMAX]) -> [[S; DMAX]; DMAX] {
    let h = space.metric_generic(q);
    let mut g = [[S::zero(); DMAX]; DMAX];
    let two = S::from_f64(2.0);
    for i in 0..space.n {
        for j in 0..space.n {
            g[2 * i][2 * j] = h[i][j].re * two;
            g[2 * i + 1][2 * j + 1] = h[i][j].re * two;
            g[2 * i][2 * j + 1] = h[i][j].im * two;
            g[2 * i + 1][2 * j] = S::zero() - h[i][j].im * two;
        }
    }
    g
}

pub(crate) fn surface_element(space: &SpaceForm, x: &[J1<f64>; DMAX], dim_param: usize) -> f64 {
    let n = space.n;
    // Jacobian columns: d x^a / d u_s
    let g = real_metric(space, x);
    let mut gram = [[0.0; DMAX]; DMAX];
    for s in 0..dim_param {
        for t in 0..dim_param {
            let mut acc = 0.0;
            for a in 0..2 * n {
                for b in 0..2 * n {
                    acc += x[a].g[s] * g[a][b].v * x[b].g[t];
                }
            }
            gram[s][t] = acc;
        }
    }
    rdet(&gram, dim_param).max(0.0).sqrt()
}

/// Integral of `f` over the star-shaped surface of the given radius map.
/// `order` is the Gauss-Legendre order of each polar angle; periodic angles
/// get `2*order` uniform nodes.
pub fn surface_integral<F>(
    space: &SpaceForm,
    radius: &dyn StarRadius,
    order: usize,
    f: F,
) -> Result<f64, Error>
where
    F: Fn(&[f64; DMAX]) -> Result<f64, Error> + Sync,
{
    let v = surface_integral_vec(space, radius, order, 1, |p| Ok(vec![f(p)?]))?;
    Ok(v[0])
}

/// Fused variant: `f` returns `k` integrand components evaluated at the same
/// node, so per-node geometry (frames, jets) is paid once for all of them.
pub fn surface_integral_vec<F>(
    space: &SpaceForm,
    radius: &dyn StarRadius,
    order: usize,
    k: usize,
    f: F,
) -> Result<Vec<f64>, Error>
where
    F: Fn(&[f64; DMAX]) -> Result<Vec<f64>, Error> + Sync,
{
    let grid = AngularGrid::new(space.n, order);
    let n = space.n;
    let dim_param = 2 * n - 1;
    let vals: Result<Vec<Vec<f64>>, Error> = (0..grid.node_count())
        .into_par_iter()
        .map(|id| {
            let (dir, w) = grid.direction(id);
            let r = radius.radius(&dir, n)?;
            let mut x = [J1::<f64>::constant(0.0); DMAX];
            for a in 0..2 * n {
                x[a] = r * dir[a];
            }
            let p: [f64; DMAX] = std::array::from_fn(|a| x[a].v);
            space.check_chart(&p)?;
            let da = surface_element(space, &x, dim_param);
            let mut row = f(&p)?;
            if row.len() != k {
                return Err(Error::BadArgument("integrand arity mismatch".into()));
            }
            for c in row.iter_mut() {
                *c *= da * w;
            }
            Ok(row)
        })
        .collect();
    reduce_components(vals?, k)
}

fn reduce_components(rows: Vec<Vec<f64>>, k: usize) -> Result<Vec<f64>, Error> {
    let mut out = Vec::with_capacity(k);
    let mut col = vec![0.0; rows.len()];
    for c in 0..k {
        for (i, row) in rows.iter().enumerate() {
            col[i] = row[c];
        }
        out.push(pairwise_sum(&col));
    }
    Ok(out)
}

/// Integral of `f` over the domain enclosed by the surface, by a radial
/// layering of the surface grid. `order_radial` Gauss-Legendre nodes scale
/// each ray; the volume element is the full coordinate Jacobian times the
/// metric volume density.
pub fn volume_integral<F>(
    space: &SpaceForm,
    radius: &dyn StarRadius,
    order: usize,
    order_radial: usize,
    f: F,
) -> Result<f64, Error>
where
    F: Fn(&[f64; DMAX]) -> Result<f64, Error> + Sync,
{
    let v = volume_integral_vec(space, radius, order, order_radial, 1, |p| Ok(vec![f(p)?]))?;
    Ok(v[0])
}

pub fn volume_integral_vec<F>(
    space: &SpaceForm,
    radius: &dyn StarRadius,
    order: usize,
    order_radial: usize,
    k: usize,
    f: F,
) -> Result<Vec<f64>, Error>
where
    F: Fn(&[f64; DMAX]) -> Result<Vec<f64>, Error> + Sync,
{
    let grid = AngularGrid::new(space.n, order);
    let (rn, rw) = gauss_legendre(order_radial);
    // map radial parameter from (-1,1) to (0,1)
    let rn: Vec<f64> = rn.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let rw: Vec<f64> = rw.iter().map(|w| 0.5 * w).collect();
    let n = space.n;
    let na = grid.node_count();
    let vals: Result<Vec<Vec<f64>>, Error> = (0..na * rn.len())
        .into_par_iter()
        .map(|id| {
            let (ia, ir) = (id % na, id / na);
            let (dir, w) = grid.direction(ia);
            let rr = radius.radius(&dir, n)?;
            // radial slot rides in the last jet slot (2n-1 is free)
            let t = J1::seed(rn[ir], 2 * n - 1);
            let mut x = [J1::<f64>::constant(0.0); DMAX];
            for a in 0..2 * n {
                x[a] = t * rr * dir[a];
            }
            let p: [f64; DMAX] = std::array::from_fn(|a| x[a].v);
            space.check_chart(&p)?;
            // coordinate Jacobian det over all 2n parameters
            let mut jac = [[0.0; DMAX]; DMAX];
            for a in 0..2 * n {
                for s in 0..2 * n {
                    jac[a][s] = x[a].g[s];
                }
            }
            let dj = rdet(&jac, 2 * n).abs();
            let dens = space.volume_density(&p);
            let mut row = f(&p)?;
            if row.len() != k {
                return Err(Error::BadArgument("integrand arity mismatch".into()));
            }
            for c in row.iter_mut() {
                *c *= dj * dens * w * rw[ir];
            }
            Ok(row)
        })
        .collect();
    reduce_components(vals?, k)
}

/// Integral at the given order and at a refined order, with their gap.
/// The gap is the practical convergence certificate the reports carry.
pub struct Refined {
    pub coarse: f64,
    pub fine: f64,
}

impl Refined {
    pub fn gap(&self) -> f64 {
        (self.fine - self.coarse).abs()
    }
}

pub fn surface_integral_refined<F>(
    space: &SpaceForm,
    radius: &dyn StarRadius,
    order: usize,
    f: F,
) -> Result<Refined, Error>
where
    F: Fn(&[f64; DMAX]) -> Result<f64, Error> + Sync,
{
    let coarse = surface_integral(space, radius, order, &f)?;
    let fine = surface_integral(space, radius, order + order / 2 + 1, &f)?;
    Ok(Refined { coarse, fine })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Kappa;
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for k in [1usize, 2, 3, 5, 8, 12] {
            let (x, w) = gauss_legendre(k);
            assert_eq!(x.len(), k);
            // exactness through degree 2k-1
            for d in 0..2 * k {
                let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(d as i32)).sum();
                let want = if d % 2 == 0 { 2.0 / (d as f64 + 1.0) } else { 0.0 };
                assert!((got - want).abs() < 1e-13, "k={k} d={d}: {got} vs {want}");
            }
            // symmetry
            for i in 0..k {
                assert!((x[i] + x[k - 1 - i]).abs() < 1e-14);
            }
        }
        let (x, w) = gauss_legendre(12);
        let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.exp()).sum();
        assert!((got - (1f64.exp() - (-1f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn euclidean_sphere_and_ball_closed_forms() {
        let flat = SpaceForm::new(Kappa::Flat, 2);
        let one = |_p: &[f64; DMAX]| Ok(1.0);
        let r = 0.8;
        let area = surface_integral(&flat, &ConstRadius(r), 12, one).unwrap();
        assert!((area - 2.0 * PI * PI * r.powi(3)).abs() < 1e-9, "area {area}");
        let vol = volume_integral(&flat, &ConstRadius(r), 10, 12, one).unwrap();
        assert!((vol - PI * PI * r.powi(4) / 2.0).abs() < 1e-9, "vol {vol}");

        let flat3 = SpaceForm::new(Kappa::Flat, 3);
        let area = surface_integral(&flat3, &ConstRadius(1.0), 8, one).unwrap();
        assert!((area - PI.powi(3)).abs() < 1e-8, "area5 {area}");
        let vol = volume_integral(&flat3, &ConstRadius(1.0), 6, 8, one).unwrap();
        assert!((vol - PI.powi(3) / 6.0).abs() < 1e-8, "vol6 {vol}");
    }

    #[test]
    fn geodesic_sphere_areas_in_curved_spaces() {
        // |S(a)| = 2 pi^2 sinh^3 a cosh a resp. 2 pi^2 sin^3 a cos a,
        // enclosed volume (pi^2/2) sinh^4 a resp. (pi^2/2) sin^4 a
        let one = |_p: &[f64; DMAX]| Ok(1.0);
        let a = 0.9_f64;
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        let t = ch.chart_radius(a).unwrap();
        let area = surface_integral(&ch, &ConstRadius(t), 14, one).unwrap();
        assert!(
            (area - 2.0 * PI * PI * a.sinh().powi(3) * a.cosh()).abs() < 1e-8,
            "ch area {area}"
        );
        let vol = volume_integral(&ch, &ConstRadius(t), 12, 14, one).unwrap();
        assert!((vol - 0.5 * PI * PI * a.sinh().powi(4)).abs() < 1e-8, "ch vol {vol}");

        let a = 0.7_f64;
        let cp = SpaceForm::new(Kappa::Projective, 2);
        let t = cp.chart_radius(a).unwrap();
        let area = surface_integral(&cp, &ConstRadius(t), 14, one).unwrap();
        assert!((area - 2.0 * PI * PI * a.sin().powi(3) * a.cos()).abs() < 1e-8, "cp area {area}");
        let vol = volume_integral(&cp, &ConstRadius(t), 12, 14, one).unwrap();
        assert!((vol - 0.5 * PI * PI * a.sin().powi(4)).abs() < 1e-8, "cp vol {vol}");
    }

    #[test]
    fn level_set_radius_reproduces_spheres_and_ellipsoids() {
        // sphere as a level set: |z|^2 - r^2
        let flat = SpaceForm::new(Kappa::Flat, 2);
        let rho = ScalarField::norm2(2) - ScalarField::constant(0.49, 0.0);
        let lr = LevelSetRadius { rho: &rho, guess: 0.5 };
        let one = |_p: &[f64; DMAX]| Ok(1.0);
        let area = surface_integral(&flat, &lr, 12, one).unwrap();
        assert!((area - 2.0 * PI * PI * 0.7_f64.powi(3)).abs() < 1e-9);

        // euclidean ellipsoid a1|z1|^2 + a2|z2|^2 = 1 has volume pi^2/(2 a1^2 a2^2)^(1/2)...
        // in real terms: semi-axes (1/sqrt a1, 1/sqrt a1, 1/sqrt a2, 1/sqrt a2),
        // |E| = (pi^2/2) prod semi-axes
        let (a1, a2) = (1.3, 0.6);
        let rho = ScalarField::z(0).abs_sq().scale(a1) + ScalarField::z(1).abs_sq().scale(a2)
            - ScalarField::constant(1.0, 0.0);
        let lr = LevelSetRadius { rho: &rho, guess: 1.0 };
        let vol = volume_integral(&flat, &lr, 14, 14, one).unwrap();
        assert!((vol - 0.5 * PI * PI / (a1 * a2)).abs() < 1e-8, "ellipsoid vol {vol}");
    }

    #[test]
    fn surface_integral_sees_nonradial_fields() {
        // moment of x_1^2 over the unit 3-sphere: |S^3| / 4 by symmetry
        let flat = SpaceForm::new(Kappa::Flat, 2);
        let f = |p: &[f64; DMAX]| Ok(p[0] * p[0]);
        let got = surface_integral(&flat, &ConstRadius(1.0), 12, f).unwrap();
        assert!((got - 2.0 * PI * PI / 4.0).abs() < 1e-9, "{got}");
    }

    #[test]
    fn coarea_consistency_for_radial_integrand() {
        // volume integral of g(r) against layered spheres equals the 1d
        // integral of g times the area profile
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        let a = 0.8_f64;
        let t = ch.chart_radius(a).unwrap();
        let g = |p: &[f64; DMAX]| {
            let r = ch.dist_to_center(p)?;
            Ok((1.0 + r * r).recip())
        };
        let lhs = volume_integral(&ch, &ConstRadius(t), 12, 16, g).unwrap();
        let (xs, ws) = gauss_legendre(40);
        let mut rhs = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            let s = 0.5 * a * (x + 1.0);
            rhs += w * 0.5 * a * 2.0 * PI * PI * s.sinh().powi(3) * s.cosh() / (1.0 + s * s);
        }
        assert!((lhs - rhs).abs() < 1e-8, "{lhs} vs {rhs}");
    }

    #[test]
    fn sums_are_thread_count_invariant() {
        let flat = SpaceForm::new(Kappa::Flat, 2);
        let f = |p: &[f64; DMAX]| Ok((p[0] * 3.0).sin() + p[2] * p[1]);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| surface_integral(&flat, &ConstRadius(0.9), 10, f).unwrap())
        };
        let (a, b, c) = (run(1), run(3), run(8));
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(a.to_bits(), c.to_bits());
    }

    #[test]
    fn refined_gap_reports_convergence() {
        let flat = SpaceForm::new(Kappa::Flat, 2);
        let f = |p: &[f64; DMAX]| Ok((p[0] + 0.3 * p[3]).exp());
        let r = surface_integral_refined(&flat, &ConstRadius(1.0), 10, f).unwrap();
        assert!(r.gap() < 1e-9, "gap {}", r.gap());
    }
}
