//! Tangential CR operators on a hypersurface: ∂̄_b, the Kohn Laplacian, the
//! Reeb divergence, and the pointwise comparison with the surface Laplacian.
//!
//! Conventions: □_b = −∂̄_b*∂̄_b on functions, so on a closed surface
//! ∫⟨∂̄_b f, conj ∂̄_b g⟩ = −∫(□_b f) ḡ. In a unitary CR frame
//! □_b f = X_α X̄_α f − ⟨∇_{X_α}X̄_α, X_β⟩ X̄_β f + i Π(T, X_α) X̄_α f,
//! where the pairing is the complex-bilinear extension of the metric and the
//! frame derivative runs through the same jet pass that built the frame.

use crate::ambient::TangentVec;
use crate::hypersurface::{BoundaryFrame, Hypersurface};
use crate::jets::{box_op, covariant_hessian, jet2, Jet2, ScalarField};
use crate::scalar::{Cx, C64, DMAX};
use crate::Error;

/// Derivative of F along a complexified vector: Σ_a v^a ∂_a F.
pub fn dir_deriv(jet: &Jet2, v: &TangentVec) -> C64 {
    let mut s = Cx::zero();
    for a in 0..2 * jet.n {
        s = s + v.comp[a] * jet.grad[a];
    }
    s
}

/// Components f_ᾱ = X̄_α F of the tangential Cauchy-Riemann operator,
/// α = 1..m in the frame order.
pub fn dbar_b(fr: &BoundaryFrame, f: &ScalarField) -> Result<Vec<C64>, Error> {
    let jet = jet2(f, fr.space.n, &fr.p.c);
    Ok((1..=fr.m()).map(|al| dbar_component(fr, &jet, al)).collect())
}

fn dbar_component(fr: &BoundaryFrame, jet: &Jet2, alpha: usize) -> C64 {
    let n = fr.space.n;
    let mut s = Cx::zero();
    for i in 0..n {
        s = s + fr.data.x[alpha][i].conj() * jet.dzbar(i);
    }
    s
}

fn dz_component(fr: &BoundaryFrame, jet: &Jet2, row: usize) -> C64 {
    let n = fr.space.n;
    let mut s = Cx::zero();
    for i in 0..n {
        s = s + fr.data.x[row][i] * jet.dz(i);
    }
    s
}

/// ZF, the transverse (1,0) derivative.
pub fn z_deriv(fr: &BoundaryFrame, jet: &Jet2) -> C64 {
    dz_component(fr, jet, 0)
}

/// Z̄F.
pub fn zbar_deriv(fr: &BoundaryFrame, jet: &Jet2) -> C64 {
    let n = fr.space.n;
    let mut s = Cx::zero();
    for i in 0..n {
        s = s + fr.data.x[0][i].conj() * jet.dzbar(i);
    }
    s
}

/// The Kohn Laplacian □_b f at the frame's base point, for f = F|_Σ.
pub fn kohn_laplacian(fr: &BoundaryFrame, f: &ScalarField) -> Result<C64, Error> {
    let n = fr.space.n;
    let m = fr.m();
    let jet = jet2(f, n, &fr.p.c);
    // ∂_a F_z̄i out of the real Hessian
    let dzbar_d = |a: usize, i: usize| -> C64 {
        (jet.hess[a][2 * i] + jet.hess[a][2 * i + 1].mul_i()).scale(0.5)
    };
    let mut total = Cx::zero();
    for al in 1..=m {
        let xa = fr.x(al);
        // X_α X̄_α F with X̄_α F differentiated as a field: the product rule
        // splits into frame-derivative and second-derivative parts
        let mut t1 = Cx::zero();
        for a in 0..2 * n {
            let mut da = Cx::zero();
            for i in 0..n {
                let dx = Cx::new(fr.jets.x[al][i].re.g[a], fr.jets.x[al][i].im.g[a]);
                da = da + dx.conj() * jet.dzbar(i) + fr.data.x[al][i].conj() * dzbar_d(a, i);
            }
            t1 = t1 + xa.comp[a] * da;
        }
        total = total + t1;

        // ∇_{X_α} X̄_α is purely (0,1); its antiholomorphic components are
        // ω_j = X_α(conj X_α^j), no Christoffel term
        let mut omega = [Cx::zero(); 3];
        for j in 0..n {
            let mut w = Cx::zero();
            for a in 0..2 * n {
                let dx = Cx::new(fr.jets.x[al][j].re.g[a], fr.jets.x[al][j].im.g[a]);
                w = w + xa.comp[a] * dx.conj();
            }
            omega[j] = w;
        }
        for be in 1..=m {
            // ⟨∇_{X_α}X̄_α, X_β⟩ = Σ_{ij} h_{ij̄} X_β^i ω_j
            let mut c = Cx::zero();
            for i in 0..n {
                for j in 0..n {
                    c = c + fr.h[i][j] * fr.data.x[be][i] * omega[j];
                }
            }
            total = total - c * dbar_component(fr, &jet, be);
        }

        let pit = fr.pi(&fr.t(), &xa);
        total = total + pit.mul_i() * dbar_component(fr, &jet, al);
    }
    Ok(total)
}

/// The boundary transport coefficient K = □_b f − i Π(T, X_α) f_ᾱ appearing
/// in the main integral identity.
pub fn transport_k(fr: &BoundaryFrame, f: &ScalarField) -> Result<C64, Error> {
    let n = fr.space.n;
    let jet = jet2(f, n, &fr.p.c);
    let mut k = kohn_laplacian(fr, f)?;
    for al in 1..=fr.m() {
        let pit = fr.pi(&fr.t(), &fr.x(al));
        k = k - pit.mul_i() * dbar_component(fr, &jet, al);
    }
    Ok(k)
}

/// Divergence of the Reeb field on Σ; vanishes identically, so the computed
/// value is a pure consistency residual.
pub fn div_t(fr: &BoundaryFrame) -> f64 {
    let frame = fr.real_tangent_frame();
    let mut s = 0.0;
    for e in &frame {
        let ae = fr.apply_shape(e);
        s += fr.space.pair(&fr.h, &ae.j(), e).re;
    }
    s
}

/// Both sides of the pointwise comparison
/// 2□_b f = Δ_Σ f − D²_Σ f(T,T) + i[2Π(T,X_α)X̄_α f − H_b Tf],
/// with the intrinsic pieces assembled from ambient jets:
/// Δ_Σ f = 2□F − D²F(ν,ν) − H νF and D²_Σ f(T,T) = D²F(T,T) − Π(T,T) νF.
pub fn compare_sides(fr: &BoundaryFrame, f: &ScalarField) -> Result<(C64, C64), Error> {
    let sp = &fr.space;
    let jet = jet2(f, sp.n, &fr.p.c);
    let lhs = kohn_laplacian(fr, f)?.scale(2.0);

    let nu = fr.nu();
    let t = fr.t();
    let nu_f = dir_deriv(&jet, &nu);
    let t_f = dir_deriv(&jet, &t);
    let box_f = box_op(sp, f, &fr.p.c)?;
    let d2_nn = covariant_hessian(sp, f, &nu, &nu)?;
    let d2_tt = covariant_hessian(sp, f, &t, &t)?;
    let h = fr.mean_curvature();
    let alpha = fr.alpha();
    let lap_sigma = box_f.scale(2.0) - d2_nn - nu_f.scale(h);
    let d2_sigma_tt = d2_tt - nu_f.scale(alpha);

    let mut twist = Cx::zero();
    for al in 1..=fr.m() {
        let pit = fr.pi(&t, &fr.x(al));
        twist = twist + pit * dbar_component(fr, &jet, al) * Cx::new(2.0, 0.0);
    }
    twist = twist - t_f.scale(fr.h_b());
    let rhs = lap_sigma - d2_sigma_tt + twist.mul_i();
    Ok((lhs, rhs))
}

/// Integrated duality residual on a closed surface:
/// r = ∫⟨∂̄_b f, conj ∂̄_b g⟩ + ∫(□_b f) ḡ, normalized by the energy scale.
pub struct DualityReport {
    pub energy: f64,
    pub residual: f64,
}

pub fn duality_check(
    surf: &Hypersurface,
    f: &ScalarField,
    g: &ScalarField,
    order: usize,
) -> Result<DualityReport, Error> {
    let fg_pair = |p: &[f64; DMAX]| -> Result<C64, Error> {
        let fr = surf.frame(&crate::ambient::Point { c: *p })?;
        let jf = jet2(f, surf.space.n, p);
        let jg = jet2(g, surf.space.n, p);
        let mut s = Cx::zero();
        for al in 1..=fr.m() {
            s = s + dbar_component(&fr, &jf, al) * dbar_component(&fr, &jg, al).conj();
        }
        Ok(s)
    };
    let lhs_re = surf.integrate(order, |p| Ok(fg_pair(p)?.re))?;
    let lhs_im = surf.integrate(order, |p| Ok(fg_pair(p)?.im))?;
    let rhs = |p: &[f64; DMAX]| -> Result<C64, Error> {
        let fr = surf.frame(&crate::ambient::Point { c: *p })?;
        let boxb = kohn_laplacian(&fr, f)?;
        Ok(boxb * g.value(p).conj())
    };
    let rhs_re = surf.integrate(order, |p| Ok(rhs(p)?.re))?;
    let rhs_im = surf.integrate(order, |p| Ok(rhs(p)?.im))?;
    let energy = lhs_re.abs().max(rhs_re.hypot(rhs_im)).max(1e-30);
    let residual = (lhs_re + rhs_re).hypot(lhs_im + rhs_im);
    Ok(DualityReport { energy, residual })
}

/// Pointwise integrands of the boundary side of the main identity:
/// (ZF̄·K + ZF·conj K, √2 Σ Π(X̄_α,X̄_β) f_α f̄_β, H_b|Z̄F|²/√2).
pub fn identity_boundary_integrand(
    fr: &BoundaryFrame,
    f: &ScalarField,
) -> Result<(C64, C64, f64), Error> {
    let n = fr.space.n;
    let jet = jet2(f, n, &fr.p.c);
    let k = transport_k(fr, f)?;
    let zbar_f = zbar_deriv(fr, &jet);
    // ZF̄ = conj(Z̄F)
    let term1 = zbar_f.conj() * k + z_deriv(fr, &jet) * k.conj();

    let m = fr.m();
    let mut term2 = Cx::zero();
    for al in 1..=m {
        let xa_bar = fr.x(al).conj();
        for be in 1..=m {
            let pi_bb = fr.pi(&xa_bar, &fr.x(be).conj());
            // f_α f̄_β = (X_α F) · conj(X̄_β F)
            let fa = dz_component(fr, &jet, al);
            let fb_bar = dbar_component(fr, &jet, be).conj();
            term2 = term2 + pi_bb * fa * fb_bar;
        }
    }
    term2 = term2.scale(std::f64::consts::SQRT_2);

    let term3 = fr.h_b() * zbar_f.abs2() * std::f64::consts::FRAC_1_SQRT_2;
    Ok((term1, term2, term3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{Kappa, Point, SpaceForm};

    fn sphere_point(s: &Hypersurface, dir: &[f64]) -> (Point, BoundaryFrame) {
        let p = s.point_on(dir).unwrap();
        let fr = s.frame(&p).unwrap();
        (p, fr)
    }

    #[test]
    fn dbar_b_vanishes_exactly_on_cr_restrictions() {
        // restrictions of holomorphic functions are CR, in every space
        for kappa in [Kappa::Flat, Kappa::Hyperbolic, Kappa::Projective] {
            let sp = SpaceForm::new(kappa, 2);
            let s = Hypersurface::sphere(&sp, 0.7).unwrap();
            let f = ScalarField::z(0) * ScalarField::z(1)
                + ScalarField::z(0).powi(3).scale(0.4);
            let (_, fr) = sphere_point(&s, &[0.3, -0.5, 0.8, 0.2]);
            for c in dbar_b(&fr, &f).unwrap() {
                assert!(c.abs() < 1e-12, "{kappa:?}: {c:?}");
            }
            let boxb = kohn_laplacian(&fr, &f).unwrap();
            assert!(boxb.abs() < 1e-10, "{kappa:?}: {boxb:?}");
        }
    }

    #[test]
    fn kohn_eigenvalue_on_flat_unit_sphere() {
        // □_b z̄_j = −2 z̄_j on the unit sphere of ℂ²
        let sp = SpaceForm::new(Kappa::Flat, 2);
        let s = Hypersurface::sphere(&sp, 1.0).unwrap();
        let f = ScalarField::zbar(0);
        for dir in [[1.0, 0.0, 0.0, 0.0], [0.3, -0.5, 0.8, 0.2], [0.1, 0.9, 0.3, -0.4]] {
            let (p, fr) = sphere_point(&s, &dir);
            let boxb = kohn_laplacian(&fr, &f).unwrap();
            let want = f.value(&p.c).scale(-2.0);
            assert!((boxb - want).abs() < 1e-9, "at {dir:?}: {boxb:?} vs {want:?}");
        }
    }

    #[test]
    fn duality_between_dbar_b_and_its_adjoint() {
        let sp = SpaceForm::new(Kappa::Flat, 2);
        let s = Hypersurface::sphere(&sp, 1.0).unwrap();
        let f = ScalarField::zbar(0) * ScalarField::z(1) + ScalarField::zbar(1).scale(0.7);
        let g = ScalarField::zbar(1) + ScalarField::z(0).powi(2).scale(0.3);
        let rep = duality_check(&s, &f, &g, 14).unwrap();
        assert!(
            rep.residual < 1e-8 * rep.energy.max(1.0),
            "residual {} energy {}",
            rep.residual,
            rep.energy
        );
        // and on a curved space with a non-spherical surface
        let ch = SpaceForm::new(Kappa::Hyperbolic, 2);
        let s = Hypersurface::perturbed_sphere(&ch, 0.8, 0.2).unwrap();
        let rep = duality_check(&s, &f, &g, 16).unwrap();
        assert!(
            rep.residual < 1e-6 * rep.energy.max(1.0),
            "residual {} energy {}",
            rep.residual,
            rep.energy
        );
    }

    #[test]
    fn reeb_field_is_divergence_free() {
        let cases = vec![
            Hypersurface::ellipsoid(&SpaceForm::new(Kappa::Flat, 2), &[1.2, 0.8]).unwrap(),
            Hypersurface::perturbed_sphere(&SpaceForm::new(Kappa::Hyperbolic, 2), 0.7, 0.3)
                .unwrap(),
            Hypersurface::sphere(&SpaceForm::new(Kappa::Projective, 3), 0.8).unwrap(),
        ];
        for s in &cases {
            for dir in [[0.4, 1.0, -0.3, 0.6, 0.2, -0.5], [1.0, -0.2, 0.5, 0.3, -0.7, 0.1]] {
                let p = s.point_on(&dir[..2 * s.space.n]).unwrap();
                let fr = s.frame(&p).unwrap();
                let d = div_t(&fr);
                assert!(d.abs() < 1e-9, "{} at {dir:?}: {d}", s.name);
            }
        }
    }

    #[test]
    fn kohn_comparison_with_surface_laplacian() {
        let f = ScalarField::z(0).powi(2) * ScalarField::z(1)
            + ScalarField::norm2(2).scale(0.5)
            + ScalarField::zbar(1).powi(2).scale(0.3);
        let cases = vec![
            Hypersurface::sphere(&SpaceForm::new(Kappa::Flat, 2), 1.0).unwrap(),
            Hypersurface::ellipsoid(&SpaceForm::new(Kappa::Flat, 2), &[1.0, 1.6]).unwrap(),
            Hypersurface::perturbed_sphere(&SpaceForm::new(Kappa::Hyperbolic, 2), 0.75, 0.25)
                .unwrap(),
            Hypersurface::sphere(&SpaceForm::new(Kappa::Projective, 2), 0.7).unwrap(),
        ];
        for s in &cases {
            for dir in [[0.3, -0.5, 0.8, 0.2], [0.9, 0.1, -0.2, 0.6]] {
                let p = s.point_on(&dir).unwrap();
                let fr = s.frame(&p).unwrap();
                let (lhs, rhs) = compare_sides(&fr, &f).unwrap();
                let scale = lhs.abs().max(1.0);
                assert!(
                    (lhs - rhs).abs() < 1e-8 * scale,
                    "{} at {dir:?}: lhs {lhs:?} rhs {rhs:?}",
                    s.name
                );
            }
        }
    }

    #[test]
    fn transport_k_reduces_to_kohn_on_geodesic_spheres() {
        // Π(T, X_α) = 0 when T is an eigendirection of the shape operator
        let sp = SpaceForm::new(Kappa::Hyperbolic, 2);
        let s = Hypersurface::sphere(&sp, 0.9).unwrap();
        let f = ScalarField::zbar(0) * ScalarField::z(1) + ScalarField::z(0).scale(0.4);
        let (_, fr) = sphere_point(&s, &[0.3, -0.5, 0.8, 0.2]);
        let k = transport_k(&fr, &f).unwrap();
        let boxb = kohn_laplacian(&fr, &f).unwrap();
        assert!((k - boxb).abs() < 1e-12, "{k:?} vs {boxb:?}");
    }
}
