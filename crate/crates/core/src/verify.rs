//! Residual checks. Every theorem-level statement is realized as a number
//! that should vanish (equality residual), stay nonnegative (margin), or
//! match a closed form, wrapped in a ResidualReport. Nothing here prints or
//! exits; the cli module owns presentation and scheduling.
//!
//! Status semantics: a failed hypothesis (non-Hopf surface fed to a Hopf
//! statement, H_b changing sign, non-CR boundary data) is reported as
//! `hypothesis-failed`, which is not a check failure.

use crate::ambient::{Kappa, Point, SpaceForm, TangentVec};
use crate::boundary;
use crate::hypersurface::{BoundaryFrame, Hypersurface};
use crate::jets::{self, jet2, ScalarField};
use crate::linalg::CMat;
use crate::scalar::{Cx, C64, DMAX};
use crate::Error;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::SQRT_2;

/// Pinned tolerances. Checks default to these; callers may scale them.
pub mod tol {
    pub const MAIN_IDENTITY: f64 = 1e-5;
    pub const CURVATURE: f64 = 1e-8;
    pub const POTENTIAL: f64 = 1e-9;
    pub const DIV_T: f64 = 1e-8;
    pub const DUALITY: f64 = 1e-6;
    pub const COMPARE: f64 = 1e-7;
    pub const SPECTRUM: f64 = 1e-8;
    pub const SPECTRUM_TUBE: f64 = 1e-6;
    pub const MINKOWSKI: f64 = 1e-6;
    pub const HESSIAN: f64 = 1e-8;
    pub const INEQUALITY: f64 = 1e-6;
    pub const RIGIDITY_COD: f64 = 1e-7;
    pub const RIGIDITY_QR: f64 = 1e-8;
    pub const RIGIDITY_FUNDB: f64 = 1e-9;
    pub const EQUALITY_CASE: f64 = 1e-7;
    pub const EXTEND: f64 = 1e-5;
    /// Hopf gate: largest tolerated |Π(T, X_α)| before a surface stops
    /// counting as Hopf.
    pub const HOPF: f64 = 1e-7;
    /// CR gate on boundary data.
    pub const CR_DATA: f64 = 1e-8;
    /// Absolute floor under which an equality check passes regardless of
    /// relative size. Rows whose both sides vanish identically (holomorphic
    /// battery entries) land at quadrature roundoff, far below this; rows
    /// with genuine content are judged relatively.
    pub const ABS_FLOOR: f64 = 1e-9;
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    HypothesisFailed,
    Skipped,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::HypothesisFailed => "hypothesis-failed",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// How a report judges its numbers; drives tolerance rescaling.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    Equality,
    MaxResidual,
    Inequality,
    /// Hypothesis gates and skips; rescaling never touches these.
    Gate,
}

/// One check outcome. `lhs`/`rhs` are [re, im]; pointwise sup-residual
/// checks store the worst value in lhs[0] with rhs = 0.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub check_id: String,
    pub anchor: String,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
    pub order: usize,
    pub samples: usize,
    pub notes: String,
    #[serde(skip)]
    pub kind: CheckKind,
}

impl ResidualReport {
    pub fn equality(
        check_id: impl Into<String>,
        anchor: impl Into<String>,
        lhs: C64,
        rhs: C64,
        tol: f64,
        order: usize,
        samples: usize,
    ) -> Self {
        let abs = (lhs - rhs).abs();
        let rel = abs / lhs.abs().max(rhs.abs()).max(1e-30);
        let status = if rel <= tol || abs <= tol::ABS_FLOOR {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        ResidualReport {
            check_id: check_id.into(),
            anchor: anchor.into(),
            lhs: [lhs.re, lhs.im],
            rhs: [rhs.re, rhs.im],
            abs_residual: abs,
            rel_residual: rel,
            tolerance: tol,
            status,
            order,
            samples,
            notes: String::new(),
            kind: CheckKind::Equality,
        }
    }

    /// Pointwise sup-residual against zero.
    pub fn max_residual(
        check_id: impl Into<String>,
        anchor: impl Into<String>,
        worst: f64,
        tol: f64,
        order: usize,
        samples: usize,
    ) -> Self {
        let status = if worst <= tol { CheckStatus::Pass } else { CheckStatus::Fail };
        ResidualReport {
            check_id: check_id.into(),
            anchor: anchor.into(),
            lhs: [worst, 0.0],
            rhs: [0.0, 0.0],
            abs_residual: worst,
            rel_residual: worst,
            tolerance: tol,
            status,
            order,
            samples,
            notes: String::new(),
            kind: CheckKind::MaxResidual,
        }
    }

    /// lhs ≥ rhs up to tol·scale; near-zero margin is flagged as equality.
    pub fn inequality(
        check_id: impl Into<String>,
        anchor: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tol: f64,
        order: usize,
        samples: usize,
    ) -> Self {
        let margin = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let violation = (-margin).max(0.0);
        let status =
            if margin >= -tol * scale { CheckStatus::Pass } else { CheckStatus::Fail };
        let notes = if margin.abs() <= tol * scale {
            format!("margin {margin:+.6e} (equality)")
        } else {
            format!("margin {margin:+.6e}")
        };
        ResidualReport {
            check_id: check_id.into(),
            anchor: anchor.into(),
            lhs: [lhs, 0.0],
            rhs: [rhs, 0.0],
            abs_residual: violation,
            rel_residual: violation / scale,
            tolerance: tol,
            status,
            order,
            samples,
            notes,
            kind: CheckKind::Inequality,
        }
    }

    pub fn hypothesis_failed(
        check_id: impl Into<String>,
        anchor: impl Into<String>,
        observed: f64,
        tol: f64,
        notes: impl Into<String>,
    ) -> Self {
        ResidualReport {
            check_id: check_id.into(),
            anchor: anchor.into(),
            lhs: [observed, 0.0],
            rhs: [0.0, 0.0],
            abs_residual: observed,
            rel_residual: observed,
            tolerance: tol,
            status: CheckStatus::HypothesisFailed,
            order: 0,
            samples: 0,
            notes: notes.into(),
            kind: CheckKind::Gate,
        }
    }

    pub fn skipped(
        check_id: impl Into<String>,
        anchor: impl Into<String>,
        notes: impl Into<String>,
    ) -> Self {
        ResidualReport {
            check_id: check_id.into(),
            anchor: anchor.into(),
            lhs: [0.0, 0.0],
            rhs: [0.0, 0.0],
            abs_residual: 0.0,
            rel_residual: 0.0,
            tolerance: 0.0,
            status: CheckStatus::Skipped,
            order: 0,
            samples: 0,
            notes: notes.into(),
            kind: CheckKind::Gate,
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }

    /// Scale the tolerance and re-derive pass/fail from the stored numbers.
    /// Gates (hypothesis-failed, skipped) are left alone.
    pub fn rescale_tolerance(&mut self, scale: f64) {
        if self.kind == CheckKind::Gate || scale == 1.0 {
            return;
        }
        self.tolerance *= scale;
        self.status = match self.kind {
            CheckKind::Equality => {
                if self.rel_residual <= self.tolerance || self.abs_residual <= tol::ABS_FLOOR {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
            CheckKind::MaxResidual => {
                if self.abs_residual <= self.tolerance {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
            CheckKind::Inequality => {
                let margin = self.lhs[0] - self.rhs[0];
                let sc = self.lhs[0].abs().max(self.rhs[0].abs()).max(1.0);
                if margin >= -self.tolerance * sc {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
            CheckKind::Gate => self.status,
        };
    }
}

fn row_id(base: &str, label: &str) -> String {
    if label.is_empty() {
        base.to_string()
    } else {
        format!("{base}-{label}")
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

const SALT_CURV: u64 = 1;
const SALT_POT: u64 = 2;
const SALT_DIVT: u64 = 3;
const SALT_DUAL: u64 = 4;
const SALT_CMP: u64 = 5;
const SALT_SPEC: u64 = 6;
const SALT_HESS: u64 = 7;
const SALT_MINK: u64 = 8;
const SALT_RIG: u64 = 9;
const SALT_EQC: u64 = 10;

fn random_unit_dir(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 0.05 && n2 <= 1.0 {
            let s = 1.0 / n2.sqrt();
            return v.iter().map(|x| x * s).collect();
        }
    }
}

fn random_chart_point(space: &SpaceForm, rng: &mut ChaCha8Rng) -> Point {
    let rmax = match space.kappa {
        Kappa::Flat => 1.3,
        Kappa::Hyperbolic => 1.5,
        Kappa::Projective => 1.1,
    };
    let r = rng.gen_range(0.05..rmax);
    let c = space.chart_radius(r).expect("radius inside the chart");
    let dir = random_unit_dir(rng, 2 * space.n);
    let mut q = [0.0; DMAX];
    for (a, x) in dir.iter().enumerate() {
        q[a] = c * x;
    }
    Point { c: q }
}

fn random_unit_tangent(
    space: &SpaceForm,
    h: &CMat<f64>,
    p: Point,
    rng: &mut ChaCha8Rng,
) -> TangentVec {
    loop {
        let comps: Vec<f64> = (0..2 * space.n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v = TangentVec::real(p, &comps);
        let nn = space.pair(h, &v, &v).re;
        if nn > 1e-3 {
            return v.scale(Cx::new(1.0 / nn.sqrt(), 0.0));
        }
    }
}

/// Extend `seeds` (assumed orthonormal) to a full orthonormal real frame by
/// Gram-Schmidt over the coordinate directions.
fn complete_frame(
    space: &SpaceForm,
    h: &CMat<f64>,
    p: Point,
    seeds: &[TangentVec],
) -> Vec<TangentVec> {
    let d = 2 * space.n;
    let mut basis: Vec<TangentVec> = seeds.to_vec();
    for a in 0..d {
        if basis.len() == d {
            break;
        }
        let mut comps = vec![0.0; d];
        comps[a] = 1.0;
        let mut v = TangentVec::real(p, &comps);
        for b in &basis {
            let c = space.pair(h, &v, b);
            v = v.add(&b.scale(-c));
        }
        let nn = space.pair(h, &v, &v).re;
        if nn > 1e-4 {
            basis.push(v.scale(Cx::new(1.0 / nn.sqrt(), 0.0)));
        }
    }
    basis
}

/// Metric gradient of a real field as a real tangent vector.
fn gradient_vec(space: &SpaceForm, f: &ScalarField, p: &Point) -> Result<TangentVec, Error> {
    let j = jet2(f, space.n, &p.c);
    let hinv = space.metric_inverse(&p.c)?;
    let mut w = [C64::zero(); 3];
    for (i, wi) in w.iter_mut().enumerate().take(space.n) {
        let mut s = C64::zero();
        for jj in 0..space.n {
            s = s + hinv[jj][i] * j.dz(jj).conj();
        }
        *wi = s;
    }
    Ok(TangentVec::real_from_hol(*p, &w))
}

/// Random surface frames via ray shooting; retries directions whose ray
/// misses the level set (tubes) or where the Newton solve stalls.
fn sample_frames(
    surf: &Hypersurface,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Result<Vec<BoundaryFrame>, Error> {
    let d = 2 * surf.space.n;
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 80 * count.max(1) {
            return Err(Error::RootFind("surface sampling kept missing the level set".into()));
        }
        let dir = random_unit_dir(rng, d);
        let p = match surf.point_on(&dir) {
            Ok(p) => p,
            Err(_) => continue,
        };
        match surf.frame(&p) {
            Ok(fr) => out.push(fr),
            Err(_) => continue,
        }
    }
    Ok(out)
}

fn hopf_residual(surf: &Hypersurface, seed: u64, count: usize) -> Result<f64, Error> {
    let mut rng = rng_for(seed, SALT_MINK);
    let frames = sample_frames(surf, &mut rng, count)?;
    let mut worst = 0.0_f64;
    for fr in &frames {
        for a in 1..=fr.m() {
            worst = worst.max(fr.pi_t_x(a).abs());
        }
    }
    Ok(worst)
}

/// Fixed 12-field battery: holomorphic, antiholomorphic, mixed, and radial
/// entries, plus one rational and one transcendental to defeat exactness of
/// the quadrature on polynomials.
pub fn field_battery(n: usize) -> Vec<(&'static str, ScalarField)> {
    let z1 = ScalarField::z(0);
    let z2 = ScalarField::z(1);
    let one = ScalarField::constant(1.0, 0.0);
    vec![
        ("z1", z1.clone()),
        ("z1sq-z2", z1.clone() * z1.clone() * z2.clone()),
        ("rational", one / (z1.clone() - ScalarField::constant(2.0, 0.0))),
        ("z1bar", ScalarField::zbar(0)),
        ("z2bar-sq", ScalarField::zbar(1) * ScalarField::zbar(1)),
        ("z1-z2bar", z1.clone() * ScalarField::zbar(1)),
        ("norm-sq", ScalarField::norm2(n)),
        ("re-z1", z1.clone().re()),
        ("im-z2", z2.clone().im()),
        ("absz1sq-z2", z1.clone().abs_sq() * z2),
        ("exp-z1", z1.scale(0.5).exp()),
        ("norm-4", ScalarField::norm2(n).powi(2)),
    ]
}

/// Main integral identity on the domain bounded by `surf`: the bulk
/// difference √2 ∫ (|□F|² − |D¹˒¹F|²) against the three boundary terms.
/// One fused volume pass and one fused boundary pass for all fields.
pub fn main_identity_reports(
    surf: &Hypersurface,
    label: &str,
    fields: &[(&'static str, ScalarField)],
    order_surface: usize,
    order_volume: usize,
) -> Result<Vec<ResidualReport>, Error> {
    let skip_all = |notes: &str| {
        fields
            .iter()
            .map(|(tag, _)| {
                ResidualReport::skipped(row_id(&format!("identity-{tag}"), label), "id", notes)
            })
            .collect()
    };
    if !surf.star_shaped {
        return Ok(skip_all("domain integration needs a star-shaped level set"));
    }
    let n = surf.space.n;
    // the radial quadrature reaches the chart-center side only; a surface
    // oriented to bound the far side (tube about the cut locus) would pair
    // the boundary terms with the wrong domain
    {
        let p = surf.point_on(&[1.0, 0.3, -0.4, 0.2, 0.1, -0.2][..2 * n])?;
        let fr = surf.frame(&p)?;
        let outward = boundary::dir_deriv(&jet2(&ScalarField::norm2(n), n, &p.c), &fr.nu()).re;
        if outward <= 0.0 {
            return Ok(skip_all("surface bounds the far side of the chart center"));
        }
    }
    let space = surf.space.clone();
    let nf = fields.len();
    let vols = surf.integrate_domain_vec(order_volume, order_volume, 2 * nf, |p| {
        let mut out = Vec::with_capacity(2 * nf);
        for (_, f) in fields {
            let j = jet2(f, n, p);
            let b = jets::box_of_jet(&space, &j, p)?;
            out.push(b.abs2());
            out.push(jets::d11_norm2_of_jet(&space, &j, p)?);
        }
        Ok(out)
    })?;
    let bnds = surf.integrate_vec(order_surface, 5 * nf, |p| {
        let fr = surf.frame(&Point { c: *p })?;
        let mut out = Vec::with_capacity(5 * nf);
        for (_, f) in fields {
            let (t1, t2, t3) = boundary::identity_boundary_integrand(&fr, f)?;
            out.extend_from_slice(&[t1.re, t1.im, t2.re, t2.im, t3]);
        }
        Ok(out)
    })?;
    Ok(fields
        .iter()
        .enumerate()
        .map(|(k, (tag, _))| {
            let lhs = Cx::new(SQRT_2 * (vols[2 * k] - vols[2 * k + 1]), 0.0);
            let rhs = Cx::new(
                bnds[5 * k] + bnds[5 * k + 2] + bnds[5 * k + 4],
                bnds[5 * k + 1] + bnds[5 * k + 3],
            );
            ResidualReport::equality(
                row_id(&format!("identity-{tag}"), label),
                "id",
                lhs,
                rhs,
                tol::MAIN_IDENTITY,
                order_surface,
                0,
            )
        })
        .collect())
}

pub fn main_identity_battery(
    surf: &Hypersurface,
    label: &str,
    order_surface: usize,
    order_volume: usize,
) -> Result<Vec<ResidualReport>, Error> {
    let fields = field_battery(surf.space.n);
    main_identity_reports(surf, label, &fields, order_surface, order_volume)
}

pub fn check_main_identity(
    surf: &Hypersurface,
    label: &str,
    field_tag: &'static str,
    f: &ScalarField,
    order_surface: usize,
    order_volume: usize,
) -> Result<ResidualReport, Error> {
    let fields = vec![(field_tag, f.clone())];
    let mut v = main_identity_reports(surf, label, &fields, order_surface, order_volume)?;
    Ok(v.remove(0))
}

/// Holomorphic sectional curvature 4κ and totally real sections κ at random
/// points and directions.
pub fn check_curvature(space: &SpaceForm, seed: u64, count: usize) -> Result<ResidualReport, Error> {
    let mut rng = rng_for(seed, SALT_CURV);
    let k = space.kappa.kappa();
    let mut worst = 0.0_f64;
    for _ in 0..count {
        let p = random_chart_point(space, &mut rng);
        let h = space.metric(&p.c)?;
        let u = random_unit_tangent(space, &h, p, &mut rng);
        let ju = u.j();
        let khol = space.curvature(&u, &ju, &u, &ju)?;
        worst = worst.max((khol.re - 4.0 * k).abs()).max(khol.im.abs());
        // project a second random vector off the complex line of u
        let mut w = random_unit_tangent(space, &h, p, &mut rng);
        let mut ok = false;
        for _ in 0..20 {
            let mut v = w;
            for b in [&u, &ju] {
                let c = space.pair(&h, &v, b);
                v = v.add(&b.scale(-c));
            }
            let nn = space.pair(&h, &v, &v).re;
            if nn > 1e-3 {
                w = v.scale(Cx::new(1.0 / nn.sqrt(), 0.0));
                ok = true;
                break;
            }
            w = random_unit_tangent(space, &h, p, &mut rng);
        }
        if !ok {
            return Err(Error::FrameFailure("no totally real companion direction".into()));
        }
        let kreal = space.curvature(&u, &w, &u, &w)?;
        worst = worst.max((kreal.re - k).abs()).max(kreal.im.abs());
    }
    Ok(ResidualReport::max_residual(
        format!("curvature-{}", space.kappa.tag()),
        "4kappa",
        worst,
        tol::CURVATURE,
        0,
        count,
    ))
}

/// The distinguished potential satisfies D¹˒¹Φ = identity (every mixed
/// second derivative equals the metric) and □Φ = m + 1, pointwise.
pub fn check_potential(space: &SpaceForm, seed: u64, count: usize) -> Result<ResidualReport, Error> {
    let mut rng = rng_for(seed, SALT_POT);
    let phi = space.phi_field();
    let mut worst_d11 = 0.0_f64;
    let mut worst_box = 0.0_f64;
    for _ in 0..count {
        let p = random_chart_point(space, &mut rng);
        let fh = jets::complex_hessian(space, &phi, &p.c)?;
        let h = space.metric(&p.c)?;
        for i in 0..space.n {
            for j in 0..space.n {
                worst_d11 = worst_d11.max((fh[i][j] - h[i][j]).abs());
            }
        }
        let b = jets::box_op(space, &phi, &p.c)?;
        worst_box = worst_box.max((b - Cx::new(space.n as f64, 0.0)).abs());
    }
    Ok(ResidualReport::max_residual(
        format!("potential-{}", space.kappa.tag()),
        "DPhi",
        worst_d11.max(worst_box),
        tol::POTENTIAL,
        0,
        count,
    )
    .with_notes(format!(
        "max |Phi_ij - h_ij| {worst_d11:.3e}, max |box Phi - n| {worst_box:.3e}"
    )))
}

/// Radial Hessian eigenstructure in the negatively curved space: eigenvalue
/// 0 along ∇r, 2coth(2r) along J∇r, coth(r) on the complement.
pub fn check_hessian_radial(seed: u64, count: usize) -> Result<ResidualReport, Error> {
    let space = SpaceForm::new(Kappa::Hyperbolic, 2);
    let rfield = space.dist_field();
    let mut rng = rng_for(seed, SALT_HESS);
    let mut worst = 0.0_f64;
    for _ in 0..count {
        let r = rng.gen_range(0.1..1.3);
        let c = space.chart_radius(r)?;
        let dir = random_unit_dir(&mut rng, 4);
        let mut q = [0.0; DMAX];
        for (a, x) in dir.iter().enumerate() {
            q[a] = c * x;
        }
        let p = Point { c: q };
        let h = space.metric(&p.c)?;
        let g = gradient_vec(&space, &rfield, &p)?;
        let gn = space.pair(&h, &g, &g).re;
        worst = worst.max((gn - 1.0).abs());
        let e0 = g.scale(Cx::new(1.0 / gn.sqrt(), 0.0));
        let frame = complete_frame(&space, &h, p, &[e0, e0.j()]);
        if frame.len() != 4 {
            return Err(Error::FrameFailure("radial frame did not complete".into()));
        }
        let want = [0.0, 2.0 / (2.0 * r).tanh(), 1.0 / r.tanh(), 1.0 / r.tanh()];
        for a in 0..4 {
            for b in 0..4 {
                let m = jets::covariant_hessian(&space, &rfield, &frame[a], &frame[b])?;
                let target = if a == b { want[a] } else { 0.0 };
                worst = worst.max((m.re - target).abs()).max(m.im.abs());
            }
        }
    }
    Ok(ResidualReport::max_residual(
        "hessian-radial",
        "Hess",
        worst,
        tol::HESSIAN,
        0,
        count,
    ))
}

/// div T = 0 at random surface points.
pub fn check_div_t(
    surf: &Hypersurface,
    label: &str,
    seed: u64,
    count: usize,
) -> Result<ResidualReport, Error> {
    let mut rng = rng_for(seed, SALT_DIVT);
    let frames = sample_frames(surf, &mut rng, count)?;
    let worst = frames.iter().map(|fr| boundary::div_t(fr).abs()).fold(0.0_f64, f64::max);
    Ok(ResidualReport::max_residual(
        row_id("div-t", label),
        "divT",
        worst,
        tol::DIV_T,
        0,
        count,
    ))
}

/// Low-degree polynomial field with random complex coefficients; the term
/// set mixes holomorphic, antiholomorphic, and mixed monomials.
fn random_poly_field(n: usize, rng: &mut ChaCha8Rng) -> ScalarField {
    let mut terms: Vec<ScalarField> = vec![
        ScalarField::constant(1.0, 0.0),
        ScalarField::z(0),
        ScalarField::z(1),
        ScalarField::zbar(0),
        ScalarField::zbar(1),
        ScalarField::z(0) * ScalarField::z(1),
        ScalarField::z(0) * ScalarField::zbar(1),
        ScalarField::zbar(0) * ScalarField::zbar(1),
        ScalarField::z(0) * ScalarField::z(0),
        ScalarField::zbar(1) * ScalarField::zbar(1),
    ];
    if n == 3 {
        terms.push(ScalarField::z(2));
        terms.push(ScalarField::zbar(2));
        terms.push(ScalarField::z(0) * ScalarField::zbar(2));
    }
    let mut f = ScalarField::constant(0.0, 0.0);
    for t in terms {
        let c = ScalarField::constant(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        f = f + c * t;
    }
    f
}

/// ∫ ⟨∂̄_b f, conj ∂̄_b g⟩ = −∫ (□_b f) ḡ over the closed surface, on
/// randomized polynomial pairs, all pairs fused into one quadrature pass.
pub fn check_duality(
    surf: &Hypersurface,
    label: &str,
    seed: u64,
    pairs: usize,
    order: usize,
) -> Result<ResidualReport, Error> {
    let n = surf.space.n;
    let mut rng = rng_for(seed, SALT_DUAL);
    let fg: Vec<(ScalarField, ScalarField)> = (0..pairs)
        .map(|_| (random_poly_field(n, &mut rng), random_poly_field(n, &mut rng)))
        .collect();
    let cols = surf.integrate_vec(order, 4 * pairs, |p| {
        let fr = surf.frame(&Point { c: *p })?;
        let mut out = Vec::with_capacity(4 * pairs);
        for (f, g) in &fg {
            let df = boundary::dbar_b(&fr, f)?;
            let dg = boundary::dbar_b(&fr, g)?;
            let mut inner = C64::zero();
            for (a, b) in df.iter().zip(dg.iter()) {
                inner = inner + *a * b.conj();
            }
            let boxf = boundary::kohn_laplacian(&fr, f)?;
            let gval = jet2(g, n, p).value;
            let adj = boxf * gval.conj();
            out.extend_from_slice(&[inner.re, inner.im, adj.re, adj.im]);
        }
        Ok(out)
    })?;
    let mut worst_rel = -1.0_f64;
    let mut worst = (C64::zero(), C64::zero(), 0usize);
    for k in 0..pairs {
        let lhs = Cx::new(cols[4 * k], cols[4 * k + 1]);
        let adj = Cx::new(cols[4 * k + 2], cols[4 * k + 3]);
        let rel = (lhs + adj).abs() / lhs.abs().max(adj.abs()).max(1e-30);
        if rel > worst_rel {
            worst_rel = rel;
            worst = (lhs, adj, k);
        }
    }
    Ok(ResidualReport::equality(
        row_id("duality", label),
        "dual",
        worst.0,
        -worst.1,
        tol::DUALITY,
        order,
        pairs,
    )
    .with_notes(format!("worst of {} randomized pairs (index {})", pairs, worst.2)))
}

/// Pointwise comparison of 2□_b f against the surface Laplacian form.
pub fn check_compare(
    surf: &Hypersurface,
    label: &str,
    seed: u64,
    count: usize,
) -> Result<ResidualReport, Error> {
    let z1 = ScalarField::z(0);
    let z2 = ScalarField::z(1);
    let fields = [
        z1.clone() * z1.clone() * z2.clone()
            + ScalarField::norm2(surf.space.n).scale(0.5)
            + (ScalarField::zbar(1) * ScalarField::zbar(1)).scale(0.3),
        z1.clone().scale(0.5).exp() + z1.clone() * ScalarField::zbar(1),
        z1.abs_sq() * z2.clone() + z2.re(),
    ];
    let mut rng = rng_for(seed, SALT_CMP);
    let frames = sample_frames(surf, &mut rng, count)?;
    let mut worst = 0.0_f64;
    for fr in &frames {
        for f in &fields {
            let (lhs, rhs) = boundary::compare_sides(fr, f)?;
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    Ok(ResidualReport::max_residual(
        row_id("compare", label),
        "cmp",
        worst,
        tol::COMPARE,
        0,
        count,
    ))
}

/// Shape-operator spectrum of a geodesic sphere of radius `a`, ascending:
/// flat 1/a on everything; κ=−1 gives coth a on the contact distribution
/// and 2coth 2a on the Reeb direction; κ=+1 swaps to cot and 2cot 2a with
/// the Reeb eigenvalue now smallest.
pub fn sphere_spectrum(space: &SpaceForm, a: f64) -> Result<Vec<f64>, Error> {
    space.chart_radius(a)?;
    let m = space.m();
    let d = 2 * m + 1;
    let mut out = match space.kappa {
        Kappa::Flat => vec![1.0 / a; d],
        Kappa::Hyperbolic => {
            let mut v = vec![1.0 / a.tanh(); 2 * m];
            v.push(2.0 / (2.0 * a).tanh());
            v
        }
        Kappa::Projective => {
            let mut v = vec![2.0 / (2.0 * a).tan()];
            v.extend(vec![1.0 / a.tan(); 2 * m]);
            v
        }
    };
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(out)
}

/// Spectrum of the tube of radius `a` about a totally geodesic complex
/// curve in the projective space (k complex normal directions contribute
/// −tan a ×2k, the rest cot a, the Reeb direction 2cot 2a).
pub fn tube_spectrum(n: usize, a: f64) -> Vec<f64> {
    let m = n - 1;
    let k = 1usize;
    let mut v = vec![-a.tan(); 2 * k];
    v.push(2.0 / (2.0 * a).tan());
    v.extend(vec![1.0 / a.tan(); 2 * (m - k)]);
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}

/// Sampled shape spectrum against the closed form, entrywise ascending.
pub fn check_spectrum(
    surf: &Hypersurface,
    label: &str,
    expected: &[f64],
    tol: f64,
    seed: u64,
    count: usize,
) -> Result<ResidualReport, Error> {
    let mut rng = rng_for(seed, SALT_SPEC);
    let frames = sample_frames(surf, &mut rng, count)?;
    let mut worst = 0.0_f64;
    for fr in &frames {
        let got = fr.shape_spectrum();
        if got.len() != expected.len() {
            return Ok(ResidualReport::max_residual(
                row_id("spectrum", label),
                "spec",
                f64::INFINITY,
                tol,
                0,
                count,
            )
            .with_notes(format!("eigenvalue count {} vs expected {}", got.len(), expected.len())));
        }
        for (g, e) in got.iter().zip(expected.iter()) {
            worst = worst.max((g - e).abs());
        }
    }
    let listed: Vec<String> = expected.iter().map(|e| format!("{e:.9}")).collect();
    Ok(ResidualReport::max_residual(row_id("spectrum", label), "spec", worst, tol, 0, count)
        .with_notes(format!("expected [{}]", listed.join(", "))))
}

/// Minkowski formula on a closed Hopf surface:
/// 2m|Σ| = ∫ H_b ⟨∇Φ, ν⟩.
pub fn check_minkowski(
    surf: &Hypersurface,
    label: &str,
    order: usize,
    seed: u64,
) -> Result<ResidualReport, Error> {
    let hopf = hopf_residual(surf, seed, 40)?;
    if hopf > tol::HOPF {
        return Ok(ResidualReport::hypothesis_failed(
            row_id("minkowski", label),
            "MF",
            hopf,
            tol::MINKOWSKI,
            format!("surface is not Hopf: max |Pi(T, X_a)| = {hopf:.3e}"),
        ));
    }
    let n = surf.space.n;
    let space = surf.space.clone();
    let phi = space.phi_field();
    let ints = surf.integrate_vec(order, 2, |p| {
        let fr = surf.frame(&Point { c: *p })?;
        let nuphi = boundary::dir_deriv(&jet2(&phi, n, p), &fr.nu()).re;
        Ok(vec![1.0, fr.h_b() * nuphi])
    })?;
    let m = space.m() as f64;
    Ok(ResidualReport::equality(
        row_id("minkowski", label),
        "MF",
        Cx::new(2.0 * m * ints[0], 0.0),
        Cx::new(ints[1], 0.0),
        tol::MINKOWSKI,
        order,
        0,
    ))
}

fn min_sampled_hb(surf: &Hypersurface, seed: u64, count: usize) -> Result<f64, Error> {
    let mut rng = rng_for(seed, SALT_MINK + 11);
    let frames = sample_frames(surf, &mut rng, count)?;
    Ok(frames.iter().map(|fr| fr.h_b()).fold(f64::INFINITY, f64::min))
}

/// ∫ 1/H_b ≥ (m+1)/m · |Ω|, with equality on geodesic balls.
pub fn check_invhb(
    surf: &Hypersurface,
    label: &str,
    order_surface: usize,
    order_volume: usize,
    seed: u64,
) -> Result<ResidualReport, Error> {
    let hbmin = min_sampled_hb(surf, seed, 160)?;
    if hbmin <= 0.0 {
        return Ok(ResidualReport::hypothesis_failed(
            row_id("inv-hb", label),
            "invHb",
            hbmin,
            tol::INEQUALITY,
            format!("needs H_b > 0, sampled min {hbmin:.3e}"),
        ));
    }
    let lhs = surf.integrate(order_surface, |p| {
        let fr = surf.frame(&Point { c: *p })?;
        let hb = fr.h_b();
        if hb <= 0.0 {
            return Err(Error::NotApplicable("H_b changed sign on the surface".into()));
        }
        Ok(1.0 / hb)
    })?;
    let vol = surf.integrate_domain(order_volume, order_volume, |_| Ok(1.0))?;
    let m = surf.space.m() as f64;
    Ok(ResidualReport::inequality(
        row_id("inv-hb", label),
        "invHb",
        lhs,
        (m + 1.0) / m * vol,
        tol::INEQUALITY,
        order_surface,
        0,
    ))
}

/// m|Σ| ≥ c(m+1)|Ω| with c = inf H_b, equality on geodesic balls.
pub fn check_iso(
    surf: &Hypersurface,
    label: &str,
    order_surface: usize,
    order_volume: usize,
    seed: u64,
) -> Result<ResidualReport, Error> {
    let c = min_sampled_hb(surf, seed, 320)?;
    if c <= 0.0 {
        return Ok(ResidualReport::hypothesis_failed(
            row_id("iso", label),
            "iso",
            c,
            tol::INEQUALITY,
            format!("needs inf H_b > 0, sampled min {c:.3e}"),
        ));
    }
    let area = surf.integrate(order_surface, |_| Ok(1.0))?;
    let vol = surf.integrate_domain(order_volume, order_volume, |_| Ok(1.0))?;
    let m = surf.space.m() as f64;
    let mut r = ResidualReport::inequality(
        row_id("iso", label),
        "iso",
        m * area,
        c * (m + 1.0) * vol,
        tol::INEQUALITY,
        order_surface,
        0,
    );
    r.notes = format!("{}; c = inf H_b sampled over 320 directions: {c:.9}", r.notes);
    Ok(r)
}

/// Equality analysis on a geodesic ball: with F the explicit solution
/// (the distinguished potential minus its boundary value), the normal
/// derivative χ = ∂F/∂ν satisfies χ·H_b = 2m, the Levi block of Π is
/// (1/χ)·identity, and Π(T, X_α) = 0.
pub fn check_equality_case(
    space: &SpaceForm,
    a: f64,
    seed: u64,
    count: usize,
) -> Result<ResidualReport, Error> {
    let surf = Hypersurface::sphere(space, a)?;
    let phi = space.phi_field();
    let mut rng = rng_for(seed, SALT_EQC);
    let frames = sample_frames(&surf, &mut rng, count)?;
    let m = space.m();
    let (mut w_chi, mut w_levi, mut w_hopf) = (0.0_f64, 0.0_f64, 0.0_f64);
    for fr in &frames {
        let chi = boundary::dir_deriv(&jet2(&phi, space.n, &fr.p.c), &fr.nu()).re;
        w_chi = w_chi.max((chi * fr.h_b() - 2.0 * m as f64).abs());
        let (hermb, _) = fr.pi_blocks();
        for al in 0..m {
            for be in 0..m {
                let target = if al == be { 1.0 / chi } else { 0.0 };
                w_levi = w_levi.max((hermb[al][be] - Cx::new(target, 0.0)).abs());
            }
        }
        for al in 1..=m {
            w_hopf = w_hopf.max(fr.pi_t_x(al).abs());
        }
    }
    let worst = w_chi.max(w_levi).max(w_hopf);
    Ok(ResidualReport::max_residual(
        format!("equality-case-{}", space.kappa.tag()),
        "chi",
        worst,
        tol::EQUALITY_CASE,
        0,
        count,
    )
    .with_notes(format!(
        "|chi H_b - 2m| {w_chi:.3e}, Levi block vs (1/chi) delta {w_levi:.3e}, |Pi(T, X_a)| {w_hopf:.3e}"
    )))
}

fn mat_mul(a: &[[f64; 6]; 6], b: &[[f64; 6]; 6], d: usize) -> [[f64; 6]; 6] {
    let mut out = [[0.0; 6]; 6];
    for i in 0..d {
        for j in 0..d {
            let mut s = 0.0;
            for k in 0..d {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Rigidity relations on surfaces with constant principal curvatures:
/// the Codazzi-type operator identity, the characteristic root relation
/// (one distinct contact eigenvalue) or the two-root product (two distinct
/// eigenvalues), constancy of α and H_b, and the strict comparison bounds
/// in the negatively curved case.
pub fn check_rigidity(
    surf: &Hypersurface,
    label: &str,
    seed: u64,
    count: usize,
) -> Result<Vec<ResidualReport>, Error> {
    let mut rng = rng_for(seed, SALT_RIG);
    let hopf = hopf_residual(surf, seed, 30)?;
    if hopf > tol::HOPF {
        let note = format!("surface is not Hopf: max |Pi(T, X_a)| = {hopf:.3e}");
        return Ok(vec![
            ResidualReport::hypothesis_failed(row_id("rigidity-cod", label), "Cod", hopf, tol::RIGIDITY_COD, note.clone()),
            ResidualReport::hypothesis_failed(row_id("rigidity-roots", label), "qr", hopf, tol::RIGIDITY_QR, note.clone()),
            ResidualReport::hypothesis_failed(row_id("rigidity-alpha-const", label), "Cod", hopf, tol::RIGIDITY_COD, note.clone()),
            ResidualReport::hypothesis_failed(row_id("rigidity-comp", label), "comp", hopf, tol::INEQUALITY, note),
        ]);
    }
    let frames = sample_frames(surf, &mut rng, count)?;
    let kappa = surf.space.kappa.kappa();
    let m = surf.space.m();
    let d = 2 * m + 1;

    // phi matrix in the frame [T, u_1, Ju_1, ...]: phi T = 0, phi u = Ju.
    let mut phim = [[0.0; 6]; 6];
    for al in 0..m {
        phim[2 * al + 2][2 * al + 1] = 1.0;
        phim[2 * al + 1][2 * al + 2] = -1.0;
    }

    let mut w_cod = 0.0_f64;
    let mut w_roots = 0.0_f64;
    let mut root_anchor = "qr";
    let mut w_alpha = 0.0_f64;
    let mut comp_margin = f64::INFINITY;
    let mut single_root = true;
    let (alpha0, hb0) = (frames[0].alpha(), frames[0].h_b());
    for fr in &frames {
        let basis = fr.real_tangent_frame();
        let mut am = [[0.0; 6]; 6];
        for i in 0..d {
            for j in 0..d {
                am[i][j] = fr.pi(&basis[i], &basis[j]).re;
            }
        }
        for i in 0..d {
            for j in 0..i {
                let s = 0.5 * (am[i][j] + am[j][i]);
                am[i][j] = s;
                am[j][i] = s;
            }
        }
        let alpha = fr.alpha();
        w_alpha = w_alpha.max((alpha - alpha0).abs()).max((fr.h_b() - hb0).abs());

        let apa = mat_mul(&mat_mul(&am, &phim, d), &am, d);
        let ap = mat_mul(&am, &phim, d);
        let pa = mat_mul(&phim, &am, d);
        for i in 0..d {
            for j in 0..d {
                let r = apa[i][j] - 0.5 * alpha * (ap[i][j] + pa[i][j]) - kappa * phim[i][j];
                w_cod = w_cod.max(r.abs());
            }
        }

        // contact eigenvalues: drop the entry nearest alpha, cluster the rest
        let spect = fr.shape_spectrum();
        let drop = spect
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - alpha).abs().partial_cmp(&(b.1 - alpha).abs()).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        let contact: Vec<f64> =
            spect.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| *v).collect();
        let mut reps: Vec<f64> = vec![contact[0]];
        for v in &contact[1..] {
            if (v - reps.last().unwrap()).abs() > 1e-6 {
                reps.push(*v);
            }
        }
        let c = fr.h_b();
        match reps.len() {
            1 => {
                let lam = contact.iter().sum::<f64>() / contact.len() as f64;
                let lhs = lam * (c / m as f64 - lam);
                let rhs = alpha * c / (2.0 * m as f64) + kappa;
                w_roots = w_roots.max((lhs - rhs).abs());
                if surf.space.kappa == Kappa::Hyperbolic {
                    comp_margin = comp_margin.min(alpha - 2.0).min(lam - 1.0);
                }
            }
            2 => {
                single_root = false;
                root_anchor = "fundB";
                w_roots = w_roots.max((reps[0] * reps[1] + kappa).abs());
            }
            _ => {
                single_root = false;
                w_roots = f64::INFINITY;
            }
        }
    }

    let mut out = vec![
        ResidualReport::max_residual(row_id("rigidity-cod", label), "Cod", w_cod, tol::RIGIDITY_COD, 0, count),
        ResidualReport::max_residual(
            row_id("rigidity-roots", label),
            root_anchor,
            w_roots,
            if root_anchor == "qr" { tol::RIGIDITY_QR } else { tol::RIGIDITY_FUNDB },
            0,
            count,
        )
        .with_notes(if root_anchor == "qr" {
            "single contact eigenvalue: root relation".to_string()
        } else {
            "two contact eigenvalues: root product equals -kappa".to_string()
        }),
        ResidualReport::max_residual(
            row_id("rigidity-alpha-const", label),
            "Cod",
            w_alpha,
            tol::RIGIDITY_COD,
            0,
            count,
        )
        .with_notes("alpha and H_b constant across samples".to_string()),
    ];
    if surf.space.kappa == Kappa::Hyperbolic && single_root {
        out.push(ResidualReport::inequality(
            row_id("rigidity-comp", label),
            "comp",
            comp_margin,
            0.0,
            tol::INEQUALITY,
            0,
            count,
        )
        .with_notes(format!("min(alpha - 2, lambda - 1) = {comp_margin:.6}")));
    } else {
        out.push(ResidualReport::skipped(
            row_id("rigidity-comp", label),
            "comp",
            "comparison bounds stated for spheres in the negatively curved space",
        ));
    }
    Ok(out)
}

/// Holomorphy of the harmonic extension of CR boundary data on the flat
/// unit ball: max |∂̄F| over an interior grid.
pub fn check_extension_holomorphy(
    f: &ScalarField,
    label: &str,
    order: usize,
) -> Result<ResidualReport, Error> {
    let space = SpaceForm::new(Kappa::Flat, 2);
    let cr = crate::crextend::cr_residual(&space, f, 6)?;
    if cr > tol::CR_DATA {
        return Ok(ResidualReport::hypothesis_failed(
            row_id("extend-holomorphy", label),
            "ext",
            cr,
            tol::EXTEND,
            format!("boundary data is not CR: max |dbar_b f| = {cr:.3e}"),
        ));
    }
    let ext = crate::crextend::PoissonExtension::new(&space, f, order)?;
    let grid = crate::crextend::interior_grid(2, &[0.2, 0.35, 0.5]);
    let mut worst = 0.0_f64;
    for x in &grid {
        let j = ext.jet(x)?;
        worst = worst.max(jets::dbar_norm2_of_jet(&space, &j, x)?.sqrt());
    }
    Ok(ResidualReport::max_residual(
        row_id("extend-holomorphy", label),
        "ext",
        worst,
        tol::EXTEND,
        order,
        grid.len(),
    ))
}

/// Both sides of the boundary-energy identity for the harmonic extension of
/// CR data must vanish: the bulk ∂̄-energy and the weighted boundary term.
/// Evaluated on the concentric ball of radius 0.75 (the kernel quadrature
/// loses accuracy near the unit sphere).
pub fn check_energy_identity(
    f: &ScalarField,
    label: &str,
    order: usize,
) -> Result<ResidualReport, Error> {
    let space = SpaceForm::new(Kappa::Flat, 2);
    let cr = crate::crextend::cr_residual(&space, f, 6)?;
    if cr > tol::CR_DATA {
        return Ok(ResidualReport::hypothesis_failed(
            row_id("extend-energy", label),
            "ext",
            cr,
            tol::EXTEND,
            format!("boundary data is not CR: max |dbar_b f| = {cr:.3e}"),
        ));
    }
    let ext = crate::crextend::PoissonExtension::new(&space, f, order)?;
    let (vol, bnd) = crate::crextend::energy_sides(&space, &ext, 0.75, 8, 6)?;
    let worst = vol.abs().max(bnd.abs());
    let status = if worst <= tol::EXTEND { CheckStatus::Pass } else { CheckStatus::Fail };
    Ok(ResidualReport {
        check_id: row_id("extend-energy", label),
        anchor: "ext".into(),
        lhs: [vol, 0.0],
        rhs: [bnd, 0.0],
        abs_residual: worst,
        rel_residual: worst,
        tolerance: tol::EXTEND,
        status,
        order,
        samples: 0,
        notes: "both sides must vanish for CR data; inner ball radius 0.75".into(),
        kind: CheckKind::MaxResidual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat() -> SpaceForm {
        SpaceForm::new(Kappa::Flat, 2)
    }
    fn ch() -> SpaceForm {
        SpaceForm::new(Kappa::Hyperbolic, 2)
    }
    fn cp() -> SpaceForm {
        SpaceForm::new(Kappa::Projective, 2)
    }

    #[test]
    fn report_constructors_set_status_and_residuals() {
        let r = ResidualReport::equality("a", "id", Cx::new(1.0, 0.0), Cx::new(1.0 + 1e-7, 0.0), 1e-5, 8, 0);
        assert!(r.passed() && (r.rel_residual - 1e-7).abs() < 1e-9);
        let r = ResidualReport::equality("a", "id", Cx::new(1.0, 0.0), Cx::new(1.1, 0.0), 1e-5, 8, 0);
        assert!(r.failed());
        // both sides at roundoff: absolute floor applies
        let r = ResidualReport::equality("a", "id", Cx::new(1e-13, 0.0), Cx::new(-2e-13, 0.0), 1e-5, 8, 0);
        assert!(r.passed());
        let r = ResidualReport::inequality("b", "iso", 2.0, 1.0, 1e-6, 8, 0);
        assert!(r.passed() && !r.notes.contains("equality"));
        let r = ResidualReport::inequality("b", "iso", 1.0, 1.0 + 1e-8, 1e-6, 8, 0);
        assert!(r.passed() && r.notes.contains("equality"));
        let r = ResidualReport::inequality("b", "iso", 1.0, 1.1, 1e-6, 8, 0);
        assert!(r.failed());
        assert_eq!(
            serde_json::to_string(&CheckStatus::HypothesisFailed).unwrap(),
            "\"hypothesis-failed\""
        );
    }

    #[test]
    fn battery_has_twelve_distinct_fields() {
        let b = field_battery(2);
        assert_eq!(b.len(), 12);
        let mut tags: Vec<&str> = b.iter().map(|(t, _)| *t).collect();
        tags.sort_unstable();
        tags.dedup();
        assert_eq!(tags.len(), 12);
    }

    #[test]
    fn main_identity_matches_on_flat_and_curved_balls() {
        // both sides of this one vanish identically (□F and D¹˒¹F have equal
        // norms pointwise), so the absolute floor is the relevant criterion
        let surf = Hypersurface::sphere(&flat(), 1.0).unwrap();
        let f = ScalarField::z(0).abs_sq() + ScalarField::z(1).re();
        let r = check_main_identity(&surf, "", "mixed", &f, 10, 8).unwrap();
        assert!(r.passed() && r.abs_residual <= 1e-9, "flat: {r:?}");

        let surf = Hypersurface::sphere(&ch(), 0.5).unwrap();
        let f = ScalarField::z(0) * ScalarField::zbar(1) + ScalarField::z(1);
        let r = check_main_identity(&surf, "", "mixed", &f, 10, 8).unwrap();
        assert!(r.passed() && r.rel_residual <= 1e-6, "ch: {r:?}");
    }

    #[test]
    fn main_identity_battery_passes_on_a_projective_ball() {
        let surf = Hypersurface::sphere(&cp(), 0.5).unwrap();
        let reports = main_identity_battery(&surf, "cp", 10, 8).unwrap();
        assert_eq!(reports.len(), 12);
        for r in &reports {
            assert!(r.passed(), "{}: rel {:.3e} abs {:.3e}", r.check_id, r.rel_residual, r.abs_residual);
        }
    }

    #[test]
    fn doubling_the_order_sharpens_the_identity_residual() {
        let surf = Hypersurface::sphere(&ch(), 0.6).unwrap();
        let f = ScalarField::z(0).scale(0.5).exp() + ScalarField::zbar(1) * ScalarField::zbar(1);
        let coarse = check_main_identity(&surf, "", "exp", &f, 4, 4).unwrap();
        let fine = check_main_identity(&surf, "", "exp", &f, 8, 8).unwrap();
        assert!(
            fine.abs_residual <= coarse.abs_residual / 10.0 || fine.abs_residual < 1e-10,
            "coarse {:.3e} fine {:.3e}",
            coarse.abs_residual,
            fine.abs_residual
        );
    }

    #[test]
    fn curvature_and_potential_normalizations_hold_everywhere() {
        for sp in [flat(), ch(), cp()] {
            let r = check_curvature(&sp, 7, 20).unwrap();
            assert!(r.passed(), "{}: {:.3e}", r.check_id, r.abs_residual);
            let r = check_potential(&sp, 7, 100).unwrap();
            assert!(r.passed(), "{}: {}", r.check_id, r.notes);
        }
    }

    #[test]
    fn radial_hessian_eigenvalues_match_closed_forms() {
        let r = check_hessian_radial(3, 20).unwrap();
        assert!(r.passed(), "{:.3e}", r.abs_residual);
        // closed-form spot values at r = 0.5
        assert!((2.0 / 1.0_f64.tanh() - 2.6260713) .abs() < 1e-6);
        assert!((1.0 / 0.5_f64.tanh() - 2.1639534).abs() < 1e-6);
    }

    #[test]
    fn reeb_divergence_duality_and_compare_on_an_ellipsoid() {
        let surf = Hypersurface::ellipsoid(&flat(), &[1.0, 1.0 / 1.44]).unwrap();
        let r = check_div_t(&surf, "ell", 5, 40).unwrap();
        assert!(r.passed(), "div-t {:.3e}", r.abs_residual);
        let r = check_duality(&surf, "ell", 5, 4, 12).unwrap();
        assert!(r.passed(), "duality {:.3e}", r.rel_residual);
        let r = check_compare(&surf, "ell", 5, 25).unwrap();
        assert!(r.passed(), "compare {:.3e}", r.abs_residual);
    }

    #[test]
    fn sphere_and_tube_spectra_match_their_closed_forms() {
        let a = 0.5;
        let r = check_spectrum(
            &Hypersurface::sphere(&ch(), a).unwrap(),
            "ch",
            &sphere_spectrum(&ch(), a).unwrap(),
            tol::SPECTRUM,
            11,
            6,
        )
        .unwrap();
        assert!(r.passed(), "ch sphere {:.3e}", r.abs_residual);

        let r = check_spectrum(
            &Hypersurface::tube(&cp(), 0.4).unwrap(),
            "tube",
            &tube_spectrum(2, 0.4),
            tol::SPECTRUM_TUBE,
            11,
            6,
        )
        .unwrap();
        assert!(r.passed(), "tube n=2 {:.3e}", r.abs_residual);

        let cp3 = SpaceForm::new(Kappa::Projective, 3);
        let r = check_spectrum(
            &Hypersurface::tube(&cp3, 0.4).unwrap(),
            "tube3",
            &tube_spectrum(3, 0.4),
            tol::SPECTRUM_TUBE,
            11,
            4,
        )
        .unwrap();
        assert!(r.passed(), "tube n=3 {:.3e}", r.abs_residual);
    }

    #[test]
    fn minkowski_holds_on_spheres_and_reports_failed_hypothesis_otherwise() {
        for (sp, a) in [(flat(), 1.0), (ch(), 0.5), (cp(), std::f64::consts::FRAC_PI_6)] {
            let surf = Hypersurface::sphere(&sp, a).unwrap();
            let r = check_minkowski(&surf, sp.kappa.tag(), 10, 2).unwrap();
            assert!(r.passed(), "{}: rel {:.3e}", r.check_id, r.rel_residual);
        }
        let surf = Hypersurface::perturbed_sphere(&ch(), 0.6, 0.15).unwrap();
        let r = check_minkowski(&surf, "pert", 10, 2).unwrap();
        assert_eq!(r.status, CheckStatus::HypothesisFailed, "{:?}", r);
    }

    #[test]
    fn inequalities_reach_equality_on_balls_and_stay_strict_on_ellipsoids() {
        // flat unit ball: both sides equal pi^2 for the inverse-H_b bound
        let surf = Hypersurface::sphere(&flat(), 1.0).unwrap();
        let r = check_invhb(&surf, "flat", 10, 8, 2).unwrap();
        assert!(r.passed() && r.notes.contains("equality"), "{:?}", r);
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        assert!((r.lhs[0] - pi2).abs() < 1e-8 && (r.rhs[0] - pi2).abs() < 1e-8);
        let r = check_iso(&surf, "flat", 10, 8, 2).unwrap();
        assert!(r.passed() && r.notes.contains("equality"), "{:?}", r);
        assert!((r.lhs[0] - 2.0 * pi2).abs() < 1e-8);

        let surf = Hypersurface::sphere(&ch(), 0.7).unwrap();
        let r = check_invhb(&surf, "ch", 10, 8, 2).unwrap();
        assert!(r.passed() && r.notes.contains("equality"), "{:?}", r);

        let surf = Hypersurface::ellipsoid(&flat(), &[1.0, 1.0 / 1.44]).unwrap();
        let r = check_invhb(&surf, "ell", 12, 10, 2).unwrap();
        assert!(r.passed() && !r.notes.contains("equality"), "{:?}", r);
        assert!(r.lhs[0] - r.rhs[0] > 1e-3, "margin too thin: {:?}", r);
        let r = check_iso(&surf, "ell", 12, 10, 2).unwrap();
        assert!(r.passed() && r.lhs[0] - r.rhs[0] > 1e-3, "{:?}", r);
    }

    #[test]
    fn equality_case_lemma_holds_on_balls_in_every_space() {
        for (sp, a) in [(flat(), 0.8), (ch(), 0.5), (cp(), 0.5)] {
            let r = check_equality_case(&sp, a, 4, 12).unwrap();
            assert!(r.passed(), "{}: {}", r.check_id, r.notes);
        }
    }

    #[test]
    fn rigidity_chain_on_spheres_and_tubes() {
        let surf = Hypersurface::sphere(&ch(), 0.5).unwrap();
        let rs = check_rigidity(&surf, "ch", 6, 10).unwrap();
        assert_eq!(rs.len(), 4);
        for r in &rs {
            assert!(r.passed(), "{}: {:.3e} {}", r.check_id, r.abs_residual, r.notes);
        }
        assert_eq!(rs[1].anchor, "qr");
        // comparison bounds are strict: alpha = 2coth(1), lambda = coth(0.5)
        assert!(rs[3].lhs[0] > 0.1);

        let cp3 = SpaceForm::new(Kappa::Projective, 3);
        let surf = Hypersurface::tube(&cp3, 0.4).unwrap();
        let rs = check_rigidity(&surf, "tube3", 6, 8).unwrap();
        assert_eq!(rs[1].anchor, "fundB");
        for r in rs.iter().take(3) {
            assert!(r.passed(), "{}: {:.3e} {}", r.check_id, r.abs_residual, r.notes);
        }
        assert_eq!(rs[3].status, CheckStatus::Skipped);

        let surf = Hypersurface::tube(&cp(), 0.4).unwrap();
        let rs = check_rigidity(&surf, "tube2", 6, 8).unwrap();
        assert_eq!(rs[1].anchor, "qr", "single contact eigenvalue on the n=2 tube");
        for r in rs.iter().take(3) {
            assert!(r.passed(), "{}: {:.3e} {}", r.check_id, r.abs_residual, r.notes);
        }

        let surf = Hypersurface::perturbed_sphere(&ch(), 0.6, 0.15).unwrap();
        let rs = check_rigidity(&surf, "pert", 6, 6).unwrap();
        assert!(rs.iter().all(|r| r.status == CheckStatus::HypothesisFailed));
    }

    #[test]
    fn extension_rows_pass_for_cr_data_and_flag_the_control() {
        let f = ScalarField::z(0) * ScalarField::z(0) * ScalarField::z(1);
        let r = check_extension_holomorphy(&f, "z1sq-z2", 32).unwrap();
        assert!(r.passed(), "{:.3e}", r.abs_residual);
        let r = check_energy_identity(&f, "z1sq-z2", 24).unwrap();
        assert!(r.passed(), "vol {:.3e} bnd {:.3e}", r.lhs[0], r.rhs[0]);

        let control = ScalarField::zbar(0);
        let r = check_extension_holomorphy(&control, "z1bar", 32).unwrap();
        assert_eq!(r.status, CheckStatus::HypothesisFailed);
        assert!(r.abs_residual > 0.5, "control must report an order-one residual");
        let r = check_energy_identity(&control, "z1bar", 24).unwrap();
        assert_eq!(r.status, CheckStatus::HypothesisFailed);
    }
}
