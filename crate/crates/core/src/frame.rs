//! Pointwise spectral data for the linearized reaction-zone system
//! θ' = (ε Φ₀ + Φ₁) θ: the branch-tracked square root s, the eigenvalues
//! μ₁..μ₅ and eigenvector transform T, the coefficient matrices, the diagonal
//! corrections E₁₁/E₂₂, frequency classification, and turning points.

use crate::linalg::{czero, Mat5};
use crate::profile::{PointData, Profile, Ptype};
use crate::{C64, Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FreqClass {
    I,
    II,
    IIIPlus,
    IIIMinus,
}

impl FreqClass {
    pub fn is_class_iii(self) -> bool {
        matches!(self, FreqClass::IIIPlus | FreqClass::IIIMinus)
    }
}

/// τ = ζ ε + ν with the class tag evaluated against a profile.
#[derive(Clone, Copy, Debug)]
pub struct Frequency {
    pub zeta: C64,
    pub nu: C64,
    pub eps: f64,
    pub tau: C64,
    pub fclass: FreqClass,
}

impl Frequency {
    pub fn new(zeta: C64, nu: C64, eps: f64, profile: &Profile) -> Result<Frequency> {
        if !(eps > 0.0) {
            return Err(Error::domain("eps must be positive"));
        }
        let fclass = classify_zeta(zeta, profile)?;
        Ok(Frequency { zeta, nu, eps, tau: zeta * eps + nu, fclass })
    }
}

/// Frequency class from the profile ranges: purely imaginary ζ inside the
/// c₀η^{1/2} range is Class III, real ζ inside the u range is Class II,
/// everything else with Re ζ ≥ 0 is Class I.
pub fn classify_zeta(zeta: C64, profile: &Profile) -> Result<FreqClass> {
    if zeta.re < -1e-14 * (1.0 + zeta.norm()) {
        return Err(Error::domain(format!("Re zeta must be nonnegative, got {zeta}")));
    }
    let axis_tol = 1e-13 * (1.0 + zeta.norm());
    if zeta.re.abs() <= axis_tol && zeta.im.abs() > 0.0 {
        let (lo, hi) = profile.c0_eta_sqrt_range()?;
        let zi = zeta.im.abs();
        if zi >= lo && zi <= hi {
            return Ok(if zeta.im > 0.0 { FreqClass::IIIPlus } else { FreqClass::IIIMinus });
        }
    }
    if zeta.im.abs() <= axis_tol {
        let (lo, hi) = profile.u_range()?;
        if zeta.re >= lo && zeta.re <= hi {
            return Ok(FreqClass::II);
        }
    }
    Ok(FreqClass::I)
}

/// Branch-tracked s = sqrt(ζ² + c₀²η). `sheet` counts sign flips away from the
/// on-axis determination (cut on [-i c₀ sqrt(η), i c₀ sqrt(η)]).
#[derive(Clone, Copy, Debug)]
pub struct BranchedS {
    pub value: C64,
    pub sheet: i32,
}

/// On-axis determination: positive root when ζ² + c₀²η > 0, and ±i|s| for
/// ζ = ±i|ζ| when ζ² + c₀²η < 0. Off the imaginary axis this is the branch
/// cut along the imaginary segment, i.e. s ~ +ζ for large |ζ|.
pub fn s_on_axis(zeta: C64, c0_sq_eta: f64) -> C64 {
    let axis_tol = 1e-13 * (1.0 + zeta.norm());
    if zeta.re.abs() <= axis_tol {
        let w = c0_sq_eta - zeta.im * zeta.im;
        if w >= 0.0 {
            return C64::new(w.sqrt(), 0.0);
        }
        let mag = (-w).sqrt();
        return if zeta.im >= 0.0 { C64::new(0.0, mag) } else { C64::new(0.0, -mag) };
    }
    if zeta.norm_sqr() > 1e-30 {
        zeta * (C64::new(1.0, 0.0) + C64::new(c0_sq_eta, 0.0) / (zeta * zeta)).sqrt()
    } else {
        C64::new(c0_sq_eta, 0.0).sqrt()
    }
}

/// Principal branched value at a real position with no continuation context.
pub fn s_branch(zeta: C64, c0_sq_eta: f64) -> BranchedS {
    BranchedS { value: s_on_axis(zeta, c0_sq_eta), sheet: 0 }
}

/// Continue s through w = ζ² + c₀²η by continuity with the previous value;
/// flips the sheet parity when the principal determination is abandoned.
pub fn s_continue(prev: &BranchedS, zeta: C64, c0_sq_eta: C64) -> Result<BranchedS> {
    let w = zeta * zeta + c0_sq_eta;
    let root = w.sqrt();
    if root.norm() == 0.0 {
        return Err(Error::Branch(format!("s vanishes at continuation point (zeta = {zeta})")));
    }
    let keep = (root - prev.value).norm() <= (-root - prev.value).norm();
    let value = if keep { root } else { -root };
    // Sheet relative to the on-axis rule only makes sense near the real axis;
    // track parity against the principal square root instead.
    let flipped = (value + root).norm() < (value - root).norm();
    let sheet = if flipped { prev.sheet | 1 } else { prev.sheet & !1 };
    Ok(BranchedS { value, sheet })
}

/// The frame at one point: eigenvalues, transform, diagonal corrections.
#[derive(Clone, Debug)]
pub struct ModeFrame {
    pub s: C64,
    pub mu: [C64; 5],
    pub t_mat: Mat5,
    pub e11: C64,
    pub e22: C64,
    pub kappa: f64,
    pub eta: f64,
    pub m: f64,
    /// Set when |s| or |ζ - u| is below tolerance; callers should detour.
    pub near_singular: bool,
}

fn cx(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Eigenvalues of Φ₀ at a point: μ₁ = -κ(κζ+s)/(ηu), μ₂ = -κ(κζ-s)/(ηu),
/// μ₃ = μ₄ = μ₅ = ζ/u.
pub fn eigenvalues_mu(pt: &PointData<C64>, zeta: C64, s: C64) -> [C64; 5] {
    let kappa = pt.kappa;
    let f = -kappa / (pt.eta * pt.u);
    let mu1 = f * (kappa * zeta + s);
    let mu2 = f * (kappa * zeta - s);
    let mu3 = zeta / pt.u;
    [mu1, mu2, mu3, mu3, mu3]
}

/// Eigenvector transform T(x, ζ); columns follow the μ ordering.
pub fn transform_t(pt: &PointData<C64>, zeta: C64, s: C64) -> Mat5 {
    let m = cx(pt.m);
    let u = pt.u;
    let kappa = pt.kappa;
    let one_m_eta = cx(1.0) - pt.eta;
    let i = C64::new(0.0, 1.0);
    let p_s = pt.thermo.p_s;
    let p_l = pt.thermo.p_lambda;
    let c1 = m * s / (kappa * u);
    let c4 = kappa * p_s * s / (u * m);
    let c5 = kappa * p_l * s / (u * m);
    Mat5([
        [c1, -c1, -i * m / one_m_eta, czero(), czero()],
        [zeta / u, zeta / u, i, czero(), czero()],
        [-i, -i, zeta / u, czero(), czero()],
        [-c4, c4, czero(), cx(1.0), czero()],
        [-c5, c5, czero(), czero(), cx(1.0)],
    ])
}

/// Diagonal correction E₁₁ of the diagonalized system. E₂₂ is the same
/// expression with s replaced by -s.
pub fn e11(pt: &PointData<C64>, zeta: C64, nu: C64, s: C64) -> C64 {
    let u = pt.u;
    let v = pt.v;
    let t = pt.thermo.t;
    let eta = pt.eta;
    let kappa = pt.kappa;
    let one_m_eta = cx(1.0) - eta;
    let p_s = pt.thermo.p_s;
    let sig = pt.thermo.sigma;
    let r = pt.rates.r;
    let r_v = pt.rates.r_v;
    let eta_x = pt.d.eta;
    let s_sq_x = pt.d.c0_sq_eta; // (s²)' = (ζ² + c₀²η)'
    let two_nu_vr = nu * 2.0 + v * sig * r_v;

    -one_m_eta * v * p_s * sig * r / (t * eta * u * 2.0)
        - one_m_eta / (eta * u * 2.0) * two_nu_vr
        + (cx(2.0) - eta) / (eta * one_m_eta * 4.0) * eta_x
        + kappa * zeta / (eta * s * 2.0)
            * (eta_x / one_m_eta - v * p_s * sig * r / (t * u) - two_nu_vr / u)
        + (kappa * zeta + s) / (zeta + kappa * s) * zeta / (eta * u * s) * sig * r
        - s_sq_x / (s * s * 4.0)
}

/// Assemble the full frame at a real position.
pub fn mode_frame(x: f64, zeta: C64, nu: C64, profile: &Profile) -> Result<ModeFrame> {
    let pt = profile.point(x)?.into_c64();
    let s = s_on_axis(zeta, (pt.thermo.c0_sq - pt.u * pt.u).re);
    Ok(mode_frame_at(&pt, zeta, nu, s))
}

/// Frame from an explicit point bundle and branch value (continuation path
/// context supplies `s` off the principal determination).
pub fn mode_frame_at(pt: &PointData<C64>, zeta: C64, nu: C64, s: C64) -> ModeFrame {
    let tol = 1e-8 * (1.0 + zeta.norm());
    let near_singular = s.norm() < tol || (zeta - pt.u).norm() < tol;
    ModeFrame {
        s,
        mu: eigenvalues_mu(pt, zeta, s),
        t_mat: transform_t(pt, zeta, s),
        e11: e11(pt, zeta, nu, s),
        e22: e11(pt, zeta, nu, -s),
        kappa: pt.kappa.re,
        eta: pt.eta.re,
        m: pt.m,
        near_singular,
    }
}

impl PointData<f64> {
    pub fn into_c64(self) -> PointData<C64> {
        PointData {
            v: cx(self.v),
            u: cx(self.u),
            s: cx(self.s),
            lam: cx(self.lam),
            thermo: crate::eos::ThermoBundle {
                p: cx(self.thermo.p),
                t: cx(self.thermo.t),
                c0_sq: cx(self.thermo.c0_sq),
                p_v: cx(self.thermo.p_v),
                p_s: cx(self.thermo.p_s),
                p_lambda: cx(self.thermo.p_lambda),
                sigma: cx(self.thermo.sigma),
                delta_f: cx(self.thermo.delta_f),
                e: cx(self.thermo.e),
            },
            rates: crate::eos::RateBundle {
                r: cx(self.rates.r),
                r_v: cx(self.rates.r_v),
                r_s: cx(self.rates.r_s),
                r_lambda: cx(self.rates.r_lambda),
            },
            sources: crate::eos::SourceBundle {
                phi: cx(self.sources.phi),
                phi_v: cx(self.sources.phi_v),
                phi_s: cx(self.sources.phi_s),
                phi_lambda: cx(self.sources.phi_lambda),
            },
            eta: cx(self.eta),
            kappa: cx(self.kappa),
            m: self.m,
            d: crate::profile::ProfileDerivs {
                v: cx(self.d.v),
                u: cx(self.d.u),
                s: cx(self.d.s),
                lam: cx(self.d.lam),
                p: cx(self.d.p),
                t: cx(self.d.t),
                c0_sq: cx(self.d.c0_sq),
                c0_sq_eta: cx(self.d.c0_sq_eta),
                eta: cx(self.d.eta),
                p_s: cx(self.d.p_s),
                p_lambda: cx(self.d.p_lambda),
                c0_over_v2: cx(self.d.c0_over_v2),
            },
        }
    }
}

/// Coefficient matrices of the reduced linearized system.
pub fn matrix_a_x(pt: &PointData<C64>) -> Mat5 {
    let v = pt.v;
    let u = pt.u;
    let th = &pt.thermo;
    Mat5([
        [u, -v, czero(), czero(), czero()],
        [v * th.p_v, u, czero(), v * th.p_s, v * th.p_lambda],
        [czero(), czero(), u, czero(), czero()],
        [czero(), czero(), czero(), u, czero()],
        [czero(), czero(), czero(), czero(), u],
    ])
}

pub fn matrix_a_y(pt: &PointData<C64>) -> Mat5 {
    let v = pt.v;
    let th = &pt.thermo;
    Mat5([
        [czero(), czero(), -v, czero(), czero()],
        [czero(), czero(), czero(), czero(), czero()],
        [v * th.p_v, czero(), czero(), v * th.p_s, v * th.p_lambda],
        [czero(), czero(), czero(), czero(), czero()],
        [czero(), czero(), czero(), czero(), czero()],
    ])
}

pub fn matrix_b(pt: &PointData<C64>) -> Mat5 {
    let v = pt.v;
    let d = &pt.d;
    let src = &pt.sources;
    let rt = &pt.rates;
    Mat5([
        [-d.u, d.v, czero(), czero(), czero()],
        [d.p - v * d.c0_over_v2, d.u, czero(), v * d.p_s, v * d.p_lambda],
        [czero(), czero(), czero(), czero(), czero()],
        [-src.phi_v, d.s, czero(), -src.phi_s, -src.phi_lambda],
        [-rt.r_v, d.lam, czero(), -rt.r_s, -rt.r_lambda],
    ])
}

/// Φ₀ = {A_x⁻¹ (ζ I + i A_y)}ᵗ and Φ₁ = {A_x⁻¹ ν}ᵗ + {A_x⁻¹ B}ᵗ.
pub fn assemble_phi(pt: &PointData<C64>, zeta: C64, nu: C64) -> Result<(Mat5, Mat5)> {
    let ax = matrix_a_x(pt);
    let ax_inv = ax.inverse().ok_or_else(|| {
        Error::domain("A_x singular (sonic point or stagnation); cannot assemble system")
    })?;
    let ay = matrix_a_y(pt);
    let i = C64::new(0.0, 1.0);
    let mut zi_iay = ay.scale(i);
    for k in 0..5 {
        zi_iay.0[k][k] += zeta;
    }
    let phi0 = ax_inv.matmul(&zi_iay).transpose();
    let b = matrix_b(pt);
    let phi1 = ax_inv.scale(nu).transpose().add(&ax_inv.matmul(&b).transpose());
    Ok((phi0, phi1))
}

/// Entrywise closed form of Φ₀; independent of the assembled route.
pub fn phi0_explicit(pt: &PointData<C64>, zeta: C64) -> Mat5 {
    let u = pt.u;
    let eta = pt.eta;
    let m = cx(pt.m);
    let one_m_eta = cx(1.0) - eta;
    let i = C64::new(0.0, 1.0);
    let p_s = pt.thermo.p_s;
    let p_l = pt.thermo.p_lambda;
    let zu = zeta / u;
    Mat5([
        [-one_m_eta * zeta / (eta * u), -m * zeta / (eta * u), -i * m / one_m_eta, czero(), czero()],
        [-one_m_eta * zeta / (eta * m * u), -one_m_eta * zeta / (eta * u), czero(), czero(), czero()],
        [i * one_m_eta / (eta * m), i / eta, zu, czero(), czero()],
        [one_m_eta * p_s * zeta / (eta * m * m * u), one_m_eta * p_s * zeta / (eta * m * u), i * p_s / m, zu, czero()],
        [one_m_eta * p_l * zeta / (eta * m * m * u), one_m_eta * p_l * zeta / (eta * m * u), i * p_l / m, czero(), zu],
    ])
}

/// ε Φ₀ + Φ₁ at a real position.
pub fn system_matrix(x: f64, zeta: C64, nu: C64, eps: f64, profile: &Profile) -> Result<Mat5> {
    let pt = profile.point(x)?.into_c64();
    let (phi0, phi1) = assemble_phi(&pt, zeta, nu)?;
    Ok(phi0.scale(cx(eps)).add(&phi1))
}

/// Numerical E = T⁻¹ Φ₁ T - T⁻¹ dT/dx on the real axis (central difference
/// for dT/dx); the full matrix, not just the diagonal.
pub fn e_matrix_fd(x: f64, zeta: C64, nu: C64, profile: &Profile) -> Result<Mat5> {
    let pt = profile.point(x)?.into_c64();
    let s = s_on_axis(zeta, (pt.thermo.c0_sq - pt.u * pt.u).re);
    let t_mat = transform_t(&pt, zeta, s);
    let t_inv = t_mat.inverse().ok_or_else(|| Error::Branch("T singular".into()))?;
    let (_, phi1) = assemble_phi(&pt, zeta, nu)?;
    let h = 1e-6 * (1.0 + x.abs());
    let tp = {
        let p1 = profile.point(x + h)?.into_c64();
        let s1 = s_on_axis(zeta, (p1.thermo.c0_sq - p1.u * p1.u).re);
        let p0 = profile.point((x - h).max(0.0))?.into_c64();
        let s0 = s_on_axis(zeta, (p0.thermo.c0_sq - p0.u * p0.u).re);
        let span = h + x.min(h);
        transform_t(&p1, zeta, s1).sub(&transform_t(&p0, zeta, s0)).scale(cx(1.0 / span))
    };
    Ok(t_inv.matmul(&phi1).matmul(&t_mat).sub(&t_inv.matmul(&tp)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TurningKind {
    Increasing,
    Decreasing,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TurningPoint {
    pub x_star: f64,
    /// d(c₀²η)/dx at the turning point.
    pub d: f64,
    pub kind: TurningKind,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TurningPointSet {
    /// Sorted decreasing: the rightmost turning point first.
    pub points: Vec<TurningPoint>,
}

/// All real roots of c₀²η(x) = ζ_i² on (0, X_max), bracketed on monotone
/// segments (split at x_M for single-maximum profiles) and polished by
/// bisection plus a Newton step on the analytic derivative.
pub fn find_turning_points(zeta_i: f64, profile: &Profile) -> Result<TurningPointSet> {
    let target = zeta_i * zeta_i;
    let f = |x: f64| -> Result<f64> { Ok(profile.c0_sq_eta(x)? - target) };
    let mut segments: Vec<(f64, f64)> = Vec::new();
    match (profile.ptype, profile.x_m) {
        (Ptype::M, Some(x_m)) => {
            segments.push((0.0, x_m));
            segments.push((x_m, profile.x_max));
        }
        _ => segments.push((0.0, profile.x_max)),
    }
    let mut points = Vec::new();
    for (a, b) in segments {
        // Bracket by scanning; monotone segments have at most one root but the
        // scan also covers unclassified profiles.
        let n = 600;
        let mut xa = a;
        let mut fa = f(xa)?;
        for i in 1..=n {
            let xb = a + (b - a) * i as f64 / n as f64;
            let fb = f(xb)?;
            if fa == 0.0 {
                // exact hit; treat as root at xa
            }
            if fa * fb < 0.0 {
                let mut lo = xa;
                let mut hi = xb;
                let mut flo = fa;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid)?;
                    if flo * fm <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                let mut x_star = 0.5 * (lo + hi);
                // Newton polish against the analytic derivative.
                for _ in 0..4 {
                    let pt = profile.point(x_star)?;
                    let d = pt.d.c0_sq_eta;
                    if d.abs() < 1e-14 {
                        break;
                    }
                    let val = Profile::c0_sq_eta_of_state(&pt) - target;
                    let next = x_star - val / d;
                    if next > lo - (hi - lo) && next < hi + (hi - lo) && next > 0.0 {
                        x_star = next;
                    } else {
                        break;
                    }
                }
                let d = profile.point(x_star)?.d.c0_sq_eta;
                points.push(TurningPoint {
                    x_star,
                    d,
                    kind: if d > 0.0 { TurningKind::Increasing } else { TurningKind::Decreasing },
                });
            }
            xa = xb;
            fa = fb;
        }
    }
    points.sort_by(|p, q| q.x_star.total_cmp(&p.x_star));
    points.dedup_by(|p, q| (p.x_star - q.x_star).abs() < 1e-9 * (1.0 + profile.x_max));
    Ok(TurningPointSet { points })
}

/// Minimum eigenvalue separation min_{x in [x_lo, X_max], j >= 2}
/// |μ₁ - μ_j| at the shifted frequency ζ + ν/ε. Returns 0 when the
/// separation collapses (e.g. across a turning point).
pub fn eigen_separation(zeta: C64, nu: C64, eps: f64, profile: &Profile, x_lo: f64) -> Result<f64> {
    let zt = zeta + nu / eps;
    let mut c_sep = f64::INFINITY;
    let n = 600;
    for i in 0..=n {
        let x = x_lo + (profile.x_max - x_lo) * i as f64 / n as f64;
        let pt = profile.point(x)?.into_c64();
        let s = s_on_axis(zt, (pt.thermo.c0_sq - pt.u * pt.u).re);
        let mu = eigenvalues_mu(&pt, zt, s);
        for j in 1..5 {
            c_sep = c_sep.min((mu[0] - mu[j]).norm());
        }
    }
    Ok(c_sep)
}

/// CSV rows (x, Re μ_i, Im μ_i for i = 1..5) for plotting.
pub fn mu_csv(profile: &Profile, zeta: C64, n: usize) -> Result<String> {
    let mut out = String::from("x,re_mu1,im_mu1,re_mu2,im_mu2,re_mu3,im_mu3,re_mu4,im_mu4,re_mu5,im_mu5\n");
    for i in 0..=n {
        let x = profile.x_max * i as f64 / n as f64;
        let frame = mode_frame(x, zeta, czero(), profile)?;
        out.push_str(&format!("{x:.12e}"));
        for j in 0..5 {
            out.push_str(&format!(",{:.12e},{:.12e}", frame.mu[j].re, frame.mu[j].im));
        }
        out.push('\n');
    }
    Ok(out)
}
