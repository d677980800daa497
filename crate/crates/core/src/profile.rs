//! Steady strong-detonation profiles.
//!
//! Construction uses the algebraic route: the three steady conservation laws
//! (mass flux m = u/v, momentum p + m²v, total enthalpy e + pv + u²/2) close
//! the gas state as a two-root quadratic in v at each reactant fraction λ, and
//! only the scalar ODE dλ/dx = r/u is integrated. Conservation therefore holds
//! to rounding at every evaluation point, on and off the real axis.

use crate::eos::{
    self, rate_with_thermo, source_with, EosModel, RateBundle, Scalar, SourceBundle, ThermoBundle,
};
use crate::ode::{dopri5, OdeOptions, Trajectory};
use crate::{C64, Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GasState {
    pub v: f64,
    pub u: f64,
    pub s: f64,
    pub lam: f64,
}

/// Steady conserved quantities shared by the whole wave.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Conserved {
    /// Mass flux m = u/v.
    pub m: f64,
    /// p + m² v.
    pub p_tot: f64,
    /// e + p v + u²/2.
    pub h_tot: f64,
}

/// Algebraic closure: given λ, the subsonic state solves
/// a v² + b v + c(λ) = 0 with a, b fixed by the conserved quantities.
#[derive(Clone, Copy, Debug)]
pub struct Closure {
    pub cons: Conserved,
    pub model: EosModel,
    a: f64,
    b: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ptype {
    I,
    D,
    M,
    Other,
}

/// Everything the linearized systems need at one point, in one place.
/// `T` is f64 on the real axis and Complex64 along continuation contours.
#[derive(Clone, Copy, Debug)]
pub struct PointData<T> {
    pub v: T,
    pub u: T,
    pub s: T,
    pub lam: T,
    pub thermo: ThermoBundle<T>,
    pub rates: RateBundle<T>,
    pub sources: SourceBundle<T>,
    /// 1 - u²/c₀².
    pub eta: T,
    /// u/c₀ = sqrt(1 - η).
    pub kappa: T,
    /// Mass flux (real constant).
    pub m: f64,
    /// x-derivatives along the profile.
    pub d: ProfileDerivs<T>,
}

#[derive(Clone, Copy, Debug)]
pub struct ProfileDerivs<T> {
    pub v: T,
    pub u: T,
    pub s: T,
    pub lam: T,
    pub p: T,
    pub t: T,
    pub c0_sq: T,
    /// d(c₀² - u²)/dx; its sign pattern classifies the profile.
    pub c0_sq_eta: T,
    /// dη/dx.
    pub eta: T,
    pub p_s: T,
    pub p_lambda: T,
    /// d(c₀²/v²)/dx = γ d(p/v)/dx.
    pub c0_over_v2: T,
}

impl Closure {
    pub fn new(state: &GasState, model: &EosModel) -> Result<Self> {
        let th = eos::eos_eval(state.v, state.s, state.lam, model)?;
        let m = state.u / state.v;
        let cons = Conserved {
            m,
            p_tot: th.p + m * m * state.v,
            h_tot: th.e + th.p * state.v + 0.5 * state.u * state.u,
        };
        let gm1 = model.gamma - 1.0;
        Ok(Closure {
            cons,
            model: *model,
            a: -m * m * (model.gamma + 1.0) / (2.0 * gm1),
            b: model.gamma * cons.p_tot / gm1,
        })
    }

    fn c_of_lambda<T: Scalar>(&self, lam: T) -> T {
        lam * T::of(self.model.q) - T::of(self.cons.h_tot)
    }

    pub fn discriminant(&self, lam: f64) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c_of_lambda(lam)
    }

    /// Subsonic root (the reaction-zone branch). Written as -2c/(b + sqrt(disc))
    /// to avoid cancellation: b > 0 and c < 0 for admissible states.
    pub fn v_subsonic(&self, lam: f64) -> Result<f64> {
        let disc = self.discriminant(lam);
        if disc <= 0.0 {
            return Err(Error::Integration {
                x: f64::NAN,
                reason: format!("sonic collision: discriminant {disc:.3e} at lambda = {lam:.3e}"),
            });
        }
        Ok(-2.0 * self.c_of_lambda(lam) / (self.b + disc.sqrt()))
    }

    pub fn v_supersonic(&self, lam: f64) -> Result<f64> {
        let disc = self.discriminant(lam);
        if disc <= 0.0 {
            return Err(Error::Integration {
                x: f64::NAN,
                reason: format!("sonic collision: discriminant {disc:.3e} at lambda = {lam:.3e}"),
            });
        }
        Ok((self.b + disc.sqrt()) / (-2.0 * self.a))
    }

    /// Root of the closure quadratic nearest to a previous value; used for
    /// analytic continuation where "subsonic" no longer orders the branches.
    pub fn v_near(&self, lam: C64, v_prev: C64) -> Result<C64> {
        let a = C64::new(self.a, 0.0);
        let b = C64::new(self.b, 0.0);
        let c = self.c_of_lambda(lam);
        let disc = (b * b - a * c * 4.0).sqrt();
        let r1 = (-b - disc) / (a * 2.0);
        let r2 = c / (a * r1);
        let pick = if (r1 - v_prev).norm() <= (r2 - v_prev).norm() { r1 } else { r2 };
        if !pick.is_finite() {
            return Err(Error::Continuation {
                z: lam,
                reason: "closure root not finite".into(),
            });
        }
        Ok(pick)
    }

    /// Full state from (λ, v).
    pub fn state_from<T: Scalar>(&self, lam: T, v: T) -> (T, T, T) {
        let m = T::of(self.cons.m);
        let u = m * v;
        let p = T::of(self.cons.p_tot) - m * m * v;
        let t = p * v / T::of(self.model.r_gas);
        (u, p, t)
    }

    fn entropy<T: Scalar>(&self, v: T, t: T) -> T {
        T::of(self.model.s_ref)
            + T::of(self.model.c_v()) * t.ln()
            + T::of(self.model.r_gas) * v.ln()
    }

    /// Assemble the complete point bundle from (λ, v); derivative fields use
    /// dλ/dx = r/u and dv/dλ = -q/(2 a v + b).
    pub fn point<T: Scalar>(&self, lam: T, v: T) -> PointData<T> {
        let model = &self.model;
        let (u, p, t) = self.state_from(lam, v);
        let s = self.entropy(v, t);
        let gamma = model.gamma;
        let c_v = model.c_v();
        let thermo = ThermoBundle {
            p,
            t,
            c0_sq: T::of(gamma) * p * v,
            p_v: -T::of(gamma) * p / v,
            p_s: p / T::of(c_v),
            p_lambda: T::of(0.0),
            sigma: -T::of(model.q * (gamma - 1.0)) / (T::of(gamma) * p * v),
            delta_f: T::of(model.q),
            e: T::of(c_v) * t + T::of(model.q) * lam,
        };
        let rates = rate_with_thermo(v, t, lam, model);
        let sources = source_with(&rates, t, v, model);
        let c0_sq = thermo.c0_sq;
        let eta = T::of(1.0) - u * u / c0_sq;
        let kappa = u / c0_sq.sqrt();

        let lam_x = rates.r / u;
        let dv_dlam = -T::of(model.q) / (T::of(2.0 * self.a) * v + T::of(self.b));
        let v_x = dv_dlam * lam_x;
        let m = T::of(self.cons.m);
        let u_x = m * v_x;
        let p_x = -m * m * v_x;
        let t_x = (p_x * v + p * v_x) / T::of(model.r_gas);
        let s_x = T::of(c_v) * t_x / t + T::of(model.r_gas) * v_x / v;
        let c0_sq_x = T::of(gamma) * (p_x * v + p * v_x);
        let c0_sq_eta_x = c0_sq_x - T::of(2.0) * u * u_x;
        let eta_x = (u * u * c0_sq_x - T::of(2.0) * u * u_x * c0_sq) / (c0_sq * c0_sq);
        PointData {
            v,
            u,
            s,
            lam,
            thermo,
            rates,
            sources,
            eta,
            kappa,
            m: self.cons.m,
            d: ProfileDerivs {
                v: v_x,
                u: u_x,
                s: s_x,
                lam: lam_x,
                p: p_x,
                t: t_x,
                c0_sq: c0_sq_x,
                c0_sq_eta: c0_sq_eta_x,
                eta: eta_x,
                p_s: p_x / T::of(c_v),
                p_lambda: T::of(0.0),
                c0_over_v2: T::of(gamma) * (p_x * v - p * v_x) / (v * v),
            },
        }
    }
}

/// Quiescent supersonic state with unit specific volume and unit sound speed;
/// the Mach number is the detonation speed in these units.
pub fn upstream_from_mach(mach: f64, model: &EosModel) -> Result<GasState> {
    model.validate()?;
    if !(mach > 1.0) {
        return Err(Error::config(format!(
            "upstream must be supersonic: Mach {mach} <= 1"
        )));
    }
    let v = 1.0;
    let t = 1.0 / (model.gamma * model.r_gas); // c0² = γ R T = 1
    Ok(GasState { v, u: mach, s: model.entropy_from_vt(v, t), lam: 1.0 })
}

/// Smallest Mach number with a real subsonic branch all the way to λ = 0.
pub fn chapman_jouguet_mach(model: &EosModel) -> Result<f64> {
    let disc_at = |mach: f64| -> Result<f64> {
        let up = upstream_from_mach(mach, model)?;
        Ok(Closure::new(&up, model)?.discriminant(0.0))
    };
    let mut lo = 1.0 + 1e-9;
    let mut hi = 1.5;
    while disc_at(hi)? < 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::config("no CJ Mach below 1e6; check model parameters"));
        }
    }
    if disc_at(lo)? > 0.0 {
        return Ok(1.0); // q so small the branch never pinches
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if disc_at(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Nonreactive Rankine–Hugoniot jump: the other root of the closure quadratic
/// at the upstream λ. Mach 1 is the degenerate identity jump.
pub fn von_neumann_jump(upstream: &GasState, model: &EosModel) -> Result<GasState> {
    let th_up = eos::eos_eval(upstream.v, upstream.s, upstream.lam, model)?;
    let mach = upstream.u / th_up.c0_sq.sqrt();
    if mach < 1.0 {
        return Err(Error::config(format!(
            "no subsonic branch: upstream Mach {mach:.6} < 1"
        )));
    }
    if mach == 1.0 {
        return Ok(*upstream);
    }
    let clo = Closure::new(upstream, model)?;
    let v_plus = clo.v_subsonic(upstream.lam).map_err(|_| {
        Error::config(format!("no subsonic branch at Mach {mach:.6}"))
    })?;
    let (u, p, t) = clo.state_from(upstream.lam, v_plus);
    let s = model.entropy_from_vt(v_plus, t);
    let post = GasState { v: v_plus, u, s, lam: upstream.lam };
    let c0_sq_post = model.gamma * p * v_plus;
    if !(u * u < c0_sq_post) {
        return Err(Error::config("post-shock state is not subsonic"));
    }
    Ok(post)
}

#[derive(Clone, Copy, Debug)]
pub struct ProfileOpts {
    /// λ(X_max) threshold defining chemical equilibrium.
    pub tol_eq: f64,
    /// Relative tolerance of the λ integration.
    pub ode_tol: f64,
    /// Hard cap on the domain; reaching it without equilibrium is recorded,
    /// not fatal (frozen configurations never equilibrate).
    pub x_max_cap: f64,
}

impl Default for ProfileOpts {
    fn default() -> Self {
        ProfileOpts { tol_eq: 1e-10, ode_tol: 1e-11, x_max_cap: 500.0 }
    }
}

#[derive(Clone, Debug)]
pub struct Profile {
    pub model: EosModel,
    pub closure: Closure,
    pub upstream: GasState,
    pub vn_state: GasState,
    pub w_inf: GasState,
    pub x_max: f64,
    pub ptype: Ptype,
    pub x_m: Option<f64>,
    /// Fitted decay rate of the λ tail (None when equilibrium is not reached).
    pub decay_beta: Option<f64>,
    pub equilibrium_reached: bool,
    traj: Trajectory<1>,
}

impl Profile {
    pub fn build(upstream: &GasState, model: &EosModel, opts: &ProfileOpts) -> Result<Profile> {
        let vn = von_neumann_jump(upstream, model)?;
        let clo = Closure::new(upstream, model)?;
        // Time scale of the reaction at the von Neumann point.
        let pt_vn = clo.point(vn.lam, vn.v);
        let rate0 = (pt_vn.rates.r / pt_vn.u).abs().max(1e-300);
        let mut chunk = (0.5 / rate0).min(opts.x_max_cap);
        let ode_opts = OdeOptions {
            rel_tol: opts.ode_tol,
            abs_tol: opts.ode_tol * 1e-2,
            max_step: chunk.min(opts.x_max_cap / 256.0),
            ..Default::default()
        };
        // March chunks until λ reaches tol_eq or the cap.
        let mut pieces: Vec<Trajectory<1>> = Vec::new();
        let mut x0 = 0.0;
        let mut lam0 = C64::new(vn.lam, 0.0);
        let mut v_prev = vn.v;
        let mut reached = false;
        while x0 < opts.x_max_cap {
            let x1 = (x0 + chunk).min(opts.x_max_cap);
            let clo_ref = &clo;
            let mut v_track = v_prev;
            let traj = dopri5(
                move |_x, y: &[C64; 1]| {
                    let lam = y[0].re.clamp(0.0, 1.0);
                    let v = match clo_ref.v_subsonic(lam) {
                        Ok(v) => v,
                        Err(_) => v_track, // hold; the error surfaces via residuals
                    };
                    v_track = v;
                    let pt = clo_ref.point(lam, v);
                    [C64::new(pt.rates.r / pt.u, 0.0)]
                },
                x0,
                x1,
                [lam0],
                &ode_opts,
            )
            .map_err(|e| Error::Integration { x: x0, reason: e.to_string() })?;
            let (yend, _) = traj.last();
            lam0 = yend[0];
            v_prev = clo.v_subsonic(lam0.re.max(0.0))?;
            x0 = x1;
            pieces.push(traj);
            if lam0.re.abs() < opts.tol_eq {
                reached = true;
                break;
            }
            chunk *= 2.0;
        }
        // Stitch the chunk trajectories.
        let mut traj = pieces.remove(0);
        for p in pieces {
            for i in 1..p.t.len() {
                traj.t.push(p.t[i]);
                traj.y.push(p.y[i]);
                traj.dy.push(p.dy[i]);
                traj.log_scale.push(0.0);
            }
        }
        let x_max = *traj.t.last().unwrap();
        let lam_end = traj.y.last().unwrap()[0].re.max(0.0);
        let v_inf = clo.v_subsonic(0.0)?;
        let (u_inf, _p_inf, t_inf) = clo.state_from(0.0, v_inf);
        let w_inf = GasState { v: v_inf, u: u_inf, s: model.entropy_from_vt(v_inf, t_inf), lam: 0.0 };

        let mut profile = Profile {
            model: *model,
            closure: clo,
            upstream: *upstream,
            vn_state: vn,
            w_inf,
            x_max,
            ptype: Ptype::Other,
            x_m: None,
            decay_beta: None,
            equilibrium_reached: reached,
            traj,
        };
        let (ptype, x_m) = profile.classify();
        profile.ptype = ptype;
        profile.x_m = x_m;
        if reached && lam_end > 0.0 {
            profile.decay_beta = profile.fit_tail_decay();
        }
        Ok(profile)
    }

    pub fn lambda_at(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.vn_state.lam;
        }
        if x >= self.x_max {
            return if self.equilibrium_reached { 0.0 } else { self.traj.y.last().unwrap()[0].re };
        }
        self.traj.eval(x).0[0].re.clamp(0.0, 1.0)
    }

    /// Full point bundle on the real axis. Beyond X_max the state is frozen
    /// at chemical equilibrium.
    pub fn point(&self, x: f64) -> Result<PointData<f64>> {
        let lam = self.lambda_at(x);
        let v = self.closure.v_subsonic(lam).map_err(|_| Error::Integration {
            x,
            reason: "lost subsonic branch".into(),
        })?;
        Ok(self.closure.point(lam, v))
    }

    pub fn state_at(&self, x: f64) -> Result<GasState> {
        let pt = self.point(x)?;
        Ok(GasState { v: pt.v, u: pt.u, s: pt.s, lam: pt.lam })
    }

    /// c₀²η = c₀² - u² at x; the turning-point function.
    pub fn c0_sq_eta(&self, x: f64) -> Result<f64> {
        let pt = self.point(x)?;
        Ok(pt.thermo.c0_sq - pt.u * pt.u)
    }

    pub fn c0_sq_eta_of_state(pt: &PointData<f64>) -> f64 {
        pt.thermo.c0_sq - pt.u * pt.u
    }

    /// Range of c₀ η^{1/2} over [0, X_max] (including the equilibrium limit),
    /// which brackets the purely imaginary frequency class.
    pub fn c0_eta_sqrt_range(&self) -> Result<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..=400 {
            let x = self.x_max * i as f64 / 400.0;
            let val = self.c0_sq_eta(x)?.max(0.0).sqrt();
            lo = lo.min(val);
            hi = hi.max(val);
        }
        let boundary = Profile::c0_sq_eta_of_state(&self.closure.point(0.0, self.w_inf.v)).max(0.0).sqrt();
        Ok((lo.min(boundary), hi.max(boundary)))
    }

    /// Range of u over the reaction zone.
    pub fn u_range(&self) -> Result<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..=400 {
            let x = self.x_max * i as f64 / 400.0;
            let u = self.point(x)?.u;
            lo = lo.min(u);
            hi = hi.max(u);
        }
        Ok((lo, hi))
    }

    fn classify(&self) -> (Ptype, Option<f64>) {
        let band = 1e-12;
        let n = 2000;
        let mut signs: Vec<i8> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            // log-ish refinement near x = 0 plus uniform coverage
            let frac = i as f64 / n as f64;
            let x = self.x_max * frac * frac.max(0.02);
            let d = match self.point(x) {
                Ok(pt) => pt.d.c0_sq_eta,
                Err(_) => return (Ptype::Other, None),
            };
            signs.push(if d > band {
                1
            } else if d < -band {
                -1
            } else {
                0
            });
        }
        if signs.iter().all(|&s| s == 0) {
            return (Ptype::Other, None);
        }
        let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
        if nonzero.iter().all(|&s| s == 1) {
            return (Ptype::I, None);
        }
        if nonzero.iter().all(|&s| s == -1) {
            return (Ptype::D, None);
        }
        // Single + -> - transition is type M; anything else is unclassified.
        let mut flips = 0;
        for w in nonzero.windows(2) {
            if w[0] != w[1] {
                flips += 1;
            }
        }
        if flips == 1 && nonzero[0] == 1 && *nonzero.last().unwrap() == -1 {
            // Bisect the derivative sign change for x_M.
            let mut lo = 0.0;
            let mut hi = self.x_max;
            for i in 0..=n {
                let frac = i as f64 / n as f64;
                let x = self.x_max * frac * frac.max(0.02);
                match self.point(x) {
                    Ok(pt) if pt.d.c0_sq_eta > band => lo = x,
                    Ok(pt) if pt.d.c0_sq_eta < -band => {
                        hi = x;
                        break;
                    }
                    _ => {}
                }
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                match self.point(mid) {
                    Ok(pt) if pt.d.c0_sq_eta > 0.0 => lo = mid,
                    Ok(_) => hi = mid,
                    Err(_) => return (Ptype::Other, None),
                }
            }
            return (Ptype::M, Some(0.5 * (lo + hi)));
        }
        (Ptype::Other, None)
    }

    fn fit_tail_decay(&self) -> Option<f64> {
        // Fit log λ on the last decade of the grid.
        let lam_end = self.traj.y.last().unwrap()[0].re.abs().max(1e-300);
        let lam_hi = (lam_end * 10.0f64.powi(1)).min(self.vn_state.lam * 0.5);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, x) in self.traj.t.iter().enumerate() {
            let lam = self.traj.y[i][0].re;
            if lam > 0.0 && lam <= lam_hi && lam >= lam_end {
                xs.push(*x);
                ys.push(lam.ln());
            }
        }
        if xs.len() < 4 {
            return None;
        }
        let (slope, _) = crate::quad::fit_line(&xs, &ys);
        Some(-slope)
    }

    /// Conservation residuals over the grid: max relative drift of
    /// (m, p + m²v, e + pv + u²/2) from their upstream values.
    pub fn conservation_residual(&self) -> Result<[f64; 3]> {
        let c = self.closure.cons;
        let mut worst = [0.0f64; 3];
        for i in 0..=500 {
            let x = self.x_max * i as f64 / 500.0;
            let pt = self.point(x)?;
            let m = pt.u / pt.v;
            let mom = pt.thermo.p + c.m * c.m * pt.v;
            let h = pt.thermo.e + pt.thermo.p * pt.v + 0.5 * pt.u * pt.u;
            worst[0] = worst[0].max((m - c.m).abs() / c.m.abs());
            worst[1] = worst[1].max((mom - c.p_tot).abs() / c.p_tot.abs());
            worst[2] = worst[2].max((h - c.h_tot).abs() / c.h_tot.abs());
        }
        Ok(worst)
    }

    /// Analytic continuation of the profile along a contour in the z-plane:
    /// integrates dλ/dz = r/u from a real anchor and returns the sampled
    /// (z, λ, v) triples. The closure root is tracked by continuity.
    pub fn continue_lambda(
        &self,
        contour: &crate::contour::Contour,
        tol: f64,
    ) -> Result<Vec<(C64, C64, C64)>> {
        let start = contour.start();
        if start.im.abs() > 1e-12 {
            return Err(Error::Contour("contour must be anchored on the real axis".into()));
        }
        let lam0 = C64::new(self.lambda_at(start.re.max(0.0)), 0.0);
        let mut v_prev = C64::new(self.closure.v_subsonic(lam0.re)?, 0.0);
        let clo = self.closure;
        let mut out = Vec::new();
        let mut lam = lam0;
        for piece in contour.pieces() {
            let v_cell = std::cell::Cell::new(v_prev);
            let traj = dopri5(
                |t, y: &[C64; 1]| {
                    let z_dot = piece.deriv(t);
                    let v = clo.v_near(y[0], v_cell.get()).unwrap_or(v_cell.get());
                    v_cell.set(v);
                    let (u, _, tt) = clo.state_from(y[0], v);
                    let rates = rate_with_thermo(v, tt, y[0], &clo.model);
                    [z_dot * rates.r / u]
                },
                0.0,
                1.0,
                [lam],
                &OdeOptions { rel_tol: tol, abs_tol: tol * 1e-2, max_step: 0.05, ..Default::default() },
            )
            .map_err(|e| Error::Continuation { z: piece.point(0.0), reason: e.to_string() })?;
            for (i, t) in traj.t.iter().enumerate() {
                let z = piece.point(*t);
                let l = traj.y[i][0];
                let v = clo.v_near(l, v_prev)?;
                v_prev = v;
                out.push((z, l, v));
            }
            lam = traj.last().0[0];
        }
        Ok(out)
    }

    /// Serializable snapshot (grid, states, classification, jump states).
    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .traj
            .t
            .iter()
            .map(|&x| {
                let pt = self.point(x).expect("grid point evaluates");
                serde_json::json!({
                    "x": x,
                    "v": pt.v,
                    "u": pt.u,
                    "S": pt.s,
                    "lambda": pt.lam,
                    "p": pt.thermo.p,
                    "c0_sq_eta": pt.thermo.c0_sq - pt.u * pt.u,
                })
            })
            .collect();
        serde_json::json!({
            "model": self.model,
            "upstream": self.upstream,
            "vn_state": self.vn_state,
            "w_inf": self.w_inf,
            "x_max": self.x_max,
            "ptype": self.ptype,
            "x_m": self.x_m,
            "decay_beta": self.decay_beta,
            "equilibrium_reached": self.equilibrium_reached,
            "mass_flux": self.closure.cons.m,
            "nodes": nodes,
        })
    }

    /// CSV rows (x, v, u, S, lambda, p, c0_sq_eta) for plotting.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,v,u,S,lambda,p,c0_sq_eta\n");
        for &x in &self.traj.t {
            let pt = self.point(x).expect("grid point evaluates");
            s.push_str(&format!(
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                x,
                pt.v,
                pt.u,
                pt.s,
                pt.lam,
                pt.thermo.p,
                pt.thermo.c0_sq - pt.u * pt.u
            ));
        }
        s
    }

    pub fn grid(&self) -> &[f64] {
        &self.traj.t
    }
}
