//! Ideal polytropic A→B gas with Arrhenius kinetics, and every partial
//! derivative the linearized system needs.
//!
//! Closures (specific volume v, entropy S, reactant fraction λ):
//!   T = exp((S - S_ref)/c_v) v^{-R/c_v},  p = R T / v,  e = c_v T + q λ,
//!   r = -k λ exp(-E/(R T)),               Φ = -r ΔF / T with ΔF = q.
//! Pressure does not depend on λ at fixed (v, S), so p_λ = 0; the reaction
//! feeds pressure only through σ = v (∂p/∂λ)_{e,v} / c₀² = -q(γ-1)/c₀².
//!
//! All closures are evaluated generically over f64 or Complex64 so steady
//! profiles can be continued to complex positions without a second code path.

use crate::{C64, Error, Result};
use num_complex::ComplexFloat;
use serde::{Deserialize, Serialize};

/// Scalar that is either f64 or Complex64.
pub trait Scalar: ComplexFloat<Real = f64> + std::fmt::Debug {
    fn of(x: f64) -> Self;
    fn as_c64(self) -> C64;
}
impl Scalar for f64 {
    fn of(x: f64) -> Self {
        x
    }
    fn as_c64(self) -> C64 {
        C64::new(self, 0.0)
    }
}
impl Scalar for C64 {
    fn of(x: f64) -> Self {
        C64::new(x, 0.0)
    }
    fn as_c64(self) -> C64 {
        self
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EosModel {
    /// Adiabatic exponent, > 1.
    pub gamma: f64,
    /// Heat of reaction per unit mass, >= 0.
    pub q: f64,
    /// Activation energy per unit mass, >= 0.
    #[serde(rename = "E_act")]
    pub e_act: f64,
    /// Arrhenius rate constant, > 0.
    pub k_rate: f64,
    /// Specific gas constant, > 0.
    #[serde(rename = "R_gas", default = "default_r_gas")]
    pub r_gas: f64,
    /// Entropy offset of the reference state.
    #[serde(rename = "S_ref", default)]
    pub s_ref: f64,
}

fn default_r_gas() -> f64 {
    1.0
}

impl EosModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0) {
            return Err(Error::config(format!("gamma must exceed 1, got {}", self.gamma)));
        }
        if !(self.k_rate > 0.0) {
            return Err(Error::config("k_rate must be positive"));
        }
        if !(self.r_gas > 0.0) {
            return Err(Error::config("R_gas must be positive"));
        }
        if self.q < 0.0 || self.e_act < 0.0 {
            return Err(Error::config("q and E_act must be nonnegative"));
        }
        Ok(())
    }

    pub fn c_v(&self) -> f64 {
        self.r_gas / (self.gamma - 1.0)
    }

    /// S(v, T) for the ideal closure; inverse of the temperature law.
    pub fn entropy_from_vt(&self, v: f64, t: f64) -> f64 {
        self.s_ref + self.c_v() * t.ln() + self.r_gas * v.ln()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ThermoBundle<T> {
    pub p: T,
    pub t: T,
    pub c0_sq: T,
    pub p_v: T,
    pub p_s: T,
    pub p_lambda: T,
    pub sigma: T,
    pub delta_f: T,
    pub e: T,
}

#[derive(Clone, Copy, Debug)]
pub struct RateBundle<T> {
    pub r: T,
    pub r_v: T,
    pub r_s: T,
    pub r_lambda: T,
}

#[derive(Clone, Copy, Debug)]
pub struct SourceBundle<T> {
    pub phi: T,
    pub phi_v: T,
    pub phi_s: T,
    pub phi_lambda: T,
}

pub fn thermo_raw<T: Scalar>(v: T, s: T, lam: T, model: &EosModel) -> ThermoBundle<T> {
    let c_v = model.c_v();
    let gamma = model.gamma;
    let rg = model.r_gas;
    let t = ((s - T::of(model.s_ref)) / T::of(c_v)).exp() * v.powf(-rg / c_v);
    let p = T::of(rg) * t / v;
    let c0_sq = T::of(gamma) * p * v;
    ThermoBundle {
        p,
        t,
        c0_sq,
        p_v: -T::of(gamma) * p / v,
        p_s: p / T::of(c_v),
        p_lambda: T::of(0.0),
        sigma: -T::of(model.q * (gamma - 1.0)) / c0_sq,
        delta_f: T::of(model.q),
        e: T::of(c_v) * t + T::of(model.q) * lam,
    }
}

pub fn rate_raw<T: Scalar>(t: T, lam: T, model: &EosModel) -> RateBundle<T> {
    let c_v = model.c_v();
    let r_lambda = -T::of(model.k_rate) * (-T::of(model.e_act / model.r_gas) / t).exp();
    let r = lam * r_lambda;
    // r_v = r E T_v/(R T^2) with T_v = -(R/c_v) T / v handled by the caller's v;
    // written out here with the ideal T_v so the formula stays closed-form.
    RateBundle {
        r,
        r_v: T::of(0.0), // filled by eval at a known v below
        r_s: r * T::of(model.e_act / model.r_gas) / (t * t) * (t / T::of(c_v)),
        r_lambda,
    }
}

/// Pointwise evaluation of the equation of state with partials.
pub fn eos_eval(v: f64, s: f64, lam: f64, model: &EosModel) -> Result<ThermoBundle<f64>> {
    if !(v > 0.0) {
        return Err(Error::domain(format!("specific volume must be positive, got {v}")));
    }
    let thermo = thermo_raw(v, s, lam, model);
    if !(thermo.t > 0.0) || !thermo.t.is_finite() {
        return Err(Error::domain(format!("temperature underflow at (v={v}, S={s})")));
    }
    Ok(thermo)
}

/// Arrhenius rate and partials; r = λ r_λ so equilibrium identities
/// r|_{λ=0} = r_v|_{λ=0} = r_S|_{λ=0} = 0 hold exactly.
pub fn rate_eval(v: f64, s: f64, lam: f64, model: &EosModel) -> Result<RateBundle<f64>> {
    let thermo = eos_eval(v, s, lam, model)?;
    Ok(rate_with_thermo(v, thermo.t, lam, model))
}

pub fn rate_with_thermo<T: Scalar>(v: T, t: T, lam: T, model: &EosModel) -> RateBundle<T> {
    let c_v = model.c_v();
    let mut rb = rate_raw(t, lam, model);
    // T_v = -(R/c_v) T / v  =>  r_v = -r E / (c_v T v)
    rb.r_v = -rb.r * T::of(model.e_act / c_v) / (t * v);
    rb
}

/// Entropy source Φ = -r ΔF / T (ΔF = q for the ideal model) and partials.
pub fn entropy_source(v: f64, s: f64, lam: f64, model: &EosModel) -> Result<SourceBundle<f64>> {
    let thermo = eos_eval(v, s, lam, model)?;
    let rates = rate_with_thermo(v, thermo.t, lam, model);
    Ok(source_with(&rates, thermo.t, v, model))
}

pub fn source_with<T: Scalar>(rates: &RateBundle<T>, t: T, v: T, model: &EosModel) -> SourceBundle<T> {
    let q = model.q;
    let c_v = model.c_v();
    let gm1 = model.gamma - 1.0;
    SourceBundle {
        phi: -rates.r * T::of(q) / t,
        // Φ_v = -q r_v/T + q r T_v/T²,  T_v = -(γ-1) T / v
        phi_v: -T::of(q) * rates.r_v / t - T::of(q * gm1) * rates.r / (v * t),
        // Φ_S = -q r_S/T + q r T_S/T²,  T_S = T/c_v
        phi_s: -T::of(q) * rates.r_s / t + T::of(q / c_v) * rates.r / t,
        phi_lambda: -T::of(q) * rates.r_lambda / t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    pub fn model() -> EosModel {
        EosModel { gamma: 1.4, q: 2.0, e_act: 3.0, k_rate: 1.0, r_gas: 1.0, s_ref: 0.0 }
    }

    /// Deterministic state sweep (splitmix64), no RNG dependency.
    fn states(n: usize) -> Vec<(f64, f64, f64)> {
        let mut x = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            x = x.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = x;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            ((z ^ (z >> 31)) as f64) / (u64::MAX as f64)
        };
        (0..n)
            .map(|_| (0.2 + 1.6 * next(), -0.5 + 1.5 * next(), next()))
            .collect()
    }

    #[test]
    fn reference_state_identities() {
        let m = model();
        // S = S_ref, v = 1 gives T = 1, p = R T / v = 1, c0^2 = gamma p v.
        let th = eos_eval(1.0, 0.0, 0.0, &m).unwrap();
        assert_relative_eq!(th.t, 1.0, max_relative = 1e-14);
        assert_relative_eq!(th.p, 1.0, max_relative = 1e-14);
        assert_relative_eq!(th.c0_sq, 1.4, max_relative = 1e-14);
    }

    #[test]
    fn sigma_matches_fixed_energy_finite_difference() {
        // sigma = v (dp/dλ)_{e,v} / c0². At (v=1, T=1, λ=0.5, q=2, γ=1.4) the
        // closed form gives -q(γ-1)/c0² = -2·0.4/1.4.
        let m = model();
        let v = 1.0;
        let lam = 0.5;
        let s = m.entropy_from_vt(v, 1.0);
        let th = eos_eval(v, s, lam, &m).unwrap();
        assert_relative_eq!(th.sigma, -2.0 * 0.4 / 1.4, max_relative = 1e-12);
        // Independent route: perturb λ at fixed (e, v), solving e = const for T.
        let e0 = th.e;
        let dl = 1e-6;
        let p_at = |lam_p: f64| {
            // e = c_v T + q λ  =>  T = (e0 - q λ)/c_v; p = R T / v
            let t = (e0 - m.q * lam_p) / m.c_v();
            m.r_gas * t / v
        };
        let dp_dlam = (p_at(lam + dl) - p_at(lam - dl)) / (2.0 * dl);
        assert_relative_eq!(th.sigma, v * dp_dlam / th.c0_sq, max_relative = 1e-8);
    }

    #[test]
    fn p_s_equals_p_over_cv() {
        let m = model();
        for (v, s, lam) in states(20) {
            let th = eos_eval(v, s, lam, &m).unwrap();
            assert_relative_eq!(th.p_s, th.p / m.c_v(), max_relative = 1e-13);
            // central finite difference in S
            let ds = 1e-6;
            let pp = eos_eval(v, s + ds, lam, &m).unwrap().p;
            let pm = eos_eval(v, s - ds, lam, &m).unwrap().p;
            assert_relative_eq!(th.p_s, (pp - pm) / (2.0 * ds), max_relative = 1e-8);
        }
    }

    #[test]
    fn analytic_partials_match_finite_differences() {
        let m = model();
        let rel = 1e-6;
        for (v, s, lam) in states(100) {
            let th = eos_eval(v, s, lam, &m).unwrap();
            let rb = rate_eval(v, s, lam, &m).unwrap();
            let sb = entropy_source(v, s, lam, &m).unwrap();
            let dv = rel * v;
            let ds = 1e-6;
            let dl = 1e-6;
            let fd = |f: &dyn Fn(f64, f64, f64) -> f64, which: usize| -> f64 {
                match which {
                    0 => (f(v + dv, s, lam) - f(v - dv, s, lam)) / (2.0 * dv),
                    1 => (f(v, s + ds, lam) - f(v, s - ds, lam)) / (2.0 * ds),
                    _ => (f(v, s, lam + dl) - f(v, s, lam - dl)) / (2.0 * dl),
                }
            };
            let p = |v, s, lam| eos_eval(v, s, lam, &m).unwrap().p;
            let r = |v, s, lam| rate_eval(v, s, lam, &m).unwrap().r;
            let phi = |v, s, lam| entropy_source(v, s, lam, &m).unwrap().phi;
            let scale = |x: f64, y: f64| (x - y).abs() / (1.0 + x.abs().max(y.abs()));
            assert!(scale(th.p_v, fd(&p, 0)) < 1e-6);
            assert!(scale(th.p_s, fd(&p, 1)) < 1e-6);
            assert!(scale(th.p_lambda, fd(&p, 2)) < 1e-6);
            assert!(scale(rb.r_v, fd(&r, 0)) < 1e-6);
            assert!(scale(rb.r_s, fd(&r, 1)) < 1e-6);
            assert!(scale(rb.r_lambda, fd(&r, 2)) < 1e-6);
            assert!(scale(sb.phi_v, fd(&phi, 0)) < 1e-6);
            assert!(scale(sb.phi_s, fd(&phi, 1)) < 1e-6);
            assert!(scale(sb.phi_lambda, fd(&phi, 2)) < 1e-6);
            // c0² = γ p v must equal -v² p_v
            assert_relative_eq!(th.c0_sq, -v * v * th.p_v, max_relative = 1e-13);
            let pv_fd = fd(&p, 0);
            assert_relative_eq!(th.c0_sq, -v * v * pv_fd, max_relative = 1e-7);
        }
    }

    #[test]
    fn equilibrium_rate_identities() {
        let m = model();
        let rb = rate_eval(0.8, 0.3, 0.0, &m).unwrap();
        assert_eq!(rb.r, 0.0);
        assert_eq!(rb.r_v, 0.0);
        assert_eq!(rb.r_s, 0.0);
        assert!(rb.r_lambda < 0.0);
        let sb = entropy_source(0.8, 0.3, 0.0, &m).unwrap();
        assert_eq!(sb.phi, 0.0);
        // r linear in λ
        let rb1 = rate_eval(0.8, 0.3, 0.5, &m).unwrap();
        assert_relative_eq!(rb1.r_lambda, rb1.r / 0.5, max_relative = 1e-14);
        assert!(rb1.r_lambda < 0.0);
        // zero activation energy: exponential factor is 1
        let m0 = EosModel { e_act: 0.0, ..m };
        let rb2 = rate_eval(1.0, 0.0, 0.5, &m0).unwrap();
        assert_relative_eq!(rb2.r, -0.5, max_relative = 1e-14);
    }

    #[test]
    fn q_zero_has_no_entropy_source() {
        let m = EosModel { q: 0.0, ..model() };
        let sb = entropy_source(0.9, 0.1, 0.7, &m).unwrap();
        assert_eq!(sb.phi, 0.0);
        assert_eq!(sb.phi_lambda, 0.0);
    }

    #[test]
    fn model_json_round_trip_rejects_unknown_keys() {
        let m = model();
        let s = serde_json::to_string(&m).unwrap();
        let back: EosModel = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
        let bad = r#"{"gamma":1.4,"q":1.0,"E_act":0.0,"k_rate":1.0,"banana":3}"#;
        assert!(serde_json::from_str::<EosModel>(bad).is_err());
    }
}
