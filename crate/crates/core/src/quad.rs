//! Quadrature: adaptive Gauss–Kronrod for order-insensitive integrands,
//! Gauss–Legendre panels for ordered contour walks, and Gauss–Jacobi rules
//! for endpoint singularities of algebraic type.

use crate::{C64, Error, Result};
use nalgebra::DMatrix;

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut result_k = C64::new(0.0, 0.0);
    let mut result_g = C64::new(0.0, 0.0);
    let fc = f(c);
    result_k += WGK[7] * fc;
    result_g += WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        result_k += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            result_g += WG[j / 2] * (f1 + f2);
        }
    }
    (result_k * h, (result_k - result_g).norm() * h.abs())
}

/// Adaptive Gauss–Kronrod integration of a complex-valued function on a real
/// interval. Not for integrands whose evaluation order matters.
pub fn adaptive_gk<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<C64> {
    if a == b {
        return Ok(C64::new(0.0, 0.0));
    }
    struct Seg {
        a: f64,
        b: f64,
        val: C64,
        err: f64,
    }
    let (val, err) = gk15(&mut f, a, b);
    let mut segs = vec![Seg { a, b, val, err }];
    let mut total_err: f64 = err;
    let mut total_val = val;
    let mut iter = 0;
    while total_err > tol * (1.0 + total_val.norm()) {
        iter += 1;
        if iter > 4000 {
            return Err(Error::Quadrature(format!(
                "adaptive GK stalled on [{a}, {b}] with error {total_err:.3e}"
            )));
        }
        // Split the worst segment.
        let (k, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("non-empty");
        let seg = segs.swap_remove(k);
        let m = 0.5 * (seg.a + seg.b);
        if m == seg.a || m == seg.b {
            return Err(Error::Quadrature(format!(
                "interval too small near x = {m} (error {:.3e})",
                seg.err
            )));
        }
        total_err -= seg.err;
        total_val -= seg.val;
        for (aa, bb) in [(seg.a, m), (m, seg.b)] {
            let (v, e) = gk15(&mut f, aa, bb);
            total_err += e;
            total_val += v;
            segs.push(Seg { a: aa, b: bb, val: v, err: e });
        }
    }
    Ok(total_val)
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Initial guess (Chebyshev-like).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..64 {
            let (p, dp) = legendre_pd(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_pd(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation, g = 7.
    const COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + 7.5;
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Gauss–Jacobi nodes/weights on [-1, 1] for weight (1-x)^alpha (1+x)^beta,
/// by Golub–Welsch on the symmetric Jacobi recurrence matrix.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Vec<(f64, f64)> {
    assert!(n >= 2 && alpha > -1.0 && beta > -1.0);
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut diag = (beta - alpha) / (2.0 + alpha + beta);
    for i in 0..n - 1 {
        let k = i as f64 + 1.0;
        let denom = 2.0 * k + alpha + beta;
        let off = 2.0 / denom
            * (k * (k + alpha) * (k + beta) * (k + alpha + beta) / ((denom + 1.0) * (denom - 1.0)))
                .sqrt();
        m[(i, i)] = diag;
        m[(i, i + 1)] = off;
        m[(i + 1, i)] = off;
        diag = (beta * beta - alpha * alpha) / (denom * (denom + 2.0));
    }
    m[(n - 1, n - 1)] = diag;
    let eig = m.symmetric_eigen();
    let mu0 = (2.0f64).powf(alpha + beta + 1.0)
        * (ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) - ln_gamma(alpha + beta + 2.0)).exp();
    let mut nw: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let v0 = eig.eigenvectors[(0, j)];
            (eig.eigenvalues[j], v0 * v0 * mu0)
        })
        .collect();
    nw.sort_by(|a, b| a.0.total_cmp(&b.0));
    nw
}

/// Least-squares line fit; returns (slope, intercept).
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gk_polynomial_and_oscillatory() {
        let v = adaptive_gk(|x| C64::new(x * x * x - 2.0 * x + 1.0, 0.0), -1.0, 3.0, 1e-12).unwrap();
        // exact: x^4/4 - x^2 + x on [-1,3] = (81/4-9+3) - (1/4-1-1) = 16
        assert_relative_eq!(v.re, 16.0, max_relative = 1e-12);
        let w = adaptive_gk(|x| C64::new(0.0, 1.0) * C64::new(40.0 * x, 0.0).cos(), 0.0, 1.0, 1e-12).unwrap();
        assert_relative_eq!(w.im, (40.0f64).sin() / 40.0, max_relative = 1e-10);
    }

    #[test]
    fn gl_nodes_integrate_high_degree() {
        let nw = gauss_legendre(12);
        // degree-23 exactness
        let int: f64 = nw.iter().map(|(x, w)| w * x.powi(22)).sum();
        assert_relative_eq!(int, 2.0 / 23.0, max_relative = 1e-12);
    }

    #[test]
    fn gauss_jacobi_inverse_sqrt_weight() {
        // ∫_{-1}^{1} (1-x)^{-1/2} dx = 2*sqrt(2)
        let nw = gauss_jacobi(8, -0.5, 0.0);
        let total: f64 = nw.iter().map(|(_, w)| w).sum();
        assert_relative_eq!(total, 2.0 * (2.0f64).sqrt(), max_relative = 1e-12);
        // ∫ (1-x)^{1/2} x^2 dx against closed form 4*sqrt(2)*(2/3 - 4/5 + 2/7)... use
        // substitution-free reference computed by adaptive GK on t = sqrt(1-x).
        let nw2 = gauss_jacobi(16, 0.5, 0.0);
        let got: f64 = nw2.iter().map(|(x, w)| w * x * x).sum();
        let reference = adaptive_gk(
            |t| C64::new(2.0 * t * t * (1.0 - t * t) * (1.0 - t * t), 0.0),
            0.0,
            (2.0f64).sqrt(),
            1e-13,
        )
        .unwrap()
        .re;
        assert_relative_eq!(got, reference, max_relative = 1e-11);
    }
}
