//! Dense complex linear algebra for the 5x5 spectral systems.
//!
//! Everything here is sized for tiny matrices on hot paths (ODE right-hand
//! sides build one matrix per stage), so the representation is a plain
//! fixed-size array with unrolled-ish loops. The eigen solver is a complex
//! Hessenberg reduction followed by Wilkinson-shifted QR; semisimple repeated
//! eigenvalues (the triple acoustic/entropy/reaction mode) come out at full
//! precision, which a characteristic-polynomial route cannot deliver.

use crate::C64;

pub const N: usize = 5;

pub type Vec5 = [C64; N];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat5(pub [[C64; N]; N]);

pub fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

pub fn cone() -> C64 {
    C64::new(1.0, 0.0)
}

pub fn vec5_zero() -> Vec5 {
    [czero(); N]
}

pub fn vec5_norm(v: &Vec5) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec5_scale(v: &Vec5, s: C64) -> Vec5 {
    let mut out = *v;
    for c in out.iter_mut() {
        *c *= s;
    }
    out
}

pub fn vec5_add(a: &Vec5, b: &Vec5) -> Vec5 {
    let mut out = *a;
    for i in 0..N {
        out[i] += b[i];
    }
    out
}

pub fn vec5_sub(a: &Vec5, b: &Vec5) -> Vec5 {
    let mut out = *a;
    for i in 0..N {
        out[i] -= b[i];
    }
    out
}

/// Bilinear dot product (no conjugation); the stability function pairs the
/// transposed-system solution with jump vectors in this sense.
pub fn vec5_dot(a: &Vec5, b: &Vec5) -> C64 {
    let mut s = czero();
    for i in 0..N {
        s += a[i] * b[i];
    }
    s
}

impl Mat5 {
    pub fn zero() -> Self {
        Mat5([[czero(); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = cone();
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Mat5::from_fn(|i, j| self.0[j][i])
    }

    pub fn matvec(&self, v: &Vec5) -> Vec5 {
        let mut out = vec5_zero();
        for i in 0..N {
            let row = &self.0[i];
            let mut s = czero();
            for j in 0..N {
                s += row[j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn matmul(&self, other: &Mat5) -> Mat5 {
        let mut out = Mat5::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == czero() {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * other.0[k][j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat5) -> Mat5 {
        Mat5::from_fn(|i, j| self.0[i][j] + other.0[i][j])
    }

    pub fn sub(&self, other: &Mat5) -> Mat5 {
        Mat5::from_fn(|i, j| self.0[i][j] - other.0[i][j])
    }

    pub fn scale(&self, s: C64) -> Mat5 {
        Mat5::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn shift(&self, mu: C64) -> Mat5 {
        let mut m = *self;
        for i in 0..N {
            m.0[i][i] -= mu;
        }
        m
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn column(&self, j: usize) -> Vec5 {
        let mut v = vec5_zero();
        for i in 0..N {
            v[i] = self.0[i][j];
        }
        v
    }

    pub fn set_column(&mut self, j: usize, v: &Vec5) {
        for i in 0..N {
            self.0[i][j] = v[i];
        }
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn lu(&self) -> Option<Lu> {
        Lu::factor(self)
    }

    pub fn solve(&self, b: &Vec5) -> Option<Vec5> {
        self.lu().map(|lu| lu.solve(b))
    }

    pub fn inverse(&self) -> Option<Mat5> {
        let lu = self.lu()?;
        let mut inv = Mat5::zero();
        for j in 0..N {
            let mut e = vec5_zero();
            e[j] = cone();
            inv.set_column(j, &lu.solve(&e));
        }
        Some(inv)
    }

    pub fn det(&self) -> C64 {
        match self.lu() {
            Some(lu) => lu.det(),
            None => czero(),
        }
    }
}

/// LU factorization with partial pivoting.
pub struct Lu {
    lu: [[C64; N]; N],
    piv: [usize; N],
    sign: f64,
}

impl Lu {
    fn factor(a: &Mat5) -> Option<Lu> {
        let mut lu = a.0;
        let mut piv = [0usize; N];
        let mut sign = 1.0;
        for (i, p) in piv.iter_mut().enumerate() {
            *p = i;
        }
        for k in 0..N {
            let mut pmax = k;
            let mut vmax = lu[k][k].norm();
            for i in k + 1..N {
                let v = lu[i][k].norm();
                if v > vmax {
                    vmax = v;
                    pmax = i;
                }
            }
            if vmax == 0.0 {
                return None;
            }
            if pmax != k {
                lu.swap(pmax, k);
                piv.swap(pmax, k);
                sign = -sign;
            }
            let pivot = lu[k][k];
            for i in k + 1..N {
                let f = lu[i][k] / pivot;
                lu[i][k] = f;
                for j in k + 1..N {
                    let sub = f * lu[k][j];
                    lu[i][j] -= sub;
                }
            }
        }
        Some(Lu { lu, piv, sign })
    }

    pub fn solve(&self, b: &Vec5) -> Vec5 {
        let mut y = vec5_zero();
        for i in 0..N {
            let mut s = b[self.piv[i]];
            for j in 0..i {
                s -= self.lu[i][j] * y[j];
            }
            y[i] = s;
        }
        for i in (0..N).rev() {
            let mut s = y[i];
            for j in i + 1..N {
                s -= self.lu[i][j] * y[j];
            }
            y[i] = s / self.lu[i][i];
        }
        y
    }

    pub fn det(&self) -> C64 {
        let mut d = C64::new(self.sign, 0.0);
        for i in 0..N {
            d *= self.lu[i][i];
        }
        d
    }
}

// ---------------------------------------------------------------------------
// Eigenvalues: complex Hessenberg + Wilkinson-shifted QR.
// ---------------------------------------------------------------------------

fn hessenberg(a: &Mat5) -> Mat5 {
    let mut h = *a;
    for k in 0..N - 2 {
        // Householder reflector acting on rows/cols k+1..N to zero h[k+2.., k].
        let mut xnorm = 0.0;
        for i in k + 1..N {
            xnorm += h.0[i][k].norm_sqr();
        }
        let xnorm = xnorm.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h.0[k + 1][k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { cone() };
        let alpha = -phase * xnorm;
        let mut v = [czero(); N];
        for i in k + 1..N {
            v[i] = h.0[i][k];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H = I - 2 v v* / |v|^2 ; apply H from left and right.
        for j in 0..N {
            let mut s = czero();
            for i in k + 1..N {
                s += v[i].conj() * h.0[i][j];
            }
            s *= 2.0 / vnorm2;
            for i in k + 1..N {
                let sub = v[i] * s;
                h.0[i][j] -= sub;
            }
        }
        for i in 0..N {
            let mut s = czero();
            for j in k + 1..N {
                s += h.0[i][j] * v[j];
            }
            s *= 2.0 / vnorm2;
            for j in k + 1..N {
                let sub = s * v[j].conj();
                h.0[i][j] -= sub;
            }
        }
        for i in k + 2..N {
            h.0[i][k] = czero();
        }
        h.0[k + 1][k] = alpha;
    }
    h
}

/// All eigenvalues of a general complex 5x5 matrix.
///
/// Backward-stable at working precision; repeated semisimple eigenvalues are
/// recovered to the accuracy their (finite) eigenvector conditioning allows.
pub fn eigenvalues(a: &Mat5) -> Vec5 {
    let scale = a.max_abs().max(1e-300);
    let mut h = hessenberg(&a.scale(C64::new(1.0 / scale, 0.0)));
    let mut eig = vec5_zero();
    let mut hi = N; // active block is 0..hi
    let eps = 1e-16;
    let mut iters = 0usize;
    while hi > 0 {
        if hi == 1 {
            eig[0] = h.0[0][0];
            break;
        }
        // Deflate converged subdiagonals.
        let mut deflated = false;
        for k in (1..hi).rev() {
            let off = h.0[k][k - 1].norm();
            if off <= eps * (h.0[k][k].norm() + h.0[k - 1][k - 1].norm() + 1e-300) {
                h.0[k][k - 1] = czero();
                if k == hi - 1 {
                    eig[hi - 1] = h.0[hi - 1][hi - 1];
                    hi -= 1;
                    deflated = true;
                    break;
                }
            }
        }
        if deflated {
            continue;
        }
        iters += 1;
        if iters > 500 {
            // Fall back to whatever the diagonal holds; callers polish with
            // Newton so a stall here only costs accuracy, not correctness.
            for k in 0..hi {
                eig[k] = h.0[k][k];
            }
            break;
        }
        // Wilkinson shift from the trailing 2x2 of the active block.
        let a11 = h.0[hi - 2][hi - 2];
        let a12 = h.0[hi - 2][hi - 1];
        let a21 = h.0[hi - 1][hi - 2];
        let a22 = h.0[hi - 1][hi - 1];
        let tr = a11 + a22;
        let disc = ((a11 - a22) * (a11 - a22) + a12 * a21 * 4.0).sqrt();
        let l1 = (tr + disc) * 0.5;
        let l2 = (tr - disc) * 0.5;
        let shift = if (l1 - a22).norm() < (l2 - a22).norm() { l1 } else { l2 };
        // Explicit shifted QR on the active block via Givens rotations.
        let mut g = Vec::with_capacity(hi - 1);
        for i in 0..hi {
            h.0[i][i] -= shift;
        }
        for k in 0..hi - 1 {
            let x = h.0[k][k];
            let y = h.0[k + 1][k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            if r == 0.0 {
                g.push((cone(), czero()));
                continue;
            }
            let c = x.conj() / r;
            let s = y.conj() / r;
            for j in k..N {
                let hk = h.0[k][j];
                let hk1 = h.0[k + 1][j];
                h.0[k][j] = c * hk + s * hk1;
                h.0[k + 1][j] = -s.conj() * hk + c.conj() * hk1;
            }
            g.push((c, s));
        }
        for (k, (c, s)) in g.iter().enumerate() {
            for i in 0..(k + 2).min(hi) {
                let hik = h.0[i][k];
                let hik1 = h.0[i][k + 1];
                h.0[i][k] = hik * c.conj() + hik1 * s.conj();
                h.0[i][k + 1] = -hik * *s + hik1 * *c;
            }
        }
        for i in 0..hi {
            h.0[i][i] += shift;
        }
    }
    for e in eig.iter_mut() {
        *e *= scale;
    }
    eig
}

/// Newton refinement of an eigenvalue of `a` starting from `mu0`, using
/// mu <- mu + 1/tr((A - mu I)^{-1}); quadratic near simple eigenvalues.
/// Returns the refined eigenvalue, or the nearest full-solve eigenvalue if
/// the iteration misbehaves.
pub fn eigenvalue_near(a: &Mat5, mu0: C64) -> C64 {
    let scale = a.max_abs().max(1.0);
    let mut mu = mu0;
    let mut last_step = f64::INFINITY;
    for _ in 0..40 {
        let shifted = a.shift(mu);
        let lu = match shifted.lu() {
            Some(lu) => lu,
            None => return mu, // exactly singular: mu is an eigenvalue
        };
        let mut tr = czero();
        for j in 0..N {
            let mut e = vec5_zero();
            e[j] = cone();
            tr += lu.solve(&e)[j];
        }
        if tr.norm() == 0.0 {
            break;
        }
        let step = 1.0 / tr;
        mu += step;
        let sn = step.norm();
        if sn < 1e-15 * scale {
            return mu;
        }
        if sn > 2.0 * last_step && sn > 1e-6 * scale {
            break; // diverging; fall back
        }
        last_step = sn;
    }
    // Fallback: full solve, pick nearest to the seed.
    let eig = eigenvalues(a);
    let mut best = eig[0];
    for e in eig.iter() {
        if (e - mu0).norm() < (best - mu0).norm() {
            best = *e;
        }
    }
    best
}

/// Eigenvector for a (nearly) known eigenvalue via inverse iteration.
pub fn eigenvector(a: &Mat5, mu: C64) -> Vec5 {
    let scale = a.max_abs().max(1.0);
    let shift = mu + C64::new(1e-14 * scale, 1e-14 * scale);
    let shifted = a.shift(shift);
    let lu = match shifted.lu() {
        Some(lu) => lu,
        None => {
            // Perturb a touch more; a 5x5 LU is singular only on a measure-zero set.
            let lu2 = a.shift(shift + C64::new(1e-12 * scale, 0.0)).lu();
            match lu2 {
                Some(lu) => lu,
                None => return [cone(), czero(), czero(), czero(), czero()],
            }
        }
    };
    let mut v: Vec5 = [
        C64::new(0.847, 0.12),
        C64::new(-0.31, 0.54),
        C64::new(0.224, -0.77),
        C64::new(0.65, 0.33),
        C64::new(-0.52, 0.19),
    ];
    for _ in 0..4 {
        v = lu.solve(&v);
        let n = vec5_norm(&v);
        if !n.is_finite() || n == 0.0 {
            break;
        }
        v = vec5_scale(&v, C64::new(1.0 / n, 0.0));
    }
    // Deterministic phase: largest component real positive.
    let mut imax = 0;
    for i in 1..N {
        if v[i].norm() > v[imax].norm() {
            imax = i;
        }
    }
    let ph = v[imax] / v[imax].norm();
    vec5_scale(&v, ph.conj())
}

/// Greedy multiset match: for each `want` value consume the nearest `have`
/// value; returns the largest matched distance.
pub fn multiset_distance(want: &[C64], have: &[C64]) -> f64 {
    let mut pool: Vec<C64> = have.to_vec();
    let mut worst: f64 = 0.0;
    for w in want {
        let (k, d) = pool
            .iter()
            .enumerate()
            .map(|(k, h)| (k, (h - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty pool");
        worst = worst.max(d);
        pool.swap_remove(k);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lu_solves_and_det() {
        let a = Mat5::from_fn(|i, j| c(((i * 3 + j * 7) % 11) as f64 - 3.0, ((i + 2 * j) % 5) as f64 * 0.5));
        let x0: Vec5 = [c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 3.0), c(4.0, -1.0), c(0.5, 0.5)];
        let b = a.matvec(&x0);
        let x = a.solve(&b).unwrap();
        for i in 0..N {
            assert!((x[i] - x0[i]).norm() < 1e-11, "component {i}");
        }
        let inv = a.inverse().unwrap();
        let id = a.matmul(&inv);
        for i in 0..N {
            for j in 0..N {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id.0[i][j] - c(want, 0.0)).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn hessenberg_preserves_trace_and_structure() {
        let a = Mat5::from_fn(|i, j| c(((i * 7 + j * 3 + 1) as f64).sin(), ((i + 2 * j) as f64).cos() * 0.5));
        let h = hessenberg(&a);
        assert!((a.trace() - h.trace()).norm() < 1e-12, "trace drift {:?}", a.trace() - h.trace());
        for i in 0..N {
            for j in 0..N {
                if i > j + 1 {
                    assert!(h.0[i][j].norm() < 1e-13, "not Hessenberg at ({i},{j})");
                }
            }
        }
        // Similarity: compare char poly at a probe point via determinants.
        let probe = c(0.37, -0.21);
        let da = a.shift(probe).det();
        let dh = h.shift(probe).det();
        assert!((da - dh).norm() < 1e-10 * da.norm().max(1.0), "{da:?} vs {dh:?}");
    }

    /// Well-conditioned eigenvector matrix (cond ~ 2.3).
    fn conditioning_matrix() -> Mat5 {
        Mat5::from_fn(|i, j| {
            let base = c(((i * 3 + j * 5 + 1) as f64).sin() * 0.25, ((2 * i + 3 * j) as f64).cos() * 0.2);
            if i == j {
                base + c(1.0, 0.0)
            } else {
                base
            }
        })
    }

    #[test]
    fn eigenvalues_of_constructed_matrix() {
        // A = V D V^{-1} with a triple semisimple eigenvalue, mirroring the
        // spectral structure of the detonation systems.
        let d = [c(-1.3, 0.4), c(0.7, -2.0), c(0.2, 1.0), c(0.2, 1.0), c(0.2, 1.0)];
        let v = conditioning_matrix();
        let dm = Mat5::from_fn(|i, j| if i == j { d[i] } else { czero() });
        let a = v.matmul(&dm).matmul(&v.inverse().unwrap());
        let eig = eigenvalues(&a);
        let dist = multiset_distance(&d, &eig);
        assert!(dist < 1e-11, "multiset distance {dist:.3e}");
    }

    #[test]
    fn eigenvalue_near_and_vector() {
        let d = [c(-2.0, 0.1), c(1.0, 0.0), c(0.5, -0.5), c(3.0, 2.0), c(0.0, 1.0)];
        let v = conditioning_matrix();
        let dm = Mat5::from_fn(|i, j| if i == j { d[i] } else { czero() });
        let a = v.matmul(&dm).matmul(&v.inverse().unwrap());
        let mu = eigenvalue_near(&a, c(-2.1, 0.2));
        assert!((mu - d[0]).norm() < 1e-12);
        let vec = eigenvector(&a, mu);
        let av = a.matvec(&vec);
        let res = vec5_norm(&vec5_sub(&av, &vec5_scale(&vec, mu)));
        assert!(res < 1e-10, "eigvec residual {res:.3e}");
    }
}
