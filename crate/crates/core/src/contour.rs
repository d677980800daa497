//! Piecewise contours in the complex position plane: straight segments and
//! circular arcs, oriented, with an anchor on the real axis. Turning-point
//! detours and the out-around-back reflection loop are provided as builders.

use crate::C64;

#[derive(Clone, Copy, Debug)]
pub enum Piece {
    Segment { z0: C64, z1: C64 },
    /// theta runs from th0 to th1 (radians); th1 < th0 traverses clockwise.
    Arc { center: C64, radius: f64, th0: f64, th1: f64 },
}

impl Piece {
    pub fn point(&self, t: f64) -> C64 {
        match *self {
            Piece::Segment { z0, z1 } => z0 + (z1 - z0) * t,
            Piece::Arc { center, radius, th0, th1 } => {
                let th = th0 + (th1 - th0) * t;
                center + C64::new(0.0, th).exp() * radius
            }
        }
    }

    /// dz/dt for the unit parameterization t in [0, 1].
    pub fn deriv(&self, t: f64) -> C64 {
        match *self {
            Piece::Segment { z0, z1 } => z1 - z0,
            Piece::Arc { center: _, radius, th0, th1 } => {
                let th = th0 + (th1 - th0) * t;
                C64::new(0.0, th1 - th0) * C64::new(0.0, th).exp() * radius
            }
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { z0, z1 } => (z1 - z0).norm(),
            Piece::Arc { radius, th0, th1, .. } => radius * (th1 - th0).abs(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Contour {
    pieces: Vec<Piece>,
}

impl Contour {
    pub fn new(pieces: Vec<Piece>) -> Self {
        Contour { pieces }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn start(&self) -> C64 {
        self.pieces.first().map(|p| p.point(0.0)).unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn end(&self) -> C64 {
        self.pieces.last().map(|p| p.point(1.0)).unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length()).sum()
    }

    pub fn push(&mut self, p: Piece) {
        self.pieces.push(p);
    }

    fn seg(z0: C64, z1: C64) -> Piece {
        Piece::Segment { z0, z1 }
    }

    /// Straight run along the real axis.
    pub fn real_segment(a: f64, b: f64) -> Contour {
        Contour::new(vec![Self::seg(C64::new(a, 0.0), C64::new(b, 0.0))])
    }

    /// Real-axis path from `a` to `b` with semicircular excursions of radius
    /// `r` around each of the given interior points, in the upper half plane
    /// when the paired flag is true.
    pub fn with_detours(a: f64, b: f64, detours: &[(f64, bool)], r: f64) -> Contour {
        assert!(b > a);
        let mut ds: Vec<(f64, bool)> = detours
            .iter()
            .copied()
            .filter(|(x, _)| *x > a + r && *x < b - r)
            .collect();
        ds.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut pieces = Vec::new();
        let mut cur = a;
        for (x, upper) in ds {
            if x - r > cur {
                pieces.push(Self::seg(C64::new(cur, 0.0), C64::new(x - r, 0.0)));
            }
            let (th0, th1) = if upper {
                (std::f64::consts::PI, 0.0)
            } else {
                (-std::f64::consts::PI, 0.0)
            };
            pieces.push(Piece::Arc { center: C64::new(x, 0.0), radius: r, th0, th1 });
            cur = x + r;
        }
        if b > cur {
            pieces.push(Self::seg(C64::new(cur, 0.0), C64::new(b, 0.0)));
        }
        Contour::new(pieces)
    }

    /// Out-around-back loop: 0 to x*-r on the axis, a full clockwise circle
    /// of radius r around x*, then back to 0 on the axis.
    pub fn reflection_loop(x_star: f64, r: f64) -> Contour {
        assert!(x_star - r > 0.0, "loop radius must leave room to the origin");
        let a = C64::new(0.0, 0.0);
        let b = C64::new(x_star - r, 0.0);
        Contour::new(vec![
            Self::seg(a, b),
            Piece::Arc {
                center: C64::new(x_star, 0.0),
                radius: r,
                th0: std::f64::consts::PI,
                th1: -std::f64::consts::PI,
            },
            Self::seg(b, a),
        ])
    }

    /// Closed axis-aligned rectangle [x0, x1] x [0, height], counterclockwise,
    /// starting and ending at x0 on the real axis. Negative height dips into
    /// the lower half plane.
    pub fn rectangle(x0: f64, x1: f64, height: f64) -> Contour {
        let a = C64::new(x0, 0.0);
        let b = C64::new(x1, 0.0);
        let bh = C64::new(x1, height);
        let ah = C64::new(x0, height);
        Contour::new(vec![Self::seg(a, b), Self::seg(b, bh), Self::seg(bh, ah), Self::seg(ah, a)])
    }

    /// Rectangle excursion that runs from `a` to `b` on the real axis but lifts
    /// over [x0, x1] at the given height.
    pub fn lifted_path(a: f64, b: f64, x0: f64, x1: f64, height: f64) -> Contour {
        assert!(a <= x0 && x0 < x1 && x1 <= b);
        let mut pieces = Vec::new();
        if x0 > a {
            pieces.push(Self::seg(C64::new(a, 0.0), C64::new(x0, 0.0)));
        }
        pieces.push(Self::seg(C64::new(x0, 0.0), C64::new(x0, height)));
        pieces.push(Self::seg(C64::new(x0, height), C64::new(x1, height)));
        pieces.push(Self::seg(C64::new(x1, height), C64::new(x1, 0.0)));
        if b > x1 {
            pieces.push(Self::seg(C64::new(x1, 0.0), C64::new(b, 0.0)));
        }
        Contour::new(pieces)
    }

    /// Small closed circle, counterclockwise, anchored at its rightmost point.
    pub fn small_loop(center: f64, r: f64) -> Contour {
        Contour::new(vec![Piece::Arc {
            center: C64::new(center, 0.0),
            radius: r,
            th0: 0.0,
            th1: 2.0 * std::f64::consts::PI,
        }])
    }
}
