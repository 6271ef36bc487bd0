//! Adaptive quadrature with an embedded Gauss–Kronrod error estimate.
//!
//! A 7-point Gauss rule nested inside a 15-point Kronrod rule gives each
//! interval an integral estimate plus an error estimate for free; the
//! interval with the worst error is bisected until the summed error drops
//! below the requested absolute tolerance. All nodes are interior, so
//! integrands only defined on the open interval (like the failure-probability
//! integrand, which extends continuously by 0 at its lower endpoint) are
//! handled without special casing.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerance and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    abs_tol: f64,
    max_subdivisions: usize,
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                value: abs_tol,
                constraint: "> 0 and finite",
            });
        }
        if max_subdivisions < 1 {
            return Err(Error::InvalidParameter {
                name: "max_subdivisions",
                value: max_subdivisions as f64,
                constraint: ">= 1",
            });
        }
        Ok(Self {
            abs_tol,
            max_subdivisions,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_subdivisions(&self) -> usize {
        self.max_subdivisions
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_subdivisions: 200,
        }
    }
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the 7-point
// Gauss rule embedded at the odd-indexed nodes.
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

/// One evaluated interval: Kronrod value plus |Kronrod - Gauss| error.
#[derive(Debug, Clone, Copy)]
struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl Interval {
    fn eval<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Self {
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let f_center = f(center);
        let mut kronrod = WGK[7] * f_center;
        let mut gauss = WG[3] * f_center;
        for j in 0..7 {
            let offset = half * XGK[j];
            let pair = f(center - offset) + f(center + offset);
            kronrod += WGK[j] * pair;
            if j % 2 == 1 {
                gauss += WG[j / 2] * pair;
            }
        }
        let value = kronrod * half;
        let error = ((kronrod - gauss) * half).abs();
        Self {
            a,
            b,
            value,
            error,
        }
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]` to within `cfg.abs_tol` absolute error.
///
/// Fails with [`Error::QuadratureNonConvergence`] when the subdivision budget
/// is exhausted first, and with [`Error::NonFiniteIntegrand`] if `f` produces
/// NaN or infinity anywhere it is sampled.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: b - a,
            constraint: "a <= b, both finite",
        });
    }
    if a == b {
        return Ok(0.0);
    }

    let first = Interval::eval(&f, a, b);
    if !first.value.is_finite() {
        return Err(Error::NonFiniteIntegrand { a, b });
    }

    let mut heap = BinaryHeap::new();
    let mut total = first.value;
    let mut total_error = first.error;
    heap.push(first);

    let mut subdivisions = 0usize;
    while total_error > cfg.abs_tol {
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                error_estimate: total_error,
                abs_tol: cfg.abs_tol,
                subdivisions,
                a,
                b,
            });
        }
        let worst = heap.pop().expect("heap holds at least one interval");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval is at floating-point resolution; its error estimate
            // cannot shrink any further
            return Err(Error::QuadratureNonConvergence {
                error_estimate: total_error,
                abs_tol: cfg.abs_tol,
                subdivisions,
                a,
                b,
            });
        }
        let left = Interval::eval(&f, worst.a, mid);
        let right = Interval::eval(&f, mid, worst.b);
        if !(left.value.is_finite() && right.value.is_finite()) {
            return Err(Error::NonFiniteIntegrand {
                a: worst.a,
                b: worst.b,
            });
        }
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }

    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn known_antiderivative() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|y: f64| (-y).exp(), 0.0, 1.0, &cfg).unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() <= 1e-10);
    }

    #[test]
    fn empty_interval_is_zero() {
        let cfg = QuadratureConfig::default();
        assert_eq!(integrate(|_| 1.0, 2.0, 2.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn reversed_interval_rejected() {
        let cfg = QuadratureConfig::default();
        assert!(integrate(|_| 1.0, 1.0, 0.0, &cfg).is_err());
    }

    #[test]
    fn oscillatory_integrand_converges() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|x: f64| (10.0 * x).sin(), 0.0, std::f64::consts::PI, &cfg).unwrap();
        // antiderivative: (1 - cos(10*pi)) / 10 = 0
        assert_relative_eq!(
            v,
            (1.0 - (10.0 * std::f64::consts::PI).cos()) / 10.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn budget_exhaustion_reports_diagnostics() {
        let cfg = QuadratureConfig::new(1e-16, 2).unwrap();
        let err = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &cfg).unwrap_err();
        match err {
            Error::QuadratureNonConvergence {
                subdivisions,
                abs_tol,
                ..
            } => {
                assert_eq!(subdivisions, 2);
                assert_eq!(abs_tol, 1e-16);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_detected() {
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            integrate(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0, &cfg),
            Err(Error::NonFiniteIntegrand { .. }) | Err(Error::QuadratureNonConvergence { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0.0, 10).is_err());
        assert!(QuadratureConfig::new(1e-10, 0).is_err());
        let cfg = QuadratureConfig::default();
        assert_eq!(cfg.abs_tol(), 1e-10);
        assert_eq!(cfg.max_subdivisions(), 200);
    }
}
