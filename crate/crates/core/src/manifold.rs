//! Chart-defined Riemannian manifolds carrying a metric and a one-form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeomError;
use crate::fields::{Jet, JetMode, TensorField};
use crate::tensor::{Slot, Tensor, TensorError};

/// A single coordinate chart with a metric field g_ij and a one-form field
/// phi_i. `bounds` is the sampling box; fields stay evaluable for another
/// `stencil_slack` beyond it on every axis so finite-difference stencils never
/// leave the domain.
#[derive(Debug, Clone)]
pub struct ChartManifold {
    pub label: String,
    pub dim: usize,
    pub bounds: Vec<(f64, f64)>,
    pub stencil_slack: f64,
    pub metric: TensorField,
    pub one_form: TensorField,
    /// Whether the one-form is closed (d phi = 0) by construction.
    pub phi_closed: bool,
}

/// All jets needed at one point: the metric to second order, the one-form to
/// first order, plus the inverse metric and its derivative and the raised
/// one-form. Everything downstream is a pure function of these values.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub x: Vec<f64>,
    pub dim: usize,
    pub g: Tensor,
    pub dg: Tensor,
    pub ddg: Tensor,
    pub g_inv: Tensor,
    pub dg_inv: Tensor,
    pub phi: Tensor,
    pub dphi: Tensor,
    pub phi_up: Tensor,
    pub dphi_up: Tensor,
}

/// Deterministic batch of sample points inside a chart.
#[derive(Debug, Clone)]
pub struct SamplePlan {
    pub points: Vec<Vec<f64>>,
    pub seed: u64,
    pub bounds: Vec<(f64, f64)>,
}

impl ChartManifold {
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim
            && x.iter()
                .zip(&self.bounds)
                .all(|(&c, &(lo, hi))| c >= lo && c <= hi)
    }

    /// Whether fields may be evaluated at `x`: the sampling box plus the
    /// stencil slack, so derivative stencils around boundary samples work.
    pub fn in_evaluable_region(&self, x: &[f64]) -> bool {
        let s = self.stencil_slack;
        x.len() == self.dim
            && x.iter()
                .zip(&self.bounds)
                .all(|(&c, &(lo, hi))| c >= lo - s && c <= hi + s)
    }

    /// Box within which finite-difference stencils may evaluate fields.
    pub fn fd_limits(&self) -> Vec<(f64, f64)> {
        self.bounds
            .iter()
            .map(|&(lo, hi)| (lo - 2.0 * self.stencil_slack, hi + 2.0 * self.stencil_slack))
            .collect()
    }

    pub fn metric_jet(&self, x: &[f64], order: u8, mode: JetMode) -> Result<Jet, GeomError> {
        if !self.in_evaluable_region(x) {
            return Err(GeomError::OutOfChart { point: x.to_vec() });
        }
        let limits = self.fd_limits();
        self.metric.jet(x, order, mode, Some(&limits))
    }

    pub fn one_form_jet(&self, x: &[f64], order: u8, mode: JetMode) -> Result<Jet, GeomError> {
        if !self.in_evaluable_region(x) {
            return Err(GeomError::OutOfChart { point: x.to_vec() });
        }
        let limits = self.fd_limits();
        self.one_form.jet(x, order, mode, Some(&limits))
    }

    /// Evaluates and validates every jet needed by the connection and
    /// curvature layers at `x`.
    pub fn geometry(&self, x: &[f64], mode: JetMode) -> Result<PointGeometry, GeomError> {
        let n = self.dim;
        let gj = self.metric_jet(x, 2, mode)?;
        let pj = self.one_form_jet(x, 1, mode)?;
        let g = gj.value;
        let sym = g.symmetry_residual();
        if sym > 1e-12 * g.max_abs().max(1.0) {
            return Err(GeomError::MetricNotSymmetric(sym));
        }
        if !g.is_positive_definite() {
            return Err(GeomError::MetricNotPositiveDefinite);
        }
        let g_inv = g.matrix_inverse().map_err(|e| match e {
            TensorError::Singular => GeomError::SingularMetric,
            other => GeomError::Tensor(other),
        })?;
        let dg = gj.d1.expect("metric jet order 2 carries d1");
        let ddg = gj.d2.expect("metric jet order 2 carries d2");
        let phi = pj.value;
        let dphi = pj.d1.expect("one-form jet order 1 carries d1");

        // d_a g^{kl} = -g^{km} (d_a g_mp) g^{pl}
        let dg_inv = Tensor::from_fn(
            n,
            vec![Slot::Lower, Slot::Upper, Slot::Upper],
            |idx| {
                let (a, k, l) = (idx[0], idx[1], idx[2]);
                let mut acc = 0.0;
                for m in 0..n {
                    for p in 0..n {
                        acc -= g_inv.get(&[k, m]) * dg.get(&[a, m, p]) * g_inv.get(&[p, l]);
                    }
                }
                acc
            },
        );
        let phi_up = phi.raise(0, &g_inv)?;
        let dphi_up = Tensor::from_fn(n, vec![Slot::Lower, Slot::Upper], |idx| {
            let (a, k) = (idx[0], idx[1]);
            let mut acc = 0.0;
            for l in 0..n {
                acc += dg_inv.get(&[a, k, l]) * phi.get(&[l]) + g_inv.get(&[k, l]) * dphi.get(&[a, l]);
            }
            acc
        });

        Ok(PointGeometry {
            x: x.to_vec(),
            dim: n,
            g,
            dg,
            ddg,
            g_inv,
            dg_inv,
            phi,
            dphi,
            phi_up,
            dphi_up,
        })
    }

    /// Uniform deterministic samples strictly inside the chart bounds.
    pub fn sample_plan(&self, count: usize, seed: u64) -> SamplePlan {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..count)
            .map(|_| {
                self.bounds
                    .iter()
                    .map(|&(lo, hi)| {
                        let margin = 1e-3 * (hi - lo);
                        rng.gen_range((lo + margin)..(hi - margin))
                    })
                    .collect()
            })
            .collect();
        SamplePlan {
            points,
            seed,
            bounds: self.bounds.clone(),
        }
    }
}

impl PointGeometry {
    /// phi_p phi^p at this point.
    pub fn phi_square(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for p in 0..n {
            acc += self.phi.get(&[p]) * self.phi_up.get(&[p]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{poly_one_form_field, PolyScalar, TensorField};

    fn flat(dim: usize) -> ChartManifold {
        let metric = TensorField::new(dim, vec![Slot::Lower, Slot::Lower], move |_| {
            Tensor::from_fn(dim, vec![Slot::Lower, Slot::Lower], |idx| {
                if idx[0] == idx[1] {
                    1.0
                } else {
                    0.0
                }
            })
        })
        .with_analytic(
            move |_| Tensor::zeros(dim, vec![Slot::Lower, Slot::Lower, Slot::Lower]),
            move |_| {
                Tensor::zeros(
                    dim,
                    vec![Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower],
                )
            },
        );
        let one_form = poly_one_form_field(vec![PolyScalar::zero(dim); dim]);
        ChartManifold {
            label: "flat".into(),
            dim,
            bounds: vec![(-1.0, 1.0); dim],
            stencil_slack: 0.1,
            metric,
            one_form,
            phi_closed: true,
        }
    }

    #[test]
    fn geometry_of_flat_metric() {
        let m = flat(3);
        let pg = m.geometry(&[0.2, -0.3, 0.5], JetMode::Analytic).unwrap();
        assert_eq!(pg.dg.max_abs(), 0.0);
        assert_eq!(pg.ddg.max_abs(), 0.0);
        assert!(pg.g.max_diff(&Tensor::from_fn(3, vec![Slot::Lower, Slot::Lower], |i| {
            if i[0] == i[1] { 1.0 } else { 0.0 }
        })) == 0.0);
        assert_eq!(pg.phi_square(), 0.0);
    }

    #[test]
    fn out_of_chart_is_reported() {
        let m = flat(2);
        let err = m.geometry(&[2.0, 0.0], JetMode::Analytic).unwrap_err();
        assert!(matches!(err, GeomError::OutOfChart { .. }));
    }

    #[test]
    fn sample_plan_is_deterministic_and_inside() {
        let m = flat(3);
        let a = m.sample_plan(40, 9);
        let b = m.sample_plan(40, 9);
        assert_eq!(a.points, b.points);
        for p in &a.points {
            assert!(m.contains(p));
        }
    }
}
