//! Tensor-valued chart fields and their jets.
//!
//! A field produces a tensor value at every chart point and may carry
//! analytic first/second partials. When analytic partials are absent (or a
//! finite-difference evaluation is requested explicitly) the derivatives come
//! from central differences refined by one Richardson extrapolation step, so
//! the same stencils double as an independent oracle for the analytic jets.

use std::sync::Arc;

use crate::error::GeomError;
use crate::tensor::{Slot, Tensor};

/// Which derivative source a jet evaluation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetMode {
    Analytic,
    FiniteDifference,
}

impl JetMode {
    pub fn label(&self) -> &'static str {
        match self {
            JetMode::Analytic => "analytic",
            JetMode::FiniteDifference => "finite-difference",
        }
    }
}

/// Value plus requested partial derivatives at one point. Derivative slots
/// come first: `d1` has shape (n, value-shape), `d2` has (n, n, value-shape)
/// and is symmetric in the two derivative slots.
#[derive(Debug, Clone)]
pub struct Jet {
    pub value: Tensor,
    pub d1: Option<Tensor>,
    pub d2: Option<Tensor>,
}

impl Jet {
    pub fn d1(&self) -> &Tensor {
        self.d1.as_ref().expect("jet carries no first partials")
    }

    pub fn d2(&self) -> &Tensor {
        self.d2.as_ref().expect("jet carries no second partials")
    }
}

/// Step scale for first partials: h = 1e-5 * (1 + |x_k|) per axis.
pub const FD_FIRST_SCALE: f64 = 1e-5;
/// Step scale for second partials: h = 1e-3 * (1 + |x_k|) per axis.
pub const FD_SECOND_SCALE: f64 = 1e-3;

fn check_offset(
    limits: Option<&[(f64, f64)]>,
    axis: usize,
    coord: f64,
) -> Result<(), GeomError> {
    if let Some(b) = limits {
        let (lo, hi) = b[axis];
        if coord < lo || coord > hi {
            return Err(GeomError::StencilOutOfChart { axis, coord });
        }
    }
    Ok(())
}

/// Central-difference first partials, derivative slot first. The 2-point
/// stencil is evaluated at h, h/2 and h/4 and combined by two Richardson
/// steps; the steep fields this differentiates (curvature components grow
/// like csc^4 toward the sphere chart's sampling margin) need the h^4 error
/// term gone to stay within the pipeline tolerances.
pub fn fd_first_partials<F>(
    f: &F,
    x: &[f64],
    scale: f64,
    limits: Option<&[(f64, f64)]>,
) -> Result<Tensor, GeomError>
where
    F: Fn(&[f64]) -> Result<Tensor, GeomError>,
{
    let n = x.len();
    let mut xp = x.to_vec();
    let mut rows: Vec<Tensor> = Vec::with_capacity(n);
    for k in 0..n {
        let h = scale * (1.0 + x[k].abs());
        check_offset(limits, k, x[k] - h)?;
        check_offset(limits, k, x[k] + h)?;
        let mut stencil = |step: f64| -> Result<Tensor, GeomError> {
            xp[k] = x[k] + step;
            let fp = f(&xp)?;
            xp[k] = x[k] - step;
            let fm = f(&xp)?;
            xp[k] = x[k];
            Ok((&fp - &fm).scale(1.0 / (2.0 * step)))
        };
        let refine = |coarse: Tensor, fine: Tensor, factor: f64| {
            (&fine.scale(factor) - &coarse).scale(1.0 / (factor - 1.0))
        };
        let r1_h = refine(stencil(h)?, stencil(h / 2.0)?, 4.0);
        let r1_h2 = refine(stencil(h / 2.0)?, stencil(h / 4.0)?, 4.0);
        rows.push(refine(r1_h, r1_h2, 16.0));
    }
    Ok(stack_rows(n, rows))
}

/// Second partials from the standard 3-point diagonal / 4-point mixed central
/// stencils, refined by one Richardson extrapolation step (the plain stencils
/// are evaluated at h and h/2 and combined as (4*D(h/2) - D(h))/3). Output is
/// symmetric in the two leading derivative slots by construction.
pub fn fd_second_partials<F>(
    f: &F,
    x: &[f64],
    scale: f64,
    limits: Option<&[(f64, f64)]>,
) -> Result<Tensor, GeomError>
where
    F: Fn(&[f64]) -> Result<Tensor, GeomError>,
{
    let n = x.len();
    let f0 = f(x)?;
    let dim = f0.dim();
    let inner_rank = f0.rank();
    let mut xp = x.to_vec();

    let steps: Vec<f64> = (0..n).map(|k| scale * (1.0 + x[k].abs())).collect();
    for k in 0..n {
        check_offset(limits, k, x[k] - steps[k])?;
        check_offset(limits, k, x[k] + steps[k])?;
    }

    // entries[a][b] for a <= b
    let mut entries: Vec<Option<Tensor>> = vec![None; n * n];

    for k in 0..n {
        let h = steps[k];
        let stencil = |xp: &mut Vec<f64>, step: f64| -> Result<Tensor, GeomError> {
            xp[k] = x[k] + step;
            let fp = f(xp)?;
            xp[k] = x[k] - step;
            let fm = f(xp)?;
            xp[k] = x[k];
            Ok((&(&fp + &fm) - &f0.scale(2.0)).scale(1.0 / (step * step)))
        };
        let coarse = stencil(&mut xp, h)?;
        let fine = stencil(&mut xp, h / 2.0)?;
        entries[k * n + k] = Some((&fine.scale(4.0) - &coarse).scale(1.0 / 3.0));
    }

    for a in 0..n {
        for b in (a + 1)..n {
            let (ha, hb) = (steps[a], steps[b]);
            let mut cross = |sa: f64, sb: f64| -> Result<Tensor, GeomError> {
                let eval = |xp: &mut Vec<f64>, da: f64, db: f64| -> Result<Tensor, GeomError> {
                    xp[a] = x[a] + da;
                    xp[b] = x[b] + db;
                    let v = f(xp)?;
                    xp[a] = x[a];
                    xp[b] = x[b];
                    Ok(v)
                };
                let pp = eval(&mut xp, sa, sb)?;
                let pm = eval(&mut xp, sa, -sb)?;
                let mp = eval(&mut xp, -sa, sb)?;
                let mm = eval(&mut xp, -sa, -sb)?;
                Ok((&(&pp - &pm) - &(&mp - &mm)).scale(1.0 / (4.0 * sa * sb)))
            };
            let coarse = cross(ha, hb)?;
            let fine = cross(ha / 2.0, hb / 2.0)?;
            entries[a * n + b] = Some((&fine.scale(4.0) - &coarse).scale(1.0 / 3.0));
        }
    }

    let mut variance = vec![Slot::Lower, Slot::Lower];
    variance.extend_from_slice(f0.variance());
    let out = Tensor::from_fn(dim, variance, |idx| {
        let (a, b) = (idx[0], idx[1]);
        let key = if a <= b { a * n + b } else { b * n + a };
        let entry = entries[key].as_ref().expect("second-partial entry filled");
        if inner_rank == 0 {
            entry.as_scalar()
        } else {
            entry.get(&idx[2..])
        }
    });
    Ok(out)
}

fn stack_rows(n: usize, rows: Vec<Tensor>) -> Tensor {
    let dim = rows[0].dim();
    debug_assert_eq!(dim, n);
    let inner_rank = rows[0].rank();
    let mut variance = vec![Slot::Lower];
    variance.extend_from_slice(rows[0].variance());
    Tensor::from_fn(dim, variance, |idx| {
        if inner_rank == 0 {
            rows[idx[0]].as_scalar()
        } else {
            rows[idx[0]].get(&idx[1..])
        }
    })
}

type FieldFn = Arc<dyn Fn(&[f64]) -> Tensor + Send + Sync>;

/// A tensor-valued field over a coordinate chart.
#[derive(Clone)]
pub struct TensorField {
    dim: usize,
    variance: Vec<Slot>,
    value: FieldFn,
    d1: Option<FieldFn>,
    d2: Option<FieldFn>,
}

impl std::fmt::Debug for TensorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TensorField")
            .field("dim", &self.dim)
            .field("variance", &self.variance)
            .field("analytic", &self.has_analytic())
            .finish()
    }
}

impl TensorField {
    pub fn new(
        dim: usize,
        variance: Vec<Slot>,
        value: impl Fn(&[f64]) -> Tensor + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            variance,
            value: Arc::new(value),
            d1: None,
            d2: None,
        }
    }

    /// Attaches analytic first and second partials (derivative slots first).
    pub fn with_analytic(
        mut self,
        d1: impl Fn(&[f64]) -> Tensor + Send + Sync + 'static,
        d2: impl Fn(&[f64]) -> Tensor + Send + Sync + 'static,
    ) -> Self {
        self.d1 = Some(Arc::new(d1));
        self.d2 = Some(Arc::new(d2));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variance(&self) -> &[Slot] {
        &self.variance
    }

    pub fn has_analytic(&self) -> bool {
        self.d1.is_some() && self.d2.is_some()
    }

    pub fn eval(&self, x: &[f64]) -> Tensor {
        (self.value)(x)
    }

    /// Analytic first partials, if the field carries them.
    pub fn analytic_d1(&self, x: &[f64]) -> Option<Tensor> {
        self.d1.as_ref().map(|d| d(x))
    }

    /// Analytic second partials, if the field carries them.
    pub fn analytic_d2(&self, x: &[f64]) -> Option<Tensor> {
        self.d2.as_ref().map(|d| d(x))
    }

    /// Value and partials up to `order` (0, 1 or 2). Analytic partials are
    /// used when present unless finite differences are requested; missing
    /// analytic partials always fall back to the FD stencils.
    pub fn jet(
        &self,
        x: &[f64],
        order: u8,
        mode: JetMode,
        limits: Option<&[(f64, f64)]>,
    ) -> Result<Jet, GeomError> {
        if order > 2 {
            return Err(GeomError::OrderUnsupported(order));
        }
        let value = self.eval(x);
        let fd_value = |x: &[f64]| Ok(self.eval(x));
        let d1 = if order >= 1 {
            Some(match (&self.d1, mode) {
                (Some(d1), JetMode::Analytic) => d1(x),
                _ => fd_first_partials(&fd_value, x, FD_FIRST_SCALE, limits)?,
            })
        } else {
            None
        };
        let d2 = if order >= 2 {
            Some(match (&self.d2, mode) {
                (Some(d2), JetMode::Analytic) => d2(x),
                _ => fd_second_partials(&fd_value, x, FD_SECOND_SCALE, limits)?,
            })
        } else {
            None
        };
        Ok(Jet { value, d1, d2 })
    }

    /// Plain finite-difference partials of the requested order, regardless of
    /// any analytic jets the field carries.
    pub fn fd_partials(
        &self,
        x: &[f64],
        order: u8,
        limits: Option<&[(f64, f64)]>,
    ) -> Result<Tensor, GeomError> {
        let fd_value = |x: &[f64]| Ok(self.eval(x));
        match order {
            1 => fd_first_partials(&fd_value, x, FD_FIRST_SCALE, limits),
            2 => fd_second_partials(&fd_value, x, FD_SECOND_SCALE, limits),
            o => Err(GeomError::OrderUnsupported(o)),
        }
    }
}

/// Polynomial scalar of total degree <= 2 with exact jets:
/// p(x) = c0 + b.x + x'Qx with Q symmetric.
#[derive(Debug, Clone)]
pub struct PolyScalar {
    pub c0: f64,
    pub lin: Vec<f64>,
    pub quad: Vec<f64>, // n*n row-major, symmetric
}

impl PolyScalar {
    pub fn zero(dim: usize) -> Self {
        Self {
            c0: 0.0,
            lin: vec![0.0; dim],
            quad: vec![0.0; dim * dim],
        }
    }

    pub fn constant(dim: usize, c0: f64) -> Self {
        let mut p = Self::zero(dim);
        p.c0 = c0;
        p
    }

    /// Seeded coefficients, each uniform in [-scale, scale], with the
    /// quadratic part symmetrized.
    pub fn random(dim: usize, scale: f64, rng: &mut impl rand::Rng) -> Self {
        let c0 = rng.gen_range(-scale..scale);
        let lin = (0..dim).map(|_| rng.gen_range(-scale..scale)).collect();
        let mut quad = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = rng.gen_range(-scale..scale);
                quad[i * dim + j] = v;
                quad[j * dim + i] = v;
            }
        }
        Self { c0, lin, quad }
    }

    pub fn dim(&self) -> usize {
        self.lin.len()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let n = self.dim();
        let mut v = self.c0;
        for i in 0..n {
            v += self.lin[i] * x[i];
            for j in 0..n {
                v += self.quad[i * n + j] * x[i] * x[j];
            }
        }
        v
    }

    pub fn grad(&self, x: &[f64], k: usize) -> f64 {
        let n = self.dim();
        let mut v = self.lin[k];
        for j in 0..n {
            v += 2.0 * self.quad[k * n + j] * x[j];
        }
        v
    }

    pub fn hess(&self, k: usize, l: usize) -> f64 {
        2.0 * self.quad[k * self.dim() + l]
    }

    /// Gradient as a new polynomial family: component k of the gradient is
    /// itself degree <= 1, which keeps closed one-forms exactly closed.
    pub fn gradient_components(&self) -> Vec<PolyScalar> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut p = PolyScalar::zero(n);
                p.c0 = self.lin[k];
                for j in 0..n {
                    p.lin[j] = 2.0 * self.quad[k * n + j];
                }
                p
            })
            .collect()
    }
}

/// Scalar field (rank 0) backed by a quadratic polynomial, with exact jets.
pub fn poly_scalar_field(p: PolyScalar) -> TensorField {
    let n = p.dim();
    let pv = p.clone();
    let pd1 = p.clone();
    let pd2 = p;
    TensorField::new(n, vec![], move |x| Tensor::scalar(n, pv.value(x))).with_analytic(
        move |x| Tensor::from_fn(n, vec![Slot::Lower], |idx| pd1.grad(x, idx[0])),
        move |_| {
            Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower], |idx| {
                pd2.hess(idx[0], idx[1])
            })
        },
    )
}

/// One-form field (rank 1, lower) from per-component polynomials.
pub fn poly_one_form_field(comps: Vec<PolyScalar>) -> TensorField {
    let n = comps.len();
    let cv = comps.clone();
    let cd1 = comps.clone();
    let cd2 = comps;
    TensorField::new(n, vec![Slot::Lower], move |x| {
        Tensor::from_fn(n, vec![Slot::Lower], |idx| cv[idx[0]].value(x))
    })
    .with_analytic(
        move |x| {
            Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower], |idx| {
                cd1[idx[1]].grad(x, idx[0])
            })
        },
        move |_| {
            Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower, Slot::Lower], |idx| {
                cd2[idx[2]].hess(idx[0], idx[1])
            })
        },
    )
}
