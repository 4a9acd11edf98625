//! Built-in chart manifolds: flat space, round spheres, hyperbolic half-space
//! and seeded random SPD perturbations of the flat metric, each with analytic
//! jets and a configurable one-form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fields::{poly_one_form_field, poly_scalar_field, PolyScalar, TensorField};
use crate::manifold::ChartManifold;
use crate::tensor::{Slot, Tensor};

pub const MANIFOLD_NAMES: [&str; 4] = ["flat", "sphere", "hyperbolic", "random"];

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown manifold '{0}' (expected one of flat, sphere, hyperbolic, random)")]
    UnknownManifold(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// How the one-form phi is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiMode {
    Zero,
    Constant,
    /// phi = d(sigma0) for a seeded polynomial sigma0; exactly closed.
    Closed,
    /// Seeded polynomial covector with a rotational part, so d(phi) != 0.
    Generic,
}

impl PhiMode {
    pub fn label(&self) -> &'static str {
        match self {
            PhiMode::Zero => "zero",
            PhiMode::Constant => "constant",
            PhiMode::Closed => "closed",
            PhiMode::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        match s {
            "zero" => Ok(PhiMode::Zero),
            "constant" => Ok(PhiMode::Constant),
            "closed" => Ok(PhiMode::Closed),
            "generic" => Ok(PhiMode::Generic),
            other => Err(CatalogError::InvalidParams(format!(
                "unknown phi-mode '{other}' (expected zero|constant|closed|generic)"
            ))),
        }
    }

    pub fn is_closed(&self) -> bool {
        // A constant covector has vanishing exterior derivative on a chart.
        matches!(self, PhiMode::Zero | PhiMode::Constant | PhiMode::Closed)
    }
}

/// How the conformal factor sigma is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaMode {
    Zero,
    Constant,
    Polynomial,
}

impl SigmaMode {
    pub fn label(&self) -> &'static str {
        match self {
            SigmaMode::Zero => "zero",
            SigmaMode::Constant => "constant",
            SigmaMode::Polynomial => "polynomial",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        match s {
            "zero" => Ok(SigmaMode::Zero),
            "constant" => Ok(SigmaMode::Constant),
            "polynomial" => Ok(SigmaMode::Polynomial),
            other => Err(CatalogError::InvalidParams(format!(
                "unknown sigma-mode '{other}' (expected zero|constant|polynomial)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ManifoldParams {
    pub name: String,
    pub dim: usize,
    pub radius: f64,
    pub phi_mode: PhiMode,
    pub seed: u64,
}

impl ManifoldParams {
    pub fn new(name: &str, dim: usize, radius: f64, phi_mode: PhiMode, seed: u64) -> Self {
        Self {
            name: name.to_string(),
            dim,
            radius,
            phi_mode,
            seed,
        }
    }
}

/// splitmix64 step, used to derive independent sub-seeds deterministically.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Sum over axes of the largest coordinate magnitude; used to scale seeded
/// polynomial coefficients so field values stay O(1) on the chart.
fn axis_span(bounds: &[(f64, f64)]) -> f64 {
    bounds.iter().map(|&(lo, hi)| lo.abs().max(hi.abs())).sum()
}

pub fn build(params: &ManifoldParams) -> Result<ChartManifold, CatalogError> {
    let n = params.dim;
    if !(2..=6).contains(&n) {
        return Err(CatalogError::InvalidParams(format!(
            "dim must be in 2..=6, got {n}"
        )));
    }
    let mut m = match params.name.as_str() {
        "flat" => flat_manifold(n),
        "sphere" => {
            if params.radius <= 0.0 {
                return Err(CatalogError::InvalidParams("radius must be > 0".into()));
            }
            sphere_manifold(n, params.radius)
        }
        "hyperbolic" => {
            if params.radius <= 0.0 {
                return Err(CatalogError::InvalidParams("radius must be > 0".into()));
            }
            hyperbolic_manifold(n, params.radius)
        }
        "random" => random_manifold(n, mix_seed(params.seed, 0x6d65_7472)),
        other => return Err(CatalogError::UnknownManifold(other.to_string())),
    };
    let phi_seed = mix_seed(params.seed, 0x7068_6921);
    m.one_form = one_form_for(n, &m.bounds, params.phi_mode, phi_seed);
    m.phi_closed = params.phi_mode.is_closed();
    Ok(m)
}

fn identity_metric_field(n: usize) -> TensorField {
    TensorField::new(n, vec![Slot::Lower, Slot::Lower], move |_| {
        Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower], |idx| {
            if idx[0] == idx[1] {
                1.0
            } else {
                0.0
            }
        })
    })
    .with_analytic(
        move |_| Tensor::zeros(n, vec![Slot::Lower, Slot::Lower, Slot::Lower]),
        move |_| {
            Tensor::zeros(
                n,
                vec![Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower],
            )
        },
    )
}

fn flat_manifold(n: usize) -> ChartManifold {
    ChartManifold {
        label: "flat".into(),
        dim: n,
        bounds: vec![(-1.0, 1.0); n],
        stencil_slack: 0.08,
        metric: identity_metric_field(n),
        one_form: poly_one_form_field(vec![PolyScalar::zero(n); n]),
        phi_closed: true,
    }
}

/// Round sphere of radius r in hyperspherical coordinates: the metric is
/// diagonal with g_ii = r^2 * prod_{m<i} sin^2(x_m). Samples keep the
/// polar-like angles in [0.2, pi - 0.2] away from the coordinate poles.
fn sphere_manifold(n: usize, r: f64) -> ChartManifold {
    let r2 = r * r;
    let prefactor = move |x: &[f64], i: usize| -> f64 {
        let mut p = r2;
        for m in 0..i {
            let s = x[m].sin();
            p *= s * s;
        }
        p
    };
    let value = move |x: &[f64]| {
        Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower], |idx| {
            if idx[0] == idx[1] {
                prefactor(x, idx[0])
            } else {
                0.0
            }
        })
    };
    let d1 = move |x: &[f64]| {
        Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower, Slot::Lower], |idx| {
            let (a, i, j) = (idx[0], idx[1], idx[2]);
            if i != j || a >= i {
                return 0.0;
            }
            let cot = x[a].cos() / x[a].sin();
            prefactor(x, i) * 2.0 * cot
        })
    };
    let d2 = move |x: &[f64]| {
        Tensor::from_fn(
            n,
            vec![Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower],
            |idx| {
                let (a, b, i, j) = (idx[0], idx[1], idx[2], idx[3]);
                if i != j || a >= i || b >= i {
                    return 0.0;
                }
                let p = prefactor(x, i);
                if a == b {
                    let cot = x[a].cos() / x[a].sin();
                    p * (4.0 * cot * cot - 2.0 / (x[a].sin() * x[a].sin()))
                } else {
                    let cot_a = x[a].cos() / x[a].sin();
                    let cot_b = x[b].cos() / x[b].sin();
                    p * 4.0 * cot_a * cot_b
                }
            },
        )
    };
    let mut bounds = vec![(0.2, std::f64::consts::PI - 0.2); n - 1];
    bounds.push((0.2, 2.0 * std::f64::consts::PI - 0.2));
    ChartManifold {
        label: "sphere".into(),
        dim: n,
        bounds,
        stencil_slack: 0.08,
        metric: TensorField::new(n, vec![Slot::Lower, Slot::Lower], value).with_analytic(d1, d2),
        one_form: poly_one_form_field(vec![PolyScalar::zero(n); n]),
        phi_closed: true,
    }
}

/// Poincare half-space: g_ij = (r^2 / x_n^2) delta_ij on x_n > 0, with
/// constant sectional curvature -1/r^2.
fn hyperbolic_manifold(n: usize, r: f64) -> ChartManifold {
    let r2 = r * r;
    let last = n - 1;
    let value = move |x: &[f64]| {
        let w = r2 / (x[last] * x[last]);
        Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower], |idx| {
            if idx[0] == idx[1] {
                w
            } else {
                0.0
            }
        })
    };
    let d1 = move |x: &[f64]| {
        let w = -2.0 * r2 / x[last].powi(3);
        Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower, Slot::Lower], |idx| {
            if idx[0] == last && idx[1] == idx[2] {
                w
            } else {
                0.0
            }
        })
    };
    let d2 = move |x: &[f64]| {
        let w = 6.0 * r2 / x[last].powi(4);
        Tensor::from_fn(
            n,
            vec![Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower],
            |idx| {
                if idx[0] == last && idx[1] == last && idx[2] == idx[3] {
                    w
                } else {
                    0.0
                }
            },
        )
    };
    let mut bounds = vec![(-1.0, 1.0); n - 1];
    bounds.push((1.0, 2.5));
    ChartManifold {
        label: "hyperbolic".into(),
        dim: n,
        bounds,
        stencil_slack: 0.08,
        metric: TensorField::new(n, vec![Slot::Lower, Slot::Lower], value).with_analytic(d1, d2),
        one_form: poly_one_form_field(vec![PolyScalar::zero(n); n]),
        phi_closed: true,
    }
}

/// g = I + A(x) with A a seeded symmetric polynomial perturbation of degree
/// <= 2. Coefficients are scaled so every Gershgorin disc stays inside the
/// right half plane on the chart, which keeps g positive-definite; the SPD
/// property is still re-checked at every evaluated point.
fn random_manifold(n: usize, seed: u64) -> ChartManifold {
    let bounds = vec![(-1.0, 1.0); n];
    let s = axis_span(&bounds);
    let scale = 0.25 / (n as f64 * (1.0 + s + s * s));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries: Vec<PolyScalar> = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        entries.push(PolyScalar::zero(n));
    }
    for i in 0..n {
        for j in i..n {
            let p = PolyScalar::random(n, scale, &mut rng);
            entries[i * n + j] = p.clone();
            entries[j * n + i] = p;
        }
    }
    let ev = entries.clone();
    let e1 = entries.clone();
    let e2 = entries;
    let value = move |x: &[f64]| {
        Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower], |idx| {
            let base = if idx[0] == idx[1] { 1.0 } else { 0.0 };
            base + ev[idx[0] * n + idx[1]].value(x)
        })
    };
    let d1 = move |x: &[f64]| {
        Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower, Slot::Lower], |idx| {
            e1[idx[1] * n + idx[2]].grad(x, idx[0])
        })
    };
    let d2 = move |_: &[f64]| {
        Tensor::from_fn(
            n,
            vec![Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower],
            |idx| e2[idx[2] * n + idx[3]].hess(idx[0], idx[1]),
        )
    };
    ChartManifold {
        label: "random".into(),
        dim: n,
        bounds,
        stencil_slack: 0.08,
        metric: TensorField::new(n, vec![Slot::Lower, Slot::Lower], value).with_analytic(d1, d2),
        one_form: poly_one_form_field(vec![PolyScalar::zero(n); n]),
        phi_closed: true,
    }
}

fn one_form_for(n: usize, bounds: &[(f64, f64)], mode: PhiMode, seed: u64) -> TensorField {
    let s = axis_span(bounds);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps: Vec<PolyScalar> = match mode {
        PhiMode::Zero => vec![PolyScalar::zero(n); n],
        PhiMode::Constant => (0..n)
            .map(|_| {
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let magnitude = rng.gen_range(0.1..0.5);
                PolyScalar::constant(n, sign * magnitude)
            })
            .collect(),
        PhiMode::Closed => {
            let scale = 0.5 / (1.0 + s + s * s);
            let sigma0 = PolyScalar::random(n, scale, &mut rng);
            sigma0.gradient_components()
        }
        PhiMode::Generic => {
            let scale = 0.3 / (1.0 + 2.0 * s);
            let mut comps: Vec<PolyScalar> =
                (0..n).map(|_| PolyScalar::random(n, scale, &mut rng)).collect();
            // rotational kicker in the (x1, x2) plane guarantees d(phi) != 0
            comps[0].lin[1] -= 1.0;
            comps[1].lin[0] += 1.0;
            comps
        }
    };
    poly_one_form_field(comps)
}

/// Conformal factor field for the requested mode; polynomial coefficients are
/// scaled to the chart so exp(2 sigma) stays well-conditioned.
pub fn sigma_field(dim: usize, bounds: &[(f64, f64)], mode: SigmaMode, seed: u64) -> TensorField {
    let s = axis_span(bounds);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = match mode {
        SigmaMode::Zero => PolyScalar::zero(dim),
        SigmaMode::Constant => PolyScalar::constant(dim, rng.gen_range(-0.4..0.4)),
        SigmaMode::Polynomial => {
            let scale = 0.3 / (1.0 + s + s * s);
            PolyScalar::random(dim, scale, &mut rng)
        }
    };
    poly_scalar_field(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::JetMode;

    #[test]
    fn sphere_metric_at_equator_is_round() {
        let m = build(&ManifoldParams::new(
            "sphere",
            2,
            1.0,
            PhiMode::Zero,
            1,
        ))
        .unwrap();
        let x = [std::f64::consts::FRAC_PI_2, 1.0];
        let g = m.metric.eval(&x);
        assert!((g.get(&[0, 0]) - 1.0).abs() < 1e-15);
        assert!((g.get(&[1, 1]) - 1.0).abs() < 1e-15);
        assert!(g.get(&[0, 1]).abs() < 1e-15);
    }

    #[test]
    fn sphere_metric_derivative_matches_hand_value() {
        // d_theta g_22 = r^2 * 2 sin(theta) cos(theta) = 1 at theta = pi/4, r = 1.
        let m = build(&ManifoldParams::new(
            "sphere",
            2,
            1.0,
            PhiMode::Zero,
            1,
        ))
        .unwrap();
        let x = [std::f64::consts::FRAC_PI_4, 1.0];
        let jet = m.metric_jet(&x, 1, JetMode::Analytic).unwrap();
        assert!((jet.d1().get(&[0, 1, 1]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_manifold_is_deterministic_and_spd() {
        let p = ManifoldParams::new("random", 4, 1.0, PhiMode::Generic, 7);
        let a = build(&p).unwrap();
        let b = build(&p).unwrap();
        let plan = a.sample_plan(30, 99);
        for x in &plan.points {
            let ga = a.metric.eval(x);
            let gb = b.metric.eval(x);
            assert_eq!(ga.components(), gb.components());
            assert!(ga.is_positive_definite());
            let pa = a.one_form.eval(x);
            let pb = b.one_form.eval(x);
            assert_eq!(pa.components(), pb.components());
        }
    }

    #[test]
    fn closed_mode_has_exactly_symmetric_dphi() {
        let m = build(&ManifoldParams::new(
            "flat",
            3,
            1.0,
            PhiMode::Closed,
            11,
        ))
        .unwrap();
        assert!(m.phi_closed);
        let jet = m
            .one_form_jet(&[0.3, -0.1, 0.6], 1, JetMode::Analytic)
            .unwrap();
        let d = jet.d1();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(&[i, j]), d.get(&[j, i]));
            }
        }
    }

    #[test]
    fn generic_mode_is_not_closed() {
        let m = build(&ManifoldParams::new(
            "flat",
            3,
            1.0,
            PhiMode::Generic,
            11,
        ))
        .unwrap();
        assert!(!m.phi_closed);
        let jet = m
            .one_form_jet(&[0.2, 0.4, -0.5], 1, JetMode::Analytic)
            .unwrap();
        let d = jet.d1();
        let curl = d.get(&[0, 1]) - d.get(&[1, 0]);
        assert!(curl.abs() > 1.0, "curl = {curl}");
    }

    #[test]
    fn unknown_name_and_bad_params_are_rejected() {
        assert!(matches!(
            build(&ManifoldParams::new("torus", 3, 1.0, PhiMode::Zero, 0)).unwrap_err(),
            CatalogError::UnknownManifold(_)
        ));
        assert!(matches!(
            build(&ManifoldParams::new("sphere", 3, -1.0, PhiMode::Zero, 0)).unwrap_err(),
            CatalogError::InvalidParams(_)
        ));
        assert!(matches!(
            build(&ManifoldParams::new("flat", 1, 1.0, PhiMode::Zero, 0)).unwrap_err(),
            CatalogError::InvalidParams(_)
        ));
    }
}
