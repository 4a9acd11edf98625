//! Conformal rescaling g -> exp(2 sigma) g, the induced transformation of the
//! connection pair, and the invariance of the Weyl combination of U = R + R*.

use crate::connection::{dual, ssnmc, ConnectionCoeffs, ConnectionKind};
use crate::curvature::{metric_pattern, riemann_from_coeffs, weyl_from_parts};
use crate::error::GeomError;
use crate::fields::{Jet, JetMode, TensorField};
use crate::manifold::{ChartManifold, PointGeometry};
use crate::tensor::{Slot, Tensor};

/// Scalar conformal factor with jets to second order.
#[derive(Debug, Clone)]
pub struct ConformalFactor {
    pub sigma: TensorField,
}

impl ConformalFactor {
    pub fn new(sigma: TensorField) -> Self {
        assert_eq!(sigma.variance().len(), 0, "conformal factor must be scalar");
        Self { sigma }
    }

    pub fn jet(&self, m: &ChartManifold, x: &[f64], mode: JetMode) -> Result<Jet, GeomError> {
        let limits = m.fd_limits();
        self.sigma.jet(x, 2, mode, Some(&limits))
    }
}

/// The manifold with metric exp(2 sigma) g and the one-form carried over
/// unchanged. Jets are chained analytically when both inputs have them.
pub fn conformal_metric(m: &ChartManifold, f: &ConformalFactor) -> ChartManifold {
    let n = m.dim;
    let base = m.metric.clone();
    let sigma = f.sigma.clone();

    let value = {
        let base = base.clone();
        let sigma = sigma.clone();
        move |x: &[f64]| {
            let w = (2.0 * sigma.eval(x).as_scalar()).exp();
            base.eval(x).scale(w)
        }
    };
    let mut metric = TensorField::new(n, vec![Slot::Lower, Slot::Lower], value);

    if base.has_analytic() && sigma.has_analytic() {
        let d1 = {
            let base = base.clone();
            let sigma = sigma.clone();
            move |x: &[f64]| {
                let s = sigma.eval(x).as_scalar();
                let ds = sigma.analytic_d1(x).expect("sigma d1");
                let g = base.eval(x);
                let dg = base.analytic_d1(x).expect("metric d1");
                let w = (2.0 * s).exp();
                Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower, Slot::Lower], |idx| {
                    let (a, i, j) = (idx[0], idx[1], idx[2]);
                    w * (2.0 * ds.get(&[a]) * g.get(&[i, j]) + dg.get(&[a, i, j]))
                })
            }
        };
        let d2 = {
            let base = base.clone();
            let sigma = sigma.clone();
            move |x: &[f64]| {
                let s = sigma.eval(x).as_scalar();
                let ds = sigma.analytic_d1(x).expect("sigma d1");
                let dds = sigma.analytic_d2(x).expect("sigma d2");
                let g = base.eval(x);
                let dg = base.analytic_d1(x).expect("metric d1");
                let ddg = base.analytic_d2(x).expect("metric d2");
                let w = (2.0 * s).exp();
                Tensor::from_fn(
                    n,
                    vec![Slot::Lower, Slot::Lower, Slot::Lower, Slot::Lower],
                    |idx| {
                        let (a, b, i, j) = (idx[0], idx[1], idx[2], idx[3]);
                        let sa = ds.get(&[a]);
                        let sb = ds.get(&[b]);
                        w * ((4.0 * sa * sb + 2.0 * dds.get(&[a, b])) * g.get(&[i, j])
                            + 2.0 * sa * dg.get(&[b, i, j])
                            + 2.0 * sb * dg.get(&[a, i, j])
                            + ddg.get(&[a, b, i, j]))
                    },
                )
            }
        };
        metric = metric.with_analytic(d1, d2);
    }

    ChartManifold {
        label: format!("{}+conformal", m.label),
        dim: n,
        bounds: m.bounds.clone(),
        stencil_slack: m.stencil_slack,
        metric,
        one_form: m.one_form.clone(),
        phi_closed: m.phi_closed,
    }
}

/// The additive term sigma_i d^k_j + sigma_j d^k_i - g_ij sigma^k and its
/// first derivative; sigma^k is raised with the untransformed metric.
fn transform_term(pg: &PointGeometry, sjet: &Jet) -> (Tensor, Tensor) {
    let n = pg.dim;
    let ds = sjet.d1();
    let dds = sjet.d2();
    let sigma_up = ds.raise(0, &pg.g_inv).expect("raising sigma gradient");
    // d_a sigma^k = d_a g^{kl} sigma_l + g^{kl} sigma_{al}
    let dsigma_up = Tensor::from_fn(n, vec![Slot::Lower, Slot::Upper], |idx| {
        let (a, k) = (idx[0], idx[1]);
        let mut acc = 0.0;
        for l in 0..n {
            acc += pg.dg_inv.get(&[a, k, l]) * ds.get(&[l])
                + pg.g_inv.get(&[k, l]) * dds.get(&[a, l]);
        }
        acc
    });
    let b = Tensor::from_fn(n, vec![Slot::Upper, Slot::Lower, Slot::Lower], |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let mut acc = 0.0;
        if k == j {
            acc += ds.get(&[i]);
        }
        if k == i {
            acc += ds.get(&[j]);
        }
        acc - pg.g.get(&[i, j]) * sigma_up.get(&[k])
    });
    let db = Tensor::from_fn(
        n,
        vec![Slot::Lower, Slot::Upper, Slot::Lower, Slot::Lower],
        |idx| {
            let (a, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
            let mut acc = 0.0;
            if k == j {
                acc += dds.get(&[a, i]);
            }
            if k == i {
                acc += dds.get(&[a, j]);
            }
            acc - pg.dg.get(&[a, i, j]) * sigma_up.get(&[k])
                - pg.g.get(&[i, j]) * dsigma_up.get(&[a, k])
        },
    );
    (b, db)
}

/// Both connections transformed by the conformal change: the same symmetric
/// term is added to each, so their difference is untouched.
pub fn transformed_connections(
    m: &ChartManifold,
    f: &ConformalFactor,
    x: &[f64],
    mode: JetMode,
) -> Result<(ConnectionCoeffs, ConnectionCoeffs), GeomError> {
    let pg = m.geometry(x, mode)?;
    let sjet = f.jet(m, x, mode)?;
    let (b, db) = transform_term(&pg, &sjet);
    let base = ssnmc(&pg);
    let base_dual = dual(&pg);
    Ok((
        ConnectionCoeffs {
            kind: ConnectionKind::ConformalSsnmc,
            gamma: &base.gamma + &b,
            dgamma: &base.dgamma + &db,
            at: pg.x.clone(),
        },
        ConnectionCoeffs {
            kind: ConnectionKind::ConformalDual,
            gamma: &base_dual.gamma + &b,
            dgamma: &base_dual.dgamma + &db,
            at: pg.x,
        },
    ))
}

/// sigma_ik = 2 (nabla-degree_i sigma_k - sigma_i sigma_k
///              + (1/2) g_ik sigma_p sigma^p), the symmetric tensor for which
/// the U transformation law holds.
pub fn sigma_aux(pg: &PointGeometry, lc: &ConnectionCoeffs, sjet: &Jet) -> Tensor {
    let n = pg.dim;
    let ds = sjet.d1();
    let dds = sjet.d2();
    let sigma_up = ds.raise(0, &pg.g_inv).expect("raising sigma gradient");
    let mut sigma2 = 0.0;
    for p in 0..n {
        sigma2 += ds.get(&[p]) * sigma_up.get(&[p]);
    }
    Tensor::from_fn(n, vec![Slot::Lower, Slot::Lower], |idx| {
        let (i, k) = (idx[0], idx[1]);
        let mut hessian = dds.get(&[i, k]);
        for mm in 0..n {
            hessian -= lc.gamma.get(&[mm, i, k]) * ds.get(&[mm]);
        }
        2.0 * (hessian - ds.get(&[i]) * ds.get(&[k]) + 0.5 * pg.g.get(&[i, k]) * sigma2)
    })
}

/// Per-point residuals of the conformal-transformation laws.
#[derive(Debug, Clone)]
pub struct ConformalResiduals {
    /// Transformed coefficients against the connection pair rebuilt on the
    /// conformally rescaled manifold.
    pub eq16_consistency: f64,
    /// U-bar against U plus the sigma_ik pattern.
    pub eq18: f64,
    /// Weyl combination of U-bar (with the rescaled metric) against that of
    /// U; requires n >= 3.
    pub weyl_u_invariance: Option<f64>,
    /// Weyl of R-bar against Weyl of R, asserted only when the pair is
    /// conjugate symmetric at this point (and n >= 3).
    pub corollary1: Option<f64>,
}

pub fn conformal_residuals(
    m: &ChartManifold,
    f: &ConformalFactor,
    x: &[f64],
    mode: JetMode,
) -> Result<ConformalResiduals, GeomError> {
    let n = m.dim;
    let pg = m.geometry(x, mode)?;
    let sjet = f.jet(m, x, mode)?;
    let lc = crate::connection::levi_civita(&pg);

    let base = ssnmc(&pg);
    let base_dual = dual(&pg);
    let r = riemann_from_coeffs(&base, &pg.g_inv);
    let r_star = riemann_from_coeffs(&base_dual, &pg.g_inv);

    let (b, db) = transform_term(&pg, &sjet);
    let tc = ConnectionCoeffs {
        kind: ConnectionKind::ConformalSsnmc,
        gamma: &base.gamma + &b,
        dgamma: &base.dgamma + &db,
        at: pg.x.clone(),
    };
    let tc_dual = ConnectionCoeffs {
        kind: ConnectionKind::ConformalDual,
        gamma: &base_dual.gamma + &b,
        dgamma: &base_dual.dgamma + &db,
        at: pg.x.clone(),
    };

    // rebuild the pair from the rescaled metric; the coefficients must agree
    let cm = conformal_metric(m, f);
    let cpg = cm.geometry(x, mode)?;
    let rebuilt = ssnmc(&cpg);
    let rebuilt_dual = dual(&cpg);
    let eq16_consistency = tc
        .gamma
        .max_diff(&rebuilt.gamma)
        .max(tc.dgamma.max_diff(&rebuilt.dgamma))
        .max(tc_dual.gamma.max_diff(&rebuilt_dual.gamma))
        .max(tc_dual.dgamma.max_diff(&rebuilt_dual.dgamma));

    let r_bar = riemann_from_coeffs(&tc, &cpg.g_inv);
    let r_bar_star = riemann_from_coeffs(&tc_dual, &cpg.g_inv);

    let u = &r.riemann + &r_star.riemann;
    let u_bar = &r_bar.riemann + &r_bar_star.riemann;
    let saux = sigma_aux(&pg, &lc, &sjet);
    let eq18 = u_bar.max_diff(&(&u - &metric_pattern(&saux, &pg.g, &pg.g_inv)));

    let weyl_u_invariance = if n >= 3 {
        let weyl_of_u = |t: &Tensor, g: &Tensor, gi: &Tensor| -> Result<Tensor, GeomError> {
            let ric = t.contract(0, 1)?;
            let mut scal = 0.0;
            for j in 0..n {
                for k in 0..n {
                    scal += gi.get(&[j, k]) * ric.get(&[j, k]);
                }
            }
            weyl_from_parts(t, &ric, scal, g, gi)
        };
        let c_u = weyl_of_u(&u, &pg.g, &pg.g_inv)?;
        let c_u_bar = weyl_of_u(&u_bar, &cpg.g, &cpg.g_inv)?;
        Some(c_u.max_diff(&c_u_bar))
    } else {
        None
    };

    // conjugate-symmetric case: the Weyl form of R itself must be invariant.
    // Conjugate symmetry of the pair is not preserved by the rescaling in
    // general (nabla-bar-degree phi picks up sigma phi cross terms), so the
    // assertion is gated on both the original and the transformed pair.
    let conj_gate = 1e-8 * (1.0 + r.riemann.max_abs());
    let conj_gate_bar = 1e-8 * (1.0 + r_bar.riemann.max_abs());
    let corollary1 = if n >= 3
        && r.riemann.max_diff(&r_star.riemann) <= conj_gate
        && r_bar.riemann.max_diff(&r_bar_star.riemann) <= conj_gate_bar
    {
        let c_r = weyl_from_parts(&r.riemann, &r.ricci, r.scalar, &pg.g, &pg.g_inv)?;
        let c_r_bar =
            weyl_from_parts(&r_bar.riemann, &r_bar.ricci, r_bar.scalar, &cpg.g, &cpg.g_inv)?;
        Some(c_r.max_diff(&c_r_bar))
    } else {
        None
    };

    Ok(ConformalResiduals {
        eq16_consistency,
        eq18,
        weyl_u_invariance,
        corollary1,
    })
}

/// Degenerate conformal factors: sigma identically zero must leave everything
/// bit-comparable, and constant sigma adds no derivative terms, so the
/// transformed curvature pair equals the original exactly.
pub fn degenerate_sigma_residual(
    m: &ChartManifold,
    x: &[f64],
    mode: JetMode,
) -> Result<f64, GeomError> {
    let n = m.dim;
    let pg = m.geometry(x, mode)?;
    let base = ssnmc(&pg);
    let base_dual = dual(&pg);
    let r = riemann_from_coeffs(&base, &pg.g_inv);
    let r_star = riemann_from_coeffs(&base_dual, &pg.g_inv);
    let mut worst: f64 = 0.0;
    for sigma_const in [0.0, 0.35] {
        let f = ConformalFactor::new(crate::fields::poly_scalar_field(
            crate::fields::PolyScalar::constant(n, sigma_const),
        ));
        let (tc, tc_dual) = transformed_connections(m, &f, x, mode)?;
        worst = worst
            .max(tc.gamma.max_diff(&base.gamma))
            .max(tc_dual.gamma.max_diff(&base_dual.gamma));
        let cm = conformal_metric(m, &f);
        let cpg = cm.geometry(x, mode)?;
        let r_bar = riemann_from_coeffs(&tc, &cpg.g_inv);
        let r_bar_star = riemann_from_coeffs(&tc_dual, &cpg.g_inv);
        worst = worst
            .max(r_bar.riemann.max_diff(&r.riemann))
            .max(r_bar_star.riemann.max_diff(&r_star.riemann));
        let sjet = f.jet(m, x, mode)?;
        let lc = crate::connection::levi_civita(&pg);
        worst = worst.max(sigma_aux(&pg, &lc, &sjet).max_abs());
    }
    Ok(worst)
}
