//! The three connections of interest: Levi-Civita, the semi-symmetric
//! non-metric connection Gamma^k_ij = {k,ij} + d^k_i phi_j + g_ij phi^k, and
//! its dual with both phi terms negated. Coefficients are computed pointwise
//! together with their first derivatives, obtained by differentiating through
//! the construction, so curvature never needs a separate coefficient field.
//!
//! Index layout: `gamma[k][i][j]` is Gamma^k_ij with i the direction slot;
//! `dgamma[a][k][i][j]` is the partial derivative along axis a.

use crate::manifold::PointGeometry;
use crate::tensor::{Slot, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    Ssnmc,
    Dual,
    ConformalSsnmc,
    ConformalDual,
}

impl ConnectionKind {
    pub fn label(&self) -> &'static str {
        match self {
            ConnectionKind::LeviCivita => "levi-civita",
            ConnectionKind::Ssnmc => "ssnmc",
            ConnectionKind::Dual => "dual",
            ConnectionKind::ConformalSsnmc => "conformal-ssnmc",
            ConnectionKind::ConformalDual => "conformal-dual",
        }
    }
}

/// Connection coefficients and their first derivatives at a point.
#[derive(Debug, Clone)]
pub struct ConnectionCoeffs {
    pub kind: ConnectionKind,
    /// Gamma^k_ij, slots (upper, lower, lower).
    pub gamma: Tensor,
    /// d_a Gamma^k_ij, slots (lower, upper, lower, lower).
    pub dgamma: Tensor,
    pub at: Vec<f64>,
}

pub fn levi_civita(pg: &PointGeometry) -> ConnectionCoeffs {
    let n = pg.dim;
    let gamma = Tensor::from_fn(n, vec![Slot::Upper, Slot::Lower, Slot::Lower], |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let mut acc = 0.0;
        for l in 0..n {
            acc += pg.g_inv.get(&[k, l])
                * (pg.dg.get(&[i, j, l]) + pg.dg.get(&[j, i, l]) - pg.dg.get(&[l, i, j]));
        }
        0.5 * acc
    });
    let dgamma = Tensor::from_fn(
        n,
        vec![Slot::Lower, Slot::Upper, Slot::Lower, Slot::Lower],
        |idx| {
            let (a, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
            let mut acc = 0.0;
            for l in 0..n {
                acc += pg.dg_inv.get(&[a, k, l])
                    * (pg.dg.get(&[i, j, l]) + pg.dg.get(&[j, i, l]) - pg.dg.get(&[l, i, j]));
                acc += pg.g_inv.get(&[k, l])
                    * (pg.ddg.get(&[a, i, j, l]) + pg.ddg.get(&[a, j, i, l])
                        - pg.ddg.get(&[a, l, i, j]));
            }
            0.5 * acc
        },
    );
    ConnectionCoeffs {
        kind: ConnectionKind::LeviCivita,
        gamma,
        dgamma,
        at: pg.x.clone(),
    }
}

/// d^k_i phi_j + g_ij phi^k and its derivative; the semi-symmetric non-metric
/// connection adds this to Levi-Civita, the dual subtracts it.
fn phi_term(pg: &PointGeometry) -> (Tensor, Tensor) {
    let n = pg.dim;
    let a_term = Tensor::from_fn(n, vec![Slot::Upper, Slot::Lower, Slot::Lower], |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let delta = if k == i { pg.phi.get(&[j]) } else { 0.0 };
        delta + pg.g.get(&[i, j]) * pg.phi_up.get(&[k])
    });
    let da_term = Tensor::from_fn(
        n,
        vec![Slot::Lower, Slot::Upper, Slot::Lower, Slot::Lower],
        |idx| {
            let (a, k, i, j) = (idx[0], idx[1], idx[2], idx[3]);
            let delta = if k == i { pg.dphi.get(&[a, j]) } else { 0.0 };
            delta
                + pg.dg.get(&[a, i, j]) * pg.phi_up.get(&[k])
                + pg.g.get(&[i, j]) * pg.dphi_up.get(&[a, k])
        },
    );
    (a_term, da_term)
}

pub fn ssnmc(pg: &PointGeometry) -> ConnectionCoeffs {
    let lc = levi_civita(pg);
    let (a, da) = phi_term(pg);
    ConnectionCoeffs {
        kind: ConnectionKind::Ssnmc,
        gamma: &lc.gamma + &a,
        dgamma: &lc.dgamma + &da,
        at: pg.x.clone(),
    }
}

pub fn dual(pg: &PointGeometry) -> ConnectionCoeffs {
    let lc = levi_civita(pg);
    let (a, da) = phi_term(pg);
    ConnectionCoeffs {
        kind: ConnectionKind::Dual,
        gamma: &lc.gamma - &a,
        dgamma: &lc.dgamma - &da,
        at: pg.x.clone(),
    }
}

/// Coefficients for one of the three base kinds. Conformally transformed
/// kinds carry a conformal factor and are built in the `conformal` module.
pub fn coeffs(pg: &PointGeometry, kind: ConnectionKind) -> ConnectionCoeffs {
    match kind {
        ConnectionKind::LeviCivita => levi_civita(pg),
        ConnectionKind::Ssnmc => ssnmc(pg),
        ConnectionKind::Dual => dual(pg),
        other => panic!("{:?} requires a conformal factor", other),
    }
}

/// Torsion T^k_ij = Gamma^k_ij - Gamma^k_ji.
pub fn torsion(c: &ConnectionCoeffs) -> Tensor {
    let n = c.gamma.dim();
    Tensor::from_fn(n, vec![Slot::Upper, Slot::Lower, Slot::Lower], |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        c.gamma.get(&[k, i, j]) - c.gamma.get(&[k, j, i])
    })
}

/// Covariant derivative of an arbitrary tensor given its value and partials:
/// each upper slot picks up +Gamma contraction, each lower slot -Gamma. The
/// derivative slot comes first in the output.
pub fn covariant_derivative(gamma: &Tensor, value: &Tensor, d1: &Tensor) -> Tensor {
    let n = value.dim();
    let rank = value.rank();
    let mut variance = vec![Slot::Lower];
    variance.extend_from_slice(value.variance());
    let mut inner = vec![0usize; rank];
    Tensor::from_fn(n, variance, |idx| {
        let h = idx[0];
        let outer = &idx[1..];
        let mut acc = d1.get(idx);
        for (p, slot) in value.variance().iter().enumerate() {
            inner.copy_from_slice(outer);
            let a_p = outer[p];
            let mut corr = 0.0;
            for m in 0..n {
                inner[p] = m;
                let v = value.get(&inner);
                match slot {
                    Slot::Upper => corr += gamma.get(&[a_p, h, m]) * v,
                    Slot::Lower => corr -= gamma.get(&[m, h, a_p]) * v,
                }
            }
            acc += corr;
        }
        acc
    })
}

/// nabla_k g_ij for the given connection; slots (k, i, j) all lower.
pub fn nabla_g(c: &ConnectionCoeffs, pg: &PointGeometry) -> Tensor {
    covariant_derivative(&c.gamma, &pg.g, &pg.dg)
}

/// nabla-degree_i phi_j with respect to Levi-Civita, plus its raised form
/// nabla-degree_i phi^l (raised with the inverse metric).
pub fn nabla_phi_lc(pg: &PointGeometry, lc: &ConnectionCoeffs) -> (Tensor, Tensor) {
    let lowered = covariant_derivative(&lc.gamma, &pg.phi, &pg.dphi);
    let raised = lowered
        .raise(1, &pg.g_inv)
        .expect("raising the second slot of nabla phi");
    (lowered, raised)
}
