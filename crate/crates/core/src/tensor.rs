//! Dense multilinear arrays with variance-tagged slots.
//!
//! Components live in a flat row-major buffer; index order equals slot order,
//! so strides are plain powers of the dimension. Construction rejects
//! non-finite values: a residual that goes bad downstream must be traceable to
//! geometry, not to a NaN that slipped in earlier.

use thiserror::Error;

/// Variance of one tensor slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Upper,
    Lower,
}

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("expected {expected} components for dim {dim}, rank {rank}; got {got}")]
    ComponentCount {
        dim: usize,
        rank: usize,
        expected: usize,
        got: usize,
    },
    #[error("non-finite component at flat index {0}")]
    NonFinite(usize),
    #[error("slot {slot} out of range for rank {rank}")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("slots {0} and {1} must have opposite variance")]
    SlotKindMismatch(usize, usize),
    #[error("selected slots must be distinct")]
    DuplicateSlots,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operand shapes differ")]
    ShapeMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("not a valid permutation of the slots")]
    InvalidPermutation,
}

/// Dense tensor over a chart of dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    dim: usize,
    variance: Vec<Slot>,
    components: Vec<f64>,
}

fn len_for(dim: usize, rank: usize) -> usize {
    dim.pow(rank as u32)
}

impl Tensor {
    /// Validating constructor: component count must equal dim^rank and every
    /// entry must be finite.
    pub fn new(dim: usize, variance: Vec<Slot>, components: Vec<f64>) -> Result<Self, TensorError> {
        let expected = len_for(dim, variance.len());
        if components.len() != expected {
            return Err(TensorError::ComponentCount {
                dim,
                rank: variance.len(),
                expected,
                got: components.len(),
            });
        }
        if let Some(bad) = components.iter().position(|c| !c.is_finite()) {
            return Err(TensorError::NonFinite(bad));
        }
        Ok(Self {
            dim,
            variance,
            components,
        })
    }

    pub fn zeros(dim: usize, variance: Vec<Slot>) -> Self {
        let len = len_for(dim, variance.len());
        Self {
            dim,
            variance,
            components: vec![0.0; len],
        }
    }

    /// Rank-0 tensor holding a single value.
    pub fn scalar(dim: usize, value: f64) -> Self {
        assert!(value.is_finite(), "non-finite scalar component");
        Self {
            dim,
            variance: Vec::new(),
            components: vec![value],
        }
    }

    /// Kronecker delta with slots (upper, lower).
    pub fn delta(dim: usize) -> Self {
        Self::from_fn(dim, vec![Slot::Upper, Slot::Lower], |idx| {
            if idx[0] == idx[1] {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Builds a tensor by evaluating `f` on every multi-index, in row-major
    /// order. Panics if `f` produces a non-finite value.
    pub fn from_fn(dim: usize, variance: Vec<Slot>, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let rank = variance.len();
        let len = len_for(dim, rank);
        let mut idx = vec![0usize; rank];
        let mut components = Vec::with_capacity(len);
        for flat in 0..len {
            decode_index(flat, dim, &mut idx);
            let v = f(&idx);
            assert!(
                v.is_finite(),
                "non-finite component produced at index {idx:?}"
            );
            components.push(v);
        }
        Self {
            dim,
            variance,
            components,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Slot] {
        &self.variance
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.components[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        assert!(value.is_finite(), "non-finite component");
        let flat = self.flat_index(idx);
        self.components[flat] = value;
    }

    /// Value of a rank-0 tensor.
    pub fn as_scalar(&self) -> f64 {
        assert_eq!(self.rank(), 0, "as_scalar on rank {}", self.rank());
        self.components[0]
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest componentwise difference; panics on shape mismatch.
    pub fn max_diff(&self, other: &Tensor) -> f64 {
        assert_eq!(self.dim, other.dim, "max_diff dim mismatch");
        assert_eq!(self.rank(), other.rank(), "max_diff rank mismatch");
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scale(&self, factor: f64) -> Tensor {
        Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            components: self.components.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_slot(&self, slot: usize) -> Result<(), TensorError> {
        if slot >= self.rank() {
            Err(TensorError::SlotOutOfRange {
                slot,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Einstein contraction over one upper and one lower slot. The result
    /// keeps the remaining slots in their original order.
    pub fn contract(&self, slot_a: usize, slot_b: usize) -> Result<Tensor, TensorError> {
        self.check_slot(slot_a)?;
        self.check_slot(slot_b)?;
        if slot_a == slot_b {
            return Err(TensorError::DuplicateSlots);
        }
        if self.variance[slot_a] == self.variance[slot_b] {
            return Err(TensorError::SlotKindMismatch(slot_a, slot_b));
        }
        let (a, b) = if slot_a < slot_b {
            (slot_a, slot_b)
        } else {
            (slot_b, slot_a)
        };
        let out_variance: Vec<Slot> = self
            .variance
            .iter()
            .enumerate()
            .filter(|(s, _)| *s != a && *s != b)
            .map(|(_, v)| *v)
            .collect();
        let n = self.dim;
        let rank = self.rank();
        let mut full = vec![0usize; rank];
        Ok(Tensor::from_fn(n, out_variance, |idx| {
            let mut pos = 0;
            for s in 0..rank {
                if s != a && s != b {
                    full[s] = idx[pos];
                    pos += 1;
                }
            }
            let mut acc = 0.0;
            for m in 0..n {
                full[a] = m;
                full[b] = m;
                acc += self.get(&full);
            }
            acc
        }))
    }

    /// Reorders slots: new slot `p` carries old slot `perm[p]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Tensor, TensorError> {
        let rank = self.rank();
        if perm.len() != rank {
            return Err(TensorError::InvalidPermutation);
        }
        let mut seen = vec![false; rank];
        for &p in perm {
            if p >= rank || seen[p] {
                return Err(TensorError::InvalidPermutation);
            }
            seen[p] = true;
        }
        let variance: Vec<Slot> = perm.iter().map(|&p| self.variance[p]).collect();
        let mut src = vec![0usize; rank];
        Ok(Tensor::from_fn(self.dim, variance, |idx| {
            for (p, &old) in perm.iter().enumerate() {
                src[old] = idx[p];
            }
            self.get(&src)
        }))
    }

    /// Sum over the three cyclic rotations of the contents of `slots`.
    pub fn cyclic_sum(&self, slots: (usize, usize, usize)) -> Result<Tensor, TensorError> {
        let (a, b, c) = slots;
        self.check_slot(a)?;
        self.check_slot(b)?;
        self.check_slot(c)?;
        if a == b || b == c || a == c {
            return Err(TensorError::DuplicateSlots);
        }
        if self.variance[a] != self.variance[b] || self.variance[b] != self.variance[c] {
            return Err(TensorError::SlotKindMismatch(a, b));
        }
        let mut rot = vec![0usize; self.rank()];
        Ok(Tensor::from_fn(self.dim, self.variance.clone(), |idx| {
            let first = self.get(idx);
            rot.copy_from_slice(idx);
            rot[a] = idx[b];
            rot[b] = idx[c];
            rot[c] = idx[a];
            let second = self.get(&rot);
            rot[a] = idx[c];
            rot[b] = idx[a];
            rot[c] = idx[b];
            let third = self.get(&rot);
            first + second + third
        }))
    }

    /// Metric contraction turning a lower slot into an upper one.
    pub fn raise(&self, slot: usize, g_inv: &Tensor) -> Result<Tensor, TensorError> {
        self.metric_contract(slot, g_inv, Slot::Lower, Slot::Upper)
    }

    /// Metric contraction turning an upper slot into a lower one.
    pub fn lower(&self, slot: usize, g: &Tensor) -> Result<Tensor, TensorError> {
        self.metric_contract(slot, g, Slot::Upper, Slot::Lower)
    }

    fn metric_contract(
        &self,
        slot: usize,
        metric: &Tensor,
        expect: Slot,
        produce: Slot,
    ) -> Result<Tensor, TensorError> {
        self.check_slot(slot)?;
        if self.variance[slot] != expect {
            return Err(TensorError::SlotKindMismatch(slot, slot));
        }
        if metric.dim != self.dim {
            return Err(TensorError::DimensionMismatch(metric.dim, self.dim));
        }
        if metric.rank() != 2 {
            return Err(TensorError::ShapeMismatch);
        }
        let mut variance = self.variance.clone();
        variance[slot] = produce;
        let n = self.dim;
        let mut src = vec![0usize; self.rank()];
        Ok(Tensor::from_fn(n, variance, |idx| {
            src.copy_from_slice(idx);
            let k = idx[slot];
            let mut acc = 0.0;
            for m in 0..n {
                src[slot] = m;
                acc += metric.get(&[k, m]) * self.get(&src);
            }
            acc
        }))
    }

    /// Inverse of a rank-2 tensor via Gauss-Jordan with partial pivoting.
    /// The result's slots are both flipped relative to the input.
    pub fn matrix_inverse(&self) -> Result<Tensor, TensorError> {
        assert_eq!(self.rank(), 2, "matrix_inverse needs rank 2");
        let n = self.dim;
        let mut aug = vec![0.0f64; n * 2 * n];
        for i in 0..n {
            for j in 0..n {
                aug[i * 2 * n + j] = self.get(&[i, j]);
            }
            aug[i * 2 * n + n + i] = 1.0;
        }
        for col in 0..n {
            let mut max_val = aug[col * 2 * n + col].abs();
            let mut max_row = col;
            for row in (col + 1)..n {
                let v = aug[row * 2 * n + col].abs();
                if v > max_val {
                    max_val = v;
                    max_row = row;
                }
            }
            if max_val < 1e-13 {
                return Err(TensorError::Singular);
            }
            if max_row != col {
                for k in 0..2 * n {
                    aug.swap(col * 2 * n + k, max_row * 2 * n + k);
                }
            }
            let pivot = aug[col * 2 * n + col];
            for k in 0..2 * n {
                aug[col * 2 * n + k] /= pivot;
            }
            for row in 0..n {
                if row != col {
                    let factor = aug[row * 2 * n + col];
                    if factor != 0.0 {
                        for k in 0..2 * n {
                            aug[row * 2 * n + k] -= factor * aug[col * 2 * n + k];
                        }
                    }
                }
            }
        }
        let flipped: Vec<Slot> = self
            .variance
            .iter()
            .map(|s| match s {
                Slot::Upper => Slot::Lower,
                Slot::Lower => Slot::Upper,
            })
            .collect();
        let mut components = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                components.push(aug[i * 2 * n + n + j]);
            }
        }
        Tensor::new(n, flipped, components)
    }

    /// Cholesky-based positive-definiteness test for a symmetric rank-2 tensor.
    pub fn is_positive_definite(&self) -> bool {
        assert_eq!(self.rank(), 2, "is_positive_definite needs rank 2");
        let n = self.dim;
        let mut l = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self.get(&[i, j]);
                for k in 0..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return false;
                    }
                    l[i * n + i] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        true
    }

    /// Largest |t_ij - t_ji| of a rank-2 tensor.
    pub fn symmetry_residual(&self) -> f64 {
        assert_eq!(self.rank(), 2);
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(&[i, j]) - self.get(&[j, i])).abs());
            }
        }
        worst
    }
}

fn decode_index(mut flat: usize, dim: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

impl std::ops::Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        assert_eq!(self.dim, rhs.dim, "tensor add: dim mismatch");
        assert_eq!(self.variance, rhs.variance, "tensor add: shape mismatch");
        Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        assert_eq!(self.dim, rhs.dim, "tensor sub: dim mismatch");
        assert_eq!(self.variance, rhs.variance, "tensor sub: shape mismatch");
        Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tensor(rng: &mut ChaCha8Rng, dim: usize, variance: Vec<Slot>) -> Tensor {
        Tensor::from_fn(dim, variance, |_| rng.gen_range(-1.0..1.0))
    }

    fn random_spd(rng: &mut ChaCha8Rng, dim: usize) -> Tensor {
        // A'A + I is always symmetric positive-definite.
        let a: Vec<f64> = (0..dim * dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Tensor::from_fn(dim, vec![Slot::Lower, Slot::Lower], |idx| {
            let (i, j) = (idx[0], idx[1]);
            let mut s = if i == j { 1.0 } else { 0.0 };
            for k in 0..dim {
                s += a[k * dim + i] * a[k * dim + j];
            }
            s
        })
    }

    #[test]
    fn rejects_component_count_mismatch() {
        let err = Tensor::new(2, vec![Slot::Lower], vec![1.0, 2.0, 3.0]).unwrap_err();
        assert!(matches!(err, TensorError::ComponentCount { .. }));
    }

    #[test]
    fn rejects_non_finite() {
        let err = Tensor::new(2, vec![Slot::Lower], vec![1.0, f64::NAN]).unwrap_err();
        assert_eq!(err, TensorError::NonFinite(1));
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        let d = Tensor::delta(3);
        let tr = d.contract(0, 1).unwrap();
        assert_eq!(tr.rank(), 0);
        assert_eq!(tr.as_scalar(), 3.0);
    }

    #[test]
    fn contract_of_zero_tensor_is_zero() {
        let z = Tensor::zeros(3, vec![Slot::Upper, Slot::Lower]);
        assert_eq!(z.contract(0, 1).unwrap().as_scalar(), 0.0);
    }

    #[test]
    fn contract_torsion_trace_of_semi_symmetric_form() {
        // T^k_ij = phi_j d^k_i - phi_i d^k_j with phi = (1, 0) and n = 2;
        // contracting (k, i) gives (n-1) phi_j = (1, 0).
        let phi = [1.0, 0.0];
        let t = Tensor::from_fn(
            2,
            vec![Slot::Upper, Slot::Lower, Slot::Lower],
            |idx| {
                let (k, i, j) = (idx[0], idx[1], idx[2]);
                let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                phi[j] * d(k, i) - phi[i] * d(k, j)
            },
        );
        let v = t.contract(0, 1).unwrap();
        assert_eq!(v.rank(), 1);
        assert!((v.get(&[0]) - 1.0).abs() < 1e-15);
        assert!(v.get(&[1]).abs() < 1e-15);
    }

    #[test]
    fn contract_requires_opposite_variance() {
        let t = Tensor::zeros(2, vec![Slot::Lower, Slot::Lower]);
        assert_eq!(
            t.contract(0, 1).unwrap_err(),
            TensorError::SlotKindMismatch(0, 1)
        );
        assert!(matches!(
            t.contract(0, 5).unwrap_err(),
            TensorError::SlotOutOfRange { .. }
        ));
        assert_eq!(t.contract(1, 1).unwrap_err(), TensorError::DuplicateSlots);
    }

    #[test]
    fn raise_with_identity_metric_keeps_components() {
        let phi = Tensor::new(2, vec![Slot::Lower], vec![3.0, 4.0]).unwrap();
        let ginv = Tensor::from_fn(2, vec![Slot::Upper, Slot::Upper], |idx| {
            if idx[0] == idx[1] {
                1.0
            } else {
                0.0
            }
        });
        let up = phi.raise(0, &ginv).unwrap();
        assert_eq!(up.variance(), &[Slot::Upper]);
        assert_eq!(up.get(&[0]), 3.0);
        assert_eq!(up.get(&[1]), 4.0);
    }

    #[test]
    fn raise_with_diagonal_metric() {
        // g = diag(4, 1) so g^{-1} = diag(0.25, 1); phi = (1, 0) raises to (0.25, 0).
        let phi = Tensor::new(2, vec![Slot::Lower], vec![1.0, 0.0]).unwrap();
        let g = Tensor::new(2, vec![Slot::Lower, Slot::Lower], vec![4.0, 0.0, 0.0, 1.0]).unwrap();
        let ginv = g.matrix_inverse().unwrap();
        let up = phi.raise(0, &ginv).unwrap();
        assert!((up.get(&[0]) - 0.25).abs() < 1e-15);
        assert!(up.get(&[1]).abs() < 1e-15);
    }

    #[test]
    fn raise_then_lower_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 2..=4 {
            let g = random_spd(&mut rng, dim);
            let ginv = g.matrix_inverse().unwrap();
            let phi = random_tensor(&mut rng, dim, vec![Slot::Lower]);
            let back = phi.raise(0, &ginv).unwrap().lower(0, &g).unwrap();
            assert!(phi.max_diff(&back) < 1e-12);
        }
    }

    #[test]
    fn raise_rejects_upper_slot_and_dim_mismatch() {
        let v = Tensor::zeros(2, vec![Slot::Upper]);
        let ginv = Tensor::zeros(2, vec![Slot::Upper, Slot::Upper]);
        assert!(matches!(
            v.raise(0, &ginv).unwrap_err(),
            TensorError::SlotKindMismatch(..)
        ));
        let w = Tensor::zeros(3, vec![Slot::Lower]);
        assert!(matches!(
            w.raise(0, &ginv).unwrap_err(),
            TensorError::DimensionMismatch(..)
        ));
    }

    #[test]
    fn cyclic_sum_of_zero_is_zero() {
        let z = Tensor::zeros(2, vec![Slot::Lower, Slot::Lower, Slot::Lower]);
        assert_eq!(z.cyclic_sum((0, 1, 2)).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn cyclic_sum_of_totally_antisymmetric_dim2_vanishes() {
        // In dim 2 a totally antisymmetric rank-3 tensor is identically zero,
        // so its cyclic sum is too; build one by antisymmetrizing.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_tensor(&mut rng, 2, vec![Slot::Lower, Slot::Lower, Slot::Lower]);
        let anti = Tensor::from_fn(2, vec![Slot::Lower, Slot::Lower, Slot::Lower], |idx| {
            let perms: [([usize; 3], f64); 6] = [
                ([idx[0], idx[1], idx[2]], 1.0),
                ([idx[1], idx[2], idx[0]], 1.0),
                ([idx[2], idx[0], idx[1]], 1.0),
                ([idx[1], idx[0], idx[2]], -1.0),
                ([idx[0], idx[2], idx[1]], -1.0),
                ([idx[2], idx[1], idx[0]], -1.0),
            ];
            perms.iter().map(|(p, s)| s * t.get(p)).sum::<f64>() / 6.0
        });
        assert!(anti.cyclic_sum((0, 1, 2)).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn cyclic_sum_rejects_mixed_variance_and_duplicates() {
        let t = Tensor::zeros(2, vec![Slot::Upper, Slot::Lower, Slot::Lower]);
        assert!(matches!(
            t.cyclic_sum((0, 1, 2)).unwrap_err(),
            TensorError::SlotKindMismatch(..)
        ));
        assert_eq!(
            t.cyclic_sum((1, 1, 2)).unwrap_err(),
            TensorError::DuplicateSlots
        );
    }

    #[test]
    fn permute_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = random_tensor(
            &mut rng,
            3,
            vec![Slot::Upper, Slot::Lower, Slot::Lower, Slot::Lower],
        );
        let perm = [2usize, 0, 3, 1];
        // inverse permutation: position of each slot in perm
        let mut inv = [0usize; 4];
        for (p, &o) in perm.iter().enumerate() {
            inv[o] = p;
        }
        let round = t.permute(&perm).unwrap().permute(&inv).unwrap();
        assert_eq!(t.max_diff(&round), 0.0);
    }

    #[test]
    fn contraction_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_tensor(&mut rng, 3, vec![Slot::Upper, Slot::Lower, Slot::Lower]);
        let b = random_tensor(&mut rng, 3, vec![Slot::Upper, Slot::Lower, Slot::Lower]);
        let lhs = (&a.scale(2.5) + &b).contract(0, 1).unwrap();
        let rhs = &a.contract(0, 1).unwrap().scale(2.5) + &b.contract(0, 1).unwrap();
        assert!(lhs.max_diff(&rhs) < 1e-14);
    }

    #[test]
    fn raise_commutes_with_direct_metric_contraction() {
        // Contracting a raised slot against a lower slot must agree with
        // contracting through the metric directly.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for dim in 2..=4 {
            let g = random_spd(&mut rng, dim);
            let ginv = g.matrix_inverse().unwrap();
            let t = random_tensor(&mut rng, dim, vec![Slot::Lower, Slot::Lower]);
            let via_raise = t.raise(0, &ginv).unwrap().contract(0, 1).unwrap();
            let direct = Tensor::from_fn(dim, vec![], |_| {
                let mut acc = 0.0;
                for a in 0..dim {
                    for b in 0..dim {
                        acc += ginv.get(&[a, b]) * t.get(&[a, b]);
                    }
                }
                acc
            });
            assert!((via_raise.as_scalar() - direct.as_scalar()).abs() < 1e-12);
        }
    }

    #[test]
    fn matrix_inverse_reports_singular() {
        let g = Tensor::new(2, vec![Slot::Lower, Slot::Lower], vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(g.matrix_inverse().unwrap_err(), TensorError::Singular);
    }

    #[test]
    fn spd_check_matches_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let g = random_spd(&mut rng, 4);
        assert!(g.is_positive_definite());
        let not_spd = Tensor::new(
            2,
            vec![Slot::Lower, Slot::Lower],
            vec![1.0, 2.0, 2.0, 1.0],
        )
        .unwrap();
        assert!(!not_spd.is_positive_definite());
    }
}
