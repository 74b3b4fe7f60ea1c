//! Complex Hermitian matrices, clustered spectral decompositions, density
//! states and rank-one projections.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{Complex, ComplexField};

use crate::error::{Error, Result};
use crate::scalar::{max_abs, to_f64, trace_product_re, trace_re, CMatrix, CVector, Real};
use crate::tolerance::Tolerances;

/// A square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T: Real> {
    m: CMatrix<T>,
}

impl<T: Real> HermitianMatrix<T> {
    /// Validates `m` and replaces it by `(m + m*)/2`.
    ///
    /// Matrices whose Hermiticity defect exceeds `tol_herm` are rejected.
    pub fn new(m: CMatrix<T>, tol_herm: T) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::Empty);
        }
        let adj = m.adjoint();
        let deviation = max_abs(&(&m - &adj));
        if deviation > tol_herm || !deviation.is_finite() {
            return Err(Error::NotHermitian {
                deviation: to_f64(deviation),
            });
        }
        let half = Complex::new(T::one() / (T::one() + T::one()), T::zero());
        Ok(Self { m: (m + adj) * half })
    }

    /// Wraps a matrix already known to be exactly Hermitian.
    pub(crate) fn from_raw(m: CMatrix<T>) -> Self {
        Self { m }
    }

    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(values[i], T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        });
        Self { m }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: CMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.m
    }

    pub fn trace(&self) -> T {
        trace_re(&self.m)
    }

    /// `U M U*`.
    pub fn conjugate_by(&self, u: &CMatrix<T>) -> Self {
        Self::from_raw(hermitize(u * &self.m * u.adjoint()))
    }

    /// Entrywise complex conjugate (equivalently, the transpose).
    pub fn conj(&self) -> Self {
        Self::from_raw(self.m.map(|z| z.conj()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_raw(&self.m + &other.m)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_raw(&self.m - &other.m)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_raw(&self.m * Complex::new(s, T::zero()))
    }

    /// Eigendecomposition with eigenvalue clustering.
    ///
    /// Sorted eigenvalues are grouped greedily while consecutive gaps stay
    /// below `cluster_tol`; each group becomes one spectral projection whose
    /// eigenvalue is the group mean.
    pub fn decompose(&self, cluster_tol: T) -> SpectralDecomposition<T> {
        let n = self.dim();
        let eig = SymmetricEigen::new(self.m.clone());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .unwrap_or(std::cmp::Ordering::Equal)
        });

        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &idx in &order {
            let value = eig.eigenvalues[idx];
            match groups.last_mut() {
                Some(g) if eig.eigenvalues[*g.last().unwrap()] - value < cluster_tol => g.push(idx),
                _ => groups.push(vec![idx]),
            }
        }

        let clusters = groups
            .into_iter()
            .map(|g| {
                let k = g.len();
                let sum = g.iter().fold(T::zero(), |acc, &i| acc + eig.eigenvalues[i]);
                let value = sum / T::from_usize(k).unwrap();
                let basis = CMatrix::from_fn(n, k, |r, c| eig.eigenvectors[(r, g[c])]);
                Cluster::new(value, basis)
            })
            .collect();
        SpectralDecomposition::from_clusters(n, clusters, T::zero())
    }
}

/// Symmetrizes a matrix that is Hermitian up to rounding.
pub(crate) fn hermitize<T: Real>(m: CMatrix<T>) -> CMatrix<T> {
    let half = Complex::new(T::one() / (T::one() + T::one()), T::zero());
    let adj = m.adjoint();
    (m + adj) * half
}

/// One eigenvalue together with its spectral projection.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster<T: Real> {
    pub value: T,
    pub multiplicity: usize,
    /// Orthonormal eigenvectors spanning the eigenspace, one per column.
    pub basis: CMatrix<T>,
    pub projection: HermitianMatrix<T>,
}

impl<T: Real> Cluster<T> {
    fn new(value: T, basis: CMatrix<T>) -> Self {
        let projection = HermitianMatrix::from_raw(hermitize(&basis * basis.adjoint()));
        Self {
            value,
            multiplicity: basis.ncols(),
            basis,
            projection,
        }
    }
}

/// Clustered spectral decomposition `M = Σ a P_a` with strictly decreasing `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<T: Real> {
    dim: usize,
    clusters: Vec<Cluster<T>>,
    support: HermitianMatrix<T>,
}

/// Admissible argument range of a scalar function applied to a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain<T> {
    /// Any real eigenvalue.
    Real,
    /// `[0, ∞)`; eigenvalues in `[-slack, 0)` are evaluated at exactly 0.
    NonNegative { slack: T },
    /// `(0, ∞)`.
    Positive,
}

impl<T: Real> SpectralDecomposition<T> {
    fn from_clusters(dim: usize, clusters: Vec<Cluster<T>>, zero_below: T) -> Self {
        let mut support = CMatrix::zeros(dim, dim);
        for c in &clusters {
            if c.value.abs() > zero_below {
                support += c.projection.as_matrix();
            }
        }
        Self {
            dim,
            clusters,
            support: HermitianMatrix::from_raw(support),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clusters(&self) -> &[Cluster<T>] {
        &self.clusters
    }

    /// Orthogonal projection onto the span of the nonzero-eigenvalue eigenvectors.
    pub fn support(&self) -> &HermitianMatrix<T> {
        &self.support
    }

    /// Number of eigenvalues (with multiplicity) belonging to nonzero clusters.
    pub fn rank(&self) -> usize {
        self.clusters
            .iter()
            .filter(|c| c.value != T::zero())
            .map(|c| c.multiplicity)
            .sum()
    }

    /// All eigenvalues with multiplicity, in decreasing order.
    pub fn eigenvalues(&self) -> Vec<T> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.value, c.multiplicity))
            .collect()
    }

    /// `Σ a P_a`.
    pub fn reconstruct(&self) -> HermitianMatrix<T> {
        self.map(|x| x, Domain::Real).expect("identity is defined everywhere")
    }

    fn checked_arg(value: T, domain: Domain<T>) -> Result<T> {
        match domain {
            Domain::Real => Ok(value),
            Domain::NonNegative { slack } => {
                if value >= T::zero() {
                    Ok(value)
                } else if value >= -slack {
                    Ok(T::zero())
                } else {
                    Err(Error::Domain { value: to_f64(value) })
                }
            }
            Domain::Positive => {
                if value > T::zero() {
                    Ok(value)
                } else {
                    Err(Error::Domain { value: to_f64(value) })
                }
            }
        }
    }

    /// Standard operator function `f(M) = Σ f(a) P_a`.
    pub fn map<F: Fn(T) -> T>(&self, f: F, domain: Domain<T>) -> Result<HermitianMatrix<T>> {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for c in &self.clusters {
            let x = Self::checked_arg(c.value, domain)?;
            out += c.projection.as_matrix() * Complex::new(f(x), T::zero());
        }
        Ok(HermitianMatrix::from_raw(out))
    }

    /// `tr f(M) = Σ mult(a) f(a)`.
    pub fn trace_of<F: Fn(T) -> T>(&self, f: F, domain: Domain<T>) -> Result<T> {
        let mut acc = T::zero();
        for c in &self.clusters {
            let x = Self::checked_arg(c.value, domain)?;
            acc += f(x) * T::from_usize(c.multiplicity).unwrap();
        }
        Ok(acc)
    }
}

/// Applies a scalar function to a Hermitian matrix through its spectrum.
pub fn apply_function<T: Real, F: Fn(T) -> T>(
    m: &HermitianMatrix<T>,
    f: F,
    domain: Domain<T>,
    cluster_tol: T,
) -> Result<HermitianMatrix<T>> {
    m.decompose(cluster_tol).map(f, domain)
}

/// `tr(S M S)` for an orthogonal projection `S`.
pub fn trace_on_support<T: Real>(m: &HermitianMatrix<T>, support: &HermitianMatrix<T>, tol_num: T) -> Result<T> {
    if m.dim() != support.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: support.dim(),
        });
    }
    let s = support.as_matrix();
    let defect = max_abs(&(s * s - s)).max(max_abs(&(s - s.adjoint())));
    if defect > tol_num {
        return Err(Error::NotProjection {
            deviation: to_f64(defect),
        });
    }
    // tr(SMS) = tr(SM) for S² = S
    Ok(trace_product_re(s, m.as_matrix()))
}

/// A density operator: positive semidefinite with unit trace.
///
/// The clustered decomposition is computed once at construction. Eigenvalues
/// below `tol.supp` are snapped to exactly zero and merged into a single
/// kernel cluster, so `σ(X) \ {0}` and the support are unambiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState<T: Real> {
    matrix: HermitianMatrix<T>,
    spectral: SpectralDecomposition<T>,
}

impl<T: Real> DensityState<T> {
    pub fn new(m: CMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        Self::from_hermitian(HermitianMatrix::new(m, tol.herm)?, tol)
    }

    pub fn from_hermitian(matrix: HermitianMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        let raw = matrix.decompose(tol.cluster);
        let min = raw.clusters.last().map(|c| c.value).unwrap_or_else(T::zero);
        if min < -tol.psd {
            return Err(Error::NotPositive {
                min_eigenvalue: to_f64(min),
            });
        }
        let trace = matrix.trace();
        if (trace - T::one()).abs() > tol.trace {
            return Err(Error::InvalidTrace { trace: to_f64(trace) });
        }

        let dim = matrix.dim();
        let mut clusters = Vec::with_capacity(raw.clusters.len());
        let mut kernel: Vec<CMatrix<T>> = Vec::new();
        for c in raw.clusters {
            if c.value < tol.supp {
                kernel.push(c.basis);
            } else {
                clusters.push(c);
            }
        }
        if !kernel.is_empty() {
            let cols: usize = kernel.iter().map(|b| b.ncols()).sum();
            let mut basis = CMatrix::zeros(dim, cols);
            let mut at = 0;
            for b in kernel {
                basis.columns_mut(at, b.ncols()).copy_from(&b);
                at += b.ncols();
            }
            clusters.push(Cluster::new(T::zero(), basis));
        }
        let spectral = SpectralDecomposition::from_clusters(dim, clusters, T::zero());
        Ok(Self { matrix, spectral })
    }

    pub fn diag(values: &[T], tol: &Tolerances<T>) -> Result<Self> {
        Self::from_hermitian(HermitianMatrix::diag(values), tol)
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize, tol: &Tolerances<T>) -> Result<Self> {
        let w = T::one() / T::from_usize(dim).unwrap();
        Self::from_hermitian(HermitianMatrix::identity(dim).scale(w), tol)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix<T> {
        &self.matrix
    }

    pub fn spectral(&self) -> &SpectralDecomposition<T> {
        &self.spectral
    }

    pub fn support(&self) -> &HermitianMatrix<T> {
        self.spectral.support()
    }

    pub fn rank(&self) -> usize {
        self.spectral.rank()
    }

    pub fn is_pure(&self) -> bool {
        self.rank() == 1
    }

    /// `w·self + (1-w)·other`.
    pub fn mix(&self, other: &Self, w: T, tol: &Tolerances<T>) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        let m = self.matrix.scale(w).add(&other.matrix.scale(T::one() - w));
        Self::from_hermitian(m, tol)
    }

    /// `U X U*`.
    pub fn conjugate_by(&self, u: &CMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        Self::from_hermitian(self.matrix.conjugate_by(u), tol)
    }

    /// Entrywise complex conjugate, i.e. the transpose of the state.
    pub fn conj(&self, tol: &Tolerances<T>) -> Result<Self> {
        Self::from_hermitian(self.matrix.conj(), tol)
    }
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// A rank-one orthogonal projection `|v⟩⟨v|`, stored through a unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneProjection<T: Real> {
    vector: CVector<T>,
}

impl<T: Real> RankOneProjection<T> {
    /// Accepts a vector whose norm is 1 within `tol_num`, then renormalizes it.
    pub fn new(vector: CVector<T>, tol_num: T) -> Result<Self> {
        let norm = vector.norm();
        if vector.is_empty() {
            return Err(Error::Empty);
        }
        if (norm - T::one()).abs() > tol_num {
            return Err(Error::NotUnitNorm { norm: to_f64(norm) });
        }
        Ok(Self {
            vector: vector.unscale(norm),
        })
    }

    /// Projection onto the line spanned by a nonzero vector.
    pub fn from_unnormalized(vector: CVector<T>) -> Result<Self> {
        let norm = vector.norm();
        if vector.is_empty() {
            return Err(Error::Empty);
        }
        if norm == T::zero() || !norm.is_finite() {
            return Err(Error::NotUnitNorm { norm: to_f64(norm) });
        }
        Ok(Self {
            vector: vector.unscale(norm),
        })
    }

    /// `|e_i⟩⟨e_i|`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = CVector::zeros(dim);
        v[i] = Complex::new(T::one(), T::zero());
        Self { vector: v }
    }

    /// Extracts the projection from a rank-one density state.
    pub fn from_state(state: &DensityState<T>) -> Result<Self> {
        if !state.is_pure() {
            return Err(Error::NotRankOne { rank: state.rank() });
        }
        let v = state.spectral().clusters()[0].basis.column(0).into_owned();
        Self::from_unnormalized(v)
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &CVector<T> {
        &self.vector
    }

    /// The outer product `|v⟩⟨v|`.
    pub fn matrix(&self) -> HermitianMatrix<T> {
        HermitianMatrix::from_raw(hermitize(&self.vector * self.vector.adjoint()))
    }

    pub fn to_state(&self, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        DensityState::from_hermitian(self.matrix(), tol)
    }

    /// `tr PQ = |⟨v, w⟩|²`, clamped to `[0, 1]`.
    pub fn transition_probability(&self, other: &Self) -> Result<T> {
        transition_probability(self, other)
    }
}

/// `|⟨v(P), v(Q)⟩|²` clamped to `[0, 1]`.
pub fn transition_probability<T: Real>(p: &RankOneProjection<T>, q: &RankOneProjection<T>) -> Result<T> {
    check_dims(p.dim(), q.dim())?;
    let ip = p.vector.dotc(&q.vector);
    let tp = ip.modulus_squared();
    Ok(tp.max(T::zero()).min(T::one()))
}

/// `tr(AB)` for Hermitian `A`, `B`.
pub fn trace_product<T: Real>(a: &HermitianMatrix<T>, b: &HermitianMatrix<T>) -> T {
    trace_product_re(a.as_matrix(), b.as_matrix())
}

/// Max-entry distance between two matrices.
pub fn max_entry_distance<T: Real>(a: &HermitianMatrix<T>, b: &HermitianMatrix<T>) -> T {
    max_abs(&(a.as_matrix() - b.as_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn real(rows: &[&[f64]]) -> CMatrix<f64> {
        let n = rows.len();
        CMatrix::from_fn(n, n, |i, j| cx(rows[i][j], 0.0))
    }

    #[test]
    fn decompose_diagonal() {
        let d = HermitianMatrix::diag(&[1.0, 0.0]).decompose(1e-8);
        let c = d.clusters();
        assert_eq!(c.len(), 2);
        assert_abs_diff_eq!(c[0].value, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c[1].value, 0.0, epsilon = 1e-14);
        assert!(max_entry_distance(&c[0].projection, &HermitianMatrix::diag(&[1.0, 0.0])) < 1e-14);
        assert!(max_entry_distance(&c[1].projection, &HermitianMatrix::diag(&[0.0, 1.0])) < 1e-14);
    }

    #[test]
    fn decompose_identity_is_one_cluster() {
        let d = HermitianMatrix::<f64>::identity(3).decompose(1e-8);
        assert_eq!(d.clusters().len(), 1);
        assert_eq!(d.clusters()[0].multiplicity, 3);
        assert_abs_diff_eq!(d.clusters()[0].value, 1.0, epsilon = 1e-14);
        assert!(max_entry_distance(&d.clusters()[0].projection, &HermitianMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn decompose_all_halves() {
        let m = HermitianMatrix::new(real(&[&[0.5, 0.5], &[0.5, 0.5]]), 1e-9).unwrap();
        let d = m.decompose(1e-8);
        let plus = HermitianMatrix::new(real(&[&[0.5, 0.5], &[0.5, 0.5]]), 1e-9).unwrap();
        let minus = HermitianMatrix::new(real(&[&[0.5, -0.5], &[-0.5, 0.5]]), 1e-9).unwrap();
        assert_eq!(d.clusters().len(), 2);
        assert_abs_diff_eq!(d.clusters()[0].value, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.clusters()[1].value, 0.0, epsilon = 1e-14);
        assert!(max_entry_distance(&d.clusters()[0].projection, &plus) < 1e-14);
        assert!(max_entry_distance(&d.clusters()[1].projection, &minus) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(HermitianMatrix::new(m, 1e-9), Err(Error::NotHermitian { .. })));
        let rect = CMatrix::<f64>::zeros(2, 3);
        assert!(matches!(HermitianMatrix::new(rect, 1e-9), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn symmetrizes_small_defects() {
        let mut m = real(&[&[1.0, 0.5], &[0.5, 0.0]]);
        m[(0, 1)] = cx(0.5 + 1e-12, 0.0);
        let h = HermitianMatrix::new(m, 1e-9).unwrap();
        assert_eq!(h.as_matrix()[(0, 1)], h.as_matrix()[(1, 0)].conj());
    }

    #[test]
    fn apply_function_examples() {
        let m = HermitianMatrix::diag(&[2.0, 3.0]);
        let sq = apply_function(&m, |x| x * x, Domain::Real, 1e-8).unwrap();
        assert!(max_entry_distance(&sq, &HermitianMatrix::diag(&[4.0, 9.0])) < 1e-13);

        let id = apply_function(&m, |x| x, Domain::Real, 1e-8).unwrap();
        assert!(max_entry_distance(&id, &m) < 1e-13);

        let h = HermitianMatrix::new(real(&[&[0.5, 0.5], &[0.5, 0.5]]), 1e-9).unwrap();
        let xlogx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
        let r = apply_function(&h, xlogx, Domain::NonNegative { slack: 1e-9 }, 1e-8).unwrap();
        assert!(max_entry_distance(&r, &HermitianMatrix::zeros(2)) < 1e-13);
    }

    #[test]
    fn apply_function_domain_error() {
        let m = HermitianMatrix::diag(&[1.0, -0.5]);
        let r = apply_function(&m, |x: f64| x.ln(), Domain::NonNegative { slack: 1e-9 }, 1e-8);
        assert!(matches!(r, Err(Error::Domain { .. })));
        let r = apply_function(
            &HermitianMatrix::diag(&[1.0, 0.0]),
            |x: f64| x.ln(),
            Domain::Positive,
            1e-8,
        );
        assert!(matches!(r, Err(Error::Domain { .. })));
    }

    #[test]
    fn transition_probability_examples() {
        let e1 = RankOneProjection::<f64>::basis(2, 0);
        let e2 = RankOneProjection::<f64>::basis(2, 1);
        let plus = RankOneProjection::from_unnormalized(CVector::from_vec(vec![cx(1.0, 0.0), cx(1.0, 0.0)])).unwrap();
        assert_abs_diff_eq!(transition_probability(&e1, &e1).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(transition_probability(&e1, &e2).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(transition_probability(&e1, &plus).unwrap(), 0.5, epsilon = 1e-15);
        let e3 = RankOneProjection::<f64>::basis(3, 0);
        assert!(matches!(
            transition_probability(&e1, &e3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn trace_on_support_examples() {
        let m = HermitianMatrix::diag(&[1.0, 2.0, 3.0]);
        let i3 = HermitianMatrix::identity(3);
        assert_abs_diff_eq!(trace_on_support(&m, &i3, 1e-9).unwrap(), 6.0, epsilon = 1e-14);
        let s = HermitianMatrix::diag(&[1.0, 1.0, 0.0]);
        assert_abs_diff_eq!(trace_on_support(&m, &s, 1e-9).unwrap(), 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            trace_on_support(&m, &HermitianMatrix::zeros(3), 1e-9).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        let bad = HermitianMatrix::diag(&[0.5, 1.0, 0.0]);
        assert!(matches!(
            trace_on_support(&m, &bad, 1e-9),
            Err(Error::NotProjection { .. })
        ));
    }

    #[test]
    fn density_state_validation() {
        let t = tol();
        assert!(matches!(
            DensityState::diag(&[1.2, -0.2], &t),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            DensityState::diag(&[0.6, 0.6], &t),
            Err(Error::InvalidTrace { .. })
        ));
        let s = DensityState::diag(&[0.7, 0.3, 0.0], &t).unwrap();
        assert_eq!(s.rank(), 2);
        let kernel = s.spectral().clusters().last().unwrap();
        assert_eq!(kernel.value, 0.0);
        assert_eq!(kernel.multiplicity, 1);
    }

    #[test]
    fn tiny_eigenvalues_join_the_kernel() {
        let t = tol();
        let s = DensityState::diag(&[1.0 - 2e-12, 1e-12, 1e-12], &t).unwrap();
        assert_eq!(s.rank(), 1);
        assert!(s.is_pure());
        let p = RankOneProjection::from_state(&s).unwrap();
        assert_abs_diff_eq!(p.vector()[0].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn complex_hermitian_decomposition() {
        let m = CMatrix::from_row_slice(2, 2, &[cx(0.5, 0.0), cx(0.0, -0.5), cx(0.0, 0.5), cx(0.5, 0.0)]);
        let h = HermitianMatrix::new(m, 1e-9).unwrap();
        let d = h.decompose(1e-8);
        assert_abs_diff_eq!(d.clusters()[0].value, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.clusters()[1].value, 0.0, epsilon = 1e-14);
        assert!(max_entry_distance(&d.reconstruct(), &h) < 1e-14);
    }
}
