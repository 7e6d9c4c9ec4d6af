//! Collective spin-j operators and the unitaries built from them.
//!
//! Basis states are ordered `m = j, j-1, ..., -j`. Product states of the two
//! regions are stored row-major with `m1` as the outer index.

use nalgebra::{DMatrix, SymmetricEigen};
use ndarray::Array2;
use num_complex::Complex64;

use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Spin magnitude `j`, stored as the integer `2j` so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(u32);

impl Spin {
    pub fn new(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice < 1.0 || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(Error::InvalidSpin(j));
        }
        Ok(Spin(twice as u32))
    }

    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::InvalidSpin(0.0));
        }
        Ok(Spin(twice_j))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Number of basis states, `2j + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// Magnetic quantum number of basis index `k`, i.e. `j - k`.
    pub fn m(self, k: usize) -> f64 {
        self.value() - k as f64
    }

    /// All `m` values in basis order.
    pub fn ms(self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.m(k)).collect()
    }

    /// `<j, m+1| S+ |j, m>` for the state at basis index `k`.
    ///
    /// Zero for `k = 0`, where `m = j` is already maximal.
    pub fn raising_element(self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let j = self.value();
        let m = self.m(k);
        (j * (j + 1.0) - m * (m + 1.0)).sqrt()
    }
}

/// Dense `Sx`, `Sy`, `Sz` for one spin magnitude.
#[derive(Debug, Clone)]
pub struct SpinMatrices {
    pub j: Spin,
    pub sx: Array2<Complex64>,
    pub sy: Array2<Complex64>,
    pub sz: Array2<Complex64>,
}

impl SpinMatrices {
    pub fn new(j: f64) -> Result<Self> {
        Ok(build_spin_matrices(Spin::new(j)?))
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    /// `Sx² + Sy² + Sz²`.
    pub fn casimir(&self) -> Array2<Complex64> {
        self.sx.dot(&self.sx) + self.sy.dot(&self.sy) + self.sz.dot(&self.sz)
    }
}

/// Ladder construction of the spin-j matrices.
pub fn build_spin_matrices(j: Spin) -> SpinMatrices {
    let d = j.dim();
    let mut sx = Array2::zeros((d, d));
    let mut sy = Array2::zeros((d, d));
    let mut sz = Array2::zeros((d, d));
    for k in 0..d {
        sz[[k, k]] = Complex64::from(j.m(k));
    }
    for k in 1..d {
        // S+ has its only nonzero entries at (k-1, k).
        let c = j.raising_element(k);
        sx[[k - 1, k]] = Complex64::from(0.5 * c);
        sx[[k, k - 1]] = Complex64::from(0.5 * c);
        sy[[k - 1, k]] = -0.5 * I * c;
        sy[[k, k - 1]] = 0.5 * I * c;
    }
    SpinMatrices { j, sx, sy, sz }
}

/// Square complex matrix that is unitary up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(Array2<Complex64>);

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix(Array2::eye(dim))
    }

    /// Wrap an arbitrary matrix. The caller vouches for unitarity; see
    /// [`UnitaryMatrix::unitarity_error`].
    pub fn from_array_unchecked(entries: Array2<Complex64>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "unitary must be square");
        UnitaryMatrix(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_array(&self) -> &Array2<Complex64> {
        &self.0
    }

    pub fn into_array(self) -> Array2<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        UnitaryMatrix(self.0.t().mapv(|z| z.conj()))
    }

    pub fn compose(&self, rhs: &UnitaryMatrix) -> Self {
        UnitaryMatrix(self.0.dot(&rhs.0))
    }

    /// `max |(U†U - I)_{ab}|`.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.0.t().mapv(|z| z.conj()).dot(&self.0);
        prod.indexed_iter()
            .map(|((a, b), z)| {
                let target = if a == b { 1.0 } else { 0.0 };
                (z - target).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Eigendecomposition of `Sx` for one spin, reused for every rotation angle.
#[derive(Debug, Clone)]
pub struct XRotationGenerator {
    j: Spin,
    eigenvalues: Vec<f64>,
    eigenvectors: Array2<f64>,
}

impl XRotationGenerator {
    pub fn new(j: Spin) -> Self {
        let d = j.dim();
        // Sx is real symmetric and tridiagonal in the |j,m> basis.
        let mut sx = DMatrix::<f64>::zeros(d, d);
        for k in 1..d {
            let c = 0.5 * j.raising_element(k);
            sx[(k - 1, k)] = c;
            sx[(k, k - 1)] = c;
        }
        let eig = SymmetricEigen::new(sx);

        // The spectrum of Sx is exactly {-j, ..., j}. Snapping removes the
        // O(j·eps) eigenvalue noise so that a 2π rotation is exactly ±I.
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let mut eigenvalues = vec![0.0; d];
        let mut eigenvectors = Array2::zeros((d, d));
        for (rank, &col) in order.iter().enumerate() {
            let exact = -j.value() + rank as f64;
            debug_assert!((eig.eigenvalues[col] - exact).abs() < 1e-8 * (1.0 + j.value()));
            eigenvalues[rank] = exact;
            for row in 0..d {
                eigenvectors[[row, rank]] = eig.eigenvectors[(row, col)];
            }
        }
        XRotationGenerator {
            j,
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn spin(&self) -> Spin {
        self.j
    }

    /// `exp(-i·phi·Sx)`.
    pub fn rotation(&self, phi: f64) -> UnitaryMatrix {
        let d = self.j.dim();
        let v = &self.eigenvectors;
        let phases: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .map(|&lam| Complex64::from_polar(1.0, -phi * lam))
            .collect();
        let mut u = Array2::<Complex64>::zeros((d, d));
        for a in 0..d {
            for b in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, p) in phases.iter().enumerate() {
                    acc += p * (v[[a, k]] * v[[b, k]]);
                }
                u[[a, b]] = acc;
            }
        }
        UnitaryMatrix(u)
    }
}

/// `exp(-i·phi·Sx)` for spin `j`.
pub fn x_rotation(j: Spin, phi: f64) -> UnitaryMatrix {
    XRotationGenerator::new(j).rotation(phi)
}

/// Unit-modulus diagonal over the two-region product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalPhases {
    d1: usize,
    d2: usize,
    values: Vec<Complex64>,
}

impl DiagonalPhases {
    pub fn ones(d1: usize, d2: usize) -> Self {
        DiagonalPhases {
            d1,
            d2,
            values: vec![Complex64::new(1.0, 0.0); d1 * d2],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Phase at product index `(k1, k2)`.
    pub fn get(&self, k1: usize, k2: usize) -> Complex64 {
        self.values[k1 * self.d2 + k2]
    }

    pub fn conj(&self) -> Self {
        DiagonalPhases {
            d1: self.d1,
            d2: self.d2,
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }
}

/// Half-period propagator of the Ising term, `exp(-i·(4J/N)·(m1+m2)²)`.
///
/// Each region holds `n_spins / 2` spins in the maximal sector
/// `j = n_spins / 4`.
pub fn interaction_half_phases(n_spins: usize, j_coupling: f64) -> Result<DiagonalPhases> {
    let j = region_spin(n_spins)?;
    let d = j.dim();
    let scale = 4.0 * j_coupling / n_spins as f64;
    let mut values = Vec::with_capacity(d * d);
    for k1 in 0..d {
        for k2 in 0..d {
            let total = j.m(k1) + j.m(k2);
            values.push(Complex64::from_polar(1.0, -scale * total * total));
        }
    }
    Ok(DiagonalPhases {
        d1: d,
        d2: d,
        values,
    })
}

/// Per-region spin `N/4` for an even spin count `N >= 2`.
pub fn region_spin(n_spins: usize) -> Result<Spin> {
    if n_spins < 2 || !n_spins.is_multiple_of(2) {
        return Err(Error::InvalidSpinCount(n_spins));
    }
    // 2j = N/2
    Spin::from_twice((n_spins / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(a: &Array2<Complex64>) -> f64 {
        a.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn spins() -> Vec<Spin> {
        [0.5, 1.0, 1.5, 5.0, 25.0]
            .iter()
            .map(|&j| Spin::new(j).unwrap())
            .collect()
    }

    #[test]
    fn rejects_bad_spins() {
        for j in [0.0, -0.5, 0.3, 1.25, f64::NAN, f64::INFINITY] {
            assert!(Spin::new(j).is_err(), "{j}");
        }
        assert_eq!(Spin::new(2.5).unwrap().dim(), 6);
    }

    #[test]
    fn spin_half_sz() {
        let s = SpinMatrices::new(0.5).unwrap();
        assert_eq!(s.sz[[0, 0]], Complex64::from(0.5));
        assert_eq!(s.sz[[1, 1]], Complex64::from(-0.5));
        assert_eq!(s.sz[[0, 1]], Complex64::from(0.0));
    }

    #[test]
    fn spin_one_raising() {
        let s = SpinMatrices::new(1.0).unwrap();
        let splus = &s.sx + &s.sy.mapv(|z| I * z);
        assert!((splus[[0, 1]] - Complex64::from(2f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn algebra_identities() {
        for j in spins() {
            let s = build_spin_matrices(j);
            for m in [&s.sx, &s.sy, &s.sz] {
                let herm = m - &m.t().mapv(|z| z.conj());
                assert!(max_abs(&herm) <= 1e-14);
            }
            let comm = s.sx.dot(&s.sy) - s.sy.dot(&s.sx) - s.sz.mapv(|z| I * z);
            assert!(max_abs(&comm) <= 1e-12, "[Sx,Sy] j={}", j.value());
            let comm = s.sy.dot(&s.sz) - s.sz.dot(&s.sy) - s.sx.mapv(|z| I * z);
            assert!(max_abs(&comm) <= 1e-12, "[Sy,Sz] j={}", j.value());
            let comm = s.sz.dot(&s.sx) - s.sx.dot(&s.sz) - s.sy.mapv(|z| I * z);
            assert!(max_abs(&comm) <= 1e-12, "[Sz,Sx] j={}", j.value());
            let jj = j.value() * (j.value() + 1.0);
            let cas = s.casimir() - Array2::<Complex64>::eye(j.dim()).mapv(|z| z * jj);
            assert!(max_abs(&cas) <= 1e-12, "casimir j={}", j.value());
        }
    }

    #[test]
    fn casimir_j25() {
        let s = SpinMatrices::new(25.0).unwrap();
        let cas = s.casimir();
        for a in 0..51 {
            assert!((cas[[a, a]] - Complex64::from(650.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_rotation_is_identity() {
        for j in spins() {
            let u = x_rotation(j, 0.0);
            assert!(max_abs(&(u.as_array() - &Array2::<Complex64>::eye(j.dim()))) < 1e-13);
        }
    }

    // Direct 2x2 exponentiation: exp(-i·phi·σx/2) = cos(phi/2) I - i sin(phi/2) σx.
    #[test]
    fn spinor_sign_flip() {
        let j = Spin::new(0.5).unwrap();
        for phi in [0.3, 1.7, 2.0 * std::f64::consts::PI] {
            let u = x_rotation(j, phi);
            let c = Complex64::from((phi / 2.0).cos());
            let s = -I * (phi / 2.0).sin();
            let expected = ndarray::array![[c, s], [s, c]];
            assert!(max_abs(&(u.as_array() - &expected)) < 1e-14, "phi={phi}");
        }
        let u = x_rotation(j, 2.0 * std::f64::consts::PI);
        assert!(max_abs(&(u.as_array() + &Array2::<Complex64>::eye(2))) < 1e-14);
    }

    #[test]
    fn pi_rotation_flips_m() {
        for jv in [1.0, 2.5, 25.0] {
            let j = Spin::new(jv).unwrap();
            let u = x_rotation(j, std::f64::consts::PI);
            let d = j.dim();
            for k in 0..d {
                assert!((u.as_array()[[d - 1 - k, k]].norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rotations_are_unitary_and_compose() {
        for j in spins() {
            let gen = XRotationGenerator::new(j);
            for (a, b) in [(0.3, 1.1), (-2.0, 0.7), (3.3, 4.4)] {
                let ua = gen.rotation(a);
                assert!(ua.unitarity_error() < 1e-11);
                let prod = ua.compose(&gen.rotation(b));
                let diff = prod.as_array() - gen.rotation(a + b).as_array();
                assert!(max_abs(&diff) < 1e-10, "j={} a={a} b={b}", j.value());
            }
        }
    }

    #[test]
    fn rotation_matches_series_exponential() {
        // Taylor series of exp(-i·phi·Sx), summed until terms vanish.
        let j = Spin::new(1.5).unwrap();
        let s = build_spin_matrices(j);
        let phi = 0.9;
        let gen = s.sx.mapv(|z| -I * phi * z);
        let mut term = Array2::<Complex64>::eye(4);
        let mut sum = term.clone();
        for k in 1..60 {
            term = term.dot(&gen).mapv(|z| z / k as f64);
            sum += &term;
        }
        assert!(max_abs(&(sum - x_rotation(j, phi).as_array())) < 1e-13);
    }

    #[test]
    fn interaction_phases_basic() {
        let p = interaction_half_phases(8, 0.0).unwrap();
        assert!(p.values().iter().all(|&z| z == Complex64::new(1.0, 0.0)));

        let p = interaction_half_phases(12, 0.7).unwrap();
        let j = region_spin(12).unwrap();
        let d = j.dim();
        for k1 in 0..d {
            for k2 in 0..d {
                let z = p.get(k1, k2);
                assert!((z.norm() - 1.0).abs() <= 1e-14);
                if j.m(k1) + j.m(k2) == 0.0 {
                    assert_eq!(z, Complex64::new(1.0, 0.0));
                }
                assert_eq!(z, p.get(k2, k1));
                assert_eq!(z, p.get(d - 1 - k1, d - 1 - k2));
            }
        }
        assert!(matches!(
            interaction_half_phases(7, 0.5),
            Err(Error::InvalidSpinCount(7))
        ));
        assert!(interaction_half_phases(0, 0.5).is_err());
    }

    // exp(-i·H1/2) with H1 = (2J/N)(Σσᶻ)², evaluated on every bit string of
    // the 2^8 Pauli basis and compared with the collective-sector entry for
    // the matching (m1, m2).
    #[test]
    fn interaction_phases_match_pauli_space() {
        let (n, jc) = (8usize, 0.5);
        let p = interaction_half_phases(n, jc).unwrap();
        let j = region_spin(n).unwrap();
        for bits in 0u32..(1 << n) {
            let sz = |range: std::ops::Range<usize>| -> i32 {
                range.map(|q| if bits >> q & 1 == 0 { 1 } else { -1 }).sum()
            };
            let (s1, s2) = (sz(0..n / 2), sz(n / 2..n));
            let total = (s1 + s2) as f64;
            let brute = Complex64::from_polar(1.0, -0.5 * (2.0 * jc / n as f64) * total * total);
            // σ sums are 2m, and index k has m = j - k
            let k1 = (j.value() - s1 as f64 / 2.0) as usize;
            let k2 = (j.value() - s2 as f64 / 2.0) as usize;
            assert!((brute - p.get(k1, k2)).norm() < 1e-14);
        }
        let j2 = region_spin(8).unwrap();
        // m1 + m2 = 2 at (k1, k2) = (0, 2) for j = 2
        assert!((j2.m(0) + j2.m(2) - 2.0).abs() < 1e-15);
        assert!((p.get(0, 2) - Complex64::from_polar(1.0, -1.0)).norm() < 1e-15);
    }
}
