//! Independent brute-force quantum mechanics on a periodic position grid.
//!
//! Everything here is deliberately direct: dense Hermitian matrices, full
//! diagonalization, explicit sums. The kinetic energy is spectral (built
//! from the exact plane-wave lattice), so free-particle eigenstates are
//! exact lattice plane waves and imaginary-time matrix elements carry no
//! finite-difference dispersion error. Other modules treat these results
//! as ground truth.

use crate::grid::KahanSum;
use crate::perm::{cycle_lengths, for_each_permutation};
use crate::{Error, Result, C64};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// Particle exchange statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Boson,
    Fermion,
}

impl Statistics {
    /// `(+1)^parity` for bosons, `(-1)^parity` for fermions.
    pub fn permutation_sign(self, parity: u8) -> f64 {
        match self {
            Statistics::Boson => 1.0,
            Statistics::Fermion => {
                if parity == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    /// Sign of an `l`-cycle, `(±1)^(l-1)`.
    pub fn cycle_sign(self, l: usize) -> f64 {
        match self {
            Statistics::Boson => 1.0,
            Statistics::Fermion => {
                if l % 2 == 1 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// External one-body potential on the ring.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    /// Ideal gas.
    Zero,
    /// `m omega^2 (x - center)^2 / 2`.
    Harmonic { omega: f64, center: f64 },
}

impl Potential {
    pub fn eval(&self, mass: f64, x: f64) -> f64 {
        match self {
            Potential::Zero => 0.0,
            Potential::Harmonic { omega, center } => {
                0.5 * mass * omega * omega * (x - center) * (x - center)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Potential::Zero)
    }
}

/// Dense operators for one particle on a ring `[0, L)` with `M` grid points:
/// spectral kinetic energy, diagonal potential, cached eigendecomposition.
#[derive(Debug, Clone)]
pub struct GridOperatorSet {
    box_length: f64,
    points: usize,
    mass: f64,
    hbar: f64,
    potential: Potential,
    hamiltonian: DMatrix<f64>,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl GridOperatorSet {
    pub fn new(
        box_length: f64,
        points: usize,
        mass: f64,
        hbar: f64,
        potential: Potential,
    ) -> Result<Self> {
        if !(box_length > 0.0) || !(mass > 0.0) || !(hbar > 0.0) {
            return Err(Error::InvalidParameter {
                name: "box/mass/hbar",
                reason: "must all be positive".into(),
            });
        }
        if points < 8 || points % 2 != 0 {
            return Err(Error::InvalidParameter {
                name: "points",
                reason: format!("need an even grid of at least 8 points, got {points}"),
            });
        }
        let m = points;
        let dp = 2.0 * PI * hbar / box_length;
        // Circulant kinetic matrix from the exact momentum lattice:
        // K_{jl} depends only on (j - l) mod M.
        let mut kin_row = vec![0.0f64; m];
        for d in 0..m {
            let mut acc = KahanSum::new();
            for n in -(m as i64) / 2..(m as i64) / 2 {
                let eps = (dp * n as f64).powi(2) / (2.0 * mass);
                acc.add(eps * (2.0 * PI * (n * d as i64) as f64 / m as f64).cos());
            }
            kin_row[d] = acc.value() / m as f64;
        }
        let dx = box_length / m as f64;
        let mut h = DMatrix::<f64>::zeros(m, m);
        for j in 0..m {
            for l in 0..m {
                let d = (j + m - l) % m;
                h[(j, l)] = kin_row[d];
            }
            h[(j, j)] += potential.eval(mass, j as f64 * dx);
        }
        // Symmetrize away rounding asymmetry before diagonalizing.
        let h = (h.clone() + h.transpose()) * 0.5;
        let eig = h.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues = DVector::from_iterator(m, order.iter().map(|&i| eig.eigenvalues[i]));
        let mut eigenvectors = DMatrix::<f64>::zeros(m, m);
        for (col, &i) in order.iter().enumerate() {
            eigenvectors.set_column(col, &eig.eigenvectors.column(i));
        }
        Ok(Self {
            box_length,
            points,
            mass,
            hbar,
            potential,
            hamiltonian: h,
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn step(&self) -> f64 {
        self.box_length / self.points as f64
    }

    pub fn position(&self, j: usize) -> f64 {
        j as f64 * self.step()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.position(j)).collect()
    }

    pub fn hamiltonian(&self) -> &DMatrix<f64> {
        &self.hamiltonian
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        self.eigenvectors.column(k).into()
    }

    /// Momentum lattice spacing `2 pi hbar / L`.
    pub fn momentum_spacing(&self) -> f64 {
        2.0 * PI * self.hbar / self.box_length
    }

    /// Lattice momentum `2 pi hbar n / L`.
    pub fn momentum_value(&self, n: i64) -> f64 {
        self.momentum_spacing() * n as f64
    }

    /// Largest representable |n| (just below Nyquist).
    pub fn max_momentum_index(&self) -> i64 {
        self.points as i64 / 2 - 1
    }

    /// Lattice index for a momentum value, rejecting off-lattice input.
    pub fn lattice_index(&self, p: f64) -> Result<i64> {
        let spacing = self.momentum_spacing();
        let n = (p / spacing).round();
        let offset = (p - n * spacing).abs();
        if offset > 1e-9 * spacing.max(1.0) {
            return Err(Error::OffLattice {
                value: p,
                spacing,
                offset,
            });
        }
        let n = n as i64;
        if n.abs() > self.max_momentum_index() {
            return Err(Error::OffLattice {
                value: p,
                spacing,
                offset: 0.0,
            });
        }
        Ok(n)
    }

    /// Grid-node index for a position value, rejecting off-grid input.
    pub fn grid_index(&self, q: f64) -> Result<usize> {
        let dx = self.step();
        let j = (q / dx).round();
        if (q - j * dx).abs() > 1e-9 * dx {
            return Err(Error::OffGrid {
                value: q,
                spacing: dx,
            });
        }
        let j = j as i64;
        let m = self.points as i64;
        Ok(((j % m + m) % m) as usize)
    }

    /// Samples of the plane wave `e^{i p x / hbar} / sqrt(L)`.
    pub fn plane_wave(&self, n: i64) -> DVector<C64> {
        let p = self.momentum_value(n);
        let norm = 1.0 / self.box_length.sqrt();
        DVector::from_iterator(
            self.points,
            (0..self.points)
                .map(|j| C64::from_polar(norm, p * self.position(j) / self.hbar)),
        )
    }

    /// Apply `e^{-beta H}` to a complex grid vector through the eigenbasis.
    pub fn propagate(&self, beta: f64, v: &DVector<C64>) -> DVector<C64> {
        let m = self.points;
        let mut coeff = vec![C64::new(0.0, 0.0); m];
        for k in 0..m {
            let col = self.eigenvectors.column(k);
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..m {
                acc += col[j] * v[j];
            }
            coeff[k] = acc * (-beta * self.eigenvalues[k]).exp();
        }
        let mut out = DVector::from_element(m, C64::new(0.0, 0.0));
        for k in 0..m {
            let col = self.eigenvectors.column(k);
            let c = coeff[k];
            for j in 0..m {
                out[j] += col[j] * c;
            }
        }
        out
    }

    /// `<q_j| e^{-beta H} |p_n>`: imaginary-time matrix element between a
    /// position eigenfunction and a lattice momentum eigenfunction.
    pub fn imaginary_time_element(&self, beta: f64, q_index: usize, n: i64) -> Result<C64> {
        if n.abs() > self.max_momentum_index() {
            return Err(Error::OffLattice {
                value: self.momentum_value(n),
                spacing: self.momentum_spacing(),
                offset: 0.0,
            });
        }
        let pw = self.plane_wave(n);
        let prop = self.propagate(beta, &pw);
        Ok(prop[q_index])
    }

    /// Table of ratios `g(p, q) = <q|e^{-beta H}|p> / <q|p>` for a set of
    /// lattice momenta; row = momentum, column = grid node.
    pub fn propagator_ratio_table(&self, beta: f64, n_values: &[i64]) -> Result<DMatrix<C64>> {
        self.weighted_ratio_table(beta, n_values, None, OperatorSide::RightOfPropagator)
    }

    /// Ratios `<q| e^{-beta H} A |p> / <q|p>` (or `A e^{-beta H}`, or the
    /// anticommutator average) for an optional one-body operator matrix.
    pub fn weighted_ratio_table(
        &self,
        beta: f64,
        n_values: &[i64],
        op: Option<&DMatrix<C64>>,
        side: OperatorSide,
    ) -> Result<DMatrix<C64>> {
        let m = self.points;
        if let Some(a) = op {
            if a.nrows() != m || a.ncols() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: a.nrows(),
                });
            }
        }
        let mut out = DMatrix::from_element(n_values.len(), m, C64::new(0.0, 0.0));
        for (row, &n) in n_values.iter().enumerate() {
            if n.abs() > self.max_momentum_index() {
                return Err(Error::OffLattice {
                    value: self.momentum_value(n),
                    spacing: self.momentum_spacing(),
                    offset: 0.0,
                });
            }
            let pw = self.plane_wave(n);
            let applied = match (op, side) {
                (None, _) => self.propagate(beta, &pw),
                (Some(a), OperatorSide::RightOfPropagator) => self.propagate(beta, &(a * &pw)),
                (Some(a), OperatorSide::LeftOfPropagator) => a * self.propagate(beta, &pw),
                (Some(a), OperatorSide::SymmetrizedHalf) => {
                    (self.propagate(beta, &(a * &pw)) + a * self.propagate(beta, &pw)) * 0.5
                }
            };
            for j in 0..m {
                let bra_ket = C64::from_polar(
                    1.0 / self.box_length.sqrt(),
                    self.momentum_value(n) * self.position(j) / self.hbar,
                );
                out[(row, j)] = applied[j] / bra_ket;
            }
        }
        Ok(out)
    }

    /// Dense one-body operator matrix on the grid.
    pub fn one_body_matrix(&self, kind: &OneBodyKind) -> DMatrix<C64> {
        let m = self.points;
        match kind {
            OneBodyKind::PositionPower { power, center } => {
                let mut out = DMatrix::from_element(m, m, C64::new(0.0, 0.0));
                for j in 0..m {
                    out[(j, j)] = C64::new((self.position(j) - center).powi(*power as i32), 0.0);
                }
                out
            }
            OneBodyKind::MomentumPower { power } => {
                // Circulant built from the momentum lattice.
                let mut row = vec![C64::new(0.0, 0.0); m];
                for d in 0..m {
                    let mut acc = C64::new(0.0, 0.0);
                    for n in -(m as i64) / 2..(m as i64) / 2 {
                        let p = self.momentum_value(n);
                        let phase = 2.0 * PI * (n * d as i64) as f64 / m as f64;
                        acc += C64::from_polar(p.powi(*power as i32), phase);
                    }
                    row[d] = acc / m as f64;
                }
                let mut out = DMatrix::from_element(m, m, C64::new(0.0, 0.0));
                for j in 0..m {
                    for l in 0..m {
                        let d = (j + m - l) % m;
                        out[(j, l)] = row[d];
                    }
                }
                out
            }
        }
    }

    /// Ring-weighted expectation `dx * psi^H (A psi)`, asserting Hermiticity
    /// of the observable.
    pub fn dense_expectation(&self, psi: &DVector<C64>, obs: &DMatrix<C64>) -> Result<f64> {
        if psi.len() != self.points || obs.nrows() != self.points || obs.ncols() != self.points {
            return Err(Error::DimensionMismatch {
                expected: self.points,
                got: psi.len().min(obs.nrows()),
            });
        }
        let max_asym = hermitian_asymmetry(obs);
        if max_asym > 1e-12 * matrix_scale(obs) {
            return Err(Error::NonHermitian {
                max_asymmetry: max_asym,
                tolerance: 1e-12 * matrix_scale(obs),
            });
        }
        let applied = obs * psi;
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..self.points {
            acc += psi[j].conj() * applied[j];
        }
        let val = acc * self.step();
        debug_assert!(val.im.abs() <= 1e-10 * val.re.abs().max(1.0));
        Ok(val.re)
    }

    /// Largest eigen-residual `||H v - lambda v||` over all retained pairs.
    pub fn max_eigen_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.points {
            let v = self.eigenvectors.column(k);
            let r = &self.hamiltonian * v - self.eigenvalues[k] * v;
            worst = worst.max(r.norm());
        }
        worst
    }

    /// Spectral norm proxy for tolerance scaling.
    pub fn hamiltonian_scale(&self) -> f64 {
        self.eigenvalues[self.points - 1]
            .abs()
            .max(self.eigenvalues[0].abs())
    }
}

/// Which side of `e^{-beta H}` a weighting operator sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorSide {
    /// `e^{-beta H} A`
    RightOfPropagator,
    /// `A e^{-beta H}`
    LeftOfPropagator,
    /// `(e^{-beta H} A + A e^{-beta H}) / 2`
    SymmetrizedHalf,
}

/// One-body operator kinds representable on the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum OneBodyKind {
    MomentumPower { power: u32 },
    PositionPower { power: u32, center: f64 },
}

/// Scaling-and-squaring matrix exponential `e^{-beta H}`, independent of the
/// eigendecomposition path.
pub fn matrix_exp_scaled(h: &DMatrix<f64>, beta: f64) -> DMatrix<f64> {
    let m = h.nrows();
    let scaled_norm = h.amax() * beta;
    let s = if scaled_norm > 0.5 {
        (scaled_norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let a = h * (-beta / 2f64.powi(s as i32));
    let mut term = DMatrix::<f64>::identity(m, m);
    let mut sum = DMatrix::<f64>::identity(m, m);
    for k in 1..200 {
        term = (&term * &a) / k as f64;
        sum += &term;
        if term.amax() < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

fn hermitian_asymmetry(m: &DMatrix<C64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn matrix_scale(m: &DMatrix<C64>) -> f64 {
    let mut s: f64 = 0.0;
    for v in m.iter() {
        s = s.max(v.norm());
    }
    s.max(1.0)
}

/// Single-particle mode energies on the ring, for symmetrized ideal-gas
/// state sums.
#[derive(Debug, Clone)]
pub struct SymmetrizedStateSum {
    mode_energies: Vec<f64>,
}

impl SymmetrizedStateSum {
    /// Free-particle ring modes `(2 pi hbar n / L)^2 / 2m` for |n| <= max_index.
    pub fn ring_modes(box_length: f64, mass: f64, hbar: f64, max_index: i64) -> Self {
        let dp = 2.0 * PI * hbar / box_length;
        let mode_energies = (-max_index..=max_index)
            .map(|n| (dp * n as f64).powi(2) / (2.0 * mass))
            .collect();
        Self { mode_energies }
    }

    pub fn from_energies(mode_energies: Vec<f64>) -> Self {
        Self { mode_energies }
    }

    pub fn mode_count(&self) -> usize {
        self.mode_energies.len()
    }

    /// `b_k = sum_modes e^{-k beta eps}`.
    pub fn boltzmann_sum(&self, beta: f64, k: u32) -> f64 {
        let mut acc = KahanSum::new();
        for &e in &self.mode_energies {
            acc.add((-(k as f64) * beta * e).exp());
        }
        acc.value()
    }

    /// Canonical partition functions `Z_0..Z_n_max` by the symmetric-function
    /// recursion `Z_N = (1/N) sum_k (±1)^(k-1) b_k Z_{N-k}`.
    pub fn canonical_partitions(&self, beta: f64, n_max: usize, stat: Statistics) -> Vec<f64> {
        let b: Vec<f64> = (1..=n_max as u32)
            .map(|k| self.boltzmann_sum(beta, k))
            .collect();
        let mut z = vec![0.0; n_max + 1];
        z[0] = 1.0;
        for n in 1..=n_max {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += stat.cycle_sign(k) * b[k - 1] * z[n - k];
            }
            z[n] = acc / n as f64;
        }
        z
    }

    /// Grand partition function truncated at `n_max` particles:
    /// `Xi = sum_N z^N Z_N`.
    pub fn grand_partition(&self, z: f64, beta: f64, n_max: usize, stat: Statistics) -> f64 {
        self.grand_partition_terms(z, beta, n_max, stat).iter().sum()
    }

    /// The per-N contributions `z^N Z_N`.
    pub fn grand_partition_terms(
        &self,
        z: f64,
        beta: f64,
        n_max: usize,
        stat: Statistics,
    ) -> Vec<f64> {
        self.canonical_partitions(beta, n_max, stat)
            .iter()
            .enumerate()
            .map(|(n, zn)| z.powi(n as i32) * zn)
            .collect()
    }

    /// Canonical partition function by the explicit permutation sum
    /// `Z_N = (1/N!) sum_P (±1)^p prod_cycles b_l`. Exponential in N;
    /// kept as an independent combinatorial route for validation.
    pub fn permutation_route_partition(&self, beta: f64, n: usize, stat: Statistics) -> Result<f64> {
        if n > 8 {
            return Err(Error::TooManyParticles { n, max: 8 });
        }
        if n == 0 {
            return Ok(1.0);
        }
        let b: Vec<f64> = (1..=n as u32)
            .map(|k| self.boltzmann_sum(beta, k))
            .collect();
        let mut total = KahanSum::new();
        for_each_permutation(n, |sigma, parity| {
            let mut term = stat.permutation_sign(parity);
            for l in cycle_lengths(sigma) {
                term *= b[l - 1];
            }
            total.add(term);
        });
        let factorial: f64 = (1..=n).map(|k| k as f64).product();
        Ok(total.value() / factorial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_ops(points: usize) -> GridOperatorSet {
        GridOperatorSet::new(2.0 * PI, points, 1.0, 1.0, Potential::Zero).unwrap()
    }

    fn harmonic_ops(points: usize) -> GridOperatorSet {
        GridOperatorSet::new(
            2.0 * PI,
            points,
            1.0,
            1.0,
            Potential::Harmonic {
                omega: 1.0,
                center: PI,
            },
        )
        .unwrap()
    }

    #[test]
    fn eigen_residuals_are_tiny() {
        let ops = harmonic_ops(128);
        assert!(ops.max_eigen_residual() <= 1e-10 * ops.hamiltonian_scale());
    }

    #[test]
    fn free_spectrum_matches_lattice_energies() {
        let ops = free_ops(64);
        // Ground state 0, then doubly degenerate n^2/2 pairs.
        assert!(ops.eigenvalues()[0].abs() < 1e-12);
        assert!((ops.eigenvalues()[1] - 0.5).abs() < 1e-10);
        assert!((ops.eigenvalues()[2] - 0.5).abs() < 1e-10);
        assert!((ops.eigenvalues()[3] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn harmonic_low_spectrum_is_oscillator_like() {
        let ops = harmonic_ops(256);
        // Low-lying levels of the ring-confined oscillator: n + 1/2.
        for k in 0..4 {
            assert!(
                (ops.eigenvalues()[k] - (k as f64 + 0.5)).abs() < 1e-6,
                "level {k}: {}",
                ops.eigenvalues()[k]
            );
        }
    }

    #[test]
    fn beta_zero_element_is_the_plane_wave() {
        let ops = harmonic_ops(64);
        for (j, n) in [(0usize, 1i64), (13, -3), (40, 7)] {
            let elem = ops.imaginary_time_element(0.0, j, n).unwrap();
            let expect = C64::from_polar(
                1.0 / ops.box_length().sqrt(),
                ops.momentum_value(n) * ops.position(j) / ops.hbar(),
            );
            assert!((elem - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn free_particle_element_is_boltzmann_times_plane_wave() {
        let ops = free_ops(64);
        let beta = 0.7;
        for (j, n) in [(5usize, 0i64), (20, 2), (63, -5)] {
            let elem = ops.imaginary_time_element(beta, j, n).unwrap();
            let p = ops.momentum_value(n);
            let expect = C64::from_polar(
                (-beta * p * p / 2.0).exp() / ops.box_length().sqrt(),
                p * ops.position(j) / ops.hbar(),
            );
            assert!((elem - expect).norm() < 1e-12, "j={j} n={n}");
        }
    }

    #[test]
    fn large_beta_element_is_ground_state_dominated() {
        let ops = harmonic_ops(128);
        let beta = 20.0;
        let e0 = ops.eigenvalues()[0];
        let psi0 = ops.eigenvector(0);
        let dx = ops.step();
        // <psi0|p> with ring weights
        let n = 1i64;
        let pw = ops.plane_wave(n);
        let mut proj = C64::new(0.0, 0.0);
        for j in 0..ops.points() {
            proj += psi0[j] * pw[j];
        }
        proj *= dx / dx.sqrt(); // psi0 column is l2-normalized; continuum scale 1/sqrt(dx)
        let j = 60;
        let expect = (-beta * e0).exp() * (psi0[j] / dx.sqrt()) * proj;
        let elem = ops.imaginary_time_element(beta, j, n).unwrap();
        assert!(
            (elem - expect).norm() < 1e-6 * expect.norm(),
            "elem={elem} expect={expect}"
        );
    }

    #[test]
    fn propagator_matches_scaling_squaring() {
        let ops = harmonic_ops(64);
        let beta = 0.9;
        let exp_dense = matrix_exp_scaled(ops.hamiltonian(), beta);
        // Compare action on a plane wave.
        let pw = ops.plane_wave(3);
        let via_eigen = ops.propagate(beta, &pw);
        let re: DVector<f64> = DVector::from_iterator(64, pw.iter().map(|z| z.re));
        let im: DVector<f64> = DVector::from_iterator(64, pw.iter().map(|z| z.im));
        let dre = &exp_dense * re;
        let dim = &exp_dense * im;
        let mut worst: f64 = 0.0;
        for j in 0..64 {
            let direct = C64::new(dre[j], dim[j]);
            worst = worst.max((direct - via_eigen[j]).norm());
        }
        assert!(worst < 1e-9, "max deviation {worst:.3e}");
    }

    #[test]
    fn dense_expectation_of_identity_is_norm() {
        let ops = free_ops(64);
        let pw = ops.plane_wave(2);
        let id = DMatrix::<C64>::identity(64, 64);
        let v = ops.dense_expectation(&pw, &id).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_expectation_of_hamiltonian_on_eigenvector() {
        let ops = harmonic_ops(64);
        let k = 3;
        let v = ops.eigenvector(k) / ops.step().sqrt();
        let vc = DVector::from_iterator(64, v.iter().map(|&x| C64::new(x, 0.0)));
        let hc = DMatrix::from_iterator(
            64,
            64,
            ops.hamiltonian().iter().map(|&x| C64::new(x, 0.0)),
        );
        let e = ops.dense_expectation(&vc, &hc).unwrap();
        assert!((e - ops.eigenvalues()[k]).abs() < 1e-10 * ops.hamiltonian_scale());
    }

    #[test]
    fn dense_expectation_rejects_non_hermitian() {
        let ops = free_ops(8);
        let pw = ops.plane_wave(1);
        let mut bad = DMatrix::<C64>::identity(8, 8);
        bad[(0, 1)] = C64::new(0.5, 0.0);
        assert!(matches!(
            ops.dense_expectation(&pw, &bad),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn momentum_power_matrix_acts_on_plane_waves() {
        let ops = free_ops(64);
        let p2 = ops.one_body_matrix(&OneBodyKind::MomentumPower { power: 2 });
        let pw = ops.plane_wave(3);
        let out = &p2 * &pw;
        let expect = ops.momentum_value(3).powi(2);
        for j in 0..64 {
            assert!((out[j] - pw[j] * expect).norm() < 1e-9);
        }
    }

    #[test]
    fn off_lattice_momentum_is_rejected() {
        let ops = free_ops(64);
        assert!(ops.lattice_index(1.0).is_err()); // spacing is 1 only if L = 2 pi... check
        assert!(ops.lattice_index(ops.momentum_value(3) * 1.0001).is_err());
        assert_eq!(ops.lattice_index(ops.momentum_value(-5)).unwrap(), -5);
    }

    #[test]
    fn state_sum_textbook_two_particle_forms() {
        let sum = SymmetrizedStateSum::ring_modes(2.0 * PI, 1.0, 1.0, 8);
        let beta = 0.6;
        let b1 = sum.boltzmann_sum(beta, 1);
        let b2 = sum.boltzmann_sum(beta, 2);
        let zb = sum.canonical_partitions(beta, 2, Statistics::Boson);
        let zf = sum.canonical_partitions(beta, 2, Statistics::Fermion);
        assert!((zb[2] - (b1 * b1 + b2) / 2.0).abs() < 1e-12);
        assert!((zf[2] - (b1 * b1 - b2) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn two_fermions_cannot_share_a_single_mode() {
        let sum = SymmetrizedStateSum::from_energies(vec![0.3]);
        let z = sum.canonical_partitions(1.0, 2, Statistics::Fermion);
        assert!(z[2].abs() < 1e-15);
    }

    #[test]
    fn empty_truncation_gives_unity() {
        let sum = SymmetrizedStateSum::ring_modes(2.0 * PI, 1.0, 1.0, 4);
        assert_eq!(sum.grand_partition(0.7, 1.0, 0, Statistics::Boson), 1.0);
    }

    #[test]
    fn permutation_route_equals_recursion() {
        let sum = SymmetrizedStateSum::ring_modes(2.0 * PI, 1.0, 1.0, 6);
        let beta = 0.45;
        for stat in [Statistics::Boson, Statistics::Fermion] {
            let z = sum.canonical_partitions(beta, 3, stat);
            for n in 0..=3 {
                let perm = sum.permutation_route_partition(beta, n, stat).unwrap();
                assert!(
                    (perm - z[n]).abs() < 1e-12 * z[n].abs().max(1.0),
                    "N={n}: {perm} vs {}",
                    z[n]
                );
            }
        }
    }

    #[test]
    fn explicit_mode_pair_sum_matches_recursion() {
        // Brute-force double sum over mode pairs for N=2.
        let energies = vec![0.0, 0.4, 1.1];
        let sum = SymmetrizedStateSum::from_energies(energies.clone());
        let beta = 0.8;
        let mut boson = 0.0;
        let mut fermion = 0.0;
        for (i, &ei) in energies.iter().enumerate() {
            for (j, &ej) in energies.iter().enumerate() {
                let w = (-beta * (ei + ej)).exp();
                if i == j {
                    boson += w; // doubly occupied mode: one state
                } else if i < j {
                    boson += w;
                    fermion += w;
                }
            }
        }
        let zb = sum.canonical_partitions(beta, 2, Statistics::Boson)[2];
        let zf = sum.canonical_partitions(beta, 2, Statistics::Fermion)[2];
        assert!((zb - boson).abs() < 1e-12);
        assert!((zf - fermion).abs() < 1e-12);
    }
}
