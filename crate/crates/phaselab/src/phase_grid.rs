//! The coarse lattice of classical phase points, projection of arbitrary
//! wave functions onto it, and reconstruction from the coefficients.
//!
//! A lattice point (q_i, p_j) carries the packet `phi_{p q}` from
//! [`crate::packet`]. Projecting a wave function onto the lattice,
//! `c_{pq} = <phi_pq | psi>`, low-pass filters it: structure finer than the
//! packet width is lost, and what remains is a superposition of classical
//! phase points, `psi(r) ~ sum c_pq phi_pq(r)`.
//!
//! Projection and reconstruction are restricted to one coordinate
//! (`dims = 1`, `n_particles = 1`); packet-level operations support any
//! d*N. The lattice is enumerated row-major with the position index outer
//! and the momentum index inner.

use crate::grid::{KahanSum, PositionGrid};
use crate::packet::{WavePacket, NORM_GATE};
use crate::{Error, Result, C64};
use std::f64::consts::PI;

/// Lattice of classical phase points with spacings `dq`, `dp`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    dq: f64,
    dp: f64,
    xi: f64,
    hbar: f64,
    q_range: (f64, f64),
    p_range: (f64, f64),
    dims: usize,
    n_particles: usize,
}

impl PhaseGrid {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dq: f64,
        dp: f64,
        xi: f64,
        hbar: f64,
        q_range: (f64, f64),
        p_range: (f64, f64),
        dims: usize,
        n_particles: usize,
    ) -> Result<Self> {
        for (name, v) in [("dq", dq), ("dp", dp), ("xi", xi), ("hbar", hbar)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "spacing",
                    reason: format!("{name} must be positive and finite, got {v}"),
                });
            }
        }
        if q_range.1 < q_range.0 {
            return Err(Error::EmptyRange { axis: "position" });
        }
        if p_range.1 < p_range.0 {
            return Err(Error::EmptyRange { axis: "momentum" });
        }
        if dims == 0 || n_particles == 0 {
            return Err(Error::InvalidParameter {
                name: "dims/n_particles",
                reason: "must be at least 1".into(),
            });
        }
        Ok(Self {
            dq,
            dp,
            xi,
            hbar,
            q_range,
            p_range,
            dims,
            n_particles,
        })
    }

    /// Grid in the comfortably orthogonal regime: `dq = 10 xi`,
    /// `dp = 10 hbar/xi`, centered ranges.
    pub fn delta_regime(xi: f64, hbar: f64, n_q: usize, n_p: usize) -> Result<Self> {
        let dq = 10.0 * xi;
        let dp = 10.0 * hbar / xi;
        let q_half = dq * ((n_q - 1) as f64) / 2.0;
        let p_half = dp * ((n_p - 1) as f64) / 2.0;
        Self::new(
            dq,
            dp,
            xi,
            hbar,
            (-q_half, q_half),
            (-p_half, p_half),
            1,
            1,
        )
    }

    pub fn dq(&self) -> f64 {
        self.dq
    }

    pub fn dp(&self) -> f64 {
        self.dp
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn q_range(&self) -> (f64, f64) {
        self.q_range
    }

    pub fn p_range(&self) -> (f64, f64) {
        self.p_range
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    /// Lattice point count along the position axis.
    pub fn n_q(&self) -> usize {
        1 + ((self.q_range.1 - self.q_range.0) / self.dq + 1e-9).floor() as usize
    }

    /// Lattice point count along the momentum axis.
    pub fn n_p(&self) -> usize {
        1 + ((self.p_range.1 - self.p_range.0) / self.dp + 1e-9).floor() as usize
    }

    pub fn q_value(&self, i: usize) -> f64 {
        self.q_range.0 + i as f64 * self.dq
    }

    pub fn p_value(&self, j: usize) -> f64 {
        self.p_range.0 + j as f64 * self.dp
    }

    pub fn len(&self) -> usize {
        self.n_q() * self.n_p()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn require_one_coordinate(&self) -> Result<()> {
        if self.dims != 1 || self.n_particles != 1 {
            return Err(Error::Unsupported {
                required: "a one-coordinate lattice (dims = 1, n_particles = 1)",
                got: format!("dims = {}, n_particles = {}", self.dims, self.n_particles),
            });
        }
        Ok(())
    }

    /// Packet at lattice indices (iq, ip).
    pub fn packet_at(&self, iq: usize, ip: usize) -> Result<WavePacket> {
        self.require_one_coordinate()?;
        WavePacket::single(self.xi, self.hbar, self.p_value(ip), self.q_value(iq))
    }

    /// All lattice packets, row-major in (q, p): position outer, momentum
    /// inner. Deterministic order.
    pub fn enumerate_packets(&self) -> Result<Vec<WavePacket>> {
        self.require_one_coordinate()?;
        let mut out = Vec::with_capacity(self.len());
        for iq in 0..self.n_q() {
            for ip in 0..self.n_p() {
                out.push(self.packet_at(iq, ip)?);
            }
        }
        Ok(out)
    }

    /// Warnings when the spacings leave the locally-orthogonal regime
    /// (`dq >= 2 xi`, `dp >= hbar/xi`).
    pub fn resolution_warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.dq < 2.0 * self.xi {
            w.push(format!(
                "dq = {} is below 2 xi = {}; lattice packets overlap and the \
                 orthogonality regime (dq >> 2 xi) is lost",
                self.dq,
                2.0 * self.xi
            ));
        }
        if self.dp < self.hbar / self.xi {
            w.push(format!(
                "dp = {} is below hbar/xi = {}; lattice packets overlap in \
                 momentum and the orthogonality regime (dp >> hbar/xi) is lost",
                self.dp,
                self.hbar / self.xi
            ));
        }
        w
    }

    /// Largest off-diagonal Gram magnitude from the closed-form overlap:
    /// reached by nearest neighbors along one axis.
    pub fn nearest_neighbor_overlap(&self) -> f64 {
        let from_q = (-self.dq * self.dq / (8.0 * self.xi * self.xi)).exp();
        let from_p =
            (-self.dp * self.dp * self.xi * self.xi / (2.0 * self.hbar * self.hbar)).exp();
        let mut best: f64 = 0.0;
        if self.n_q() > 1 {
            best = best.max(from_q);
        }
        if self.n_p() > 1 {
            best = best.max(from_p);
        }
        best
    }
}

/// Complex amplitudes of a wave function sampled on a uniform position grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWaveFunction {
    grid: PositionGrid,
    samples: Vec<C64>,
}

impl GridWaveFunction {
    pub fn new(grid: PositionGrid, samples: Vec<C64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: samples.len(),
            });
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn<F: FnMut(f64) -> C64>(grid: PositionGrid, f: F) -> Self {
        let samples = grid.sample(f);
        Self { grid, samples }
    }

    /// Sample a one-coordinate packet.
    pub fn from_packet(packet: &WavePacket, grid: PositionGrid) -> Result<Self> {
        if packet.coord_count() != 1 {
            return Err(Error::Unsupported {
                required: "a one-coordinate packet",
                got: format!("{} coordinates", packet.coord_count()),
            });
        }
        Ok(Self::from_fn(grid, |x| packet.factor(0, x)))
    }

    /// Pointwise superposition `sum_k c_k phi_k` of one-coordinate packets.
    pub fn from_superposition(terms: &[(C64, WavePacket)], grid: PositionGrid) -> Result<Self> {
        let mut samples = vec![C64::new(0.0, 0.0); grid.len()];
        for (c, pk) in terms {
            if pk.coord_count() != 1 {
                return Err(Error::Unsupported {
                    required: "one-coordinate packets",
                    got: format!("{} coordinates", pk.coord_count()),
                });
            }
            for (i, x) in grid.points().enumerate() {
                samples[i] += c * pk.factor(0, x);
            }
        }
        Self::new(grid, samples)
    }

    pub fn grid(&self) -> &PositionGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn norm_sq(&self) -> f64 {
        self.grid.norm_sq(&self.samples)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit-norm copy.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::InvalidParameter {
                name: "wave function",
                reason: format!("cannot normalize: norm = {n}"),
            });
        }
        let samples = self.samples.iter().map(|z| z / n).collect();
        Ok(Self {
            grid: self.grid.clone(),
            samples,
        })
    }

    /// Quadrature inner product `<self|other>`; grids must match.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.grid != other.grid {
            return Err(Error::PacketMismatch(
                "wave functions live on different position grids".into(),
            ));
        }
        Ok(self.grid.inner(&self.samples, &other.samples))
    }

    /// `|<a|b>| / (||a|| ||b||)`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm() / (self.norm() * other.norm()))
    }

    /// `self * alpha + other * beta`, pointwise.
    pub fn linear_combination(&self, alpha: C64, other: &Self, beta: C64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::PacketMismatch(
                "wave functions live on different position grids".into(),
            ));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(Self {
            grid: self.grid.clone(),
            samples,
        })
    }

    pub fn scaled(&self, alpha: C64) -> Self {
        Self {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|z| alpha * z).collect(),
        }
    }
}

/// Projection coefficients `c_{pq} = <phi_pq|psi>` on a phase grid,
/// row-major in (q, p), remembering the position grid they came from.
#[derive(Debug, Clone)]
pub struct ProjectionCoefficients {
    phase_grid: PhaseGrid,
    position_grid: PositionGrid,
    coeffs: Vec<C64>,
}

impl ProjectionCoefficients {
    /// Assemble coefficients directly (mostly for tests and file import);
    /// the slice is row-major in (q, p).
    pub fn from_parts(
        phase_grid: PhaseGrid,
        position_grid: PositionGrid,
        coeffs: Vec<C64>,
    ) -> Result<Self> {
        if coeffs.len() != phase_grid.len() {
            return Err(Error::DimensionMismatch {
                expected: phase_grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            phase_grid,
            position_grid,
            coeffs,
        })
    }

    pub fn phase_grid(&self) -> &PhaseGrid {
        &self.phase_grid
    }

    pub fn position_grid(&self) -> &PositionGrid {
        &self.position_grid
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn get(&self, iq: usize, ip: usize) -> C64 {
        self.coeffs[iq * self.phase_grid.n_p() + ip]
    }

    /// Total projected weight `sum |c|^2`; bounded by the squared norm of
    /// the input in the locally orthogonal regime.
    pub fn sum_sq(&self) -> f64 {
        let mut acc = KahanSum::new();
        for c in &self.coeffs {
            acc.add(c.norm_sqr());
        }
        acc.value()
    }

    /// Indices and value of the largest-magnitude coefficient.
    pub fn dominant(&self) -> (usize, usize, C64) {
        let mut best = (0usize, 0usize, C64::new(0.0, 0.0));
        let mut best_mag = -1.0;
        for iq in 0..self.phase_grid.n_q() {
            for ip in 0..self.phase_grid.n_p() {
                let c = self.get(iq, ip);
                if c.norm() > best_mag {
                    best_mag = c.norm();
                    best = (iq, ip, c);
                }
            }
        }
        best
    }

    /// Pointwise sum `sum c_pq phi_pq(r)` on the stored position grid.
    pub fn reconstruct(&self) -> Result<GridWaveFunction> {
        let grid = self.position_grid.clone();
        let mut samples = vec![C64::new(0.0, 0.0); grid.len()];
        for iq in 0..self.phase_grid.n_q() {
            for ip in 0..self.phase_grid.n_p() {
                let c = self.get(iq, ip);
                if c.norm_sqr() == 0.0 {
                    continue;
                }
                let pk = self.phase_grid.packet_at(iq, ip)?;
                for (i, x) in grid.points().enumerate() {
                    samples[i] += c * pk.factor(0, x);
                }
            }
        }
        GridWaveFunction::new(grid, samples)
    }

    /// CSV-ready rows: (iq, ip, q, p, re, im).
    pub fn rows(&self) -> Vec<(usize, usize, f64, f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for iq in 0..self.phase_grid.n_q() {
            for ip in 0..self.phase_grid.n_p() {
                let c = self.get(iq, ip);
                out.push((
                    iq,
                    ip,
                    self.phase_grid.q_value(iq),
                    self.phase_grid.p_value(ip),
                    c.re,
                    c.im,
                ));
            }
        }
        out
    }
}

/// Verify that `psi`'s position grid is compliant for every lattice packet,
/// then compute all projection coefficients by quadrature.
pub fn project(psi: &GridWaveFunction, grid: &PhaseGrid) -> Result<ProjectionCoefficients> {
    let packets = grid.enumerate_packets()?;
    let g = psi.grid();
    // Fastest lattice oscillation must be resolved.
    let p_max = (0..grid.n_p())
        .map(|j| grid.p_value(j).abs())
        .fold(0.0f64, f64::max);
    if p_max > 0.0 {
        let wavelength = 2.0 * PI * grid.hbar() / p_max;
        if g.step() > wavelength / crate::packet::MIN_POINTS_PER_WAVELENGTH {
            return Err(Error::NonCompliantGrid(format!(
                "position grid step {:.3e} undersamples the lattice momentum \
                 wavelength {:.3e}",
                g.step(),
                wavelength
            )));
        }
    }
    let mut coeffs = Vec::with_capacity(packets.len());
    for pk in &packets {
        let samples = pk.sample_factor(0, g);
        let norm = g.norm_sq(&samples);
        if (norm - 1.0).abs() > NORM_GATE {
            return Err(Error::NonCompliantGrid(format!(
                "lattice packet at q = {}, p = {} has quadrature norm {norm:.8}; \
                 the position grid does not support it",
                pk.position()[0],
                pk.momentum()[0]
            )));
        }
        coeffs.push(g.inner(&samples, psi.samples()));
    }
    Ok(ProjectionCoefficients {
        phase_grid: grid.clone(),
        position_grid: g.clone(),
        coeffs,
    })
}

/// Position grid sized for projecting onto `grid`: spans the lattice
/// positions plus ten packet widths, with the step chosen for a relative
/// quadrature error target.
pub fn projection_position_grid(
    grid: &PhaseGrid,
    psi_p_max: f64,
    error_target: f64,
) -> Result<PositionGrid> {
    let p_lattice = grid
        .p_range()
        .0
        .abs()
        .max(grid.p_range().1.abs())
        .max(psi_p_max);
    let k_osc = 2.0 * p_lattice / grid.hbar() + 8.0 / grid.xi();
    let step = (180.0 * error_target).powf(0.25) / k_osc;
    PositionGrid::with_max_step(
        grid.q_range().0 - 10.0 * grid.xi(),
        grid.q_range().1 + 10.0 * grid.xi(),
        step.min(grid.xi() / 16.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packet::overlap_analytic;

    fn delta_grid() -> PhaseGrid {
        PhaseGrid::delta_regime(1.0, 1.0, 5, 3).unwrap()
    }

    #[test]
    fn single_point_lattice() {
        let g = PhaseGrid::new(1.0, 1.0, 0.1, 1.0, (0.0, 0.0), (0.0, 0.0), 1, 1).unwrap();
        let packets = g.enumerate_packets().unwrap();
        assert_eq!(packets.len(), 1);
        assert_eq!(packets[0].position(), &[0.0]);
        assert_eq!(packets[0].momentum(), &[0.0]);
    }

    #[test]
    fn lattice_counting_and_order() {
        let g = PhaseGrid::new(2.0, 1.5, 0.1, 1.0, (0.0, 8.0), (0.0, 4.5), 1, 1).unwrap();
        assert_eq!(g.n_q(), 5);
        assert_eq!(g.n_p(), 4);
        let packets = g.enumerate_packets().unwrap();
        assert_eq!(packets.len(), 20);
        // row-major: q outer, p inner
        assert_eq!(packets[0].position()[0], 0.0);
        assert_eq!(packets[1].momentum()[0], 1.5);
        assert_eq!(packets[1].position()[0], 0.0);
        assert_eq!(packets[4].position()[0], 2.0);
        for pk in &packets {
            assert_eq!(pk.xi(), 0.1);
            assert_eq!(pk.hbar(), 1.0);
        }
    }

    #[test]
    fn multi_coordinate_projection_is_rejected() {
        let g = PhaseGrid::new(1.0, 1.0, 0.1, 1.0, (0.0, 1.0), (0.0, 1.0), 2, 1).unwrap();
        assert!(matches!(
            g.enumerate_packets(),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn warnings_flag_overlapping_regime() {
        let fine = PhaseGrid::new(1.0, 0.5, 1.0, 1.0, (0.0, 5.0), (0.0, 2.0), 1, 1).unwrap();
        let w = fine.resolution_warnings();
        assert_eq!(w.len(), 2);
        assert!(w[0].contains("2 xi"));
        assert!(delta_grid().resolution_warnings().is_empty());
    }

    #[test]
    fn projecting_a_grid_packet_peaks_at_its_point() {
        let grid = delta_grid();
        let pos = projection_position_grid(&grid, 0.0, 1e-8).unwrap();
        let pk = grid.packet_at(2, 1).unwrap();
        let psi = GridWaveFunction::from_packet(&pk, pos).unwrap();
        let coeffs = project(&psi, &grid).unwrap();
        let (iq, ip, c) = coeffs.dominant();
        assert_eq!((iq, ip), (2, 1));
        assert!((c.norm() - 1.0).abs() < 1e-7);
        let nn = grid.nearest_neighbor_overlap();
        for jq in 0..grid.n_q() {
            for jp in 0..grid.n_p() {
                if (jq, jp) != (2, 1) {
                    assert!(coeffs.get(jq, jp).norm() <= nn * (1.0 + 1e-6));
                }
            }
        }
    }

    #[test]
    fn projecting_a_two_packet_superposition() {
        let grid = delta_grid();
        let pos = projection_position_grid(&grid, 0.0, 1e-8).unwrap();
        let a = grid.packet_at(0, 1).unwrap();
        let b = grid.packet_at(4, 1).unwrap();
        let w = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
        let psi = GridWaveFunction::from_superposition(&[(w, a), (w, b)], pos).unwrap();
        let coeffs = project(&psi, &grid).unwrap();
        assert!((coeffs.get(0, 1).norm() - w.re).abs() < 1e-6);
        assert!((coeffs.get(4, 1).norm() - w.re).abs() < 1e-6);
    }

    #[test]
    fn state_outside_the_classical_space_projects_to_noise() {
        let grid = delta_grid();
        let pos = projection_position_grid(&grid, 120.0, 1e-8).unwrap();
        // A packet a hundred times narrower, oscillating far above the
        // lattice momentum extent, centered between lattice sites.
        let alien = WavePacket::single(0.01, 1.0, 120.0, 5.0).unwrap();
        let psi = GridWaveFunction::from_fn(pos, |x| alien.factor(0, x));
        let coeffs = project(&psi, &grid).unwrap();
        assert!(coeffs.sum_sq() < 1e-4);
        let recon = coeffs.reconstruct().unwrap();
        assert!(recon.norm() < 0.02);
    }

    #[test]
    fn reconstruction_fidelity_single_packet() {
        let grid = delta_grid();
        let pos = projection_position_grid(&grid, 0.0, 1e-8).unwrap();
        let pk = grid.packet_at(1, 2).unwrap();
        let psi = GridWaveFunction::from_packet(&pk, pos).unwrap();
        let recon = project(&psi, &grid).unwrap().reconstruct().unwrap();
        assert!(psi.fidelity(&recon).unwrap() >= 1.0 - 1e-4);
    }

    #[test]
    fn zero_coefficients_reconstruct_to_zero() {
        let grid = delta_grid();
        let pos = projection_position_grid(&grid, 0.0, 1e-8).unwrap();
        let n = grid.len();
        let coeffs =
            ProjectionCoefficients::from_parts(grid, pos, vec![C64::new(0.0, 0.0); n]).unwrap();
        let psi = coeffs.reconstruct().unwrap();
        assert_eq!(psi.norm(), 0.0);
    }

    #[test]
    fn random_lattice_combination_round_trips() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let grid = PhaseGrid::delta_regime(1.0, 1.0, 7, 3).unwrap();
        let pos = projection_position_grid(&grid, 0.0, 1e-8).unwrap();
        let mut terms = Vec::new();
        for _ in 0..10 {
            let iq = rng.gen_range(0..grid.n_q());
            let ip = rng.gen_range(0..grid.n_p());
            let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            terms.push((c, grid.packet_at(iq, ip).unwrap()));
        }
        let psi = GridWaveFunction::from_superposition(&terms, pos)
            .unwrap()
            .normalized()
            .unwrap();
        let coeffs = project(&psi, &grid).unwrap();
        let recon = coeffs.reconstruct().unwrap();
        assert!(psi.fidelity(&recon).unwrap() >= 1.0 - 1e-3);
        // contraction: projection cannot create norm
        assert!(recon.norm() <= psi.norm() * (1.0 + 1e-6));
        // Bessel-type bound in the orthogonal regime
        assert!(coeffs.sum_sq() <= 1.0 + 1e-6);
    }

    #[test]
    fn projection_is_linear() {
        let grid = delta_grid();
        let pos = projection_position_grid(&grid, 0.0, 1e-8).unwrap();
        let psi1 =
            GridWaveFunction::from_packet(&grid.packet_at(1, 0).unwrap(), pos.clone()).unwrap();
        let psi2 = GridWaveFunction::from_packet(&grid.packet_at(3, 2).unwrap(), pos).unwrap();
        let (alpha, beta) = (C64::new(0.6, -0.3), C64::new(-0.2, 0.9));
        let combo = psi1.linear_combination(alpha, &psi2, beta).unwrap();
        let c1 = project(&psi1, &grid).unwrap();
        let c2 = project(&psi2, &grid).unwrap();
        let cc = project(&combo, &grid).unwrap();
        for i in 0..cc.coeffs().len() {
            let expect = alpha * c1.coeffs()[i] + beta * c2.coeffs()[i];
            assert!((cc.coeffs()[i] - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn coefficients_ignore_global_phase() {
        let grid = delta_grid();
        let pos = projection_position_grid(&grid, 0.0, 1e-8).unwrap();
        let psi = GridWaveFunction::from_packet(&grid.packet_at(2, 0).unwrap(), pos).unwrap();
        let rotated = psi.scaled(C64::from_polar(1.0, 1.234));
        let a = project(&psi, &grid).unwrap();
        let b = project(&rotated, &grid).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!((x.norm() - y.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_matrix_identity_deviation_in_delta_regime() {
        let grid = PhaseGrid::delta_regime(1.0, 1.0, 7, 3).unwrap();
        let packets = grid.enumerate_packets().unwrap();
        let mut max_off = 0.0f64;
        for (i, a) in packets.iter().enumerate() {
            for b in packets.iter().skip(i + 1) {
                max_off = max_off.max(overlap_analytic(a, b).unwrap().magnitude);
            }
        }
        assert!(max_off <= 5e-6, "max off-diagonal {max_off:.3e}");
        assert!((max_off - (-12.5f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn non_compliant_projection_grid_is_rejected() {
        let grid = delta_grid();
        // Far too narrow for the outer lattice packets.
        let pos = PositionGrid::new(-5.0, 5.0, 2001).unwrap();
        let pk = grid.packet_at(2, 1).unwrap();
        let psi = GridWaveFunction::from_packet(&pk, pos).unwrap();
        assert!(matches!(
            project(&psi, &grid),
            Err(Error::NonCompliantGrid(_))
        ));
    }
}
