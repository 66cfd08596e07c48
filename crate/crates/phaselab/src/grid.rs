//! Uniform 1D position grids, composite Simpson quadrature, and spectral
//! application of momentum powers.

use crate::{Error, Result, C64};
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Uniform grid of `len` points starting at `start` with spacing `step`.
///
/// `len` is kept odd so the point set carries composite Simpson weights.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionGrid {
    start: f64,
    step: f64,
    len: usize,
}

impl PositionGrid {
    /// Grid spanning `[start, end]` with at least `min_points` points
    /// (rounded up to the next odd count).
    pub fn new(start: f64, end: f64, min_points: usize) -> Result<Self> {
        if !(end > start) {
            return Err(Error::InvalidParameter {
                name: "end",
                reason: format!("grid span [{start}, {end}] is empty"),
            });
        }
        let mut len = min_points.max(3);
        if len % 2 == 0 {
            len += 1;
        }
        Ok(Self {
            start,
            step: (end - start) / (len - 1) as f64,
            len,
        })
    }

    /// Grid with a fixed step; the span is widened so the point count is odd.
    pub fn with_max_step(start: f64, end: f64, max_step: f64) -> Result<Self> {
        if max_step <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "max_step",
                reason: "must be positive".into(),
            });
        }
        let n = ((end - start) / max_step).ceil() as usize + 1;
        Self::new(start, end, n)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.start + self.step * (self.len - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |i| self.point(i))
    }

    /// Sample a function on the grid.
    pub fn sample<F: FnMut(f64) -> C64>(&self, mut f: F) -> Vec<C64> {
        self.points().map(&mut f).collect()
    }

    fn simpson_weight(&self, i: usize) -> f64 {
        let w = if i == 0 || i == self.len - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        w * self.step / 3.0
    }

    /// Composite Simpson quadrature of complex samples.
    pub fn integrate(&self, samples: &[C64]) -> C64 {
        debug_assert_eq!(samples.len(), self.len);
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        for (i, v) in samples.iter().enumerate() {
            let w = self.simpson_weight(i);
            re.add(w * v.re);
            im.add(w * v.im);
        }
        C64::new(re.value(), im.value())
    }

    /// Composite Simpson quadrature of real samples.
    pub fn integrate_real(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.len);
        let mut acc = KahanSum::new();
        for (i, v) in samples.iter().enumerate() {
            acc.add(self.simpson_weight(i) * v);
        }
        acc.value()
    }

    /// L2 inner product `<a|b> = ∫ conj(a) b dr` by Simpson quadrature.
    pub fn inner(&self, a: &[C64], b: &[C64]) -> C64 {
        debug_assert_eq!(a.len(), self.len);
        debug_assert_eq!(b.len(), self.len);
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        for i in 0..self.len {
            let w = self.simpson_weight(i);
            let v = a[i].conj() * b[i];
            re.add(w * v.re);
            im.add(w * v.im);
        }
        C64::new(re.value(), im.value())
    }

    /// Quadrature squared norm `∫ |f|^2 dr`.
    pub fn norm_sq(&self, samples: &[C64]) -> f64 {
        let mut acc = KahanSum::new();
        for (i, v) in samples.iter().enumerate() {
            acc.add(self.simpson_weight(i) * v.norm_sqr());
        }
        acc.value()
    }

    /// Apply `(hbar k)^power` in Fourier space: the spectral realization of
    /// the momentum operator raised to `power`.
    ///
    /// The samples are treated as one period of length `len * step`; callers
    /// must ensure the function has decayed at the grid edges.
    pub fn apply_momentum_power(&self, samples: &[C64], hbar: f64, power: u32) -> Vec<C64> {
        debug_assert_eq!(samples.len(), self.len);
        if power == 0 {
            return samples.to_vec();
        }
        let n = self.len;
        let mut planner = FftPlanner::<f64>::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let mut buf: Vec<C64> = samples.to_vec();
        fft.process(&mut buf);
        let period = n as f64 * self.step;
        for (m, v) in buf.iter_mut().enumerate() {
            let m_signed = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
            let k = 2.0 * PI * m_signed as f64 / period;
            *v *= (hbar * k).powi(power as i32);
        }
        ifft.process(&mut buf);
        let scale = 1.0 / n as f64;
        for v in &mut buf {
            *v *= scale;
        }
        buf
    }
}

/// Compensated (Kahan) accumulator for long sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: C64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}
