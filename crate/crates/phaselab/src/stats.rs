//! Small statistics helpers shared by the Monte Carlo modules, the test
//! suites, and the CLI.

/// Mean and standard error of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStderr {
    pub mean: f64,
    pub stderr: f64,
}

pub fn mean_stderr(samples: &[f64]) -> MeanStderr {
    let n = samples.len() as f64;
    if samples.is_empty() {
        return MeanStderr {
            mean: 0.0,
            stderr: 0.0,
        };
    }
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return MeanStderr { mean, stderr: 0.0 };
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    MeanStderr {
        mean,
        stderr: (var / n).sqrt(),
    }
}

/// Least-squares slope of log10(y) against log10(x).
///
/// Points with non-positive coordinates are rejected.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points for a slope");
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            assert!(x > 0.0 && y > 0.0, "log-log fit needs positive data");
            (x.log10(), y.log10())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
