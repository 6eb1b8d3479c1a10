//! Composite Simpson quadrature with a Richardson error estimate.

/// Panel count used for every closed-form integral in the crate.
pub const DEFAULT_PANELS: usize = 4096;

/// Absolute tolerance on the Richardson error estimate.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Composite Simpson rule over `[a, b]` with `panels` (rounded up to even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2) + panels % 2;
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let x = a + i as f64 * h;
        if i % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0
}

/// Simpson at `panels` and `panels/2`; the difference over 15 estimates the
/// error of the finer value. The fine and coarse rules share nodes, so the
/// integrand is evaluated once per node.
pub fn simpson_with_error<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
) -> QuadratureResult {
    let n = panels.max(4).next_multiple_of(4);
    let h = (b - a) / n as f64;
    let values: Vec<f64> = (0..=n).map(|i| f(a + i as f64 * h)).collect();
    let rule = |stride: usize| {
        let m = n / stride;
        let hs = h * stride as f64;
        let mut s = values[0] + values[n];
        for i in 1..m {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * values[i * stride];
        }
        s * hs / 3.0
    };
    let fine = rule(1);
    let coarse = rule(2);
    QuadratureResult {
        value: fine,
        error_estimate: (fine - coarse).abs() / 15.0,
    }
}
