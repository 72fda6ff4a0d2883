//! Small numerical kernels shared by the subsolution and verification code.

use rand::Rng;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmax, max)`. The endpoints are also evaluated so that a
/// maximum sitting on the boundary is found exactly.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iter = 0;
    while (b - a).abs() > xtol && iter < 200 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iter += 1;
    }
    let mid = 0.5 * (a + b);
    [(mid, f(mid)), (lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .filter(|(_, v)| v.is_finite())
        .fold((mid, f64::NEG_INFINITY), |best, cand| if cand.1 > best.1 { cand } else { best })
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integrates a piecewise-smooth `f` over `[a, b]`, splitting at the given
/// kinks so each Simpson run sees a smooth integrand.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, kinks: &[f64], tol: f64) -> f64 {
    let mut pts: Vec<f64> = kinks.iter().copied().filter(|&k| k > a && k < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup();
    let pieces = (pts.len() - 1).max(1) as f64;
    pts.windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], tol / pieces))
        .sum()
}

/// The `n`-th point of the van der Corput sequence in base `base`.
fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut out = 0.0;
    let mut scale = inv;
    while n > 0 {
        out += (n % base) as f64 * scale;
        n /= base;
        scale *= inv;
    }
    out
}

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Halton points in the unit cube `[0,1)^dim` (dim ≤ 12).
pub fn halton(index: u64, dim: usize) -> Vec<f64> {
    assert!(dim <= PRIMES.len(), "halton sequence supports at most 12 dimensions");
    PRIMES[..dim].iter().map(|&p| radical_inverse(index + 1, p)).collect()
}

/// `count` quasi-random points of the ball `B(center, radius)`, by rejection
/// from the Halton sequence on the bounding cube.
pub fn halton_ball(center: &[f64], radius: f64, count: usize) -> Vec<Vec<f64>> {
    let dim = center.len();
    let mut out = Vec::with_capacity(count);
    let mut idx = 0u64;
    while out.len() < count {
        let p = halton(idx, dim);
        idx += 1;
        let y: Vec<f64> = p.iter().map(|v| 2.0 * v - 1.0).collect();
        if y.iter().map(|v| v * v).sum::<f64>() < 1.0 {
            out.push(center.iter().zip(&y).map(|(c, v)| c + radius * v).collect());
        }
    }
    out
}

/// A uniformly distributed random point of the ball `B(center, radius)`.
pub fn random_ball_point<R: Rng>(rng: &mut R, center: &[f64], radius: f64) -> Vec<f64> {
    loop {
        let y: Vec<f64> = center.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
        if y.iter().map(|v| v * v).sum::<f64>() < 1.0 {
            return center.iter().zip(&y).map(|(c, v)| c + radius * v).collect();
        }
    }
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Unweighted least-squares line `y = slope·x + intercept`; also returns the
/// root-mean-square residual.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - slope * a - intercept).powi(2))
        .sum();
    (slope, intercept, (rss / n).sqrt())
}
