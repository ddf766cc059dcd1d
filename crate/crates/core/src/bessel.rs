//! Spherical Bessel functions `j_n` and `y_n` on the positive real axis.
//!
//! `j_n` is computed by the downward (Miller) recurrence, the stable
//! direction once `n` exceeds `x`, normalized against the closed forms for
//! `j_0`/`j_1`. `y_n` is computed by the upward recurrence, which is stable
//! because `y_n` grows with order.

/// Overflow guard for the unnormalized downward recurrence.
const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;

/// `j_0(x) ..= j_nmax(x)` for `x > 0`.
pub fn spherical_jn(nmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0, "spherical_jn requires x > 0");
    let j0 = x.sin() / x;
    if nmax == 0 {
        return vec![j0];
    }
    let j1 = x.sin() / (x * x) - x.cos() / x;
    if nmax == 1 {
        return vec![j0, j1];
    }

    // Start the recurrence above both nmax and the turning point n ~ x —
    // below the turning point the sequence oscillates and the arbitrary seed
    // would not wash out. The cube-root term tracks the widening transition
    // region around the turning point; the constant adds decay margin.
    let pad = (4.0 * x.cbrt()).ceil() as usize + 16;
    let turning = x.min(1e6).ceil() as usize;
    let start = nmax.max(turning) + pad;
    let mut vals = vec![0.0_f64; nmax + 1];
    let mut above = 0.0_f64; // unnormalized j_{k+1}
    let mut current = 1e-250_f64; // unnormalized j_k, arbitrary tiny seed
    for k in (1..=start).rev() {
        let below = (2 * k + 1) as f64 / x * current - above;
        if k - 1 <= nmax {
            vals[k - 1] = below;
        }
        above = current;
        current = below;
        if current.abs() > RESCALE_THRESHOLD {
            above *= RESCALE_FACTOR;
            current *= RESCALE_FACTOR;
            if k - 1 <= nmax {
                for v in &mut vals[k - 1..] {
                    *v *= RESCALE_FACTOR;
                }
            }
        }
    }
    // Normalize against whichever closed form carries the larger unnormalized
    // magnitude, so a near-root of j_0 or j_1 never becomes the divisor.
    let scale = if vals[0].abs() >= vals[1].abs() {
        j0 / vals[0]
    } else {
        j1 / vals[1]
    };
    for v in &mut vals {
        *v *= scale;
    }
    vals
}

/// `y_0(x) ..= y_nmax(x)` for `x > 0`.
pub fn spherical_yn(nmax: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0, "spherical_yn requires x > 0");
    let y0 = -x.cos() / x;
    if nmax == 0 {
        return vec![y0];
    }
    let y1 = -x.cos() / (x * x) - x.sin() / x;
    let mut vals = Vec::with_capacity(nmax + 1);
    vals.push(y0);
    vals.push(y1);
    for n in 1..nmax {
        let next = (2 * n + 1) as f64 / x * vals[n] - vals[n - 1];
        vals.push(next);
    }
    vals
}
