//! Oscillatory kernels shared by the planar transforms.
//!
//! `sinpi`/`cospi` reduce their argument exactly to `[-1/2, 1/2]` before
//! the libm call, so `sin(pi n) = 0` holds bit-exactly at integers; the
//! unit-interval transform built on them is then exactly zero at nonzero
//! integer frequencies, which keeps the discrete zero sets of the triangle
//! and the square free of floating fuzz.

use num_complex::Complex64;

/// `sin(pi x)` with exact integer zeros.
pub fn sinpi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x.abs() >= 2f64.powi(53) {
        return 0.0; // every representable value this large is an even integer
    }
    let n = x.round();
    let r = x - n; // exact (Sterbenz)
    let s = (std::f64::consts::PI * r).sin();
    if (n as i64) & 1 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(pi x)` with exact signs matching `sinpi`'s reduction.
pub fn cospi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x.abs() >= 2f64.powi(53) {
        return 1.0;
    }
    let n = x.round();
    let r = x - n;
    let c = (std::f64::consts::PI * r).cos();
    if (n as i64) & 1 == 0 {
        c
    } else {
        -c
    }
}

/// `exp(-2 pi i w)` via the exact-reduction kernels.
pub fn phase(w: f64) -> Complex64 {
    Complex64::new(cospi(2.0 * w), -sinpi(2.0 * w))
}

/// Transform of the unit interval:
/// `E(u) = integral_0^1 exp(-2 pi i u x) dx = sinc(pi u) exp(-i pi u)`.
///
/// Exactly zero at nonzero integers, exactly 1 at 0.
pub fn unit_interval_ft(u: f64) -> Complex64 {
    if u == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let s = sinpi(u) / (std::f64::consts::PI * u);
    Complex64::new(cospi(u), -sinpi(u)) * s
}

/// k-th derivative of `D(z) = (e^z - 1)/z`, entire with `D^(k)(z) =
/// sum_j z^j / (j! (j+k+1))`. Series for small `|z|`, Leibniz closed form
/// `[e^z sum_{j<=k} (-1)^j k!/(k-j)! z^{k-j} + (-1)^{k+1} k!] / z^{k+1}`
/// otherwise.
pub fn d_derivative(k: u32, z: Complex64) -> Complex64 {
    if z.norm() <= 0.8 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0); // z^j / j!
        for j in 0..64u32 {
            sum += term / (j + k + 1) as f64;
            term = term * z / (j + 1) as f64;
            if term.norm() < 1e-22 {
                break;
            }
        }
        sum
    } else {
        let mut poly = Complex64::new(0.0, 0.0);
        let mut fall = 1.0f64; // k!/(k-j)!
        let mut sign = 1.0f64;
        for j in 0..=k {
            poly += sign * fall * z.powu(k - j);
            fall *= (k - j) as f64;
            sign = -sign;
        }
        let mut kfact = 1.0f64;
        for i in 2..=k {
            kfact *= i as f64;
        }
        let tail = if k % 2 == 0 { -kfact } else { kfact };
        (z.exp() * poly + tail) / z.powu(k + 1)
    }
}
