//! Exact zero testing for sums of roots of unity.
//!
//! A character sum over a subset is an integer combination `sum_m c_m z^m`
//! of powers of `z = exp(-2 pi i / L)`. Such a combination vanishes exactly
//! when the polynomial `sum c_m x^m` is divisible by the L-th cyclotomic
//! polynomial, the minimal polynomial of `z`. Dividing with integer
//! arithmetic therefore decides "is this sum exactly zero" with no floating
//! point at all. This backs the verification backend that re-tests zeros
//! flagged by the floating DFT on groups of small order.

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
///
/// Computed by the product formula `x^n - 1 = prod_{d | n} Phi_d(x)`:
/// divide `x^n - 1` by every `Phi_d` with `d < n`, `d | n`. All divisions
/// are exact over the integers because cyclotomic polynomials are monic.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i128> {
    assert!(n >= 1);
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            p = exact_div(&p, &phi_d);
        }
    }
    p
}

/// Quotient of `a / b` for monic `b`, asserting zero remainder.
fn exact_div(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    let dq = rem.len() - 1 - db;
    let mut quot = vec![0i128; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        quot[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] -= c * bj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "non-exact division");
    quot
}

/// Exact test of `sum_m counts[m] * exp(-2 pi i m / L) == 0`, where
/// `L = counts.len()`.
pub fn root_sum_is_zero(counts: &[i128]) -> bool {
    let l = counts.len();
    assert!(l >= 1);
    if l == 1 {
        return counts[0] == 0;
    }
    // Remainder of the count polynomial modulo Phi_L.
    let phi = cyclotomic_polynomial(l as u32);
    let dp = phi.len() - 1;
    let mut rem = counts.to_vec();
    for k in (dp..rem.len()).rev() {
        let c = rem[k];
        if c != 0 {
            rem[k] = 0;
            for (j, &pj) in phi.iter().take(dp).enumerate() {
                rem[k - dp + j] -= c * pj;
            }
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn full_orbit_sums_vanish() {
        // 1 + z + ... + z^{L-1} = 0 for every L > 1.
        for l in 2..=64usize {
            assert!(root_sum_is_zero(&vec![1i128; l]), "L = {l}");
        }
    }

    #[test]
    fn fourth_roots() {
        // 1 + z^2 = 1 + (-1) = 0 over L = 4.
        assert!(root_sum_is_zero(&[1, 0, 1, 0]));
        // 1 + z is not zero over L = 4.
        assert!(!root_sum_is_zero(&[1, 1, 0, 0]));
    }

    #[test]
    fn mixed_nonzero() {
        // 2 + z^3 over L = 6 is nonzero; 1 + z^3 = 1 - 1 = 0.
        assert!(!root_sum_is_zero(&[2, 0, 0, 1, 0, 0]));
        assert!(root_sum_is_zero(&[1, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn nontrivial_vanishing_combination() {
        // Over L = 12: z^2 - z^4 + ... use Phi_12 = x^4 - x^2 + 1 itself.
        let mut c = vec![0i128; 12];
        c[0] = 1;
        c[2] = -1;
        c[4] = 1;
        assert!(root_sum_is_zero(&c));
    }
}
