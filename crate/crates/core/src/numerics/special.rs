//! Special functions needed by the radial reductions.

use crate::scalar::Real;

/// Legendre function of the second kind `Q_l(z)` for `z > 1`, taking
/// `d = z − 1 > 0` so that the logarithmic behavior near `z = 1` keeps full
/// relative precision.
pub fn legendre_q<T: Real>(l: u32, d: T) -> T {
    let one = T::one();
    let two = one + one;
    let z = one + d;
    if z > T::from_f64_lossy(1.5) {
        return legendre_q_series(l, z);
    }
    let q0 = (two / d).ln_1p() / two;
    if l == 0 {
        return q0;
    }
    let mut prev = q0;
    let mut cur = z * q0 - one;
    for j in 1..l {
        let jt = T::from_u32(j).unwrap();
        let next = ((jt + jt + one) * z * cur - jt * prev) / (jt + one);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Q_l(z) = l!/((2l+1)!! z^{l+1}) · ₂F₁((l+1)/2, (l+2)/2; l+3/2; z⁻²)`.
fn legendre_q_series<T: Real>(l: u32, z: T) -> T {
    let one = T::one();
    let half = T::from_f64_lossy(0.5);
    let lt = T::from_u32(l).unwrap();
    // l!/(2l+1)!! = Π j/(2j+1)
    let mut lead = one;
    for j in 1..=l {
        let jt = T::from_u32(j).unwrap();
        lead = lead * jt / (jt + jt + one);
    }
    let inv_z2 = one / (z * z);
    let a = (lt + one) * half;
    let b = (lt + one + one) * half;
    let c = lt + T::from_f64_lossy(1.5);
    let mut term = one;
    let mut sum = one;
    for k in 0..1000u32 {
        let kt = T::from_u32(k).unwrap();
        term = term * (a + kt) * (b + kt) / ((c + kt) * (kt + one)) * inv_z2;
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    lead * sum / z.powi(l as i32 + 1)
}

/// Spherical Bessel function `j_l(x)` for `x ≥ 0`.
pub fn spherical_bessel_j<T: Real>(l: u32, x: T) -> T {
    let one = T::one();
    let lt = T::from_u32(l).unwrap();
    if x <= lt.max(T::from_f64_lossy(0.5)) {
        return spherical_bessel_series(l, x);
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (x * x) - c / x;
    for j in 1..l {
        let jt = T::from_u32(j).unwrap();
        let next = (jt + jt + one) / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `j_l(x) = x^l Σ_k (−x²/2)^k / (k! (2l+2k+1)!!)`.
fn spherical_bessel_series<T: Real>(l: u32, x: T) -> T {
    let one = T::one();
    let two = one + one;
    let mut lead = one;
    for j in 0..=l {
        lead = lead / T::from_u32(2 * j + 1).unwrap();
    }
    let y = -x * x / two;
    let mut term = one;
    let mut sum = one;
    for k in 1..200u32 {
        let kt = T::from_u32(k).unwrap();
        term = term * y / (kt * T::from_u32(2 * l + 2 * k + 1).unwrap());
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    lead * x.powi(l as i32) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_closed(l: u32, z: f64) -> f64 {
        let q0 = 0.5 * ((z + 1.0) / (z - 1.0)).ln();
        match l {
            0 => q0,
            1 => z * q0 - 1.0,
            2 => 0.5 * (3.0 * z * z - 1.0) * q0 - 1.5 * z,
            3 => 0.5 * (5.0 * z.powi(3) - 3.0 * z) * q0 - 2.5 * z * z + 2.0 / 3.0,
            _ => unreachable!(),
        }
    }

    #[test]
    fn q_matches_closed_forms() {
        for l in 0..=3 {
            for &z in &[1.001, 1.2, 1.49, 1.51, 1.9, 2.5] {
                let v = legendre_q(l, z - 1.0);
                let e = q_closed(l, z);
                assert!((v - e).abs() <= 1e-10 * e.abs(), "l={l} z={z}: {v} vs {e}");
            }
        }
        // Far field, where the closed forms cancel catastrophically.
        assert!((legendre_q(0, 999.0f64) - (1.0f64 / 1000.0).atanh()).abs() < 1e-18);
        let q3 = legendre_q(3, 99.0f64);
        assert!((q3 * 100f64.powi(4) - 6.0 / 105.0).abs() < 1e-4);
    }

    #[test]
    fn q_is_continuous_across_the_switch() {
        for l in 0..=6 {
            let below: f64 = legendre_q(l, 0.5 - 1e-12);
            let above: f64 = legendre_q(l, 0.5 + 1e-12);
            assert!((below - above).abs() <= 1e-9 * above.abs(), "l={l}: {below} vs {above}");
        }
    }

    #[test]
    fn bessel_values() {
        for &x in &[1e-3, 0.3, 1.0, 2.5, 7.0, 20.0] {
            let (s, c) = f64::sin_cos(x);
            let j0 = s / x;
            let j1 = s / (x * x) - c / x;
            let j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
            let tol = |v: f64| if x < 0.1 { 1e-9 } else { 1e-12 * v.abs().max(1e-3) };
            assert!((spherical_bessel_j(0, x) - j0).abs() <= tol(j0));
            if x > 0.1 {
                assert!((spherical_bessel_j(1, x) - j1).abs() <= tol(j1));
                assert!((spherical_bessel_j(2, x) - j2).abs() <= tol(j2), "x={x}");
            }
        }
        assert_eq!(spherical_bessel_j(0, 0.0f64), 1.0);
        assert_eq!(spherical_bessel_j(3, 0.0f64), 0.0);
        let x = 1e-3f64;
        let series = x * x / 15.0 * (1.0 - x * x / 14.0);
        assert!((spherical_bessel_j(2, x) - series).abs() < 1e-20);
    }
}
