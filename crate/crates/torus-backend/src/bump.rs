//! The fixed smooth radial bump profile and the Schiffer-form samples.
//!
//! beta(s) = 1 for s <= r, 0 for s >= 2r, and the exponential smoothstep
//! S((2r-s)/r) in between, with S(t) = psi(t)/(psi(t)+psi(1-t)) and
//! psi(t) = exp(-1/t). The profile is C-infinity, so everything built from it
//! has super-algebraically converging Fourier coefficients; its sharpness is
//! what limits spectral accuracy downstream.

/// exp(-1/t) continued by zero.
fn psi(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

fn psi_prime(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp() / (t * t)
    }
}

/// The smoothstep S and its derivative.
fn smoothstep(t: f64) -> f64 {
    let a = psi(t);
    let b = psi(1.0 - t);
    a / (a + b)
}

fn smoothstep_prime(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    let a = psi(t);
    let b = psi(1.0 - t);
    let ap = psi_prime(t);
    let bp = psi_prime(1.0 - t);
    (ap * b + a * bp) / ((a + b) * (a + b))
}

fn psi_second(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp() * (1.0 - 2.0 * t) / (t * t * t * t)
    }
}

fn smoothstep_second(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    // S = A/(A+B), A = psi(t), B = psi(1-t), so B' = -psi'(1-t) and
    // B'' = +psi''(1-t). With P = A'B - AB' and Q = (A+B)^2:
    // S' = P/Q, P' = A''B - AB'' (the cross terms cancel),
    // S'' = P'/Q - 2 P (A'+B') / ((A+B) Q).
    let a = psi(t);
    let b = psi(1.0 - t);
    let ap = psi_prime(t);
    let bp = -psi_prime(1.0 - t);
    let app = psi_second(t);
    let bpp = psi_second(1.0 - t);
    let p = ap * b - a * bp;
    let pp = app * b - a * bpp;
    let q = (a + b) * (a + b);
    pp / q - 2.0 * p * (ap + bp) / ((a + b) * q)
}

/// The radial profile beta(s) for inner radius r.
pub fn bump(s: f64, r: f64) -> f64 {
    if s <= r {
        1.0
    } else if s >= 2.0 * r {
        0.0
    } else {
        smoothstep((2.0 * r - s) / r)
    }
}

/// d beta / d s.
pub fn bump_prime(s: f64, r: f64) -> f64 {
    if s <= r || s >= 2.0 * r {
        0.0
    } else {
        -smoothstep_prime((2.0 * r - s) / r) / r
    }
}

/// d^2 beta / d s^2.
pub fn bump_second(s: f64, r: f64) -> f64 {
    if s <= r || s >= 2.0 * r {
        0.0
    } else {
        smoothstep_second((2.0 * r - s) / r) / (r * r)
    }
}

/// The dzbar-coefficient of the Schiffer representative
/// -(1/(z-P)) dbar b: since dbar b = beta'(s) (z-P)/(2s) dzbar with
/// s = |z-P|, the 1/(z-P) cancels and the samples are the real radial
/// profile -beta'(s)/(2s), supported on the annulus r < s < 2r.
pub fn schiffer_weight(s: f64, r: f64) -> f64 {
    if s <= r || s >= 2.0 * r {
        0.0
    } else {
        -bump_prime(s, r) / (2.0 * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_shape() {
        let r = 0.1;
        assert_eq!(bump(0.05, r), 1.0);
        assert_eq!(bump(0.1, r), 1.0);
        assert_eq!(bump(0.2, r), 0.0);
        assert_eq!(bump(0.35, r), 0.0);
        let mid = bump(0.15, r);
        assert!(mid > 0.0 && mid < 1.0);
        // monotone decreasing on the annulus
        let mut prev = 1.0;
        for i in 0..=100 {
            let s = r + i as f64 * r / 100.0;
            let v = bump(s, r);
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let r = 0.12;
        let h = 1e-6;
        for s in [0.13, 0.15, 0.18, 0.2, 0.22] {
            let fd = (bump(s + h, r) - bump(s - h, r)) / (2.0 * h);
            assert!((bump_prime(s, r) - fd).abs() < 1e-5, "s = {s}");
            let fd2 = (bump_prime(s + h, r) - bump_prime(s - h, r)) / (2.0 * h);
            assert!(
                (bump_second(s, r) - fd2).abs() < 1e-4 * (1.0 + fd2.abs()),
                "s = {s}: {} vs {fd2}",
                bump_second(s, r)
            );
        }
    }

    #[test]
    fn schiffer_weight_supported_on_annulus() {
        let r = 0.1;
        assert_eq!(schiffer_weight(0.09, r), 0.0);
        assert_eq!(schiffer_weight(0.21, r), 0.0);
        assert!(schiffer_weight(0.15, r) != 0.0);
    }
}
