use crate::error::{Error, Result};

/// Orthogonal polynomial families evaluated by three-term recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrthoFamily {
    /// Generalized Laguerre `L_n^{(α)}`, `α > −1`.
    Laguerre { alpha: f64 },
    /// Jacobi `P_n^{(a,b)}`, `a, b > −1`.
    Jacobi { a: f64, b: f64 },
    /// Physicists' Hermite `H_n`.
    Hermite,
}

pub fn orthopoly(family: OrthoFamily, n: usize, x: f64) -> Result<f64> {
    match family {
        OrthoFamily::Laguerre { alpha } => {
            if !(alpha > -1.0) {
                return Err(Error::Domain { what: "laguerre alpha", value: alpha });
            }
            Ok(laguerre(n, alpha, x))
        }
        OrthoFamily::Jacobi { a, b } => {
            if !(a > -1.0) {
                return Err(Error::Domain { what: "jacobi a", value: a });
            }
            if !(b > -1.0) {
                return Err(Error::Domain { what: "jacobi b", value: b });
            }
            Ok(jacobi(n, a, b, x))
        }
        OrthoFamily::Hermite => Ok(hermite(n, x)),
    }
}

fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn jacobi(n: usize, a: f64, b: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let c0 = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * s;
        let c1 = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b);
        let c2 = 2.0 * (kf + a) * (kf + b) * (s + 2.0);
        let next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
    }
    cur
}

fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        for fam in [OrthoFamily::Laguerre { alpha: 0.3 }, OrthoFamily::Jacobi { a: 0.5, b: 1.5 }, OrthoFamily::Hermite]
        {
            assert_eq!(orthopoly(fam, 0, 0.37).unwrap(), 1.0);
        }
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(orthopoly(OrthoFamily::Laguerre { alpha: 0.0 }, 1, 1.0).unwrap(), 0.0);
        assert_eq!(orthopoly(OrthoFamily::Laguerre { alpha: 2.0 }, 1, 0.5).unwrap(), 2.5);
        assert_eq!(orthopoly(OrthoFamily::Laguerre { alpha: 0.0 }, 2, 1.0).unwrap(), -0.5);
    }

    #[test]
    fn legendre_special_case() {
        // P_2^{(0,0)}(x) = (3x² − 1)/2
        let v = orthopoly(OrthoFamily::Jacobi { a: 0.0, b: 0.0 }, 2, 0.3).unwrap();
        assert!((v - 0.5 * (3.0 * 0.09 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn hermite_low_orders() {
        // H_3(x) = 8x³ − 12x
        let x = 0.7;
        let v = orthopoly(OrthoFamily::Hermite, 3, x).unwrap();
        assert!((v - (8.0 * x * x * x - 12.0 * x)).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(orthopoly(OrthoFamily::Laguerre { alpha: -1.0 }, 2, 0.0).is_err());
        assert!(orthopoly(OrthoFamily::Jacobi { a: 0.0, b: -1.5 }, 2, 0.0).is_err());
    }
}
