//! Minimal Clifford algebra arithmetic over `R_{0,m+1}`.
//!
//! Multivectors are sparse maps from basis-blade bitsets (subsets of
//! `{0, .., m}`) to double coefficients. The basis vectors anticommute and
//! square to `-1`. This backs pointwise potential evaluation and the
//! finite-difference Cauchy-Riemann checks; the exact symbolic layer never
//! needs multivectors.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("multivector dimensions differ: {0} vs {1}")]
    DimensionMismatch(u32, u32),
    #[error("blade index {0} out of range for dimension {1}")]
    BladeOutOfRange(u32, u32),
}

/// Element of `R_{0,m+1}` on the basis `e_0, .., e_m`.
///
/// `dim` counts the generators (`m + 1`); supported up to 13 generators.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: u32,
    terms: BTreeMap<u32, f64>,
}

/// Sign from reordering `e_A e_B` into canonical ascending order.
fn reorder_sign(mut a: u32, b: u32) -> f64 {
    a >>= 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Multivector {
    pub fn zero(dim: u32) -> Self {
        assert!(dim >= 1 && dim <= 13, "supported generator count is 1..=13");
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: u32, value: f64) -> Self {
        let mut mv = Multivector::zero(dim);
        mv.set(0, value);
        mv
    }

    /// The basis vector `e_j`, `0 <= j < dim`.
    pub fn basis_vector(dim: u32, j: u32) -> Self {
        assert!(j < dim);
        let mut mv = Multivector::zero(dim);
        mv.set(1 << j, 1.0);
        mv
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn coeff(&self, blade: u32) -> f64 {
        *self.terms.get(&blade).unwrap_or(&0.0)
    }

    pub fn set(&mut self, blade: u32, value: f64) {
        assert!(blade < (1 << self.dim), "blade outside the algebra");
        if value == 0.0 {
            self.terms.remove(&blade);
        } else {
            self.terms.insert(blade, value);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.terms.iter().map(|(&b, &c)| (b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Multivector::zero(self.dim);
        for (&b, &c) in &self.terms {
            out.set(b, c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.dim != other.dim {
            return Err(CliffordError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (&b, &c) in &other.terms {
            let v = out.coeff(b) + c;
            out.set(b, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CliffordError> {
        self.add(&other.scale(-1.0))
    }

    /// Geometric product under `e_i e_j + e_j e_i = -2 delta_{ij}`.
    pub fn geometric_product(&self, other: &Self) -> Result<Self, CliffordError> {
        if self.dim != other.dim {
            return Err(CliffordError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Multivector::zero(self.dim);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                let common = (a & b).count_ones();
                // each repeated generator contributes e_j^2 = -1
                let metric = if common % 2 == 0 { 1.0 } else { -1.0 };
                let sign = reorder_sign(a, b) * metric;
                let blade = a ^ b;
                let v = out.coeff(blade) + sign * ca * cb;
                out.set(blade, v);
            }
        }
        Ok(out)
    }

    /// Split `F = F_1 + conj(e_0) F_2` with `F_1, F_2` in the subalgebra
    /// generated by `e_1, .., e_m`.
    pub fn e0_split(&self) -> (Multivector, Multivector) {
        let mut real = Multivector::zero(self.dim);
        let mut imag = Multivector::zero(self.dim);
        for (&b, &c) in &self.terms {
            if b & 1 == 0 {
                real.set(b, c);
            } else {
                // e_A = e_0 e_{A'} and conj(e_0) = -e_0, so F_2 picks up -c
                imag.set(b & !1, -c);
            }
        }
        (real, imag)
    }

    /// Frobenius norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        match self.sub(other) {
            Ok(d) => d.norm() <= tol,
            Err(_) => false,
        }
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&b, &c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if b == 0 {
                write!(f, "{:.6}", c)?;
            } else {
                write!(f, "{:.6}·e", c)?;
                for j in 0..self.dim {
                    if b & (1 << j) != 0 {
                        write!(f, "{}", j)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `conj(e_0) X = -e_0 X`, the multiplication used to assemble `C_k` from
/// its conjugate harmonic parts.
pub fn e0_conj_mul(x: &Multivector) -> Multivector {
    let e0 = Multivector::basis_vector(x.dim(), 0);
    e0.geometric_product(x)
        .expect("same dimension by construction")
        .scale(-1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: u32, j: u32) -> Multivector {
        Multivector::basis_vector(dim, j)
    }

    #[test]
    fn generator_rules() {
        let d = 4;
        let e1 = e(d, 1);
        let e2 = e(d, 2);
        assert_eq!(
            e1.geometric_product(&e1).unwrap(),
            Multivector::scalar(d, -1.0)
        );
        let e12 = e1.geometric_product(&e2).unwrap();
        let e21 = e2.geometric_product(&e1).unwrap();
        assert_eq!(e12.coeff(0b110), 1.0);
        assert_eq!(e21.coeff(0b110), -1.0);
        assert!(e12.add(&e21).unwrap().is_zero());
    }

    #[test]
    fn vector_squares_to_negative_norm() {
        let d = 5;
        let mut rng = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            (rng >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..50 {
            let mut v = Multivector::zero(d);
            let mut norm2 = 0.0;
            for j in 0..d {
                let c = next();
                norm2 += c * c;
                v.set(1 << j, c);
            }
            let sq = v.geometric_product(&v).unwrap();
            assert!(
                sq.approx_eq(&Multivector::scalar(d, -norm2), 1e-12),
                "v^2 = -|v|^2 failed: {:?}",
                sq
            );
        }
    }

    #[test]
    fn product_is_associative() {
        let d = 4;
        let mut rng = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((rng >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for _ in 0..30 {
            let mut mvs = Vec::new();
            for _ in 0..3 {
                let mut x = Multivector::zero(d);
                for blade in 0..(1u32 << d) {
                    if next() > 0.2 {
                        x.set(blade, next());
                    }
                }
                mvs.push(x);
            }
            let (a, b, c) = (&mvs[0], &mvs[1], &mvs[2]);
            let lhs = a
                .geometric_product(b)
                .unwrap()
                .geometric_product(c)
                .unwrap();
            let rhs = a
                .geometric_product(&b.geometric_product(c).unwrap())
                .unwrap();
            assert!(lhs.approx_eq(&rhs, 1e-12));
        }
    }

    #[test]
    fn e0_split_round_trip() {
        let d = 4;
        // F = 3 - 2 e_0 e_1  splits into  F_1 = 3, F_2 = 2 e_1
        let mut f = Multivector::zero(d);
        f.set(0, 3.0);
        f.set(0b11, -2.0);
        let (f1, f2) = f.e0_split();
        assert_eq!(f1, Multivector::scalar(d, 3.0));
        assert_eq!(f2.coeff(0b10), 2.0);

        let e1 = e(d, 1);
        let (g1, g2) = e1.e0_split();
        assert_eq!(g1, e1);
        assert!(g2.is_zero());

        // random round trip: F_1 + conj(e_0) F_2 = F exactly
        let mut rng = 123456789u64;
        let mut next = move || {
            rng = rng.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((rng >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for _ in 0..20 {
            let mut x = Multivector::zero(d);
            for blade in 0..(1u32 << d) {
                x.set(blade, next());
            }
            let (x1, x2) = x.e0_split();
            let rebuilt = x1.add(&e0_conj_mul(&x2)).unwrap();
            assert_eq!(rebuilt, x, "split/reassemble must be exact");
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Multivector::scalar(3, 1.0);
        let b = Multivector::scalar(4, 1.0);
        assert!(matches!(
            a.geometric_product(&b),
            Err(CliffordError::DimensionMismatch(3, 4))
        ));
    }
}
