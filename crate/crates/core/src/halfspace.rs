//! Pointwise evaluation of the conjugate harmonic potentials in upper
//! half-space, with finite-difference monogenicity checks and numerical
//! boundary limits.
//!
//! Points are `x = x0 e_0 + (x_1, .., x_m)` with `x0 > 0`. The scalar
//! potentials `A_k` are radial in the tangential variable; the vector
//! potentials `B_k` point along it. `C_k = A_k/2 + conj(e_0) B_k/2` is
//! monogenic, and the generalized Cauchy-Riemann conjugate steps the chain:
//! `Dbar C_k = C_{k-1}`.

use crate::clifford::{e0_conj_mul, Multivector};
use crate::coeff::{gamma_half, sphere_area};
use crate::kernels::{boundary_value, BoundarySide, BoundaryValueId};
use crate::oracle::{pair_gaussian, TestFunction};
use crate::quad::{integrate, QuadError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HalfSpaceError {
    #[error("point must lie strictly in upper half-space (x0 > 0)")]
    NotInUpperHalfSpace,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("finite-difference step too large: {0}")]
    StepTooLarge(String),
    #[error("quadrature failure: {0}")]
    Quadrature(#[from] QuadError),
    #[error("test function must be Gaussian-class for boundary limits")]
    UnsupportedTestFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpacePoint {
    pub x0: f64,
    pub x_vec: Vec<f64>,
}

impl HalfSpacePoint {
    pub fn new(x0: f64, x_vec: Vec<f64>) -> Result<Self, HalfSpaceError> {
        if !(x0 > 0.0) {
            return Err(HalfSpaceError::NotInUpperHalfSpace);
        }
        Ok(HalfSpacePoint { x0, x_vec })
    }

    fn r(&self) -> f64 {
        self.x_vec.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn abs_x(&self) -> f64 {
        (self.x0 * self.x0 + self.r() * self.r()).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialFamily {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PotentialId {
    pub family: PotentialFamily,
    pub k: i32,
}

/// `F_n(v) = int_0^v eta^{n-1} (1+eta^2)^{-(n+1)/2} d eta`, by adaptive
/// quadrature; `v = +inf` returns the closed form
/// `(sqrt(pi)/2) Gamma(n/2) / Gamma((n+1)/2)`.
pub fn f_profile(n: u32, v: f64) -> Result<f64, HalfSpaceError> {
    assert!(n >= 1);
    if v == 0.0 {
        return Ok(0.0);
    }
    if v.is_infinite() {
        return Ok(f_profile_inf(n));
    }
    assert!(v > 0.0);
    let nf = n as f64;
    if v <= 1.0 {
        Ok(integrate(
            |e| e.powf(nf - 1.0) * (1.0 + e * e).powf(-(nf + 1.0) / 2.0),
            0.0,
            v,
            1e-12,
            1e-16,
        )?)
    } else {
        // tail after substituting eta -> 1/t: int_0^{1/v} (1+t^2)^{-(n+1)/2} dt
        let tail = integrate(
            |t| (1.0 + t * t).powf(-(nf + 1.0) / 2.0),
            0.0,
            1.0 / v,
            1e-12,
            1e-16,
        )?;
        Ok(f_profile_inf(n) - tail)
    }
}

/// `F_n(+inf)` in closed form.
pub fn f_profile_inf(n: u32) -> f64 {
    let num = gamma_half(n as i64).expect("n >= 1");
    let den = gamma_half(n as i64 + 1).expect("n >= 1");
    0.5 * std::f64::consts::PI.sqrt() * num.to_f64() / den.to_f64()
}

/// `F_n(v) / v^n`, stable for small `v` through the series
/// `1/n - (n+1) v^2 / (2(n+2)) + ...`.
fn f_over_vn(n: u32, v: f64) -> Result<f64, HalfSpaceError> {
    let nf = n as f64;
    if v < 0.5 {
        // binomial series of the integrand, integrated termwise
        let mut coeff = 1.0; // binomial coefficient of eta^{2k}
        let mut acc = 0.0;
        let mut k = 0u32;
        loop {
            let term = coeff * v.powi(2 * k as i32) / (nf + 2.0 * k as f64);
            acc += term;
            if term.abs() < 1e-17 * acc.abs().max(1e-30) {
                break;
            }
            coeff *= -(nf + 1.0 + 2.0 * k as f64) / (2.0 * (k as f64 + 1.0));
            k += 1;
            if k > 300 {
                break;
            }
        }
        Ok(acc)
    } else {
        Ok(f_profile(n, v)? / v.powi(n as i32))
    }
}

fn sigma(d: u32) -> f64 {
    sphere_area(d).to_f64()
}

fn guard_a(k: i32, m: u32) -> Result<(), HalfSpaceError> {
    if k < -3 || k > 2 {
        return Err(HalfSpaceError::OutOfRange(format!(
            "potential index {} outside the implemented window [-3, 2]",
            k
        )));
    }
    if (k as i64) + 1 >= m as i64 {
        return Err(HalfSpaceError::OutOfRange(format!(
            "A_{} requires k + 1 < m (here m = {})",
            k, m
        )));
    }
    Ok(())
}

fn guard_b(k: i32, m: u32) -> Result<(), HalfSpaceError> {
    if k < -3 || k > 2 {
        return Err(HalfSpaceError::OutOfRange(format!(
            "potential index {} outside the implemented window [-3, 2]",
            k
        )));
    }
    if k as i64 >= m as i64 {
        return Err(HalfSpaceError::OutOfRange(format!(
            "B_{} requires k < m (here m = {})",
            k, m
        )));
    }
    Ok(())
}

/// Radial profile of the scalar potential `A_k` at `(x0, r)`.
pub fn a_profile(k: i32, m: u32, x0: f64, r: f64) -> Result<f64, HalfSpaceError> {
    guard_a(k, m)?;
    let mf = m as f64;
    let s = sigma(m + 1);
    let ax2 = x0 * x0 + r * r;
    let ax = ax2.sqrt();
    Ok(match k {
        -1 => 2.0 / s * x0 / ax.powf(mf + 1.0),
        -2 => 2.0 / s * (ax.powf(-(mf + 1.0)) - (mf + 1.0) * x0 * x0 * ax.powf(-(mf + 3.0))),
        -3 => {
            2.0 / s
                * (mf + 1.0)
                * (-3.0 * x0 * ax.powf(-(mf + 3.0))
                    + (mf + 3.0) * x0.powi(3) * ax.powf(-(mf + 5.0)))
        }
        0 => -2.0 / ((mf - 1.0) * s) * ax.powf(-(mf - 1.0)),
        1 => 2.0 / ((mf - 1.0) * s) * x0.powf(2.0 - mf) * f_over_vn(m - 2, r / x0)?,
        2 => {
            2.0 / ((mf - 1.0) * s) * x0 * x0.powf(2.0 - mf) * f_over_vn(m - 2, r / x0)?
                - 2.0 / ((mf - 1.0) * (mf - 3.0) * s) * ax.powf(3.0 - mf)
        }
        _ => unreachable!("guarded"),
    })
}

/// Coefficient of the tangential vector in `B_k = b(x0, r) x`.
pub fn b_profile(k: i32, m: u32, x0: f64, r: f64) -> Result<f64, HalfSpaceError> {
    guard_b(k, m)?;
    let mf = m as f64;
    let s = sigma(m + 1);
    let ax2 = x0 * x0 + r * r;
    let ax = ax2.sqrt();
    Ok(match k {
        -1 => -2.0 / s * ax.powf(-(mf + 1.0)),
        -2 => 2.0 / s * (mf + 1.0) * x0 * ax.powf(-(mf + 3.0)),
        -3 => {
            2.0 / s
                * (mf + 1.0)
                * (ax.powf(-(mf + 3.0)) - (mf + 3.0) * x0 * x0 * ax.powf(-(mf + 5.0)))
        }
        0 => 2.0 / s * x0.powf(-mf) * f_over_vn(m, r / x0)?,
        1 => {
            2.0 / s * x0 * x0.powf(-mf) * f_over_vn(m, r / x0)?
                - 2.0 / ((mf - 1.0) * s) * ax.powf(-(mf - 1.0))
        }
        2 => {
            1.0 / s * ax2 * x0.powf(-mf) * f_over_vn(m, r / x0)?
                - (mf - 3.0) / (mf - 1.0) / s * x0.powf(-(mf - 2.0))
                    * f_over_vn(m - 2, r / x0)?
        }
        _ => unreachable!("guarded"),
    })
}

/// Evaluate a potential as a multivector in `R_{0,m+1}` (generators
/// `e_0, .., e_m`; the tangential components sit on `e_1, .., e_m`).
pub fn evaluate(id: PotentialId, p: &HalfSpacePoint, m: u32) -> Result<Multivector, HalfSpaceError> {
    if p.x_vec.len() != m as usize {
        return Err(HalfSpaceError::OutOfRange(format!(
            "point has {} tangential coordinates, expected {}",
            p.x_vec.len(),
            m
        )));
    }
    if !(p.x0 > 0.0) {
        return Err(HalfSpaceError::NotInUpperHalfSpace);
    }
    let dim = m + 1;
    let r = p.r();
    match id.family {
        PotentialFamily::A => {
            let v = a_profile(id.k, m, p.x0, r)?;
            Ok(Multivector::scalar(dim, v))
        }
        PotentialFamily::B => {
            let b = b_profile(id.k, m, p.x0, r)?;
            let mut mv = Multivector::zero(dim);
            for (i, &xi) in p.x_vec.iter().enumerate() {
                mv.set(1 << (i + 1), b * xi);
            }
            Ok(mv)
        }
        PotentialFamily::C => {
            let a = evaluate(
                PotentialId {
                    family: PotentialFamily::A,
                    k: id.k,
                },
                p,
                m,
            )?;
            let b = evaluate(
                PotentialId {
                    family: PotentialFamily::B,
                    k: id.k,
                },
                p,
                m,
            )?;
            Ok(a
                .scale(0.5)
                .add(&e0_conj_mul(&b).scale(0.5))
                .expect("same dimension"))
        }
    }
}

/// Apply one of the two Cauchy-Riemann operators to a multivector field by
/// central differences at step `h`: sign `+1` gives `D`, `-1` gives `Dbar`.
fn cauchy_riemann_fd_of<F>(
    field: &F,
    p: &HalfSpacePoint,
    m: u32,
    h: f64,
    sign: f64,
) -> Result<Multivector, HalfSpaceError>
where
    F: Fn(&HalfSpacePoint) -> Result<Multivector, HalfSpaceError>,
{
    let dim = m + 1;
    let shifted = |dx0: f64, i: Option<usize>, di: f64| -> Result<Multivector, HalfSpaceError> {
        let mut q = p.clone();
        q.x0 += dx0;
        if let Some(i) = i {
            q.x_vec[i] += di;
        }
        field(&q)
    };
    // d/dx0
    let dx0 = shifted(h, None, 0.0)?
        .sub(&shifted(-h, None, 0.0)?)
        .expect("same dimension")
        .scale(0.5 / h);
    // Dirac part: sum_i e_i dF/dx_i
    let mut dirac = Multivector::zero(dim);
    for i in 0..m as usize {
        let der = shifted(0.0, Some(i), h)?
            .sub(&shifted(0.0, Some(i), -h)?)
            .expect("same dimension")
            .scale(0.5 / h);
        let e_i = Multivector::basis_vector(dim, (i + 1) as u32);
        dirac = dirac
            .add(&e_i.geometric_product(&der).expect("same dimension"))
            .expect("same dimension");
    }
    Ok(dx0
        .add(&e0_conj_mul(&dirac).scale(sign))
        .expect("same dimension")
        .scale(0.5))
}

fn step_guard(p: &HalfSpacePoint, h: f64) -> Result<(), HalfSpaceError> {
    if p.x0 <= 3.0 * h || p.abs_x() <= 3.0 * h {
        return Err(HalfSpaceError::StepTooLarge(format!(
            "step {} too large at distance {} from the boundary",
            h,
            p.x0.min(p.abs_x())
        )));
    }
    Ok(())
}

/// Norm of `D C_k` at the point, by plain second-order central differences.
/// The exact value is zero, so the returned magnitude is pure
/// discretization error and decays like `h^2`.
pub fn monogenicity_residual(
    id: PotentialId,
    p: &HalfSpacePoint,
    m: u32,
    h: f64,
) -> Result<f64, HalfSpaceError> {
    step_guard(p, h)?;
    let field = |q: &HalfSpacePoint| evaluate(id, q, m);
    Ok(cauchy_riemann_fd_of(&field, p, m, h, 1.0)?.norm())
}

fn dbar_richardson<F>(
    field: &F,
    p: &HalfSpacePoint,
    m: u32,
    h: f64,
) -> Result<Multivector, HalfSpaceError>
where
    F: Fn(&HalfSpacePoint) -> Result<Multivector, HalfSpaceError>,
{
    let coarse = cauchy_riemann_fd_of(field, p, m, h, -1.0)?;
    let fine = cauchy_riemann_fd_of(field, p, m, h / 2.0, -1.0)?;
    Ok(fine
        .scale(4.0 / 3.0)
        .sub(&coarse.scale(1.0 / 3.0))
        .expect("same dimension"))
}

/// `Dbar` applied to a potential, Richardson-extrapolated central
/// differences (errors `O(h^4)`).
pub fn dbar_apply(
    id: PotentialId,
    p: &HalfSpacePoint,
    m: u32,
    h: f64,
) -> Result<Multivector, HalfSpaceError> {
    step_guard(p, h)?;
    let field = |q: &HalfSpacePoint| evaluate(id, q, m);
    dbar_richardson(&field, p, m, h)
}

/// `Dbar` applied to `conj(e_0)` times a potential (the conjugate-pair
/// member `conj(e_0) B_k`); the constant factor anticommutes with the
/// Dirac part, so it cannot be pulled out of the operator.
pub fn dbar_apply_e0_conj(
    id: PotentialId,
    p: &HalfSpacePoint,
    m: u32,
    h: f64,
) -> Result<Multivector, HalfSpaceError> {
    step_guard(p, h)?;
    let field = |q: &HalfSpacePoint| evaluate(id, q, m).map(|mv| e0_conj_mul(&mv));
    dbar_richardson(&field, p, m, h)
}

/// `int_{R^m} A_{-1}(x0, .) = 1` for every height: the Poisson kernel mass.
pub fn poisson_mass(m: u32, x0: f64) -> Result<f64, HalfSpaceError> {
    let sm = sigma(m);
    let mf = m as f64;
    let f = |r: f64| a_profile(-1, m, x0, r).unwrap_or(f64::NAN) * r.powf(mf - 1.0);
    // resolve the kernel scale near the origin separately
    let split = (32.0 * x0).min(12.0);
    let head = integrate(f, 0.0, split, 1e-11, 1e-14)?;
    let tail = crate::quad::integrate_to_infinity(f, split, 1e-11, 1e-14)?;
    Ok(sm * (head + tail))
}

/// Gaussian pairing of a potential at fixed height: the radial reduction of
/// `<A_k(x0, .), exp(-r^2)>` or of the directed pairing for the `B` family.
pub fn pairing_at_height(
    side: BoundarySide,
    k: i32,
    m: u32,
    x0: f64,
) -> Result<f64, HalfSpaceError> {
    let sm = sigma(m);
    let mf = m as f64;
    let integrand: Box<dyn Fn(f64) -> f64> = match side {
        BoundarySide::A => Box::new(move |r: f64| {
            a_profile(k, m, x0, r).unwrap_or(f64::NAN) * (-r * r).exp() * r.powf(mf - 1.0)
        }),
        BoundarySide::B => Box::new(move |r: f64| {
            b_profile(k, m, x0, r).unwrap_or(f64::NAN) * (-r * r).exp() * r.powf(mf + 1.0)
        }),
    };
    let norm = match side {
        BoundarySide::A => sm,
        BoundarySide::B => sm / mf,
    };
    let split = (32.0 * x0).min(10.0);
    let head = integrate(&integrand, 0.0, split, 1e-11, 1e-14)?;
    let tail = integrate(&integrand, split, 12.0, 1e-11, 1e-14)?;
    Ok(norm * (head + tail))
}

#[derive(Debug, Clone)]
pub struct BoundaryLimitReport {
    pub side: BoundarySide,
    pub k: i32,
    pub dim: u32,
    pub heights: Vec<f64>,
    pub values: Vec<f64>,
    pub extrapolated: f64,
    pub symbolic: f64,
    pub error: f64,
    pub fitted_order: f64,
}

/// Richardson extrapolation on a geometrically refined sequence with a
/// fitted convergence order per sweep.
fn extrapolate_limit(values: &[f64]) -> (f64, f64) {
    let mut v = values.to_vec();
    let mut first_order = f64::NAN;
    for sweep in 0..3 {
        if v.len() < 3 {
            break;
        }
        let mut orders = Vec::new();
        for w in v.windows(3) {
            let d0 = w[1] - w[0];
            let d1 = w[2] - w[1];
            if d1 != 0.0 && (d0 / d1) > 1.0 {
                orders.push((d0 / d1).log2());
            }
        }
        if orders.is_empty() {
            break;
        }
        orders.sort_by(f64::total_cmp);
        let p = orders[orders.len() / 2];
        if sweep == 0 {
            first_order = p;
        }
        let factor = 2f64.powf(p);
        v = v
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
    }
    (*v.last().expect("nonempty sequence"), first_order)
}

/// Boundary-limit test: pair the potential against the Gaussian at a
/// decreasing sequence of heights and extrapolate to `x0 -> 0+`, comparing
/// with the Gaussian pairing of the symbolic boundary value.
pub fn boundary_limit_test(
    side: BoundarySide,
    k: i32,
    m: u32,
    tf: &TestFunction,
    heights: &[f64],
) -> Result<BoundaryLimitReport, HalfSpaceError> {
    match tf {
        TestFunction::Gaussian => {}
        _ => return Err(HalfSpaceError::UnsupportedTestFunction),
    }
    let mut values = Vec::with_capacity(heights.len());
    for &x0 in heights {
        values.push(pairing_at_height(side, k, m, x0)?);
    }
    let (extrapolated, fitted_order) = extrapolate_limit(&values);
    let bv = boundary_value(
        BoundaryValueId {
            side,
            k: k as i64,
        },
        m,
    )
    .map_err(|e| HalfSpaceError::OutOfRange(e.to_string()))?;
    let pairing = pair_gaussian(&bv);
    let symbolic = match side {
        BoundarySide::A => pairing.scalar.re,
        BoundarySide::B => pairing.vector[0].re,
    };
    Ok(BoundaryLimitReport {
        side,
        k,
        dim: m,
        heights: heights.to_vec(),
        values,
        extrapolated,
        symbolic,
        error: (extrapolated - symbolic).abs(),
        fitted_order,
    })
}

/// Standard geometric height sequence `2^{-j}` for the limit tests.
pub fn geometric_heights(j_lo: u32, j_hi: u32) -> Vec<f64> {
    (j_lo..=j_hi).map(|j| 2f64.powi(-(j as i32))).collect()
}
