//! The four convolution-operator families, their kernels and fundamental
//! solutions, the boundary-value chains, and the logarithmic-coefficient
//! recurrences.
//!
//! Families (parameter `mu` integer, `beta` half-integer on the exact grid):
//!
//! * `DiracPow`       — powers of the Dirac operator, kernel `d^mu delta`
//! * `HilbertDirac`   — the Hilbert-composed powers, kernel `d^mu H`
//! * `LaplacePow`     — powers of the Laplacian, kernel `(-L)^beta delta`
//! * `LaplaceHilbert` — its Hilbert companion, kernel `(-L)^beta H`
//!
//! Each family is undefined by its closed formula on one arithmetic
//! progression of parameters (depending on the parity of the dimension);
//! there the kernel is extended by the logarithmic fundamental solutions
//! `(p_n ln r + q_n) T*/U*` whose coefficients satisfy the recurrences in
//! [`pq_table`]. The fundamental solution of every operator is the kernel of
//! the opposite parameter.

pub mod identities;

use crate::coeff::{gamma_complex, gamma_half, ExactScalar, NumericScalar, Scalar};
use crate::dist::{Degree, DistError, DistExpr};
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("parameter must be an integer for this family: {0}")]
    NonIntegerParam(String),
    #[error("operator undefined: {0}")]
    UndefinedOperator(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// Half-integer stored as its double, so `value = twice / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn halves(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn as_int(self) -> Option<i64> {
        if self.twice % 2 == 0 {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn neg(self) -> Self {
        HalfInt { twice: -self.twice }
    }

    pub fn add(self, other: Self) -> Self {
        HalfInt {
            twice: self.twice + other.twice,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Exact(HalfInt),
    Numeric(Complex64),
}

impl Param {
    pub fn int(n: i64) -> Self {
        Param::Exact(HalfInt::from_int(n))
    }

    pub fn halves(twice: i64) -> Self {
        Param::Exact(HalfInt::halves(twice))
    }

    pub fn neg(self) -> Self {
        match self {
            Param::Exact(h) => Param::Exact(h.neg()),
            Param::Numeric(z) => Param::Numeric(-z),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Exact(h) => write!(f, "{}", h),
            Param::Numeric(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Param::Numeric(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorFamily {
    DiracPow,
    HilbertDirac,
    LaplacePow,
    LaplaceHilbert,
}

impl OperatorFamily {
    pub fn label(self) -> &'static str {
        match self {
            OperatorFamily::DiracPow => "dirac",
            OperatorFamily::HilbertDirac => "hilbert-dirac",
            OperatorFamily::LaplacePow => "laplace",
            OperatorFamily::LaplaceHilbert => "laplace-hilbert",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorId {
    pub family: OperatorFamily,
    pub param: Param,
}

impl OperatorId {
    pub fn new(family: OperatorFamily, param: Param) -> Self {
        OperatorId { family, param }
    }

    pub fn negated(self) -> Self {
        OperatorId {
            family: self.family,
            param: self.param.neg(),
        }
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{{{}}}", self.family.label(), self.param)
    }
}

/// Is this exact parameter in the family's extended (logarithmic) set?
///
/// * Dirac powers: `mu <= -m` when `m` is even;
/// * Hilbert-Dirac powers: `mu <= -m` when `m` is odd;
/// * Laplace powers: `2 beta <= -m` with `2 beta = m (mod 2)`;
/// * Laplace-Hilbert powers: `2 beta <= -(m+1)` with `2 beta = m+1 (mod 2)`.
pub fn is_extended_param(family: OperatorFamily, param: HalfInt, m: u32) -> bool {
    let mi = m as i64;
    match family {
        OperatorFamily::DiracPow => match param.as_int() {
            Some(mu) => m % 2 == 0 && mu <= -mi,
            None => false,
        },
        OperatorFamily::HilbertDirac => match param.as_int() {
            Some(mu) => m % 2 == 1 && mu <= -mi,
            None => false,
        },
        OperatorFamily::LaplacePow => {
            param.twice <= -mi && (param.twice - mi).rem_euclid(2) == 0
        }
        OperatorFamily::LaplaceHilbert => {
            param.twice <= -(mi + 1) && (param.twice - (mi + 1)).rem_euclid(2) == 0
        }
    }
}

/// Table of the logarithmic-kernel coefficients `p_n`, `q_n`.
///
/// Starting values `p_0 = -1/(2^{m-1} pi^m)`, `q_0 = 0`, then alternating
///
/// ```text
///   p_{2j+1} = -p_{2j}/(2 pi)          q_{2j+1} = -(q_{2j} - p_{2j}/(m+2j))/(2 pi)
///   p_{2j+2} = p_{2j+1}/(2j+2)         q_{2j+2} = (q_{2j+1} - p_{2j+1}/(2j+2))/(2j+2)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct PQTable {
    pub m: u32,
    pub p: Vec<ExactScalar>,
    pub q: Vec<ExactScalar>,
}

pub fn pq_table(m: u32, n_max: usize) -> PQTable {
    let mi = m as i64;
    let mut p = Vec::with_capacity(n_max + 1);
    let mut q = Vec::with_capacity(n_max + 1);
    p.push(
        ExactScalar::two_pow(-(mi - 1))
            .neg()
            .mul(&ExactScalar::with_pi(1, 1, -2 * mi)),
    );
    q.push(ExactScalar::zero());
    let minus_inv_two_pi = ExactScalar::with_pi(-1, 2, -2);
    for n in 1..=n_max {
        let pp = p[n - 1].clone();
        let pq = q[n - 1].clone();
        if n % 2 == 1 {
            let j2 = (n - 1) as i64; // n = 2j+1
            p.push(pp.mul(&minus_inv_two_pi));
            let inner = pq
                .sub(&pp.div_int(mi + j2))
                .expect("p and q share the same pi power");
            q.push(inner.mul(&minus_inv_two_pi));
        } else {
            let n_i = n as i64; // n = 2j+2
            p.push(pp.div_int(n_i));
            let inner = pq
                .sub(&pp.div_int(n_i))
                .expect("p and q share the same pi power");
            q.push(inner.div_int(n_i));
        }
    }
    PQTable { m, p, q }
}

/// The logarithmic fundamental solution at level `m + n`:
/// `(p_n ln r + q_n) T*_n` for even `n`, `(p_n ln r + q_n) U*_n` for odd `n`.
///
/// In even dimensions these extend the Dirac-power line; in odd dimensions
/// the Hilbert-Dirac line. The shape and coefficients are identical.
pub fn log_fundamental(m: u32, n: usize) -> DistExpr {
    let table = pq_table(m, n);
    let p = Scalar::Exact(table.p[n].clone());
    let q = Scalar::Exact(table.q[n].clone());
    if n % 2 == 0 {
        DistExpr::log_tstar(m, n as i64, p, q).expect("even level has T-log shape")
    } else {
        DistExpr::log_ustar(m, n as i64, p, q).expect("odd level has U-log shape")
    }
}

fn exact_coeff(two_pow: i64, gamma_num: i64, pi_den_half: i64, negate: bool) -> ExactScalar {
    let g = gamma_half(gamma_num).expect("guarded by the caller");
    let c = ExactScalar::two_pow(two_pow)
        .mul(&g)
        .mul(&ExactScalar::with_pi(1, 1, -pi_den_half));
    if negate {
        c.neg()
    } else {
        c
    }
}

fn exact_kernel(family: OperatorFamily, param: HalfInt, m: u32) -> Result<DistExpr, KernelError> {
    let mi = m as i64;
    if is_extended_param(family, param, m) {
        // the logarithmic level above the regular grid: the kernel at this
        // parameter is the fundamental solution of the opposite power
        let level = match family {
            OperatorFamily::DiracPow | OperatorFamily::HilbertDirac => {
                (-param.as_int().unwrap() - mi) as usize
            }
            OperatorFamily::LaplacePow | OperatorFamily::LaplaceHilbert => {
                (-param.twice - mi) as usize
            }
        };
        return Ok(log_fundamental(m, level));
    }
    match family {
        OperatorFamily::DiracPow | OperatorFamily::HilbertDirac => {
            let mu = param.as_int().ok_or_else(|| {
                KernelError::NonIntegerParam(format!(
                    "{} takes integer exponents on the exact grid, got {}",
                    family.label(),
                    param
                ))
            })?;
            // parity of mu picks the active branch; the Hilbert companion
            // swaps the branches relative to the delta kernel
            let t_branch = match family {
                OperatorFamily::DiracPow => mu % 2 == 0,
                _ => mu.rem_euclid(2) == 1,
            };
            let expr = if t_branch {
                let c = exact_coeff(mu, mi + mu, mi - mu, false);
                DistExpr::tstar(m, Degree::Exact(-mi - mu)).scale(&Scalar::Exact(c))
            } else {
                let c = exact_coeff(mu, mi + mu + 1, mi - mu + 1, true);
                DistExpr::ustar(m, Degree::Exact(-mi - mu)).scale(&Scalar::Exact(c))
            };
            Ok(expr)
        }
        OperatorFamily::LaplacePow => {
            let tb = param.twice; // 2 beta
            let c = exact_coeff(tb, mi + tb, mi - tb, false);
            Ok(DistExpr::tstar(m, Degree::Exact(-mi - tb)).scale(&Scalar::Exact(c)))
        }
        OperatorFamily::LaplaceHilbert => {
            let tb = param.twice;
            let c = exact_coeff(tb, mi + tb + 1, mi - tb + 1, true);
            Ok(DistExpr::ustar(m, Degree::Exact(-mi - tb)).scale(&Scalar::Exact(c)))
        }
    }
}

fn numeric_prefactors(mu: Complex64) -> (Complex64, Complex64) {
    let e = (Complex64::i() * std::f64::consts::PI * mu).exp();
    ((1.0 + e) / 2.0, (1.0 - e) / 2.0)
}

fn numeric_kernel(
    family: OperatorFamily,
    z: Complex64,
    m: u32,
) -> Result<DistExpr, KernelError> {
    let mi = m as f64;
    let pi = std::f64::consts::PI;
    let pi_pow = |h: Complex64| (h * pi.ln()).exp();
    let two_pow = |h: Complex64| (h * 2f64.ln()).exp();
    let mut atoms: Vec<(bool, Complex64)> = Vec::new(); // (is_t, coeff)
    let mut push_branch = |is_t: bool,
                           prefactor: Complex64,
                           gamma_arg: Complex64,
                           two_exp: Complex64,
                           pi_den: Complex64,
                           negate: bool|
     -> Result<(), KernelError> {
        let g = gamma_complex(gamma_arg);
        if g.is_pole {
            if prefactor.norm() <= 1e-12 {
                return Ok(()); // the vanishing prefactor kills this branch
            }
            return Err(KernelError::UndefinedOperator(format!(
                "Gamma({}) pole with nonvanishing branch prefactor",
                gamma_arg
            )));
        }
        let mut c = prefactor * two_pow(two_exp) * g.to_complex() / pi_pow(pi_den / 2.0);
        if negate {
            c = -c;
        }
        if c.norm() > 0.0 {
            atoms.push((is_t, c));
        }
        Ok(())
    };
    match family {
        OperatorFamily::DiracPow | OperatorFamily::HilbertDirac => {
            let (plus, minus) = numeric_prefactors(z);
            let (t_pref, u_pref) = if family == OperatorFamily::DiracPow {
                (plus, minus)
            } else {
                (minus, plus)
            };
            push_branch(true, t_pref, (z + mi) / 2.0, z, Complex64::new(mi, 0.0) - z, false)?;
            push_branch(
                false,
                u_pref,
                (z + mi + 1.0) / 2.0,
                z,
                Complex64::new(mi + 1.0, 0.0) - z,
                true,
            )?;
        }
        OperatorFamily::LaplacePow => {
            push_branch(
                true,
                Complex64::new(1.0, 0.0),
                (2.0 * z + mi) / 2.0,
                2.0 * z,
                Complex64::new(mi, 0.0) - 2.0 * z,
                false,
            )?;
        }
        OperatorFamily::LaplaceHilbert => {
            push_branch(
                false,
                Complex64::new(1.0, 0.0),
                (2.0 * z + mi + 1.0) / 2.0,
                2.0 * z,
                Complex64::new(mi + 1.0, 0.0) - 2.0 * z,
                true,
            )?;
        }
    }
    let shift = match family {
        OperatorFamily::DiracPow | OperatorFamily::HilbertDirac => z,
        _ => 2.0 * z,
    };
    let degree = Degree::Numeric(-Complex64::new(mi, 0.0) - shift);
    let mut out = DistExpr::zero(m);
    for (is_t, c) in atoms {
        let unit = if is_t {
            DistExpr::tstar(m, degree)
        } else {
            DistExpr::ustar(m, degree)
        };
        out = out
            .add(&unit.scale(&Scalar::Numeric(NumericScalar::from_complex(c))))
            .map_err(KernelError::Dist)?;
    }
    Ok(out)
}

/// Convolution kernel of the operator, including the extended logarithmic
/// definitions at the exceptional parameters.
pub fn kernel(op: &OperatorId, m: u32) -> Result<DistExpr, KernelError> {
    match op.param {
        Param::Exact(h) => exact_kernel(op.family, h, m),
        Param::Numeric(z) => numeric_kernel(op.family, z, m),
    }
}

/// Fundamental solution: the kernel of the opposite parameter.
pub fn fundamental_solution(op: &OperatorId, m: u32) -> Result<DistExpr, KernelError> {
    kernel(&op.negated(), m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    A,
    B,
}

impl BoundarySide {
    pub fn label(self) -> &'static str {
        match self {
            BoundarySide::A => "a",
            BoundarySide::B => "b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryValueId {
    pub side: BoundarySide,
    pub k: i64,
}

/// Distributional boundary value `a_k` or `b_k`.
///
/// Uniform closed forms, valid for every integer `k` inside the guards
/// `k + 1 < m` (side `a`) and `k < m` (side `b`):
///
/// ```text
///   a_k = (-1)^{k+1} 2^{-(k+1)} Gamma((m-k-1)/2) / pi^{(m+k+1)/2} T*_{-m+k+1}
///   b_k = (-1)^k     2^{-(k+1)} Gamma((m-k)/2)   / pi^{(m+k+2)/2} U*_{-m+k+1}
/// ```
pub fn boundary_value(id: BoundaryValueId, m: u32) -> Result<DistExpr, KernelError> {
    let mi = m as i64;
    let k = id.k;
    match id.side {
        BoundarySide::A => {
            if k + 1 >= mi {
                return Err(KernelError::OutOfRange(format!(
                    "a_{} requires k + 1 < m (here m = {})",
                    k, m
                )));
            }
            let negate = k % 2 == 0; // negative sign at even indices
            let c = exact_coeff(-(k + 1), mi - k - 1, mi + k + 1, negate);
            Ok(DistExpr::tstar(m, Degree::Exact(-mi + k + 1)).scale(&Scalar::Exact(c)))
        }
        BoundarySide::B => {
            if k >= mi {
                return Err(KernelError::OutOfRange(format!(
                    "b_{} requires k < m (here m = {})",
                    k, m
                )));
            }
            let negate = k.rem_euclid(2) == 1; // negative sign at odd indices
            let c = exact_coeff(-(k + 1), mi - k, mi + k + 2, negate);
            Ok(DistExpr::ustar(m, Degree::Exact(-mi + k + 1)).scale(&Scalar::Exact(c)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::AtomKind;

    fn exact(num: i64, den: i64, pi_half: i64) -> Scalar {
        Scalar::Exact(ExactScalar::with_pi(num, den, pi_half))
    }

    fn dirac(mu: i64) -> OperatorId {
        OperatorId::new(OperatorFamily::DiracPow, Param::int(mu))
    }

    fn hdirac(mu: i64) -> OperatorId {
        OperatorId::new(OperatorFamily::HilbertDirac, Param::int(mu))
    }

    fn laplace(twice_beta: i64) -> OperatorId {
        OperatorId::new(OperatorFamily::LaplacePow, Param::halves(twice_beta))
    }

    fn lhilbert(twice_beta: i64) -> OperatorId {
        OperatorId::new(OperatorFamily::LaplaceHilbert, Param::halves(twice_beta))
    }

    #[test]
    fn zeroth_powers_are_delta_and_hilbert() {
        for m in 2..=5 {
            assert!(kernel(&dirac(0), m).unwrap().equal(&DistExpr::delta(m)));
            assert!(kernel(&hdirac(0), m)
                .unwrap()
                .equal(&DistExpr::hilbert_kernel(m)));
            assert!(kernel(&laplace(0), m).unwrap().equal(&DistExpr::delta(m)));
            assert!(kernel(&lhilbert(0), m)
                .unwrap()
                .equal(&DistExpr::hilbert_kernel(m)));
        }
    }

    #[test]
    fn dirac_square_kernel_value() {
        // d^2 delta in m=3 is 3 T*_{-5}
        let k = kernel(&dirac(2), 3).unwrap();
        assert_eq!(k.atoms().len(), 1);
        assert_eq!(k.atoms()[0].kind, AtomKind::ScalarT);
        assert_eq!(k.atoms()[0].degree, Degree::Exact(-5));
        assert_eq!(k.atoms()[0].coeff, exact(3, 1, 0));
        // and it equals the Laplacian applied to delta with a sign
        let via_laplace = DistExpr::delta(3).laplace_apply().unwrap().neg();
        assert!(k.equal(&via_laplace));
    }

    #[test]
    fn odd_dirac_power_is_dirac_applied() {
        for m in 2..=5 {
            let k = kernel(&dirac(1), m).unwrap();
            let via = DistExpr::delta(m).dirac_apply().unwrap();
            assert!(k.equal(&via), "d^1 delta = d(delta) in m={}", m);
            let k3 = kernel(&dirac(3), m).unwrap();
            let via3 = via
                .dirac_apply()
                .unwrap()
                .dirac_apply()
                .unwrap();
            assert!(k3.equal(&via3), "d^3 delta in m={}", m);
        }
    }

    #[test]
    fn hilbert_dirac_one_matches_half_laplacian() {
        // the square root of the Laplacian: 2 Gamma((m+1)/2)/pi^{(m-1)/2} T*_{-m-1}
        for m in 2..=5 {
            let hd = kernel(&hdirac(1), m).unwrap();
            let sqrt_l = kernel(&laplace(1), m).unwrap();
            assert!(hd.equal(&sqrt_l), "m={}", m);
            let a = &hd.atoms()[0];
            let want = exact_coeff(1, m as i64 + 1, m as i64 - 1, false);
            assert_eq!(a.coeff, Scalar::Exact(want));
        }
    }

    #[test]
    fn extended_parameters_yield_log_kernels() {
        // m even: the Dirac line at mu <= -m
        let k = kernel(&dirac(-2), 2).unwrap();
        assert!(k.has_log_atoms());
        // E_m = (p_0 ln r + 0) T*_0 with p_0 = -1/(2^{m-1} pi^m)
        assert_eq!(k.atoms()[0].log_coeff, exact(-1, 2, -4));
        assert_eq!(k.atoms()[0].coeff, Scalar::zero());
        assert_eq!(k.atoms()[0].degree, Degree::Exact(0));
        // m odd: the Hilbert-Dirac line
        let k = kernel(&hdirac(-3), 3).unwrap();
        assert!(k.has_log_atoms());
        assert_eq!(k.atoms()[0].log_coeff, exact(-1, 4, -6));
        // Laplace families pick up the same levels
        assert!(kernel(&laplace(-2), 2).unwrap().equal(&kernel(&dirac(-2), 2).unwrap()));
        assert!(kernel(&laplace(-3), 3).unwrap().equal(&kernel(&hdirac(-3), 3).unwrap()));
        assert!(kernel(&lhilbert(-3), 2).unwrap().equal(&kernel(&dirac(-3), 2).unwrap()));
        assert!(kernel(&lhilbert(-4), 3).unwrap().equal(&kernel(&hdirac(-4), 3).unwrap()));
    }

    #[test]
    fn pq_table_starting_values_and_steps() {
        for m in [2u32, 3, 4, 5] {
            let t = pq_table(m, 6);
            let mi = m as i64;
            assert_eq!(
                t.p[0],
                ExactScalar::two_pow(-(mi - 1))
                    .neg()
                    .mul(&ExactScalar::with_pi(1, 1, -2 * mi))
            );
            assert!(t.q[0].is_zero());
            // p_1 = 1/(2^m pi^{m+1}), q_1 = -1/(m 2^m pi^{m+1})
            assert_eq!(
                t.p[1],
                ExactScalar::two_pow(-mi).mul(&ExactScalar::with_pi(1, 1, -2 * (mi + 1)))
            );
            assert_eq!(
                t.q[1],
                ExactScalar::two_pow(-mi)
                    .mul(&ExactScalar::with_pi(-1, mi, -2 * (mi + 1)))
            );
            // p_2 = p_1 / 2
            assert_eq!(t.p[2], t.p[1].div_int(2));
        }
    }

    #[test]
    fn log_chain_descends_to_the_regular_grid() {
        // d E_{m+n} = E_{m+n-1} all the way down to E_0 = delta (m even),
        // and d F_{m+n} = F_{m+n-1} down to F_0 = H (m odd)
        for m in [2u32, 4] {
            let top = m as usize + 6;
            for j in (1..=top).rev() {
                let here = kernel(&dirac(-(j as i64)), m).unwrap();
                let below = kernel(&dirac(-(j as i64) + 1), m).unwrap();
                assert!(
                    here.dirac_apply().unwrap().equal(&below),
                    "E chain step {} in m={}",
                    j,
                    m
                );
            }
            assert!(kernel(&dirac(0), m).unwrap().equal(&DistExpr::delta(m)));
        }
        for m in [3u32, 5] {
            let top = m as usize + 6;
            for j in (1..=top).rev() {
                let here = kernel(&hdirac(-(j as i64)), m).unwrap();
                let below = kernel(&hdirac(-(j as i64) + 1), m).unwrap();
                assert!(
                    here.dirac_apply().unwrap().equal(&below),
                    "F chain step {} in m={}",
                    j,
                    m
                );
            }
            assert!(kernel(&hdirac(0), m)
                .unwrap()
                .equal(&DistExpr::hilbert_kernel(m)));
        }
    }

    #[test]
    fn fundamental_solution_is_opposite_kernel() {
        let m = 3;
        // E_1 in m=3: -(1/2) Gamma(3/2)/pi^{5/2} U*_{-2}
        let e1 = fundamental_solution(&dirac(1), m).unwrap();
        assert_eq!(e1.atoms()[0].kind, AtomKind::VectorU);
        assert_eq!(e1.atoms()[0].degree, Degree::Exact(-2));
        assert_eq!(
            e1.atoms()[0].coeff,
            Scalar::Exact(gamma_half(3).unwrap().mul(&ExactScalar::with_pi(-1, 2, -5)))
        );
        // as a function that is -(1/sigma_3) x/|x|^3 = -(1/(4 pi)) omega/r^2;
        // U*_{-2} = pi * omega/r^2 in m=3, so the coefficient is -1/(4 pi):
        let c = e1.atoms()[0].coeff.to_numeric().re * std::f64::consts::PI;
        assert!((c + 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn riesz_kernel_value() {
        // K_{1/2} in m=3 is (1/(2 pi^2)) Fp r^{-2}: T*_{-2} = T_{-2} there
        let k = fundamental_solution(&laplace(1), 3).unwrap();
        assert_eq!(k.atoms()[0].degree, Degree::Exact(-2));
        assert_eq!(k.atoms()[0].coeff, exact(1, 2, -4));
    }

    #[test]
    fn boundary_values_match_named_forms() {
        for m in 3..=5u32 {
            let mi = m as i64;
            // a_{-1} = delta, b_{-1} = H
            assert!(boundary_value(BoundaryValueId { side: BoundarySide::A, k: -1 }, m)
                .unwrap()
                .equal(&DistExpr::delta(m)));
            assert!(boundary_value(BoundaryValueId { side: BoundarySide::B, k: -1 }, m)
                .unwrap()
                .equal(&DistExpr::hilbert_kernel(m)));
            // b_{-2} = -d(delta)
            let b2 = boundary_value(BoundaryValueId { side: BoundarySide::B, k: -2 }, m).unwrap();
            assert!(b2.equal(&DistExpr::delta(m).dirac_apply().unwrap().neg()));
            // a_0 = -(1/2) Gamma((m-1)/2)/pi^{(m+1)/2} T*_{-m+1}
            let a0 = boundary_value(BoundaryValueId { side: BoundarySide::A, k: 0 }, m).unwrap();
            assert_eq!(
                a0.atoms()[0].coeff,
                Scalar::Exact(exact_coeff(-1, mi - 1, mi + 1, true))
            );
        }
        // a_1 in m=5 is (1/(3 sigma_5)) Fp r^{-3}: coefficient against T*_{-2}
        let a1 = boundary_value(BoundaryValueId { side: BoundarySide::A, k: 1 }, 5).unwrap();
        assert_eq!(a1.atoms()[0].degree, Degree::Exact(-3));
        // (1/4) Gamma(3/2)/pi^{7/2}
        assert_eq!(
            a1.atoms()[0].coeff,
            Scalar::Exact(gamma_half(3).unwrap().mul(&ExactScalar::with_pi(1, 4, -7)))
        );
    }

    #[test]
    fn boundary_guards() {
        assert!(matches!(
            boundary_value(BoundaryValueId { side: BoundarySide::A, k: 1 }, 2),
            Err(KernelError::OutOfRange(_))
        ));
        assert!(matches!(
            boundary_value(BoundaryValueId { side: BoundarySide::A, k: 2 }, 3),
            Err(KernelError::OutOfRange(_))
        ));
        assert!(boundary_value(BoundaryValueId { side: BoundarySide::B, k: 2 }, 3).is_ok());
        assert!(matches!(
            boundary_value(BoundaryValueId { side: BoundarySide::B, k: 3 }, 3),
            Err(KernelError::OutOfRange(_))
        ));
    }

    #[test]
    fn numeric_kernel_tracks_exact_on_the_grid() {
        for m in 2..=4u32 {
            for mu in -1..=3i64 {
                if is_extended_param(OperatorFamily::DiracPow, HalfInt::from_int(mu), m) {
                    continue;
                }
                let e = kernel(&dirac(mu), m).unwrap();
                let n = kernel(
                    &OperatorId::new(
                        OperatorFamily::DiracPow,
                        Param::Numeric(Complex64::new(mu as f64, 0.0)),
                    ),
                    m,
                )
                .unwrap();
                assert!(e.approx_equal(&n, 1e-10), "m={} mu={}: {} vs {}", m, mu, e, n);
            }
        }
    }

    #[test]
    fn numeric_kernel_rejects_true_poles() {
        // m even, mu = -m: Gamma pole with unit prefactor
        let r = kernel(
            &OperatorId::new(
                OperatorFamily::DiracPow,
                Param::Numeric(Complex64::new(-2.0, 0.0)),
            ),
            2,
        );
        assert!(matches!(r, Err(KernelError::UndefinedOperator(_))));
        // m odd, mu = -m: the prefactor vanishes, the branch is dropped
        let r = kernel(
            &OperatorId::new(
                OperatorFamily::DiracPow,
                Param::Numeric(Complex64::new(-3.0, 0.0)),
            ),
            3,
        )
        .unwrap();
        assert!(r.approx_equal(&kernel(&dirac(-3), 3).unwrap(), 1e-10));
    }
}
