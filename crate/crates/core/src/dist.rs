//! The atom algebra for the two normalized distribution families.
//!
//! A [`DistExpr`] is a canonical finite sum of atoms `(p ln r + q) T*_lambda`
//! and `(p ln r + q) U*_lambda` in a fixed dimension `m`. Plain atoms have
//! `p = 0`; the logarithmic shapes only occur with `T*` at even degrees
//! `>= 0` and `U*` at odd degrees `>= 1`.
//!
//! The operator actions implemented here are the calculus rules
//!
//! ```text
//!   x T*_l = (l+m)/(2 pi) U*_{l+1}      x U*_l = -T*_{l+1}
//!   d T*_l = l U*_{l-1}                 d U*_l = -2 pi T*_{l-1}
//!   L T*_l = 2 pi l T*_{l-2}            L U*_l = 2 pi (l-1) U*_{l-2}
//!   r^2 T*_l = (l+m)/(2 pi) T*_{l+2}    r^2 U*_l = (l+m+1)/(2 pi) U*_{l+2}
//! ```
//!
//! (`d` the Dirac operator, `L` the Laplacian) extended to the logarithmic
//! atoms, together with the three-part convolution table for `T* * T*`,
//! `U* * T*` and `U* * U*`.

use crate::coeff::{gamma_complex, gamma_half, CoeffError, ExactScalar, NumericScalar, Scalar};
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("expressions live in different dimensions: {0} vs {1}")]
    DimensionMismatch(u32, u32),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    /// The convolution table does not define a value for these parameters.
    #[error("convolution undefined: {0}")]
    ExcludedParameters(String),
    #[error("no rule for logarithmic atoms in this operation")]
    UnsupportedLogAtom,
    #[error("logarithmic atom with invalid shape: {0} at degree {1}")]
    LogShape(String, i64),
    #[error("operation requires an exact integer degree, found {0}")]
    NonIntegerDegree(String),
}

/// Atom family tag: scalar radial (`T*`) or vector directed (`U*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    ScalarT,
    VectorU,
}

impl AtomKind {
    pub fn label(self) -> &'static str {
        match self {
            AtomKind::ScalarT => "T",
            AtomKind::VectorU => "U",
        }
    }
}

/// Degree parameter of an atom; exact integers on the grid, complex doubles
/// in numeric mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Degree {
    Exact(i64),
    Numeric(Complex64),
}

impl Degree {
    pub fn shift(self, d: i64) -> Degree {
        match self {
            Degree::Exact(n) => Degree::Exact(n + d),
            Degree::Numeric(z) => Degree::Numeric(z + d as f64),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Degree::Exact(n) => Complex64::new(n as f64, 0.0),
            Degree::Numeric(z) => z,
        }
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            Degree::Exact(n) => Some(n),
            Degree::Numeric(_) => None,
        }
    }

    /// Multiply a coefficient by this degree (exactly when possible).
    fn scale_coeff(self, c: &Scalar) -> Scalar {
        match self {
            Degree::Exact(n) => c.mul_int(n),
            Degree::Numeric(z) => c.mul(&Scalar::Numeric(NumericScalar::from_complex(z))),
        }
    }

    /// Coefficient factor `(degree + offset) / (2 pi)`.
    fn affine_over_two_pi(self, offset: i64) -> Scalar {
        match self {
            Degree::Exact(n) => Scalar::Exact(
                ExactScalar::ratio(n + offset, 2).mul(&ExactScalar::with_pi(1, 1, -2)),
            ),
            Degree::Numeric(z) => Scalar::Numeric(NumericScalar::from_complex(
                (z + offset as f64) / (2.0 * std::f64::consts::PI),
            )),
        }
    }

    fn sort_key(self) -> (u8, i64, u64, u64) {
        match self {
            Degree::Exact(n) => (0, n, 0, 0),
            Degree::Numeric(z) => (1, 0, z.re.to_bits(), z.im.to_bits()),
        }
    }
}

/// One term `(p ln r + q) X*_degree`; plain atoms carry `p = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub kind: AtomKind,
    pub degree: Degree,
    /// Plain coefficient `q`.
    pub coeff: Scalar,
    /// Coefficient `p` of `ln r`; nonzero only for the logarithmic shapes.
    pub log_coeff: Scalar,
}

impl Atom {
    pub fn plain(kind: AtomKind, degree: Degree, coeff: Scalar) -> Self {
        Atom {
            kind,
            degree,
            coeff,
            log_coeff: Scalar::zero(),
        }
    }

    pub fn is_log(&self) -> bool {
        !self.log_coeff.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() && self.log_coeff.is_zero()
    }

    fn check_log_shape(&self) -> Result<(), DistError> {
        if !self.is_log() {
            return Ok(());
        }
        let d = self
            .degree
            .exact()
            .ok_or_else(|| DistError::NonIntegerDegree("logarithmic atom".into()))?;
        let ok = match self.kind {
            AtomKind::ScalarT => d >= 0 && d % 2 == 0,
            AtomKind::VectorU => d >= 1 && d % 2 == 1,
        };
        if ok {
            Ok(())
        } else {
            Err(DistError::LogShape(
                format!("ln r with {}*", self.kind.label()),
                d,
            ))
        }
    }
}

/// A canonical finite combination of atoms in dimension `m >= 2`.
///
/// Canonical form: atoms sorted by `(kind, degree)`, one atom per key, no
/// zero atoms. All operations are pure; values are immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct DistExpr {
    dim: u32,
    atoms: Vec<Atom>,
}

impl DistExpr {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 2, "dimension must be at least 2");
        DistExpr {
            dim: m,
            atoms: Vec::new(),
        }
    }

    pub fn from_atoms(m: u32, atoms: Vec<Atom>) -> Result<Self, DistError> {
        let mut e = DistExpr::zero(m);
        for a in atoms {
            a.check_log_shape()?;
            e.push_atom(a)?;
        }
        Ok(e)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn has_log_atoms(&self) -> bool {
        self.atoms.iter().any(|a| a.is_log())
    }

    pub fn is_exact(&self) -> bool {
        self.atoms.iter().all(|a| {
            matches!(a.degree, Degree::Exact(_)) && a.coeff.is_exact() && a.log_coeff.is_exact()
        })
    }

    /// Unit atom `T*_lambda`.
    pub fn tstar(m: u32, lambda: Degree) -> Self {
        DistExpr::from_atoms(m, vec![Atom::plain(AtomKind::ScalarT, lambda, Scalar::one())])
            .expect("plain unit atom is canonical")
    }

    /// Unit atom `U*_lambda`.
    pub fn ustar(m: u32, lambda: Degree) -> Self {
        DistExpr::from_atoms(m, vec![Atom::plain(AtomKind::VectorU, lambda, Scalar::one())])
            .expect("plain unit atom is canonical")
    }

    /// The delta distribution: `Gamma(m/2) / pi^{m/2} T*_{-m}`.
    pub fn delta(m: u32) -> Self {
        let c = gamma_half(m as i64)
            .expect("m >= 2")
            .mul(&ExactScalar::with_pi(1, 1, -(m as i64)));
        DistExpr::tstar(m, Degree::Exact(-(m as i64))).scale(&Scalar::Exact(c))
    }

    /// The Hilbert convolution kernel: `-(2/sigma_{m+1}) U*_{-m}`.
    pub fn hilbert_kernel(m: u32) -> Self {
        let c = gamma_half(m as i64 + 1)
            .expect("m >= 2")
            .mul(&ExactScalar::with_pi(-1, 1, -(m as i64 + 1)));
        DistExpr::ustar(m, Degree::Exact(-(m as i64))).scale(&Scalar::Exact(c))
    }

    /// Logarithmic atom `(p ln r + q) T*_d` (`d` even, `>= 0`).
    pub fn log_tstar(m: u32, d: i64, p: Scalar, q: Scalar) -> Result<Self, DistError> {
        DistExpr::from_atoms(
            m,
            vec![Atom {
                kind: AtomKind::ScalarT,
                degree: Degree::Exact(d),
                coeff: q,
                log_coeff: p,
            }],
        )
    }

    /// Logarithmic atom `(p ln r + q) U*_d` (`d` odd, `>= 1`).
    pub fn log_ustar(m: u32, d: i64, p: Scalar, q: Scalar) -> Result<Self, DistError> {
        DistExpr::from_atoms(
            m,
            vec![Atom {
                kind: AtomKind::VectorU,
                degree: Degree::Exact(d),
                coeff: q,
                log_coeff: p,
            }],
        )
    }

    fn push_atom(&mut self, a: Atom) -> Result<(), DistError> {
        if a.is_zero() {
            return Ok(());
        }
        let key = (a.kind, a.degree.sort_key());
        match self
            .atoms
            .binary_search_by(|probe| (probe.kind, probe.degree.sort_key()).cmp(&key))
        {
            Ok(i) => {
                let merged = Atom {
                    kind: a.kind,
                    degree: self.atoms[i].degree,
                    coeff: self.atoms[i].coeff.add(&a.coeff)?,
                    log_coeff: self.atoms[i].log_coeff.add(&a.log_coeff)?,
                };
                if merged.is_zero() {
                    self.atoms.remove(i);
                } else {
                    self.atoms[i] = merged;
                }
            }
            Err(i) => self.atoms.insert(i, a),
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, DistError> {
        if self.dim != other.dim {
            return Err(DistError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for a in &other.atoms {
            out.push_atom(a.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                kind: a.kind,
                degree: a.degree,
                coeff: a.coeff.neg(),
                log_coeff: a.log_coeff.neg(),
            })
            .collect();
        DistExpr {
            dim: self.dim,
            atoms,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DistError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return DistExpr::zero(self.dim);
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                kind: a.kind,
                degree: a.degree,
                coeff: a.coeff.mul(s),
                log_coeff: a.log_coeff.mul(s),
            })
            .collect();
        DistExpr {
            dim: self.dim,
            atoms,
        }
    }

    /// Apply the Dirac operator.
    pub fn dirac_apply(&self) -> Result<Self, DistError> {
        let m = self.dim as i64;
        let mut out = DistExpr::zero(self.dim);
        for a in &self.atoms {
            let new = match a.kind {
                // d (p ln r + q) T*_l = (l p) ln r U*_{l-1} + (p + l q) U*_{l-1}
                AtomKind::ScalarT => Atom {
                    kind: AtomKind::VectorU,
                    degree: a.degree.shift(-1),
                    coeff: a.log_coeff.add(&a.degree.scale_coeff(&a.coeff))?,
                    log_coeff: a.degree.scale_coeff(&a.log_coeff),
                },
                // d (p ln r + q) U*_l = (-2 pi p) ln r T*_{l-1}
                //                       - 2 pi (q + p/(m+l-1)) T*_{l-1}
                AtomKind::VectorU => {
                    let minus_two_pi = Scalar::Exact(ExactScalar::with_pi(-2, 1, 2));
                    let corr = if a.log_coeff.is_zero() {
                        Scalar::zero()
                    } else {
                        let l = a.degree.exact().ok_or_else(|| {
                            DistError::NonIntegerDegree("logarithmic atom".into())
                        })?;
                        a.log_coeff
                            .mul(&Scalar::Exact(ExactScalar::ratio(1, m + l - 1)))
                    };
                    Atom {
                        kind: AtomKind::ScalarT,
                        degree: a.degree.shift(-1),
                        coeff: minus_two_pi.mul(&a.coeff.add(&corr)?),
                        log_coeff: minus_two_pi.mul(&a.log_coeff),
                    }
                }
            };
            new.check_log_shape()?;
            out.push_atom(new)?;
        }
        Ok(out)
    }

    /// Apply the Laplacian. Plain atoms use the direct degree-shift rules;
    /// logarithmic atoms go through the Dirac operator twice, since the
    /// Dirac operator squares to the negative Laplacian.
    pub fn laplace_apply(&self) -> Result<Self, DistError> {
        let mut out = DistExpr::zero(self.dim);
        for a in &self.atoms {
            if a.is_log() {
                let single = DistExpr {
                    dim: self.dim,
                    atoms: vec![a.clone()],
                };
                let twice = single.dirac_apply()?.dirac_apply()?.neg();
                out = out.add(&twice)?;
                continue;
            }
            let two_pi = Scalar::Exact(ExactScalar::with_pi(2, 1, 2));
            let factor = match a.kind {
                AtomKind::ScalarT => a.degree.scale_coeff(&two_pi),
                AtomKind::VectorU => a.degree.shift(-1).scale_coeff(&two_pi),
            };
            out.push_atom(Atom::plain(
                a.kind,
                a.degree.shift(-2),
                a.coeff.mul(&factor),
            ))?;
        }
        Ok(out)
    }

    /// Left multiplication by the vector variable. No rule exists for the
    /// logarithmic atoms.
    pub fn vector_multiply(&self) -> Result<Self, DistError> {
        let mut out = DistExpr::zero(self.dim);
        for a in &self.atoms {
            if a.is_log() {
                return Err(DistError::UnsupportedLogAtom);
            }
            let new = match a.kind {
                // x T*_l = (l+m)/(2 pi) U*_{l+1}
                AtomKind::ScalarT => Atom::plain(
                    AtomKind::VectorU,
                    a.degree.shift(1),
                    a.coeff
                        .mul(&a.degree.affine_over_two_pi(self.dim as i64)),
                ),
                // x U*_l = -T*_{l+1}
                AtomKind::VectorU => {
                    Atom::plain(AtomKind::ScalarT, a.degree.shift(1), a.coeff.neg())
                }
            };
            out.push_atom(new)?;
        }
        Ok(out)
    }

    /// Multiplication by `r^2`; shifts the degree by two on both parts of a
    /// logarithmic atom.
    pub fn r2_multiply(&self) -> Result<Self, DistError> {
        let m = self.dim as i64;
        let mut out = DistExpr::zero(self.dim);
        for a in &self.atoms {
            let factor = match a.kind {
                AtomKind::ScalarT => a.degree.affine_over_two_pi(m),
                AtomKind::VectorU => a.degree.affine_over_two_pi(m + 1),
            };
            out.push_atom(Atom {
                kind: a.kind,
                degree: a.degree.shift(2),
                coeff: a.coeff.mul(&factor),
                log_coeff: a.log_coeff.mul(&factor),
            })?;
        }
        Ok(out)
    }

    /// Convolution. Pairs with one factor on the delta grid reduce to
    /// derivatives of the other factor; the rest go through the Gamma-ratio
    /// table with pole bookkeeping. Logarithmic atoms are refused.
    pub fn convolve(&self, other: &Self) -> Result<Self, DistError> {
        if self.dim != other.dim {
            return Err(DistError::DimensionMismatch(self.dim, other.dim));
        }
        if self.has_log_atoms() || other.has_log_atoms() {
            return Err(DistError::UnsupportedLogAtom);
        }
        let mut out = DistExpr::zero(self.dim);
        for a in &self.atoms {
            for b in &other.atoms {
                let term = convolve_pair(self.dim, a, b)?;
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }

    /// Convolution with the Hilbert kernel.
    pub fn hilbert(&self) -> Result<Self, DistError> {
        DistExpr::hilbert_kernel(self.dim).convolve(self)
    }

    /// Exact structural equality of canonical forms.
    pub fn equal(&self, other: &Self) -> bool {
        self == other
    }

    /// Numeric comparison: every atom of the difference must have both
    /// coefficients below `tol` (absolute, on top of a relative scale taken
    /// from the inputs). Any pole flag makes the comparison fail.
    pub fn approx_equal(&self, other: &Self, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let mut entries: Vec<(AtomKind, Complex64, Complex64, Complex64)> = Vec::new();
        let mut scale: f64 = 0.0;
        let mut absorb = |e: &DistExpr, sign: f64, scale: &mut f64| -> bool {
            for a in &e.atoms {
                if a.coeff.is_pole() || a.log_coeff.is_pole() {
                    return false;
                }
                let q = a.coeff.to_complex() * sign;
                let p = a.log_coeff.to_complex() * sign;
                *scale = scale.max(q.norm()).max(p.norm());
                let d = a.degree.to_complex();
                if let Some(entry) = entries
                    .iter_mut()
                    .find(|(k, dd, _, _)| *k == a.kind && (*dd - d).norm() <= tol)
                {
                    entry.2 += q;
                    entry.3 += p;
                } else {
                    entries.push((a.kind, d, q, p));
                }
            }
            true
        };
        if !absorb(self, 1.0, &mut scale) || !absorb(other, -1.0, &mut scale) {
            return false;
        }
        let bound = tol * scale.max(1.0);
        entries
            .iter()
            .all(|(_, _, q, p)| q.norm() <= bound && p.norm() <= bound)
    }
}

/// Normalization constant linking the delta-grid atoms to derivatives of
/// delta: `T*_{-m-2l} = kt(l) (-Laplacian)^l delta` and
/// `U*_{-m-2l-1} = -ku(l) d^{2l+1} delta`.
fn delta_grid_t_const(m: i64, l: i64) -> ExactScalar {
    // pi^{m/2 - l} / (2^{2l} Gamma(m/2 + l))
    gamma_half(m + 2 * l)
        .expect("positive argument")
        .invert()
        .expect("nonzero")
        .mul(&ExactScalar::two_pow(-2 * l))
        .mul(&ExactScalar::with_pi(1, 1, m - 2 * l))
}

fn delta_grid_u_const(m: i64, l: i64) -> ExactScalar {
    // pi^{m/2 - l} / (2^{2l+1} Gamma(m/2 + l + 1))
    gamma_half(m + 2 * l + 2)
        .expect("positive argument")
        .invert()
        .expect("nonzero")
        .mul(&ExactScalar::two_pow(-(2 * l + 1)))
        .mul(&ExactScalar::with_pi(1, 1, m - 2 * l))
}

/// Exact delta-grid test: `T*` at `-m-2l`, `U*` at `-m-2l-1` (`l >= 0`).
fn delta_grid_level(m: i64, kind: AtomKind, degree: Degree) -> Option<i64> {
    let (d, on_grid) = match degree {
        Degree::Exact(d) => (d, true),
        Degree::Numeric(z) => {
            let r = z.re.round();
            if z.im.abs() <= crate::coeff::POLE_TOL && (z.re - r).abs() <= crate::coeff::POLE_TOL {
                (r as i64, true)
            } else {
                (0, false)
            }
        }
    };
    if !on_grid {
        return None;
    }
    let l2 = match kind {
        AtomKind::ScalarT => -m - d,
        AtomKind::VectorU => -m - 1 - d,
    };
    if l2 >= 0 && l2 % 2 == 0 {
        Some(l2 / 2)
    } else {
        None
    }
}

fn convolve_pair(m: u32, a: &Atom, b: &Atom) -> Result<DistExpr, DistError> {
    let mi = m as i64;
    // A factor supported at the origin acts by differentiation.
    for (da, db) in [(a, b), (b, a)] {
        if let Some(l) = delta_grid_level(mi, da.kind, da.degree) {
            let other = DistExpr::from_atoms(m, vec![db.clone()])?;
            return match da.kind {
                AtomKind::ScalarT => {
                    let mut acc = other;
                    for _ in 0..l {
                        acc = acc.laplace_apply()?.neg(); // (-Laplacian)^l
                    }
                    let c = Scalar::Exact(delta_grid_t_const(mi, l)).mul(&da.coeff);
                    Ok(acc.scale(&c))
                }
                AtomKind::VectorU => {
                    let mut acc = other;
                    for _ in 0..(2 * l + 1) {
                        acc = acc.dirac_apply()?;
                    }
                    let c = Scalar::Exact(delta_grid_u_const(mi, l).neg()).mul(&da.coeff);
                    Ok(acc.scale(&c))
                }
            };
        }
    }

    // Gamma-ratio table. Arguments are stored doubled so that half-integers
    // stay integral: `A = a2/2` etc.
    let (alpha, beta, out_kind, pi_half, rule) = match (a.kind, b.kind) {
        (AtomKind::ScalarT, AtomKind::ScalarT) => (a.degree, b.degree, AtomKind::ScalarT, mi, "TT"),
        (AtomKind::VectorU, AtomKind::ScalarT) => (a.degree, b.degree, AtomKind::VectorU, mi, "UT"),
        (AtomKind::ScalarT, AtomKind::VectorU) => (b.degree, a.degree, AtomKind::VectorU, mi, "UT"),
        (AtomKind::VectorU, AtomKind::VectorU) => {
            (a.degree, b.degree, AtomKind::ScalarT, mi + 2, "UU")
        }
    };
    let out_degree = alpha.shift(0).shift_by(&beta, mi);

    let coeff = match (alpha, beta) {
        (Degree::Exact(ai), Degree::Exact(bi)) => {
            // doubled Gamma arguments for numerator and the two denominators
            let (num2, den2a, den2b) = match rule {
                "TT" => (-(ai + bi + mi), -ai, -bi),
                "UT" => (-(ai + bi + mi - 1), -(ai - 1), -bi),
                _ => (-(ai + bi + mi), 1 - ai, 1 - bi),
            };
            let pole = |n2: i64| n2 <= 0 && n2 % 2 == 0;
            if pole(num2) {
                return Err(DistError::ExcludedParameters(format!(
                    "{} convolution at degrees ({}, {}) in dimension {}: the Gamma numerator \
                     argument {}/2 is a nonpositive integer",
                    rule, ai, bi, mi, num2
                )));
            }
            if pole(den2a) || pole(den2b) {
                // a denominator pole kills the term
                return Ok(DistExpr::zero(m));
            }
            let ratio = gamma_half(num2)
                .expect("checked")
                .mul(&gamma_half(den2a).expect("checked").invert().expect("nonzero"))
                .mul(&gamma_half(den2b).expect("checked").invert().expect("nonzero"))
                .mul(&ExactScalar::with_pi(1, 1, pi_half));
            Scalar::Exact(ratio)
        }
        _ => {
            let az = alpha.to_complex();
            let bz = beta.to_complex();
            let (num, dena, denb) = match rule {
                "TT" => (-(az + bz + mi as f64) / 2.0, -az / 2.0, -bz / 2.0),
                "UT" => (
                    -(az + bz + (mi - 1) as f64) / 2.0,
                    -(az - 1.0) / 2.0,
                    -bz / 2.0,
                ),
                _ => (
                    -(az + bz + mi as f64) / 2.0,
                    (1.0 - az) / 2.0,
                    (1.0 - bz) / 2.0,
                ),
            };
            let gn = gamma_complex(num);
            let ga = gamma_complex(dena);
            let gb = gamma_complex(denb);
            if gn.is_pole {
                return Err(DistError::ExcludedParameters(format!(
                    "{} convolution at degrees ({}, {}) in dimension {}: Gamma numerator pole",
                    rule, az, bz, mi
                )));
            }
            if ga.is_pole || gb.is_pole {
                return Ok(DistExpr::zero(m));
            }
            let v = gn.to_complex() / (ga.to_complex() * gb.to_complex())
                * Complex64::new(std::f64::consts::PI, 0.0).powf(pi_half as f64 / 2.0);
            Scalar::Numeric(NumericScalar::from_complex(v))
        }
    };

    DistExpr::from_atoms(
        m,
        vec![Atom::plain(
            out_kind,
            out_degree,
            a.coeff.mul(&b.coeff).mul(&coeff),
        )],
    )
}

impl Degree {
    /// `self + other + m`, staying exact when both sides are exact.
    fn shift_by(self, other: &Degree, m: i64) -> Degree {
        match (self, other) {
            (Degree::Exact(x), Degree::Exact(y)) => Degree::Exact(x + y + m),
            _ => Degree::Numeric(self.to_complex() + other.to_complex() + m as f64),
        }
    }
}

impl fmt::Display for DistExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for a in &self.atoms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let deg = match a.degree {
                Degree::Exact(d) => format!("{}", d),
                Degree::Numeric(z) if z.im == 0.0 => format!("{}", z.re),
                Degree::Numeric(z) => format!("{}{:+}i", z.re, z.im),
            };
            if a.is_log() {
                write!(
                    f,
                    "[({})·ln r + ({})]·{}*_{{{}}}",
                    a.log_coeff,
                    a.coeff,
                    a.kind.label(),
                    deg
                )?;
            } else {
                write!(f, "({})·{}*_{{{}}}", a.coeff, a.kind.label(), deg)?;
            }
        }
        Ok(())
    }
}
