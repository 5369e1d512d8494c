//! Jacobian syzygies of a line arrangement, computed exactly.
//!
//! The degree-`r` piece of `AR(f)` is the kernel of the linear map
//! `(a, b, c) -> a f_x + b f_y + c f_z` from `S_r^3` to `S_{r+d-1}`. Rows of
//! the matrix are indexed by monomials of degree `r + d - 1`, columns by the
//! `3 C(r+2, 2)` coefficients of `(a, b, c)`, both in degree-lex order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freeness::{dpw_tau_max, ExponentPair};
use crate::geometry::{intersection_summary, RationalArrangement};
use crate::linalg::IntMatrix;
use crate::poly::{monomial_index, monomials, HomogeneousPolynomial};

/// Upper limit on the number of lines handled by the elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyzygyLimits {
    pub max_degree: u32,
}

impl Default for SyzygyLimits {
    fn default() -> Self {
        Self { max_degree: 16 }
    }
}

impl SyzygyLimits {
    fn check(&self, degree: u32) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::ResourceLimit(format!(
                "degree {degree} exceeds the configured cap {} (raise it explicitly)",
                self.max_degree
            )));
        }
        Ok(())
    }
}

/// Product of the linear forms of the arrangement, with coprime integer
/// coefficients.
pub fn defining_polynomial(arr: &RationalArrangement) -> HomogeneousPolynomial {
    arr.rational_lines()
        .iter()
        .map(HomogeneousPolynomial::linear)
        .fold(
            HomogeneousPolynomial::constant(BigRational::from_integer(1.into())),
            |acc, l| acc.mul(&l),
        )
        .primitive()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygySpace {
    pub r: u32,
    pub dimension: usize,
    pub basis: Option<Vec<[HomogeneousPolynomial; 3]>>,
}

fn jacobian_matrix(f: &HomogeneousPolynomial, r: u32) -> IntMatrix {
    let f = f.primitive();
    let d = f.degree();
    let target = r + d - 1;
    let source = monomials(r);
    let rows = ((target + 1) * (target + 2) / 2) as usize;
    let mut m = IntMatrix::zeros(rows, 3 * source.len());
    for var in 0..3 {
        let partial = f.partial(var);
        let coeffs: Vec<([u32; 3], BigInt)> = partial
            .terms()
            .iter()
            .map(|(e, c)| (*e, c.to_integer()))
            .collect();
        for (j, mono) in source.iter().enumerate() {
            let col = var * source.len() + j;
            for (e, c) in &coeffs {
                let row = monomial_index([e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]]);
                m.set(row, col, c.clone());
            }
        }
    }
    m
}

/// Dimension of `AR(f)_r`; with `want_basis`, also an explicit basis.
pub fn syzygy_dimension(
    f: &HomogeneousPolynomial,
    r: u32,
    want_basis: bool,
    limits: SyzygyLimits,
) -> Result<SyzygySpace> {
    limits.check(f.degree())?;
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("f must have positive degree".into()));
    }
    let m = jacobian_matrix(f, r);
    let basis = want_basis.then(|| {
        let source = monomials(r);
        m.kernel()
            .into_iter()
            .map(|v| {
                let comp = |var: usize| {
                    HomogeneousPolynomial::from_terms(
                        r,
                        source.iter().enumerate().filter_map(|(j, mono)| {
                            let c = &v[var * source.len() + j];
                            (!c.is_zero()).then(|| (*mono, BigRational::from_integer(c.clone())))
                        }),
                    )
                };
                [comp(0), comp(1), comp(2)]
            })
            .collect::<Vec<_>>()
    });
    let dimension = match &basis {
        Some(b) => b.len(),
        None => m.cols() - m.rank(),
    };
    Ok(SyzygySpace { r, dimension, basis })
}

/// Least `r` with a nonzero Jacobian syzygy of degree `r`.
pub fn mdr(f: &HomogeneousPolynomial, limits: SyzygyLimits) -> Result<u32> {
    limits.check(f.degree())?;
    for r in 0..f.degree().max(1) {
        if syzygy_dimension(f, r, false, limits)?.dimension > 0 {
            return Ok(r);
        }
    }
    // Koszul relations live in degree d - 1, so this is unreachable for d >= 1.
    Ok(f.degree() - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeExactReport {
    pub d: u32,
    pub mdr: u32,
    pub tau: u64,
    pub tau_max: i64,
    pub free: bool,
    pub exponents: Option<ExponentPair>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Freeness from the computed `mdr` and the du Plessis-Wall equality.
pub fn is_free_exact(arr: &RationalArrangement, limits: SyzygyLimits) -> Result<FreeExactReport> {
    let d = arr.len() as u32;
    limits.check(d)?;
    let f = defining_polynomial(arr);
    let r = mdr(&f, limits)?;
    let tau = intersection_summary(arr).weak_combinatorics.total_tjurina();
    let tau_max = if d >= 2 { dpw_tau_max(d, r)? } else { 0 };
    let (free, note) = if d == 1 {
        (true, None)
    } else if 2 * r < d {
        (tau as i64 == tau_max, None)
    } else {
        (
            false,
            Some("mdr >= d/2: not free, since free exponents satisfy mdr = d1 <= d2".to_string()),
        )
    };
    Ok(FreeExactReport {
        d,
        mdr: r,
        tau,
        tau_max,
        free,
        exponents: free.then(|| ExponentPair::new(r, d.saturating_sub(1) - r)),
        note,
    })
}

/// `a f_x + b f_y + c f_z`.
pub fn apply_syzygy(f: &HomogeneousPolynomial, s: &[HomogeneousPolynomial; 3]) -> HomogeneousPolynomial {
    (0..3)
        .map(|v| s[v].mul(&f.partial(v)))
        .reduce(|a, b| a.add(&b))
        .expect("three components")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(lines: &[[i64; 3]]) -> RationalArrangement {
        RationalArrangement::from_integers(lines).unwrap()
    }

    fn lim() -> SyzygyLimits {
        SyzygyLimits::default()
    }

    #[test]
    fn defining_polynomials() {
        let tri = arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(defining_polynomial(&tri).to_string(), "xyz");
        let np = arr(&[[1, 0, 0], [0, 1, 0], [1, -1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(defining_polynomial(&np).to_string(), "x^3yz - xy^3z");
    }

    #[test]
    fn small_syzygy_spaces() {
        let pencil = defining_polynomial(&arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]));
        let s = syzygy_dimension(&pencil, 0, true, lim()).unwrap();
        assert_eq!(s.dimension, 1);
        let b = &s.basis.unwrap()[0];
        assert!(b[0].is_zero() && b[1].is_zero() && !b[2].is_zero());

        let tri = defining_polynomial(&arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(syzygy_dimension(&tri, 0, false, lim()).unwrap().dimension, 0);
        let s1 = syzygy_dimension(&tri, 1, true, lim()).unwrap();
        assert_eq!(s1.dimension, 2);
        for s in s1.basis.unwrap() {
            assert!(apply_syzygy(&tri, &s).is_zero());
        }
    }

    #[test]
    fn mdr_examples() {
        let pencil = defining_polynomial(&arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]));
        assert_eq!(mdr(&pencil, lim()).unwrap(), 0);
        let tri = defining_polynomial(&arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(mdr(&tri, lim()).unwrap(), 1);
        let generic = defining_polynomial(&arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]));
        assert_eq!(mdr(&generic, lim()).unwrap(), 2);
    }

    #[test]
    fn exact_freeness() {
        let tri = is_free_exact(&arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), lim()).unwrap();
        assert!(tri.free);
        assert_eq!(tri.exponents, Some(ExponentPair::new(1, 1)));
        let np = is_free_exact(&arr(&[[1, 0, 0], [0, 1, 0], [1, -1, 0], [1, 1, 0], [0, 0, 1]]), lim()).unwrap();
        assert!(np.free);
        assert_eq!(np.exponents, Some(ExponentPair::new(1, 3)));
        assert_eq!(np.tau, 13);
        let generic = is_free_exact(&arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]), lim()).unwrap();
        assert!(!generic.free);
        assert!(generic.note.is_some());
    }

    #[test]
    fn caps_are_enforced() {
        let lines: Vec<[i64; 3]> = (0..5).map(|t| [1, t, t * t]).collect();
        let err = is_free_exact(&arr(&lines), SyzygyLimits { max_degree: 4 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }
}
