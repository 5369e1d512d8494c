//! Homogeneous polynomials in `x, y, z` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Exponent = [u32; 3];

/// Monomials of total degree `n` in degree-lexicographic order
/// (`x^n, x^(n-1) y, x^(n-1) z, ..., z^n`).
pub fn monomials(n: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(((n + 1) * (n + 2) / 2) as usize);
    for a in (0..=n).rev() {
        for b in (0..=n - a).rev() {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

/// Position of `e` within [`monomials`] of its degree.
pub fn monomial_index(e: Exponent) -> usize {
    let n = e[0] + e[1] + e[2];
    // monomials with first exponent > a come first
    let k = n - e[0];
    let before: u32 = (0..k).map(|j| j + 1).sum();
    (before + (k - e[1])) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    degree: u32,
    terms: BTreeMap<Exponent, BigRational>,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero(0);
        p.add_term([0, 0, 0], c);
        p
    }

    /// `a x + b y + c z`.
    pub fn linear(coeffs: &[BigRational; 3]) -> Self {
        let mut p = Self::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exponent, BigRational)>) -> Self {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: Exponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: BigRational) {
        assert_eq!(
            e[0] + e[1] + e[2],
            self.degree,
            "exponent {e:?} does not have degree {}",
            self.degree
        );
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Partial derivative with respect to variable `var` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    /// Multiplies by a nonzero rational so that the coefficients become coprime
    /// integers with the leading (degree-lex first) coefficient positive.
    pub fn primitive(&self) -> Self {
        // leading term: first in degree-lex order, i.e. largest exponent vector
        let Some(first) = self.terms.values().next_back() else {
            return self.clone();
        };
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm / c.denom()))));
        let mut scale = BigRational::new(lcm, gcd);
        if first.is_negative() {
            scale = -scale;
        }
        Self {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c * &scale))
                .collect(),
        }
    }

    /// Integer coefficient vector over [`monomials`] of the polynomial's degree.
    /// Panics if some coefficient is not integral.
    pub fn integer_coefficients(&self) -> Vec<(usize, BigInt)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                assert!(c.is_integer(), "non-integral coefficient {c}");
                (monomial_index(*e), c.to_integer())
            })
            .collect()
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for e in monomials(self.degree) {
            let Some(c) = self.terms.get(&e) else { continue };
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let is_const = self.degree == 0;
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
            }
            for (name, &k) in ["x", "y", "z"].iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}
