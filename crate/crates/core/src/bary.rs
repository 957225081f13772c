//! Polynomials in barycentric coordinates.
//!
//! A [`BaryPoly`] lives on the simplex spanned by a label set `V`. Because
//! the coordinates satisfy `Σ_v λ_v = 1`, a barycentric expression has many
//! spellings; we store the one obtained by eliminating the smallest label
//! (the *anchor*), which makes equality and degree decidable.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, MAX_VARS};
use crate::Rational;

/// Degree of a polynomial, with a distinguished value for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn from_option(d: Option<u32>) -> Self {
        d.map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// `true` when the degree is at most `r` (always true for zero).
    pub fn at_most(self, r: u32) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => d <= r,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

pub(crate) fn check_labels(labels: &[usize]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::DimensionMismatch("empty vertex set".into()));
    }
    if !labels.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidIndexSet(format!(
            "vertex labels {labels:?} must be strictly increasing"
        )));
    }
    if labels.len() > MAX_VARS {
        return Err(Error::DimensionMismatch(format!(
            "simplex with {} vertices exceeds the supported size",
            labels.len()
        )));
    }
    Ok(())
}

/// Chart variable index of `label` on the simplex `labels`, or `None` for
/// the anchor.
pub(crate) fn chart_var(labels: &[usize], label: usize) -> Option<usize> {
    let pos = labels.iter().position(|&l| l == label)?;
    if pos == 0 {
        None
    } else {
        Some(pos - 1)
    }
}

/// `λ_label` written in the chart of `labels`.
pub(crate) fn coordinate_poly(labels: &[usize], label: usize) -> Poly {
    let nvars = labels.len() - 1;
    match chart_var(labels, label) {
        Some(i) => Poly::var(nvars, i),
        None if labels[0] == label => Poly::anchor(nvars),
        None => Poly::zero(nvars),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BaryPoly {
    labels: Vec<usize>,
    poly: Poly,
}

impl BaryPoly {
    pub(crate) fn from_chart(labels: Vec<usize>, poly: Poly) -> Self {
        debug_assert_eq!(poly.nvars() + 1, labels.len());
        BaryPoly { labels, poly }
    }

    pub fn zero(labels: &[usize]) -> Result<Self> {
        check_labels(labels)?;
        Ok(BaryPoly {
            labels: labels.to_vec(),
            poly: Poly::zero(labels.len() - 1),
        })
    }

    pub fn constant(labels: &[usize], c: Rational) -> Result<Self> {
        check_labels(labels)?;
        Ok(BaryPoly {
            labels: labels.to_vec(),
            poly: Poly::constant(labels.len() - 1, c),
        })
    }

    /// The barycentric coordinate `λ_v`. Labels outside `V` are rejected.
    pub fn lambda(labels: &[usize], v: usize) -> Result<Self> {
        check_labels(labels)?;
        if !labels.contains(&v) {
            return Err(Error::Parse(format!("label {v} not in {labels:?}")));
        }
        Ok(BaryPoly {
            labels: labels.to_vec(),
            poly: coordinate_poly(labels, v),
        })
    }

    /// `λ_S = Σ_{v∈S} λ_v`.
    pub fn lambda_sum(labels: &[usize], set: &[usize]) -> Result<Self> {
        let mut acc = BaryPoly::zero(labels)?;
        for &v in set {
            acc = acc.add(&BaryPoly::lambda(labels, v)?)?;
        }
        Ok(acc)
    }

    /// Canonicalises a symmetric expression `Σ c·Π_v λ_v^{α_v}` whose
    /// exponent vectors are aligned with `labels`.
    pub fn from_symmetric(labels: &[usize], terms: &[(Vec<u32>, Rational)]) -> Result<Self> {
        check_labels(labels)?;
        let nsym = labels.len();
        let mut sym = Poly::zero(nsym);
        for (alpha, c) in terms {
            if alpha.len() != nsym {
                return Err(Error::Parse(format!(
                    "exponent vector {alpha:?} does not match vertices {labels:?}"
                )));
            }
            let mut e = [0u8; MAX_VARS];
            for (i, &a) in alpha.iter().enumerate() {
                e[i] = u8::try_from(a).map_err(|_| Error::Parse(format!("exponent {a} too large")))?;
            }
            sym.add_term(Mono(e), c.clone());
        }
        let args: Vec<Poly> = labels.iter().map(|&l| coordinate_poly(labels, l)).collect();
        Ok(BaryPoly {
            labels: labels.to_vec(),
            poly: sym.compose(&args),
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn anchor(&self) -> usize {
        self.labels[0]
    }

    /// Polynomial in the chart variables `λ_v`, `v ∈ V \ {anchor}`.
    pub fn chart(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Degree {
        Degree::from_option(self.poly.degree())
    }

    fn same_simplex(&self, other: &BaryPoly) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::DimensionMismatch(format!(
                "polynomials on {:?} and {:?}",
                self.labels, other.labels
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &BaryPoly) -> Result<BaryPoly> {
        self.same_simplex(other)?;
        let mut p = self.poly.clone();
        p.add_assign_ref(&other.poly);
        Ok(BaryPoly::from_chart(self.labels.clone(), p))
    }

    pub fn sub(&self, other: &BaryPoly) -> Result<BaryPoly> {
        self.same_simplex(other)?;
        let mut p = self.poly.clone();
        p.add_scaled(&other.poly, &-Rational::one());
        Ok(BaryPoly::from_chart(self.labels.clone(), p))
    }

    pub fn mul(&self, other: &BaryPoly) -> Result<BaryPoly> {
        self.same_simplex(other)?;
        Ok(BaryPoly::from_chart(self.labels.clone(), self.poly.mul(&other.poly)))
    }

    pub fn scale(&self, s: &Rational) -> BaryPoly {
        BaryPoly::from_chart(self.labels.clone(), self.poly.scale(s))
    }

    pub fn pow(&self, e: u32) -> BaryPoly {
        BaryPoly::from_chart(self.labels.clone(), self.poly.pow(e))
    }

    /// Exact quotient; [`Error::NotDivisible`] when none exists.
    pub fn divide_exact(&self, divisor: &BaryPoly) -> Result<BaryPoly> {
        self.same_simplex(divisor)?;
        if divisor.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        Ok(BaryPoly::from_chart(
            self.labels.clone(),
            self.poly.divide_exact(&divisor.poly)?,
        ))
    }

    pub fn eval(&self, point: &RationalPoint) -> Result<Rational> {
        if point.labels() != self.labels.as_slice() {
            return Err(Error::DimensionMismatch(format!(
                "point on {:?}, polynomial on {:?}",
                point.labels(),
                self.labels
            )));
        }
        Ok(self.poly.eval(&point.coords()[1..]))
    }

    /// Symmetric spelling of the canonical form: exponent vectors over all
    /// of `V` with a zero anchor exponent.
    pub fn symmetric_terms(&self) -> Vec<(Vec<u32>, Rational)> {
        self.poly
            .terms()
            .map(|(m, c)| {
                let mut alpha = vec![0u32];
                alpha.extend((0..self.labels.len() - 1).map(|i| m.exp(i) as u32));
                (alpha, c.clone())
            })
            .collect()
    }
}

impl fmt::Debug for BaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<u32>, Rational)> = self.symmetric_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (alpha, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let factors: Vec<String> = alpha
                .iter()
                .zip(&self.labels)
                .filter(|(e, _)| **e > 0)
                .map(|(e, l)| if *e == 1 { format!("λ{l}") } else { format!("λ{l}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("·"))?;
            } else {
                write!(f, "{a}·{}", factors.join("·"))?;
            }
        }
        Ok(())
    }
}

/// An exact point of a labelled simplex in barycentric coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoint {
    labels: Vec<usize>,
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(labels: &[usize], coords: Vec<Rational>) -> Result<Self> {
        check_labels(labels)?;
        if coords.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for {} vertices",
                coords.len(),
                labels.len()
            )));
        }
        let sum: Rational = coords.iter().cloned().sum();
        if !sum.is_one() {
            return Err(Error::OutOfDomain(format!(
                "barycentric coordinates sum to {sum}, not 1"
            )));
        }
        Ok(RationalPoint {
            labels: labels.to_vec(),
            coords,
        })
    }

    pub fn barycenter(labels: &[usize]) -> Result<Self> {
        let c = Rational::new(BigInt::one(), BigInt::from(labels.len()));
        RationalPoint::new(labels, vec![c; labels.len()])
    }

    pub fn vertex(labels: &[usize], v: usize) -> Result<Self> {
        let coords = labels
            .iter()
            .map(|&l| if l == v { Rational::one() } else { Rational::zero() })
            .collect();
        RationalPoint::new(labels, coords)
    }

    /// Parses `"p/q,p/q,..."`.
    pub fn parse(labels: &[usize], text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        RationalPoint::new(labels, coords)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, label: usize) -> Rational {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| self.coords[i].clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Chart coordinates (anchor dropped).
    pub fn chart(&self) -> &[Rational] {
        &self.coords[1..]
    }

    pub fn in_closed_simplex(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    Rational::from_str(text.trim()).map_err(|e| Error::Parse(format!("bad rational {text:?}: {e}")))
}

/// Formats a rational as `"num/den"`, keeping the `/1` for integers.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn sym(labels: &[usize], terms: &[(&[u32], i64)]) -> BaryPoly {
        let t: Vec<(Vec<u32>, Rational)> = terms.iter().map(|(a, c)| (a.to_vec(), q(*c, 1))).collect();
        BaryPoly::from_symmetric(labels, &t).unwrap()
    }

    #[test]
    fn partition_of_unity() {
        let p = sym(&[0, 1, 2], &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert_eq!(p, BaryPoly::constant(&[0, 1, 2], q(1, 1)).unwrap());
        assert_eq!(p.degree(), Degree::Finite(0));
    }

    #[test]
    fn anchor_substitution() {
        let p = sym(&[0, 1], &[(&[1, 0], 1)]);
        let one = BaryPoly::constant(&[0, 1], q(1, 1)).unwrap();
        assert_eq!(p, one.sub(&BaryPoly::lambda(&[0, 1], 1).unwrap()).unwrap());
    }

    #[test]
    fn square_monomial() {
        let p = sym(&[0, 1, 2], &[(&[0, 2, 0], 1)]);
        assert_eq!(p.degree(), Degree::Finite(2));
        assert_eq!(p.chart().num_terms(), 1);
    }

    #[test]
    fn rejects_foreign_labels() {
        assert!(matches!(BaryPoly::lambda(&[0, 1], 2), Err(Error::Parse(_))));
        let bad = BaryPoly::from_symmetric(&[0, 1], &[(vec![1, 0, 0], q(1, 1))]);
        assert!(matches!(bad, Err(Error::Parse(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let v = [0, 1, 2];
        let l1 = BaryPoly::lambda(&v, 1).unwrap();
        let l2 = BaryPoly::lambda(&v, 2).unwrap();
        let one_minus = BaryPoly::constant(&v, q(1, 1)).unwrap().sub(&l1).unwrap();
        assert_eq!(one_minus.add(&l1).unwrap(), BaryPoly::constant(&v, q(1, 1)).unwrap());
        assert_eq!(l1.mul(&l2).unwrap(), sym(&v, &[(&[0, 1, 1], 1)]));
        assert_eq!(l1.scale(&q(1, 2)), sym(&v, &[(&[0, 1, 0], 1)]).scale(&q(1, 2)));
        let other = BaryPoly::lambda(&[0, 1], 1).unwrap();
        assert!(matches!(l1.add(&other), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn evaluation_examples() {
        let v = [0, 1, 2];
        let bc = RationalPoint::barycenter(&v).unwrap();
        assert_eq!(BaryPoly::lambda(&v, 1).unwrap().eval(&bc).unwrap(), q(1, 3));
        assert_eq!(BaryPoly::constant(&v, q(1, 1)).unwrap().eval(&bc).unwrap(), q(1, 1));
        let p = RationalPoint::new(&v, vec![q(1, 2), q(0, 1), q(1, 2)]).unwrap();
        let l0l2 = sym(&v, &[(&[1, 0, 1], 1)]);
        assert_eq!(l0l2.eval(&p).unwrap(), q(1, 4));
        assert!(matches!(
            RationalPoint::new(&v, vec![q(1, 2), q(1, 2), q(1, 2)]),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn division_examples() {
        let v = [0, 1, 2];
        let p = sym(&v, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1)]);
        let d = sym(&v, &[(&[1, 0, 0], 1), (&[0, 0, 1], 1)]);
        assert_eq!(p.divide_exact(&d).unwrap(), BaryPoly::lambda(&v, 1).unwrap());
        let l1 = BaryPoly::lambda(&v, 1).unwrap();
        let l2 = BaryPoly::lambda(&v, 2).unwrap();
        assert_eq!(l1.divide_exact(&l1).unwrap(), BaryPoly::constant(&v, q(1, 1)).unwrap());
        assert!(matches!(l1.divide_exact(&l2), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn degree_examples() {
        let v = [0, 1, 2];
        assert_eq!(BaryPoly::lambda(&v, 0).unwrap().degree(), Degree::Finite(1));
        assert_eq!(sym(&v, &[(&[0, 2, 1], 1)]).degree(), Degree::Finite(3));
        assert_eq!(BaryPoly::zero(&v).unwrap().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(format_rational(&q(1, 1)), "1/1");
        assert_eq!(format_rational(&q(-2, 6)), "-1/3");
        assert!(parse_rational("x").is_err());
    }
}
