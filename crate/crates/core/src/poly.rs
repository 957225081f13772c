//! Sparse multivariate polynomials over the rationals in a fixed number of
//! chart variables.
//!
//! This is the arithmetic engine underneath [`BaryPoly`](crate::BaryPoly),
//! the product-space forms used by the blending operators, and the Poincaré
//! line homotopy (which adjoins a homotopy parameter as an extra variable).
//! Variables are anonymous; callers decide what each index means.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Maximum number of chart variables a [`Poly`] may carry.
pub const MAX_VARS: usize = 12;

/// Exponent vector of a monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub [u8; MAX_VARS]);

impl Mono {
    pub fn unit(var: usize) -> Self {
        let mut e = [0u8; MAX_VARS];
        e[var] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, var: usize) -> u8 {
        self.0[var]
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Mono(e)
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= *b;
        }
        Mono(e)
    }

    /// Graded lexicographic order, used to pick leading terms in division.
    fn grlex_cmp(&self, other: &Mono) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let used: Vec<u8> = self.0.iter().copied().collect();
        write!(f, "{used:?}")
    }
}

/// A polynomial in `nvars` chart variables with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many polynomial variables: {nvars}");
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Mono::default(), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Mono::unit(i), Rational::one());
        p
    }

    /// `1 - Σ_i x_i`, the eliminated anchor coordinate of a chart.
    pub fn anchor(nvars: usize) -> Self {
        let mut p = Self::one(nvars);
        for i in 0..nvars {
            p.add_term(Mono::unit(i), -Rational::one());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::default()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.0[self.nvars..].iter().all(|&e| e == 0));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::total_degree).max()
    }

    fn check_same(&self, other: &Poly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable counts"
        );
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        self.check_same(other);
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Rational) {
        self.check_same(other);
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rational) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert!(point.len() >= self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0[..self.nvars].iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes `args[i]` for variable `i`; all arguments share one
    /// variable count, which becomes the variable count of the result.
    pub fn compose(&self, args: &[Poly]) -> Poly {
        assert_eq!(args.len(), self.nvars, "compose: wrong argument count");
        let target = args.first().map(|a| a.nvars);
        let target = match target {
            Some(t) => t,
            None => {
                // no variables: the polynomial is a constant
                return self.clone();
            }
        };
        let mut powers: Vec<Vec<Poly>> = args.iter().map(|a| vec![Poly::one(a.nvars), a.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0[..self.nvars].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&args[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Re-indexes variables: variable `i` of `self` becomes variable `map[i]`
    /// of a polynomial in `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = [0u8; MAX_VARS];
            for (i, &x) in m.0[..self.nvars].iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut mm = *m;
            mm.0[var] -= 1;
            out.add_term(mm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// Exact quotient `self / divisor`; fails with [`Error::NotDivisible`]
    /// when the division leaves a remainder.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Poly> {
        self.check_same(divisor);
        let (lm, lc) = match divisor.leading() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(Error::NotDivisible("division by the zero polynomial".into())),
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&m) {
                return Err(Error::NotDivisible(format!(
                    "leading monomial {m:?} is not a multiple of {lm:?}"
                )));
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            let step = divisor.mul_mono(&qm, &-qc.clone());
            rem.add_assign_ref(&step);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Integrates the variables `fiber` (given in order `t_1..t_s`) over the
    /// standard simplex `{t_i >= 0, Σ t_i <= 1}`, leaving a polynomial in
    /// the remaining variables (variable indices unchanged).
    pub fn integrate_simplex(&self, fiber: &[usize]) -> Poly {
        let s = fiber.len() as u32;
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut num = BigInt::one();
            let mut total = 0u32;
            for &v in fiber {
                let e = m.0[v] as u32;
                num *= factorial(e);
                total += e;
                rest.0[v] = 0;
            }
            let den = factorial(s + total);
            out.add_term(rest, c * Rational::new(num, den));
        }
        out
    }

    /// Integrates variable `var` over `[0, 1]`.
    pub fn integrate_unit(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut rest = *m;
            rest.0[var] = 0;
            out.add_term(rest, c / Rational::from_integer(BigInt::from(e as u32 + 1)));
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let vars: Vec<String> = (0..self.nvars)
                .filter(|&i| m.0[i] > 0)
                .map(|i| {
                    if m.0[i] == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{}", m.0[i])
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
