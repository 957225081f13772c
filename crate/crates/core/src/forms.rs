//! Polynomial differential forms on a labelled simplex.
//!
//! A [`PolyForm`] on the vertex set `V` is stored in the anchor chart: its
//! alternating components use only `dλ_v` for `v ∈ V \ {anchor}`, with
//! `dλ_anchor = -Σ dλ_v` eliminated on construction. Wedge, exterior
//! derivative, contraction, trace and pullback all act on that chart form.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bary::{check_labels, BaryPoly, Degree, RationalPoint};
use crate::chart_form::{mask_bits, masks_of_size, ChartForm};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, SparseVec};
use crate::poly::{Mono, Poly, MAX_VARS};
use crate::Rational;

/// Full (`P_r Λ^k`) or trimmed (`P_r^- Λ^k`) polynomial form spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Full,
    Trimmed,
}

impl Family {
    pub const BOTH: [Family; 2] = [Family::Full, Family::Trimmed];

    pub fn name(self) -> &'static str {
        match self {
            Family::Full => "full",
            Family::Trimmed => "trimmed",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Family::Full),
            "trimmed" => Ok(Family::Trimmed),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A direction `Σ_v c_v x_v` with `Σ_v c_v = 0`; `dλ_w` applied to it is
/// `c_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentVector {
    labels: Vec<usize>,
    coeffs: Vec<Rational>,
}

impl TangentVector {
    pub fn new(labels: &[usize], coeffs: Vec<Rational>) -> Result<Self> {
        check_labels(labels)?;
        if coeffs.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} vertices",
                coeffs.len(),
                labels.len()
            )));
        }
        let sum: Rational = coeffs.iter().cloned().sum();
        if !sum.is_zero() {
            return Err(Error::OutOfDomain(format!(
                "tangent vector coefficients sum to {sum}, not 0"
            )));
        }
        Ok(TangentVector {
            labels: labels.to_vec(),
            coeffs,
        })
    }

    /// `x_to - x_from`.
    pub fn edge(labels: &[usize], from: usize, to: usize) -> Result<Self> {
        if !labels.contains(&from) || !labels.contains(&to) {
            return Err(Error::InvalidIndexSet(format!(
                "edge {from}->{to} not in {labels:?}"
            )));
        }
        let coeffs = labels
            .iter()
            .map(|&l| {
                let mut c = Rational::zero();
                if l == to {
                    c += Rational::one();
                }
                if l == from {
                    c -= Rational::one();
                }
                c
            })
            .collect();
        TangentVector::new(labels, coeffs)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `dλ_label(self)`.
    pub fn component(&self, label: usize) -> Rational {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// A map between labelled simplices given by its target barycentric
/// coordinates, each a polynomial of degree at most one on the source.
#[derive(Clone, Debug)]
pub struct AffineMap {
    source: Vec<usize>,
    target: Vec<usize>,
    coords: Vec<BaryPoly>,
}

impl AffineMap {
    pub fn new(source: &[usize], target: &[usize], coords: Vec<BaryPoly>) -> Result<Self> {
        check_labels(source)?;
        check_labels(target)?;
        if coords.len() != target.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinate polynomials for {} target vertices",
                coords.len(),
                target.len()
            )));
        }
        let mut sum = BaryPoly::zero(source)?;
        for c in &coords {
            if c.labels() != source {
                return Err(Error::DimensionMismatch(format!(
                    "coordinate polynomial on {:?}, source is {:?}",
                    c.labels(),
                    source
                )));
            }
            if !c.degree().at_most(1) {
                return Err(Error::Parse(format!("coordinate {c} is not affine")));
            }
            sum = sum.add(c)?;
        }
        if sum != BaryPoly::constant(source, Rational::one())? {
            return Err(Error::Parse(format!(
                "target coordinates sum to {sum}, not 1"
            )));
        }
        // affine, so nonnegativity on the source reduces to its vertices
        for &v in source {
            let p = RationalPoint::vertex(source, v)?;
            for c in &coords {
                if c.eval(&p)?.is_negative() {
                    return Err(Error::OutOfDomain(format!(
                        "map sends vertex {v} outside the target simplex"
                    )));
                }
            }
        }
        Ok(AffineMap {
            source: source.to_vec(),
            target: target.to_vec(),
            coords,
        })
    }

    pub fn identity(labels: &[usize]) -> Result<Self> {
        let coords = labels
            .iter()
            .map(|&l| BaryPoly::lambda(labels, l))
            .collect::<Result<Vec<_>>>()?;
        AffineMap::new(labels, labels, coords)
    }

    /// Inclusion of the face `face` into the simplex `labels`.
    pub fn inclusion(face: &[usize], labels: &[usize]) -> Result<Self> {
        let coords = labels
            .iter()
            .map(|&l| {
                if face.contains(&l) {
                    BaryPoly::lambda(face, l)
                } else {
                    BaryPoly::zero(face)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        AffineMap::new(face, labels, coords)
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn coords(&self) -> &[BaryPoly] {
        &self.coords
    }

    /// Chart substitution: target chart coordinates as source chart
    /// polynomials.
    fn chart_substitution(&self) -> Vec<Poly> {
        self.coords[1..].iter().map(|c| c.chart().clone()).collect()
    }

    pub fn apply(&self, x: &RationalPoint) -> Result<RationalPoint> {
        let coords = self.coords.iter().map(|c| c.eval(x)).collect::<Result<Vec<_>>>()?;
        RationalPoint::new(&self.target, coords)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    labels: Vec<usize>,
    form: ChartForm,
}

impl PolyForm {
    pub(crate) fn from_chart(labels: Vec<usize>, form: ChartForm) -> Self {
        debug_assert_eq!(form.nvars() + 1, labels.len());
        PolyForm { labels, form }
    }

    pub fn zero(labels: &[usize], k: usize) -> Result<Self> {
        check_labels(labels)?;
        Ok(PolyForm {
            labels: labels.to_vec(),
            form: ChartForm::zero(labels.len() - 1, k),
        })
    }

    pub fn scalar(p: BaryPoly) -> Self {
        PolyForm {
            labels: p.labels().to_vec(),
            form: ChartForm::scalar(p.chart().clone()),
        }
    }

    /// `dλ_v`, with the anchor differential expanded.
    pub fn dlambda(labels: &[usize], v: usize) -> Result<Self> {
        Ok(PolyForm::scalar(BaryPoly::lambda(labels, v)?).exterior_derivative())
    }

    /// `Σ coeff · dλ_{l_1} ∧ ... ∧ dλ_{l_k}` for arbitrary label lists
    /// (anchor allowed, any order).
    pub fn from_terms(labels: &[usize], k: usize, terms: &[(Vec<usize>, BaryPoly)]) -> Result<Self> {
        let mut acc = PolyForm::zero(labels, k)?;
        for (dl, coeff) in terms {
            if dl.len() != k {
                return Err(Error::DegreeMismatch(format!(
                    "term with {} differentials in a {k}-form",
                    dl.len()
                )));
            }
            let mut t = PolyForm::scalar(coeff.clone());
            if t.labels != labels {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient on {:?}, form on {labels:?}",
                    coeff.labels()
                )));
            }
            for &l in dl {
                t = t.wedge(&PolyForm::dlambda(labels, l)?)?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Dimension of the carrying simplex.
    pub fn dim(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn k(&self) -> usize {
        self.form.degree()
    }

    pub fn chart(&self) -> &ChartForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// Components as (increasing non-anchor differential labels,
    /// coefficient).
    pub fn components(&self) -> Vec<(Vec<usize>, BaryPoly)> {
        self.form
            .components()
            .map(|(m, p)| {
                let dl = mask_bits(m).into_iter().map(|i| self.labels[i + 1]).collect();
                (dl, BaryPoly::from_chart(self.labels.clone(), p.clone()))
            })
            .collect()
    }

    /// Largest coefficient degree.
    pub fn poly_degree(&self) -> Degree {
        Degree::from_option(self.form.poly_degree())
    }

    fn same_simplex(&self, other: &PolyForm) -> Result<()> {
        if self.labels != other.labels {
            return Err(Error::DimensionMismatch(format!(
                "forms on {:?} and {:?}",
                self.labels, other.labels
            )));
        }
        Ok(())
    }

    fn same_degree(&self, other: &PolyForm) -> Result<()> {
        self.same_simplex(other)?;
        if self.k() != other.k() {
            return Err(Error::DegreeMismatch(format!(
                "adding a {}-form and a {}-form",
                self.k(),
                other.k()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm> {
        self.same_degree(other)?;
        let mut f = self.form.clone();
        f.add_assign_ref(&other.form);
        Ok(PolyForm::from_chart(self.labels.clone(), f))
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm> {
        self.same_degree(other)?;
        let mut f = self.form.clone();
        f.add_scaled(&other.form, &-Rational::one());
        Ok(PolyForm::from_chart(self.labels.clone(), f))
    }

    pub fn add_scaled(&mut self, other: &PolyForm, s: &Rational) -> Result<()> {
        self.same_degree(other)?;
        self.form.add_scaled(&other.form, s);
        Ok(())
    }

    pub fn scale(&self, s: &Rational) -> PolyForm {
        PolyForm::from_chart(self.labels.clone(), self.form.scale(s))
    }

    pub fn mul_poly(&self, p: &BaryPoly) -> Result<PolyForm> {
        if p.labels() != self.labels.as_slice() {
            return Err(Error::DimensionMismatch("scalar on a different simplex".into()));
        }
        Ok(PolyForm::from_chart(self.labels.clone(), self.form.mul_poly(p.chart())))
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        self.same_simplex(other)?;
        Ok(PolyForm::from_chart(self.labels.clone(), self.form.wedge(&other.form)))
    }

    pub fn exterior_derivative(&self) -> PolyForm {
        PolyForm::from_chart(self.labels.clone(), self.form.exterior_derivative())
    }

    /// Contraction with a constant vector field.
    pub fn contract(&self, t: &TangentVector) -> Result<PolyForm> {
        if self.k() == 0 {
            return Err(Error::DegreeMismatch("cannot contract a 0-form".into()));
        }
        if t.labels() != self.labels.as_slice() {
            return Err(Error::DimensionMismatch("vector on a different simplex".into()));
        }
        let n = self.dim();
        let field: Vec<Poly> = self.labels[1..]
            .iter()
            .map(|&l| Poly::constant(n, t.component(l)))
            .collect();
        Ok(PolyForm::from_chart(self.labels.clone(), self.form.contract(&field)))
    }

    /// Contraction with the Koszul field `x - a`.
    pub fn contract_koszul(&self, a: &RationalPoint) -> Result<PolyForm> {
        if self.k() == 0 {
            return Err(Error::DegreeMismatch("cannot contract a 0-form".into()));
        }
        if a.labels() != self.labels.as_slice() {
            return Err(Error::DimensionMismatch("base point on a different simplex".into()));
        }
        let n = self.dim();
        let field: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = Poly::var(n, i);
                p.add_term(Mono::default(), -a.chart()[i].clone());
                p
            })
            .collect();
        Ok(PolyForm::from_chart(self.labels.clone(), self.form.contract(&field)))
    }

    /// Contraction with `x - x_anchor`, whose chart components are the chart
    /// coordinates themselves.
    pub(crate) fn contract_koszul_at_anchor(&self) -> ChartForm {
        let n = self.dim();
        let field: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        self.form.contract(&field)
    }

    pub fn pullback_affine(&self, map: &AffineMap) -> Result<PolyForm> {
        if map.target() != self.labels.as_slice() {
            return Err(Error::DimensionMismatch(format!(
                "map targets {:?}, form lives on {:?}",
                map.target(),
                self.labels
            )));
        }
        let pulled = self.form.pullback_into(&map.chart_substitution(), map.source().len() - 1);
        Ok(PolyForm::from_chart(map.source().to_vec(), pulled))
    }

    /// Pullback along the inclusion of the face `face`.
    pub fn trace(&self, face: &[usize]) -> Result<PolyForm> {
        if face.is_empty() || !face.iter().all(|l| self.labels.contains(l)) {
            return Err(Error::InvalidIndexSet(format!(
                "{face:?} is not a face of {:?}",
                self.labels
            )));
        }
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        self.pullback_affine(&AffineMap::inclusion(&sorted, &self.labels)?)
    }

    /// `∫_{[x_J]} u`, with the orientation given by the order of `J`.
    pub fn integrate_over(&self, simplex: &[usize]) -> Result<Rational> {
        if simplex.len() != self.k() + 1 {
            return Err(Error::DegreeMismatch(format!(
                "cannot integrate a {}-form over a {}-simplex",
                self.k(),
                simplex.len() as isize - 1
            )));
        }
        if !simplex.iter().all(|l| self.labels.contains(l)) {
            return Err(Error::InvalidIndexSet(format!(
                "{simplex:?} is not a face of {:?}",
                self.labels
            )));
        }
        for (i, l) in simplex.iter().enumerate() {
            if simplex[..i].contains(l) {
                return Err(Error::InvalidIndexSet(format!("repeated vertex {l} in {simplex:?}")));
            }
        }
        let s = simplex.len() - 1;
        // y(t) = Σ_a t_a x_{j_a}, t_0 = 1 - Σ t
        let subst: Vec<Poly> = self.labels[1..]
            .iter()
            .map(|l| match simplex.iter().position(|j| j == l) {
                Some(0) => Poly::anchor(s),
                Some(a) => Poly::var(s, a - 1),
                None => Poly::zero(s),
            })
            .collect();
        let top = if subst.is_empty() {
            // 0-form on a point
            self.form.clone()
        } else {
            self.form.pullback(&subst)
        };
        let full_mask = if s == 0 { 0 } else { (1u32 << s) - 1 };
        let coeff = match top.component(full_mask) {
            Some(c) => c.clone(),
            None => return Ok(Rational::zero()),
        };
        let fiber: Vec<usize> = (0..s).collect();
        Ok(coeff
            .integrate_simplex(&fiber)
            .as_constant()
            .expect("all variables integrated"))
    }

    /// Exact value `u_x(v_1, ..., v_k)`.
    pub fn eval(&self, x: &RationalPoint, vs: &[TangentVector]) -> Result<Rational> {
        if x.labels() != self.labels.as_slice() {
            return Err(Error::DimensionMismatch("point on a different simplex".into()));
        }
        if !x.in_closed_simplex() {
            return Err(Error::OutOfDomain("point outside the simplex".into()));
        }
        if vs.len() != self.k() {
            return Err(Error::DegreeMismatch(format!(
                "{} vectors for a {}-form",
                vs.len(),
                self.k()
            )));
        }
        for v in vs {
            if v.labels() != self.labels.as_slice() {
                return Err(Error::DimensionMismatch("vector on a different simplex".into()));
            }
        }
        let values = self.form.eval(x.chart());
        let mut total = Rational::zero();
        for (m, c) in values {
            let rows: Vec<usize> = mask_bits(m).into_iter().map(|i| self.labels[i + 1]).collect();
            let matrix: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&l| vs.iter().map(|v| v.component(l)).collect())
                .collect();
            total += c * determinant(matrix);
        }
        Ok(total)
    }

    /// Pointwise value as an algebraic form: chart mask -> coefficient.
    pub(crate) fn eval_alt(&self, x: &RationalPoint) -> std::collections::BTreeMap<u32, Rational> {
        self.form.eval(x.chart())
    }

    /// Membership in `P_r Λ^k` or `P_r^- Λ^k` on the carrying simplex.
    pub fn is_member(&self, family: Family, r: u32) -> bool {
        if !self.poly_degree().at_most(r) {
            return false;
        }
        match family {
            Family::Full => true,
            Family::Trimmed => {
                self.k() == 0
                    || Degree::from_option(self.contract_koszul_at_anchor().poly_degree()).at_most(r)
            }
        }
    }

    /// Exact division of every coefficient.
    pub fn divide_exact(&self, divisor: &BaryPoly) -> Result<PolyForm> {
        if divisor.labels() != self.labels.as_slice() {
            return Err(Error::DimensionMismatch("divisor on a different simplex".into()));
        }
        let f = self.form.try_map_coefficients(|p| p.divide_exact(divisor.chart()))?;
        Ok(PolyForm::from_chart(self.labels.clone(), f))
    }

    /// Coefficient vector keyed by (differential mask, monomial).
    pub(crate) fn coefficient_vector(&self) -> SparseVec<(u32, Mono)> {
        let mut v = SparseVec::new();
        for (m, p) in self.form.components() {
            for (mono, c) in p.terms() {
                v.insert((m, *mono), c.clone());
            }
        }
        v
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        if comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = comps
            .iter()
            .map(|(dl, p)| {
                let d: Vec<String> = dl.iter().map(|l| format!("dλ{l}")).collect();
                if d.is_empty() {
                    format!("{p}")
                } else {
                    format!("({p}) {}", d.join("∧"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// `φ_J = Σ_i (-1)^i λ_{j_i} dλ_{j_0} ∧ ... (omit j_i) ... ∧ dλ_{j_s}` on the
/// simplex `labels`; the order of `J` is respected.
pub fn whitney(labels: &[usize], set: &[usize]) -> Result<PolyForm> {
    check_labels(labels)?;
    if set.is_empty() {
        return Err(Error::InvalidIndexSet("Whitney form of an empty set".into()));
    }
    for (i, l) in set.iter().enumerate() {
        if !labels.contains(l) || set[..i].contains(l) {
            return Err(Error::InvalidIndexSet(format!(
                "{set:?} is not a set of distinct labels of {labels:?}"
            )));
        }
    }
    let k = set.len() - 1;
    let mut acc = PolyForm::zero(labels, k)?;
    for i in 0..set.len() {
        let rest: Vec<usize> = set.iter().enumerate().filter(|(a, _)| *a != i).map(|(_, &l)| l).collect();
        let mut term = PolyForm::scalar(BaryPoly::lambda(labels, set[i])?);
        for &l in &rest {
            term = term.wedge(&PolyForm::dlambda(labels, l)?)?;
        }
        if i % 2 == 0 {
            acc = acc.add(&term)?;
        } else {
            acc = acc.sub(&term)?;
        }
    }
    Ok(acc)
}

/// `(δφ)_J = Σ_i (-1)^i φ_{J(î)}`; requires `|J| >= 2`.
pub fn delta_whitney(labels: &[usize], set: &[usize]) -> Result<PolyForm> {
    if set.len() < 2 {
        return Err(Error::InvalidIndexSet(format!(
            "(δφ)_J needs at least two labels, got {set:?}"
        )));
    }
    let mut acc = PolyForm::zero(labels, set.len() - 2)?;
    for i in 0..set.len() {
        let rest: Vec<usize> = set.iter().enumerate().filter(|(a, _)| *a != i).map(|(_, &l)| l).collect();
        let phi = whitney(labels, &rest)?;
        if i % 2 == 0 {
            acc = acc.add(&phi)?;
        } else {
            acc = acc.sub(&phi)?;
        }
    }
    Ok(acc)
}

pub(crate) fn full_labels(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// Chart monomials in `nvars` variables of total degree exactly `d`.
pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut e = [0u8; MAX_VARS];
    fn rec(nvars: usize, i: usize, left: u32, e: &mut [u8; MAX_VARS], out: &mut Vec<Mono>) {
        if i + 1 == nvars {
            e[i] = left as u8;
            out.push(Mono(*e));
            e[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            e[i] = a as u8;
            rec(nvars, i + 1, left - a, e, out);
        }
        e[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Mono(e));
        }
        return out;
    }
    rec(nvars, 0, d, &mut e, &mut out);
    out
}

fn check_space_params(n: usize, r: u32, k: usize) -> Result<()> {
    if n == 0 || r == 0 || k > n || n + 1 > MAX_VARS {
        return Err(Error::InvalidIndexSet(format!(
            "unsupported space parameters n={n}, r={r}, k={k}"
        )));
    }
    Ok(())
}

fn monomial_form(labels: &[usize], k: usize, mask: u32, mono: Mono) -> PolyForm {
    let n = labels.len() - 1;
    let mut f = ChartForm::zero(n, k);
    f.add_component(mask, Poly::from_terms(n, [(mono, Rational::one())]));
    PolyForm::from_chart(labels.to_vec(), f)
}

/// Monomial basis of `P_r Λ^k(S_n)` (chart monomials times chart
/// differentials), `C(n+r, n)·C(n, k)` elements.
pub fn basis_full(n: usize, r: u32, k: usize) -> Result<Vec<PolyForm>> {
    check_space_params(n, r, k)?;
    basis_full_any(n, r, k)
}

/// As [`basis_full`] but also accepting `r = 0` (constant coefficients).
pub(crate) fn basis_full_any(n: usize, r: u32, k: usize) -> Result<Vec<PolyForm>> {
    let labels = full_labels(n);
    let mut out = Vec::new();
    for mask in masks_of_size(n, k) {
        for d in 0..=r {
            for mono in monomials_of_degree(n, d) {
                out.push(monomial_form(&labels, k, mask, mono));
            }
        }
    }
    Ok(out)
}

/// Basis of `P_r^- Λ^k(S_n)`: all of `P_{r-1} Λ^k` plus the degree-`r`
/// homogeneous forms killed by the top-degree part of contraction with
/// `x - x_0`.
pub fn basis_trimmed(n: usize, r: u32, k: usize) -> Result<Vec<PolyForm>> {
    check_space_params(n, r, k)?;
    if k == 0 {
        return basis_full(n, r, 0);
    }
    let labels = full_labels(n);
    let mut out = basis_full_any(n, r - 1, k)?;
    let top: Vec<PolyForm> = masks_of_size(n, k)
        .into_iter()
        .flat_map(|mask| {
            monomials_of_degree(n, r)
                .into_iter()
                .map(move |mono| (mask, mono))
        })
        .map(|(mask, mono)| monomial_form(&labels, k, mask, mono))
        .collect();
    let columns: Vec<SparseVec<(u32, Mono)>> = top
        .iter()
        .map(|f| PolyForm::from_chart(labels.clone(), f.contract_koszul_at_anchor()).coefficient_vector())
        .collect();
    for null in nullspace(&columns) {
        let mut acc = PolyForm::zero(&labels, k)?;
        for (c, f) in null.iter().zip(&top) {
            if !c.is_zero() {
                acc.add_scaled(f, c)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn basis(n: usize, r: u32, k: usize, family: Family) -> Result<Vec<PolyForm>> {
    match family {
        Family::Full => basis_full(n, r, k),
        Family::Trimmed => basis_trimmed(n, r, k),
    }
}

/// `dim P_r Λ^k(S_n)`.
pub fn dim_full(n: usize, r: u32, k: usize) -> u64 {
    crate::poly::binomial((n as u64) + r as u64, n as u64) * crate::poly::binomial(n as u64, k as u64)
}

/// `dim P_r^- Λ^k(S_n) = C(r+k-1, k)·C(n+r, n-k)`.
pub fn dim_trimmed(n: usize, r: u32, k: usize) -> u64 {
    if k == 0 {
        return dim_full(n, r, 0);
    }
    let (n, r, k) = (n as u64, r as u64, k as u64);
    crate::poly::binomial(r + k - 1, k) * crate::poly::binomial(n + r, n - k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    const TRI: [usize; 3] = [0, 1, 2];

    fn lam(v: usize) -> BaryPoly {
        BaryPoly::lambda(&TRI, v).unwrap()
    }

    fn dl(v: usize) -> PolyForm {
        PolyForm::dlambda(&TRI, v).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert!(dl(1).wedge(&dl(1)).unwrap().is_zero());
        let f = PolyForm::scalar(lam(0)).wedge(&dl(1)).unwrap();
        assert_eq!(f, dl(1).mul_poly(&lam(0)).unwrap());
        assert_eq!(dl(1).wedge(&dl(2)).unwrap(), dl(2).wedge(&dl(1)).unwrap().scale(&q(-1, 1)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(PolyForm::scalar(lam(1)).exterior_derivative(), dl(1));
        // d(λ0 dλ1) = dλ0 ∧ dλ1 = dλ1 ∧ dλ2 in the chart
        let u = PolyForm::scalar(lam(0)).wedge(&dl(1)).unwrap();
        assert_eq!(u.exterior_derivative(), dl(1).wedge(&dl(2)).unwrap());
        let c = PolyForm::scalar(BaryPoly::constant(&TRI, q(3, 1)).unwrap());
        assert!(c.exterior_derivative().is_zero());
    }

    #[test]
    fn contraction_examples() {
        let e01 = TangentVector::edge(&TRI, 0, 1).unwrap();
        let e02 = TangentVector::edge(&TRI, 0, 2).unwrap();
        let one = PolyForm::scalar(BaryPoly::constant(&TRI, q(1, 1)).unwrap());
        assert_eq!(dl(1).contract(&e01).unwrap(), one);
        let w = dl(1).wedge(&dl(2)).unwrap();
        assert_eq!(w.contract(&e02).unwrap(), dl(1).scale(&q(-1, 1)));
        let x0 = RationalPoint::vertex(&TRI, 0).unwrap();
        assert_eq!(dl(1).contract_koszul(&x0).unwrap(), PolyForm::scalar(lam(1)));
        assert!(matches!(one.contract(&e01), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn trace_examples() {
        let u = PolyForm::scalar(lam(0)).wedge(&dl(1)).unwrap();
        assert!(u.trace(&[1, 2]).unwrap().is_zero());
        let v = PolyForm::scalar(lam(1)).wedge(&dl(2)).unwrap();
        let edge = [1, 2];
        let expected = PolyForm::scalar(BaryPoly::lambda(&edge, 1).unwrap())
            .wedge(&PolyForm::dlambda(&edge, 2).unwrap())
            .unwrap();
        assert_eq!(v.trace(&edge).unwrap(), expected);
        // trace of φ_{01} onto the edge integrates to 1
        let phi = whitney(&TRI, &[0, 1]).unwrap();
        let t = phi.trace(&[0, 1]).unwrap();
        assert_eq!(t.integrate_over(&[0, 1]).unwrap(), q(1, 1));
        assert!(matches!(u.trace(&[3]), Err(Error::InvalidIndexSet(_))));
    }

    #[test]
    fn pullback_examples() {
        let id = AffineMap::identity(&TRI).unwrap();
        let u = PolyForm::scalar(lam(0)).wedge(&dl(2)).unwrap();
        assert_eq!(u.pullback_affine(&id).unwrap(), u);
        // constant map to x_2
        let c = AffineMap::new(
            &TRI,
            &TRI,
            vec![
                BaryPoly::zero(&TRI).unwrap(),
                BaryPoly::zero(&TRI).unwrap(),
                BaryPoly::constant(&TRI, q(1, 1)).unwrap(),
            ],
        )
        .unwrap();
        assert!(dl(1).pullback_affine(&c).unwrap().is_zero());
        // μ0 = λ0+λ1, μ1 = 0, μ2 = λ2
        let m = AffineMap::new(
            &TRI,
            &TRI,
            vec![lam(0).add(&lam(1)).unwrap(), BaryPoly::zero(&TRI).unwrap(), lam(2)],
        )
        .unwrap();
        assert_eq!(dl(2).pullback_affine(&m).unwrap(), dl(2));
        let bad = AffineMap::new(&TRI, &TRI, vec![lam(0), lam(0), lam(2)]);
        assert!(matches!(bad, Err(Error::Parse(_))));
    }

    #[test]
    fn whitney_examples() {
        assert_eq!(whitney(&TRI, &[2]).unwrap(), PolyForm::scalar(lam(2)));
        let phi = whitney(&TRI, &[0, 1]).unwrap();
        let expected = dl(1).mul_poly(&lam(0)).unwrap().sub(&dl(0).mul_poly(&lam(1)).unwrap()).unwrap();
        assert_eq!(phi, expected);
        assert_eq!(whitney(&TRI, &[0, 1, 2]).unwrap(), dl(1).wedge(&dl(2)).unwrap());
        assert_eq!(whitney(&TRI, &[1, 0]).unwrap(), phi.scale(&q(-1, 1)));
    }

    #[test]
    fn integration_examples() {
        let e = [0, 1];
        let d1 = PolyForm::dlambda(&e, 1).unwrap();
        assert_eq!(d1.integrate_over(&[0, 1]).unwrap(), q(1, 1));
        let l1d1 = d1.mul_poly(&BaryPoly::lambda(&e, 1).unwrap()).unwrap();
        assert_eq!(l1d1.integrate_over(&[0, 1]).unwrap(), q(1, 2));
        let phi = whitney(&TRI, &[0, 1, 2]).unwrap();
        assert_eq!(phi.integrate_over(&[0, 1, 2]).unwrap(), q(1, 2));
        assert_eq!(phi.integrate_over(&[1, 0, 2]).unwrap(), q(-1, 2));
        assert!(matches!(d1.integrate_over(&[0]), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(basis_full(2, 1, 1).unwrap().len(), 6);
        for n in 1..=3 {
            for k in 0..=n {
                assert_eq!(basis_trimmed(n, 1, k).unwrap().len() as u64, crate::poly::binomial(n as u64 + 1, k as u64 + 1));
            }
        }
        assert_eq!(basis_trimmed(2, 2, 1).unwrap().len(), 8);
        assert_eq!(dim_trimmed(2, 2, 1), 8);
    }

    #[test]
    fn membership_examples() {
        assert!(whitney(&TRI, &[0, 2]).unwrap().is_member(Family::Trimmed, 1));
        let u = dl(2).mul_poly(&lam(1)).unwrap();
        assert!(!u.is_member(Family::Trimmed, 1));
        assert!(u.is_member(Family::Full, 1));
        assert!(PolyForm::zero(&TRI, 1).unwrap().is_member(Family::Trimmed, 1));
    }

    #[test]
    fn evaluation_examples() {
        let bc = RationalPoint::barycenter(&TRI).unwrap();
        let e01 = TangentVector::edge(&TRI, 0, 1).unwrap();
        let e02 = TangentVector::edge(&TRI, 0, 2).unwrap();
        assert_eq!(dl(1).eval(&bc, &[e01.clone()]).unwrap(), q(1, 1));
        let w = dl(1).wedge(&dl(2)).unwrap();
        assert_eq!(w.eval(&bc, &[e01.clone(), e02.clone()]).unwrap(), q(1, 1));
        assert_eq!(w.eval(&bc, &[e02, e01.clone()]).unwrap(), q(-1, 1));
        let e = [0, 1];
        let mid = RationalPoint::barycenter(&e).unwrap();
        let phi = whitney(&e, &[0, 1]).unwrap();
        assert_eq!(phi.eval(&mid, &[TangentVector::edge(&e, 0, 1).unwrap()]).unwrap(), q(1, 1));
        assert!(matches!(dl(1).eval(&bc, &[]), Err(Error::DegreeMismatch(_))));
    }
}
