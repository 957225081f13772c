//! Face projections `P_{I,j}`, the product maps `F_I`, the order-reduction
//! operators `R_{I,J}^k` and the coefficient operators `A_{I,J}^k`.
//!
//! All operators act on a [`Data`] source: an interior form on `S_n` or
//! boundary data. For boundary data the range of `F_I` restricted to
//! `S_n × [x_J]` must lie in a facet, which is the facet opposite the
//! smallest label of `I ∖ J`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::bary::BaryPoly;
use crate::boundary::{facet_labels, BoundaryForm};
use crate::chart_form::ChartForm;
use crate::error::{Error, Result};
use crate::forms::{full_labels, AffineMap, PolyForm};
use crate::index::IndexSet;
use crate::poly::{factorial, Poly};
use crate::Rational;

/// Input of the blending operators.
#[derive(Clone, Copy, Debug)]
pub enum Data<'a> {
    Interior(&'a PolyForm),
    Boundary(&'a BoundaryForm),
}

impl<'a> Data<'a> {
    pub fn n(&self) -> usize {
        match self {
            Data::Interior(u) => u.dim(),
            Data::Boundary(b) => b.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Data::Interior(u) => u.k(),
            Data::Boundary(b) => b.k(),
        }
    }

    /// The form to pull back when the image avoids every vertex in
    /// `vanishing` (labels whose target coordinate is identically zero).
    pub(crate) fn source_form(&self, vanishing: &[usize]) -> Result<&'a PolyForm> {
        match self {
            Data::Interior(u) => Ok(u),
            Data::Boundary(b) => match vanishing.iter().min() {
                Some(&i) => Ok(b.facet(i)),
                None => Err(Error::OutOfDomain(
                    "the image is not contained in the boundary; boundary data cannot be used".into(),
                )),
            },
        }
    }

    pub fn exterior_derivative(&self) -> OwnedData {
        match self {
            Data::Interior(u) => OwnedData::Interior(u.exterior_derivative()),
            Data::Boundary(b) => OwnedData::Boundary(b.exterior_derivative()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum OwnedData {
    Interior(PolyForm),
    Boundary(BoundaryForm),
}

impl OwnedData {
    pub fn as_data(&self) -> Data<'_> {
        match self {
            OwnedData::Interior(u) => Data::Interior(u),
            OwnedData::Boundary(b) => Data::Boundary(b),
        }
    }
}

fn check_blend_set(set: &IndexSet, n: usize) -> Result<()> {
    if set.ambient_n() != n {
        return Err(Error::DimensionMismatch(format!(
            "index set {set} lives in dimension {}, data in dimension {n}",
            set.ambient_n()
        )));
    }
    if set.is_empty() || !set.is_increasing() {
        return Err(Error::InvalidIndexSet(format!("{set} must be nonempty and increasing")));
    }
    Ok(())
}

fn check_fiber_set(j: &IndexSet, n: usize) -> Result<()> {
    if j.ambient_n() != n {
        return Err(Error::DimensionMismatch(format!(
            "index set {j} lives in dimension {}, data in dimension {n}",
            j.ambient_n()
        )));
    }
    if j.is_empty() {
        return Err(Error::InvalidIndexSet("empty fiber simplex".into()));
    }
    Ok(())
}

/// `P_{I,j}` as a map of `S_n` to itself.
pub fn proj_map(set: &IndexSet, j: usize) -> Result<AffineMap> {
    let n = set.ambient_n();
    check_blend_set(set, n)?;
    if j > n {
        return Err(Error::InvalidIndexSet(format!("label {j} outside 0..={n}")));
    }
    let labels = full_labels(n);
    let coords = proj_coords(set, j, &labels)?;
    AffineMap::new(&labels, &labels, coords)
}

fn proj_coords(set: &IndexSet, j: usize, target: &[usize]) -> Result<Vec<BaryPoly>> {
    let labels = full_labels(set.ambient_n());
    let lambda_i = BaryPoly::lambda_sum(&labels, set.labels())?;
    target
        .iter()
        .map(|&w| {
            let mut c = if set.contains(w) {
                BaryPoly::zero(&labels)?
            } else {
                BaryPoly::lambda(&labels, w)?
            };
            if w == j {
                c = c.add(&lambda_i)?;
            }
            Ok(c)
        })
        .collect()
}

/// `P_{I,j}^* u`. Boundary data is read on the facet opposite the smallest
/// label of `I ∖ {j}`.
pub fn proj_pullback(set: &IndexSet, j: usize, data: Data<'_>) -> Result<PolyForm> {
    let n = data.n();
    check_blend_set(set, n)?;
    if j > n {
        return Err(Error::InvalidIndexSet(format!("label {j} outside 0..={n}")));
    }
    let vanishing: Vec<usize> = set.labels().iter().copied().filter(|&i| i != j).collect();
    let u = data.source_form(&vanishing)?;
    let target = u.labels().to_vec();
    let map = AffineMap::new(&full_labels(n), &target, proj_coords(set, j, &target)?)?;
    u.pullback_affine(&map)
}

/// Target chart coordinates of `F_I(x, y)` on `S_n × [x_J]`, in the base
/// chart variables `0..n` followed by fiber variables `n..n+s`, where
/// `y = Σ_a t_a x_{j_a}` and `t_0 = 1 - Σ t`.
fn product_substitution(set: &IndexSet, fiber: &IndexSet, target: &[usize]) -> Result<Vec<Poly>> {
    let n = set.ambient_n();
    let s = fiber.len() - 1;
    let nv = n + s;
    let base = |v: usize| -> Poly {
        if v == 0 {
            let mut p = Poly::one(nv);
            for i in 0..n {
                p.add_assign_ref(&Poly::var(nv, i).scale(&-Rational::one()));
            }
            p
        } else {
            Poly::var(nv, v - 1)
        }
    };
    let t = |a: usize| -> Poly {
        if a == 0 {
            let mut p = Poly::one(nv);
            for i in 0..s {
                p.add_assign_ref(&Poly::var(nv, n + i).scale(&-Rational::one()));
            }
            p
        } else {
            Poly::var(nv, n + a - 1)
        }
    };
    let mut lambda_i = Poly::zero(nv);
    for &i in set.labels() {
        lambda_i.add_assign_ref(&base(i));
    }
    target[1..]
        .iter()
        .map(|&w| {
            let mut mu = if set.contains(w) { Poly::zero(nv) } else { base(w) };
            if let Some(a) = fiber.labels().iter().position(|&l| l == w) {
                mu.add_assign_ref(&lambda_i.mul(&t(a)));
            }
            Ok(mu)
        })
        .collect()
}

/// `F_I^* u` on `S_n × [x_J]` in the double chart (base variables first,
/// then fiber variables), with all bidegree components.
#[derive(Clone, Debug)]
pub struct ProductForm {
    n: usize,
    s: usize,
    form: ChartForm,
}

impl ProductForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Fiber dimension.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn chart(&self) -> &ChartForm {
        &self.form
    }

    fn fiber_mask(&self) -> u32 {
        ((1u32 << self.s) - 1) << self.n
    }

    /// Bidegree `(k - q, q)` part `Π_q`.
    pub fn bidegree_component(&self, q: usize) -> ChartForm {
        let fm = self.fiber_mask();
        let mut out = ChartForm::zero(self.form.nvars(), self.form.degree());
        for (m, p) in self.form.components() {
            if (m & fm).count_ones() as usize == q {
                out.add_component(m, p.clone());
            }
        }
        out
    }

    /// Integrates the bidegree `(k - s, s)` part over the fiber, giving a
    /// `(k - s)`-form on `S_n`.
    pub fn fiber_integral(&self) -> Result<ChartForm> {
        let k = self.form.degree();
        if self.s > k {
            return Err(Error::DegreeMismatch(format!(
                "no fiber component of degree {} in a {k}-form",
                self.s
            )));
        }
        let fm = self.fiber_mask();
        let fiber: Vec<usize> = (self.n..self.n + self.s).collect();
        let back: Vec<usize> = (0..self.n + self.s).map(|i| if i < self.n { i } else { 0 }).collect();
        let mut out = ChartForm::zero(self.n, k - self.s);
        for (m, p) in self.form.components() {
            if m & fm != fm {
                continue;
            }
            let integrated = p.integrate_simplex(&fiber).remap(self.n, &back);
            out.add_component(m & !fm, integrated);
        }
        Ok(out)
    }
}

/// `F_I^* u` restricted to `S_n × [x_J]`.
pub fn product_pullback(set: &IndexSet, fiber: &IndexSet, data: Data<'_>) -> Result<ProductForm> {
    let n = data.n();
    check_blend_set(set, n)?;
    check_fiber_set(fiber, n)?;
    let vanishing = set.difference(fiber);
    let u = data.source_form(&vanishing)?;
    let s = fiber.len() - 1;
    if n + s > crate::poly::MAX_VARS {
        return Err(Error::DimensionMismatch("product chart too large".into()));
    }
    let subst = product_substitution(set, fiber, u.labels())?;
    Ok(ProductForm {
        n,
        s,
        form: u.chart().pullback_into(&subst, n + s),
    })
}

/// `R_{I,J}^k u = ∫_{[x_J]} Π_s F_I^* u`, computed with the orientation of
/// `J` as given. Fails with `DegreeMismatch` when `s > k`, where the
/// operator is zero into negative degree.
pub fn r_op(set: &IndexSet, fiber: &IndexSet, data: Data<'_>) -> Result<PolyForm> {
    let k = data.k();
    let s = fiber.len().saturating_sub(1);
    if s > k {
        return Err(Error::DegreeMismatch(format!("R vanishes for s = {s} > k = {k}")));
    }
    let pf = product_pullback(set, fiber, data)?;
    Ok(PolyForm::from_chart(full_labels(data.n()), pf.fiber_integral()?))
}

/// `λ_I^{-s} R_{I,J}^k u`, which must be an exact polynomial quotient.
pub fn r_div(set: &IndexSet, fiber: &IndexSet, data: Data<'_>) -> Result<PolyForm> {
    let r = r_op(set, fiber, data)?;
    divide_by_lambda_power(&r, set, fiber.len() - 1)
}

pub(crate) fn divide_by_lambda_power(u: &PolyForm, set: &IndexSet, s: usize) -> Result<PolyForm> {
    if s == 0 || set.len() == set.ambient_n() + 1 || u.is_zero() {
        return Ok(u.clone());
    }
    let lam = BaryPoly::lambda_sum(u.labels(), set.labels())?.pow(s as u32);
    u.divide_exact(&lam).map_err(|e| match e {
        Error::NotDivisible(msg) => Error::NotDivisible(format!(
            "λ_I^{s} does not divide the operator output for I = {set}: {msg}"
        )),
        other => other,
    })
}

/// `(δR_I^k u)_J = Σ_i (-1)^i R_{I,J(î)}^k u`.
pub fn delta_r(set: &IndexSet, fiber: &IndexSet, data: Data<'_>) -> Result<PolyForm> {
    if fiber.len() < 2 {
        return Err(Error::InvalidIndexSet(format!("δR needs |J| >= 2, got {fiber}")));
    }
    alternating_sum(fiber, |sub| r_op(set, sub, data))
}

fn alternating_sum(fiber: &IndexSet, mut f: impl FnMut(&IndexSet) -> Result<PolyForm>) -> Result<PolyForm> {
    let mut acc: Option<PolyForm> = None;
    for i in 0..fiber.len() {
        let term = f(&fiber.remove_at(i)?)?;
        let term = if i % 2 == 1 { term.scale(&-Rational::one()) } else { term };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.expect("nonempty alternating sum"))
}

/// `c_{s,n}^k = (-1)^{1+ks} (s!)^2 / ((n-1)⋯(n-s))` for `1 <= s <= n-1`,
/// and `c_{0,n}^k = -1`.
pub fn c_const(s: usize, n: usize, k: usize) -> Result<Rational> {
    if s >= n {
        return Err(Error::InvalidIndexSet(format!("c_(s,n) is undefined for s = {s} >= n = {n}")));
    }
    if s == 0 {
        return Ok(-Rational::one());
    }
    let f = factorial(s as u32);
    let num = &f * &f;
    let den: BigInt = (1..=s).map(|i| BigInt::from(n - i)).product();
    let c = Rational::new(num, den);
    Ok(if (1 + k * s) % 2 == 0 { c } else { -c })
}

fn check_a_args(set: &IndexSet, fiber: &IndexSet, n: usize) -> Result<()> {
    check_blend_set(set, n)?;
    check_fiber_set(fiber, n)?;
    if !fiber.is_subset_of(set) {
        return Err(Error::InvalidIndexSet(format!("{fiber} is not a subset of {set}")));
    }
    if fiber.len() > n {
        return Err(Error::InvalidIndexSet(format!(
            "A_(I,J) needs s <= n - 1, got J = {fiber} in dimension {n}"
        )));
    }
    Ok(())
}

/// `A_{I,J}^k u`: `P_{I,j}^* u` for `J = {j}`, otherwise
/// `c_{s,n}^k Σ_{p ∉ J} Σ_i (-1)^i R_{I,{p, J(î)}}^k u`.
pub fn a_op(set: &IndexSet, fiber: &IndexSet, data: Data<'_>) -> Result<PolyForm> {
    let n = data.n();
    check_a_args(set, fiber, n)?;
    let s = fiber.len() - 1;
    let k = data.k();
    if s > k {
        return Err(Error::DegreeMismatch(format!("A vanishes for s = {s} > k = {k}")));
    }
    if s == 0 {
        return r_op(set, fiber, data);
    }
    let c = c_const(s, n, k)?;
    let mut acc = PolyForm::zero(&full_labels(n), k - s)?;
    for p in fiber.complement().labels().iter().copied() {
        for i in 0..fiber.len() {
            let sub = fiber.remove_at(i)?.with_front(p)?;
            let r = r_op(set, &sub, data)?;
            let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
            acc.add_scaled(&r, &sign)?;
        }
    }
    Ok(acc)
}

/// `λ_I^{-s} A_{I,J}^k u`, an exact polynomial quotient.
pub fn a_div(set: &IndexSet, fiber: &IndexSet, data: Data<'_>) -> Result<PolyForm> {
    let a = a_op(set, fiber, data)?;
    divide_by_lambda_power(&a, set, fiber.len() - 1)
}

/// `(δA_I^k u)_J = Σ_i (-1)^i A_{I,J(î)}^k u`.
pub fn delta_a(set: &IndexSet, fiber: &IndexSet, data: Data<'_>) -> Result<PolyForm> {
    if fiber.len() < 2 {
        return Err(Error::InvalidIndexSet(format!("δA needs |J| >= 2, got {fiber}")));
    }
    if !fiber.is_subset_of(set) {
        return Err(Error::InvalidIndexSet(format!("{fiber} is not a subset of {set}")));
    }
    alternating_sum(fiber, |sub| a_op(set, sub, data))
}

/// Memoizes `R_{I,J}^k u` over increasing `J` for one `(I, u)` pair; other
/// orderings are served by permutation sign.
pub struct BlendCache<'a> {
    set: IndexSet,
    data: Data<'a>,
    r: HashMap<Vec<usize>, PolyForm>,
}

impl<'a> BlendCache<'a> {
    pub fn new(set: &IndexSet, data: Data<'a>) -> Result<Self> {
        check_blend_set(set, data.n())?;
        Ok(BlendCache {
            set: set.clone(),
            data,
            r: HashMap::new(),
        })
    }

    pub fn set(&self) -> &IndexSet {
        &self.set
    }

    pub fn r(&mut self, fiber: &IndexSet) -> Result<PolyForm> {
        let (sorted, sign) = fiber.sort_with_sign();
        let key = sorted.labels().to_vec();
        let r = match self.r.get(&key) {
            Some(r) => r.clone(),
            None => {
                let r = r_op(&self.set, &sorted, self.data)?;
                self.r.insert(key, r.clone());
                r
            }
        };
        Ok(if sign < 0 { r.scale(&-Rational::one()) } else { r })
    }

    pub fn a(&mut self, fiber: &IndexSet) -> Result<PolyForm> {
        let n = self.data.n();
        check_a_args(&self.set, fiber, n)?;
        let s = fiber.len() - 1;
        let k = self.data.k();
        if s > k {
            return Err(Error::DegreeMismatch(format!("A vanishes for s = {s} > k = {k}")));
        }
        if s == 0 {
            return self.r(fiber);
        }
        let c = c_const(s, n, k)?;
        let mut acc = PolyForm::zero(&full_labels(n), k - s)?;
        for p in fiber.complement().labels().iter().copied() {
            for i in 0..fiber.len() {
                let sub = fiber.remove_at(i)?.with_front(p)?;
                let r = self.r(&sub)?;
                let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
                acc.add_scaled(&r, &sign)?;
            }
        }
        Ok(acc)
    }

    pub fn a_div(&mut self, fiber: &IndexSet) -> Result<PolyForm> {
        let a = self.a(fiber)?;
        divide_by_lambda_power(&a, &self.set, fiber.len() - 1)
    }

    pub fn delta_a(&mut self, fiber: &IndexSet) -> Result<PolyForm> {
        if fiber.len() < 2 {
            return Err(Error::InvalidIndexSet(format!("δA needs |J| >= 2, got {fiber}")));
        }
        let mut acc: Option<PolyForm> = None;
        for i in 0..fiber.len() {
            let term = self.a(&fiber.remove_at(i)?)?;
            let term = if i % 2 == 1 { term.scale(&-Rational::one()) } else { term };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        Ok(acc.expect("nonempty alternating sum"))
    }
}

/// Facet used for boundary data by `R_{I,J}`: opposite `min(I ∖ J)`.
pub fn boundary_facet_for(set: &IndexSet, fiber: &IndexSet) -> Option<usize> {
    set.difference(fiber).into_iter().min()
}

/// Facet vertex labels used for boundary data by `R_{I,J}`.
pub fn boundary_facet_labels(set: &IndexSet, fiber: &IndexSet) -> Option<Vec<usize>> {
    boundary_facet_for(set, fiber).map(|i| facet_labels(set.ambient_n(), i))
}
