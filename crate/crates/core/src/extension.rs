//! The extension operators `E_n^k` and their pointwise oracles.
//!
//! The production path assembles `E_n^k` from per-index-set polynomial
//! pieces
//!
//! `E_n^k(I) u = (1/(m+1)) [Σ_{j∈I} P_{I,j}^* u + d Q^k u + Q^{k+1} du]`,
//!
//! where `Q^k u = Σ_{1<=s<=k} Σ_{J∈Γ_s(I)} (1/s) (δφ)_J ∧ λ_I^{-s} A_{I,J}^k u`.
//! Only exact polynomial division by `λ_I^s` is needed. The rational
//! formula `Σ_J φ_J / λ_I^{s+1} ∧ A_{I,J}^k u` is kept as an independent
//! pointwise evaluator at interior points.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::bary::RationalPoint;
use crate::blending::{c_const, BlendCache, Data};
use crate::boundary::BoundaryForm;
use crate::chart_form::{mask_bits, ChartForm};
use crate::error::{Error, Result};
use crate::forms::{delta_whitney, full_labels, whitney, PolyForm, TangentVector};
use crate::index::{blending_sets, enumerate_gamma_sub, IndexSet};
use crate::poly::{factorial, Poly};
use crate::Rational;

fn frac(a: usize, b: usize) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn check_extend_args(b: &BoundaryForm) -> Result<()> {
    if b.k() + 1 > b.n() {
        return Err(Error::DegreeMismatch(format!(
            "E_n^k needs k <= n - 1, got k = {} for n = {}",
            b.k(),
            b.n()
        )));
    }
    Ok(())
}

/// `Q^k u` for the index set of `cache`; `None` when `k = 0`, where the
/// operator maps into degree `-1`.
fn q_with_cache(cache: &mut BlendCache<'_>, k: usize) -> Result<Option<PolyForm>> {
    if k == 0 {
        return Ok(None);
    }
    let set = cache.set().clone();
    let n = set.ambient_n();
    let labels = full_labels(n);
    let mut acc = PolyForm::zero(&labels, k - 1)?;
    let top = k.min(set.len() - 1);
    for s in 1..=top {
        for j in enumerate_gamma_sub(&set, s)? {
            let a = cache.a_div(&j)?;
            let term = delta_whitney(&labels, j.labels())?.wedge(&a)?;
            acc.add_scaled(&term, &frac(1, s))?;
        }
    }
    Ok(Some(acc))
}

/// `Q_n^k(I) u = Σ_{1<=s<=k} Σ_{J∈Γ_s(I)} (1/s) (δφ)_J ∧ λ_I^{-s} A_{I,J}^k u`;
/// `None` for `k = 0`.
pub fn q_op(set: &IndexSet, data: Data<'_>) -> Result<Option<PolyForm>> {
    if data.k() + 1 > data.n() {
        return Err(Error::DegreeMismatch(format!(
            "Q_n^k is defined for k <= n - 1, got k = {}",
            data.k()
        )));
    }
    let mut cache = BlendCache::new(set, data)?;
    q_with_cache(&mut cache, data.k())
}

/// `E_n^k(I) u`, the polynomial contribution of one index set.
pub fn extend_component(set: &IndexSet, b: &BoundaryForm) -> Result<PolyForm> {
    check_extend_args(b)?;
    let n = b.n();
    let k = b.k();
    let labels = full_labels(n);
    let m = set.len() - 1;
    if m == 0 {
        return Err(Error::InvalidIndexSet(format!("blending needs |I| >= 2, got {set}")));
    }
    let data = Data::Boundary(b);
    let mut cache = BlendCache::new(set, data)?;

    let mut acc = PolyForm::zero(&labels, k)?;
    for &j in set.labels() {
        acc = acc.add(&cache.a(&IndexSet::new(vec![j], n)?)?)?;
    }
    if let Some(q) = q_with_cache(&mut cache, k)? {
        acc = acc.add(&q.exterior_derivative())?;
    }

    // Q^{k+1} du. Its s = k+1 terms use A^{k+1}_{I,J} du = (k+1) (δA^k u)_J;
    // at s = n (I the full set) A^{k+1} itself is undefined, so that form is
    // the one used there.
    let du = b.exterior_derivative();
    let mut du_cache = BlendCache::new(set, Data::Boundary(&du))?;
    let top = (k + 1).min(m);
    for s in 1..=top {
        for j in enumerate_gamma_sub(set, s)? {
            let coeff = if s < n {
                if du.is_zero() {
                    continue;
                }
                du_cache.a_div(&j)?
            } else {
                let da = cache.delta_a(&j)?;
                crate::blending::divide_by_lambda_power(&da, set, s)?.scale(&frac(k + 1, 1))
            };
            let term = delta_whitney(&labels, j.labels())?.wedge(&coeff)?;
            acc.add_scaled(&term, &frac(1, s))?;
        }
    }
    Ok(acc.scale(&frac(1, m + 1)))
}

/// `E_n^k u = (1/n) Σ_{I} (-1)^{m+1} E_n^k(I) u` over `I ∈ Γ_m`, `1 <= m <= n`.
pub fn extend(b: &BoundaryForm) -> Result<PolyForm> {
    check_extend_args(b)?;
    if !b.check_compatibility() {
        return Err(Error::IncompatibleTraces("boundary data has mismatched traces".into()));
    }
    let sets = blending_sets(b.n());
    #[cfg(feature = "parallel")]
    let parts: Vec<Result<PolyForm>> = sets.par_iter().map(|i| extend_component(i, b)).collect();
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<PolyForm>> = sets.iter().map(|i| extend_component(i, b)).collect();

    let mut acc = PolyForm::zero(&full_labels(b.n()), b.k())?;
    for (i, part) in sets.iter().zip(parts) {
        let part = part?;
        if i.len() % 2 == 0 {
            acc = acc.add(&part)?;
        } else {
            acc = acc.sub(&part)?;
        }
    }
    Ok(acc.scale(&frac(1, b.n())))
}

/// Value of a form at `x` as a constant-coefficient chart form.
fn pointwise(u: &PolyForm, x: &RationalPoint) -> ChartForm {
    let n = u.dim();
    let mut out = ChartForm::zero(n, u.k());
    for (m, c) in u.eval_alt(x) {
        out.add_component(m, Poly::constant(n, c));
    }
    out
}

fn constant_form(n: usize, f: ChartForm) -> PolyForm {
    PolyForm::from_chart(full_labels(n), f)
}

/// Determinant of a small matrix of polynomials (cofactor expansion).
fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    match m.len() {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        len => {
            let mut acc = Poly::zero(nvars);
            for col in 0..len {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let t = m[0][col].mul(&poly_det(&minor, nvars));
                if col % 2 == 0 {
                    acc.add_assign_ref(&t);
                } else {
                    acc.add_assign_ref(&t.scale(&-Rational::one()));
                }
            }
            acc
        }
    }
}

/// Pointwise evaluator of `R_{I,J}^k u` at a fixed interior point, built
/// directly from the contraction formula
///
/// `(R u)_x(v_1..v_{k-s}) = λ_I(x)^s ∫_{Δ_s} u_{F(x,y)}(D_xF v_1, .., D_xF v_{k-s}, x_{j_1}-x_{j_0}, .., x_{j_s}-x_{j_0}) dt`
///
/// with `D_xF v = Σ_{ℓ∉I} dλ_ℓ(v) (x_ℓ - y)`.
struct PointOracle<'a> {
    data: Data<'a>,
    x: RationalPoint,
    r: HashMap<(Vec<usize>, Vec<usize>), ChartForm>,
}

impl<'a> PointOracle<'a> {
    fn new(data: Data<'a>, x: &RationalPoint) -> Result<Self> {
        if x.labels() != full_labels(data.n()).as_slice() {
            return Err(Error::DimensionMismatch("point on a different simplex".into()));
        }
        if !x.is_interior() {
            return Err(Error::OutOfDomain(
                "the rational formula needs a strictly interior point".into(),
            ));
        }
        Ok(PointOracle {
            data,
            x: x.clone(),
            r: HashMap::new(),
        })
    }

    fn n(&self) -> usize {
        self.data.n()
    }

    fn r(&mut self, set: &IndexSet, fiber: &IndexSet) -> Result<ChartForm> {
        let key = (set.labels().to_vec(), fiber.labels().to_vec());
        if let Some(v) = self.r.get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute_r(set, fiber)?;
        self.r.insert(key, v.clone());
        Ok(v)
    }

    fn compute_r(&self, set: &IndexSet, fiber: &IndexSet) -> Result<ChartForm> {
        let n = self.n();
        let k = self.data.k();
        let s = fiber.len() - 1;
        let u = self.data.source_form(&set.difference(fiber))?;
        let mut out = ChartForm::zero(n, k - s);
        let x = &self.x;
        let lam_i: Rational = set.labels().iter().map(|&i| x.coord(i)).sum();

        // y_w(t) over the fiber chart t_1..t_s, t_0 = 1 - Σ t
        let y = |w: usize| -> Poly {
            match fiber.labels().iter().position(|&l| l == w) {
                Some(0) => Poly::anchor(s),
                Some(a) => Poly::var(s, a - 1),
                None => Poly::zero(s),
            }
        };
        let mu = |w: usize| -> Poly {
            let mut p = y(w).scale(&lam_i);
            if !set.contains(w) {
                p.add_term(Default::default(), x.coord(w));
            }
            p
        };
        let target = u.labels();
        let subst: Vec<Poly> = target[1..].iter().map(|&w| mu(w)).collect();
        let coeffs: Vec<(Vec<usize>, Poly)> = u
            .chart()
            .components()
            .map(|(m, p)| {
                let rows = mask_bits(m).into_iter().map(|i| target[i + 1]).collect();
                let value = if subst.is_empty() { p.clone() } else { p.compose(&subst) };
                (rows, value)
            })
            .collect();

        // D_xF e_v for e_v = x_v - x_0, component w
        let dxf = |v: usize, w: usize| -> Poly {
            let dl = |l: usize| -> Rational {
                let mut c = Rational::zero();
                if l == v {
                    c += Rational::one();
                }
                if l == 0 {
                    c -= Rational::one();
                }
                c
            };
            let outside: Rational = (0..=n).filter(|l| !set.contains(*l)).map(dl).sum();
            let mut p = y(w).scale(&-outside);
            if !set.contains(w) {
                p.add_term(Default::default(), dl(w));
            }
            p
        };
        let fiber_vec = |a: usize, w: usize| -> Poly {
            let mut c = Rational::zero();
            if w == fiber.labels()[a] {
                c += &lam_i;
            }
            if w == fiber.labels()[0] {
                c -= &lam_i;
            }
            Poly::constant(s, c)
        };

        let fiber_vars: Vec<usize> = (0..s).collect();
        for sigma in crate::chart_form::masks_of_size(n, k - s) {
            let base: Vec<usize> = mask_bits(sigma).into_iter().map(|i| i + 1).collect();
            let mut integrand = Poly::zero(s);
            for (rows, c) in &coeffs {
                let matrix: Vec<Vec<Poly>> = rows
                    .iter()
                    .map(|&w| {
                        base.iter()
                            .map(|&v| dxf(v, w))
                            .chain((1..=s).map(|a| fiber_vec(a, w)))
                            .collect()
                    })
                    .collect();
                let det = poly_det(&matrix, s);
                if !det.is_zero() {
                    integrand.add_assign_ref(&c.mul(&det));
                }
            }
            let value = integrand
                .integrate_simplex(&fiber_vars)
                .as_constant()
                .expect("fiber fully integrated");
            out.add_component(sigma, Poly::constant(n, value));
        }
        Ok(out)
    }

    fn a(&mut self, set: &IndexSet, fiber: &IndexSet) -> Result<ChartForm> {
        let n = self.n();
        let k = self.data.k();
        let s = fiber.len() - 1;
        if s == 0 {
            return self.r(set, fiber);
        }
        let c = c_const(s, n, k)?;
        let mut acc = ChartForm::zero(n, k - s);
        for p in fiber.complement().labels().iter().copied() {
            for i in 0..fiber.len() {
                let sub = fiber.remove_at(i)?.with_front(p)?;
                let r = self.r(set, &sub)?;
                acc.add_scaled(&r, &if i % 2 == 0 { c.clone() } else { -c.clone() });
            }
        }
        Ok(acc)
    }
}

/// `E_n^k u` at an interior point through the rational formula
/// `(1/n) Σ_I (-1)^{m+1} Σ_{J∈Γ_s(I), s<=k} φ_J/λ_I^{s+1} ∧ A_{I,J}^k u`,
/// returned as a constant-coefficient form.
pub fn extend_at_point(b: &BoundaryForm, x: &RationalPoint) -> Result<PolyForm> {
    check_extend_args(b)?;
    let n = b.n();
    let k = b.k();
    let labels = full_labels(n);
    let mut oracle = PointOracle::new(Data::Boundary(b), x)?;
    let mut acc = ChartForm::zero(n, k);
    for set in blending_sets(n) {
        let m = set.len() - 1;
        let lam_i: Rational = set.labels().iter().map(|&i| x.coord(i)).sum();
        let sign = if m % 2 == 1 { Rational::one() } else { -Rational::one() };
        for s in 0..=k.min(m) {
            let weight = &sign / num_traits::pow(lam_i.clone(), s + 1);
            for j in enumerate_gamma_sub(&set, s)? {
                let phi = pointwise(&whitney(&labels, j.labels())?, x);
                let a = oracle.a(&set, &j)?;
                acc.add_scaled(&phi.wedge(&a), &weight);
            }
        }
    }
    Ok(constant_form(n, acc.scale(&frac(1, n))))
}

/// `(E_n^k u)_x(v_1, .., v_k)` via the rational formula.
pub fn extend_eval_oracle(b: &BoundaryForm, x: &RationalPoint, vs: &[TangentVector]) -> Result<Rational> {
    extend_at_point(b, x)?.eval(x, vs)
}

/// Both sides of the ladder identity for `E_{n,ℓ}^k(I)` at an interior
/// point: the truncated sum and its representation.
#[derive(Clone, Debug)]
pub struct LadderValues {
    pub truncated: PolyForm,
    pub representation: PolyForm,
}

impl LadderValues {
    pub fn agree(&self) -> bool {
        self.truncated == self.representation
    }
}

/// Evaluates `E_{n,ℓ}^k(I) u = Σ_{J∈Γ_s(I), s<=ℓ} φ_J/λ_I^{s+1} ∧ A_{I,J}^k u`
/// and
/// `(1/(m+1)) [Σ_j P_{I,j}^* u + Σ_{J∈Γ_{ℓ+1}(I)} (δφ)_J/λ_I^{ℓ+1} ∧ (δA^k u)_J + d Q_ℓ^k u + Q_ℓ^{k+1} du]`
/// at `x`.
pub fn extend_ladder(set: &IndexSet, b: &BoundaryForm, ell: usize, x: &RationalPoint) -> Result<LadderValues> {
    check_extend_args(b)?;
    let n = b.n();
    let k = b.k();
    if ell > k {
        return Err(Error::InvalidIndexSet(format!("ladder level {ell} exceeds k = {k}")));
    }
    if !x.is_interior() {
        return Err(Error::OutOfDomain("ladder values need a strictly interior point".into()));
    }
    let labels = full_labels(n);
    let m = set.len() - 1;
    let lam_i: Rational = set.labels().iter().map(|&i| x.coord(i)).sum();
    let data = Data::Boundary(b);
    let mut cache = BlendCache::new(set, data)?;

    let mut truncated = ChartForm::zero(n, k);
    for s in 0..=ell.min(m) {
        let w = Rational::one() / num_traits::pow(lam_i.clone(), s + 1);
        for j in enumerate_gamma_sub(set, s)? {
            let phi = pointwise(&whitney(&labels, j.labels())?, x);
            let a = pointwise(&cache.a(&j)?, x);
            truncated.add_scaled(&phi.wedge(&a), &w);
        }
    }

    let mut rep = ChartForm::zero(n, k);
    for &j in set.labels() {
        rep.add_assign_ref(&pointwise(&cache.a(&IndexSet::new(vec![j], n)?)?, x));
    }
    if ell + 1 <= m {
        let w = Rational::one() / num_traits::pow(lam_i.clone(), ell + 1);
        for j in enumerate_gamma_sub(set, ell + 1)? {
            let dphi = pointwise(&delta_whitney(&labels, j.labels())?, x);
            let da = pointwise(&cache.delta_a(&j)?, x);
            rep.add_scaled(&dphi.wedge(&da), &w);
        }
    }
    if k >= 1 {
        let mut q = PolyForm::zero(&labels, k - 1)?;
        for s in 1..=ell.min(m) {
            for j in enumerate_gamma_sub(set, s)? {
                let term = delta_whitney(&labels, j.labels())?.wedge(&cache.a_div(&j)?)?;
                q.add_scaled(&term, &frac(1, s))?;
            }
        }
        rep.add_assign_ref(&pointwise(&q.exterior_derivative(), x));
    }
    let du = b.exterior_derivative();
    if !du.is_zero() {
        let mut du_cache = BlendCache::new(set, Data::Boundary(&du))?;
        let mut q = PolyForm::zero(&labels, k)?;
        for s in 1..=ell.min(m) {
            for j in enumerate_gamma_sub(set, s)? {
                let term = delta_whitney(&labels, j.labels())?.wedge(&du_cache.a_div(&j)?)?;
                q.add_scaled(&term, &frac(1, s))?;
            }
        }
        rep.add_assign_ref(&pointwise(&q, x));
    }
    let rep = rep.scale(&frac(1, m + 1));
    Ok(LadderValues {
        truncated: constant_form(n, truncated),
        representation: constant_form(n, rep),
    })
}

/// Findings about `d E_n^{n-1} u`.
#[derive(Clone, Debug)]
pub struct TopDiagnostic {
    /// `d E_n^{n-1} u`.
    pub d_extension: PolyForm,
    /// `∫_{S_n} d E_n^{n-1} u`.
    pub interior_integral: Rational,
    /// `∫_{∂S_n} u`.
    pub boundary_integral: Rational,
    /// Whether `d E_n^{n-1} u` vanishes.
    pub vanishes: bool,
    /// Whether `d E_n^{n-1} u = n! (∫_{∂S_n} u) φ_{0..n}`.
    pub matches_volume_form: bool,
}

impl TopDiagnostic {
    pub fn stokes_holds(&self) -> bool {
        self.interior_integral == self.boundary_integral
    }
}

pub fn d_top_diagnostic(b: &BoundaryForm) -> Result<TopDiagnostic> {
    let n = b.n();
    if b.k() + 1 != n {
        return Err(Error::DegreeMismatch(format!(
            "the top-degree diagnostic needs k = n - 1, got k = {}",
            b.k()
        )));
    }
    let labels = full_labels(n);
    let de = extend(b)?.exterior_derivative();
    let interior_integral = de.integrate_over(&labels)?;
    let boundary_integral = b.integral()?;
    let scale = Rational::from_integer(factorial(n as u32)) * &boundary_integral;
    let candidate = whitney(&labels, &labels)?.scale(&scale);
    Ok(TopDiagnostic {
        vanishes: de.is_zero(),
        matches_volume_form: de == candidate,
        d_extension: de,
        interior_integral,
        boundary_integral,
    })
}

/// Alternating coefficients of a constant form, keyed by chart mask.
pub fn constant_coefficients(u: &PolyForm) -> BTreeMap<u32, Rational> {
    u.chart()
        .components()
        .filter_map(|(m, p)| p.as_constant().map(|c| (m, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bary::BaryPoly;
    use crate::forms::Family;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn point_data(a: i64, b: i64) -> BoundaryForm {
        BoundaryForm::new(
            1,
            0,
            vec![
                PolyForm::scalar(BaryPoly::constant(&[1], q(b, 1)).unwrap()),
                PolyForm::scalar(BaryPoly::constant(&[0], q(a, 1)).unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn interval_is_linear_interpolation() {
        let e = [0, 1];
        let b = point_data(3, 7);
        let expected = BaryPoly::lambda(&e, 0)
            .unwrap()
            .scale(&q(3, 1))
            .add(&BaryPoly::lambda(&e, 1).unwrap().scale(&q(7, 1)))
            .unwrap();
        assert_eq!(extend(&b).unwrap(), PolyForm::scalar(expected.clone()));
        let i = IndexSet::full(1);
        assert_eq!(extend_component(&i, &b).unwrap(), PolyForm::scalar(expected));
        let x = RationalPoint::parse(&e, "1/3,2/3").unwrap();
        assert_eq!(extend_eval_oracle(&b, &x, &[]).unwrap(), q(3 + 14, 3));
    }

    #[test]
    fn constants_extend_to_constants() {
        for n in 1..=3 {
            let labels = full_labels(n);
            let one = PolyForm::scalar(BaryPoly::constant(&labels, q(1, 1)).unwrap());
            let b = BoundaryForm::trace_of(&one).unwrap();
            assert_eq!(extend(&b).unwrap(), one);
            for i in blending_sets(n) {
                assert_eq!(extend_component(&i, &b).unwrap(), one);
            }
            let bc = RationalPoint::barycenter(&labels).unwrap();
            assert_eq!(extend_eval_oracle(&b, &bc, &[]).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn q_examples() {
        let tri = full_labels(2);
        let u = whitney(&tri, &[0, 1]).unwrap();
        let b = BoundaryForm::trace_of(&u).unwrap();
        let q1 = q_op(&IndexSet::new(vec![0, 1], 2).unwrap(), Data::Boundary(&b)).unwrap().unwrap();
        assert_eq!(q1.k(), 0);
        assert!(q1.poly_degree().at_most(2));
        let s = BoundaryForm::trace_of(&PolyForm::scalar(BaryPoly::lambda(&tri, 1).unwrap())).unwrap();
        assert!(q_op(&IndexSet::full(2), Data::Boundary(&s)).unwrap().is_none());
        let e = point_data(1, 2);
        assert!(q_op(&IndexSet::full(1), Data::Boundary(&e)).unwrap().is_none());
    }

    #[test]
    fn oracle_matches_symbolic_path_on_examples() {
        let tri = full_labels(2);
        let l1 = BoundaryForm::trace_of(&PolyForm::scalar(BaryPoly::lambda(&tri, 1).unwrap())).unwrap();
        let x = RationalPoint::parse(&tri, "1/2,1/4,1/4").unwrap();
        assert_eq!(
            extend_eval_oracle(&l1, &x, &[]).unwrap(),
            extend(&l1).unwrap().eval(&x, &[]).unwrap()
        );
        let phi = BoundaryForm::trace_of(&whitney(&tri, &[0, 1]).unwrap()).unwrap();
        let bc = RationalPoint::barycenter(&tri).unwrap();
        let v = [TangentVector::edge(&tri, 0, 1).unwrap()];
        assert_eq!(
            extend_eval_oracle(&phi, &bc, &v).unwrap(),
            extend(&phi).unwrap().eval(&bc, &v).unwrap()
        );
    }

    #[test]
    fn extension_reproduces_traces_of_small_bases() {
        for (n, r) in [(1, 2), (2, 1), (2, 2)] {
            for k in 0..n {
                for family in Family::BOTH {
                    for b in crate::boundary::boundary_basis(n, r, k, family).unwrap() {
                        let e = extend(&b).unwrap();
                        assert_eq!(BoundaryForm::trace_of(&e).unwrap(), b, "n={n} r={r} k={k}");
                        assert!(e.is_member(family, r));
                    }
                }
            }
        }
    }

    #[test]
    fn ladder_endpoints() {
        let tri = full_labels(2);
        let b = BoundaryForm::trace_of(&whitney(&tri, &[1, 2]).unwrap().mul_poly(&BaryPoly::lambda(&tri, 0).unwrap()).unwrap()).unwrap();
        let x = RationalPoint::parse(&tri, "1/5,2/5,2/5").unwrap();
        for i in blending_sets(2) {
            for ell in 0..=1 {
                assert!(extend_ladder(&i, &b, ell, &x).unwrap().agree(), "I={i} ell={ell}");
            }
            let top = extend_ladder(&i, &b, 1, &x).unwrap();
            let comp = extend_component(&i, &b).unwrap();
            assert_eq!(constant_coefficients(&top.truncated), comp.eval_alt(&x));
        }
    }

    #[test]
    fn top_degree_examples() {
        let b = point_data(0, 1);
        let d = d_top_diagnostic(&b).unwrap();
        assert!(d.stokes_holds());
        assert!(!d.vanishes);
        assert!(d.matches_volume_form);
        assert_eq!(d.d_extension, PolyForm::dlambda(&[0, 1], 1).unwrap());
        let tri = full_labels(2);
        let u = PolyForm::dlambda(&tri, 1).unwrap().mul_poly(&BaryPoly::lambda(&tri, 0).unwrap()).unwrap();
        let d = d_top_diagnostic(&BoundaryForm::trace_of(&u).unwrap()).unwrap();
        assert_eq!(d.interior_integral, q(1, 2));
        assert!(d.stokes_holds());
        let closed = BoundaryForm::trace_of(&PolyForm::dlambda(&tri, 2).unwrap()).unwrap();
        assert_eq!(d_top_diagnostic(&closed).unwrap().interior_integral, q(0, 1));
    }
}
