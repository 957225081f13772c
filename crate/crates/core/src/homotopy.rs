//! Poincaré homotopy operators for polynomial de Rham complexes on `S_n`,
//! with and without boundary conditions.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bary::RationalPoint;
use crate::boundary::BoundaryForm;
use crate::chart_form::ChartForm;
use crate::error::{Error, Result};
use crate::extension::extend;
use crate::forms::{basis, full_labels, Family, PolyForm};
use crate::linalg::nullspace;
use crate::poly::{Mono, Poly};
use crate::Rational;

/// `(Q^k u)_x = ∫_0^1 τ^{k-1} u_{a + τ(x - a)} ⌟ (x - a) dτ`.
pub fn poincare(u: &PolyForm, a: &RationalPoint) -> Result<PolyForm> {
    let k = u.k();
    if k == 0 {
        return Err(Error::DegreeMismatch("Q^k needs k >= 1".into()));
    }
    if a.labels() != u.labels() {
        return Err(Error::DimensionMismatch("base point on a different simplex".into()));
    }
    let n = u.dim();
    let nv = n + 1;
    let tau = Poly::var(nv, n);
    // x - a in the chart, then the point a + τ(x - a)
    let offset: Vec<Poly> = (0..n)
        .map(|i| {
            let mut p = Poly::var(nv, i);
            p.add_term(Mono::default(), -a.chart()[i].clone());
            p
        })
        .collect();
    let line: Vec<Poly> = offset
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut p = d.mul(&tau);
            p.add_term(Mono::default(), a.chart()[i].clone());
            p
        })
        .collect();
    let mut lifted = ChartForm::zero(nv, k);
    for (m, p) in u.chart().components() {
        lifted.add_component(m, p.compose(&line));
    }
    let mut field = offset;
    field.push(Poly::zero(nv));
    let weight = tau.pow(k as u32 - 1);
    let back: Vec<usize> = (0..nv).map(|i| if i < n { i } else { 0 }).collect();
    let mut out = ChartForm::zero(n, k - 1);
    for (m, p) in lifted.contract(&field).components() {
        out.add_component(m, p.mul(&weight).integrate_unit(n).remap(n, &back));
    }
    Ok(PolyForm::from_chart(u.labels().to_vec(), out))
}

/// `Q̊^k u = (I - E^{k-1} tr) Q^k u`; requires `1 <= k <= n` and an
/// interior base point.
pub fn poincare_bc(u: &PolyForm, a: &RationalPoint) -> Result<PolyForm> {
    let n = u.dim();
    if u.k() == 0 || u.k() > n {
        return Err(Error::DegreeMismatch(format!("Q̊^k needs 1 <= k <= n, got k = {}", u.k())));
    }
    if !a.is_interior() {
        return Err(Error::OutOfDomain("Q̊ needs a strictly interior base point".into()));
    }
    let q = poincare(u, a)?;
    let tr = BoundaryForm::trace_of(&q)?;
    q.sub(&extend(&tr)?)
}

/// One space of a polynomial complex: `P_r Λ^k` or `P_r^- Λ^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Space {
    pub k: usize,
    pub family: Family,
    pub r: u32,
}

impl Space {
    pub fn basis(&self, n: usize) -> Result<Vec<PolyForm>> {
        basis(n, self.r, self.k, self.family)
    }

    pub fn contains(&self, u: &PolyForm) -> bool {
        u.is_member(self.family, self.r)
    }
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            Family::Full => write!(f, "P{}Λ{}", self.r, self.k),
            Family::Trimmed => write!(f, "P{}-Λ{}", self.r, self.k),
        }
    }
}

/// The spaces of the complex starting at `P_r Λ^0`, where `pattern[k-1]`
/// picks the space in degree `k` for `1 <= k <= n-1`: trimmed keeps the
/// current level `s` (`P_s^- Λ^k`), full drops it (`P_{s-1} Λ^k`). Degree
/// `n` is always `P_s^- Λ^n`.
pub fn complex_spaces(n: usize, r: u32, pattern: &[Family]) -> Result<Vec<Space>> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidIndexSet(format!("no polynomial complex for n = {n}, r = {r}")));
    }
    if pattern.len() + 1 != n {
        return Err(Error::InvalidIndexSet(format!(
            "pattern of length {} for n = {n}, expected {}",
            pattern.len(),
            n - 1
        )));
    }
    let mut level = r;
    let mut spaces = vec![Space { k: 0, family: Family::Full, r }];
    for (i, &family) in pattern.iter().enumerate() {
        let k = i + 1;
        match family {
            Family::Trimmed => spaces.push(Space { k, family, r: level }),
            Family::Full => {
                level -= 1;
                if level == 0 {
                    return Err(Error::InvalidIndexSet(format!(
                        "pattern drops below degree 1 at k = {k} for r = {r}"
                    )));
                }
                spaces.push(Space { k, family, r: level });
            }
        }
    }
    spaces.push(Space { k: n, family: Family::Trimmed, r: level });
    Ok(spaces)
}

/// All `2^{n-1}` patterns, admissible or not, in a fixed order.
pub fn patterns(n: usize) -> Vec<Vec<Family>> {
    let len = n.saturating_sub(1);
    (0..1u32 << len)
        .map(|bits| {
            (0..len)
                .map(|i| if bits >> i & 1 == 1 { Family::Full } else { Family::Trimmed })
                .collect()
        })
        .collect()
}

/// Elements of `span(forms)` with vanishing boundary trace.
pub fn vanishing_trace_subspace(forms: &[PolyForm]) -> Result<Vec<PolyForm>> {
    let Some(first) = forms.first() else {
        return Ok(Vec::new());
    };
    let n = first.dim();
    let k = first.k();
    if k == n {
        return Ok(forms.to_vec());
    }
    let traces = forms
        .iter()
        .map(|u| BoundaryForm::trace_of(u).map(|b| b.coefficient_vector()))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for combo in nullspace(&traces) {
        let mut acc = PolyForm::zero(&full_labels(n), k)?;
        for (c, u) in combo.iter().zip(forms) {
            if !c.is_zero() {
                acc.add_scaled(u, c)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Outcome of one identity or membership check on one input.
#[derive(Clone, Debug, Serialize)]
pub struct CaseFailure {
    pub check: String,
    pub input: serde_json::Value,
    pub detail: String,
}

/// Per-degree results of [`verify_complex`].
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub k: usize,
    pub space: String,
    pub dim: usize,
    pub passes: usize,
    pub failures: Vec<CaseFailure>,
    /// Vanishing-trace subspace dimension.
    pub bc_dim: usize,
    pub bc_passes: usize,
    /// Top-degree identity with boundary conditions: recorded, not asserted.
    pub bc_top_holds: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub n: usize,
    pub r: u32,
    pub pattern: Vec<Family>,
    pub degrees: Vec<DegreeReport>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.failures.is_empty())
    }
}

/// Checks `u = dQ^k u + Q^{k+1} du` (and `u - u(a) = Q^1 du` for `k = 0`)
/// on a basis of every space of the complex, the mapping degrees of `Q`,
/// and the boundary-condition variant on vanishing-trace subspaces.
pub fn verify_complex(n: usize, r: u32, pattern: &[Family], a: &RationalPoint) -> Result<ComplexReport> {
    let spaces = complex_spaces(n, r, pattern)?;
    let mut degrees = Vec::new();
    for space in &spaces {
        let k = space.k;
        let basis = space.basis(n)?;
        let mut failures = Vec::new();
        let mut passes = 0;
        let mut fail = |check: &str, u: &PolyForm, detail: String| {
            failures.push(CaseFailure {
                check: check.into(),
                input: crate::json::form_value(u),
                detail,
            });
        };
        for u in &basis {
            let du = u.exterior_derivative();
            let mut ok = true;
            let recon = if k == 0 {
                let value = u.eval(a, &[])?;
                let qdu = poincare(&du, a)?;
                u.sub(&qdu)?.sub(&constant(n, value)?)?.is_zero()
            } else {
                let q = poincare(u, a)?;
                let mut sum = q.exterior_derivative();
                if k < n {
                    sum = sum.add(&poincare(&du, a)?)?;
                }
                let target = mapping_target(space);
                if !target.contains(&q) {
                    ok = false;
                    fail("poincare-degree", u, format!("Q u = {q} is not in {target}"));
                }
                &sum == u
            };
            if !recon {
                ok = false;
                fail("homotopy", u, "u != dQu + Qdu".into());
            }
            if ok {
                passes += 1;
            }
        }

        let mut bc_passes = 0;
        let mut bc_top_holds = None;
        let bc = vanishing_trace_subspace(&basis)?;
        let bc_dim = bc.len();
        {
            let mut top_ok = 0;
            for u in &bc {
                let du = u.exterior_derivative();
                let mut sum = PolyForm::zero(&full_labels(n), k)?;
                let mut ok = true;
                if k >= 1 {
                    let q = poincare_bc(u, a)?;
                    if !BoundaryForm::trace_of(&q).map(|t| t.is_zero()).unwrap_or(true) {
                        ok = false;
                        fail("poincare-bc-trace", u, "Q̊u has nonzero trace".into());
                    }
                    let target = mapping_target(space);
                    if !target.contains(&q) {
                        ok = false;
                        fail("poincare-bc-degree", u, format!("Q̊u = {q} is not in {target}"));
                    }
                    sum = q.exterior_derivative();
                }
                if k < n {
                    let qdu = poincare_bc(&du, a)?;
                    if !BoundaryForm::trace_of(&qdu).map(|t| t.is_zero()).unwrap_or(true) {
                        ok = false;
                        fail("poincare-bc-trace", u, "Q̊du has nonzero trace".into());
                    }
                    sum = sum.add(&qdu)?;
                }
                let holds = &sum == u;
                if k == n {
                    if holds {
                        top_ok += 1;
                    }
                    if ok {
                        bc_passes += 1;
                    }
                    continue;
                }
                if !holds {
                    ok = false;
                    fail("homotopy-bc", u, "u != dQ̊u + Q̊du".into());
                }
                if ok {
                    bc_passes += 1;
                }
            }
            if k == n {
                bc_top_holds = Some(top_ok);
            }
        }
        degrees.push(DegreeReport {
            k,
            space: space.to_string(),
            dim: basis.len(),
            passes,
            failures,
            bc_dim,
            bc_passes,
            bc_top_holds,
        });
    }
    Ok(ComplexReport {
        n,
        r,
        pattern: pattern.to_vec(),
        degrees,
    })
}

/// Where `Q` sends a space: `P_r Λ^k -> P_{r+1}^- Λ^{k-1}`,
/// `P_r^- Λ^k -> P_r Λ^{k-1}`.
pub fn mapping_target(space: &Space) -> Space {
    match space.family {
        Family::Full => Space {
            k: space.k - 1,
            family: Family::Trimmed,
            r: space.r + 1,
        },
        Family::Trimmed => Space {
            k: space.k - 1,
            family: Family::Full,
            r: space.r,
        },
    }
}

fn constant(n: usize, c: Rational) -> Result<PolyForm> {
    Ok(PolyForm::scalar(crate::bary::BaryPoly::constant(&full_labels(n), c)?))
}

/// The bubble `λ_0 λ_1 ⋯ λ_n`.
pub fn bubble(n: usize) -> Result<PolyForm> {
    let labels = full_labels(n);
    let mut p = crate::bary::BaryPoly::constant(&labels, Rational::one())?;
    for &v in &labels {
        p = p.mul(&crate::bary::BaryPoly::lambda(&labels, v)?)?;
    }
    Ok(PolyForm::scalar(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bary::BaryPoly;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn poincare_of_dlambda() {
        for n in 1..=3 {
            let labels = full_labels(n);
            let a = RationalPoint::barycenter(&labels).unwrap();
            let got = poincare(&PolyForm::dlambda(&labels, 1).unwrap(), &a).unwrap();
            let expected = BaryPoly::lambda(&labels, 1)
                .unwrap()
                .sub(&BaryPoly::constant(&labels, q(1, n as i64 + 1)).unwrap())
                .unwrap();
            assert_eq!(got, PolyForm::scalar(expected));
        }
    }

    #[test]
    fn poincare_inverts_d_on_closed_forms() {
        let tri = full_labels(2);
        let a = RationalPoint::barycenter(&tri).unwrap();
        let w = PolyForm::dlambda(&tri, 1).unwrap().wedge(&PolyForm::dlambda(&tri, 2).unwrap()).unwrap();
        let qw = poincare(&w, &a).unwrap();
        assert_eq!(qw.exterior_derivative(), w);
        let closed = PolyForm::scalar(BaryPoly::lambda(&tri, 1).unwrap().pow(2)).exterior_derivative();
        assert_eq!(poincare(&closed, &a).unwrap().exterior_derivative(), closed);
    }

    #[test]
    fn bubble_gradient() {
        let tri = full_labels(2);
        let a = RationalPoint::barycenter(&tri).unwrap();
        let u = bubble(2).unwrap().exterior_derivative();
        assert!(BoundaryForm::trace_of(&u).unwrap().is_zero());
        let qb = poincare_bc(&u, &a).unwrap();
        assert!(BoundaryForm::trace_of(&qb).unwrap().is_zero());
        assert_eq!(qb.exterior_derivative(), u);
        assert_eq!(qb, bubble(2).unwrap());
    }

    #[test]
    fn pattern_enumeration() {
        assert_eq!(patterns(3).len(), 4);
        assert_eq!(patterns(1), vec![Vec::<Family>::new()]);
        let s = complex_spaces(3, 3, &[Family::Full, Family::Full]).unwrap();
        assert_eq!(s.iter().map(|x| x.r).collect::<Vec<_>>(), vec![3, 2, 1, 1]);
        assert!(complex_spaces(3, 2, &[Family::Full, Family::Full]).is_err());
    }

    #[test]
    fn trimmed_complex_on_triangle() {
        let tri = full_labels(2);
        let a = RationalPoint::barycenter(&tri).unwrap();
        let rep = verify_complex(2, 2, &[Family::Trimmed], &a).unwrap();
        assert!(rep.passed(), "{:?}", rep);
        let rep = verify_complex(2, 2, &[Family::Full], &a).unwrap();
        assert!(rep.passed(), "{:?}", rep);
    }
}
