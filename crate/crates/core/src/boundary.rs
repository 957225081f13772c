//! Piecewise polynomial forms on the boundary of `S_n`, stored facet by
//! facet.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::{basis, full_labels, Family, PolyForm};
use crate::linalg::{independent_subset, SparseVec};
use crate::poly::Mono;
use crate::Rational;

/// Vertex labels of the facet opposite vertex `omit`.
pub fn facet_labels(n: usize, omit: usize) -> Vec<usize> {
    (0..=n).filter(|&v| v != omit).collect()
}

/// One polynomial `k`-form per facet of `S_n`, indexed by the omitted
/// vertex, with matching traces on shared faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryForm {
    n: usize,
    k: usize,
    facets: Vec<PolyForm>,
}

impl BoundaryForm {
    /// Builds boundary data from per-facet forms (`facets[i]` lives on the
    /// facet omitting `i`) and rejects incompatible traces.
    pub fn new(n: usize, k: usize, facets: Vec<PolyForm>) -> Result<Self> {
        let b = BoundaryForm::new_unchecked(n, k, facets)?;
        if !b.check_compatibility() {
            return Err(Error::IncompatibleTraces(
                "facet forms disagree on a shared face".into(),
            ));
        }
        Ok(b)
    }

    /// As [`new`](Self::new) without the interface check.
    pub fn new_unchecked(n: usize, k: usize, facets: Vec<PolyForm>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("a point has no boundary".into()));
        }
        if k > n {
            return Err(Error::DegreeMismatch(format!("{k}-forms on the boundary of S_{n}")));
        }
        if facets.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} facet forms for S_{n}, expected {}",
                facets.len(),
                n + 1
            )));
        }
        for (i, f) in facets.iter().enumerate() {
            if f.labels() != facet_labels(n, i).as_slice() {
                return Err(Error::DimensionMismatch(format!(
                    "facet form {i} lives on {:?}",
                    f.labels()
                )));
            }
            if f.k() != k {
                return Err(Error::DegreeMismatch(format!(
                    "facet form {i} has degree {}, expected {k}",
                    f.k()
                )));
            }
        }
        Ok(BoundaryForm { n, k, facets })
    }

    pub fn zero(n: usize, k: usize) -> Result<Self> {
        let facets = (0..=n)
            .map(|i| PolyForm::zero(&facet_labels(n, i), k))
            .collect::<Result<Vec<_>>>()?;
        BoundaryForm::new_unchecked(n, k, facets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Form on the facet opposite vertex `omit`.
    pub fn facet(&self, omit: usize) -> &PolyForm {
        &self.facets[omit]
    }

    pub fn facets(&self) -> &[PolyForm] {
        &self.facets
    }

    pub fn is_zero(&self) -> bool {
        self.facets.iter().all(PolyForm::is_zero)
    }

    /// Traces on the facets of `S_n`; requires `k <= n - 1`.
    pub fn trace_of(u: &PolyForm) -> Result<Self> {
        if u.labels() != full_labels(u.dim()).as_slice() {
            return Err(Error::DimensionMismatch(format!(
                "boundary traces need a form on {{0..n}}, got {:?}",
                u.labels()
            )));
        }
        let n = u.dim();
        if n == 0 || u.k() + 1 > n {
            return Err(Error::DegreeMismatch(format!(
                "trace of a {}-form onto the boundary of S_{n}",
                u.k()
            )));
        }
        let facets = (0..=n)
            .map(|i| u.trace(&facet_labels(n, i)))
            .collect::<Result<Vec<_>>>()?;
        BoundaryForm::new_unchecked(n, u.k(), facets)
    }

    /// All pairwise traces onto shared `(n-2)`-faces agree.
    pub fn check_compatibility(&self) -> bool {
        let n = self.n;
        if n < 2 {
            return true;
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let common: Vec<usize> = (0..=n).filter(|&v| v != i && v != j).collect();
                let (Ok(a), Ok(b)) = (self.facets[i].trace(&common), self.facets[j].trace(&common)) else {
                    return false;
                };
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    /// Facet-wise exterior derivative.
    pub fn exterior_derivative(&self) -> BoundaryForm {
        BoundaryForm {
            n: self.n,
            k: self.k + 1,
            facets: self.facets.iter().map(PolyForm::exterior_derivative).collect(),
        }
    }

    pub fn add(&self, other: &BoundaryForm) -> Result<BoundaryForm> {
        self.same_shape(other)?;
        let facets = self
            .facets
            .iter()
            .zip(&other.facets)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundaryForm { facets, ..*self })
    }

    pub fn sub(&self, other: &BoundaryForm) -> Result<BoundaryForm> {
        self.same_shape(other)?;
        let facets = self
            .facets
            .iter()
            .zip(&other.facets)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundaryForm { facets, ..*self })
    }

    pub fn scale(&self, s: &Rational) -> BoundaryForm {
        BoundaryForm {
            facets: self.facets.iter().map(|f| f.scale(s)).collect(),
            ..*self
        }
    }

    fn same_shape(&self, other: &BoundaryForm) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::DimensionMismatch(format!(
                "boundary forms of shape ({}, {}) and ({}, {})",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    /// `Σ_i (-1)^i ∫_{facet_i} u_i`; requires `k = n - 1`.
    pub fn integral(&self) -> Result<Rational> {
        if self.k + 1 != self.n {
            return Err(Error::DegreeMismatch(format!(
                "boundary integral of a {}-form on the boundary of S_{}",
                self.k, self.n
            )));
        }
        let mut total = Rational::zero();
        for (i, f) in self.facets.iter().enumerate() {
            let v = f.integrate_over(&facet_labels(self.n, i))?;
            if i % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        Ok(total)
    }

    pub fn is_member(&self, family: Family, r: u32) -> bool {
        self.facets.iter().all(|f| f.is_member(family, r))
    }

    pub(crate) fn coefficient_vector(&self) -> SparseVec<(usize, u32, Mono)> {
        let mut v = SparseVec::new();
        for (i, f) in self.facets.iter().enumerate() {
            for ((m, mono), c) in f.coefficient_vector() {
                v.insert((i, m, mono), c);
            }
        }
        v
    }
}

/// Basis of `tr P_r Λ^k(S_n)` or `tr P_r^- Λ^k(S_n)`, selected greedily from
/// the traces of the interior basis.
pub fn boundary_basis(n: usize, r: u32, k: usize, family: Family) -> Result<Vec<BoundaryForm>> {
    if k + 1 > n {
        return Err(Error::DegreeMismatch(format!(
            "boundary {k}-forms need k <= n - 1 (n = {n})"
        )));
    }
    traced_independent(&basis(n, r, k, family)?)
}

pub(crate) fn traced_independent(forms: &[PolyForm]) -> Result<Vec<BoundaryForm>> {
    let traces = forms
        .iter()
        .map(BoundaryForm::trace_of)
        .collect::<Result<Vec<_>>>()?;
    let vecs: Vec<_> = traces.iter().map(BoundaryForm::coefficient_vector).collect();
    let keep = independent_subset(&vecs);
    Ok(keep.into_iter().map(|i| traces[i].clone()).collect())
}
