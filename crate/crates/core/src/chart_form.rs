//! Polynomial differential forms in chart variables `z_0, ..., z_{N-1}`.
//!
//! A component is addressed by the bit mask of its increasing multi-index,
//! so `dz_1 ∧ dz_3` is stored under `0b1010`. Everything here is
//! coordinate-level; the labelled, barycentric view lives in
//! [`PolyForm`](crate::PolyForm).

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::Rational;

/// Sign of `dz_A ∧ dz_B` relative to `dz_{A∪B}` (0 when they overlap).
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        // bits of a above position j
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mask_bits(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn masks_of_size(nvars: usize, k: usize) -> Vec<u32> {
    (0u32..(1u32 << nvars))
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartForm {
    nvars: usize,
    degree: usize,
    comps: BTreeMap<u32, Poly>,
}

impl ChartForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        ChartForm {
            nvars,
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn scalar(p: Poly) -> Self {
        let mut f = ChartForm::zero(p.nvars(), 0);
        f.add_component(0, p);
        f
    }

    /// `dz_i`.
    pub fn differential(nvars: usize, i: usize) -> Self {
        let mut f = ChartForm::zero(nvars, 1);
        f.add_component(1 << i, Poly::one(nvars));
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.comps.iter().map(|(m, p)| (*m, p))
    }

    pub fn component(&self, mask: u32) -> Option<&Poly> {
        self.comps.get(&mask)
    }

    pub fn add_component(&mut self, mask: u32, p: Poly) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        debug_assert!(mask >> self.nvars == 0);
        if p.is_zero() {
            return;
        }
        match self.comps.entry(mask) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &ChartForm) {
        assert_eq!(self.nvars, other.nvars);
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        for (m, p) in &other.comps {
            self.add_component(*m, p.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &ChartForm, s: &Rational) {
        assert_eq!(self.nvars, other.nvars);
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        if s.is_zero() {
            return;
        }
        for (m, p) in &other.comps {
            self.add_component(*m, p.scale(s));
        }
    }

    pub fn scale(&self, s: &Rational) -> ChartForm {
        let mut out = ChartForm::zero(self.nvars, self.degree);
        out.add_scaled(self, s);
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> ChartForm {
        let mut out = ChartForm::zero(self.nvars, self.degree);
        for (m, c) in &self.comps {
            out.add_component(*m, c.mul(p));
        }
        out
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Poly) -> Poly) -> ChartForm {
        let mut out = ChartForm::zero(self.nvars, self.degree);
        for (m, c) in &self.comps {
            out.add_component(*m, f(c));
        }
        out
    }

    pub fn try_map_coefficients<E>(
        &self,
        mut f: impl FnMut(&Poly) -> Result<Poly, E>,
    ) -> Result<ChartForm, E> {
        let mut out = ChartForm::zero(self.nvars, self.degree);
        for (m, c) in &self.comps {
            out.add_component(*m, f(c)?);
        }
        Ok(out)
    }

    /// Largest coefficient degree; `None` for the zero form.
    pub fn poly_degree(&self) -> Option<u32> {
        self.comps.values().filter_map(Poly::degree).max()
    }

    pub fn wedge(&self, other: &ChartForm) -> ChartForm {
        assert_eq!(self.nvars, other.nvars);
        let degree = self.degree + other.degree;
        let mut out = ChartForm::zero(self.nvars, degree);
        if degree > self.nvars {
            return out;
        }
        for (ma, pa) in &self.comps {
            for (mb, pb) in &other.comps {
                let s = wedge_sign(*ma, *mb);
                if s == 0 {
                    continue;
                }
                let prod = pa.mul(pb);
                let prod = if s < 0 { prod.scale(&-Rational::one()) } else { prod };
                out.add_component(ma | mb, prod);
            }
        }
        out
    }

    pub fn exterior_derivative(&self) -> ChartForm {
        let mut out = ChartForm::zero(self.nvars, self.degree + 1);
        if self.degree + 1 > self.nvars {
            return out;
        }
        for (m, p) in &self.comps {
            for i in 0..self.nvars {
                if m & (1 << i) != 0 {
                    continue;
                }
                let dp = p.derivative(i);
                if dp.is_zero() {
                    continue;
                }
                let s = wedge_sign(1 << i, *m);
                let dp = if s < 0 { dp.scale(&-Rational::one()) } else { dp };
                out.add_component(m | (1 << i), dp);
            }
        }
        out
    }

    /// Contraction with the vector field whose `dz_i` component is
    /// `field[i]`: the field fills the first slot.
    pub fn contract(&self, field: &[Poly]) -> ChartForm {
        assert_eq!(field.len(), self.nvars);
        assert!(self.degree >= 1);
        let mut out = ChartForm::zero(self.nvars, self.degree - 1);
        for (m, p) in &self.comps {
            for (pos, v) in mask_bits(*m).into_iter().enumerate() {
                if field[v].is_zero() {
                    continue;
                }
                let term = p.mul(&field[v]);
                let term = if pos % 2 == 1 { term.scale(&-Rational::one()) } else { term };
                out.add_component(m & !(1 << v), term);
            }
        }
        out
    }

    /// Pullback along the polynomial map whose `i`-th target chart
    /// coordinate is `subst[i]`, a polynomial in the source chart.
    pub fn pullback(&self, subst: &[Poly]) -> ChartForm {
        let source_nvars = subst.first().map(Poly::nvars).unwrap_or(0);
        self.pullback_into(subst, source_nvars)
    }

    /// As [`pullback`](Self::pullback) with the source variable count given
    /// explicitly, which matters when the target is a point.
    pub fn pullback_into(&self, subst: &[Poly], source_nvars: usize) -> ChartForm {
        assert_eq!(subst.len(), self.nvars, "pullback: wrong number of target coordinates");
        let mut out = ChartForm::zero(source_nvars, self.degree);
        if subst.is_empty() {
            // target is a point; only constants survive
            if self.degree == 0 {
                if let Some(c) = self.comps.get(&0).and_then(Poly::as_constant) {
                    out.add_component(0, Poly::constant(source_nvars, c));
                }
            }
            return out;
        }
        if self.degree > source_nvars {
            return out;
        }
        let dg: Vec<ChartForm> = subst
            .iter()
            .map(|g| ChartForm::scalar(g.clone()).exterior_derivative())
            .collect();
        let mut wedges: HashMap<u32, ChartForm> = HashMap::new();
        for (m, p) in &self.comps {
            let w = wedge_of_differentials(*m, &dg, source_nvars, &mut wedges);
            if w.is_zero() {
                continue;
            }
            let coeff = p.compose(subst);
            if coeff.is_zero() {
                continue;
            }
            out.add_assign_ref(&w.mul_poly(&coeff));
        }
        out
    }

    /// Pointwise value: one rational per component.
    pub fn eval(&self, point: &[Rational]) -> BTreeMap<u32, Rational> {
        self.comps
            .iter()
            .map(|(m, p)| (*m, p.eval(point)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

fn wedge_of_differentials(
    mask: u32,
    dg: &[ChartForm],
    nvars: usize,
    cache: &mut HashMap<u32, ChartForm>,
) -> ChartForm {
    if mask == 0 {
        return ChartForm::scalar(Poly::one(nvars));
    }
    if let Some(w) = cache.get(&mask) {
        return w.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = wedge_of_differentials(mask & (mask - 1), dg, nvars, cache);
    let w = dg[first].wedge(&rest);
    cache.insert(mask, w.clone());
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b11, 0b01), 0);
        // dz2 ∧ (dz0 ∧ dz1) = dz0 ∧ dz1 ∧ dz2
        assert_eq!(wedge_sign(0b100, 0b011), 1);
        // dz1 ∧ (dz0 ∧ dz2) = -dz0 ∧ dz1 ∧ dz2
        assert_eq!(wedge_sign(0b010, 0b101), -1);
    }

    #[test]
    fn d_squared_vanishes_on_a_sample() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let f = x.mul(&y).mul(&z).mul(&x);
        let form = ChartForm::scalar(f).wedge(&ChartForm::differential(3, 1));
        assert!(form.exterior_derivative().exterior_derivative().is_zero());
    }
}
