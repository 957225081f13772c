//! Browser demo on the reference triangle. The exact computations run in
//! rational arithmetic; only the sampled values handed to the page are
//! converted to `f64`.
//!
//! The triangle is drawn equilateral with `x0 = (0, 0)`, `x1 = (1, 0)` and
//! `x2 = (1/2, √3/2)`.

use num_traits::ToPrimitive;
use serde::Serialize;

use blendext::bary::format_rational;
use blendext::blending::proj_map;
use blendext::extension::extend;
use blendext::{BaryPoly, BoundaryForm, IndexSet, PolyForm, Rational, RationalPoint, Result, TangentVector};

const LABELS: [usize; 3] = [0, 1, 2];
const HEIGHT: f64 = 0.866_025_403_784_438_6;
/// Denominator used when snapping a clicked point to a rational one.
const SNAP: i64 = 720;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn f64_of(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn edge(omit: usize) -> [usize; 2] {
    match omit {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

pub fn cartesian(x: &RationalPoint) -> (f64, f64) {
    let l1 = f64_of(&x.coord(1));
    let l2 = f64_of(&x.coord(2));
    (l1 + 0.5 * l2, HEIGHT * l2)
}

/// Nearest point of the triangle with coordinates in `1/SNAP`.
pub fn snap(x: f64, y: f64) -> RationalPoint {
    let l2 = (y / HEIGHT).clamp(0.0, 1.0);
    let l1 = (x - 0.5 * l2).clamp(0.0, 1.0 - l2);
    let a = (l1 * SNAP as f64).round() as i64;
    let b = ((l2 * SNAP as f64).round() as i64).min(SNAP - a);
    RationalPoint::new(&LABELS, vec![q(SNAP - a - b, SNAP), q(a, SNAP), q(b, SNAP)]).expect("coordinates sum to one")
}

/// Lattice points `(i, j, res - i - j) / res`, ordered by `λ2` then `λ1`.
pub fn grid(res: usize) -> Vec<RationalPoint> {
    let res = res.max(1) as i64;
    let mut out = Vec::new();
    for j in 0..=res {
        for i in 0..=res - j {
            out.push(RationalPoint::new(&LABELS, vec![q(res - i - j, res), q(i, res), q(j, res)]).unwrap());
        }
    }
    out
}

/// Quadratic data on each edge, interpolating the vertex values `v` and the
/// midpoint values `m`; `m[i]` sits on the edge opposite vertex `i`.
pub fn quadratic_boundary(v: [i64; 3], m: [i64; 3]) -> Result<BoundaryForm> {
    let facets = (0..3)
        .map(|i| {
            let [a, b] = edge(i);
            let terms = vec![
                (vec![2, 0], q(v[a], 1)),
                (vec![0, 2], q(v[b], 1)),
                (vec![1, 1], q(4 * m[i] - v[a] - v[b], 1)),
            ];
            Ok(PolyForm::scalar(BaryPoly::from_symmetric(&[a, b], &terms)?))
        })
        .collect::<Result<Vec<_>>>()?;
    BoundaryForm::new(2, 0, facets)
}

/// Tangential data `(p λa + q λb) dλb` on each edge `[a, b]`, with
/// `(p, q) = c[2i], c[2i + 1]` for the edge opposite vertex `i`.
pub fn linear_one_form_boundary(c: [i64; 6]) -> Result<BoundaryForm> {
    let facets = (0..3)
        .map(|i| {
            let [a, b] = edge(i);
            let p = BaryPoly::from_symmetric(&[a, b], &[(vec![1, 0], q(c[2 * i], 1)), (vec![0, 1], q(c[2 * i + 1], 1))])?;
            PolyForm::from_terms(&[a, b], 1, &[(vec![b], p)])
        })
        .collect::<Result<Vec<_>>>()?;
    BoundaryForm::new(2, 1, facets)
}

#[derive(Serialize)]
pub struct HeatMap {
    pub formula: String,
    pub res: usize,
    /// `[x, y, value]` per grid point.
    pub samples: Vec<[f64; 3]>,
    pub min: f64,
    pub max: f64,
}

pub fn heat_map(v: [i64; 3], m: [i64; 3], res: usize) -> Result<HeatMap> {
    let u = extend(&quadratic_boundary(v, m)?)?;
    let mut samples = Vec::new();
    for x in grid(res) {
        let (px, py) = cartesian(&x);
        samples.push([px, py, f64_of(&u.eval(&x, &[])?)]);
    }
    let min = samples.iter().map(|s| s[2]).fold(f64::INFINITY, f64::min);
    let max = samples.iter().map(|s| s[2]).fold(f64::NEG_INFINITY, f64::max);
    Ok(HeatMap {
        formula: u.to_string(),
        res,
        samples,
        min,
        max,
    })
}

#[derive(Serialize)]
pub struct ArrowField {
    pub formula: String,
    /// `[x, y, vx, vy]`: the vector proxy of the extended 1-form.
    pub arrows: Vec<[f64; 4]>,
    pub max_norm: f64,
}

/// Vector `w` with `w · (x_i - x_0) = u(x_i - x_0)` for `i = 1, 2`.
fn proxy(u: &PolyForm, x: &RationalPoint) -> Result<[f64; 2]> {
    let e1 = f64_of(&u.eval(x, &[TangentVector::edge(&LABELS, 0, 1)?])?);
    let e2 = f64_of(&u.eval(x, &[TangentVector::edge(&LABELS, 0, 2)?])?);
    Ok([e1, (e2 - 0.5 * e1) / HEIGHT])
}

pub fn arrow_field(c: [i64; 6], res: usize) -> Result<ArrowField> {
    let u = extend(&linear_one_form_boundary(c)?)?;
    let mut arrows = Vec::new();
    let mut max_norm: f64 = 0.0;
    for x in grid(res) {
        let (px, py) = cartesian(&x);
        let [vx, vy] = proxy(&u, &x)?;
        max_norm = max_norm.max(vx.hypot(vy));
        arrows.push([px, py, vx, vy]);
    }
    Ok(ArrowField {
        formula: u.to_string(),
        arrows,
        max_norm,
    })
}

#[derive(Serialize)]
pub struct Projection {
    pub set: Vec<usize>,
    pub j: usize,
    pub source: [f64; 2],
    pub image: [f64; 2],
    pub source_exact: Vec<String>,
    pub image_exact: Vec<String>,
}

/// `P_{I,j}` applied to the snapped point nearest `(x, y)`; bit `v` of
/// `mask` puts vertex `v` in `I`.
pub fn project(mask: u32, j: usize, x: f64, y: f64) -> Result<Projection> {
    let set: Vec<usize> = LABELS.iter().copied().filter(|&v| mask & (1 << v) != 0).collect();
    let map = proj_map(&IndexSet::new(set.clone(), 2)?, j)?;
    let src = snap(x, y);
    let img = map.apply(&src)?;
    let (sx, sy) = cartesian(&src);
    let (ix, iy) = cartesian(&img);
    Ok(Projection {
        set,
        j,
        source: [sx, sy],
        image: [ix, iy],
        source_exact: src.coords().iter().map(format_rational).collect(),
        image_exact: img.coords().iter().map(format_rational).collect(),
    })
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    fn to_js<T: serde::Serialize>(r: blendext::Result<T>) -> Result<String, JsError> {
        let v = r.map_err(|e| JsError::new(&e.to_string()))?;
        serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
    }

    /// JSON `{formula, res, samples, min, max}`.
    #[wasm_bindgen]
    pub fn heat_map(v0: i32, v1: i32, v2: i32, m0: i32, m1: i32, m2: i32, res: usize) -> Result<String, JsError> {
        let v = [v0, v1, v2].map(i64::from);
        let m = [m0, m1, m2].map(i64::from);
        to_js(super::heat_map(v, m, res))
    }

    /// JSON `{formula, arrows, max_norm}`. `c` holds six integers.
    #[wasm_bindgen]
    pub fn arrow_field(c: &[i32], res: usize) -> Result<String, JsError> {
        let c: [i64; 6] = c
            .iter()
            .map(|&x| i64::from(x))
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|_| JsError::new("expected six coefficients"))?;
        to_js(super::arrow_field(c, res))
    }

    /// JSON `{set, j, source, image, source_exact, image_exact}`.
    #[wasm_bindgen]
    pub fn project(mask: u32, j: usize, x: f64, y: f64) -> Result<String, JsError> {
        to_js(super::project(mask, j, x, y))
    }
}
