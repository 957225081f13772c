use proptest::prelude::*;

use blendext::bary::BaryPoly;
use blendext::boundary::BoundaryForm;
use blendext::forms::{basis, basis_full, basis_trimmed, Family};
use blendext::index::{enumerate_gamma, IndexSet};
use blendext::points::interior_points;
use blendext::{AffineMap, PolyForm, Rational, RationalPoint};

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn labels(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// Random polynomial of degree at most `deg` on `S_n`, in symmetric form.
fn poly(n: usize, deg: u32) -> impl Strategy<Value = BaryPoly> {
    let term = (proptest::collection::vec(0..=deg, n + 1), -4i64..=4, 1i64..=3);
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        let t: Vec<(Vec<u32>, Rational)> = terms
            .into_iter()
            .map(|(mut alpha, a, b)| {
                // keep total degree within bound
                while alpha.iter().sum::<u32>() > deg {
                    let i = alpha.iter().position(|&e| e > 0).unwrap();
                    alpha[i] -= 1;
                }
                (alpha, q(a, b))
            })
            .collect();
        BaryPoly::from_symmetric(&labels(n), &t).unwrap()
    })
}

fn form(n: usize, k: usize, deg: u32) -> impl Strategy<Value = PolyForm> {
    let sets: Vec<Vec<usize>> = if k == 0 {
        vec![vec![]]
    } else {
        enumerate_gamma(n, k - 1).unwrap().into_iter().map(|s| s.labels().to_vec()).collect()
    };
    proptest::collection::vec((proptest::sample::select(sets), poly(n, deg)), 0..4)
        .prop_map(move |terms| PolyForm::from_terms(&labels(n), k, &terms).unwrap())
}

fn point(n: usize) -> impl Strategy<Value = RationalPoint> {
    any::<u64>().prop_map(move |seed| interior_points(n, 1, seed).unwrap().remove(0))
}

/// Affine map `S_m -> S_n` sending vertex `v` to a random point.
fn affine(m: usize, n: usize) -> impl Strategy<Value = AffineMap> {
    proptest::collection::vec(any::<u64>(), m + 1).prop_map(move |seeds| {
        let images: Vec<RationalPoint> = seeds.iter().map(|&s| interior_points(n, 1, s).unwrap().remove(0)).collect();
        let coords = (0..=n)
            .map(|t| {
                let terms: Vec<(Vec<u32>, Rational)> = (0..=m)
                    .map(|v| {
                        let mut alpha = vec![0; m + 1];
                        alpha[v] = 1;
                        (alpha, images[v].coord(t))
                    })
                    .collect();
                BaryPoly::from_symmetric(&labels(m), &terms).unwrap()
            })
            .collect();
        AffineMap::new(&labels(m), &labels(n), coords).unwrap()
    })
}

fn dim_and_degrees() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), 0..=n, 0..=n)).prop_filter("j + k <= n", |(n, j, k)| j + k <= *n)
}

#[test]
fn gamma_sizes_and_complements() {
    for n in 0..=6 {
        for m in 0..=n {
            let sets = enumerate_gamma(n, m).unwrap();
            let mut c = 1usize;
            for i in 0..=m {
                c = c * (n + 1 - i) / (i + 1);
            }
            assert_eq!(sets.len(), c, "n={n} m={m}");
            if n <= 4 && m < n {
                for s in &sets {
                    assert_eq!(&s.complement().complement(), s);
                    assert_eq!(s.sort_with_sign(), (s.clone(), 1));
                }
            }
        }
    }
}

#[test]
fn d_squared_vanishes_on_bases() {
    for n in 1usize..=3 {
        for r in 1..=3 {
            for k in 0..n - 1 {
                for u in basis_full(n, r, k).unwrap() {
                    assert!(u.exterior_derivative().exterior_derivative().is_zero());
                }
            }
        }
    }
}

#[test]
fn boundary_trace_commutes_with_d() {
    for n in 1usize..=3 {
        for r in 1..=3 {
            for k in 0..n - 1 {
                for u in basis_full(n, r, k).unwrap() {
                    let lhs = BoundaryForm::trace_of(&u).unwrap().exterior_derivative();
                    let rhs = BoundaryForm::trace_of(&u.exterior_derivative()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn global_stokes_on_bases() {
    for n in 1..=3 {
        for r in 1..=3 {
            for u in basis_full(n, r, n - 1).unwrap() {
                let lhs = BoundaryForm::trace_of(&u).unwrap().integral().unwrap();
                let rhs = u.exterior_derivative().integrate_over(&labels(n)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn stokes_on_faces() {
    for n in 1..=3 {
        for r in 1..=2 {
            for k in 0..n {
                for u in basis_full(n, r, k).unwrap() {
                    let du = u.exterior_derivative();
                    for j in enumerate_gamma(n, k + 1).unwrap() {
                        let lhs = du.integrate_over(j.labels()).unwrap();
                        let mut rhs = Rational::from_integer(0.into());
                        for i in 0..j.len() {
                            let v = u.integrate_over(j.remove_at(i).unwrap().labels()).unwrap();
                            rhs += if i % 2 == 0 { v } else { -v };
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn wedge_of_trimmed_spaces() {
    for n in 2..=3 {
        for r in 1..=2 {
            for j in 0..n {
                for k in 0..=(n - j) {
                    let us = basis_trimmed(n, r, j).unwrap();
                    let vs = basis_trimmed(n, 1, k).unwrap();
                    for u in us.iter().take(6) {
                        for v in &vs {
                            assert!(u.wedge(v).unwrap().is_member(Family::Trimmed, r + 1));
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn remove_at_commutes(n in 2usize..=5, seed in any::<u64>()) {
        let sets = enumerate_gamma(n, n.min(3)).unwrap();
        let j = &sets[(seed as usize) % sets.len()];
        for b in 1..j.len() {
            for a in 0..b {
                let lhs = j.remove_at(b).unwrap().remove_at(a).unwrap();
                let rhs = j.remove_at(a).unwrap().remove_at(b - 1).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sort_with_sign_matches_swaps(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let set = IndexSet::new(perm.clone(), 4).unwrap();
        let (sorted, sign) = set.sort_with_sign();
        prop_assert_eq!(sorted.labels(), &[0, 1, 2, 3][..]);
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                inversions += (perm[i] > perm[j]) as i32;
            }
        }
        prop_assert_eq!(sign, if inversions % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn partition_of_unity_is_absorbed((n, p) in (1usize..=3).prop_flat_map(|n| poly(n, 2).prop_map(move |p| (n, p)))) {
        let sum = BaryPoly::lambda_sum(&labels(n), &labels(n)).unwrap();
        prop_assert_eq!(p.mul(&sum).unwrap(), p);
    }

    #[test]
    fn eval_is_a_ring_homomorphism((p, r, x) in (1usize..=3).prop_flat_map(|n| (poly(n, 3), poly(n, 3), point(n)))) {
        let prod = p.mul(&r).unwrap().eval(&x).unwrap();
        prop_assert_eq!(prod, p.eval(&x).unwrap() * r.eval(&x).unwrap());
        let sum = p.add(&r).unwrap().eval(&x).unwrap();
        prop_assert_eq!(sum, p.eval(&x).unwrap() + r.eval(&x).unwrap());
    }

    #[test]
    fn leibniz((u, v, j) in dim_and_degrees().prop_flat_map(|(n, j, k)| (form(n, j, 2), form(n, k, 2), Just(j)))) {
        let lhs = u.wedge(&v).unwrap().exterior_derivative();
        let mut rhs = u.exterior_derivative().wedge(&v).unwrap();
        let second = u.wedge(&v.exterior_derivative()).unwrap();
        rhs = if j % 2 == 0 { rhs.add(&second).unwrap() } else { rhs.sub(&second).unwrap() };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative((u, v, j, k) in dim_and_degrees().prop_flat_map(|(n, j, k)| (form(n, j, 2), form(n, k, 1), Just(j), Just(k)))) {
        let uv = u.wedge(&v).unwrap();
        let vu = v.wedge(&u).unwrap();
        if (j * k) % 2 == 0 {
            prop_assert_eq!(uv, vu);
        } else {
            prop_assert_eq!(uv, vu.scale(&q(-1, 1)));
        }
    }

    #[test]
    fn trace_respects_d_and_wedge((u, v, n) in (2usize..=3).prop_flat_map(|n| (form(n, 1, 2), form(n, 0, 2), Just(n))), omit in 0usize..=3) {
        let omit = omit % (n + 1);
        let face: Vec<usize> = labels(n).into_iter().filter(|&l| l != omit).collect();
        prop_assert_eq!(u.exterior_derivative().trace(&face).unwrap(), u.trace(&face).unwrap().exterior_derivative());
        let uv = v.wedge(&u).unwrap().trace(&face).unwrap();
        prop_assert_eq!(uv, v.trace(&face).unwrap().wedge(&u.trace(&face).unwrap()).unwrap());
    }

    #[test]
    fn pullback_respects_d_and_wedge(
        (u, v, map) in (1usize..=3).prop_flat_map(|n| (1usize..=n).prop_flat_map(move |m| (form(n, 1, 2), form(n, 1, 1), affine(m, n))))
    ) {
        let pu = u.pullback_affine(&map).unwrap();
        prop_assert_eq!(u.exterior_derivative().pullback_affine(&map).unwrap(), pu.exterior_derivative());
        let pv = v.pullback_affine(&map).unwrap();
        prop_assert_eq!(u.wedge(&v).unwrap().pullback_affine(&map).unwrap(), pu.wedge(&pv).unwrap());
    }

    #[test]
    fn integration_orientation(
        (u, perm) in (1usize..=3).prop_flat_map(|n| (form(n, n, 2), Just(labels(n)).prop_shuffle()))
    ) {
        let n = perm.len() - 1;
        let set = IndexSet::new(perm.clone(), n).unwrap();
        let (_, sign) = set.sort_with_sign();
        let a = u.integrate_over(&perm).unwrap();
        let b = u.integrate_over(&labels(n)).unwrap();
        prop_assert_eq!(a, if sign > 0 { b } else { -b });
    }

    #[test]
    fn bases_are_members(n in 1usize..=3, r in 1u32..=2, k in 0usize..=3) {
        prop_assume!(k <= n);
        for family in Family::BOTH {
            for u in basis(n, r, k, family).unwrap() {
                prop_assert!(u.is_member(family, r));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn divide_exact_inverts_products((p, d) in (1usize..=3).prop_flat_map(|n| (poly(n, 2), poly(n, 2)))) {
        prop_assume!(!d.is_zero());
        let prod = p.mul(&d).unwrap();
        prop_assert_eq!(prod.divide_exact(&d).unwrap(), p);
    }
}
