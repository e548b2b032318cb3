//! Randomized invariants over small integral arrangements.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use hyperarr::derivations::{coefficient_matrix, determinant, determinant_cofactor, Derivation, MultiPoly, Ring};
use hyperarr::exactgeom::{smith_normal_form, unimodular_parametrization, IntMatrix, RationalMatrix};
use hyperarr::freeness::{
    free_certify_with, multi_exponents_rank2, replay, FreeStatus, Multiarrangement, RuleOptions,
};
use hyperarr::poset::{charpoly, intersection_poset, is_modular_coatom, ss_exponents, supersolvable};
use hyperarr::quasipoly::{characteristic_quasipoly, count_complement, count_complement_naive};
use hyperarr::{Arrangement, Hyperplane, IntPolynomial};

fn hyperplane(dim: usize, max: i64) -> impl Strategy<Value = Option<Hyperplane>> {
    (prop::collection::vec(-max..=max, dim), -2i64..=2).prop_map(|(a, b)| Hyperplane::new(a, b).ok())
}

fn arrangement(dims: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = Arrangement> {
    dims.prop_flat_map(move |d| {
        prop::collection::vec(hyperplane(d, 2), 1..=max_len)
            .prop_map(move |hs| Arrangement::new(d, hs.into_iter().flatten()).unwrap())
    })
}

fn central(dims: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = Arrangement> {
    dims.prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=max_len).prop_map(move |rows| {
            Arrangement::new(d, rows.into_iter().filter_map(|a| Hyperplane::new(a, 0).ok())).unwrap()
        })
    })
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i128(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn minor_rank(rows: &[Vec<i64>]) -> usize {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rs| {
                subsets(c, k).iter().any(|cs| {
                    let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                    det_i128(&m) != 0
                })
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent_and_rank_matches_minors(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..=4)) {
        let m = RationalMatrix::from_int_rows(&rows);
        let (r, piv) = m.rref();
        let (rr, piv2) = r.rref();
        prop_assert_eq!(&rr, &r);
        prop_assert_eq!(piv, piv2);
        prop_assert_eq!(m.rank(), minor_rank(&rows));
    }

    #[test]
    fn smith_divisors_are_minor_gcds(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=3)) {
        let d = smith_normal_form(&IntMatrix::from_rows(&rows));
        prop_assert!(d.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        prop_assert!(d.iter().all(|x| x.is_positive()));
        let mut prod = BigInt::one();
        let rows = &rows;
        for k in 1..=rows.len().min(4) {
            let g = subsets(rows.len(), k).into_iter().flat_map(|rs| {
                subsets(4, k).into_iter().map(move |cs| {
                    let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                    BigInt::from(det_i128(&m))
                })
            }).fold(BigInt::zero(), |g, x| g.gcd(&x));
            if k <= d.len() {
                prod *= &d[k - 1];
                prop_assert_eq!(&prod, &g);
            } else {
                prop_assert!(g.is_zero());
            }
        }
    }

    #[test]
    fn lattice_points_lie_on_the_hyperplane(a in prop::collection::vec(-6i64..=6, 1..=4), b in -5i64..=5, t in prop::collection::vec(-3i64..=3, 3)) {
        let g = a.iter().fold(0i64, |g, x| g.gcd(x));
        prop_assume!(g != 0);
        let c: Vec<i64> = a.iter().map(|x| x / g).collect();
        let p = unimodular_parametrization(&c, b).unwrap();
        let dot = |v: &[i64]| c.iter().zip(v).map(|(x, y)| x * y).sum::<i64>();
        prop_assert_eq!(dot(&p.base), b);
        prop_assert_eq!(p.basis.len(), c.len() - 1);
        let mut pt = p.base.clone();
        for (v, s) in p.basis.iter().zip(&t) {
            prop_assert_eq!(dot(v), 0);
            for (x, y) in pt.iter_mut().zip(v) {
                *x += s * y;
            }
        }
        prop_assert_eq!(dot(&pt), b);
    }

    #[test]
    fn scaling_does_not_change_a_hyperplane(a in prop::collection::vec(-5i64..=5, 3), b in -5i64..=5, k in prop::sample::select(vec![-3i64, -2, -1, 2, 3])) {
        prop_assume!(a.iter().any(|&x| x != 0));
        let h = Hyperplane::new(a.clone(), b).unwrap();
        let scaled = Hyperplane::new(a.iter().map(|x| k * x).collect(), k * b).unwrap();
        prop_assert_eq!(h, scaled);
    }

    #[test]
    fn deletion_restriction(a in arrangement(1..=3, 7)) {
        let chi = charpoly(&a).unwrap();
        for h in a.hyperplanes() {
            let del = charpoly(&a.delete(h).unwrap()).unwrap();
            let res = charpoly(&a.restrict(h).unwrap()).unwrap();
            prop_assert_eq!(&chi, &(&del - &res), "at {}", h);
        }
    }

    #[test]
    fn coning_multiplies_by_t_minus_one(a in arrangement(1..=3, 7)) {
        let chi = charpoly(&a).unwrap();
        prop_assert_eq!(charpoly(&a.cone()).unwrap(), &IntPolynomial::from_i64(&[-1, 1]) * &chi);
        for h in a.hyperplanes() {
            let mut n = h.normal().to_vec();
            n.push(-h.offset());
            let homog = Hyperplane::new(n, 0).unwrap();
            prop_assert_eq!(a.cone().delete(&homog).unwrap(), a.delete(h).unwrap().cone());
        }
    }

    #[test]
    fn mobius_signs_alternate(a in arrangement(1..=3, 8)) {
        let p = intersection_poset(&a).unwrap();
        for n in p.nodes() {
            let s = if n.rank % 2 == 0 { 1 } else { -1 };
            prop_assert!(n.mobius * s > 0, "mu = {} at rank {}", n.mobius, n.rank);
        }
    }

    #[test]
    fn supersolvable_chains_factor_chi(a in central(2..=4, 8)) {
        if let Some(chain) = supersolvable(&a).unwrap().chain() {
            let e = ss_exponents(chain, a.dim());
            let roots: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            prop_assert_eq!(charpoly(&a).unwrap(), IntPolynomial::from_roots(&roots));
        }
    }

    #[test]
    fn modular_coatoms_agree_with_lattice_modularity(a in central(3..=3, 8)) {
        let p = intersection_poset(&a).unwrap();
        let flats: Vec<BTreeSet<usize>> = p.nodes().iter().map(|n| n.hyperplanes.iter().collect()).collect();
        let rk = |s: &BTreeSet<usize>| a.select(s.iter().copied()).rank().unwrap();
        let r = p.rank();
        prop_assume!(r >= 1);
        for &x in p.flats_of_rank(r - 1) {
            let hx = &flats[x];
            let lattice = flats.iter().all(|y| {
                let join: BTreeSet<usize> = hx.union(y).copied().collect();
                let meet: BTreeSet<usize> = hx.intersection(y).copied().collect();
                rk(hx) + rk(y) == rk(&join) + rk(&meet)
            });
            let sub = a.select(hx.iter().copied());
            prop_assert_eq!(is_modular_coatom(&a, &sub).unwrap(), lattice);
        }
    }

    #[test]
    fn free_verdicts_never_conflict(a in central(3..=3, 8)) {
        let full = RuleOptions::default();
        let variants = [
            full,
            RuleOptions { supersolvable: false, ..full },
            RuleOptions { rank3: false, ..full },
            RuleOptions { localization: false, division: false, ..full },
            RuleOptions { deletion: false, depth: 0, ..full },
        ];
        let chi = charpoly(&a).unwrap();
        let mut verdicts = Vec::new();
        for opts in variants {
            let st = free_certify_with(&a, opts).unwrap();
            prop_assert!(replay(&a, &st).unwrap(), "{st:?}");
            if let FreeStatus::Free { exponents, .. } = &st {
                prop_assert_eq!(exponents.iter().sum::<usize>(), a.len());
                let roots: Vec<i64> = exponents.iter().map(|&x| x as i64).collect();
                prop_assert_eq!(&chi, &IntPolynomial::from_roots(&roots));
            }
            verdicts.push((st.is_free(), st.is_non_free()));
        }
        prop_assert!(!(verdicts.iter().any(|v| v.0) && verdicts.iter().any(|v| v.1)), "{verdicts:?}");
    }

    #[test]
    fn rank2_multi_exponents_sum(lines in prop::sample::subsequence(vec![(1i64, 0i64), (0, 1), (1, 1), (1, -1), (1, 2)], 1..=5), mult in prop::collection::vec(0usize..=4, 5)) {
        let hs: Vec<Hyperplane> = lines.iter().map(|&(a, b)| Hyperplane::new(vec![a, b], 0).unwrap()).collect();
        let a = Arrangement::new(2, hs.clone()).unwrap();
        let m: Vec<usize> = a.hyperplanes().iter().map(|h| mult[hs.iter().position(|x| x == h).unwrap()]).collect();
        let total: usize = m.iter().sum();
        prop_assume!(total <= 12);
        let ma = Multiarrangement::new(a, m).unwrap();
        let (d1, d2) = multi_exponents_rank2(&ma).unwrap();
        prop_assert_eq!(d1 + d2, total);
        prop_assert!(d1 <= d2);
    }

    #[test]
    fn counting_matches_brute_force(a in arrangement(1..=2, 5), q in 1u64..=9) {
        prop_assert_eq!(count_complement(&a, q).unwrap(), count_complement_naive(&a, q));
    }

    #[test]
    fn first_constituent_is_chi(a in arrangement(1..=2, 5)) {
        let qp = characteristic_quasipoly(&a).unwrap();
        prop_assert_eq!(&qp.constituents[0], &charpoly(&a).unwrap());
        for &(q, c) in &qp.samples {
            prop_assert_eq!(qp.eval(q), BigInt::from(c));
        }
        for q in [101u64, 103, 107] {
            if q % qp.period == 1 && q >= qp.q_min {
                prop_assert_eq!(charpoly(&a).unwrap().eval_i64(q as i64), BigInt::from(count_complement(&a, q).unwrap()));
            }
        }
    }

    #[test]
    fn bareiss_matches_cofactor(entries in prop::collection::vec(prop::collection::vec((-2i64..=2, 0u32..=2, 0u32..=2), 1..=3), 9)) {
        let ring = Ring::new(2, true);
        let poly = |terms: &Vec<(i64, u32, u32)>| {
            terms.iter().fold(MultiPoly::zero(ring), |acc, &(c, i, j)| {
                let t = &MultiPoly::var(ring, 0).pow(i) * &MultiPoly::var(ring, 1).pow(j);
                &acc + &t.scale(&BigInt::from(c))
            })
        };
        let cols: Vec<Derivation> = entries
            .chunks(3)
            .map(|c| Derivation::new(c.iter().map(poly).collect()).unwrap())
            .collect();
        let m = coefficient_matrix(&cols);
        prop_assert_eq!(determinant(&m, ring), determinant_cofactor(&m, ring));
    }
}
