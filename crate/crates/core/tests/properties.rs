use proptest::prelude::*;

use qga_core::abelian::{smith_invariants, RelationMatrix};
use qga_core::decomp::{
    decomp_equal, decompose_abelian, decompose_nested_gvz, decompose_vz, GvzLayer,
};
use qga_core::families::{
    closed_form_lewis, closed_form_nenciu, closed_form_tau5, lewis_gvz_data, nenciu_gvz_data,
    two_gen_decompose, two_gen_gvz_data, validate_p_good,
};
use qga_core::{AbelianPType, Error, NestedGvzData, TauClass, TwoGenParams};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

fn exps(max_rank: usize, max_exp: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_exp, 0..=max_rank)
}

fn ty(p: u64, e: Vec<u32>) -> AbelianPType {
    AbelianPType::new(p, e).unwrap()
}

/// `(δ step, q, q')` exponents of one layer.
type RawLayer = (u32, Vec<u32>, Vec<u32>);

/// Random layer data: most instances violate some constraint, a few do not.
fn raw_data() -> impl Strategy<Value = (u64, Vec<u32>, Vec<RawLayer>)> {
    (
        prime(),
        exps(3, 3),
        prop::collection::vec((1u32..=3, exps(3, 3), exps(3, 3)), 0..=3),
    )
}

/// A smaller random quotient of `q`: each exponent lowered independently.
fn shrink(q: &[u32], cuts: &[u32]) -> Vec<u32> {
    q.iter()
        .zip(cuts.iter().chain(std::iter::repeat(&0)))
        .map(|(&e, &c)| e.saturating_sub(c))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_layer_data_is_rejected_or_dimension_exact((p, ab, layers) in raw_data()) {
        let mut delta = 0;
        let layers: Vec<GvzLayer> = layers
            .into_iter()
            .map(|(step, q, qp)| {
                delta += step;
                GvzLayer { delta, quotient: ty(p, q), prev_quotient: ty(p, qp) }
            })
            .collect();
        match NestedGvzData::new(p, ty(p, ab), layers) {
            Err(e) => prop_assert!(matches!(e, Error::InvalidLayers(_)), "{e:?}"),
            Ok(data) => {
                let d = decompose_nested_gvz(&data).unwrap();
                prop_assert_eq!(d.dimension(), data.group_order());
                prop_assert_eq!(d.group_order(), data.group_order());
            }
        }
    }

    #[test]
    fn degenerate_layers_are_invisible(
        p in prime(),
        ab in exps(3, 3),
        pads in prop::collection::vec(exps(3, 3), 1..=3),
    ) {
        let base = NestedGvzData::new(p, ty(p, ab.clone()), vec![]).unwrap();
        let layers: Vec<GvzLayer> = pads
            .into_iter()
            .enumerate()
            .map(|(i, q)| GvzLayer { delta: i as u32 + 1, quotient: ty(p, q.clone()), prev_quotient: ty(p, q) })
            .collect();
        let padded = NestedGvzData::new(p, ty(p, ab), layers).unwrap();
        prop_assert!(decomp_equal(&decompose_nested_gvz(&padded).unwrap(), &decompose_nested_gvz(&base).unwrap()));
    }

    #[test]
    fn vz_is_the_single_layer_case(
        p in prime(),
        ab in exps(3, 3),
        center in exps(3, 3),
        cuts in prop::collection::vec(0u32..=3, 0..=3),
        delta in 1u32..=3,
    ) {
        let cmd = shrink(&center, &cuts);
        let layer = GvzLayer { delta, quotient: ty(p, center.clone()), prev_quotient: ty(p, cmd.clone()) };
        if let Ok(data) = NestedGvzData::new(p, ty(p, ab.clone()), vec![layer]) {
            let vz = decompose_vz(p, &ty(p, ab), &ty(p, center), &ty(p, cmd), p.pow(delta)).unwrap();
            prop_assert!(decomp_equal(&vz, &decompose_nested_gvz(&data).unwrap()));
        }
    }

    #[test]
    fn smith_invariants_ignore_elementary_operations(
        p in prime(),
        diag in prop::collection::vec(0u32..=3, 1..=3),
        ops in prop::collection::vec((any::<bool>(), 0usize..3, 0usize..3, -3i64..=3), 0..12),
    ) {
        let n = diag.len();
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { p.pow(diag[i]) as i64 } else { 0 }).collect())
            .collect();
        let expected = smith_invariants(&RelationMatrix::new(n, rows.clone()).unwrap(), p).unwrap();
        for (on_rows, i, j, k) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            if on_rows {
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x += k * y;
                }
                rows.swap(i, j);
            } else {
                for r in rows.iter_mut() {
                    r[i] += k * r[j];
                    r.swap(i, j);
                }
            }
        }
        let got = smith_invariants(&RelationMatrix::new(n, rows).unwrap(), p).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn two_gen_data_has_the_presented_order(
        p in prime(),
        gamma in 1u32..=3,
        beta_extra in 0u32..=2,
        alpha_extra in 0u32..=2,
        rho in 0u32..=3,
        sigma in 0u32..=3,
    ) {
        let beta = gamma + beta_extra;
        let t = TwoGenParams::new(p, beta + alpha_extra, beta, gamma, rho.min(gamma), sigma.min(gamma)).unwrap();
        let data = two_gen_gvz_data(&t).unwrap();
        prop_assert_eq!(data.group_order(), t.order());
        prop_assert_eq!(two_gen_decompose(&t).unwrap().dimension(), t.order());
    }
}

#[test]
fn tau5_closed_form_matches_generic() {
    for p in [3u64, 5] {
        for gamma in 1..=3 {
            for rho in 0..=gamma {
                let t = TwoGenParams::new(p, gamma, gamma, gamma, rho, gamma).unwrap();
                assert_eq!(validate_p_good(&t), TauClass::N5, "{t}");
                assert!(
                    decomp_equal(
                        &closed_form_tau5(&t).unwrap(),
                        &two_gen_decompose(&t).unwrap()
                    ),
                    "{t} p={p}"
                );
            }
        }
    }
}

#[test]
fn corollary_collapses_large_rho() {
    for p in [3u64, 5] {
        for gamma in 1u32..=4 {
            let bound = gamma.saturating_sub(1).div_ceil(2);
            let reference =
                closed_form_tau5(&TwoGenParams::new(p, gamma, gamma, gamma, gamma, gamma).unwrap())
                    .unwrap();
            for rho in bound..=gamma {
                let t = TwoGenParams::new(p, gamma, gamma, gamma, rho, gamma).unwrap();
                assert!(
                    decomp_equal(&closed_form_tau5(&t).unwrap(), &reference),
                    "{t} p={p}"
                );
            }
        }
    }
}

#[test]
fn family_closed_forms_match_generic() {
    for n in 1..=3 {
        for p in [3u64, 5, 7] {
            if p > n as u64 + 1 {
                let d = closed_form_nenciu(n, p).unwrap();
                assert!(decomp_equal(
                    &d,
                    &decompose_nested_gvz(&nenciu_gvz_data(n, p).unwrap()).unwrap()
                ));
                assert_eq!(d.group_order(), p.pow(2 * n + 1));
            }
            let d = closed_form_lewis(n, p).unwrap();
            assert!(decomp_equal(
                &d,
                &decompose_nested_gvz(&lewis_gvz_data(n, p).unwrap()).unwrap()
            ));
            assert_eq!(d.group_order(), p.pow(2 * n + 1));
        }
    }
    assert!(matches!(
        closed_form_nenciu(3, 3),
        Err(Error::PrimeTooSmall { .. })
    ));
}

#[test]
fn abelian_decomposition_dimension() {
    for p in [3u64, 5] {
        for e in [vec![], vec![1], vec![2, 2], vec![1, 2, 3]] {
            let t = ty(p, e);
            assert_eq!(decompose_abelian(&t).dimension(), t.order());
        }
    }
}
