use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use cascade_lab::minimal::compute_d_x;
use cascade_lab::weyl::{bruhat_leq, hecke_product};
use cascade_lab::{Context, Degree, DynkinSpec, RootSystem, SimpleSet, WeylElement};

const TYPES: &[&str] = &["A3", "A4", "B3", "C3", "B4", "D4", "D5", "F4", "G2"];

fn systems() -> &'static Vec<Arc<RootSystem>> {
    static S: OnceLock<Vec<Arc<RootSystem>>> = OnceLock::new();
    S.get_or_init(|| {
        TYPES
            .iter()
            .map(|t| Arc::new(RootSystem::new(t.parse::<DynkinSpec>().unwrap()).unwrap()))
            .collect()
    })
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 0..max_len)
}

fn element(rs: &RootSystem, w: &[usize]) -> WeylElement {
    let w: Vec<usize> = w.iter().map(|s| s % rs.rank).collect();
    WeylElement::from_word(rs, &w)
}

/// A context and a degree inside its d_X box, from raw random data.
fn context_and_degree(t: usize, bits: u32, raw: &[u32]) -> (Context, Degree) {
    let rs = systems()[t % TYPES.len()].clone();
    let ctx = Context::new(rs.clone(), SimpleSet(bits & ((1 << rs.rank) - 1)));
    let dx = compute_d_x(&ctx).unwrap();
    let d = Degree(dx.0.iter().zip(raw).map(|(m, r)| r % (m + 1)).collect());
    (ctx, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hecke_is_associative(t in 0usize..9, a in word(12), b in word(12), c in word(12)) {
        let rs = &systems()[t];
        let (u, v, w) = (element(rs, &a), element(rs, &b), element(rs, &c));
        let l = hecke_product(rs, &hecke_product(rs, &u, &v), &w);
        let r = hecke_product(rs, &u, &hecke_product(rs, &v, &w));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn hecke_dominates_factors(t in 0usize..9, a in word(12), b in word(12)) {
        let rs = &systems()[t];
        let (u, v) = (element(rs, &a), element(rs, &b));
        let h = hecke_product(rs, &u, &v);
        prop_assert!(bruhat_leq(rs, &u, &h) && bruhat_leq(rs, &v, &h));
        prop_assert!(bruhat_leq(rs, &u.mul(&v), &h));
        prop_assert!(h.length() <= u.length() + v.length());
    }

    #[test]
    fn bruhat_respects_inverse_and_length(t in 0usize..9, a in word(14), b in word(14)) {
        let rs = &systems()[t];
        let (u, v) = (element(rs, &a), element(rs, &b));
        let le = bruhat_leq(rs, &u, &v);
        prop_assert_eq!(le, bruhat_leq(rs, &u.inverse(), &v.inverse()));
        if le {
            prop_assert!(u.length() <= v.length());
        }
        prop_assert!(bruhat_leq(rs, &WeylElement::identity(rs), &u));
    }

    #[test]
    fn reduced_word_round_trip(t in 0usize..9, a in word(20)) {
        let rs = &systems()[t];
        let u = element(rs, &a);
        let w = u.reduced_word(rs);
        prop_assert_eq!(w.len(), u.length());
        prop_assert_eq!(WeylElement::from_word(rs, &w), u);
    }

    #[test]
    fn greedy_decomposition_is_greedy(t in 0usize..9, bits in 0u32..256, raw in prop::collection::vec(0u32..64, 8)) {
        let (ctx, d) = context_and_degree(t, bits, &raw);
        let g = ctx.greedy_decomposition(&d);
        prop_assert!(ctx.is_greedy_decomposition(&d, &g));
        prop_assert_eq!(ctx.degree_sum(&g), d.clone());
        prop_assert!(ctx.count_greedy(&d) >= 1u32.into());
        prop_assert_eq!(ctx.maximal_roots(&d).len(), ctx.connected_components(&d).len());
    }

    #[test]
    fn z_is_monotone_and_a_min_rep(t in 0usize..9, bits in 0u32..256, raw in prop::collection::vec(0u32..64, 8), raw2 in prop::collection::vec(0u32..64, 8)) {
        let (ctx, d) = context_and_degree(t, bits, &raw);
        let e = Degree(d.0.iter().zip(&raw2).map(|(x, r)| x + r % 2).collect());
        let (zd, ze) = (ctx.z_d_p(&d), ctx.z_d_p(&e));
        prop_assert!(ctx.coset().is_min_rep(&zd));
        prop_assert!(ctx.bruhat_leq(&zd, &ze));
        let tz = ctx.tilde_z_d_p(&d);
        prop_assert!(tz.mul(&tz).is_identity());
    }

    #[test]
    fn extended_support_is_monotone(t in 0usize..9, bits in 0u32..256, raw in prop::collection::vec(0u32..64, 8), raw2 in prop::collection::vec(0u32..64, 8)) {
        let (ctx, d) = context_and_degree(t, bits, &raw);
        let e = Degree(d.0.iter().zip(&raw2).map(|(x, r)| x + r % 3).collect());
        prop_assert!(ctx.naive_support(&d).is_subset(&ctx.extended_support(&d)));
        prop_assert!(ctx.extended_support(&d).is_subset(&ctx.extended_support(&e)));
    }

    #[test]
    fn degree_strings_round_trip(v in prop::collection::vec(0u32..1000, 0..8)) {
        let d = Degree(v);
        let s = d.to_string();
        prop_assert_eq!(s.parse::<Degree>().unwrap(), d.clone());
        let j = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<Degree>(&j).unwrap(), d);
    }
}
