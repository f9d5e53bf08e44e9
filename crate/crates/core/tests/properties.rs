use lattice_census::oracle::enumerate_by_reducible;
use lattice_census::{
    canonical_certificate, classify_fbb, decompose, enumerate_partitions, partition_count, realize,
    AdjunctRep, Certificate, Lattice,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::sample::Index;
use std::sync::OnceLock;

/// Adjunct representations over a spine, with pairs two or more steps apart.
fn adjunct_rep() -> impl Strategy<Value = AdjunctRep> {
    (3usize..7).prop_flat_map(|spine| {
        let pair = (0..spine - 2).prop_flat_map(move |a| (Just(a), a + 2..spine));
        let attachment = (pair, 1usize..4);
        prop::collection::vec(attachment, 0..4).prop_map(move |ts| {
            ts.into_iter()
                .fold(AdjunctRep::chain(spine), |rep, ((a, b), len)| rep.attach(a, b, len))
        })
    })
}

fn realized() -> impl Strategy<Value = (AdjunctRep, Lattice)> {
    adjunct_rep().prop_map(|rep| {
        let l = realize(&rep).expect("spine pairs are valid adjunct pairs");
        (rep, l)
    })
}

fn with_permutation() -> impl Strategy<Value = (Lattice, Vec<usize>)> {
    realized().prop_flat_map(|(_, l)| {
        let perm = Just((0..l.len()).collect::<Vec<_>>()).prop_shuffle();
        (Just(l), perm)
    })
}

fn three_reducible_pool() -> &'static [Certificate] {
    static POOL: OnceLock<Vec<Certificate>> = OnceLock::new();
    POOL.get_or_init(|| {
        (6..=9)
            .flat_map(|n| enumerate_by_reducible(n, 3).unwrap())
            .collect()
    })
}

proptest! {
    #[test]
    fn certificate_ignores_labels((l, perm) in with_permutation()) {
        let relabelled = l.relabel(&perm);
        prop_assert_eq!(
            canonical_certificate(relabelled.digraph()),
            canonical_certificate(l.digraph())
        );
    }

    #[test]
    fn certificate_decodes_to_an_isomorphic_copy((_, l) in realized()) {
        let cert = canonical_certificate(l.digraph());
        prop_assert_eq!(cert.element_count(), l.len());
        prop_assert_eq!(canonical_certificate(&cert.to_digraph()), cert);
    }

    #[test]
    fn every_attachment_adds_one_independent_cycle((rep, l) in realized()) {
        prop_assert_eq!(l.len(), rep.element_count());
        prop_assert_eq!(l.edge_count(), l.len() - 1 + rep.attachments.len());
        prop_assert_eq!(l.digraph().nullity(), rep.attachments.len());
    }

    #[test]
    fn reducibles_are_self_dual((_, l) in realized()) {
        prop_assert_eq!(l.dual().classify_elements().red, l.classify_elements().red);
    }

    #[test]
    fn edges_stay_within_dismantlable_bounds((_, l) in realized()) {
        let n = l.len();
        let r = l.reducible_count();
        prop_assert!(l.is_dismantlable());
        prop_assert!(l.edge_count() + 1 >= n);
        prop_assert!(l.edge_count() <= 2 * n - 4 || n < 4);
        if r > 0 {
            prop_assert!(r >= 2);
        }
    }

    #[test]
    fn decompose_then_realize_is_isomorphic((_, l) in realized()) {
        if let Ok(rep) = decompose(&l) {
            let again = realize(&rep).unwrap();
            prop_assert_eq!(
                canonical_certificate(again.digraph()),
                canonical_certificate(l.digraph())
            );
        }
    }

    #[test]
    fn fbb_class_follows_duality(i in any::<Index>()) {
        let pool = three_reducible_pool();
        let l = Lattice::new(i.get(pool).to_digraph()).unwrap();
        let class = classify_fbb(&l).unwrap();
        prop_assert_eq!(classify_fbb(&l.dual()).unwrap(), class.dual());
    }

    #[test]
    fn partition_count_matches_enumeration(n in 0usize..25, k in 0usize..8) {
        let listed = enumerate_partitions(n, k);
        prop_assert_eq!(partition_count(n, k), BigUint::from(listed.len()));
        for p in &listed {
            prop_assert_eq!(p.iter().sum::<usize>(), n);
            prop_assert!(p.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
