//! The algorithmic subtyping relation: syntax-directed on normal forms,
//! decided for arbitrary types through normalization.
//!
//! On unions of inputs the label sets widen (including ✓) and branches are
//! compared pointwise; on intersections of outputs the label sets narrow. The
//! only cross-shape judgments are `Bot` below everything, everything below
//! `Top`, and an intersection allowing termination below a union allowing
//! termination.

use crate::normalize::{normalize, NormalForm};
use crate::syntax::SessionTypeTerm;

/// Decides `n1 ⩽ n2` on canonical normal forms.
pub fn subtype_nf(n1: &NormalForm, n2: &NormalForm) -> bool {
    match (n1, n2) {
        (
            NormalForm::InputUnion { branches: a, has_end: ea },
            NormalForm::InputUnion { branches: b, has_end: eb },
        ) => {
            (!*ea || *eb)
                && a.iter().all(|(name, ta)| b.get(name).is_some_and(|tb| subtype_nf(ta, tb)))
        }
        (
            NormalForm::OutputIntersection { branches: a, has_end: ea },
            NormalForm::OutputIntersection { branches: b, has_end: eb },
        ) => {
            (!*eb || *ea)
                && b.iter().all(|(name, tb)| a.get(name).is_some_and(|ta| subtype_nf(ta, tb)))
        }
        (NormalForm::InputUnion { .. }, NormalForm::OutputIntersection { .. }) => {
            n1.is_bottom() || n2.is_top()
        }
        (
            NormalForm::OutputIntersection { has_end: ea, .. },
            NormalForm::InputUnion { has_end: eb, .. },
        ) => *ea && *eb,
    }
}

/// Decides whether every client of `t` is a client of `s`.
pub fn subtype(t: &SessionTypeTerm, s: &SessionTypeTerm) -> bool {
    subtype_nf(&normalize(t), &normalize(s))
}

/// Mutual subtyping.
pub fn equivalent(t: &SessionTypeTerm, s: &SessionTypeTerm) -> bool {
    let nt = normalize(t);
    let ns = normalize(s);
    subtype_nf(&nt, &ns) && subtype_nf(&ns, &nt)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::syntax::parse_type;
    use crate::syntax::tests::arb_type;

    fn sub(a: &str, b: &str) -> bool {
        subtype(&parse_type(a).unwrap(), &parse_type(b).unwrap())
    }

    fn equiv(a: &str, b: &str) -> bool {
        equivalent(&parse_type(a).unwrap(), &parse_type(b).unwrap())
    }

    #[test]
    fn output_intersections_narrow() {
        assert!(sub("!a.end & !b.end", "!b.end"));
        assert!(!sub("!b.end", "!a.end & !b.end"));
    }

    #[test]
    fn input_unions_widen() {
        assert!(sub("a.end", "a.end | b.end"));
        assert!(!sub("a.end | b.end", "a.end"));
    }

    #[test]
    fn terminated_intersection_below_terminated_union() {
        assert!(sub("!a.end & end", "b.end | end"));
        assert!(!sub("!a.end & end", "b.end"));
        assert!(!sub("!a.end", "b.end | end"));
    }

    #[test]
    fn end_is_reflexive() {
        assert!(sub("end", "end"));
    }

    #[test]
    fn inputs_and_outputs_are_incomparable() {
        assert!(!sub("a.end", "!a.end"));
        assert!(!sub("!a.end", "a.end"));
    }

    #[test]
    fn extrema() {
        for text in ["Bot", "Top", "end", "a.!b | end", "!a & !b & end"] {
            assert!(sub("Bot", text), "Bot <= {text}");
            assert!(sub(text, "Top"), "{text} <= Top");
        }
        assert!(!sub("Top", "a.end"));
        assert!(!sub("a.end", "Bot"));
    }

    #[test]
    fn widening_under_a_prefix() {
        assert!(sub("a.(!a & !b)", "a.(!a & !b) | b.end"));
        assert!(sub("a.(!a & !b)", "a.!a"));
    }

    #[test]
    fn equivalences() {
        assert!(equiv("a.!b | a.!c", "a.(!b | !c)"));
        assert!(equiv("!a & !b", "!b & !a"));
        assert!(!equiv("a.end", "b.end"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn subtyping_is_reflexive(t in arb_type()) {
            prop_assert!(subtype(&t, &t));
        }

        #[test]
        fn subtyping_is_transitive(t in arb_type(), s in arb_type(), r in arb_type()) {
            if subtype(&t, &s) && subtype(&s, &r) {
                prop_assert!(subtype(&t, &r));
            }
        }

        #[test]
        fn equivalence_means_identical_normal_forms(t in arb_type(), s in arb_type()) {
            if equivalent(&t, &s) {
                prop_assert_eq!(normalize(&t), normalize(&s));
            }
        }

        #[test]
        fn meet_and_join_are_bounds(t in arb_type(), s in arb_type()) {
            let meet = crate::normalize::meet(&t, &s).embed();
            let join = crate::normalize::join(&t, &s).embed();
            prop_assert!(subtype(&meet, &t));
            prop_assert!(subtype(&meet, &s));
            prop_assert!(subtype(&t, &join));
            prop_assert!(subtype(&s, &join));
        }

        #[test]
        fn meet_is_greatest_and_join_is_least(
            t in arb_type(), s in arb_type(), r in arb_type()
        ) {
            if subtype(&r, &t) && subtype(&r, &s) {
                prop_assert!(subtype(&r, &crate::normalize::meet(&t, &s).embed()));
            }
            if subtype(&t, &r) && subtype(&s, &r) {
                prop_assert!(subtype(&crate::normalize::join(&t, &s).embed(), &r));
            }
        }

        #[test]
        fn subtyping_is_a_precongruence(
            t in arb_type(), s in arb_type(), r in arb_type(),
            act in crate::syntax::tests::arb_action()
        ) {
            if subtype(&t, &s) {
                let pt = SessionTypeTerm::Prefix(act.clone(), Box::new(t.clone()));
                let ps = SessionTypeTerm::Prefix(act, Box::new(s.clone()));
                prop_assert!(subtype(&pt, &ps));
                let mt = SessionTypeTerm::Intersection(Box::new(t.clone()), Box::new(r.clone()));
                let ms = SessionTypeTerm::Intersection(Box::new(s.clone()), Box::new(r.clone()));
                prop_assert!(subtype(&mt, &ms));
                let jt = SessionTypeTerm::Union(Box::new(t), Box::new(r.clone()));
                let js = SessionTypeTerm::Union(Box::new(s), Box::new(r));
                prop_assert!(subtype(&jt, &js));
            }
        }
    }
}
