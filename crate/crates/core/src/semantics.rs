//! Syntactic duality and the decidable membership oracle.
//!
//! The meaning of a type is the set of processes that interact correctly with
//! any process using a channel of that type. Those sets are infinite and are
//! never materialized: membership is decided structurally on the normal form.
//! A member of a union of input prefixes may only emit the co-actions of the
//! listed labels; a member of an intersection of output prefixes must
//! guarantee the co-action of every listed label. Duality flips every
//! polarity, connective, and extremum, and denotes exactly the orthogonal
//! set.

use crate::lts::{continuation, may_converge, must, must_converge, weak_labels};
use crate::normalize::{normalize, NormalForm};
use crate::syntax::{Action, Label, ProcessTerm, SessionTypeTerm};

/// The syntactic dual: `Bot`↔`Top`, `end`↦`end`, `α.T`↦`ᾱ.dual(T)`,
/// `&`↔`|`. An involution.
pub fn dual(t: &SessionTypeTerm) -> SessionTypeTerm {
    match t {
        SessionTypeTerm::Bottom => SessionTypeTerm::Top,
        SessionTypeTerm::Top => SessionTypeTerm::Bottom,
        SessionTypeTerm::End => SessionTypeTerm::End,
        SessionTypeTerm::Prefix(act, cont) => {
            SessionTypeTerm::Prefix(act.co(), Box::new(dual(cont)))
        }
        SessionTypeTerm::Intersection(l, r) => {
            SessionTypeTerm::Union(Box::new(dual(l)), Box::new(dual(r)))
        }
        SessionTypeTerm::Union(l, r) => {
            SessionTypeTerm::Intersection(Box::new(dual(l)), Box::new(dual(r)))
        }
    }
}

/// Duality directly on normal forms: flips the shape pointwise and keeps the
/// result canonical (the dual of `end` is `end`).
pub fn dual_nf(n: &NormalForm) -> NormalForm {
    match n {
        NormalForm::InputUnion { branches, has_end } => {
            if branches.is_empty() && *has_end {
                return NormalForm::end();
            }
            NormalForm::OutputIntersection {
                branches: branches.iter().map(|(k, v)| (k.clone(), dual_nf(v))).collect(),
                has_end: *has_end,
            }
        }
        NormalForm::OutputIntersection { branches, has_end } => {
            NormalForm::InputUnion {
                branches: branches.iter().map(|(k, v)| (k.clone(), dual_nf(v))).collect(),
                has_end: *has_end,
            }
        }
    }
}

/// Decides whether `p` inhabits the normal form `n`.
pub fn member(p: &ProcessTerm, n: &NormalForm) -> bool {
    match n {
        NormalForm::InputUnion { branches, has_end } => {
            if n.is_bottom() {
                return false;
            }
            // p may only emit co-actions of the listed labels, and must be
            // able to emit something in every internal evolution.
            if !may_converge(p) {
                return false;
            }
            for label in weak_labels(p) {
                match &label {
                    Label::Success => {
                        if !has_end {
                            return false;
                        }
                    }
                    Label::Visible(act) if label.is_output() => {
                        match branches.get(&act.name) {
                            None => return false,
                            Some(cont_nf) => {
                                let residual = continuation(p, &label)
                                    .expect("weak label implies a weak transition");
                                if !member(&residual, cont_nf) {
                                    return false;
                                }
                            }
                        }
                    }
                    // Inputs are unobservable for may; no constraint.
                    Label::Visible(_) => {}
                }
            }
            true
        }
        NormalForm::OutputIntersection { branches, has_end } => {
            if n.is_top() {
                return true;
            }
            // p must guarantee the co-action of every listed label.
            if !must_converge(p) {
                return false;
            }
            if *has_end && !must(p, &Label::Success) {
                return false;
            }
            for (name, cont_nf) in branches {
                let input = Label::Visible(Action::input(name.clone()));
                if !must(p, &input) {
                    return false;
                }
                let residual =
                    continuation(p, &input).expect("guaranteed label implies a transition");
                if !member(&residual, cont_nf) {
                    return false;
                }
            }
            true
        }
    }
}

/// Decides whether `p` inhabits the type `t`: membership on its normal form.
pub fn member_type(p: &ProcessTerm, t: &SessionTypeTerm) -> bool {
    member(p, &normalize(t))
}
