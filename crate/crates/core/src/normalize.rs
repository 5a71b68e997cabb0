//! Canonical normal forms for session types, with viability and the native
//! meet and join.
//!
//! A normal form is either a union of input-prefixed branches or an
//! intersection of output-prefixed branches, each optionally allowing
//! termination, with viable branch continuations. The empty union is `Bot`,
//! the empty intersection is `Top`, and `end` is canonically the empty union
//! with the termination flag set. Normalization rewrites bottom-up: prefixes
//! absorb `Bot` and `Top`; an intersection of unions keeps the common labels
//! (meeting their continuations) while an intersection of intersections keeps
//! all labels; mixed combinations collapse to `Bot` unless the union side
//! allows termination, in which case the output side survives alongside
//! `end`. Unions behave dually throughout. No distributivity between `&` and
//! `|` is applied.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{render_type, Action, ActionName, Polarity, SessionTypeTerm};

/// A session type in canonical normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NormalForm {
    /// A union of input-prefixed branches, `⋁ a.T_a (| end)`. With no
    /// branches this is `Bot` (flag unset) or `end` (flag set).
    InputUnion {
        branches: BTreeMap<ActionName, NormalForm>,
        has_end: bool,
    },
    /// An intersection of output-prefixed branches, `⋀ !a.T_a (& end)`.
    /// With no branches and the flag unset this is `Top`; the empty
    /// intersection with termination is represented as `end` instead.
    OutputIntersection {
        branches: BTreeMap<ActionName, NormalForm>,
        has_end: bool,
    },
}

impl NormalForm {
    pub fn bottom() -> Self {
        NormalForm::InputUnion { branches: BTreeMap::new(), has_end: false }
    }

    pub fn top() -> Self {
        NormalForm::OutputIntersection { branches: BTreeMap::new(), has_end: false }
    }

    pub fn end() -> Self {
        NormalForm::InputUnion { branches: BTreeMap::new(), has_end: true }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(
            self,
            NormalForm::InputUnion { branches, has_end: false } if branches.is_empty()
        )
    }

    pub fn is_top(&self) -> bool {
        matches!(
            self,
            NormalForm::OutputIntersection { branches, has_end: false } if branches.is_empty()
        )
    }

    pub fn is_end(&self) -> bool {
        matches!(
            self,
            NormalForm::InputUnion { branches, has_end: true } if branches.is_empty()
        )
    }

    pub fn is_viable(&self) -> bool {
        !self.is_bottom() && !self.is_top()
    }

    /// The greatest lower bound of two normal forms.
    pub fn meet(&self, other: &NormalForm) -> NormalForm {
        if self.is_bottom() || other.is_bottom() {
            return NormalForm::bottom();
        }
        if self.is_top() {
            return other.clone();
        }
        if other.is_top() {
            return self.clone();
        }
        match (self, other) {
            (
                NormalForm::InputUnion { branches: a, has_end: ea },
                NormalForm::InputUnion { branches: b, has_end: eb },
            ) => {
                // Only messages both sides can receive survive.
                let pairs = a
                    .iter()
                    .filter_map(|(name, ta)| b.get(name).map(|tb| (name.clone(), ta.meet(tb))));
                build_union(pairs, *ea && *eb)
            }
            (
                NormalForm::OutputIntersection { branches: a, has_end: ea },
                NormalForm::OutputIntersection { branches: b, has_end: eb },
            ) => {
                // All capabilities accumulate; shared labels merge.
                let mut pairs: Vec<(ActionName, NormalForm)> = Vec::new();
                for (name, ta) in a {
                    let cont = match b.get(name) {
                        Some(tb) => ta.meet(tb),
                        None => ta.clone(),
                    };
                    pairs.push((name.clone(), cont));
                }
                for (name, tb) in b {
                    if !a.contains_key(name) {
                        pairs.push((name.clone(), tb.clone()));
                    }
                }
                build_inter(pairs.into_iter(), *ea || *eb)
            }
            (NormalForm::InputUnion { has_end, .. }, NormalForm::OutputIntersection { .. }) => {
                mixed_meet(*has_end, other)
            }
            (NormalForm::OutputIntersection { .. }, NormalForm::InputUnion { has_end, .. }) => {
                mixed_meet(*has_end, self)
            }
        }
    }

    /// The least upper bound of two normal forms.
    pub fn join(&self, other: &NormalForm) -> NormalForm {
        if self.is_top() || other.is_top() {
            return NormalForm::top();
        }
        if self.is_bottom() {
            return other.clone();
        }
        if other.is_bottom() {
            return self.clone();
        }
        match (self, other) {
            (
                NormalForm::InputUnion { branches: a, has_end: ea },
                NormalForm::InputUnion { branches: b, has_end: eb },
            ) => {
                let mut pairs: Vec<(ActionName, NormalForm)> = Vec::new();
                for (name, ta) in a {
                    let cont = match b.get(name) {
                        Some(tb) => ta.join(tb),
                        None => ta.clone(),
                    };
                    pairs.push((name.clone(), cont));
                }
                for (name, tb) in b {
                    if !a.contains_key(name) {
                        pairs.push((name.clone(), tb.clone()));
                    }
                }
                build_union(pairs.into_iter(), *ea || *eb)
            }
            (
                NormalForm::OutputIntersection { branches: a, has_end: ea },
                NormalForm::OutputIntersection { branches: b, has_end: eb },
            ) => {
                // Only messages safe to send under either view survive.
                let pairs = a
                    .iter()
                    .filter_map(|(name, ta)| b.get(name).map(|tb| (name.clone(), ta.join(tb))));
                build_inter(pairs, *ea && *eb)
            }
            (NormalForm::OutputIntersection { has_end, .. }, NormalForm::InputUnion { .. }) => {
                mixed_join(*has_end, other)
            }
            (NormalForm::InputUnion { .. }, NormalForm::OutputIntersection { has_end, .. }) => {
                mixed_join(*has_end, self)
            }
        }
    }

    /// Maps the normal form back to a session type term, branches in name
    /// order and a trailing `end` last.
    pub fn embed(&self) -> SessionTypeTerm {
        match self {
            NormalForm::InputUnion { branches, has_end } => {
                let mut parts: Vec<SessionTypeTerm> = branches
                    .iter()
                    .map(|(name, cont)| {
                        SessionTypeTerm::Prefix(
                            Action::input(name.clone()),
                            Box::new(cont.embed()),
                        )
                    })
                    .collect();
                if *has_end {
                    parts.push(SessionTypeTerm::End);
                }
                let mut iter = parts.into_iter();
                match iter.next() {
                    None => SessionTypeTerm::Bottom,
                    Some(first) => iter.fold(first, |acc, next| {
                        SessionTypeTerm::Union(Box::new(acc), Box::new(next))
                    }),
                }
            }
            NormalForm::OutputIntersection { branches, has_end } => {
                let mut parts: Vec<SessionTypeTerm> = branches
                    .iter()
                    .map(|(name, cont)| {
                        SessionTypeTerm::Prefix(
                            Action::output(name.clone()),
                            Box::new(cont.embed()),
                        )
                    })
                    .collect();
                if *has_end {
                    parts.push(SessionTypeTerm::End);
                }
                let mut iter = parts.into_iter();
                match iter.next() {
                    None => SessionTypeTerm::Top,
                    Some(first) => iter.fold(first, |acc, next| {
                        SessionTypeTerm::Intersection(Box::new(acc), Box::new(next))
                    }),
                }
            }
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_type(&self.embed()))
    }
}

// Assembles a union from branch candidates: a bottom continuation drops its
// branch, a top continuation absorbs the whole union.
fn build_union(
    pairs: impl Iterator<Item = (ActionName, NormalForm)>,
    has_end: bool,
) -> NormalForm {
    let mut branches = BTreeMap::new();
    for (name, cont) in pairs {
        if cont.is_bottom() {
            continue;
        }
        if cont.is_top() {
            return NormalForm::top();
        }
        branches.insert(name, cont);
    }
    NormalForm::InputUnion { branches, has_end }
}

// Assembles an intersection from branch candidates: a bottom continuation
// collapses everything, a top continuation drops its branch. The empty
// intersection that still allows termination is exactly `end`.
fn build_inter(
    pairs: impl Iterator<Item = (ActionName, NormalForm)>,
    has_end: bool,
) -> NormalForm {
    let mut branches = BTreeMap::new();
    for (name, cont) in pairs {
        if cont.is_bottom() {
            return NormalForm::bottom();
        }
        if cont.is_top() {
            continue;
        }
        branches.insert(name, cont);
    }
    if branches.is_empty() && has_end {
        return NormalForm::end();
    }
    NormalForm::OutputIntersection { branches, has_end }
}

// `(⋁ a.T_a | end?) & (⋀ !b.S_b & end?)`: without `end` on the union side
// nothing can satisfy both, otherwise the output side survives with `end`.
fn mixed_meet(union_has_end: bool, inter: &NormalForm) -> NormalForm {
    if !union_has_end {
        return NormalForm::bottom();
    }
    match inter {
        NormalForm::OutputIntersection { branches, .. } => {
            build_inter(branches.clone().into_iter(), true)
        }
        NormalForm::InputUnion { .. } => unreachable!("mixed_meet takes an intersection"),
    }
}

// Dual of `mixed_meet`.
fn mixed_join(inter_has_end: bool, union: &NormalForm) -> NormalForm {
    if !inter_has_end {
        return NormalForm::top();
    }
    match union {
        NormalForm::InputUnion { branches, .. } => {
            build_union(branches.clone().into_iter(), true)
        }
        NormalForm::OutputIntersection { .. } => unreachable!("mixed_join takes a union"),
    }
}

/// Rewrites a session type into its canonical normal form.
pub fn normalize(t: &SessionTypeTerm) -> NormalForm {
    match t {
        SessionTypeTerm::Bottom => NormalForm::bottom(),
        SessionTypeTerm::Top => NormalForm::top(),
        SessionTypeTerm::End => NormalForm::end(),
        SessionTypeTerm::Prefix(act, inner) => {
            let cont = normalize(inner);
            if cont.is_bottom() {
                return NormalForm::bottom();
            }
            if cont.is_top() {
                return NormalForm::top();
            }
            let mut branches = BTreeMap::new();
            branches.insert(act.name.clone(), cont);
            match act.polarity {
                Polarity::Input => NormalForm::InputUnion { branches, has_end: false },
                Polarity::Output => {
                    NormalForm::OutputIntersection { branches, has_end: false }
                }
            }
        }
        SessionTypeTerm::Intersection(l, r) => normalize(l).meet(&normalize(r)),
        SessionTypeTerm::Union(l, r) => normalize(l).join(&normalize(r)),
    }
}

/// Whether `t` is semantically distinct from both `Bot` and `Top`.
pub fn viable(t: &SessionTypeTerm) -> bool {
    normalize(t).is_viable()
}

/// The greatest lower bound of two types, in normal form.
pub fn meet(t: &SessionTypeTerm, s: &SessionTypeTerm) -> NormalForm {
    normalize(t).meet(&normalize(s))
}

/// The least upper bound of two types, in normal form.
pub fn join(t: &SessionTypeTerm, s: &SessionTypeTerm) -> NormalForm {
    normalize(t).join(&normalize(s))
}
