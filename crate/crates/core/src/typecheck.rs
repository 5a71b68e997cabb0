//! Checking a process against a session type.
//!
//! Rather than searching the declarative rules (subsumption makes them
//! non-syntax-directed), the checker infers the canonical type of the process
//! and compares by subtyping: branches of an external choice guarded by the
//! same input share their types through a meet, as does an internal choice.
//! Whether the canonical type is maximal among the declaratively derivable
//! ones is a conjecture; it is not asserted anywhere.

use thiserror::Error;

use crate::subtype::subtype;
use crate::syntax::{ActionName, Polarity, ProcessTerm, SessionTypeTerm};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TypecheckError {
    /// The process contains an external choice with a summand that is not an
    /// input prefix; no typing rule covers it.
    #[error("untypeable: external choice summand `{0}` is not an input prefix")]
    Untypeable(String),
}

fn summands(p: &ProcessTerm, out: &mut Vec<ProcessTerm>) {
    match p {
        ProcessTerm::ExternalChoice(l, r) => {
            summands(l, out);
            summands(r, out);
        }
        other => out.push(other.clone()),
    }
}

/// Infers the canonical type of `p`: `Bot` for deadlock, `end` for success,
/// a prefix for a send, a union of input prefixes for a receive (branches on
/// the same label meet), and a meet for an internal choice.
pub fn canonical_type(p: &ProcessTerm) -> Result<SessionTypeTerm, TypecheckError> {
    match p {
        ProcessTerm::Deadlock => Ok(SessionTypeTerm::Bottom),
        ProcessTerm::Success => Ok(SessionTypeTerm::End),
        ProcessTerm::Prefix(act, cont) => Ok(SessionTypeTerm::Prefix(
            act.clone(),
            Box::new(canonical_type(cont)?),
        )),
        ProcessTerm::InternalChoice(l, r) => Ok(SessionTypeTerm::Intersection(
            Box::new(canonical_type(l)?),
            Box::new(canonical_type(r)?),
        )),
        ProcessTerm::ExternalChoice(..) => {
            let mut parts = Vec::new();
            summands(p, &mut parts);
            let mut grouped: Vec<(ActionName, SessionTypeTerm)> = Vec::new();
            for part in parts {
                let (act, cont) = match &part {
                    ProcessTerm::Prefix(act, cont)
                        if act.polarity == Polarity::Input =>
                    {
                        (act.clone(), cont)
                    }
                    other => return Err(TypecheckError::Untypeable(other.to_string())),
                };
                let cont_ty = canonical_type(cont)?;
                match grouped.iter_mut().find(|(name, _)| *name == act.name) {
                    Some((_, ty)) => {
                        let merged = SessionTypeTerm::Intersection(
                            Box::new(ty.clone()),
                            Box::new(cont_ty),
                        );
                        *ty = merged;
                    }
                    None => grouped.push((act.name.clone(), cont_ty)),
                }
            }
            grouped.sort_by(|(a, _), (b, _)| a.cmp(b));
            let mut branches = grouped.into_iter().map(|(name, ty)| {
                SessionTypeTerm::Prefix(
                    crate::syntax::Action::input(name),
                    Box::new(ty),
                )
            });
            let first = branches.next().expect("external choice has summands");
            Ok(branches.fold(first, |acc, next| {
                SessionTypeTerm::Union(Box::new(acc), Box::new(next))
            }))
        }
    }
}

/// Whether `p` can be typed with `t`: the canonical type exists and `t` is
/// below it. An untypeable process checks against nothing.
pub fn check(t: &SessionTypeTerm, p: &ProcessTerm) -> bool {
    match canonical_type(p) {
        Ok(canon) => subtype(t, &canon),
        Err(TypecheckError::Untypeable(_)) => false,
    }
}
