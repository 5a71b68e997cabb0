//! Projection of a two-party global type onto one of its roles.
//!
//! A message projects to an output on the sender side and an input on the
//! receiver side. A choice is attributed to the role sending the first
//! message of both branches: the chooser's projections combine with meet
//! (it commits to both behaviours), the other side's with join (it must cope
//! with either). The result is returned in canonical form and must be viable.

use thiserror::Error;

use crate::normalize::normalize;
use crate::syntax::{Action, GlobalTypeTerm, RoleName, SessionTypeTerm};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ProjectionError {
    #[error("role `{0}` does not occur in the global type")]
    UnknownRole(RoleName),
    #[error("choice branches are decided by different senders: `{0}` and `{1}`")]
    MixedChoice(RoleName, RoleName),
    #[error("a choice branch carries no leading message to attribute the choice to")]
    UnguardedBranch,
    #[error("the projection on `{0}` is not viable")]
    NotViable(RoleName),
}

fn first_sender(g: &GlobalTypeTerm) -> Result<RoleName, ProjectionError> {
    match g {
        GlobalTypeTerm::End => Err(ProjectionError::UnguardedBranch),
        GlobalTypeTerm::Message { sender, .. } => Ok(sender.clone()),
        GlobalTypeTerm::Choice(g1, g2) => {
            let s1 = first_sender(g1)?;
            let s2 = first_sender(g2)?;
            if s1 == s2 {
                Ok(s1)
            } else {
                Err(ProjectionError::MixedChoice(s1, s2))
            }
        }
    }
}

fn project_raw(g: &GlobalTypeTerm, role: &RoleName) -> Result<SessionTypeTerm, ProjectionError> {
    match g {
        GlobalTypeTerm::End => Ok(SessionTypeTerm::End),
        GlobalTypeTerm::Message { sender, receiver, label, cont } => {
            let inner = project_raw(cont, role)?;
            let action = if role == sender {
                Action::output(label.clone())
            } else if role == receiver {
                Action::input(label.clone())
            } else {
                return Err(ProjectionError::UnknownRole(role.clone()));
            };
            Ok(SessionTypeTerm::Prefix(action, Box::new(inner)))
        }
        GlobalTypeTerm::Choice(g1, g2) => {
            let chooser = first_sender(g)?;
            let p1 = project_raw(g1, role)?;
            let p2 = project_raw(g2, role)?;
            if *role == chooser {
                Ok(SessionTypeTerm::Intersection(Box::new(p1), Box::new(p2)))
            } else {
                Ok(SessionTypeTerm::Union(Box::new(p1), Box::new(p2)))
            }
        }
    }
}

/// Projects `g` onto `role`, returning the canonical session type it must
/// conform to.
pub fn project(g: &GlobalTypeTerm, role: &RoleName) -> Result<SessionTypeTerm, ProjectionError> {
    if *g != GlobalTypeTerm::End && !g.roles().contains(role) {
        return Err(ProjectionError::UnknownRole(role.clone()));
    }
    let raw = project_raw(g, role)?;
    let nf = normalize(&raw);
    if !nf.is_viable() {
        return Err(ProjectionError::NotViable(role.clone()));
    }
    Ok(nf.embed())
}
