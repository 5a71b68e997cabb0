//! Operational semantics of processes: strong transitions, weak closure,
//! may/must observables, convergence, and continuations.
//!
//! The transition system has an internal relation and a labelled relation.
//! `1` signals success (`1 ⟶✓ 1`); a prefix fires its action; an internal
//! choice silently picks a branch; an external choice offers the labels of
//! both branches, preserves the other branch under internal moves of one
//! side, and lets an output commit, discarding the other branch
//! (`P ⟶!a P'` gives `P + Q ⟶ !a.P'`). Every internal step strictly
//! decreases the node count, so all explorations here terminate.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::{render_process, Action, Label, Polarity, ProcessTerm};

/// The one-step successors of a process.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TransitionSet {
    /// Internal (invisible) successors.
    pub internal: BTreeSet<ProcessTerm>,
    /// Labelled successors, including the success flag.
    pub labeled: BTreeSet<(Label, ProcessTerm)>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum LtsError {
    /// `may` is only defined for output labels and ✓.
    #[error("may is undefined on input labels")]
    Domain,
    /// The process has no weak transition on the requested label.
    #[error("no weak transition on the given label")]
    NoTransition,
}

/// Computes the exact set of one-step successors of `p`.
pub fn step(p: &ProcessTerm) -> TransitionSet {
    (*step_cached(p)).clone()
}

fn step_cached(p: &ProcessTerm) -> Rc<TransitionSet> {
    if let Some(hit) = STEP_CACHE.with(|c| c.borrow().get(p).cloned()) {
        return hit;
    }
    let mut out = TransitionSet::default();
    match p {
        ProcessTerm::Deadlock => {}
        ProcessTerm::Success => {
            out.labeled.insert((Label::Success, ProcessTerm::Success));
        }
        ProcessTerm::Prefix(act, cont) => {
            out.labeled.insert((Label::Visible(act.clone()), (**cont).clone()));
        }
        ProcessTerm::InternalChoice(l, r) => {
            out.internal.insert((**l).clone());
            out.internal.insert((**r).clone());
        }
        ProcessTerm::ExternalChoice(l, r) => {
            let left = step_cached(l);
            let right = step_cached(r);
            for p1 in &left.internal {
                out.internal.insert(ProcessTerm::ExternalChoice(
                    Box::new(p1.clone()),
                    r.clone(),
                ));
            }
            for q1 in &right.internal {
                out.internal.insert(ProcessTerm::ExternalChoice(
                    l.clone(),
                    Box::new(q1.clone()),
                ));
            }
            for (label, cont) in left.labeled.iter().chain(right.labeled.iter()) {
                out.labeled.insert((label.clone(), cont.clone()));
                if let Label::Visible(act @ Action { polarity: Polarity::Output, .. }) = label {
                    // Output commit: the branch's message is fired past the choice.
                    out.internal
                        .insert(ProcessTerm::Prefix(act.clone(), Box::new(cont.clone())));
                }
            }
        }
    }
    let result = Rc::new(out);
    STEP_CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(p.clone(), Rc::clone(&result));
    });
    result
}

// Observables of a process, shared per term within a thread. Internal steps
// strictly shrink terms, so the recursion below is well-founded.
struct Obs {
    closure: BTreeSet<ProcessTerm>,
    weak_labels: BTreeSet<Label>,
    must_labels: BTreeSet<Label>,
    may_converge: bool,
}

thread_local! {
    static STEP_CACHE: RefCell<HashMap<ProcessTerm, Rc<TransitionSet>>> =
        RefCell::new(HashMap::new());
    static OBS_CACHE: RefCell<HashMap<ProcessTerm, Rc<Obs>>> = RefCell::new(HashMap::new());
    static CONT_CACHE: RefCell<HashMap<(ProcessTerm, Label), Option<ProcessTerm>>> =
        RefCell::new(HashMap::new());
}

const CACHE_LIMIT: usize = 1 << 18;

fn obs(p: &ProcessTerm) -> Rc<Obs> {
    if let Some(hit) = OBS_CACHE.with(|c| c.borrow().get(p).cloned()) {
        return hit;
    }
    let transitions = step_cached(p);
    let strong_labels: BTreeSet<Label> =
        transitions.labeled.iter().map(|(l, _)| l.clone()).collect();

    let mut closure = BTreeSet::new();
    closure.insert(p.clone());
    let mut weak_labels = strong_labels;
    let mut must_labels: Option<BTreeSet<Label>> = None;
    let mut may_converge = true;
    for succ in &transitions.internal {
        let child = obs(succ);
        closure.extend(child.closure.iter().cloned());
        weak_labels.extend(child.weak_labels.iter().cloned());
        may_converge &= child.may_converge;
        must_labels = Some(match must_labels {
            None => child.must_labels.clone(),
            Some(acc) => acc.intersection(&child.must_labels).cloned().collect(),
        });
    }
    let must_labels = match must_labels {
        None => weak_labels.clone(),
        Some(acc) => acc.intersection(&weak_labels).cloned().collect(),
    };
    may_converge &= weak_labels
        .iter()
        .any(|l| l.is_output() || *l == Label::Success);

    let result = Rc::new(Obs { closure, weak_labels, must_labels, may_converge });
    OBS_CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(p.clone(), Rc::clone(&result));
    });
    result
}

/// All terms reachable from `p` by zero or more internal steps.
pub fn weak_closure(p: &ProcessTerm) -> BTreeSet<ProcessTerm> {
    obs(p).closure.clone()
}

/// The labels `p` can weakly perform: `{μ | p ⟹μ}`.
pub fn weak_labels(p: &ProcessTerm) -> BTreeSet<Label> {
    obs(p).weak_labels.clone()
}

/// Whether `p` may perform `label` after some internal moves. Defined for
/// output labels and ✓ only.
pub fn may(p: &ProcessTerm, label: &Label) -> Result<bool, LtsError> {
    if label.is_input() {
        return Err(LtsError::Domain);
    }
    Ok(obs(p).weak_labels.contains(label))
}

/// Whether every internal evolution of `p` can still weakly perform `label`.
pub fn must(p: &ProcessTerm, label: &Label) -> bool {
    obs(p).must_labels.contains(label)
}

/// Whether every internal evolution of `p` may perform some output or ✓.
pub fn may_converge(p: &ProcessTerm) -> bool {
    obs(p).may_converge
}

/// Whether some label is guaranteed under every internal evolution of `p`.
pub fn must_converge(p: &ProcessTerm) -> bool {
    !obs(p).must_labels.is_empty()
}

/// The combined residual of `p` after weakly performing `label`: the internal
/// choice of all residuals, deduplicated and folded left-associatively in
/// canonical print order. Fails if `label` is ✓ or no weak transition exists.
pub fn continuation(p: &ProcessTerm, label: &Label) -> Result<ProcessTerm, LtsError> {
    if *label == Label::Success {
        return Err(LtsError::NoTransition);
    }
    let key = (p.clone(), label.clone());
    if let Some(hit) = CONT_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit.ok_or(LtsError::NoTransition);
    }
    let mut residuals = BTreeSet::new();
    for q in &obs(p).closure {
        for (l, cont) in &step_cached(q).labeled {
            if l == label {
                residuals.insert(cont.clone());
            }
        }
    }
    let mut ordered: Vec<ProcessTerm> = residuals.into_iter().collect();
    ordered.sort_by_key(render_process);
    let mut iter = ordered.into_iter();
    let combined = iter.next().map(|first| {
        iter.fold(first, |acc, next| {
            ProcessTerm::InternalChoice(Box::new(acc), Box::new(next))
        })
    });
    CONT_CACHE.with(|c| {
        let mut cache = c.borrow_mut();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, combined.clone());
    });
    combined.ok_or(LtsError::NoTransition)
}
