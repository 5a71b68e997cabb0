//! Shared generators for the integration suites: a seeded random term
//! generator and a canonical bounded enumeration of session types.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use situ::syntax::{Action, ActionName, Polarity, ProcessTerm, SessionTypeTerm};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(list: &[&str]) -> Vec<ActionName> {
    list.iter().map(|n| ActionName::new(n)).collect()
}

fn random_action(rng: &mut ChaCha8Rng, alphabet: &[ActionName]) -> Action {
    let name = alphabet[rng.random_range(0..alphabet.len())].clone();
    if rng.random_bool(0.5) {
        Action::input(name)
    } else {
        Action::output(name)
    }
}

/// A random process of at most `budget` nodes.
pub fn random_process(
    rng: &mut ChaCha8Rng,
    alphabet: &[ActionName],
    budget: usize,
) -> ProcessTerm {
    let kind = rng.random_range(0..8u8);
    if budget <= 1 || kind == 0 {
        return if rng.random_bool(0.5) { ProcessTerm::Success } else { ProcessTerm::Deadlock };
    }
    if budget == 2 || kind <= 4 {
        return ProcessTerm::Prefix(
            random_action(rng, alphabet),
            Box::new(random_process(rng, alphabet, budget - 1)),
        );
    }
    let left_budget = rng.random_range(1..=budget - 2);
    let left = random_process(rng, alphabet, left_budget);
    let right = random_process(rng, alphabet, budget - 1 - left.size());
    if kind <= 6 {
        ProcessTerm::InternalChoice(Box::new(left), Box::new(right))
    } else {
        ProcessTerm::ExternalChoice(Box::new(left), Box::new(right))
    }
}

/// A random session type of at most the given action depth.
pub fn random_type(rng: &mut ChaCha8Rng, alphabet: &[ActionName], depth: usize) -> SessionTypeTerm {
    let atom = |rng: &mut ChaCha8Rng| match rng.random_range(0..4u8) {
        0 => SessionTypeTerm::Bottom,
        1 => SessionTypeTerm::Top,
        _ => SessionTypeTerm::End,
    };
    if depth == 0 {
        return atom(rng);
    }
    match rng.random_range(0..8u8) {
        0 => atom(rng),
        1..=4 => SessionTypeTerm::Prefix(
            random_action(rng, alphabet),
            Box::new(random_type(rng, alphabet, depth - 1)),
        ),
        5 | 6 => SessionTypeTerm::Intersection(
            Box::new(random_type(rng, alphabet, depth - 1)),
            Box::new(random_type(rng, alphabet, depth - 1)),
        ),
        _ => SessionTypeTerm::Union(
            Box::new(random_type(rng, alphabet, depth - 1)),
            Box::new(random_type(rng, alphabet, depth - 1)),
        ),
    }
}

/// A random viable session type.
pub fn random_viable_type(
    rng: &mut ChaCha8Rng,
    alphabet: &[ActionName],
    depth: usize,
) -> SessionTypeTerm {
    loop {
        let t = random_type(rng, alphabet, depth);
        if situ::normalize::viable(&t) {
            return t;
        }
    }
}

// Connective-free chains ending in `end`, up to the given depth.
fn end_chains(alphabet: &[ActionName], depth: usize) -> Vec<SessionTypeTerm> {
    let mut layers = vec![vec![SessionTypeTerm::End]];
    for d in 1..=depth {
        let mut next = Vec::new();
        for name in alphabet {
            for polarity in [Polarity::Input, Polarity::Output] {
                for cont in &layers[d - 1] {
                    next.push(SessionTypeTerm::Prefix(
                        Action { polarity, name: name.clone() },
                        Box::new(cont.clone()),
                    ));
                }
            }
        }
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}

/// Every canonical session type over `alphabet` up to the given action
/// depth: the three atoms, prefixes over shallower types, and binary `&`/`|`
/// combinations of guarded `end`-chains (or `end` itself), deduplicated, in
/// a deterministic order.
pub fn enumerate_types(alphabet: &[ActionName], depth: usize) -> Vec<SessionTypeTerm> {
    let mut all: Vec<SessionTypeTerm> = vec![
        SessionTypeTerm::Bottom,
        SessionTypeTerm::Top,
        SessionTypeTerm::End,
    ];
    let mut previous = all.clone();
    for d in 1..=depth {
        let mut layer = Vec::new();
        for name in alphabet {
            for polarity in [Polarity::Input, Polarity::Output] {
                for cont in &previous {
                    layer.push(SessionTypeTerm::Prefix(
                        Action { polarity, name: name.clone() },
                        Box::new(cont.clone()),
                    ));
                }
            }
        }
        let mut pool = end_chains(alphabet, d);
        pool.sort_by_key(situ::syntax::render_type);
        pool.dedup();
        for i in 0..pool.len() {
            for j in (i + 1)..pool.len() {
                layer.push(SessionTypeTerm::Intersection(
                    Box::new(pool[i].clone()),
                    Box::new(pool[j].clone()),
                ));
                layer.push(SessionTypeTerm::Union(
                    Box::new(pool[i].clone()),
                    Box::new(pool[j].clone()),
                ));
            }
        }
        previous.extend(layer.iter().cloned());
        all.extend(layer);
    }
    all.sort_by_key(situ::syntax::render_type);
    all.dedup();
    all
}

/// The processes enumerated by the library over `alphabet` up to `depth`.
pub fn enumerate_procs(alphabet: &[&str], depth: usize) -> Vec<ProcessTerm> {
    let set = alphabet.iter().map(|n| ActionName::new(n)).collect();
    situ::orthogonality::enumerate_processes(&set, depth)
        .expect("parameters within caps")
        .collect()
}
