//! A library for session types built from intersection and union types,
//! interpreted over a small sequential process calculus.
//!
//! Processes (`[syntax::ProcessTerm]`) interact over a single channel and are
//! compared by testing: two processes are *orthogonal* when every stable state
//! of their composition has both sides successfully terminated. Session types
//! (`[syntax::SessionTypeTerm]`) denote sets of processes; branching is
//! expressed with intersections (`&`) and unions (`|`) instead of behavioural
//! choice operators, which makes meet and join native operations and subtyping
//! a pre-congruence.
//!
//! The main entry points are:
//!
//! * [`normalize::normalize`] — rewrite a type into its canonical normal form;
//! * [`subtype::subtype`] / [`subtype::equivalent`] — decide the subtyping
//!   relation on arbitrary types;
//! * [`semantics::member_type`] — decide whether a process inhabits a type;
//! * [`semantics::dual`] — syntactic duality;
//! * [`typecheck::check`] — check a process against a type;
//! * [`project::project`] — project a two-party global type onto a role;
//! * [`orthogonality::orthogonal`] / [`orthogonality::refines_bounded`] —
//!   the testing-based process relations.

pub mod lts;
pub mod normalize;
pub mod orthogonality;
pub mod project;
pub mod semantics;
pub mod subtype;
pub mod syntax;
pub mod typecheck;

pub use normalize::{join, meet, normalize, viable, NormalForm};
pub use orthogonality::{
    enumerate_processes, orthogonal, refines_bounded, system_step, RefinementVerdict, SystemState,
};
pub use project::project;
pub use semantics::{dual, dual_nf, member, member_type};
pub use subtype::{equivalent, subtype, subtype_nf};
pub use syntax::{
    parse_global, parse_process, parse_type, render_process, render_type, Action, ActionName,
    GlobalTypeTerm, Label, Polarity, ProcessTerm, RoleName, SessionTypeTerm,
};
pub use typecheck::{canonical_type, check};
