//! Abstract syntax for processes, session types and two-party global types,
//! together with a text parser and a canonical printer.
//!
//! The concrete syntax is ASCII: `a` is an input action, `!a` an output
//! action, `0` the deadlocked process, `1` the successfully terminated
//! process, `(+)` internal choice and `+` external choice. Session types use
//! `&` for intersection, `|` for union and the literals `Bot`, `Top` and
//! `end`. Prefixing binds tightest, `+` binds tighter than `(+)`, `&` binds
//! tighter than `|`, and all binary operators are left-associative. A trailing
//! `1` (processes) or `end` (types) after a prefix may be omitted; the parser
//! inserts it.

mod parser;

use std::collections::BTreeSet;
use std::fmt;

pub use parser::{parse_global, parse_process, parse_type, GlobalParseError, SyntaxError};

/// A visible action name: a lowercase-initial identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ActionName(String);

impl ActionName {
    /// Creates a name, panicking unless it matches `[a-z][a-zA-Z0-9_]*` and
    /// is not the reserved word `end`.
    pub fn new(name: &str) -> Self {
        assert!(Self::is_valid(name), "invalid action name: {name:?}");
        ActionName(name.to_owned())
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
        head_ok
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            && name != "end"
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ActionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The direction of an action: an input `a` or an output `!a`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Polarity {
    Input,
    Output,
}

/// An action `a` or `!a`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Action {
    pub polarity: Polarity,
    pub name: ActionName,
}

impl Action {
    pub fn input(name: ActionName) -> Self {
        Action { polarity: Polarity::Input, name }
    }

    pub fn output(name: ActionName) -> Self {
        Action { polarity: Polarity::Output, name }
    }

    /// The co-action: flips the polarity. An involution.
    pub fn co(&self) -> Action {
        let polarity = match self.polarity {
            Polarity::Input => Polarity::Output,
            Polarity::Output => Polarity::Input,
        };
        Action { polarity, name: self.name.clone() }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Input => write!(f, "{}", self.name),
            Polarity::Output => write!(f, "!{}", self.name),
        }
    }
}

/// A transition label: a visible action or the success flag `✓`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Visible(Action),
    Success,
}

impl Label {
    /// The co-label; `✓` is its own co-label. An involution.
    pub fn co(&self) -> Label {
        match self {
            Label::Visible(act) => Label::Visible(act.co()),
            Label::Success => Label::Success,
        }
    }

    pub fn is_output(&self) -> bool {
        matches!(self, Label::Visible(Action { polarity: Polarity::Output, .. }))
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Label::Visible(Action { polarity: Polarity::Input, .. }))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Visible(act) => write!(f, "{act}"),
            Label::Success => f.write_str("✓"),
        }
    }
}

/// A finite sequential process.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ProcessTerm {
    /// `0`: deadlocked, performs nothing.
    Deadlock,
    /// `1`: successfully terminated.
    Success,
    /// `α.P`: performs `α`, then continues as `P`.
    Prefix(Action, Box<ProcessTerm>),
    /// `P (+) Q`: the process itself picks a branch.
    InternalChoice(Box<ProcessTerm>, Box<ProcessTerm>),
    /// `P + Q`: the environment's first action picks a branch.
    ExternalChoice(Box<ProcessTerm>, Box<ProcessTerm>),
}

impl ProcessTerm {
    /// Node count; internal reduction strictly decreases it.
    pub fn size(&self) -> usize {
        match self {
            ProcessTerm::Deadlock | ProcessTerm::Success => 1,
            ProcessTerm::Prefix(_, p) => 1 + p.size(),
            ProcessTerm::InternalChoice(p, q) | ProcessTerm::ExternalChoice(p, q) => {
                1 + p.size() + q.size()
            }
        }
    }

    /// All action names occurring in the term.
    pub fn names(&self) -> BTreeSet<ActionName> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<ActionName>) {
        match self {
            ProcessTerm::Deadlock | ProcessTerm::Success => {}
            ProcessTerm::Prefix(act, p) => {
                out.insert(act.name.clone());
                p.collect_names(out);
            }
            ProcessTerm::InternalChoice(p, q) | ProcessTerm::ExternalChoice(p, q) => {
                p.collect_names(out);
                q.collect_names(out);
            }
        }
    }
}

impl fmt::Display for ProcessTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_process(self))
    }
}

/// A finite session type.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SessionTypeTerm {
    /// `Bot`: the empty set of clients.
    Bottom,
    /// `Top`: all clients; satisfiable by no server.
    Top,
    /// `end`: a successfully terminated interaction.
    End,
    /// `α.T`: the channel supports action `α`, then behaves as `T`.
    Prefix(Action, Box<SessionTypeTerm>),
    /// `T & S`: the channel has both types.
    Intersection(Box<SessionTypeTerm>, Box<SessionTypeTerm>),
    /// `T | S`: the channel has either type.
    Union(Box<SessionTypeTerm>, Box<SessionTypeTerm>),
}

impl SessionTypeTerm {
    /// All action names occurring in the type.
    pub fn names(&self) -> BTreeSet<ActionName> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<ActionName>) {
        match self {
            SessionTypeTerm::Bottom | SessionTypeTerm::Top | SessionTypeTerm::End => {}
            SessionTypeTerm::Prefix(act, t) => {
                out.insert(act.name.clone());
                t.collect_names(out);
            }
            SessionTypeTerm::Intersection(t, s) | SessionTypeTerm::Union(t, s) => {
                t.collect_names(out);
                s.collect_names(out);
            }
        }
    }
}

impl fmt::Display for SessionTypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_type(self))
    }
}

/// A participant name in a global type: an uppercase-initial identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RoleName(String);

impl RoleName {
    pub fn new(name: &str) -> Self {
        assert!(Self::is_valid(name), "invalid role name: {name:?}");
        RoleName(name.to_owned())
    }

    pub fn is_valid(name: &str) -> bool {
        let mut chars = name.chars();
        chars.next().is_some_and(|c| c.is_ascii_uppercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RoleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A two-party global type: `A->B:a; G`, binary choice `G [] G`, or `end`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GlobalTypeTerm {
    End,
    Message {
        sender: RoleName,
        receiver: RoleName,
        label: ActionName,
        cont: Box<GlobalTypeTerm>,
    },
    Choice(Box<GlobalTypeTerm>, Box<GlobalTypeTerm>),
}

impl GlobalTypeTerm {
    /// The distinct roles occurring in the term.
    pub fn roles(&self) -> BTreeSet<RoleName> {
        let mut out = BTreeSet::new();
        self.collect_roles(&mut out);
        out
    }

    fn collect_roles(&self, out: &mut BTreeSet<RoleName>) {
        match self {
            GlobalTypeTerm::End => {}
            GlobalTypeTerm::Message { sender, receiver, cont, .. } => {
                out.insert(sender.clone());
                out.insert(receiver.clone());
                cont.collect_roles(out);
            }
            GlobalTypeTerm::Choice(g1, g2) => {
                g1.collect_roles(out);
                g2.collect_roles(out);
            }
        }
    }
}

impl fmt::Display for GlobalTypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalTypeTerm::End => f.write_str("end"),
            GlobalTypeTerm::Message { sender, receiver, label, cont } => {
                write!(f, "{sender}->{receiver}:{label}; {cont}")
            }
            GlobalTypeTerm::Choice(g1, g2) => write!(f, "({g1}) [] ({g2})"),
        }
    }
}

// Printer precedence levels. Atoms never need parentheses; a prefix
// continuation accepts prefixes and atoms bare; binary operators parenthesize
// looser operands and, being left-associative, same-precedence right operands.
const PREC_UNION: u8 = 0; // also internal choice
const PREC_INTER: u8 = 1; // also external choice
const PREC_PREFIX: u8 = 2;
const PREC_ATOM: u8 = 3;

fn process_prec(p: &ProcessTerm) -> u8 {
    match p {
        ProcessTerm::Deadlock | ProcessTerm::Success => PREC_ATOM,
        ProcessTerm::Prefix(..) => PREC_PREFIX,
        ProcessTerm::ExternalChoice(..) => PREC_INTER,
        ProcessTerm::InternalChoice(..) => PREC_UNION,
    }
}

fn write_process(out: &mut String, p: &ProcessTerm, min_prec: u8) {
    let prec = process_prec(p);
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    match p {
        ProcessTerm::Deadlock => out.push('0'),
        ProcessTerm::Success => out.push('1'),
        ProcessTerm::Prefix(act, cont) => {
            out.push_str(&act.to_string());
            if **cont != ProcessTerm::Success {
                out.push('.');
                write_process(out, cont, PREC_PREFIX);
            }
        }
        ProcessTerm::ExternalChoice(l, r) => {
            write_process(out, l, PREC_INTER);
            out.push_str(" + ");
            write_process(out, r, PREC_INTER + 1);
        }
        ProcessTerm::InternalChoice(l, r) => {
            write_process(out, l, PREC_UNION);
            out.push_str(" (+) ");
            write_process(out, r, PREC_UNION + 1);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders a process with minimal parentheses; trailing `1` after a prefix is
/// omitted. `parse_process(render_process(p))` returns `p` unchanged.
pub fn render_process(p: &ProcessTerm) -> String {
    let mut out = String::new();
    write_process(&mut out, p, 0);
    out
}

fn type_prec(t: &SessionTypeTerm) -> u8 {
    match t {
        SessionTypeTerm::Bottom | SessionTypeTerm::Top | SessionTypeTerm::End => PREC_ATOM,
        SessionTypeTerm::Prefix(..) => PREC_PREFIX,
        SessionTypeTerm::Intersection(..) => PREC_INTER,
        SessionTypeTerm::Union(..) => PREC_UNION,
    }
}

fn write_type(out: &mut String, t: &SessionTypeTerm, min_prec: u8) {
    let prec = type_prec(t);
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    match t {
        SessionTypeTerm::Bottom => out.push_str("Bot"),
        SessionTypeTerm::Top => out.push_str("Top"),
        SessionTypeTerm::End => out.push_str("end"),
        SessionTypeTerm::Prefix(act, cont) => {
            out.push_str(&act.to_string());
            out.push('.');
            write_type(out, cont, PREC_PREFIX);
        }
        SessionTypeTerm::Intersection(l, r) => {
            write_type(out, l, PREC_INTER);
            out.push_str(" & ");
            write_type(out, r, PREC_INTER + 1);
        }
        SessionTypeTerm::Union(l, r) => {
            write_type(out, l, PREC_UNION);
            out.push_str(" | ");
            write_type(out, r, PREC_UNION + 1);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders a session type with minimal parentheses. Trailing `end`s are
/// printed explicitly. `parse_type(render_type(t))` returns `t` unchanged.
pub fn render_type(t: &SessionTypeTerm) -> String {
    let mut out = String::new();
    write_type(&mut out, t, 0);
    out
}
