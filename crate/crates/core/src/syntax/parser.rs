use thiserror::Error;

use super::{
    Action, ActionName, GlobalTypeTerm, ProcessTerm, RoleName, SessionTypeTerm,
};

/// A parse failure, with the byte offset of the offending token.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("syntax error at offset {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

/// A failure while parsing a global type.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum GlobalParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("role error: {0}")]
    Role(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Name(String),
    Role(String),
    Zero,
    One,
    Bot,
    Top,
    End,
    Bang,
    Dot,
    LPar,
    RPar,
    Plus,
    OPlus,
    Amp,
    Pipe,
    Arrow,
    Colon,
    Semi,
    Square,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Role(r) => format!("role `{r}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Bot => "`Bot`".into(),
            Tok::Top => "`Top`".into(),
            Tok::End => "`end`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LPar => "`(`".into(),
            Tok::RPar => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::OPlus => "`(+)`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Square => "`[]`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match b {
            b'(' => {
                if bytes[i..].starts_with(b"(+)") {
                    i += 3;
                    Tok::OPlus
                } else {
                    i += 1;
                    Tok::LPar
                }
            }
            b')' => {
                i += 1;
                Tok::RPar
            }
            b'[' => {
                if bytes[i..].starts_with(b"[]") {
                    i += 2;
                    Tok::Square
                } else {
                    return Err(SyntaxError {
                        position: start,
                        message: "expected `[]`".into(),
                    });
                }
            }
            b'-' => {
                if bytes[i..].starts_with(b"->") {
                    i += 2;
                    Tok::Arrow
                } else {
                    return Err(SyntaxError {
                        position: start,
                        message: "expected `->`".into(),
                    });
                }
            }
            b'!' => {
                i += 1;
                Tok::Bang
            }
            b'.' => {
                i += 1;
                Tok::Dot
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'&' => {
                i += 1;
                Tok::Amp
            }
            b'|' => {
                i += 1;
                Tok::Pipe
            }
            b':' => {
                i += 1;
                Tok::Colon
            }
            b';' => {
                i += 1;
                Tok::Semi
            }
            b'0' => {
                i += 1;
                Tok::Zero
            }
            b'1' => {
                i += 1;
                Tok::One
            }
            _ if b.is_ascii_alphabetic() => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                i = j;
                match word {
                    "end" => Tok::End,
                    "Bot" => Tok::Bot,
                    "Top" => Tok::Top,
                    _ if word.as_bytes()[0].is_ascii_lowercase() => Tok::Name(word.into()),
                    _ => Tok::Role(word.into()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(SyntaxError {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        toks.push((tok, start));
    }
    toks.push((Tok::Eof, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, SyntaxError> {
        Ok(Parser { toks: tokenize(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, want: &Tok) -> Result<(), SyntaxError> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&want.describe()))
        }
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        SyntaxError {
            position: self.here(),
            message: format!("expected {wanted}, found {}", self.peek().describe()),
        }
    }

    fn expect_eof(&self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn action(&mut self) -> Result<Action, SyntaxError> {
        let output = if *self.peek() == Tok::Bang {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                let name = ActionName::new(&n);
                Ok(if output { Action::output(name) } else { Action::input(name) })
            }
            _ => Err(self.unexpected("an action name")),
        }
    }

    // process := pchoice ; pchoice := echoice { "(+)" echoice }
    fn process(&mut self) -> Result<ProcessTerm, SyntaxError> {
        let mut acc = self.process_external()?;
        while *self.peek() == Tok::OPlus {
            self.bump();
            let rhs = self.process_external()?;
            acc = ProcessTerm::InternalChoice(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // echoice := pfx { "+" pfx }
    fn process_external(&mut self) -> Result<ProcessTerm, SyntaxError> {
        let mut acc = self.process_prefix()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.process_prefix()?;
            acc = ProcessTerm::ExternalChoice(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // pfx := act "." pfx | act | "0" | "1" | "(" process ")"
    fn process_prefix(&mut self) -> Result<ProcessTerm, SyntaxError> {
        match self.peek() {
            Tok::Zero => {
                self.bump();
                Ok(ProcessTerm::Deadlock)
            }
            Tok::One => {
                self.bump();
                Ok(ProcessTerm::Success)
            }
            Tok::LPar => {
                self.bump();
                let inner = self.process()?;
                self.eat(&Tok::RPar)?;
                Ok(inner)
            }
            Tok::Name(_) | Tok::Bang => {
                let act = self.action()?;
                let cont = if *self.peek() == Tok::Dot {
                    self.bump();
                    self.process_prefix()?
                } else {
                    ProcessTerm::Success
                };
                Ok(ProcessTerm::Prefix(act, Box::new(cont)))
            }
            _ => Err(self.unexpected("a process")),
        }
    }

    // type := tunion ; tunion := tinter { "|" tinter }
    fn session_type(&mut self) -> Result<SessionTypeTerm, SyntaxError> {
        let mut acc = self.type_inter()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.type_inter()?;
            acc = SessionTypeTerm::Union(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // tinter := tpfx { "&" tpfx }
    fn type_inter(&mut self) -> Result<SessionTypeTerm, SyntaxError> {
        let mut acc = self.type_prefix()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.type_prefix()?;
            acc = SessionTypeTerm::Intersection(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // tpfx := act "." tpfx | act | "Bot" | "Top" | "end" | "(" type ")"
    fn type_prefix(&mut self) -> Result<SessionTypeTerm, SyntaxError> {
        match self.peek() {
            Tok::Bot => {
                self.bump();
                Ok(SessionTypeTerm::Bottom)
            }
            Tok::Top => {
                self.bump();
                Ok(SessionTypeTerm::Top)
            }
            Tok::End => {
                self.bump();
                Ok(SessionTypeTerm::End)
            }
            Tok::LPar => {
                self.bump();
                let inner = self.session_type()?;
                self.eat(&Tok::RPar)?;
                Ok(inner)
            }
            Tok::Name(_) | Tok::Bang => {
                let act = self.action()?;
                let cont = if *self.peek() == Tok::Dot {
                    self.bump();
                    self.type_prefix()?
                } else {
                    SessionTypeTerm::End
                };
                Ok(SessionTypeTerm::Prefix(act, Box::new(cont)))
            }
            _ => Err(self.unexpected("a session type")),
        }
    }

    // global := gseq { "[]" gseq }
    // The `;` sequence binds tighter than `[]`; parentheses regroup.
    fn global(&mut self) -> Result<GlobalTypeTerm, SyntaxError> {
        let mut acc = self.global_seq()?;
        while *self.peek() == Tok::Square {
            self.bump();
            let rhs = self.global_seq()?;
            acc = GlobalTypeTerm::Choice(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    // gseq := Role "->" Role ":" name ";" gseq | "end" | "(" global ")"
    fn global_seq(&mut self) -> Result<GlobalTypeTerm, SyntaxError> {
        match self.peek() {
            Tok::End => {
                self.bump();
                Ok(GlobalTypeTerm::End)
            }
            Tok::LPar => {
                self.bump();
                let inner = self.global()?;
                self.eat(&Tok::RPar)?;
                Ok(inner)
            }
            Tok::Role(_) => {
                let sender = self.role()?;
                self.eat(&Tok::Arrow)?;
                let receiver = self.role()?;
                self.eat(&Tok::Colon)?;
                let label = match self.peek().clone() {
                    Tok::Name(n) => {
                        self.bump();
                        ActionName::new(&n)
                    }
                    _ => return Err(self.unexpected("a message label")),
                };
                self.eat(&Tok::Semi)?;
                let cont = self.global_seq()?;
                Ok(GlobalTypeTerm::Message {
                    sender,
                    receiver,
                    label,
                    cont: Box::new(cont),
                })
            }
            _ => Err(self.unexpected("a global type")),
        }
    }

    fn role(&mut self) -> Result<RoleName, SyntaxError> {
        match self.peek().clone() {
            Tok::Role(r) => {
                self.bump();
                Ok(RoleName::new(&r))
            }
            _ => Err(self.unexpected("a role name")),
        }
    }
}

/// Parses a process from its textual form.
pub fn parse_process(text: &str) -> Result<ProcessTerm, SyntaxError> {
    let mut parser = Parser::new(text)?;
    let p = parser.process()?;
    parser.expect_eof()?;
    Ok(p)
}

/// Parses a session type from its textual form.
pub fn parse_type(text: &str) -> Result<SessionTypeTerm, SyntaxError> {
    let mut parser = Parser::new(text)?;
    let t = parser.session_type()?;
    parser.expect_eof()?;
    Ok(t)
}

fn validate_roles(g: &GlobalTypeTerm) -> Result<(), GlobalParseError> {
    if let GlobalTypeTerm::Message { sender, receiver, .. } = g {
        if sender == receiver {
            return Err(GlobalParseError::Role(format!(
                "message from `{sender}` to itself"
            )));
        }
    }
    match g {
        GlobalTypeTerm::End => Ok(()),
        GlobalTypeTerm::Message { cont, .. } => validate_roles(cont),
        GlobalTypeTerm::Choice(g1, g2) => {
            validate_roles(g1)?;
            validate_roles(g2)
        }
    }
}

/// Parses a two-party global type. Fails with a role error if a message has
/// equal sender and receiver or more than two distinct roles occur.
pub fn parse_global(text: &str) -> Result<GlobalTypeTerm, GlobalParseError> {
    let mut parser = Parser::new(text).map_err(GlobalParseError::Syntax)?;
    let g = parser.global().map_err(GlobalParseError::Syntax)?;
    parser.expect_eof().map_err(GlobalParseError::Syntax)?;
    validate_roles(&g)?;
    let roles = g.roles();
    if roles.len() > 2 {
        let all: Vec<_> = roles.iter().map(RoleName::as_str).collect();
        return Err(GlobalParseError::Role(format!(
            "more than two roles occur: {}",
            all.join(", ")
        )));
    }
    Ok(g)
}
