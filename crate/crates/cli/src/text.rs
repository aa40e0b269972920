//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! qubits 5
//! cbits 5
//! sdg 0
//! h 0
//! cx 1 4
//! measure 4 -> 0
//! reset 4
//! barrier
//! ```
//!
//! `qubits` must precede every statement that names a qubit and `cbits`
//! every measurement; each may appear once. Blank lines are ignored.
//! Comments are kept as statements so they survive a print/parse cycle.

use std::fmt;

use braidsim::circuit::{Circuit, Op};
use braidsim::statevec::{Gate, GateKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Op(Op),
    /// Comment text after `#`, leading space removed.
    Comment(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitDocument {
    pub qubits: usize,
    pub cbits: usize,
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct LineParser<'a> {
    line: usize,
    toks: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<(), ParseError> {
        if self.toks.len() == n + 1 {
            return Ok(());
        }
        let column = self.toks.get(n + 1).map_or(self.end_column, |t| t.column);
        Err(self.err(
            column,
            format!(
                "`{}` takes {n} operand{}, found {}",
                self.toks[0].text,
                if n == 1 { "" } else { "s" },
                self.toks.len() - 1
            ),
        ))
    }

    fn index(&self, k: usize, bound: Option<usize>, what: &str) -> Result<usize, ParseError> {
        let t = &self.toks[k];
        let v: usize = t
            .text
            .parse()
            .map_err(|_| self.err(t.column, format!("expected a {what} index, found `{}`", t.text)))?;
        match bound {
            None => Err(self.err(t.column, format!("{what} used before its register is declared"))),
            Some(n) if v >= n => {
                Err(self.err(t.column, format!("{what} index {v} out of range for {n} {what}s")))
            }
            Some(_) => Ok(v),
        }
    }
}

pub fn parse_circuit(text: &str) -> Result<CircuitDocument, ParseError> {
    let mut qubits: Option<usize> = None;
    let mut cbits: Option<usize> = None;
    let mut statements = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if let Some(pos) = raw.find('#') {
            if !raw[..pos].trim().is_empty() {
                return Err(ParseError {
                    line,
                    column: raw[..pos].chars().count() + 1,
                    message: "comments must be on their own line".into(),
                });
            }
            let body = &raw[pos + 1..];
            statements.push(Statement::Comment(
                body.strip_prefix(' ').unwrap_or(body).to_string(),
            ));
            continue;
        }
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        let p = LineParser {
            line,
            end_column: raw.chars().count() + 1,
            toks,
        };
        let head = p.toks[0].text;
        match head {
            "qubits" | "cbits" => {
                p.arity(1)?;
                let slot = if head == "qubits" { &mut qubits } else { &mut cbits };
                if slot.is_some() {
                    return Err(p.err(p.toks[0].column, format!("`{head}` declared twice")));
                }
                let t = &p.toks[1];
                let n: usize = t
                    .text
                    .parse()
                    .map_err(|_| p.err(t.column, format!("expected a count, found `{}`", t.text)))?;
                *slot = Some(n);
            }
            "measure" => {
                p.arity(3)?;
                if p.toks[2].text != "->" {
                    return Err(p.err(
                        p.toks[2].column,
                        format!("expected `->`, found `{}`", p.toks[2].text),
                    ));
                }
                let qubit = p.index(1, qubits, "qubit")?;
                let clbit = p.index(3, cbits, "classical bit")?;
                statements.push(Statement::Op(Op::Measure { qubit, clbit }));
            }
            "reset" => {
                p.arity(1)?;
                statements.push(Statement::Op(Op::Reset(p.index(1, qubits, "qubit")?)));
            }
            "barrier" => {
                p.arity(0)?;
                statements.push(Statement::Op(Op::Barrier));
            }
            other => {
                let kind = GateKind::from_mnemonic(other)
                    .ok_or_else(|| p.err(p.toks[0].column, format!("unknown mnemonic `{other}`")))?;
                p.arity(kind.arity())?;
                let operands = (1..=kind.arity())
                    .map(|k| p.index(k, qubits, "qubit"))
                    .collect::<Result<Vec<_>, _>>()?;
                let gate = Gate::new(kind, &operands).map_err(|e| p.err(p.toks[1].column, e.to_string()))?;
                statements.push(Statement::Op(Op::Gate(gate)));
            }
        }
    }

    Ok(CircuitDocument {
        qubits: qubits.ok_or(ParseError {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `qubits` declaration".into(),
        })?,
        cbits: cbits.unwrap_or(0),
        statements,
    })
}

impl CircuitDocument {
    pub fn from_circuit(circuit: &Circuit) -> Self {
        CircuitDocument {
            qubits: circuit.num_qubits(),
            cbits: circuit.num_clbits(),
            statements: circuit.ops().iter().cloned().map(Statement::Op).collect(),
        }
    }

    pub fn with_comment(mut self, text: impl Into<String>) -> Self {
        self.statements.insert(0, Statement::Comment(text.into()));
        self
    }

    pub fn to_circuit(&self) -> braidsim::Result<Circuit> {
        let mut c = Circuit::new(self.qubits, self.cbits)?;
        for s in &self.statements {
            if let Statement::Op(op) = s {
                c.push(op.clone())?;
            }
        }
        Ok(c)
    }

    pub fn ops(&self) -> impl Iterator<Item = &Op> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Op(op) => Some(op),
            Statement::Comment(_) => None,
        })
    }
}

fn write_op(f: &mut fmt::Formatter<'_>, op: &Op) -> fmt::Result {
    match op {
        Op::Gate(g) => {
            write!(f, "{}", g.kind().mnemonic())?;
            for q in g.qubits() {
                write!(f, " {q}")?;
            }
            Ok(())
        }
        Op::Measure { qubit, clbit } => write!(f, "measure {qubit} -> {clbit}"),
        Op::Reset(q) => write!(f, "reset {q}"),
        Op::Barrier => f.write_str("barrier"),
    }
}

impl fmt::Display for CircuitDocument {
    /// Leading comments, then the register declarations, then the body.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = self
            .statements
            .iter()
            .take_while(|s| matches!(s, Statement::Comment(_)))
            .count();
        let write_stmt = |f: &mut fmt::Formatter<'_>, s: &Statement| -> fmt::Result {
            match s {
                Statement::Comment(c) if c.is_empty() => writeln!(f, "#"),
                Statement::Comment(c) => writeln!(f, "# {c}"),
                Statement::Op(op) => {
                    write_op(f, op)?;
                    writeln!(f)
                }
            }
        };
        for s in &self.statements[..lead] {
            write_stmt(f, s)?;
        }
        writeln!(f, "qubits {}", self.qubits)?;
        writeln!(f, "cbits {}", self.cbits)?;
        for s in &self.statements[lead..] {
            write_stmt(f, s)?;
        }
        Ok(())
    }
}
