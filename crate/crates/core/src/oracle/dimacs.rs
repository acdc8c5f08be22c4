//! DIMACS CNF reading and writing.
//!
//! Accepted input: `c` comment lines, one `p cnf <vars> <clauses>` header,
//! then clauses as whitespace-separated signed integers each terminated by
//! `0`. A clause may span lines and a line may hold several clauses. A line
//! starting with `%` ends the input (SATLIB benchmark files carry one).
//! LF and CRLF line endings are both accepted.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("missing `p cnf` header")]
    MissingHeader,

    #[error("header declares {declared} clauses but {found} were found")]
    HeaderMismatch { declared: usize, found: usize },

    #[error("line {line}: literal {literal} out of range for {num_vars} variables")]
    LiteralOutOfRange {
        line: usize,
        literal: i64,
        num_vars: u32,
    },

    #[error("line {line}: clause is not terminated by 0")]
    UnterminatedClause { line: usize },

    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
}

/// A signed variable reference; variable indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(i32);

impl Literal {
    /// `var` must be at least 1.
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1 && var <= i32::MAX as u32, "variable index out of range");
        let v = var as i32;
        Literal(if positive { v } else { -v })
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Builds a formula, checking that every clause is non-empty and every
    /// literal names a variable in `1..=num_vars`.
    pub fn new(num_vars: u32, clauses: Vec<Vec<Literal>>) -> crate::Result<Self> {
        if num_vars == 0 {
            return Err(crate::Error::InvalidParameter(
                "a CNF formula needs at least one variable".into(),
            ));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(crate::Error::InvalidParameter(format!("clause {} is empty", i + 1)));
            }
            if let Some(lit) = clause.iter().find(|l| l.var() > num_vars) {
                return Err(crate::Error::InvalidParameter(format!(
                    "literal {} in clause {} exceeds {num_vars} variables",
                    lit.to_dimacs(),
                    i + 1
                )));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Evaluates the formula on basis index `index`. Variable `k` reads bit
    /// `num_vars - k` of the index, so variable 1 is the leftmost ket bit.
    pub fn eval_index(&self, index: u64) -> bool {
        let n = self.num_vars;
        self.clauses.iter().all(|clause| {
            clause.iter().any(|lit| {
                let bit = (index >> (n - lit.var())) & 1 == 1;
                bit == lit.is_positive()
            })
        })
    }

    pub fn to_dimacs(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(f, "{} ", lit.to_dimacs())?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(syntax(line_no, "duplicate header"));
            }
            if !clauses.is_empty() || !current.is_empty() {
                return Err(syntax(line_no, "header after clauses"));
            }
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(DimacsError::MissingHeader);
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| syntax(line_no, &format!("expected an integer, found `{token}`")))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line: line_no });
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if value.unsigned_abs() > u64::from(num_vars) {
                return Err(DimacsError::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    num_vars,
                });
            }
            if current.is_empty() {
                current_start = line_no;
            }
            current.push(Literal::new(value.unsigned_abs() as u32, value > 0));
        }
    }

    let Some((num_vars, declared)) = header else {
        return Err(DimacsError::MissingHeader);
    };
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause {
            line: current_start,
        });
    }
    if clauses.len() != declared {
        return Err(DimacsError::HeaderMismatch {
            declared,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula { num_vars, clauses })
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, usize), DimacsError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
        return Err(syntax(line_no, "expected `p cnf <vars> <clauses>`"));
    }
    let vars: u32 = fields[2]
        .parse()
        .map_err(|_| syntax(line_no, "variable count is not a non-negative integer"))?;
    let count: usize = fields[3]
        .parse()
        .map_err(|_| syntax(line_no, "clause count is not a non-negative integer"))?;
    if vars == 0 {
        return Err(syntax(line_no, "variable count must be positive"));
    }
    Ok((vars, count))
}

fn syntax(line: usize, message: &str) -> DimacsError {
    DimacsError::Syntax {
        line,
        message: message.to_string(),
    }
}
