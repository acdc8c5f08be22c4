//! Decision functions over n-bit strings.
//!
//! Basis index convention, shared with [`crate::statevec`]: the ket
//! `|b1 b2 … bn⟩` is index `Σ b_k · 2^(n−k)`, so the leftmost ket bit is the
//! most significant bit. CNF variable `k` reads ket bit `k`.

mod dimacs;
mod random;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use dimacs::{parse_dimacs, CnfFormula, DimacsError, Literal};
pub use random::random_k_cnf;

use crate::{Error, Result};

/// Largest arity accepted by exhaustive evaluation and state preparation.
pub const MAX_ARITY: u32 = 24;

/// A basis label `|b1 … bn⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n: u32,
    value: u64,
}

impl BitString {
    pub fn new(n: u32, value: u64) -> Result<Self> {
        if n > 63 {
            return Err(Error::CapExceeded {
                what: "bit count",
                requested: n.into(),
                cap: 63,
            });
        }
        if value >> n != 0 {
            return Err(Error::IndexOutOfRange { index: value, n_qubits: n });
        }
        Ok(Self { n, value })
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Ket bit `k` (1-based, leftmost first).
    pub fn bit(&self, k: u32) -> bool {
        assert!(k >= 1 && k <= self.n, "bit position out of range");
        (self.value >> (self.n - k)) & 1 == 1
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 1..=self.n {
            f.write_str(if self.bit(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > 63 {
            return Err(Error::CapExceeded {
                what: "bit count",
                requested: s.len() as u64,
                cap: 63,
            });
        }
        let mut value = 0u64;
        for c in s.chars() {
            value = (value << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "`{s}` is not a bit string"
                        )))
                    }
                };
        }
        BitString::new(s.len() as u32, value)
    }
}

/// Dense truth table, one bit per basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    arity: u32,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn all_false(arity: u32) -> Result<Self> {
        check_arity(arity)?;
        let words = vec![0; (1usize << arity).div_ceil(64)];
        Ok(Self { arity, words })
    }

    pub fn from_solutions(arity: u32, solutions: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut table = Self::all_false(arity)?;
        for x in solutions {
            if x >> arity != 0 {
                return Err(Error::IndexOutOfRange { index: x, n_qubits: arity });
            }
            table.words[(x / 64) as usize] |= 1 << (x % 64);
        }
        Ok(table)
    }

    /// `values.len()` must be a power of two; it fixes the arity.
    pub fn from_bools(values: &[bool]) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "truth table length {} is not a power of two",
                values.len()
            )));
        }
        let arity = values.len().trailing_zeros();
        let solutions = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| i as u64);
        Self::from_solutions(arity, solutions)
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, index: u64) -> bool {
        (self.words[(index / 64) as usize] >> (index % 64)) & 1 == 1
    }
}

/// Small named oracles for demos and degenerate-shape tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    AllTrue,
    AllFalse,
    /// True on exactly one basis index.
    SingleSolution(u64),
    /// True when the bit string has an odd number of ones.
    Parity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleBody {
    TruthTable(TruthTable),
    Cnf(CnfFormula),
    Builtin(Builtin),
}

/// A Boolean predicate `f` over `arity`-bit strings. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oracle {
    arity: u32,
    body: OracleBody,
}

impl Oracle {
    pub fn truth_table(table: TruthTable) -> Self {
        Self {
            arity: table.arity(),
            body: OracleBody::TruthTable(table),
        }
    }

    pub fn from_solutions(arity: u32, solutions: impl IntoIterator<Item = u64>) -> Result<Self> {
        TruthTable::from_solutions(arity, solutions).map(Self::truth_table)
    }

    pub fn cnf(formula: CnfFormula) -> Self {
        Self {
            arity: formula.num_vars(),
            body: OracleBody::Cnf(formula),
        }
    }

    pub fn builtin(builtin: Builtin, arity: u32) -> Result<Self> {
        check_arity(arity)?;
        if let Builtin::SingleSolution(x) = builtin {
            if x >> arity != 0 {
                return Err(Error::IndexOutOfRange { index: x, n_qubits: arity });
            }
        }
        Ok(Self {
            arity,
            body: OracleBody::Builtin(builtin),
        })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn body(&self) -> &OracleBody {
        &self.body
    }

    pub fn eval(&self, x: BitString) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: x.len(),
            });
        }
        Ok(self.eval_index(x.value()))
    }

    /// Evaluates on a raw basis index. The caller guarantees `index < 2^arity`.
    #[inline]
    pub fn eval_index(&self, index: u64) -> bool {
        match &self.body {
            OracleBody::TruthTable(t) => t.get(index),
            OracleBody::Cnf(f) => f.eval_index(index),
            OracleBody::Builtin(Builtin::AllTrue) => true,
            OracleBody::Builtin(Builtin::AllFalse) => false,
            OracleBody::Builtin(Builtin::SingleSolution(x)) => index == *x,
            OracleBody::Builtin(Builtin::Parity) => index.count_ones() % 2 == 1,
        }
    }

    /// Tabulates the oracle over all `2^arity` inputs.
    pub fn compile(&self) -> Result<TruthTable> {
        check_arity(self.arity)?;
        TruthTable::from_solutions(
            self.arity,
            (0..1u64 << self.arity).filter(|&x| self.eval_index(x)),
        )
    }
}

/// Exact solution set `{x : f(x)}` by exhaustive evaluation, ascending.
pub fn brute_force_solutions(oracle: &Oracle) -> Result<BTreeSet<u64>> {
    check_arity(oracle.arity())?;
    Ok((0..1u64 << oracle.arity())
        .filter(|&x| oracle.eval_index(x))
        .collect())
}

fn check_arity(arity: u32) -> Result<()> {
    if arity > MAX_ARITY {
        return Err(Error::CapExceeded {
            what: "arity",
            requested: arity.into(),
            cap: MAX_ARITY.into(),
        });
    }
    Ok(())
}
