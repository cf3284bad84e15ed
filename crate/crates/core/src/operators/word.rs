use std::fmt;
use std::str::FromStr;

use super::{AbContext, HdFamily};
use crate::error::{Error, Result};
use crate::ring::Poly;

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// `α^m`.
    AlphaPow(u32),
    /// `β`.
    Beta,
    /// `δ_k`.
    Delta(usize),
    /// The `δ_1` factors of the second product; merges like `Delta(1)`.
    DeltaOne,
}

impl Symbol {
    fn delta_index(self) -> Option<usize> {
        match self {
            Symbol::Delta(k) => Some(k),
            Symbol::DeltaOne => Some(1),
            _ => None,
        }
    }
}

/// Which merge rule guards a word.
///
/// Runs of adjacent `δ` letters merge into one `δ` with the summed index:
/// always in a [`ProductRole::Second`] word, and in a [`ProductRole::First`]
/// word only when `β` is the identity. [`ProductRole::Free`] words never
/// merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductRole {
    First,
    Second,
    Free,
}

/// A composition of symbols, read right to left: the rightmost symbol acts
/// first on its argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    symbols: Vec<Symbol>,
    role: ProductRole,
}

impl OperatorWord {
    pub fn new(symbols: Vec<Symbol>, role: ProductRole) -> Self {
        OperatorWord { symbols, role }
    }

    /// `δ_{k_0} β δ_{k_1} β … β δ_{k_i}`.
    pub fn first_product(ks: &[usize]) -> Self {
        let mut symbols = Vec::with_capacity(2 * ks.len());
        for (j, &k) in ks.iter().enumerate() {
            if j > 0 {
                symbols.push(Symbol::Beta);
            }
            symbols.push(Symbol::Delta(k));
        }
        OperatorWord::new(symbols, ProductRole::First)
    }

    /// `α^{k_0} δ_1 α^{k_1} δ_1 … δ_1 α^{k_i}`.
    pub fn second_product(ks: &[usize]) -> Self {
        let mut symbols = Vec::with_capacity(2 * ks.len());
        for (j, &k) in ks.iter().enumerate() {
            if j > 0 {
                symbols.push(Symbol::DeltaOne);
            }
            symbols.push(Symbol::AlphaPow(k as u32));
        }
        OperatorWord::new(symbols, ProductRole::Second)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn role(&self) -> ProductRole {
        self.role
    }

    pub fn with_role(mut self, role: ProductRole) -> Self {
        self.role = role;
        self
    }

    fn merges_enabled(&self, ctx: &AbContext) -> bool {
        match self.role {
            ProductRole::Second => true,
            ProductRole::First => ctx.beta.is_identity(),
            ProductRole::Free => false,
        }
    }

    fn is_identity_symbol(symbol: Symbol, ctx: &AbContext) -> bool {
        match symbol {
            Symbol::AlphaPow(m) => m == 0 || ctx.alpha.is_identity(),
            Symbol::Beta => ctx.beta.is_identity(),
            Symbol::Delta(k) => k == 0,
            Symbol::DeltaOne => false,
        }
    }

    /// Normal form together with the number of merges that fired.
    ///
    /// Identity letters (`α^0`, any `α^m` or `β` that is the identity, `δ_0`)
    /// are deleted first; maximal runs of adjacent `δ` letters are then merged
    /// when the role's guard allows it. `DeltaOne` is written as `Delta(1)` in
    /// the result.
    pub fn normalize_counted(&self, ctx: &AbContext) -> (OperatorWord, usize) {
        let merge = self.merges_enabled(ctx);
        let mut out: Vec<Symbol> = Vec::with_capacity(self.symbols.len());
        let mut merges = 0;
        for &symbol in &self.symbols {
            if Self::is_identity_symbol(symbol, ctx) {
                continue;
            }
            match (merge, symbol.delta_index(), out.last().and_then(|s| s.delta_index())) {
                (true, Some(k), Some(prev)) => {
                    *out.last_mut().expect("nonempty") = Symbol::Delta(prev + k);
                    merges += 1;
                }
                (_, Some(k), _) => out.push(Symbol::Delta(k)),
                _ => out.push(symbol),
            }
        }
        (OperatorWord::new(out, self.role), merges)
    }

    pub fn normalize(&self, ctx: &AbContext) -> OperatorWord {
        self.normalize_counted(ctx).0
    }

    /// Applies the word to `p`, rightmost symbol first.
    pub fn eval(&self, ctx: &AbContext, family: &HdFamily, p: &Poly) -> Result<Poly> {
        let mut acc = p.clone();
        for symbol in self.symbols.iter().rev() {
            acc = match *symbol {
                Symbol::AlphaPow(m) => ctx.alpha.pow(m as i64).apply(&acc)?,
                Symbol::Beta => ctx.beta.apply(&acc)?,
                Symbol::Delta(k) => family.apply(k, &acc)?,
                Symbol::DeltaOne => family.apply(1, &acc)?,
            };
        }
        Ok(acc)
    }
}

/// Free-function form of [`OperatorWord::normalize`].
pub fn normalize_word(word: &OperatorWord, ctx: &AbContext) -> OperatorWord {
    word.normalize(ctx)
}

/// Free-function form of [`OperatorWord::eval`].
pub fn eval_word(word: &OperatorWord, ctx: &AbContext, family: &HdFamily, p: &Poly) -> Result<Poly> {
    word.eval(ctx, family, p)
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::AlphaPow(m) => write!(f, "a^{m}"),
            Symbol::Beta => f.write_str("b"),
            Symbol::Delta(k) => write!(f, "d{k}"),
            Symbol::DeltaOne => f.write_str("d1"),
        }
    }
}

impl fmt::Display for OperatorWord {
    /// Bracketed list such as `[d1, a^2, d3, b]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        let bad = || Error::Parse(format!("unknown operator symbol `{s}`"));
        match s {
            "b" => Ok(Symbol::Beta),
            "a" => Ok(Symbol::AlphaPow(1)),
            _ => {
                if let Some(m) = s.strip_prefix("a^") {
                    m.parse().map(Symbol::AlphaPow).map_err(|_| bad())
                } else if let Some(k) = s.strip_prefix('d') {
                    k.parse().map(Symbol::Delta).map_err(|_| bad())
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl FromStr for OperatorWord {
    type Err = Error;

    /// Parses a bracketed list into a [`ProductRole::Free`] word. `d1`
    /// parses as `Delta(1)`.
    fn from_str(s: &str) -> Result<OperatorWord> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("operator word `{s}` must be bracketed")))?;
        let symbols = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorWord::new(symbols, ProductRole::Free))
    }
}
