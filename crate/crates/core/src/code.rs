//! Boundary-edges codes and the metrics defined on them.
//!
//! A [`Code`] is a cyclic word over the symbols `1..=5` (or the lone symbol
//! `6` standing for benzene). Everything in this module is pure algebra on
//! the symbol sequence; whether a code actually describes a benzenoid is
//! decided by [`crate::lattice`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The single-symbol code assigned to benzene.
pub const BENZENE_SYMBOL: u8 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code is empty")]
    Empty,
    #[error("invalid symbol {0:?} at position {1}")]
    InvalidSymbol(char, usize),
    #[error("symbol 6 is only allowed as the whole benzene code")]
    MisplacedBenzene,
    #[error("the benzene code 6 cannot be concatenated")]
    BenzeneNotComposable,
    #[error("window length {k} exceeds code length {len}")]
    WindowTooLong { k: usize, len: usize },
    #[error("window length must be at least 1")]
    WindowEmpty,
    #[error("position {position} out of range for code of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("cannot split symbol {symbol} into {s1}, 5, {s2}")]
    SplitOutOfRange { symbol: u8, s1: i64, s2: i64 },
}

/// A boundary-edges code.
///
/// Values are immutable; every operation returns a fresh code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Code(Vec<u8>);

impl Code {
    pub fn new(symbols: Vec<u8>) -> Result<Self, CodeError> {
        if symbols.is_empty() {
            return Err(CodeError::Empty);
        }
        if symbols.len() == 1 && symbols[0] == BENZENE_SYMBOL {
            return Ok(Code(symbols));
        }
        for (i, &s) in symbols.iter().enumerate() {
            match s {
                1..=5 => {}
                BENZENE_SYMBOL => return Err(CodeError::MisplacedBenzene),
                _ => {
                    let ch = char::from_digit(u32::from(s), 10).unwrap_or('?');
                    return Err(CodeError::InvalidSymbol(ch, i));
                }
            }
        }
        Ok(Code(symbols))
    }

    pub fn benzene() -> Self {
        Code(vec![BENZENE_SYMBOL])
    }

    pub fn is_benzene(&self) -> bool {
        self.0 == [BENZENE_SYMBOL]
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Codes are never empty; provided for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&s| i64::from(s)).sum()
    }

    /// `sum(c) - 2 len(c)`: net number of left turns along the perimeter.
    pub fn winding(&self) -> i64 {
        self.sum() - 2 * self.len() as i64
    }

    pub fn concat(&self, other: &Code) -> Result<Code, CodeError> {
        if self.is_benzene() || other.is_benzene() {
            return Err(CodeError::BenzeneNotComposable);
        }
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.0);
        symbols.extend_from_slice(&other.0);
        Ok(Code(symbols))
    }

    /// Right circular shift by `i` positions; negative `i` shifts left.
    pub fn rotate(&self, i: i64) -> Code {
        let n = self.len() as i64;
        let shift = i.rem_euclid(n) as usize;
        let mut symbols = self.0.clone();
        symbols.rotate_right(shift);
        Code(symbols)
    }

    pub fn reverse(&self) -> Code {
        let mut symbols = self.0.clone();
        symbols.reverse();
        Code(symbols)
    }

    /// Lexicographically maximal representative over all rotations of the
    /// code and of its reversal.
    pub fn canonical(&self) -> Code {
        Code(canonical_symbols(&self.0))
    }

    pub fn is_canonical(&self) -> bool {
        canonical_symbols(&self.0) == self.0
    }

    pub fn is_equivalent(&self, other: &Code) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    /// Minimum average over all cyclic windows of exactly `k` symbols.
    pub fn min_window_average(&self, k: usize) -> Result<Ratio<i64>, CodeError> {
        if k == 0 {
            return Err(CodeError::WindowEmpty);
        }
        if k > self.len() {
            return Err(CodeError::WindowTooLong { k, len: self.len() });
        }
        Ok(Ratio::new(min_window_sum(&self.0, k), k as i64))
    }

    /// Smallest `k` such that every cyclic window of `k + 1` symbols averages
    /// at least 2. Windows never wrap more than once around the code, so the
    /// search stops at `len - 1`.
    pub fn convexity_deficit(&self) -> Deficit {
        if self.is_benzene() {
            return Deficit::Defined(0);
        }
        (1..=self.len())
            .find(|&w| min_window_sum(&self.0, w) >= 2 * w as i64)
            .map_or(Deficit::Undefined, |w| Deficit::Defined(w as u32 - 1))
    }

    pub fn is_k_convex(&self, k: u32) -> bool {
        matches!(self.convexity_deficit(), Deficit::Defined(d) if d <= k)
    }

    pub fn classify(&self) -> ConvexityClass {
        let deficit = self.convexity_deficit();
        let kind = match deficit {
            Deficit::Undefined => ConvexityKind::General,
            Deficit::Defined(_) if self.is_benzene() => ConvexityKind::Convex,
            Deficit::Defined(_) => {
                if !self.0.contains(&1) {
                    ConvexityKind::Convex
                } else if self.has_cyclic_pair(|a, b| a + b < 4) {
                    ConvexityKind::General
                } else if self.0.contains(&2) {
                    ConvexityKind::QuasiConvex
                } else {
                    ConvexityKind::PseudoConvex
                }
            }
        };
        ConvexityClass { kind, deficit }
    }

    /// Grows the code by a one-contact hexagon addition at `position`:
    /// the symbol `s` there becomes `s1 5 s2` with `s1 + s2 = s - 1`.
    pub fn one_contact_attach(&self, position: usize, s1: u8) -> Result<Code, CodeError> {
        if self.is_benzene() {
            return Err(CodeError::BenzeneNotComposable);
        }
        let symbol = *self.0.get(position).ok_or(CodeError::PositionOutOfRange {
            position,
            len: self.len(),
        })?;
        let s2 = i64::from(symbol) - 1 - i64::from(s1);
        if symbol < 3 || !(1..=5).contains(&i64::from(s1)) || !(1..=5).contains(&s2) {
            return Err(CodeError::SplitOutOfRange {
                symbol,
                s1: i64::from(s1),
                s2,
            });
        }
        let mut symbols = Vec::with_capacity(self.len() + 2);
        symbols.extend_from_slice(&self.0[..position]);
        symbols.extend_from_slice(&[s1, 5, s2 as u8]);
        symbols.extend_from_slice(&self.0[position + 1..]);
        Ok(Code(symbols))
    }

    fn has_cyclic_pair(&self, pred: impl Fn(u8, u8) -> bool) -> bool {
        let n = self.len();
        n >= 2 && (0..n).any(|i| pred(self.0[i], self.0[(i + 1) % n]))
    }
}

fn min_window_sum(symbols: &[u8], k: usize) -> i64 {
    let n = symbols.len();
    let mut sum: i64 = symbols[..k].iter().map(|&s| i64::from(s)).sum();
    let mut best = sum;
    for start in 1..n {
        sum += i64::from(symbols[(start + k - 1) % n]) - i64::from(symbols[start - 1]);
        best = best.min(sum);
    }
    best
}

/// Compares the rotation of `s` starting at `i` against the one at `j`.
fn cmp_rotations(a: &[u8], i: usize, b: &[u8], j: usize) -> Ordering {
    let n = a.len();
    for t in 0..n {
        match a[(i + t) % n].cmp(&b[(j + t) % n]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn max_rotation(s: &[u8]) -> usize {
    (1..s.len()).fold(0, |best, i| {
        if cmp_rotations(s, i, s, best) == Ordering::Greater {
            i
        } else {
            best
        }
    })
}

pub(crate) fn canonical_symbols(s: &[u8]) -> Vec<u8> {
    let n = s.len();
    let rev: Vec<u8> = s.iter().rev().copied().collect();
    let fwd = max_rotation(s);
    let bwd = max_rotation(&rev);
    let (src, start) = if cmp_rotations(&rev, bwd, s, fwd) == Ordering::Greater {
        (&rev[..], bwd)
    } else {
        (s, fwd)
    };
    (0..n).map(|t| src[(start + t) % n]).collect()
}

impl FromStr for Code {
    type Err = CodeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        let symbols = text
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch.to_digit(10) {
                Some(d @ 1..=6) => Ok(d as u8),
                _ => Err(CodeError::InvalidSymbol(ch, i)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Code::new(symbols)
    }
}

impl TryFrom<String> for Code {
    type Error = CodeError;

    fn try_from(text: String) -> Result<Self, Self::Error> {
        text.parse()
    }
}

impl From<Code> for String {
    fn from(code: Code) -> String {
        code.to_string()
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl PartialOrd for Code {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Symbol-wise lexicographic order.
impl Ord for Code {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// Convexity deficit; undefined when no window up to the full code reaches
/// average 2 (which only happens for codes with non-positive winding).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deficit {
    Defined(u32),
    Undefined,
}

impl Deficit {
    pub fn value(self) -> Option<u32> {
        match self {
            Deficit::Defined(k) => Some(k),
            Deficit::Undefined => None,
        }
    }
}

impl fmt::Display for Deficit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deficit::Defined(k) => write!(f, "{k}"),
            Deficit::Undefined => f.write_str("undefined"),
        }
    }
}

/// The four classes partition all codes. `QuasiConvex` means quasi-convex
/// but not pseudo-convex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvexityKind {
    Convex,
    PseudoConvex,
    QuasiConvex,
    General,
}

impl ConvexityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConvexityKind::Convex => "convex",
            ConvexityKind::PseudoConvex => "pseudo-convex",
            ConvexityKind::QuasiConvex => "quasi-convex",
            ConvexityKind::General => "general",
        }
    }
}

impl fmt::Display for ConvexityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConvexityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "convex" => Ok(ConvexityKind::Convex),
            "pseudo-convex" => Ok(ConvexityKind::PseudoConvex),
            "quasi-convex" => Ok(ConvexityKind::QuasiConvex),
            "" | "general" => Ok(ConvexityKind::General),
            other => Err(format!("unknown convexity class {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConvexityClass {
    pub kind: ConvexityKind,
    pub deficit: Deficit,
}
