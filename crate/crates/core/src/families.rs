//! Parametric benzenoid families and the named small-benzenoid dataset.
//!
//! Generators return the literal template code, not its canonical form.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{Code, ConvexityKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family} takes {expected} parameter(s), got {got}")]
    WrongArity {
        family: Family,
        expected: usize,
        got: usize,
    },
    #[error("{family} requires every parameter >= {min}, got {params:?}")]
    ParamOutOfRange {
        family: Family,
        min: u32,
        params: Vec<u32>,
    },
    #[error("no named benzenoid matches {0:?}")]
    NotFound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `L(n)`: linear acenes.
    Linear,
    /// `M2(m, n)`: two linear segments.
    TwoSegments,
    /// `M3(m, n, k)`: three segments, both bends turning the same way.
    ThreeSegments,
    /// `Z3(m, n, k)`: three segments in a zigzag.
    ZigzagSegments,
    /// `Ch(n, m, k)`.
    Chevron,
    /// `P3(m)`.
    ProlateTriangle,
    /// `P5(m, n)`.
    ProlatePentagon,
    /// `O3(m)`.
    OblateTriangle,
    /// `B3(m)`.
    ProblateTriangle,
    /// `P4(m, n)`.
    ProlateRectangle,
    /// `S(m)`: dihedral all-benzenoids.
    DihedralS,
    /// `T(m)`.
    T,
    /// Spiral benzenoid on `h` hexagons.
    Spiral,
    /// `[h]helicene` fusene `5 1^(h-2) 5 3^(h-2)`.
    Helicene,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Linear,
        Family::TwoSegments,
        Family::ThreeSegments,
        Family::ZigzagSegments,
        Family::Chevron,
        Family::ProlateTriangle,
        Family::ProlatePentagon,
        Family::OblateTriangle,
        Family::ProblateTriangle,
        Family::ProlateRectangle,
        Family::DihedralS,
        Family::T,
        Family::Spiral,
        Family::Helicene,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Linear => "L",
            Family::TwoSegments => "M2",
            Family::ThreeSegments => "M3",
            Family::ZigzagSegments => "Z3",
            Family::Chevron => "Ch",
            Family::ProlateTriangle => "P3",
            Family::ProlatePentagon => "P5",
            Family::OblateTriangle => "O3",
            Family::ProblateTriangle => "B3",
            Family::ProlateRectangle => "P4",
            Family::DihedralS => "DihedralS",
            Family::T => "T",
            Family::Spiral => "Spiral",
            Family::Helicene => "Helicene",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::ThreeSegments | Family::ZigzagSegments | Family::Chevron => 3,
            Family::TwoSegments | Family::ProlatePentagon | Family::ProlateRectangle => 2,
            _ => 1,
        }
    }

    pub fn min_param(self) -> u32 {
        match self {
            Family::DihedralS => 1,
            _ => 2,
        }
    }

    /// Whether generated codes describe benzenoids (helicenes from six
    /// hexagons on overlap themselves).
    pub fn is_benzenoid_family(self) -> bool {
        self != Family::Helicene
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase();
        let alias = match wanted.as_str() {
            "linear" => Some(Family::Linear),
            "chevron" => Some(Family::Chevron),
            "s" | "dihedral" => Some(Family::DihedralS),
            _ => None,
        };
        alias
            .or_else(|| {
                Family::ALL
                    .into_iter()
                    .find(|f| f.id().to_ascii_lowercase() == wanted)
            })
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family together with its parameters, validated against the family's
/// arity and lower bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    family: Family,
    params: Vec<u32>,
}

impl FamilySpec {
    pub fn new(family: Family, params: Vec<u32>) -> Result<FamilySpec, FamilyError> {
        if params.len() != family.arity() {
            return Err(FamilyError::WrongArity {
                family,
                expected: family.arity(),
                got: params.len(),
            });
        }
        let min = family.min_param();
        if params.iter().any(|&p| p < min) {
            return Err(FamilyError::ParamOutOfRange {
                family,
                min,
                params,
            });
        }
        Ok(FamilySpec { family, params })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[u32] {
        &self.params
    }

    fn p(&self, i: usize) -> u32 {
        self.params[i]
    }

    pub fn generate(&self) -> Code {
        generate(self)
    }

    pub fn expected_h(&self) -> u32 {
        expected_h(self)
    }

    pub fn expected_cd(&self) -> u32 {
        expected_cd(self)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(u32::to_string).collect();
        write!(f, "{}({})", self.family, params.join(","))
    }
}

#[derive(Default)]
struct Template(Vec<u8>);

impl Template {
    fn put(mut self, symbols: &[u8]) -> Self {
        self.0.extend_from_slice(symbols);
        self
    }

    fn pow(mut self, block: &[u8], times: u32) -> Self {
        for _ in 0..times {
            self.0.extend_from_slice(block);
        }
        self
    }

    fn zig(self, times: u32) -> Self {
        self.pow(&[2], times)
    }

    fn build(self) -> Code {
        Code::new(self.0).expect("templates only use symbols 1..5")
    }
}

pub fn generate(spec: &FamilySpec) -> Code {
    let t = Template::default;
    match spec.family {
        Family::Linear => {
            let n = spec.p(0);
            t().put(&[5]).zig(n - 2).put(&[5]).zig(n - 2).build()
        }
        Family::TwoSegments => {
            let (m, n) = (spec.p(0), spec.p(1));
            t().put(&[5])
                .zig(m - 2)
                .put(&[1])
                .zig(n - 2)
                .put(&[5])
                .zig(n - 2)
                .put(&[3])
                .zig(m - 2)
                .build()
        }
        Family::ThreeSegments => {
            let (m, n, k) = (spec.p(0), spec.p(1), spec.p(2));
            t().put(&[5])
                .zig(k - 2)
                .put(&[1])
                .zig(m - 2)
                .put(&[1])
                .zig(n - 2)
                .put(&[5])
                .zig(n - 2)
                .put(&[3])
                .zig(m - 2)
                .put(&[3])
                .zig(k - 2)
                .build()
        }
        Family::ZigzagSegments => {
            let (m, n, k) = (spec.p(0), spec.p(1), spec.p(2));
            t().put(&[5])
                .zig(n - 2)
                .put(&[1])
                .zig(k - 2)
                .put(&[3])
                .zig(m - 2)
                .put(&[5])
                .zig(m - 2)
                .put(&[1])
                .zig(k - 2)
                .put(&[3])
                .zig(n - 2)
                .build()
        }
        Family::Chevron => {
            let (n, m, k) = (spec.p(0), spec.p(1), spec.p(2));
            t().put(&[4])
                .zig(n - 2)
                .put(&[3])
                .zig(k - 2)
                .put(&[3])
                .zig(m - 2)
                .put(&[3])
                .zig(n - 2)
                .put(&[4])
                .zig(m - 2)
                .put(&[1])
                .zig(k - 2)
                .build()
        }
        Family::ProlateTriangle => {
            let m = spec.p(0);
            t().put(&[5, 1])
                .pow(&[3, 1], m - 2)
                .put(&[5])
                .zig(m - 2)
                .put(&[3])
                .zig(m - 2)
                .build()
        }
        Family::ProlatePentagon => {
            let (m, n) = (spec.p(0), spec.p(1));
            t().put(&[3])
                .zig(n - 2)
                .put(&[4, 1])
                .pow(&[3, 1], m - 2)
                .put(&[4])
                .zig(n - 2)
                .put(&[3])
                .zig(m - 2)
                .put(&[3])
                .zig(m - 2)
                .build()
        }
        Family::OblateTriangle => {
            let m = spec.p(0);
            t().put(&[4, 3])
                .pow(&[1, 3], m - 2)
                .put(&[4])
                .zig(m - 2)
                .put(&[3])
                .zig(m - 2)
                .build()
        }
        Family::ProblateTriangle => {
            let m = spec.p(0);
            t().put(&[4])
                .pow(&[3, 1], m - 1)
                .put(&[5])
                .zig(m - 1)
                .put(&[3])
                .zig(m - 2)
                .build()
        }
        Family::ProlateRectangle => {
            let (m, n) = (spec.p(0), spec.p(1));
            let half = |t: Template| {
                t.put(&[4])
                    .zig(n - 2)
                    .put(&[4])
                    .pow(&[1, 3], m - 2)
                    .put(&[1])
            };
            half(half(t())).build()
        }
        Family::DihedralS => {
            let m = spec.p(0);
            let half = |t: Template| t.put(&[5, 1, 2, 1, 5]).pow(&[1, 3], m - 1).put(&[1]);
            half(half(t())).build()
        }
        Family::T => {
            let m = spec.p(0);
            if m == 2 {
                return t().put(&[5, 1, 4, 1, 5, 1, 4, 1]).build();
            }
            let half = |t: Template| t.put(&[4, 1, 4, 1, 4]).pow(&[1, 3], m - 3).put(&[1]);
            half(half(t())).build()
        }
        Family::Spiral => spiral_code(spec.p(0)),
        Family::Helicene => {
            let h = spec.p(0);
            t().put(&[5])
                .pow(&[1], h - 2)
                .put(&[5])
                .pow(&[3], h - 2)
                .build()
        }
    }
}

pub fn expected_h(spec: &FamilySpec) -> u32 {
    let p = |i| spec.p(i);
    match spec.family {
        Family::Linear | Family::Spiral | Family::Helicene => p(0),
        Family::TwoSegments => p(0) + p(1) - 1,
        Family::ThreeSegments | Family::ZigzagSegments => p(0) + p(1) + p(2) - 2,
        Family::Chevron => p(0) * (p(1) + p(2) - 1),
        Family::ProlateTriangle => p(0) * (p(0) + 1) / 2,
        Family::ProlatePentagon => {
            let (m, n) = (p(0), p(1));
            m * (m + 1) / 2 + (n - 1) * (2 * m - 1)
        }
        Family::OblateTriangle => p(0) * (p(0) + 1) / 2 + p(0) - 1,
        Family::ProblateTriangle => p(0) * (p(0) + 3) / 2,
        Family::ProlateRectangle => {
            let (m, n) = (p(0), p(1));
            n * m + (n - 1) * (m - 1)
        }
        Family::DihedralS => 7 * p(0),
        Family::T if p(0) == 2 => 6,
        Family::T => 7 * p(0) - 8,
    }
}

pub fn expected_cd(spec: &FamilySpec) -> u32 {
    let p = |i| spec.p(i);
    match spec.family {
        Family::Linear => 0,
        Family::TwoSegments => p(0) + p(1) - 3,
        Family::ThreeSegments => p(0) + p(1) + p(2) - 4,
        Family::ZigzagSegments => p(0).max(p(1)) + p(2) - 3,
        Family::Chevron => p(1) + p(2) - 3,
        Family::OblateTriangle if p(0) == 2 => 0,
        Family::ProlateTriangle
        | Family::ProlatePentagon
        | Family::OblateTriangle
        | Family::ProblateTriangle
        | Family::ProlateRectangle
        | Family::T => 1,
        Family::DihedralS => 3,
        Family::Spiral => {
            let h = p(0) as i64;
            (h - 2).max(2 * h - 8) as u32
        }
        Family::Helicene => {
            let h = p(0) as i64;
            (2 * h - 7).max(h - 2) as u32
        }
    }
}

/// Symbols of `⊕_{k≥0} (2^k s)^3` for `s = 3` or `s = 1`.
fn spiral_arm(tip: u8) -> impl Iterator<Item = u8> {
    (0usize..).flat_map(move |k| {
        std::iter::repeat_n(
            std::iter::repeat_n(2u8, k).chain(std::iter::once(tip)),
            3,
        )
        .flatten()
    })
}

fn spiral_code(h: u32) -> Code {
    let len = h as usize - 2;
    let mut symbols = vec![5];
    symbols.extend(spiral_arm(3).take(len));
    symbols.push(5);
    let mut inner: Vec<u8> = spiral_arm(1).take(len).collect();
    inner.reverse();
    symbols.extend(inner);
    Code::new(symbols).expect("spiral symbols are in 1..5")
}

pub fn spiral(h: u32) -> Result<Code, FamilyError> {
    FamilySpec::new(Family::Spiral, vec![h]).map(|s| s.generate())
}

pub fn helicene(h: u32) -> Result<Code, FamilyError> {
    FamilySpec::new(Family::Helicene, vec![h]).map(|s| s.generate())
}

/// One row of the named small-benzenoid table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCompound {
    pub name: String,
    pub bec: Code,
    pub hexagons: u32,
    pub class: ConvexityKind,
    pub deficit: u32,
    pub formula: String,
    pub cas: Option<String>,
}

impl NamedCompound {
    fn matches_name(&self, wanted: &str) -> bool {
        self.name.eq_ignore_ascii_case(wanted)
            || self.name.split('/').any(|alias| alias.eq_ignore_ascii_case(wanted))
    }
}

/// Raw text of the embedded dataset (tab separated, `#` comments).
pub const DATASET_TSV: &str = include_str!("../data/small_benzenoids.tsv");

fn parse_dataset(text: &str) -> Vec<NamedCompound> {
    text.lines()
        .filter(|line| !line.starts_with('#') && !line.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            assert_eq!(f.len(), 7, "bad dataset row {line:?}");
            NamedCompound {
                name: f[0].to_string(),
                bec: f[1].parse().expect("dataset code"),
                hexagons: f[2].parse().expect("dataset h"),
                class: f[3].parse().expect("dataset class"),
                deficit: f[4].parse().expect("dataset cd"),
                formula: f[5].to_string(),
                cas: Some(f[6].trim()).filter(|s| !s.is_empty()).map(str::to_string),
            }
        })
        .collect()
}

pub fn dataset() -> &'static [NamedCompound] {
    static DATA: OnceLock<Vec<NamedCompound>> = OnceLock::new();
    DATA.get_or_init(|| parse_dataset(DATASET_TSV))
}

/// Looks a compound up by name (case-insensitive, `/`-separated aliases
/// accepted) or by any code equivalent to its BEC. Two printed names share
/// one BEC; a code lookup returns the first of them.
pub fn lookup(query: &str) -> Result<&'static NamedCompound, FamilyError> {
    let query = query.trim();
    if let Ok(code) = query.parse::<Code>() {
        let canon = code.canonical();
        if let Some(hit) = dataset().iter().find(|c| c.bec.canonical() == canon) {
            return Ok(hit);
        }
    }
    dataset()
        .iter()
        .find(|c| c.matches_name(query))
        .ok_or_else(|| FamilyError::NotFound(query.to_string()))
}

pub fn lookup_code(code: &Code) -> Option<&'static NamedCompound> {
    let canon = code.canonical();
    dataset().iter().find(|c| c.bec.canonical() == canon)
}
