//! Isomorph-free generation of benzenoids and convexity-deficit statistics.
//!
//! Level `h` is produced from level `h - 1` by adding every free neighbor
//! cell to every seed, canonicalizing under the twelve lattice symmetries,
//! merging the candidates into one sorted set and discarding sets with holes.
//! Within a level a benzenoid is stored as a packed `u128`: its canonical
//! cell list (normalized, sorted) with one byte `q << 4 | r` per cell, the
//! first cell most significant. For equal sizes the integer order is the
//! lexicographic order of the cell lists, so the packed key and
//! [`canonical_cells`](crate::lattice::canonical_cells) agree.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{Code, Deficit};
use crate::lattice::{self, CellSet, Condensation, HexCell, NEIGHBOR_OFFSETS};

/// Largest hexagon count the packed key can hold (coordinates below 16).
pub const MAX_HEXAGONS: u32 = 16;

/// Largest `h` for the exhaustive unbranched scans (`3^(h-2)` codes).
pub const MAX_UNBRANCHED_HEXAGONS: u32 = 18;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("h = {h} exceeds the supported limit of {limit}")]
    ResourceLimit { h: u32, limit: u32 },
    #[error("hexagon count must be at least {min}, got {h}")]
    TooSmall { h: u32, min: u32 },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error("{path}:{line}: {reason}")]
    BadLevelFile {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

type Result<T> = std::result::Result<T, EnumerationError>;

fn pack_sorted(bytes: &mut [u8]) -> u128 {
    bytes.sort_unstable();
    bytes.iter().fold(0u128, |acc, &b| (acc << 8) | u128::from(b))
}

/// Canonical packed key of a cell list (at most [`MAX_HEXAGONS`] cells).
fn canonical_key(cells: &[(i32, i32)]) -> u128 {
    debug_assert!(cells.len() <= MAX_HEXAGONS as usize);
    let mut best = u128::MAX;
    let mut image = [(0i32, 0i32); MAX_HEXAGONS as usize];
    let mut bytes = [0u8; MAX_HEXAGONS as usize];
    let n = cells.len();
    image[..n].copy_from_slice(cells);
    for _rotation in 0..6 {
        for reflect in [false, true] {
            let (mut min_q, mut min_r) = (i32::MAX, i32::MAX);
            for &(q, r) in &image[..n] {
                let (q, r) = if reflect { (r, q) } else { (q, r) };
                min_q = min_q.min(q);
                min_r = min_r.min(r);
            }
            for (byte, &(q, r)) in bytes.iter_mut().zip(&image[..n]) {
                let (q, r) = if reflect { (r, q) } else { (q, r) };
                *byte = (((q - min_q) << 4) | (r - min_r)) as u8;
            }
            best = best.min(pack_sorted(&mut bytes[..n]));
        }
        for cell in &mut image[..n] {
            *cell = (-cell.1, cell.0 + cell.1);
        }
    }
    best
}

fn unpack(key: u128, h: u32) -> Vec<(i32, i32)> {
    (0..h)
        .rev()
        .map(|i| {
            let byte = (key >> (8 * i)) as u8;
            (i32::from(byte >> 4), i32::from(byte & 0x0f))
        })
        .collect()
}

fn children(key: u128, h: u32, out: &mut Vec<u128>) {
    let mut cells = unpack(key, h);
    let mut frontier: Vec<(i32, i32)> = Vec::with_capacity(4 * cells.len() + 2);
    for &(q, r) in &cells {
        for (dq, dr) in NEIGHBOR_OFFSETS {
            let next = (q + dq, r + dr);
            if !cells.contains(&next) && !frontier.contains(&next) {
                frontier.push(next);
            }
        }
    }
    cells.push((0, 0));
    let last = cells.len() - 1;
    for next in frontier {
        cells[last] = next;
        out.push(canonical_key(&cells));
    }
}

/// All benzenoids with `h` hexagons, one per congruence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    h: u32,
    keys: Vec<u128>,
    /// Distinct polyhexes generated before the hole filter, when known.
    raw_count: Option<usize>,
}

impl Level {
    pub fn benzene() -> Level {
        Level {
            h: 1,
            keys: vec![canonical_key(&[(0, 0)])],
            raw_count: Some(1),
        }
    }

    pub fn hexagons(&self) -> u32 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn raw_count(&self) -> Option<usize> {
        self.raw_count
    }

    /// Canonical cell sets in key order.
    pub fn cell_sets(&self) -> impl Iterator<Item = CellSet> + '_ {
        self.keys.iter().map(move |&k| key_to_cells(k, self.h))
    }

    /// Rebuilds a level from arbitrary cell sets; duplicates up to symmetry
    /// collapse.
    pub fn from_cell_sets(h: u32, sets: impl IntoIterator<Item = CellSet>) -> Result<Level> {
        check_size(h)?;
        let mut keys: Vec<u128> = sets
            .into_iter()
            .map(|s| {
                let cells: Vec<(i32, i32)> = s.iter().map(|c| (c.q, c.r)).collect();
                canonical_key(&cells)
            })
            .collect();
        keys.sort_unstable();
        keys.dedup();
        Ok(Level {
            h,
            keys,
            raw_count: None,
        })
    }

    /// Grows every seed by one cell. Runs on the current rayon pool; the
    /// result is independent of how work is split.
    pub fn grow(&self) -> Result<Level> {
        let h = self.h + 1;
        check_size(h)?;
        let mut keys: Vec<u128> = self
            .keys
            .par_iter()
            .fold(Vec::new, |mut acc, &seed| {
                children(seed, self.h, &mut acc);
                acc
            })
            .flatten_iter()
            .collect();
        keys.par_sort_unstable();
        keys.dedup();
        let raw_count = keys.len();
        let keys: Vec<u128> = keys
            .into_par_iter()
            .filter(|&k| !lattice::has_hole(&key_to_cells(k, h)))
            .collect();
        Ok(Level {
            h,
            keys,
            raw_count: Some(raw_count),
        })
    }
}

fn key_to_cells(key: u128, h: u32) -> CellSet {
    CellSet::new(unpack(key, h).into_iter().map(|(q, r)| HexCell::new(q, r)))
}

fn check_size(h: u32) -> Result<()> {
    if h == 0 {
        Err(EnumerationError::TooSmall { h, min: 1 })
    } else if h > MAX_HEXAGONS {
        Err(EnumerationError::ResourceLimit {
            h,
            limit: MAX_HEXAGONS,
        })
    } else {
        Ok(())
    }
}

/// Traced data for one benzenoid of a level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub code: Code,
    pub deficit: u32,
    pub condensation: Condensation,
}

fn profile(cells: &CellSet) -> Profile {
    let code = lattice::trace(cells).expect("enumerated sets are benzenoids");
    let deficit = match code.convexity_deficit() {
        Deficit::Defined(k) => k,
        Deficit::Undefined => unreachable!("benzenoid code {code} has a deficit"),
    };
    Profile {
        code,
        deficit,
        condensation: lattice::condensation_class(cells),
    }
}

/// Profiles of every benzenoid in the level, sorted by canonical code.
pub fn profiles(level: &Level) -> Vec<Profile> {
    let mut out: Vec<Profile> = level
        .keys
        .par_iter()
        .map(|&k| profile(&key_to_cells(k, level.h)))
        .collect();
    out.par_sort_unstable_by(|a, b| a.code.cmp(&b.code));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub h: u32,
    pub count: u64,
    /// `k -> F(h, k)`, the number of benzenoids with deficit `k`.
    pub distribution: BTreeMap<u32, u64>,
    pub mcd: u32,
    pub ex: u64,
    /// Canonical codes of the extremal benzenoids, lexicographically sorted.
    pub extremal_codes: Vec<Code>,
    pub extremal_breakdown: BTreeMap<Condensation, u64>,
}

impl EnumerationReport {
    pub fn from_profiles(h: u32, profiles: &[Profile]) -> EnumerationReport {
        let mut distribution = BTreeMap::new();
        for p in profiles {
            *distribution.entry(p.deficit).or_insert(0) += 1;
        }
        let mcd = profiles.iter().map(|p| p.deficit).max().unwrap_or(0);
        let mut extremal: Vec<&Profile> = profiles.iter().filter(|p| p.deficit == mcd).collect();
        extremal.sort_by(|a, b| a.code.cmp(&b.code));
        let mut extremal_breakdown = BTreeMap::new();
        for p in &extremal {
            *extremal_breakdown.entry(p.condensation).or_insert(0) += 1;
        }
        EnumerationReport {
            h,
            count: profiles.len() as u64,
            distribution,
            mcd,
            ex: extremal.len() as u64,
            extremal_codes: extremal.into_iter().map(|p| p.code.clone()).collect(),
            extremal_breakdown,
        }
    }

    /// `F(h, 0), ..., F(h, mcd)` with zeros for absent deficits.
    pub fn frequencies(&self) -> Vec<u64> {
        (0..=self.mcd)
            .map(|k| self.distribution.get(&k).copied().unwrap_or(0))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub h_max: u32,
    pub workers: usize,
    /// Where level, report and extremal files are written, if anywhere.
    pub out_dir: Option<PathBuf>,
    /// Continue from the largest level file already present in `out_dir`.
    pub resume: bool,
}

impl SearchConfig {
    pub fn new(h_max: u32) -> SearchConfig {
        SearchConfig {
            h_max,
            workers: 0,
            out_dir: None,
            resume: false,
        }
    }
}

pub fn level_file_name(h: u32) -> String {
    format!("benzenoids_h{h}.txt")
}

pub fn report_file_name(h: u32) -> String {
    format!("report_h{h}.json")
}

pub fn extremal_file_name(h: u32) -> String {
    format!("extremal_h{h}.txt")
}

/// Writes one code per line, newline-terminated.
pub fn write_codes<'a>(path: &Path, codes: impl IntoIterator<Item = &'a Code>) -> io::Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    for code in codes {
        writeln!(out, "{code}")?;
    }
    out.flush()
}

/// Reads a level file back into a level by embedding each code.
pub fn read_level_file(path: &Path, h: u32) -> Result<Level> {
    let file = io::BufReader::new(fs::File::open(path)?);
    let mut sets = Vec::new();
    for (i, line) in file.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| EnumerationError::BadLevelFile {
            path: path.to_path_buf(),
            line: i + 1,
            reason,
        };
        let code: Code = line.parse().map_err(|e| bad(format!("{e}")))?;
        let b = lattice::embed(&code).map_err(|e| bad(format!("{e}")))?;
        if b.hexagons() as u32 != h {
            return Err(bad(format!("{code} has {} hexagons, expected {h}", b.hexagons())));
        }
        sets.push(b.cells);
    }
    Level::from_cell_sets(h, sets)
}

/// Level-by-level search with optional persistence.
pub struct Enumerator {
    config: SearchConfig,
    pool: rayon::ThreadPool,
}

impl Enumerator {
    pub fn new(config: SearchConfig) -> Result<Enumerator> {
        check_size(config.h_max)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| EnumerationError::Pool(e.to_string()))?;
        Ok(Enumerator { config, pool })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    fn resume_point(&self) -> Result<Option<Level>> {
        let Some(dir) = self.config.out_dir.as_ref().filter(|_| self.config.resume) else {
            return Ok(None);
        };
        for h in (1..=self.config.h_max).rev() {
            let path = dir.join(level_file_name(h));
            if path.exists() {
                return read_level_file(&path, h).map(Some);
            }
        }
        Ok(None)
    }

    /// Runs up to `h_max`, calling `visit` on every level that was computed
    /// or loaded, in increasing `h`.
    pub fn for_each_level(&self, mut visit: impl FnMut(&Level) -> Result<()>) -> Result<()> {
        let mut level = self.resume_point()?.unwrap_or_else(Level::benzene);
        loop {
            visit(&level)?;
            if level.h >= self.config.h_max {
                return Ok(());
            }
            level = self.pool.install(|| level.grow())?;
        }
    }

    /// Reports for every visited level, writing files when `out_dir` is set.
    pub fn run(&self) -> Result<Vec<EnumerationReport>> {
        if let Some(dir) = &self.config.out_dir {
            fs::create_dir_all(dir)?;
        }
        let mut reports = Vec::new();
        self.for_each_level(|level| {
            let profiles = self.pool.install(|| profiles(level));
            let report = EnumerationReport::from_profiles(level.h, &profiles);
            if let Some(dir) = &self.config.out_dir {
                write_codes(&dir.join(level_file_name(level.h)), profiles.iter().map(|p| &p.code))?;
                write_codes(&dir.join(extremal_file_name(level.h)), &report.extremal_codes)?;
                let json = serde_json::to_string_pretty(&report).map_err(io::Error::from)?;
                fs::write(dir.join(report_file_name(level.h)), json + "\n")?;
            }
            reports.push(report);
            Ok(())
        })?;
        Ok(reports)
    }

    pub fn level(&self, h: u32) -> Result<Level> {
        check_size(h)?;
        self.pool.install(|| {
            let mut level = Level::benzene();
            while level.h < h {
                level = level.grow()?;
            }
            Ok(level)
        })
    }
}

fn default_enumerator(h: u32) -> Result<Enumerator> {
    Enumerator::new(SearchConfig::new(h.max(1)))
}

/// Every benzenoid with `h` hexagons exactly once, as canonical cell sets.
pub fn enumerate_benzenoids(h: u32) -> Result<Vec<CellSet>> {
    check_size(h)?;
    Ok(default_enumerator(h)?.level(h)?.cell_sets().collect())
}

pub fn report(h: u32) -> Result<EnumerationReport> {
    let enumerator = default_enumerator(h)?;
    let level = enumerator.level(h)?;
    let profiles = enumerator.pool.install(|| profiles(&level));
    Ok(EnumerationReport::from_profiles(h, &profiles))
}

/// Canonical codes `5 s_1 … s_(h-2) 5 s̄_(h-2) … s̄_1` with `s_i ∈ {1,2,3}`
/// and `s̄_i = 4 - s_i`, deduplicated and sorted. No geometric filtering.
pub fn enumerate_unbranched_fusenes(h: u32) -> Result<Vec<Code>> {
    if h < 2 {
        return Err(EnumerationError::TooSmall { h, min: 2 });
    }
    if h > MAX_UNBRANCHED_HEXAGONS {
        return Err(EnumerationError::ResourceLimit {
            h,
            limit: MAX_UNBRANCHED_HEXAGONS,
        });
    }
    let free = (h - 2) as usize;
    let total = 3usize.pow(free as u32);
    let mut codes: Vec<Code> = (0..total)
        .into_par_iter()
        .map(|mut index| {
            let mut outward = Vec::with_capacity(free);
            for _ in 0..free {
                outward.push((index % 3) as u8 + 1);
                index /= 3;
            }
            let mut symbols = Vec::with_capacity(2 * free + 2);
            symbols.push(5);
            symbols.extend_from_slice(&outward);
            symbols.push(5);
            symbols.extend(outward.iter().rev().map(|s| 4 - s));
            Code::new(symbols).expect("symbols in 1..5").canonical()
        })
        .collect();
    codes.par_sort_unstable();
    codes.dedup();
    Ok(codes)
}

/// Maximum deficit over the unbranched codes that embed, with every code
/// attaining it (sorted).
pub fn max_cd_unbranched_benzenoids(h: u32) -> Result<(u32, Vec<Code>)> {
    let embeddable: Vec<(u32, Code)> = enumerate_unbranched_fusenes(h)?
        .into_par_iter()
        .filter(|code| lattice::embed(code).is_ok())
        .filter_map(|code| code.convexity_deficit().value().map(|cd| (cd, code)))
        .collect();
    let best = embeddable.iter().map(|(cd, _)| *cd).max().unwrap_or(0);
    let witnesses = embeddable
        .into_iter()
        .filter(|(cd, _)| *cd == best)
        .map(|(_, code)| code)
        .collect();
    Ok((best, witnesses))
}

/// Maximum deficit over all unbranched fusene codes, with witnesses.
pub fn max_cd_unbranched_fusenes(h: u32) -> Result<(u32, Vec<Code>)> {
    let scored: Vec<(u32, Code)> = enumerate_unbranched_fusenes(h)?
        .into_iter()
        .filter_map(|code| code.convexity_deficit().value().map(|cd| (cd, code)))
        .collect();
    let best = scored.iter().map(|(cd, _)| *cd).max().unwrap_or(0);
    let witnesses = scored
        .into_iter()
        .filter(|(cd, _)| *cd == best)
        .map(|(_, c)| c)
        .collect();
    Ok((best, witnesses))
}

/// Weakly increasing, then weakly decreasing.
pub fn check_unimodal(values: &[u64]) -> bool {
    let peak = values
        .windows(2)
        .position(|w| w[1] < w[0])
        .map_or(values.len(), |i| i + 1);
    values[peak.saturating_sub(1)..].windows(2).all(|w| w[1] <= w[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::canonical_cells;

    fn c(s: &str) -> Code {
        s.parse().unwrap()
    }

    #[test]
    fn packed_key_orders_like_cell_sets() {
        for code in ["52441", "533244111", "5232252212", "333333", "515151"] {
            let cells = lattice::embed(&c(code)).unwrap().cells;
            let list: Vec<(i32, i32)> = cells.iter().map(|x| (x.q, x.r)).collect();
            let key = canonical_key(&list);
            assert_eq!(key_to_cells(key, cells.len() as u32), canonical_cells(&cells), "{code}");
        }
    }

    #[test]
    fn small_levels() {
        let counts: Vec<usize> = (1..=5).map(|h| enumerate_benzenoids(h).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 7, 22]);
    }

    #[test]
    fn hole_filter_drops_the_ring_at_six() {
        let enumerator = default_enumerator(6).unwrap();
        let level = enumerator.level(6).unwrap();
        assert_eq!(level.raw_count(), Some(82));
        assert_eq!(level.len(), 81);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(enumerate_benzenoids(0), Err(EnumerationError::TooSmall { .. })));
        assert!(matches!(
            enumerate_benzenoids(MAX_HEXAGONS + 1),
            Err(EnumerationError::ResourceLimit { .. })
        ));
        assert!(matches!(
            enumerate_unbranched_fusenes(1),
            Err(EnumerationError::TooSmall { .. })
        ));
    }

    #[test]
    fn report_examples() {
        let r4 = report(4).unwrap();
        assert_eq!((r4.count, r4.mcd, r4.ex), (7, 2, 2));
        assert!(r4.extremal_codes.contains(&c("532521").canonical()));

        let r7 = report(7).unwrap();
        assert_eq!((r7.mcd, r7.ex), (6, 3));
        assert!(r7.extremal_codes.contains(&c("523315151112").canonical()));

        let r6 = report(6).unwrap();
        assert_eq!(r6.extremal_breakdown.get(&Condensation::Pericondensed), Some(&1));
        let peri: Vec<_> = r6
            .extremal_codes
            .iter()
            .filter(|code| lattice::embed(code).unwrap().condensation == Condensation::Pericondensed)
            .collect();
        assert_eq!(peri, [&c("533244111").canonical()]);
    }

    #[test]
    fn unbranched_fusene_examples() {
        assert_eq!(enumerate_unbranched_fusenes(2).unwrap(), [c("55")]);
        assert_eq!(enumerate_unbranched_fusenes(3).unwrap(), [c("5252"), c("5351")]);
        let (best, witnesses) = max_cd_unbranched_fusenes(8).unwrap();
        assert_eq!(best, 9);
        assert!(witnesses.contains(&crate::families::helicene(8).unwrap().canonical()));
    }

    #[test]
    fn unbranched_benzenoid_examples() {
        assert_eq!(max_cd_unbranched_benzenoids(4).unwrap().0, 2);
        assert_eq!(max_cd_unbranched_benzenoids(5).unwrap().0, 3);
        let (best, witnesses) = max_cd_unbranched_benzenoids(9).unwrap();
        assert_eq!(best, 10);
        assert!(witnesses.contains(&crate::families::spiral(9).unwrap().canonical()));
    }

    #[test]
    fn unimodality() {
        assert!(check_unimodal(&[1]));
        assert!(check_unimodal(&[1, 3, 5, 2, 1]));
        assert!(check_unimodal(&[3, 3, 1, 1]));
        assert!(check_unimodal(&[1, 1, 4, 4]));
        assert!(!check_unimodal(&[2, 1, 2]));
        assert!(!check_unimodal(&[1, 3, 2, 2, 3]));
        assert!(check_unimodal(&[]));
    }
}
