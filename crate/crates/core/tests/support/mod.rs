//! Reference generator used to check the enumeration engine.
//!
//! Shares nothing with the library's geometry: fixed polyhexes are grown by
//! brute force in translation-normal form, holes are detected with Euler's
//! formula on the hexagon graph, and free counts come from orbit sizes.

#![allow(dead_code)]

use std::collections::HashSet;

pub type Cell = (i32, i32);

const STEPS: [Cell; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn normal_form(mut cells: Vec<Cell>) -> Vec<Cell> {
    let mq = cells.iter().map(|c| c.0).min().unwrap();
    let mr = cells.iter().map(|c| c.1).min().unwrap();
    for c in &mut cells {
        c.0 -= mq;
        c.1 -= mr;
    }
    cells.sort();
    cells
}

/// Fixed polyhexes (holes included) with `h` cells, up to translation.
pub fn fixed_polyhexes(h: usize) -> Vec<Vec<Cell>> {
    let mut level: HashSet<Vec<Cell>> = HashSet::from([vec![(0, 0)]]);
    for _ in 1..h {
        let mut next = HashSet::new();
        for poly in &level {
            for &(q, r) in poly {
                for (dq, dr) in STEPS {
                    let cell = (q + dq, r + dr);
                    if !poly.contains(&cell) {
                        let mut grown = poly.clone();
                        grown.push(cell);
                        next.insert(normal_form(grown));
                    }
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Holes via `V - E + F = 2` with `F = h + 1 + holes`. Corners use doubled
/// pointy-top coordinates: center `(2q + r, 3r)`, corners `(±1, ±1)`, `(0, ±2)`.
pub fn hole_count(cells: &[Cell]) -> i64 {
    const CORNERS: [(i32, i32); 6] = [(1, 1), (0, 2), (-1, 1), (-1, -1), (0, -2), (1, -1)];
    let mut vertices = HashSet::new();
    let mut edges = HashSet::new();
    for &(q, r) in cells {
        let (x, y) = (2 * q + r, 3 * r);
        let pts: Vec<(i32, i32)> = CORNERS.iter().map(|&(dx, dy)| (x + dx, y + dy)).collect();
        for i in 0..6 {
            let (a, b) = (pts[i], pts[(i + 1) % 6]);
            vertices.insert(a);
            edges.insert(if a < b { (a, b) } else { (b, a) });
        }
    }
    edges.len() as i64 - vertices.len() as i64 - cells.len() as i64 + 1
}

fn orbit(cells: &[Cell]) -> HashSet<Vec<Cell>> {
    let mut images = HashSet::new();
    let mut current = cells.to_vec();
    for _ in 0..6 {
        images.insert(normal_form(current.clone()));
        images.insert(normal_form(current.iter().map(|&(q, r)| (r, q)).collect()));
        current = current.iter().map(|&(q, r)| (-r, q + r)).collect();
    }
    images
}

/// Fixed benzenoids (hole-free fixed polyhexes) with `h` cells.
pub fn fixed_benzenoids(h: usize) -> Vec<Vec<Cell>> {
    fixed_polyhexes(h)
        .into_iter()
        .filter(|p| hole_count(p) == 0)
        .collect()
}

/// Number of free benzenoids: each orbit of size `s` contributes `s` fixed
/// forms, so the count is `Σ 12 / |orbit| / 12` over fixed forms.
pub fn free_benzenoid_count(h: usize) -> u64 {
    let twelfths: u64 = fixed_benzenoids(h)
        .iter()
        .map(|p| {
            let size = orbit(p).len() as u64;
            assert_eq!(12 % size, 0);
            12 / size
        })
        .sum();
    assert_eq!(twelfths % 12, 0);
    twelfths / 12
}

/// One representative per orbit (the least normal form).
pub fn free_benzenoids(h: usize) -> Vec<Vec<Cell>> {
    let reps: HashSet<Vec<Cell>> = fixed_benzenoids(h)
        .iter()
        .map(|p| orbit(p).into_iter().min().unwrap())
        .collect();
    let mut reps: Vec<_> = reps.into_iter().collect();
    reps.sort();
    reps
}
