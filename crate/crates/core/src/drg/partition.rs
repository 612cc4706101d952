//! The refinement `{C_i^-, C_i^+}` of the distance partition of a maximal
//! clique `C` by the distance from a vertex `x` of `C`.

use super::profile::IntConsts;
use super::{minus, plus, DrgError};
use crate::geometry::{multi_source_bfs, DPGraph, Rref};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub(crate) fn multi_source_distances(g: &DPGraph, sources: &[usize]) -> Vec<u8> {
    multi_source_bfs(&g.adj, sources)
}

/// The maximal clique through the edge `xy`: `{x, y}` together with their common neighbors.
fn edge_clique(g: &DPGraph, x: usize, y: usize) -> Vec<usize> {
    let mut c: Vec<usize> = g.adj[x].iter().map(|&z| z as usize).filter(|&z| g.adjacent(y, z)).collect();
    c.extend([x, y]);
    c.sort_unstable();
    c
}

/// The standard choice: `x` spanned by the first `D` basis vectors and `C`
/// the vertices containing the span of the first `D - 1`.
pub fn default_choice(g: &DPGraph) -> Result<(usize, Vec<usize>), DrgError> {
    let n = g.space.n;
    let d = g.diameter();
    let unit = |i: usize| -> Vec<u16> { (0..n).map(|j| (i == j) as u16).collect() };
    let x_rows: Vec<Vec<u16>> = (0..d).map(unit).collect();
    let x = g
        .index_of(&Rref::new(&g.space.field, x_rows.clone(), n))
        .ok_or_else(|| DrgError::InvalidClique("standard maximal isotropic subspace not found".into()))?;
    Ok((x, g.containing(&x_rows[..d - 1])))
}

/// A random vertex and a random maximal clique through it.
pub fn seeded_choice(g: &DPGraph, seed: u64) -> (usize, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = rng.gen_range(0..g.len());
    let y = g.adj[x][rng.gen_range(0..g.adj[x].len())] as usize;
    (x, edge_clique(g, x, y))
}

/// Checks that every edge lies in exactly one maximal clique, of size `1 + q^e`.
pub fn verify_edge_cliques(g: &DPGraph, qe: usize) -> Result<(), DrgError> {
    (0..g.len()).into_par_iter().try_for_each(|x| {
        for &y in g.adj[x].iter().filter(|&&y| y as usize > x) {
            let c = edge_clique(g, x, y as usize);
            let ok = c.len() == qe + 1 && c.iter().all(|&u| c.iter().all(|&v| u == v || g.adjacent(u, v)));
            if !ok {
                return Err(DrgError::EdgeClique(x, y as usize));
            }
        }
        Ok(())
    })
}

/// The partition of `X` into the cells `C_i^-`, `C_i^+`, in basis order.
#[derive(Clone, Debug)]
pub struct CliquePartition {
    pub x: usize,
    pub clique: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
    pub cell_of: Vec<usize>,
    /// `quotient[k][j] = |Γ(z) ∩ cell_j|` for any `z` in cell `k`.
    pub quotient: Vec<Vec<i64>>,
}

/// Neighbor counts predicted for the partition, indexed like `quotient`.
pub fn expected_quotient(k: &IntConsts) -> Vec<Vec<i64>> {
    let d = k.d;
    let mut m = vec![vec![0i64; 2 * d]; 2 * d];
    for i in 0..d {
        let (zm, zp) = (minus(i), plus(i));
        if i >= 1 {
            m[zm][minus(i - 1)] = k.c(i);
            m[zp][plus(i - 1)] = k.c(i);
        }
        m[zm][zm] = k.a(i);
        m[zm][zp] = k.b(i) - k.b(i + 1);
        m[zp][zm] = k.c(i + 1) - k.c(i);
        m[zp][zp] = k.a(i + 1);
        if i + 1 < d {
            m[zm][minus(i + 1)] = k.b(i + 1);
            m[zp][plus(i + 1)] = k.b(i + 1);
        }
    }
    m
}

impl CliquePartition {
    pub fn new(g: &DPGraph, x: usize, clique: Vec<usize>) -> Result<Self, DrgError> {
        let d = g.diameter();
        let n = g.len();
        let k = IntConsts::new(g.params(), g.space.q0)
            .ok_or_else(|| DrgError::Invariant("q^e is not an integer".into()))?;
        let mut clique = clique;
        clique.sort_unstable();
        clique.dedup();
        if !clique.contains(&x) {
            return Err(DrgError::InvalidClique(format!("vertex {x} is not in the clique")));
        }
        if !clique.iter().all(|&u| clique.iter().all(|&v| u == v || g.adjacent(u, v))) {
            return Err(DrgError::InvalidClique("not a clique".into()));
        }
        if (0..n).any(|y| !clique.contains(&y) && clique.iter().all(|&u| g.adjacent(u, y))) {
            return Err(DrgError::InvalidClique("not maximal".into()));
        }
        if clique.len() as i64 != 1 + k.qe {
            return Err(DrgError::InvalidClique(format!("size {} instead of 1 + q^e = {}", clique.len(), 1 + k.qe)));
        }

        let dist_c = multi_source_distances(g, &clique);
        let mut cells = vec![Vec::new(); 2 * d];
        let mut cell_of = vec![0; n];
        for y in 0..n {
            let (i, j) = (dist_c[y] as usize, g.dist(x, y));
            let cell = match j.checked_sub(i) {
                Some(0) if i < d => minus(i),
                Some(1) if i < d => plus(i),
                _ => return Err(DrgError::OutsidePartition(y)),
            };
            cells[cell].push(y);
            cell_of[y] = cell;
        }
        if cells[minus(0)] != [x] {
            return Err(DrgError::Invariant("C_0^- = {x}".into()));
        }

        let mut quotient = vec![vec![0i64; 2 * d]; 2 * d];
        for (ci, cell) in cells.iter().enumerate() {
            for (t, &z) in cell.iter().enumerate() {
                let mut row = vec![0i64; 2 * d];
                for &y in &g.adj[z] {
                    row[cell_of[y as usize]] += 1;
                }
                if t == 0 {
                    quotient[ci] = row;
                } else if row != quotient[ci] {
                    return Err(DrgError::NotEquitable(ci));
                }
            }
        }
        let expected = expected_quotient(&k);
        for r in 0..2 * d {
            for c in 0..2 * d {
                if quotient[r][c] != expected[r][c] {
                    return Err(DrgError::TableMismatch { what: "neighbor counts of the clique partition", row: r, col: c });
                }
            }
        }
        for i in 0..d {
            let (sm, sp) = k.cell_sizes(i);
            for (cell, size) in [(minus(i), sm), (plus(i), sp)] {
                if cells[cell].len() as i64 != size {
                    return Err(DrgError::TableMismatch { what: "cell sizes", row: cell, col: 0 });
                }
            }
        }
        Ok(CliquePartition { x, clique, cells, cell_of, quotient })
    }

    pub fn d(&self) -> usize {
        self.cells.len() / 2
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}
