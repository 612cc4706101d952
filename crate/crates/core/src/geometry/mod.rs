//! Finite classical geometry: formed spaces over `F_q`, their maximal
//! totally isotropic subspaces, and the dual polar graph on them.

mod field;
mod space;

pub use field::{defining_poly, Elt, Fq, MAX_ORDER};
pub use space::{build_space, FormKind, FormedSpace, Rref};

use crate::family::FamilyParams;
use rayon::prelude::*;
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {0} is not supported")]
    FieldTooLarge(u64),
    #[error("defining polynomial for order {0} is reducible")]
    ReducibleDefiningPoly(u64),
    #[error("Hermitian family requires square q (got {0})")]
    HermitianNeedsSquare(u64),
    #[error("form is degenerate")]
    Degenerate,
    #[error("instance too large: {count} vertices exceeds the cap of {cap}")]
    InstanceTooLarge { count: u128, cap: usize },
    #[error("found a totally isotropic subspace of dimension {0}, above the Witt index")]
    WittIndexExceeded(usize),
    #[error("distance {dist} between vertices {x} and {y} disagrees with intersection dimension {meet}")]
    DistanceMismatch { x: usize, y: usize, dist: usize, meet: usize },
    #[error("graph is not connected")]
    Disconnected,
}

/// A maximal totally isotropic subspace, as the reduced echelon form of a basis.
pub type IsoSubspace = Rref;

/// `|X| = prod_{i<D} (q^{i+e} + 1)` for a concrete instance.
pub fn vertex_count_formula(params: FamilyParams, q0: u64) -> Option<u128> {
    let qe = params.q_to_e(q0)?;
    let mut acc: u128 = 1;
    for i in 0..params.d as u32 {
        acc = acc.checked_mul((q0 as u128).checked_pow(i)?.checked_mul(qe)?.checked_add(1)?)?;
    }
    Some(acc)
}

/// Representatives, modulo `s`, of the nonzero singular points of `s^perp / s`,
/// each normalized to have leading coefficient 1.
fn extensions(space: &FormedSpace, s: &Rref) -> Vec<Vec<Elt>> {
    let f = &space.field;
    let n = space.n;
    let constraints: Vec<Vec<Elt>> = s.rows.iter().map(|r| space.perp_functional(r)).collect();
    let perp = if constraints.is_empty() {
        (0..n).map(|i| (0..n).map(|j| (i == j) as Elt).collect()).collect()
    } else {
        Rref::new(f, constraints, n).null_space(f)
    };
    let reduced: Vec<Vec<Elt>> = perp
        .into_iter()
        .map(|mut v| {
            s.reduce(f, &mut v);
            v
        })
        .collect();
    let basis = Rref::new(f, reduced, n).rows;
    let r = basis.len();
    let q = f.order() as usize;
    let mut out = Vec::new();
    // coefficient vectors whose first nonzero entry is 1
    for lead in 0..r {
        let free = r - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut v = basis[lead].clone();
            let mut t = idx;
            for row in &basis[lead + 1..] {
                let c = (t % q) as Elt;
                t /= q;
                if c != 0 {
                    for (x, &b) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(c, b));
                    }
                }
            }
            if space.is_singular_vector(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// All maximal totally isotropic subspaces, sorted lexicographically by their
/// reduced echelon matrices.
pub fn enumerate_maximal_isotropics(space: &FormedSpace, max_vertices: usize) -> Result<Vec<IsoSubspace>, GeometryError> {
    let f = &space.field;
    let n = space.n;
    if let Some(count) = vertex_count_formula(space.params, space.q0) {
        if count > max_vertices as u128 {
            return Err(GeometryError::InstanceTooLarge { count, cap: max_vertices });
        }
    }
    let mut level = vec![Rref::new(f, Vec::new(), n)];
    for k in 0..space.d() {
        let mut next: Vec<Rref> = level
            .par_iter()
            .flat_map_iter(|s| {
                extensions(space, s).into_iter().map(move |v| {
                    let mut rows = s.rows.clone();
                    rows.push(v);
                    Rref::new(f, rows, n)
                })
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if k + 1 == space.d() && next.len() > max_vertices {
            return Err(GeometryError::InstanceTooLarge { count: next.len() as u128, cap: max_vertices });
        }
        level = next;
    }
    if level.par_iter().any(|s| !extensions(space, s).is_empty()) {
        return Err(GeometryError::WittIndexExceeded(space.d() + 1));
    }
    Ok(level)
}

/// The dual polar graph on an enumerated vertex set.
#[derive(Clone, Debug)]
pub struct DPGraph {
    pub space: FormedSpace,
    pub vertices: Vec<IsoSubspace>,
    /// Sorted neighbor lists.
    pub adj: Vec<Vec<u32>>,
    /// Adjacency bitsets.
    pub bits: Vec<Vec<u64>>,
    /// Row-major distance matrix.
    dist: Vec<u8>,
}

impl DPGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn params(&self) -> FamilyParams {
        self.space.params
    }

    pub fn diameter(&self) -> usize {
        self.space.d()
    }

    #[inline]
    pub fn dist(&self, x: usize, y: usize) -> usize {
        self.dist[x * self.len() + y] as usize
    }

    #[inline]
    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.bits[x][y / 64] >> (y % 64) & 1 == 1
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `dim(x ∩ y)` from the rank of the stacked echelon forms.
    pub fn meet_dim(&self, x: usize, y: usize) -> usize {
        let f = &self.space.field;
        2 * self.diameter() - self.vertices[x].union_rank(f, &self.vertices[y])
    }

    /// Index of a subspace in the canonical order.
    pub fn index_of(&self, s: &IsoSubspace) -> Option<usize> {
        self.vertices.binary_search(s).ok()
    }

    /// Vertices containing the subspace spanned by `rows`.
    pub fn containing(&self, rows: &[Vec<Elt>]) -> Vec<usize> {
        let f = &self.space.field;
        let h = Rref::new(f, rows.to_vec(), self.space.n);
        (0..self.len()).filter(|&y| self.vertices[y].union_rank(f, &h) == self.diameter()).collect()
    }

    /// Plain-text edge list with a `# family q D |X|` header.
    pub fn edge_list(&self) -> String {
        let mut s = format!("# {} {} {} {}\n", self.space.params.tag, self.space.q0, self.diameter(), self.len());
        for (x, nb) in self.adj.iter().enumerate() {
            for &y in nb.iter().filter(|&&y| y as usize > x) {
                s.push_str(&format!("{x} {y}\n"));
            }
        }
        s
    }
}

/// Builds the dual polar graph: adjacency from intersection dimensions,
/// distances by breadth-first search, and a full check that
/// `dist(x, y) = D - dim(x ∩ y)`.
pub fn dual_polar_graph(space: FormedSpace, vertices: Vec<IsoSubspace>) -> Result<DPGraph, GeometryError> {
    let nv = vertices.len();
    let d = space.d();
    let f = &space.field;
    let words = nv.div_ceil(64);
    let meet: Vec<Vec<u8>> = (0..nv)
        .into_par_iter()
        .map(|x| (0..nv).map(|y| (2 * d - vertices[x].union_rank(f, &vertices[y])) as u8).collect())
        .collect();
    let adj: Vec<Vec<u32>> =
        meet.iter().map(|row| (0..nv).filter(|&y| row[y] as usize + 1 == d).map(|y| y as u32).collect()).collect();
    let bits: Vec<Vec<u64>> = adj
        .iter()
        .map(|nb| {
            let mut b = vec![0u64; words];
            for &y in nb {
                b[y as usize / 64] |= 1 << (y % 64);
            }
            b
        })
        .collect();
    let rows: Vec<Vec<u8>> = (0..nv).into_par_iter().map(|x| bfs(&adj, x)).collect();
    let mut dist = Vec::with_capacity(nv * nv);
    for (x, row) in rows.iter().enumerate() {
        for (y, &dxy) in row.iter().enumerate() {
            if dxy == u8::MAX {
                return Err(GeometryError::Disconnected);
            }
            let m = meet[x][y] as usize;
            if dxy as usize + m != d {
                return Err(GeometryError::DistanceMismatch { x, y, dist: dxy as usize, meet: m });
            }
        }
        dist.extend_from_slice(row);
    }
    Ok(DPGraph { space, vertices, adj, bits, dist })
}

fn bfs(adj: &[Vec<u32>], src: usize) -> Vec<u8> {
    let mut d = vec![u8::MAX; adj.len()];
    d[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if d[y as usize] == u8::MAX {
                d[y as usize] = d[x] + 1;
                queue.push_back(y as usize);
            }
        }
    }
    d
}

/// Distances from a set of sources.
pub fn multi_source_bfs(adj: &[Vec<u32>], sources: &[usize]) -> Vec<u8> {
    let mut d = vec![u8::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        d[s] = 0;
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if d[y as usize] == u8::MAX {
                d[y as usize] = d[x] + 1;
                queue.push_back(y as usize);
            }
        }
    }
    d
}

/// Enumerates the maximal isotropic subspaces and builds the graph on them.
pub fn build_graph(params: FamilyParams, q0: u64, max_vertices: usize) -> Result<DPGraph, GeometryError> {
    let space = build_space(params, q0)?;
    let vertices = enumerate_maximal_isotropics(&space, max_vertices)?;
    dual_polar_graph(space, vertices)
}
