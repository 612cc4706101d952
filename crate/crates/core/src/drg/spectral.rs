//! The closed-form spectrum checked on a concrete graph, and the exact
//! primitive idempotent `E_1` as a function of distance.

use super::DrgError;
use crate::algebra::Ring;
use crate::geometry::DPGraph;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

/// Exact `E_1` of a distance-regular graph, stored by distance class.
#[derive(Clone, Debug)]
pub struct Spectral {
    theta: Vec<i64>,
    n: usize,
    /// `prod_{j != 1} (theta_1 - theta_j)`.
    den: i128,
    /// `den * (E_1)_{xy}` for `dist(x, y) = i`.
    class: Vec<i128>,
}

/// `(A - t I) v` for a 0/1 adjacency matrix given by neighbor lists.
fn shift_apply(adj: &[Vec<u32>], v: &[i128], t: i64) -> Vec<i128> {
    adj.iter()
        .enumerate()
        .map(|(y, nb)| nb.iter().map(|&z| v[z as usize]).sum::<i128>() - t as i128 * v[y])
        .collect()
}

fn unit(n: usize, x: usize) -> Vec<i128> {
    let mut e = vec![0; n];
    e[x] = 1;
    e
}

impl Spectral {
    /// Verifies `prod_j (A - theta_j I) = 0` column by column, that each
    /// `theta_j` is an eigenvalue, and that `E_1` is constant on distance classes.
    pub fn new(g: &DPGraph, theta: &[i64]) -> Result<Self, DrgError> {
        let n = g.len();
        let d = g.diameter();
        if theta.len() != d + 1 {
            return Err(DrgError::SpectrumMismatch(format!("expected {} eigenvalues", d + 1)));
        }
        for (i, t) in theta.iter().enumerate() {
            if theta[..i].contains(t) {
                return Err(DrgError::SpectrumMismatch("eigenvalues are not distinct".into()));
            }
        }
        let den: i128 = (0..=d).filter(|&j| j != 1).map(|j| (theta[1] - theta[j]) as i128).product();
        let column = |x: usize| -> Result<Vec<i128>, DrgError> {
            let mut v = unit(n, x);
            for (j, &t) in theta.iter().enumerate() {
                if j != 1 {
                    v = shift_apply(&g.adj, &v, t);
                }
            }
            if shift_apply(&g.adj, &v, theta[1]).iter().any(|&z| z != 0) {
                return Err(DrgError::SpectrumMismatch(format!(
                    "product of (A - theta_j) does not vanish on column {x}"
                )));
            }
            Ok(v)
        };
        let first = column(0)?;
        let mut class = vec![None; d + 1];
        for (y, &val) in first.iter().enumerate() {
            class[g.dist(0, y)].get_or_insert(val);
        }
        let class: Vec<i128> = class.into_iter().map(|c| c.expect("every distance occurs")).collect();
        (0..n).into_par_iter().try_for_each(|x| {
            let v = column(x)?;
            match (0..n).find(|&y| v[y] != class[g.dist(x, y)]) {
                Some(y) => Err(DrgError::DualEigenvalueInconsistent(g.dist(x, y))),
                None => Ok(()),
            }
        })?;
        for j in 0..=d {
            let mut v = unit(n, 0);
            for (k, &t) in theta.iter().enumerate() {
                if k != j {
                    v = shift_apply(&g.adj, &v, t);
                }
            }
            if v.iter().all(|&z| z == 0) {
                return Err(DrgError::SpectrumMismatch(format!("theta_{j} = {} is not an eigenvalue", theta[j])));
            }
        }
        let s = Spectral { theta: theta.to_vec(), n, den, class };
        let tr = s.trace_e1();
        if !tr.is_integer() || tr <= BigRational::from_i64(0) {
            return Err(DrgError::SpectrumMismatch(format!("trace of E_1 is {tr}")));
        }
        Ok(s)
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    /// `(E_1)_{xy}` for vertices at distance `i`.
    pub fn e1_at_distance(&self, i: usize) -> BigRational {
        BigRational::new(BigInt::from(self.class[i]), BigInt::from(self.den))
    }

    /// `theta_i^* = |X| (E_1)_{xy}` for `dist(x, y) = i`.
    pub fn theta_s(&self) -> Vec<BigRational> {
        let n = BigRational::from_i64(self.n as i64);
        (0..self.class.len()).map(|i| self.e1_at_distance(i).mul(&n)).collect()
    }

    /// `trace(E_1)`, the multiplicity of `theta_1`.
    pub fn trace_e1(&self) -> BigRational {
        self.e1_at_distance(0).mul(&BigRational::from_i64(self.n as i64))
    }

    /// `|X| (E_1 v)` for an integer vector `v`, given the distances from each support vertex.
    pub fn scaled_e1_apply(&self, g: &DPGraph, v: &[(usize, i64)]) -> Vec<BigRational> {
        let n = BigRational::from_i64(self.n as i64);
        (0..self.n)
            .map(|y| {
                let mut acc = BigRational::from_i64(0);
                for &(z, c) in v {
                    acc = acc.add(&self.e1_at_distance(g.dist(z, y)).mul(&BigRational::from_i64(c)));
                }
                acc.mul(&n)
            })
            .collect()
    }
}
