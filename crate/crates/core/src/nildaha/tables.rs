//! Explicit coefficient tables for the actions of `X`, `X^{-1}`, `A`, `A^*`
//! and `Ã^*` on the cell basis, checked against the products of the generators.

use super::{NilDahaError, NilDahaRep};
use crate::algebra::Field;
use crate::checks::CheckLog;
use crate::drg::{minus, plus};
use crate::family::Consts;
use crate::linalg::Matrix;

/// A basis vector `Ĉ_i^-` or `Ĉ_i^+` addressed by a possibly out-of-range level.
#[derive(Clone, Copy)]
enum Cell {
    Minus(i64),
    Plus(i64),
}

impl Cell {
    fn index(self, d: usize) -> Option<usize> {
        let (j, f): (i64, fn(usize) -> usize) = match self {
            Cell::Minus(j) => (j, minus),
            Cell::Plus(j) => (j, plus),
        };
        (0..d as i64).contains(&j).then(|| f(j as usize))
    }
}

/// Matrix whose column for `Ĉ_j^∓` lists the images given by `minus_img(j)`
/// and `plus_img(j)`; out-of-range terms are dropped.
fn table<F: Field>(
    d: usize,
    minus_img: impl Fn(i64) -> Vec<(Cell, F)>,
    plus_img: impl Fn(i64) -> Vec<(Cell, F)>,
) -> Matrix<F> {
    let mut m = Matrix::zeros(2 * d, 2 * d);
    for j in 0..d {
        for (col, img) in [(minus(j), minus_img(j as i64)), (plus(j), plus_img(j as i64))] {
            for (cell, c) in img {
                if let Some(row) = cell.index(d) {
                    m.set(row, col, c);
                }
            }
        }
    }
    m
}

/// Actions computed from the coefficient tables alone.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedActions<F> {
    pub x: Matrix<F>,
    pub x_inv: Matrix<F>,
    pub a_cal: Matrix<F>,
    pub a_s_cal: Matrix<F>,
    pub a_s_t_cal: Matrix<F>,
}

impl<F: Field> ExpectedActions<F> {
    pub fn new(k: &Consts<F>) -> Self {
        use Cell::{Minus, Plus};
        let d = k.d();
        let dd = d as i64;
        let one = F::one();
        let tau = k.tau.clone();
        let tau_inv = tau.inv().expect("tau != 0");
        let s = tau.mul(&k.qp(dd)).add(&tau_inv);
        let q = |n: i64| k.qp(n);
        let om = |n: i64| one.sub(&q(n));

        let x = table(
            d,
            |i| {
                vec![
                    (Plus(i - 1), s.mul(&q(i - dd).sub(&one))),
                    (Minus(i), s.mul(&q(i - dd))),
                    (Plus(i), tau.mul(&q(dd).sub(&q(i + 1)).add(&one))),
                    (Minus(i + 1), tau.mul(&om(i + 1))),
                ]
            },
            |i| vec![(Plus(i - 1), tau_inv.mul(&om(i - dd))), (Minus(i), tau_inv.mul(&q(i - dd)).neg())],
        );
        let x_inv = table(
            d,
            |i| {
                vec![
                    (Minus(i - 1), tau_inv.mul(&om(i - dd))),
                    (Plus(i - 1), s.mul(&om(i - dd))),
                    (Plus(i), tau.mul(&q(dd).sub(&q(i)).add(&one)).neg()),
                ]
            },
            |i| {
                vec![
                    (Minus(i), tau_inv.mul(&q(i - dd + 1))),
                    (Plus(i), s.mul(&q(i - dd + 1))),
                    (Plus(i + 1), tau.mul(&om(i + 1))),
                ]
            },
        );
        let a_cal = table(
            d,
            |i| {
                vec![
                    (Minus(i - 1), tau_inv.mul(&om(i - dd))),
                    (Minus(i), s.mul(&q(i - dd))),
                    (Plus(i), tau.mul(&q(i)).mul(&om(1))),
                    (Minus(i + 1), tau.mul(&om(i + 1))),
                ]
            },
            |i| {
                vec![
                    (Plus(i - 1), tau_inv.mul(&om(i - dd))),
                    (Minus(i), tau_inv.mul(&q(i - dd)).mul(&k.q.sub(&one))),
                    (Plus(i), s.mul(&q(i - dd + 1))),
                    (Plus(i + 1), tau.mul(&om(i + 1))),
                ]
            },
        );
        let a_s_cal = table(d, |i| vec![(Minus(i), q(-i))], |i| vec![(Plus(i), q(-i - 1))]);
        let a_s_t_cal = table(d, |i| vec![(Minus(i), q(-i))], |i| vec![(Plus(i), q(-i))]);
        ExpectedActions { x, x_inv, a_cal, a_s_cal, a_s_t_cal }
    }
}

fn first_mismatch<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<(usize, usize)> {
    (0..a.cols()).flat_map(|c| (0..a.rows()).map(move |r| (r, c))).find(|&(r, c)| a.get(r, c) != b.get(r, c))
}

/// Compares the generator products with the coefficient tables, column by column.
pub fn verify_x_action<F: Field>(rep: &NilDahaRep<F>, k: &Consts<F>) -> Result<CheckLog, NilDahaError> {
    let exp = ExpectedActions::new(k);
    let mut log = CheckLog::new();
    let pairs: [(&'static str, &Matrix<F>, &Matrix<F>); 5] = [
        ("X", &rep.x, &exp.x),
        ("X^{-1}", &rep.x_inv, &exp.x_inv),
        ("X + X^{-1}", &rep.a_cal, &exp.a_cal),
        ("i q^{-D/2} (T U' + U T')", &rep.a_s_cal, &exp.a_s_cal),
        ("i q^{-D/2} (T U' + q U T')", &rep.a_s_t_cal, &exp.a_s_t_cal),
    ];
    for (what, got, want) in pairs {
        if let Some((row, col)) = first_mismatch(got, want) {
            return Err(NilDahaError::TableMismatch { what, row, col });
        }
        log.record(format!("{what} matches its coefficient table"));
    }
    Ok(log)
}
