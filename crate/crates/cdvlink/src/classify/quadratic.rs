//! Diagonalization of the quadratic part and the splitting reduction.

use crate::jet::reduce::{jacobian_reduce, TransformLog};
use crate::jet::{Jet, Monomial, Rat, Var, WeightVector};
use num_traits::{One, Signed, Zero};

/// Signature and diagonal data of the quadratic part after splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticData {
    /// Count of positive squares.
    pub positive: usize,
    /// Count of negative squares.
    pub negative: usize,
    /// Diagonal coefficients in slot order; zero for corank slots.
    pub diagonal: [Rat; 4],
}

impl QuadraticData {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn corank(&self) -> usize {
        4 - self.rank()
    }
}

/// 4x4 rational matrices as variable images: substituting `m` sends
/// x_i to the linear form with coefficients m[i].
pub type Matrix = [[Rat; 4]; 4];

pub fn identity_matrix() -> Matrix {
    let mut m: Matrix = Default::default();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn matrix_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut r: Matrix = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Rat::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k].clone() * bk[j].clone();
            }
            r[i][j] = acc;
        }
    }
    r
}

/// Gauss-Jordan inverse; None when singular.
pub fn matrix_inverse(m: &Matrix) -> Option<Matrix> {
    let mut a = m.clone();
    let mut inv = identity_matrix();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..4 {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..4 {
                    let d1 = f.clone() * a[col][j].clone();
                    a[r][j] -= d1;
                    let d2 = f.clone() * inv[col][j].clone();
                    inv[r][j] -= d2;
                }
            }
        }
    }
    Some(inv)
}

/// Extract the symmetric coefficient matrix of the degree-2 part.
pub(crate) fn quadric_matrix(f2: &Jet) -> Matrix {
    let mut s: Matrix = Default::default();
    let half = Rat::new(1.into(), 2.into());
    for (m, c) in f2.terms() {
        let vars: Vec<usize> = (0..4).filter(|&i| m.0[i] > 0).collect();
        match vars.len() {
            1 => s[vars[0]][vars[0]] = c.clone(),
            2 => {
                let v = c.clone() * half.clone();
                s[vars[0]][vars[1]] = v.clone();
                s[vars[1]][vars[0]] = v;
            }
            _ => unreachable!("degree-2 monomial in more than two variables"),
        }
    }
    s
}

/// Congruence-diagonalize a symmetric matrix over Q.
///
/// Returns the diagonal entries and the change matrix M with x = M y, so that
/// substituting the images given by M turns the quadric into sum d_i y_i^2.
fn diagonalize(sym: &Matrix) -> ([Rat; 4], Matrix) {
    let mut a = sym.clone();
    let mut m = identity_matrix();
    // Apply y-substitution E on the right: A <- E^T A E, M <- M E, where
    // E[i][j] is the coefficient of new-y_j in old-y_i.
    let apply = |a: &mut Matrix, m: &mut Matrix, e: &Matrix| {
        let et = transpose(e);
        *a = matrix_mul(&et, &matrix_mul(a, e));
        *m = matrix_mul(m, e);
    };
    for k in 0..4 {
        if a[k][k].is_zero() {
            if let Some(l) = (k + 1..4).find(|&l| !a[l][l].is_zero()) {
                let mut e = identity_matrix();
                e.swap(k, l);
                apply(&mut a, &mut m, &e);
            } else if let Some((i, j)) = (k..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // All remaining diagonal entries vanish: y_j -> y_j + y_i
                // creates 2 a_ij on the diagonal at (i, i).
                let mut e = identity_matrix();
                e[j][i] = Rat::one();
                apply(&mut a, &mut m, &e);
                if i != k {
                    let mut p = identity_matrix();
                    p.swap(k, i);
                    apply(&mut a, &mut m, &p);
                }
            } else {
                break;
            }
        }
        let pivot = a[k][k].clone();
        let mut e = identity_matrix();
        let mut any = false;
        for l in k + 1..4 {
            if !a[k][l].is_zero() {
                e[k][l] = -a[k][l].clone() / pivot.clone();
                any = true;
            }
        }
        if any {
            apply(&mut a, &mut m, &e);
        }
    }
    let diag = [
        a[0][0].clone(),
        a[1][1].clone(),
        a[2][2].clone(),
        a[3][3].clone(),
    ];
    (diag, m)
}

/// Congruence-diagonalize only within the masked variables, leaving the
/// others untouched; mixing is confined to the mask, so a grading constant
/// on the mask is respected.
pub(crate) fn diagonalize_masked(sym: &Matrix, mask: [bool; 4]) -> ([Rat; 4], Matrix) {
    let mut a = sym.clone();
    let mut m = identity_matrix();
    let idx: Vec<usize> = (0..4).filter(|&i| mask[i]).collect();
    let apply = |a: &mut Matrix, m: &mut Matrix, e: &Matrix| {
        let et = transpose(e);
        *a = matrix_mul(&et, &matrix_mul(a, e));
        *m = matrix_mul(m, e);
    };
    for (pos, &k) in idx.iter().enumerate() {
        if a[k][k].is_zero() {
            if let Some(&l) = idx[pos + 1..].iter().find(|&&l| !a[l][l].is_zero()) {
                let mut e = identity_matrix();
                e.swap(k, l);
                apply(&mut a, &mut m, &e);
            } else if let Some((i, j)) = idx[pos..]
                .iter()
                .flat_map(|&i| idx[pos..].iter().map(move |&j| (i, j)))
                .filter(|&(i, j)| i < j)
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                let mut e = identity_matrix();
                e[j][i] = Rat::one();
                apply(&mut a, &mut m, &e);
                if i != k {
                    let mut p = identity_matrix();
                    p.swap(k, i);
                    apply(&mut a, &mut m, &p);
                }
            } else {
                break;
            }
        }
        let pivot = a[k][k].clone();
        let mut e = identity_matrix();
        let mut any = false;
        for &l in &idx {
            if l != k && !a[k][l].is_zero() {
                e[k][l] = -a[k][l].clone() / pivot.clone();
                any = true;
            }
        }
        if any {
            apply(&mut a, &mut m, &e);
        }
    }
    let diag = [
        a[0][0].clone(),
        a[1][1].clone(),
        a[2][2].clone(),
        a[3][3].clone(),
    ];
    (diag, m)
}

fn transpose(m: &Matrix) -> Matrix {
    let mut t: Matrix = Default::default();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

/// Outcome of the splitting reduction.
#[derive(Debug, Clone)]
pub struct Split {
    pub quadratic: QuadraticData,
    /// The whole series after reduction: diagonal squares plus a residual of
    /// multiplicity >= 3 in the corank slots.
    pub witness: Jet,
    /// Residual part in the corank variables.
    pub residual: Jet,
    pub log: TransformLog,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("linear part is nonzero: smooth point")]
    SmoothPoint,
}

/// Split off the quadratic part: diagonalize F_2 by a linear change, then
/// kill every higher-order monomial involving a square variable through the
/// Jacobian ideal of the diagonal form. Slots are reordered so positive
/// squares come first, then negative, then corank variables; the series is
/// negated if needed so positive squares are the majority.
pub fn split_quadratic(f: &Jet) -> Result<Split, SplitError> {
    if !f.homogeneous_part(1).is_zero() {
        return Err(SplitError::SmoothPoint);
    }
    let order = f.order();
    let mut log = TransformLog::new();
    let mut current = f.clone();
    let f2 = f.homogeneous_part(2);
    if !f2.is_zero() {
        let (mut diag, m) = diagonalize(&quadric_matrix(&f2));
        if m != identity_matrix() {
            log.push_linear(&m, order);
            current = log.replay(f).expect("linear change preserves the germ");
        }
        // Normalize the sign so positive squares are the majority.
        let positive = diag.iter().filter(|d| d.is_positive()).count();
        let negative = diag.iter().filter(|d| d.is_negative()).count();
        if negative > positive {
            let minus = -Rat::one();
            current = current.scale(&minus);
            log.push_scale(minus);
            for d in diag.iter_mut() {
                *d = -d.clone();
            }
        }
        // Reorder slots: positive squares, then negative, then corank.
        let mut perm: Vec<usize> = Vec::with_capacity(4);
        perm.extend((0..4).filter(|&i| diag[i].is_positive()));
        perm.extend((0..4).filter(|&i| diag[i].is_negative()));
        perm.extend((0..4).filter(|&i| diag[i].is_zero()));
        if perm != [0, 1, 2, 3] {
            // Old slot perm[k] becomes new slot k.
            let mut p: Matrix = Default::default();
            for (new_slot, &old_slot) in perm.iter().enumerate() {
                p[old_slot][new_slot] = Rat::one();
            }
            let mut plog = TransformLog::new();
            plog.push_linear(&p, order);
            current = plog.replay(&current).expect("permutation preserves the germ");
            log.extend(plog);
        }
        // Eliminate higher-order terms in the square variables.
        let red = jacobian_reduce_squares(&current);
        current = red.0;
        log.extend(red.1);
    }
    let diag_now = [
        current.coeff(&Monomial([2, 0, 0, 0])),
        current.coeff(&Monomial([0, 2, 0, 0])),
        current.coeff(&Monomial([0, 0, 2, 0])),
        current.coeff(&Monomial([0, 0, 0, 2])),
    ];
    let positive = diag_now.iter().filter(|d| d.is_positive()).count();
    let negative = diag_now.iter().filter(|d| d.is_negative()).count();
    let quadratic = QuadraticData {
        positive,
        negative,
        diagonal: diag_now,
    };
    let square_part = current.homogeneous_part(2);
    let residual = current.sub(&square_part);
    debug_assert!(residual.multiplicity().is_none_or(|m| m >= 3));
    Ok(Split {
        quadratic,
        witness: current,
        residual,
        log,
    })
}

/// Remove every monomial of degree >= 3 that involves a square variable.
fn jacobian_reduce_squares(f: &Jet) -> (Jet, TransformLog) {
    let red = jacobian_reduce(f, &WeightVector::uniform());
    (red.reduced, red.log)
}

/// Square-slot variables of a split, in slot order.
pub fn square_vars(q: &QuadraticData) -> Vec<Var> {
    (0..q.rank()).map(Var::from_index).collect()
}

/// Corank-slot variables of a split, in slot order.
pub fn corank_vars(q: &QuadraticData) -> Vec<Var> {
    (q.rank()..4).map(Var::from_index).collect()
}
