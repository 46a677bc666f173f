//! Exact integer linear algebra: ranks, nullspace bases, and a phase-1
//! simplex that returns either a feasible point or a Farkas dual.
//!
//! Everything is generic over [`Exact`] so the same code runs on checked
//! `i128` first and on `BigInt` when that overflows.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Ex<T> = Result<T, Overflow>;

pub(crate) trait Exact: Clone + Ord + core::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn is_zero(&self) -> bool;
    fn signum(&self) -> i32;
    fn add(&self, o: &Self) -> Ex<Self>;
    fn sub(&self, o: &Self) -> Ex<Self>;
    fn mul(&self, o: &Self) -> Ex<Self>;
    /// Exact division; `o` divides `self`.
    fn div(&self, o: &Self) -> Ex<Self>;
    /// Nonnegative gcd.
    fn gcd(&self, o: &Self) -> Self;
    fn to_i64(&self) -> Option<i64>;
    fn is_positive(&self) -> bool {
        self.signum() > 0
    }
    fn is_negative(&self) -> bool {
        self.signum() < 0
    }
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn add(&self, o: &Self) -> Ex<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Ex<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Ex<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn div(&self, o: &Self) -> Ex<Self> {
        self.checked_div(*o).ok_or(Overflow)
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        // |i128::MIN| does not fit; callers treat it as overflow via div
        i128::try_from(a).unwrap_or(1)
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if Signed::is_positive(self) {
            1
        } else if Signed::is_negative(self) {
            -1
        } else {
            0
        }
    }
    fn add(&self, o: &Self) -> Ex<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Ex<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Ex<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Ex<Self> {
        Ok(self / o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

/// Divides a vector by the gcd of its entries.
pub(crate) fn reduce<T: Exact>(v: &mut [T]) -> Ex<()> {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g == T::from_i64(1) {
            return Ok(());
        }
    }
    if g.is_zero() {
        return Ok(());
    }
    for x in v.iter_mut() {
        *x = x.div(&g)?;
    }
    Ok(())
}

pub(crate) fn dot<T: Exact>(a: &[T], b: &[i64]) -> Ex<T> {
    let mut acc = T::zero();
    for (x, &y) in a.iter().zip(b) {
        if y != 0 && !x.is_zero() {
            acc = acc.add(&x.mul(&T::from_i64(y))?)?;
        }
    }
    Ok(acc)
}

/// Integer basis of `{v : row · v = 0 for every row}`, built one row at a
/// time. Also returns the indices of rows that reduced the dimension.
pub(crate) fn nullspace<T: Exact>(rows: &[Vec<i64>], dim: usize) -> Ex<(Vec<Vec<T>>, Vec<usize>)> {
    let mut basis: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            let mut v = vec![T::zero(); dim];
            v[i] = T::from_i64(1);
            v
        })
        .collect();
    let mut pivots = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        let dots: Vec<T> = basis.iter().map(|b| dot(b, row)).collect::<Ex<_>>()?;
        let Some(p) = dots.iter().position(|d| !d.is_zero()) else {
            continue;
        };
        pivots.push(ri);
        let pivot_vec = basis[p].clone();
        let dp = dots[p].clone();
        let mut next = Vec::with_capacity(basis.len() - 1);
        for (k, b) in basis.into_iter().enumerate() {
            if k == p {
                continue;
            }
            if dots[k].is_zero() {
                next.push(b);
                continue;
            }
            // b * dp - pivot * dk has zero dot with the row
            let mut v = Vec::with_capacity(dim);
            for (x, y) in b.iter().zip(&pivot_vec) {
                v.push(x.mul(&dp)?.sub(&y.mul(&dots[k])?)?);
            }
            reduce(&mut v)?;
            next.push(v);
        }
        basis = next;
        if basis.is_empty() {
            break;
        }
    }
    Ok((basis, pivots))
}

/// Rank of an integer matrix.
pub(crate) fn rank<T: Exact>(rows: &[Vec<i64>], dim: usize) -> Ex<usize> {
    let (basis, _) = nullspace::<T>(rows, dim)?;
    Ok(dim - basis.len())
}

/// Result of the phase-1 problem `M λ = b`, `λ >= 0`, with `b >= 0`.
#[derive(Debug)]
pub(crate) enum Phase1<T> {
    /// `λ_j = numerators[j] / denominator`.
    Feasible { numerators: Vec<T>, denominator: T },
    /// `π` with `πᵀM <= 0` and `πᵀb > 0`, scaled by a positive factor.
    Infeasible { dual: Vec<T> },
}

/// Phase-1 simplex with artificial variables, Bland's rule, and integer rows
/// kept as positive multiples of the true rational rows.
pub(crate) fn phase1<T: Exact>(m: &[Vec<T>], b: &[T]) -> Ex<Phase1<T>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    let width = cols + rows + 1;
    let rhs = width - 1;

    let mut tab: Vec<Vec<T>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = Vec::with_capacity(width);
        row.extend(m[i].iter().cloned());
        for k in 0..rows {
            row.push(T::from_i64((k == i) as i64));
        }
        row.push(b[i].clone());
        tab.push(row);
    }
    let mut basic: Vec<usize> = (cols..cols + rows).collect();

    // reduced costs: 0 on λ minus column sums, 1 - 1 = 0 on artificials;
    // the last entry is minus the objective
    let mut obj = vec![T::zero(); width];
    for row in &tab {
        for j in 0..cols {
            obj[j] = obj[j].sub(&row[j])?;
        }
        obj[rhs] = obj[rhs].sub(&row[rhs])?;
    }
    // obj = scale * true reduced costs, scale = num / den
    let mut scale_num = T::from_i64(1);
    let mut scale_den = T::from_i64(1);

    loop {
        let Some(enter) = (0..cols + rows).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..rows {
            if !tab[i][enter].is_positive() {
                continue;
            }
            leave = Some(match leave {
                None => i,
                Some(l) => {
                    // rhs_i / a_i vs rhs_l / a_l
                    let lhs = tab[i][rhs].mul(&tab[l][enter])?;
                    let rhs_v = tab[l][rhs].mul(&tab[i][enter])?;
                    match lhs.cmp(&rhs_v) {
                        Ordering::Less => i,
                        Ordering::Greater => l,
                        Ordering::Equal if basic[i] < basic[l] => i,
                        Ordering::Equal => l,
                    }
                }
            });
        }
        // phase-1 objective is bounded below by 0
        let r = leave.expect("phase-1 objective is bounded");
        let p = tab[r][enter].clone();
        for i in 0..rows {
            if i == r || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter].clone();
            let pivot_row = tab[r].clone();
            eliminate(&mut tab[i], &pivot_row, &p, &f)?;
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            let pivot_row = tab[r].clone();
            let g = eliminate(&mut obj, &pivot_row, &p, &f)?;
            // new scale = scale * p / g
            scale_num = scale_num.mul(&p)?;
            scale_den = scale_den.mul(&g)?;
            let h = scale_num.gcd(&scale_den);
            scale_num = scale_num.div(&h)?;
            scale_den = scale_den.div(&h)?;
        }
        basic[r] = enter;
    }

    if obj[rhs].is_zero() {
        // λ_j = rhs_i / a_ij for basic λ columns
        let mut den = T::from_i64(1);
        for (i, &j) in basic.iter().enumerate() {
            if j < cols && !tab[i][rhs].is_zero() {
                let a = &tab[i][j];
                den = lcm(&den, a)?;
            }
        }
        let mut nums = vec![T::zero(); cols];
        for (i, &j) in basic.iter().enumerate() {
            if j < cols && !tab[i][rhs].is_zero() {
                nums[j] = tab[i][rhs].mul(&den.div(&tab[i][j])?)?;
            }
        }
        Ok(Phase1::Feasible { numerators: nums, denominator: den })
    } else {
        // artificial reduced cost = 1 - π_i, so scale·π_i = scale - obj_i
        let mut dual = Vec::with_capacity(rows);
        for i in 0..rows {
            dual.push(scale_num.sub(&scale_den.mul(&obj[cols + i])?)?);
        }
        Ok(Phase1::Infeasible { dual })
    }
}

/// `row = (row * p - pivot * f) / g`, returning `g` (positive).
fn eliminate<T: Exact>(row: &mut [T], pivot: &[T], p: &T, f: &T) -> Ex<T> {
    for (x, y) in row.iter_mut().zip(pivot) {
        *x = x.mul(p)?.sub(&y.mul(f)?)?;
    }
    let mut g = T::zero();
    for x in row.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Ok(T::from_i64(1));
    }
    for x in row.iter_mut() {
        *x = x.div(&g)?;
    }
    Ok(g)
}

fn lcm<T: Exact>(a: &T, b: &T) -> Ex<T> {
    let g = a.gcd(b);
    let v = a.div(&g)?.mul(b)?;
    Ok(if v.is_negative() { T::zero().sub(&v)? } else { v })
}
