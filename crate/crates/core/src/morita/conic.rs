//! Nilpotent elements of 4-dimensional central simple blocks, found as
//! isotropic vectors of the norm form on trace-zero elements.

use std::collections::HashMap;

use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};

use crate::algebra::{left_multiplication, Algebra, AlgebraExt};
use crate::error::{Error, Result};
use crate::linalg::{eliminate, Matrix};
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

/// Search limit for the brute-force step of the Legendre solver.
const SEARCH_LIMIT: u128 = 20_000_000;

/// A nonzero nilpotent element of the block spanned by `block` with unit
/// `e`, `None` if the block is a division algebra.
pub(crate) fn nilpotent_in_block(q: &dyn Algebra, block: &[Vec<Scalar>], e: &Vector) -> Result<Option<Vector>> {
    let f = q.field();
    let d = q.dim();
    let elems: Vec<Vector> = block.iter().map(|v| Vector::from_dense(v)).collect();
    let trace = |x: &Vector| {
        let m = left_multiplication(q, x);
        (0..d).fold(f.zero(), |acc, i| &acc + m.get(i, i))
    };
    let row = Matrix::from_rows(f, vec![elems.iter().map(trace).collect()], elems.len())?;
    let traceless: Vec<Vector> = eliminate(&row)
        .kernel_basis
        .iter()
        .map(|c| {
            c.iter()
                .zip(&elems)
                .fold(Vector::zero(), |acc, (ci, b)| acc.sum(&b.scaled(ci)))
        })
        .collect();
    if traceless.len() != 3 {
        return Err(Error::NonSplit("block is not 4-dimensional".into()));
    }
    let (pivot, pe) = e.iter().next().map(|(i, c)| (i, c.clone())).expect("unit is nonzero");
    let half = f.ratio(1, 2);
    let form = |x: &Vector, y: &Vector| -> Result<Scalar> {
        let p = q.mul(x, y).sum(&q.mul(y, x)).scaled(&half);
        let c = &p.get(pivot).cloned().unwrap_or_else(|| f.zero()) * &pe.inv().unwrap();
        if p != e.scaled(&c) {
            return Err(Error::NonSplit("block is not central simple of degree 2".into()));
        }
        Ok(c)
    };
    // orthogonal basis; any isotropic vector met on the way is an answer
    let mut u = traceless;
    let mut diag = Vec::new();
    for i in 0..3 {
        let qi = form(&u[i], &u[i])?;
        if qi.is_zero() {
            return Ok(Some(u[i].clone()));
        }
        for j in i + 1..3 {
            let c = &form(&u[j], &u[i])? * &qi.inv().unwrap();
            u[j] = u[j].diff(&u[i].scaled(&c));
        }
        diag.push(qi);
    }
    let solution = match f {
        Field::Rational => legendre(&diag)?,
        Field::Prime(_) => isotropic_mod_p(f, &diag)?,
    };
    Ok(solution.map(|y| {
        y.iter()
            .zip(&u)
            .fold(Vector::zero(), |acc, (yi, ui)| acc.sum(&ui.scaled(yi)))
    }))
}

fn squarefree_part(n: i128) -> (i128, i128) {
    let mut rest = n.abs();
    let mut square = 1i128;
    let mut free = 1i128;
    let mut p = 2i128;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            square *= p;
        }
        if rest % p == 0 {
            rest /= p;
            free *= p;
        }
        p += 1;
    }
    (square, free * rest * n.signum())
}

fn big_to_i128(x: &num_bigint::BigInt) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.abs() < 1_000_000_000_000)
        .ok_or_else(|| Error::Unsupported("coefficients too large for the conic solver".into()))
}

/// Nontrivial rational solution of `a₁y₁² + a₂y₂² + a₃y₃² = 0`, or `None`.
fn legendre(a: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let f = Field::Rational;
    // integer coefficients: y_i = den_i * z_i gives (num_i * den_i) z_i²
    let mut t = [0i128; 3];
    let mut scale: Vec<Scalar> = Vec::new();
    for (i, ai) in a.iter().enumerate() {
        let r = ai.to_big_rational().expect("rational scalar");
        let num = big_to_i128(r.numer())?;
        let den = big_to_i128(r.denom())?;
        let (s, free) = squarefree_part(num * den);
        t[i] = free;
        // z_i = w_i / s
        scale.push(&f.from_i64(den as i64) * &f.from_i64(s as i64).inv().unwrap());
    }
    if t.iter().all(|x| x.signum() == t[0].signum()) {
        return Ok(None);
    }
    // make the coefficients pairwise coprime
    loop {
        let g = t[0].gcd(&t[1]).gcd(&t[2]);
        if g > 1 {
            t.iter_mut().for_each(|x| *x /= g);
            continue;
        }
        let mut changed = false;
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let g = t[i].gcd(&t[j]);
            if g > 1 {
                t[i] /= g;
                t[j] /= g;
                t[k] *= g;
                scale[k] = &scale[k] * &f.from_i64(g as i64);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // a solution, if any, has |w_i| ≤ sqrt|t_j t_k|; search with the smallest coefficient last
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&i| std::cmp::Reverse(t[i].abs()));
    let [i1, i2, i3] = order;
    let b1 = (t[i2] * t[i3]).unsigned_abs().sqrt();
    let b2 = (t[i1] * t[i3]).unsigned_abs().sqrt();
    if (b1 + 1) * (b2 + 1) > SEARCH_LIMIT {
        return Err(Error::Unsupported("conic too large for the brute-force search".into()));
    }
    for w1 in 0..=b1 as i128 {
        for w2 in 0..=b2 as i128 {
            if w1 == 0 && w2 == 0 {
                continue;
            }
            let n = -(t[i1] * w1 * w1 + t[i2] * w2 * w2);
            if n % t[i3] != 0 {
                continue;
            }
            let m = n / t[i3];
            if m < 0 {
                continue;
            }
            let w3 = m.sqrt();
            if w3 * w3 == m {
                let mut y = vec![f.zero(); 3];
                y[i1] = &scale[i1] * &f.from_i64(w1 as i64);
                y[i2] = &scale[i2] * &f.from_i64(w2 as i64);
                y[i3] = &scale[i3] * &f.from_i64(w3 as i64);
                return Ok(Some(y));
            }
        }
    }
    Ok(None)
}

/// Nontrivial solution over `F_p`; one always exists.
fn isotropic_mod_p(f: Field, a: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let p = f.characteristic();
    if p > 1_000_000 {
        return Err(Error::Unsupported("prime too large for the conic search".into()));
    }
    let roots: HashMap<u64, u64> = (0..p).map(|x| (x * x % p, x)).collect();
    let inv2 = a[1].inv().unwrap();
    for w1 in 0..p {
        let x = f.from_i64(w1 as i64);
        // a₁w₁² + a₂w₂² + a₃ = 0
        let rhs = -&(&(&a[0] * &(&x * &x)) + &a[2]);
        let r = &rhs * &inv2;
        if let Some(&w2) = roots.get(&(r.as_i64().unwrap() as u64)) {
            return Ok(Some(vec![x, f.from_i64(w2 as i64), f.one()]));
        }
    }
    Ok(None)
}
