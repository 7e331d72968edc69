//! Cross-checks between independent computations of the same invariants.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::AlgebraRef;
use crate::bar::hochschild_direct;
use crate::error::Result;
use crate::graded::betti_numbers;
use crate::module::{underlying_complex, LeftRegular, Module};
use crate::morita::ext_dims;

/// Betti numbers of an algebra with `d² = 0`, in degrees `lo..=hi`.
pub fn algebra_cohomology(a: AlgebraRef, lo: i32, hi: i32) -> Result<BTreeMap<i32, usize>> {
    let c = underlying_complex(&LeftRegular { algebra: a })?;
    Ok(betti_numbers(&c, lo, hi))
}

/// `dim H^n(E)` against `dim Ext^n_A(M, M)` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRow {
    pub degree: usize,
    pub hochschild: usize,
    pub ext: usize,
}

/// `H^n(Hochb(A, End M)_{≤W})` and `Ext^n_A(M, M)` for `0 ≤ n ≤ n_max`, for
/// an ordinary algebra `A` and a module `M` in degree 0.
pub fn koszul_ext_table(m: &dyn Module, max_len: usize, n_max: usize) -> Result<Vec<ExtRow>> {
    let e: AlgebraRef = Arc::new(hochschild_direct(m, max_len)?);
    let h = algebra_cohomology(e, 0, n_max as i32)?;
    let a = m.algebra();
    let ext = ext_dims(a.as_ref(), m, m, n_max)?;
    Ok((0..=n_max)
        .map(|n| ExtRow {
            degree: n,
            hochschild: h[&(n as i32)],
            ext: ext[n],
        })
        .collect())
}
