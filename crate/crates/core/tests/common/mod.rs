//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = a * m[r][k] - b * m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(h^0, h^1)` of `O(k)` on P^1 from the Cech complex of the standard cover,
/// truncated to a window of Laurent exponents wide enough to be exact.
///
/// On `U_0` sections are polynomials in `z`; on `U_1` they are polynomials in `1/z`
/// times `z^k`; the differential is `(f, g) -> f - g` on `U_0 ∩ U_1`.
pub fn cech_cohomology(k: i64) -> (u64, u64) {
    let n = k.abs() + 3;
    let window: Vec<i64> = (-n..=n).collect();
    let c0_left: Vec<i64> = window.iter().copied().filter(|j| *j >= 0).collect();
    let c0_right: Vec<i64> = window.iter().copied().filter(|j| *j <= k).collect();
    let dim_c0 = c0_left.len() + c0_right.len();
    let mut mat = vec![vec![0i128; dim_c0]; window.len()];
    for (col, j) in c0_left.iter().enumerate() {
        mat[(j + n) as usize][col] = 1;
    }
    for (col, j) in c0_right.iter().enumerate() {
        mat[(j + n) as usize][c0_left.len() + col] = -1;
    }
    let r = int_rank(mat);
    ((dim_c0 - r) as u64, (window.len() - r) as u64)
}

/// `dim Hom^n(O_Z(s), O_Z(t))` on the total space of `O(-2)` from the local-to-global
/// page `E_2^{p,q} = H^p(P^1, O(t-s) ⊗ Λ^q N)` with `N = O(-2)`. The page has two
/// rows and two columns, so it degenerates.
pub fn e2_page_hom(s: i64, t: i64) -> [u64; 3] {
    let d = t - s;
    let mut out = [0u64; 3];
    for q in 0..2i64 {
        let (h0, h1) = cech_cohomology(d - 2 * q);
        out[q as usize] += h0;
        out[q as usize + 1] += h1;
    }
    out
}
