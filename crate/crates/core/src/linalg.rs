//! Dense matrices over a prime field `F_p`.

use std::fmt;

use rand::Rng;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}(F_{}){:?}", self.rows, self.cols, self.p, self.to_rows())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from signed entries, reducing mod `p`.
    pub fn from_rows(rows: usize, cols: usize, p: u32, entries: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols, p);
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, p, data: data.into_iter().map(|x| x % p).collect() }
    }

    pub fn random<R: Rng>(rows: usize, cols: usize, p: u32, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.random_range(0..p)).collect();
        Self { rows, cols, p, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// Entries as signed representatives in `(-p/2, p/2]`.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        let half = self.p / 2;
        self.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| if x > half { x as i64 - self.p as i64 } else { x as i64 }).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let mut out = Mat::zeros(self.rows, o.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * o.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch in sum");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| (a + b) % self.p).collect();
        Mat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Mat {
        self.scale(self.p - 1)
    }

    pub fn scale(&self, c: u32) -> Mat {
        let p = self.p as u64;
        let data = self.data.iter().map(|a| ((*a as u64 * c as u64) % p) as u32).collect();
        Mat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut m = Mat::zeros(self.rows, self.cols + o.cols, self.p);
        m.put(0, 0, self);
        m.put(0, self.cols, o);
        m
    }

    /// `[self; o]`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut m = Mat::zeros(self.rows + o.rows, self.cols, self.p);
        m.put(0, 0, self);
        m.put(self.rows, 0, o);
        m
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn put(&mut self, r: usize, c: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j));
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols, self.p);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r + i, c + j));
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Mat {
        self.block(0, j, self.rows, 1)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let x = (m.get(r, j) as u64 * inv % p) as u32;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                let f = m.get(i, c) as u64;
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let x = (m.get(i, j) as u64 + p * p - f * m.get(r, j) as u64) % p;
                    m.set(i, j, x as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self x = 0}` as the columns of the result.
    pub fn nullspace(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.cols, free.len(), self.p);
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, (self.p - r.get(i, f)) % self.p);
            }
        }
        out
    }

    /// Basis of the column space, as columns in RREF of the transpose.
    pub fn column_space(&self) -> Mat {
        let (r, pivots) = self.transpose().rref();
        r.block(0, 0, pivots.len(), self.rows).transpose()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let (r, pivots) = self.hstack(&Mat::identity(n, self.p)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Some `x` with `self x = b`, if one exists.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols, self.p);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    /// Column vector from a flat slice.
    pub fn col_vec(p: u32, xs: &[u32]) -> Mat {
        Mat::from_vec(xs.len(), 1, p, xs.to_vec())
    }
}

/// All subspaces of `F_p^n`, each given by a basis in RREF (rows), ordered by
/// dimension and then by the entries of the basis.
pub fn all_subspaces(n: usize, p: u32) -> Vec<Mat> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free positions: row i, column c > pivots[i], c not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    ((pv[i] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let total = (p as u64).pow(free.len() as u32);
            for code in 0..total {
                let mut m = Mat::zeros(k, n, p);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, 1);
                }
                let mut c = code;
                for &(i, col) in &free {
                    m.set(i, col, (c % p as u64) as u32);
                    c /= p as u64;
                }
                out.push(m);
            }
        }
    }
    out.sort_by(|a, b| a.rows.cmp(&b.rows).then_with(|| a.data.cmp(&b.data)));
    out
}

/// Number of subspaces of `F_p^n`.
pub fn subspace_count(n: usize, p: u32) -> u64 {
    (0..=n).map(|k| gaussian_binomial(n, k, p as u64)).sum()
}

fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `rows x cols` matrices over `F_p`, in lexicographic order of entries.
pub fn all_matrices(rows: usize, cols: usize, p: u32) -> impl Iterator<Item = Mat> {
    let n = rows * cols;
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut data = vec![0; n];
        for x in data.iter_mut().rev() {
            *x = (code % p as u64) as u32;
            code /= p as u64;
        }
        Mat::from_vec(rows, cols, p, data)
    })
}

/// All invertible `n x n` matrices over `F_p`.
pub fn general_linear(n: usize, p: u32) -> Vec<Mat> {
    all_matrices(n, n, p).filter(|m| m.is_invertible()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(7));
        assert!(!is_prime(1) && !is_prime(9));
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Mat::from_rows(2, 3, 3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        // second row is 2 * first mod 3
        assert_eq!(m.rank(), 1);
        let n = m.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(m.mul(&n).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_rows(2, 2, 5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2, 5));
        assert!(Mat::from_rows(2, 2, 3, &[vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Mat::from_rows(2, 2, 3, &[vec![1, 0], vec![0, 0]]);
        assert!(a.solve(&Mat::col_vec(3, &[2, 0])).is_some());
        assert!(a.solve(&Mat::col_vec(3, &[0, 1])).is_none());
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for n in 0..=3 {
            for p in [2, 3] {
                assert_eq!(all_subspaces(n, p).len() as u64, subspace_count(n, p));
            }
        }
        assert_eq!(subspace_count(4, 3), 212);
        assert_eq!(general_linear(2, 3).len(), 48);
    }
}
