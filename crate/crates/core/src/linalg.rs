//! Dense row-major helpers for the small symmetric systems the GP and the
//! linear model need (n ≲ a few hundred).

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SquareMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Dot product with four independent accumulators.
#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [0.0; 4];
    let chunks = n / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut tail = 0.0;
    for i in 4 * chunks..n {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// In-place lower Cholesky factor of a symmetric matrix (only the lower
/// triangle is read). Returns `false` if a pivot is not strictly positive.
/// The strict upper triangle is zeroed.
pub(crate) fn cholesky_in_place(a: &mut SquareMatrix) -> bool {
    let n = a.n;
    for j in 0..n {
        let row_j = &mut a.data[j * n..(j + 1) * n];
        let d = row_j[j] - dot(&row_j[..j], &row_j[..j]);
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let d = d.sqrt();
        row_j[j] = d;
        row_j[j + 1..].iter_mut().for_each(|v| *v = 0.0);
        for i in j + 1..n {
            let (head, tail) = a.data.split_at_mut(i * n);
            let row_j = &head[j * n..j * n + j];
            let row_i = &mut tail[..n];
            let s = row_i[j] - dot(&row_i[..j], row_j);
            row_i[j] = s / d;
        }
    }
    true
}

/// Solves `L x = b` in place for lower-triangular `L`.
pub(crate) fn solve_lower_in_place(l: &SquareMatrix, b: &mut [f64]) {
    let n = l.n;
    for i in 0..n {
        let row = l.row(i);
        b[i] = (b[i] - dot(&row[..i], &b[..i])) / row[i];
    }
}

/// Solves `Lᵀ x = b` in place for lower-triangular `L`.
pub(crate) fn solve_upper_t_in_place(l: &SquareMatrix, b: &mut [f64]) {
    let n = l.n;
    for i in (0..n).rev() {
        let xi = b[i] / l.get(i, i);
        b[i] = xi;
        let row = l.row(i);
        for (bk, lk) in b[..i].iter_mut().zip(&row[..i]) {
            *bk -= lk * xi;
        }
    }
}

/// `(L Lᵀ)⁻¹ b`.
pub(crate) fn cholesky_solve(l: &SquareMatrix, b: &[f64]) -> Vec<f64> {
    let mut x = b.to_vec();
    solve_lower_in_place(l, &mut x);
    solve_upper_t_in_place(l, &mut x);
    x
}

/// Full inverse `(L Lᵀ)⁻¹` from a lower Cholesky factor.
pub(crate) fn cholesky_inverse(l: &SquareMatrix) -> SquareMatrix {
    let n = l.n;
    // Linv is lower triangular; store its transpose row-wise so the final
    // product reads contiguous memory.
    let mut linv_t = SquareMatrix::zeros(n);
    let mut col = vec![0.0; n];
    for j in 0..n {
        col.iter_mut().for_each(|v| *v = 0.0);
        col[j] = 1.0;
        for i in j..n {
            let row = l.row(i);
            col[i] = (col[i] - dot(&row[j..i], &col[j..i])) / row[i];
        }
        // column j of Linv -> row j of Linvᵀ
        linv_t.data[j * n..(j + 1) * n].copy_from_slice(&col);
    }
    // Kinv[i][k] = sum_m Linv[m][i] Linv[m][k] = sum_m LinvT[i][m] LinvT[k][m]
    let mut inv = SquareMatrix::zeros(n);
    for i in 0..n {
        for k in 0..=i {
            let start = i.max(k);
            let ri = &linv_t.data[i * n + start..(i + 1) * n];
            let rk = &linv_t.data[k * n + start..(k + 1) * n];
            let s = dot(ri, rk);
            inv.set(i, k, s);
            inv.set(k, i, s);
        }
    }
    inv
}
