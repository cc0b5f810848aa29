//! Dense determinant by LU factorization with partial pivoting.

/// Determinant of the row-major `n x n` matrix `a`, factorized in place.
pub fn det_in_place(a: &mut [f64], n: usize) -> f64 {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for row in col + 1..n {
            let factor = a[row * n + col] / p;
            if factor == 0.0 {
                continue;
            }
            a[row * n + col] = factor;
            let (upper, lower) = a.split_at_mut(row * n);
            let pivot_row = &upper[col * n + col + 1..col * n + n];
            let target = &mut lower[col + 1..n];
            for (t, &pv) in target.iter_mut().zip(pivot_row) {
                *t -= factor * pv;
            }
        }
    }
    det
}

pub fn det(a: &[f64], n: usize) -> f64 {
    let mut work = a.to_vec();
    det_in_place(&mut work, n)
}
