use num_rational::BigRational;
use num_traits::Zero;

/// Solves `m x = rhs` for square `m` by Gaussian elimination over Q.
/// Returns `None` when `m` is singular.
pub fn solve(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..n {
                let v = &m[col][j] * &factor;
                m[r][j] -= v;
            }
            let v = &rhs[col] * &factor;
            rhs[r] -= v;
        }
    }
    Some(rhs)
}
