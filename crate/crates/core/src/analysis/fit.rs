/// Least-squares y ≈ a + b·x + c·x².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub r_squared: f64,
}

/// Fits a parabola through at least three points with distinct abscissae.
/// Returns `None` for degenerate inputs.
pub fn quadratic_fit(xs: &[f64], ys: &[f64]) -> Option<QuadraticFit> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return None;
    }
    // Centre and scale x so the normal equations stay well conditioned for
    // speeds in the thousands.
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let scale = xs.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let u: Vec<f64> = xs.iter().map(|x| (x - mean) / scale).collect();

    let mut m = [[0.0; 4]; 3];
    for (&ui, &yi) in u.iter().zip(ys) {
        let basis = [1.0, ui, ui * ui];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] += basis[r] * basis[c];
            }
            m[r][3] += basis[r] * yi;
        }
    }
    let [p0, p1, p2] = solve3(m)?;

    // Back to y = a + b·x + c·x².
    let (s, s2) = (scale, scale * scale);
    let c = p2 / s2;
    let b = p1 / s - 2.0 * p2 * mean / s2;
    let a = p0 - p1 * mean / s + p2 * mean * mean / s2;

    let y_mean = ys.iter().sum::<f64>() / n;
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let ss_res: f64 = u
        .iter()
        .zip(ys)
        .map(|(&ui, &yi)| (yi - (p0 + p1 * ui + p2 * ui * ui)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(QuadraticFit { a, b, c, r_squared })
}

/// Gaussian elimination with partial pivoting on an augmented 3×4 matrix.
fn solve3(mut m: [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        let (top, rest) = m.split_at_mut(col + 1);
        let p = &top[col];
        for r in rest {
            let f = r[col] / p[col];
            for (a, b) in r[col..].iter_mut().zip(&p[col..]) {
                *a -= f * b;
            }
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (m[row][3] - tail) / m[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_parabola() {
        let xs = [0.0, 3000.0, 5000.0, 7000.0, 9000.0, 10000.0, 12000.0, 18000.0];
        let ys: Vec<f64> = xs.iter().map(|x| 12.0 - 0.5 * x + 2e-3 * x * x).collect();
        let fit = quadratic_fit(&xs, &ys).unwrap();
        assert!((fit.c - 2e-3).abs() < 1e-12);
        assert!((fit.b + 0.5).abs() < 1e-8);
        assert!((fit.a - 12.0).abs() < 1e-4);
        assert!(fit.r_squared > 1.0 - 1e-12);
    }

    #[test]
    fn noisy_line_has_lower_r2() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        let ys = [0.0, 5.0, -3.0, 4.0, -2.0, 1.0];
        let fit = quadratic_fit(&xs, &ys).unwrap();
        assert!(fit.r_squared < 0.5);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(quadratic_fit(&[1.0, 2.0], &[1.0, 2.0]).is_none());
        assert!(quadratic_fit(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_none());
        assert!(quadratic_fit(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_none());
    }
}
