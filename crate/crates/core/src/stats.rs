//! Small least-squares helper shared by the decay fit and the regression
//! diagnostics.

pub(crate) struct LeastSquares {
    pub slope: f64,
    pub r_squared: f64,
}

/// Ordinary least squares of y on x over the given points.
///
/// Returns `None` when fewer than two points are given or all x coincide.
/// `r_squared` is the squared sample correlation, which for simple
/// regression with intercept equals 1 - SS_res/SS_tot; it is defined as 0
/// when y has zero variance.
pub(crate) fn least_squares(points: &[(f64, f64)]) -> Option<LeastSquares> {
    let n = points.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;

    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        0.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    Some(LeastSquares { slope, r_squared })
}
