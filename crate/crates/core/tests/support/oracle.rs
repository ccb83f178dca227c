//! Independent Grunsky coefficients: a direct expansion of
//! `log((f(z) - f(w)) / (z - w))` as a polynomial in `w` whose
//! coefficients are power series in `z`.

use num_bigint::BigInt;
use num_traits::Zero;
use univalence::rational::BigRational;
use univalence::ratseries::PowerSeries;

/// `c[j][k]` for `j + k <= depth`, straight from the bivariate logarithm.
///
/// `(f(z) - f(w))/(z - w) = sum_n a_n sum_{i+j=n-1} z^i w^j`, so the
/// coefficient of `w^j` is the z-series `P_j(z) = sum_i a_{i+j+1} z^i`.
/// `L = log P` is found from `P dL/dw = dP/dw`:
/// `L_0 = log P_0` and `j P_0 L_j = j P_j - sum_{0<i<j} i L_i P_{j-i}`.
pub fn bivariate_oracle(f: &PowerSeries, depth: usize) -> Vec<Vec<BigRational>> {
    // Entries with i + j > depth never reach c_{j,k} with j + k <= depth,
    // so the z-series are padded with zeros past what f supplies.
    let a = |n: usize| {
        if n <= f.order() {
            f.coeff(n).clone()
        } else {
            BigRational::zero()
        }
    };
    let p: Vec<PowerSeries> = (0..=depth)
        .map(|j| PowerSeries::new((0..=depth).map(|i| a(i + j + 1)).collect()).unwrap())
        .collect();
    let l0 = p[0].log1p_composed().unwrap();
    let inv_p0 = (-&l0).exp().unwrap();
    let mut l: Vec<PowerSeries> = vec![l0];
    for j in 1..=depth {
        let jj = BigRational::from_integer(BigInt::from(j));
        let mut rhs = p[j].clone();
        for i in 1..j {
            let term = l[i]
                .multiply(&p[j - i])
                .scale(&(BigRational::from_integer(BigInt::from(i)) / &jj));
            rhs = &rhs - &term;
        }
        l.push(inv_p0.multiply(&rhs));
    }
    (0..=depth)
        .map(|j| (0..=depth - j).map(|k| -l[k].coeff(j)).collect())
        .collect()
}
