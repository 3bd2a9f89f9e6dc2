//! Reference implementations used only by tests. They share no code with
//! the library's numeric paths.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use lbe_cipher::GrayImage;

pub fn q(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

pub fn q_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// y-derivative, factored form, exact.
pub fn dy_factored(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    rho: &BigRational,
) -> BigRational {
    x * (rho - z) - y
}

/// y-derivative, expanded form, exact.
pub fn dy_expanded(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    rho: &BigRational,
) -> BigRational {
    x * rho - x * z - y
}

pub type QState = [BigRational; 3];

fn lorenz_exact(s: &QState, sigma: &BigRational, rho: &BigRational, beta: &BigRational) -> QState {
    let [x, y, z] = s;
    [sigma * (y - x), dy_factored(x, y, z, rho), x * y - beta * z]
}

/// One classical RK4 step in exact rational arithmetic.
pub fn rk4_exact(s: &QState, sigma: f64, rho: f64, beta: f64, h: f64) -> QState {
    let (sigma, rho, beta, h) = (q(sigma), q(rho), q(beta), q(h));
    let two = q(2.0);
    let half = &h / &two;
    let add = |a: &QState, f: &BigRational, k: &QState| -> QState {
        [&a[0] + f * &k[0], &a[1] + f * &k[1], &a[2] + f * &k[2]]
    };
    let k1 = lorenz_exact(s, &sigma, &rho, &beta);
    let k2 = lorenz_exact(&add(s, &half, &k1), &sigma, &rho, &beta);
    let k3 = lorenz_exact(&add(s, &half, &k2), &sigma, &rho, &beta);
    let k4 = lorenz_exact(&add(s, &h, &k3), &sigma, &rho, &beta);
    let sixth = &h / q(6.0);
    let mut out = s.clone();
    for i in 0..3 {
        let sum = &k1[i] + &two * &k2[i] + &two * &k3[i] + &k4[i];
        out[i] = &s[i] + &sixth * sum;
    }
    out
}

/// Relative agreement in significant digits between an f64 and an exact value.
pub fn significant_digits(approx: f64, exact: &BigRational) -> f64 {
    let err = (q(approx) - exact).abs();
    if err.is_zero() {
        return f64::INFINITY;
    }
    let rel = (err / exact.abs()).to_f64().unwrap();
    -rel.log10()
}

/// Pearson correlation via E[XY] - E[X]E[Y] over explicitly enumerated
/// neighbour coordinates, accumulated in exact integers.
pub fn brute_correlation(img: &GrayImage, dr: usize, dc: usize) -> Option<f64> {
    let mut n: i128 = 0;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0i128, 0i128, 0i128, 0i128, 0i128);
    for r in 0..img.rows() {
        for c in 0..img.cols() {
            let (r2, c2) = (r + dr, c + dc);
            if r2 >= img.rows() || c2 >= img.cols() {
                continue;
            }
            let x = img.pixels()[r * img.cols() + c] as i128;
            let y = img.pixels()[r2 * img.cols() + c2] as i128;
            n += 1;
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
        }
    }
    // n^2 * var and n^2 * cov, exact
    let vx = n * sxx - sx * sx;
    let vy = n * syy - sy * sy;
    let cv = n * sxy - sx * sy;
    if n == 0 || vx == 0 || vy == 0 {
        return None;
    }
    Some(cv as f64 / ((vx as f64).sqrt() * (vy as f64).sqrt()))
}

/// Entropy as -sum p ln p / ln 2, counting by scanning each level.
pub fn brute_entropy(img: &GrayImage) -> f64 {
    let n = img.pixels().len() as f64;
    let mut h = 0.0;
    for level in 0..=255u8 {
        let count = img.pixels().iter().filter(|&&p| p == level).count();
        if count > 0 {
            let p = count as f64 / n;
            h -= p * p.ln();
        }
    }
    h / std::f64::consts::LN_2
}

/// Agreement to `digits` significant digits (absolute floor for values near zero).
pub fn agree(a: f64, b: f64, digits: i32) -> bool {
    let tol = 10f64.powi(-digits);
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-3)
}

/// Global error of RK4 on x' = -x from x(0)=1 to t=1.
pub fn decay_error(steps: usize) -> f64 {
    use lbe_cipher::{rk4_step_with, LorenzState};
    let h = 1.0 / steps as f64;
    let mut s = LorenzState::new(1.0, 0.0, 0.0);
    for _ in 0..steps {
        s = rk4_step_with(s, h, |s| LorenzState::new(-s.x, 0.0, 0.0));
    }
    (s.x - (-1.0f64).exp()).abs()
}

/// Table 1 rows as published.
pub const TABLE1: [(&str, f64, f64, f64, f64); 4] = [
    ("this work", 0.00045, 0.0015, 0.0040, 7.9973),
    ("Nardo et al.", 0.0028, 0.0059, 0.0031, 7.9969),
    ("Li", 0.00083, 0.00223, 0.00650, 7.9998),
    ("Luo", 0.0016, 0.0025, 0.0003, 7.9826),
];
pub const TABLE1_INDEX: [f64; 4] = [0.7686, 0.3778, 0.5652, 0.7197];

pub fn table1_scores() -> Vec<lbe_cipher::WorkScores> {
    TABLE1
        .iter()
        .map(
            |&(label, corr_h, corr_v, corr_d, entropy)| lbe_cipher::WorkScores {
                label: label.into(),
                corr_h,
                corr_v,
                corr_d,
                entropy,
            },
        )
        .collect()
}
