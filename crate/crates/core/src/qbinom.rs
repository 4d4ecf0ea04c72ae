//! q-integers, q-factorials and Gaussian binomials.

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u32, q: u64) -> u64 {
    (0..n).map(|i| q.pow(i)).sum()
}

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over GF(q).
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    // After step i, g = [n-k+i choose i]_q, so every division is exact.
    let q = q as u128;
    let mut g: u128 = 1;
    for i in 1..=k {
        g = g * (q.pow(n - k + i) - 1) / (q.pow(i) - 1);
    }
    g as u64
}

pub fn binom2(i: u32) -> u32 {
    i * i.saturating_sub(1) / 2
}
