//! Displacement sums behind the endpoint strategies.
//!
//! When Bob always shares the right endpoint of Alice's move, Alice's best
//! attempt to hold the play on the left is to share Bob's left endpoint. The
//! left endpoints then advance by `alpha^{k+1} beta^k - alpha^{k+1} beta^{k+1}`
//! per round (initial length 1), which sums to `(1 - beta) alpha / (1 - alpha beta)`.

use crate::rational::Rational;

/// `(1 - beta) alpha / (1 - alpha beta)`.
///
/// Panics if `alpha * beta == 1`.
pub fn displacement_closed_form(alpha: &Rational, beta: &Rational) -> Rational {
    let one = Rational::one();
    (&one - beta) * alpha / (&one - alpha * beta)
}

/// `(alpha - alpha beta) * sum_{k=0}^{K} (alpha beta)^k`, exactly.
pub fn displacement_partial_sum(alpha: &Rational, beta: &Rational, k: usize) -> Rational {
    let ratio = alpha * beta;
    let first = alpha - &ratio;
    let mut term = Rational::one();
    let mut total = Rational::zero();
    for _ in 0..=k {
        total = total + &term;
        term = term * &ratio;
    }
    first * total
}

/// The single term `alpha^{k+1} beta^k - alpha^{k+1} beta^{k+1}`.
pub fn displacement_term(alpha: &Rational, beta: &Rational, k: usize) -> Rational {
    let k = u32::try_from(k).expect("round index fits in u32");
    let a = alpha.pow(k + 1);
    &a * beta.pow(k) - &a * beta.pow(k + 1)
}

/// Smallest `K <= max_k` with `displacement_partial_sum(alpha, beta, K) > threshold`.
pub fn first_exceeding(
    alpha: &Rational,
    beta: &Rational,
    threshold: &Rational,
    max_k: usize,
) -> Option<usize> {
    let ratio = alpha * beta;
    let first = alpha - &ratio;
    let mut term = first;
    let mut total = Rational::zero();
    for k in 0..=max_k {
        total = total + &term;
        if total > *threshold {
            return Some(k);
        }
        term = term * &ratio;
    }
    None
}
