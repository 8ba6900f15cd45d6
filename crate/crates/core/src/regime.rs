//! Parameter regimes of Schmidt's game and the exact escape-bound chain.
//!
//! For `0 < alpha, beta < 1` the unit square splits along the curves
//! `beta = 2 - 1/alpha` and `alpha = 2 - 1/beta`. Below the first curve Bob
//! can pin any point; left of the second Alice can pin into any dense set;
//! between them the endpoint strategies separate branches and neither player
//! wins on a Bernstein set.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;
use crate::strategy::escape::displacement_closed_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    BobTrivial,
    AliceTrivial,
    Nondeterminacy,
    OutOfRange,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::BobTrivial => "bob-trivial",
            Regime::AliceTrivial => "alice-trivial",
            Regime::Nondeterminacy => "nondeterminacy",
            Regime::OutOfRange => "out-of-range",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signed distances from the regime boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Margins {
    /// `beta - (2 - 1/alpha)`; nonpositive exactly when Bob can pin.
    pub bob_margin: Rational,
    /// `alpha - (2 - 1/beta)`; nonpositive exactly when Alice can pin.
    pub alice_margin: Rational,
    /// `(1 - beta) alpha / (1 - alpha beta) - (beta - 1/2)`.
    pub escape_margin: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub alpha: Rational,
    pub beta: Rational,
    pub regime: Regime,
    /// Absent when the pair is out of range.
    pub margins: Option<Margins>,
}

/// `2 - 1/x`, the pinning threshold for the opposite player's ratio.
pub fn pin_threshold(x: &Rational) -> Rational {
    Rational::from_integer(2) - x.recip().expect("threshold of a nonzero ratio")
}

pub fn classify(alpha: &Rational, beta: &Rational) -> RegimeVerdict {
    if !alpha.in_open_unit() || !beta.in_open_unit() {
        return RegimeVerdict {
            alpha: alpha.clone(),
            beta: beta.clone(),
            regime: Regime::OutOfRange,
            margins: None,
        };
    }
    let bob_margin = beta - pin_threshold(alpha);
    let alice_margin = alpha - pin_threshold(beta);
    let escape_margin = displacement_closed_form(alpha, beta) - (beta - Rational::half());
    let regime = if !bob_margin.is_positive() {
        Regime::BobTrivial
    } else if !alice_margin.is_positive() {
        Regime::AliceTrivial
    } else {
        Regime::Nondeterminacy
    };
    RegimeVerdict {
        alpha: alpha.clone(),
        beta: beta.clone(),
        regime,
        margins: Some(Margins {
            bob_margin,
            alice_margin,
            escape_margin,
        }),
    }
}

/// True iff `0 < beta < 1/3`, the admissible range for McMullen's game.
pub fn mcmullen_param_ok(beta: &Rational) -> bool {
    beta.is_positive() && *beta < Rational::new(1, 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Lt,
    Gt,
    Eq,
}

impl Relation {
    fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub name: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
    pub holds: bool,
}

impl fmt::Display for ChainStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {} {} {}  [{}]",
            self.name,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            if self.holds { "ok" } else { "FAILED" }
        )
    }
}

/// Every intermediate value of the escape-bound derivation for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub alpha: Rational,
    pub beta: Rational,
    pub alpha_beta: Rational,
    pub two_beta_minus_one: Rational,
    pub one_minus_alpha_beta: Rational,
    pub two_minus_two_beta: Rational,
    pub closed_form: Rational,
    /// `(1 - beta) alpha beta / (2 - 2 beta)`, the middle term as usually printed.
    pub printed_middle: Rational,
    /// `(1 - beta) alpha / (2 - 2 beta)`, the middle term by direct substitution.
    pub direct_middle: Rational,
    pub half_alpha_beta: Rational,
    pub threshold: Rational,
    pub conclusion_margin: Rational,
    pub steps: Vec<ChainStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("({alpha}, {beta}) is in the {regime} regime, not nondeterminacy")]
    NotNondeterminacy {
        alpha: Box<Rational>,
        beta: Box<Rational>,
        regime: Regime,
    },
    #[error("chain step `{step}` failed for ({alpha}, {beta})")]
    StepFailed {
        step: String,
        alpha: Box<Rational>,
        beta: Box<Rational>,
    },
}

/// Evaluates each step of
/// `(1-b) a/(1-ab) > (1-b) ab/(2-2b) = ab/2 > (2-1/b) b/2 = b - 1/2`
/// exactly, along with the directly substituted variant of the middle step.
pub fn verify_chain(alpha: &Rational, beta: &Rational) -> Result<ChainReport, ChainError> {
    let verdict = classify(alpha, beta);
    if verdict.regime != Regime::Nondeterminacy {
        return Err(ChainError::NotNondeterminacy {
            alpha: Box::new(alpha.clone()),
            beta: Box::new(beta.clone()),
            regime: verdict.regime,
        });
    }
    let one = Rational::one();
    let two = Rational::from_integer(2);
    let ab = alpha * beta;
    let two_beta_minus_one = &two * beta - &one;
    let one_minus_ab = &one - &ab;
    let two_minus_two_beta = &two - &two * beta;
    let closed_form = displacement_closed_form(alpha, beta);
    let printed_middle = (&one - beta) * &ab / &two_minus_two_beta;
    let direct_middle = (&one - beta) * alpha / &two_minus_two_beta;
    let half_ab = &ab / &two;
    let half_alpha = alpha / &two;
    let scaled_bound = pin_threshold(beta) * beta / &two;
    let threshold = beta - Rational::half();
    let conclusion_margin = &closed_form - &threshold;

    let mut steps = Vec::new();
    let mut step = |name: &str, lhs: &Rational, relation: Relation, rhs: &Rational| {
        steps.push(ChainStep {
            name: name.to_string(),
            lhs: lhs.clone(),
            relation,
            rhs: rhs.clone(),
            holds: relation.holds(lhs, rhs),
        });
    };
    step("ab > 2b - 1", &ab, Relation::Gt, &two_beta_minus_one);
    step("1 - ab < 2 - 2b", &one_minus_ab, Relation::Lt, &two_minus_two_beta);
    step(
        "1/(1 - ab) > 1/(2 - 2b)",
        &one_minus_ab.recip().expect("ab < 1"),
        Relation::Gt,
        &two_minus_two_beta.recip().expect("b < 1"),
    );
    step("closed > printed middle", &closed_form, Relation::Gt, &printed_middle);
    step("printed middle = ab/2", &printed_middle, Relation::Eq, &half_ab);
    step("closed > direct middle", &closed_form, Relation::Gt, &direct_middle);
    step("direct middle = a/2", &direct_middle, Relation::Eq, &half_alpha);
    step("a/2 > ab/2", &half_alpha, Relation::Gt, &half_ab);
    step("closed > ab/2", &closed_form, Relation::Gt, &half_ab);
    step("ab/2 > (2 - 1/b) b/2", &half_ab, Relation::Gt, &scaled_bound);
    step("(2 - 1/b) b/2 = b - 1/2", &scaled_bound, Relation::Eq, &threshold);
    step("ab/2 > b - 1/2", &half_ab, Relation::Gt, &threshold);
    step("closed > b - 1/2", &closed_form, Relation::Gt, &threshold);

    if let Some(bad) = steps.iter().find(|s| !s.holds) {
        return Err(ChainError::StepFailed {
            step: bad.name.clone(),
            alpha: Box::new(alpha.clone()),
            beta: Box::new(beta.clone()),
        });
    }
    Ok(ChainReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        alpha_beta: ab,
        two_beta_minus_one,
        one_minus_alpha_beta: one_minus_ab,
        two_minus_two_beta,
        closed_form,
        printed_middle,
        direct_middle,
        half_alpha_beta: half_ab,
        threshold,
        conclusion_margin,
        steps,
    })
}

/// Points on the two regime boundary curves, for plotting.
///
/// Returns `(alpha, beta, curve)` rows where `curve` is `"bob"` for
/// `beta = 2 - 1/alpha` and `"alice"` for `alpha = 2 - 1/beta`; the free
/// coordinate runs over `1/2 + k/(2n)` for `k = 1..n-1`.
pub fn boundary_curves(samples: u32) -> Vec<(Rational, Rational, &'static str)> {
    let n = i64::from(samples.max(2));
    let mut rows = Vec::new();
    for k in 1..n {
        let x = Rational::half() + Rational::new(k, 2 * n);
        let y = pin_threshold(&x);
        rows.push((x.clone(), y.clone(), "bob"));
        rows.push((y, x, "alice"));
    }
    rows
}

pub const TABLE_HEADER: &str = "alpha,beta,regime,bob_margin,alice_margin,escape_margin";

/// One CSV row of the regime table; margins are empty when out of range.
pub fn table_row(v: &RegimeVerdict) -> String {
    match &v.margins {
        Some(m) => format!(
            "{},{},{},{},{},{}",
            v.alpha, v.beta, v.regime, m.bob_margin, m.alice_margin, m.escape_margin
        ),
        None => format!("{},{},{},,,", v.alpha, v.beta, v.regime),
    }
}
