//! Target sets and the dense enumeration used by Alice's pinning strategy.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::interval::Interval;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown target `{0}` (expected co-singleton:<p>, rationals, or undecidable)")]
pub struct ParseTargetError(pub String);

/// A fixed enumeration of a countable dense set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenseEnumeration {
    /// All rationals in breadth-first order of the Stern–Brocot tree extended
    /// to the whole line: `0; -1, 1; -2, -1/2, 1/2, 2; ...`.
    SternBrocot,
}

impl DenseEnumeration {
    /// Every rational is enumerated, so membership is decidable at rationals.
    pub fn contains(&self, _p: &Rational) -> bool {
        match self {
            DenseEnumeration::SternBrocot => true,
        }
    }

    /// The enumeration as an iterator, breadth first.
    pub fn iter(&self) -> SternBrocotIter {
        SternBrocotIter::new()
    }

    /// The first enumerated point inside the closed interval.
    ///
    /// Breadth-first order visits shallower nodes first, and a closed interval
    /// contains exactly one node of minimal depth, so this is a descent of the
    /// tree with runs of same-direction steps taken in one jump.
    pub fn first_in(&self, band: &Interval) -> Rational {
        match self {
            DenseEnumeration::SternBrocot => simplest_in(band.lo(), band.hi()),
        }
    }
}

/// Minimal-depth Stern–Brocot node in `[lo, hi]`.
fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_positive(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let (ln, ld) = (lo.numer().clone(), lo.denom().clone());
    let (hn, hd) = (hi.numer().clone(), hi.denom().clone());
    // left and right bounds as (numerator, denominator); 1/0 is +infinity
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    let (mut c, mut d) = (BigInt::one(), BigInt::zero());
    loop {
        let mn = &a + &c;
        let md = &b + &d;
        if &mn * &ld < &ln * &md {
            // mediant below lo: step right k times
            let gain = &ld * &c - &ln * &d;
            let deficit = &ln * &b - &ld * &a;
            let k = (deficit - BigInt::one()).div_floor(&gain);
            a += &k * &c;
            b += &k * &d;
        } else if &mn * &hd > &hn * &md {
            // mediant above hi: step left k times
            let gain = &hn * &b - &hd * &a;
            let excess = &hd * &c - &hn * &d;
            let k = (excess - BigInt::one()).div_floor(&gain);
            c += &k * &a;
            d += &k * &b;
        } else {
            return Rational::from_bigints(mn, md).expect("positive mediant denominator");
        }
    }
}

/// Subtree bounds as `(numer, denom)` pairs and whether values are negated.
type Frame = ((BigInt, BigInt), (BigInt, BigInt), bool);

/// Breadth-first walk of the extended Stern–Brocot tree.
pub struct SternBrocotIter {
    started: bool,
    queue: VecDeque<Frame>,
}

impl SternBrocotIter {
    fn new() -> Self {
        SternBrocotIter {
            started: false,
            queue: VecDeque::new(),
        }
    }
}

impl Iterator for SternBrocotIter {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        if !self.started {
            self.started = true;
            let zero = (BigInt::zero(), BigInt::one());
            let inf = (BigInt::one(), BigInt::zero());
            self.queue.push_back((zero.clone(), inf.clone(), true));
            self.queue.push_back((zero, inf, false));
            return Some(Rational::zero());
        }
        // each entry is a positive subtree (left, right); the flag says
        // whether it is reported with a negative sign
        let (left, right, negative) = self.queue.pop_front()?;
        let m = (&left.0 + &right.0, &left.1 + &right.1);
        let value = Rational::from_bigints(m.0.clone(), m.1.clone()).expect("nonzero denominator");
        if negative {
            self.queue.push_back((m.clone(), right, true));
            self.queue.push_back((left, m, true));
            Some(-value)
        } else {
            self.queue.push_back((left, m.clone(), false));
            self.queue.push_back((m, right, false));
            Some(value)
        }
    }
}

/// Caller-supplied membership test; `None` means the oracle cannot decide.
pub type PredicateFn = Arc<dyn Fn(&Rational) -> Option<bool> + Send + Sync>;

/// The set Alice wants the final intersection to meet.
#[derive(Clone)]
pub enum TargetDescriptor {
    /// `R \ {x}`.
    CoSingleton(Rational),
    Dense(DenseEnumeration),
    Predicate { name: String, oracle: PredicateFn },
}

impl TargetDescriptor {
    pub fn co_singleton(x: Rational) -> Self {
        TargetDescriptor::CoSingleton(x)
    }

    pub fn rationals() -> Self {
        TargetDescriptor::Dense(DenseEnumeration::SternBrocot)
    }

    /// An oracle that never decides membership.
    pub fn undecidable() -> Self {
        TargetDescriptor::Predicate {
            name: "undecidable".into(),
            oracle: Arc::new(|_| None),
        }
    }

    pub fn predicate(
        name: impl Into<String>,
        oracle: impl Fn(&Rational) -> Option<bool> + Send + Sync + 'static,
    ) -> Self {
        TargetDescriptor::Predicate {
            name: name.into(),
            oracle: Arc::new(oracle),
        }
    }

    /// Membership of `p`, when decidable.
    pub fn decide(&self, p: &Rational) -> Option<bool> {
        match self {
            TargetDescriptor::CoSingleton(x) => Some(p != x),
            TargetDescriptor::Dense(e) => Some(e.contains(p)),
            TargetDescriptor::Predicate { oracle, .. } => oracle(p),
        }
    }

    pub fn enumeration(&self) -> Option<DenseEnumeration> {
        match self {
            TargetDescriptor::Dense(e) => Some(*e),
            _ => None,
        }
    }
}

impl fmt::Display for TargetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetDescriptor::CoSingleton(x) => write!(f, "co-singleton:{x}"),
            TargetDescriptor::Dense(DenseEnumeration::SternBrocot) => f.write_str("rationals"),
            TargetDescriptor::Predicate { name, .. } => f.write_str(name),
        }
    }
}

impl fmt::Debug for TargetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetDescriptor({self})")
    }
}

impl FromStr for TargetDescriptor {
    type Err = ParseTargetError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(x) = s.strip_prefix("co-singleton:") {
            return x
                .parse()
                .map(TargetDescriptor::CoSingleton)
                .map_err(|_| ParseTargetError(s.to_string()));
        }
        match s {
            "rationals" | "dense" | "stern-brocot" => Ok(TargetDescriptor::rationals()),
            "undecidable" => Ok(TargetDescriptor::undecidable()),
            _ => Err(ParseTargetError(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::iv;
    use crate::rational::q;

    #[test]
    fn enumeration_prefix() {
        let first: Vec<String> = DenseEnumeration::SternBrocot
            .iter()
            .take(7)
            .map(|r| r.to_string())
            .collect();
        assert_eq!(first, ["0/1", "-1/1", "1/1", "-2/1", "-1/2", "1/2", "2/1"]);
    }

    #[test]
    fn enumeration_has_no_repeats() {
        let mut seen = std::collections::HashSet::new();
        for r in DenseEnumeration::SternBrocot.iter().take(4095) {
            assert!(seen.insert(r));
        }
    }

    #[test]
    fn first_in_matches_brute_force() {
        let e = DenseEnumeration::SternBrocot;
        let bands = [
            iv(q(1, 4), q(3, 4)),
            iv(q(2, 7), q(3, 10)),
            iv(q(-5, 3), q(-3, 2)),
            iv(q(13, 5), q(13, 5)),
            iv(q(-1, 9), q(1, 9)),
            iv(q(7, 2), q(11, 3)),
            iv(q(1, 12), q(1, 11)),
        ];
        for band in bands {
            let brute = e.iter().take(1 << 16).find(|r| band.contains_point(r)).unwrap();
            assert_eq!(e.first_in(&band), brute, "band {band}");
        }
    }

    #[test]
    fn first_in_far_from_origin() {
        let band = iv(q(1_000_000, 1), q(1_000_001, 1));
        assert_eq!(DenseEnumeration::SternBrocot.first_in(&band), q(1_000_000, 1));
        let band = iv(q(1_000_001, 1_000_000), q(1_000_002, 1_000_000));
        let p = DenseEnumeration::SternBrocot.first_in(&band);
        assert!(band.contains_point(&p));
        let band = iv(q(1, 100), q(1, 99));
        assert_eq!(DenseEnumeration::SternBrocot.first_in(&band), q(1, 99));
    }

    #[test]
    fn decide() {
        let t = TargetDescriptor::co_singleton(q(0, 1));
        assert_eq!(t.decide(&q(0, 1)), Some(false));
        assert_eq!(t.decide(&q(1, 3)), Some(true));
        assert_eq!(TargetDescriptor::rationals().decide(&q(5, 7)), Some(true));
        assert_eq!(TargetDescriptor::undecidable().decide(&q(5, 7)), None);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["co-singleton:-1/2", "rationals", "undecidable"] {
            let t: TargetDescriptor = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert!("everything".parse::<TargetDescriptor>().is_err());
    }
}
