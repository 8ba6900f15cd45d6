//! Closed intervals with rational endpoints.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval endpoints out of order: {lo} > {hi}")]
    Inverted { lo: Box<Rational>, hi: Box<Rational> },
    #[error("requested length {len} must satisfy 0 < len <= {host_len}")]
    BadLength { len: Box<Rational>, host_len: Box<Rational> },
    #[error("placement infeasible: {0}")]
    PlacementInfeasible(String),
    #[error("{inner} is not contained in {outer}")]
    NotContained { outer: Box<Interval>, inner: Box<Interval> },
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
///
/// Degenerate intervals (`lo == hi`) exist only as brackets; the game engine
/// rejects them as moves.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    lo: Rational,
    hi: Rational,
}

impl TryFrom<RawInterval> for Interval {
    type Error = IntervalError;
    fn try_from(raw: RawInterval) -> Result<Self, Self::Error> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl From<Interval> for RawInterval {
    fn from(i: Interval) -> Self {
        RawInterval { lo: i.lo, hi: i.hi }
    }
}

/// Where a subinterval sits inside its host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnchorSpec {
    LeftAligned,
    RightAligned,
    CenteredAt(Rational),
    /// Distance of the subinterval's left endpoint from the host's left endpoint.
    Offset(Rational),
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Inverted {
                lo: Box::new(lo),
                hi: Box::new(hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// Interval of length `len` centered at `center`.
    pub fn centered(center: &Rational, len: &Rational) -> Result<Self, IntervalError> {
        let half = len / Rational::new(2, 1);
        Interval::new(center - &half, center + &half)
    }

    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn center(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::new(2, 1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// Closed containment: shared endpoints are allowed.
    pub fn contains(&self, inner: &Interval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    pub fn contains_point(&self, p: &Rational) -> bool {
        &self.lo <= p && p <= &self.hi
    }

    /// True iff the closed intervals share no point.
    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// True iff every point of `self` is strictly less than `p`.
    pub fn strictly_left_of(&self, p: &Rational) -> bool {
        &self.hi < p
    }

    /// True iff every point of `self` is strictly greater than `p`.
    pub fn strictly_right_of(&self, p: &Rational) -> bool {
        &self.lo > p
    }

    /// Places a subinterval of exactly `len` inside `self`.
    pub fn place_subinterval(
        &self,
        len: &Rational,
        anchor: &AnchorSpec,
    ) -> Result<Interval, IntervalError> {
        let host_len = self.length();
        if !len.is_positive() || *len > host_len {
            return Err(IntervalError::BadLength {
                len: Box::new(len.clone()),
                host_len: Box::new(host_len),
            });
        }
        let placed = match anchor {
            AnchorSpec::LeftAligned => Interval {
                lo: self.lo.clone(),
                hi: &self.lo + len,
            },
            AnchorSpec::RightAligned => Interval {
                lo: &self.hi - len,
                hi: self.hi.clone(),
            },
            AnchorSpec::CenteredAt(p) => {
                let candidate = Interval::centered(p, len)?;
                if !self.contains(&candidate) {
                    return Err(IntervalError::PlacementInfeasible(format!(
                        "{candidate} centered at {p} does not fit in {self}"
                    )));
                }
                candidate
            }
            AnchorSpec::Offset(t) => {
                let slack = &host_len - len;
                if t.is_negative() || *t > slack {
                    return Err(IntervalError::PlacementInfeasible(format!(
                        "offset {t} outside [0, {slack}]"
                    )));
                }
                let lo = &self.lo + t;
                let hi = &lo + len;
                Interval { lo, hi }
            }
        };
        Ok(placed)
    }

    /// Closure of `self \ removed`, as 0, 1 or 2 pieces ordered left to right.
    pub fn gap_components(&self, removed: &Interval) -> Result<Vec<Interval>, IntervalError> {
        if !self.contains(removed) {
            return Err(IntervalError::NotContained {
                outer: Box::new(self.clone()),
                inner: Box::new(removed.clone()),
            });
        }
        let mut out = Vec::with_capacity(2);
        if self.lo < removed.lo {
            out.push(Interval {
                lo: self.lo.clone(),
                hi: removed.lo.clone(),
            });
        }
        if removed.hi < self.hi {
            out.push(Interval {
                lo: removed.hi.clone(),
                hi: self.hi.clone(),
            });
        }
        Ok(out)
    }

    /// Mirror image under `t -> 2c - t`.
    pub fn reflect_about(&self, c: &Rational) -> Interval {
        let two_c = c * Rational::new(2, 1);
        Interval {
            lo: &two_c - &self.hi,
            hi: &two_c - &self.lo,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Convenience constructor for tests and examples; panics on inverted input.
pub fn iv(lo: Rational, hi: Rational) -> Interval {
    Interval::new(lo, hi).expect("inverted interval literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn length_examples() {
        assert_eq!(Interval::unit().length(), q(1, 1));
        assert_eq!(iv(q(1, 3), q(1, 2)).length(), q(1, 6));
        assert_eq!(iv(q(2, 1), q(2, 1)).length(), q(0, 1));
    }

    #[test]
    fn inverted_rejected() {
        assert!(matches!(
            Interval::new(q(1, 1), q(0, 1)),
            Err(IntervalError::Inverted { .. })
        ));
    }

    #[test]
    fn contains_examples() {
        let unit = Interval::unit();
        assert!(unit.contains(&iv(q(1, 4), q(3, 4))));
        assert!(unit.contains(&unit));
        assert!(!unit.contains(&iv(q(1, 2), q(3, 2))));
    }

    #[test]
    fn placement_examples() {
        let unit = Interval::unit();
        assert_eq!(
            unit.place_subinterval(&q(1, 2), &AnchorSpec::RightAligned).unwrap(),
            iv(q(1, 2), q(1, 1))
        );
        assert_eq!(
            unit.place_subinterval(&q(2, 5), &AnchorSpec::CenteredAt(q(1, 2)))
                .unwrap(),
            iv(q(3, 10), q(7, 10))
        );
        assert!(matches!(
            unit.place_subinterval(&q(1, 2), &AnchorSpec::CenteredAt(q(1, 10))),
            Err(IntervalError::PlacementInfeasible(_))
        ));
    }

    #[test]
    fn placement_bad_inputs() {
        let unit = Interval::unit();
        assert!(matches!(
            unit.place_subinterval(&q(0, 1), &AnchorSpec::LeftAligned),
            Err(IntervalError::BadLength { .. })
        ));
        assert!(matches!(
            unit.place_subinterval(&q(3, 2), &AnchorSpec::LeftAligned),
            Err(IntervalError::BadLength { .. })
        ));
        assert!(matches!(
            unit.place_subinterval(&q(1, 2), &AnchorSpec::Offset(q(3, 5))),
            Err(IntervalError::PlacementInfeasible(_))
        ));
        assert!(matches!(
            unit.place_subinterval(&q(1, 2), &AnchorSpec::Offset(q(-1, 5))),
            Err(IntervalError::PlacementInfeasible(_))
        ));
        assert_eq!(
            unit.place_subinterval(&q(1, 2), &AnchorSpec::Offset(q(1, 2)))
                .unwrap(),
            iv(q(1, 2), q(1, 1))
        );
    }

    #[test]
    fn gap_examples() {
        let unit = Interval::unit();
        assert_eq!(
            unit.gap_components(&iv(q(1, 3), q(2, 3))).unwrap(),
            vec![iv(q(0, 1), q(1, 3)), iv(q(2, 3), q(1, 1))]
        );
        assert_eq!(
            unit.gap_components(&iv(q(0, 1), q(1, 3))).unwrap(),
            vec![iv(q(1, 3), q(1, 1))]
        );
        assert!(unit.gap_components(&unit).unwrap().is_empty());
        assert!(matches!(
            unit.gap_components(&iv(q(1, 2), q(3, 2))),
            Err(IntervalError::NotContained { .. })
        ));
    }

    #[test]
    fn disjointness_is_strict() {
        let a = iv(q(0, 1), q(1, 2));
        assert!(!a.is_disjoint(&iv(q(1, 2), q(1, 1))));
        assert!(a.is_disjoint(&iv(q(2, 3), q(1, 1))));
    }

    #[test]
    fn serde_shape() {
        let i = iv(q(-1, 2), q(1, 2));
        let json = serde_json::to_string(&i).unwrap();
        assert_eq!(json, r#"{"lo":"-1/2","hi":"1/2"}"#);
        assert_eq!(serde_json::from_str::<Interval>(&json).unwrap(), i);
        assert!(serde_json::from_str::<Interval>(r#"{"lo":"1","hi":"0"}"#).is_err());
    }
}
