//! Simple placement strategies usable by either player in every variant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{GameState, GameVariant, Player};
use crate::interval::{AnchorSpec, Interval};
use crate::rational::Rational;
use crate::strategy::{ensure_turn, Side, Strategy, StrategyError};

/// Length used when the rules leave it free (Banach–Mazur): a third of the
/// host, capped by the shrink rule for Bob.
fn free_length(state: &GameState, host: &Interval) -> Rational {
    let third = host.length() / Rational::from_integer(3);
    match state.length_cap() {
        Some(cap) => Rational::min_of(third, cap),
        None => third,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placement {
    Edge(Side),
    Center,
}

/// Required-length placement flush left, flush right, or centered.
///
/// In McMullen's game Bob's left (right) variant uses the leftmost (rightmost)
/// gap that fits, and the centered variant uses the widest gap, ties to the left.
#[derive(Debug, Clone)]
pub struct Align {
    owner: Player,
    placement: Placement,
    opening: Interval,
}

impl Align {
    pub fn left(owner: Player) -> Self {
        Align::with(owner, Placement::Edge(Side::Left))
    }

    pub fn right(owner: Player) -> Self {
        Align::with(owner, Placement::Edge(Side::Right))
    }

    pub fn center(owner: Player) -> Self {
        Align::with(owner, Placement::Center)
    }

    fn with(owner: Player, placement: Placement) -> Self {
        Align {
            owner,
            placement,
            opening: Interval::unit(),
        }
    }

    pub fn with_opening(mut self, opening: Interval) -> Self {
        self.opening = opening;
        self
    }
}

fn place(host: &Interval, len: &Rational, placement: Placement) -> Result<Interval, StrategyError> {
    let anchor = match placement {
        Placement::Edge(Side::Left) => AnchorSpec::LeftAligned,
        Placement::Edge(Side::Right) => AnchorSpec::RightAligned,
        Placement::Center => AnchorSpec::CenteredAt(host.center()),
    };
    Ok(host.place_subinterval(len, &anchor)?)
}

impl Strategy for Align {
    fn name(&self) -> String {
        match self.placement {
            Placement::Edge(Side::Left) => "align-left".into(),
            Placement::Edge(Side::Right) => "align-right".into(),
            Placement::Center => "align-center".into(),
        }
    }

    fn owner(&self) -> Player {
        self.owner
    }

    fn check_applicable(&self, _variant: &GameVariant) -> Result<(), StrategyError> {
        Ok(())
    }

    fn next_move(&self, state: &GameState) -> Result<Interval, StrategyError> {
        ensure_turn(self.owner, state)?;
        let Some(host) = state.host() else {
            return Ok(self.opening.clone());
        };
        let Some(len) = state.required_length() else {
            return place(host, &free_length(state, host), self.placement);
        };
        let region = state.legal_region();
        let spots: Vec<&Interval> = region.placements.iter().map(|p| &p.within).collect();
        let chosen = match self.placement {
            Placement::Edge(Side::Left) => spots.first().copied(),
            Placement::Edge(Side::Right) => spots.last().copied(),
            Placement::Center => spots.iter().copied().fold(None, |best: Option<&Interval>, g| {
                match best {
                    Some(b) if b.length() >= g.length() => Some(b),
                    _ => Some(g),
                }
            }),
        };
        let within = chosen.ok_or_else(|| StrategyError::NoMove("no legal placement".into()))?;
        place(within, &len, self.placement)
    }
}

/// The middle third of the host (Banach–Mazur only).
#[derive(Debug, Clone)]
pub struct SplitThirds {
    owner: Player,
    opening: Interval,
}

impl SplitThirds {
    pub fn new(owner: Player) -> Self {
        SplitThirds {
            owner,
            opening: Interval::unit(),
        }
    }
}

impl Strategy for SplitThirds {
    fn name(&self) -> String {
        "split-thirds".into()
    }

    fn owner(&self) -> Player {
        self.owner
    }

    fn check_applicable(&self, variant: &GameVariant) -> Result<(), StrategyError> {
        match variant {
            GameVariant::BanachMazur { .. } => Ok(()),
            other => Err(StrategyError::InapplicableParameters(format!(
                "split-thirds plays free-length moves and needs the Banach-Mazur game, not {}",
                other.tag().as_str()
            ))),
        }
    }

    fn next_move(&self, state: &GameState) -> Result<Interval, StrategyError> {
        ensure_turn(self.owner, state)?;
        self.check_applicable(state.variant())?;
        let Some(host) = state.host() else {
            return Ok(self.opening.clone());
        };
        place(host, &free_length(state, host), Placement::Center)
    }
}

/// Seeded random legal placements on a grid of `1/GRID` steps.
///
/// The move is a pure function of the seed and the position, so replays
/// are reproducible.
#[derive(Debug, Clone)]
pub struct RandomLegal {
    owner: Player,
    seed: u64,
}

impl RandomLegal {
    const GRID: i64 = 1024;

    pub fn new(owner: Player, seed: u64) -> Self {
        RandomLegal { owner, seed }
    }

    fn rng_for(&self, state: &GameState) -> ChaCha8Rng {
        let ply = state.history().len() as u64;
        ChaCha8Rng::seed_from_u64(self.seed ^ ply.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

impl Strategy for RandomLegal {
    fn name(&self) -> String {
        format!("random-legal:{}", self.seed)
    }

    fn owner(&self) -> Player {
        self.owner
    }

    fn check_applicable(&self, _variant: &GameVariant) -> Result<(), StrategyError> {
        Ok(())
    }

    fn next_move(&self, state: &GameState) -> Result<Interval, StrategyError> {
        ensure_turn(self.owner, state)?;
        let mut rng = self.rng_for(state);
        let grid = Rational::from_integer(Self::GRID);
        let frac = |rng: &mut ChaCha8Rng, lo: i64| {
            Rational::from_integer(rng.gen_range(lo..=Self::GRID)) / &grid
        };
        let Some(host) = state.host() else {
            let lo = Rational::new(rng.gen_range(-8..=8), 8);
            let len = Rational::new(rng.gen_range(1..=16), 8);
            return Ok(Interval::new(lo.clone(), lo + len).expect("positive length"));
        };
        match state.required_length() {
            None => {
                let mut len = host.length() * frac(&mut rng, 1);
                if let Some(cap) = state.length_cap() {
                    len = Rational::min_of(len, cap);
                }
                let offset = (host.length() - &len) * frac(&mut rng, 0);
                Ok(host.place_subinterval(&len, &AnchorSpec::Offset(offset))?)
            }
            Some(len) => {
                let region = state.legal_region();
                if region.placements.is_empty() {
                    return Err(StrategyError::NoMove("no legal placement".into()));
                }
                let pick = &region.placements[rng.gen_range(0..region.placements.len())];
                let (lo, hi) = pick
                    .left_endpoint_range
                    .clone()
                    .expect("fixed-length placements carry a range");
                let left = &lo + (hi - &lo) * frac(&mut rng, 0);
                Ok(Interval::new(left.clone(), left + len)?)
            }
        }
    }
}
