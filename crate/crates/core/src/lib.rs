//! Exact-arithmetic engine for the Banach–Mazur, Schmidt and McMullen
//! interval games on the real line.
//!
//! Every quantity is a [`Rational`]; there is no floating point anywhere in
//! the rules, strategies or certificates.

pub mod game;
pub mod interval;
pub mod play;
pub mod rational;
pub mod regime;
pub mod strategy;
pub mod target;
pub mod transcript;
pub mod tree;
pub mod word;

pub use game::{GameError, GameState, GameVariant, LegalRegion, Move, Player, VariantTag, Violation, ViolationCode};
pub use interval::{AnchorSpec, Interval, IntervalError};
pub use play::{adjudicate, play, play_to_state, PlayError};
pub use rational::Rational;
pub use regime::{classify, verify_chain, Regime, RegimeVerdict};
pub use strategy::{Certificate, Strategy, StrategyError, StrategyId};
pub use target::TargetDescriptor;
pub use transcript::{Outcome, Transcript, Verdict};
pub use tree::{build_tree, code_point, verify_tree, Brancher, LevelReport, StrategyTree, TreeError};
pub use word::BinaryWord;
