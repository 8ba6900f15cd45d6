//! Play sessions, transcript persistence and the HTTP/CLI surface for the
//! interval games engine.

pub mod api;
pub mod session;
pub mod store;

pub use api::router;
pub use session::{CreateSession, HumanSide, SessionError, SessionManager, SessionView, Status};
pub use store::{FileStore, MemoryStore, StoreError, TranscriptMeta, TranscriptStore};

/// Version stamped on every HTTP response body.
pub const SCHEMA_VERSION: u32 = 1;
