//! Dedekind–MacNeille completions of finite posets and extensions of maps
//! between posets to maps between their completions.

pub mod commands;
pub mod completion;
pub mod dot;
pub mod error;
pub mod extensions;
pub mod instance;
pub mod poset;
pub mod subset;
pub mod verify;

pub use completion::{dedekind_completion, CompletionConfig, CompletionLattice, Cut, Strategy};
pub use error::{Error, Result};
pub use extensions::{CofinalSelector, ExtensionResult, Operator};
pub use instance::{InstanceDocument, RelationKind, Resolved};
pub use poset::{ExtremaPolicy, FinitePoset, PosetMap};
pub use subset::{PosetId, Subset};
