pub mod blocks;
pub mod cache;
pub mod chartab;
pub mod checks;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod f2;
pub mod factory;
pub mod fixture;
pub mod gf;
pub mod harness;
pub mod group;
pub mod groupspec;
pub mod indicators;
pub mod iso;
pub mod linalg;
pub mod perm;
pub mod subsections;

pub use chartab::CharacterTable;
pub use cyclotomic::CyclotomicNumber;
pub use error::{Error, Result};
pub use f2::{F2kElement, Mod2Reducer};
pub use group::{ConjClass, Group};
pub use perm::Perm;
