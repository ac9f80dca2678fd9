//! Exact arithmetic in towers `Q_p ⊂ unramified ⊂ totally ramified`.

mod element;
pub mod fp_poly;
mod residue;
mod splitting;
mod tower;

pub use element::FieldElement;
pub(crate) use element::same_tower;
pub use residue::{ResidueElement, ResidueField};
pub use splitting::{find_nonsplit_prime, splitting_at, SplittingReport};
pub use tower::{make_tower, Embedding, TowerDescriptor};
