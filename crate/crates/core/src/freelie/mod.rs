//! Graded free Lie and free associative algebras, truncated at a fixed degree.

mod assoc;
mod config;
mod lie;
mod lyndon;
mod word;

pub use assoc::AssocSeries;
pub use config::{default_names, TruncationConfig};
pub use lie::{bch_xy, LieSeries};
pub use lyndon::{bracket_basis, decompose_lie, lyndon_basis, lyndon_words, standard_expansion, witt_dimension, LyndonWord};
pub use word::Word;
