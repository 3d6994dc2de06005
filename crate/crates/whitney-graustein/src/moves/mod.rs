//! Word calculus, Reidemeister-I surgeries, area normalization, cusp
//! alignment, and the standard model curves.

mod align;
mod area;
mod standard;
mod surgery;
mod word;

pub use align::align_cusps;
pub use area::normalize_area;
pub use standard::standard_curve;
pub use surgery::{
    cancel_cusp_pair, create_cusp_pair, normalize_word_orientation, SurgeryWindow,
};
pub use word::{reduce_word, ReductionTrace, TraceStep};
