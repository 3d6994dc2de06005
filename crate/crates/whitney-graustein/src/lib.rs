//! Executable regular-homotopy calculus for closed plane curves.
//!
//! The library computes rotation numbers, lifts zero-area curves to
//! Legendrian curves in the standard contact 3-space, reads rotation numbers
//! off cusp words of front projections, performs Reidemeister-I cusp
//! surgeries, and synthesizes numerically certified regular homotopies
//! between any two curves with equal rotation number — an executable form of
//! the Whitney–Graustein classification.
//!
//! Entry points:
//!
//! * [`PlanarClosedCurve`] — sampled closed curves with periodic cubic spline
//!   evaluation, rotation number, and signed area.
//! * [`legendrian::lift`] / [`LegendrianCurve`] — Legendrian lifts, front and
//!   Lagrangian projections, cusp detection, cusp-count formulas.
//! * [`moves`] — word reduction, cusp pair cancellation/creation, area
//!   normalization, standard models, cusp alignment.
//! * [`homotopy`] — the homotopy data model, the verifier, the planner
//!   [`plan_whitney_graustein`], and Legendrian export.
//! * [`io`] / [`catalog`] / [`render`] — JSON documents, builtin curves, and
//!   SVG/CSV output. The `wg` binary wires these into a command line.
//!
//! The `examples/` directory has one runnable walk-through per capability;
//! start with `cargo run --example rotation_numbers`.

pub mod catalog;
pub mod cli;
pub mod config;
pub mod curve;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod legendrian;
pub mod moves;
pub mod pump;
pub mod render;
pub mod sampling;
pub mod spline;

pub use config::ToleranceConfig;
pub use curve::{CircleDiffeo, PlanarClosedCurve};
pub use error::{Error, Result};
pub use homotopy::{
    concatenate, interpolate_area_projected, lift_homotopy, plan_whitney_graustein, reverse,
    verify, CertificationReport, RegularHomotopy,
};
pub use legendrian::{
    cusp_model_curve, detect_cusps, lift, rot_from_cusps, Cusp, CuspOrientation, CuspWord,
    FrontPolyline, LegendrianCurve, Side,
};
pub use moves::{
    align_cusps, cancel_cusp_pair, create_cusp_pair, normalize_area,
    normalize_word_orientation, reduce_word, standard_curve, ReductionTrace,
};
