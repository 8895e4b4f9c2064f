//! Integer constellations and the power-scaling laws that size them.

mod irrational;
mod multilayer;
mod scaling;
mod single_layer;
mod table_one;

pub use irrational::{select_irrational, IrrationalSelection};
pub use multilayer::{digits_decode, digits_encode, MultiLayerConstellation};
pub use scaling::{aligned_power, multilayer_amplitude, multilayer_levels, scaling, PowerScaling, LEVEL_TOLERANCE};
pub use single_layer::{build_single_layer, SingleLayerConstellation};
pub use table_one::{dof_rational_formula, select_table_one, TableCase, TableOneSelection};
