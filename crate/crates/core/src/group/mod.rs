//! The semidirect products `Z_p ⋉ Z_p^(d-1)` and their closed subgroups.

mod semidirect;
mod series;
mod subgroup;

pub use semidirect::{GroupElement, GroupRepr, SemidirectGroup};
pub use series::GammaPReport;
pub use subgroup::{span_elements, SubgroupData};
