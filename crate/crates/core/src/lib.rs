pub mod ainfty_framework;
pub mod combinatorics;
pub mod forms;
pub mod interval_morphisms;
pub mod lie_extension;
pub mod scalars_polys;
pub mod syntax;
pub mod verify;
pub mod whitney_structures;
