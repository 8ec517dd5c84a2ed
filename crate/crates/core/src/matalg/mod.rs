//! Finite fields, matrix rings over them and their centralizer subalgebras.
//!
//! Commuting `n`-tuples in `M_m(F_q)` up to simultaneous similarity are the
//! `m`-dimensional modules over `F_q[x_1, ..., x_n]`; their classes form a
//! branching process keyed by centralizer-ring isomorphism type.

mod field;
mod iso;
mod mat;
mod module;
mod subalg;

pub use field::{Fq, MAX_FIELD_ORDER};
pub use iso::{is_ring_isomorphic, ring_iso_key, RingFingerprint, RingKey, RingRegistry, SIZE_LIMIT};
pub use mat::{Mat, MatRing};
pub use module::{module_gf, module_orbit_oracle, module_process, ModuleProcess, Scale, DESK_LIMIT};
pub use subalg::{centralizer_ring, unit_conjugacy_classes, Subalgebra};
