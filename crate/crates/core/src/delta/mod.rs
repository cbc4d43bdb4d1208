//! Norms given by a pair kernel over a finite metric space: Lipschitz and
//! Hölder norms and their generalizations, on tables of values in a
//! finite-dimensional normed space, with the norm-attainment detectors.

mod attainment;
mod metric;
mod space;
mod spec;
mod table;

pub use attainment::{
    strong_attainment, towards_point_attainment, weak_attainment, weak_towards_point_attainment,
    AttainmentCheck,
};
pub use metric::{metric_closure, FiniteMetricSpace};
pub use space::{delta_norm, DeltaNormValue, DeltaNormedSpace, DeltaSpaceRef, SpaceStatus, AXIOM_SAMPLES};
pub use spec::{
    builtin_kernel, make_holder_spec, make_lip0_spec, DeltaNormSpec, Kernel, KernelInput, Mode,
    ScalarKernelFn, VectorKernelFn, CONSISTENCY_SAMPLES,
};
pub use table::FunctionTable;

/// Ordered pair of point indices.
pub type Pair = (usize, usize);
