//! Self-adjoint extensions of the critical channels: classification, boundary data and domain membership.

mod boundary;
mod census;
mod decompose;

pub use boundary::{
    boundary_residual, cd_constants, extract_boundary_data, Beta, BoundaryData, ExtensionSpec, AGREEMENT_TOLERANCE,
    DEFAULT_WINDOW, DEGENERATE_TOLERANCE, FIT_NODES, FIT_TOLERANCE,
};
pub use census::{channel_census, deficiency_index, Channel};
pub use decompose::{
    closure_membership, decompose_adjoint, regular_singular_split, singular_coefficient, split_condition_residual,
    AdjointDecomposition, MembershipCertificate, SingularCoefficient, LIMIT_TOLERANCE, MEMBERSHIP_TOLERANCE,
    ROUTE_TOLERANCE,
};
