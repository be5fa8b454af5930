//! Bruhat-Tits tree of PGL2(Q_p): vertices, fixed sets, segment counts, and
//! orbital integrals and constant terms of 1_{Z Gamma0(p^r)}.

mod matrix;
mod orbital;
mod vertex;

pub use matrix::RationalMatrix;
pub use orbital::{
    anchored_fixed_segment_count, constant_term_central, constant_term_central_shell,
    constant_term_central_shell_as_printed, constant_term_diagonal, diagonal_orbital_integral_by_segments,
    fixed_segment_count, fixed_set, fixes_vertex, orbital_integral_gamma0, vol_gamma0, DiagonalConstantTerm,
    COSET_GUARD,
};
pub use vertex::{Segment, TreeContext, TreeVertex};

/// Neighbors of w inside the truncated tree.
pub fn neighbors(w: &TreeVertex, ctx: &TreeContext) -> crate::Result<Vec<TreeVertex>> {
    ctx.neighbors(w)
}

/// d(w, A0) and b_{A0}(w).
pub fn dist_to_standard_apartment(w: &TreeVertex, p: u64) -> (u32, TreeVertex) {
    w.dist_to_standard_apartment(p)
}
