//! The small planar nearrings used throughout: the order-9 example on `Z9`,
//! the order-15 example on `Z3 x Z5`, and the planar ring of order 9.

use crate::catalog::group_by_name;
use crate::error::Result;
use crate::ferrero::{construct, FerreroPair, PlanarNearring, RepChoice};
use crate::group::{Automorphism, FiniteGroup};

/// Ferrero nearring on `group` with `Phi` generated by the given automorphisms.
pub fn ferrero_nearring(
    group: FiniteGroup,
    generators: &[Automorphism],
    reps: &[usize],
    zero_reps: &[usize],
) -> Result<PlanarNearring> {
    let pair = FerreroPair::from_generators(group, generators)?;
    construct(&pair, &RepChoice::new(reps.to_vec(), zero_reps.to_vec()))
}

/// `Z9`, `Phi = {1, -1}`, `R = {2, 3, 5, 8}`, `M = {3}`.
pub fn z9_example() -> PlanarNearring {
    let g = group_by_name("C9").expect("catalog");
    let neg = Automorphism::negation(&g);
    ferrero_nearring(g, &[neg], &[2, 3, 5, 8], &[3]).expect("valid example")
}

/// `Z3 x Z5` (index `5x + y`), `Phi = {1, -1}`, `{0} x Z5` zero multipliers
/// and right identities `{1} x Z5`.
pub fn order_fifteen_example() -> PlanarNearring {
    let g = group_by_name("C3xC5").expect("catalog");
    let neg = Automorphism::negation(&g);
    ferrero_nearring(g, &[neg], &[1, 2, 5, 6, 7, 8, 9], &[1, 2]).expect("valid example")
}

/// `F3 x F3` (index `3x + y`) with `(a, b) * (c, d) = (ac, bc)`.
pub fn planar_ring_9() -> PlanarNearring {
    let g = group_by_name("C3xC3").expect("catalog");
    let neg = Automorphism::negation(&g);
    ferrero_nearring(g, &[neg], &[1, 3, 4, 5], &[1]).expect("valid example")
}
