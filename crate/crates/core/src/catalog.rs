//! Small quivers used throughout the tests and the CLI.

use crate::quiver::Quiver;
use crate::vector::DimVector;

fn build(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    Quiver::new(n, arrows.to_vec()).expect("catalog quivers are acyclic")
}

/// Two vertices, two arrows `1 -> 2`.
pub fn kronecker() -> Quiver {
    generalized_kronecker(2)
}

/// Two vertices, `m` arrows `1 -> 2`.
pub fn generalized_kronecker(m: usize) -> Quiver {
    build(2, &vec![(0, 1); m])
}

/// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`.
pub fn linear_a(n: usize) -> Quiver {
    let arrows: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    build(n, &arrows)
}

/// `D~4` with centre `1` and leaves `2..5`, all arrows pointing at the centre.
pub fn d4_tilde() -> Quiver {
    build(5, &[(1, 0), (2, 0), (3, 0), (4, 0)])
}

/// `A~2` with one source and one sink: `1 -> 2 -> 3` and `1 -> 3`.
pub fn a2_tilde() -> Quiver {
    build(3, &[(0, 1), (1, 2), (0, 2)])
}

/// `A~3` with paths of length 3 and 1 between source and sink: one
/// exceptional tube of rank 3.
pub fn a3_tilde_31() -> Quiver {
    build(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
}

/// Five-vertex chain with double arrows at both ends: `1 => 2 -> 3 -> 4 => 5`.
pub fn kronecker_chain() -> Quiver {
    build(5, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 4), (3, 4)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    A,
    B,
}

/// The five-vertex wild quiver with a triangle and two tails whose
/// component clusters depend on orientation.
///
/// Vertex order: `1` is the top vertex, `2..5` the bottom row from left
/// to right. Orientation A has the arrow `1 -> 4`; orientation B reverses
/// it to `4 -> 1`. Returns the quiver and the fundamental root
/// `(1;1,2,2,1)`.
pub fn orientation_example(orientation: Orientation) -> (Quiver, DimVector) {
    let side = match orientation {
        Orientation::A => (0, 3),
        Orientation::B => (3, 0),
    };
    let q = build(5, &[(0, 2), side, (2, 1), (3, 2), (4, 3)]);
    (q, DimVector::from([1, 1, 2, 2, 1]))
}

/// The second member `(0;0,1,1,1)` of the orientation-A cluster.
pub fn orientation_example_partner() -> DimVector {
    DimVector::from([0, 0, 1, 1, 1])
}
