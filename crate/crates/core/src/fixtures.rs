//! Named example structures.
//!
//! The six-vertex digraph `M` uses the fixed encoding
//!
//! | vertex | a | b | a₀ | b₀ | a₁ | b₁ |
//! |--------|---|---|----|----|----|----|
//! | index  | 0 | 1 | 2  | 3  | 4  | 5  |
//!
//! `a` and `b` are the only looped vertices; `a₀ → b₀ → a₁ → b₁ → a₀` is a
//! directed 4-cycle; `a` points at `a₀, a₁` and `b` at `b₀, b₁`.

use crate::perm::Perm;
use crate::structure::FinStructure;

pub const M_NAMES: [&str; 6] = ["a", "b", "a0", "b0", "a1", "b1"];

pub const M_ARROWS: [(usize, usize); 12] = [
    (0, 0),
    (0, 1),
    (1, 0),
    (1, 1),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 2),
    (0, 2),
    (0, 4),
    (1, 3),
    (1, 5),
];

/// The loop pair `{a, b}`.
pub const M_LOOP_PAIR: [usize; 2] = [0, 1];

/// The 4-cycle `C = {a₀, b₀, a₁, b₁}`.
pub const M_CYCLE: [usize; 4] = [2, 3, 4, 5];

pub fn digraph_m() -> FinStructure {
    FinStructure::digraph(6, &M_ARROWS).expect("fixture is valid")
}

/// The automorphism of `M` with `a₀ ↦ b₀`: `(a b)(a₀ b₀ a₁ b₁)`.
pub fn eta() -> Perm {
    Perm::from_images(vec![1, 0, 3, 4, 5, 2]).expect("fixture is valid")
}

/// `0 → 1 → … → n-1 → 0`.
pub fn directed_cycle(n: usize) -> FinStructure {
    let arrows: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    FinStructure::digraph(n, &arrows).expect("fixture is valid")
}

pub fn is_digraph_m(s: &FinStructure) -> bool {
    *s == digraph_m()
}

/// Renders a vertex list of `M` with its letter names, e.g. `{a, b}`.
pub fn m_vertex_names(vertices: &[usize]) -> String {
    let names: Vec<&str> = vertices
        .iter()
        .map(|&v| M_NAMES.get(v).copied().unwrap_or("?"))
        .collect();
    format!("{{{}}}", names.join(", "))
}
