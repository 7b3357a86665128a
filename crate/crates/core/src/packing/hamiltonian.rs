use crate::error::{domain, Result};
use crate::trees::LabeledTree;

/// Vertex orders of two edge-disjoint Hamiltonian paths of `K_n`.
///
/// The first is `1, 2, ..., n`. The second runs from 2 to 3 and never joins
/// consecutive integers: it starts as `2, 4, 1, 3` on four vertices and each
/// new vertex `k` is spliced into the first edge whose endpoints are both
/// below `k - 1`.
pub fn hamiltonian_path_orders(n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if n < 4 {
        return domain(format!(
            "two disjoint Hamiltonian paths need n >= 4, got {n}"
        ));
    }
    let mut second = vec![2, 4, 1, 3];
    for k in 5..=n {
        // At least three edges and k - 1 touches at most two of them.
        let pos = second
            .windows(2)
            .position(|w| w[0] < k - 1 && w[1] < k - 1)
            .expect("an edge avoiding k - 1 exists");
        second.insert(pos + 1, k);
    }
    Ok(((1..=n).collect(), second))
}

fn path_tree(order: &[usize]) -> LabeledTree {
    LabeledTree::from_edges_unchecked(
        order.len(),
        order.windows(2).map(|w| (w[0], w[1])).collect(),
    )
}

/// The two paths of [`hamiltonian_path_orders`] as trees. Their end pairs
/// `{1, n}` and `{2, 3}` are disjoint.
pub fn disjoint_hamiltonian_paths(n: usize) -> Result<(LabeledTree, LabeledTree)> {
    let (first, second) = hamiltonian_path_orders(n)?;
    Ok((path_tree(&first), path_tree(&second)))
}
