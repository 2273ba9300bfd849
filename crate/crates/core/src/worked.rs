//! Small instances used as golden vectors by the tests and the CLI.

use crate::chargraph::{FunctionSpec, JointPmf};
use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::rational::{q, Q};

/// `f = (x1 + x2) mod 2` with `X1` uniform on 4 symbols and `X2` uniform on 2.
/// The characteristic graphs are `C4` and `K2`.
pub fn example1() -> (FunctionSpec, JointPmf) {
    (
        FunctionSpec::from_fn(4, 2, |a, b| (a + b) % 2).expect("static table"),
        JointPmf::uniform(4, 2).expect("static pmf"),
    )
}

/// A pair of sources whose characteristic graphs are both `C5`.
///
/// `X2` names an edge `e = {e, e+1}` of the pentagon and `X1` is one of its
/// endpoints, each pair with probability 1/10. The receiver learns which
/// endpoint it was. `X1` is uniform.
pub fn pentagon_function() -> (FunctionSpec, JointPmf) {
    let spec = FunctionSpec::from_fn(5, 5, |x1, e| usize::from(x1 == (e + 1) % 5)).expect("static table");
    let probs = (0..5)
        .map(|x1| {
            (0..5)
                .map(|e| if x1 == e || x1 == (e + 1) % 5 { q(1, 10) } else { q(0, 1) })
                .collect()
        })
        .collect();
    (spec, JointPmf::new(probs).expect("static pmf"))
}

/// The five-vertex graph whose spectrum and Gershgorin intervals are worked by hand.
pub fn example5_graph() -> Graph {
    Graph::from_matrix(&[
        vec![0, 1, 0, 0, 1],
        vec![1, 0, 1, 1, 0],
        vec![0, 1, 0, 1, 0],
        vec![0, 1, 1, 0, 1],
        vec![1, 0, 0, 1, 0],
    ])
    .expect("static matrix")
}

/// An 8-coloring of `C5^2` whose class sizes are 4,4,4,4,4,2,2,1.
/// Vertex `(a, b)` has index `5a + b`.
pub fn example2_coloring() -> Coloring {
    let classes: [&[(usize, usize)]; 8] = [
        &[(0, 0), (0, 2), (2, 0), (2, 2)],
        &[(1, 2), (1, 4), (3, 2), (3, 4)],
        &[(2, 1), (2, 4), (4, 1), (4, 4)],
        &[(0, 1), (0, 3), (3, 1), (3, 3)],
        &[(1, 0), (1, 3), (4, 0), (4, 3)],
        &[(0, 4), (2, 3)],
        &[(1, 1), (3, 0)],
        &[(4, 2)],
    ];
    let mut colors = vec![usize::MAX; 25];
    for (c, class) in classes.iter().enumerate() {
        for &(a, b) in class.iter() {
            colors[5 * a + b] = c;
        }
    }
    Coloring::new(colors).expect("static coloring")
}

/// Class probabilities stated for the 8-coloring of `C5^2`.
pub fn example2_pmf() -> Vec<Q> {
    let mut p = vec![q(4, 25); 5];
    p.extend([q(2, 25), q(2, 25), q(1, 25)]);
    p
}

/// Color distribution of the 20-coloring of `C5^3`: 13 classes of 8/125,
/// 4 of 4/125, 2 of 2/125 and 1 of 1/125.
pub fn example4_pmf() -> Vec<Q> {
    let mut p = vec![q(8, 125); 13];
    p.extend(vec![q(4, 125); 4]);
    p.extend(vec![q(2, 125); 2]);
    p.push(q(1, 125));
    p
}
