//! State classification for finite Markov chains.

use num_traits::{One, Zero};

use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `P(x, x) = 1`.
    pub absorbing: Vec<bool>,
    /// Member of a minimal class of the reachability preorder, i.e. a closed
    /// communicating class.
    pub ergodic: Vec<bool>,
    /// Communicating classes, each sorted, ordered by smallest state.
    pub classes: Vec<Vec<usize>>,
}

/// `reach[x][y]`: `y` can be reached from `x` in zero or more steps.
pub fn reachability(p: &Matrix) -> Vec<Vec<bool>> {
    let n = p.rows();
    let mut reach: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || !p[(i, j)].is_zero()).collect())
        .collect();
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut().filter(|row| row[k]) {
            for (x, &y) in row.iter_mut().zip(&via) {
                *x |= y;
            }
        }
    }
    reach
}

pub fn classify(p: &Matrix) -> Classification {
    let n = p.rows();
    let reach = reachability(p);
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| reach[i][j] && reach[j][i]).collect();
        for &j in &members {
            class_of[j] = classes.len();
        }
        classes.push(members);
    }
    let closed: Vec<bool> = classes
        .iter()
        .map(|c| (0..n).all(|j| !reach[c[0]][j] || c.binary_search(&j).is_ok()))
        .collect();
    Classification {
        absorbing: (0..n).map(|i| p[(i, i)].is_one()).collect(),
        ergodic: (0..n).map(|i| closed[class_of[i]]).collect(),
        classes,
    }
}
