use std::collections::VecDeque;

use super::Scheme;
use crate::error::{Error, Result};

/// All-pairs shortest path lengths by breadth-first search; `None` for
/// unreachable pairs.
pub(crate) fn distance_matrix(adjacency: &[Vec<usize>]) -> Vec<Vec<Option<usize>>> {
    let n = adjacency.len();
    (0..n)
        .map(|s| {
            let mut dist = vec![None; n];
            dist[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let dv = dist[v].unwrap();
                for &w in &adjacency[v] {
                    if dist[w].is_none() {
                        dist[w] = Some(dv + 1);
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect()
}

/// Distance partition of a connected undirected graph given as 0/1 adjacency
/// rows. Succeeds exactly when the graph is distance-regular.
pub fn scheme_from_distance_regular_graph(adjacency: &[Vec<bool>]) -> Result<Scheme> {
    let n = adjacency.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    for (x, row) in adjacency.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInput("adjacency matrix is not square".into()));
        }
        if row[x] {
            return Err(Error::InvalidInput(format!("loop at vertex {x}")));
        }
        if (0..n).any(|y| row[y] != adjacency[y][x]) {
            return Err(Error::InvalidInput("adjacency matrix is not symmetric".into()));
        }
    }
    let lists: Vec<Vec<usize>> = adjacency
        .iter()
        .map(|row| (0..n).filter(|&y| row[y]).collect())
        .collect();
    let dist = distance_matrix(&lists);
    let mut flat = Vec::with_capacity(n * n);
    for row in &dist {
        for d in row {
            flat.push(d.ok_or_else(|| Error::InvalidInput("graph is not connected".into()))?);
        }
    }
    let diameter = flat.iter().copied().max().unwrap_or(0);
    let points = (0..n).map(|i| i.to_string()).collect();
    let classes = (0..=diameter).map(|i| i.to_string()).collect();
    Scheme::build(points, classes, flat).map_err(|e| match e {
        Error::InconsistentIntersection(m) => Error::NotDistanceRegular(format!(
            "p[{}][{}][{}] is {} at ({},{}) but {} at ({},{})",
            m.i, m.j, m.k, m.first, m.x1, m.y1, m.second, m.x2, m.y2
        )),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut a = vec![vec![false; n]; n];
        for &(x, y) in edges {
            a[x][y] = true;
            a[y][x] = true;
        }
        a
    }

    #[test]
    fn pentagon_from_graph() {
        let a = from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let s = scheme_from_distance_regular_graph(&a).unwrap();
        assert_eq!(s.numbers(), fixtures::pentagon().numbers());
    }

    /// Two adjacent vertices of K4 share the other two as common neighbors.
    #[test]
    fn complete_graph_k4() {
        let edges: Vec<_> = (0..4).flat_map(|x| (x + 1..4).map(move |y| (x, y))).collect();
        let s = scheme_from_distance_regular_graph(&from_edges(4, &edges)).unwrap();
        assert_eq!(s.num_classes(), 2);
        assert_eq!(s.intersection(1, 1, 1), 2);
        assert_eq!(s.valencies(), &[1, 3]);
    }

    #[test]
    fn path_is_not_distance_regular() {
        let a = from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let err = scheme_from_distance_regular_graph(&a).unwrap_err();
        assert!(matches!(err, Error::NotDistanceRegular(_)), "{err:?}");
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let a = from_edges(4, &[(0, 1), (2, 3)]);
        assert!(matches!(
            scheme_from_distance_regular_graph(&a),
            Err(Error::InvalidInput(_))
        ));
    }
}
