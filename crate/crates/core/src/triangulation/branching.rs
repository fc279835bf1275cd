//! Branchings: orientations of the edge classes inducing a total order on
//! the corners of every simplex. Found by exhaustive backtracking; the
//! complexes here have few enough edge classes for that to be instant.

use super::{pair_index, BuildError, Surface2, Triangulation3, TET_PAIRS, TRI_PAIRS};

/// An orientation choice per edge class; true keeps the canonical
/// orientation of the class, false reverses it.
#[derive(Debug, Clone)]
pub struct Branching {
    pub orient: Vec<bool>,
}

/// The per-simplex slot-edge data a branching search needs.
struct EdgeTable {
    /// For each simplex, for each ascending slot pair (u,v): the class and
    /// whether (u -> v) is the reverse of the class's canonical orientation.
    simplices: Vec<Vec<((usize, usize), usize, bool)>>,
    slots: usize,
    n_edges: usize,
    reversible: Vec<bool>,
}

fn table3(t: &Triangulation3) -> EdgeTable {
    EdgeTable {
        simplices: (0..t.tetra_count())
            .map(|i| {
                TET_PAIRS
                    .iter()
                    .map(|&(u, v)| {
                        let (c, f) = t.edge_class[i][pair_index(3, u, v)];
                        ((u, v), c, f)
                    })
                    .collect()
            })
            .collect(),
        slots: 4,
        n_edges: t.n_edges,
        reversible: t.edge_reversible.clone(),
    }
}

fn table2(s: &Surface2) -> EdgeTable {
    EdgeTable {
        simplices: (0..s.triangle_count())
            .map(|i| {
                TRI_PAIRS
                    .iter()
                    .map(|&(u, v)| {
                        let (c, f) = s.edge_class[i][pair_index(2, u, v)];
                        ((u, v), c, f)
                    })
                    .collect()
            })
            .collect(),
        slots: 3,
        n_edges: s.n_edges,
        reversible: s.edge_reversible.clone(),
    }
}

impl EdgeTable {
    /// With the orientations fixed so far (None = undecided), is every
    /// simplex still acyclic on its decided slot relations?
    fn consistent(&self, orient: &[Option<bool>]) -> bool {
        for sx in &self.simplices {
            let mut adj = [[false; 4]; 4];
            for &((u, v), cls, flip) in sx {
                let Some(keep) = orient[cls] else { continue };
                // Oriented u -> v iff the ascending orientation matches
                // the chosen class orientation.
                let forward = keep != flip;
                if forward {
                    adj[u][v] = true;
                } else {
                    adj[v][u] = true;
                }
            }
            // Transitive closure on at most 4 nodes.
            for k in 0..self.slots {
                for i in 0..self.slots {
                    for j in 0..self.slots {
                        if adj[i][k] && adj[k][j] {
                            adj[i][j] = true;
                        }
                    }
                }
            }
            for i in 0..self.slots {
                if adj[i][i] {
                    return false;
                }
            }
        }
        true
    }

    fn search(&self) -> Option<Vec<bool>> {
        if self.reversible.iter().any(|&r| r) {
            // A reversible class admits no orientation at all.
            return None;
        }
        let mut orient: Vec<Option<bool>> = vec![None; self.n_edges];
        self.backtrack(&mut orient, 0)
    }

    fn backtrack(&self, orient: &mut Vec<Option<bool>>, next: usize) -> Option<Vec<bool>> {
        if next == self.n_edges {
            return Some(orient.iter().map(|o| o.unwrap()).collect());
        }
        for choice in [true, false] {
            orient[next] = Some(choice);
            if self.consistent(orient) {
                if let Some(found) = self.backtrack(orient, next + 1) {
                    return Some(found);
                }
            }
        }
        orient[next] = None;
        None
    }
}

pub fn find_branching(tri: &Triangulation3) -> Result<Branching, BuildError> {
    table3(tri)
        .search()
        .map(|orient| Branching { orient })
        .ok_or(BuildError::BranchingNotFound)
}

pub fn find_surface_branching(s: &Surface2) -> Result<Branching, BuildError> {
    table2(s)
        .search()
        .map(|orient| Branching { orient })
        .ok_or(BuildError::BranchingNotFound)
}

impl Branching {
    /// Slots of tetra `t` sorted by the induced corner order
    /// (smallest first).
    pub fn tetra_order(&self, tri: &Triangulation3, t: usize) -> [usize; 4] {
        let mut rank = [0usize; 4];
        for &(u, v) in TET_PAIRS.iter() {
            let (cls, flip) = tri.edge_class[t][pair_index(3, u, v)];
            let forward = self.orient[cls] != flip;
            if forward {
                rank[v] += 1;
            } else {
                rank[u] += 1;
            }
        }
        // An acyclic tournament on 4 corners has in-degrees 0,1,2,3.
        let mut order = [0usize; 4];
        for s in 0..4 {
            order[rank[s]] = s;
        }
        order
    }

    /// Slots of triangle `t` of a surface sorted by the induced order.
    pub fn triangle_order(&self, s: &Surface2, t: usize) -> [usize; 3] {
        let mut rank = [0usize; 3];
        for &(u, v) in TRI_PAIRS.iter() {
            let (cls, flip) = s.edge_class[t][pair_index(2, u, v)];
            let forward = self.orient[cls] != flip;
            if forward {
                rank[v] += 1;
            } else {
                rank[u] += 1;
            }
        }
        let mut order = [0usize; 3];
        for sl in 0..3 {
            order[rank[sl]] = sl;
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::super::{sphere_s3, surface_genus, surface_torus, Triangulation3};
    use super::*;

    #[test]
    fn single_tetra_branching_is_slot_order() {
        let tri = Triangulation3::from_spec(super::super::GluingSpec::new(3, 1)).unwrap();
        let b = find_branching(&tri).unwrap();
        assert_eq!(b.tetra_order(&tri, 0), [0, 1, 2, 3]);
    }

    #[test]
    fn sphere_has_branching() {
        let tri = Triangulation3::from_spec(sphere_s3()).unwrap();
        let b = find_branching(&tri).unwrap();
        // The induced corner order must be total, hence acyclic.
        let order = b.tetra_order(&tri, 0);
        let mut seen = [false; 4];
        for s in order {
            seen[s] = true;
        }
        assert!(seen.iter().all(|&x| x));
    }

    #[test]
    fn torus_surface_branching_orders_each_triangle() {
        let s = Surface2::from_spec(surface_torus()).unwrap();
        let b = find_surface_branching(&s).unwrap();
        for t in 0..s.triangle_count() {
            let order = b.triangle_order(&s, t);
            let mut seen = [false; 3];
            for sl in order {
                seen[sl] = true;
            }
            assert!(seen.iter().all(|&x| x));
        }
    }

    #[test]
    fn genus_two_surface_branching_exists() {
        let s = Surface2::from_spec(surface_genus(2)).unwrap();
        find_surface_branching(&s).unwrap();
    }
}
