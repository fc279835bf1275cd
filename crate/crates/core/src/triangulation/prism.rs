//! Sigma x I as three tetrahedra per surface triangle, well defined on
//! singular surfaces thanks to a branching, plus the mapping torus
//! Sigma x S^1 obtained by gluing top to bottom with the identity.

use super::branching::Branching;
use super::{BuildError, GluingSpec, Surface2, Triangulation3};

/// How one end of a cylinder wears the surface it was built from.
#[derive(Debug, Clone)]
pub struct SurfaceAttachment {
    /// Surface triangle index -> (tetra, facet) carrying it.
    pub faces: Vec<(usize, usize)>,
    /// Surface edge class -> (parent edge class, orientation flip).
    pub edge_class: Vec<(usize, bool)>,
    /// Surface vertex class -> parent vertex class.
    pub vertex_class: Vec<usize>,
    /// Number of distinct parent vertex classes on this end.
    pub n_vertices: usize,
}

#[derive(Debug, Clone)]
pub struct PrismComplex {
    pub tri: Triangulation3,
    pub bottom: SurfaceAttachment,
    pub top: SurfaceAttachment,
}

/// Per-triangle roles of a surface edge in branch order.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Role {
    Uv,
    Vw,
    Uw,
}

/// For triangle f with branch order (u,v,w), the three tetrahedra of its
/// prism block are (u0 v0 w0 w1), (u0 v0 v1 w1), (u0 u1 v1 w1); quad faces
/// over the surface edges are split by the diagonals (x0, y1).
struct Block {
    /// Branch-ordered surface slots (u, v, w) of the triangle.
    order: [usize; 3],
}

impl Block {
    /// (tetra offset within the block, facet) of the lower quad triangle
    /// (x0 y0 y1) over the given edge role.
    fn lower(&self, role: Role) -> (usize, usize) {
        match role {
            Role::Uv => (1, 3),
            Role::Vw => (0, 0),
            Role::Uw => (0, 1),
        }
    }

    /// Tetra slots of (x0, y0, y1) in the lower triangle's tetra.
    fn lower_slots(&self, role: Role) -> [usize; 3] {
        match role {
            Role::Uv => [0, 1, 2],
            Role::Vw => [1, 2, 3],
            Role::Uw => [0, 2, 3],
        }
    }

    fn upper(&self, role: Role) -> (usize, usize) {
        match role {
            Role::Uv => (2, 3),
            Role::Vw => (1, 0),
            Role::Uw => (2, 2),
        }
    }

    /// Tetra slots of (x0, x1, y1) in the upper triangle's tetra.
    fn upper_slots(&self, role: Role) -> [usize; 3] {
        match role {
            Role::Uv => [0, 1, 2],
            Role::Vw => [1, 2, 3],
            Role::Uw => [0, 1, 3],
        }
    }

    fn role_of(&self, a: usize, b: usize) -> (Role, bool) {
        // Returns the role of surface slot pair {a,b} and whether (a,b) is
        // (x,y) in branch order (false) or reversed (true).
        let [u, v, w] = self.order;
        if (a, b) == (u, v) {
            (Role::Uv, false)
        } else if (b, a) == (u, v) {
            (Role::Uv, true)
        } else if (a, b) == (v, w) {
            (Role::Vw, false)
        } else if (b, a) == (v, w) {
            (Role::Vw, true)
        } else if (a, b) == (u, w) {
            (Role::Uw, false)
        } else if (b, a) == (u, w) {
            (Role::Uw, true)
        } else {
            panic!("slot pair not in triangle");
        }
    }
}

fn level_records(
    s: &Surface2,
    blocks: &[Block],
    spec: &mut GluingSpec,
    base: usize,
) {
    let nf = s.triangle_count();
    for f in 0..nf {
        let t1 = base + 3 * f;
        // T1 and T2 share (u0, v0, w1); T2 and T3 share (u0, v1, w1).
        spec.glue(t1, 2, t1 + 1, 2, &[0, 1, 2, 3]);
        spec.glue(t1 + 1, 1, t1 + 2, 1, &[0, 1, 2, 3]);
    }
    // Quad gluings across surface edges: for each surface gluing record,
    // identify the lower and upper quad triangles on both sides.
    for g in &s.spec.gluings {
        let fa = g.simplex_a;
        let fb = g.simplex_b;
        let ba = &blocks[fa];
        let bb = &blocks[fb];
        // Slots of the shared edge in both triangles.
        let ea: Vec<usize> = (0..3).filter(|&sl| sl != g.facet_a).collect();
        let (role_a, rev_a) = ba.role_of(ea[0], ea[1]);
        let (ib0, ib1) = (g.image[ea[0]], g.image[ea[1]]);
        let (role_b, rev_b) = bb.role_of(ib0, ib1);
        // Branch orientations agree across the gluing (they belong to the
        // class), so (x,y) on side a maps to (x,y) on side b.
        let flip = rev_a != rev_b;
        debug_assert!(!flip, "branching must orient glued edges consistently");
        let xa = if rev_a { (ea[1], ea[0]) } else { (ea[0], ea[1]) };
        let _xb = if rev_b { (ib1, ib0) } else { (ib0, ib1) };
        let _ = xa;
        for lower in [true, false] {
            let ((ta, fa_t), sa, (tb, fb_t), sb) = if lower {
                (
                    ba.lower(role_a),
                    ba.lower_slots(role_a),
                    bb.lower(role_b),
                    bb.lower_slots(role_b),
                )
            } else {
                (
                    ba.upper(role_a),
                    ba.upper_slots(role_a),
                    bb.upper(role_b),
                    bb.upper_slots(role_b),
                )
            };
            let ga = (base + 3 * fa + ta, fa_t);
            let gb = (base + 3 * fb + tb, fb_t);
            let mut image = [usize::MAX; 4];
            for k in 0..3 {
                image[sa[k]] = sb[k];
            }
            image[ga.1] = gb.1;
            spec.glue(ga.0, ga.1, gb.0, gb.1, &[image[0], image[1], image[2], image[3]]);
        }
    }
}

fn make_blocks(s: &Surface2, b: &Branching) -> Vec<Block> {
    (0..s.triangle_count())
        .map(|f| Block {
            order: b.triangle_order(s, f),
        })
        .collect()
}

fn attachment(
    s: &Surface2,
    blocks: &[Block],
    tri: &Triangulation3,
    base: usize,
    bottom: bool,
) -> SurfaceAttachment {
    let nf = s.triangle_count();
    let mut faces = Vec::with_capacity(nf);
    for f in 0..nf {
        faces.push(if bottom {
            (base + 3 * f, 3)
        } else {
            (base + 3 * f + 2, 0)
        });
    }
    // Surface slot -> tetra slot on this end: bottom face lives on T1 with
    // (u,v,w) at slots (0,1,2); the top face on T3 with (u,v,w) at (1,2,3).
    let slot_map = |f: usize, sl: usize| -> (usize, usize) {
        let block = &blocks[f];
        let pos = block.order.iter().position(|&x| x == sl).unwrap();
        if bottom {
            (base + 3 * f, pos)
        } else {
            (base + 3 * f + 2, pos + 1)
        }
    };
    let mut edge_class = vec![(usize::MAX, false); s.n_edges];
    for f in 0..nf {
        for (a, b2) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let (se, sflip) = s.oriented_edge(f, a, b2);
            let (ta, sa) = slot_map(f, a);
            let (_tb, sb) = slot_map(f, b2);
            let (pe, pflip) = tri.oriented_edge(ta, sa, sb);
            let entry = (pe, sflip != pflip);
            if edge_class[se].0 == usize::MAX {
                edge_class[se] = entry;
            } else {
                debug_assert_eq!(edge_class[se], entry, "inconsistent attachment");
            }
        }
    }
    let mut vertex_class = vec![usize::MAX; s.n_vertices];
    for f in 0..nf {
        for sl in 0..3 {
            let (t, ts) = slot_map(f, sl);
            vertex_class[s.vertex_class[f][sl]] = tri.vertex_class[t][ts];
        }
    }
    let mut distinct: Vec<usize> = vertex_class.clone();
    distinct.sort_unstable();
    distinct.dedup();
    SurfaceAttachment {
        faces,
        edge_class,
        vertex_class,
        n_vertices: distinct.len(),
    }
}

/// Sigma x I over a branched closed surface; both ends carry the input
/// triangulation, identity-matched.
pub fn prism(s: &Surface2, b: &Branching) -> Result<PrismComplex, BuildError> {
    stacked_prism(s, b, 1)
}

/// A stack of `levels` prisms glued end to end (still Sigma x I).
pub fn stacked_prism(s: &Surface2, b: &Branching, levels: usize) -> Result<PrismComplex, BuildError> {
    assert!(levels >= 1);
    let blocks = make_blocks(s, b);
    let nf = s.triangle_count();
    let mut spec = GluingSpec::new(3, 3 * nf * levels);
    for level in 0..levels {
        level_records(s, &blocks, &mut spec, 3 * nf * level);
    }
    for level in 0..levels - 1 {
        let lo = 3 * nf * level;
        let hi = 3 * nf * (level + 1);
        for f in 0..nf {
            // Top of one level onto the bottom of the next, identically.
            spec.glue(lo + 3 * f + 2, 0, hi + 3 * f, 3, &[3, 0, 1, 2]);
        }
    }
    let tri = Triangulation3::from_spec(spec)?;
    let bottom = attachment(s, &blocks, &tri, 0, true);
    let top = attachment(s, &blocks, &tri, 3 * nf * (levels - 1), false);
    debug_assert_eq!(
        tri.boundary.as_ref().map(|b| b.surface.triangle_count()),
        Some(2 * nf)
    );
    Ok(PrismComplex { tri, bottom, top })
}

/// Sigma x S^1: the prism with its top glued to its bottom by the identity.
pub fn mapping_torus_identity(s: &Surface2, b: &Branching) -> Result<Triangulation3, BuildError> {
    let blocks = make_blocks(s, b);
    let nf = s.triangle_count();
    let mut spec = GluingSpec::new(3, 3 * nf);
    level_records(s, &blocks, &mut spec, 0);
    for f in 0..nf {
        spec.glue(3 * f + 2, 0, 3 * f, 3, &[3, 0, 1, 2]);
    }
    Triangulation3::from_spec(spec)
}

#[cfg(test)]
mod tests {
    use super::super::branching::find_surface_branching;
    use super::super::{surface_genus, surface_torus, GluingSpec};
    use super::*;

    #[test]
    fn prism_over_lone_triangle() {
        let s = Surface2::from_spec(GluingSpec::new(2, 1)).unwrap();
        let b = find_surface_branching(&s).unwrap();
        let p = prism(&s, &b).unwrap();
        assert_eq!(p.tri.tetra_count(), 3);
        let boundary = p.tri.boundary.as_ref().unwrap();
        // Two horizontal triangles plus two triangles per vertical quad.
        assert_eq!(boundary.surface.triangle_count(), 8);
    }

    #[test]
    fn prism_over_torus() {
        let s = Surface2::from_spec(surface_torus()).unwrap();
        let b = find_surface_branching(&s).unwrap();
        let p = prism(&s, &b).unwrap();
        assert_eq!(p.tri.tetra_count(), 6);
        let boundary = p.tri.boundary.as_ref().unwrap();
        assert_eq!(boundary.surface.triangle_count(), 4);
        assert_eq!(boundary.surface.euler_characteristic(), 0);
        // Both ends see all three torus edge classes, disjointly.
        let mut bot: Vec<usize> = p.bottom.edge_class.iter().map(|&(e, _)| e).collect();
        let mut top: Vec<usize> = p.top.edge_class.iter().map(|&(e, _)| e).collect();
        bot.sort_unstable();
        top.sort_unstable();
        bot.dedup();
        top.dedup();
        assert_eq!(bot.len(), 3);
        assert_eq!(top.len(), 3);
        assert!(bot.iter().all(|e| !top.contains(e)));
        // Two boundary vertex classes: one per end.
        assert_eq!(p.bottom.n_vertices, 1);
        assert_eq!(p.top.n_vertices, 1);
        assert_ne!(p.bottom.vertex_class[0], p.top.vertex_class[0]);
    }

    #[test]
    fn mapping_torus_is_closed_with_zero_euler() {
        let s = Surface2::from_spec(surface_torus()).unwrap();
        let b = find_surface_branching(&s).unwrap();
        let m = mapping_torus_identity(&s, &b).unwrap();
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn genus_two_mapping_torus_builds() {
        let s = Surface2::from_spec(surface_genus(2)).unwrap();
        let b = find_surface_branching(&s).unwrap();
        let m = mapping_torus_identity(&s, &b).unwrap();
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn stacked_prism_matches_single() {
        let s = Surface2::from_spec(surface_torus()).unwrap();
        let b = find_surface_branching(&s).unwrap();
        let p2 = stacked_prism(&s, &b, 2).unwrap();
        assert_eq!(p2.tri.tetra_count(), 12);
        assert_eq!(
            p2.tri.boundary.as_ref().unwrap().surface.triangle_count(),
            4
        );
    }
}
