//! Singular triangulations of surfaces and 3-manifolds as gluing quotients,
//! with quotient classes, orientation signs, boundary extraction, Pachner
//! moves, branchings and prism (cylinder) constructions.

mod branching;
mod generators;
mod moves;
mod prism;
mod spec;

pub use branching::{find_branching, Branching};
pub use generators::{lens, sphere_s3, surface_genus, surface_torus, three_torus};
pub use moves::{pachner_14, pachner_23, pachner_32, pachner_41, MoveResult, TransportWord};
pub use prism::{mapping_torus_identity, prism, stacked_prism, PrismComplex, SurfaceAttachment};
pub use spec::{GluingRecord, GluingSpec, SpecError};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("complex is not orientable")]
    NonOrientable,
    #[error("face of simplex {simplex} glued to itself by an orientation-preserving map")]
    DegenerateGluing { simplex: usize },
    #[error("edge star is not a disc or circle (non-manifold gluing)")]
    NonManifold,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("lens space parameters must satisfy 0 < q < p and gcd(p,q) = 1")]
    BadLensParameters,
    #[error("no branching exists for this complex")]
    BranchingNotFound,
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
}

pub const TET_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const TRI_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

pub fn pair_index(dim: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    let pairs: &[(usize, usize)] = if dim == 3 { &TET_PAIRS } else { &TRI_PAIRS };
    pairs
        .iter()
        .position(|&p| p == (a, b))
        .expect("slot pair out of range")
}

fn perm_sign(image: &[usize]) -> i8 {
    let mut seen = vec![false; image.len()];
    let mut sign = 1i8;
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = image[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Union-find over simplex facets/edges with an orientation parity bit.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
    conflict: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
            conflict: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    fn union(&mut self, x: usize, y: usize, rel: bool) {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            if px ^ py != rel {
                self.conflict[rx] = true;
            }
            return;
        }
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ rel;
        self.conflict[rx] |= self.conflict[ry];
    }
}

/// A triangle class of a 3-complex: the orbit of a (tetra, facet) slot
/// under the gluing maps. Interior classes have two members.
#[derive(Debug, Clone)]
pub struct TriangleClass {
    pub members: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct Triangulation3 {
    pub spec: GluingSpec,
    pub n_vertices: usize,
    pub n_edges: usize,
    /// Vertex class of each (tetra, slot).
    pub vertex_class: Vec<[usize; 4]>,
    /// Edge class and orientation flag of each (tetra, pair); the flag is
    /// true when the slot-ascending orientation is the reverse of the
    /// class's canonical orientation.
    pub edge_class: Vec<[(usize, bool); 6]>,
    pub edge_reversible: Vec<bool>,
    /// Canonical representative (tetra, u, v) of each edge class, oriented.
    pub edge_rep: Vec<(usize, usize, usize)>,
    pub triangle_classes: Vec<TriangleClass>,
    pub face_class: Vec<[usize; 4]>,
    /// Per-tetra orientation sign relative to the global orientation.
    pub orientation: Vec<i8>,
    /// Gluing partner of each (tetra, facet): (tetra', facet', slot image).
    pub facet_gluing: Vec<Vec<Option<(usize, usize, [usize; 4])>>>,
    pub boundary: Option<Boundary>,
}

#[derive(Debug, Clone)]
pub struct Boundary {
    pub surface: Surface2,
    /// Surface triangle index -> (tetra, facet) it came from.
    pub faces: Vec<(usize, usize)>,
    /// Surface edge class -> (parent edge class, flip of canonical orientations).
    pub edge_map: Vec<(usize, bool)>,
    /// Surface vertex class -> parent vertex class.
    pub vertex_map: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Surface2 {
    pub spec: GluingSpec,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub vertex_class: Vec<[usize; 3]>,
    pub edge_class: Vec<[(usize, bool); 3]>,
    pub edge_reversible: Vec<bool>,
    pub edge_rep: Vec<(usize, usize, usize)>,
    pub orientation: Vec<i8>,
    pub facet_gluing: Vec<Vec<Option<(usize, usize, [usize; 3])>>>,
}

/// What the coloring machinery needs from either kind of complex.
pub trait Complex {
    fn n_vertex_classes(&self) -> usize;
    fn n_edge_classes(&self) -> usize;
    fn edge_reversible(&self, e: usize) -> bool;
    /// (tail, head) vertex classes of the canonical orientation.
    fn edge_endpoints(&self, e: usize) -> (usize, usize);
    /// For every triangle (class): its three edges read around the
    /// oriented boundary cycle; true = reversed w.r.t. canonical.
    fn triangle_edges(&self) -> Vec<[(usize, bool); 3]>;
}

impl Triangulation3 {
    pub fn from_spec(spec: GluingSpec) -> Result<Self, BuildError> {
        assert_eq!(spec.dimension, 3);
        spec.validate()?;
        let n = spec.simplex_count;
        let core = build_core(&spec)?;

        // Triangle classes: orbits of (tet, facet).
        let mut face_class = vec![[usize::MAX; 4]; n];
        let mut triangle_classes = Vec::new();
        for t in 0..n {
            for f in 0..4 {
                if face_class[t][f] != usize::MAX {
                    continue;
                }
                let id = triangle_classes.len();
                let mut members = vec![(t, f)];
                face_class[t][f] = id;
                if let Some((t2, f2, _)) = core.facet_gluing4[t][f] {
                    if (t2, f2) != (t, f) {
                        face_class[t2][f2] = id;
                        members.push((t2, f2));
                    }
                }
                triangle_classes.push(TriangleClass { members });
            }
        }

        let mut tri = Triangulation3 {
            spec,
            n_vertices: core.n_vertices,
            n_edges: core.n_edges,
            vertex_class: core.vertex_class4,
            edge_class: core.edge_class4,
            edge_reversible: core.edge_reversible,
            edge_rep: core.edge_rep,
            triangle_classes,
            face_class,
            orientation: core.orientation,
            facet_gluing: core.facet_gluing4,
            boundary: None,
        };
        tri.boundary = extract_boundary(&tri)?;
        Ok(tri)
    }

    pub fn tetra_count(&self) -> usize {
        self.spec.simplex_count
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_none()
    }

    /// Edge class and orientation flag of the oriented slot edge u -> v.
    pub fn oriented_edge(&self, t: usize, u: usize, v: usize) -> (usize, bool) {
        let (cls, asc_flip) = self.edge_class[t][pair_index(3, u, v)];
        (cls, if u < v { asc_flip } else { !asc_flip })
    }

    pub fn reverse_orientation(&self) -> Self {
        let mut out = self.clone();
        for s in out.orientation.iter_mut() {
            *s = -*s;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges as i64 + self.triangle_classes.len() as i64
            - self.tetra_count() as i64
    }

    /// Boundary vertex classes (parent numbering).
    pub fn boundary_vertex_set(&self) -> Vec<bool> {
        let mut on = vec![false; self.n_vertices];
        if let Some(b) = &self.boundary {
            for &v in &b.vertex_map {
                on[v] = true;
            }
        }
        on
    }

    /// Boundary edge classes (parent numbering).
    pub fn boundary_edge_set(&self) -> Vec<bool> {
        let mut on = vec![false; self.n_edges];
        if let Some(b) = &self.boundary {
            for &(e, _) in &b.edge_map {
                on[e] = true;
            }
        }
        on
    }
}

impl Complex for Triangulation3 {
    fn n_vertex_classes(&self) -> usize {
        self.n_vertices
    }
    fn n_edge_classes(&self) -> usize {
        self.n_edges
    }
    fn edge_reversible(&self, e: usize) -> bool {
        self.edge_reversible[e]
    }
    fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let (t, u, v) = self.edge_rep[e];
        (self.vertex_class[t][u], self.vertex_class[t][v])
    }
    fn triangle_edges(&self) -> Vec<[(usize, bool); 3]> {
        self.triangle_classes
            .iter()
            .map(|tc| {
                let (t, f) = tc.members[0];
                let s: Vec<usize> = (0..4).filter(|&x| x != f).collect();
                [
                    self.oriented_edge(t, s[0], s[1]),
                    self.oriented_edge(t, s[1], s[2]),
                    self.oriented_edge(t, s[2], s[0]),
                ]
            })
            .collect()
    }
}

impl Surface2 {
    pub fn from_spec(spec: GluingSpec) -> Result<Self, BuildError> {
        Self::from_spec_with_signs(spec, None)
    }

    /// Builds the surface; when `signs` is given (boundary of an oriented
    /// 3-complex) the orientation is taken as-is and verified instead of
    /// solved.
    pub fn from_spec_with_signs(
        spec: GluingSpec,
        signs: Option<Vec<i8>>,
    ) -> Result<Self, BuildError> {
        assert_eq!(spec.dimension, 2);
        spec.validate()?;
        let core = build_core(&spec)?;
        let orientation = match signs {
            Some(signs) => {
                for g in &spec.gluings {
                    let rel = -perm_sign(&g.image);
                    if signs[g.simplex_a] * signs[g.simplex_b] != rel {
                        return Err(BuildError::NonOrientable);
                    }
                }
                signs
            }
            None => core.orientation,
        };
        Ok(Surface2 {
            spec,
            n_vertices: core.n_vertices,
            n_edges: core.n_edges,
            vertex_class: core.vertex_class3,
            edge_class: core.edge_class3,
            edge_reversible: core.edge_reversible,
            edge_rep: core.edge_rep,
            orientation,
            facet_gluing: core.facet_gluing3,
        })
    }

    pub fn triangle_count(&self) -> usize {
        self.spec.simplex_count
    }

    pub fn oriented_edge(&self, t: usize, u: usize, v: usize) -> (usize, bool) {
        let (cls, asc_flip) = self.edge_class[t][pair_index(2, u, v)];
        (cls, if u < v { asc_flip } else { !asc_flip })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges as i64 + self.triangle_count() as i64
    }

    pub fn is_closed(&self) -> bool {
        // Every edge glued: each triangle contributes 3 edge slots, each
        // interior class absorbs exactly 2.
        let glued: usize = self
            .spec
            .gluings
            .len();
        glued * 2 == 3 * self.triangle_count()
    }
}

impl Complex for Surface2 {
    fn n_vertex_classes(&self) -> usize {
        self.n_vertices
    }
    fn n_edge_classes(&self) -> usize {
        self.n_edges
    }
    fn edge_reversible(&self, e: usize) -> bool {
        self.edge_reversible[e]
    }
    fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let (t, u, v) = self.edge_rep[e];
        (self.vertex_class[t][u], self.vertex_class[t][v])
    }
    fn triangle_edges(&self) -> Vec<[(usize, bool); 3]> {
        (0..self.triangle_count())
            .map(|t| {
                [
                    self.oriented_edge(t, 0, 1),
                    self.oriented_edge(t, 1, 2),
                    self.oriented_edge(t, 2, 0),
                ]
            })
            .collect()
    }
}

struct CoreData {
    n_vertices: usize,
    n_edges: usize,
    vertex_class4: Vec<[usize; 4]>,
    vertex_class3: Vec<[usize; 3]>,
    edge_class4: Vec<[(usize, bool); 6]>,
    edge_class3: Vec<[(usize, bool); 3]>,
    edge_reversible: Vec<bool>,
    edge_rep: Vec<(usize, usize, usize)>,
    orientation: Vec<i8>,
    facet_gluing4: Vec<Vec<Option<(usize, usize, [usize; 4])>>>,
    facet_gluing3: Vec<Vec<Option<(usize, usize, [usize; 3])>>>,
}

fn build_core(spec: &GluingSpec) -> Result<CoreData, BuildError> {
    let n = spec.simplex_count;
    let slots = spec.slots();
    let npairs = if spec.dimension == 3 { 6 } else { 3 };
    let pairs: &[(usize, usize)] = if spec.dimension == 3 {
        &TET_PAIRS
    } else {
        &TRI_PAIRS
    };

    // Facet gluing table with implied inverses.
    let mut facet_gluing: Vec<Vec<Option<(usize, usize, Vec<usize>)>>> =
        vec![vec![None; slots]; n];
    for g in &spec.gluings {
        if g.simplex_a == g.simplex_b && g.facet_a == g.facet_b {
            // Self-gluing: must be an involution, and orientation-reversing
            // on the face.
            let mut invol = true;
            for s in 0..slots {
                if g.image[g.image[s]] != s {
                    invol = false;
                }
            }
            if !invol {
                return Err(SpecError::BadPermutation {
                    line: 0,
                    msg: "self-gluing must be involutive".into(),
                }
                .into());
            }
            let face_slots: Vec<usize> = (0..slots).filter(|&s| s != g.facet_a).collect();
            let restricted: Vec<usize> = face_slots
                .iter()
                .map(|&s| face_slots.iter().position(|&x| x == g.image[s]).unwrap())
                .collect();
            if perm_sign(&restricted) == 1 {
                return Err(BuildError::DegenerateGluing {
                    simplex: g.simplex_a,
                });
            }
            facet_gluing[g.simplex_a][g.facet_a] =
                Some((g.simplex_b, g.facet_b, g.image.clone()));
        } else {
            facet_gluing[g.simplex_a][g.facet_a] =
                Some((g.simplex_b, g.facet_b, g.image.clone()));
            let inv = g.inverse();
            facet_gluing[g.simplex_b][g.facet_b] =
                Some((inv.simplex_b, inv.facet_b, inv.image));
        }
    }

    // Vertex classes.
    let mut vdsu = ParityDsu::new(n * slots);
    for g in &spec.gluings {
        for s in 0..slots {
            if s != g.facet_a {
                vdsu.union(g.simplex_a * slots + s, g.simplex_b * slots + g.image[s], false);
            }
        }
    }
    let mut vertex_of = vec![usize::MAX; n * slots];
    let mut n_vertices = 0;
    for x in 0..n * slots {
        let (root, _) = vdsu.find(x);
        if vertex_of[root] == usize::MAX {
            vertex_of[root] = n_vertices;
            n_vertices += 1;
        }
        vertex_of[x] = vertex_of[root];
    }

    // Edge classes with orientation parity.
    let mut edsu = ParityDsu::new(n * npairs);
    for g in &spec.gluings {
        for (pi, &(u, v)) in pairs.iter().enumerate() {
            if u == g.facet_a || v == g.facet_a {
                continue;
            }
            let (iu, iv) = (g.image[u], g.image[v]);
            let qi = pair_index(spec.dimension, iu, iv);
            // Parity: true when slot-ascending orientations disagree.
            let rel = (iu < iv) != (u < v);
            edsu.union(g.simplex_a * npairs + pi, g.simplex_b * npairs + qi, rel);
        }
    }
    let mut edge_of = vec![usize::MAX; n * npairs];
    let mut edge_flip = vec![false; n * npairs];
    let mut edge_rep = Vec::new();
    let mut edge_reversible = Vec::new();
    let mut n_edges = 0;
    for x in 0..n * npairs {
        let (root, parity) = edsu.find(x);
        if edge_of[root] == usize::MAX && edge_of[x] == usize::MAX {
            // First occurrence defines the class and its canonical
            // orientation (the slot-ascending representative).
            edge_of[root] = n_edges;
            let t = x / npairs;
            let (u, v) = pairs[x % npairs];
            edge_rep.push((t, u, v));
            edge_reversible.push(edsu.conflict[root]);
            n_edges += 1;
        }
        edge_of[x] = edge_of[root];
        edge_flip[x] = parity;
    }
    // Anchor parity to the canonical representative rather than the DSU root.
    for e in 0..n_edges {
        let (t, u, v) = edge_rep[e];
        let x = t * npairs + pair_index(spec.dimension, u, v);
        if edge_flip[x] {
            for y in 0..n * npairs {
                if edge_of[y] == e {
                    edge_flip[y] = !edge_flip[y];
                }
            }
        }
    }

    // Orientation signs (seed one per connected component).
    let mut orientation = vec![0i8; n];
    for seed in 0..n {
        if orientation[seed] != 0 {
            continue;
        }
        orientation[seed] = 1;
        let mut stack = vec![seed];
        while let Some(t) = stack.pop() {
            for f in 0..slots {
                if let Some((t2, _, image)) = &facet_gluing[t][f] {
                    let rel = -perm_sign(image);
                    let want = orientation[t] * rel;
                    if orientation[*t2] == 0 {
                        orientation[*t2] = want;
                        stack.push(*t2);
                    } else if orientation[*t2] != want {
                        return Err(BuildError::NonOrientable);
                    }
                }
            }
        }
    }

    let mut vertex_class4 = Vec::new();
    let mut vertex_class3 = Vec::new();
    let mut edge_class4 = Vec::new();
    let mut edge_class3 = Vec::new();
    let mut facet_gluing4 = Vec::new();
    let mut facet_gluing3 = Vec::new();
    if spec.dimension == 3 {
        for t in 0..n {
            let mut vc = [0usize; 4];
            for s in 0..4 {
                vc[s] = vertex_of[t * 4 + s];
            }
            vertex_class4.push(vc);
            let mut ec = [(0usize, false); 6];
            for pi in 0..6 {
                ec[pi] = (edge_of[t * 6 + pi], edge_flip[t * 6 + pi]);
            }
            edge_class4.push(ec);
        }
        facet_gluing4 = facet_gluing
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|o| o.map(|(t, f, im)| (t, f, [im[0], im[1], im[2], im[3]])))
                    .collect()
            })
            .collect();
    } else {
        for t in 0..n {
            let mut vc = [0usize; 3];
            for s in 0..3 {
                vc[s] = vertex_of[t * 3 + s];
            }
            vertex_class3.push(vc);
            let mut ec = [(0usize, false); 3];
            for pi in 0..3 {
                ec[pi] = (edge_of[t * 3 + pi], edge_flip[t * 3 + pi]);
            }
            edge_class3.push(ec);
        }
        facet_gluing3 = facet_gluing
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|o| o.map(|(t, f, im)| (t, f, [im[0], im[1], im[2]])))
                    .collect()
            })
            .collect();
    }

    Ok(CoreData {
        n_vertices,
        n_edges,
        vertex_class4,
        vertex_class3,
        edge_class4,
        edge_class3,
        edge_reversible,
        edge_rep,
        orientation,
        facet_gluing4,
        facet_gluing3,
    })
}

/// A position around an edge: the tetra, the edge's slot pair, and the
/// facet through which the wedge is entered or exited.
type WedgeSide = (usize, (usize, usize), usize);

/// Walks the star of every edge class; returns per-class either a closed
/// cycle (interior edge) or a chain whose two ends lie on boundary facets.
pub(crate) struct EdgeStar {
    /// For each edge class: the wedges (tetra, ascending pair) around it.
    pub wedges: Vec<Vec<(usize, (usize, usize))>>,
    /// For each edge class: None for interior (cycle), or the two boundary
    /// sides with the composed endpoint map between them.
    pub chain_ends: Vec<Option<(WedgeSide, WedgeSide, [usize; 2])>>,
}

pub(crate) fn edge_stars(tri: &Triangulation3) -> Result<EdgeStar, BuildError> {
    let n = tri.tetra_count();
    let mut wedges: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); tri.n_edges];
    for t in 0..n {
        for &(u, v) in TET_PAIRS.iter() {
            let (cls, _) = tri.edge_class[t][pair_index(3, u, v)];
            wedges[cls].push((t, (u, v)));
        }
    }
    let mut chain_ends = vec![None; tri.n_edges];
    for (cls, ws) in wedges.iter().enumerate() {
        // Sides of a wedge (t, {u,v}) are the two facets not in {u,v}.
        let sides = |t: usize, (u, v): (usize, usize)| -> [usize; 2] {
            let mut out = [0; 2];
            let mut k = 0;
            for s in 0..4 {
                if s != u && s != v {
                    out[k] = s;
                    k += 1;
                }
            }
            out
        };
        let boundary_sides: Vec<WedgeSide> = ws
            .iter()
            .flat_map(|&(t, p)| {
                sides(t, p)
                    .into_iter()
                    .filter(move |&f| tri.facet_gluing[t][f].is_none())
                    .map(move |f| (t, p, f))
            })
            .collect();
        match boundary_sides.len() {
            0 => {
                // Interior: verify the wedges form one cycle.
                let (t0, p0) = ws[0];
                let f_start = sides(t0, p0)[0];
                let mut seen = 1usize;
                let (mut t, mut p, mut f_out) = (t0, p0, sides(t0, p0)[1]);
                let _ = f_start;
                loop {
                    let (t2, f2, image) = tri.facet_gluing[t][f_out]
                        .expect("interior edge star side must be glued");
                    let p2 = (image[p.0], image[p.1]);
                    let p2 = (p2.0.min(p2.1), p2.0.max(p2.1));
                    let f_in = f2;
                    let [a, b] = sides(t2, p2);
                    let next_out = if a == f_in { b } else { a };
                    if (t2, p2) == (t0, p0) && next_out == sides(t0, p0)[1] {
                        break;
                    }
                    t = t2;
                    p = p2;
                    f_out = next_out;
                    seen += 1;
                    if seen > 2 * ws.len() {
                        return Err(BuildError::NonManifold);
                    }
                }
                if seen != ws.len() {
                    return Err(BuildError::NonManifold);
                }
            }
            2 => {
                // Boundary edge: walk from one end to the other composing
                // the endpoint maps.
                let start = boundary_sides[0];
                let goal = boundary_sides[1];
                let (t0, p0, f0) = start;
                // Map: current (a, b) are the slots corresponding to
                // (p0.0, p0.1) of the start wedge.
                let mut cur = (t0, p0);
                let mut ends = [p0.0, p0.1];
                let [sa, sb] = sides(t0, p0);
                let mut f_out = if sa == f0 { sb } else { sa };
                let mut steps = 0;
                loop {
                    if tri.facet_gluing[cur.0][f_out].is_none() {
                        // Reached the other end.
                        if (cur.0, cur.1, f_out) != goal {
                            return Err(BuildError::NonManifold);
                        }
                        break;
                    }
                    let (t2, f2, image) = tri.facet_gluing[cur.0][f_out].unwrap();
                    ends = [image[ends[0]], image[ends[1]]];
                    let q = (image[cur.1 .0], image[cur.1 .1]);
                    let q = (q.0.min(q.1), q.0.max(q.1));
                    let [a, b] = sides(t2, q);
                    f_out = if a == f2 { b } else { a };
                    cur = (t2, q);
                    steps += 1;
                    if steps > 2 * ws.len() + 2 {
                        return Err(BuildError::NonManifold);
                    }
                }
                chain_ends[cls] = Some((start, goal, ends));
            }
            _ => return Err(BuildError::NonManifold),
        }
    }
    Ok(EdgeStar {
        wedges,
        chain_ends,
    })
}

fn extract_boundary(tri: &Triangulation3) -> Result<Option<Boundary>, BuildError> {
    let mut faces = Vec::new();
    for t in 0..tri.tetra_count() {
        for f in 0..4 {
            if tri.facet_gluing[t][f].is_none() {
                faces.push((t, f));
            }
        }
    }
    if faces.is_empty() {
        return Ok(None);
    }
    let index_of = |tf: (usize, usize)| faces.iter().position(|&x| x == tf).unwrap();
    // Sorted face slots of a boundary facet = surface slots 0,1,2.
    let face_slots = |(t, f): (usize, usize)| -> Vec<usize> {
        let _ = t;
        (0..4).filter(|&s| s != f).collect()
    };

    let stars = edge_stars(tri)?;
    let mut sspec = GluingSpec::new(2, faces.len());
    for ends in stars.chain_ends.iter().flatten() {
        let (w1, w2, map) = ends;
        let (t1, p1, f1) = *w1;
        let (t2, _p2, f2) = *w2;
        let tri1 = index_of((t1, f1));
        let tri2 = index_of((t2, f2));
        let s1 = face_slots((t1, f1));
        let s2 = face_slots((t2, f2));
        let pos1 = |s: usize| s1.iter().position(|&x| x == s).unwrap();
        let pos2 = |s: usize| s2.iter().position(|&x| x == s).unwrap();
        let mut image = [usize::MAX; 3];
        image[pos1(p1.0)] = pos2(map[0]);
        image[pos1(p1.1)] = pos2(map[1]);
        let free1 = (0..3).find(|&i| image[i] == usize::MAX).unwrap();
        let used: Vec<usize> = image.iter().cloned().filter(|&x| x != usize::MAX).collect();
        let free2 = (0..3).find(|&j| !used.contains(&j)).unwrap();
        image[free1] = free2;
        sspec.glue(tri1, free1, tri2, free2, &image);
    }
    // Induced orientation: face opposite slot f of a positively oriented
    // tetra carries (-1)^f.
    let signs: Vec<i8> = faces
        .iter()
        .map(|&(t, f)| tri.orientation[t] * if f % 2 == 0 { 1 } else { -1 })
        .collect();
    let surface = Surface2::from_spec_with_signs(sspec, Some(signs))?;

    // Class maps into the parent.
    let mut edge_map = vec![(usize::MAX, false); surface.n_edges];
    for (i, &(t, f)) in faces.iter().enumerate() {
        let slots = face_slots((t, f));
        for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let (se, sflip) = surface.oriented_edge(i, a, b);
            let (pe, pflip) = tri.oriented_edge(t, slots[a], slots[b]);
            edge_map[se] = (pe, sflip != pflip);
        }
    }
    let mut vertex_map = vec![usize::MAX; surface.n_vertices];
    for (i, &(t, f)) in faces.iter().enumerate() {
        let slots = face_slots((t, f));
        for s in 0..3 {
            vertex_map[surface.vertex_class[i][s]] = tri.vertex_class[t][slots[s]];
        }
    }
    Ok(Some(Boundary {
        surface,
        faces,
        edge_map,
        vertex_map,
    }))
}

/// Deterministic BFS spanning tree over vertex classes; returns the edge
/// classes used. Tree edges are scanned in class-index order, so the result
/// is reproducible.
pub fn spanning_tree(cx: &dyn Complex, root: usize) -> Result<Vec<usize>, BuildError> {
    let nv = cx.n_vertex_classes();
    let ne = cx.n_edge_classes();
    let mut visited = vec![false; nv];
    visited[root] = true;
    let mut tree = Vec::new();
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in 0..ne {
            let (a, b) = cx.edge_endpoints(e);
            if a == b {
                continue;
            }
            let (from, to) = if visited[a] && !visited[b] {
                (a, b)
            } else if visited[b] && !visited[a] {
                (b, a)
            } else {
                continue;
            };
            let _ = from;
            visited[to] = true;
            tree.push(e);
            next.push(to);
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    if visited.iter().all(|&v| v) {
        Ok(tree)
    } else {
        Err(BuildError::Disconnected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_counts_match_hand_count() {
        let tri = Triangulation3::from_spec(sphere_s3()).unwrap();
        assert_eq!(tri.tetra_count(), 1);
        assert_eq!(tri.n_vertices, 1);
        assert_eq!(tri.n_edges, 2);
        assert_eq!(tri.triangle_classes.len(), 2);
        assert!(tri.is_closed());
        assert_eq!(tri.euler_characteristic(), 0);
        // The two edge classes split 5 + 1 over the six slot pairs.
        let mut counts = vec![0; 2];
        for pi in 0..6 {
            counts[tri.edge_class[0][pi].0] += 1;
        }
        counts.sort();
        assert_eq!(counts, vec![1, 5]);
        assert!(!tri.edge_reversible[0] && !tri.edge_reversible[1]);
    }

    #[test]
    fn three_torus_counts() {
        let tri = Triangulation3::from_spec(three_torus()).unwrap();
        assert_eq!(tri.tetra_count(), 6);
        assert_eq!(tri.n_vertices, 1);
        assert_eq!(tri.n_edges, 7);
        assert_eq!(tri.triangle_classes.len(), 12);
        assert!(tri.is_closed());
        assert_eq!(tri.euler_characteristic(), 0);
    }

    #[test]
    fn lens_counts() {
        for (p, q) in [(2, 1), (3, 1), (4, 1), (5, 2), (7, 3)] {
            let tri = Triangulation3::from_spec(lens(p, q).unwrap()).unwrap();
            assert_eq!(tri.tetra_count(), p, "L({p},{q})");
            assert_eq!(tri.n_vertices, 2);
            assert_eq!(tri.n_edges, p + 2);
            assert_eq!(tri.triangle_classes.len(), 2 * p);
            assert!(tri.is_closed());
            assert_eq!(tri.euler_characteristic(), 0);
        }
        assert!(matches!(lens(4, 2), Err(BuildError::BadLensParameters)));
        assert!(matches!(lens(3, 3), Err(BuildError::BadLensParameters)));
    }

    #[test]
    fn lens_two_tetra_example() {
        // L(2,1) has 2 tetrahedra.
        let tri = Triangulation3::from_spec(lens(2, 1).unwrap()).unwrap();
        assert_eq!(tri.tetra_count(), 2);
    }

    #[test]
    fn torus_surface_counts() {
        let s = Surface2::from_spec(surface_torus()).unwrap();
        assert_eq!(s.triangle_count(), 2);
        assert_eq!(s.n_vertices, 1);
        assert_eq!(s.n_edges, 3);
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.is_closed());
    }

    #[test]
    fn genus_surface_counts() {
        for g in 1..=3usize {
            let s = Surface2::from_spec(surface_genus(g)).unwrap();
            assert_eq!(s.triangle_count(), 4 * g - 2);
            assert_eq!(s.n_vertices, 1, "genus {g}");
            assert_eq!(s.n_edges, 6 * g - 3);
            assert_eq!(s.euler_characteristic(), 2 - 2 * g as i64);
        }
        assert_eq!(surface_genus(1), surface_torus());
    }

    #[test]
    fn unglued_tetra_has_sphere_boundary() {
        let spec = GluingSpec::new(3, 1);
        let tri = Triangulation3::from_spec(spec).unwrap();
        let b = tri.boundary.as_ref().unwrap();
        assert_eq!(b.surface.triangle_count(), 4);
        assert_eq!(b.surface.euler_characteristic(), 2);
        assert_eq!(b.surface.n_vertices, 4);
        assert_eq!(b.surface.n_edges, 6);
    }

    #[test]
    fn spanning_tree_properties() {
        let tri = Triangulation3::from_spec(sphere_s3()).unwrap();
        assert!(spanning_tree(&tri, 0).unwrap().is_empty());

        let tri = Triangulation3::from_spec(lens(3, 1).unwrap()).unwrap();
        let tree = spanning_tree(&tri, 0).unwrap();
        assert_eq!(tree.len(), tri.n_vertices - 1);
    }

    #[test]
    fn reversed_orientation_flips_signs() {
        let tri = Triangulation3::from_spec(three_torus()).unwrap();
        let rev = tri.reverse_orientation();
        for t in 0..tri.tetra_count() {
            assert_eq!(tri.orientation[t], -rev.orientation[t]);
        }
    }
}
