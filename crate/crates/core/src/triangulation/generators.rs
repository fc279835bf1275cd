//! Built-in gluing specs: S^3 and the 3-torus as one-vertex singular
//! triangulations, lens spaces L(p,q) from p tetrahedra around an axis,
//! and one-vertex surfaces of genus g.

use super::{BuildError, GluingSpec};

/// S^3 with one tetrahedron (x1 x2 x3 x4) and the face identifications
/// (x1 x4 x2) = (x3 x4 x2) and (x1 x3 x4) = (x3 x2 x1), leaving one vertex
/// and the two edges a, b.
pub fn sphere_s3() -> GluingSpec {
    let mut spec = GluingSpec::new(3, 1);
    // (x1,x4,x2) = (x3,x4,x2): facet 2 -> facet 0, slots 0->2, 3->3, 1->1.
    spec.glue(0, 2, 0, 0, &[2, 1, 0, 3]);
    // (x1,x3,x4) = (x3,x2,x1): facet 1 -> facet 3, slots 0->2, 2->1, 3->0.
    spec.glue(0, 1, 0, 3, &[2, 3, 1, 0]);
    spec
}

/// The unit cube split into six tetrahedra along its main diagonal, with
/// opposite cube faces identified by translation. One vertex, seven edges
/// (three axes, three face diagonals, the body diagonal).
///
/// Tetra k = the k-th permutation (p0,p1,p2) of the axes in lexicographic
/// order; its corners are the partial sums 0, e_p0, e_p0+e_p1, e_0+e_1+e_2.
pub fn three_torus() -> GluingSpec {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let mut spec = GluingSpec::new(3, 6);
    for (k, p) in perms.iter().enumerate() {
        // Swap the first two steps: shared face omits corner 1.
        if p[0] < p[1] {
            let other = index_of(&[p[1], p[0], p[2]]);
            spec.glue(k, 1, other, 1, &[0, 1, 2, 3]);
        }
        // Swap the last two steps: shared face omits corner 2.
        if p[1] < p[2] {
            let other = index_of(&[p[0], p[2], p[1]]);
            spec.glue(k, 2, other, 2, &[0, 1, 2, 3]);
        }
        // Cube face: bottom face (corners 0,1,2) of k translates by e_p2
        // onto the top face (corners 1,2,3) of the right rotation.
        let rot = index_of(&[p[2], p[0], p[1]]);
        spec.glue(k, 3, rot, 0, &[1, 2, 3, 0]);
    }
    spec
}

/// L(p,q): p tetrahedra T_i = (a, b, c_i, c_{i+1}) around the axis (a,b),
/// prism faces (a,b,c_{i+1}) identified in sequence and surface triangles
/// (a, c_i, c_{i+1}) = (b, c_{i+q}, c_{i+q+1}).
pub fn lens(p: usize, q: usize) -> Result<GluingSpec, BuildError> {
    if q == 0 || q >= p || gcd(p, q) != 1 {
        return Err(BuildError::BadLensParameters);
    }
    let mut spec = GluingSpec::new(3, p);
    for i in 0..p {
        // Interior: facet 2 of T_i is (a,b,c_{i+1}) glued to facet 3 of
        // T_{i+1}, matching a, b and c_{i+1}.
        spec.glue(i, 2, (i + 1) % p, 3, &[0, 1, 3, 2]);
        // Surface: facet 1 of T_i is (a,c_i,c_{i+1}) glued to facet 0 of
        // T_{i+q}, sending a to b and c_i, c_{i+1} along.
        spec.glue(i, 1, (i + q) % p, 0, &[1, 0, 2, 3]);
    }
    Ok(spec)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One-vertex torus: the square with a diagonal. Equals surface_genus(1).
pub fn surface_torus() -> GluingSpec {
    surface_genus(1)
}

/// One-vertex genus-g surface: the 4g-gon with boundary word
/// prod [a_i, b_i], triangulated as a fan from vertex 0.
pub fn surface_genus(g: usize) -> GluingSpec {
    assert!(g >= 1, "genus must be at least 1");
    let m = 4 * g; // polygon size
    let mut spec = GluingSpec::new(2, m - 2);
    // Triangle i (0-based) = (v0, v_{i+1}, v_{i+2}) for i = 0..m-3.
    // Chords: triangle i and i+1 share {v0, v_{i+2}}.
    for i in 0..m - 3 {
        // In triangle i the chord is slots {0,2} = facet 1; in triangle
        // i+1 it is slots {0,1} = facet 2.
        spec.glue(i, 1, i + 1, 2, &[0, 2, 1]);
    }
    // Polygon side j = segment (v_j, v_{j+1}): its triangle, facet, and the
    // slots holding v_j and v_{j+1}.
    let side = |j: usize| -> (usize, usize, usize, usize) {
        if j == 0 {
            (0, 2, 0, 1)
        } else if j <= m - 2 {
            (j - 1, 0, 1, 2)
        } else {
            // j = m-1: segment (v_{m-1}, v_0) in the last triangle.
            (m - 3, 1, 2, 0)
        }
    };
    // Identify side j1 (forward occurrence) with side j2 (reversed):
    // v_{j1} = v_{j2+1} and v_{j1+1} = v_{j2}.
    let mut glue_pair = |j1: usize, j2: usize| {
        let (t1, f1, u1, v1) = side(j1);
        let (t2, f2, u2, v2) = side(j2);
        let mut image = [usize::MAX; 3];
        image[u1] = v2;
        image[v1] = u2;
        image[f1] = f2;
        spec.glue(t1, f1, t2, f2, &[image[0], image[1], image[2]]);
    };
    for k in 0..g {
        glue_pair(4 * k, 4 * k + 2); // a_k with its reverse
        glue_pair(4 * k + 1, 4 * k + 3); // b_k with its reverse
    }
    spec
}
