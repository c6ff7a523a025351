//! Oriented manifold triangle meshes immersed in R³.
//!
//! Connectivity is halfedge-based: halfedge `3*f + k` runs from vertex
//! `tri[f][k]` to `tri[f][(k+1)%3]`, so faces are counterclockwise with
//! respect to the outward normal. Undirected edges are oriented
//! lower-to-higher vertex index; that convention fixes the sign of every
//! 1-cochain in the crate.

pub mod io;

use nalgebra::Vector3;
use thiserror::Error;

pub const INVALID: usize = usize::MAX;

/// Minimum triangle area accepted at construction.
pub const DEGENERATE_AREA: f64 = 1e-14;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("non-manifold edge ({0}, {1}): more than two incident triangles")]
    NonManifoldEdge(usize, usize),
    #[error("non-manifold vertex {0}: incident triangles do not form a single fan")]
    NonManifoldVertex(usize),
    #[error("no consistent orientation: directed edge ({0}, {1}) appears twice")]
    NonOrientable(usize, usize),
    #[error("degenerate triangle {0} with area {1:.3e}")]
    DegenerateTriangle(usize, f64),
    #[error("triangle {tri} references vertex {vertex} but the mesh has {nverts} vertices")]
    VertexOutOfRange {
        tri: usize,
        vertex: usize,
        nverts: usize,
    },
    #[error("topology is inconsistent: chi = {chi}, boundary loops = {boundary}, 2 - chi - b = {excess} must be even and nonnegative")]
    Topology {
        chi: i64,
        boundary: usize,
        excess: i64,
    },
    #[error("truncation at R = {0} removes every triangle")]
    EmptyResult(f64),
    #[error("end mark references boundary loop {0} but the mesh has {1} loops")]
    NoSuchBoundaryLoop(usize, usize),
    #[error("boundary loop {loop_index} vertex {vertex} sits at |x| = {radius:.6} which is not within 5% of the marked cone radius {expected:.6}")]
    EndRadiusMismatch {
        loop_index: usize,
        vertex: usize,
        radius: f64,
        expected: f64,
    },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A marked asymptotically conical end: a boundary loop sitting at the
/// truncation radius of the cone it approximates.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EndMark {
    pub boundary_loop_index: usize,
    pub cone_radius: f64,
    pub label: String,
}

/// Oriented manifold triangle mesh with halfedge connectivity.
///
/// Immutable after construction; all accessors take `&self`, so a mesh can
/// be shared freely across threads.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    positions: Vec<Vector3<f64>>,
    triangles: Vec<[usize; 3]>,
    twin: Vec<usize>,
    edges: Vec<[usize; 2]>,
    halfedge_edge: Vec<usize>,
    edge_halfedges: Vec<[usize; 2]>,
    vertex_halfedge: Vec<usize>,
    boundary_loops: Vec<Vec<usize>>,
}

impl SurfaceMesh {
    /// Build and validate a mesh from an indexed triangle soup.
    pub fn new(
        positions: Vec<Vector3<f64>>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, MeshError> {
        let nv = positions.len();
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if v >= nv {
                    return Err(MeshError::VertexOutOfRange {
                        tri: t,
                        vertex: v,
                        nverts: nv,
                    });
                }
            }
        }
        for (t, tri) in triangles.iter().enumerate() {
            let a = positions[tri[1]] - positions[tri[0]];
            let b = positions[tri[2]] - positions[tri[0]];
            let area = 0.5 * a.cross(&b).norm();
            if !(area > DEGENERATE_AREA) {
                return Err(MeshError::DegenerateTriangle(t, area));
            }
        }

        let nh = 3 * triangles.len();
        // collect halfedges keyed by undirected edge
        let mut keyed: Vec<(usize, usize, usize)> = Vec::with_capacity(nh); // (lo, hi, halfedge)
        for (f, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let a = tri[k];
                let b = tri[(k + 1) % 3];
                keyed.push((a.min(b), a.max(b), 3 * f + k));
            }
        }
        keyed.sort_unstable();

        let mut twin = vec![INVALID; nh];
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut halfedge_edge = vec![INVALID; nh];
        let mut edge_halfedges: Vec<[usize; 2]> = Vec::new();
        let origin = |h: usize| triangles[h / 3][h % 3];

        let mut i = 0;
        while i < keyed.len() {
            let (lo, hi, _) = keyed[i];
            let mut j = i;
            while j < keyed.len() && keyed[j].0 == lo && keyed[j].1 == hi {
                j += 1;
            }
            let group = &keyed[i..j];
            if group.len() > 2 {
                return Err(MeshError::NonManifoldEdge(lo, hi));
            }
            if group.len() == 2 {
                let (h0, h1) = (group[0].2, group[1].2);
                if origin(h0) == origin(h1) {
                    return Err(MeshError::NonOrientable(origin(h0), lo + hi - origin(h0)));
                }
                twin[h0] = h1;
                twin[h1] = h0;
            }
            let e = edges.len();
            edges.push([lo, hi]);
            let mut pair = [INVALID, INVALID];
            for &(_, _, h) in group {
                halfedge_edge[h] = e;
                if origin(h) == lo {
                    pair[0] = h;
                } else {
                    pair[1] = h;
                }
            }
            edge_halfedges.push(pair);
            i = j;
        }

        let mut vertex_halfedge = vec![INVALID; nv];
        for h in 0..nh {
            let v = origin(h);
            // prefer a boundary-adjacent outgoing halfedge so fan walks can
            // start at the counterclockwise-most position
            let prev = 3 * (h / 3) + (h % 3 + 2) % 3;
            if vertex_halfedge[v] == INVALID || twin[prev] == INVALID {
                vertex_halfedge[v] = h;
            }
        }

        let mesh = Self {
            positions,
            triangles,
            twin,
            edges,
            halfedge_edge,
            edge_halfedges,
            vertex_halfedge,
            boundary_loops: Vec::new(),
        };
        mesh.check_vertex_manifold()?;
        let boundary_loops = mesh.collect_boundary_loops();
        let mut mesh = mesh;
        mesh.boundary_loops = boundary_loops;
        Ok(mesh)
    }

    fn check_vertex_manifold(&self) -> Result<(), MeshError> {
        let mut incident = vec![0usize; self.positions.len()];
        for tri in &self.triangles {
            for &v in tri {
                incident[v] += 1;
            }
        }
        for v in 0..self.positions.len() {
            if incident[v] == 0 {
                continue;
            }
            let mut reached = 0usize;
            let start = self.vertex_halfedge[v];
            let mut h = start;
            loop {
                reached += 1;
                // clockwise: step over the edge (v, dest(h))
                let t = self.twin[h];
                if t == INVALID {
                    break;
                }
                h = self.next_halfedge(t);
                if h == start {
                    break;
                }
            }
            if reached != incident[v] {
                return Err(MeshError::NonManifoldVertex(v));
            }
        }
        Ok(())
    }

    fn collect_boundary_loops(&self) -> Vec<Vec<usize>> {
        let nh = self.twin.len();
        let mut next_boundary = std::collections::HashMap::new();
        for h in 0..nh {
            if self.twin[h] == INVALID {
                next_boundary.insert(self.halfedge_origin(h), h);
            }
        }
        let mut seen = vec![false; nh];
        let mut loops = Vec::new();
        for h0 in 0..nh {
            if self.twin[h0] != INVALID || seen[h0] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = h0;
            loop {
                seen[h] = true;
                cycle.push(h);
                let v = self.halfedge_dest(h);
                h = *next_boundary
                    .get(&v)
                    .expect("boundary halfedges close into cycles on a manifold mesh");
                if h == h0 {
                    break;
                }
            }
            loops.push(cycle);
        }
        loops
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn position(&self, v: usize) -> Vector3<f64> {
        self.positions[v]
    }

    pub fn positions(&self) -> &[Vector3<f64>] {
        &self.positions
    }

    pub fn triangle(&self, f: usize) -> [usize; 3] {
        self.triangles[f]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Undirected edges as `[lo, hi]` vertex pairs, lo < hi.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = [a.min(b), a.max(b)];
        self.edges.binary_search(&key).ok()
    }

    /// Halfedges `[lo->hi, hi->lo]` of an edge; `INVALID` on the open side.
    pub fn edge_halfedges(&self, e: usize) -> [usize; 2] {
        self.edge_halfedges[e]
    }

    /// Face to the left of the edge's lo->hi direction, if any.
    pub fn edge_left_face(&self, e: usize) -> Option<usize> {
        let h = self.edge_halfedges[e][0];
        (h != INVALID).then(|| h / 3)
    }

    /// Face to the right of the edge's lo->hi direction, if any.
    pub fn edge_right_face(&self, e: usize) -> Option<usize> {
        let h = self.edge_halfedges[e][1];
        (h != INVALID).then(|| h / 3)
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.edge_halfedges[e].contains(&INVALID)
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        let start = self.vertex_halfedge[v];
        if start == INVALID {
            return false;
        }
        let prev = 3 * (start / 3) + (start % 3 + 2) % 3;
        self.twin[prev] == INVALID
    }

    pub fn halfedge_origin(&self, h: usize) -> usize {
        self.triangles[h / 3][h % 3]
    }

    pub fn halfedge_dest(&self, h: usize) -> usize {
        self.triangles[h / 3][(h % 3 + 1) % 3]
    }

    pub fn halfedge_face(&self, h: usize) -> usize {
        h / 3
    }

    pub fn halfedge_edge(&self, h: usize) -> usize {
        self.halfedge_edge[h]
    }

    pub fn next_halfedge(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    pub fn twin_halfedge(&self, h: usize) -> usize {
        self.twin[h]
    }

    /// Ordered boundary cycles; each entry is a halfedge whose twin is
    /// missing, and consecutive halfedges share a vertex.
    pub fn boundary_loops(&self) -> &[Vec<usize>] {
        &self.boundary_loops
    }

    /// Vertices of a boundary loop in cycle order.
    pub fn boundary_loop_vertices(&self, loop_index: usize) -> Vec<usize> {
        self.boundary_loops[loop_index]
            .iter()
            .map(|&h| self.halfedge_origin(h))
            .collect()
    }

    /// One-ring neighbor vertices of `v`, in rotational order.
    pub fn vertex_ring(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let start = self.vertex_halfedge[v];
        if start == INVALID {
            return out;
        }
        let prev_start = 3 * (start / 3) + (start % 3 + 2) % 3;
        if self.twin[prev_start] == INVALID {
            // boundary vertex: the fan opens with the far vertex of the
            // first face, which no crossing step would push
            out.push(self.halfedge_dest(self.next_halfedge(start)));
        }
        let mut h = start;
        loop {
            out.push(self.halfedge_dest(h));
            let t = self.twin[h];
            if t == INVALID {
                break;
            }
            h = self.next_halfedge(t);
            if h == start {
                break;
            }
        }
        out
    }

    /// Faces incident to `v`, in rotational order.
    pub fn vertex_faces(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let start = self.vertex_halfedge[v];
        if start == INVALID {
            return out;
        }
        let mut h = start;
        loop {
            out.push(h / 3);
            let t = self.twin[h];
            if t == INVALID {
                break;
            }
            h = self.next_halfedge(t);
            if h == start {
                break;
            }
        }
        out
    }

    pub fn triangle_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.triangles[f];
        let u = self.positions[b] - self.positions[a];
        let v = self.positions[c] - self.positions[a];
        0.5 * u.cross(&v).norm()
    }

    pub fn triangle_normal(&self, f: usize) -> Vector3<f64> {
        let [a, b, c] = self.triangles[f];
        let u = self.positions[b] - self.positions[a];
        let v = self.positions[c] - self.positions[a];
        u.cross(&v).normalize()
    }

    pub fn triangle_centroid(&self, f: usize) -> Vector3<f64> {
        let [a, b, c] = self.triangles[f];
        (self.positions[a] + self.positions[b] + self.positions[c]) / 3.0
    }

    pub fn edge_midpoint(&self, e: usize) -> Vector3<f64> {
        let [a, b] = self.edges[e];
        0.5 * (self.positions[a] + self.positions[b])
    }

    pub fn edge_vector(&self, e: usize) -> Vector3<f64> {
        let [a, b] = self.edges[e];
        self.positions[b] - self.positions[a]
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.edge_vector(e).norm()
    }

    pub fn max_vertex_radius(&self) -> f64 {
        self.positions.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    pub fn mean_edge_length(&self) -> f64 {
        if self.edges.is_empty() {
            return 0.0;
        }
        let total: f64 = (0..self.edges.len()).map(|e| self.edge_length(e)).sum();
        total / self.edges.len() as f64
    }

    /// Euler characteristic, genus and boundary loop count.
    pub fn topology(&self) -> Result<Topology, MeshError> {
        let chi = self.vertex_count() as i64 - self.edge_count() as i64
            + self.face_count() as i64;
        let b = self.boundary_loops.len();
        let excess = 2 - chi - b as i64;
        if excess < 0 || excess % 2 != 0 {
            return Err(MeshError::Topology {
                chi,
                boundary: b,
                excess,
            });
        }
        Ok(Topology {
            chi,
            genus: (excess / 2) as usize,
            boundary_loops: b,
        })
    }

    /// Whether every face is reachable from face 0 through shared edges.
    pub fn is_connected(&self) -> bool {
        if self.triangles.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.face_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(f) = stack.pop() {
            for k in 0..3 {
                let t = self.twin[3 * f + k];
                if t != INVALID && !seen[t / 3] {
                    seen[t / 3] = true;
                    count += 1;
                    stack.push(t / 3);
                }
            }
        }
        count == self.face_count()
    }

    /// Submesh of triangles whose vertices all satisfy |x| <= R.
    pub fn truncate(&self, r: f64) -> Result<SurfaceMesh, MeshError> {
        Ok(self.truncate_with_map(r)?.0)
    }

    /// Like [`truncate`](Self::truncate), also returning the old vertex index
    /// for every new vertex.
    pub fn truncate_with_map(&self, r: f64) -> Result<(SurfaceMesh, Vec<usize>), MeshError> {
        assert!(r > 0.0, "truncation radius must be positive");
        let keep_vertex: Vec<bool> = self.positions.iter().map(|p| p.norm() <= r).collect();
        let kept: Vec<[usize; 3]> = self
            .triangles
            .iter()
            .filter(|tri| tri.iter().all(|&v| keep_vertex[v]))
            .copied()
            .collect();
        if kept.is_empty() {
            return Err(MeshError::EmptyResult(r));
        }
        let mut new_index = vec![INVALID; self.positions.len()];
        let mut old_of_new = Vec::new();
        let mut positions = Vec::new();
        let mut triangles = Vec::with_capacity(kept.len());
        for tri in &kept {
            let mut t = [0usize; 3];
            for (slot, &v) in t.iter_mut().zip(tri.iter()) {
                if new_index[v] == INVALID {
                    new_index[v] = positions.len();
                    positions.push(self.positions[v]);
                    old_of_new.push(v);
                }
                *slot = new_index[v];
            }
            triangles.push(t);
        }
        let mesh = SurfaceMesh::new(positions, triangles)?;
        Ok((mesh, old_of_new))
    }

    /// Check that a marked end is an actual boundary loop sitting at its
    /// cone radius (within 5%).
    pub fn validate_end_mark(&self, mark: &EndMark) -> Result<(), MeshError> {
        if mark.boundary_loop_index >= self.boundary_loops.len() {
            return Err(MeshError::NoSuchBoundaryLoop(
                mark.boundary_loop_index,
                self.boundary_loops.len(),
            ));
        }
        for v in self.boundary_loop_vertices(mark.boundary_loop_index) {
            let radius = self.positions[v].norm();
            if (radius - mark.cone_radius).abs() > 0.05 * mark.cone_radius {
                return Err(MeshError::EndRadiusMismatch {
                    loop_index: mark.boundary_loop_index,
                    vertex: v,
                    radius,
                    expected: mark.cone_radius,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Topology {
    pub chi: i64,
    pub genus: usize,
    pub boundary_loops: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> SurfaceMesh {
        let p = vec![
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(-1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(0.0, -1.0, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
            Vector3::new(0.0, 0.0, -1.0),
        ];
        let t = vec![
            [0, 2, 4],
            [2, 1, 4],
            [1, 3, 4],
            [3, 0, 4],
            [2, 0, 5],
            [1, 2, 5],
            [3, 1, 5],
            [0, 3, 5],
        ];
        SurfaceMesh::new(p, t).unwrap()
    }

    /// n x n vertex grid on the unit square.
    pub(crate) fn unit_grid(n: usize) -> SurfaceMesh {
        let mut p = Vec::new();
        for j in 0..n {
            for i in 0..n {
                p.push(Vector3::new(
                    i as f64 / (n - 1) as f64,
                    j as f64 / (n - 1) as f64,
                    0.0,
                ));
            }
        }
        let mut t = Vec::new();
        for j in 0..n - 1 {
            for i in 0..n - 1 {
                let a = j * n + i;
                let b = a + 1;
                let c = a + n;
                let d = c + 1;
                t.push([a, b, d]);
                t.push([a, d, c]);
            }
        }
        SurfaceMesh::new(p, t).unwrap()
    }

    /// Structured torus grid, nu x nv quads.
    pub(crate) fn torus_grid(nu: usize, nv: usize) -> SurfaceMesh {
        let (r_major, r_minor) = (2.0, 0.8);
        let mut p = Vec::new();
        for j in 0..nv {
            let v = 2.0 * std::f64::consts::PI * j as f64 / nv as f64;
            for i in 0..nu {
                let u = 2.0 * std::f64::consts::PI * i as f64 / nu as f64;
                let rad = r_major + r_minor * v.cos();
                p.push(Vector3::new(
                    rad * u.cos(),
                    rad * u.sin(),
                    r_minor * v.sin(),
                ));
            }
        }
        let mut t = Vec::new();
        for j in 0..nv {
            for i in 0..nu {
                let a = j * nu + i;
                let b = j * nu + (i + 1) % nu;
                let c = ((j + 1) % nv) * nu + i;
                let d = ((j + 1) % nv) * nu + (i + 1) % nu;
                t.push([a, b, d]);
                t.push([a, d, c]);
            }
        }
        SurfaceMesh::new(p, t).unwrap()
    }

    #[test]
    fn octahedron_topology() {
        let m = octahedron();
        let topo = m.topology().unwrap();
        assert_eq!(topo.chi, 2);
        assert_eq!(topo.genus, 0);
        assert_eq!(topo.boundary_loops, 0);
        assert_eq!(m.edge_count(), 12);
    }

    #[test]
    fn grid_topology_is_disk() {
        let m = unit_grid(4);
        let topo = m.topology().unwrap();
        assert_eq!(topo.chi, 1);
        assert_eq!(topo.genus, 0);
        assert_eq!(topo.boundary_loops, 1);
        // boundary loop has 12 halfedges on a 4x4 grid
        assert_eq!(m.boundary_loops()[0].len(), 12);
    }

    #[test]
    fn torus_topology() {
        let m = torus_grid(24, 12);
        let topo = m.topology().unwrap();
        assert_eq!(topo.chi, 0);
        assert_eq!(topo.genus, 1);
        assert_eq!(topo.boundary_loops, 0);
    }

    #[test]
    fn non_manifold_edge_rejected() {
        // three triangles sharing edge (0,1)
        let p = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(0.0, -1.0, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
        ];
        let t = vec![[0, 1, 2], [1, 0, 3], [0, 1, 4]];
        match SurfaceMesh::new(p, t) {
            Err(MeshError::NonManifoldEdge(0, 1)) => {}
            other => panic!("expected non-manifold edge, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_orientation_rejected() {
        let p = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(1.0, 1.0, 0.0),
        ];
        // second triangle wound the same way across the shared edge
        let t = vec![[0, 1, 2], [0, 1, 3]];
        match SurfaceMesh::new(p, t) {
            Err(MeshError::NonOrientable(_, _)) => {}
            other => panic!("expected orientation error, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let p = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(2.0, 0.0, 0.0),
        ];
        let t = vec![[0, 1, 2]];
        assert!(matches!(
            SurfaceMesh::new(p, t),
            Err(MeshError::DegenerateTriangle(0, _))
        ));
    }

    #[test]
    fn vertex_out_of_range_rejected() {
        let p = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
        ];
        let t = vec![[0, 1, 7]];
        assert!(matches!(
            SurfaceMesh::new(p, t),
            Err(MeshError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn truncate_keeps_whole_triangles() {
        let m = unit_grid(11); // unit square, edge 0.1
        // shift to center at origin
        let p: Vec<Vector3<f64>> = m
            .positions()
            .iter()
            .map(|q| q - Vector3::new(0.5, 0.5, 0.0))
            .collect();
        let m = SurfaceMesh::new(p, m.triangles().to_vec()).unwrap();
        let sub = m.truncate(0.3).unwrap();
        assert!(sub.max_vertex_radius() <= 0.3 + 1e-12);
        assert!(sub.face_count() > 0);
        let topo = sub.topology().unwrap();
        assert_eq!(topo.genus, 0);
        assert_eq!(topo.boundary_loops, 1);
    }

    #[test]
    fn truncate_whole_mesh_is_identity_sized() {
        let m = octahedron();
        let sub = m.truncate(3.0).unwrap();
        assert_eq!(sub.vertex_count(), m.vertex_count());
        assert_eq!(sub.face_count(), m.face_count());
    }

    #[test]
    fn truncate_empty_errors() {
        let m = octahedron();
        assert!(matches!(
            m.truncate(0.1),
            Err(MeshError::EmptyResult(_))
        ));
    }

    #[test]
    fn vertex_rings_are_cyclic_on_closed_mesh() {
        let m = octahedron();
        for v in 0..m.vertex_count() {
            let ring = m.vertex_ring(v);
            assert_eq!(ring.len(), 4, "octahedron vertices have valence 4");
        }
    }

    #[test]
    fn edge_orientation_is_lo_hi() {
        let m = octahedron();
        for e in 0..m.edge_count() {
            let [a, b] = m.edge(e);
            assert!(a < b);
            let [h_fwd, h_bwd] = m.edge_halfedges(e);
            assert_eq!(m.halfedge_origin(h_fwd), a);
            assert_eq!(m.halfedge_origin(h_bwd), b);
        }
    }
}
