//! Differential geometry over a surface mesh: per-vertex normals, shape
//! operators and principal curvatures, the Gaussian density e^{-|x|²/4}/4π,
//! the weighted-area functional and the shrinker residual, plus generators
//! for the model surfaces used throughout.

mod angenent;
mod generators;

pub use angenent::{angenent_profile, gen_angenent_torus, ProfileCurve, ShootingLog};
pub use generators::{
    gen_cone_ended, gen_cylinder, gen_plane_disk, gen_sphere, icosphere, ConeSpec,
};

use crate::mesh::{MeshError, SurfaceMesh};
use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("vertex {0} has a rank-deficient one-ring; cannot fit a shape operator")]
    DegenerateRing(usize),
    #[error("normal at vertex {0} could not be normalized (zero area star)")]
    DegenerateNormal(usize),
    #[error("cone ends overlap: directions {0} and {1} are separated by {2:.3} rad but need at least {3:.3}")]
    ConeOverlap(usize, usize, f64, f64),
    #[error("cannot place {wanted} handle holes clear of the cone ends at this resolution")]
    HandlePlacement { wanted: usize },
    #[error("cone curve sample {0} is not a unit vector (|gamma| = {1})")]
    ConeSampleNotUnit(usize, f64),
    #[error("cone curve has repeated or crossing samples near index {0}")]
    ConeCurveNotSimple(usize),
    #[error("shooting failed: no closed profile bracketed in r0 in [{lo}, {hi}]")]
    ShootingFailed { lo: f64, hi: f64 },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// How the density is sampled; the unit override exists for tests that
/// need plain (unweighted) operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum WeightMode {
    Gaussian,
    Unit,
}

/// The Gaussian density e^{-|x|²/4} / 4π at a point of R³.
pub fn gaussian_weight(p: &Vector3<f64>) -> f64 {
    (-p.norm_squared() / 4.0).exp() / (4.0 * std::f64::consts::PI)
}

/// A mesh with its differential-geometric layer: unit normals, shape
/// operators in per-vertex tangent frames, principal curvatures and the
/// Gaussian weight.
#[derive(Debug, Clone)]
pub struct ImmersedGeometry {
    mesh: SurfaceMesh,
    normals: Vec<Vector3<f64>>,
    tangent_u: Vec<Vector3<f64>>,
    tangent_v: Vec<Vector3<f64>>,
    shape_operators: Vec<Matrix2<f64>>,
    kappa1: Vec<f64>,
    kappa2: Vec<f64>,
    weight: Vec<f64>,
    weight_mode: WeightMode,
}

impl ImmersedGeometry {
    /// Build with area-weighted face normals.
    pub fn from_mesh(mesh: SurfaceMesh) -> Result<Self, GeometryError> {
        let normals = area_weighted_normals(&mesh)?;
        Self::with_normals(mesh, normals)
    }

    /// Build with externally supplied (typically analytic) unit normals.
    pub fn with_normals(
        mesh: SurfaceMesh,
        normals: Vec<Vector3<f64>>,
    ) -> Result<Self, GeometryError> {
        assert_eq!(normals.len(), mesh.vertex_count());
        for (v, n) in normals.iter().enumerate() {
            if (n.norm() - 1.0).abs() > 1e-12 {
                return Err(GeometryError::DegenerateNormal(v));
            }
        }
        let weight: Vec<f64> = mesh.positions().iter().map(gaussian_weight).collect();
        let mut geom = Self {
            mesh,
            normals,
            tangent_u: Vec::new(),
            tangent_v: Vec::new(),
            shape_operators: Vec::new(),
            kappa1: Vec::new(),
            kappa2: Vec::new(),
            weight,
            weight_mode: WeightMode::Gaussian,
        };
        geom.fit_shape_operators()?;
        Ok(geom)
    }

    /// Replace the Gaussian density by 1 everywhere (test override).
    pub fn with_unit_weight(mut self) -> Self {
        self.weight_mode = WeightMode::Unit;
        self.weight.iter_mut().for_each(|w| *w = 1.0);
        self
    }

    pub fn weight_mode(&self) -> WeightMode {
        self.weight_mode
    }

    /// Density at an arbitrary point, honoring the weight mode.
    pub fn weight_at(&self, p: &Vector3<f64>) -> f64 {
        match self.weight_mode {
            WeightMode::Gaussian => gaussian_weight(p),
            WeightMode::Unit => 1.0,
        }
    }

    pub fn mesh(&self) -> &SurfaceMesh {
        &self.mesh
    }

    pub fn normal(&self, v: usize) -> Vector3<f64> {
        self.normals[v]
    }

    pub fn normals(&self) -> &[Vector3<f64>] {
        &self.normals
    }

    pub fn kappa1(&self) -> &[f64] {
        &self.kappa1
    }

    pub fn kappa2(&self) -> &[f64] {
        &self.kappa2
    }

    /// |A|² = κ₁² + κ₂² at a vertex.
    pub fn second_fundamental_norm_sq(&self, v: usize) -> f64 {
        self.kappa1[v] * self.kappa1[v] + self.kappa2[v] * self.kappa2[v]
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weight[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    /// Shape operator as an ambient 3×3 matrix (rank ≤ 2, kernel along N).
    pub fn shape_operator_ambient(&self, v: usize) -> Matrix3<f64> {
        let s = self.shape_operators[v];
        let u = self.tangent_u[v];
        let w = self.tangent_v[v];
        let su = s[(0, 0)] * u + s[(1, 0)] * w;
        let sw = s[(0, 1)] * u + s[(1, 1)] * w;
        su * u.transpose() + sw * w.transpose()
    }

    /// A² = S·Sᵀ as an ambient 3×3 matrix.
    pub fn shape_operator_squared_ambient(&self, v: usize) -> Matrix3<f64> {
        let s = self.shape_operator_ambient(v);
        s * s.transpose()
    }

    pub fn tangent_frame(&self, v: usize) -> (Vector3<f64>, Vector3<f64>) {
        (self.tangent_u[v], self.tangent_v[v])
    }

    /// Mean curvature H = κ₁ + κ₂ with respect to the stored normal.
    pub fn mean_curvature(&self, v: usize) -> f64 {
        self.kappa1[v] + self.kappa2[v]
    }

    /// H - ⟨x/2, N⟩ per vertex; identically zero on a discrete shrinker.
    pub fn shrinker_residual(&self) -> Vec<f64> {
        (0..self.mesh.vertex_count())
            .map(|v| {
                self.mean_curvature(v) - 0.5 * self.mesh.position(v).dot(&self.normals[v])
            })
            .collect()
    }

    pub fn shrinker_residual_linf(&self) -> f64 {
        self.shrinker_residual()
            .iter()
            .map(|r| r.abs())
            .fold(0.0, f64::max)
    }

    /// Pinch quantity c = max over vertices of |κ₁² - κ₂²|.
    pub fn pinch_constant(&self) -> f64 {
        (0..self.mesh.vertex_count())
            .map(|v| (self.kappa1[v] * self.kappa1[v] - self.kappa2[v] * self.kappa2[v]).abs())
            .fold(0.0, f64::max)
    }

    /// Gaussian-weighted area by one-point (centroid) quadrature, summed
    /// compensated in face order so reruns are bit-identical.
    pub fn f_functional(&self) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for f in 0..self.mesh.face_count() {
            let term = self.mesh.triangle_area(f) * self.weight_at(&self.mesh.triangle_centroid(f));
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    }

    /// Restrict to the submesh of triangles inside the ball of radius `r`,
    /// carrying normals over and refitting curvatures on the submesh.
    pub fn truncate(&self, r: f64) -> Result<ImmersedGeometry, GeometryError> {
        let (sub, old_of_new) = self.mesh.truncate_with_map(r)?;
        let normals: Vec<Vector3<f64>> = old_of_new.iter().map(|&v| self.normals[v]).collect();
        let mut geom = Self::with_normals(sub, normals)?;
        if self.weight_mode == WeightMode::Unit {
            geom = geom.with_unit_weight();
        }
        Ok(geom)
    }

    fn fit_shape_operators(&mut self) -> Result<(), GeometryError> {
        let nv = self.mesh.vertex_count();
        self.tangent_u = Vec::with_capacity(nv);
        self.tangent_v = Vec::with_capacity(nv);
        self.shape_operators = Vec::with_capacity(nv);
        self.kappa1 = vec![0.0; nv];
        self.kappa2 = vec![0.0; nv];
        for v in 0..nv {
            let n = self.normals[v];
            let (e1, e2) = orthonormal_frame(&n);
            self.tangent_u.push(e1);
            self.tangent_v.push(e2);
        }
        for v in 0..nv {
            let s = self.fit_shape_at(v)?;
            self.shape_operators.push(s);
            let mean = 0.5 * (s[(0, 0)] + s[(1, 1)]);
            let dev = (0.25 * (s[(0, 0)] - s[(1, 1)]).powi(2) + s[(0, 1)] * s[(0, 1)]).sqrt();
            self.kappa1[v] = mean + dev;
            self.kappa2[v] = mean - dev;
        }
        Ok(())
    }

    /// Least-squares fit of the normal differential over the one-ring,
    /// projected to the tangent plane and symmetrized.
    fn fit_shape_at(&self, v: usize) -> Result<Matrix2<f64>, GeometryError> {
        let ring = self.mesh.vertex_ring(v);
        if ring.len() < 2 {
            return Err(GeometryError::DegenerateRing(v));
        }
        let n = self.normals[v];
        let e1 = self.tangent_u[v];
        let e2 = self.tangent_v[v];
        let p = self.mesh.position(v);

        // unknowns (s11, s12, s22); rows: S * dx_t = dn_t per neighbor
        let mut g = Matrix3::<f64>::zeros();
        let mut rhs = Vector3::<f64>::zeros();
        for &u in &ring {
            let dx = self.mesh.position(u) - p;
            let dn = self.normals[u] - n;
            let a = Vector2::new(dx.dot(&e1), dx.dot(&e2));
            let b = Vector2::new(dn.dot(&e1), dn.dot(&e2));
            // rows: [a.x, a.y, 0 ; 0, a.x, a.y]
            let rows = [
                (Vector3::new(a.x, a.y, 0.0), b.x),
                (Vector3::new(0.0, a.x, a.y), b.y),
            ];
            for (j, r) in rows {
                g += j * j.transpose();
                rhs += j * r;
            }
        }
        let sol = g
            .lu()
            .solve(&rhs)
            .ok_or(GeometryError::DegenerateRing(v))?;
        if !sol.iter().all(|x| x.is_finite()) {
            return Err(GeometryError::DegenerateRing(v));
        }
        Ok(Matrix2::new(sol[0], sol[1], sol[1], sol[2]))
    }
}

/// Deterministic orthonormal tangent frame for a unit normal.
pub fn orthonormal_frame(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let axis = if n.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = n.cross(&axis).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

fn area_weighted_normals(mesh: &SurfaceMesh) -> Result<Vec<Vector3<f64>>, GeometryError> {
    let mut acc = vec![Vector3::zeros(); mesh.vertex_count()];
    for f in 0..mesh.face_count() {
        let [a, b, c] = mesh.triangle(f);
        let u = mesh.position(b) - mesh.position(a);
        let v = mesh.position(c) - mesh.position(a);
        let n = u.cross(&v); // twice the area times the unit normal
        acc[a] += n;
        acc[b] += n;
        acc[c] += n;
    }
    acc.into_iter()
        .enumerate()
        .map(|(v, n)| {
            let len = n.norm();
            if len <= 1e-300 {
                Err(GeometryError::DegenerateNormal(v))
            } else {
                Ok(n / len)
            }
        })
        .collect()
}

/// Sidecar record cached next to a mesh file: the geometric layer keyed by
/// a content hash of the mesh bytes.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct GeometrySidecar {
    pub mesh_hash: String,
    pub weight_mode: WeightMode,
    pub normals: Vec<[f64; 3]>,
    pub kappa1: Vec<f64>,
    pub kappa2: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GeometrySidecar {
    pub fn from_geometry(geom: &ImmersedGeometry, mesh_hash: String) -> Self {
        Self {
            mesh_hash,
            weight_mode: geom.weight_mode(),
            normals: geom.normals().iter().map(|n| [n.x, n.y, n.z]).collect(),
            kappa1: geom.kappa1().to_vec(),
            kappa2: geom.kappa2().to_vec(),
            weights: geom.weights().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sphere_radius2_curvatures_exact() {
        let geom = gen_sphere(2.0, 3).unwrap();
        for v in 0..geom.mesh().vertex_count() {
            assert_relative_eq!(geom.mesh().position(v).norm(), 2.0, epsilon = 1e-12);
            assert_relative_eq!(geom.kappa1()[v], 0.5, epsilon = 1e-9);
            assert_relative_eq!(geom.kappa2()[v], 0.5, epsilon = 1e-9);
        }
        assert!(geom.shrinker_residual_linf() < 1e-9);
    }

    #[test]
    fn sphere_radius1_residual_is_three_halves() {
        let geom = gen_sphere(1.0, 3).unwrap();
        // H = 2, <x/2, N> = 1/2 with outward normals
        for r in geom.shrinker_residual() {
            assert_relative_eq!(r, 1.5, epsilon = 1e-8);
        }
    }

    #[test]
    fn plane_disk_is_flat_and_gaussian_normalized() {
        let geom = gen_plane_disk(8.0, 0.4).unwrap();
        assert!(geom.shrinker_residual_linf() < 1e-12);
        for v in 0..geom.mesh().vertex_count() {
            assert!(geom.second_fundamental_norm_sq(v) < 1e-20);
        }
        let topo = geom.mesh().topology().unwrap();
        assert_eq!((topo.chi, topo.genus, topo.boundary_loops), (1, 0, 1));
        assert_relative_eq!(geom.f_functional(), 1.0, epsilon = 1e-3);
    }

    #[test]
    fn sphere_f_functional_matches_closed_form() {
        let geom = gen_sphere(2.0, 5).unwrap();
        // (1/4pi) * 16pi * e^{-1} = 4/e
        assert_relative_eq!(geom.f_functional(), 4.0 / std::f64::consts::E, epsilon = 1e-3);
    }

    #[test]
    fn cylinder_sqrt2_is_a_shrinker_under_refinement() {
        let coarse = gen_cylinder(2f64.sqrt(), 8.0, 0.3).unwrap();
        let fine = gen_cylinder(2f64.sqrt(), 8.0, 0.15).unwrap();
        let rc = coarse.shrinker_residual_linf();
        let rf = fine.shrinker_residual_linf();
        assert!(rf < rc, "residual should shrink: {rc} -> {rf}");
        assert!(rf < 0.02, "fine residual {rf}");
        let topo = fine.mesh().topology().unwrap();
        assert_eq!((topo.chi, topo.genus, topo.boundary_loops), (0, 0, 2));
    }

    #[test]
    fn cylinder_f_functional_matches_closed_form() {
        let geom = gen_cylinder(2f64.sqrt(), 8.0, 0.1).unwrap();
        let expect = (2.0 * std::f64::consts::PI / std::f64::consts::E).sqrt();
        assert_relative_eq!(geom.f_functional(), expect, epsilon = 2e-3);
    }

    #[test]
    fn cylinder_curvatures_converge() {
        let geom = gen_cylinder(2f64.sqrt(), 4.0, 0.1).unwrap();
        let k_exact = 1.0 / 2f64.sqrt();
        let max_err1 = geom
            .kappa1()
            .iter()
            .map(|k| (k - k_exact).abs())
            .fold(0.0, f64::max);
        let max_err2 = geom.kappa2().iter().map(|k| k.abs()).fold(0.0, f64::max);
        assert!(max_err1 < 0.02, "kappa1 err {max_err1}");
        assert!(max_err2 < 0.02, "kappa2 err {max_err2}");
    }

    #[test]
    fn f_functional_sphere_family_peaks_at_radius_two() {
        let f = |rho: f64| gen_sphere(rho, 4).unwrap().f_functional();
        let at2 = f(2.0);
        assert!(at2 > f(1.9), "F(2) should exceed F(1.9)");
        assert!(at2 > f(2.1), "F(2) should exceed F(2.1)");
    }
}
