//! Aperture geometry: element layouts, outward normals, exact distances,
//! and exact/far-field steering vectors for 1D arc and 2D
//! cylindrical-section apertures.
//!
//! A 1D aperture of length `L` bent with curvature radius `R` subtends a
//! half-angle `beta = L / (2R)`. Element `n` (1-based) sits at central
//! angle `alpha_n = (n-1) L / ((N-1) R)` on the circle of radius `R`
//! centered at `C = (0, -R cos(beta), 0)`:
//!
//! ```text
//! p_n = (0, R cos(beta - alpha_n) - R cos(beta), R sin(beta - alpha_n))
//! ```
//!
//! The planar limit is a distinct flat variant with positions on the
//! z-axis (or an x-z grid in 2D), avoiding infinite-radius arithmetic.
//! 2D apertures stack `M` identical arcs at `x = m * d_x`, `m = 1..=M`;
//! note the first row sits at `x = d_x`, not at the origin.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};

/// Unit-norm tolerance for steering vectors and normals.
const UNIT_NORM_TOL: f64 = 1e-12;

/// Distance below which a user is considered coincident with an element.
const COINCIDENT_EPS_M: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GeometryError {
    #[error("aperture length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("curvature radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("need at least {min} elements, got {got}")]
    TooFewElements { min: usize, got: usize },
    #[error("half-angle beta = {0} rad exceeds pi/2 (not a valid circular section)")]
    BetaOutOfRange(f64),
    #[error("x-spacing must be positive, got {0}")]
    NonPositiveSpacing(f64),
    #[error("strict mode: x-spacing {dx} differs from arc spacing {arc}")]
    SpacingMismatch { dx: f64, arc: f64 },
    #[error("element index {index} out of range for {count} elements")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("user location coincides with element {index}")]
    CoincidentUser { index: usize },
    #[error("user range must be positive, got {0}")]
    NonPositiveRange(f64),
    #[error("zenith angle {0} rad outside [0, pi]")]
    ZenithOutOfRange(f64),
}

/// A 3D point or direction in meters (right-handed, z up along the
/// aperture axis, y the outward boresight at the arc apex).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn sub(&self, other: &Vec3) -> Vec3 {
        Vec3::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn distance(&self, other: &Vec3) -> f64 {
        self.sub(other).norm()
    }
}

/// Curvature state of an aperture: a circular section or the flat limit.
///
/// The flat variant exists so that `beta = 0` never requires an infinite
/// radius; every curved formula reduces to its flat counterpart in the
/// `beta -> 0` limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Curvature {
    Flat,
    Curved { radius_m: f64, half_angle_rad: f64 },
}

impl Curvature {
    /// Half-angle `beta` in radians; zero for the flat variant.
    pub fn half_angle(&self) -> f64 {
        match self {
            Curvature::Flat => 0.0,
            Curvature::Curved { half_angle_rad, .. } => *half_angle_rad,
        }
    }
}

/// User location in spherical coordinates relative to the array origin.
///
/// The Cartesian form is `(r sin(theta) cos(phi), r sin(theta) sin(phi),
/// r cos(theta))` with zenith `theta` and azimuth `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UserLocation {
    pub range_m: f64,
    pub zenith_rad: f64,
    pub azimuth_rad: f64,
}

impl UserLocation {
    pub fn new(range_m: f64, zenith_rad: f64, azimuth_rad: f64) -> Result<Self, GeometryError> {
        if !(range_m > 0.0) {
            return Err(GeometryError::NonPositiveRange(range_m));
        }
        if !(0.0..=std::f64::consts::PI).contains(&zenith_rad) {
            return Err(GeometryError::ZenithOutOfRange(zenith_rad));
        }
        Ok(Self {
            range_m,
            zenith_rad,
            azimuth_rad,
        })
    }

    /// Cartesian position of the user.
    pub fn cartesian(&self) -> Vec3 {
        let (st, ct) = self.zenith_rad.sin_cos();
        let (sp, cp) = self.azimuth_rad.sin_cos();
        Vec3::new(
            self.range_m * st * cp,
            self.range_m * st * sp,
            self.range_m * ct,
        )
    }

    /// Unit direction from the origin towards the user.
    pub fn direction(&self) -> Vec3 {
        let (st, ct) = self.zenith_rad.sin_cos();
        let (sp, cp) = self.azimuth_rad.sin_cos();
        Vec3::new(st * cp, st * sp, ct)
    }
}

/// A 1D aperture: `N` uniformly spaced elements on a circular arc in the
/// y-z plane (or on the z-axis for the flat variant).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Arc1DGeometry {
    length_m: f64,
    num_elements: usize,
    curvature: Curvature,
    positions: Vec<Vec3>,
    /// Central angles `alpha_n` (radians), increasing from 0 to `2 beta`.
    /// Empty for the flat variant.
    central_angles: Vec<f64>,
}

impl Arc1DGeometry {
    /// Builds a curved arc of length `length_m`, curvature radius
    /// `radius_m`, and `n` elements.
    ///
    /// Rejects `beta = L/(2R) > pi/2` (the section would fold past a
    /// half-circle) and `n < 2`.
    pub fn build_arc(length_m: f64, radius_m: f64, n: usize) -> Result<Self, GeometryError> {
        if !(length_m > 0.0) {
            return Err(GeometryError::NonPositiveLength(length_m));
        }
        if !(radius_m > 0.0) {
            return Err(GeometryError::NonPositiveRadius(radius_m));
        }
        if n < 2 {
            return Err(GeometryError::TooFewElements { min: 2, got: n });
        }
        let beta = length_m / (2.0 * radius_m);
        // Tiny headroom over pi/2 so that beta computed from e.g.
        // R = L/pi survives rounding.
        if beta > FRAC_PI_2 * (1.0 + 1e-12) {
            return Err(GeometryError::BetaOutOfRange(beta));
        }
        let alphas: Vec<f64> = (0..n)
            .map(|i| i as f64 * length_m / ((n - 1) as f64 * radius_m))
            .collect();
        let positions = alphas
            .iter()
            .map(|&alpha| {
                let gamma = beta - alpha;
                Vec3::new(
                    0.0,
                    radius_m * gamma.cos() - radius_m * beta.cos(),
                    radius_m * gamma.sin(),
                )
            })
            .collect();
        Ok(Self {
            length_m,
            num_elements: n,
            curvature: Curvature::Curved {
                radius_m,
                half_angle_rad: beta,
            },
            positions,
            central_angles: alphas,
        })
    }

    /// Builds the flat variant: `n` elements on the z-axis spanning
    /// `[-L/2, L/2]`, element 1 at `z = +L/2`.
    ///
    /// `n = 1` is allowed and places the single element at the origin.
    pub fn build_flat(length_m: f64, n: usize) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::TooFewElements { min: 1, got: n });
        }
        if n > 1 && !(length_m > 0.0) {
            return Err(GeometryError::NonPositiveLength(length_m));
        }
        let positions = if n == 1 {
            vec![Vec3::new(0.0, 0.0, 0.0)]
        } else {
            (0..n)
                .map(|i| {
                    let z = length_m / 2.0 - i as f64 * length_m / (n - 1) as f64;
                    Vec3::new(0.0, 0.0, z)
                })
                .collect()
        };
        Ok(Self {
            length_m: if n == 1 { 0.0 } else { length_m },
            num_elements: n,
            curvature: Curvature::Flat,
            positions,
            central_angles: Vec::new(),
        })
    }

    /// Flat aperture from an element spacing instead of a total length.
    pub fn build_flat_spacing(spacing_m: f64, n: usize) -> Result<Self, GeometryError> {
        if n == 1 {
            return Self::build_flat(0.0, 1);
        }
        if !(spacing_m > 0.0) {
            return Err(GeometryError::NonPositiveSpacing(spacing_m));
        }
        Self::build_flat(spacing_m * (n - 1) as f64, n)
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn length_m(&self) -> f64 {
        self.length_m
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    /// Half-angle `beta` (radians); zero for flat.
    pub fn half_angle(&self) -> f64 {
        self.curvature.half_angle()
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    /// Central angles `alpha_n`; empty slice for the flat variant.
    pub fn central_angles(&self) -> &[f64] {
        &self.central_angles
    }

    /// Surface angle `gamma_n = beta - alpha_n` of element `index`;
    /// zero everywhere on a flat aperture.
    pub fn element_gamma(&self, index: usize) -> Result<f64, GeometryError> {
        self.check_index(index)?;
        Ok(match self.curvature {
            Curvature::Flat => 0.0,
            Curvature::Curved { half_angle_rad, .. } => {
                half_angle_rad - self.central_angles[index]
            }
        })
    }

    /// Effective center of curvature `C = (0, -R cos(beta), 0)`.
    /// `None` for the flat variant.
    pub fn curvature_center(&self) -> Option<Vec3> {
        match self.curvature {
            Curvature::Flat => None,
            Curvature::Curved {
                radius_m,
                half_angle_rad,
            } => Some(Vec3::new(0.0, -radius_m * half_angle_rad.cos(), 0.0)),
        }
    }

    /// Outward unit normal at element `index`:
    /// `(0, cos(gamma_n), sin(gamma_n))`, the constant `(0, 1, 0)` when flat.
    pub fn outward_normal(&self, index: usize) -> Result<Vec3, GeometryError> {
        let gamma = self.element_gamma(index)?;
        Ok(Vec3::new(0.0, gamma.cos(), gamma.sin()))
    }

    /// Arc spacing between adjacent elements (meters).
    pub fn element_spacing(&self) -> f64 {
        if self.num_elements < 2 {
            0.0
        } else {
            self.length_m / (self.num_elements - 1) as f64
        }
    }

    fn check_index(&self, index: usize) -> Result<(), GeometryError> {
        if index >= self.num_elements {
            return Err(GeometryError::IndexOutOfRange {
                index,
                count: self.num_elements,
            });
        }
        Ok(())
    }
}

/// A 2D aperture: `M` identical 1D arcs stacked along the x-axis with
/// spacing `d_x`, row `m` (1-based) at `x = m * d_x`.
///
/// Elements are flattened row-major: index `= m_idx * N + n_idx` with the
/// row index outermost, so row-wise visibility replication is a
/// contiguous block operation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cyl2DGeometry {
    rows: usize,
    x_spacing_m: f64,
    arc: Arc1DGeometry,
    positions: Vec<Vec3>,
}

impl Cyl2DGeometry {
    /// Builds a curved 2D cylindrical section.
    ///
    /// With `strict` set, `d_x` must equal the arc spacing `L/(N-1)` to
    /// within 1e-12 relative (the uniform-sampling assumption).
    pub fn build_cyl(
        length_m: f64,
        radius_m: f64,
        n_arc: usize,
        m_rows: usize,
        x_spacing_m: f64,
        strict: bool,
    ) -> Result<Self, GeometryError> {
        let arc = Arc1DGeometry::build_arc(length_m, radius_m, n_arc)?;
        Self::from_arc(arc, m_rows, x_spacing_m, strict)
    }

    /// Builds the flat 2D variant: a regular grid in the x-z plane.
    pub fn build_flat(
        length_m: f64,
        n_arc: usize,
        m_rows: usize,
        x_spacing_m: f64,
        strict: bool,
    ) -> Result<Self, GeometryError> {
        let arc = Arc1DGeometry::build_flat(length_m, n_arc)?;
        Self::from_arc(arc, m_rows, x_spacing_m, strict)
    }

    fn from_arc(
        arc: Arc1DGeometry,
        m_rows: usize,
        x_spacing_m: f64,
        strict: bool,
    ) -> Result<Self, GeometryError> {
        if m_rows < 1 {
            return Err(GeometryError::TooFewElements { min: 1, got: 0 });
        }
        if !(x_spacing_m > 0.0) {
            return Err(GeometryError::NonPositiveSpacing(x_spacing_m));
        }
        let arc_spacing = arc.element_spacing();
        if strict && arc_spacing > 0.0 {
            let rel = ((x_spacing_m - arc_spacing) / arc_spacing).abs();
            if rel > 1e-12 {
                return Err(GeometryError::SpacingMismatch {
                    dx: x_spacing_m,
                    arc: arc_spacing,
                });
            }
        }
        let mut positions = Vec::with_capacity(m_rows * arc.num_elements());
        for m in 1..=m_rows {
            let x = m as f64 * x_spacing_m;
            for p in arc.positions() {
                positions.push(Vec3::new(x, p.y, p.z));
            }
        }
        Ok(Self {
            rows: m_rows,
            x_spacing_m,
            arc,
            positions,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Elements per row along the arc.
    pub fn cols(&self) -> usize {
        self.arc.num_elements()
    }

    pub fn num_elements(&self) -> usize {
        self.rows * self.arc.num_elements()
    }

    pub fn x_spacing_m(&self) -> f64 {
        self.x_spacing_m
    }

    /// The generating 1D arc (row at `x = d_x`, translated to `x = 0`).
    pub fn arc(&self) -> &Arc1DGeometry {
        &self.arc
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn half_angle(&self) -> f64 {
        self.arc.half_angle()
    }

    /// Arc angles `psi_n` (same role as `alpha_n` in 1D).
    pub fn arc_angles(&self) -> &[f64] {
        self.arc.central_angles()
    }

    /// Splits a flat element index into `(row, col)`.
    #[inline]
    pub fn unflatten(&self, index: usize) -> (usize, usize) {
        (index / self.cols(), index % self.cols())
    }
}

/// Complex array response with unit L2 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    pub entries: Vec<Complex64>,
}

impl SteeringVector {
    fn from_phases(phases: impl Iterator<Item = f64>, n: usize) -> Self {
        let scale = 1.0 / (n as f64).sqrt();
        let entries = phases
            .map(|ph| {
                let (s, c) = ph.sin_cos();
                Complex64::new(c * scale, s * scale)
            })
            .collect();
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn assert_unit_norm(&self) {
        debug_assert!((self.norm() - 1.0).abs() < UNIT_NORM_TOL);
    }
}

/// Either aperture kind, for code that is agnostic to dimensionality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Geometry {
    Arc1D(Arc1DGeometry),
    Cyl2D(Cyl2DGeometry),
}

impl Geometry {
    pub fn num_elements(&self) -> usize {
        match self {
            Geometry::Arc1D(g) => g.num_elements(),
            Geometry::Cyl2D(g) => g.num_elements(),
        }
    }

    pub fn positions(&self) -> &[Vec3] {
        match self {
            Geometry::Arc1D(g) => g.positions(),
            Geometry::Cyl2D(g) => g.positions(),
        }
    }

    /// Half-angle `beta` (radians); zero for flat variants.
    pub fn half_angle(&self) -> f64 {
        match self {
            Geometry::Arc1D(g) => g.half_angle(),
            Geometry::Cyl2D(g) => g.half_angle(),
        }
    }

    /// Exact Euclidean user-to-element distance.
    pub fn exact_distance(
        &self,
        index: usize,
        user: &UserLocation,
    ) -> Result<f64, GeometryError> {
        let positions = self.positions();
        let p = positions
            .get(index)
            .ok_or(GeometryError::IndexOutOfRange {
                index,
                count: positions.len(),
            })?;
        let d = user.cartesian().distance(p);
        if d < COINCIDENT_EPS_M {
            return Err(GeometryError::CoincidentUser { index });
        }
        Ok(d)
    }

    /// Exact spherical-wave steering vector referenced to the array
    /// origin: entry `n = exp(-j 2pi/lambda (r_un - r)) / sqrt(N)`.
    pub fn steering_exact(
        &self,
        user: &UserLocation,
        wavelength_m: f64,
    ) -> Result<SteeringVector, GeometryError> {
        let k = TAU / wavelength_m;
        let u = user.cartesian();
        let r = user.range_m;
        let positions = self.positions();
        for (i, p) in positions.iter().enumerate() {
            if u.distance(p) < COINCIDENT_EPS_M {
                return Err(GeometryError::CoincidentUser { index: i });
            }
        }
        let n = positions.len();
        Ok(SteeringVector::from_phases(
            positions.iter().map(|p| -k * (u.distance(p) - r)),
            n,
        ))
    }

    /// Far-field (plane-wave) steering vector: entry
    /// `n = exp(+j 2pi/lambda Delta_n) / sqrt(N)` where `Delta_n` is the
    /// path-length advance of element `n` along the arrival direction,
    /// i.e. the projection of its position onto the unit direction.
    pub fn steering_farfield(
        &self,
        zenith_rad: f64,
        azimuth_rad: f64,
        wavelength_m: f64,
    ) -> SteeringVector {
        let k = TAU / wavelength_m;
        let (st, ct) = zenith_rad.sin_cos();
        let (sp, cp) = azimuth_rad.sin_cos();
        let dir = Vec3::new(st * cp, st * sp, ct);
        let positions = self.positions();
        let n = positions.len();
        SteeringVector::from_phases(positions.iter().map(|p| k * dir.dot(p)), n)
    }

    /// Serializable document with positions, normals, and parameters,
    /// used by golden-file tests and run manifests.
    pub fn to_document(&self) -> GeometryDocument {
        match self {
            Geometry::Arc1D(g) => GeometryDocument {
                kind: "arc-1d".into(),
                num_elements: g.num_elements(),
                rows: 1,
                length_m: g.length_m(),
                x_spacing_m: None,
                curvature: g.curvature(),
                positions: g.positions().to_vec(),
                normals: (0..g.num_elements())
                    .map(|i| g.outward_normal(i).expect("valid index"))
                    .collect(),
            },
            Geometry::Cyl2D(g) => GeometryDocument {
                kind: "cyl-2d".into(),
                num_elements: g.num_elements(),
                rows: g.rows(),
                length_m: g.arc().length_m(),
                x_spacing_m: Some(g.x_spacing_m()),
                curvature: g.arc().curvature(),
                positions: g.positions().to_vec(),
                normals: (0..g.num_elements())
                    .map(|i| {
                        let (_, col) = g.unflatten(i);
                        g.arc().outward_normal(col).expect("valid index")
                    })
                    .collect(),
            },
        }
    }
}

/// JSON-facing geometry snapshot.
#[derive(Debug, Clone, Serialize)]
pub struct GeometryDocument {
    pub kind: String,
    pub num_elements: usize,
    pub rows: usize,
    pub length_m: f64,
    pub x_spacing_m: Option<f64>,
    pub curvature: Curvature,
    pub positions: Vec<Vec3>,
    pub normals: Vec<Vec3>,
}

/// A curvature-independent description of an aperture, used by sweeps
/// that rebuild the geometry for each bend angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApertureSpec {
    pub length_m: f64,
    pub n_arc: usize,
    /// `Some((rows, x_spacing_m))` for 2D apertures.
    pub rows: Option<(usize, f64)>,
}

impl ApertureSpec {
    pub fn one_d(length_m: f64, n_arc: usize) -> Self {
        Self {
            length_m,
            n_arc,
            rows: None,
        }
    }

    pub fn two_d(length_m: f64, n_arc: usize, rows: usize, x_spacing_m: f64) -> Self {
        Self {
            length_m,
            n_arc,
            rows: Some((rows, x_spacing_m)),
        }
    }

    /// Builds the geometry at bend angle `beta` (radians); `beta = 0`
    /// produces the flat variant. The curvature radius follows from
    /// `R = L / (2 beta)`.
    pub fn build(&self, beta_rad: f64) -> Result<Geometry, GeometryError> {
        if beta_rad < 0.0 || beta_rad > FRAC_PI_2 * (1.0 + 1e-12) {
            return Err(GeometryError::BetaOutOfRange(beta_rad));
        }
        match self.rows {
            None => {
                if beta_rad == 0.0 {
                    Ok(Geometry::Arc1D(Arc1DGeometry::build_flat(
                        self.length_m,
                        self.n_arc,
                    )?))
                } else {
                    let radius = self.length_m / (2.0 * beta_rad);
                    Ok(Geometry::Arc1D(Arc1DGeometry::build_arc(
                        self.length_m,
                        radius,
                        self.n_arc,
                    )?))
                }
            }
            Some((rows, dx)) => {
                if beta_rad == 0.0 {
                    Ok(Geometry::Cyl2D(Cyl2DGeometry::build_flat(
                        self.length_m,
                        self.n_arc,
                        rows,
                        dx,
                        false,
                    )?))
                } else {
                    let radius = self.length_m / (2.0 * beta_rad);
                    Ok(Geometry::Cyl2D(Cyl2DGeometry::build_cyl(
                        self.length_m,
                        radius,
                        self.n_arc,
                        rows,
                        dx,
                        false,
                    )?))
                }
            }
        }
    }
}
