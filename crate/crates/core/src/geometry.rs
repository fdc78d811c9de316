//! Rotation algebra and pinhole camera conversions.
//!
//! Conventions used throughout the crate:
//!
//! * Euler angles are `[psi, theta, phi]` — rotations about the z, y and x
//!   axes respectively, composed in ZYX order (yaw, then pitch, then roll).
//! * [`quaternion_to_rotation`] produces the passive (world-to-body) matrix;
//!   its transpose is the active rotation. Every consumer in this crate uses
//!   the same convention, which is what matters for prediction consistency.
//! * All angles are radians, all reals are `f64`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("quaternion norm too small to normalize ({norm})")]
    ZeroNormQuaternion { norm: f64 },
    #[error("point is behind the camera (z = {z})")]
    BehindCamera { z: f64 },
    #[error("invalid depth (d = {d})")]
    InvalidDepth { d: f64 },
    #[error("invalid camera intrinsics: {0}")]
    InvalidIntrinsics(&'static str),
}

/// 3-vector. Units depend on context: meters, m/s², rad or rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn scale(self, s: f64) -> Self {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Euler angles about the z (`psi`), y (`theta`) and x (`phi`) axes.
///
/// Components are not wrapped into `(-pi, pi]`: angle differences come from
/// short inter-frame intervals and wrapping would corrupt multi-turn logs.
/// Per-frame rotations beyond pi are unsupported.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerAngles {
    /// Rotation about the z axis (yaw), radians.
    pub psi: f64,
    /// Rotation about the y axis (pitch), radians.
    pub theta: f64,
    /// Rotation about the x axis (roll), radians.
    pub phi: f64,
}

impl EulerAngles {
    pub const ZERO: EulerAngles = EulerAngles { psi: 0.0, theta: 0.0, phi: 0.0 };

    pub fn new(psi: f64, theta: f64, phi: f64) -> Self {
        EulerAngles { psi, theta, phi }
    }

    pub fn is_finite(self) -> bool {
        self.psi.is_finite() && self.theta.is_finite() && self.phi.is_finite()
    }
}

impl std::ops::Add for EulerAngles {
    type Output = EulerAngles;
    fn add(self, rhs: EulerAngles) -> EulerAngles {
        EulerAngles::new(self.psi + rhs.psi, self.theta + rhs.theta, self.phi + rhs.phi)
    }
}

impl std::ops::Sub for EulerAngles {
    type Output = EulerAngles;
    fn sub(self, rhs: EulerAngles) -> EulerAngles {
        EulerAngles::new(self.psi - rhs.psi, self.theta - rhs.theta, self.phi - rhs.phi)
    }
}

/// Unit quaternion `(w, x, y, z)`.
///
/// Construction renormalizes, so a value of this type always has unit norm
/// within 1e-9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Builds a unit quaternion, normalizing the components.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self, GeometryError> {
        if !(w.is_finite() && x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(GeometryError::NonFinite("quaternion component"));
        }
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        if norm < 1e-12 {
            return Err(GeometryError::ZeroNormQuaternion { norm });
        }
        Ok(Quaternion { w: w / norm, x: x / norm, y: y / norm, z: z / norm })
    }

    pub fn norm(self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// 3x3 rotation matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix {
    m: [[f64; 3]; 3],
}

impl RotationMatrix {
    pub const IDENTITY: RotationMatrix = RotationMatrix {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    pub fn from_rows(m: [[f64; 3]; 3]) -> Self {
        RotationMatrix { m }
    }

    pub fn rows(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.m[row][col]
    }

    pub fn transpose(&self) -> RotationMatrix {
        let m = &self.m;
        RotationMatrix::from_rows([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// Pinhole camera parameters. `s` scales metric depth into stored depth
/// units (`d = z * s`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub s: f64,
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64, s: f64) -> Result<Self, GeometryError> {
        if !(fx.is_finite() && fy.is_finite() && cx.is_finite() && cy.is_finite() && s.is_finite()) {
            return Err(GeometryError::NonFinite("camera intrinsics"));
        }
        if fx <= 0.0 || fy <= 0.0 {
            return Err(GeometryError::InvalidIntrinsics("focal lengths must be positive"));
        }
        if s <= 0.0 {
            return Err(GeometryError::InvalidIntrinsics("depth scale must be positive"));
        }
        Ok(CameraIntrinsics { fx, fy, cx, cy, s })
    }
}

/// Frame coordinate `(u, v)` in pixels plus stored depth `d`.
/// `d = 0` denotes invalid depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelPoint {
    pub u: f64,
    pub v: f64,
    pub d: f64,
}

impl PixelPoint {
    pub fn new(u: f64, v: f64, d: f64) -> Self {
        PixelPoint { u, v, d }
    }
}

/// Converts ZYX Euler angles to a unit quaternion.
///
/// Component formulas (with `c* = cos(*/2)`, `s* = sin(*/2)`):
///
/// ```text
/// w = c_phi c_theta c_psi + s_phi s_theta s_psi
/// x = s_phi c_theta c_psi - c_phi s_theta s_psi
/// y = c_phi s_theta c_psi + s_phi c_theta s_psi
/// z = c_phi c_theta s_psi - s_phi s_theta c_psi
/// ```
///
/// This is the Hamilton product qz(psi) * qy(theta) * qx(phi); the result is
/// analytically unit-norm and renormalized defensively.
pub fn euler_to_quaternion(angles: EulerAngles) -> Result<Quaternion, GeometryError> {
    if !angles.is_finite() {
        return Err(GeometryError::NonFinite("euler angles"));
    }
    let (s_psi, c_psi) = (angles.psi / 2.0).sin_cos();
    let (s_theta, c_theta) = (angles.theta / 2.0).sin_cos();
    let (s_phi, c_phi) = (angles.phi / 2.0).sin_cos();

    Quaternion::new(
        c_phi * c_theta * c_psi + s_phi * s_theta * s_psi,
        s_phi * c_theta * c_psi - c_phi * s_theta * s_psi,
        c_phi * s_theta * c_psi + s_phi * c_theta * s_psi,
        c_phi * c_theta * s_psi - s_phi * s_theta * c_psi,
    )
}

/// Converts a unit quaternion to the passive (world-to-body) rotation matrix:
///
/// ```text
/// | 1-2y²-2z²   2xy+2wz    2xz-2wy  |
/// | 2xy-2wz    1-2x²-2z²   2yz+2wx  |
/// | 2xz+2wy     2yz-2wx   1-2x²-2y² |
/// ```
///
/// The transpose is the usual active rotation.
pub fn quaternion_to_rotation(q: Quaternion) -> RotationMatrix {
    let (w, x, y, z) = (q.w, q.x, q.y, q.z);
    RotationMatrix::from_rows([
        [
            1.0 - 2.0 * y * y - 2.0 * z * z,
            2.0 * x * y + 2.0 * w * z,
            2.0 * x * z - 2.0 * w * y,
        ],
        [
            2.0 * x * y - 2.0 * w * z,
            1.0 - 2.0 * x * x - 2.0 * z * z,
            2.0 * y * z + 2.0 * w * x,
        ],
        [
            2.0 * x * z + 2.0 * w * y,
            2.0 * y * z - 2.0 * w * x,
            1.0 - 2.0 * x * x - 2.0 * y * y,
        ],
    ])
}

/// Pinhole projection of a camera-space point to frame coordinates:
/// `u = x*fx/z + cx`, `v = y*fy/z + cy`, `d = z*s`.
pub fn project(point: Vec3, k: &CameraIntrinsics) -> Result<PixelPoint, GeometryError> {
    if !point.is_finite() {
        return Err(GeometryError::NonFinite("point"));
    }
    if point.z <= 0.0 {
        return Err(GeometryError::BehindCamera { z: point.z });
    }
    Ok(PixelPoint::new(
        point.x * k.fx / point.z + k.cx,
        point.y * k.fy / point.z + k.cy,
        point.z * k.s,
    ))
}

/// Inverse pinhole projection: `z = d/s`, `x = (u-cx)*z/fx`, `y = (v-cy)*z/fy`.
pub fn backproject(p: PixelPoint, k: &CameraIntrinsics) -> Result<Vec3, GeometryError> {
    if !(p.u.is_finite() && p.v.is_finite() && p.d.is_finite()) {
        return Err(GeometryError::NonFinite("pixel point"));
    }
    if p.d <= 0.0 {
        return Err(GeometryError::InvalidDepth { d: p.d });
    }
    let z = p.d / k.s;
    Ok(Vec3::new((p.u - k.cx) * z / k.fx, (p.v - k.cy) * z / k.fy, z))
}

/// Rigid transform `rot * p + trans`.
pub fn transform_point(p: Vec3, rot: &RotationMatrix, trans: Vec3) -> Vec3 {
    rot.apply(p) + trans
}
