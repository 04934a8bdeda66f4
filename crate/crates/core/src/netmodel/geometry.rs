use std::f64::consts::PI;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Cartesian position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn horizontal_distance(&self, other: &Point3) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

pub fn distance(a: &Point3, b: &Point3) -> f64 {
    let (dx, dy, dz) = (a.x - b.x, a.y - b.y, a.z - b.z);
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Draws `count` points uniformly over the horizontal disk of `radius`
/// around `center`; every point keeps the center's height.
///
/// Each point consumes exactly two uniforms, so the first `k` points of a
/// larger draw equal a draw of `k` points from the same generator state.
pub fn sample_relay_positions<R: Rng + ?Sized>(
    center: Point3,
    radius: f64,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Point3>> {
    if !(radius >= 0.0) || !radius.is_finite() {
        return Err(Error::invalid(format!("relay disk radius must be finite and >= 0, got {radius}")));
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u: f64 = rng.random();
        let angle = 2.0 * PI * rng.random::<f64>();
        // sqrt for an area-uniform radius
        let r = (radius * u.sqrt()).min(radius);
        let p = Point3::new(center.x + r * angle.cos(), center.y + r * angle.sin(), center.z);
        // cos/sin rounding can land a point one ulp outside the rim
        if p.horizontal_distance(&center) > radius {
            out.push(Point3::new(center.x + r, center.y, center.z));
        } else {
            out.push(p);
        }
    }
    Ok(out)
}

/// Positions of every node in the network.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkTopology {
    pub source_pos: Point3,
    pub dest_pos: Point3,
    pub irs_pos: Point3,
    pub relay_pos: Vec<Point3>,
    pub relay_disk_center: Point3,
    pub relay_disk_radius: f64,
}

impl NetworkTopology {
    pub const DEFAULT_SOURCE: Point3 = Point3::new(20.0, -10.0, 2.0);
    pub const DEFAULT_IRS: Point3 = Point3::new(0.0, 0.0, 1.0);
    pub const DEFAULT_DEST: Point3 = Point3::new(20.0, 20.0, 1.0);
    pub const DEFAULT_DISK_CENTER: Point3 = Point3::new(10.0, 10.0, 0.0);
    pub const DEFAULT_DISK_RADIUS: f64 = 10.0;

    /// Default layout with relays drawn uniformly from the disk.
    pub fn with_random_relays<R: Rng + ?Sized>(
        disk_center: Point3,
        disk_radius: f64,
        num_relays: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let relay_pos = sample_relay_positions(disk_center, disk_radius, num_relays, rng)?;
        let topo = NetworkTopology {
            source_pos: Self::DEFAULT_SOURCE,
            dest_pos: Self::DEFAULT_DEST,
            irs_pos: Self::DEFAULT_IRS,
            relay_pos,
            relay_disk_center: disk_center,
            relay_disk_radius: disk_radius,
        };
        topo.validate()?;
        Ok(topo)
    }

    pub fn num_relays(&self) -> usize {
        self.relay_pos.len()
    }

    pub fn validate(&self) -> Result<()> {
        let fixed = [self.source_pos, self.dest_pos, self.irs_pos, self.relay_disk_center];
        if fixed.iter().chain(self.relay_pos.iter()).any(|p| !p.is_finite()) {
            return Err(Error::invalid("topology contains a non-finite coordinate"));
        }
        if !(self.relay_disk_radius >= 0.0) {
            return Err(Error::invalid("relay disk radius must be >= 0"));
        }
        for (i, p) in self.relay_pos.iter().enumerate() {
            if p.horizontal_distance(&self.relay_disk_center) > self.relay_disk_radius {
                return Err(Error::invalid(format!("relay {i} at {p} lies outside the relay disk")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::StreamKey;

    #[test]
    fn distance_examples() {
        let o = Point3::default();
        assert_eq!(distance(&o, &o), 0.0);
        assert_eq!(distance(&Point3::new(3.0, 4.0, 0.0), &o), 5.0);
        let d = distance(&Point3::new(20.0, -10.0, 2.0), &Point3::new(0.0, 0.0, 1.0));
        assert!((d - 501f64.sqrt()).abs() < 1e-12);
        assert!((d - 22.383).abs() < 5e-4);
    }

    #[test]
    fn degenerate_and_empty_disk() {
        let c = Point3::new(10.0, 10.0, 0.0);
        let mut rng = StreamKey::new(1).rng();
        assert_eq!(sample_relay_positions(c, 0.0, 5, &mut rng).unwrap(), vec![c; 5]);
        assert!(sample_relay_positions(c, 10.0, 0, &mut rng).unwrap().is_empty());
        assert!(matches!(sample_relay_positions(c, -1.0, 3, &mut rng), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn uniform_disk_mean_radius() {
        // E[r] = 2R/3 for an area-uniform disk
        let c = Point3::new(10.0, 10.0, 0.0);
        let mut rng = StreamKey::new(2024).rng();
        let pts = sample_relay_positions(c, 10.0, 1_000_000, &mut rng).unwrap();
        let mean = pts.iter().map(|p| p.horizontal_distance(&c)).sum::<f64>() / pts.len() as f64;
        assert!((mean - 20.0 / 3.0).abs() < 0.02, "mean radius {mean}");
        assert!(pts.iter().all(|p| p.horizontal_distance(&c) <= 10.0 && p.z == 0.0));
    }

    #[test]
    fn prefix_consistent_and_deterministic() {
        let c = Point3::new(10.0, 10.0, 0.0);
        let a = sample_relay_positions(c, 10.0, 30, &mut StreamKey::new(5).rng()).unwrap();
        let b = sample_relay_positions(c, 10.0, 5, &mut StreamKey::new(5).rng()).unwrap();
        assert_eq!(&a[..5], &b[..]);
    }

    #[test]
    fn validate_rejects_relay_outside_disk() {
        let mut topo = NetworkTopology::with_random_relays(
            NetworkTopology::DEFAULT_DISK_CENTER,
            10.0,
            3,
            &mut StreamKey::new(3).rng(),
        )
        .unwrap();
        topo.relay_pos[1] = Point3::new(40.0, 40.0, 0.0);
        assert!(topo.validate().is_err());
        topo.relay_pos[1] = Point3::new(f64::NAN, 0.0, 0.0);
        assert!(topo.validate().is_err());
    }
}
