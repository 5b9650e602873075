use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Roc,
    Gains,
    Lift,
    Qini,
    Liftup,
    Croc,
}

impl CurveKind {
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::Roc => "roc",
            CurveKind::Gains => "gains",
            CurveKind::Lift => "lift",
            CurveKind::Qini => "qini",
            CurveKind::Liftup => "liftup",
            CurveKind::Croc => "croc",
        }
    }

    pub fn is_causal(&self) -> bool {
        matches!(self, CurveKind::Qini | CurveKind::Liftup | CurveKind::Croc)
    }

    pub fn parse(name: &str) -> Option<Self> {
        [
            CurveKind::Roc,
            CurveKind::Gains,
            CurveKind::Lift,
            CurveKind::Qini,
            CurveKind::Liftup,
            CurveKind::Croc,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }
}

/// One operating point: the threshold that produced it and its coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub threshold: f64,
    pub x: f64,
    pub y: f64,
}

/// Points sorted by ascending `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSeries {
    pub kind: CurveKind,
    pub points: Vec<CurvePoint>,
}

impl CurveSeries {
    /// Trapezoidal area under the points.
    pub fn area(&self) -> f64 {
        trapezoid(&self.points)
    }

    /// First point at `x == target` (exact match).
    pub fn at_x(&self, target: f64) -> Option<&CurvePoint> {
        self.points.iter().find(|p| p.x == target)
    }
}

/// A rate-indexed metric (lift, liftup) after snapping the requested rate up
/// to the nearest achievable operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateValue {
    pub value: f64,
    pub requested_rate: f64,
    pub realized_rate: f64,
    pub threshold: f64,
}

pub(crate) fn trapezoid(points: &[CurvePoint]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].x - w[0].x) * (w[0].y + w[1].y) / 2.0)
        .sum()
}

/// Index of the operating point with the smallest rate `>= requested`, given
/// points sorted by ascending rate.
pub(crate) fn snap_up(points: &[CurvePoint], requested: f64) -> Option<usize> {
    let idx = points.partition_point(|p| p.x < requested);
    (idx < points.len()).then_some(idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> CurvePoint {
        CurvePoint { threshold: 0.0, x, y }
    }

    #[test]
    fn trapezoid_unit_square_diagonal() {
        assert_eq!(trapezoid(&[pt(0.0, 0.0), pt(1.0, 1.0)]), 0.5);
        assert_eq!(trapezoid(&[pt(0.0, 0.0)]), 0.0);
    }

    #[test]
    fn snapping() {
        let pts = [pt(0.0, 0.0), pt(0.25, 1.0), pt(0.5, 1.0), pt(1.0, 1.0)];
        assert_eq!(snap_up(&pts, 0.25), Some(1));
        assert_eq!(snap_up(&pts, 0.3), Some(2));
        assert_eq!(snap_up(&pts, 1.0), Some(3));
        assert_eq!(snap_up(&pts, 1.1), None);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ["roc", "gains", "lift", "qini", "liftup", "croc"] {
            assert_eq!(CurveKind::parse(k).unwrap().name(), k);
        }
        assert!(CurveKind::parse("pr").is_none());
    }
}
