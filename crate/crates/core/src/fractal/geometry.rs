use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered plane points, either joined by segments or taken as a point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<[f64; 2]>,
    pub connected: bool,
}

/// Axis-aligned bounding box `[min_x, min_y, max_x, max_y]`.
pub type BBox = [f64; 4];

impl Polyline {
    pub fn new(points: Vec<[f64; 2]>) -> Self {
        Polyline {
            points,
            connected: true,
        }
    }

    pub fn point_set(points: Vec<[f64; 2]>) -> Self {
        Polyline {
            points,
            connected: false,
        }
    }

    /// Reads `x,y` rows; a non-numeric first row is taken as a header.
    pub fn from_csv(text: &str, connected: bool) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut points = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::invalid(format!("polyline CSV: {e}")))?;
            let parsed: std::result::Result<Vec<f64>, _> =
                rec.iter().take(2).map(str::parse::<f64>).collect();
            match parsed {
                Ok(v) if v.len() == 2 => points.push([v[0], v[1]]),
                _ if i == 0 => continue,
                _ => return Err(Error::invalid(format!("polyline CSV: bad row {}", i + 1))),
            }
        }
        Ok(Polyline { points, connected })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for p in &self.points {
            out.push_str(&format!("{:e},{:e}\n", p[0], p[1]));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::invalid("empty polyline"));
        }
        if self
            .points
            .iter()
            .any(|p| !p[0].is_finite() || !p[1].is_finite())
        {
            return Err(Error::invalid("polyline has non-finite coordinates"));
        }
        Ok(())
    }

    pub fn bbox(&self) -> BBox {
        let mut b = [
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        ];
        for p in &self.points {
            b[0] = b[0].min(p[0]);
            b[1] = b[1].min(p[1]);
            b[2] = b[2].max(p[0]);
            b[3] = b[3].max(p[1]);
        }
        b
    }

    pub fn diameter(&self) -> f64 {
        let b = self.bbox();
        (b[2] - b[0]).hypot(b[3] - b[1])
    }

    pub fn length(&self) -> f64 {
        if !self.connected {
            return 0.0;
        }
        self.points
            .windows(2)
            .map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]))
            .sum()
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Polyline {
            points: self
                .points
                .iter()
                .map(|p| [lambda * p[0], lambda * p[1]])
                .collect(),
            connected: self.connected,
        }
    }

    /// Affine copy with the bounding box mapped onto `[0, 1]²`. Box
    /// dimension is invariant under this map, and for strongly anisotropic
    /// graphs it puts both axes on the same footing.
    pub fn normalized(&self) -> Self {
        let b = self.bbox();
        let sx = if b[2] > b[0] {
            1.0 / (b[2] - b[0])
        } else {
            1.0
        };
        let sy = if b[3] > b[1] {
            1.0 / (b[3] - b[1])
        } else {
            1.0
        };
        Polyline {
            points: self
                .points
                .iter()
                .map(|p| [(p[0] - b[0]) * sx, (p[1] - b[1]) * sy])
                .collect(),
            connected: self.connected,
        }
    }

    /// Segments, or degenerate segments for a point set.
    pub fn segments(&self) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
        let connected = self.connected;
        let n = self.points.len();
        let count = if connected && n >= 2 { n - 1 } else { n };
        (0..count).map(move |i| {
            if connected && n >= 2 {
                (self.points[i], self.points[i + 1])
            } else {
                (self.points[i], self.points[i])
            }
        })
    }

    /// Greedy chord simplification: from each kept point the chord is
    /// extended while every skipped point lies within `tol` of it, looking at
    /// most [`SIMPLIFY_WINDOW`] points ahead. Linear in the number of points.
    pub fn simplified(&self, tol: f64) -> Self {
        if !self.connected || self.points.len() < 3 || !(tol > 0.0) {
            return self.clone();
        }
        let pts = &self.points;
        let n = pts.len();
        let mut out = vec![pts[0]];
        let mut anchor = 0;
        while anchor < n - 1 {
            let mut next = anchor + 1;
            let limit = (anchor + SIMPLIFY_WINDOW).min(n - 1);
            for j in anchor + 2..=limit {
                if (anchor + 1..j)
                    .all(|k| point_segment_distance(pts[k], pts[anchor], pts[j]) <= tol)
                {
                    next = j;
                } else {
                    break;
                }
            }
            out.push(pts[next]);
            anchor = next;
        }
        Polyline {
            points: out,
            connected: true,
        }
    }
}

/// Look-ahead of [`Polyline::simplified`].
pub const SIMPLIFY_WINDOW: usize = 64;

pub fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Decreasing geometric sequence of scales.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonGrid {
    pub eps: Vec<f64>,
}

impl EpsilonGrid {
    /// At least 8 strictly decreasing values spanning at least 1.5 decades.
    pub fn new(eps: Vec<f64>) -> Result<Self> {
        if eps.len() < 8 {
            return Err(Error::invalid("epsilon grid needs at least 8 values"));
        }
        if eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) || eps.windows(2).any(|w| w[1] >= w[0])
        {
            return Err(Error::invalid(
                "epsilons must be positive and strictly decreasing",
            ));
        }
        if (eps[0] / eps[eps.len() - 1]).log10() < 1.5 - 1e-12 {
            return Err(Error::invalid(
                "epsilon grid must span at least 1.5 decades",
            ));
        }
        Ok(EpsilonGrid { eps })
    }

    pub fn geometric(eps_max: f64, eps_min: f64, count: usize) -> Result<Self> {
        if count < 2 || !(eps_max > eps_min && eps_min > 0.0) {
            return Err(Error::invalid("need eps_max > eps_min > 0 and count ≥ 2"));
        }
        let r = (eps_min / eps_max).powf(1.0 / (count - 1) as f64);
        let mut eps: Vec<f64> = (0..count).map(|i| eps_max * r.powi(i as i32)).collect();
        eps[count - 1] = eps_min;
        Self::new(eps)
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn min(&self) -> f64 {
        *self.eps.last().unwrap()
    }

    pub fn max(&self) -> f64 {
        self.eps[0]
    }
}
