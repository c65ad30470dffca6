//! Triangle centers: center functions, trilinear coordinates, and derived
//! triangles, evaluated on orbit triangles (or any triangle).

pub mod expr;

use crate::billiard::OrbitTriangle;
use crate::Point;
use expr::{Expr, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// Embedded center-definition data (also shipped as `data/centers.txt`).
pub const CENTERS_DATA: &str = include_str!("../../data/centers.txt");

#[derive(Clone, Debug, PartialEq)]
pub enum CenterError {
    /// Unknown id requested.
    UnknownCenter(String),
    /// Cyclic evaluation of the center function divided by zero / overflowed.
    PoleAtConfiguration { id: String },
    /// Trilinear-to-Cartesian denominator vanished (point on the line at
    /// infinity for this triangle).
    LineAtInfinity,
    /// Data-file syntax error.
    Data(String),
}

impl fmt::Display for CenterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterError::UnknownCenter(id) => write!(f, "unknown center {id}"),
            CenterError::PoleAtConfiguration { id } => {
                write!(f, "center function {id} has a pole at this configuration")
            }
            CenterError::LineAtInfinity => write!(f, "trilinear denominator vanished"),
            CenterError::Data(m) => write!(f, "center data: {m}"),
        }
    }
}

impl std::error::Error for CenterError {}

/// Provenance of a center definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    PaperTable,
    EtcData,
}

/// How the center function is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterKind {
    /// Rational function of the sidelengths.
    Rational,
    /// Involves the triangle area (Heron-irrational) or a square root.
    Heron,
}

/// A triangle-center definition: identifier plus center function
/// h(s1, s2, s3[, A]).
#[derive(Clone, Debug)]
pub struct CenterSpec {
    pub id: String,
    pub name: String,
    pub kind: CenterKind,
    pub source: Source,
    pub h: Expr,
}

/// Homogeneous signed distances to the sides; only ratios are meaningful.
#[derive(Clone, Copy, Debug)]
pub struct TrilinearTriple {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl CenterSpec {
    /// Cyclic evaluation (p, q, r) = (h(s1,s2,s3), h(s2,s3,s1), h(s3,s1,s2)).
    pub fn trilinears(&self, s1: f64, s2: f64, s3: f64, area: f64) -> Result<TrilinearTriple, CenterError> {
        let p = self.h.eval(&s1, &s2, &s3, &area);
        let q = self.h.eval(&s2, &s3, &s1, &area);
        let r = self.h.eval(&s3, &s1, &s2, &area);
        if p.is_bad() || q.is_bad() || r.is_bad() || (p == 0.0 && q == 0.0 && r == 0.0) {
            return Err(CenterError::PoleAtConfiguration { id: self.id.clone() });
        }
        Ok(TrilinearTriple { p, q, r })
    }

    /// Cartesian position of this center for an orbit triangle.
    pub fn position(&self, orbit: &OrbitTriangle) -> Result<Point, CenterError> {
        let trip = self.trilinears(orbit.s1, orbit.s2, orbit.s3, orbit.area())?;
        trilinear_to_cartesian(orbit, trip)
    }
}

/// Convert trilinears to Cartesian coordinates:
/// X = (p s1 P1 + q s2 P2 + r s3 P3) / (p s1 + q s2 + r s3).
pub fn trilinear_to_cartesian(tri: &OrbitTriangle, t: TrilinearTriple) -> Result<Point, CenterError> {
    let w1 = t.p * tri.s1;
    let w2 = t.q * tri.s2;
    let w3 = t.r * tri.s3;
    let den = w1 + w2 + w3;
    let scale = w1.abs() + w2.abs() + w3.abs();
    if !den.is_finite() || den.abs() <= 1e-9 * scale {
        return Err(CenterError::LineAtInfinity);
    }
    Ok(Point::new(
        (w1 * tri.p1.x + w2 * tri.p2.x + w3 * tri.p3.x) / den,
        (w1 * tri.p1.y + w2 * tri.p2.y + w3 * tri.p3.y) / den,
    ))
}

/// A derived triangle given by a 3x3 matrix of trilinear expressions.
#[derive(Clone, Debug)]
pub struct DerivedTriangle {
    pub name: String,
    pub rows: [[Expr; 3]; 3],
}

impl DerivedTriangle {
    /// Cartesian position of the `row`-th vertex (0-based) for an orbit.
    pub fn vertex(&self, row: usize, orbit: &OrbitTriangle) -> Result<Point, CenterError> {
        let area = orbit.area();
        let ev = |e: &Expr| e.eval(&orbit.s1, &orbit.s2, &orbit.s3, &area);
        let p = ev(&self.rows[row][0]);
        let q = ev(&self.rows[row][1]);
        let r = ev(&self.rows[row][2]);
        if p.is_bad() || q.is_bad() || r.is_bad() {
            return Err(CenterError::PoleAtConfiguration {
                id: format!("{}[{}]", self.name, row + 1),
            });
        }
        trilinear_to_cartesian(orbit, TrilinearTriple { p, q, r })
    }
}

/// The shipped set of center definitions and derived-triangle matrices.
#[derive(Clone, Debug)]
pub struct CenterSet {
    centers: BTreeMap<u32, CenterSpec>,
    derived: BTreeMap<String, DerivedTriangle>,
}

impl CenterSet {
    /// Parse the embedded data file.
    pub fn builtin() -> Self {
        Self::parse(CENTERS_DATA).expect("embedded center data must parse")
    }

    /// Parse center definitions from the key/value record format.
    pub fn parse(data: &str) -> Result<Self, CenterError> {
        enum Block {
            None,
            Center(BTreeMap<String, String>),
            Derived(BTreeMap<String, String>),
        }
        let mut centers = BTreeMap::new();
        let mut derived = BTreeMap::new();
        let mut block = Block::None;

        fn flush(
            block: &mut Block,
            centers: &mut BTreeMap<u32, CenterSpec>,
            derived: &mut BTreeMap<String, DerivedTriangle>,
        ) -> Result<(), CenterError> {
            let bad = |m: &str| CenterError::Data(m.to_string());
            match std::mem::replace(block, Block::None) {
                Block::None => {}
                Block::Center(kv) => {
                    let id = kv.get("id").ok_or_else(|| bad("center without id"))?.clone();
                    let num: u32 = id
                        .strip_prefix('X')
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad(&format!("bad center id {id}")))?;
                    let h = expr::parse(kv.get("h").ok_or_else(|| bad("center without h"))?)
                        .map_err(|e| bad(&format!("{id}: {e}")))?;
                    let kind = match kv.get("kind").map(String::as_str) {
                        Some("rational") => CenterKind::Rational,
                        Some("heron") => CenterKind::Heron,
                        other => return Err(bad(&format!("{id}: bad kind {other:?}"))),
                    };
                    let source = match kv.get("source").map(String::as_str) {
                        Some("paper-table") => Source::PaperTable,
                        Some("etc-data") => Source::EtcData,
                        other => return Err(bad(&format!("{id}: bad source {other:?}"))),
                    };
                    let name = kv.get("name").cloned().unwrap_or_default();
                    centers.insert(
                        num,
                        CenterSpec {
                            id,
                            name,
                            kind,
                            source,
                            h,
                        },
                    );
                }
                Block::Derived(kv) => {
                    let name = kv.get("name").ok_or_else(|| bad("derived without name"))?.clone();
                    let mut rows: Vec<[Expr; 3]> = Vec::new();
                    for rk in ["row1", "row2", "row3"] {
                        let spec = kv
                            .get(rk)
                            .ok_or_else(|| bad(&format!("{name}: missing {rk}")))?;
                        let cells: Vec<&str> = spec.split('|').map(str::trim).collect();
                        if cells.len() != 3 {
                            return Err(bad(&format!("{name}: {rk} needs 3 cells")));
                        }
                        let parse_cell = |c: &str| {
                            expr::parse(c).map_err(|e| bad(&format!("{name}/{rk}: {e}")))
                        };
                        rows.push([parse_cell(cells[0])?, parse_cell(cells[1])?, parse_cell(cells[2])?]);
                    }
                    let rows: [[Expr; 3]; 3] = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
                    derived.insert(name.clone(), DerivedTriangle { name, rows });
                }
            }
            Ok(())
        }

        for (ln, raw) in data.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "[center]" {
                flush(&mut block, &mut centers, &mut derived)?;
                block = Block::Center(BTreeMap::new());
            } else if line == "[derived]" {
                flush(&mut block, &mut centers, &mut derived)?;
                block = Block::Derived(BTreeMap::new());
            } else if let Some((k, v)) = line.split_once('=') {
                let (k, v) = (k.trim().to_string(), v.trim().to_string());
                match &mut block {
                    Block::Center(kv) | Block::Derived(kv) => {
                        kv.insert(k, v);
                    }
                    Block::None => {
                        return Err(CenterError::Data(format!("line {}: key outside block", ln + 1)))
                    }
                }
            } else {
                return Err(CenterError::Data(format!("line {}: unparsable", ln + 1)));
            }
        }
        flush(&mut block, &mut centers, &mut derived)?;
        Ok(CenterSet { centers, derived })
    }

    pub fn get(&self, num: u32) -> Result<&CenterSpec, CenterError> {
        self.centers
            .get(&num)
            .ok_or_else(|| CenterError::UnknownCenter(format!("X{num}")))
    }

    pub fn derived(&self, name: &str) -> Result<&DerivedTriangle, CenterError> {
        self.derived
            .get(name)
            .ok_or_else(|| CenterError::UnknownCenter(name.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.centers.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &CenterSpec)> {
        self.centers.iter()
    }

    /// Round-trip the set back to the record format.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for spec in self.centers.values() {
            out.push_str("[center]\n");
            out.push_str(&format!("id = {}\n", spec.id));
            out.push_str(&format!("name = {}\n", spec.name));
            out.push_str(&format!(
                "kind = {}\n",
                match spec.kind {
                    CenterKind::Rational => "rational",
                    CenterKind::Heron => "heron",
                }
            ));
            out.push_str(&format!(
                "source = {}\n",
                match spec.source {
                    Source::PaperTable => "paper-table",
                    Source::EtcData => "etc-data",
                }
            ));
            out.push_str(&format!("h = {}\n\n", spec.h.print()));
        }
        for d in self.derived.values() {
            out.push_str("[derived]\n");
            out.push_str(&format!("name = {}\n", d.name));
            for (k, row) in d.rows.iter().enumerate() {
                out.push_str(&format!(
                    "row{} = {} | {} | {}\n",
                    k + 1,
                    row[0].print(),
                    row[1].print(),
                    row[2].print()
                ));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::BilliardShape;

    #[test]
    fn builtin_parses_all_100() {
        let set = CenterSet::builtin();
        assert_eq!(set.ids().count(), 100);
        for want in ["excentral", "medial", "intouch", "extouch"] {
            assert!(set.derived(want).is_ok());
        }
    }

    #[test]
    fn known_trilinears() {
        let set = CenterSet::builtin();
        let x1 = set.get(1).unwrap().trilinears(3.0, 4.0, 5.0, 6.0).unwrap();
        assert_eq!((x1.p, x1.q, x1.r), (1.0, 1.0, 1.0));
        let x2 = set.get(2).unwrap().trilinears(3.0, 4.0, 5.0, 6.0).unwrap();
        assert_eq!((x2.p, x2.q, x2.r), (1.0 / 3.0, 0.25, 0.2));
        let x9 = set.get(9).unwrap().trilinears(3.0, 4.0, 5.0, 6.0).unwrap();
        assert_eq!((x9.p, x9.q, x9.r), (6.0, 4.0, 2.0));
    }

    #[test]
    fn x100_pole_on_isosceles() {
        let set = CenterSet::builtin();
        let shape = BilliardShape::new(1.5, 1.0).unwrap();
        let orbit = shape.orbit_at(0.0).unwrap();
        // s2 == s3 at t = 0 and h = 1/(s2-s3): expect a pole or a far-out blowup
        let x100 = set.get(100).unwrap();
        match x100.position(&orbit) {
            Err(_) => {}
            Ok(p) => assert!(p.x.hypot(p.y) > 1e3),
        }
    }

    #[test]
    fn centroid_matches_vertex_mean() {
        let set = CenterSet::builtin();
        let shape = BilliardShape::new(1.5, 1.0).unwrap();
        let orbit = shape.orbit_at(0.77).unwrap();
        let g = set.get(2).unwrap().position(&orbit).unwrap();
        let gx = (orbit.p1.x + orbit.p2.x + orbit.p3.x) / 3.0;
        let gy = (orbit.p1.y + orbit.p2.y + orbit.p3.y) / 3.0;
        assert!((g.x - gx).abs() < 1e-13 && (g.y - gy).abs() < 1e-13);
    }

    #[test]
    fn scale_invariance_of_trilinears() {
        let set = CenterSet::builtin();
        let shape = BilliardShape::new(1.5, 1.0).unwrap();
        let orbit = shape.orbit_at(1.3).unwrap();
        let spec = set.get(3).unwrap();
        let t = spec.trilinears(orbit.s1, orbit.s2, orbit.s3, orbit.area()).unwrap();
        let p0 = trilinear_to_cartesian(&orbit, t).unwrap();
        let t7 = TrilinearTriple {
            p: 7.0 * t.p,
            q: 7.0 * t.q,
            r: 7.0 * t.r,
        };
        let p7 = trilinear_to_cartesian(&orbit, t7).unwrap();
        assert!((p0.x - p7.x).abs() < 1e-15 && (p0.y - p7.y).abs() < 1e-15);
    }

    #[test]
    fn data_round_trip_is_stable() {
        let set = CenterSet::builtin();
        let printed = set.print();
        let set2 = CenterSet::parse(&printed).unwrap();
        let printed2 = set2.print();
        assert_eq!(printed, printed2);
    }

    #[test]
    fn medial_row_is_midpoint() {
        let set = CenterSet::builtin();
        let shape = BilliardShape::new(1.5, 1.0).unwrap();
        let orbit = shape.orbit_at(0.63).unwrap();
        let v = set.derived("medial").unwrap().vertex(0, &orbit).unwrap();
        assert!((v.x - (orbit.p2.x + orbit.p3.x) / 2.0).abs() < 1e-13);
        assert!((v.y - (orbit.p2.y + orbit.p3.y) / 2.0).abs() < 1e-13);
    }
}
