//! Polygon JSON and OBJ output.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{Certificate, EdgeRole, StickKnot};
use crate::error::{invalid, Error, Result};
use crate::{Point3, Rational};

/// Polygon record; every rational is a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub n: usize,
    pub shift: usize,
    pub beta: [usize; 3],
    pub sticks: usize,
    /// Numerator `3(n-1)` of the bound.
    pub bound_num: String,
    pub bound: String,
    pub bound_satisfied: bool,
    pub top_reduction: String,
    pub vertices: Vec<[String; 3]>,
    pub edge_roles: Vec<String>,
    pub invariants_match: bool,
    pub determinant: u64,
}

pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| invalid(format!("not a rational: {s:?}")))
}

impl PolygonJson {
    pub fn new(knot: &StickKnot, cert: &Certificate) -> Result<Self> {
        Ok(PolygonJson {
            n: cert.n,
            shift: cert.shift,
            beta: [cert.beta.beta1, cert.beta.beta2, cert.beta.beta3],
            sticks: cert.sticks_k3,
            bound_num: (3 * (cert.n - 1)).to_string(),
            bound: rational_string(&cert.bound),
            bound_satisfied: cert.bound_satisfied,
            top_reduction: cert.top_reduction.to_string(),
            vertices: knot
                .vertices
                .iter()
                .map(|v| {
                    [
                        rational_string(&v.x),
                        rational_string(&v.y),
                        rational_string(&v.z),
                    ]
                })
                .collect(),
            edge_roles: knot.roles.iter().map(|r| r.as_str().to_string()).collect(),
            invariants_match: cert.invariants_match,
            determinant: cert.output_invariants.determinant_u64()?,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// The stored polygon with exact coordinates.
    pub fn knot(&self) -> Result<StickKnot> {
        let vertices = self
            .vertices
            .iter()
            .map(|[x, y, z]| {
                Ok(Point3::new(
                    parse_rational(x)?,
                    parse_rational(y)?,
                    parse_rational(z)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let roles = self
            .edge_roles
            .iter()
            .map(|r| EdgeRole::parse(r).ok_or_else(|| invalid(format!("unknown edge role {r:?}"))))
            .collect::<Result<Vec<_>>>()?;
        StickKnot::new(vertices, roles)
    }
}

pub fn parse_polygon_json(text: &str) -> Result<PolygonJson> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

fn decimal12(r: &Rational) -> String {
    let x = r.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let places = (11 - exp).max(0) as usize;
    format!("{x:.places$}")
}

/// Wavefront OBJ: one `v` line per vertex and a closed `l` polyline.
pub fn format_obj(knot: &StickKnot) -> String {
    let mut out = String::new();
    for v in &knot.vertices {
        out.push_str(&format!(
            "v {} {} {}\n",
            decimal12(&v.x),
            decimal12(&v.y),
            decimal12(&v.z)
        ));
    }
    let mut line = String::from("l");
    for i in 1..=knot.len() {
        line.push_str(&format!(" {i}"));
    }
    line.push_str(" 1\n");
    out.push_str(&line);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_formatting() {
        assert_eq!(
            decimal12(&Rational::new(3.into(), 5.into())),
            "0.600000000000"
        );
        assert_eq!(
            decimal12(&Rational::new(1.into(), 3.into())),
            "0.333333333333"
        );
        assert_eq!(
            decimal12(&Rational::new((-250).into(), 1.into())),
            "-250.000000000"
        );
        assert_eq!(decimal12(&Rational::new(0.into(), 1.into())), "0");
    }

    #[test]
    fn obj_layout() {
        let knot = StickKnot::new(
            vec![
                Point3::from_ints(0, 0, 0),
                Point3::from_ints(1, 0, 0),
                Point3::from_ints(0, 1, 0),
            ],
            vec![EdgeRole::Horizontal; 3],
        )
        .unwrap();
        let obj = format_obj(&knot);
        let lines: Vec<&str> = obj.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "v 1.00000000000 0 0");
        assert_eq!(lines[3], "l 1 2 3 1");
    }

    #[test]
    fn rationals_round_trip() {
        let r = Rational::new((-7).into(), 3.into());
        assert_eq!(rational_string(&r), "-7/3");
        assert_eq!(parse_rational("-7/3").unwrap(), r);
        assert_eq!(
            parse_rational("4").unwrap(),
            Rational::from_integer(4.into())
        );
        assert!(parse_rational("x").is_err());
    }
}
