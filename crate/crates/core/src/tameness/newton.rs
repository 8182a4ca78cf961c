//! Newton polygons and face forms.

use crate::poly::{BivarPoly, Exp, Weight};

/// A compact face of the Newton polygon: an edge with its weight, or a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Face {
    Vertex(Exp),
    Edge { from: Exp, to: Exp, weight: Weight },
}

impl Face {
    pub fn describe(&self) -> String {
        match self {
            Face::Vertex((a, b)) => format!("vertex ({a},{b})"),
            Face::Edge { from, to, weight } => format!(
                "edge ({},{})-({},{}) with weight ({},{})",
                from.0, from.1, to.0, to.1, weight.n, weight.m
            ),
        }
    }
}

fn cross(o: Exp, a: Exp, b: Exp) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Vertices of the Newton polygon from the steepest end (smallest x
/// exponent) to the flattest, joined by the compact edges.
pub fn vertices(f: &BivarPoly) -> Vec<Exp> {
    let mut pts: Vec<Exp> = Vec::new();
    for (&(a, b), _) in f.terms() {
        match pts.last_mut() {
            Some(last) if last.0 == a => last.1 = last.1.min(b),
            _ => pts.push((a, b)),
        }
    }
    let mut hull: Vec<Exp> = Vec::new();
    for p in pts {
        if hull.last().is_some_and(|l| l.1 <= p.1) {
            continue;
        }
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

pub fn compact_faces(f: &BivarPoly) -> Vec<Face> {
    let v = vertices(f);
    let mut out: Vec<Face> = v.iter().map(|&p| Face::Vertex(p)).collect();
    for w in v.windows(2) {
        let (from, to) = (w[0], w[1]);
        let dx = to.0 - from.0;
        let dy = from.1 - to.1;
        let g = num_integer::gcd(dx, dy);
        out.push(Face::Edge {
            from,
            to,
            weight: Weight { n: dy / g, m: dx / g },
        });
    }
    out
}

/// The terms of `f` on the face.
pub fn face_form(f: &BivarPoly, face: &Face) -> BivarPoly {
    match face {
        Face::Vertex(e) => BivarPoly::monomial(f.ctx(), *e, f.coeff(*e)),
        Face::Edge { weight, .. } => {
            f.weighted_order_and_initial(*weight)
                .expect("nonzero")
                .initial
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::poly::parse_poly;

    #[test]
    fn polygon_of_example() {
        let f = parse_poly("(y^2+x^3)^2+x^5*y", &FieldCtx::rationals()).unwrap();
        assert_eq!(vertices(&f), vec![(0, 4), (6, 0)]);
        let g = parse_poly("y^5+x*y^2+x^3+x^2*y^7", &FieldCtx::rationals()).unwrap();
        assert_eq!(vertices(&g), vec![(0, 5), (1, 2), (3, 0)]);
        let faces = compact_faces(&g);
        assert!(faces.contains(&Face::Edge {
            from: (0, 5),
            to: (1, 2),
            weight: Weight { n: 3, m: 1 }
        }));
        assert_eq!(face_form(&g, &faces[3]), parse_poly("y^5+x*y^2", g.ctx()).unwrap());
    }
}
