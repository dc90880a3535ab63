//! OFF export of the cross-section `{x in K : x_n = h}`.

use std::fmt::Write;

use conelab::{Cone, Error, Result, Scalar, Vector};

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Order coplanar points counterclockwise seen from the tip of `normal`.
fn cyclic_order(idx: &[usize], pts: &[[f64; 3]], normal: [f64; 3]) -> Vec<usize> {
    let n = idx.len() as f64;
    let c = idx.iter().fold([0.0; 3], |acc, &i| [acc[0] + pts[i][0] / n, acc[1] + pts[i][1] / n, acc[2] + pts[i][2] / n]);
    let u = sub(pts[idx[0]], c);
    let v = cross(normal, u);
    let mut keyed: Vec<(f64, usize)> = idx
        .iter()
        .map(|&i| {
            let d = sub(pts[i], c);
            (dot(d, v).atan2(dot(d, u)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, i)| i).collect()
}

fn pad(v: &Vector, n: usize) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (k, x) in v.iter().take(n - 1).enumerate() {
        out[k] = x.to_f64();
    }
    out
}

/// Render the bounded slice of a pointed cone in at most four dimensions.
pub fn slice_off(k: &Cone, h: &Scalar) -> Result<String> {
    let n = k.ambient_dim();
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("slices need ambient dimension 2 to 4, got {n}")));
    }
    if !h.is_positive() {
        return Err(Error::InvalidArgument("slice height must be positive".into()));
    }
    if !k.lineality().is_empty() || k.rays().iter().any(|r| !r[n - 1].is_positive()) {
        return Err(Error::InvalidArgument("the slice is unbounded: some ray has a nonpositive last coordinate".into()));
    }
    let rays = k.rays();
    let verts: Vec<Vector> = rays.iter().map(|r| r.scale(&(h / &r[n - 1]))).collect();
    let pts: Vec<[f64; 3]> = verts.iter().map(|v| pad(v, n)).collect();
    let all: Vec<usize> = (0..pts.len()).collect();

    let mut faces: Vec<Vec<usize>> = Vec::new();
    match n {
        2 => faces.push(all),
        3 => {
            if pts.len() >= 3 {
                faces.push(cyclic_order(&all, &pts, [0.0, 0.0, 1.0]));
            } else {
                faces.push(all);
            }
        }
        _ => {
            if k.dim() == 4 {
                for a in k.facets() {
                    let on: Vec<usize> = (0..rays.len()).filter(|&i| a.dot(&rays[i]).is_zero()).collect();
                    if on.len() >= 3 {
                        let outward = pad(&a.neg(), n);
                        faces.push(cyclic_order(&on, &pts, outward));
                    }
                }
            } else if pts.len() >= 3 {
                let normal = (1..pts.len())
                    .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
                    .map(|(i, j)| cross(sub(pts[i], pts[0]), sub(pts[j], pts[0])))
                    .find(|c| dot(*c, *c) > 1e-24)
                    .unwrap_or([0.0, 0.0, 1.0]);
                faces.push(cyclic_order(&all, &pts, normal));
            } else {
                faces.push(all);
            }
        }
    }

    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str("# non-authoritative: float64 rendering of an exact slice, for plotting only\n");
    let _ = writeln!(out, "# slice x{n} = {h} of a cone in R^{n}");
    let _ = writeln!(out, "{} {} 0", pts.len(), faces.len());
    for p in &pts {
        let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
    }
    for f in &faces {
        let idx: Vec<String> = f.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{} {}", f.len(), idx.join(" "));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_slice_is_a_square() {
        let k = Cone::from_generators(
            vec![
                Vector::from_ints(&[1, 0, 1]),
                Vector::from_ints(&[0, 1, 1]),
                Vector::from_ints(&[-1, 0, 1]),
                Vector::from_ints(&[0, -1, 1]),
            ],
            vec![],
            3,
        )
        .unwrap();
        let off = slice_off(&k, &Scalar::from_int(2)).unwrap();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert!(lines[1].contains("non-authoritative"));
        assert_eq!(lines[3], "4 1 0");
        assert_eq!(lines.last().unwrap().split(' ').next(), Some("4"));
        assert!(off.contains("2 0 0"));
    }

    #[test]
    fn unbounded_slice_rejected() {
        let k = Cone::orthant(3);
        assert!(slice_off(&k, &Scalar::one()).is_err());
    }

    #[test]
    fn simplex_in_four_dimensions() {
        let k = Cone::from_generators(
            vec![
                Vector::from_ints(&[0, 0, 0, 1]),
                Vector::from_ints(&[1, 0, 0, 1]),
                Vector::from_ints(&[0, 1, 0, 1]),
                Vector::from_ints(&[0, 0, 1, 1]),
            ],
            vec![],
            4,
        )
        .unwrap();
        let off = slice_off(&k, &Scalar::one()).unwrap();
        assert!(off.lines().any(|l| l == "4 4 0"));
    }
}
