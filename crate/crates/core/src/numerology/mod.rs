//! Chern numbers of complete intersection Calabi-Yau threefolds, the
//! corrections for contracting a del Pezzo divisor, and the assembled table
//! of threefolds.

mod table;

pub use table::{assemble_table1, table1_rows, Table1, Table1Row, TableEntry};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complete intersection threefold in `P^n`, given by `n - 3` degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CISpec {
    pub ambient: usize,
    pub degrees: Vec<u32>,
}

impl CISpec {
    pub fn new(ambient: usize, degrees: &[u32]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput("at least one hypersurface is required".into()));
        }
        if degrees.len() + 3 != ambient {
            return Err(Error::InvalidInput(format!(
                "{} hypersurfaces in P^{ambient} do not cut a threefold",
                degrees.len()
            )));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(format!("hypersurface degree {d} is below 2")));
        }
        Ok(CISpec { ambient, degrees: degrees.to_vec() })
    }

    /// The Calabi-Yau threefold `X'_{d1,...}` with `sum d_i = n + 1`.
    pub fn calabi_yau(degrees: &[u32]) -> Result<Self> {
        Self::new(degrees.len() + 3, degrees)
    }

    pub fn is_calabi_yau(&self) -> bool {
        self.degrees.iter().sum::<u32>() as usize == self.ambient + 1
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).product()
    }

    /// Label in the form `X'_{2,2,3}`.
    pub fn label(&self) -> String {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        format!("X'_{{{}}}", ds.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIInvariants {
    pub h3: i64,
    pub c2h: i64,
    pub euler: i64,
}

/// Coefficients of `(1+h)^(n+1) / prod (1 + d_i h)` up to `h^terms-1`.
pub fn chern_series(spec: &CISpec, terms: usize) -> Vec<i64> {
    let mut c = vec![0i64; terms];
    // binomial coefficients of (1+h)^(n+1)
    let n1 = spec.ambient as i64 + 1;
    let mut b = 1i64;
    for (k, ck) in c.iter_mut().enumerate() {
        *ck = b;
        b = b * (n1 - k as i64) / (k as i64 + 1);
    }
    for &d in &spec.degrees {
        // divide by (1 + d h)
        for k in 1..terms {
            c[k] -= d as i64 * c[k - 1];
        }
    }
    c
}

pub fn ci_chern(spec: &CISpec) -> CIInvariants {
    let c = chern_series(spec, 4);
    let deg = spec.degree();
    CIInvariants { h3: deg, c2h: c[2] * deg, euler: c[3] * deg }
}

/// Invariants of `G = H + D'` after contracting a del Pezzo divisor `D'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    pub g3: i64,
    pub c2g: i64,
    pub h0: i64,
}

/// `G^3 = H^3 + d`, `c2.G = c2.H + 12 - 2d` and Riemann-Roch
/// `h^0(G) = G^3/6 + c2.G/12`.
pub fn contraction_invariants(ci: &CIInvariants, d: i64) -> Result<Contraction> {
    if !(6..=8).contains(&d) {
        return Err(Error::OutOfRange(format!("del Pezzo degree {d} outside 6..=8")));
    }
    let g3 = ci.h3 + d;
    let c2g = ci.c2h + 12 - 2 * d;
    let twelve_h0 = 2 * g3 + c2g;
    if twelve_h0 % 12 != 0 {
        return Err(Error::InvalidInput(format!("h^0 = {g3}/6 + {c2g}/12 is not an integer")));
    }
    Ok(Contraction { g3, c2g, h0: twelve_h0 / 12 })
}

/// Euler numbers of the small resolution `X` of the nodal threefold and of
/// its contraction `Y` along a del Pezzo surface of degree `d`.
pub fn euler_chain(ci: &CIInvariants, nodes: i64, d: i64) -> (i64, i64) {
    let chi_x = ci.euler + 2 * nodes;
    (chi_x, chi_x - (12 - d) + 1)
}

/// `2 (h^{1,1} - h^{1,2})` with `h^{1,1} = 1`.
pub fn euler_smoothed(h12: i64) -> i64 {
    2 * (1 - h12)
}

/// Intersection numbers of a smooth surface `S` in `P^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceChern {
    /// `H^2`
    pub degree: i64,
    /// `K.H`
    pub k_dot_h: i64,
    pub k_squared: i64,
    pub euler: i64,
}

impl SurfaceChern {
    /// A del Pezzo surface of degree `d` embedded by (a projection of) its
    /// anticanonical system.
    pub fn del_pezzo(d: i64) -> Self {
        SurfaceChern { degree: d, k_dot_h: -d, k_squared: d, euler: 12 - d }
    }
}

/// Expected number of singular points on `S` of a general complete
/// intersection of hypersurfaces of the given degrees through `S` in `P^n`,
/// when `S` has codimension one in it.
///
/// The hypersurfaces give a bundle map `sum O_S(-d_i) -> N^*` which drops
/// rank exactly at the singular points; Porteous counts them as
/// `c_2(N^* - sum O(-d_i))`.
pub fn porteous_nodes(ambient: usize, degrees: &[u32], s: SurfaceChern) -> Result<i64> {
    if degrees.len() + 3 != ambient {
        return Err(Error::InvalidInput(format!(
            "{} hypersurfaces in P^{ambient} do not cut a threefold",
            degrees.len()
        )));
    }
    let n1 = ambient as i64 + 1;
    // c(N) = (1+h)^(n+1) * (1 + K + K^2 - e)
    let c1_dot_h = n1 * s.degree + s.k_dot_h;
    let c2 = n1 * (n1 - 1) / 2 * s.degree + n1 * s.k_dot_h + s.k_squared - s.euler;
    // 1 / prod (1 - d_i h) = 1 + s1 h + s2 h^2
    let s1: i64 = degrees.iter().map(|&d| d as i64).sum();
    let sq: i64 = degrees.iter().map(|&d| (d as i64).pow(2)).sum();
    let s2 = (s1 * s1 + sq) / 2;
    Ok(c2 - s1 * c1_dot_h + s2 * s.degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic() {
        let q = ci_chern(&CISpec::new(4, &[5]).unwrap());
        assert_eq!((q.h3, q.c2h, q.euler), (5, 50, -200));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(CISpec::new(5, &[3]).is_err());
        assert!(CISpec::new(4, &[1]).is_err());
        assert!(CISpec::new(3, &[]).is_err());
    }

    #[test]
    fn cubic_pair_contraction() {
        let ci = ci_chern(&CISpec::calabi_yau(&[3, 3]).unwrap());
        assert_eq!(contraction_invariants(&ci, 6).unwrap(), Contraction { g3: 15, c2g: 54, h0: 7 });
        assert_eq!(euler_chain(&ci, 36, 6), (-72, -77));
        assert!(contraction_invariants(&ci, 5).is_err());
    }

    #[test]
    fn hodge_euler() {
        assert_eq!(euler_smoothed(39), -76);
        assert_eq!(euler_smoothed(1), 0);
    }

    #[test]
    fn threefolds_through_a_plane() {
        // A quadric in P^4 through a plane is a cone; a cubic is singular
        // where both cofactors vanish on the plane.
        let plane = SurfaceChern { degree: 1, k_dot_h: -3, k_squared: 9, euler: 3 };
        assert_eq!(porteous_nodes(4, &[2], plane).unwrap(), 1);
        assert_eq!(porteous_nodes(4, &[3], plane).unwrap(), 4);
    }
}
