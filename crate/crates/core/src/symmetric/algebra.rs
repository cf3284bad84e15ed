use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{int, Rational};

/// Coordinates over the algebra's basis.
pub type Vector = Vec<Rational>;

/// Associative unital `Q`-algebra given by structure constants
/// `e_i·e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinDimAlgebra {
    dim: usize,
    constants: Vec<Rational>,
    unit: Vector,
    names: Vec<String>,
}

impl FinDimAlgebra {
    /// Checks associativity on all basis triples; when `unit` is `None` it
    /// is solved for.
    pub fn new(dim: usize, constants: Vec<Rational>, unit: Option<Vector>) -> Result<Self> {
        if dim == 0 || constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!("{} structure constants for dimension {dim}", constants.len())));
        }
        let mut alg = FinDimAlgebra {
            dim,
            constants,
            unit: vec![Rational::zero(); dim],
            names: (0..dim).map(|i| format!("e{i}")).collect(),
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (a, b, c) = (alg.basis(i), alg.basis(j), alg.basis(k));
                    if alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c)) {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        alg.unit = match unit {
            Some(u) if u.len() == dim => u,
            Some(u) => return Err(Error::DimensionMismatch(format!("unit has {} coordinates", u.len()))),
            None => alg.solve_unit().ok_or(Error::NoUnit)?,
        };
        if (0..dim).any(|j| {
            let e = alg.basis(j);
            alg.mul(&alg.unit, &e) != e || alg.mul(&e, &alg.unit) != e
        }) {
            return Err(Error::NoUnit);
        }
        Ok(alg)
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        if names.len() == self.dim {
            self.names = names.iter().map(|s| s.to_string()).collect();
        }
        self
    }

    /// Upper-triangular `2×2` matrices with basis `E11, E12, E22`.
    pub fn upper_triangular() -> Self {
        let mut c = vec![Rational::zero(); 27];
        let idx = |i: usize, j: usize, k: usize| (i * 3 + j) * 3 + k;
        // E11 E11 = E11, E11 E12 = E12, E12 E22 = E12, E22 E22 = E22.
        for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)] {
            c[idx(i, j, k)] = int(1);
        }
        FinDimAlgebra::new(3, c, Some(vec![int(1), int(0), int(1)]))
            .expect("upper-triangular matrices form an algebra")
            .with_names(&["E11", "E12", "E22"])
    }

    /// The group algebra `Q[C2]` with basis `1, g`, `g² = 1`.
    pub fn group_algebra_c2() -> Self {
        let mut c = vec![Rational::zero(); 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            c[idx(i, j, (i + j) % 2)] = int(1);
        }
        FinDimAlgebra::new(2, c, Some(vec![int(1), int(0)]))
            .expect("group algebras are associative")
            .with_names(&["1", "g"])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    pub fn zero(&self) -> Vector {
        vec![Rational::zero(); self.dim]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = ai * bj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Readable form such as `E12 + 2*E11`.
    pub fn format(&self, v: &[Rational]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| if c.is_one() { name.clone() } else { format!("{c}*{name}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Solves `u·e_j = e_j = e_j·u` for all `j` by Gaussian elimination.
    fn solve_unit(&self) -> Option<Vector> {
        let n = self.dim;
        // Unknowns u_i; equations Σ_i u_i c[i][j][k] = [j == k] and
        // Σ_i u_i c[j][i][k] = [j == k].
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let rhs = if j == k { Rational::one() } else { Rational::zero() };
                let mut left: Vec<Rational> = (0..n).map(|i| self.constant(i, j, k).clone()).collect();
                left.push(rhs.clone());
                let mut right: Vec<Rational> = (0..n).map(|i| self.constant(j, i, k).clone()).collect();
                right.push(rhs);
                rows.push(left);
                rows.push(right);
            }
        }
        solve_linear(rows, n)
    }
}

/// Solves an augmented system with `n` unknowns; free variables are set to
/// zero. `None` when inconsistent.
fn solve_linear(mut rows: Vec<Vec<Rational>>, n: usize) -> Option<Vector> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (slot, p) in row.iter_mut().zip(&pivot_row) {
                    *slot -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][n].clone();
    }
    Some(x)
}

impl FromStr for FinDimAlgebra {
    type Err = Error;

    /// Structure-constant text format:
    ///
    /// ```text
    /// dimension 2
    /// unit 1 0        # optional; solved for when absent
    /// names 1 g       # optional
    /// 0 0 0 1         # i j k value: c[i][j][k] = value
    /// ```
    ///
    /// Unlisted constants are zero.
    fn from_str(s: &str) -> Result<FinDimAlgebra> {
        let mut dim: Option<usize> = None;
        let mut unit = None;
        let mut names: Option<Vec<String>> = None;
        let mut entries = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}: `{line}`", lineno + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "dimension" => dim = Some(words.get(1).and_then(|w| w.parse().ok()).ok_or_else(|| bad("bad dimension"))?),
                "unit" => {
                    unit = Some(
                        words[1..]
                            .iter()
                            .map(|w| crate::ring::parse_rational(w))
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(|_| bad("bad unit"))?,
                    )
                }
                "names" => names = Some(words[1..].iter().map(|w| w.to_string()).collect()),
                _ => {
                    if words.len() != 4 {
                        return Err(bad("expected `i j k value`"));
                    }
                    let ix = |w: &str| w.parse::<usize>().map_err(|_| bad("bad index"));
                    let value = crate::ring::parse_rational(words[3]).map_err(|_| bad("bad value"))?;
                    entries.push((ix(words[0])?, ix(words[1])?, ix(words[2])?, value, lineno + 1));
                }
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("missing `dimension` line".into()))?;
        let mut constants = vec![Rational::zero(); dim * dim * dim];
        for (i, j, k, v, lineno) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Parse(format!("line {lineno}: index out of range for dimension {dim}")));
            }
            constants[(i * dim + j) * dim + k] = v;
        }
        let alg = FinDimAlgebra::new(dim, constants, unit)?;
        Ok(match names {
            Some(n) => {
                let refs: Vec<&str> = n.iter().map(String::as_str).collect();
                alg.with_names(&refs)
            }
            None => alg,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let t = FinDimAlgebra::upper_triangular();
        assert_eq!(t.mul(&t.basis(0), &t.basis(1)), t.basis(1));
        assert_eq!(t.mul(&t.basis(1), &t.basis(0)), t.zero());
        assert_eq!(t.format(&t.unit().clone()), "E11 + E22");
        let c2 = FinDimAlgebra::group_algebra_c2();
        assert_eq!(c2.mul(&c2.basis(1), &c2.basis(1)), c2.basis(0));
    }

    #[test]
    fn file_format_solves_unit() {
        let text = "dimension 3\n0 0 0 1\n0 1 1 1\n1 2 1 1\n2 2 2 1\n";
        let alg: FinDimAlgebra = text.parse().unwrap();
        assert_eq!(alg.unit(), &vec![int(1), int(0), int(1)]);
        assert_eq!(alg.constants, FinDimAlgebra::upper_triangular().constants);
    }

    #[test]
    fn rejects_bad_algebras() {
        // e0 e0 = e1 with everything else zero is associative but has no unit.
        assert!(matches!("dimension 2\n0 0 1 1".parse::<FinDimAlgebra>(), Err(Error::NoUnit)));
        // e0·e0 = e1, e0·e1 = e0 is not associative.
        let bad = "dimension 2\n0 0 1 1\n0 1 0 1";
        assert!(matches!(bad.parse::<FinDimAlgebra>(), Err(Error::NotAssociative(..))));
        assert!("0 0 0 1".parse::<FinDimAlgebra>().is_err());
        assert!("dimension 1\n0 0 3 1".parse::<FinDimAlgebra>().is_err());
    }
}
