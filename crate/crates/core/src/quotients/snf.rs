use super::matrix::PolyMatrix;
use crate::ring::{Domain, Poly};

/// `U·A·V = D` with `D` diagonal, `d_1 | d_2 | …`, nonzero pivots monic.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    /// `V^{-1}`, kept so module elements can be moved back from SNF
    /// coordinates.
    pub v_inv: PolyMatrix,
    pub d: PolyMatrix,
}

impl SnfDecomposition {
    /// The diagonal of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    d: PolyMatrix,
    u: PolyMatrix,
    v: PolyMatrix,
    v_inv: PolyMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, target: usize, source: usize, c: &Poly) {
        self.d.add_row_multiple(target, source, c);
        self.u.add_row_multiple(target, source, c);
    }

    fn add_col(&mut self, target: usize, source: usize, c: &Poly) {
        self.d.add_col_multiple(target, source, c);
        self.v.add_col_multiple(target, source, c);
        self.v_inv.add_row_multiple(source, target, &-c);
    }

    /// Minimal-degree nonzero entry of the trailing block, ties in row-major
    /// order.
    fn pivot_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                if let Some(deg) = self.d.get(i, j).degree() {
                    if best.is_none_or(|(b, _, _)| deg < b) {
                        best = Some((deg, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Minimal-degree nonzero entry in row `t` or column `t` below/right of
    /// the pivot.
    fn pivot_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        let candidates = (t + 1..self.d.rows()).map(|i| (i, t)).chain((t + 1..self.d.cols()).map(|j| (t, j)));
        for (i, j) in candidates {
            if let Some(deg) = self.d.get(i, j).degree() {
                if best.is_none_or(|(b, _, _)| deg < b) {
                    best = Some((deg, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Reduces row and column `t` by the pivot; true when both are cleared.
    fn clear_cross(&mut self, t: usize) -> bool {
        let pivot = self.d.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..self.d.rows() {
            if self.d.get(i, t).is_zero() {
                continue;
            }
            let (q, r) = self.d.get(i, t).div_rem(&pivot).expect("pivot is nonzero over Q");
            self.add_row(i, t, &-q);
            clean &= r.is_zero();
        }
        for j in t + 1..self.d.cols() {
            if self.d.get(t, j).is_zero() {
                continue;
            }
            let (q, r) = self.d.get(t, j).div_rem(&pivot).expect("pivot is nonzero over Q");
            self.add_col(j, t, &-q);
            clean &= r.is_zero();
        }
        clean
    }

    fn non_dividing_row(&self, t: usize) -> Option<usize> {
        let pivot = self.d.get(t, t);
        (t + 1..self.d.rows()).find(|&i| (t + 1..self.d.cols()).any(|j| !self.d.get(i, j).is_divisible_by(pivot)))
    }
}

/// Smith normal form over `Q[x]`.
///
/// Pivots are chosen as the minimal-degree nonzero entry of the remaining
/// block (ties by row-major order); rows and columns are cleared by division
/// with remainder, and a pivot that fails to divide the rest of the block
/// absorbs the offending row before the step is repeated.
pub fn smith_normal_form(a: &PolyMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: PolyMatrix::from_rows((0..m).map(|i| a.row(i).to_vec()).collect(), n).expect("shape preserved"),
        u: PolyMatrix::identity(m),
        v: PolyMatrix::identity(n),
        v_inv: PolyMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        let Some(pos) = w.pivot_in_block(t) else { break };
        w.move_to_pivot(t, pos);
        loop {
            if !w.clear_cross(t) {
                let pos = w.pivot_in_cross(t).expect("a remainder survived");
                w.move_to_pivot(t, pos);
                continue;
            }
            match w.non_dividing_row(t) {
                Some(i) => w.add_row(t, i, &Poly::one(Domain::Q)),
                None => break,
            }
        }
        let lead = w.d.get(t, t).leading().expect("nonzero pivot").recip();
        w.d.scale_row(t, &lead);
        w.u.scale_row(t, &lead);
    }
    SnfDecomposition { u: w.u, v: w.v, v_inv: w.v_inv, d: w.d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SampleSpec;
    use proptest::prelude::*;

    fn m(s: &str) -> PolyMatrix {
        s.parse().unwrap()
    }

    fn check(a: &PolyMatrix) -> SnfDecomposition {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).unwrap().mul(&snf.v).unwrap(), snf.d, "U A V != D for {a:?}");
        assert!(snf.d.is_diagonal());
        assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        assert_eq!(snf.v.mul(&snf.v_inv).unwrap(), PolyMatrix::identity(a.cols()));
        let diag = snf.diagonal();
        for pair in diag.windows(2) {
            assert!(pair[1].is_divisible_by(&pair[0]), "chain broken in {diag:?}");
        }
        snf
    }

    #[test]
    fn already_diagonal() {
        let a = m("x; 0\n0; x^2");
        let snf = check(&a);
        assert_eq!(snf.d, a);
        assert_eq!(snf.u, PolyMatrix::identity(2));
        assert_eq!(snf.v, PolyMatrix::identity(2));
    }

    #[test]
    fn single_row() {
        let snf = check(&m("x^2; x"));
        assert_eq!(snf.d, m("x; 0"));
    }

    #[test]
    fn zero_matrix() {
        let a = PolyMatrix::zeros(2, 3);
        assert_eq!(check(&a).d, a);
    }

    #[test]
    fn divisibility_repair() {
        // diag(x, x - 1) is not in normal form: it becomes diag(1, x(x-1)).
        let snf = check(&m("x; 0\n0; x - 1"));
        assert_eq!(snf.diagonal(), vec!["1".parse().unwrap(), "x^2 - x".parse().unwrap()]);
    }

    #[test]
    fn scalar_pivots_are_normalized() {
        let snf = check(&m("2*x^2 + 2; 4\n6; 0"));
        assert!(snf.diagonal().iter().all(|d| d.is_zero() || d.leading() == Some(&crate::ring::int(1))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_matrices(seed in 0u64..10_000, rows in 1usize..=4, cols in 1usize..=4) {
            let spec = SampleSpec { seed, count: 1, degree: 4, coeff: 5 };
            let mut s = spec.sampler();
            let entries = (0..rows)
                .map(|_| (0..cols).map(|_| if s.index(4) == 0 { Poly::zero(Domain::Q) } else { s.poly(Domain::Q) }).collect())
                .collect();
            check(&PolyMatrix::from_rows(entries, cols).unwrap());
        }
    }
}
