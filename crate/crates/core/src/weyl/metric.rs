use std::fmt;

use super::gauss::Gauss;
use super::AlgebraError;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 6;

/// Diagonal metric `eta` together with the index tables of the tensorial
/// generators `xh[mu,nu]` (`mu < nu`, lexicographic) and their brackets.
#[derive(Clone, PartialEq, Eq)]
pub struct Metric {
    signature: Vec<i8>,
    pairs: Vec<(usize, usize)>,
    pair_index: Vec<Vec<Option<usize>>>,
    // bracket[i][j] = [xh_i, xh_j] as a combination of single generators
    bracket: Vec<Vec<Vec<(usize, Gauss)>>>,
}

impl Metric {
    pub fn new(signature: Vec<i8>) -> Result<Self, AlgebraError> {
        let d = signature.len();
        if !(MIN_DIM..=MAX_DIM).contains(&d) {
            return Err(AlgebraError::UnsupportedDimension(d));
        }
        if signature.iter().any(|&s| s != 1 && s != -1) {
            return Err(AlgebraError::BadSignature);
        }
        let mut pairs = Vec::new();
        let mut pair_index = vec![vec![None; d]; d];
        for (mu, row) in pair_index.iter_mut().enumerate() {
            for (nu, slot) in row.iter_mut().enumerate().skip(mu + 1) {
                *slot = Some(pairs.len());
                pairs.push((mu, nu));
            }
        }
        let mut metric = Metric { signature, pairs, pair_index, bracket: Vec::new() };
        metric.bracket = metric.build_brackets();
        Ok(metric)
    }

    /// `diag(-1, 1, ..., 1)`.
    pub fn lorentzian(d: usize) -> Result<Self, AlgebraError> {
        let mut sig = vec![1i8; d];
        if d > 0 {
            sig[0] = -1;
        }
        Self::new(sig)
    }

    pub fn euclidean(d: usize) -> Result<Self, AlgebraError> {
        Self::new(vec![1i8; d])
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn eta(&self, mu: usize, nu: usize) -> i64 {
        if mu == nu {
            self.signature[mu] as i64
        } else {
            0
        }
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Index of `xh[mu,nu]` with the sign from antisymmetry; `None` on the diagonal.
    pub fn signed_pair(&self, mu: usize, nu: usize) -> Option<(usize, i64)> {
        if mu < nu {
            self.pair_index[mu][nu].map(|i| (i, 1))
        } else if nu < mu {
            self.pair_index[nu][mu].map(|i| (i, -1))
        } else {
            None
        }
    }

    pub(crate) fn bracket(&self, i: usize, j: usize) -> &[(usize, Gauss)] {
        &self.bracket[i][j]
    }

    // [xh_mn, xh_rs] = i(eta_mr xh_ns - eta_ms xh_nr - eta_nr xh_ms + eta_ns xh_mr)
    fn build_brackets(&self) -> Vec<Vec<Vec<(usize, Gauss)>>> {
        let np = self.pairs.len();
        let mut table = vec![vec![Vec::new(); np]; np];
        for (i, &(m, n)) in self.pairs.iter().enumerate() {
            for (j, &(r, s)) in self.pairs.iter().enumerate() {
                let mut acc = vec![0i128; np];
                let contributions = [
                    (self.eta(m, r), n, s, 1),
                    (self.eta(m, s), n, r, -1),
                    (self.eta(n, r), m, s, -1),
                    (self.eta(n, s), m, r, 1),
                ];
                for (e, a, b, sign) in contributions {
                    if e == 0 {
                        continue;
                    }
                    if let Some((k, ps)) = self.signed_pair(a, b) {
                        acc[k] += (e * sign * ps) as i128;
                    }
                }
                table[i][j] = acc.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(k, v)| (k, Gauss::new(0, v))).collect();
            }
        }
        table
    }
}

impl fmt::Debug for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Metric{:?}", self.signature)
    }
}
