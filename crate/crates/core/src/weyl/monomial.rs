use std::fmt;

use smallvec::SmallVec;

use crate::coeff::{push_power, ParamExponent};

use super::Metric;

pub(crate) type Exps = SmallVec<[u16; 40]>;

/// Canonically ordered word `b^k a^n (xh-block)(x-block)(p-block)`.
///
/// Exponents are packed as `[b, a_0..a_{d-1}, xh_0..xh_{P-1}, x_0..x_{d-1}, p_0..p_{d-1}]`
/// where `P = d(d-1)/2` indexes the pairs `mu < nu` lexicographically.
/// Ordering is by parameter weight first, then lexicographic on the packed
/// exponents with higher powers of earlier variables first; this is also the
/// rendering order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalMonomial {
    weight: u16,
    exps: Exps,
    d: u8,
}

impl Ord for NormalMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight.cmp(&other.weight).then_with(|| other.exps.cmp(&self.exps)).then(self.d.cmp(&other.d))
    }
}

impl PartialOrd for NormalMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[inline]
pub(crate) fn layout_len(d: usize) -> usize {
    1 + 3 * d + d * (d - 1) / 2
}

impl NormalMonomial {
    pub(crate) fn from_exps(d: usize, exps: Exps) -> Self {
        debug_assert_eq!(exps.len(), layout_len(d));
        let weight: u16 = exps[..=d].iter().sum();
        NormalMonomial { weight, exps, d: d as u8 }
    }

    pub fn unit(d: usize) -> Self {
        Self::from_exps(d, SmallVec::from_elem(0, layout_len(d)))
    }

    pub fn from_parts(param: &ParamExponent, xhat: &[u16], x: &[u16], p: &[u16]) -> Self {
        let d = param.dim();
        let mut exps: Exps = SmallVec::with_capacity(layout_len(d));
        exps.push(param.beta_pow as u16);
        exps.extend(param.a_pow.iter().map(|&e| e as u16));
        assert_eq!(xhat.len(), d * (d - 1) / 2, "xhat exponent length");
        assert_eq!(x.len(), d, "x exponent length");
        assert_eq!(p.len(), d, "p exponent length");
        exps.extend_from_slice(xhat);
        exps.extend_from_slice(x);
        exps.extend_from_slice(p);
        Self::from_exps(d, exps)
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    /// Parameter weight (degree in `b` and all `a[mu]`).
    pub fn weight(&self) -> u32 {
        self.weight as u32
    }

    pub(crate) fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn beta_pow(&self) -> u16 {
        self.exps[0]
    }

    pub fn a_exps(&self) -> &[u16] {
        let d = self.dim();
        &self.exps[1..1 + d]
    }

    pub fn xhat_exps(&self) -> &[u16] {
        let d = self.dim();
        &self.exps[1 + d..1 + d + d * (d - 1) / 2]
    }

    pub fn x_exps(&self) -> &[u16] {
        let d = self.dim();
        let off = 1 + d + d * (d - 1) / 2;
        &self.exps[off..off + d]
    }

    pub fn p_exps(&self) -> &[u16] {
        let d = self.dim();
        let off = 1 + 2 * d + d * (d - 1) / 2;
        &self.exps[off..off + d]
    }

    pub fn param(&self) -> ParamExponent {
        ParamExponent { beta_pow: self.beta_pow() as u32, a_pow: self.a_exps().iter().map(|&e| e as u32).collect() }
    }

    pub fn xhat_degree(&self) -> u32 {
        self.xhat_exps().iter().map(|&e| e as u32).sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.x_exps().iter().map(|&e| e as u32).sum()
    }

    pub fn p_degree(&self) -> u32 {
        self.p_exps().iter().map(|&e| e as u32).sum()
    }

    /// Same operator word with the parameter part cleared.
    pub fn operator_part(&self) -> NormalMonomial {
        let d = self.dim();
        let mut exps = self.exps.clone();
        for e in exps[..=d].iter_mut() {
            *e = 0;
        }
        Self::from_exps(d, exps)
    }

    pub fn render(&self, metric: &Metric) -> String {
        let mut parts = Vec::new();
        push_power(&mut parts, "b".into(), self.beta_pow() as u32);
        for (mu, &e) in self.a_exps().iter().enumerate() {
            push_power(&mut parts, format!("a[{mu}]"), e as u32);
        }
        for (k, &e) in self.xhat_exps().iter().enumerate() {
            let (mu, nu) = metric.pairs()[k];
            push_power(&mut parts, format!("xh[{mu},{nu}]"), e as u32);
        }
        for (mu, &e) in self.x_exps().iter().enumerate() {
            push_power(&mut parts, format!("x[{mu}]"), e as u32);
        }
        for (mu, &e) in self.p_exps().iter().enumerate() {
            push_power(&mut parts, format!("p[{mu}]"), e as u32);
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono{:?}", self.exps.as_slice())
    }
}
