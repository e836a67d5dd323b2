//! Normal-ordered product of canonical monomials.
//!
//! Two rewrite systems are combined:
//! * Heisenberg: `p_mu^a x_mu^b = sum_k k! C(a,k) C(b,k) (-i eta_mumu)^k x_mu^(b-k) p_mu^(a-k)`,
//!   with different indices commuting.
//! * Lorentz tensorial generators: an out-of-order pair `xh_j xh_i` (`j > i`)
//!   is rewritten as `xh_i xh_j + [xh_j, xh_i]`.
//!
//! `xh` commutes with `x` and `p`, so the two blocks are ordered independently.

use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use crate::coeff::ExactComplex;

use super::gauss::Gauss;
use super::monomial::{layout_len, Exps, NormalMonomial};
use super::Metric;

pub(crate) type XhExps = SmallVec<[u16; 16]>;
type XhTerms = Vec<(XhExps, Gauss)>;

/// Memo for `xh`-word times single generator, local to one product call.
#[derive(Default)]
pub(crate) struct XhatCache {
    right_mul: HashMap<(XhExps, usize), XhTerms>,
    pub(crate) rewrites: u64,
}

impl XhatCache {
    /// `word * xh_g` in the PBW basis.
    fn mul_generator(&mut self, metric: &Metric, word: &XhExps, g: usize) -> XhTerms {
        let last = word.iter().rposition(|&e| e > 0);
        match last {
            None => {
                let mut w = word.clone();
                w[g] += 1;
                return vec![(w, Gauss::ONE)];
            }
            Some(last) if g >= last => {
                let mut w = word.clone();
                w[g] += 1;
                return vec![(w, Gauss::ONE)];
            }
            _ => {}
        }
        let key = (word.clone(), g);
        if let Some(hit) = self.right_mul.get(&key) {
            return hit.clone();
        }
        let last = last.unwrap();
        self.rewrites += 1;
        // word = rest * xh_last, and xh_last * xh_g = xh_g * xh_last + [xh_last, xh_g]
        let mut rest = word.clone();
        rest[last] -= 1;
        let mut acc: BTreeMap<XhExps, Gauss> = BTreeMap::new();
        for (t, c) in self.mul_generator(metric, &rest, g) {
            for (t2, c2) in self.mul_generator(metric, &t, last) {
                add_gauss(&mut acc, t2, c * c2);
            }
        }
        for &(k, ck) in metric.bracket(last, g) {
            for (t, c) in self.mul_generator(metric, &rest, k) {
                add_gauss(&mut acc, t, ck * c);
            }
        }
        let out: XhTerms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.right_mul.insert(key, out.clone());
        out
    }

    /// Product of two sorted `xh` words.
    pub(crate) fn ordered_product(&mut self, metric: &Metric, left: &[u16], right: &[u16]) -> XhTerms {
        let mut current: Vec<(XhExps, Gauss)> = vec![(SmallVec::from_slice(left), Gauss::ONE)];
        for (g, &mult) in right.iter().enumerate() {
            for _ in 0..mult {
                let mut acc: BTreeMap<XhExps, Gauss> = BTreeMap::new();
                for (w, c) in &current {
                    for (w2, c2) in self.mul_generator(metric, w, g) {
                        add_gauss(&mut acc, w2, *c * c2);
                    }
                }
                current = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        current
    }
}

fn add_gauss(acc: &mut BTreeMap<XhExps, Gauss>, key: XhExps, c: Gauss) {
    let slot = acc.entry(key).or_insert(Gauss::ZERO);
    *slot = *slot + c;
}

/// `k! C(a,k) C(b,k)` = falling(a, k) * C(b, k)
fn weyl_factor(a: u16, b: u16, k: u16) -> i128 {
    let mut falling: i128 = 1;
    for j in 0..k {
        falling = falling.checked_mul((a - j) as i128).expect("Weyl factor overflow");
    }
    let mut binom: i128 = 1;
    for j in 0..k {
        binom = binom.checked_mul((b - j) as i128).expect("Weyl factor overflow") / (j as i128 + 1);
    }
    falling.checked_mul(binom).expect("Weyl factor overflow")
}

/// Reordering of `p`-block of the left factor past the `x`-block of the right
/// factor: list of (per-index contraction counts, factor).
fn weyl_contractions(metric: &Metric, p_left: &[u16], x_right: &[u16]) -> Vec<(SmallVec<[u16; 6]>, Gauss)> {
    let d = p_left.len();
    let mut out: Vec<(SmallVec<[u16; 6]>, Gauss)> = vec![(SmallVec::from_elem(0, d), Gauss::ONE)];
    for mu in 0..d {
        let kmax = p_left[mu].min(x_right[mu]);
        if kmax == 0 {
            continue;
        }
        let eta = metric.eta(mu, mu) as i128;
        let mut next = Vec::with_capacity(out.len() * (kmax as usize + 1));
        for (ks, c) in &out {
            for k in 0..=kmax {
                let mut f = Gauss::minus_i_pow(k as u32).scale(weyl_factor(p_left[mu], x_right[mu], k));
                if k % 2 == 1 {
                    f = f.scale(eta);
                }
                let mut ks2 = ks.clone();
                ks2[mu] = k;
                next.push((ks2, *c * f));
            }
        }
        out = next;
    }
    out
}

/// Accumulate `coef * a * b` (normal ordered) into `out`.
pub(crate) fn monomial_product(
    metric: &Metric,
    a: &NormalMonomial,
    b: &NormalMonomial,
    coef: &ExactComplex,
    cache: &mut XhatCache,
    out: &mut BTreeMap<NormalMonomial, ExactComplex>,
) {
    let d = metric.dim();
    let np = metric.num_pairs();
    let (ea, eb) = (a.exps(), b.exps());
    let xh_off = 1 + d;
    let x_off = xh_off + np;
    let p_off = x_off + d;

    let (ha, hb) = (a.xhat_exps(), b.xhat_exps());
    let xh_terms: XhTerms = if hb.iter().all(|&e| e == 0) {
        vec![(SmallVec::from_slice(ha), Gauss::ONE)]
    } else if ha.iter().all(|&e| e == 0) {
        vec![(SmallVec::from_slice(hb), Gauss::ONE)]
    } else {
        cache.ordered_product(metric, ha, hb)
    };
    let contractions = weyl_contractions(metric, a.p_exps(), b.x_exps());

    for (h, g1) in &xh_terms {
        for (ks, g2) in &contractions {
            let g = *g1 * *g2;
            if g.is_zero() {
                continue;
            }
            let mut exps: Exps = SmallVec::with_capacity(layout_len(d));
            for i in 0..xh_off {
                exps.push(ea[i] + eb[i]);
            }
            exps.extend_from_slice(h);
            for mu in 0..d {
                exps.push(ea[x_off + mu] + eb[x_off + mu] - ks[mu]);
            }
            for mu in 0..d {
                exps.push(ea[p_off + mu] + eb[p_off + mu] - ks[mu]);
            }
            let m = NormalMonomial::from_exps(d, exps);
            let c = coef.mul_gauss(g.re, g.im);
            match out.get_mut(&m) {
                Some(slot) => *slot += &c,
                None => {
                    out.insert(m, c);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_factor_values() {
        assert_eq!(weyl_factor(1, 1, 1), 1);
        assert_eq!(weyl_factor(2, 2, 1), 4);
        assert_eq!(weyl_factor(2, 2, 2), 2);
        assert_eq!(weyl_factor(3, 1, 1), 3);
    }
}
