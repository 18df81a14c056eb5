//! Bud mutation operators.

use alloc::vec::Vec;

use crate::portfolio::Portfolio;
use crate::rng::RandomStream;

/// Probability threshold on `r5` that separates the scaled and the fresh
/// stochastic replacement.
const SCALED_REPLACEMENT_SHARE: f64 = 0.3;
/// Chaotic variation shrinks the gene when `r6 <= 0.2`.
const CHAOTIC_SHRINK_MAX: f64 = 0.2;
/// Chaotic variation rescales the gene when `r6` lies in `[0.3, 0.7]`.
const CHAOTIC_RESCALE: (f64, f64) = (0.3, 0.7);

/// A contiguous run of chromosome positions `start..=end` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substring {
    pub start: usize,
    pub end: usize,
}

impl Substring {
    /// Length `g = end - start + 1`.
    pub fn len(self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// 0-based positions covered.
    pub fn positions(self) -> core::ops::Range<usize> {
        self.start - 1..self.end
    }
}

/// Draws `r1` uniform in `[1, K]` and `r2` uniform in `[r1, K]`.
pub fn pick_substring(k: usize, rng: &mut RandomStream) -> Substring {
    assert!(k >= 1, "substring of an empty chromosome");
    let start = rng.int_inclusive(1, k);
    let end = rng.int_inclusive(start, k);
    Substring { start, end }
}

/// Replaces a random substring of asset ids with distinct ids drawn from
/// those not held by the rest of the chromosome. Weights stay as they are.
pub fn mutate_shares(p: &mut Portfolio, n_assets: usize, rng: &mut RandomStream) -> Substring {
    let sub = pick_substring(p.assets.len(), rng);
    replace_substring(p, n_assets, sub, rng);
    sub
}

pub(crate) fn replace_substring(
    p: &mut Portfolio,
    n_assets: usize,
    sub: Substring,
    rng: &mut RandomStream,
) {
    let mut surviving = alloc::vec![false; n_assets + 1];
    for (pos, &a) in p.assets.iter().enumerate() {
        if !sub.positions().contains(&pos) {
            surviving[a] = true;
        }
    }
    let pool: Vec<usize> = (1..=n_assets).filter(|&a| !surviving[a]).collect();
    let picks = rand::seq::index::sample(rng, pool.len(), sub.len());
    for (pos, pick) in sub.positions().zip(picks) {
        p.assets[pos] = pool[pick];
    }
}

/// `p = 1 / (1 + ln g)`.
pub fn replacement_probability(g: usize) -> f64 {
    1.0 / (1.0 + libm::log(g as f64))
}

/// One gene of the stochastic variation given its draws. `fresh` is only
/// consumed when the gene is replaced.
#[inline]
pub fn stochastic_gene(gene: f64, p: f64, r4: f64, r5: f64, fresh: impl FnOnce() -> f64) -> f64 {
    if r4 <= p {
        if r5 <= SCALED_REPLACEMENT_SHARE {
            p * fresh()
        } else {
            fresh()
        }
    } else {
        gene
    }
}

/// Stochastic variation over a random substring of the weights.
pub fn mutate_weights_stochastic(weights: &mut [f64], rng: &mut RandomStream) -> Substring {
    let sub = pick_substring(weights.len(), rng);
    let p = replacement_probability(sub.len());
    for gene in &mut weights[sub.positions()] {
        let r4 = rng.unit();
        let r5 = rng.unit();
        *gene = stochastic_gene(*gene, p, r4, r5, || rng.unit());
    }
    sub
}

/// One gene of the chaotic variation given its draws. `r7` is only consumed
/// inside the rescale band.
#[inline]
pub fn chaotic_gene(gene: f64, pressure: f64, r6: f64, r7: impl FnOnce() -> f64) -> f64 {
    if r6 <= CHAOTIC_SHRINK_MAX {
        gene * (0.2 * pressure)
    } else if (CHAOTIC_RESCALE.0..=CHAOTIC_RESCALE.1).contains(&r6) {
        gene * (r7() + 0.2 * pressure)
    } else {
        gene
    }
}

/// Chaotic variation over every weight, driven by the current selection
/// pressure.
pub fn mutate_weights_chaotic(weights: &mut [f64], pressure: f64, rng: &mut RandomStream) {
    for gene in weights.iter_mut() {
        let r6 = rng.unit();
        *gene = chaotic_gene(*gene, pressure, r6, || rng.unit());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    #[test]
    fn substring_lengths() {
        assert_eq!(Substring { start: 2, end: 3 }.len(), 2);
        assert_eq!(Substring { start: 4, end: 4 }.len(), 1);
        assert_eq!(Substring { start: 1, end: 7 }.len(), 7);
        let mut rng = RandomStream::new(3);
        for _ in 0..1000 {
            let s = pick_substring(10, &mut rng);
            assert!(1 <= s.start && s.start <= s.end && s.end <= 10);
            assert!((1..=10).contains(&s.len()));
        }
        assert_eq!(pick_substring(1, &mut rng), Substring { start: 1, end: 1 });
    }

    #[test]
    fn share_replacement_worked_example() {
        let mut rng = RandomStream::new(11);
        for _ in 0..200 {
            let mut p = Portfolio::new(vec![2, 8, 5, 4, 7], vec![0.2; 5]);
            replace_substring(&mut p, 10, Substring { start: 2, end: 3 }, &mut rng);
            assert_eq!((p.assets[0], p.assets[3], p.assets[4]), (2, 4, 7));
            for &a in &p.assets[1..3] {
                assert!([1, 3, 5, 6, 8, 9, 10].contains(&a), "{a}");
            }
            assert_ne!(p.assets[1], p.assets[2]);
            assert_eq!(p.weights, [0.2; 5]);
        }
    }

    #[test]
    fn removed_ids_can_come_back() {
        let mut rng = RandomStream::new(5);
        let mut seen_eight = false;
        for _ in 0..500 {
            let mut p = Portfolio::new(vec![2, 8, 5, 4, 7], vec![0.2; 5]);
            replace_substring(&mut p, 10, Substring { start: 2, end: 3 }, &mut rng);
            seen_eight |= p.assets[1..3].contains(&8);
        }
        assert!(seen_eight);
    }

    #[test]
    fn full_cardinality_keeps_the_set() {
        let mut rng = RandomStream::new(9);
        for _ in 0..200 {
            let mut p = Portfolio::new(vec![3, 1, 5, 2, 4], vec![0.2; 5]);
            mutate_shares(&mut p, 5, &mut rng);
            let mut ids = p.assets.clone();
            ids.sort_unstable();
            assert_eq!(ids, [1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn whole_string_redraw() {
        let mut rng = RandomStream::new(13);
        let mut p = Portfolio::new(vec![1, 2, 3], vec![0.3; 3]);
        replace_substring(&mut p, 50, Substring { start: 1, end: 3 }, &mut rng);
        let mut ids = p.assets.clone();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 3);
        assert!(ids.iter().all(|&a| (1..=50).contains(&a)));
    }

    #[test]
    fn replacement_probability_values() {
        assert_eq!(replacement_probability(1), 1.0);
        // 1 / (1 + ln 2) and 1 / (1 + ln 10)
        assert_abs_diff_eq!(
            replacement_probability(2),
            0.590_616_109_149_641_2,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            replacement_probability(10),
            0.302_793_106_564_113_85,
            epsilon = 1e-15
        );
    }

    #[test]
    fn stochastic_rule() {
        let p10 = replacement_probability(10);
        assert_eq!(stochastic_gene(0.7, p10, 0.9, 0.1, || unreachable!()), 0.7);
        assert_eq!(stochastic_gene(0.7, 1.0, 0.5, 0.2, || 0.42), 0.42);
        assert_abs_diff_eq!(
            stochastic_gene(0.7, 0.5, 0.5, 0.2, || 0.42),
            0.21,
            epsilon = 1e-15
        );
        assert_eq!(stochastic_gene(0.7, 0.5, 0.5, 0.8, || 0.42), 0.42);
    }

    #[test]
    fn chaotic_rule() {
        assert_eq!(chaotic_gene(0.4, 0.5, 0.9, || unreachable!()), 0.4);
        assert_abs_diff_eq!(
            chaotic_gene(0.4, 0.5, 0.1, || unreachable!()),
            0.04,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(chaotic_gene(0.4, 0.5, 0.5, || 0.3), 0.16, epsilon = 1e-15);
        assert_eq!(chaotic_gene(0.4, 0.5, 0.25, || unreachable!()), 0.4);
        assert_eq!(chaotic_gene(0.4, 0.5, 0.2, || unreachable!()), 0.4 * 0.1);
        assert_abs_diff_eq!(chaotic_gene(0.4, 0.5, 0.7, || 0.5), 0.24, epsilon = 1e-15);
    }

    #[test]
    fn stochastic_touches_only_the_substring() {
        let mut rng = RandomStream::new(21);
        for _ in 0..500 {
            let mut w = vec![2.0; 10];
            let sub = mutate_weights_stochastic(&mut w, &mut rng);
            for (pos, &x) in w.iter().enumerate() {
                if !sub.positions().contains(&pos) {
                    assert_eq!(x, 2.0);
                } else {
                    assert!(x == 2.0 || (0.0..=1.0).contains(&x));
                }
            }
        }
    }
}
