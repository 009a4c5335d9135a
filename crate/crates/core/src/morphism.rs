//! Verification of the map `a ↦ (a·e)ₑ` into a direct sum of corners.
//!
//! Order reflection is tested with the model's tolerant order, so on numeric
//! models it holds up to the equality tolerance only.

use rand::RngCore;

use crate::check::{elements_or_err, stream_rng, summable_triple, AxiomReport, CheckMode, Recorder};
use crate::model::EffectMonoid;
use crate::Result;

struct Embedding<'a, M: EffectMonoid> {
    m: &'a M,
    family: &'a [M::Elem],
}

impl<M: EffectMonoid> Embedding<'_, M> {
    fn image(&self, a: &M::Elem) -> Vec<M::Elem> {
        self.family.iter().map(|e| self.m.product(a, e)).collect()
    }

    fn eq(&self, x: &[M::Elem], y: &[M::Elem]) -> bool {
        x.iter().zip(y).all(|(a, b)| self.m.approx_eq(a, b))
    }

    fn fmt(&self, xs: &[&M::Elem]) -> Vec<String> {
        xs.iter().map(|x| self.m.format_element(x)).collect()
    }

    fn unit(&self, rec: &mut Recorder) {
        let m = self.m;
        for e in self.family {
            rec.check(m.is_idempotent(e), "idempotent-family", || self.fmt(&[e]));
        }
        let img = self.image(&m.one());
        rec.check(self.eq(&img, self.family), "unit", Vec::new);
    }

    fn single(&self, a: &M::Elem, rec: &mut Recorder) {
        let m = self.m;
        let img = self.image(&m.complement(a));
        let expected: Vec<M::Elem> = self
            .family
            .iter()
            .zip(self.image(a))
            .map(|(e, x)| m.product(e, &m.complement(&x)))
            .collect();
        rec.check(self.eq(&img, &expected), "complement", || self.fmt(&[a]));
    }

    fn pair(&self, a: &M::Elem, b: &M::Elem, rec: &mut Recorder) {
        let m = self.m;
        let (ia, ib) = (self.image(a), self.image(b));
        if let Some(s) = m.sum(a, b) {
            let is = self.image(&s);
            let ok = ia
                .iter()
                .zip(&ib)
                .zip(&is)
                .all(|((x, y), z)| m.sum(x, y).is_some_and(|xy| m.approx_eq(&xy, z)));
            rec.check(ok, "sum", || self.fmt(&[a, b]));
        }
        let prod: Vec<M::Elem> = ia.iter().zip(&ib).map(|(x, y)| m.product(x, y)).collect();
        rec.check(
            self.eq(&self.image(&m.product(a, b)), &prod),
            "product",
            || self.fmt(&[a, b]),
        );
        if ia.iter().zip(&ib).all(|(x, y)| m.leq(x, y)) {
            rec.check(m.leq(a, b), "order-reflection", || self.fmt(&[a, b]));
        }
    }

    /// Whether the tuple of corner elements `xs` is the image of its sum.
    fn preimage(&self, xs: &[M::Elem], rec: &mut Recorder) {
        let m = self.m;
        let total = xs
            .iter()
            .try_fold(m.zero(), |acc, x| m.sum(&acc, x));
        let ok = total.as_ref().is_some_and(|s| self.eq(&self.image(s), xs));
        rec.check(ok, "surjectivity", || xs.iter().map(|x| m.format_element(x)).collect());
    }

    fn sample_tuple(&self, rng: &mut dyn RngCore) -> Vec<M::Elem> {
        self.family
            .iter()
            .map(|e| self.m.product(e, &self.m.sample(rng)))
            .collect()
    }
}

/// Checks that `a ↦ (a·e)ₑ` preserves the unit, complements, sums and
/// products and reflects the order. With `surjective`, also checks that every
/// tuple of corner elements is attained.
pub fn check_corner_embedding<M: EffectMonoid>(
    m: &M,
    family: &[M::Elem],
    mode: CheckMode,
    surjective: bool,
) -> Result<AxiomReport> {
    let emb = Embedding { m, family };
    let mut rec = Recorder::new(mode);
    emb.unit(&mut rec);
    match mode {
        CheckMode::Exhaustive => {
            let all = elements_or_err(m)?;
            for a in &all {
                emb.single(a, &mut rec);
                for b in &all {
                    emb.pair(a, b, &mut rec);
                }
            }
            if surjective {
                let corners: Vec<Vec<M::Elem>> = family
                    .iter()
                    .map(|e| {
                        all.iter()
                            .filter(|x| m.approx_eq(&m.product(e, x), x))
                            .cloned()
                            .collect()
                    })
                    .collect();
                let count = corners
                    .iter()
                    .try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
                if count.is_none_or(|c| c > all.len()) {
                    // more tuples than elements: no bijection
                    rec.fail(
                        "surjectivity",
                        corners.iter().map(|c| c.len().to_string()).collect(),
                    );
                } else {
                    let mut idx = vec![0usize; corners.len()];
                    'odometer: loop {
                        let xs: Vec<M::Elem> =
                            idx.iter().zip(&corners).map(|(i, c)| c[*i].clone()).collect();
                        emb.preimage(&xs, &mut rec);
                        for k in 0..idx.len() {
                            idx[k] += 1;
                            if idx[k] < corners[k].len() {
                                continue 'odometer;
                            }
                            idx[k] = 0;
                        }
                        break;
                    }
                }
            }
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = stream_rng(seed, 1);
            for _ in 0..count {
                let a = m.sample(&mut rng);
                let b = m.sample(&mut rng);
                let (x, y, _) = summable_triple(m, &mut rng);
                emb.single(&a, &mut rec);
                emb.pair(&a, &b, &mut rec);
                emb.pair(&x, &y, &mut rec);
                if let Some(xy) = m.sum(&x, &y) {
                    emb.pair(&x, &xy, &mut rec);
                }
                if surjective {
                    let xs = emb.sample_tuple(&mut rng);
                    emb.preimage(&xs, &mut rec);
                }
            }
        }
    }
    Ok(rec.finish())
}
