use std::cmp::Ordering;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::alignment::{GainMode, Labeling, ReceivedModel, SymbolSet};
use crate::numerics::{default_precision, FieldDescriptor, HighPrecReal, QuadFieldElement, DEFAULT_TOLERANCE_BITS};
use crate::{Error, Result};

/// Default limit on |U₀|·Π|I_k|.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumerationOptions {
    pub cap: u64,
    /// Numeric gaps below 2^-tolerance_bits · scale are reported as uncertain.
    pub tolerance_bits: u32,
    pub precision: u32,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { cap: DEFAULT_CAP, tolerance_bits: DEFAULT_TOLERANCE_BITS, precision: default_precision() }
    }
}

/// Label of a received point. Signal labeling uses the decoded symbol index;
/// joint labeling uses the whole tuple index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label(pub u64);

/// Outcome of the Property Γ check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GammaVerdict {
    /// Exact: no two distinct labels share a received value.
    Holds,
    /// Exact: the two tuples have distinct labels and equal received values.
    Violated { first: u64, second: u64 },
    /// Numeric: the closest distinct-label pair and its scaled gap.
    NumericUncertain { first: u64, second: u64, gap: f64, below_tolerance: bool },
}

impl GammaVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            GammaVerdict::Holds => "holds",
            GammaVerdict::Violated { .. } => "violated",
            GammaVerdict::NumericUncertain { .. } => "numeric-uncertain",
        }
    }
}

/// Smallest gap between received values with distinct labels.
#[derive(Clone, Debug, PartialEq)]
pub struct MinDistance {
    /// scale · gap, in f64.
    pub scaled: f64,
    /// Unscaled gap at working precision.
    pub unscaled: HighPrecReal,
    /// Unscaled gap as an exact field element (exact mode).
    pub exact: Option<QuadFieldElement>,
    /// Tuple indices of the pair, lower value first.
    pub pair: (u64, u64),
}

/// One received point in full.
#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedPoint {
    pub value: f64,
    pub label: Label,
    /// Symbols: decoded stream first, then each aggregate.
    pub symbols: Vec<i64>,
}

/// Evaluates Σ b_k x_k for tuples of symbols.
#[derive(Clone, Debug)]
pub(crate) struct Evaluator {
    sets: Vec<SymbolSet>,
    bases_f64: Vec<f64>,
    /// Exact mode: integer coordinates of each basis times `denominator`.
    exact: Option<(FieldDescriptor, Vec<[i128; 4]>, Integer)>,
    bases_hp: Vec<Float>,
    /// Σ |b_k|·max|x_k|.
    magnitude: f64,
    /// Absolute error bound on the f64 value of any tuple.
    error: f64,
}

impl Evaluator {
    pub(crate) fn new(model: &ReceivedModel, precision: u32) -> Result<Self> {
        let sets = model.sets();
        let bases = model.bases();
        let mode = bases[0].mode();
        if bases.iter().any(|g| g.mode() != mode) {
            return Err(Error::ModeMismatch);
        }
        let bases_hp: Vec<Float> = bases.iter().map(|g| g.to_real(precision).into_float()).collect();
        let bases_f64: Vec<f64> = bases_hp.iter().map(|b| b.to_f64()).collect();
        let exact = if mode == GainMode::Exact {
            let elems: Vec<&QuadFieldElement> = bases.iter().map(|g| g.as_exact().expect("exact mode")).collect();
            let field = elems[0].field();
            let d = elems.iter().fold(Integer::from(1), |acc, e| acc.lcm(&e.common_denominator()));
            let coords = elems
                .iter()
                .map(|e| {
                    let mut out = [0i128; 4];
                    for (o, c) in out.iter_mut().zip(e.coords()) {
                        let v = Rational::from(c * &d).into_numer_denom().0;
                        *o = v.to_i128().ok_or(Error::Overflow("basis coordinates"))?;
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            Some((field, coords, d))
        } else {
            None
        };
        let magnitude: f64 = bases_f64.iter().zip(&sets).map(|(b, s)| b.abs() * s.bound() as f64).sum();
        let error = (sets.len() as f64 + 4.0) * f64::EPSILON * 2.0 * magnitude;
        Ok(Evaluator { sets, bases_f64, exact, bases_hp, magnitude, error })
    }

    pub(crate) fn symbols(&self, mut tuple: u64) -> Vec<i64> {
        self.sets
            .iter()
            .map(|s| {
                let n = s.len();
                let d = tuple % n;
                tuple /= n;
                s.value(d)
            })
            .collect()
    }

    /// Unscaled f64 value; the simulator uses the same summation order.
    pub(crate) fn value(&self, symbols: &[i64]) -> f64 {
        let mut acc = 0.0;
        for (b, &x) in self.bases_f64.iter().zip(symbols) {
            acc += b * x as f64;
        }
        acc
    }

    fn tuple_value(&self, tuple: u64) -> f64 {
        self.value(&self.symbols(tuple))
    }

    fn coords(&self, tuple: u64) -> Option<[i128; 4]> {
        let (_, basis, _) = self.exact.as_ref()?;
        let mut out = [0i128; 4];
        for (x, c) in self.symbols(tuple).iter().zip(basis) {
            for (o, ci) in out.iter_mut().zip(c) {
                *o += ci * *x as i128;
            }
        }
        Some(out)
    }

    /// Exact value(t1) − value(t2) as a field element.
    fn exact_gap(&self, t1: u64, t2: u64) -> Option<QuadFieldElement> {
        let (field, _, d) = self.exact.as_ref()?;
        let (a, b) = (self.coords(t1)?, self.coords(t2)?);
        let coords = [0, 1, 2, 3].map(|i| Rational::from((Integer::from(a[i] - b[i]), d.clone())));
        Some(QuadFieldElement::new(*field, coords))
    }

    fn hp_value(&self, tuple: u64) -> Float {
        let prec = self.bases_hp[0].prec();
        let mut acc = Float::new(prec);
        for (b, x) in self.bases_hp.iter().zip(self.symbols(tuple)) {
            acc += Float::with_val(prec, b * x);
        }
        acc
    }

    fn hp_gap(&self, t1: u64, t2: u64) -> Float {
        self.hp_value(t1) - self.hp_value(t2)
    }

    fn compare(&self, t1: u64, t2: u64) -> Ordering {
        match self.exact_gap(t1, t2) {
            Some(g) => g.signum(),
            None => self.hp_gap(t1, t2).cmp0().unwrap_or(Ordering::Equal),
        }
    }

    fn equal(&self, t1: u64, t2: u64) -> bool {
        self.compare(t1, t2) == Ordering::Equal
    }

    fn gap(&self, hi: u64, lo: u64) -> (HighPrecReal, Option<QuadFieldElement>) {
        match self.exact_gap(hi, lo) {
            Some(g) => (g.to_real(self.bases_hp[0].prec()), Some(g)),
            None => (HighPrecReal::from_float(self.hp_gap(hi, lo)), None),
        }
    }
}

/// All noiseless received points of a model, sorted by value.
#[derive(Clone, Debug)]
pub struct ReceivedConstellation {
    model: ReceivedModel,
    pub(crate) evaluator: Evaluator,
    /// Scaled values, ascending.
    values: Vec<f64>,
    tuples: Vec<u64>,
    signal_len: u64,
    dmin: Option<MinDistance>,
    gamma: GammaVerdict,
    tolerance_bits: u32,
}

fn label_of(labeling: Labeling, signal_len: u64, tuple: u64) -> Label {
    match labeling {
        Labeling::Signal => Label(tuple % signal_len),
        Labeling::Joint => Label(tuple),
    }
}

pub fn enumerate_received(model: &ReceivedModel) -> Result<ReceivedConstellation> {
    enumerate_received_with(model, &EnumerationOptions::default())
}

pub fn enumerate_received_with(model: &ReceivedModel, opts: &EnumerationOptions) -> Result<ReceivedConstellation> {
    let needed = model.tuple_count();
    if needed > u128::from(opts.cap) {
        return Err(Error::CapExceeded { needed, cap: opts.cap, bytes: needed * 16 });
    }
    let ev = Evaluator::new(model, opts.precision)?;
    let n = needed as u64;
    let mut points: Vec<(f64, u64)> = (0..n).into_par_iter().map(|t| (ev.tuple_value(t), t)).collect();
    points.par_sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    // Runs whose f64 gaps are within twice the error bound are reordered exactly.
    let tie = 2.0 * ev.error;
    let mut start = 0;
    while start < points.len() {
        let mut end = start + 1;
        while end < points.len() && points[end].0 - points[end - 1].0 <= tie {
            end += 1;
        }
        if end - start > 1 {
            points[start..end].sort_by(|a, b| ev.compare(a.1, b.1).then(a.1.cmp(&b.1)));
        }
        start = end;
    }

    let signal_len = model.decoded.set.len();
    let label = |t: u64| label_of(model.labeling, signal_len, t);

    // Coalesce equal values with equal labels; remember the first collision.
    let mut kept: Vec<(f64, u64)> = Vec::with_capacity(points.len());
    let mut collision: Option<(u64, u64)> = None;
    let mut i = 0;
    while i < points.len() {
        let mut j = i + 1;
        while j < points.len() && points[j].0 - points[j - 1].0 <= tie && ev.equal(points[i].1, points[j].1) {
            j += 1;
        }
        let group_start = kept.len();
        for p in &points[i..j] {
            let l = label(p.1);
            if kept[group_start..].iter().all(|q| label(q.1) != l) {
                if collision.is_none() && kept.len() > group_start {
                    collision = Some((kept[group_start].1, p.1));
                }
                kept.push(*p);
            }
        }
        i = j;
    }
    drop(points);

    let dmin = min_distance_scan(&ev, &kept, &label, model.scale);
    let gamma = match (&ev.exact, collision) {
        (Some(_), Some((a, b))) => GammaVerdict::Violated { first: a, second: b },
        (Some(_), None) => GammaVerdict::Holds,
        (None, _) => match &dmin {
            None => GammaVerdict::Holds,
            Some(d) => {
                let tol = ev.magnitude * 2f64.powi(-(opts.tolerance_bits as i32));
                let gap = d.unscaled.to_f64();
                GammaVerdict::NumericUncertain {
                    first: d.pair.0,
                    second: d.pair.1,
                    gap: d.scaled,
                    below_tolerance: gap < tol,
                }
            }
        },
    };
    let values = kept.iter().map(|p| model.scale * p.0).collect();
    let tuples = kept.iter().map(|p| p.1).collect();
    Ok(ReceivedConstellation {
        model: model.clone(),
        evaluator: ev,
        values,
        tuples,
        signal_len,
        dmin,
        gamma,
        tolerance_bits: opts.tolerance_bits,
    })
}

fn min_distance_scan(
    ev: &Evaluator,
    kept: &[(f64, u64)],
    label: &impl Fn(u64) -> Label,
    scale: f64,
) -> Option<MinDistance> {
    let pairs: Vec<(usize, f64)> = kept
        .windows(2)
        .enumerate()
        .filter(|(_, w)| label(w[0].1) != label(w[1].1))
        .map(|(i, w)| (i, w[1].0 - w[0].0))
        .collect();
    let gmin = pairs.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    if !gmin.is_finite() {
        return None;
    }
    let mut best: Option<MinDistance> = None;
    for &(i, g) in &pairs {
        if g > gmin + 4.0 * ev.error {
            continue;
        }
        let (lo, hi) = (kept[i].1, kept[i + 1].1);
        let (unscaled, exact) = ev.gap(hi, lo);
        let better = match &best {
            None => true,
            Some(b) => match (&exact, &b.exact) {
                (Some(x), Some(y)) => x.cmp_exact(y).expect("same field") == Ordering::Less,
                _ => unscaled < b.unscaled,
            },
        };
        if better {
            let scaled = scale * unscaled.to_f64();
            best = Some(MinDistance { scaled, unscaled, exact, pair: (lo, hi) });
        }
    }
    best
}

impl ReceivedConstellation {
    pub fn model(&self) -> &ReceivedModel {
        &self.model
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Scaled values, ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tuples(&self) -> &[u64] {
        &self.tuples
    }

    pub fn label(&self, index: usize) -> Label {
        label_of(self.model.labeling, self.signal_len, self.tuples[index])
    }

    pub fn label_of_tuple(&self, tuple: u64) -> Label {
        label_of(self.model.labeling, self.signal_len, tuple)
    }

    /// Decoded-stream symbol index carried by a label.
    pub fn signal_index(&self, label: Label) -> u64 {
        label.0 % self.signal_len
    }

    pub fn point(&self, index: usize) -> ReceivedPoint {
        ReceivedPoint {
            value: self.values[index],
            label: self.label(index),
            symbols: self.evaluator.symbols(self.tuples[index]),
        }
    }

    pub fn symbols(&self, tuple: u64) -> Vec<i64> {
        self.evaluator.symbols(tuple)
    }

    /// scale · Σ b_k x_k, evaluated exactly as the stored points were.
    pub fn noiseless(&self, symbols: &[i64]) -> f64 {
        self.model.scale * self.evaluator.value(symbols)
    }

    pub fn min_distance(&self) -> Option<&MinDistance> {
        self.dmin.as_ref()
    }

    pub fn gamma(&self) -> &GammaVerdict {
        &self.gamma
    }

    pub fn is_exact(&self) -> bool {
        self.evaluator.exact.is_some()
    }

    pub fn tolerance_bits(&self) -> u32 {
        self.tolerance_bits
    }

    /// Number of distinct labels present.
    pub fn label_count(&self) -> usize {
        let mut labels: Vec<Label> = (0..self.len()).map(|i| self.label(i)).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }
}

/// Scaled d_min; fails when only one label exists.
pub fn min_distance(rc: &ReceivedConstellation) -> Result<f64> {
    rc.min_distance().map(|d| d.scaled).ok_or(Error::SingleLabel)
}

pub fn check_gamma(rc: &ReceivedConstellation) -> GammaVerdict {
    rc.gamma.clone()
}

/// Label of the nearest point; ties go to the smaller value.
pub fn hard_decode(rc: &ReceivedConstellation, y: f64) -> Label {
    let v = &rc.values;
    let idx = v.partition_point(|&x| x < y);
    let pick = if idx == 0 {
        0
    } else if idx == v.len() {
        v.len() - 1
    } else if v[idx] - y < y - v[idx - 1] {
        idx
    } else {
        idx - 1
    };
    rc.label(pick)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::{symmetric_multilayer_model, Aggregate, AggregateMember, Gain, Stream};
    use crate::constellations::MultiLayerConstellation;
    use crate::numerics::RandomSource;

    fn f() -> FieldDescriptor {
        FieldDescriptor::default()
    }

    fn symmetric(n: i64, m: i64, a: u64, w: u64, l: u32) -> ReceivedModel {
        let h = Gain::exact_rational(f(), Rational::from((n, m)));
        let mut model =
            symmetric_multilayer_model(&h, &MultiLayerConstellation::new(w.max(a + 1), a, l).unwrap(), 1.0).unwrap().1;
        model.scale = 1.0;
        model
    }

    #[test]
    fn two_thirds_level_one() {
        let rc = enumerate_received(&symmetric(2, 3, 2, 6, 1)).unwrap();
        assert_eq!(rc.len(), 6);
        assert_eq!(rc.gamma(), &GammaVerdict::Holds);
        let d = rc.min_distance().unwrap();
        assert_eq!(d.exact.as_ref().unwrap().as_rational().unwrap(), &Rational::from((1, 3)));
        let expect = [0.0, 2.0 / 3.0, 1.0, 4.0 / 3.0, 5.0 / 3.0, 7.0 / 3.0];
        for (v, e) in rc.values().iter().zip(expect) {
            assert!((v - e).abs() < 1e-15);
        }
    }

    #[test]
    fn unit_gain_collides() {
        let model = symmetric(1, 1, 2, 3, 1);
        let rc = enumerate_received(&model).unwrap();
        let GammaVerdict::Violated { first, second } = rc.gamma().clone() else { panic!("{:?}", rc.gamma()) };
        let (a, b) = (rc.symbols(first), rc.symbols(second));
        assert_ne!(a, b);
        assert_eq!(a[0] + a[1], b[0] + b[1]);
        assert_eq!(rc.min_distance().unwrap().scaled, 0.0);
    }

    fn two_point() -> ReceivedModel {
        ReceivedModel {
            receiver: 0,
            decoded: Stream::new("u", SymbolSet::Range { lo: 0, hi: 1 }),
            signal_gain: Gain::exact_i64(f(), 5),
            aggregates: vec![],
            scale: 1.0,
            labeling: Labeling::Signal,
            degeneracy: None,
        }
    }

    #[test]
    fn two_point_constellation_and_ties() {
        let rc = enumerate_received(&two_point()).unwrap();
        assert_eq!(min_distance(&rc).unwrap(), 5.0);
        assert_eq!(hard_decode(&rc, 2.5), Label(0));
        assert_eq!(hard_decode(&rc, 2.5000001), Label(1));
        assert_eq!(hard_decode(&rc, 5.0), Label(1));
        assert_eq!(hard_decode(&rc, -100.0), Label(0));
    }

    #[test]
    fn single_label_has_no_distance() {
        let mut m = two_point();
        m.decoded.set = SymbolSet::Range { lo: 0, hi: 0 };
        let rc = enumerate_received(&m).unwrap();
        assert!(matches!(min_distance(&rc), Err(Error::SingleLabel)));
    }

    #[test]
    fn cap_reports_memory() {
        let mut m = two_point();
        m.decoded.set = SymbolSet::symmetric(10);
        let opts = EnumerationOptions { cap: 5, ..Default::default() };
        assert!(matches!(
            enumerate_received_with(&m, &opts),
            Err(Error::CapExceeded { needed: 21, cap: 5, bytes: 336 })
        ));
    }

    /// Same-label coincidences are coalesced and do not count toward d_min.
    #[test]
    fn same_label_duplicates() {
        let g = |c: [i64; 4]| Gain::Exact(QuadFieldElement::from_ints(f(), c));
        let u = Stream::new("u", SymbolSet::symmetric(1));
        let v = Stream::new("v", SymbolSet::symmetric(1));
        let model = ReceivedModel {
            receiver: 0,
            decoded: u,
            signal_gain: g([0, 1, 0, 0]),
            aggregates: vec![
                Aggregate::interval(g([1, 0, 0, 0]), vec![AggregateMember { stream: v.clone(), coefficient: 1 }])
                    .unwrap(),
                Aggregate::interval(g([2, 0, 0, 0]), vec![AggregateMember { stream: v, coefficient: 1 }]).unwrap(),
            ],
            scale: 1.0,
            labeling: Labeling::Signal,
            degeneracy: None,
        };
        let rc = enumerate_received(&model).unwrap();
        assert_eq!(rc.gamma(), &GammaVerdict::Holds);
        // x + 2y takes 7 values per signal symbol.
        assert_eq!(rc.len(), 21);
        let d = rc.min_distance().unwrap().exact.clone().unwrap();
        // Signal differences of 2 reach |2√2 − 3| ≈ 0.172, below √2 − 1.
        assert_eq!(d, QuadFieldElement::from_ints(f(), [3, -2, 0, 0]));
    }

    #[test]
    fn matches_pairwise_oracle_and_linear_scan() {
        let mut rng = RandomSource::new(3, 0);
        let g = |x: f64| Gain::numeric(x);
        let model = ReceivedModel {
            receiver: 0,
            decoded: Stream::new("u", SymbolSet::symmetric(4)),
            signal_gain: g(1.0),
            aggregates: vec![Aggregate::interval(
                g(0.7303),
                vec![AggregateMember { stream: Stream::new("v", SymbolSet::symmetric(5)), coefficient: 1 }],
            )
            .unwrap()],
            scale: 0.5,
            labeling: Labeling::Signal,
            degeneracy: None,
        };
        let rc = enumerate_received(&model).unwrap();
        assert!(matches!(rc.gamma(), GammaVerdict::NumericUncertain { below_tolerance: false, .. }));
        let mut best = f64::INFINITY;
        for i in 0..rc.len() {
            for j in 0..rc.len() {
                if rc.label(i) != rc.label(j) {
                    best = best.min((rc.values()[i] - rc.values()[j]).abs());
                }
            }
        }
        assert!((best - min_distance(&rc).unwrap()).abs() < 1e-12);
        for _ in 0..2000 {
            let y = rng.uniform_range(-5.0, 5.0);
            let argmin = (0..rc.len())
                .min_by(|&a, &b| (rc.values()[a] - y).abs().total_cmp(&(rc.values()[b] - y).abs()))
                .unwrap();
            assert_eq!(hard_decode(&rc, y), rc.label(argmin));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn numeric_model(q0: u64, q1: u64, g1: f64, joint: bool) -> ReceivedModel {
            ReceivedModel {
                receiver: 0,
                decoded: Stream::new("u", SymbolSet::symmetric(q0)),
                signal_gain: Gain::numeric(1.0),
                aggregates: vec![Aggregate::interval(
                    Gain::numeric(g1),
                    vec![AggregateMember { stream: Stream::new("v", SymbolSet::symmetric(q1)), coefficient: 1 }],
                )
                .unwrap()],
                scale: 1.0,
                labeling: if joint { Labeling::Joint } else { Labeling::Signal },
                degeneracy: None,
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn decode_matches_linear_scan(q0 in 1u64..20, q1 in 0u64..20, g1 in 0.05f64..3.0, ys in prop::collection::vec(-80.0f64..80.0, 50)) {
                let rc = enumerate_received(&numeric_model(q0, q1, g1, false)).unwrap();
                for y in ys {
                    let best = (0..rc.len())
                        .min_by(|&a, &b| (rc.values()[a] - y).abs().total_cmp(&(rc.values()[b] - y).abs()))
                        .unwrap();
                    prop_assert_eq!(hard_decode(&rc, y), rc.label(best));
                }
            }

            #[test]
            fn sorted_gap_matches_pairwise(q0 in 1u64..15, q1 in 0u64..15, g1 in 0.05f64..3.0, joint in any::<bool>()) {
                let rc = enumerate_received(&numeric_model(q0, q1, g1, joint)).unwrap();
                let v = rc.values();
                let mut best = f64::INFINITY;
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        if rc.label(i) != rc.label(j) {
                            best = best.min((v[i] - v[j]).abs());
                        }
                    }
                }
                let d = rc.min_distance().unwrap();
                prop_assert!((d.scaled - best).abs() <= 1e-12 * (1.0 + best));
            }

            #[test]
            fn noiseless_points_decode_to_their_label(n in 1i64..9, m in 2i64..9, q in 1u64..6) {
                let f = FieldDescriptor::default();
                let model = ReceivedModel {
                    receiver: 0,
                    decoded: Stream::new("u", SymbolSet::symmetric(q)),
                    signal_gain: Gain::exact_i64(f, 1),
                    aggregates: vec![Aggregate::interval(
                        Gain::Exact(QuadFieldElement::new(f, [Rational::from((n, m)), Rational::from(1), Rational::new(), Rational::new()])),
                        vec![AggregateMember { stream: Stream::new("v", SymbolSet::symmetric(q)), coefficient: 1 }],
                    ).unwrap()],
                    scale: 1.0,
                    labeling: Labeling::Signal,
                    degeneracy: None,
                };
                let rc = enumerate_received(&model).unwrap();
                prop_assert_eq!(rc.gamma(), &GammaVerdict::Holds);
                for t in 0..model.tuple_count() as u64 {
                    let y = rc.noiseless(&rc.symbols(t));
                    prop_assert_eq!(rc.signal_index(hard_decode(&rc, y)), rc.signal_index(rc.label_of_tuple(t)));
                }
            }
        }
    }
}
