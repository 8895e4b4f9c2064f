use std::cmp::Ordering;

use rug::Rational;
use serde::{Deserialize, Serialize};

use super::ReceivedConstellation;
use crate::alignment::ReceivedModel;
use crate::constellations::IrrationalSelection;
use crate::numerics::HighPrecReal;
use crate::{Error, Result};

/// Required unscaled excess of d_min over the irrational margin.
pub const CERTIFIED_GAP_BITS: i32 = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// d_min ≥ κ̂·|G₀|/(max Q)^{m+ε}.
    KhintchineGroshev,
    /// d_min ≥ A(1/m − 4(a−1)|δ|).
    IrrationalMargin,
    /// d_min = A/m.
    RationalEquality,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub kind: BoundKind,
    /// Scaled bound.
    pub bound: f64,
    /// Scaled measured d_min.
    pub measured: f64,
    pub pass: bool,
    /// Unscaled measured − bound, where computed at high precision.
    pub certified_gap: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct BoundExtras {
    pub request_kg: bool,
    pub kappa: Option<f64>,
    pub kg_epsilon: f64,
    pub irrational: Option<IrrationalSelection>,
    /// Denominator m of a rational symmetric gain.
    pub rational_m: Option<u64>,
}

/// α_k = G_k / G₀ for the Khintchine–Groshev linear form.
pub fn kg_alphas(model: &ReceivedModel) -> Vec<f64> {
    let g0 = model.signal_gain.to_f64();
    model.aggregates.iter().map(|a| a.basis.to_f64() / g0).collect()
}

/// Largest aggregate magnitude max_k |I_k|.
pub fn kg_qmax(model: &ReceivedModel) -> u64 {
    model.aggregates.iter().map(|a| a.bound).max().unwrap_or(0)
}

/// scale·κ̂·|G₀| / (max Q)^{m+ε}.
pub fn kg_bound(model: &ReceivedModel, kappa: f64, epsilon: f64) -> f64 {
    let exponent = model.m() as f64 + epsilon;
    model.scale * kappa * model.signal_gain.to_f64().abs() / (kg_qmax(model) as f64).powf(exponent)
}

pub fn verify_dmin_bounds(
    model: &ReceivedModel,
    rc: &ReceivedConstellation,
    extras: &BoundExtras,
) -> Result<Vec<BoundCheck>> {
    if rc.model() != model {
        return Err(Error::ModelMismatch);
    }
    let d = rc.min_distance().ok_or(Error::SingleLabel)?;
    let mut out = Vec::new();
    if extras.request_kg {
        let kappa = extras.kappa.ok_or(Error::MissingKappa)?;
        let bound = kg_bound(model, kappa, extras.kg_epsilon);
        out.push(BoundCheck {
            kind: BoundKind::KhintchineGroshev,
            bound,
            measured: d.scaled,
            pass: d.scaled >= bound,
            certified_gap: None,
        });
    }
    if let Some(sel) = &extras.irrational {
        let prec = d.unscaled.prec();
        let margin = match &sel.exact_margin {
            Some(e) => e.to_real(prec),
            None => sel.margin.with_prec(prec),
        };
        let gap = &d.unscaled - &margin;
        let exact_ok = match (&d.exact, &sel.exact_margin) {
            (Some(x), Some(y)) => x.cmp_exact(y)? == Ordering::Greater,
            _ => true,
        };
        let tolerance = HighPrecReal::from_f64(2f64.powi(-CERTIFIED_GAP_BITS), prec);
        out.push(BoundCheck {
            kind: BoundKind::IrrationalMargin,
            bound: model.scale * margin.to_f64(),
            measured: d.scaled,
            pass: exact_ok && gap > tolerance,
            certified_gap: Some(gap.to_f64()),
        });
    }
    if let Some(m) = extras.rational_m {
        let target = Rational::from((1, m));
        let pass = match &d.exact {
            Some(e) => e.as_rational() == Some(&target),
            None => return Err(Error::ExactModeRequired),
        };
        out.push(BoundCheck {
            kind: BoundKind::RationalEquality,
            bound: model.scale / m as f64,
            measured: d.scaled,
            pass,
            certified_gap: None,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::{symmetric_multilayer_model, x_channel_models, ChannelInstance, Gain, SchemeParams};
    use crate::constellations::{select_irrational, MultiLayerConstellation};
    use crate::decoder::enumerate_received;
    use crate::diophantine::{khintchine_kappa, CfTarget};
    use crate::numerics::{FieldDescriptor, QuadFieldElement};

    #[test]
    fn two_thirds_equality() {
        let h = Gain::exact_rational(FieldDescriptor::default(), Rational::from((2, 3)));
        let model = symmetric_multilayer_model(&h, &MultiLayerConstellation::new(6, 2, 2).unwrap(), 1e6).unwrap().1;
        let rc = enumerate_received(&model).unwrap();
        let checks =
            verify_dmin_bounds(&model, &rc, &BoundExtras { rational_m: Some(3), ..Default::default() }).unwrap();
        assert_eq!(checks.len(), 1);
        assert!(checks[0].pass);
        assert!((checks[0].measured - model.scale / 3.0).abs() < 1e-9 * model.scale);
    }

    #[test]
    fn sqrt2_margin() {
        let f = FieldDescriptor::default();
        let root2 = QuadFieldElement::basis(f, 1);
        let sel = select_irrational(&CfTarget::Field(root2.clone()), 0.1, 20).unwrap();
        assert_eq!(sel.approximant.m, 29);
        for l in 1..=2 {
            let c = MultiLayerConstellation::new(sel.w, sel.a, l).unwrap();
            let model = symmetric_multilayer_model(&Gain::Exact(root2.clone()), &c, 1e12).unwrap().1;
            let rc = enumerate_received(&model).unwrap();
            let extras = BoundExtras { irrational: Some(sel.clone()), ..Default::default() };
            let check = &verify_dmin_bounds(&model, &rc, &extras).unwrap()[0];
            assert!(check.pass, "L={l}: {check:?}");
            assert!(check.bound >= model.scale * 0.01764);
        }
    }

    #[test]
    fn kg_requires_kappa() {
        let f = FieldDescriptor::new(2, 3).unwrap();
        let g = |c: [i64; 4]| Gain::Exact(QuadFieldElement::from_ints(f, c));
        let ch = ChannelInstance::new(
            vec![vec![g([1, 0, 0, 0]), g([0, 1, 0, 0])], vec![g([0, 0, 1, 0]), g([1, 0, 0, 0])]],
            1e8,
            1.0,
        )
        .unwrap();
        let bundle = x_channel_models(&ch, &SchemeParams::new(0.2)).unwrap();
        let model = &bundle.models[0];
        let rc = enumerate_received(model).unwrap();
        let missing = BoundExtras { request_kg: true, kg_epsilon: 0.2, ..Default::default() };
        assert!(matches!(verify_dmin_bounds(model, &rc, &missing), Err(Error::MissingKappa)));
        let est = khintchine_kappa(&kg_alphas(model), 0.2, 4 * kg_qmax(model) as u32).unwrap();
        let extras = BoundExtras { kappa: Some(est.kappa_hat), ..missing };
        let check = &verify_dmin_bounds(model, &rc, &extras).unwrap()[0];
        assert!(check.pass, "{check:?}");
    }
}
