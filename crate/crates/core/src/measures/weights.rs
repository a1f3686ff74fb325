//! The weight chain `w_0 … w_4` and the one-step inequality for `w_4`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::formulas::{closed_form, FormulaId, Named};
use super::{CylinderMeasure, Pushforward, TIMeasure};
use crate::error::{Error, Result};
use crate::params::{rat_string, serialize_rational, Params, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    /// `w_0 … w_4` from the chained adjustments.
    pub chain: [Rational; 5],
    /// The single closed expression with `μ(?)` coefficient `1 - p² - pq - q`.
    pub explicit: Rational,
}

impl Weights {
    /// The closed expression coincides with the end of the chain.
    pub fn explicit_is_w4(&self) -> bool {
        self.chain[4] == self.explicit
    }
}

impl Serialize for Weights {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(6))?;
        for (k, w) in self.chain.iter().enumerate() {
            m.serialize_entry(&format!("w{k}"), &rat_string(w))?;
        }
        m.serialize_entry("explicit", &rat_string(&self.explicit))?;
        m.end()
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `w_k(μ)` for `k = 0..=4`.
pub fn weight<M: CylinderMeasure>(k: usize, mu: &M, params: &Params) -> Result<Rational> {
    if k > 4 {
        return Err(Error::InvalidParams(format!("no weight w{k}")));
    }
    Ok(weights(mu, params)?.chain[k].clone())
}

pub fn weights<M: CylinderMeasure>(mu: &M, params: &Params) -> Result<Weights> {
    let m = |s: &str| mu.mu(s);
    let (p, q, r) = (params.p(), params.q(), params.r());
    let one = Rational::one();
    let two = int(2);
    let p2 = p * p;

    let mq = m("?")?;
    let w0 = &mq + &two * m("0?")? - m("?0?")? + &two * m("100?")?;
    let w1 = &w0 - p * (&one - r) * &mq;
    let w2 = &w1
        - (&two * p * r * (m("1?")? + m("10?")?)
            + &two * &p2 * r * (m("1??")? + m("1?0?")? + m("10??")?)
            + int(4) * r * m("1?01")?
            + &two * p * m("100?")?);
    let w3 = &w2 - &two * (q + &p2 * r) * m("100?")? - &two * &p2 * r * (m("1?00")? + m("10?0")?);
    let w4 = &w3 - q * &mq;
    let explicit = explicit_final_weight(mu, params)?;
    Ok(Weights {
        chain: [w0, w1, w2, w3, w4],
        explicit,
    })
}

/// `(1-p²-pq-q)μ(?) + 2μ(0?) - μ(?0?) + 2r(1-p²)μ(100?) - 2pr{μ(1?)+μ(10?)}
///  - 2p²r{μ(1??)+μ(1?0?)+μ(10??)} - 4rμ(1?01) - 2p²r{μ(1?00)+μ(10?0)}`
pub fn explicit_final_weight<M: CylinderMeasure>(mu: &M, params: &Params) -> Result<Rational> {
    let m = |s: &str| mu.mu(s);
    let (p, q, r) = (params.p(), params.q(), params.r());
    let one = Rational::one();
    let two = int(2);
    let p2 = p * p;
    Ok((&one - &p2 - p * q - q) * m("?")? + &two * m("0?")? - m("?0?")?
        + &two * r * (&one - &p2) * m("100?")?
        - &two * p * r * (m("1?")? + m("10?")?)
        - &two * &p2 * r * (m("1??")? + m("1?0?")? + m("10??")?)
        - int(4) * r * m("1?01")?
        - &two * &p2 * r * (m("1?00")? + m("10?0")?))
}

/// Exact evaluation of
/// `w_4(F̂μ) ≤ w_4(μ) - Σ terms`, with `w_4(F̂μ)` taken from the pushforward.
#[derive(Clone, Debug, Serialize)]
pub struct WeightReport {
    pub measure: String,
    pub params: Params,
    pub weights: Weights,
    pub image_weights: Weights,
    pub terms: Vec<Named>,
    #[serde(serialize_with = "serialize_rational")]
    pub slack: Rational,
    pub passed: bool,
}

impl WeightReport {
    pub fn negative_terms(&self) -> Vec<&Named> {
        self.terms.iter().filter(|t| t.value.is_negative()).collect()
    }
}

pub fn verify_master_inequality(mu: &TIMeasure, params: &Params) -> Result<WeightReport> {
    params.require_region()?;
    mu.require_reflection_invariant()?;
    let image = Pushforward::new(mu, params);
    let w_mu = weights(mu, params)?;
    let w_img = weights(&image, params)?;

    let m = |s: &str| mu.mu(s);
    let (p, q, r) = (params.p(), params.q(), params.r());
    let one = Rational::one();
    let two = int(2);
    let p2 = p * p;
    let p3 = &p2 * p;
    let q2 = q * q;
    let q3 = &q2 * q;
    let r2 = r * r;
    let r3 = &r2 * r;
    let omp = &one - p;

    let residual = |id: FormulaId, name: &str| -> Result<Rational> {
        let e = closed_form(id, mu, params)?;
        Ok(e.residuals
            .into_iter()
            .find(|n| n.name == name)
            .expect("formula defines residual")
            .value)
    };
    let d10 = residual(FormulaId::OneZeroQ, "D_10?")?;
    let c1qq = residual(FormulaId::OneQQ, "C_1??")?;
    let c1q0q = residual(FormulaId::OneQZeroQ, "C_1?0?")?;
    let c10qq = residual(FormulaId::OneZeroQQ, "C_10??")?;
    let c1q01 = residual(FormulaId::OneQZeroOne, "C_1?01")?;
    let d100 = residual(FormulaId::OneZeroZeroQ, "D_100?")?;
    let c1q00 = residual(FormulaId::OneQZeroZero, "C_1?00")?;
    let c10q0 = residual(FormulaId::OneZeroQZero, "C_10?0")?;

    let k3 = r * (int(4) * &q2 + int(4) * q * &p2 - &two * &q3 + &two * &q2 * p);
    let k6 = r * (int(4) * &q2 + &two * q * &p2 * (&one + p) - &two * &q3 + &two * &q2 * p);
    let k17 = &two * p * q * &r2 * &omp * (&two + p)
        + &two * p * q * r * (&one - &two * p * r)
        + &two * &p2 * &q2 * r
        + int(4) * &p2 * &p2 * q * &r2;

    let terms = vec![
        Named {
            name: "q(1+p-pr)[mu(0?)+mu(00?)]".into(),
            value: q * (&one + p - p * r) * (m("0?")? + m("00?")?),
        },
        Named {
            name: "[p(1-r)+q]mu(10?)".into(),
            value: (p * (&one - r) + q) * m("10?")?,
        },
        Named {
            name: "r(4q^2+4qp^2-2q^3+2q^2p){mu(100?)+mu(1???)+mu(1?0?)+mu(10??)}".into(),
            value: &k3 * (m("100?")? + m("1???")? + m("1?0?")? + m("10??")?),
        },
        Named {
            name: "2r(1-p^2)mu(1??1)".into(),
            value: &two * r * (&one - &p2) * m("1??1")?,
        },
        Named {
            name: "r(1-p)mu(1?1)".into(),
            value: r * &omp * m("1?1")?,
        },
        Named {
            name: "r(4q^2+2qp^2(1+p)-2q^3+2q^2p){mu(1??0)+mu(1?00)+mu(10?0)}".into(),
            value: &k6 * (m("1??0")? + m("1?00")? + m("10?0")?),
        },
        Named {
            name: "pr^2(1+2q)mu(1***1)".into(),
            value: p * &r2 * (&one + &two * q) * m("1***1")?,
        },
        Named {
            name: "2p^3r^3(1-p){mu(10000?)+mu(?0000?)}".into(),
            value: &two * &p3 * &r3 * &omp * (m("10000?")? + m("?0000?")?),
        },
        Named {
            name: "2pqr^2(2-2q+p)mu(1***)".into(),
            value: &two * p * q * &r2 * (&two - &two * q + p) * m("1***")?,
        },
        Named {
            name: "[2pqr^2+qr{1-2p^2(1-p)}]mu(***)".into(),
            value: (&two * p * q * &r2 + q * r * (&one - &two * &p2 * &omp)) * m("***")?,
        },
        Named {
            name: "pr^2{1+2q(1-p)}mu(?000?)".into(),
            value: p * &r2 * (&one + &two * q * &omp) * m("?000?")?,
        },
        Named {
            name: "6pqr^2(1-p)mu(0000?)".into(),
            value: int(6) * p * q * &r2 * &omp * m("0000?")?,
        },
        Named {
            name: "2p^2qr^2 mu(1000?)".into(),
            value: &two * &p2 * q * &r2 * m("1000?")?,
        },
        Named {
            name: "4qp^2r^2[mu(1[0?]***)-mu(1000?)]".into(),
            value: int(4) * q * &p2 * &r2 * (m("1[0?]***")? - m("1000?")?),
        },
        Named {
            name: "2p^2r^3(1-p)(1+p-q)mu(000?1)".into(),
            value: &two * &p2 * &r3 * &omp * (&one + p - q) * m("000?1")?,
        },
        Named {
            name: "2p^2r^2(1-p)(1-p^2)mu(000**1)".into(),
            value: &two * &p2 * &r2 * &omp * (&one - &p2) * m("000**1")?,
        },
        Named {
            name: "{2pqr^2(1-p)(2+p)+2pqr(1-2pr)+2p^2q^2r+4p^4qr^2}mu(000?)".into(),
            value: &k17 * m("000?")?,
        },
        Named {
            name: "2qp^2r(1-p)mu(00000?)".into(),
            value: &two * q * &p2 * r * &omp * m("00000?")?,
        },
        Named {
            name: "D".into(),
            value: &two * p * r * d10
                + &two * &p2 * r * (c1qq + c1q0q + c10qq)
                + int(4) * r * c1q01,
        },
        Named {
            name: "D'".into(),
            value: &two * (q + &p2 * r) * d100 + &two * &p2 * r * (c1q00 + c10q0),
        },
    ];
    let total: Rational = terms.iter().fold(Rational::zero(), |acc, t| acc + &t.value);
    let slack = &w_mu.chain[4] - &w_img.chain[4] - total;
    let passed = !slack.is_negative();
    Ok(WeightReport {
        measure: mu.descriptor().to_string(),
        params: params.clone(),
        weights: w_mu,
        image_weights: w_img,
        terms,
        slack,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureFamily;
    use crate::params::rat;
    use crate::symbol::Symbol;

    #[test]
    fn initial_weight_of_product() {
        let mu = MeasureFamily::product(rat(1, 2), rat(3, 10), rat(1, 5))
            .unwrap()
            .build(4)
            .unwrap();
        let params = Params::from_ratios((1, 5), (3, 10)).unwrap();
        assert_eq!(weight(0, &mu, &params).unwrap(), rat(117, 200));
    }

    #[test]
    fn all_qmark_weight() {
        let mu = MeasureFamily::PointMass(Symbol::Qmark).build(4).unwrap();
        let params = Params::from_ratios((1, 5), (3, 10)).unwrap();
        let w = weights(&mu, &params).unwrap();
        assert_eq!(w.chain[0], rat(1, 1));
        assert_eq!(&w.chain[3] - &w.chain[4], rat(3, 10));
        assert!(w.explicit_is_w4());
    }

    #[test]
    fn point_masses_have_zero_slack_terms() {
        let params = Params::from_ratios((1, 5), (3, 10)).unwrap();
        let z = MeasureFamily::PointMass(Symbol::Zero).build(6).unwrap();
        let rep = verify_master_inequality(&z, &params).unwrap();
        assert_eq!(rep.weights.chain[4], rat(0, 1));
        assert_eq!(rep.image_weights.chain[4], rat(0, 1));
        assert_eq!(rep.slack, rat(0, 1));
        let o = MeasureFamily::PointMass(Symbol::One).build(6).unwrap();
        let rep = verify_master_inequality(&o, &params).unwrap();
        assert!(rep.passed);
        assert!(rep.terms.iter().all(|t| t.value == rat(0, 1)));
    }

    #[test]
    fn outside_region_rejected() {
        let mu = MeasureFamily::PointMass(Symbol::Zero).build(6).unwrap();
        let params = Params::from_ratios((0, 1), (0, 1)).unwrap();
        assert_eq!(verify_master_inequality(&mu, &params).unwrap_err(), Error::OutsideRegion);
    }
}
