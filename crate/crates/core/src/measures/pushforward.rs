use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{CylinderMeasure, TIMeasure};
use crate::error::Result;
use crate::params::{Params, Rational};
use crate::pattern::CylinderPattern;
use crate::pca::{envelope_row, NeighbourhoodClass};
use crate::symbol::Symbol;

/// `(F̂μ)(pat)`: the probability that one envelope step applied to a
/// configuration drawn from `μ` lands in `pat`.
///
/// Output site `j` of a window of length `s` reads input sites `j..j+3` of a
/// preimage window of length `s + 2`. Since only the neighbourhood class of
/// each triple matters, the preimage law is first reduced to masses of class
/// sequences and then contracted site by site against the rule rows. For a
/// translation-invariant `μ` the result does not depend on the neighbourhood
/// offset.
pub fn pushforward_cylinder(mu: &TIMeasure, pat: &CylinderPattern, params: &Params) -> Result<Rational> {
    let s = pat.span();
    let masses = mu.class_masses(s)?;

    let dp = params.p().denom().lcm(params.q().denom());
    let rows: Vec<[BigInt; 3]> = NeighbourhoodClass::ALL
        .iter()
        .map(|c| {
            let row = envelope_row(params, *c);
            Symbol::ALL.map(|sym| {
                let x = row.get(sym);
                x.numer() * (&dp / x.denom())
            })
        })
        .collect();

    let mut total = BigInt::zero();
    for plain in pat.expand() {
        let factors: Vec<[BigInt; 3]> = plain
            .iter()
            .map(|set| {
                [0, 1, 2].map(|c| set.iter().map(|sym| &rows[c][sym.index()]).sum::<BigInt>())
            })
            .collect();
        // contract the rightmost output site first
        let mut m: Vec<BigInt> = masses.to_vec();
        for f in factors.iter().rev() {
            m = m
                .chunks_exact(3)
                .map(|ch| &ch[0] * &f[0] + &ch[1] * &f[1] + &ch[2] * &f[2])
                .collect();
        }
        total += &m[0];
    }
    let denom = mu.denominator() * num_traits::pow(dp, s);
    Ok(Rational::new(total, denom))
}

/// The measure `F̂μ` restricted to windows of length `≤ order(μ) - 2`.
#[derive(Clone, Copy, Debug)]
pub struct Pushforward<'a> {
    pub mu: &'a TIMeasure,
    pub params: &'a Params,
}

impl<'a> Pushforward<'a> {
    pub fn new(mu: &'a TIMeasure, params: &'a Params) -> Self {
        Self { mu, params }
    }
}

impl CylinderMeasure for Pushforward<'_> {
    fn cylinder_prob(&self, pat: &CylinderPattern) -> Result<Rational> {
        pushforward_cylinder(self.mu, pat, self.params)
    }
}
