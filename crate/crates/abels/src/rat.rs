//! Exact rational arithmetic specialised to the subring Z[1/p] of Q_p.
//!
//! Every quantity in the lattice model depends on finitely much p-adic
//! information, so no completion and no floating point are ever needed:
//! group elements have entries in Z[1/p] (denominators are p-powers) and
//! all derived values are exact rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact rational scalar.
pub type Rat = BigRational;

/// p-adic valuation, with `Infinite` reserved for 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero integer");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0u64;
    loop {
        let (q, r) = num::Integer::div_rem(&n, &p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `Infinite` for 0.
pub fn valuation(x: &Rat, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let num = int_valuation(x.numer(), p) as i64;
    let den = int_valuation(x.denom(), p) as i64;
    Valuation::Finite(num - den)
}

/// True iff x lies in Z[1/p], i.e. its reduced denominator is a p-power.
pub fn in_z_inv_p(x: &Rat, p: u64) -> bool {
    let p = BigInt::from(p);
    let mut d = x.denom().abs();
    while num::Integer::is_multiple_of(&d, &p) {
        d /= &p;
    }
    d.is_one()
}

/// True iff x lies in Z_p, i.e. its valuation is nonnegative.
pub fn is_p_integral(x: &Rat, p: u64) -> bool {
    match valuation(x, p) {
        Valuation::Finite(v) => v >= 0,
        Valuation::Infinite => true,
    }
}

/// p^e as an exact rational (e may be negative).
pub fn pow_p(p: u64, e: i64) -> Rat {
    let b = BigInt::from(p);
    if e >= 0 {
        Rat::from_integer(b.pow(e as u32))
    } else {
        Rat::new(BigInt::one(), b.pow((-e) as u32))
    }
}

/// p^e for e >= 0 as a big integer.
pub fn int_pow_p(p: u64, e: u64) -> BigInt {
    BigInt::from(p).pow(e.to_u32().expect("exponent too large"))
}

pub fn rat_from_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "a/b" or "a" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad rational `{s}`"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("bad rational `{s}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat_from_i64(12), 3), Valuation::Finite(1));
        assert_eq!(
            valuation(&parse_rat("5/9").unwrap(), 3),
            Valuation::Finite(-2)
        );
        assert_eq!(valuation(&rat_from_i64(0), 3), Valuation::Infinite);
        assert_eq!(valuation(&rat_from_i64(0), 2), Valuation::Infinite);
    }

    #[test]
    fn valuation_is_additive() {
        let x = parse_rat("12/5").unwrap();
        let y = parse_rat("9/8").unwrap();
        let vx = valuation(&x, 3).finite().unwrap();
        let vy = valuation(&y, 3).finite().unwrap();
        assert_eq!(valuation(&(x * y), 3), Valuation::Finite(vx + vy));
    }

    #[test]
    fn z_inv_p_membership() {
        assert!(in_z_inv_p(&parse_rat("7/8").unwrap(), 2));
        assert!(!in_z_inv_p(&parse_rat("7/6").unwrap(), 2));
        assert!(in_z_inv_p(&rat_from_i64(-3), 5));
    }

    #[test]
    fn pow_p_round_trip() {
        assert_eq!(pow_p(3, 2), rat_from_i64(9));
        assert_eq!(pow_p(3, -1) * rat_from_i64(3), rat_from_i64(1));
    }
}
