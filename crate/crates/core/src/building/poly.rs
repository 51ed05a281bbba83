//! Laurent polynomials over a prime field F_q, exact except where a series
//! inverse is explicitly truncated.

use std::collections::BTreeMap;
use std::fmt;

/// Arithmetic context for a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fq {
    pub q: u8,
}

impl Fq {
    pub fn new(q: u8) -> Option<Fq> {
        let is_prime = q >= 2 && (2..q).all(|d| q % d != 0);
        is_prime.then_some(Fq { q })
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }

    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "division by zero in F_q");
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, u8>,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: u8) -> Laurent {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, u8)>>(field: Fq, iter: I) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in iter {
            let cur = out.terms.get(&e).copied().unwrap_or(0);
            let v = field.add(cur, c % field.q);
            if v == 0 {
                out.terms.remove(&e);
            } else {
                out.terms.insert(e, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i32) -> u8 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Laurent, field: Fq) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            let v = field.add(out.coeff(e), c);
            if v == 0 {
                out.terms.remove(&e);
            } else {
                out.terms.insert(e, v);
            }
        }
        out
    }

    pub fn neg(&self, field: Fq) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(&e, &c)| (e, field.neg(c))).collect() }
    }

    pub fn sub(&self, other: &Laurent, field: Fq) -> Laurent {
        self.add(&other.neg(field), field)
    }

    pub fn mul(&self, other: &Laurent, field: Fq) -> Laurent {
        let mut acc: BTreeMap<i32, u8> = BTreeMap::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                let e = e1 + e2;
                let v = field.add(acc.get(&e).copied().unwrap_or(0), field.mul(c1, c2));
                if v == 0 {
                    acc.remove(&e);
                } else {
                    acc.insert(e, v);
                }
            }
        }
        Laurent { terms: acc }
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: i32) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Drops every term with exponent ≥ bound.
    pub fn truncate(&self, bound: i32) -> Laurent {
        Laurent { terms: self.terms.range(..bound).map(|(&e, &c)| (e, c)).collect() }
    }

    /// Keeps only terms with exponent ≥ bound (the part divisible by t^bound).
    pub fn tail_from(&self, bound: i32) -> Laurent {
        Laurent { terms: self.terms.range(bound..).map(|(&e, &c)| (e, c)).collect() }
    }

    /// Inverse of a unit of O = F_q[[t]] (valuation 0), modulo t^precision.
    pub fn invert_series(&self, precision: i32, field: Fq) -> Laurent {
        assert_eq!(self.valuation(), Some(0), "series inverse needs a unit");
        let c0 = self.coeff(0);
        let c0_inv = field.inv(c0);
        let mut out = vec![0u8; precision.max(1) as usize];
        out[0] = c0_inv;
        for m in 1..precision {
            // c0 * b_m = - sum_{i=1..m} a_i b_{m-i}
            let mut s = 0u8;
            for i in 1..=m {
                s = field.add(s, field.mul(self.coeff(i), out[(m - i) as usize]));
            }
            out[m as usize] = field.mul(c0_inv, field.neg(s));
        }
        Laurent::from_terms(field, out.into_iter().enumerate().map(|(e, c)| (e as i32, c)))
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&e, &c) in &self.terms {
            let term = match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (e, 1) => format!("t^{e}"),
                (e, c) => format!("{c}t^{e}"),
            };
            parts.push(term);
        }
        parts.join("+")
    }

    /// Parses sums of terms like `1`, `t`, `2t^3`, `t^-1`.
    pub fn parse(s: &str, field: Fq) -> Result<Laurent, String> {
        let s = s.trim();
        if s == "0" {
            return Ok(Laurent::zero());
        }
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let raw = raw.trim();
            let (coeff, rest) = match raw.find('t') {
                None => {
                    let c: u8 = raw.parse().map_err(|_| format!("bad coefficient {raw:?}"))?;
                    terms.push((0, c));
                    continue;
                }
                Some(0) => (1u8, &raw[1..]),
                Some(i) => {
                    let c: u8 =
                        raw[..i].parse().map_err(|_| format!("bad coefficient {raw:?}"))?;
                    (c, &raw[i + 1..])
                }
            };
            let exp: i32 = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse().map_err(|_| format!("bad exponent {rest:?}"))?
            } else {
                return Err(format!("bad term {raw:?}"));
            };
            terms.push((exp, coeff));
        }
        Ok(Laurent::from_terms(field, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_inverse() {
        let f2 = Fq::new(2).unwrap();
        // (1 + t)⁻¹ = 1 + t + t² + … over F₂
        let u = Laurent::from_terms(f2, [(0, 1), (1, 1)]);
        let inv = u.invert_series(5, f2);
        let prod = u.mul(&inv, f2).truncate(5);
        assert_eq!(prod, Laurent::one());

        let f3 = Fq::new(3).unwrap();
        let u = Laurent::from_terms(f3, [(0, 2), (2, 1)]);
        let inv = u.invert_series(6, f3);
        assert_eq!(u.mul(&inv, f3).truncate(6), Laurent::one());
    }

    #[test]
    fn parse_and_display() {
        let f3 = Fq::new(3).unwrap();
        let p = Laurent::parse("1+2t^2+t^-1", f3).unwrap();
        assert_eq!(p.coeff(-1), 1);
        assert_eq!(p.coeff(2), 2);
        let back = Laurent::parse(&p.display(), f3).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn non_prime_rejected() {
        assert!(Fq::new(4).is_none());
        assert!(Fq::new(2).is_some());
        assert!(Fq::new(3).is_some());
    }
}
