//! Small finite fields and the proper Dickson nearfield of order 9.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{automorphism_group, FiniteGroup};

/// Reduction polynomials for the prime-power fields, as the low coefficients
/// `m` of a monic `x^k + m[k-1] x^{k-1} + ... + m[0]`, so `x^k = -sum m_i x^i`.
///
/// * 4:  `x^2 + x + 1`      (x^2 = x + 1)
/// * 8:  `x^3 + x + 1`      (x^3 = x + 1)
/// * 9:  `x^2 + 1`          (x^2 = -1)
/// * 16: `x^4 + x + 1`      (x^4 = x + 1)
const MODULI: [(usize, usize, &[usize]); 4] = [
    (4, 2, &[1, 1]),
    (8, 2, &[1, 1, 0]),
    (9, 3, &[1, 0]),
    (16, 2, &[1, 1, 0, 0]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nearfield {
    name: String,
    additive: FiniteGroup,
    mul: Vec<usize>,
    one: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernSet {
    pub members: Vec<usize>,
}

impl Nearfield {
    /// Validates the nearfield axioms on explicit tables. The multiplicative
    /// identity is located automatically.
    pub fn from_tables(name: impl Into<String>, additive: FiniteGroup, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = additive.order();
        if mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidNearfield("multiplication table has the wrong shape".into()));
        }
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        if n < 2 {
            return Err(Error::InvalidNearfield("a nearfield has at least two elements".into()));
        }
        if !additive.is_abelian() {
            return Err(Error::InvalidNearfield("addition is not commutative".into()));
        }
        for a in 0..n {
            if m(0, a) != 0 || m(a, 0) != 0 {
                return Err(Error::InvalidNearfield(format!("0 does not annihilate {a}")));
            }
        }
        let one = (1..n)
            .find(|&e| (1..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::InvalidNearfield("no multiplicative identity".into()))?;
        for a in 1..n {
            if !(1..n).any(|b| m(a, b) == one) {
                return Err(Error::InvalidNearfield(format!("{a} has no inverse")));
            }
            for b in 1..n {
                if m(a, b) == 0 {
                    return Err(Error::InvalidNearfield(format!("zero divisor pair ({a}, {b})")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidNearfield(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                    if m(additive.add(a, b), c) != additive.add(m(a, c), m(b, c)) {
                        return Err(Error::InvalidNearfield(format!(
                            "right distributivity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Nearfield { name: name.into(), additive, mul: flat, one })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.additive.order()
    }

    pub fn additive_group(&self) -> &FiniteGroup {
        &self.additive
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.additive.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (1..self.order()).find(|&b| self.mul(a, b) == self.one)
    }

    pub fn power(&self, a: usize, k: u32) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut k = 1;
        let mut y = a;
        while y != self.one {
            y = self.mul(y, a);
            k += 1;
        }
        k
    }

    /// A triple `(d, a, b)` with `d(a + b) != da + db`, if one exists.
    pub fn left_distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for d in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if self.mul(d, self.add(a, b)) != self.add(self.mul(d, a), self.mul(d, b)) {
                        return Some((d, a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_field(&self) -> bool {
        self.is_commutative() && self.left_distributivity_failure().is_none()
    }

    /// Bijections preserving both operations, as maps on element indices.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        automorphism_group(&self.additive)
            .elements()
            .iter()
            .filter(|s| (0..n).all(|a| (0..n).all(|b| s.apply(self.mul(a, b)) == self.mul(s.apply(a), s.apply(b)))))
            .map(|s| s.map().to_vec())
            .collect()
    }
}

fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// The finite field of order `q`: modular arithmetic for primes, and a fixed
/// reduction polynomial (see [`MODULI`]) for 4, 8, 9 and 16. Element
/// `c0 + c1 p + c2 p^2 + ...` stands for the polynomial `c0 + c1 x + c2 x^2 + ...`.
pub fn make_field(q: usize) -> Result<Nearfield> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::Argument(format!("{q} is not a prime power")))?;
    if k == 1 {
        let additive = FiniteGroup::cyclic(p).with_name(format!("C{p}"));
        let mul = (0..p).map(|a| (0..p).map(|b| a * b % p).collect()).collect();
        return Nearfield::from_tables(format!("GF({q})"), additive, mul);
    }
    let (_, _, modulus) = MODULI
        .iter()
        .find(|(order, _, _)| *order == q)
        .ok_or_else(|| Error::Argument(format!("no built-in reduction polynomial for order {q}")))?;
    let k = k as usize;
    let digits = |mut v: usize| -> Vec<usize> {
        (0..k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    };
    let value = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
    let poly_mul = |a: usize, b: usize| -> usize {
        let (x, y) = (digits(a), digits(b));
        let mut prod = vec![0usize; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in modulus.iter().enumerate() {
                let shift = deg - k + i;
                prod[shift] = (prod[shift] + (p - m) * c) % p;
            }
        }
        value(&prod[..k])
    };
    let add_rows: Vec<Vec<usize>> = (0..q)
        .map(|a| {
            (0..q)
                .map(|b| {
                    let (x, y) = (digits(a), digits(b));
                    value(&x.iter().zip(&y).map(|(s, t)| (s + t) % p).collect::<Vec<_>>())
                })
                .collect()
        })
        .collect();
    let additive = FiniteGroup::from_table(format!("C{p}^{k}"), add_rows)?;
    let mul = (0..q).map(|a| (0..q).map(|b| poly_mul(a, b)).collect()).collect();
    Nearfield::from_tables(format!("GF({q})"), additive, mul)
}

/// `dickson9` or a prime power order.
pub fn nearfield_by_name(spec: &str) -> Result<Nearfield> {
    let spec = spec.trim();
    if spec == "dickson9" {
        return Ok(make_dickson_nearfield_9());
    }
    let q: usize = spec
        .parse()
        .map_err(|_| Error::Argument(format!("nearfield must be an order or dickson9, got '{spec}'")))?;
    make_field(q)
}

/// The proper Dickson nearfield of order 9 on the additive group of GF(9):
/// `a o b = a b` when `b` is a square in GF(9), and `a^3 b` otherwise.
pub fn make_dickson_nearfield_9() -> Nearfield {
    let f = make_field(9).expect("GF(9) is built in");
    let squares: HashSet<usize> = (1..9).map(|y| f.mul(y, y)).collect();
    let mul = (0..9)
        .map(|a| {
            (0..9)
                .map(|b| {
                    if b == 0 {
                        0
                    } else if squares.contains(&b) {
                        f.mul(a, b)
                    } else {
                        f.mul(f.power(a, 3), b)
                    }
                })
                .collect()
        })
        .collect();
    Nearfield::from_tables("Dickson(9)", f.additive_group().clone(), mul).expect("Dickson nearfield axioms")
}

/// Elements distributing from the left over every sum.
pub fn kern(field: &Nearfield) -> KernSet {
    let n = field.order();
    let members = (0..n)
        .filter(|&d| {
            (0..n).all(|a| (0..n).all(|b| field.mul(d, field.add(a, b)) == field.add(field.mul(d, a), field.mul(d, b))))
        })
        .collect();
    KernSet { members }
}

/// `{0}` together with the nonzero elements commuting with everything.
pub fn multiplicative_centre(field: &Nearfield) -> Vec<usize> {
    let n = field.order();
    (0..n).filter(|&c| c == 0 || (0..n).all(|x| field.mul(c, x) == field.mul(x, c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn by_name() {
        assert_eq!(nearfield_by_name("7").unwrap().order(), 7);
        assert!(!nearfield_by_name("dickson9").unwrap().is_field());
        assert!(nearfield_by_name("6").is_err());
        assert!(matches!(nearfield_by_name("gf7"), Err(Error::Argument(_))));
    }

    #[test]
    fn prime_fields() {
        let f3 = make_field(3).unwrap();
        assert_eq!(f3.mul_rows(), vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
        assert!(f3.is_field());
        for q in [2, 5, 7, 11, 13] {
            assert!(make_field(q).unwrap().is_field());
        }
    }

    #[test]
    fn prime_power_fields() {
        let f4 = make_field(4).unwrap();
        assert!(f4.is_field());
        assert!((1..4).all(|a| f4.power(a, 3) == f4.one()));
        let f9 = make_field(9).unwrap();
        assert!(f9.is_field());
        assert!((1..9).any(|a| f9.multiplicative_order(a) == 8));
        // i = x has i^2 = -1 = 2.
        assert_eq!(f9.mul(3, 3), 2);
        for q in [8, 16] {
            let f = make_field(q).unwrap();
            assert!(f.is_field());
            assert!((1..q).any(|a| f.multiplicative_order(a) == q - 1));
        }
    }

    #[test]
    fn non_prime_powers_are_rejected() {
        for q in [0, 1, 6, 10, 12, 15] {
            assert!(matches!(make_field(q), Err(Error::Argument(_))), "q = {q}");
        }
        assert!(make_field(25).is_err());
    }

    #[test]
    fn dickson_nearfield_structure() {
        let d = make_dickson_nearfield_9();
        assert!(d.left_distributivity_failure().is_some());
        assert!(!d.is_commutative());
        let involutions = (1..9).filter(|&a| d.multiplicative_order(a) == 2).count();
        assert_eq!(involutions, 1);
        let fours = (1..9).filter(|&a| d.multiplicative_order(a) == 4).count();
        assert_eq!(fours, 6);
    }

    #[test]
    fn kerns_and_centres() {
        let f9 = make_field(9).unwrap();
        assert_eq!(kern(&f9).members.len(), 9);
        assert_eq!(kern(&make_field(3).unwrap()).members, vec![0, 1, 2]);
        let d = make_dickson_nearfield_9();
        let k = kern(&d);
        // The prime subfield {0, 1, 2} (constants 0, 1, -1).
        assert_eq!(k.members, vec![0, 1, 2]);
        assert_eq!(multiplicative_centre(&d), k.members);
        assert_eq!(multiplicative_centre(&f9).len(), 9);
    }

    #[test]
    fn kern_is_closed() {
        for f in [make_dickson_nearfield_9(), make_field(8).unwrap(), make_field(7).unwrap()] {
            let k = kern(&f).members;
            let centre = multiplicative_centre(&f);
            assert!(centre.iter().all(|c| k.contains(c)));
            for &a in &k {
                if a != 0 {
                    assert!(k.contains(&f.inverse(a).unwrap()));
                }
                for &b in &k {
                    assert!(k.contains(&f.add(a, b)));
                    assert!(k.contains(&f.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        // Galois groups: GF(9) has Frobenius, prime fields are rigid.
        assert_eq!(make_field(9).unwrap().automorphisms().len(), 2);
        assert_eq!(make_field(5).unwrap().automorphisms().len(), 1);
        assert_eq!(make_field(8).unwrap().automorphisms().len(), 3);
    }
}
