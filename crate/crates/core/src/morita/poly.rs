//! Univariate polynomials over the ground field and their roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Coefficients from the constant term up, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn constant(field: Field, c: Scalar) -> Self {
        Poly::new(field, vec![c])
    }

    /// `x - r`.
    pub fn linear(r: &Scalar) -> Self {
        let f = r.field();
        Poly::new(f, vec![-r, f.one()])
    }

    pub fn x(field: Field) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let get = |p: &Poly, i: usize| p.coeffs.get(i).unwrap_or(&z).clone();
        Poly::new(self.field, (0..n).map(|i| &get(self, i) + &get(o, i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(self.field, vec![]);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let linv = d.coeffs[dd].inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &linv;
            for (i, x) in d.coeffs.iter().enumerate() {
                r[k + i] -= &(&c * x);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &f.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut out = Poly::constant(self.field, self.field.one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        out
    }

    /// The distinct roots in the ground field, in a deterministic order.
    pub fn roots(&self) -> Result<Vec<Scalar>> {
        if self.is_zero() {
            return Err(Error::Unsupported("roots of the zero polynomial".into()));
        }
        let mut roots = match self.field {
            Field::Rational => rational_roots(self)?,
            Field::Prime(p) => {
                let f = self.monic();
                let xp = Poly::x(self.field).pow_mod(p, &f);
                let g = f.gcd(&xp.sub(&Poly::x(self.field)));
                let mut out = Vec::new();
                split_linear(&g, p, &mut out);
                out
            }
        };
        roots.sort_by_key(|r| r.to_string());
        Ok(roots)
    }

    /// Whether `self` is a product of distinct linear factors over the field;
    /// returns the roots when it is.
    pub fn split_roots(&self) -> Result<Option<Vec<Scalar>>> {
        let roots = self.roots()?;
        if Some(roots.len()) != self.degree() {
            return Ok(None);
        }
        Ok(Some(roots))
    }
}

/// Roots of a product of distinct linear factors over `F_p`.
fn split_linear(g: &Poly, p: u64, out: &mut Vec<Scalar>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(-&m.coeffs[0]);
        }
        Some(d) => {
            let f = g.field;
            for a in 0..p as i64 {
                let shifted = Poly::new(f, vec![f.from_i64(a), f.one()]);
                let h = shifted.pow_mod((p - 1) / 2, g).sub(&Poly::constant(f, f.one())).gcd(g);
                if let Some(k) = h.degree() {
                    if k > 0 && k < d {
                        split_linear(&h, p, out);
                        split_linear(&g.divrem(&h).0, p, out);
                        return;
                    }
                }
            }
        }
    }
}

/// Largest magnitude for which integer coefficients are factored by trial division.
const FACTOR_LIMIT: u64 = 1 << 40;

fn rational_roots(f: &Poly) -> Result<Vec<Scalar>> {
    let field = f.field;
    let mut big: Vec<BigRational> = f.coeffs.iter().map(|c| c.to_big_rational().unwrap()).collect();
    let mut roots = Vec::new();
    if big[0].is_zero() {
        roots.push(field.zero());
        while big[0].is_zero() {
            big.remove(0);
        }
    }
    let lcm = big.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = big
        .iter()
        .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
    let n = ints.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let small = |x: &BigInt| x.abs().to_u64().filter(|&v| v <= FACTOR_LIMIT);
    let (Some(a0), Some(an)) = (small(&ints[0]), small(&ints[n])) else {
        return Err(Error::Unsupported(
            "polynomial coefficients too large for rational root search".into(),
        ));
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let (pb, qb) = (BigInt::from(p) * sign, BigInt::from(q));
                let value: BigInt = ints
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * pb.pow(i as u32) * qb.pow((n - i) as u32))
                    .sum();
                if value.is_zero() {
                    roots.push(field.from_big_rational(&BigRational::new(pb, qb)));
                }
            }
        }
    }
    Ok(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: Field, c: &[i64]) -> Poly {
        Poly::new(field, c.iter().map(|&x| field.from_i64(x)).collect())
    }

    #[test]
    fn rational_roots_found() {
        let q = Field::Rational;
        // (x - 2)(2x + 3)(x^2 + 1)
        let f = poly(q, &[-2, 1]).mul(&poly(q, &[3, 2])).mul(&poly(q, &[1, 0, 1]));
        let roots = f.roots().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&q.ratio(-3, 2)));
        assert!(roots.iter().all(|r| f.eval(r).is_zero()));
        assert_eq!(f.split_roots().unwrap(), None);
        assert_eq!(poly(q, &[0, -1, 0, 1]).split_roots().unwrap().unwrap().len(), 3);
    }

    #[test]
    fn prime_field_roots_found() {
        let f7 = Field::prime(7).unwrap();
        // x^2 + 1 has no roots mod 7; x^2 - 2 has roots 3, 4
        assert!(poly(f7, &[1, 0, 1]).roots().unwrap().is_empty());
        let r = poly(f7, &[-2, 0, 1]).roots().unwrap();
        assert_eq!(r, vec![f7.from_i64(3), f7.from_i64(4)]);
        let big = Field::prime(1_000_003).unwrap();
        let f = poly(big, &[-5, 1]).mul(&poly(big, &[-77, 1])).mul(&poly(big, &[9, 1]));
        assert_eq!(f.split_roots().unwrap().unwrap().len(), 3);
    }

    #[test]
    fn division_identity() {
        let q = Field::Rational;
        let a = poly(q, &[1, 2, 3, 4, 5]);
        let b = poly(q, &[-1, 0, 2]);
        let (quot, rem) = a.divrem(&b);
        assert_eq!(quot.mul(&b).add(&rem), a);
        assert!(rem.degree().unwrap_or(0) < 2);
        assert_eq!(poly(q, &[-1, 0, 1]).gcd(&poly(q, &[1, 1])), poly(q, &[1, 1]));
    }
}
