use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QuadraticNumber;
use crate::error::Result;

/// Integers `(m, n)` with `m*u + n*v = t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeWitness {
    pub m: BigInt,
    pub n: BigInt,
}

impl LatticeWitness {
    pub fn holds(&self, u: &QuadraticNumber, v: &QuadraticNumber, t: &QuadraticNumber) -> bool {
        let m = QuadraticNumber::rational(BigRational::from_integer(self.m.clone()));
        let n = QuadraticNumber::rational(BigRational::from_integer(self.n.clone()));
        match (m.checked_mul(u), n.checked_mul(v)) {
            (Ok(mu), Ok(nv)) => mu.checked_add(&nv).map(|s| &s == t).unwrap_or(false),
            _ => false,
        }
    }
}

fn components(x: &QuadraticNumber) -> (BigRational, BigRational) {
    (x.rational_part().clone(), x.irrational_part().clone())
}

fn to_integer(r: &BigRational) -> Option<BigInt> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// Integer points of `p*m + q*n = r` with rational coefficients, not both zero.
fn solve_line(p: &BigRational, q: &BigRational, r: &BigRational) -> Option<LatticeWitness> {
    let l = p.denom().lcm(q.denom()).lcm(r.denom());
    let scale = BigRational::from_integer(l);
    let pi = to_integer(&(p * &scale)).expect("cleared denominator");
    let qi = to_integer(&(q * &scale)).expect("cleared denominator");
    let ri = to_integer(&(r * &scale)).expect("cleared denominator");
    let eg = pi.extended_gcd(&qi);
    let g = eg.gcd;
    if !ri.is_multiple_of(&g) {
        return None;
    }
    let factor = &ri / &g;
    let mut m = eg.x * &factor;
    let mut n = eg.y * &factor;
    // shift along the kernel direction (q/g, -p/g) towards small |m|
    let step_m = &qi / &g;
    let step_n = &pi / &g;
    if !step_m.is_zero() {
        let k = round_div(&(-&m), &step_m);
        m += &k * &step_m;
        n -= &k * &step_n;
    }
    Some(LatticeWitness { m, n })
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let num = a * &two + b.signum() * b;
    num.div_floor(&(b * &two))
}

/// Decides `t ∈ uZ + vZ` by splitting the equation into its rational and
/// `sqrt(d)` components.
pub fn lattice_membership(
    u: &QuadraticNumber,
    v: &QuadraticNumber,
    t: &QuadraticNumber,
) -> Result<Option<LatticeWitness>> {
    // all three must share a field
    u.join(v)?;
    u.join(t)?;
    v.join(t)?;
    let (ua, ub) = components(u);
    let (va, vb) = components(v);
    let (ta, tb) = components(t);

    let det = &ua * &vb - &va * &ub;
    if !det.is_zero() {
        let m = (&ta * &vb - &va * &tb) / &det;
        let n = (&ua * &tb - &ta * &ub) / &det;
        return Ok(match (to_integer(&m), to_integer(&n)) {
            (Some(m), Some(n)) => Some(LatticeWitness { m, n }),
            _ => None,
        });
    }

    let rows = [(ua, va, ta), (ub, vb, tb)];
    let pivot = rows.iter().position(|(p, q, _)| !p.is_zero() || !q.is_zero());
    let Some(pivot) = pivot else {
        return Ok(t.is_zero().then(|| LatticeWitness {
            m: BigInt::zero(),
            n: BigInt::zero(),
        }));
    };
    let (p, q, r) = &rows[pivot];
    let (op, oq, or) = &rows[1 - pivot];
    // the other row is a multiple of the pivot row; its right side must agree
    let ratio = if !p.is_zero() { op / p } else { oq / q };
    if &(&ratio * r) != or {
        return Ok(None);
    }
    Ok(solve_line(p, q, r))
}

/// True iff no rational `(p, q) != (0, 0)` has `p*u + q*v = 0`.
pub fn q_independent(u: &QuadraticNumber, v: &QuadraticNumber) -> Result<bool> {
    u.join(v)?;
    let (ua, ub) = components(u);
    let (va, vb) = components(v);
    Ok(!(ua * vb - va * ub).is_zero())
}
