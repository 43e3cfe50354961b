//! Dense univariate polynomials over the integers, coefficients stored low to high.
//!
//! The GCD is the heuristic evaluation/interpolation GCD with a primitive
//! pseudo-remainder sequence as fallback. Every heuristic candidate is
//! verified by exact division before it is accepted.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<BigInt>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(mut p: Poly) -> Poly {
    trim(&mut p);
    p
}

pub fn is_zero(p: &[BigInt]) -> bool {
    p.is_empty()
}

pub fn degree(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trimmed(out)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    trimmed(out)
}

pub fn neg(a: &[BigInt]) -> Poly {
    a.iter().map(|c| -c).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trimmed(out)
}

pub fn scale(a: &[BigInt], c: &BigInt) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Multiplies by `t^k`.
pub fn shift(a: &[BigInt], k: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend_from_slice(a);
    out
}

pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Exact division by an integer known to divide every coefficient.
pub fn div_scalar(a: &[BigInt], c: &BigInt) -> Poly {
    a.iter().map(|x| x / c).collect()
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    div_scalar(a, &c)
}

/// `a / b` if `b` divides `a` exactly in Z[t].
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Poly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lead = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (qk, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &qk * bj;
        }
        q[k] = qk;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trimmed(q))
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn max_norm(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Recovers a polynomial from its value at `xi` using the symmetric digit range.
fn interpolate(mut v: BigInt, xi: &BigInt) -> Poly {
    let half = xi >> 1;
    let mut out = Vec::new();
    while !v.is_zero() {
        let mut d = v.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        v = (v - &d) / xi;
        out.push(d);
    }
    trimmed(out)
}

/// GCD of two integer polynomials: primitive, positive leading coefficient.
/// Returns the empty polynomial only if both inputs are zero.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let pa = primitive(a);
    let pb = primitive(b);
    if pa == pb {
        return pa;
    }
    if let Some(g) = heuristic_gcd(&pa, &pb) {
        return g;
    }
    prs_gcd(&pa, &pb)
}

fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Poly> {
    let bound = max_norm(a).min(max_norm(b));
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..6 {
        let ga = eval(a, &xi);
        let gb = eval(b, &xi);
        if !ga.is_zero() && !gb.is_zero() {
            let h = ga.gcd(&gb);
            let cand = primitive(&interpolate(h, &xi));
            if !cand.is_empty() && div_exact(a, &cand).is_some() && div_exact(b, &cand).is_some() {
                return Some(cand);
            }
        }
        // Irrational-ish growth factor keeps successive evaluation points unrelated.
        xi = (&xi * 73794u32) / 27011u32 + 1u32;
    }
    None
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let top = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lead;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &top * bj;
        }
        trim(&mut r);
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            r = div_scalar(&r, &c);
        }
    }
    r
}

fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (mut x, mut y) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    primitive(&x)
}

/// Leading-coefficient sign helper used by callers that normalise by the low end.
pub fn low_sign(a: &[BigInt]) -> Sign {
    a.first().map(|c| c.sign()).unwrap_or(Sign::NoSign)
}

pub fn from_i64(coeffs: &[i64]) -> Poly {
    trimmed(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}
