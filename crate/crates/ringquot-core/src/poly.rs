//! Univariate polynomial arithmetic over the scalar fields, used for minimal
//! polynomials and idempotent splitting.
//!
//! Polynomials are little-endian coefficient vectors with no trailing zeros
//! (the zero polynomial is the empty vector). All inputs to an operation must
//! share one field.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{FieldDesc, Scalar};

pub(crate) type Poly = Vec<Scalar>;

/// Removes trailing zeros in place.
pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
}

pub(crate) fn deg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

#[cfg(test)]
pub(crate) fn add(a: &Poly, b: &Poly, field: FieldDesc) -> Poly {
    let mut out = vec![field.zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &Poly, b: &Poly, field: FieldDesc) -> Poly {
    let mut out = vec![field.zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = &out[i] - c;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &Poly, b: &Poly, field: FieldDesc) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ca * cb);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &Poly, c: &Scalar) -> Poly {
    let mut out: Poly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; the divisor must be nonzero.
pub(crate) fn divmod(num: &Poly, den: &Poly, field: FieldDesc) -> (Poly, Poly) {
    let dd = deg(den).expect("division by the zero polynomial");
    let lead_inv = den[dd].inv().expect("nonzero leading coefficient");
    let mut rem = num.clone();
    let mut quo = vec![field.zero(); num.len().saturating_sub(dd)];
    while let Some(dr) = deg(&rem) {
        if dr < dd {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        let shift = dr - dd;
        quo[shift] = &quo[shift] + &c;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(&c * d);
        }
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

/// Rescales to leading coefficient 1 (zero polynomial stays zero).
pub(crate) fn monic(p: &Poly) -> Poly {
    match deg(p) {
        None => Vec::new(),
        Some(d) => scale(p, &p[d].inv().expect("field")),
    }
}

/// Monic gcd.
pub(crate) fn gcd(a: &Poly, b: &Poly, field: FieldDesc) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y, field);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub(crate) fn xgcd(a: &Poly, b: &Poly, field: FieldDesc) -> (Poly, Poly, Poly) {
    let one: Poly = vec![field.one()];
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Poly, Poly) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1, field);
        let ns = sub(&s0, &mul(&q, &s1, field), field);
        let nt = sub(&t0, &mul(&q, &t1, field), field);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, ns);
        t0 = core::mem::replace(&mut t1, nt);
    }
    match deg(&r0) {
        None => (Vec::new(), Vec::new(), Vec::new()),
        Some(d) => {
            let inv = r0[d].inv().expect("field");
            let c = inv;
            (scale(&r0, &c), scale(&s0, &c), scale(&t0, &c))
        }
    }
}

pub(crate) fn eval(p: &Poly, x: &Scalar, field: FieldDesc) -> Scalar {
    let mut acc = field.zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Formal derivative.
pub(crate) fn derivative(p: &Poly, field: FieldDesc) -> Poly {
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c * &field.from_i64(i as i64));
    }
    trim(&mut out);
    out
}

/// `base^exp mod m` by square-and-multiply.
pub(crate) fn pow_mod(base: &Poly, exp: u64, m: &Poly, field: FieldDesc) -> Poly {
    let mut result: Poly = vec![field.one()];
    let mut b = divmod(base, m, field).1;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = divmod(&mul(&result, &b, field), m, field).1;
        }
        b = divmod(&mul(&b, &b, field), m, field).1;
        e >>= 1;
    }
    result
}

/// Squarefree decomposition `f = prod g_i^{e_i}` with the `g_i` squarefree,
/// monic, and pairwise coprime (Musser's algorithm); correct in
/// characteristic p, where multiplicities divisible by p degenerate to
/// `f = g(x^p) = g(x)^p` over prime fields.
pub(crate) fn squarefree_decomposition(f: &Poly, field: FieldDesc) -> Vec<(Poly, usize)> {
    let f = monic(f);
    let Some(d) = deg(&f) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let fp = derivative(&f, field);
    if fp.is_empty() {
        // f = g(x^p); over the prime field this equals g(x)^p
        let p = field.characteristic() as usize;
        debug_assert!(p > 0, "zero derivative in characteristic zero means constant");
        let mut g = Vec::with_capacity(d / p + 1);
        for i in (0..f.len()).step_by(p) {
            g.push(f[i].clone());
        }
        trim(&mut g);
        return squarefree_decomposition(&g, field)
            .into_iter()
            .map(|(h, e)| (h, e * p))
            .collect();
    }
    let mut w = gcd(&f, &fp, field);
    if deg(&w) == Some(0) {
        return vec![(f, 1)];
    }
    // u carries each factor of multiplicity not divisible by p exactly once;
    // the k-th pass peels off the factors of multiplicity exactly k
    let mut u = divmod(&f, &w, field).0;
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let mut k = 1;
    while deg(&u).is_some_and(|du| du >= 1) && k <= d + 1 {
        let y = gcd(&u, &w, field);
        let piece = divmod(&u, &y, field).0;
        if deg(&piece).is_some_and(|dp| dp >= 1) {
            out.push((monic(&piece), k));
        }
        w = divmod(&w, &y, field).0;
        u = y;
        k += 1;
    }
    // what survives in w is the p-th-power part (zero derivative)
    if deg(&w).is_some_and(|dw| dw >= 1) {
        for (g, e) in squarefree_decomposition(&w, field) {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some(slot) => slot.1 += e,
                None => out.push((g, e)),
            }
        }
    }
    out
}

/// Deterministic Berlekamp factorization of a squarefree monic polynomial
/// over GF(p) into monic irreducibles. Cost includes a scan over the field
/// for each binary split, acceptable for the supported prime range.
fn berlekamp_squarefree(f: &Poly, field: FieldDesc) -> Vec<Poly> {
    let d = deg(f).expect("nonconstant");
    if d == 1 {
        return vec![f.clone()];
    }
    let p = field.characteristic();
    // Berlekamp matrix: rows are x^{p i} mod f
    let xp = pow_mod(&vec![field.zero(), field.one()], p, f, field);
    let mut rows: Vec<Poly> = Vec::with_capacity(d);
    let mut cur: Poly = vec![field.one()];
    for _ in 0..d {
        rows.push(cur.clone());
        cur = divmod(&mul(&cur, &xp, field), f, field).1;
    }
    // kernel of (Q - I)^T acting on coefficient vectors
    use crate::linalg::Mat;
    let m = Mat::from_fn(field, d, d, |i, j| {
        let mut v = if j < rows[i].len() { rows[i][j].clone() } else { field.zero() };
        if i == j {
            v = &v - &field.one();
        }
        v
    });
    // coefficient vectors g with g(x)^p = g(x) mod f: solve g (Q - I) = 0
    let kernel = m.transpose().kernel();
    if kernel.rows() == 1 {
        return vec![f.clone()]; // irreducible
    }
    // pick a non-constant element of the Berlekamp algebra
    let g: Poly = (0..kernel.rows())
        .map(|i| {
            let mut v = kernel.row(i).to_vec();
            trim(&mut v);
            v
        })
        .find(|v| deg(v).is_some_and(|dg| dg >= 1))
        .expect("kernel dimension >= 2 contains a nonconstant element");
    // split with gcd(f, g - c) over all c; every c-class is a factor product
    let mut parts: Vec<Poly> = Vec::new();
    let mut rest = f.clone();
    for c in 0..p {
        if deg(&rest).is_none_or(|dr| dr == 0) {
            break;
        }
        let shifted = sub(&g, &vec![Scalar::Gf { v: c, p }], field);
        let h = gcd(&rest, &shifted, field);
        if deg(&h).is_some_and(|dh| dh >= 1) {
            rest = divmod(&rest, &h, field).0;
            parts.push(h);
        }
    }
    if deg(&rest).is_some_and(|dr| dr >= 1) {
        parts.push(monic(&rest));
    }
    parts.into_iter().flat_map(|h| berlekamp_squarefree(&h, field)).collect()
}

/// Full monic-irreducible factorization over GF(p): `(factor, multiplicity)`
/// pairs sorted deterministically.
pub(crate) fn factor_gf(f: &Poly, field: FieldDesc) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, e) in squarefree_decomposition(f, field) {
        for h in berlekamp_squarefree(&g, field) {
            match out.iter_mut().find(|(k, _)| *k == h) {
                Some(slot) => slot.1 += e,
                None => out.push((h, e)),
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            match x.cmp(y) {
                core::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        core::cmp::Ordering::Equal
    }));
    out
}

/// All roots in GF(p), found by scanning the field.
pub(crate) fn gf_roots(f: &Poly, field: FieldDesc) -> Vec<Scalar> {
    let p = field.characteristic();
    (0..p)
        .map(|v| Scalar::Gf { v, p })
        .filter(|x| eval(f, x, field).is_zero())
        .collect()
}

/// Divisors of |n| up to a trial-division budget; `None` when n does not
/// factor completely within the budget.
fn bounded_divisors(n: &BigInt, budget: u64) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let mut steps = 0u64;
    while &(&d * &d) <= &m {
        steps += 1;
        if steps > budget {
            return None;
        }
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1u32;
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d0 in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d0 * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

/// All rational roots of a polynomial over the rationals, via the rational
/// root theorem on the integer-cleared form. `None` when the coefficient
/// integers are too large to factor within the trial-division budget.
pub(crate) fn rational_roots(f: &Poly) -> Option<Vec<Scalar>> {
    use num_rational::BigRational;
    let d = deg(f)?;
    if d == 0 {
        return Some(Vec::new());
    }
    // strip powers of x
    let mut low = 0;
    while f[low].is_zero() {
        low += 1;
    }
    let mut roots: Vec<Scalar> = Vec::new();
    if low > 0 {
        roots.push(FieldDesc::Rat.zero());
    }
    let g = &f[low..];
    if g.len() == 1 {
        return Some(roots);
    }
    // clear denominators
    let rat = |s: &Scalar| match s {
        Scalar::Rat(r) => r.clone(),
        _ => unreachable!("rational_roots over GF"),
    };
    let mut denom_lcm = BigInt::one();
    for c in g {
        let r = rat(c);
        let den = r.denom().clone();
        let gg = num_integer::Integer::gcd(&denom_lcm, &den);
        denom_lcm = &denom_lcm / &gg * &den;
    }
    let ints: Vec<BigInt> = g
        .iter()
        .map(|c| {
            let r = rat(c);
            r.numer() * (&denom_lcm / r.denom())
        })
        .collect();
    let a0 = &ints[0];
    let an = &ints[ints.len() - 1];
    let ps = bounded_divisors(a0, 2_000_000)?;
    let qs = bounded_divisors(an, 2_000_000)?;
    for p in &ps {
        for q in &qs {
            for sign in [1i32, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                let s = Scalar::Rat(cand);
                if eval(&g.to_vec(), &s, FieldDesc::Rat).is_zero() && !roots.contains(&s) {
                    roots.push(s.clone());
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(field: FieldDesc, coeffs: &[i64]) -> Poly {
        let mut v: Poly = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn divmod_and_gcd() {
        let f = FieldDesc::Rat;
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = p(f, &[-1, 0, 1]);
        let b = p(f, &[-1, 1]);
        let (q, r) = divmod(&a, &b, f);
        assert_eq!(q, p(f, &[1, 1]));
        assert!(r.is_empty());
        assert_eq!(gcd(&a, &p(f, &[1, 1]), f), p(f, &[1, 1]));
        let (g, s, t) = xgcd(&p(f, &[-1, 1]), &p(f, &[1, 1]), f);
        assert_eq!(g, p(f, &[1]));
        let combo = add(&mul(&s, &p(f, &[-1, 1]), f), &mul(&t, &p(f, &[1, 1]), f), f);
        assert_eq!(combo, g);
    }

    #[test]
    fn factor_over_gf2_and_gf5() {
        let f2 = FieldDesc::gf(2).unwrap();
        // x^4 + x = x (x+1) (x^2+x+1)
        let f = p(f2, &[0, 1, 0, 0, 1]);
        let fac = factor_gf(&f, f2);
        assert_eq!(fac.len(), 3);
        assert!(fac.iter().all(|(_, e)| *e == 1));
        let rebuilt = fac
            .iter()
            .fold(vec![f2.one()], |acc, (g, _)| mul(&acc, g, f2));
        assert_eq!(rebuilt, f);
        // repeated roots: (x - 1)^2 (x - 2) over GF(5)
        let f5 = FieldDesc::gf(5).unwrap();
        let g = mul(&mul(&p(f5, &[-1, 1]), &p(f5, &[-1, 1]), f5), &p(f5, &[-2, 1]), f5);
        let fac = factor_gf(&g, f5);
        assert_eq!(fac.len(), 2);
        let mut mults: Vec<usize> = fac.iter().map(|(_, e)| *e).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
        assert_eq!(gf_roots(&g, f5).len(), 2);
    }

    #[test]
    fn char_p_power_degeneration() {
        let f2 = FieldDesc::gf(2).unwrap();
        // x^2 + 1 = (x + 1)^2 over GF(2): derivative vanishes
        let f = p(f2, &[1, 0, 1]);
        let dec = squarefree_decomposition(&f, f2);
        assert_eq!(dec, vec![(p(f2, &[1, 1]), 2)]);
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        let g = p(f2, &[1, 0, 1, 0, 1]);
        let dec = squarefree_decomposition(&g, f2);
        assert_eq!(dec, vec![(p(f2, &[1, 1, 1]), 2)]);
    }

    #[test]
    fn rational_roots_basic() {
        let f = FieldDesc::Rat;
        // 6x^2 - 5x + 1 = (2x - 1)(3x - 1): roots 1/2, 1/3
        let roots = rational_roots(&p(f, &[1, -5, 6])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&f.from_fraction(1, 2).unwrap()));
        assert!(roots.contains(&f.from_fraction(1, 3).unwrap()));
        // x^2 + 1: none
        assert!(rational_roots(&p(f, &[1, 0, 1])).unwrap().is_empty());
        // x^3 - x: 0, 1, -1
        let roots = rational_roots(&p(f, &[0, -1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        let f5 = FieldDesc::gf(5).unwrap();
        let m = p(f5, &[1, 1, 1]); // x^2 + x + 1
        let x = p(f5, &[0, 1]);
        let mut manual = vec![f5.one()];
        for _ in 0..7 {
            manual = divmod(&mul(&manual, &x, f5), &m, f5).1;
        }
        assert_eq!(pow_mod(&x, 7, &m, f5), manual);
    }
}
