//! Univariate polynomials over ℚ: exact arithmetic, resultants and
//! discriminants, Sturm-based real root isolation, and certified counting of
//! p-adic integer roots for monic integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::arith::{int_valuation, mod_inverse, rat_int, Rational};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Coefficients little-endian, no trailing zeros; the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    c: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> QPoly {
        while coeffs.last().is_some_and(|x| x.is_zero()) {
            coeffs.pop();
        }
        QPoly { c: coeffs }
    }

    pub fn zero() -> QPoly {
        QPoly { c: vec![] }
    }

    pub fn one() -> QPoly {
        QPoly::constant(Rational::one())
    }

    pub fn constant(a: Rational) -> QPoly {
        QPoly::new(vec![a])
    }

    pub fn x() -> QPoly {
        QPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&x| rat_int(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn leading(&self) -> Rational {
        self.c.last().cloned().expect("leading of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, k: &Rational) -> QPoly {
        QPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn monic(&self) -> QPoly {
        let l = self.leading();
        self.scale(&l.recip())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lead_inv = d.leading().recip();
        let mut rem = self.c.clone();
        let mut quo = vec![Rational::zero(); self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() * &lead_inv;
            if !f.is_zero() {
                quo[k] = f.clone();
                for (i, dc) in d.c.iter().enumerate() {
                    let v = &rem[k + i] - &f * dc;
                    rem[k + i] = v;
                }
            }
            rem.pop();
        }
        (QPoly::new(quo), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> QPoly {
        if self.c.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_bigint(&self, x: &BigInt) -> Rational {
        self.eval(&Rational::from_integer(x.clone()))
    }

    /// Substitutes another polynomial for the variable.
    pub fn compose(&self, inner: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(inner).add(&QPoly::constant(a.clone()));
        }
        acc
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative());
        g.degree() == Some(0)
    }

    /// Resultant via the Sylvester matrix (degrees here are tiny).
    pub fn resultant(&self, o: &QPoly) -> Rational {
        if self.is_zero() || o.is_zero() {
            return Rational::zero();
        }
        let n = self.deg();
        let m = o.deg();
        if n == 0 {
            return self.coeff(0).pow(m as i32);
        }
        if m == 0 {
            return o.coeff(0).pow(n as i32);
        }
        let size = n + m;
        let syl = Mat::from_fn(size, size, |i, j| {
            if i < m {
                // row of self shifted by i: coefficient of x^{n+m-1-j}
                let k = n as i64 - (j as i64 - i as i64);
                if (0..=n as i64).contains(&k) {
                    self.coeff(k as usize)
                } else {
                    Rational::zero()
                }
            } else {
                let i2 = i - m;
                let k = m as i64 - (j as i64 - i2 as i64);
                if (0..=m as i64).contains(&k) {
                    o.coeff(k as usize)
                } else {
                    Rational::zero()
                }
            }
        });
        syl.det()
    }

    /// disc(f) = (−1)^{n(n−1)/2} Res(f, f') / lc(f).
    pub fn discriminant(&self) -> Rational {
        let n = self.deg();
        assert!(n >= 1, "discriminant needs positive degree");
        let res = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        res * rat_int(sign) / self.leading()
    }

    /// Rational roots of a monic integer polynomial (all such roots are
    /// integers dividing the constant term).
    pub fn integer_roots_monic(&self) -> Vec<BigInt> {
        assert!(self.is_monic() && self.has_integer_coeffs());
        if self.coeff(0).is_zero() {
            let mut roots = vec![BigInt::zero()];
            let reduced = QPoly::new(self.c[1..].to_vec());
            if reduced.degree().map_or(false, |d| d >= 1) {
                roots.extend(reduced.integer_roots_monic());
            }
            roots.sort();
            roots.dedup();
            return roots;
        }
        let bound = self.coeff(0).to_integer().abs();
        let mut roots = Vec::new();
        let mut d = BigInt::one();
        let cutoff = BigInt::from(1_000_000u64); // desk-scale constants only
        loop {
            if &d * &d > bound || d > cutoff {
                break;
            }
            if (&bound % &d).is_zero() {
                let q = &bound / &d;
                for cand in [d.clone(), -d.clone(), q.clone(), -q] {
                    if self.eval_bigint(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
            d += 1;
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Sign changes in the Sturm sequence at x, counting zeros as absent.
    fn sturm_variations(chain: &[QPoly], x: &Rational) -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|f| {
                let v = f.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                return chain;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            chain.push(r);
        }
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn count_real_roots_between(&self, lo: &Rational, hi: &Rational) -> usize {
        assert!(!self.is_zero());
        let chain = self.sturm_chain();
        QPoly::sturm_variations(&chain, lo) - QPoly::sturm_variations(&chain, hi)
    }

    /// Cauchy bound: all real roots lie in (−B, B).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading();
        let m = self
            .c
            .iter()
            .take(self.c.len() - 1)
            .map(|a| (a / &lead).abs())
            .fold(Rational::zero(), |a, b| if a > b { a } else { b });
        m + rat_int(1)
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().map_or(true, |d| d == 0) {
            return 0;
        }
        let b = self.root_bound();
        self.count_real_roots_between(&(-b.clone()), &b)
    }

    /// Disjoint isolating intervals (lo, hi], in increasing order, one per
    /// distinct real root. Requires a squarefree polynomial.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        assert!(self.is_squarefree(), "isolate_real_roots needs squarefree input");
        let chain = self.sturm_chain();
        let b = self.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = QPoly::sturm_variations(&chain, &lo) - QPoly::sturm_variations(&chain, &hi);
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / rat_int(2);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Shrinks an isolating interval for this (squarefree) polynomial until
    /// `g` has no root inside it, then returns the sign of g at the root.
    /// `g` must not vanish at the isolated root.
    pub fn sign_at_isolated_root(&self, interval: &(Rational, Rational), g: &QPoly) -> i32 {
        let (mut lo, mut hi) = interval.clone();
        let chain = self.sturm_chain();
        let gchain = g.gcd(self).degree();
        assert_eq!(gchain, Some(0), "g shares a root with f");
        loop {
            // g sign is decided once g has no roots in (lo, hi] and g(hi) ≠ 0
            let g_roots = if g.degree().map_or(true, |d| d == 0) {
                0
            } else {
                g.count_real_roots_between(&lo, &hi)
            };
            let ghi = g.eval(&hi);
            if g_roots == 0 && !ghi.is_zero() {
                return if ghi.is_positive() { 1 } else { -1 };
            }
            let mid = (&lo + &hi) / rat_int(2);
            let left = QPoly::sturm_variations(&chain, &lo) - QPoly::sturm_variations(&chain, &mid);
            if left == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let (sign, mag) = if a.is_negative() {
                ("-", -a.clone())
            } else {
                ("+", a.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

// ---------------------------------------------------------------------------
// p-adic machinery for monic integer polynomials
// ---------------------------------------------------------------------------

/// Caps for the certified ℤ_p root count; exceeding them yields
/// `PrecisionExhausted`, never a wrong answer.
const MAX_PRECISION: u64 = 64;
const MAX_BREADTH: usize = 20_000;

/// Certified count of distinct roots in ℤ_p of a monic squarefree integer
/// polynomial (all ℚ_p-roots of such a polynomial are p-adic integers).
///
/// With V = v_p(disc f), every residue class mod p^{2V+2} on which f vanishes
/// contains exactly one root (Hensel plus the integer Bézout identity
/// u·f + v·f' = Res(f, f')), and distinct roots differ before level V+1, so
/// the count is the number of distinct survivors mod p^{V+1}.
pub fn count_zp_roots(f: &QPoly, p: u64) -> Result<usize> {
    let survivors = zp_survivors(f, p)?;
    Ok(survivors.roots.len())
}

struct ZpRoots {
    /// One certified representative per root, mod p^precision.
    roots: Vec<BigInt>,
    precision: u64,
}

fn zp_survivors(f: &QPoly, p: u64) -> Result<ZpRoots> {
    assert!(f.is_monic() && f.has_integer_coeffs(), "monic integer input");
    let disc = f.discriminant();
    assert!(!disc.is_zero(), "separable input required");
    let v = int_valuation(&disc.to_integer(), p);
    let k = 2 * v + 2;
    if k > MAX_PRECISION {
        return Err(Error::PrecisionExhausted {
            prime: p,
            detail: format!("needs precision p^{k}, cap is p^{MAX_PRECISION}"),
        });
    }
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut level: Vec<BigInt> = (0..p)
        .map(BigInt::from)
        .filter(|x| f.eval_bigint(x).to_integer().mod_floor(&pb).is_zero())
        .collect();
    for _ in 1..k {
        let next_modulus = &modulus * &pb;
        let mut next = Vec::new();
        for x in &level {
            for t in 0..p {
                let cand = x + &modulus * BigInt::from(t);
                if f.eval_bigint(&cand)
                    .to_integer()
                    .mod_floor(&next_modulus)
                    .is_zero()
                {
                    next.push(cand);
                }
            }
        }
        if next.len() > MAX_BREADTH {
            return Err(Error::PrecisionExhausted {
                prime: p,
                detail: format!("survivor set exceeded {MAX_BREADTH} residues"),
            });
        }
        level = next;
        modulus = next_modulus;
    }
    // group survivors by their class mod p^{V+1}
    let group_mod = pb.pow(v as u32 + 1);
    let mut reps: Vec<BigInt> = Vec::new();
    for x in &level {
        let key = x.mod_floor(&group_mod);
        if !reps.contains(&key) {
            reps.push(key);
        }
    }
    reps.sort();
    Ok(ZpRoots {
        roots: reps,
        precision: v + 1,
    })
}

/// Certified representatives of the ℤ_p-roots of f, refined to at least
/// precision p^target via exact Newton steps.
pub fn zp_roots_to_precision(f: &QPoly, p: u64, target: u64) -> Result<Vec<BigInt>> {
    let base = zp_survivors(f, p)?;
    let pb = BigInt::from(p);
    let fp = f.derivative();
    let mut out = Vec::new();
    for r in base.roots {
        // bump the representative until Newton's certificate holds
        let mut x = r;
        let mut prec = base.precision;
        loop {
            let fx = f.eval_bigint(&x).to_integer();
            let dfx = fp.eval_bigint(&x).to_integer();
            if dfx.is_zero() {
                // refine one more digit by scanning; valuations are bounded
                // by v_p(disc), so this terminates
                prec += 1;
                if prec > MAX_PRECISION {
                    return Err(Error::PrecisionExhausted {
                        prime: p,
                        detail: "derivative vanished during refinement".into(),
                    });
                }
                let m = pb.pow(prec as u32);
                let step = pb.pow(prec as u32 - 1);
                let mut found = None;
                for t in 0..p {
                    let cand = (&x + &step * BigInt::from(t)).mod_floor(&m);
                    if f.eval_bigint(&cand).to_integer().mod_floor(&m).is_zero() {
                        found = Some(cand);
                        break;
                    }
                }
                x = found.ok_or(Error::PrecisionExhausted {
                    prime: p,
                    detail: "refinement lost the root".into(),
                })?;
                continue;
            }
            let m = int_valuation(&dfx, p);
            let vf = if fx.is_zero() {
                u64::MAX
            } else {
                int_valuation(&fx, p)
            };
            if vf > 2 * m {
                break;
            }
            prec += 1;
            if prec > MAX_PRECISION {
                return Err(Error::PrecisionExhausted {
                    prime: p,
                    detail: "no Newton certificate within precision cap".into(),
                });
            }
            let m_big = pb.pow(prec as u32);
            let step = pb.pow(prec as u32 - 1);
            let mut found = None;
            for t in 0..p {
                let cand = (&x + &step * BigInt::from(t)).mod_floor(&m_big);
                if f.eval_bigint(&cand)
                    .to_integer()
                    .mod_floor(&m_big)
                    .is_zero()
                {
                    found = Some(cand);
                    break;
                }
            }
            x = found.ok_or(Error::PrecisionExhausted {
                prime: p,
                detail: "refinement lost the root".into(),
            })?;
        }
        // Newton iterations, exact integer arithmetic mod growing powers
        let mut prec_now = prec;
        while prec_now < target {
            prec_now = (2 * prec_now).min(target.max(prec_now + 1));
            let modulus = pb.pow(prec_now as u32);
            let fx = f.eval_bigint(&x).to_integer();
            let dfx = fp.eval_bigint(&x).to_integer();
            let mv = int_valuation(&dfx, p);
            let unit = &dfx / pb.pow(mv as u32);
            let inv = mod_inverse(&unit, &modulus).expect("unit is invertible");
            let shifted = &fx / pb.pow(mv as u32);
            x = (&x - shifted * inv).mod_floor(&modulus);
        }
        out.push(x.mod_floor(&pb.pow(target as u32)));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// arithmetic in F_p[t]/(g) for residue-field quadratic characters
// ---------------------------------------------------------------------------

/// Reduction of a monic integer polynomial mod p, as u64 coefficients.
pub fn reduce_mod_p(f: &QPoly, p: u64) -> Result<Vec<u64>> {
    let pb = BigInt::from(p);
    f.coeffs()
        .iter()
        .map(|c| {
            crate::arith::rational_residue(c, &pb).map(|r| r.to_u64().expect("residue fits"))
        })
        .collect()
}

fn poly_mul_mod(a: &[u64], b: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let n = g.len() - 1; // g monic of degree n
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
        }
    }
    // reduce mod g (monic)
    for i in (n..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..n {
            let sub = (c as u128 * g[j] as u128 % p as u128) as u64;
            prod[i - n + j] = (prod[i - n + j] + p - sub % p) % p;
        }
    }
    prod.truncate(n.max(1));
    prod
}

/// Quadratic character of a nonzero element of F_{p^m} = F_p[t]/(g), p odd:
/// +1 for squares, −1 for non-squares.
pub fn residue_field_character(elem: &[u64], g: &[u64], p: u64) -> i32 {
    let m = g.len() - 1;
    let q: u128 = (p as u128).pow(m as u32);
    let mut e = (q - 1) / 2;
    let n = m.max(1);
    let mut base: Vec<u64> = elem.iter().cloned().chain(std::iter::repeat(0)).take(n).collect();
    let mut acc = vec![0u64; n];
    acc[0] = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, g, p);
        }
        base = poly_mul_mod(&base, &base, g, p);
        e >>= 1;
    }
    if acc[0] == 1 && acc[1..].iter().all(|&x| x == 0) {
        1
    } else {
        -1
    }
}
