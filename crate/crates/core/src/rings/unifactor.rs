//! Univariate factorization: distinct/equal-degree factorization over `F_p`
//! and big-prime Zassenhaus over `Z`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RECOMBINATION_BUDGET: usize = 100_000;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    pub(crate) fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub(crate) fn coeffs(&self) -> &[u64] {
        &self.c
    }

    fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub(crate) fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        powmod(a, self.p - 2, self.p)
    }

    fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let mut out = vec![0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *slot = (a + self.p - b) % self.p;
        }
        ModPoly::new(self.p, out)
    }

    fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        let mut out = vec![0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *slot = (a + b) % self.p;
        }
        ModPoly::new(self.p, out)
    }

    pub(crate) fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        ModPoly::new(self.p, out)
    }

    fn divrem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (ModPoly::new(p, vec![]), self.clone());
        }
        let inv = self.inv(d.lc());
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len() - d.c.len() + 1];
        for k in (0..q.len()).rev() {
            let coef = mulmod(r[k + d.deg()], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &dc) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(coef, dc, p)) % p;
            }
        }
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    fn rem(&self, d: &ModPoly) -> ModPoly {
        self.divrem(d).1
    }

    pub(crate) fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.inv(self.lc());
        ModPoly::new(self.p, self.c.iter().map(|&a| mulmod(a, inv, self.p)).collect())
    }

    fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> ModPoly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| mulmod(a, (i as u64) % self.p, self.p)).collect();
        ModPoly::new(self.p, c)
    }

    fn powmod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut result = ModPoly::new(self.p, vec![1]).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over `F_p`.
pub(crate) fn factor_squarefree_mod_p(f: &ModPoly, seed: u64) -> Vec<ModPoly> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = ModPoly::x(p);
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.powmod(&pb, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            equal_degree(&g, i, seed ^ i as u64, &mut out);
            rest = rest.divrem(&g).0.monic();
            h = h.rem(&rest);
        }
        i += 1;
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
    out
}

fn equal_degree(g: &ModPoly, d: usize, seed: u64, out: &mut Vec<ModPoly>) {
    if g.deg() == d {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a = ModPoly::new(p, (0..g.deg()).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.rem(g);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(g);
                acc = acc.add(&cur);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            a.powmod(&e, g).sub(&ModPoly::new(p, vec![1]))
        };
        let s = b.gcd(g);
        if s.deg() > 0 && s.deg() < g.deg() {
            let other = g.divrem(&s).0;
            equal_degree(&s, d, seed.wrapping_mul(31).wrapping_add(1), out);
            equal_degree(&other, d, seed.wrapping_mul(37).wrapping_add(2), out);
            return;
        }
    }
}

/// Whether `f` (monic) is squarefree over `F_p`.
pub(crate) fn squarefree_mod_p(f: &ModPoly) -> bool {
    let d = f.derivative();
    !d.is_zero() && f.gcd(&d).deg() == 0
}

fn int_div_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if g.len() > f.len() {
        return None;
    }
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut q = vec![BigInt::zero(); f.len() - g.len() + 1];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dg].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        for (j, gj) in g.iter().enumerate() {
            r[k + j] -= &c * gj;
        }
        q[k] = c;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn primitive(mut g: Vec<BigInt>) -> Vec<BigInt> {
    while g.len() > 1 && g.last().unwrap().is_zero() {
        g.pop();
    }
    let c = g.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if c.is_zero() {
        return g;
    }
    let sign = if g.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    g.into_iter().map(|x| x / &c * &sign).collect()
}

/// Irreducible factors over `Z` of a primitive squarefree polynomial of
/// positive degree (ascending integer coefficients). `None` when the
/// coefficient bound needs a prime beyond 62 bits or recombination runs out
/// of budget.
pub(crate) fn zassenhaus(f: &[BigInt]) -> Option<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Some(vec![f.to_vec()]);
    }
    let lc = f[n].abs();
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm: BigInt = norm_sq.sqrt() + BigInt::one();
    let bound: BigInt = (BigInt::one() << n) * norm * &lc;
    let start = (bound * BigInt::from(2) + BigInt::one()).to_u64()?;
    if start > (1u64 << 62) {
        return None;
    }
    let mut p = start | 1;
    let reduce = |c: &BigInt, p: u64| c.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let fp = loop {
        if is_prime_u64(p) && !(&lc % BigInt::from(p)).is_zero() {
            let cand = ModPoly::new(p, f.iter().map(|c| reduce(c, p)).collect()).monic();
            if squarefree_mod_p(&cand) {
                break cand;
            }
        }
        p += 2;
    };
    let mut modular = factor_squarefree_mod_p(&fp, p);
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut budget = RECOMBINATION_BUDGET;
    let lift = |m: &ModPoly, lcv: &BigInt| -> Vec<BigInt> {
        let l = reduce(lcv, p);
        let scaled = m.mul(&ModPoly::new(p, vec![l]));
        let half = p / 2;
        let coeffs: Vec<BigInt> = (0..=m.deg())
            .map(|i| {
                let c = scaled.c.get(i).copied().unwrap_or(0);
                if c > half {
                    BigInt::from(c) - BigInt::from(p)
                } else {
                    BigInt::from(c)
                }
            })
            .collect();
        primitive(coeffs)
    };
    let mut size = 1;
    'outer: while 2 * size <= modular.len() {
        let idx: Vec<usize> = (0..modular.len()).collect();
        for subset in itertools::Itertools::combinations(idx.iter().copied(), size) {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let mut prod = ModPoly::new(p, vec![1]);
            for &i in &subset {
                prod = prod.mul(&modular[i]);
            }
            let lcv = rest.last().unwrap().clone();
            let g = lift(&prod, &lcv);
            if let Some(q) = int_div_exact(&rest, &g) {
                out.push(g);
                rest = primitive(q);
                modular =
                    modular.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, m)| m).collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(primitive(rest));
    Some(out)
}
