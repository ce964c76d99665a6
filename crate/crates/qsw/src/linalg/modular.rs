//! Nullspaces of rational systems by elimination modulo word-size primes,
//! Chinese remaindering and rational reconstruction. Every reconstructed
//! vector is checked against the integer system before it is returned.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SparseVec;
use crate::scalar::{Gq, Scalar};

const MAX_PRIMES: usize = 64;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'outer: for b in BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn primes() -> impl Iterator<Item = u64> {
    (1..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime(n))
}

/// Integer rows with the same nullspace, or `None` if some entry is not a real rational.
fn integer_rows(rows: &[SparseVec]) -> Option<Vec<Vec<(usize, BigInt)>>> {
    rows.iter()
        .map(|r| {
            let rats: Vec<(usize, &BigRational)> = r
                .iter()
                .map(|(c, x)| match x {
                    Scalar::Q(g) if g.im.is_zero() => Some((*c, &g.re)),
                    _ => None,
                })
                .collect::<Option<_>>()?;
            let l = rats.iter().fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
            Some(rats.into_iter().map(|(c, x)| (c, x.numer() * (&l / x.denom()))).collect())
        })
        .collect()
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Pivots and, per free column, the values at the pivot columns of the unit-free nullspace vector.
struct ModNull {
    pivots: Vec<usize>,
    free: Vec<usize>,
    vals: Vec<Vec<u64>>,
}

fn null_mod(rows: &[Vec<(usize, BigInt)>], ncols: usize, p: u64) -> ModNull {
    let mut ech: Vec<(usize, BTreeMap<usize, u64>)> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    for r in rows {
        let mut v: BTreeMap<usize, u64> =
            r.iter().map(|(c, x)| (*c, to_mod(x, p))).filter(|(_, x)| *x != 0).collect();
        // reduce; rows only mention pivots of later rows, so one ordered sweep suffices
        let mut queue: std::collections::BTreeSet<usize> = v.keys().filter_map(|c| pivot_of.get(c).copied()).collect();
        while let Some(k) = queue.pop_first() {
            let (pc, row) = &ech[k];
            let Some(&c) = v.get(pc) else { continue };
            let f = p - c;
            for (col, a) in row {
                let t = mul_mod(f, *a, p);
                let e = v.entry(*col).or_insert(0);
                if *e == 0 {
                    if let Some(&kk) = pivot_of.get(col) {
                        queue.insert(kk);
                    }
                }
                *e = (*e + t) % p;
            }
            v.retain(|_, x| *x != 0);
        }
        let Some((&pc, &pv)) = v.iter().next() else { continue };
        let inv = inv_mod(pv, p);
        for x in v.values_mut() {
            *x = mul_mod(*x, inv, p);
        }
        pivot_of.insert(pc, ech.len());
        ech.push((pc, v));
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_of.contains_key(c)).collect();
    let mut pivots: Vec<usize> = ech.iter().map(|(c, _)| *c).collect();
    pivots.sort_unstable();
    let pos: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let vals = free
        .iter()
        .map(|&f| {
            let mut x: HashMap<usize, u64> = HashMap::from([(f, 1)]);
            for (pc, row) in ech.iter().rev() {
                let mut acc = 0u64;
                for (c, a) in row {
                    if c != pc {
                        if let Some(y) = x.get(c) {
                            acc = (acc + mul_mod(*a, *y, p)) % p;
                        }
                    }
                }
                if acc != 0 {
                    x.insert(*pc, p - acc);
                }
            }
            let mut out = vec![0u64; pivots.len()];
            for (c, y) in x {
                if let Some(&i) = pos.get(&c) {
                    out[i] = y;
                }
            }
            out
        })
        .collect();
    ModNull { pivots, free, vals }
}

/// `n/d` with `|n|, d <= sqrt(m/2)` and `n ≡ a d (mod m)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Nullspace basis in the same normal form as [`super::Echelon::nullspace`]:
/// one vector per free column with a unit there. Returns `None` when the
/// system is not over the rationals or no consistent reconstruction was found.
pub(crate) fn rational_nullspace(rows: &[SparseVec], ncols: usize) -> Option<Vec<SparseVec>> {
    let int_rows = integer_rows(rows)?;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<Vec<BigRational>>> = None;
    for p in primes().take(MAX_PRIMES) {
        let mn = null_mod(&int_rows, ncols, p);
        match &best {
            Some((piv, _)) if mn.pivots.len() < piv.len() => continue,
            Some((piv, _)) if mn.pivots == *piv => {
                let pb = BigInt::from(p);
                let minv = BigInt::from(inv_mod(to_mod(&modulus, p), p));
                for (a, b) in acc.iter_mut().flatten().zip(mn.vals.iter().flatten()) {
                    let d = (BigInt::from(*b) - &*a).mod_floor(&pb) * &minv % &pb;
                    *a += &modulus * d;
                }
                modulus *= &pb;
            }
            _ => {
                // first prime, or an earlier prime was unlucky
                acc = mn.vals.iter().map(|v| v.iter().map(|x| BigInt::from(*x)).collect()).collect();
                modulus = BigInt::from(p);
                best = Some((mn.pivots, mn.free));
                last = None;
                continue;
            }
        }
        let rec: Option<Vec<Vec<BigRational>>> =
            acc.iter().map(|v| v.iter().map(|a| reconstruct(a, &modulus)).collect()).collect();
        let Some(rec) = rec else { continue };
        if last.as_ref() != Some(&rec) {
            last = Some(rec);
            continue;
        }
        let (piv, free) = best.as_ref().unwrap();
        let out: Vec<SparseVec> = free
            .iter()
            .zip(&rec)
            .map(|(&f, vals)| {
                let mut v = SparseVec::from([(f, Scalar::one())]);
                for (&c, x) in piv.iter().zip(vals) {
                    if !x.is_zero() {
                        v.insert(c, Scalar::Q(Gq::real(x.clone())));
                    }
                }
                v
            })
            .collect();
        if verify(&int_rows, free, piv, &rec) {
            return Some(out);
        }
    }
    None
}

fn verify(rows: &[Vec<(usize, BigInt)>], free: &[usize], piv: &[usize], rec: &[Vec<BigRational>]) -> bool {
    let pos: HashMap<usize, usize> = piv.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    free.iter().zip(rec).all(|(&f, vals)| {
        let den = vals.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let num = |c: usize| -> BigInt {
            if c == f {
                den.clone()
            } else if let Some(&i) = pos.get(&c) {
                vals[i].numer() * (&den / vals[i].denom())
            } else {
                BigInt::zero()
            }
        };
        rows.iter().all(|r| r.iter().map(|(c, a)| a * num(*c)).sum::<BigInt>().is_zero())
    })
}
