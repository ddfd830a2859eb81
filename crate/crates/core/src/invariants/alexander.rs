//! Alexander polynomial and determinant from the Wirtinger crossing matrix.
//!
//! Rows are crossings, columns are over-arcs. At a crossing with over-arc
//! `o`, incoming under-arc `a` and outgoing under-arc `b` the row holds
//! `1 - t` at `o`, and `-1`, `t` at `a`, `b` for a positive crossing
//! (`t`, `-1` for a negative one). Deleting one row and one column leaves a
//! matrix whose determinant is the Alexander polynomial up to units.
//!
//! The polynomial is recovered by evaluation and interpolation modulo
//! enough word-sized primes to exceed the Hadamard-style coefficient bound,
//! then lifted by Chinese remaindering. The determinant is computed
//! separately by fraction-free elimination over the integers at `t = -1`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::LaurentPoly;
use crate::diagram::Diagram;
use crate::error::{verification, Result};

/// Entry `c0 + c1 t`.
type Linear = (i64, i64);

/// The full `c x c` Wirtinger matrix of a diagram.
pub fn alexander_matrix(d: &Diagram) -> Result<Vec<Vec<Linear>>> {
    let arcs = d.crossing_arcs()?;
    let c = arcs.len();
    let mut m = vec![vec![(0i64, 0i64); c]; c];
    for (k, x) in arcs.iter().enumerate() {
        let row = &mut m[k];
        row[x.over].0 += 1;
        row[x.over].1 -= 1;
        let (t_arc, minus_arc) = if x.sign > 0 {
            (x.outgoing, x.incoming)
        } else {
            (x.incoming, x.outgoing)
        };
        row[t_arc].1 += 1;
        row[minus_arc].0 -= 1;
    }
    Ok(m)
}

fn minor(m: &[Vec<Linear>]) -> Vec<Vec<Linear>> {
    let k = m.len() - 1;
    m[..k].iter().map(|row| row[..k].to_vec()).collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
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

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62, largest first, whose product exceeds `bound`.
fn primes_exceeding(bound: &BigUint) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut product = BigUint::one();
    let mut cand = (1u64 << 62) - 1;
    while &product <= bound {
        while !is_prime(cand) {
            cand -= 2;
        }
        primes.push(cand);
        product *= cand;
        cand -= 2;
    }
    primes
}

fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let k = a.len();
    let mut det = 1u64;
    for col in 0..k {
        let Some(piv) = (col..k).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        let pv = a[col][col];
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p);
        for r in col + 1..k {
            if a[r][col] == 0 {
                continue;
            }
            let f = mul_mod(a[r][col], inv, p);
            let (top, bottom) = a.split_at_mut(r);
            let src = &top[col];
            let dst = &mut bottom[0];
            for c in col..k {
                let sub = mul_mod(f, src[c], p);
                dst[c] = (dst[c] + p - sub) % p;
            }
        }
    }
    det
}

fn reduce(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Coefficients (ascending) of the unique polynomial of degree < len through
/// `(x, ys[x])`, x = 0, 1, ..., modulo `p`.
fn interpolate_mod(ys: &[u64], p: u64) -> Vec<u64> {
    let k = ys.len();
    // Newton divided differences on nodes 0..k
    let mut dd = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            dd[i] = mul_mod(num, inv_mod(level as u64 % p, p), p);
        }
    }
    // expand sum dd[i] * prod_{j<i} (x - j)
    let mut coeffs = vec![0u64; k];
    for i in (0..k).rev() {
        // coeffs = coeffs * (x - i) + dd[i]
        let mut next = vec![0u64; k];
        for j in 0..k {
            if coeffs[j] == 0 {
                continue;
            }
            if j + 1 < k {
                next[j + 1] = (next[j + 1] + coeffs[j]) % p;
            }
            let s = mul_mod(coeffs[j], i as u64 % p, p);
            next[j] = (next[j] + p - s) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        coeffs = next;
    }
    coeffs
}

/// Determinant of `A + tB` as an integer polynomial.
fn polynomial_det(m: &[Vec<Linear>]) -> Vec<BigInt> {
    let k = m.len();
    if k == 0 {
        return vec![BigInt::one()];
    }
    // Every coefficient is bounded by the product of row l1 norms.
    let bound: BigUint = m
        .iter()
        .map(|row| {
            BigUint::from(
                row.iter()
                    .map(|&(a, b)| a.unsigned_abs() + b.unsigned_abs())
                    .sum::<u64>(),
            )
        })
        .product();
    let primes = primes_exceeding(&(bound * 2u32));

    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); k + 1];
    for &p in &primes {
        let values: Vec<u64> = (0..=k as u64)
            .map(|x| {
                let a = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&(c0, c1)| (reduce(c0, p) + mul_mod(reduce(c1, p), x, p)) % p)
                            .collect()
                    })
                    .collect();
                det_mod(a, p)
            })
            .collect();
        let residues = interpolate_mod(&values, p);
        // Garner step: acc <- acc + modulus * ((r - acc) * modulus^-1 mod p)
        let pb = BigInt::from(p);
        let minv = inv_mod((&modulus % &pb).to_u64().expect("reduced"), p);
        for (a, &r) in acc.iter_mut().zip(&residues) {
            let diff = (BigInt::from(r) - &*a)
                .mod_floor(&pb)
                .to_u64()
                .expect("reduced");
            let h = mul_mod(diff, minv, p);
            *a += &modulus * BigInt::from(h);
        }
        modulus *= pb;
    }
    let half = &modulus / 2;
    for a in &mut acc {
        if *a > half {
            *a -= &modulus;
        }
    }
    acc
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let k = a.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..k - 1 {
        if a[col][col].is_zero() {
            match (col + 1..k).find(|&r| !a[r][col].is_zero()) {
                Some(r) => {
                    a.swap(r, col);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in col + 1..k {
            for c in col + 1..k {
                let v = &a[r][c] * &a[col][col] - &a[r][col] * &a[col][c];
                a[r][c] = v / &prev;
            }
        }
        prev = a[col][col].clone();
    }
    sign * &a[k - 1][k - 1]
}

/// Normalized Alexander polynomial, with its classical identities checked.
pub fn alexander(d: &Diagram) -> Result<LaurentPoly> {
    let m = alexander_matrix(d)?;
    if m.is_empty() {
        return Ok(LaurentPoly::one());
    }
    let coeffs = polynomial_det(&minor(&m));
    let delta = LaurentPoly::new(0, coeffs).normalized();
    check_identities(&delta)?;
    Ok(delta)
}

fn check_identities(delta: &LaurentPoly) -> Result<()> {
    let at_one = delta.eval(1).expect("polynomial");
    if at_one.abs() != BigInt::one() {
        return Err(verification(format!(
            "Alexander polynomial {delta} has value {at_one} at 1"
        )));
    }
    if !delta.is_symmetric_up_to_units() {
        return Err(verification(format!(
            "Alexander polynomial {delta} is not symmetric"
        )));
    }
    let at_minus_one = delta.eval(-1).expect("polynomial");
    if at_minus_one.is_even() {
        return Err(verification(format!(
            "Alexander polynomial {delta} has even value at -1"
        )));
    }
    Ok(())
}

/// Knot determinant `|det M(-1)|`, via integer elimination only.
pub fn determinant(d: &Diagram) -> Result<BigInt> {
    let m = alexander_matrix(d)?;
    if m.is_empty() {
        return Ok(BigInt::one());
    }
    let at_minus_one = minor(&m)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(c0, c1)| BigInt::from(c0 - c1))
                .collect()
        })
        .collect();
    Ok(bareiss_det(at_minus_one).abs())
}
