//! Tiny finite fields GF(p^k) for p ∈ {2, 3, 5, 7} and k ≤ 2, with matrix
//! arithmetic over them.
//!
//! Elements are encoded as 0..q: for prime fields the residue itself, for
//! quadratic extensions c₀ + c₁·x as c₀ + p·c₁ where x is a root of a fixed
//! irreducible monic quadratic. Multiplication and inversion go through
//! exponent/log tables of a primitive element.

use crate::error::{Error, Result};

const SUPPORTED_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug)]
pub struct Gf {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    add: Vec<u8>,
    /// exp[i] = g^i for a primitive element g, i in 0..q-1.
    exp: Vec<u8>,
    /// log[e] for nonzero e; log[0] unused.
    log: Vec<u8>,
}

impl Gf {
    pub fn new(q: u64) -> Result<Gf> {
        let (p, k) = crate::class_l::prime_power(q).map_err(|_| Error::UnsupportedField(q))?;
        if !SUPPORTED_PRIMES.contains(&p) || k > 2 {
            return Err(Error::UnsupportedField(q));
        }
        let qi = q as usize;
        let mul_raw: Vec<u8> = if k == 1 {
            (0..qi * qi)
                .map(|i| (((i / qi) as u64 * (i % qi) as u64) % p) as u8)
                .collect()
        } else {
            // Find an irreducible monic quadratic x² + ax + b over GF(p).
            let (a, b) = (0..p)
                .flat_map(|a| (0..p).map(move |b| (a, b)))
                .find(|&(a, b)| (0..p).all(|x| (x * x + a * x + b) % p != 0))
                .expect("irreducible quadratic exists over every prime field");
            let mut t = vec![0u8; qi * qi];
            for u in 0..q {
                for v in 0..q {
                    let (u0, u1) = (u % p, u / p);
                    let (v0, v1) = (v % p, v / p);
                    // (u0 + u1 x)(v0 + v1 x) with x² = -(a x + b).
                    let c0 = u0 * v0;
                    let c1 = u0 * v1 + u1 * v0;
                    let c2 = u1 * v1;
                    let r0 = (c0 + c2 * (p - b % p)) % p;
                    let r1 = (c1 + c2 * (p - a % p)) % p;
                    t[(u * q + v) as usize] = (r0 + p * r1) as u8;
                }
            }
            t
        };
        let add: Vec<u8> = (0..qi * qi)
            .map(|i| {
                let (u, v) = ((i / qi) as u64, (i % qi) as u64);
                if k == 1 {
                    ((u + v) % p) as u8
                } else {
                    ((u % p + v % p) % p + p * ((u / p + v / p) % p)) as u8
                }
            })
            .collect();
        // Primitive element: order q−1 under the raw multiplication.
        let mut exp = Vec::new();
        let mut log = vec![0u8; qi];
        for g in 1..q {
            exp.clear();
            let mut x = 1u64;
            loop {
                exp.push(x as u8);
                x = mul_raw[(x * q + g) as usize] as u64;
                if x == 1 {
                    break;
                }
            }
            if exp.len() as u64 == q - 1 {
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u8;
                }
                break;
            }
        }
        assert_eq!(exp.len() as u64, q - 1, "no primitive element found");
        Ok(Gf { q, p, k, add, exp, log })
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize] as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[e as usize] as u64
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::SingularMatrix(self.q));
        }
        let e = (self.q - 1 - self.log[a as usize] as u64) % (self.q - 1);
        Ok(self.exp[e as usize] as u64)
    }

    pub fn primitive_element(&self) -> u64 {
        // GF(2) has only the identity in its unit group.
        self.exp[1 % self.exp.len()] as u64
    }
}

/// Row-major d×d matrix with entries in 0..q.
pub type Mat = Vec<u64>;

pub fn mat_identity(d: usize) -> Mat {
    let mut m = vec![0; d * d];
    for i in 0..d {
        m[i * d + i] = 1;
    }
    m
}

pub fn mat_mul(f: &Gf, d: usize, a: &Mat, b: &Mat) -> Mat {
    let mut c = vec![0; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut s = 0;
            for t in 0..d {
                s = f.add(s, f.mul(a[i * d + t], b[t * d + j]));
            }
            c[i * d + j] = s;
        }
    }
    c
}

/// Apply to a column vector: w = M v.
pub fn mat_vec(f: &Gf, d: usize, m: &Mat, v: &[u64]) -> Vec<u64> {
    (0..d)
        .map(|i| {
            let mut s = 0;
            for t in 0..d {
                s = f.add(s, f.mul(m[i * d + t], v[t]));
            }
            s
        })
        .collect()
}

/// Invertibility via Gaussian elimination.
pub fn mat_invertible(f: &Gf, d: usize, m: &Mat) -> bool {
    let mut a = m.clone();
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| a[r * d + col] != 0) else {
            return false;
        };
        for j in 0..d {
            a.swap(col * d + j, piv * d + j);
        }
        let inv = f.inv(a[col * d + col]).unwrap();
        for j in 0..d {
            a[col * d + j] = f.mul(a[col * d + j], inv);
        }
        for r in 0..d {
            if r != col && a[r * d + col] != 0 {
                let factor = a[r * d + col];
                for j in 0..d {
                    let sub = f.mul(factor, a[col * d + j]);
                    a[r * d + j] = f.sub(a[r * d + j], sub);
                }
            }
        }
    }
    true
}

/// Generators of GL(d, q): a diagonal with one primitive entry, a
/// transvection, and (for d ≥ 2) the cyclic coordinate permutation. The
/// transvection orbit under diagonal and permutation conjugation yields all
/// transvections, hence SL(d, q); the primitive determinant completes GL.
pub fn gl_generators(f: &Gf, d: usize) -> Vec<Mat> {
    let g = f.primitive_element();
    let mut diag = mat_identity(d);
    diag[0] = g;
    if d == 1 {
        return vec![diag];
    }
    let mut transvection = mat_identity(d);
    transvection[1] = 1; // E_{12}(1)
    let mut cycle = vec![0; d * d];
    for i in 0..d {
        cycle[i * d + (i + 1) % d] = 1;
    }
    vec![diag, transvection, cycle]
}
