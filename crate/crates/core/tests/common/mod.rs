//! Reference arithmetic written independently of the library: schoolbook polynomials over
//! Z4 reduced by long division, and plain F2 polynomial arithmetic.

#![allow(dead_code)]

/// `Z4[x]/(h)` with `h` monic, coefficients constant term first.
pub struct Schoolbook {
    pub h: Vec<u8>,
    pub delta: usize,
}

impl Schoolbook {
    pub fn new(h: &[u8]) -> Self {
        assert_eq!(*h.last().unwrap(), 1, "h must be monic");
        Schoolbook { h: h.to_vec(), delta: h.len() - 1 }
    }

    pub fn reduce(&self, mut p: Vec<u8>) -> Vec<u8> {
        let d = self.delta;
        for top in (d..p.len()).rev() {
            let c = p[top] % 4;
            if c == 0 {
                continue;
            }
            for (i, &hi) in self.h.iter().enumerate() {
                let k = top - d + i;
                p[k] = (p[k] + 4 * 4 - c * hi % 4) % 4;
            }
        }
        p.resize(d, 0);
        p.iter().map(|c| c % 4).collect()
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut p = vec![0u8; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                p[i + j] = (p[i + j] + x * y) % 4;
            }
        }
        self.reduce(p)
    }

    pub fn add(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(x, y)| (x + y) % 4).collect()
    }

    pub fn scale(&self, c: u8, a: &[u8]) -> Vec<u8> {
        a.iter().map(|x| x * c % 4).collect()
    }

    pub fn one(&self) -> Vec<u8> {
        let mut v = vec![0; self.delta];
        v[0] = 1;
        v
    }

    pub fn x_pow(&self, k: u64) -> Vec<u8> {
        let mut x = vec![0u8; self.delta];
        x[1] = 1;
        self.pow(&x, k)
    }

    pub fn pow(&self, a: &[u8], mut k: u64) -> Vec<u8> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Substitutes `x -> x^2`.
    pub fn frobenius(&self, a: &[u8]) -> Vec<u8> {
        let x2 = self.x_pow(2);
        let mut acc = vec![0u8; self.delta];
        let mut power = self.one();
        for &c in a {
            acc = self.add(&acc, &self.scale(c, &power));
            power = self.mul(&power, &x2);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        let d = self.delta as u32;
        (0..4u64.pow(d)).map(move |mut k| {
            (0..d)
                .map(|_| {
                    let c = (k % 4) as u8;
                    k /= 4;
                    c
                })
                .collect()
        })
    }
}

/// Product of two F2 polynomials (bit `k` = coefficient of `x^k`) reduced mod `f`.
pub fn f2_mulmod(mut a: u32, mut b: u32, f: u32) -> u32 {
    let deg = 31 - f.leading_zeros();
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> deg & 1 == 1 {
            a ^= f;
        }
    }
    acc
}

/// Reduction of a Z4 coefficient list mod 2, packed as bits.
pub fn bits_mod2(coeffs: &[u8]) -> u32 {
    coeffs.iter().enumerate().fold(0, |acc, (k, &c)| acc | (u32::from(c & 1) << k))
}

/// Trace of `u` in `F2[x]/(f)`: `u + u^2 + ... + u^(2^(deg-1))`, returned as the constant.
pub fn f2_trace(u: u32, f: u32) -> u8 {
    let deg = 31 - f.leading_zeros();
    let mut acc = 0u32;
    let mut t = u;
    for _ in 0..deg {
        acc ^= t;
        t = f2_mulmod(t, t, f);
    }
    assert!(acc <= 1, "trace must land in F2");
    acc as u8
}

/// Shortest-path distances in the Cayley graph on Z4^2 generated by `set`, by
/// Floyd-Warshall on the adjacency matrix.
pub fn cayley_distances(set: &[(u8, u8)]) -> [[u32; 16]; 16] {
    const INF: u32 = u32::MAX / 4;
    let mut d = [[INF; 16]; 16];
    for u in 0..16usize {
        d[u][u] = 0;
        let (x, y) = ((u / 4) as u8, (u % 4) as u8);
        for &(dx, dy) in set {
            let v = 4 * ((x + dx) % 4) as usize + ((y + dy) % 4) as usize;
            d[u][v] = d[u][v].min(1);
        }
    }
    for k in 0..16 {
        for i in 0..16 {
            for j in 0..16 {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}
