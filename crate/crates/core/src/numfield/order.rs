//! Orders of Q[x]/(f) given by a triangular basis over the power basis, and
//! Round-2 p-maximalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactmath::fp::mulm;
use crate::exactmath::linalg::{hnf_lower, left_kernel_mod, solve_lower_int};
use crate::exactmath::{det_bareiss, IntPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    poly: IntPoly,
    n: usize,
    /// Common denominator d.
    denom: BigInt,
    /// num[i] holds the power-basis coefficients of d·ω_i; lower triangular.
    num: Vec<Vec<BigInt>>,
    /// table[i][j] = coordinates of ω_i·ω_j.
    table: Vec<Vec<Vec<BigInt>>>,
}

impl Order {
    /// Z[θ] for monic f.
    pub fn equation_order(f: &IntPoly) -> Order {
        let n = f.degree();
        let num = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Order::from_basis(f.clone(), BigInt::one(), num)
    }

    fn from_basis(poly: IntPoly, denom: BigInt, num: Vec<Vec<BigInt>>) -> Order {
        let n = poly.degree();
        let mut g = denom.clone();
        for r in &num {
            for x in r {
                g = g.gcd(x);
            }
        }
        let denom = &denom / &g;
        let num: Vec<Vec<BigInt>> = num.iter().map(|r| r.iter().map(|x| x / &g).collect()).collect();
        let num = hnf_lower(&num, n).expect("order basis must have full rank");
        let mut o = Order { poly, n, denom, num, table: vec![] };
        let mut table = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for j in i..n {
                let pi = IntPoly::new(o.num[i].clone());
                let pj = IntPoly::new(o.num[j].clone());
                let prod = (&pi * &pj).rem_monic(&o.poly);
                let c = o
                    .coords_of_poly(&prod, &(&o.denom * &o.denom))
                    .expect("order not closed under multiplication");
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        o.table = table;
        o
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn numerators(&self) -> &[Vec<BigInt>] {
        &self.num
    }

    pub fn table(&self) -> &[Vec<Vec<BigInt>>] {
        &self.table
    }

    /// Integral basis as rational vectors over the power basis.
    pub fn basis_rational(&self) -> Vec<Vec<Rational>> {
        self.num
            .iter()
            .map(|r| r.iter().map(|x| Rational::new(x.clone(), self.denom.clone())).collect())
            .collect()
    }

    /// [O : Z[θ]].
    pub fn index(&self) -> BigInt {
        let mut prod = BigInt::one();
        for i in 0..self.n {
            prod *= &self.num[i][i];
        }
        self.denom.pow(self.n as u32) / prod
    }

    /// Coordinates of the element P(θ)/D, if it lies in the order.
    pub fn coords_of_poly(&self, p: &IntPoly, d: &BigInt) -> Option<Vec<BigInt>> {
        let p = p.rem_monic(&self.poly);
        let mut r: Vec<Rational> = (0..self.n)
            .map(|i| Rational::new(p.coeff(i) * &self.denom, d.clone()))
            .collect();
        let mut x = vec![BigInt::zero(); self.n];
        for k in (0..self.n).rev() {
            let c = &r[k] / Rational::from_integer(self.num[k][k].clone());
            if !c.is_integer() {
                return None;
            }
            let c = c.to_integer();
            for j in 0..=k {
                r[j] -= Rational::from_integer(&c * &self.num[k][j]);
            }
            x[k] = c;
        }
        Some(x)
    }

    /// Numerator polynomial N with element = N(θ)/denom.
    pub fn to_poly(&self, x: &[BigInt]) -> IntPoly {
        let mut acc = vec![BigInt::zero(); self.n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..=i {
                acc[j] += xi * &self.num[i][j];
            }
        }
        IntPoly::new(acc)
    }

    pub fn one(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.n];
        v[0] = BigInt::one();
        // ω_0 = num[0][0]/denom; for our orders this is always 1
        debug_assert!(self.num[0][0] == self.denom);
        v
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (o, t) in out.iter_mut().zip(self.table[i][j].iter()) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Rows: coordinates of x·ω_i.
    pub fn mult_matrix(&self, x: &[BigInt]) -> Vec<Vec<BigInt>> {
        (0..self.n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.n];
                e[i] = BigInt::one();
                self.mul(x, &e)
            })
            .collect()
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        det_bareiss(self.mult_matrix(x))
    }

    pub fn trace(&self, x: &[BigInt]) -> BigInt {
        let m = self.mult_matrix(x);
        (0..self.n).map(|i| m[i][i].clone()).sum()
    }

    pub fn table_mod(&self, p: u64) -> Vec<Vec<Vec<u64>>> {
        let bp = BigInt::from(p);
        self.table
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
                    .collect()
            })
            .collect()
    }

    /// One Round-2 enlargement step at p; None when the order is p-maximal.
    fn enlarge_at(&self, p: u64) -> Option<Order> {
        let n = self.n;
        let tp = self.table_mod(p);
        let alg = ModAlgebra { n, p, table: &tp };
        let rad = alg.radical();
        let bp = BigInt::from(p);
        let mut gens: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { bp.clone() } else { BigInt::zero() }).collect())
            .collect();
        gens.extend(rad.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()));
        let h = hnf_lower(&gens, n)?;
        // x ∈ U iff x·I ⊆ pI
        let mut rows = vec![vec![0u64; n * n]; n];
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            for (j, g) in h.iter().enumerate() {
                let prod = self.mul(&e, g);
                let y = solve_lower_int(&h, &prod).expect("radical is an ideal");
                for (k, yk) in y.iter().enumerate() {
                    rows[i][j * n + k] = yk.mod_floor(&bp).to_u64().unwrap();
                }
            }
        }
        let ker = left_kernel_mod(&rows, p);
        if ker.is_empty() {
            return None;
        }
        let mut ugens: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { bp.clone() } else { BigInt::zero() }).collect())
            .collect();
        ugens.extend(ker.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()));
        let u = hnf_lower(&ugens, n)?;
        let mut num = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if u[i][j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    num[i][k] += &u[i][j] * &self.num[j][k];
                }
            }
        }
        Some(Order::from_basis(self.poly.clone(), &self.denom * &bp, num))
    }

    /// Smallest p-maximal order containing this one.
    pub fn p_maximize(&self, p: u64) -> Order {
        let mut o = self.clone();
        while let Some(next) = o.enlarge_at(p) {
            o = next;
        }
        o
    }

    pub fn is_p_maximal(&self, p: u64) -> bool {
        self.enlarge_at(p).is_none()
    }

    /// Sign of the element at real embeddings approximated by `roots`.
    pub fn eval_f64(&self, x: &[BigInt], root: f64) -> f64 {
        let poly = self.to_poly(x);
        let mut acc = 0.0;
        for c in poly.coeffs().iter().rev() {
            acc = acc * root + c.to_f64().unwrap();
        }
        acc / self.denom.to_f64().unwrap()
    }

    pub fn is_zero_elem(x: &[BigInt]) -> bool {
        x.iter().all(|c| c.is_zero())
    }

    pub fn abs_max(x: &[BigInt]) -> BigInt {
        x.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// Commutative algebra O/pO given by structure constants mod p.
pub struct ModAlgebra<'a> {
    pub n: usize,
    pub p: u64,
    pub table: &'a [Vec<Vec<u64>>],
}

impl ModAlgebra<'_> {
    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.n];
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if y[j] == 0 {
                    continue;
                }
                let c = mulm(x[i], y[j], p);
                for (o, &t) in out.iter_mut().zip(self.table[i][j].iter()) {
                    if t != 0 {
                        *o = (*o + mulm(c, t, p)) % p;
                    }
                }
            }
        }
        out
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        v[0] = 1;
        v
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = self.one();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        let mut e = vec![0u64; self.n];
        e[i] = 1;
        e
    }

    /// Rows: images of basis vectors under x ↦ x^p.
    pub fn frobenius(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|i| self.pow(&self.unit(i), self.p)).collect()
    }

    pub fn apply(&self, m: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (o, &mij) in out.iter_mut().zip(m[i].iter()) {
                *o = (*o + mulm(xi, mij, p)) % p;
            }
        }
        out
    }

    /// Nilradical: kernel of a high enough power of Frobenius.
    pub fn radical(&self) -> Vec<Vec<u64>> {
        let fr = self.frobenius();
        let mut m: Vec<Vec<u64>> = fr.clone();
        let mut q = self.p;
        while (q as usize) < self.n {
            m = m.iter().map(|row| self.apply(&fr, row)).collect();
            q = q.saturating_mul(self.p);
        }
        left_kernel_mod(&m, self.p)
    }
}
