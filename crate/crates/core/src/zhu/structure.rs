//! Center, radical and Wedderburn profile of a finite-dimensional algebra
//! given by a multiplication table.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::linalg::{dense_nullspace, dense_rank, mat_mul, Dense};
use crate::scalar::{int, Scalar};
use crate::sparse::SparseVec;

use super::algebra::{left_regular, ZhuAlgebraResult};

/// Output of [`center_and_idempotents`].
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub dim: usize,
    pub center_dim: usize,
    /// Dimension of the radical of the trace form.
    pub radical_dim: usize,
    pub semisimple: bool,
    /// Sizes `n_i` of the matrix blocks `M_{n_i}`, ascending.
    pub blocks: Vec<usize>,
    pub omega_central: bool,
    /// Central primitive idempotents in quotient coordinates, when the
    /// eigenvalues of the chosen central element are rational.
    #[serde(skip)]
    pub idempotents: Option<Vec<SparseVec<usize>>>,
}

/// Dense polynomial, lowest degree first, no trailing zeros.
type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deg(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
}

fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![Scalar::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= c * &f;
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: Poly) -> Poly {
    match p.last().cloned() {
        Some(l) if !l.is_zero() => p.into_iter().map(|c| c / &l).collect(),
        _ => p,
    }
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Yun's square-free decomposition: `(multiplicity, degree of factor)`.
fn squarefree_profile(p: &Poly) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let d = derivative(p);
    let a = gcd(p, &d);
    let mut b = divmod(p, &a).0;
    let mut c = divmod(&d, &a).0;
    let mut i = 1;
    loop {
        let bd = derivative(&b);
        let mut e = c.clone();
        for (k, x) in bd.iter().enumerate() {
            if k < e.len() {
                e[k] -= x;
            } else {
                e.push(-x.clone());
            }
        }
        let e = trim(e);
        let f = gcd(&b, &e);
        let bf = divmod(&b, &f).0;
        if deg(&f) > 0 {
            out.push((i, deg(&f)));
        }
        if deg(&bf) == 0 {
            break;
        }
        b = bf;
        c = divmod(&e, &f).0;
        i += 1;
    }
    out
}

/// Characteristic polynomial `det(x - m)` by Faddeev-LeVerrier.
fn char_poly(m: &Dense) -> Poly {
    let n = m.len();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = crate::linalg::zeros(n, n);
    for k in 1..=n {
        // M_k = m * M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let tr: Scalar = (0..n).map(|i| am[i][i].clone()).fold(Scalar::zero(), |a, b| a + b);
        coeffs[n - k] = -tr / int(k as i64);
    }
    coeffs
}

fn rational_roots(p: &Poly) -> Option<Vec<Scalar>> {
    // Roots of a square-free polynomial, if all of them are rational.
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Signed;
    let c0 = crate::scalar::primitive_integers(p).first()?.clone();
    let mut roots = Vec::new();
    let mut rest: Poly = p.clone();
    if c0.is_zero() {
        roots.push(Scalar::zero());
        rest = divmod(&rest, &vec![Scalar::zero(), Scalar::one()]).0;
    }
    let divisors = |x: &BigInt| -> Option<Vec<BigInt>> {
        let x = x.abs();
        let bound: BigInt = BigInt::from(1_000_000);
        if x > bound {
            return None;
        }
        let mut d = Vec::new();
        let mut k = BigInt::one();
        while k <= x {
            if x.is_multiple_of(&k) {
                d.push(k.clone());
            }
            k += 1;
        }
        Some(d)
    };
    let target = deg(p);
    if deg(&rest) > 0 {
        let ints = crate::scalar::primitive_integers(&rest);
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last()?)?;
        for a in &ps {
            for b in &qs {
                for s in [1i64, -1] {
                    let r = Scalar::new(a * s, b.clone());
                    if roots.contains(&r) {
                        continue;
                    }
                    let v = rest.iter().rev().fold(Scalar::zero(), |acc, c| acc * &r + c);
                    if v.is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    (roots.len() == target).then_some(roots)
}

fn vec_of(x: &[Scalar]) -> SparseVec<usize> {
    x.iter().cloned().enumerate().collect()
}

/// Center, radical and block profile of the algebra in `res`.
pub fn center_and_idempotents(res: &ZhuAlgebraResult) -> StructureReport {
    let n = res.dim();
    let lmats = left_regular(res);
    // z = sum c_k b_k central: sum_k c_k (b_k b_j - b_j b_k) = 0 for all j.
    let mut system: Dense = Vec::new();
    for j in 0..n {
        for t in 0..n {
            system.push((0..n).map(|k| res.table[k][j].coeff(&t) - res.table[j][k].coeff(&t)).collect());
        }
    }
    let center = if n == 0 { Vec::new() } else { dense_nullspace(&system, n) };

    let mut gram = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = mat_mul(&lmats[i], &lmats[j]);
            gram[i][j] = (0..n).map(|k| p[k][k].clone()).fold(Scalar::zero(), |a, b| a + b);
        }
    }
    let radical_dim = n - if n == 0 { 0 } else { dense_rank(&gram) };
    let semisimple = radical_dim == 0;

    let mut blocks = Vec::new();
    let mut idempotents = None;
    if semisimple && !center.is_empty() {
        for attempt in 0..16i64 {
            let coeffs: Vec<Scalar> =
                (0..center.len()).map(|k| int(1 + (k as i64 + 1) * (attempt + 2) + k as i64 * k as i64)).collect();
            let mut z = vec![Scalar::zero(); n];
            for (c, v) in coeffs.iter().zip(&center) {
                for (zi, vi) in z.iter_mut().zip(v) {
                    *zi += c * vi;
                }
            }
            let mut lz = crate::linalg::zeros(n, n);
            for (k, c) in z.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        lz[i][j] += c * &lmats[k][i][j];
                    }
                }
            }
            let chi = char_poly(&lz);
            let profile = squarefree_profile(&chi);
            let distinct: usize = profile.iter().map(|(_, d)| d).sum();
            if distinct != center.len() {
                continue;
            }
            let mut sizes = Vec::new();
            for (mult, d) in &profile {
                let s = (*mult as f64).sqrt().round() as usize;
                if s * s != *mult {
                    sizes.clear();
                    break;
                }
                sizes.extend(std::iter::repeat_n(s, *d));
            }
            if sizes.is_empty() {
                break;
            }
            sizes.sort_unstable();
            blocks = sizes;
            let sqfree = divmod(&chi, &gcd(&chi, &derivative(&chi))).0;
            idempotents = rational_roots(&monic(sqfree)).map(|roots| lagrange(res, &z, &roots));
            break;
        }
    }
    StructureReport {
        dim: n,
        center_dim: center.len(),
        radical_dim,
        semisimple,
        blocks,
        omega_central: res.check_omega_central(),
        idempotents,
    }
}

fn lagrange(res: &ZhuAlgebraResult, z: &[Scalar], roots: &[Scalar]) -> Vec<SparseVec<usize>> {
    let zv = vec_of(z);
    roots
        .iter()
        .map(|r| {
            let mut e = res.unit.clone();
            for s in roots {
                if s == r {
                    continue;
                }
                let mut f = zv.clone();
                f.add_scaled(&res.unit, &-s.clone());
                e = res.mul(&e, &f.scaled(&(Scalar::one() / (r - s))));
            }
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn squarefree_profile_of_products() {
        // (x-1)^4 (x+2)
        let mut p: Poly = vec![Scalar::one()];
        let mul = |p: &Poly, r: i64| {
            let mut out = vec![Scalar::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                out[i + 1] += c;
                out[i] -= c * int(r);
            }
            out
        };
        for _ in 0..4 {
            p = mul(&p, 1);
        }
        p = mul(&p, -2);
        let mut prof = squarefree_profile(&p);
        prof.sort();
        assert_eq!(prof, vec![(1, 1), (4, 1)]);
    }

    #[test]
    fn char_poly_of_diagonal() {
        let m = vec![vec![int(2), Scalar::zero()], vec![Scalar::zero(), ratio(1, 2)]];
        assert_eq!(char_poly(&m), vec![int(1), ratio(-5, 2), int(1)]);
    }

    #[test]
    fn irrational_roots_are_detected() {
        assert!(rational_roots(&vec![ratio(-1, 2), Scalar::zero(), Scalar::one()]).is_none());
        let r = rational_roots(&vec![int(-1), Scalar::zero(), Scalar::one()]).unwrap();
        assert_eq!(r.len(), 2);
    }
}
