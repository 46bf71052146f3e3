use crate::elliptic::EllipticParams;
use crate::scalar::Real;

const MAX_LANDEN_STEPS: usize = 64;

/// `cn(u, k)` for real `u`, given the modulus pair `(k, k')`.
///
/// Descending Landen transformation: run the AGM of `(1, k')` keeping the
/// `c_n` terms, then walk the amplitude back down.
pub fn jacobi_cn_pair<T: Real>(u: T, k: T, k_prime: T) -> T {
    let mut a = vec![T::one()];
    let mut c = vec![k];
    let mut b = k_prime;
    while a.len() < MAX_LANDEN_STEPS {
        let an = *a.last().unwrap();
        let cn = *c.last().unwrap();
        if cn.abs() <= T::epsilon() * an {
            break;
        }
        a.push((an + b) * T::lit(0.5));
        c.push((an - b) * T::lit(0.5));
        b = (an * b).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = T::lit(2.0).powi(n as i32) * a[n] * u;
    for i in (1..=n).rev() {
        phi = (phi + (c[i] / a[i] * phi.sin()).asin()) * T::lit(0.5);
    }
    phi.cos()
}

/// `cn(u, k)` for real `u` and `0 ≤ k < 1`.
pub fn jacobi_cn<T: Real>(u: T, k: T) -> T {
    jacobi_cn_pair(u, k, ((T::one() - k) * (T::one() + k)).sqrt())
}

/// `cn(iK'/3, k) = 1/cn(K'/3, k')`, which is real and larger than one.
pub fn cn_imag_third<T: Real>(params: &EllipticParams<T>) -> T {
    jacobi_cn_pair(params.big_k_prime / T::lit(3.0), params.k_prime, params.k).recip()
}
