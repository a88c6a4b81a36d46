//! Dense polynomial helpers shared by the field and series code.

use crate::ring::Coeff;

/// Rewrite `Σ c_k X^k` as `Σ d_k (X + 1)^k`, i.e. compute `f(Y - 1)` in `Y = X + 1`.
pub fn taylor_minus_one<R: Coeff>(c: &[R]) -> Vec<R> {
    if let Some(out) = R::with_residues(c, |m, r| taylor_minus_one_mod(m, &r)) {
        return out;
    }
    let mut acc: Vec<R> = Vec::with_capacity(c.len());
    for x in c.iter().rev() {
        // acc <- acc * (Y - 1) + x
        let n = acc.len();
        if n > 0 {
            acc.push(acc[n - 1].clone());
            for j in (1..n).rev() {
                acc[j] = acc[j - 1].sub(&acc[j]);
            }
            acc[0] = x.sub(&acc[0]);
        } else {
            acc.push(x.clone());
        }
    }
    acc
}

/// Inverse of [`taylor_minus_one`]: `f(X + 1)`.
pub fn taylor_plus_one<R: Coeff>(d: &[R]) -> Vec<R> {
    if let Some(out) = R::with_residues(d, |m, r| taylor_plus_one_mod(m, &r)) {
        return out;
    }
    let mut acc: Vec<R> = Vec::with_capacity(d.len());
    for x in d.iter().rev() {
        let n = acc.len();
        if n > 0 {
            acc.push(acc[n - 1].clone());
            for j in (1..n).rev() {
                acc[j] = acc[j].add(&acc[j - 1]);
            }
            acc[0] = acc[0].add(x);
        } else {
            acc.push(x.clone());
        }
    }
    acc
}

/// [`taylor_minus_one`] on residues modulo `m`.
pub(crate) fn taylor_minus_one_mod(m: u64, c: &[u64]) -> Vec<u64> {
    let sub = |a: u64, b: u64| if a >= b { a - b } else { a + m - b };
    let mut acc: Vec<u64> = Vec::with_capacity(c.len());
    for &x in c.iter().rev() {
        let n = acc.len();
        if n > 0 {
            acc.push(acc[n - 1]);
            for j in (1..n).rev() {
                acc[j] = sub(acc[j - 1], acc[j]);
            }
            acc[0] = sub(x, acc[0]);
        } else {
            acc.push(x);
        }
    }
    acc
}

/// [`taylor_plus_one`] on residues modulo `m`.
pub(crate) fn taylor_plus_one_mod(m: u64, d: &[u64]) -> Vec<u64> {
    let add = |a: u64, b: u64| {
        let s = a + b;
        if s >= m {
            s - m
        } else {
            s
        }
    };
    let mut acc: Vec<u64> = Vec::with_capacity(d.len());
    for &x in d.iter().rev() {
        let n = acc.len();
        if n > 0 {
            acc.push(acc[n - 1]);
            for j in (1..n).rev() {
                acc[j] = add(acc[j], acc[j - 1]);
            }
            acc[0] = add(acc[0], x);
        } else {
            acc.push(x);
        }
    }
    acc
}

/// First `len` coefficients of the product of two dense polynomials.
pub fn mul_trunc<R: Coeff>(a: &[R], b: &[R], len: usize) -> Vec<R> {
    let floor = |c: &R| c.val_bound().floor().to_integer();
    let fa: Vec<i64> = a.iter().take(len).map(floor).collect();
    let fb: Vec<i64> = b.iter().take(len).map(floor).collect();
    let mut out: Vec<Option<R>> = vec![None; len];
    // products with a zero factor only limit the precision of their slot
    let mut cap: Vec<Option<i64>> = vec![None; len];
    let mut lower = |slot: usize, v: i64| {
        cap[slot] = Some(cap[slot].map_or(v, |c: i64| c.min(v)));
    };
    for (i, x) in a.iter().enumerate().take(len) {
        let xz = x.is_zero();
        for (j, y) in b.iter().enumerate().take(len - i) {
            let yz = y.is_zero();
            if xz || yz {
                let v = if xz && yz {
                    (x.prec() + fb[j]).min(y.prec() + fa[i])
                } else if xz {
                    x.prec() + fb[j]
                } else {
                    y.prec() + fa[i]
                };
                lower(i + j, v);
                continue;
            }
            let t = x.mul(y);
            let slot = &mut out[i + j];
            *slot = Some(match slot.take() {
                Some(s) => s.add(&t),
                None => t,
            });
        }
    }
    let zero = a[0].zero_like();
    out.into_iter()
        .zip(cap)
        .map(|(c, k)| match (c, k) {
            (Some(c), Some(k)) => c.with_prec(k),
            (Some(c), None) => c,
            (None, Some(k)) => zero.lift_prec(k).with_prec(k),
            (None, None) => zero.clone(),
        })
        .collect()
}
