//! Integer Smith normal form, used to put abelianizations into
//! invariant-factor form.

/// Reduces an integer matrix to Smith normal form and returns the diagonal
/// entries `d_1 | d_2 | ...` (nonzero ones only) plus the number of zero
/// columns beyond the rank (the free rank of the cokernel).
pub fn smith_invariants(mut m: Vec<Vec<i128>>) -> (Vec<u64>, u64) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0usize;
    let mut diag: Vec<i128> = Vec::new();
    let mut r0 = 0usize;
    let mut c0 = 0usize;
    while r0 < rows && c0 < cols {
        // find the nonzero pivot of least absolute value
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(r0) {
            for (j, &v) in row.iter().enumerate().skip(c0) {
                if v != 0 && pivot.map_or(true, |(pi, pj)| v.abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        // clear the pivot row and column
        let mut dirty = true;
        while dirty {
            dirty = false;
            let p = m[r0][c0];
            for i in r0 + 1..rows {
                let q = m[i][c0] / p;
                if q != 0 {
                    for j in c0..cols {
                        m[i][j] -= q * m[r0][j];
                    }
                }
                if m[i][c0] != 0 {
                    m.swap(r0, i);
                    dirty = true;
                }
            }
            let p = m[r0][c0];
            for j in c0 + 1..cols {
                let q = m[r0][j] / p;
                if q != 0 {
                    for i in r0..rows {
                        m[i][j] -= q * m[i][c0];
                    }
                }
                if m[r0][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(c0, j);
                    }
                    dirty = true;
                }
            }
        }
        // the pivot must divide every remaining entry
        let p = m[r0][c0];
        if let Some((i, j)) = (r0 + 1..rows)
            .flat_map(|i| (c0 + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] % p != 0)
        {
            let _ = j;
            for k in c0..cols {
                let add = m[i][k];
                m[r0][k] += add;
            }
            continue;
        }
        diag.push(p.abs());
        rank += 1;
        r0 += 1;
        c0 += 1;
    }
    diag.sort_unstable();
    let torsion: Vec<u64> = diag.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect();
    let free = (cols - rank) as u64;
    (torsion, free)
}

/// Invariant-factor normal form of `Z/m_1 + ... + Z/m_k` given as a modulus
/// list: ascending factors, each dividing the next.
pub fn invariant_factors(moduli: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &m in moduli {
        let mut m = m;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if m > 1 {
            by_prime.entry(m).or_default().push(1);
        }
    }
    let slots = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; slots];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, e) in exps.into_iter().enumerate() {
            factors[slot] *= p.pow(e);
        }
    }
    factors.retain(|&f| f > 1);
    factors.reverse();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_merge_prime_powers() {
        assert_eq!(invariant_factors(&[2, 2]), vec![2, 2]);
        assert_eq!(invariant_factors(&[4, 6]), vec![2, 12]);
        assert_eq!(invariant_factors(&[1, 1, 3]), vec![3]);
        assert!(invariant_factors(&[1]).is_empty());
    }

    #[test]
    fn smith_of_diagonalish_matrix() {
        // cokernel of [[2,0],[0,4],[0,0]] over Z^2: Z/2 + Z/4
        let (torsion, free) = smith_invariants(vec![vec![2, 0], vec![0, 4], vec![0, 0]]);
        assert_eq!(torsion, vec![2, 4]);
        assert_eq!(free, 0);
    }

    #[test]
    fn smith_with_mixing() {
        // [[2, 4], [4, 2]]: determinant -12, d1 = 2, d2 = 6
        let (torsion, free) = smith_invariants(vec![vec![2, 4], vec![4, 2]]);
        assert_eq!(torsion, vec![2, 6]);
        assert_eq!(free, 0);
        // one relator in two generators leaves a free factor
        let (torsion, free) = smith_invariants(vec![vec![3, 0]]);
        assert_eq!(torsion, vec![3]);
        assert_eq!(free, 1);
    }
}
