use crate::combinatorics::IndexProfile;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::limits::Limits;
use crate::poly::Poly;
use crate::powersums::PowerSums;

use super::initial::solve_initial_with;
use super::{check_positive, diagonal_vanishes, RelationSet, RelationTerm};

/// `g = 1 + Σ_(j=1)^(p^m-a) f_(a,j) t^(r_a - (j + i_j p^m))`, a polynomial over the prime field.
pub fn g_poly(a: u64, field: &Field) -> Result<Poly> {
    let profile = IndexProfile::new(a, field.q() as u64)?;
    let mut coeffs = vec![FieldElem::ZERO; profile.r_a as usize + 1];
    coeffs[0] = field.one();
    for j in profile.nonzero_f_indices() {
        if j == 0 {
            continue;
        }
        let e = (profile.r_a - profile.shifted_index(j)?) as usize;
        let c = field.from_int(profile.f_aj(j)?.value() as i64);
        coeffs[e] = field.add(coeffs[e], c);
    }
    Ok(Poly::new(field, coeffs))
}

/// `T(a, b + r_a)`: the terms `(f_(a,j), a + b + j + i_j p^m)` with `f_(a,j) != 0`.
pub fn recursion_increment(a: u64, q: u64, b: u64) -> Result<Vec<RelationTerm>> {
    check_positive(a, b)?;
    let profile = IndexProfile::new(a, q)?;
    let mut out = Vec::with_capacity(profile.t_a as usize);
    for j in profile.nonzero_f_indices() {
        let index = a
            .checked_add(b)
            .and_then(|x| x.checked_add(profile.shifted_index(j).ok()?))
            .ok_or(Error::Overflow("recursion index"))?;
        out.push(RelationTerm { coeff: profile.f_aj(j)?, index });
    }
    out.sort_by_key(|t| std::cmp::Reverse(t.index));
    Ok(out)
}

/// `S(a,b)` seeded at `b_0 = ((b - 1) mod r_a) + 1` and extended by whole recursion steps.
pub fn relation_by_recursion(a: u64, b: u64, q: u64) -> Result<RelationSet> {
    let limits = Limits::default();
    let field = Field::from_order(q, &limits)?;
    relation_by_recursion_with(&PowerSums::new(&field, &limits), a, b)
}

pub(crate) fn relation_by_recursion_with(sums: &PowerSums, a: u64, b: u64) -> Result<RelationSet> {
    check_positive(a, b)?;
    let q = sums.field().q() as u64;
    if diagonal_vanishes(q, a, b) {
        return RelationSet::empty(q, a, b);
    }
    let r_a = IndexProfile::new(a, q)?.r_a;
    let b0 = (b - 1) % r_a + 1;
    let mut set = solve_initial_with(sums, a, b0)?;
    let mut current = b0;
    while current < b {
        set = set.disjoint_union(&recursion_increment(a, q, current)?)?;
        current += r_a;
    }
    RelationSet::accumulate(q, a, b, set.terms().iter().map(|t| (t.index, t.coeff)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::bracket;
    use crate::ratfunc::RatFunc;

    fn field(q: u64) -> Field {
        Field::from_order(q, &Limits::default()).unwrap()
    }

    #[test]
    fn g_for_q9_a17() {
        let f = field(9);
        let g = g_poly(17, &f).unwrap();
        assert_eq!(g.to_string(), "1 + 2*t^72 + 2*t^80 + t^152");
    }

    #[test]
    fn g_for_q2_a19() {
        let f = field(2);
        let g = g_poly(19, &f).unwrap();
        let exps: Vec<usize> = (0..=g.degree().unwrap()).filter(|&i| !g.coeff(i).is_zero()).collect();
        assert_eq!(exps, vec![0, 19, 20, 23, 24, 27, 28, 31]);
    }

    #[test]
    fn g_at_powers_of_p_is_one() {
        for (q, a) in [(2u64, 16u64), (3, 9), (4, 8), (9, 27)] {
            assert!(g_poly(a, &field(q)).unwrap().is_one());
        }
    }

    // g = -(t^(q-1) - 1)^(p^m - a) [1]^a S_1(a)
    #[test]
    fn g_matches_the_rational_product() {
        for q in [2u64, 3, 4, 9] {
            let f = field(q);
            let sums = PowerSums::new(&f, &Limits::default());
            let b1 = bracket(1, &f);
            let unit = &Poly::monomial(&f, f.one(), (q - 1) as usize) - &Poly::one(&f);
            for a in 1..=60u64 {
                let profile = IndexProfile::new(a, q).unwrap();
                let factor = -&(&unit.pow(profile.p_m - a) * &b1.pow(a));
                let product = sums.s_d(1, a).unwrap().mul_poly(&factor);
                let expected = RatFunc::from_poly(g_poly(a, &f).unwrap());
                assert_eq!(product, expected, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn increment_for_q2_a19() {
        let b = 7;
        let idx: Vec<u64> = recursion_increment(19, 2, b).unwrap().iter().map(|t| t.index).collect();
        let mut expected: Vec<u64> = [19, 20, 23, 24, 27, 28, 31, 32].iter().map(|k| b + k).collect();
        expected.reverse();
        assert_eq!(idx, expected);
    }

    #[test]
    fn increment_at_powers_and_at_one() {
        let t = recursion_increment(8, 2, 5).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].coeff.value(), t[0].index), (1, 13));
        let t = recursion_increment(1, 2, 4).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].coeff.value(), t[0].index), (1, 5));
    }

    #[test]
    fn q2_families() {
        for b in 1..=12u64 {
            let expected: Vec<(u32, u64)> = (2..=b).rev().map(|i| (1, i)).collect();
            assert_eq!(relation_by_recursion(1, b, 2).unwrap().pairs(), expected, "S(1,{b})");
        }
        for b in (1..=15u64).step_by(2) {
            let mut idx: Vec<u64> = (1..=(b - 1) / 2).map(|i| 2 * i + 1).collect();
            idx.push(2);
            idx.sort_unstable_by(|x, y| y.cmp(x));
            let expected: Vec<(u32, u64)> = idx.into_iter().map(|i| (1, i)).collect();
            assert_eq!(relation_by_recursion(2, b, 2).unwrap().pairs(), expected, "S(2,{b})");
        }
    }
}
