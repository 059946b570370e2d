use num_integer::Integer;

use super::cyclotomic::{Cyclotomic, CyclotomicField, Elem};

/// Rank of a matrix of cyclotomic numbers over the cyclotomic field.
///
/// Entries are lifted to the least common conductor first. Rows may be ragged
/// only if empty; an empty matrix has rank 0.
pub fn cyc_rank(rows: &[Vec<Cyclotomic>]) -> usize {
    let n = rows
        .iter()
        .flatten()
        .fold(1u64, |acc, c| acc.lcm(&c.conductor()));
    let field = CyclotomicField::get(n);
    let rows: Vec<Vec<Elem>> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.elem_in(&field)).collect())
        .collect();
    rank_in_field(&field, rows)
}

/// Gaussian elimination over `Q(ζ_N)`, pivoting on the first nonzero entry of each column.
pub fn rank_in_field(field: &CyclotomicField, rows: Vec<Vec<Elem>>) -> usize {
    row_basis(field, rows).len()
}

/// Nonzero rows of a row echelon form; they span the row space of the input.
pub fn row_basis(field: &CyclotomicField, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    rows.retain(|r| r.iter().any(|e| !field.is_zero(e)));
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<Elem> = rows[rank]
            .iter()
            .enumerate()
            .map(|(c, e)| {
                if c < col || field.is_zero(e) {
                    e.clone()
                } else {
                    field.mul(e, &inv)
                }
            })
            .collect();
        for r in rank + 1..rows.len() {
            if field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                if field.is_zero(&pivot_row[c]) {
                    continue;
                }
                let t = field.mul(&factor, &pivot_row[c]);
                rows[r][c] = field.sub(&rows[r][c], &t);
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Phase;

    fn c(p: Phase) -> Cyclotomic {
        Cyclotomic::from_phase(p)
    }

    #[test]
    fn rank_examples() {
        let one_plus_minus_one = &Cyclotomic::one() + &c(Phase::MINUS_ONE);
        assert_eq!(cyc_rank(&[vec![one_plus_minus_one]]), 0);
        let id = vec![
            vec![Cyclotomic::one(), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::one()],
        ];
        assert_eq!(cyc_rank(&id), 2);
        let i = c(Phase::zeta(4, 1));
        let m = vec![
            vec![Cyclotomic::one(), i.clone()],
            vec![i.clone(), c(Phase::MINUS_ONE)],
        ];
        assert_eq!(cyc_rank(&m), 1);
        assert_eq!(cyc_rank(&[]), 0);
    }

    #[test]
    fn single_phase_has_rank_one() {
        for k in 0..15 {
            assert_eq!(cyc_rank(&[vec![c(Phase::zeta(15, k))]]), 1);
        }
    }
}
