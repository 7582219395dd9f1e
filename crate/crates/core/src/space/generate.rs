use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteSpace, SpaceError};
use crate::pointset::PointSet;

/// Largest carrier accepted by [`enumerate_all_spaces`].
pub const MAX_ENUMERATION: usize = 5;

/// Draw a random digraph with independent edge probability `p` and close it
/// reflexively and transitively. The edge density after closure is higher
/// than `p`.
pub fn random_space(n: usize, p: f64, seed: u64) -> Result<FiniteSpace, SpaceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SpaceError::BadParameters(format!("edge probability {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(p) {
                edges.push((x, y));
            }
        }
    }
    FiniteSpace::from_preorder(n, edges)
}

/// Every topology on `{0, .., n-1}` exactly once, ordered by the bit pattern
/// of the off-diagonal part of the preorder.
pub fn enumerate_all_spaces(n: usize) -> Result<Vec<FiniteSpace>, SpaceError> {
    if n > MAX_ENUMERATION {
        return Err(SpaceError::BudgetExceeded {
            what: "exhaustive enumeration size",
            budget: MAX_ENUMERATION,
        });
    }
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut rows: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for (i, &(x, y)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rows[x].insert(y);
            }
        }
        let transitive = rows.iter().all(|&r| r.iter().all(|y| rows[y].is_subset(r)));
        if transitive {
            out.push(FiniteSpace {
                min_open: rows,
                labels: None,
            });
        }
    }
    Ok(out)
}

/// Named example spaces, written `name` or `name:params`:
///
/// * `sierpinski`: `U_0 = {0, 1}`, `U_1 = {1}`
/// * `discrete:n`, `antidiscrete:n`
/// * `chain:n`: `U_i = {j : j ≥ i}`
/// * `zigzag:n`: even points see their odd neighbours, odd points are open
/// * `one_nonisolated:n`: the last point `inf` has `U_inf = X`, the rest are isolated
/// * `partition:a,b,..`: consecutive blocks of the given sizes
pub fn named(spec: &str) -> Result<FiniteSpace, SpaceError> {
    let spec = spec.trim();
    let (name, params) = match spec.split_once(':') {
        Some((name, params)) => (name, Some(params)),
        None => match spec.split_once('(') {
            Some((name, rest)) => (name, Some(rest.trim_end_matches(')'))),
            None => (spec, None),
        },
    };
    let bad = || SpaceError::BadParameters(spec.to_string());
    let numbers = || -> Result<Vec<usize>, SpaceError> {
        params
            .ok_or_else(bad)?
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
            .collect()
    };
    let size = || -> Result<usize, SpaceError> {
        match numbers()?.as_slice() {
            [n] => Ok(*n),
            _ => Err(bad()),
        }
    };
    let rows = |n: usize, f: &dyn Fn(usize) -> PointSet| -> Result<FiniteSpace, SpaceError> {
        if n > crate::pointset::MAX_POINTS {
            return Err(SpaceError::TooLarge(n));
        }
        FiniteSpace::from_min_open((0..n).map(f).collect())
    };
    match name {
        "sierpinski" => FiniteSpace::from_preorder(2, [(0, 1)]),
        "discrete" => {
            let n = size()?;
            rows(n, &PointSet::singleton)
        }
        "antidiscrete" => {
            let n = size()?;
            rows(n, &|_| PointSet::full(n))
        }
        "chain" => {
            let n = size()?;
            rows(n, &|i| PointSet::full(n) - PointSet::full(i))
        }
        "zigzag" => {
            let n = size()?;
            rows(n, &|i| {
                if i % 2 == 1 {
                    return PointSet::singleton(i);
                }
                let mut u = PointSet::singleton(i);
                if i > 0 {
                    u.insert(i - 1);
                }
                if i + 1 < n {
                    u.insert(i + 1);
                }
                u
            })
        }
        "one_nonisolated" => {
            let n = size()?;
            if n == 0 {
                return Err(bad());
            }
            let inf = n - 1;
            let labels = (0..n)
                .map(|x| {
                    if x == inf {
                        "inf".to_string()
                    } else {
                        x.to_string()
                    }
                })
                .collect();
            rows(n, &|x| {
                if x == inf {
                    PointSet::full(n)
                } else {
                    PointSet::singleton(x)
                }
            })?
            .with_labels(labels)
        }
        "partition" => {
            let blocks = numbers()?;
            if blocks.contains(&0) {
                return Err(bad());
            }
            let n: usize = blocks.iter().sum();
            let mut table = Vec::with_capacity(n);
            let mut start = 0;
            for b in blocks {
                let block = PointSet::full(start + b) - PointSet::full(start);
                table.extend(std::iter::repeat_n(block, b));
                start += b;
            }
            rows(n, &|x| table[x])
        }
        _ => Err(SpaceError::UnknownName(spec.to_string())),
    }
}
