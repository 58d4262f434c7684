//! Pairwise contraction.
//!
//! Contracting bonds between A and B means: form A (x) B, move the remaining legs to the
//! front in order and each bonded pair behind them as (in-leg, out-leg), then apply the
//! pairing V* (x) V -> k to every pair. The reordering is a Koszul permutation.

use std::collections::HashMap;

use super::{dense_len, encode, koszul_sign, GradedTensor, Leg, Polarity, TensorError};
use crate::scalar::Scalar;

fn check_pair(a: &Leg, b: &Leg, what: &str) -> Result<(), TensorError> {
    if a.space != b.space {
        return Err(TensorError::BondMismatch(format!("{what}: spaces differ ({:?} vs {:?})", a.space, b.space)));
    }
    if a.polarity == b.polarity {
        return Err(TensorError::BondMismatch(format!("{what}: both legs are {:?}", a.polarity)));
    }
    Ok(())
}

fn mark_used(used: &mut [bool], k: usize, name: &str) -> Result<(), TensorError> {
    if k >= used.len() {
        return Err(TensorError::BondMismatch(format!("{name} leg {k} does not exist")));
    }
    if used[k] {
        return Err(TensorError::LegReused(format!("{name} leg {k}")));
    }
    used[k] = true;
    Ok(())
}

struct Prepared {
    rem_lin: u64,
    key: Vec<u32>,
    odd: Vec<bool>,
}

fn prepare(t: &GradedTensor, rem: &[usize], bonded: &[usize], need_odd: bool) -> Vec<(Prepared, Scalar)> {
    let rem_dims: Vec<usize> = rem.iter().map(|&k| t.dims[k]).collect();
    t.entries()
        .map(|(idx, v)| {
            let rem_idx: Vec<usize> = rem.iter().map(|&k| idx[k]).collect();
            let odd = if need_odd {
                idx.iter().zip(&t.legs).map(|(&i, l)| l.space.is_odd(i)).collect()
            } else {
                Vec::new()
            };
            let p = Prepared {
                rem_lin: encode(&rem_idx, &rem_dims),
                key: bonded.iter().map(|&k| idx[k] as u32).collect(),
                odd,
            };
            (p, v.clone())
        })
        .collect()
}

type Acc = HashMap<u64, Scalar>;

fn accumulate(acc: &mut Acc, k: u64, v: Scalar) {
    match acc.get_mut(&k) {
        Some(s) => *s += &v,
        None => {
            acc.insert(k, v);
        }
    }
}

#[cfg(feature = "parallel")]
fn merge_accs(mut a: Acc, b: Acc) -> Acc {
    if a.len() < b.len() {
        return merge_accs(b, a);
    }
    for (k, v) in b {
        accumulate(&mut a, k, v);
    }
    a
}

pub(super) fn merge(x: &GradedTensor, y: &GradedTensor, bonds: &[(usize, usize)]) -> Result<GradedTensor, TensorError> {
    let (nx, ny) = (x.rank(), y.rank());
    let mut ux = vec![false; nx];
    let mut uy = vec![false; ny];
    for &(p, q) in bonds {
        mark_used(&mut ux, p, "left")?;
        mark_used(&mut uy, q, "right")?;
        check_pair(&x.legs[p], &y.legs[q], &format!("bond ({p}, {q})"))?;
    }
    let rx: Vec<usize> = (0..nx).filter(|&k| !ux[k]).collect();
    let ry: Vec<usize> = (0..ny).filter(|&k| !uy[k]).collect();
    let legs: Vec<Leg> = rx.iter().map(|&k| x.legs[k].clone()).chain(ry.iter().map(|&k| y.legs[k].clone())).collect();
    let out_dims: Vec<usize> = legs.iter().map(Leg::dim).collect();
    dense_len(&out_dims).ok_or_else(|| TensorError::TooLarge(out_dims.clone()))?;
    let ry_len = dense_len(&ry.iter().map(|&k| y.dims[k]).collect::<Vec<_>>()).unwrap();

    // target slot of every source slot of x (x) y
    let mut target = vec![0usize; nx + ny];
    for (pos, &k) in rx.iter().enumerate() {
        target[k] = pos;
    }
    for (pos, &k) in ry.iter().enumerate() {
        target[nx + k] = rx.len() + pos;
    }
    let base = rx.len() + ry.len();
    for (b, &(p, q)) in bonds.iter().enumerate() {
        let (first, second) = if x.legs[p].polarity == Polarity::In { (p, nx + q) } else { (nx + q, p) };
        target[first] = base + 2 * b;
        target[second] = base + 2 * b + 1;
    }

    let signed = !(x.all_even() && y.all_even());
    let bx: Vec<usize> = bonds.iter().map(|b| b.0).collect();
    let by: Vec<usize> = bonds.iter().map(|b| b.1).collect();
    let px = prepare(x, &rx, &bx, signed);
    let py = prepare(y, &ry, &by, signed);
    let mut index: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (j, (p, _)) in py.iter().enumerate() {
        index.entry(p.key.as_slice()).or_default().push(j);
    }

    let work = |acc: &mut Acc, (pa, va): &(Prepared, Scalar)| {
        let Some(matches) = index.get(pa.key.as_slice()) else { return };
        let mut odd = Vec::new();
        for &j in matches {
            let (pb, vb) = &py[j];
            let mut v = va * vb;
            if signed {
                odd.clear();
                odd.extend_from_slice(&pa.odd);
                odd.extend_from_slice(&pb.odd);
                if koszul_sign(&odd, &target) {
                    v = -v;
                }
            }
            accumulate(acc, pa.rem_lin * ry_len + pb.rem_lin, v);
        }
    };

    let acc = run(&px, work);
    Ok(GradedTensor::from_linear(legs, acc))
}

fn run<T: Sync, F: Fn(&mut Acc, &T) + Sync>(items: &[T], work: F) -> Acc {
    #[cfg(feature = "parallel")]
    if crate::exec::is_parallel() && items.len() >= 256 {
        use rayon::prelude::*;
        return items
            .par_chunks(64)
            .fold(Acc::new, |mut acc, chunk| {
                for it in chunk {
                    work(&mut acc, it);
                }
                acc
            })
            .reduce(Acc::new, merge_accs);
    }
    let mut acc = Acc::new();
    for it in items {
        work(&mut acc, it);
    }
    acc
}

pub(super) fn trace(x: &GradedTensor, pairs: &[(usize, usize)]) -> Result<GradedTensor, TensorError> {
    let n = x.rank();
    let mut used = vec![false; n];
    for &(p, q) in pairs {
        mark_used(&mut used, p, "self")?;
        mark_used(&mut used, q, "self")?;
        check_pair(&x.legs[p], &x.legs[q], &format!("self bond ({p}, {q})"))?;
    }
    let rem: Vec<usize> = (0..n).filter(|&k| !used[k]).collect();
    let legs: Vec<Leg> = rem.iter().map(|&k| x.legs[k].clone()).collect();
    let rem_dims: Vec<usize> = legs.iter().map(Leg::dim).collect();
    let mut target = vec![0usize; n];
    for (pos, &k) in rem.iter().enumerate() {
        target[k] = pos;
    }
    for (b, &(p, q)) in pairs.iter().enumerate() {
        let (first, second) = if x.legs[p].polarity == Polarity::In { (p, q) } else { (q, p) };
        target[first] = rem.len() + 2 * b;
        target[second] = rem.len() + 2 * b + 1;
    }
    let signed = !x.all_even();
    let mut acc = Acc::new();
    for (idx, v) in x.entries() {
        if pairs.iter().any(|&(p, q)| idx[p] != idx[q]) {
            continue;
        }
        let mut v = v.clone();
        if signed {
            let odd: Vec<bool> = idx.iter().zip(&x.legs).map(|(&i, l)| l.space.is_odd(i)).collect();
            if koszul_sign(&odd, &target) {
                v = -v;
            }
        }
        let rem_idx: Vec<usize> = rem.iter().map(|&k| idx[k]).collect();
        accumulate(&mut acc, encode(&rem_idx, &rem_dims), v);
    }
    Ok(GradedTensor::from_linear(legs, acc))
}
