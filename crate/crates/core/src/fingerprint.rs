//! Tolerance-aware set of real vectors, used to identify group elements by
//! their matrices or orbit points.

use std::collections::HashMap;

const WALL: f64 = 0.01;
// grid offset so that exact zeros and small integers sit mid-bucket
const SHIFT: f64 = 0.381_966_011_250_105;

/// Vectors are bucketed on a grid of mesh `tol` and compared in the max norm.
///
/// Vectors closer than `tol / 100` are always identified; vectors farther
/// apart than `tol` never are. Lookups probe the neighbouring bucket along any
/// coordinate that sits within `tol / 100` of a bucket wall.
#[derive(Debug)]
pub struct ApproxSet<const N: usize> {
    tol: f64,
    buckets: HashMap<[i64; N], Vec<[f64; N]>>,
    len: usize,
}

impl<const N: usize> ApproxSet<N> {
    pub fn new(tol: f64) -> Self {
        assert!(tol > 0.0);
        Self { tol, buckets: HashMap::new(), len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn key(&self, x: &[f64; N]) -> [i64; N] {
        x.map(|v| (v / self.tol + SHIFT).floor() as i64)
    }

    pub fn contains(&self, x: &[f64; N]) -> bool {
        let base = self.key(x);
        let near: Vec<(usize, i64)> = x
            .iter()
            .enumerate()
            .filter_map(|(i, v)| {
                let frac = v / self.tol + SHIFT - base[i] as f64;
                if frac < WALL {
                    Some((i, -1))
                } else if frac > 1.0 - WALL {
                    Some((i, 1))
                } else {
                    None
                }
            })
            .collect();
        let n = near.len().min(16);
        for mask in 0u32..(1 << n) {
            let mut key = base;
            for (bit, &(i, dir)) in near.iter().take(n).enumerate() {
                if mask & (1 << bit) != 0 {
                    key[i] += dir;
                }
            }
            if let Some(items) = self.buckets.get(&key) {
                if items.iter().any(|y| close(x, y, self.tol)) {
                    return true;
                }
            }
        }
        false
    }

    /// Inserts `x` unless an equal vector is present; returns whether it was new.
    pub fn insert(&mut self, x: &[f64; N]) -> bool {
        if self.contains(x) {
            return false;
        }
        let key = self.key(x);
        self.buckets.entry(key).or_default().push(*x);
        self.len += 1;
        true
    }
}

fn close<const N: usize>(x: &[f64; N], y: &[f64; N], tol: f64) -> bool {
    x.iter().zip(y).all(|(a, b)| (a - b).abs() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_across_bucket_walls() {
        let tol = 1e-6;
        let wall = (3.0 - SHIFT) * tol;
        let mut s = ApproxSet::<2>::new(tol);
        assert!(s.insert(&[wall - 1e-13, 0.5]));
        assert!(!s.insert(&[wall + 1e-13, 0.5]));
        assert!(s.contains(&[wall, 0.5]));
        assert!(s.insert(&[wall + 5.0 * tol, 0.5]));
        assert_eq!(s.len(), 2);
    }
}
