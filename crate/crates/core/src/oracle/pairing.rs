//! Matching two eigenvalue multisets.

use num_complex::Complex64;

/// Pairs every element of `left` with a distinct element of `right`
/// (equal lengths), minimizing the largest matched distance locally.
///
/// Greedy nearest-neighbor after sorting by real part, then pairwise swaps
/// while they reduce the larger of the two affected distances. Returns
/// `(left index, right index)` pairs.
pub fn pair_multisets(left: &[Complex64], right: &[Complex64]) -> Vec<(usize, usize)> {
    assert_eq!(left.len(), right.len(), "multisets differ in size");
    let n = left.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| left[i].re.total_cmp(&left[j].re).then(left[i].im.total_cmp(&left[j].im)));

    let mut used = vec![false; n];
    let mut partner = vec![0usize; n];
    for &i in &order {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (j, r) in right.iter().enumerate() {
            if !used[j] {
                let d = (left[i] - r).norm();
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
        }
        used[best] = true;
        partner[i] = best;
    }

    for _ in 0..n.max(1) {
        let mut improved = false;
        for i in 0..n {
            for k in i + 1..n {
                let cur = (left[i] - right[partner[i]]).norm().max((left[k] - right[partner[k]]).norm());
                let alt = (left[i] - right[partner[k]]).norm().max((left[k] - right[partner[i]]).norm());
                if alt < cur {
                    partner.swap(i, k);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    (0..n).map(|i| (i, partner[i])).collect()
}

/// Largest distance over the pairing from [`pair_multisets`].
pub fn matched_distance(left: &[Complex64], right: &[Complex64]) -> f64 {
    pair_multisets(left, right)
        .into_iter()
        .map(|(i, j)| (left[i] - right[j]).norm())
        .fold(0.0, f64::max)
}
