//! Classification metrics.

/// F1 of one class, or `None` when the class never occurs in either the
/// truth or the predictions.
pub fn f1(truth: &[bool], predicted: &[bool]) -> Option<f64> {
    let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
    for (&t, &p) in truth.iter().zip(predicted) {
        match (t, p) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (true, false) => fn_ += 1,
            (false, false) => {}
        }
    }
    if tp + fp + fn_ == 0 {
        return None;
    }
    Some(2.0 * tp as f64 / (2 * tp + fp + fn_) as f64)
}

/// Unweighted mean of per-class F1 over classes that occur.
pub fn macro_f1(truth: &[usize], predicted: &[usize], classes: usize) -> f64 {
    let scores: Vec<f64> = (0..classes)
        .filter_map(|c| {
            let t: Vec<bool> = truth.iter().map(|&x| x == c).collect();
            let p: Vec<bool> = predicted.iter().map(|&x| x == c).collect();
            f1(&t, &p)
        })
        .collect();
    scores.iter().sum::<f64>() / scores.len().max(1) as f64
}

/// Area under the ROC curve via the rank-sum statistic with midranks for
/// ties. `None` unless both classes are present.
pub fn auc(scores: &[f64], truth: &[bool]) -> Option<f64> {
    let pos = truth.iter().filter(|&&t| t).count();
    let neg = truth.len() - pos;
    if pos == 0 || neg == 0 {
        return None;
    }
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && scores[idx[j + 1]] == scores[idx[i]] {
            j += 1;
        }
        let midrank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            if truth[k] {
                rank_sum += midrank;
            }
        }
        i = j + 1;
    }
    let pos = pos as f64;
    Some((rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg as f64))
}

pub fn accuracy(truth: &[bool], predicted: &[bool]) -> f64 {
    let hits = truth.iter().zip(predicted).filter(|(a, b)| a == b).count();
    hits as f64 / truth.len().max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_values() {
        assert_eq!(f1(&[true, false], &[true, false]), Some(1.0));
        assert_eq!(f1(&[false, false], &[false, false]), None);
        // tp=1 fp=1 fn=1
        assert_eq!(f1(&[true, true, false], &[true, false, true]), Some(0.5));
        assert_eq!(macro_f1(&[0, 0, 1, 1], &[0, 0, 1, 1], 2), 1.0);
    }

    #[test]
    fn auc_values() {
        assert_eq!(auc(&[0.1, 0.2, 0.8, 0.9], &[false, false, true, true]), Some(1.0));
        assert_eq!(auc(&[0.9, 0.8, 0.2, 0.1], &[false, false, true, true]), Some(0.0));
        assert_eq!(auc(&[0.5, 0.5], &[false, true]), Some(0.5));
        assert_eq!(auc(&[0.5], &[true]), None);
    }
}
