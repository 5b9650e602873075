use proptest::prelude::*;

use crate::dataset::{CausalDataset, ClassificationDataset};

/// Four instances, two per class, one positive ranked below a negative.
pub fn fix_c() -> ClassificationDataset {
    ClassificationDataset::from_records(&[(0.9, 1), (0.8, 0), (0.4, 1), (0.2, 0)]).unwrap()
}

pub fn separated() -> ClassificationDataset {
    ClassificationDataset::from_records(&[(1.0, 1), (0.9, 1), (0.2, 0), (0.1, 0)]).unwrap()
}

/// Three treated and three control instances with positive uplift.
pub fn fix_u() -> CausalDataset {
    CausalDataset::from_records(&[
        (0.9, 1, 1),
        (0.6, 1, 1),
        (0.2, 0, 1),
        (0.5, 0, 0),
        (0.3, 1, 0),
        (-0.1, 0, 0),
    ])
    .unwrap()
}

/// Treatment and control with identical score/outcome multisets.
pub fn identical_samples() -> CausalDataset {
    let base = [(0.7, 1), (0.4, 0), (0.1, 1), (-0.3, 0), (0.4, 1)];
    let records: Vec<(f64, u8, u8)> = base
        .iter()
        .flat_map(|&(s, y)| [(s, y, 1), (s, y, 0)])
        .collect();
    CausalDataset::from_records(&records).unwrap()
}

/// Scores on a coarse grid so that ties are common.
pub fn arb_classification(
    size: std::ops::Range<usize>,
) -> impl Strategy<Value = ClassificationDataset> {
    prop::collection::vec((0u32..=20, 0u8..=1), size).prop_map(|rows| {
        let records: Vec<(f64, u8)> = rows.into_iter().map(|(s, y)| (s as f64 / 20.0, y)).collect();
        ClassificationDataset::from_records(&records).unwrap()
    })
}

/// Fraction of (positive, negative) pairs ranked correctly, ties counting half.
pub fn pairwise_auc(scores: &[f64], outcomes: &[u8]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, &si) in scores.iter().enumerate() {
        if outcomes[i] != 1 {
            continue;
        }
        for (j, &sj) in scores.iter().enumerate() {
            if outcomes[j] != 0 {
                continue;
            }
            pairs += 1.0;
            if si > sj {
                wins += 1.0;
            } else if si == sj {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}
