//! One-vs-all L2-regularized hinge-loss linear classifier trained by dual
//! coordinate descent over binary indicator features.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Feature name to column index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Vocabulary {
    pub fn from_names(names: Vec<String>) -> Vocabulary {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i as u32)).collect();
        Vocabulary { names, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Index of `name`, adding it if new.
    pub fn intern(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len() as u32;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    /// Sorted column indices of the known features among `names`.
    pub fn encode(&self, names: &[String]) -> Vec<u32> {
        let mut v: Vec<u32> = names.iter().filter_map(|n| self.get(n)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    /// Misclassification cost; smaller means stronger regularization.
    pub c: f64,
    /// Upper bound on passes over the data.
    pub epochs: usize,
    /// Stop once the projected-gradient spread of a pass falls below this.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams { c: 0.1, epochs: 100, tolerance: 0.1, seed: 0 }
    }
}

/// Dual objective after each pass, per class, in label order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainingTrace {
    pub objectives: Vec<Vec<f64>>,
}

/// Binary dual coordinate descent. `ys` are ±1. Returns dense weights and the
/// dual objective `½‖w‖² − Σα` after every pass.
pub fn train_binary(xs: &[Vec<u32>], ys: &[f64], dim: usize, params: &SvmParams, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let n = xs.len();
    let mut w = vec![0.0f64; dim];
    let mut alpha = vec![0.0f64; n];
    let qii: Vec<f64> = xs.iter().map(|x| x.len() as f64).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut history = Vec::new();
    let mut alpha_sum = 0.0;

    for _ in 0..params.epochs {
        order.shuffle(&mut rng);
        let (mut pg_max, mut pg_min) = (f64::NEG_INFINITY, f64::INFINITY);
        for &i in &order {
            if qii[i] == 0.0 {
                continue;
            }
            let x = &xs[i];
            let y = ys[i];
            let g = y * x.iter().map(|&j| w[j as usize]).sum::<f64>() - 1.0;
            let pg = if alpha[i] == 0.0 {
                g.min(0.0)
            } else if alpha[i] == params.c {
                g.max(0.0)
            } else {
                g
            };
            pg_max = pg_max.max(pg);
            pg_min = pg_min.min(pg);
            if pg.abs() > 1e-12 {
                let old = alpha[i];
                alpha[i] = (old - g / qii[i]).clamp(0.0, params.c);
                let d = (alpha[i] - old) * y;
                alpha_sum += alpha[i] - old;
                for &j in x {
                    w[j as usize] += d;
                }
            }
        }
        let norm: f64 = w.iter().map(|v| v * v).sum();
        history.push(0.5 * norm - alpha_sum);
        if pg_max - pg_min < params.tolerance {
            break;
        }
    }
    (w, history)
}

/// Multi-class linear model: one weight vector per label, stored per feature.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearClassifier {
    /// Sorted label names; argmax ties go to the earliest.
    pub labels: Vec<String>,
    /// For each feature column, the nonzero `(label index, weight)` pairs.
    pub by_feature: Vec<Vec<(u16, f64)>>,
}

impl LinearClassifier {
    /// Trains one binary model per distinct label, in parallel.
    pub fn train(xs: &[Vec<u32>], ys: &[&str], dim: usize, params: &SvmParams) -> (LinearClassifier, TrainingTrace) {
        let mut labels: Vec<String> = ys.iter().map(|s| s.to_string()).collect();
        labels.sort();
        labels.dedup();
        let per_class: Vec<(Vec<f64>, Vec<f64>)> = labels
            .par_iter()
            .enumerate()
            .map(|(k, label)| {
                let yk: Vec<f64> = ys.iter().map(|y| if y == label { 1.0 } else { -1.0 }).collect();
                train_binary(xs, &yk, dim, params, params.seed.wrapping_add(k as u64))
            })
            .collect();
        let mut by_feature = vec![Vec::new(); dim];
        for (k, (w, _)) in per_class.iter().enumerate() {
            for (j, &v) in w.iter().enumerate() {
                if v != 0.0 {
                    by_feature[j].push((k as u16, v));
                }
            }
        }
        let trace = TrainingTrace { objectives: per_class.into_iter().map(|(_, h)| h).collect() };
        (LinearClassifier { labels, by_feature }, trace)
    }

    pub fn scores(&self, x: &[u32]) -> Vec<f64> {
        let mut s = vec![0.0; self.labels.len()];
        for &j in x {
            if let Some(ws) = self.by_feature.get(j as usize) {
                for &(k, v) in ws {
                    s[k as usize] += v;
                }
            }
        }
        s
    }

    /// Index of the best label and all scores.
    pub fn predict(&self, x: &[u32]) -> (usize, Vec<f64>) {
        let s = self.scores(x);
        let mut best = 0;
        for k in 1..s.len() {
            if s[k] > s[best] {
                best = k;
            }
        }
        (best, s)
    }

    pub fn nonzero_weights(&self) -> usize {
        self.by_feature.iter().map(Vec::len).sum()
    }
}
