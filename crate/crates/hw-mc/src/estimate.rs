//! Statistical verification of exact values: empirical means of word trace
//! functionals and entry monomials over sampled Haar unitaries, z-scores
//! against exact values, and the variance decay fit in the dimension.
//!
//! Accumulation is Kahan-compensated and chunked deterministically: results
//! are bit-identical for a given (seed, N) regardless of the worker count.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use hw_core::error::{HwError, Result};
use hw_core::perm::Permutation;
use hw_core::word::{Letter, Word};

use crate::linalg::{CMat, C64};
use crate::sampler::{haar_unitary, SamplerConfig};

/// Compensated complex accumulator.
#[derive(Clone, Copy, Default, Debug)]
struct Kahan {
    sum: (f64, f64),
    comp: (f64, f64),
}

impl Kahan {
    fn add(&mut self, v: C64) {
        let y_re = v.re - self.comp.0;
        let t_re = self.sum.0 + y_re;
        self.comp.0 = (t_re - self.sum.0) - y_re;
        self.sum.0 = t_re;
        let y_im = v.im - self.comp.1;
        let t_im = self.sum.1 + y_im;
        self.comp.1 = (t_im - self.sum.1) - y_im;
        self.sum.1 = t_im;
    }

    fn merge(&mut self, other: &Kahan) {
        self.add(C64::new(other.sum.0, other.sum.1));
    }

    fn value(&self) -> C64 {
        C64::new(self.sum.0, self.sum.1)
    }
}

/// Mean, spread and the z-score against an exact value when one is known.
#[derive(Clone, Debug)]
pub struct EstimateReport {
    pub mean: Complex64,
    pub std_error: f64,
    pub exact: Option<Complex64>,
    pub z_score: Option<f64>,
    pub samples: u64,
    pub variance: f64,
}

impl EstimateReport {
    fn from_sums(sum: C64, sum_sq: f64, n: u64, exact: Option<Complex64>) -> Self {
        let nf = n as f64;
        let mean = sum / nf;
        let var = ((sum_sq / nf) - mean.norm_sqr()).max(0.0) * nf / (nf - 1.0).max(1.0);
        let std_error = (var / nf).sqrt();
        let z_score = exact.map(|e| {
            let dev = (mean - e).norm();
            if std_error > 0.0 {
                dev / std_error
            } else if dev == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        });
        EstimateReport {
            mean,
            std_error,
            exact,
            z_score,
            samples: n,
            variance: var,
        }
    }
}

/// One sample of the word's trace functional at dimension d.
fn word_sample(
    word: &Word,
    unitary_streams: &BTreeMap<String, u64>,
    constants: &HashMap<String, CMat>,
    d: usize,
    seed: u64,
    sample: u64,
) -> Result<C64> {
    let mut unitaries: HashMap<&str, CMat> = HashMap::new();
    for (id, &stream) in unitary_streams {
        unitaries.insert(id.as_str(), haar_unitary(d, seed, sample, stream));
    }
    let mut value = C64::new(1.0, 0.0);
    for cyc in word.pattern().cycles() {
        let mut prod = CMat::identity(d);
        for &p in &cyc {
            let m = match &word.letters()[p] {
                Letter::Unitary { id, dagger } => {
                    let u = &unitaries[id.as_str()];
                    if *dagger {
                        u.adjoint()
                    } else {
                        u.clone()
                    }
                }
                Letter::Constant { id } => constants
                    .get(id)
                    .ok_or_else(|| HwError::Invalid(format!("missing constant matrix {id}")))?
                    .clone(),
            };
            if m.d != d {
                return Err(HwError::DimensionMismatch(format!(
                    "constant of size {} at d = {d}",
                    m.d
                )));
            }
            prod = prod.matmul(&m);
        }
        value *= prod.tr();
    }
    Ok(value)
}

fn unitary_streams(word: &Word) -> BTreeMap<String, u64> {
    let mut streams = BTreeMap::new();
    for l in word.letters() {
        if let Letter::Unitary { id, .. } = l {
            let next = streams.len() as u64;
            streams.entry(id.clone()).or_insert(next);
        }
    }
    streams
}

const CHUNK: u64 = 1024;

/// Deterministic chunked accumulation with a fixed merge tree: chunk sums are
/// produced in parallel and folded in chunk order.
fn accumulate(
    n: u64,
    threads: usize,
    eval: impl Fn(u64) -> Result<C64> + Sync,
) -> Result<(C64, f64)> {
    let chunks: Vec<(u64, u64)> = (0..n.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .collect();
    let results: Vec<Result<(Kahan, Kahan)>> = if threads <= 1 {
        chunks
            .iter()
            .map(|&(lo, hi)| chunk_sums(lo, hi, &eval))
            .collect()
    } else {
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for slice in chunks.chunks(chunks.len().div_ceil(threads)) {
                let eval = &eval;
                handles.push(scope.spawn(move || {
                    slice
                        .iter()
                        .map(|&(lo, hi)| chunk_sums(lo, hi, eval))
                        .collect::<Vec<_>>()
                }));
            }
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let mut total = Kahan::default();
    let mut total_sq = Kahan::default();
    for r in results {
        let (s, sq) = r?;
        total.merge(&s);
        total_sq.merge(&sq);
    }
    Ok((total.value(), total_sq.value().re))
}

fn chunk_sums(
    lo: u64,
    hi: u64,
    eval: &(impl Fn(u64) -> Result<C64> + Sync),
) -> Result<(Kahan, Kahan)> {
    let mut s = Kahan::default();
    let mut sq = Kahan::default();
    for k in lo..hi {
        let v = eval(k)?;
        s.add(v);
        sq.add(C64::new(v.norm_sqr(), 0.0));
    }
    Ok((s, sq))
}

/// Empirical mean of the word's trace functional with a z-score against the
/// exact value when provided.
pub fn estimate_word(
    word: &Word,
    constants: &HashMap<String, CMat>,
    cfg: &SamplerConfig,
    threads: usize,
    exact: Option<Complex64>,
) -> Result<EstimateReport> {
    let streams = unitary_streams(word);
    let (sum, sum_sq) = accumulate(cfg.samples, threads, |k| {
        word_sample(word, &streams, constants, cfg.d, cfg.seed, k)
    })?;
    Ok(EstimateReport::from_sums(sum, sum_sq, cfg.samples, exact))
}

/// Empirical Weingarten value: mean of U_11...U_qq conj(U_1s(1))...conj(U_qs(q))
/// for a class representative s of the cycle type.
pub fn estimate_wg(
    ctype: &hw_core::partition::IntegerPartition,
    cfg: &SamplerConfig,
    threads: usize,
    exact: Option<Complex64>,
) -> Result<EstimateReport> {
    let q = ctype.weight() as usize;
    if cfg.d < q {
        return Err(HwError::OutOfStableRange {
            d: cfg.d as i64,
            q,
        });
    }
    let sigma = Permutation::class_representative(ctype);
    let (sum, sum_sq) = accumulate(cfg.samples, threads, |k| {
        let u = haar_unitary(cfg.d, cfg.seed, k, 0);
        let mut v = C64::new(1.0, 0.0);
        for a in 0..q {
            v *= u[(a, a)];
            v *= u[(a, sigma.apply(a))].conj();
        }
        Ok(v)
    })?;
    Ok(EstimateReport::from_sums(sum, sum_sq, cfg.samples, exact))
}

/// Least-squares slope of log(variance) against log(d).
#[derive(Clone, Debug)]
pub struct DecayFit {
    pub dims: Vec<usize>,
    pub variances: Vec<f64>,
    pub slope: f64,
}

/// Fit the variance decay of a word functional across dimensions. Constants
/// are rebuilt per dimension by the supplied closure.
pub fn variance_decay_fit(
    word: &Word,
    constants_for: impl Fn(usize) -> HashMap<String, CMat>,
    dims: &[usize],
    seed: u64,
    samples: u64,
    threads: usize,
) -> Result<DecayFit> {
    if dims.len() < 3 {
        return Err(HwError::Invalid(
            "variance decay fit needs at least 3 dimensions".into(),
        ));
    }
    let mut variances = Vec::new();
    for &d in dims {
        let cfg = SamplerConfig {
            d,
            seed,
            samples,
        };
        let constants = constants_for(d);
        let report = estimate_word(word, &constants, &cfg, threads, None)?;
        if report.variance <= 0.0 {
            return Err(HwError::Invalid(format!(
                "degenerate fit: zero empirical variance at d = {d}"
            )));
        }
        variances.push(report.variance);
    }
    let xs: Vec<f64> = dims.iter().map(|&d| (d as f64).ln()).collect();
    let ys: Vec<f64> = variances.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(DecayFit {
        dims: dims.to_vec(),
        variances,
        slope: cov / var,
    })
}
