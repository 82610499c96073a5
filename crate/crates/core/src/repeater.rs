//! Bell-pair swapping between two stations holding CSS-encoded blocks.
//!
//! Each of the `n` physical Bell pairs suffers, independently, `Z` on the
//! station-A qubit with probability `f1`, `X` on the station-B qubit with
//! probability `f2`, both with probability `f3`, and nothing otherwise. The
//! transversal CNOT is taken as ideal, so the errors land directly on the
//! encoded blocks. Each station then decodes with minimum-weight coset
//! leaders and the residual operator is reduced to a logical Pauli on every
//! logical Bell pair.
//!
//! Logical fidelity is the probability that the residual acts trivially on
//! all `k` logical pairs; per-pair marginals are reported alongside.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::CssCode;
use crate::error::{Error, Result};
use crate::format::{self, RawConfig};
use crate::gf2::{self, BitMatrix, Decomposer};
use crate::transversality::{check_cnot_transversal, CnotMode};

/// Exact enumeration covers `4^n` patterns; `4^13 = 2^26`.
pub const MAX_EXACT_QUBITS: usize = 13;
/// Coset-leader tables are built by scanning up to `2^n` error vectors.
pub const MAX_DECODER_QUBITS: usize = 24;

const PROBABILITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    f1: f64,
    f2: f64,
    f3: f64,
}

impl ErrorModel {
    pub fn new(f1: f64, f2: f64, f3: f64) -> Result<Self> {
        for (name, f) in [("f1", f1), ("f2", f2), ("f3", f3)] {
            if !f.is_finite() || f < 0.0 {
                return Err(Error::ErrorModel(format!("{name} = {f} is not a probability")));
            }
        }
        if f1 + f2 + f3 > 1.0 + PROBABILITY_SLACK {
            return Err(Error::ErrorModel(format!(
                "f1 + f2 + f3 = {} exceeds 1",
                f1 + f2 + f3
            )));
        }
        Ok(ErrorModel { f1, f2, f3 })
    }

    pub fn noiseless() -> Self {
        ErrorModel { f1: 0.0, f2: 0.0, f3: 0.0 }
    }

    pub fn f1(&self) -> f64 {
        self.f1
    }

    pub fn f2(&self) -> f64 {
        self.f2
    }

    pub fn f3(&self) -> f64 {
        self.f3
    }

    /// Weights of `I`, `Z_A`, `X_B`, `Z_A X_B` on one physical pair.
    pub fn weights(&self) -> [f64; 4] {
        [(1.0 - self.f1 - self.f2 - self.f3).max(0.0), self.f1, self.f2, self.f3]
    }

    pub fn with(&self, param: format::SweepParam, value: f64) -> Result<Self> {
        let (mut f1, mut f2, mut f3) = (self.f1, self.f2, self.f3);
        match param {
            format::SweepParam::F1 => f1 = value,
            format::SweepParam::F2 => f2 = value,
            format::SweepParam::F3 => f3 = value,
        }
        ErrorModel::new(f1, f2, f3)
    }
}

/// One joint pattern: `Z` errors on station A, `X` errors on station B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPattern {
    pub z_a: u64,
    pub x_b: u64,
    pub probability: f64,
}

/// `w_c^e` for each per-pair outcome `c` and exponent `e <= n`.
struct PatternWeights {
    n: usize,
    powers: [Vec<f64>; 4],
}

impl PatternWeights {
    fn new(n: usize, model: &ErrorModel) -> Self {
        let w = model.weights();
        let table = |p: f64| (0..=n).map(|e| p.powi(e as i32)).collect::<Vec<f64>>();
        PatternWeights {
            n,
            powers: [table(w[0]), table(w[1]), table(w[2]), table(w[3])],
        }
    }

    fn probability(&self, z: u64, x: u64) -> f64 {
        let both = (z & x).count_ones() as usize;
        let z_only = z.count_ones() as usize - both;
        let x_only = x.count_ones() as usize - both;
        let none = self.n - both - z_only - x_only;
        self.powers[0][none] * self.powers[1][z_only] * self.powers[2][x_only] * self.powers[3][both]
    }
}

fn check_exact_capacity(n: usize) -> Result<()> {
    if n > MAX_EXACT_QUBITS {
        return Err(Error::Capacity {
            what: "qubits for exact enumeration (4^n patterns)",
            value: n,
            limit: MAX_EXACT_QUBITS,
        });
    }
    Ok(())
}

/// All `4^n` patterns, ordered by `(z_a, x_b)`.
pub fn enumerate_error_patterns(n: usize, model: &ErrorModel) -> Result<impl Iterator<Item = ErrorPattern>> {
    check_exact_capacity(n)?;
    let weights = PatternWeights::new(n, model);
    let size = 1u64 << n;
    Ok((0..size * size).map(move |t| {
        let (z_a, x_b) = (t >> n, t & (size - 1));
        ErrorPattern {
            z_a,
            x_b,
            probability: weights.probability(z_a, x_b),
        }
    }))
}

/// Residual logical operator `X^x Z^z` over `k` logical qubits, logical
/// qubit 1 in the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogicalClass {
    pub k: usize,
    pub x: u64,
    pub z: u64,
}

impl LogicalClass {
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// One of `I`, `X`, `Z`, `Y` per logical qubit.
    pub fn label(&self) -> String {
        (0..self.k)
            .map(|j| {
                let bit = self.k - 1 - j;
                match ((self.x >> bit) & 1, (self.z >> bit) & 1) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (0, 1) => 'Z',
                    _ => 'Y',
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decoded {
    pub correction_x: u64,
    pub correction_z: u64,
    pub logical: LogicalClass,
}

/// Minimum-weight coset-leader decoder for one CSS code. Among leaders of
/// equal weight the numerically smallest vector wins.
#[derive(Debug, Clone)]
pub struct CssDecoder {
    k: usize,
    x_stab: BitMatrix,
    z_stab: BitMatrix,
    encoding: BitMatrix,
    /// Indexed by the X-stabilizer syndrome; corrects `Z` errors.
    z_leaders: Vec<u64>,
    /// Indexed by the Z-stabilizer syndrome; corrects `X` errors.
    x_leaders: Vec<u64>,
    x_logical: Decomposer,
}

fn syndrome(stab: &BitMatrix, e: u64) -> usize {
    stab.rows()
        .iter()
        .fold(0usize, |s, &r| (s << 1) | gf2::dot(r, e) as usize)
}

fn leader_table(stab: &BitMatrix, n: usize) -> Vec<u64> {
    let size = 1usize << stab.num_rows();
    let mut table = vec![u64::MAX; size];
    let mut filled = 0;
    'weights: for w in 0..=n {
        if w == 0 {
            table[0] = 0;
            filled = 1;
            if filled == size {
                break;
            }
            continue;
        }
        // Gosper's hack walks the weight-w vectors in increasing order.
        let mut e: u64 = (1u64 << w) - 1;
        let limit = 1u64 << n;
        while e < limit {
            let s = syndrome(stab, e);
            if table[s] == u64::MAX {
                table[s] = e;
                filled += 1;
                if filled == size {
                    break 'weights;
                }
            }
            let c = e & e.wrapping_neg();
            let r = e + c;
            e = (((r ^ e) >> 2) / c) | r;
        }
    }
    table
}

impl CssDecoder {
    pub fn new(q: &CssCode) -> Result<Self> {
        let n = q.n();
        if n > MAX_DECODER_QUBITS {
            return Err(Error::Capacity {
                what: "block length for coset-leader decoding",
                value: n,
                limit: MAX_DECODER_QUBITS,
            });
        }
        let x_logical = Decomposer::new(&q.x_stabilizers().vstack(q.encoding())?)?;
        Ok(CssDecoder {
            k: q.k(),
            x_stab: q.x_stabilizers().clone(),
            z_stab: q.z_stabilizers().clone(),
            encoding: q.encoding().clone(),
            z_leaders: leader_table(q.x_stabilizers(), n),
            x_leaders: leader_table(q.z_stabilizers(), n),
            x_logical,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn correct_z(&self, e_z: u64) -> u64 {
        self.z_leaders[syndrome(&self.x_stab, e_z)]
    }

    pub fn correct_x(&self, e_x: u64) -> u64 {
        self.x_leaders[syndrome(&self.z_stab, e_x)]
    }

    /// Logical X part of a residual `X` error with zero syndrome.
    pub fn logical_x(&self, residual: u64) -> u64 {
        let coeffs = self
            .x_logical
            .coefficients(residual)
            .expect("zero-syndrome X residual lies in C1");
        coeffs & gf2::low_mask(self.k)
    }

    /// Logical Z part of a residual `Z` error with zero syndrome.
    pub fn logical_z(&self, residual: u64) -> u64 {
        self.encoding
            .rows()
            .iter()
            .fold(0u64, |acc, &a| (acc << 1) | gf2::dot(a, residual) as u64)
    }

    pub fn decode(&self, e_x: u64, e_z: u64) -> Decoded {
        let correction_x = self.correct_x(e_x);
        let correction_z = self.correct_z(e_z);
        Decoded {
            correction_x,
            correction_z,
            logical: LogicalClass {
                k: self.k,
                x: self.logical_x(e_x ^ correction_x),
                z: self.logical_z(e_z ^ correction_z),
            },
        }
    }
}

/// Single-shot decode. Builds the leader tables on every call; use
/// [`CssDecoder`] for repeated decoding.
pub fn decode_css(q: &CssCode, e_x: u64, e_z: u64) -> Result<Decoded> {
    Ok(CssDecoder::new(q)?.decode(e_x, e_z))
}

/// Logical class of the residual on the `k` logical Bell pairs: `Z` from
/// station A's decoded phase errors, `X` from station B's decoded flips.
fn joint_class(k: usize, alpha_a: u64, phi_b: u64) -> LogicalClass {
    LogicalClass { k, x: phi_b, z: alpha_a }
}

fn check_pair(qa: &CssCode, qb: &CssCode) -> Result<()> {
    if qa.n() != qb.n() {
        return Err(Error::Dimension(format!(
            "block lengths differ: {} vs {}",
            qa.n(),
            qb.n()
        )));
    }
    if qa.k() != qb.k() {
        return Err(Error::LogicalDimension { a: qa.k(), b: qb.k() });
    }
    Ok(())
}

/// Probability mass per residual logical class.
#[derive(Debug, Clone, PartialEq)]
pub struct Breakdown {
    pub k: usize,
    pub mass: BTreeMap<LogicalClass, f64>,
}

impl Breakdown {
    pub fn fidelity(&self) -> f64 {
        self.mass
            .get(&LogicalClass { k: self.k, x: 0, z: 0 })
            .copied()
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.mass.values().sum()
    }

    /// Probability that logical pair `j` (0-based) is left untouched.
    pub fn pair_fidelities(&self) -> Vec<f64> {
        (0..self.k)
            .map(|j| {
                let bit = 1u64 << (self.k - 1 - j);
                self.mass
                    .iter()
                    .filter(|(c, _)| c.x & bit == 0 && c.z & bit == 0)
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect()
    }

    pub fn labelled(&self) -> BTreeMap<String, f64> {
        self.mass.iter().map(|(c, &m)| (c.label(), m)).collect()
    }
}

/// Exact per-class mass over all `4^n` patterns. Partial sums are formed per
/// station-A pattern and reduced in pattern order, so the result does not
/// depend on the thread count.
pub fn exact_breakdown(qa: &CssCode, qb: &CssCode, model: &ErrorModel) -> Result<Breakdown> {
    check_pair(qa, qb)?;
    let (n, k) = (qa.n(), qa.k());
    check_exact_capacity(n)?;
    let (da, db) = (CssDecoder::new(qa)?, CssDecoder::new(qb)?);
    let size = 1u64 << n;
    let alpha: Vec<u64> = (0..size).map(|e| da.decode(0, e).logical.z).collect();
    let phi: Vec<u64> = (0..size).map(|e| db.decode(e, 0).logical.x).collect();
    let weights = PatternWeights::new(n, model);

    let blocks: Vec<Vec<f64>> = (0..size)
        .into_par_iter()
        .map(|z| {
            let mut by_phi = vec![0.0f64; 1 << k];
            for x in 0..size {
                by_phi[phi[x as usize] as usize] += weights.probability(z, x);
            }
            by_phi
        })
        .collect();

    let mut mass = BTreeMap::new();
    for (z, block) in blocks.iter().enumerate() {
        for (p, &m) in block.iter().enumerate() {
            if m != 0.0 {
                *mass.entry(joint_class(k, alpha[z], p as u64)).or_insert(0.0) += m;
            }
        }
    }
    if mass.is_empty() {
        mass.insert(joint_class(k, 0, 0), 0.0);
    }
    Ok(Breakdown { k, mass })
}

pub fn exact_logical_fidelity(qa: &CssCode, qb: &CssCode, model: &ErrorModel) -> Result<f64> {
    Ok(exact_breakdown(qa, qb, model)?.fidelity())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub samples: u64,
    pub workers: usize,
    pub counts: BTreeMap<LogicalClass, u64>,
    pub k: usize,
}

impl MonteCarloEstimate {
    pub fn fidelity(&self) -> f64 {
        let hits = self
            .counts
            .get(&LogicalClass { k: self.k, x: 0, z: 0 })
            .copied()
            .unwrap_or(0);
        hits as f64 / self.samples as f64
    }

    pub fn standard_error(&self) -> f64 {
        let p = self.fidelity();
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }

    pub fn breakdown(&self) -> Breakdown {
        let total = self.samples as f64;
        Breakdown {
            k: self.k,
            mass: self.counts.iter().map(|(&c, &h)| (c, h as f64 / total)).collect(),
        }
    }
}

fn sample_pattern(rng: &mut ChaCha8Rng, n: usize, model: &ErrorModel) -> (u64, u64) {
    let (t1, t2, t3) = (model.f1, model.f1 + model.f2, model.f1 + model.f2 + model.f3);
    let (mut z, mut x) = (0u64, 0u64);
    for _ in 0..n {
        let u: f64 = rng.gen();
        let (bz, bx) = if u < t1 {
            (1, 0)
        } else if u < t2 {
            (0, 1)
        } else if u < t3 {
            (1, 1)
        } else {
            (0, 0)
        };
        z = (z << 1) | bz;
        x = (x << 1) | bx;
    }
    (z, x)
}

/// Samples are split evenly over `workers` streams of a ChaCha8 generator
/// seeded with `seed`; stream `w` serves worker `w`. The estimate depends
/// only on `(seed, samples, workers)`.
pub fn monte_carlo(
    qa: &CssCode,
    qb: &CssCode,
    model: &ErrorModel,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<MonteCarloEstimate> {
    check_pair(qa, qb)?;
    if samples == 0 {
        return Err(Error::Config("montecarlo needs at least one sample".into()));
    }
    let workers = workers.max(1);
    let (n, k) = (qa.n(), qa.k());
    let (da, db) = (CssDecoder::new(qa)?, CssDecoder::new(qb)?);
    let per = samples / workers as u64;
    let extra = samples % workers as u64;
    let partial: Vec<BTreeMap<LogicalClass, u64>> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(w as u64);
            let count = per + ((w as u64) < extra) as u64;
            let mut counts = BTreeMap::new();
            for _ in 0..count {
                let (z, x) = sample_pattern(&mut rng, n, model);
                let class = joint_class(k, da.decode(0, z).logical.z, db.decode(x, 0).logical.x);
                *counts.entry(class).or_insert(0u64) += 1;
            }
            counts
        })
        .collect();
    let mut counts = BTreeMap::new();
    for part in partial {
        for (c, h) in part {
            *counts.entry(c).or_insert(0) += h;
        }
    }
    Ok(MonteCarloEstimate { samples, workers, counts, k })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SimulationMode {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
}

impl SimulationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SimulationMode::Exact => "exact",
            SimulationMode::MonteCarlo => "montecarlo",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    pub qa: CssCode,
    pub qb: CssCode,
    pub model: ErrorModel,
    pub mode: SimulationMode,
    pub samples: u64,
    /// Drawn at run time when absent in Monte Carlo mode.
    pub seed: Option<u64>,
    /// Raw Bell pairs generated before purification; reported only.
    pub raw_pairs: Option<u64>,
    pub jobs: usize,
    pub allow_non_transversal: bool,
}

impl ProtocolConfig {
    pub fn exact(qa: CssCode, qb: CssCode, model: ErrorModel) -> Self {
        ProtocolConfig {
            qa,
            qb,
            model,
            mode: SimulationMode::Exact,
            samples: 0,
            seed: None,
            raw_pairs: None,
            jobs: 1,
            allow_non_transversal: false,
        }
    }

    pub fn monte_carlo(qa: CssCode, qb: CssCode, model: ErrorModel, samples: u64, seed: u64) -> Self {
        ProtocolConfig {
            mode: SimulationMode::MonteCarlo,
            samples,
            seed: Some(seed),
            ..ProtocolConfig::exact(qa, qb, model)
        }
    }

    /// Builds a config from parsed settings; code paths are resolved
    /// relative to `base_dir`.
    pub fn from_raw(raw: &RawConfig, base_dir: &Path) -> Result<Self> {
        let path = |p: &Option<String>, key: &str| -> Result<PathBuf> {
            let p = p
                .as_ref()
                .ok_or_else(|| Error::Config(format!("missing {key}")))?;
            Ok(base_dir.join(p))
        };
        let qa = format::load_css(path(&raw.code_a, "codeA")?)?;
        let qb = format::load_css(path(&raw.code_b, "codeB")?)?;
        let model = ErrorModel::new(raw.f1, raw.f2, raw.f3)?;
        let samples = match raw.mode {
            SimulationMode::MonteCarlo => match raw.samples {
                Some(s) if s >= 1 => s,
                _ => return Err(Error::Config("montecarlo needs samples >= 1".into())),
            },
            SimulationMode::Exact => raw.samples.unwrap_or(0),
        };
        Ok(ProtocolConfig {
            qa,
            qb,
            model,
            mode: raw.mode,
            samples,
            seed: raw.seed,
            raw_pairs: raw.raw_pairs,
            jobs: raw.jobs.unwrap_or(1),
            allow_non_transversal: raw.allow_non_transversal,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let raw = format::parse_config(&format::read_file(path)?)?;
        ProtocolConfig::from_raw(&raw, path.parent().unwrap_or(Path::new(".")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolReport {
    pub format: u32,
    pub mode: SimulationMode,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub n: usize,
    pub k: usize,
    pub logical_fidelity: f64,
    pub logical_error_rate: f64,
    pub standard_error: Option<f64>,
    pub breakdown: BTreeMap<String, f64>,
    pub pair_fidelity: Vec<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub workers: usize,
    #[serde(rename = "raw_pairs_N")]
    pub raw_pairs: Option<u64>,
    pub cnot_transversal: bool,
}

impl ProtocolReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn csv_header() -> &'static str {
        "f1,f2,f3,mode,samples,seed,logical_fidelity,logical_error_rate,standard_error"
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.f1,
            self.f2,
            self.f3,
            self.mode.as_str(),
            opt(self.samples.map(|s| s.to_string())),
            opt(self.seed.map(|s| s.to_string())),
            self.logical_fidelity,
            self.logical_error_rate,
            opt(self.standard_error.map(|s| s.to_string())),
        )
    }
}

pub fn run_local_swapping(cfg: &ProtocolConfig) -> Result<ProtocolReport> {
    check_pair(&cfg.qa, &cfg.qb)?;
    let transversal = check_cnot_transversal(&cfg.qa, &cfg.qb, CnotMode::Coset)?.verdict;
    if !transversal && !cfg.allow_non_transversal {
        return Err(Error::NotTransversal);
    }
    let jobs = cfg.jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} workers: {e}")))?;
    let (breakdown, standard_error, samples, seed) = match cfg.mode {
        SimulationMode::Exact => {
            let b = pool.install(|| exact_breakdown(&cfg.qa, &cfg.qb, &cfg.model))?;
            (b, None, None, cfg.seed)
        }
        SimulationMode::MonteCarlo => {
            let seed = cfg.seed.unwrap_or_else(rand::random);
            let est = pool.install(|| monte_carlo(&cfg.qa, &cfg.qb, &cfg.model, cfg.samples, seed, jobs))?;
            (est.breakdown(), Some(est.standard_error()), Some(cfg.samples), Some(seed))
        }
    };
    let fidelity = breakdown.fidelity();
    Ok(ProtocolReport {
        format: format::FORMAT_VERSION,
        mode: cfg.mode,
        f1: cfg.model.f1,
        f2: cfg.model.f2,
        f3: cfg.model.f3,
        n: cfg.qa.n(),
        k: cfg.qa.k(),
        logical_fidelity: fidelity,
        logical_error_rate: 1.0 - fidelity,
        standard_error,
        breakdown: breakdown.labelled(),
        pair_fidelity: breakdown.pair_fidelities(),
        samples,
        seed,
        workers: jobs,
        raw_pairs: cfg.raw_pairs,
        cnot_transversal: transversal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_classical, make_css, steane};

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strs(rows).unwrap()
    }

    #[test]
    fn model_validation() {
        assert!(ErrorModel::new(0.2, 0.3, 0.5).is_ok());
        assert!(ErrorModel::new(0.5, 0.5, 0.1).is_err());
        assert!(ErrorModel::new(-0.1, 0.0, 0.0).is_err());
        assert!(ErrorModel::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn single_pair_patterns() {
        let model = ErrorModel::new(0.1, 0.2, 0.3).unwrap();
        let p: Vec<ErrorPattern> = enumerate_error_patterns(1, &model).unwrap().collect();
        let probs: Vec<(u64, u64, f64)> = p.iter().map(|e| (e.z_a, e.x_b, e.probability)).collect();
        assert_eq!(probs.len(), 4);
        assert!((probs[0].2 - 0.4).abs() < 1e-15);
        assert_eq!((probs[1].0, probs[1].1), (0, 1));
        assert!((probs[1].2 - 0.2).abs() < 1e-15);
        assert!((probs[2].2 - 0.1).abs() < 1e-15);
        assert!((probs[3].2 - 0.3).abs() < 1e-15);
    }

    #[test]
    fn noiseless_patterns() {
        let nonzero: Vec<ErrorPattern> = enumerate_error_patterns(3, &ErrorModel::noiseless())
            .unwrap()
            .filter(|p| p.probability != 0.0)
            .collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((nonzero[0].z_a, nonzero[0].x_b, nonzero[0].probability), (0, 0, 1.0));
    }

    #[test]
    fn pattern_mass_sums_to_one() {
        let model = ErrorModel::new(0.01, 0.01, 0.0).unwrap();
        let it = enumerate_error_patterns(7, &model).unwrap();
        let (count, total) = it.fold((0usize, 0.0f64), |(c, t), p| (c + 1, t + p.probability));
        assert_eq!(count, 1 << 14);
        assert!((total - 1.0).abs() < 1e-12);
        assert!(enumerate_error_patterns(14, &model).is_err());
    }

    #[test]
    fn steane_decoder_corrects_single_errors() {
        let d = CssDecoder::new(&steane()).unwrap();
        assert!(d.decode(0, 0).logical.is_identity());
        for i in 0..7 {
            let e = 1u64 << i;
            let r = d.decode(e, e);
            assert_eq!((r.correction_x, r.correction_z), (e, e));
            assert!(r.logical.is_identity());
        }
    }

    #[test]
    fn logical_representative_decodes_to_its_class() {
        let q = steane();
        let d = CssDecoder::new(&q).unwrap();
        let a = q.encoding().row(0);
        let r = d.decode(a, 0);
        assert_eq!(r.correction_x, 0);
        assert_eq!(r.logical.x, 1);
        assert_eq!(r.logical.label(), "X");
    }

    #[test]
    fn ties_go_to_the_smallest_vector() {
        // Single X stabilizer 11: Z on either qubit gives the same syndrome.
        let full = make_classical(&BitMatrix::identity(2)).unwrap();
        let rep = make_classical(&m(&["11"])).unwrap();
        let q = make_css(&full, &rep, None).unwrap();
        let d = CssDecoder::new(&q).unwrap();
        assert_eq!(d.correct_z(0b10), 0b01);
        assert_eq!(d.correct_z(0b01), 0b01);
    }

    #[test]
    fn trivial_one_qubit_code_under_certain_phase_flip() {
        let full = make_classical(&BitMatrix::identity(1)).unwrap();
        let q = make_css(&full, &full, None).unwrap();
        assert_eq!(q.k(), 1);
        let model = ErrorModel::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(exact_logical_fidelity(&q, &q, &model).unwrap(), 0.0);
        let b = exact_breakdown(&q, &q, &model).unwrap();
        assert_eq!(b.labelled().get("Z"), Some(&1.0));
    }

    #[test]
    fn noiseless_fidelity_is_one() {
        let s = steane();
        assert_eq!(exact_logical_fidelity(&s, &s, &ErrorModel::noiseless()).unwrap(), 1.0);
    }

    #[test]
    fn breakdown_conserves_probability() {
        let s = steane();
        let model = ErrorModel::new(0.05, 0.03, 0.02).unwrap();
        let b = exact_breakdown(&s, &s, &model).unwrap();
        assert!((b.total() - 1.0).abs() < 1e-9);
        assert_eq!(b.pair_fidelities().len(), 1);
        assert_eq!(b.pair_fidelities()[0], b.fidelity());
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let s = steane();
        let model = ErrorModel::new(0.05, 0.05, 0.0).unwrap();
        let a = monte_carlo(&s, &s, &model, 2000, 11, 3).unwrap();
        let b = monte_carlo(&s, &s, &model, 2000, 11, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts.values().sum::<u64>(), 2000);
    }

    #[test]
    fn non_transversal_pair_is_refused() {
        let full = make_classical(&BitMatrix::identity(2)).unwrap();
        let qa = make_css(&make_classical(&m(&["10"])).unwrap(), &full, None).unwrap();
        let qb = make_css(&full, &make_classical(&m(&["01"])).unwrap(), Some(&m(&["11"]))).unwrap();
        let mut cfg = ProtocolConfig::exact(qa, qb, ErrorModel::noiseless());
        assert!(matches!(run_local_swapping(&cfg), Err(Error::NotTransversal)));
        cfg.allow_non_transversal = true;
        let r = run_local_swapping(&cfg).unwrap();
        assert!(!r.cnot_transversal);
        assert_eq!(r.logical_fidelity, 1.0);
    }

    #[test]
    fn label_order() {
        let c = LogicalClass { k: 3, x: 0b101, z: 0b011 };
        assert_eq!(c.label(), "XZY");
    }
}
